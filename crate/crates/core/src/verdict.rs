//! Verdicts: boolean outcomes paired with certificates for negative answers.
//!
//! Every decision procedure in this crate returns a [`Verdict`] whose witness
//! is present exactly when the answer is negative. Witness types are
//! predicate-specific structs that can be replayed against the defining
//! formula to reconfirm the failure.
//!
//! The brute-force oracle layer uses [`OracleVerdict`] instead: a negative
//! oracle answer is conclusive, but a positive one is only evidence up to the
//! search bound.

/// Outcome of a decision, with a mandatory certificate on failure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict<W> {
    holds: bool,
    witness: Option<W>,
}

impl<W> Verdict<W> {
    /// Positive verdict.
    pub fn pass() -> Self {
        Verdict { holds: true, witness: None }
    }

    /// Negative verdict with its certificate.
    pub fn fail(witness: W) -> Self {
        Verdict { holds: false, witness: Some(witness) }
    }

    pub fn holds(&self) -> bool {
        self.holds
    }

    /// The certificate; `Some` iff the verdict is negative.
    pub fn witness(&self) -> Option<&W> {
        self.witness.as_ref()
    }

    pub fn into_witness(self) -> Option<W> {
        self.witness
    }

    /// Re-wrap the certificate, e.g. to embed it into a composite witness.
    pub fn map_witness<V>(self, f: impl FnOnce(W) -> V) -> Verdict<V> {
        Verdict { holds: self.holds, witness: self.witness.map(f) }
    }
}

impl<W: std::fmt::Display> std::fmt::Display for Verdict<W> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match &self.witness {
            None => write!(f, "holds"),
            Some(w) => write!(f, "fails: {w}"),
        }
    }
}

/// Outcome of a bounded brute-force oracle check.
///
/// `ConclusiveFalse` is a proof of failure (the witness is a concrete
/// counterexample); `BoundedTrue` only says that no counterexample exists
/// within the stated size bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OracleVerdict<W> {
    BoundedTrue { bound: usize },
    ConclusiveFalse { witness: W },
}

impl<W> OracleVerdict<W> {
    pub fn holds(&self) -> bool {
        matches!(self, OracleVerdict::BoundedTrue { .. })
    }

    pub fn witness(&self) -> Option<&W> {
        match self {
            OracleVerdict::BoundedTrue { .. } => None,
            OracleVerdict::ConclusiveFalse { witness } => Some(witness),
        }
    }
}

impl<W: std::fmt::Display> std::fmt::Display for OracleVerdict<W> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            OracleVerdict::BoundedTrue { bound } => write!(f, "true up to bound {bound}"),
            OracleVerdict::ConclusiveFalse { witness } => write!(f, "conclusively false: {witness}"),
        }
    }
}
