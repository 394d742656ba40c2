//! Closed-form characterizations of the descent classes for morphisms of
//! valued ordered sets.
//!
//! For a morphism `f : (A, α) → (B, β)` over a locally complete `X`:
//!
//! * regular epi: regular epi on carriers and `β(b) ≅ ⋁_{f(a) <= b} α(a)`;
//! * stable regular epi (descent): descent on carriers and descent of the
//!   underlying family morphism, i.e. `w ≅ ⋁_{f(a)=b} w ∧ α(a)`;
//! * effective descent: the conjunction of
//!   1. triple lifting on carriers,
//!   2. pair-join recovery: for `b0 <= b1` and `w <= β(b0)`,
//!      `w ≅ ⋁ { w ∧ α(a0) : a0 <= a1, f(a_i) = b_i }`,
//!   3. datum recovery: every compatible family `σ <= α` satisfies
//!      `α(a') ∧ ⋁_{a ∈ f⁻¹(b)} σ(a) ≅ σ(a')` fiberwise.
//!
//! No bottom element of `X` is ever required: all joins are local, and the
//! datum-recovery condition is evaluated per connected component of `X`,
//! which also keeps the descent-data enumeration to a product over each
//! component instead of the whole carrier.
//!
//! Over a locally cartesian closed `X` the pair-join condition simplifies to
//! `β(b0) ≅ ⋁ α(a0)` over lifting pairs and condition 3 becomes redundant;
//! `is_effective_descent_lcc` implements that shortcut.

use crate::error::{Error, Result};
use crate::fam::{self, FamDescentFailure, FamMorphism};
use crate::lax::{LaxMorphism, LaxObject};
use crate::ordmap::{self, RegularEpiFailure, UnliftablePair, UnliftableTriple};
use crate::ordset::OrdSet;
use crate::verdict::Verdict;

fn require_locally_complete(x: &OrdSet) -> Result<()> {
    match x.is_locally_complete().into_witness() {
        None => Ok(()),
        Some(w) => Err(Error::NotLocallyComplete(w)),
    }
}

/// Why a morphism fails to be a regular epimorphism.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LaxRegEpiFailure {
    Carrier(RegularEpiFailure),
    /// `β(b) ≇ ⋁_{f(a) <= b} α(a)` inside `↓β(b)`.
    ValueJoin { b: usize },
}

impl LaxRegEpiFailure {
    pub fn reconfirm(&self, x: &OrdSet, f: &LaxMorphism) -> bool {
        match self {
            LaxRegEpiFailure::Carrier(w) => w.reconfirm(&f.underlying_ord()),
            LaxRegEpiFailure::ValueJoin { b } => match below_image_join(x, f, *b) {
                Some(j) => !x.iso(j, f.dst.valuation[*b]),
                None => true,
            },
        }
    }
}

impl std::fmt::Display for LaxRegEpiFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            LaxRegEpiFailure::Carrier(w) => write!(f, "carrier map: {w}"),
            LaxRegEpiFailure::ValueJoin { b } => {
                write!(f, "value at {b} is not the join of the values mapped below it")
            }
        }
    }
}

/// `⋁ { α(a) : f(a) <= b }` inside `↓β(b)`.
fn below_image_join(x: &OrdSet, f: &LaxMorphism, b: usize) -> Option<usize> {
    let beta = f.dst.valuation[b];
    let values: Vec<usize> = f
        .src
        .carrier
        .elements()
        .filter(|&a| f.dst.carrier.leq(f.apply(a), b))
        .map(|a| f.src.valuation[a])
        .collect();
    x.local_join(beta, &values).expect("lax values lie below beta")
}

/// Regular epimorphism: carrier-level regular epi plus value-join recovery.
pub fn is_regular_epi(x: &OrdSet, f: &LaxMorphism) -> Result<Verdict<LaxRegEpiFailure>> {
    require_locally_complete(x)?;
    if let Some(w) = ordmap::is_regular_epi(&f.underlying_ord()).into_witness() {
        return Ok(Verdict::fail(LaxRegEpiFailure::Carrier(w)));
    }
    for b in f.dst.carrier.elements() {
        let join = below_image_join(x, f, b).expect("locally complete ambient");
        if !x.iso(join, f.dst.valuation[b]) {
            return Ok(Verdict::fail(LaxRegEpiFailure::ValueJoin { b }));
        }
    }
    Ok(Verdict::pass())
}

/// Why a morphism fails to be a stable regular epimorphism.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StableRegEpiFailure {
    Carrier(UnliftablePair),
    /// The underlying family morphism fails join recovery at `(b, w)`.
    Values(FamDescentFailure),
}

impl StableRegEpiFailure {
    pub fn reconfirm(&self, x: &OrdSet, f: &LaxMorphism) -> bool {
        match self {
            StableRegEpiFailure::Carrier(w) => w.reconfirm(&f.underlying_ord()),
            StableRegEpiFailure::Values(w) => w.reconfirm(x, &f.underlying_fam(x)),
        }
    }
}

impl std::fmt::Display for StableRegEpiFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            StableRegEpiFailure::Carrier(w) => write!(f, "carrier map: {w}"),
            StableRegEpiFailure::Values(w) => write!(f, "underlying family: {w}"),
        }
    }
}

/// Stable regular epimorphism (descent morphism): pair lifting on carriers
/// plus descent of the underlying family morphism.
pub fn is_stable_regular_epi(x: &OrdSet, f: &LaxMorphism) -> Result<Verdict<StableRegEpiFailure>> {
    require_locally_complete(x)?;
    if let Some(w) = ordmap::is_descent(&f.underlying_ord()).into_witness() {
        return Ok(Verdict::fail(StableRegEpiFailure::Carrier(w)));
    }
    Ok(fam::is_descent(x, &f.underlying_fam(x))?.map_witness(StableRegEpiFailure::Values))
}

/// Independent evaluation of the stable-regular-epi condition that does not
/// go through the family machinery: the fiberwise join recovery
/// `w ≅ ⋁_{f(a)=b} w ∧ α(a)` is computed inline.
pub fn stable_regular_epi_direct(x: &OrdSet, f: &LaxMorphism) -> Result<Verdict<StableRegEpiFailure>> {
    require_locally_complete(x)?;
    if let Some(w) = ordmap::is_descent(&f.underlying_ord()).into_witness() {
        return Ok(Verdict::fail(StableRegEpiFailure::Carrier(w)));
    }
    for b in f.dst.carrier.elements() {
        let beta = f.dst.valuation[b];
        for w in x.elements().filter(|&w| x.leq(w, beta)) {
            let mut meets = Vec::new();
            for a in f.fiber_of_map(b) {
                let m = x.local_meet(beta, w, f.src.valuation[a])?.expect("locally complete ambient");
                meets.push(m);
            }
            let join = x.local_join(beta, &meets)?.expect("locally complete ambient");
            if !x.iso(join, w) {
                return Ok(Verdict::fail(StableRegEpiFailure::Values(FamDescentFailure { k: b, w })));
            }
        }
    }
    Ok(Verdict::pass())
}

/// Pair-join recovery failure: `(b0, b1, w)` with
/// `w ≇ ⋁ { w ∧ α(a0) : a0 <= a1, f(a_i) = b_i }`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PairJoinFailure {
    pub b0: usize,
    pub b1: usize,
    pub w: usize,
}

impl PairJoinFailure {
    pub fn reconfirm(&self, x: &OrdSet, f: &LaxMorphism) -> bool {
        f.dst.carrier.leq(self.b0, self.b1)
            && x.leq(self.w, f.dst.valuation[self.b0])
            && match lifting_pair_join(x, f, self.b0, self.b1, Some(self.w)) {
                Some(j) => !x.iso(j, self.w),
                None => true,
            }
    }
}

impl std::fmt::Display for PairJoinFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "over {} <= {}, value {} is not recovered by the lifting-pair joins",
            self.b0, self.b1, self.w
        )
    }
}

/// `⋁ { w ∧ α(a0) : a0 <= a1, f(a_i) = b_i }` inside `↓β(b0)`, or with
/// `w = None` the plain join `⋁ α(a0)` of the simplified condition.
fn lifting_pair_join(x: &OrdSet, f: &LaxMorphism, b0: usize, b1: usize, w: Option<usize>) -> Option<usize> {
    let beta = f.dst.valuation[b0];
    let mut values = Vec::new();
    for a0 in f.src.carrier.elements() {
        if f.apply(a0) != b0 {
            continue;
        }
        let liftable =
            f.src.carrier.elements().any(|a1| f.apply(a1) == b1 && f.src.carrier.leq(a0, a1));
        if !liftable {
            continue;
        }
        let alpha = f.src.valuation[a0];
        match w {
            Some(w) => values.push(
                x.local_meet(beta, w, alpha)
                    .expect("both lie below beta")
                    .expect("locally complete ambient"),
            ),
            None => values.push(alpha),
        }
    }
    x.local_join(beta, &values).expect("values lie below beta")
}

/// Effective-descent condition 2: every `w <= β(b0)` is recovered from the
/// lifting pairs over every `b0 <= b1`.
pub fn condition_pair_join(x: &OrdSet, f: &LaxMorphism) -> Result<Verdict<PairJoinFailure>> {
    require_locally_complete(x)?;
    for b0 in f.dst.carrier.elements() {
        for b1 in f.dst.carrier.elements() {
            if !f.dst.carrier.leq(b0, b1) {
                continue;
            }
            let beta = f.dst.valuation[b0];
            for w in x.elements().filter(|&w| x.leq(w, beta)) {
                let join = lifting_pair_join(x, f, b0, b1, Some(w)).expect("locally complete");
                if !x.iso(join, w) {
                    return Ok(Verdict::fail(PairJoinFailure { b0, b1, w }));
                }
            }
        }
    }
    Ok(Verdict::pass())
}

/// Datum-recovery failure for condition 3: the compatible family `sigma`
/// (over the source carrier, global indices) is not recovered at `a_prime`
/// over `b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DatumRecoveryFailure {
    pub sigma: Vec<usize>,
    pub b: usize,
    pub a_prime: usize,
}

impl DatumRecoveryFailure {
    pub fn reconfirm(&self, x: &OrdSet, f: &LaxMorphism) -> bool {
        let fam_f = f.underlying_fam(x);
        fam::is_descent_datum(x, &fam_f, &self.sigma).is_ok()
            && fam::violates_effectiveness_at(x, &fam_f, &self.sigma, self.b, self.a_prime)
    }
}

impl std::fmt::Display for DatumRecoveryFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "family σ={:?} is compatible but not recovered at {} over {}",
            self.sigma, self.a_prime, self.b
        )
    }
}

/// Effective-descent condition 3, evaluated per connected component of the
/// ambient: every compatible family `σ <= α` satisfies the fiberwise
/// recovery equation. Witnesses are translated back to global indices; the
/// family is completed with `α` outside the failing component, which keeps
/// it compatible and reproduces the same violation.
pub fn condition_datum_recovery(x: &OrdSet, f: &LaxMorphism) -> Result<Verdict<DatumRecoveryFailure>> {
    require_locally_complete(x)?;
    for part in componentwise(x, f)? {
        let fam_f = part.f.underlying_fam(&part.x);
        for sigma in fam::descent_data(&part.x, &fam_f)? {
            if let Some((k, j)) = fam::effectiveness_violation(&part.x, &fam_f, &sigma) {
                let mut global_sigma = f.src.valuation.clone();
                for (local, &global) in part.src_elements.iter().enumerate() {
                    global_sigma[global] = part.x_elements[sigma[local]];
                }
                return Ok(Verdict::fail(DatumRecoveryFailure {
                    sigma: global_sigma,
                    b: part.dst_elements[k],
                    a_prime: part.src_elements[j],
                }));
            }
        }
    }
    Ok(Verdict::pass())
}

/// Why a morphism fails to be an effective descent morphism: the first
/// failing condition's certificate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EffectiveDescentFailure {
    TripleLifting(UnliftableTriple),
    PairJoin(PairJoinFailure),
    DatumRecovery(DatumRecoveryFailure),
}

impl EffectiveDescentFailure {
    pub fn reconfirm(&self, x: &OrdSet, f: &LaxMorphism) -> bool {
        match self {
            EffectiveDescentFailure::TripleLifting(w) => w.reconfirm(&f.underlying_ord()),
            EffectiveDescentFailure::PairJoin(w) => w.reconfirm(x, f),
            EffectiveDescentFailure::DatumRecovery(w) => w.reconfirm(x, f),
        }
    }

    /// Which of the three conditions failed (1, 2 or 3).
    pub fn condition(&self) -> u8 {
        match self {
            EffectiveDescentFailure::TripleLifting(_) => 1,
            EffectiveDescentFailure::PairJoin(_) => 2,
            EffectiveDescentFailure::DatumRecovery(_) => 3,
        }
    }
}

impl std::fmt::Display for EffectiveDescentFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            EffectiveDescentFailure::TripleLifting(w) => write!(f, "condition 1 (triple lifting): {w}"),
            EffectiveDescentFailure::PairJoin(w) => write!(f, "condition 2 (pair-join recovery): {w}"),
            EffectiveDescentFailure::DatumRecovery(w) => write!(f, "condition 3 (datum recovery): {w}"),
        }
    }
}

/// Effective descent: conditions 1, 2 and 3, in that order.
pub fn is_effective_descent(x: &OrdSet, f: &LaxMorphism) -> Result<Verdict<EffectiveDescentFailure>> {
    require_locally_complete(x)?;
    if let Some(w) = ordmap::is_effective_descent(&f.underlying_ord()).into_witness() {
        return Ok(Verdict::fail(EffectiveDescentFailure::TripleLifting(w)));
    }
    if let Some(w) = condition_pair_join(x, f)?.into_witness() {
        return Ok(Verdict::fail(EffectiveDescentFailure::PairJoin(w)));
    }
    Ok(condition_datum_recovery(x, f)?.map_witness(EffectiveDescentFailure::DatumRecovery))
}

/// Simplified-join failure of the shortcut: `β(b0) ≇ ⋁ α(a0)` over lifting
/// pairs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SimplifiedJoinFailure {
    pub b0: usize,
    pub b1: usize,
}

impl SimplifiedJoinFailure {
    pub fn reconfirm(&self, x: &OrdSet, f: &LaxMorphism) -> bool {
        f.dst.carrier.leq(self.b0, self.b1)
            && match lifting_pair_join(x, f, self.b0, self.b1, None) {
                Some(j) => !x.iso(j, f.dst.valuation[self.b0]),
                None => true,
            }
    }
}

impl std::fmt::Display for SimplifiedJoinFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "over {} <= {}, the target value is not the join of the lifting-pair values",
            self.b0, self.b1
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LccEffectiveFailure {
    TripleLifting(UnliftableTriple),
    SimplifiedJoin(SimplifiedJoinFailure),
}

impl LccEffectiveFailure {
    pub fn reconfirm(&self, x: &OrdSet, f: &LaxMorphism) -> bool {
        match self {
            LccEffectiveFailure::TripleLifting(w) => w.reconfirm(&f.underlying_ord()),
            LccEffectiveFailure::SimplifiedJoin(w) => w.reconfirm(x, f),
        }
    }
}

impl std::fmt::Display for LccEffectiveFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            LccEffectiveFailure::TripleLifting(w) => write!(f, "condition 1 (triple lifting): {w}"),
            LccEffectiveFailure::SimplifiedJoin(w) => write!(f, "condition 2' (value join): {w}"),
        }
    }
}

/// Effective descent over a locally cartesian closed ambient: triple lifting
/// plus the simplified join condition. Must agree with the full check
/// whenever the precondition holds.
pub fn is_effective_descent_lcc(x: &OrdSet, f: &LaxMorphism) -> Result<Verdict<LccEffectiveFailure>> {
    require_locally_complete(x)?;
    if let Some(w) = x.is_locally_cartesian_closed()?.into_witness() {
        return Err(Error::NotLocallyCartesianClosed(w));
    }
    if let Some(w) = ordmap::is_effective_descent(&f.underlying_ord()).into_witness() {
        return Ok(Verdict::fail(LccEffectiveFailure::TripleLifting(w)));
    }
    for b0 in f.dst.carrier.elements() {
        for b1 in f.dst.carrier.elements() {
            if !f.dst.carrier.leq(b0, b1) {
                continue;
            }
            let join = lifting_pair_join(x, f, b0, b1, None).expect("locally complete");
            if !x.iso(join, f.dst.valuation[b0]) {
                return Ok(Verdict::fail(LccEffectiveFailure::SimplifiedJoin(SimplifiedJoinFailure {
                    b0,
                    b1,
                })));
            }
        }
    }
    Ok(Verdict::pass())
}

/// Failure of a fiberwise sufficient condition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FiberwiseFailure {
    /// The carrier map itself fails triple lifting.
    Global(UnliftableTriple),
    /// The fiber map at `x_elt` fails; indices are global carrier indices.
    FiberPair { x_elt: usize, b0: usize, b1: usize },
    FiberTriple { x_elt: usize, b0: usize, b1: usize, b2: usize },
}

impl std::fmt::Display for FiberwiseFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FiberwiseFailure::Global(w) => write!(f, "carrier map: {w}"),
            FiberwiseFailure::FiberPair { x_elt, b0, b1 } => {
                write!(f, "fiber at {x_elt}: pair {b0} <= {b1} has no related lifting")
            }
            FiberwiseFailure::FiberTriple { x_elt, b0, b1, b2 } => {
                write!(f, "fiber at {x_elt}: triple {b0} <= {b1} <= {b2} has no related lifting")
            }
        }
    }
}

/// Sufficient condition: the carrier map and every fiber map are effective
/// descent morphisms of preorders. Strictly stronger than effective descent.
pub fn fiberwise_effective_sufficient(x: &OrdSet, f: &LaxMorphism) -> Verdict<FiberwiseFailure> {
    if let Some(w) = ordmap::is_effective_descent(&f.underlying_ord()).into_witness() {
        return Verdict::fail(FiberwiseFailure::Global(w));
    }
    for x_elt in x.elements() {
        let fm = f.fiber_map(x, x_elt);
        if let Some(w) = ordmap::is_effective_descent(&fm.map).into_witness() {
            return Verdict::fail(FiberwiseFailure::FiberTriple {
                x_elt,
                b0: fm.dst_elements[w.b0],
                b1: fm.dst_elements[w.b1],
                b2: fm.dst_elements[w.b2],
            });
        }
    }
    Verdict::pass()
}

/// Sufficient condition: the carrier map is an effective descent morphism
/// and every fiber map is a descent morphism of preorders.
pub fn fiberwise_descent_sufficient(x: &OrdSet, f: &LaxMorphism) -> Verdict<FiberwiseFailure> {
    if let Some(w) = ordmap::is_effective_descent(&f.underlying_ord()).into_witness() {
        return Verdict::fail(FiberwiseFailure::Global(w));
    }
    for x_elt in x.elements() {
        let fm = f.fiber_map(x, x_elt);
        if let Some(w) = ordmap::is_descent(&fm.map).into_witness() {
            return Verdict::fail(FiberwiseFailure::FiberPair {
                x_elt,
                b0: fm.dst_elements[w.b0],
                b1: fm.dst_elements[w.b1],
            });
        }
    }
    Verdict::pass()
}

/// The restriction of a morphism to one connected component of the ambient.
#[derive(Debug, Clone)]
pub struct ComponentPart {
    /// The component as an ordered set in its own right.
    pub x: OrdSet,
    /// Global `X`-indices of the component elements.
    pub x_elements: Vec<usize>,
    /// The restricted morphism, over `x`.
    pub f: LaxMorphism,
    /// Global source-carrier indices of the restricted source.
    pub src_elements: Vec<usize>,
    /// Global target-carrier indices of the restricted target.
    pub dst_elements: Vec<usize>,
}

/// Split a morphism along the connected components of the ambient. Every
/// descent predicate on the whole morphism is the conjunction of the same
/// predicate over the parts.
pub fn componentwise(x: &OrdSet, f: &LaxMorphism) -> Result<Vec<ComponentPart>> {
    let mut parts = Vec::new();
    for comp in x.connected_components() {
        let src_elements: Vec<usize> = f
            .src
            .carrier
            .elements()
            .filter(|&a| comp.elements.contains(&f.src.valuation[a]))
            .collect();
        let dst_elements: Vec<usize> = f
            .dst
            .carrier
            .elements()
            .filter(|&b| comp.elements.contains(&f.dst.valuation[b]))
            .collect();
        let x_local =
            |global: usize| comp.local_index(global).expect("valuation lands in the component");
        let src = LaxObject::new(
            &comp.sub,
            f.src.carrier.induced(&src_elements),
            src_elements.iter().map(|&a| x_local(f.src.valuation[a])).collect(),
        )
        .expect("restriction of a valid object");
        let dst = LaxObject::new(
            &comp.sub,
            f.dst.carrier.induced(&dst_elements),
            dst_elements.iter().map(|&b| x_local(f.dst.valuation[b])).collect(),
        )
        .expect("restriction of a valid object");
        let mapping: Vec<usize> = src_elements
            .iter()
            .map(|&a| {
                dst_elements
                    .iter()
                    .position(|&b| b == f.apply(a))
                    .expect("lax inequality keeps images in the same component")
            })
            .collect();
        let part_f =
            LaxMorphism::new(&comp.sub, src, dst, mapping).expect("restriction of a valid morphism");
        parts.push(ComponentPart {
            x: comp.sub,
            x_elements: comp.elements,
            f: part_f,
            src_elements,
            dst_elements,
        });
    }
    Ok(parts)
}

/// The checks exposed to callers that dispatch by name.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckKind {
    RegularEpi,
    StableRegularEpi,
    EffectiveDescent,
    EffectiveDescentLcc,
    FamDescent,
    FamEffective,
    OrdEffectiveDescent,
    FiberwiseEffective,
    FiberwiseDescent,
}

impl CheckKind {
    pub const ALL: [CheckKind; 9] = [
        CheckKind::RegularEpi,
        CheckKind::StableRegularEpi,
        CheckKind::EffectiveDescent,
        CheckKind::EffectiveDescentLcc,
        CheckKind::FamDescent,
        CheckKind::FamEffective,
        CheckKind::OrdEffectiveDescent,
        CheckKind::FiberwiseEffective,
        CheckKind::FiberwiseDescent,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CheckKind::RegularEpi => "regular epimorphism",
            CheckKind::StableRegularEpi => "stable regular epimorphism",
            CheckKind::EffectiveDescent => "effective descent morphism",
            CheckKind::EffectiveDescentLcc => "effective descent morphism (lcc shortcut)",
            CheckKind::FamDescent => "descent of the underlying family morphism",
            CheckKind::FamEffective => "effective descent of the underlying family morphism",
            CheckKind::OrdEffectiveDescent => "effective descent of the carrier map",
            CheckKind::FiberwiseEffective => "fiberwise effective-descent sufficient condition",
            CheckKind::FiberwiseDescent => "fiberwise descent sufficient condition",
        }
    }
}

/// Run a named check, rendering the witness for reporting.
pub fn run_check(kind: CheckKind, x: &OrdSet, f: &LaxMorphism) -> Result<Verdict<String>> {
    Ok(match kind {
        CheckKind::RegularEpi => is_regular_epi(x, f)?.map_witness(|w| w.to_string()),
        CheckKind::StableRegularEpi => is_stable_regular_epi(x, f)?.map_witness(|w| w.to_string()),
        CheckKind::EffectiveDescent => is_effective_descent(x, f)?.map_witness(|w| w.to_string()),
        CheckKind::EffectiveDescentLcc => is_effective_descent_lcc(x, f)?.map_witness(|w| w.to_string()),
        CheckKind::FamDescent => fam::is_descent(x, &f.underlying_fam(x))?.map_witness(|w| w.to_string()),
        CheckKind::FamEffective => {
            fam::is_effective(x, &f.underlying_fam(x))?.map_witness(|w| w.to_string())
        }
        CheckKind::OrdEffectiveDescent => {
            ordmap::is_effective_descent(&f.underlying_ord()).map_witness(|w| w.to_string())
        }
        CheckKind::FiberwiseEffective => {
            fiberwise_effective_sufficient(x, f).map_witness(|w| w.to_string())
        }
        CheckKind::FiberwiseDescent => fiberwise_descent_sufficient(x, f).map_witness(|w| w.to_string()),
    })
}

/// Run a named check under antisymmetry validation: the ambient and both
/// carriers must be posets, then the verdict is delegated unchanged.
pub fn poset_variant(kind: CheckKind, x: &OrdSet, f: &LaxMorphism) -> Result<Verdict<String>> {
    if let Some(w) = x.is_poset().into_witness() {
        return Err(Error::NotAPoset { structure: "the ambient", i: w.i, j: w.j });
    }
    if let Some(w) = f.src.carrier.is_poset().into_witness() {
        return Err(Error::NotAPoset { structure: "the source carrier", i: w.i, j: w.j });
    }
    if let Some(w) = f.dst.carrier.is_poset().into_witness() {
        return Err(Error::NotAPoset { structure: "the target carrier", i: w.i, j: w.j });
    }
    run_check(kind, x, f)
}

/// Posetal reflection of the ambient alone: quotient `X` by `≅` and
/// re-index the valuations. Every check verdict is invariant under this,
/// because the conditions only see values through `<=` and `≅`.
pub fn reflect_ambient(x: &OrdSet, f: &LaxMorphism) -> (OrdSet, LaxMorphism) {
    let (xq, x_map) = x.posetal_reflection();
    let src = LaxObject::new(
        &xq,
        f.src.carrier.clone(),
        f.src.valuation.iter().map(|&v| x_map[v]).collect(),
    )
    .expect("reflection preserves monotonicity");
    let dst = LaxObject::new(
        &xq,
        f.dst.carrier.clone(),
        f.dst.valuation.iter().map(|&v| x_map[v]).collect(),
    )
    .expect("reflection preserves monotonicity");
    let fq = LaxMorphism::new(&xq, src, dst, f.mapping().to_vec())
        .expect("reflection preserves the morphism laws");
    (xq, fq)
}

/// Posetal reflection of a whole morphism: quotient the ambient and both
/// carriers by `≅`, producing an instance of posets.
///
/// The value-join conditions survive this quotient, but carrier-level
/// lifting conditions need not: collapsing isomorphic target elements can
/// turn a non-surjective map into a surjective one, and the inclusion of
/// posets into preorders is not a one-categorical equivalence.
pub fn reflect(x: &OrdSet, f: &LaxMorphism) -> (OrdSet, LaxMorphism) {
    let (xq, x_map) = x.posetal_reflection();
    let (aq, a_map) = f.src.carrier.posetal_reflection();
    let (bq, b_map) = f.dst.carrier.posetal_reflection();
    let mut alpha = vec![0usize; aq.size()];
    for a in f.src.carrier.elements() {
        alpha[a_map[a]] = x_map[f.src.valuation[a]];
    }
    let mut beta = vec![0usize; bq.size()];
    for b in f.dst.carrier.elements() {
        beta[b_map[b]] = x_map[f.dst.valuation[b]];
    }
    let mut mapping = vec![0usize; aq.size()];
    for a in f.src.carrier.elements() {
        mapping[a_map[a]] = b_map[f.apply(a)];
    }
    let src = LaxObject::new(&xq, aq, alpha).expect("reflection preserves monotonicity");
    let dst = LaxObject::new(&xq, bq, beta).expect("reflection preserves monotonicity");
    let fq = LaxMorphism::new(&xq, src, dst, mapping).expect("reflection preserves the morphism laws");
    (xq, fq)
}

/// Underlying family morphism of `f`, exposed for dispatchers.
pub fn underlying_fam(x: &OrdSet, f: &LaxMorphism) -> FamMorphism {
    f.underlying_fam(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{
        cond3_fixture, diamond, fiber_gap_fixture, identity_fixture, js_fixture, sre_fixture,
    };

    #[test]
    fn identity_passes_everything() {
        let (x, f) = identity_fixture();
        for kind in CheckKind::ALL {
            assert!(run_check(kind, &x, &f).unwrap().holds(), "{}", kind.name());
        }
    }

    #[test]
    fn regular_epi_needs_the_value_join() {
        let x = OrdSet::chain(2);
        let a = LaxObject::new(&x, OrdSet::discrete(1), vec![0]).unwrap();
        let b = LaxObject::new(&x, OrdSet::discrete(1), vec![1]).unwrap();
        let f = LaxMorphism::new(&x, a, b, vec![0]).unwrap();
        let w = is_regular_epi(&x, &f).unwrap().into_witness().unwrap();
        assert_eq!(w, LaxRegEpiFailure::ValueJoin { b: 0 });
        assert!(w.reconfirm(&x, &f));
        let (x, f) = sre_fixture();
        assert!(is_regular_epi(&x, &f).unwrap().holds());
    }

    #[test]
    fn sre_fixture_is_stable_but_not_effective() {
        let (x, f) = sre_fixture();
        assert!(is_stable_regular_epi(&x, &f).unwrap().holds());
        assert!(stable_regular_epi_direct(&x, &f).unwrap().holds());
        assert!(ordmap::is_effective_descent(&f.underlying_ord()).holds());
        let w = condition_pair_join(&x, &f).unwrap().into_witness().unwrap();
        assert_eq!(w, PairJoinFailure { b0: 0, b1: 1, w: 1 });
        assert!(w.reconfirm(&x, &f));
        assert!(condition_datum_recovery(&x, &f).unwrap().holds());
        match is_effective_descent(&x, &f).unwrap().into_witness().unwrap() {
            EffectiveDescentFailure::PairJoin(w) => {
                assert_eq!(w, PairJoinFailure { b0: 0, b1: 1, w: 1 })
            }
            other => panic!("expected a pair-join witness, got {other:?}"),
        }
    }

    #[test]
    fn sre_fixture_fails_the_lcc_shortcut_identically() {
        let (x, f) = sre_fixture();
        let w = is_effective_descent_lcc(&x, &f).unwrap().into_witness().unwrap();
        match w {
            LccEffectiveFailure::SimplifiedJoin(s) => {
                assert_eq!(s, SimplifiedJoinFailure { b0: 0, b1: 1 });
                assert!(s.reconfirm(&x, &f));
            }
            other => panic!("expected a simplified-join witness, got {other:?}"),
        }
    }

    #[test]
    fn cond3_fixture_fails_only_datum_recovery() {
        let (x, f) = cond3_fixture();
        assert!(ordmap::is_effective_descent(&f.underlying_ord()).holds());
        assert!(condition_pair_join(&x, &f).unwrap().holds());
        let w = condition_datum_recovery(&x, &f).unwrap().into_witness().unwrap();
        assert_eq!(w.sigma, vec![1, 2]); // σ = (u, v)
        assert_eq!((w.b, w.a_prime), (0, 0));
        assert!(w.reconfirm(&x, &f));
        match is_effective_descent(&x, &f).unwrap().into_witness().unwrap() {
            EffectiveDescentFailure::DatumRecovery(_) => {}
            other => panic!("expected a datum-recovery witness, got {other:?}"),
        }
    }

    #[test]
    fn js_fixture_fails_only_triple_lifting() {
        let (x, f) = js_fixture();
        let verdict = is_effective_descent(&x, &f).unwrap();
        match verdict.into_witness().unwrap() {
            EffectiveDescentFailure::TripleLifting(w) => {
                assert_eq!((w.b0, w.b1, w.b2), (0, 1, 2));
            }
            other => panic!("expected a triple-lifting witness, got {other:?}"),
        }
        assert!(condition_pair_join(&x, &f).unwrap().holds());
        assert!(condition_datum_recovery(&x, &f).unwrap().holds());
        assert!(is_stable_regular_epi(&x, &f).unwrap().holds());
    }

    #[test]
    fn fiber_gap_is_effective_but_not_fiberwise() {
        let (x, f) = fiber_gap_fixture();
        assert!(is_effective_descent(&x, &f).unwrap().holds());
        assert!(is_effective_descent_lcc(&x, &f).unwrap().holds());
        let w = fiberwise_effective_sufficient(&x, &f).into_witness().unwrap();
        match w {
            FiberwiseFailure::FiberTriple { x_elt, .. } => assert!(x_elt > 0),
            other => panic!("expected a fiber witness, got {other:?}"),
        }
        assert!(!fiberwise_descent_sufficient(&x, &f).holds());
    }

    #[test]
    fn fiberwise_conditions_hold_on_identities() {
        let (x, f) = identity_fixture();
        assert!(fiberwise_effective_sufficient(&x, &f).holds());
        assert!(fiberwise_descent_sufficient(&x, &f).holds());
    }

    #[test]
    fn componentwise_splits_by_valuation() {
        // X = 2-chain ⊔ 2-chain; A and B straddle both components.
        let x = OrdSet::from_pairs(4, &[(0, 1), (2, 3)]).unwrap();
        let a = LaxObject::new(&x, OrdSet::discrete(3), vec![0, 2, 3]).unwrap();
        let b = LaxObject::new(&x, OrdSet::discrete(2), vec![1, 3]).unwrap();
        let f = LaxMorphism::new(&x, a, b, vec![0, 1, 1]).unwrap();
        let parts = componentwise(&x, &f).unwrap();
        assert_eq!(parts.len(), 2);
        assert_eq!(parts[0].src_elements, vec![0]);
        assert_eq!(parts[0].dst_elements, vec![0]);
        assert_eq!(parts[1].src_elements, vec![1, 2]);
        assert_eq!(parts[1].dst_elements, vec![1]);
        // Connected ambient: a single part, the morphism itself.
        let (x, f) = sre_fixture();
        let parts = componentwise(&x, &f).unwrap();
        assert_eq!(parts.len(), 1);
        assert_eq!(parts[0].f.mapping(), f.mapping());
        // A component not hit by the valuations yields the empty morphism.
        let x = OrdSet::discrete(2);
        let a = LaxObject::new(&x, OrdSet::discrete(1), vec![0]).unwrap();
        let f = LaxMorphism::new(&x, a.clone(), a, vec![0]).unwrap();
        let parts = componentwise(&x, &f).unwrap();
        assert_eq!(parts.len(), 2);
        assert_eq!(parts[1].f.src.size(), 0);
        assert_eq!(parts[1].f.dst.size(), 0);
    }

    #[test]
    fn verdicts_survive_ambient_reflection() {
        // A preorder instance: ambient with an iso pair, carriers with
        // duplicated elements.
        let x = OrdSet::from_pairs(3, &[(0, 1), (1, 0), (0, 2)]).unwrap();
        let a = LaxObject::new(&x, OrdSet::from_pairs(2, &[(0, 1), (1, 0)]).unwrap(), vec![0, 1])
            .unwrap();
        let b = LaxObject::new(&x, OrdSet::discrete(1), vec![2]).unwrap();
        let f = LaxMorphism::new(&x, a, b, vec![0, 0]).unwrap();
        let (xq, fq) = reflect_ambient(&x, &f);
        assert!(xq.is_poset().holds());
        for kind in CheckKind::ALL {
            let before = run_check(kind, &x, &f).unwrap().holds();
            let after = run_check(kind, &xq, &fq).unwrap().holds();
            assert_eq!(before, after, "{}", kind.name());
        }
        // Full reflection also produces posets here.
        let (xq, fq) = reflect(&x, &f);
        assert!(xq.is_poset().holds());
        assert!(fq.src.carrier.is_poset().holds());
    }

    #[test]
    fn full_reflection_can_change_lifting_verdicts() {
        // Hitting one element of an isomorphic pair is not surjective, hence
        // not a regular epimorphism; after collapsing the pair it is. This
        // pins the strict one-categorical reading of the carrier classes.
        let x = OrdSet::discrete(1);
        let a = LaxObject::new(&x, OrdSet::discrete(1), vec![0]).unwrap();
        let b = LaxObject::new(&x, OrdSet::from_pairs(2, &[(0, 1), (1, 0)]).unwrap(), vec![0, 0])
            .unwrap();
        let f = LaxMorphism::new(&x, a, b, vec![0]).unwrap();
        assert!(!is_regular_epi(&x, &f).unwrap().holds());
        let (xq, fq) = reflect(&x, &f);
        assert!(is_regular_epi(&xq, &fq).unwrap().holds());
        // The ambient-only reflection leaves the verdict alone.
        let (xa, fa) = reflect_ambient(&x, &f);
        assert!(!is_regular_epi(&xa, &fa).unwrap().holds());
    }

    #[test]
    fn poset_variant_validates_and_delegates() {
        let (x, f) = sre_fixture();
        for kind in CheckKind::ALL {
            let direct = run_check(kind, &x, &f).unwrap().holds();
            let validated = poset_variant(kind, &x, &f).unwrap().holds();
            assert_eq!(direct, validated);
        }
        let total = OrdSet::from_pairs(2, &[(0, 1), (1, 0)]).unwrap();
        let a = LaxObject::new(&total, OrdSet::discrete(1), vec![0]).unwrap();
        let f = LaxMorphism::new(&total, a.clone(), a, vec![0]).unwrap();
        assert!(matches!(
            poset_variant(CheckKind::EffectiveDescent, &total, &f),
            Err(Error::NotAPoset { structure: "the ambient", .. })
        ));
    }

    #[test]
    fn lcc_shortcut_requires_the_preconditions() {
        let (x, f) = cond3_fixture();
        assert!(matches!(is_effective_descent_lcc(&x, &f), Err(Error::NotLocallyCartesianClosed(_))));
        let vee = OrdSet::from_pairs(3, &[(0, 2), (1, 2)]).unwrap();
        let a = LaxObject::new(&vee, OrdSet::discrete(1), vec![0]).unwrap();
        let g = LaxMorphism::new(&vee, a.clone(), a, vec![0]).unwrap();
        assert!(matches!(is_effective_descent(&vee, &g), Err(Error::NotLocallyComplete(_))));
    }

    #[test]
    fn empty_morphism_over_empty_ambient() {
        let x = OrdSet::discrete(0);
        let a = LaxObject::new(&x, OrdSet::discrete(0), vec![]).unwrap();
        let f = LaxMorphism::new(&x, a.clone(), a, vec![]).unwrap();
        assert!(is_effective_descent(&x, &f).unwrap().holds());
        assert!(is_stable_regular_epi(&x, &f).unwrap().holds());
        assert!(is_regular_epi(&x, &f).unwrap().holds());
    }

    #[test]
    fn fiber_gap_verdict_matches_the_diamond_join() {
        // The diamond example in family terms: the values p, q join to top.
        let (x, f) = fiber_gap_fixture();
        assert!(is_stable_regular_epi(&x, &f).unwrap().holds());
        assert!(condition_datum_recovery(&x, &f).unwrap().holds());
    }
}
