//! Monotone maps between finite preorders, their pullbacks, and the
//! lifting-based descent predicates in `Ord`.
//!
//! A monotone surjection is a descent morphism iff every related pair of the
//! codomain lifts to a related pair of the domain, and an effective descent
//! morphism iff every related *triple* lifts. Regular epimorphisms are the
//! surjections whose codomain order is generated by the image of the domain
//! order; the brute-force coequalizer in the oracle module cross-checks this
//! characterization.

use crate::error::{Error, Result};
use crate::ordset::OrdSet;
use crate::verdict::Verdict;

/// A monotone map between two finite preorders.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonotoneMap {
    pub src: OrdSet,
    pub dst: OrdSet,
    mapping: Vec<usize>,
}

/// Witness that a raw map fails monotonicity: `i <= j` in the source but the
/// images are unrelated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MonotonicityFailure {
    pub i: usize,
    pub j: usize,
}

impl std::fmt::Display for MonotonicityFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} <= {} in the source but the images are unrelated", self.i, self.j)
    }
}

/// A codomain pair `b0 <= b1` with no related preimage pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct UnliftablePair {
    pub b0: usize,
    pub b1: usize,
}

impl UnliftablePair {
    pub fn reconfirm(&self, f: &MonotoneMap) -> bool {
        f.dst.leq(self.b0, self.b1) && !f.lifts_pair(self.b0, self.b1)
    }
}

impl std::fmt::Display for UnliftablePair {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "pair {} <= {} has no related lifting", self.b0, self.b1)
    }
}

/// A codomain triple `b0 <= b1 <= b2` with no related preimage triple.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct UnliftableTriple {
    pub b0: usize,
    pub b1: usize,
    pub b2: usize,
}

impl UnliftableTriple {
    pub fn reconfirm(&self, f: &MonotoneMap) -> bool {
        f.dst.leq(self.b0, self.b1)
            && f.dst.leq(self.b1, self.b2)
            && !f.lifts_triple(self.b0, self.b1, self.b2)
    }
}

impl std::fmt::Display for UnliftableTriple {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "triple {} <= {} <= {} has no related lifting", self.b0, self.b1, self.b2)
    }
}

/// Why a map fails to be a regular epimorphism in `Ord`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RegularEpiFailure {
    /// `b` has no preimage.
    NotSurjective { b: usize },
    /// `b0 <= b1` holds but is not generated by images of source pairs.
    OrderNotGenerated { b0: usize, b1: usize },
}

impl RegularEpiFailure {
    pub fn reconfirm(&self, f: &MonotoneMap) -> bool {
        match *self {
            RegularEpiFailure::NotSurjective { b } => !f.mapping.contains(&b),
            RegularEpiFailure::OrderNotGenerated { b0, b1 } => {
                f.dst.leq(b0, b1) && !f.image_order().leq(b0, b1)
            }
        }
    }
}

impl std::fmt::Display for RegularEpiFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RegularEpiFailure::NotSurjective { b } => write!(f, "element {b} has no preimage"),
            RegularEpiFailure::OrderNotGenerated { b0, b1 } => {
                write!(f, "{b0} <= {b1} is not generated by the image of the source order")
            }
        }
    }
}

impl MonotoneMap {
    /// Validating constructor.
    pub fn new(src: OrdSet, dst: OrdSet, mapping: Vec<usize>) -> Result<Self> {
        if mapping.len() != src.size() {
            return Err(Error::LengthMismatch { expected: src.size(), got: mapping.len() });
        }
        for &v in &mapping {
            if v >= dst.size() {
                return Err(Error::IndexOutOfRange { index: v, size: dst.size() });
            }
        }
        if let Some(w) = monotonicity(&src, &dst, &mapping)?.into_witness() {
            return Err(Error::NonMonotoneMap { i: w.i, j: w.j });
        }
        Ok(MonotoneMap { src, dst, mapping })
    }

    pub fn identity(x: &OrdSet) -> Self {
        MonotoneMap { src: x.clone(), dst: x.clone(), mapping: x.elements().collect() }
    }

    #[inline]
    pub fn apply(&self, a: usize) -> usize {
        self.mapping[a]
    }

    pub fn mapping(&self) -> &[usize] {
        &self.mapping
    }

    pub fn is_surjective(&self) -> bool {
        self.dst.elements().all(|b| self.mapping.contains(&b))
    }

    /// Fiber of `b`, in increasing order.
    pub fn fiber(&self, b: usize) -> Vec<usize> {
        self.src.elements().filter(|&a| self.mapping[a] == b).collect()
    }

    pub fn compose(&self, then: &MonotoneMap) -> Result<MonotoneMap> {
        if self.dst != then.src {
            return Err(Error::CarrierMismatch);
        }
        Ok(MonotoneMap {
            src: self.src.clone(),
            dst: then.dst.clone(),
            mapping: self.mapping.iter().map(|&a| then.mapping[a]).collect(),
        })
    }

    fn lifts_pair(&self, b0: usize, b1: usize) -> bool {
        self.src.elements().any(|a0| {
            self.mapping[a0] == b0
                && self.src.elements().any(|a1| self.mapping[a1] == b1 && self.src.leq(a0, a1))
        })
    }

    fn lifts_triple(&self, b0: usize, b1: usize, b2: usize) -> bool {
        for a0 in self.src.elements() {
            if self.mapping[a0] != b0 {
                continue;
            }
            for a1 in self.src.elements() {
                if self.mapping[a1] != b1 || !self.src.leq(a0, a1) {
                    continue;
                }
                for a2 in self.src.elements() {
                    if self.mapping[a2] == b2 && self.src.leq(a1, a2) {
                        return true;
                    }
                }
            }
        }
        false
    }

    /// The preorder on the codomain carrier generated by the images of the
    /// source order.
    fn image_order(&self) -> OrdSet {
        let mut pairs = Vec::new();
        for a0 in self.src.elements() {
            for a1 in self.src.elements() {
                if self.src.leq(a0, a1) {
                    pairs.push((self.mapping[a0], self.mapping[a1]));
                }
            }
        }
        OrdSet::from_pairs(self.dst.size(), &pairs).expect("indices validated on construction")
    }
}

/// Monotonicity check for a raw mapping; the witness is the first violating
/// source pair in lexicographic order.
pub fn monotonicity(src: &OrdSet, dst: &OrdSet, mapping: &[usize]) -> Result<Verdict<MonotonicityFailure>> {
    if mapping.len() != src.size() {
        return Err(Error::LengthMismatch { expected: src.size(), got: mapping.len() });
    }
    for &v in mapping {
        if v >= dst.size() {
            return Err(Error::IndexOutOfRange { index: v, size: dst.size() });
        }
    }
    for i in src.elements() {
        for j in src.elements() {
            if src.leq(i, j) && !dst.leq(mapping[i], mapping[j]) {
                return Ok(Verdict::fail(MonotonicityFailure { i, j }));
            }
        }
    }
    Ok(Verdict::pass())
}

/// Pullback of `f` and `g` over their common codomain: the carrier is the
/// lexicographically ordered list of pairs `(a, c)` with `f(a) = g(c)`, with
/// the componentwise order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrdPullback {
    pub carrier: OrdSet,
    /// `pairs[p] = (a, c)` identifies carrier element `p`.
    pub pairs: Vec<(usize, usize)>,
    pub proj1: MonotoneMap,
    pub proj2: MonotoneMap,
}

impl OrdPullback {
    pub fn index_of(&self, a: usize, c: usize) -> Option<usize> {
        self.pairs.iter().position(|&p| p == (a, c))
    }
}

pub fn pullback(f: &MonotoneMap, g: &MonotoneMap) -> Result<OrdPullback> {
    if f.dst != g.dst {
        return Err(Error::CarrierMismatch);
    }
    let mut pairs = Vec::new();
    for a in f.src.elements() {
        for c in g.src.elements() {
            if f.apply(a) == g.apply(c) {
                pairs.push((a, c));
            }
        }
    }
    let n = pairs.len();
    let mut leq = vec![false; n * n];
    for (p, &(a, c)) in pairs.iter().enumerate() {
        for (q, &(a2, c2)) in pairs.iter().enumerate() {
            leq[p * n + q] = f.src.leq(a, a2) && g.src.leq(c, c2);
        }
    }
    let carrier = OrdSet::from_relation(n, leq).expect("componentwise order is closed");
    let proj1 = MonotoneMap {
        src: carrier.clone(),
        dst: f.src.clone(),
        mapping: pairs.iter().map(|&(a, _)| a).collect(),
    };
    let proj2 = MonotoneMap {
        src: carrier.clone(),
        dst: g.src.clone(),
        mapping: pairs.iter().map(|&(_, c)| c).collect(),
    };
    Ok(OrdPullback { carrier, pairs, proj1, proj2 })
}

/// Kernel pair of `f`: the pullback of `f` along itself.
pub fn kernel_pair(f: &MonotoneMap) -> OrdPullback {
    pullback(f, f).expect("a map shares its own codomain")
}

/// Descent (equivalently, stable regular epi) in `Ord`: every related pair
/// of the codomain lifts. Witness search is lexicographic in `(b0, b1)`.
pub fn is_descent(f: &MonotoneMap) -> Verdict<UnliftablePair> {
    for b0 in f.dst.elements() {
        for b1 in f.dst.elements() {
            if f.dst.leq(b0, b1) && !f.lifts_pair(b0, b1) {
                return Verdict::fail(UnliftablePair { b0, b1 });
            }
        }
    }
    Verdict::pass()
}

/// Effective descent in `Ord`: every related triple of the codomain lifts.
/// Witness search is lexicographic in `(b0, b1, b2)`.
pub fn is_effective_descent(f: &MonotoneMap) -> Verdict<UnliftableTriple> {
    for b0 in f.dst.elements() {
        for b1 in f.dst.elements() {
            if !f.dst.leq(b0, b1) {
                continue;
            }
            for b2 in f.dst.elements() {
                if f.dst.leq(b1, b2) && !f.lifts_triple(b0, b1, b2) {
                    return Verdict::fail(UnliftableTriple { b0, b1, b2 });
                }
            }
        }
    }
    Verdict::pass()
}

/// Regular epimorphism in `Ord`: surjective, and the codomain order is the
/// closure of the image of the source order.
pub fn is_regular_epi(f: &MonotoneMap) -> Verdict<RegularEpiFailure> {
    for b in f.dst.elements() {
        if !f.mapping.contains(&b) {
            return Verdict::fail(RegularEpiFailure::NotSurjective { b });
        }
    }
    let generated = f.image_order();
    for b0 in f.dst.elements() {
        for b1 in f.dst.elements() {
            if f.dst.leq(b0, b1) && !generated.leq(b0, b1) {
                return Verdict::fail(RegularEpiFailure::OrderNotGenerated { b0, b1 });
            }
        }
    }
    Verdict::pass()
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Domain a0 <= a1, a1' <= a2, a0 <= a2 over the 3-chain; descent but not
    /// effective descent.
    pub(crate) fn js_map() -> MonotoneMap {
        let a = OrdSet::from_pairs(4, &[(0, 1), (2, 3), (0, 3)]).unwrap();
        let b = OrdSet::chain(3);
        MonotoneMap::new(a, b, vec![0, 1, 1, 2]).unwrap()
    }

    #[test]
    fn monotonicity_witnesses() {
        let x = OrdSet::chain(2);
        assert!(monotonicity(&x, &x, &[0, 1]).unwrap().holds());
        assert!(monotonicity(&x, &x, &[0, 0]).unwrap().holds());
        let w = monotonicity(&x, &OrdSet::discrete(2), &[0, 1]).unwrap().into_witness().unwrap();
        assert_eq!((w.i, w.j), (0, 1));
    }

    #[test]
    fn pullback_of_identity_recovers_domain() {
        let b = OrdSet::chain(3);
        let g = MonotoneMap::new(OrdSet::discrete(2), b.clone(), vec![0, 2]).unwrap();
        let pb = pullback(&MonotoneMap::identity(&b), &g).unwrap();
        assert_eq!(pb.carrier, g.src);
        assert_eq!(pb.proj2.mapping(), &[0, 1]);
    }

    #[test]
    fn pullback_of_singletons() {
        let pt = OrdSet::discrete(1);
        let f = MonotoneMap::new(pt.clone(), pt.clone(), vec![0]).unwrap();
        let pb = pullback(&f, &f).unwrap();
        assert_eq!(pb.carrier.size(), 1);
    }

    #[test]
    fn kernel_pair_of_js_map_has_six_elements() {
        let kp = kernel_pair(&js_map());
        assert_eq!(kp.carrier.size(), 6);
        assert!(kp.pairs.contains(&(1, 2)));
        // (a0, a0) <= (a1, a1) componentwise, but not (a0, a0) <= (a1, a1').
        let d = kp.index_of(0, 0).unwrap();
        assert!(kp.carrier.leq(d, kp.index_of(1, 1).unwrap()));
        assert!(!kp.carrier.leq(d, kp.index_of(1, 2).unwrap()));
    }

    #[test]
    fn descent_on_js_map() {
        assert!(is_descent(&MonotoneMap::identity(&OrdSet::chain(2))).holds());
        assert!(is_descent(&js_map()).holds());
        let f =
            MonotoneMap::new(OrdSet::discrete(1), OrdSet::discrete(2), vec![0]).unwrap();
        let w = is_descent(&f).into_witness().unwrap();
        assert_eq!((w.b0, w.b1), (1, 1));
        assert!(w.reconfirm(&f));
    }

    #[test]
    fn effective_descent_fails_on_js_map() {
        assert!(is_effective_descent(&MonotoneMap::identity(&OrdSet::chain(3))).holds());
        let f = js_map();
        let w = is_effective_descent(&f).into_witness().unwrap();
        assert_eq!((w.b0, w.b1, w.b2), (0, 1, 2));
        assert!(w.reconfirm(&f));
    }

    #[test]
    fn interval_fibers_over_a_chain_are_effective() {
        // Surjective chain-to-chain map whose fibers are intervals.
        let f = MonotoneMap::new(OrdSet::chain(4), OrdSet::chain(2), vec![0, 0, 1, 1]).unwrap();
        assert!(is_effective_descent(&f).holds());
    }

    #[test]
    fn regular_epi_needs_generated_order() {
        assert!(is_regular_epi(&MonotoneMap::identity(&OrdSet::chain(2))).holds());
        let f = MonotoneMap::new(OrdSet::discrete(2), OrdSet::chain(2), vec![0, 1]).unwrap();
        let w = is_regular_epi(&f).into_witness().unwrap();
        assert_eq!(w, RegularEpiFailure::OrderNotGenerated { b0: 0, b1: 1 });
        assert!(w.reconfirm(&f));
        let g = MonotoneMap::new(OrdSet::chain(1), OrdSet::chain(2), vec![0]).unwrap();
        assert_eq!(
            is_regular_epi(&g).into_witness(),
            Some(RegularEpiFailure::NotSurjective { b: 1 })
        );
    }
}
