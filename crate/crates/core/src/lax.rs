//! Ordered sets valued in a fixed ordered set: objects are monotone
//! valuations `α : A → X`, morphisms are monotone maps `f` with
//! `α(a) <= β(f(a))` pointwise.
//!
//! Pullbacks use the explicit meet recipe: the carrier is the pullback of
//! the underlying monotone maps and the valuation of a pair `(a, c)` over
//! `b` is `α(a) ∧ γ(c)` computed inside `↓β(b)`. Fibers `A_x` are the
//! induced suborders on `{a : x <= α(a)}`; they shrink as `x` grows.
//!
//! Two forgetful functors are implemented pointwise: one drops the valuation
//! (into monotone maps), the other drops the order (into families).

use crate::error::{Error, Result};
use crate::fam::{FamMorphism, FamObject};
use crate::ordmap::{self, MonotoneMap};
use crate::ordset::OrdSet;
use crate::verdict::Verdict;

/// An ordered carrier with a monotone `X`-valuation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaxObject {
    pub carrier: OrdSet,
    pub valuation: Vec<usize>,
}

impl LaxObject {
    /// Validating constructor; rejects non-monotone valuations with the
    /// offending carrier pair.
    pub fn new(x: &OrdSet, carrier: OrdSet, valuation: Vec<usize>) -> Result<Self> {
        if valuation.len() != carrier.size() {
            return Err(Error::LengthMismatch { expected: carrier.size(), got: valuation.len() });
        }
        for &v in &valuation {
            if v >= x.size() {
                return Err(Error::IndexOutOfRange { index: v, size: x.size() });
            }
        }
        for i in carrier.elements() {
            for j in carrier.elements() {
                if carrier.leq(i, j) && !x.leq(valuation[i], valuation[j]) {
                    return Err(Error::NonMonotoneValuation { i, j });
                }
            }
        }
        Ok(LaxObject { carrier, valuation })
    }

    pub fn size(&self) -> usize {
        self.carrier.size()
    }

    /// The underlying family: forget the order, keep the values.
    pub fn underlying_fam(&self) -> FamObject {
        FamObject { values: self.valuation.clone() }
    }

    /// Fiber at `x_elt`: the induced suborder on `{a : x_elt <= α(a)}`,
    /// together with the inclusion (global indices of the fiber elements).
    pub fn fiber(&self, x: &OrdSet, x_elt: usize) -> Fiber {
        let elements: Vec<usize> =
            self.carrier.elements().filter(|&a| x.leq(x_elt, self.valuation[a])).collect();
        let sub = self.carrier.induced(&elements);
        Fiber { elements, sub }
    }
}

/// A fiber `A_x` with its inclusion into the ambient carrier.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fiber {
    pub elements: Vec<usize>,
    pub sub: OrdSet,
}

/// A morphism of valued ordered sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaxMorphism {
    pub src: LaxObject,
    pub dst: LaxObject,
    mapping: Vec<usize>,
}

/// Why a raw map fails to be a morphism.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LaxFailure {
    /// Carrier map not monotone at this source pair.
    NotMonotone { i: usize, j: usize },
    /// `α(a) <= β(f(a))` fails at this element.
    ValueNotBelow { element: usize },
}

impl std::fmt::Display for LaxFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            LaxFailure::NotMonotone { i, j } => {
                write!(f, "carrier map is not monotone on {i} <= {j}")
            }
            LaxFailure::ValueNotBelow { element } => {
                write!(f, "value at {element} is not below the value at its image")
            }
        }
    }
}

impl LaxMorphism {
    pub fn new(x: &OrdSet, src: LaxObject, dst: LaxObject, mapping: Vec<usize>) -> Result<Self> {
        match morphism_check(x, &src, &dst, &mapping)?.into_witness() {
            None => Ok(LaxMorphism { src, dst, mapping }),
            Some(LaxFailure::NotMonotone { i, j }) => Err(Error::NonMonotoneMap { i, j }),
            Some(LaxFailure::ValueNotBelow { element }) => Err(Error::NotLax { element }),
        }
    }

    pub fn identity(obj: &LaxObject) -> Self {
        LaxMorphism { src: obj.clone(), dst: obj.clone(), mapping: obj.carrier.elements().collect() }
    }

    #[inline]
    pub fn apply(&self, a: usize) -> usize {
        self.mapping[a]
    }

    pub fn mapping(&self) -> &[usize] {
        &self.mapping
    }

    pub fn fiber_of_map(&self, b: usize) -> Vec<usize> {
        self.src.carrier.elements().filter(|&a| self.mapping[a] == b).collect()
    }

    /// Forget the valuations.
    pub fn underlying_ord(&self) -> MonotoneMap {
        MonotoneMap::new(self.src.carrier.clone(), self.dst.carrier.clone(), self.mapping.clone())
            .expect("validated on construction")
    }

    /// Forget the orders.
    pub fn underlying_fam(&self, x: &OrdSet) -> FamMorphism {
        FamMorphism::new(x, self.src.underlying_fam(), self.dst.underlying_fam(), self.mapping.clone())
            .expect("validated on construction")
    }

    pub fn compose(&self, x: &OrdSet, then: &LaxMorphism) -> Result<LaxMorphism> {
        if self.dst != then.src {
            return Err(Error::CarrierMismatch);
        }
        LaxMorphism::new(
            x,
            self.src.clone(),
            then.dst.clone(),
            self.mapping.iter().map(|&a| then.mapping[a]).collect(),
        )
    }

    /// The (co)restriction `f_x : A_x → B_x`, well defined by the lax
    /// inequality. Returns the monotone map between the fiber suborders plus
    /// both inclusions.
    pub fn fiber_map(&self, x: &OrdSet, x_elt: usize) -> FiberMap {
        let src_fiber = self.src.fiber(x, x_elt);
        let dst_fiber = self.dst.fiber(x, x_elt);
        let mapping: Vec<usize> = src_fiber
            .elements
            .iter()
            .map(|&a| {
                dst_fiber
                    .local_index_unchecked(self.mapping[a])
            })
            .collect();
        let map = MonotoneMap::new(src_fiber.sub.clone(), dst_fiber.sub.clone(), mapping)
            .expect("restriction of a monotone map is monotone");
        FiberMap { map, src_elements: src_fiber.elements, dst_elements: dst_fiber.elements }
    }
}

impl Fiber {
    fn local_index_unchecked(&self, global: usize) -> usize {
        self.elements
            .iter()
            .position(|&e| e == global)
            .expect("lax inequality keeps images inside the fiber")
    }
}

/// The restriction of a morphism to a fiber.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiberMap {
    pub map: MonotoneMap,
    pub src_elements: Vec<usize>,
    pub dst_elements: Vec<usize>,
}

/// Check a raw carrier map for monotonicity and the lax inequality.
pub fn morphism_check(
    x: &OrdSet,
    src: &LaxObject,
    dst: &LaxObject,
    mapping: &[usize],
) -> Result<Verdict<LaxFailure>> {
    match ordmap::monotonicity(&src.carrier, &dst.carrier, mapping)?.into_witness() {
        None => {}
        Some(w) => return Ok(Verdict::fail(LaxFailure::NotMonotone { i: w.i, j: w.j })),
    }
    for a in src.carrier.elements() {
        if !x.leq(src.valuation[a], dst.valuation[mapping[a]]) {
            return Ok(Verdict::fail(LaxFailure::ValueNotBelow { element: a }));
        }
    }
    Ok(Verdict::pass())
}

/// A pullback in the valued setting: carrier pairs with the componentwise
/// order, valuation `(a, c) ↦ α(a) ∧ γ(c)` inside `↓β(b)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaxPullback {
    pub object: LaxObject,
    pub pairs: Vec<(usize, usize)>,
    pub proj1: LaxMorphism,
    pub proj2: LaxMorphism,
}

impl LaxPullback {
    pub fn index_of(&self, a: usize, c: usize) -> Option<usize> {
        self.pairs.iter().position(|&p| p == (a, c))
    }
}

pub fn pullback(x: &OrdSet, f: &LaxMorphism, g: &LaxMorphism) -> Result<LaxPullback> {
    if f.dst != g.dst {
        return Err(Error::CarrierMismatch);
    }
    let underlying = ordmap::pullback(&f.underlying_ord(), &g.underlying_ord())?;
    let mut valuation = Vec::with_capacity(underlying.pairs.len());
    for &(a, c) in &underlying.pairs {
        let bound = f.dst.valuation[f.apply(a)];
        let (va, vc) = (f.src.valuation[a], g.src.valuation[c]);
        match x.local_meet(bound, va, vc)? {
            Some(m) => valuation.push(m),
            None => return Err(Error::MissingLocalMeet { bound, x: va, y: vc }),
        }
    }
    let object = LaxObject::new(x, underlying.carrier, valuation)
        .expect("meets of monotone valuations are monotone on the componentwise order");
    let proj1 = LaxMorphism {
        src: object.clone(),
        dst: f.src.clone(),
        mapping: underlying.pairs.iter().map(|&(a, _)| a).collect(),
    };
    let proj2 = LaxMorphism {
        src: object.clone(),
        dst: g.src.clone(),
        mapping: underlying.pairs.iter().map(|&(_, c)| c).collect(),
    };
    Ok(LaxPullback { object, pairs: underlying.pairs, proj1, proj2 })
}

/// Kernel pair of `f` in the valued setting.
pub fn kernel_pair(x: &OrdSet, f: &LaxMorphism) -> Result<LaxPullback> {
    pullback(x, f, f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{diamond, sre_fixture};

    #[test]
    fn object_validation() {
        let x = OrdSet::chain(2);
        assert!(LaxObject::new(&x, OrdSet::chain(2), vec![0, 0]).is_ok());
        assert!(LaxObject::new(&x, OrdSet::discrete(2), vec![1, 0]).is_ok());
        assert!(matches!(
            LaxObject::new(&x, OrdSet::chain(2), vec![1, 0]),
            Err(Error::NonMonotoneValuation { i: 0, j: 1 })
        ));
    }

    #[test]
    fn morphism_validation() {
        let x = OrdSet::chain(2);
        let lo = LaxObject::new(&x, OrdSet::discrete(1), vec![0]).unwrap();
        let hi = LaxObject::new(&x, OrdSet::discrete(1), vec![1]).unwrap();
        assert!(morphism_check(&x, &lo, &hi, &[0]).unwrap().holds());
        assert_eq!(
            morphism_check(&x, &hi, &lo, &[0]).unwrap().into_witness(),
            Some(LaxFailure::ValueNotBelow { element: 0 })
        );
        let id = LaxMorphism::identity(&hi);
        assert!(morphism_check(&x, &id.src, &id.dst, id.mapping()).unwrap().holds());
    }

    #[test]
    fn pullback_of_identity_recovers_domain() {
        let x = diamond();
        let b = LaxObject::new(&x, OrdSet::chain(2), vec![0, 3]).unwrap();
        let c = LaxObject::new(&x, OrdSet::discrete(1), vec![1]).unwrap();
        let g = LaxMorphism::new(&x, c.clone(), b.clone(), vec![1]).unwrap();
        let pb = pullback(&x, &LaxMorphism::identity(&b), &g).unwrap();
        assert_eq!(pb.object.carrier, c.carrier);
        // valuation is β(b1) ∧ γ(c) = 3 ∧ 1 = 1
        assert_eq!(pb.object.valuation, vec![1]);
    }

    #[test]
    fn pullback_meets_singletons() {
        let x = diamond();
        let b = LaxObject::new(&x, OrdSet::discrete(1), vec![3]).unwrap();
        let p = LaxObject::new(&x, OrdSet::discrete(1), vec![1]).unwrap();
        let q = LaxObject::new(&x, OrdSet::discrete(1), vec![2]).unwrap();
        let f = LaxMorphism::new(&x, p, b.clone(), vec![0]).unwrap();
        let g = LaxMorphism::new(&x, q, b, vec![0]).unwrap();
        let pb = pullback(&x, &f, &g).unwrap();
        assert_eq!(pb.object.size(), 1);
        assert_eq!(pb.object.valuation, vec![0]); // p ∧ q = bottom
    }

    #[test]
    fn kernel_pair_valuation_uses_pairwise_meets() {
        let (x, f) = sre_fixture();
        let kp = kernel_pair(&x, &f).unwrap();
        // fiber over b0 = {a0, a0'}: meets 1∧1=1, 1∧0=0, 0∧0=0
        let i = kp.index_of(0, 0).unwrap();
        let j = kp.index_of(0, 1).unwrap();
        let k = kp.index_of(1, 1).unwrap();
        assert_eq!(kp.object.valuation[i], 1);
        assert_eq!(kp.object.valuation[j], 0);
        assert_eq!(kp.object.valuation[k], 0);
        // projections satisfy the lax inequality by construction
        for (p, &(a, a2)) in kp.pairs.iter().enumerate() {
            assert!(x.leq(kp.object.valuation[p], f.src.valuation[a]));
            assert!(x.leq(kp.object.valuation[p], f.src.valuation[a2]));
        }
    }

    #[test]
    fn fibers_shrink_as_the_index_grows() {
        let (x, f) = sre_fixture();
        let a1 = f.src.fiber(&x, 1);
        assert_eq!(a1.elements, vec![0, 2]);
        let a0 = f.src.fiber(&x, 0);
        assert_eq!(a0.elements, vec![0, 1, 2]);
        // antitone: fiber at 1 is contained in fiber at 0
        assert!(a1.elements.iter().all(|e| a0.elements.contains(e)));
    }

    #[test]
    fn fiber_maps_restrict_correctly() {
        let (x, f) = sre_fixture();
        let f1 = f.fiber_map(&x, 1);
        assert_eq!(f1.src_elements, vec![0, 2]);
        assert_eq!(f1.dst_elements, vec![0, 1]);
        assert_eq!(f1.map.mapping(), &[0, 1]);
        // empty fiber gives the empty map
        let x2 = OrdSet::chain(2);
        let a = LaxObject::new(&x2, OrdSet::discrete(1), vec![0]).unwrap();
        let b = LaxObject::new(&x2, OrdSet::discrete(1), vec![1]).unwrap();
        let g = LaxMorphism::new(&x2, a, b, vec![0]).unwrap();
        let g1 = g.fiber_map(&x2, 1);
        assert!(g1.src_elements.is_empty());
        assert_eq!(g1.dst_elements, vec![0]);
    }

    #[test]
    fn forgetful_functors_preserve_identities_and_composition() {
        let (x, f) = sre_fixture();
        let id = LaxMorphism::identity(&f.src);
        assert_eq!(id.underlying_ord(), MonotoneMap::identity(&f.src.carrier));
        assert_eq!(id.underlying_fam(&x), FamMorphism::identity(&f.src.underlying_fam()));
        let comp = id.compose(&x, &f).unwrap();
        assert_eq!(comp.underlying_ord(), f.underlying_ord());
        assert_eq!(comp.underlying_fam(&x).mapping(), f.underlying_fam(&x).mapping());
    }
}
