//! Finite ordered sets (preorders) and their lattice-theoretic predicates.
//!
//! An [`OrdSet`] is a finite carrier `{0, .., size-1}` with a reflexive and
//! transitive boolean relation. Antisymmetry is *not* assumed: elements with
//! `i <= j` and `j <= i` are isomorphic, written `i ≅ j`, and every value
//! returned by a lattice operation is the least-index representative of its
//! `≅`-class.
//!
//! Meets and joins are always taken *locally*, inside a down-set `↓bound`.
//! This matters for joins: a subset of `↓bound` can have a least upper bound
//! inside `↓bound` while having none globally (two incomparable global upper
//! bounds), and the descent conditions implemented in this crate only ever
//! quantify over local joins.
//!
//! "Locally complete" is decided by the finite reduction: `↓x` has all joins
//! of its subsets iff `↓x` is closed under binary meets, because `↓x` already
//! has a top (namely `x`) and a finite lattice is complete. "Locally
//! cartesian closed" is decided by distributivity of each `↓x`: a finite
//! complete lattice is cartesian closed iff it is a Heyting algebra iff it is
//! distributive.

use crate::error::{Error, Result};
use crate::verdict::Verdict;

/// A finite preorder: carrier `{0, .., size-1}` with a closed relation.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct OrdSet {
    size: usize,
    /// Row-major `size × size` matrix; `leq[i * size + j]` means `i <= j`.
    leq: Vec<bool>,
}

impl std::fmt::Debug for OrdSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "OrdSet({}; ", self.size)?;
        let mut first = true;
        for i in 0..self.size {
            for j in 0..self.size {
                if i != j && self.leq(i, j) {
                    if !first {
                        write!(f, " ")?;
                    }
                    write!(f, "{i}<={j}")?;
                    first = false;
                }
            }
        }
        write!(f, ")")
    }
}

/// A pair of distinct isomorphic elements, certifying antisymmetry failure.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IsoPair {
    pub i: usize,
    pub j: usize,
}

impl std::fmt::Display for IsoPair {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "elements {} and {} are distinct but isomorphic", self.i, self.j)
    }
}

/// Certificate that some down-set is missing a join.
///
/// `pair` is the two elements of `↓bound` whose meet does not exist; the
/// induced joinless subset is the set of their common lower bounds, which
/// has no least upper bound inside `↓bound` exactly when the meet is absent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalCompletenessFailure {
    pub bound: usize,
    pub pair: (usize, usize),
    pub joinless_subset: Vec<usize>,
}

impl LocalCompletenessFailure {
    /// Replay the certificate against the definition.
    pub fn reconfirm(&self, x: &OrdSet) -> bool {
        x.down_set(self.bound).contains(&self.pair.0)
            && x.down_set(self.bound).contains(&self.pair.1)
            && x.local_meet(self.bound, self.pair.0, self.pair.1) == Ok(None)
            && x.local_join(self.bound, &self.joinless_subset) == Ok(None)
    }
}

impl std::fmt::Display for LocalCompletenessFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "down-set of {} has no meet of {} and {} (subset {:?} has no join)",
            self.bound, self.pair.0, self.pair.1, self.joinless_subset
        )
    }
}

/// Certificate that some down-set is not distributive:
/// `a ∧ (b ∨ c) ≇ (a ∧ b) ∨ (a ∧ c)` inside `↓bound`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DistributivityFailure {
    pub bound: usize,
    pub a: usize,
    pub b: usize,
    pub c: usize,
}

impl DistributivityFailure {
    pub fn reconfirm(&self, x: &OrdSet) -> bool {
        let (bound, a, b, c) = (self.bound, self.a, self.b, self.c);
        let lhs: Option<usize> = (|| {
            let bc = x.local_join(bound, &[b, c]).ok()??;
            x.local_meet(bound, a, bc).ok()?
        })();
        let rhs: Option<usize> = (|| {
            let ab = x.local_meet(bound, a, b).ok()??;
            let ac = x.local_meet(bound, a, c).ok()??;
            x.local_join(bound, &[ab, ac]).ok()?
        })();
        match (lhs, rhs) {
            (Some(l), Some(r)) => !x.iso(l, r),
            _ => true, // a missing meet/join is itself a failure
        }
    }
}

impl std::fmt::Display for DistributivityFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "down-set of {}: {} ∧ ({} ∨ {}) differs from ({} ∧ {}) ∨ ({} ∧ {})",
            self.bound, self.a, self.b, self.c, self.a, self.b, self.a, self.c
        )
    }
}

/// A connected component: the sorted global element list, the induced
/// suborder, and (implicitly) the inclusion `elements[i] ∈ X`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    pub elements: Vec<usize>,
    pub sub: OrdSet,
}

impl Component {
    /// Position of a global element inside this component, if it belongs.
    pub fn local_index(&self, global: usize) -> Option<usize> {
        self.elements.iter().position(|&e| e == global)
    }
}

impl OrdSet {
    /// The discrete order: only the diagonal.
    pub fn discrete(size: usize) -> Self {
        let mut leq = vec![false; size * size];
        for i in 0..size {
            leq[i * size + i] = true;
        }
        OrdSet { size, leq }
    }

    /// The linear order `0 <= 1 <= .. <= size-1`.
    pub fn chain(size: usize) -> Self {
        let mut leq = vec![false; size * size];
        for i in 0..size {
            for j in i..size {
                leq[i * size + j] = true;
            }
        }
        OrdSet { size, leq }
    }

    /// Smallest preorder containing the given pairs: the reflexive-transitive
    /// closure. Idempotent: closing an already closed relation returns it
    /// unchanged.
    pub fn from_pairs(size: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        let mut set = OrdSet::discrete(size);
        for &(i, j) in pairs {
            set.check_index(i)?;
            set.check_index(j)?;
            set.leq[i * size + j] = true;
        }
        set.close();
        Ok(set)
    }

    /// Wrap an explicit relation matrix, validating reflexivity and
    /// transitivity.
    pub fn from_relation(size: usize, leq: Vec<bool>) -> Result<Self> {
        if leq.len() != size * size {
            return Err(Error::LengthMismatch { expected: size * size, got: leq.len() });
        }
        let set = OrdSet { size, leq };
        for i in 0..size {
            if !set.leq(i, i) {
                return Err(Error::NotReflexive { i });
            }
        }
        for i in 0..size {
            for j in 0..size {
                if set.leq(i, j) {
                    for k in 0..size {
                        if set.leq(j, k) && !set.leq(i, k) {
                            return Err(Error::NotTransitive { i, j, k });
                        }
                    }
                }
            }
        }
        Ok(set)
    }

    /// Warshall closure, in place.
    fn close(&mut self) {
        let n = self.size;
        for k in 0..n {
            for i in 0..n {
                if self.leq[i * n + k] {
                    for j in 0..n {
                        if self.leq[k * n + j] {
                            self.leq[i * n + j] = true;
                        }
                    }
                }
            }
        }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn is_empty(&self) -> bool {
        self.size == 0
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.size
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i < self.size {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange { index: i, size: self.size })
        }
    }

    #[inline]
    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.leq[i * self.size + j]
    }

    /// `i ≅ j`: both `i <= j` and `j <= i`.
    #[inline]
    pub fn iso(&self, i: usize, j: usize) -> bool {
        self.leq(i, j) && self.leq(j, i)
    }

    /// Least index in the `≅`-class of `i`.
    pub fn canonical(&self, i: usize) -> usize {
        (0..=i).find(|&j| self.iso(i, j)).unwrap_or(i)
    }

    /// `↓x = { y : y <= x }`, in increasing index order.
    pub fn down_set(&self, x: usize) -> Vec<usize> {
        self.elements().filter(|&y| self.leq(y, x)).collect()
    }

    /// All non-reflexive related pairs, for serialization.
    pub fn strict_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.size {
            for j in 0..self.size {
                if i != j && self.leq(i, j) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Greatest lower bound of `{x, y}` inside `↓bound`, as a canonical
    /// representative, or `None` if no greatest common lower bound exists.
    ///
    /// Requires `x <= bound` and `y <= bound`. Any common lower bound of
    /// `x, y` is automatically in `↓bound`, so the bound only acts as the
    /// precondition marker here; it is joins that are genuinely local.
    pub fn local_meet(&self, bound: usize, x: usize, y: usize) -> Result<Option<usize>> {
        self.check_index(bound)?;
        self.check_index(x)?;
        self.check_index(y)?;
        if !self.leq(x, bound) {
            return Err(Error::NotBelowBound { element: x, bound });
        }
        if !self.leq(y, bound) {
            return Err(Error::NotBelowBound { element: y, bound });
        }
        Ok(self
            .elements()
            .find(|&m| {
                self.leq(m, x)
                    && self.leq(m, y)
                    && self.elements().all(|l| !(self.leq(l, x) && self.leq(l, y)) || self.leq(l, m))
            }))
    }

    /// Least upper bound of `subset` inside `↓bound`, as a canonical
    /// representative. The empty join is the bottom of `↓bound`, when it
    /// exists.
    pub fn local_join(&self, bound: usize, subset: &[usize]) -> Result<Option<usize>> {
        self.check_index(bound)?;
        for &s in subset {
            self.check_index(s)?;
            if !self.leq(s, bound) {
                return Err(Error::NotBelowBound { element: s, bound });
            }
        }
        Ok(self.elements().find(|&u| {
            self.leq(u, bound)
                && subset.iter().all(|&s| self.leq(s, u))
                && self
                    .elements()
                    .all(|v| !(self.leq(v, bound) && subset.iter().all(|&s| self.leq(s, v))) || self.leq(u, v))
        }))
    }

    /// Antisymmetry check; the witness is the first offending pair.
    pub fn is_poset(&self) -> Verdict<IsoPair> {
        for i in 0..self.size {
            for j in (i + 1)..self.size {
                if self.iso(i, j) {
                    return Verdict::fail(IsoPair { i, j });
                }
            }
        }
        Verdict::pass()
    }

    /// Quotient by `≅`. Returns the quotient poset and the map sending each
    /// element to the index of its class. Classes are numbered by their least
    /// member, so class representatives are the canonical ones.
    pub fn posetal_reflection(&self) -> (OrdSet, Vec<usize>) {
        let mut reps: Vec<usize> = Vec::new();
        let mut class_of = vec![0usize; self.size];
        for i in 0..self.size {
            match reps.iter().position(|&r| self.iso(r, i)) {
                Some(c) => class_of[i] = c,
                None => {
                    class_of[i] = reps.len();
                    reps.push(i);
                }
            }
        }
        let m = reps.len();
        let mut leq = vec![false; m * m];
        for a in 0..m {
            for b in 0..m {
                leq[a * m + b] = self.leq(reps[a], reps[b]);
            }
        }
        (OrdSet { size: m, leq }, class_of)
    }

    /// Every `↓x` has all joins of its subsets. Finite reduction: `↓x` has a
    /// top (`x` itself), so closure under binary meets suffices.
    pub fn is_locally_complete(&self) -> Verdict<LocalCompletenessFailure> {
        for bound in self.elements() {
            let down = self.down_set(bound);
            for &x in &down {
                for &y in &down {
                    if y < x {
                        continue;
                    }
                    if self.local_meet(bound, x, y).expect("elements taken from the down-set").is_none() {
                        let joinless: Vec<usize> =
                            down.iter().copied().filter(|&l| self.leq(l, x) && self.leq(l, y)).collect();
                        return Verdict::fail(LocalCompletenessFailure {
                            bound,
                            pair: (x, y),
                            joinless_subset: joinless,
                        });
                    }
                }
            }
        }
        Verdict::pass()
    }

    /// Every `↓x`, as a finite complete lattice, is distributive.
    ///
    /// Errors with the local-completeness certificate if the precondition
    /// fails; callers are expected to have checked it.
    pub fn is_locally_cartesian_closed(&self) -> Result<Verdict<DistributivityFailure>> {
        if let Some(w) = self.is_locally_complete().into_witness() {
            return Err(Error::NotLocallyComplete(w));
        }
        for bound in self.elements() {
            let down = self.down_set(bound);
            for &a in &down {
                for &b in &down {
                    for &c in &down {
                        let bc = self.local_join(bound, &[b, c])?.expect("locally complete");
                        let lhs = self.local_meet(bound, a, bc)?.expect("locally complete");
                        let ab = self.local_meet(bound, a, b)?.expect("locally complete");
                        let ac = self.local_meet(bound, a, c)?.expect("locally complete");
                        let rhs = self.local_join(bound, &[ab, ac])?.expect("locally complete");
                        if !self.iso(lhs, rhs) {
                            return Ok(Verdict::fail(DistributivityFailure { bound, a, b, c }));
                        }
                    }
                }
            }
        }
        Ok(Verdict::pass())
    }

    /// Finest partition of the carrier closed under comparability
    /// (equivalently: zigzag-connectedness classes), each with its induced
    /// suborder. Components are ordered by least element.
    pub fn connected_components(&self) -> Vec<Component> {
        let mut class = (0..self.size).collect::<Vec<usize>>();
        fn find(class: &mut Vec<usize>, i: usize) -> usize {
            if class[i] != i {
                let root = find(class, class[i]);
                class[i] = root;
            }
            class[i]
        }
        for i in 0..self.size {
            for j in 0..self.size {
                if self.leq(i, j) || self.leq(j, i) {
                    let (a, b) = (find(&mut class, i), find(&mut class, j));
                    if a != b {
                        class[a.max(b)] = a.min(b);
                    }
                }
            }
        }
        let roots: Vec<usize> = (0..self.size).map(|i| find(&mut class, i)).collect();
        let mut seen = Vec::new();
        let mut comps = Vec::new();
        for i in 0..self.size {
            if !seen.contains(&roots[i]) {
                seen.push(roots[i]);
                let elements: Vec<usize> = (0..self.size).filter(|&j| roots[j] == roots[i]).collect();
                let sub = self.induced(&elements);
                comps.push(Component { elements, sub });
            }
        }
        comps
    }

    /// Induced suborder on the given (sorted, duplicate-free) elements.
    pub fn induced(&self, elements: &[usize]) -> OrdSet {
        let m = elements.len();
        let mut leq = vec![false; m * m];
        for (a, &i) in elements.iter().enumerate() {
            for (b, &j) in elements.iter().enumerate() {
                leq[a * m + b] = self.leq(i, j);
            }
        }
        OrdSet { size: m, leq }
    }

    /// Bottom element of a component (global index, canonical representative),
    /// if one exists. For locally complete carriers it always does.
    pub fn component_bottom(&self, component: &Component) -> Option<usize> {
        component
            .elements
            .iter()
            .copied()
            .find(|&b| component.elements.iter().all(|&y| self.leq(b, y)))
    }

    /// Relabel the carrier along a permutation: element `i` of the result is
    /// element `perm[i]` of `self`.
    pub fn permuted(&self, perm: &[usize]) -> OrdSet {
        debug_assert_eq!(perm.len(), self.size);
        let n = self.size;
        let mut leq = vec![false; n * n];
        for i in 0..n {
            for j in 0..n {
                leq[i * n + j] = self.leq(perm[i], perm[j]);
            }
        }
        OrdSet { size: n, leq }
    }

    /// Compact byte encoding of the relation, for canonical-form comparisons.
    pub fn encode(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(self.size * self.size + 1);
        out.push(self.size as u8);
        for &b in &self.leq {
            out.push(b as u8);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn diamond() -> OrdSet {
        // 0 = bottom, 1, 2 incomparable, 3 = top
        OrdSet::from_pairs(4, &[(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap()
    }

    pub(crate) fn n5() -> OrdSet {
        // 0 = bottom, 1 = u, 2 = v, 3 = w, 4 = top, with u < w
        OrdSet::from_pairs(5, &[(0, 1), (0, 2), (1, 3), (1, 4), (2, 4), (3, 4)]).unwrap()
    }

    #[test]
    fn closure_forces_transitivity() {
        let x = OrdSet::from_pairs(3, &[(0, 1), (1, 2)]).unwrap();
        assert!(x.leq(0, 2));
        for i in 0..3 {
            assert!(x.leq(i, i));
        }
        assert_eq!(x, OrdSet::chain(3));
    }

    #[test]
    fn closure_of_no_pairs_is_discrete() {
        assert_eq!(OrdSet::from_pairs(2, &[]).unwrap(), OrdSet::discrete(2));
    }

    #[test]
    fn symmetric_pairs_close_to_total_relation() {
        let x = OrdSet::from_pairs(2, &[(0, 1), (1, 0)]).unwrap();
        assert!(x.iso(0, 1));
        assert_eq!(x.canonical(1), 0);
    }

    #[test]
    fn closure_is_idempotent() {
        let x = OrdSet::from_pairs(4, &[(0, 1), (1, 2), (3, 0)]).unwrap();
        let mut pairs = Vec::new();
        for i in 0..4 {
            for j in 0..4 {
                if x.leq(i, j) {
                    pairs.push((i, j));
                }
            }
        }
        assert_eq!(OrdSet::from_pairs(4, &pairs).unwrap(), x);
    }

    #[test]
    fn out_of_range_pair_is_rejected() {
        assert!(matches!(
            OrdSet::from_pairs(2, &[(0, 2)]),
            Err(Error::IndexOutOfRange { index: 2, size: 2 })
        ));
    }

    #[test]
    fn poset_detection() {
        assert!(OrdSet::chain(2).is_poset().holds());
        assert!(OrdSet::discrete(3).is_poset().holds());
        let total = OrdSet::from_pairs(2, &[(0, 1), (1, 0)]).unwrap();
        assert_eq!(total.is_poset().into_witness(), Some(IsoPair { i: 0, j: 1 }));
    }

    #[test]
    fn posetal_reflection_collapses_iso_classes() {
        let total = OrdSet::from_pairs(2, &[(0, 1), (1, 0)]).unwrap();
        let (q, map) = total.posetal_reflection();
        assert_eq!(q.size(), 1);
        assert_eq!(map, vec![0, 0]);

        // 0 ≅ 1, 2 ≅ 3, class(0) < class(2): the quotient is a 2-chain.
        let x = OrdSet::from_pairs(4, &[(0, 1), (1, 0), (2, 3), (3, 2), (0, 2)]).unwrap();
        let (q, map) = x.posetal_reflection();
        assert_eq!(q, OrdSet::chain(2));
        assert_eq!(map, vec![0, 0, 1, 1]);
        assert!(q.is_poset().holds());

        let poset = diamond();
        let (q, map) = poset.posetal_reflection();
        assert_eq!(q, poset);
        assert_eq!(map, vec![0, 1, 2, 3]);
    }

    #[test]
    fn down_sets() {
        assert_eq!(OrdSet::chain(3).down_set(1), vec![0, 1]);
        assert_eq!(OrdSet::discrete(3).down_set(2), vec![2]);
        assert_eq!(diamond().down_set(3), vec![0, 1, 2, 3]);
    }

    #[test]
    fn local_meets() {
        let d = diamond();
        assert_eq!(d.local_meet(3, 1, 2).unwrap(), Some(0));
        assert_eq!(d.local_meet(1, 1, 1).unwrap(), Some(1));
        // a, b < c, d < top: two maximal lower bounds of {c, d}, no greatest.
        let butterfly =
            OrdSet::from_pairs(5, &[(0, 2), (0, 3), (1, 2), (1, 3), (2, 4), (3, 4)]).unwrap();
        assert_eq!(butterfly.local_meet(4, 2, 3).unwrap(), None);
        assert!(matches!(
            d.local_meet(1, 3, 1),
            Err(Error::NotBelowBound { element: 3, bound: 1 })
        ));
    }

    #[test]
    fn local_joins() {
        let d = diamond();
        assert_eq!(d.local_join(3, &[1, 2]).unwrap(), Some(3));
        assert_eq!(d.local_join(3, &[2]).unwrap(), Some(2));
        assert_eq!(OrdSet::chain(3).local_join(2, &[]).unwrap(), Some(0));
        // Local vs global: {1, 2} below 3 has join 3 in ↓3 even though 3 and 4
        // are incomparable global upper bounds.
        let two_tops =
            OrdSet::from_pairs(5, &[(0, 1), (0, 2), (1, 3), (2, 3), (1, 4), (2, 4)]).unwrap();
        assert_eq!(two_tops.local_join(3, &[1, 2]).unwrap(), Some(3));
        assert_eq!(two_tops.local_join(4, &[1, 2]).unwrap(), Some(4));
    }

    #[test]
    fn local_completeness() {
        assert!(OrdSet::chain(4).is_locally_complete().holds());
        assert!(diamond().is_locally_complete().holds());
        assert!(n5().is_locally_complete().holds());
        let vee = OrdSet::from_pairs(3, &[(0, 2), (1, 2)]).unwrap(); // p, q < top
        let w = vee.is_locally_complete().into_witness().expect("no meet of p and q");
        assert_eq!(w.bound, 2);
        assert_eq!(w.pair, (0, 1));
        assert!(w.joinless_subset.is_empty());
        assert!(w.reconfirm(&vee));
    }

    #[test]
    fn cartesian_closedness_is_distributivity() {
        assert!(OrdSet::chain(4).is_locally_cartesian_closed().unwrap().holds());
        assert!(diamond().is_locally_cartesian_closed().unwrap().holds());
        let w = n5().is_locally_cartesian_closed().unwrap().into_witness().expect("N5 fails");
        assert_eq!((w.bound, w.a, w.b, w.c), (4, 3, 1, 2));
        assert!(w.reconfirm(&n5()));
        let vee = OrdSet::from_pairs(3, &[(0, 2), (1, 2)]).unwrap();
        assert!(matches!(vee.is_locally_cartesian_closed(), Err(Error::NotLocallyComplete(_))));
    }

    #[test]
    fn components() {
        assert_eq!(OrdSet::discrete(3).connected_components().len(), 3);
        assert_eq!(OrdSet::chain(3).connected_components().len(), 1);
        // chain ⊔ diamond
        let x = OrdSet::from_pairs(7, &[(0, 1), (1, 2), (3, 4), (3, 5), (4, 6), (5, 6)]).unwrap();
        let comps = x.connected_components();
        assert_eq!(comps.len(), 2);
        assert_eq!(comps[0].elements, vec![0, 1, 2]);
        assert_eq!(comps[0].sub, OrdSet::chain(3));
        assert_eq!(comps[1].elements, vec![3, 4, 5, 6]);
        assert_eq!(comps[1].sub, diamond());
    }

    #[test]
    fn component_bottoms() {
        let chain = OrdSet::chain(3);
        let comps = chain.connected_components();
        assert_eq!(chain.component_bottom(&comps[0]), Some(0));
        let d = diamond();
        assert_eq!(d.component_bottom(&d.connected_components()[0]), Some(0));
        let vee = OrdSet::from_pairs(3, &[(0, 2), (1, 2)]).unwrap();
        assert_eq!(vee.component_bottom(&vee.connected_components()[0]), None);
    }

    #[test]
    fn empty_carrier() {
        let e = OrdSet::discrete(0);
        assert!(e.is_locally_complete().holds());
        assert!(e.is_poset().holds());
        assert!(e.connected_components().is_empty());
    }
}
