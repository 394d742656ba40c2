//! The category of set-indexed families of elements of a fixed ordered set.
//!
//! An object is a family `(α_j)_{j ∈ J}` of elements of the ambient `X`; a
//! morphism into `(β_k)_{k ∈ K}` is an index function with `α_j <= β_{f(j)}`.
//! The ambient ordered set is passed explicitly to every operation.
//!
//! Descent of a family morphism is the local join-recovery condition: for
//! every target index `k` and every `w <= β_k`,
//! `w ≅ ⋁_{f(j)=k} w ∧ α_j`, all meets and joins inside `↓β_k`. Effectiveness
//! additionally requires every compatible subfamily `σ <= α` (a descent
//! datum) to be recovered from its fiber join:
//! `α_j ∧ ⋁_{i ∈ f⁻¹(k)} σ_i ≅ σ_j`. Over a locally cartesian closed ambient
//! the two notions coincide and `is_effective_lcc` shortcuts accordingly.
//!
//! `gluing_search` is the independent oracle for effectiveness: it looks for
//! *any* `w <= β_k` with `w ∧ α_j ≅ σ_j` on the fiber, never assuming that
//! the fiber join is the only candidate.

use crate::error::{Error, Result};
use crate::ordset::OrdSet;
use crate::verdict::Verdict;

/// Default cap on the number of candidate descent-data families.
pub const DESCENT_DATA_CAP: u128 = 1_000_000;

/// A family of `X`-elements indexed by `{0, .., len-1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamObject {
    pub values: Vec<usize>,
}

impl FamObject {
    pub fn new(x: &OrdSet, values: Vec<usize>) -> Result<Self> {
        for &v in &values {
            if v >= x.size() {
                return Err(Error::IndexOutOfRange { index: v, size: x.size() });
            }
        }
        Ok(FamObject { values })
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// A morphism of families: an index map satisfying `α_j <= β_{f(j)}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamMorphism {
    pub src: FamObject,
    pub dst: FamObject,
    mapping: Vec<usize>,
}

/// Witness that a raw index map is not a family morphism.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FamLaxFailure {
    /// Source index at which `α_j <= β_{f(j)}` fails.
    pub index: usize,
}

impl std::fmt::Display for FamLaxFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "value at index {} is not below the value at its image", self.index)
    }
}

/// Witness against the join-recovery condition: `w <= β_k` is not the join
/// of its meets with the fiber values.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FamDescentFailure {
    pub k: usize,
    pub w: usize,
}

impl FamDescentFailure {
    pub fn reconfirm(&self, x: &OrdSet, f: &FamMorphism) -> bool {
        let beta = f.dst.values[self.k];
        x.leq(self.w, beta)
            && match fiber_meet_join(x, f, self.k, self.w) {
                Ok(Some(j)) => !x.iso(j, self.w),
                _ => true,
            }
    }
}

impl std::fmt::Display for FamDescentFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "over target index {}, value {} is not recovered by the fiber joins", self.k, self.w)
    }
}

/// Witness against effectiveness: the descent datum `sigma` is not recovered
/// at source index `j` over target `k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamEffectivenessFailure {
    pub sigma: Vec<usize>,
    pub k: usize,
    pub j: usize,
}

impl FamEffectivenessFailure {
    pub fn reconfirm(&self, x: &OrdSet, f: &FamMorphism) -> bool {
        is_descent_datum(x, f, &self.sigma).is_ok()
            && violates_effectiveness_at(x, f, &self.sigma, self.k, self.j)
    }
}

impl std::fmt::Display for FamEffectivenessFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "descent datum σ={:?} is not recovered at index {} over target {}",
            self.sigma, self.j, self.k
        )
    }
}

impl FamMorphism {
    pub fn new(x: &OrdSet, src: FamObject, dst: FamObject, mapping: Vec<usize>) -> Result<Self> {
        if mapping.len() != src.len() {
            return Err(Error::LengthMismatch { expected: src.len(), got: mapping.len() });
        }
        for &k in &mapping {
            if k >= dst.len() {
                return Err(Error::IndexOutOfRange { index: k, size: dst.len() });
            }
        }
        if let Some(w) = morphism_check(x, &src, &dst, &mapping)?.into_witness() {
            return Err(Error::NotLax { element: w.index });
        }
        Ok(FamMorphism { src, dst, mapping })
    }

    pub fn identity(obj: &FamObject) -> Self {
        FamMorphism { src: obj.clone(), dst: obj.clone(), mapping: (0..obj.len()).collect() }
    }

    #[inline]
    pub fn apply(&self, j: usize) -> usize {
        self.mapping[j]
    }

    pub fn mapping(&self) -> &[usize] {
        &self.mapping
    }

    pub fn fiber(&self, k: usize) -> Vec<usize> {
        (0..self.src.len()).filter(|&j| self.mapping[j] == k).collect()
    }
}

/// Check the lax inequality of a raw index map; witness is the first failing
/// source index.
pub fn morphism_check(
    x: &OrdSet,
    src: &FamObject,
    dst: &FamObject,
    mapping: &[usize],
) -> Result<Verdict<FamLaxFailure>> {
    if mapping.len() != src.len() {
        return Err(Error::LengthMismatch { expected: src.len(), got: mapping.len() });
    }
    for (j, &k) in mapping.iter().enumerate() {
        if k >= dst.len() {
            return Err(Error::IndexOutOfRange { index: k, size: dst.len() });
        }
        if !x.leq(src.values[j], dst.values[k]) {
            return Ok(Verdict::fail(FamLaxFailure { index: j }));
        }
    }
    Ok(Verdict::pass())
}

fn require_locally_complete(x: &OrdSet) -> Result<()> {
    match x.is_locally_complete().into_witness() {
        None => Ok(()),
        Some(w) => Err(Error::NotLocallyComplete(w)),
    }
}

/// `⋁_{f(j)=k} (w ∧ α_j)` inside `↓β_k`.
fn fiber_meet_join(x: &OrdSet, f: &FamMorphism, k: usize, w: usize) -> Result<Option<usize>> {
    let beta = f.dst.values[k];
    let mut meets = Vec::new();
    for j in f.fiber(k) {
        match x.local_meet(beta, w, f.src.values[j])? {
            Some(m) => meets.push(m),
            None => return Err(Error::MissingLocalMeet { bound: beta, x: w, y: f.src.values[j] }),
        }
    }
    x.local_join(beta, &meets)
}

/// Join-recovery descent condition. Requires the ambient to be locally
/// complete; the witness is the first `(k, w)` in lexicographic order.
pub fn is_descent(x: &OrdSet, f: &FamMorphism) -> Result<Verdict<FamDescentFailure>> {
    require_locally_complete(x)?;
    for k in 0..f.dst.len() {
        let beta = f.dst.values[k];
        for w in x.elements().filter(|&w| x.leq(w, beta)) {
            let join = fiber_meet_join(x, f, k, w)?.expect("locally complete ambient");
            if !x.iso(join, w) {
                return Ok(Verdict::fail(FamDescentFailure { k, w }));
            }
        }
    }
    Ok(Verdict::pass())
}

/// Validate a family as a descent datum for `f`: `σ <= α` pointwise and the
/// fiberwise compatibility `σ_j ∧ α_i ≅ α_j ∧ σ_i` inside `↓β_k`.
pub fn is_descent_datum(x: &OrdSet, f: &FamMorphism, sigma: &[usize]) -> Result<()> {
    if sigma.len() != f.src.len() {
        return Err(Error::LengthMismatch { expected: f.src.len(), got: sigma.len() });
    }
    for (j, &s) in sigma.iter().enumerate() {
        if s >= x.size() {
            return Err(Error::IndexOutOfRange { index: s, size: x.size() });
        }
        if !x.leq(s, f.src.values[j]) {
            return Err(Error::InvalidDescentFamily { index: j });
        }
    }
    for k in 0..f.dst.len() {
        let beta = f.dst.values[k];
        let fiber = f.fiber(k);
        for &i in &fiber {
            for &j in &fiber {
                let lhs = x
                    .local_meet(beta, sigma[j], f.src.values[i])?
                    .ok_or(Error::MissingLocalMeet { bound: beta, x: sigma[j], y: f.src.values[i] })?;
                let rhs = x
                    .local_meet(beta, f.src.values[j], sigma[i])?
                    .ok_or(Error::MissingLocalMeet { bound: beta, x: f.src.values[j], y: sigma[i] })?;
                if !x.iso(lhs, rhs) {
                    return Err(Error::IncompatibleDescentFamily { i, j, k });
                }
            }
        }
    }
    Ok(())
}

/// Stream of all descent data for `f`, in odometer order: index 0 varies
/// slowest, each `σ_j` runs over `↓α_j` in increasing element order.
pub struct DescentDataIter<'a> {
    x: &'a OrdSet,
    f: &'a FamMorphism,
    /// Per-index candidate lists (`↓α_j`).
    choices: Vec<Vec<usize>>,
    /// Odometer position, or `None` once exhausted.
    cursor: Option<Vec<usize>>,
}

impl<'a> Iterator for DescentDataIter<'a> {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        loop {
            let cursor = self.cursor.as_mut()?;
            let sigma: Vec<usize> =
                cursor.iter().enumerate().map(|(j, &c)| self.choices[j][c]).collect();
            // Advance the odometer (rightmost digit fastest).
            let mut done = true;
            for j in (0..cursor.len()).rev() {
                cursor[j] += 1;
                if cursor[j] < self.choices[j].len() {
                    done = false;
                    break;
                }
                cursor[j] = 0;
            }
            if done {
                self.cursor = None;
            }
            if is_descent_datum(self.x, self.f, &sigma).is_ok() {
                return Some(sigma);
            }
            if self.cursor.is_none() {
                return None;
            }
        }
    }
}

/// Enumerate the descent data for `f` with the default candidate cap.
pub fn descent_data<'a>(x: &'a OrdSet, f: &'a FamMorphism) -> Result<DescentDataIter<'a>> {
    descent_data_with_cap(x, f, DESCENT_DATA_CAP)
}

/// Enumerate the descent data for `f`. The candidate space is
/// `∏_j |↓α_j|`; anything above `cap` aborts with a clear error.
pub fn descent_data_with_cap<'a>(
    x: &'a OrdSet,
    f: &'a FamMorphism,
    cap: u128,
) -> Result<DescentDataIter<'a>> {
    require_locally_complete(x)?;
    let choices: Vec<Vec<usize>> = f.src.values.iter().map(|&a| x.down_set(a)).collect();
    let mut candidates: u128 = 1;
    for c in &choices {
        candidates = candidates.saturating_mul(c.len() as u128);
        if candidates > cap {
            return Err(Error::EnumerationCapExceeded { candidates, cap });
        }
    }
    let cursor = if choices.iter().all(|c| !c.is_empty()) {
        Some(vec![0; choices.len()])
    } else {
        None // an empty down-set cannot happen (α_j <= α_j), but be safe
    };
    Ok(DescentDataIter { x, f, choices, cursor })
}

/// Direct replay of the recovery equation at one location:
/// does `α_j ∧ ⋁_{i ∈ f⁻¹(k)} σ_i ≇ σ_j` hold?
pub fn violates_effectiveness_at(
    x: &OrdSet,
    f: &FamMorphism,
    sigma: &[usize],
    k: usize,
    j: usize,
) -> bool {
    let beta = f.dst.values[k];
    let fiber = f.fiber(k);
    if !fiber.contains(&j) {
        return false;
    }
    let join = x
        .local_join(beta, &fiber.iter().map(|&i| sigma[i]).collect::<Vec<_>>())
        .expect("sigma values lie below beta")
        .expect("locally complete ambient");
    let recovered = x
        .local_meet(beta, f.src.values[j], join)
        .expect("both arguments lie below beta")
        .expect("locally complete ambient");
    !x.iso(recovered, sigma[j])
}

/// Where a descent datum fails the recovery equation, if anywhere:
/// the first `(k, j)` with `α_j ∧ ⋁_{i ∈ f⁻¹(k)} σ_i ≇ σ_j`.
pub fn effectiveness_violation(x: &OrdSet, f: &FamMorphism, sigma: &[usize]) -> Option<(usize, usize)> {
    for k in 0..f.dst.len() {
        let beta = f.dst.values[k];
        let fiber = f.fiber(k);
        let join = x
            .local_join(beta, &fiber.iter().map(|&i| sigma[i]).collect::<Vec<_>>())
            .expect("sigma values lie below beta")
            .expect("locally complete ambient");
        for &j in &fiber {
            let recovered = x
                .local_meet(beta, f.src.values[j], join)
                .expect("both arguments lie below beta")
                .expect("locally complete ambient");
            if !x.iso(recovered, sigma[j]) {
                return Some((k, j));
            }
        }
    }
    None
}

/// Effectiveness: descent plus recovery of every descent datum.
pub fn is_effective(x: &OrdSet, f: &FamMorphism) -> Result<Verdict<EffectiveFailure>> {
    require_locally_complete(x)?;
    if let Some(w) = is_descent(x, f)?.into_witness() {
        return Ok(Verdict::fail(EffectiveFailure::NotDescent(w)));
    }
    for sigma in descent_data(x, f)? {
        if let Some((k, j)) = effectiveness_violation(x, f, &sigma) {
            return Ok(Verdict::fail(EffectiveFailure::Datum(FamEffectivenessFailure {
                sigma,
                k,
                j,
            })));
        }
    }
    Ok(Verdict::pass())
}

/// Why a family morphism fails effectiveness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EffectiveFailure {
    NotDescent(FamDescentFailure),
    Datum(FamEffectivenessFailure),
}

impl EffectiveFailure {
    pub fn reconfirm(&self, x: &OrdSet, f: &FamMorphism) -> bool {
        match self {
            EffectiveFailure::NotDescent(w) => w.reconfirm(x, f),
            EffectiveFailure::Datum(w) => w.reconfirm(x, f),
        }
    }
}

impl std::fmt::Display for EffectiveFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            EffectiveFailure::NotDescent(w) => write!(f, "not a descent morphism: {w}"),
            EffectiveFailure::Datum(w) => write!(f, "{w}"),
        }
    }
}

/// Effectiveness over a locally cartesian closed ambient reduces to descent.
/// Errors report which lattice law of the precondition failed.
pub fn is_effective_lcc(x: &OrdSet, f: &FamMorphism) -> Result<Verdict<FamDescentFailure>> {
    require_locally_complete(x)?;
    if let Some(w) = x.is_locally_cartesian_closed()?.into_witness() {
        return Err(Error::NotLocallyCartesianClosed(w));
    }
    is_descent(x, f)
}

/// Independent gluing oracle: search every `w <= β_k` with `w ∧ α_j ≅ σ_j`
/// for all `j` in the fiber of `k`, returning the least such index. Does not
/// assume the gluing is the fiber join.
pub fn gluing_search(x: &OrdSet, f: &FamMorphism, sigma: &[usize], k: usize) -> Result<Option<usize>> {
    require_locally_complete(x)?;
    is_descent_datum(x, f, sigma)?;
    if k >= f.dst.len() {
        return Err(Error::IndexOutOfRange { index: k, size: f.dst.len() });
    }
    let beta = f.dst.values[k];
    let fiber = f.fiber(k);
    'candidates: for w in x.elements().filter(|&w| x.leq(w, beta)) {
        for &j in &fiber {
            let m = x.local_meet(beta, w, f.src.values[j])?.expect("locally complete ambient");
            if !x.iso(m, sigma[j]) {
                continue 'candidates;
            }
        }
        return Ok(Some(w));
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diamond() -> OrdSet {
        OrdSet::from_pairs(4, &[(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap()
    }

    fn n5() -> OrdSet {
        OrdSet::from_pairs(5, &[(0, 1), (0, 2), (1, 3), (1, 4), (2, 4), (3, 4)]).unwrap()
    }

    /// `(1, 2) -> (top)` over the given ambient: both tests below use this
    /// shape with (p, q) in the diamond and (w, v) in N5.
    fn to_top(x: &OrdSet, values: (usize, usize), top: usize) -> FamMorphism {
        let src = FamObject::new(x, vec![values.0, values.1]).unwrap();
        let dst = FamObject::new(x, vec![top]).unwrap();
        FamMorphism::new(x, src, dst, vec![0, 0]).unwrap()
    }

    #[test]
    fn morphism_validation() {
        let x = OrdSet::chain(2);
        let lo = FamObject::new(&x, vec![0]).unwrap();
        let hi = FamObject::new(&x, vec![1]).unwrap();
        assert!(morphism_check(&x, &lo, &hi, &[0]).unwrap().holds());
        assert!(morphism_check(&x, &hi, &lo, &[0]).unwrap().into_witness().is_some());
        let id = FamMorphism::identity(&hi);
        assert!(morphism_check(&x, &id.src, &id.dst, id.mapping()).unwrap().holds());
    }

    #[test]
    fn descent_on_diamond_pair_to_top() {
        let x = diamond();
        let f = to_top(&x, (1, 2), 3);
        assert!(is_descent(&x, &f).unwrap().holds());
    }

    #[test]
    fn descent_fails_when_fiber_misses_the_top() {
        let x = OrdSet::chain(2);
        let src = FamObject::new(&x, vec![0]).unwrap();
        let dst = FamObject::new(&x, vec![1]).unwrap();
        let f = FamMorphism::new(&x, src, dst, vec![0]).unwrap();
        let w = is_descent(&x, &f).unwrap().into_witness().unwrap();
        assert_eq!((w.k, w.w), (0, 1));
        assert!(w.reconfirm(&x, &f));
    }

    #[test]
    fn identity_is_descent_and_effective() {
        let x = n5();
        let obj = FamObject::new(&x, vec![3, 2, 0]).unwrap();
        let f = FamMorphism::identity(&obj);
        assert!(is_descent(&x, &f).unwrap().holds());
        assert!(is_effective(&x, &f).unwrap().holds());
    }

    #[test]
    fn descent_data_enumeration() {
        let x = n5();
        // (w, v) -> (top): σ = (u, v) is a valid datum (all mixed meets ⊥).
        let f = to_top(&x, (3, 2), 4);
        let data: Vec<Vec<usize>> = descent_data(&x, &f).unwrap().collect();
        assert!(data.contains(&vec![1, 2]));

        // In the 2-chain, (1, 1) -> (1): σ = (1, 0) violates compatibility.
        let c = OrdSet::chain(2);
        let g = to_top(&c, (1, 1), 1);
        let data: Vec<Vec<usize>> = descent_data(&c, &g).unwrap().collect();
        assert!(!data.contains(&vec![1, 0]));
        assert!(data.contains(&vec![1, 1]));
        assert!(data.contains(&vec![0, 0]));

        // Singleton identity: every σ below the value, compatibility vacuous.
        let x = diamond();
        let obj = FamObject::new(&x, vec![3]).unwrap();
        let id = FamMorphism::identity(&obj);
        let data: Vec<Vec<usize>> = descent_data(&x, &id).unwrap().collect();
        assert_eq!(data, vec![vec![0], vec![1], vec![2], vec![3]]);
    }

    #[test]
    fn effectiveness_on_diamond_but_not_n5() {
        let d = diamond();
        assert!(is_effective(&d, &to_top(&d, (1, 2), 3)).unwrap().holds());

        let x = n5();
        let f = to_top(&x, (3, 2), 4);
        assert!(is_descent(&x, &f).unwrap().holds());
        let w = is_effective(&x, &f).unwrap().into_witness().unwrap();
        match &w {
            EffectiveFailure::Datum(d) => {
                assert_eq!(d.sigma, vec![1, 2]);
                assert_eq!((d.k, d.j), (0, 0));
            }
            other => panic!("expected a datum witness, got {other:?}"),
        }
        assert!(w.reconfirm(&x, &f));
    }

    #[test]
    fn lcc_shortcut_agrees_and_rejects_n5() {
        let d = diamond();
        let f = to_top(&d, (1, 2), 3);
        assert_eq!(is_effective_lcc(&d, &f).unwrap().holds(), is_effective(&d, &f).unwrap().holds());
        let c = OrdSet::chain(3);
        let g = to_top(&c, (1, 2), 2);
        assert_eq!(is_effective_lcc(&c, &g).unwrap().holds(), is_effective(&c, &g).unwrap().holds());
        let x = n5();
        assert!(matches!(
            is_effective_lcc(&x, &to_top(&x, (3, 2), 4)),
            Err(Error::NotLocallyCartesianClosed(_))
        ));
    }

    #[test]
    fn gluing_search_matches_the_lemma() {
        let d = diamond();
        let f = to_top(&d, (1, 2), 3);
        assert_eq!(gluing_search(&d, &f, &[1, 2], 0).unwrap(), Some(3));
        assert_eq!(gluing_search(&d, &f, &[0, 2], 0).unwrap(), Some(2));
        let x = n5();
        let g = to_top(&x, (3, 2), 4);
        assert_eq!(gluing_search(&x, &g, &[1, 2], 0).unwrap(), None);
        // Invalid sigma is rejected.
        assert!(gluing_search(&x, &g, &[4, 2], 0).is_err());
    }

    #[test]
    fn cap_aborts_oversized_enumerations() {
        let x = OrdSet::chain(4);
        let src = FamObject::new(&x, vec![3, 3, 3]).unwrap();
        let dst = FamObject::new(&x, vec![3]).unwrap();
        let f = FamMorphism::new(&x, src, dst, vec![0, 0, 0]).unwrap();
        assert!(matches!(
            descent_data_with_cap(&x, &f, 10),
            Err(Error::EnumerationCapExceeded { candidates: 16, cap: 10 })
        ));
    }
}
