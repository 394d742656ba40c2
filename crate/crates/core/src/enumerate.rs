//! Exhaustive enumeration of small ordered structures, used by the
//! brute-force oracles, the sweep, and the property tests.
//!
//! Everything here is deliberately desk-scale: preorders are generated by
//! filtering all reflexive relations for transitivity, maps by odometer
//! iteration, and canonical forms by minimizing a byte encoding over all
//! relabelings. Sizes never exceed a handful of elements.

use crate::lax::{LaxMorphism, LaxObject};
use crate::ordset::OrdSet;

/// All labeled preorders on `n` elements. `n = 4` gives 355 of them.
pub fn preorders(n: usize) -> Vec<OrdSet> {
    if n == 0 {
        return vec![OrdSet::discrete(0)];
    }
    let off_diag = n * n - n;
    let mut out = Vec::new();
    for mask in 0u32..(1 << off_diag) {
        let mut leq = vec![false; n * n];
        let mut bit = 0;
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    leq[i * n + j] = true;
                } else {
                    leq[i * n + j] = mask & (1 << bit) != 0;
                    bit += 1;
                }
            }
        }
        if let Ok(set) = OrdSet::from_relation(n, leq) {
            out.push(set);
        }
    }
    out
}

/// All permutations of `{0, .., n-1}`.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut items: Vec<usize> = (0..n).collect();
    fn heap(k: usize, items: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k <= 1 {
            out.push(items.clone());
            return;
        }
        for i in 0..k {
            heap(k - 1, items, out);
            if k % 2 == 0 {
                items.swap(i, k - 1);
            } else {
                items.swap(0, k - 1);
            }
        }
    }
    heap(n, &mut items, &mut out);
    out.sort();
    out
}

/// Labeled preorders on `n` elements, one representative per isomorphism
/// class, each the lexicographically least encoding of its class.
pub fn preorders_up_to_iso(n: usize) -> Vec<OrdSet> {
    let perms = permutations(n);
    let mut seen: Vec<Vec<u8>> = Vec::new();
    let mut out = Vec::new();
    for p in preorders(n) {
        let key = perms.iter().map(|perm| p.permuted(perm).encode()).min().unwrap();
        if p.encode() == key && !seen.contains(&key) {
            seen.push(key);
            out.push(p);
        }
    }
    out
}

/// All functions `{0, .., src_len-1} → {0, .., dst_len-1}`, odometer order.
pub fn functions(src_len: usize, dst_len: usize) -> Vec<Vec<usize>> {
    if src_len == 0 {
        return vec![vec![]];
    }
    if dst_len == 0 {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut cur = vec![0usize; src_len];
    loop {
        out.push(cur.clone());
        let mut i = src_len;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            cur[i] += 1;
            if cur[i] < dst_len {
                break;
            }
            cur[i] = 0;
        }
    }
}

/// All monotone maps between two preorders.
pub fn monotone_maps(src: &OrdSet, dst: &OrdSet) -> Vec<Vec<usize>> {
    functions(src.size(), dst.size())
        .into_iter()
        .filter(|m| {
            src.elements()
                .all(|i| src.elements().all(|j| !src.leq(i, j) || dst.leq(m[i], m[j])))
        })
        .collect()
}

/// All valued objects on a fixed carrier: the monotone valuations into `x`.
pub fn valuations(x: &OrdSet, carrier: &OrdSet) -> Vec<Vec<usize>> {
    monotone_maps(carrier, x)
}

/// All morphisms `(src) → (dst)` over `x`: monotone carrier maps satisfying
/// the pointwise value inequality.
pub fn lax_maps(x: &OrdSet, src: &LaxObject, dst: &LaxObject) -> Vec<Vec<usize>> {
    functions(src.size(), dst.size())
        .into_iter()
        .filter(|m| {
            src.carrier.elements().all(|i| {
                x.leq(src.valuation[i], dst.valuation[m[i]])
                    && src
                        .carrier
                        .elements()
                        .all(|j| !src.carrier.leq(i, j) || dst.carrier.leq(m[i], m[j]))
            })
        })
        .collect()
}

/// Byte encoding of a valued object, for canonical-form comparisons.
pub fn encode_object(obj: &LaxObject) -> Vec<u8> {
    let mut key = obj.carrier.encode();
    key.push(0xFF);
    key.extend(obj.valuation.iter().map(|&v| v as u8));
    key
}

/// Relabel a valued object along a permutation of its carrier.
pub fn permute_object(obj: &LaxObject, perm: &[usize]) -> LaxObject {
    LaxObject {
        carrier: obj.carrier.permuted(perm),
        valuation: perm.iter().map(|&i| obj.valuation[i]).collect(),
    }
}

/// Is this object the canonical representative of its relabeling class?
pub fn is_canonical_object(obj: &LaxObject, perms: &[Vec<usize>]) -> bool {
    let own = encode_object(obj);
    perms.iter().all(|perm| encode_object(&permute_object(obj, perm)) >= own)
}

/// The carrier permutations fixing a valued object.
pub fn object_automorphisms(obj: &LaxObject, perms: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let own = encode_object(obj);
    perms.iter().filter(|perm| encode_object(&permute_object(obj, perm)) == own).cloned().collect()
}

/// Canonical key of a morphism under the automorphisms of its endpoints:
/// the minimal relabeled mapping. `inverse(perm)[v]` is the new index of old
/// element `v`.
pub fn canonical_map_key(
    mapping: &[usize],
    src_auts: &[Vec<usize>],
    dst_auts: &[Vec<usize>],
) -> Vec<u8> {
    let mut best: Option<Vec<u8>> = None;
    for sa in src_auts {
        for da in dst_auts {
            let da_inv = invert(da);
            let relabeled: Vec<u8> = sa.iter().map(|&i| da_inv[mapping[i]] as u8).collect();
            if best.as_ref().map_or(true, |b| relabeled < *b) {
                best = Some(relabeled);
            }
        }
    }
    best.unwrap_or_default()
}

pub fn invert(perm: &[usize]) -> Vec<usize> {
    let mut inv = vec![0usize; perm.len()];
    for (i, &p) in perm.iter().enumerate() {
        inv[p] = i;
    }
    inv
}

/// Enumerate every valued object over `x` with carrier size up to `max`,
/// one representative per isomorphism class.
pub fn objects_up_to_iso(x: &OrdSet, max: usize) -> Vec<LaxObject> {
    let mut out = Vec::new();
    for n in 0..=max {
        let perms = permutations(n);
        for carrier in preorders(n) {
            for valuation in valuations(x, &carrier) {
                let obj = LaxObject::new(x, carrier.clone(), valuation).expect("monotone by filter");
                if is_canonical_object(&obj, &perms) {
                    out.push(obj);
                }
            }
        }
    }
    out
}

/// Enumerate every morphism into `dst` over `x` with source size up to
/// `max`, as validated morphisms. Labeled, not deduplicated.
pub fn morphisms_into(x: &OrdSet, dst: &LaxObject, max: usize) -> Vec<LaxMorphism> {
    let mut out = Vec::new();
    for n in 0..=max {
        for carrier in preorders(n) {
            for valuation in valuations(x, &carrier) {
                let src = LaxObject::new(x, carrier.clone(), valuation).expect("monotone by filter");
                for mapping in lax_maps(x, &src, dst) {
                    out.push(
                        LaxMorphism::new(x, src.clone(), dst.clone(), mapping)
                            .expect("validated by filter"),
                    );
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn preorder_counts_match_the_literature() {
        assert_eq!(preorders(0).len(), 1);
        assert_eq!(preorders(1).len(), 1);
        assert_eq!(preorders(2).len(), 4);
        assert_eq!(preorders(3).len(), 29);
        assert_eq!(preorders(4).len(), 355);
    }

    #[test]
    fn iso_class_counts() {
        assert_eq!(preorders_up_to_iso(2).len(), 3);
        assert_eq!(preorders_up_to_iso(3).len(), 9);
        assert_eq!(preorders_up_to_iso(4).len(), 33);
    }

    #[test]
    fn monotone_map_counts() {
        let c2 = OrdSet::chain(2);
        let d2 = OrdSet::discrete(2);
        assert_eq!(monotone_maps(&c2, &c2).len(), 3); // 00, 01, 11
        assert_eq!(monotone_maps(&d2, &c2).len(), 4);
        assert_eq!(monotone_maps(&c2, &d2).len(), 2); // constants only
    }

    #[test]
    fn permutation_count() {
        assert_eq!(permutations(0).len(), 1);
        assert_eq!(permutations(3).len(), 6);
        assert_eq!(permutations(4).len(), 24);
    }

    #[test]
    fn canonical_objects_partition_the_labeled_ones() {
        let x = OrdSet::chain(2);
        let perms = permutations(2);
        let mut labeled = 0usize;
        let mut weighted = 0usize;
        for carrier in preorders(2) {
            for valuation in valuations(&x, &carrier) {
                labeled += 1;
                let obj = LaxObject::new(&x, carrier.clone(), valuation).unwrap();
                if is_canonical_object(&obj, &perms) {
                    // class size = perms / automorphisms
                    weighted += perms.len() / object_automorphisms(&obj, &perms).len();
                }
            }
        }
        assert_eq!(labeled, weighted);
    }
}
