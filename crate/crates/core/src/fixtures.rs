//! Canonical small instances used across the test suites, the regression
//! examples and the command-line `example` subcommand.
//!
//! The three morphism fixtures witness the mutual independence of the three
//! effective-descent conditions:
//!
//! * [`js_fixture`] satisfies pair lifting but not triple lifting
//!   (condition 1 fails; 2 and 3 hold with constant valuations);
//! * [`sre_fixture`] is a stable regular epimorphism whose only lifting pair
//!   over `b0 <= b1` carries the bottom value (condition 2 fails, 1 and 3
//!   hold);
//! * [`cond3_fixture`] lives over the pentagon lattice, where the compatible
//!   family `σ = (u, v)` cannot be glued (condition 3 fails, 1 and 2 hold).

use crate::fam::{FamMorphism, FamObject};
use crate::lax::{LaxMorphism, LaxObject};
use crate::ordset::OrdSet;

/// `⊥ < p, q < ⊤` with `p`, `q` incomparable: the four-element Boolean
/// lattice. Distributive, so locally cartesian closed.
pub fn diamond() -> OrdSet {
    OrdSet::from_pairs(4, &[(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap()
}

/// The pentagon: `⊥ < u < w < ⊤`, `⊥ < v < ⊤`, with `v` incomparable to
/// both `u` and `w`. A lattice, but not distributive.
pub fn n5() -> OrdSet {
    OrdSet::from_pairs(5, &[(0, 1), (0, 2), (1, 3), (1, 4), (2, 4), (3, 4)]).unwrap()
}

/// Element names for the pentagon, for readable reports.
pub const N5_NAMES: [&str; 5] = ["bot", "u", "v", "w", "top"];

/// Pair lifting without triple lifting: source `a0 <= a1`, `a1' <= a2`,
/// `a0 <= a2` over the 3-chain, all valuations constant over the one-point
/// ambient. Conditions: 1 fails, 2 and 3 hold.
pub fn js_fixture() -> (OrdSet, LaxMorphism) {
    let x = OrdSet::discrete(1);
    let a_carrier = OrdSet::from_pairs(4, &[(0, 1), (2, 3), (0, 3)]).unwrap();
    let a = LaxObject::new(&x, a_carrier, vec![0, 0, 0, 0]).unwrap();
    let b = LaxObject::new(&x, OrdSet::chain(3), vec![0, 0, 0]).unwrap();
    let f = LaxMorphism::new(&x, a, b, vec![0, 1, 1, 2]).unwrap();
    (x, f)
}

/// Stable regular epimorphism that is not effective for descent: over the
/// 2-chain, `B` is the 2-chain valued constantly 1, the source is
/// `{a0, a0', a1}` with only `a0' <= a1`, values `(1, 0, 1)`, and the only
/// lifting pair for `b0 <= b1` carries the bottom value. Conditions: 1 and 3
/// hold, 2 fails at `(b0, b1, w = 1)`.
pub fn sre_fixture() -> (OrdSet, LaxMorphism) {
    let x = OrdSet::chain(2);
    let a_carrier = OrdSet::from_pairs(3, &[(1, 2)]).unwrap();
    let a = LaxObject::new(&x, a_carrier, vec![1, 0, 1]).unwrap();
    let b = LaxObject::new(&x, OrdSet::chain(2), vec![1, 1]).unwrap();
    let f = LaxMorphism::new(&x, a, b, vec![0, 0, 1]).unwrap();
    (x, f)
}

/// Datum recovery fails over the pentagon: two incomparable points valued
/// `(w, v)` collapsed onto a single point valued `⊤`. The family
/// `σ = (u, v)` is compatible but `w ∧ (u ∨ v) = w ≇ u`. Conditions: 1 and 2
/// hold, 3 fails.
pub fn cond3_fixture() -> (OrdSet, LaxMorphism) {
    let x = n5();
    let a = LaxObject::new(&x, OrdSet::discrete(2), vec![3, 2]).unwrap();
    let b = LaxObject::new(&x, OrdSet::discrete(1), vec![4]).unwrap();
    let f = LaxMorphism::new(&x, a, b, vec![0, 0]).unwrap();
    (x, f)
}

/// Effective descent without fiberwise surjectivity: over the diamond, two
/// incomparable points valued `(p, q)` collapsed onto a point valued `⊤`.
/// The fiber at `⊤` is empty on the source side, so the fiberwise sufficient
/// conditions fail, yet the morphism is effective for descent
/// (`p ∨ q = ⊤` without either value reaching `⊤`).
pub fn fiber_gap_fixture() -> (OrdSet, LaxMorphism) {
    let x = diamond();
    let a = LaxObject::new(&x, OrdSet::discrete(2), vec![1, 2]).unwrap();
    let b = LaxObject::new(&x, OrdSet::discrete(1), vec![3]).unwrap();
    let f = LaxMorphism::new(&x, a, b, vec![0, 0]).unwrap();
    (x, f)
}

/// The family morphism `(w, v) → (⊤)` over the pentagon: a descent morphism
/// that is not effective, witnessed by `σ = (u, v)`.
pub fn fam_n5() -> (OrdSet, FamMorphism) {
    let x = n5();
    let src = FamObject::new(&x, vec![3, 2]).unwrap();
    let dst = FamObject::new(&x, vec![4]).unwrap();
    let f = FamMorphism::new(&x, src, dst, vec![0, 0]).unwrap();
    (x, f)
}

/// The same map shape over the diamond: `(p, q) → (⊤)`, which is effective.
pub fn fam_diamond() -> (OrdSet, FamMorphism) {
    let x = diamond();
    let src = FamObject::new(&x, vec![1, 2]).unwrap();
    let dst = FamObject::new(&x, vec![3]).unwrap();
    let f = FamMorphism::new(&x, src, dst, vec![0, 0]).unwrap();
    (x, f)
}

/// Identity on a small valued object, the universal positive control.
pub fn identity_fixture() -> (OrdSet, LaxMorphism) {
    let x = diamond();
    let obj = LaxObject::new(&x, OrdSet::chain(2), vec![1, 3]).unwrap();
    let f = LaxMorphism::identity(&obj);
    (x, f)
}
