//! Small named instances used throughout tests, benches and the CLI.

use std::sync::Arc;

use crate::lattice::FiniteLattice;
use crate::qcategory::QCategory;
use crate::qmatrix::TypedSet;
use crate::quantaloid::Quantaloid;

/// A finite lattice viewed as a category over `2`: `hom(a,b) = [a ≤ b]`.
pub fn lattice_category(l: &FiniteLattice) -> QCategory {
    let q = Arc::new(Quantaloid::boolean());
    let objs = TypedSet::from_items(l.names().iter().map(|n| (n.clone(), 0)))
        .expect("lattice names are unique");
    QCategory::from_fn(q, objs, |a, b| l.leq(a as u16, b as u16) as u16).expect("boolean entries")
}

/// The preorder generated by `pairs` as a category over `2`.
///
/// # Panics
/// If a pair mentions an unknown name.
pub fn boolean_poset(names: &[&str], pairs: &[(&str, &str)]) -> QCategory {
    let n = names.len();
    let pos = |s: &str| names.iter().position(|x| *x == s).expect("known name");
    let mut rel = vec![false; n * n];
    for i in 0..n {
        rel[i * n + i] = true;
    }
    for &(a, b) in pairs {
        rel[pos(a) * n + pos(b)] = true;
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if rel[i * n + k] && rel[k * n + j] {
                    rel[i * n + j] = true;
                }
            }
        }
    }
    let q = Arc::new(Quantaloid::boolean());
    let objs =
        TypedSet::from_items(names.iter().map(|s| (s.to_string(), 0))).expect("unique names");
    QCategory::from_fn(q, objs, |a, b| rel[a * n + b] as u16).expect("boolean entries")
}

/// `bot < a, b < top`.
pub fn diamond_lattice() -> FiniteLattice {
    FiniteLattice::from_pairs(
        &["bot", "a", "b", "top"],
        &[("bot", "a"), ("bot", "b"), ("a", "top"), ("b", "top")],
    )
    .expect("diamond is a lattice")
}

pub fn diamond() -> QCategory {
    lattice_category(&diamond_lattice())
}

/// The nondistributive lattice with three atoms.
pub fn m3_lattice() -> FiniteLattice {
    FiniteLattice::from_pairs(
        &["bot", "a", "b", "c", "top"],
        &[
            ("bot", "a"),
            ("bot", "b"),
            ("bot", "c"),
            ("a", "top"),
            ("b", "top"),
            ("c", "top"),
        ],
    )
    .expect("M3 is a lattice")
}

pub fn m3() -> QCategory {
    lattice_category(&m3_lattice())
}

/// The pentagon `bot < a < b < top`, `bot < c < top`.
pub fn n5_lattice() -> FiniteLattice {
    FiniteLattice::from_pairs(
        &["bot", "a", "b", "c", "top"],
        &[
            ("bot", "a"),
            ("a", "b"),
            ("b", "top"),
            ("bot", "c"),
            ("c", "top"),
        ],
    )
    .expect("N5 is a lattice")
}

pub fn n5() -> QCategory {
    lattice_category(&n5_lattice())
}

/// The `n`-chain `0 < … < n-1` as a category over `2`, labelled `c0, c1, …`.
pub fn chain_category(n: usize) -> QCategory {
    let q = Arc::new(Quantaloid::boolean());
    let objs = TypedSet::from_items((0..n).map(|i| (format!("c{i}"), 0))).expect("unique");
    QCategory::from_fn(q, objs, |a, b| (a <= b) as u16).expect("boolean entries")
}

/// `n` objects of type 0 with identity homs and bottom elsewhere.
pub fn discrete(q: Arc<Quantaloid>, n: usize) -> QCategory {
    let objs = TypedSet::from_items((0..n).map(|i| (format!("x{i}"), 0))).expect("unique");
    QCategory::free(q, objs)
}

/// The endo-quantaloid of the 3-chain.
pub fn endo3() -> Quantaloid {
    Quantaloid::endo(&FiniteLattice::chain(3)).expect("endo of a chain is a quantaloid")
}
