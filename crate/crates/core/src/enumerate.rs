//! Exhaustive enumeration of small instances up to isomorphism: finite
//! lattices, and Q-categories over one-object quantaloids.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::lattice::{Elem, FiniteLattice};
use crate::qcategory::{QCategory, QFunctor};
use crate::qmatrix::TypedSet;
use crate::quantaloid::Quantaloid;

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    fn heap(k: usize, p: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k <= 1 {
            out.push(p.clone());
            return;
        }
        for i in 0..k {
            heap(k - 1, p, out);
            if k % 2 == 0 {
                p.swap(i, k - 1);
            } else {
                p.swap(0, k - 1);
            }
        }
    }
    heap(n, &mut p, &mut out);
    out
}

/// Lexicographically least relabelling of a square table.
fn canonical<T: Copy + Ord>(
    n: usize,
    entry: impl Fn(usize, usize) -> T,
    perms: &[Vec<usize>],
) -> Vec<T> {
    perms
        .iter()
        .map(|p| {
            (0..n * n)
                .map(|k| entry(p[k / n], p[k % n]))
                .collect::<Vec<T>>()
        })
        .min()
        .unwrap_or_default()
}

/// All lattices with `1..=max` elements, one per isomorphism class.
///
/// Elements are named `bot`, `a`, `b`, … , `top` (a single-element lattice is `top`).
pub fn lattices_up_to_iso(max: usize) -> Vec<FiniteLattice> {
    let mut out = Vec::new();
    if max >= 1 {
        out.push(FiniteLattice::from_pairs::<&str>(&["top"], &[]).expect("one point"));
    }
    for n in 2..=max {
        let k = n - 2;
        let mut names = vec!["bot".to_string()];
        names.extend((0..k).map(|i| ((b'a' + i as u8) as char).to_string()));
        names.push("top".to_string());
        let pairs: Vec<(usize, usize)> = (0..k)
            .flat_map(|i| (0..k).filter(move |&j| j != i).map(move |j| (i, j)))
            .collect();
        let perms = permutations(k);
        let mut seen = BTreeSet::new();
        for mask in 0u64..(1u64 << pairs.len()) {
            let rel = |i: usize, j: usize| {
                i == j
                    || pairs
                        .iter()
                        .position(|&p| p == (i, j))
                        .is_some_and(|b| mask >> b & 1 == 1)
            };
            let partial_order = (0..k).all(|i| {
                (0..k).all(|j| {
                    (i == j || !(rel(i, j) && rel(j, i)))
                        && (0..k).all(|l| !(rel(i, j) && rel(j, l)) || rel(i, l))
                })
            });
            if !partial_order {
                continue;
            }
            let code = canonical(k, |i, j| rel(i, j), &perms);
            if !seen.insert(code) {
                continue;
            }
            let leq = |i: usize, j: usize| {
                i == 0 || j == n - 1 || i == j || (i < n - 1 && j > 0 && rel(i - 1, j - 1))
            };
            if let Ok(l) = FiniteLattice::from_leq_fn(names.clone(), leq) {
                out.push(l);
            }
        }
    }
    out
}

/// `h` with `1 ≤ h` and `h∘h ≤ h`: the possible endo-homs of an object.
pub fn diagonal_candidates(q: &Quantaloid) -> Vec<Elem> {
    let h = q.hom(0, 0);
    h.elements()
        .filter(|&e| h.leq(q.id(0), e) && h.leq(q.comp(0, 0, 0, e, e), e))
        .collect()
}

/// All categories with at most `max_objects` objects over a one-object `q`,
/// one per isomorphism class (including the empty category). Objects are `x0, x1, …`.
pub fn categories_up_to_iso(q: &Arc<Quantaloid>, max_objects: usize) -> Vec<QCategory> {
    assert_eq!(
        q.n_obj(),
        1,
        "category enumeration needs a one-object quantaloid"
    );
    let h = q.hom(0, 0);
    let diag = diagonal_candidates(q);
    let all: Vec<Elem> = h.elements().collect();
    let mut out = Vec::new();
    for n in 0..=max_objects {
        let perms = permutations(n);
        let mut seen = BTreeSet::new();
        let mut m = vec![0 as Elem; n * n];
        let cells: Vec<(usize, usize)> = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).collect();
        fn rec(
            q: &Quantaloid,
            n: usize,
            cells: &[(usize, usize)],
            k: usize,
            diag: &[Elem],
            all: &[Elem],
            m: &mut Vec<Elem>,
            found: &mut dyn FnMut(&[Elem]),
        ) {
            if k == cells.len() {
                let h = q.hom(0, 0);
                let ok = (0..n).all(|a| {
                    (0..n).all(|b| {
                        (0..n).all(|c| {
                            h.leq(q.comp(0, 0, 0, m[b * n + c], m[a * n + b]), m[a * n + c])
                        })
                    })
                });
                if ok {
                    found(m);
                }
                return;
            }
            let (i, j) = cells[k];
            let opts = if i == j { diag } else { all };
            for &v in opts {
                m[i * n + j] = v;
                rec(q, n, cells, k + 1, diag, all, m, found);
            }
        }
        let mut found = |m: &[Elem]| {
            let code = canonical(n, |i, j| m[i * n + j], &perms);
            if seen.insert(code.clone()) {
                let objs =
                    TypedSet::from_items((0..n).map(|i| (format!("x{i}"), 0))).expect("unique");
                out.push(
                    QCategory::from_fn(q.clone(), objs, |a, b| code[a * n + b])
                        .expect("entries in range"),
                );
            }
        };
        rec(q, n, &cells, 0, &diag, &all, &mut m, &mut found);
    }
    out
}

/// All functors `A → B` (object maps satisfying the action inequality).
pub fn functors(a: &Arc<QCategory>, b: &Arc<QCategory>) -> Vec<QFunctor> {
    let n = a.n();
    let q = a.q();
    let mut out = Vec::new();
    let mut cur = vec![0usize; n];
    fn rec(
        a: &QCategory,
        b: &QCategory,
        q: &Quantaloid,
        k: usize,
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if k == a.n() {
            out.push(cur.clone());
            return;
        }
        for t in (0..b.n()).filter(|&t| b.ty(t) == a.ty(k)) {
            cur[k] = t;
            let ok = (0..=k).all(|j| {
                q.hom(a.ty(j), a.ty(k)).leq(a.hom(j, k), b.hom(cur[j], t))
                    && q.hom(a.ty(k), a.ty(j)).leq(a.hom(k, j), b.hom(t, cur[j]))
            });
            if ok {
                rec(a, b, q, k + 1, cur, out);
            }
        }
    }
    let mut maps = Vec::new();
    rec(a, b, q, 0, &mut cur, &mut maps);
    for m in maps {
        out.push(QFunctor::new(a.clone(), b.clone(), m).expect("type-preserving"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lattice_counts() {
        let ls = lattices_up_to_iso(6);
        let counts: Vec<usize> = (1..=6)
            .map(|n| ls.iter().filter(|l| l.len() == n).count())
            .collect();
        assert_eq!(counts, vec![1, 1, 1, 2, 5, 15]);
        let nondistributive = ls
            .iter()
            .filter(|l| l.len() == 5 && !l.is_distributive())
            .count();
        assert_eq!(nondistributive, 2);
    }

    #[test]
    fn preorder_counts() {
        let q = Arc::new(Quantaloid::boolean());
        let cs = categories_up_to_iso(&q, 3);
        let counts: Vec<usize> = (0..=3)
            .map(|n| cs.iter().filter(|c| c.n() == n).count())
            .collect();
        assert_eq!(counts, vec![1, 1, 3, 9]);
    }

    #[test]
    fn endo_diagonals() {
        let q = crate::fixtures::endo3();
        let names: Vec<&str> = diagonal_candidates(&q)
            .iter()
            .map(|&e| q.hom(0, 0).name(e))
            .collect();
        assert_eq!(names, vec!["fm1", "f11"]);
    }

    #[test]
    fn functors_between_chains() {
        let c2 = Arc::new(crate::fixtures::chain_category(2));
        let c3 = Arc::new(crate::fixtures::chain_category(3));
        // monotone maps 2 → 3: C(4,2) = 6
        assert_eq!(functors(&c2, &c3).len(), 6);
    }
}
