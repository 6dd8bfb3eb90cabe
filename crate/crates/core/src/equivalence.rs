//! Equivalence of Q-categories.
//!
//! Isomorphic objects have identical hom rows and columns, so `A ≃ B` holds
//! exactly when the skeletons (one representative per iso-class) are
//! isomorphic as typed hom matrices. The isomorphism is found by backtracking
//! with invariant-based candidate filtering.

use std::sync::Arc;

use crate::lattice::Elem;
use crate::qcategory::{QCategory, QFunctor};

/// A pair of functors `F: A → B`, `G: B → A` with `G∘F ≅ 1` and `F∘G ≅ 1`.
#[derive(Debug, Clone)]
pub struct Equivalence {
    pub f: QFunctor,
    pub g: QFunctor,
}

impl Equivalence {
    /// Checks both functors and both round trips.
    pub fn verify(&self) -> bool {
        self.f.validate().is_ok()
            && self.g.validate().is_ok()
            && self
                .g
                .after(&self.f)
                .map(|gf| gf.is_identity_up_to_iso())
                .unwrap_or(false)
            && self
                .f
                .after(&self.g)
                .map(|fg| fg.is_identity_up_to_iso())
                .unwrap_or(false)
    }
}

fn signature(
    c: &QCategory,
    reps: &[usize],
    r: usize,
) -> (usize, Elem, Vec<(usize, Elem)>, Vec<(usize, Elem)>) {
    let mut row: Vec<(usize, Elem)> = reps.iter().map(|&s| (c.ty(s), c.hom(r, s))).collect();
    let mut col: Vec<(usize, Elem)> = reps.iter().map(|&s| (c.ty(s), c.hom(s, r))).collect();
    row.sort_unstable();
    col.sort_unstable();
    (c.ty(r), c.hom(r, r), row, col)
}

/// Searches for an equivalence `A ≃ B` over the same quantaloid.
pub fn find_equivalence(a: &Arc<QCategory>, b: &Arc<QCategory>) -> Option<Equivalence> {
    if a.q() != b.q() {
        return None;
    }
    let (oa, ob) = (a.underlying_order(), b.underlying_order());
    let (ra, rb) = (oa.representatives(), ob.representatives());
    if ra.len() != rb.len() {
        return None;
    }
    let sa: Vec<_> = ra.iter().map(|&r| signature(a, &ra, r)).collect();
    let sb: Vec<_> = rb.iter().map(|&r| signature(b, &rb, r)).collect();
    let mut ms = sa.clone();
    let mut ns = sb.clone();
    ms.sort();
    ns.sort();
    if ms != ns {
        return None;
    }
    let k = ra.len();
    let cands: Vec<Vec<usize>> = (0..k)
        .map(|i| (0..k).filter(|&j| sa[i] == sb[j]).collect())
        .collect();
    // Most constrained first.
    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by_key(|&i| cands[i].len());
    let mut sigma = vec![usize::MAX; k];
    let mut used = vec![false; k];
    fn rec(
        a: &QCategory,
        b: &QCategory,
        ra: &[usize],
        rb: &[usize],
        cands: &[Vec<usize>],
        order: &[usize],
        d: usize,
        sigma: &mut Vec<usize>,
        used: &mut Vec<bool>,
    ) -> bool {
        if d == order.len() {
            return true;
        }
        let i = order[d];
        for &j in &cands[i] {
            if used[j] {
                continue;
            }
            let ok = order[..d].iter().all(|&p| {
                let jp = sigma[p];
                a.hom(ra[i], ra[p]) == b.hom(rb[j], rb[jp])
                    && a.hom(ra[p], ra[i]) == b.hom(rb[jp], rb[j])
            });
            if ok {
                sigma[i] = j;
                used[j] = true;
                if rec(a, b, ra, rb, cands, order, d + 1, sigma, used) {
                    return true;
                }
                used[j] = false;
                sigma[i] = usize::MAX;
            }
        }
        false
    }
    if !rec(a, b, &ra, &rb, &cands, &order, 0, &mut sigma, &mut used) {
        return None;
    }
    let mut inv = vec![0; k];
    for (i, &j) in sigma.iter().enumerate() {
        inv[j] = i;
    }
    let fmap = (0..a.n()).map(|x| rb[sigma[oa.class_of[x]]]).collect();
    let gmap = (0..b.n()).map(|y| ra[inv[ob.class_of[y]]]).collect();
    let e = Equivalence {
        f: QFunctor::new(a.clone(), b.clone(), fmap).ok()?,
        g: QFunctor::new(b.clone(), a.clone(), gmap).ok()?,
    };
    debug_assert!(e.verify());
    Some(e)
}

pub fn is_equivalent(a: &Arc<QCategory>, b: &Arc<QCategory>) -> bool {
    find_equivalence(a, b).is_some_and(|e| e.verify())
}
