//! Q-categories, functors and distributors.
//!
//! A category is a typed object set with a hom matrix `hom(a,b) ∈ Q(ta,tb)`
//! satisfying `1_{ta} ≤ hom(a,a)` and `hom(b,c)∘hom(a,b) ≤ hom(a,c)`.
//! Categories are not assumed skeletal; "≅" always means isomorphism in the
//! underlying preorder `a ≤ b ⇔ 1 ≤ hom(a,b)`.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{QError, Result, ValidationReport};
use crate::lattice::Elem;
use crate::qmatrix::{mat_compose, QMatrix, TypedSet};
use crate::quantaloid::Quantaloid;

#[derive(Clone)]
pub struct QCategory {
    q: Arc<Quantaloid>,
    hom: QMatrix,
    /// `(type, hom(s, −))` → least such `s`; built on first use.
    rows: OnceLock<HashMap<(usize, Vec<Elem>), usize>>,
}

impl PartialEq for QCategory {
    fn eq(&self, other: &Self) -> bool {
        self.q == other.q && self.hom == other.hom
    }
}

impl Eq for QCategory {}

impl fmt::Debug for QCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut d = f.debug_map();
        for a in 0..self.n() {
            let row: Vec<&str> = (0..self.n()).map(|b| self.hom_name(a, b)).collect();
            d.entry(&self.label(a), &row);
        }
        d.finish()
    }
}

/// The underlying preorder of a category together with its iso-classes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Preorder {
    n: usize,
    leq: Vec<bool>,
    /// Iso-classes, each sorted, ordered by least member.
    pub classes: Vec<Vec<usize>>,
    /// Index into `classes` for each object.
    pub class_of: Vec<usize>,
}

impl Preorder {
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a * self.n + b]
    }

    pub fn iso(&self, a: usize, b: usize) -> bool {
        self.class_of[a] == self.class_of[b]
    }

    /// Least member of each iso-class.
    pub fn representatives(&self) -> Vec<usize> {
        self.classes.iter().map(|c| c[0]).collect()
    }
}

impl QCategory {
    /// Wraps a hom matrix; only structural checks are performed.
    pub fn new(q: Arc<Quantaloid>, hom: QMatrix) -> Result<Self> {
        if hom.dom() != hom.cod() {
            return Err(QError::MalformedParams(
                "hom matrix of a category must be square".into(),
            ));
        }
        hom.check_entries(&q)?;
        Ok(QCategory {
            q,
            hom,
            rows: OnceLock::new(),
        })
    }

    pub fn from_fn(
        q: Arc<Quantaloid>,
        objs: TypedSet,
        f: impl Fn(usize, usize) -> Elem,
    ) -> Result<Self> {
        let hom = QMatrix::from_fn(objs.clone(), objs, f);
        Self::new(q, hom)
    }

    /// Builds a category and fails with a validation error if an axiom is violated.
    pub fn validated(
        q: Arc<Quantaloid>,
        objs: TypedSet,
        f: impl Fn(usize, usize) -> Elem,
    ) -> Result<Self> {
        let c = Self::from_fn(q, objs, f)?;
        let r = c.validate();
        if r.is_ok() {
            Ok(c)
        } else {
            Err(QError::InvariantViolation(r))
        }
    }

    /// The free category `T^f` on a typed set: identities on the diagonal, bottom elsewhere.
    pub fn free(q: Arc<Quantaloid>, objs: TypedSet) -> Self {
        let hom = crate::qmatrix::mat_diag(&q, &objs);
        QCategory {
            q,
            hom,
            rows: OnceLock::new(),
        }
    }

    pub fn q(&self) -> &Arc<Quantaloid> {
        &self.q
    }

    pub fn objs(&self) -> &TypedSet {
        self.hom.dom()
    }

    pub fn hom_matrix(&self) -> &QMatrix {
        &self.hom
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.hom.dom().len()
    }

    #[inline]
    pub fn ty(&self, a: usize) -> usize {
        self.hom.dom().ty(a)
    }

    #[inline]
    pub fn hom(&self, a: usize, b: usize) -> Elem {
        self.hom.get(a, b)
    }

    pub fn hom_name(&self, a: usize, b: usize) -> &str {
        self.q.hom(self.ty(a), self.ty(b)).name(self.hom(a, b))
    }

    pub fn label(&self, a: usize) -> &str {
        self.hom.dom().label(a)
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.objs()
            .index_of(label)
            .ok_or_else(|| QError::UnknownName(format!("object `{label}`")))
    }

    /// The least object `s` of type `ty` whose hom-row `hom(s, −)` equals `row`.
    ///
    /// Objects are determined up to ≅ by their rows, so this is the lookup
    /// behind every supremum and weighted colimit.
    pub fn find_by_row(&self, ty: usize, row: &[Elem]) -> Option<usize> {
        let rows = self.rows.get_or_init(|| {
            let mut m = HashMap::new();
            for s in 0..self.n() {
                let r: Vec<Elem> = (0..self.n()).map(|b| self.hom(s, b)).collect();
                m.entry((self.ty(s), r)).or_insert(s);
            }
            m
        });
        rows.get(&(ty, row.to_vec())).copied()
    }

    /// `a ≤ b` in the underlying preorder.
    #[inline]
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.ty(a) == self.ty(b)
            && self
                .q
                .hom(self.ty(a), self.ty(a))
                .leq(self.q.id(self.ty(a)), self.hom(a, b))
    }

    #[inline]
    pub fn iso(&self, a: usize, b: usize) -> bool {
        self.leq(a, b) && self.leq(b, a)
    }

    /// Identity and composition laws, one entry per violated instance.
    pub fn validate(&self) -> ValidationReport {
        let mut r = ValidationReport::new();
        let q = &self.q;
        let n = self.n();
        for a in 0..n {
            if !self.leq(a, a) {
                r.push("identity-law", format!("1 ≰ hom({0},{0})", self.label(a)));
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let (ta, tb, tc) = (self.ty(a), self.ty(b), self.ty(c));
                    let v = q.comp(ta, tb, tc, self.hom(b, c), self.hom(a, b));
                    if !q.hom(ta, tc).leq(v, self.hom(a, c)) {
                        r.push(
                            "composition-law",
                            format!(
                                "hom({1},{2})∘hom({0},{1}) ≰ hom({0},{2})",
                                self.label(a),
                                self.label(b),
                                self.label(c)
                            ),
                        );
                    }
                }
            }
        }
        r
    }

    pub fn underlying_order(&self) -> Preorder {
        let n = self.n();
        let leq: Vec<bool> = (0..n)
            .flat_map(|a| (0..n).map(move |b| (a, b)))
            .map(|(a, b)| self.leq(a, b))
            .collect();
        let mut class_of = vec![usize::MAX; n];
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for a in 0..n {
            if class_of[a] != usize::MAX {
                continue;
            }
            let cls: Vec<usize> = (a..n)
                .filter(|&b| leq[a * n + b] && leq[b * n + a])
                .collect();
            for &b in &cls {
                class_of[b] = classes.len();
            }
            classes.push(cls);
        }
        Preorder {
            n,
            leq,
            classes,
            class_of,
        }
    }

    /// Whether distinct objects are never isomorphic.
    pub fn is_skeletal(&self) -> bool {
        (0..self.n()).all(|a| (0..a).all(|b| !self.iso(a, b)))
    }

    /// The full subcategory on the given objects (in that order).
    pub fn full_subcategory(&self, idx: &[usize]) -> QCategory {
        let objs = self.objs().restrict(idx);
        let hom = QMatrix::from_fn(objs.clone(), objs, |i, j| self.hom(idx[i], idx[j]));
        QCategory {
            q: self.q.clone(),
            hom,
            rows: OnceLock::new(),
        }
    }

    /// Same hom data with fresh labels.
    pub fn relabeled(&self, labels: Vec<String>) -> Result<QCategory> {
        let objs =
            TypedSet::from_items(labels.into_iter().zip(self.objs().types().iter().copied()))?;
        QCategory::from_fn(self.q.clone(), objs, |a, b| self.hom(a, b))
    }
}

/// An object assignment between two categories.
#[derive(Clone)]
pub struct QFunctor {
    pub src: Arc<QCategory>,
    pub dst: Arc<QCategory>,
    pub map: Vec<usize>,
}

impl fmt::Debug for QFunctor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut d = f.debug_map();
        for (a, &b) in self.map.iter().enumerate() {
            d.entry(&self.src.label(a), &self.dst.label(b));
        }
        d.finish()
    }
}

impl QFunctor {
    pub fn new(src: Arc<QCategory>, dst: Arc<QCategory>, map: Vec<usize>) -> Result<Self> {
        if map.len() != src.n() || map.iter().any(|&b| b >= dst.n()) {
            return Err(QError::MalformedParams(
                "functor map has the wrong shape".into(),
            ));
        }
        Ok(QFunctor { src, dst, map })
    }

    pub fn identity(a: &Arc<QCategory>) -> Self {
        QFunctor {
            src: a.clone(),
            dst: a.clone(),
            map: (0..a.n()).collect(),
        }
    }

    #[inline]
    pub fn apply(&self, a: usize) -> usize {
        self.map[a]
    }

    /// Type preservation and `hom_src(a,a') ≤ hom_dst(Fa,Fa')`.
    pub fn validate(&self) -> ValidationReport {
        let mut r = ValidationReport::new();
        let q = self.src.q();
        for a in 0..self.src.n() {
            if self.src.ty(a) != self.dst.ty(self.map[a]) {
                r.push(
                    "type-preservation",
                    format!("t({}) ≠ t(F {})", self.src.label(a), self.src.label(a)),
                );
            }
        }
        if !r.is_ok() {
            return r;
        }
        for a in 0..self.src.n() {
            for b in 0..self.src.n() {
                let l = q.hom(self.src.ty(a), self.src.ty(b));
                if !l.leq(self.src.hom(a, b), self.dst.hom(self.map[a], self.map[b])) {
                    r.push(
                        "action-increasing",
                        format!(
                            "hom({},{}) ≰ hom(F{},F{})",
                            self.src.label(a),
                            self.src.label(b),
                            self.src.label(a),
                            self.src.label(b)
                        ),
                    );
                }
            }
        }
        r
    }

    /// `self ∘ f`.
    pub fn after(&self, f: &QFunctor) -> Result<QFunctor> {
        if f.dst.n() != self.src.n() {
            return Err(QError::TypeMismatch(
                "functor composition needs matching categories".into(),
            ));
        }
        Ok(QFunctor {
            src: f.src.clone(),
            dst: self.dst.clone(),
            map: f.map.iter().map(|&b| self.map[b]).collect(),
        })
    }

    /// Pointwise `F ≤ G` in the target's underlying order.
    pub fn leq(&self, other: &QFunctor) -> bool {
        self.map.len() == other.map.len()
            && self
                .map
                .iter()
                .zip(&other.map)
                .all(|(&a, &b)| self.dst.leq(a, b))
    }

    /// Pointwise isomorphism; returns the first offending source object.
    pub fn iso_witness(&self, other: &QFunctor) -> Option<usize> {
        (0..self.map.len()).find(|&a| !self.dst.iso(self.map[a], other.map[a]))
    }

    pub fn is_iso_to(&self, other: &QFunctor) -> bool {
        self.map.len() == other.map.len() && self.iso_witness(other).is_none()
    }

    pub fn is_identity_up_to_iso(&self) -> bool {
        (0..self.map.len()).all(|a| self.dst.iso(self.map[a], a))
    }
}

/// A Q-matrix between categories compatible with both hom actions.
#[derive(Clone, Debug)]
pub struct QDistributor {
    pub src: Arc<QCategory>,
    pub dst: Arc<QCategory>,
    pub mat: QMatrix,
}

impl QDistributor {
    /// `hom_dst ⊗ mat ≤ mat` and `mat ⊗ hom_src ≤ mat`.
    pub fn validate(&self) -> ValidationReport {
        let mut r = ValidationReport::new();
        let q = self.src.q();
        let check = |m: Result<QMatrix>, side: &str, r: &mut ValidationReport| match m {
            Ok(m) => {
                if let Some((a, b)) = m.leq_witness(q, &self.mat) {
                    r.push(
                        "distributor-action",
                        format!("{side} at ({}, {})", self.src.label(a), self.dst.label(b)),
                    );
                }
            }
            Err(e) => r.push("distributor-shape", e.to_string()),
        };
        check(
            mat_compose(q, self.dst.hom_matrix(), &self.mat),
            "target action",
            &mut r,
        );
        check(
            mat_compose(q, &self.mat, self.src.hom_matrix()),
            "source action",
            &mut r,
        );
        r
    }
}

#[derive(Clone, Debug)]
pub struct AdjointPair {
    pub left: QDistributor,
    pub right: QDistributor,
}

impl AdjointPair {
    /// Unit `hom_A ≤ right⊗left` and counit `left⊗right ≤ hom_B`.
    pub fn validate(&self) -> ValidationReport {
        let mut r = ValidationReport::new();
        r.extend(self.left.validate());
        r.extend(self.right.validate());
        let q = self.left.src.q();
        match mat_compose(q, &self.right.mat, &self.left.mat) {
            Ok(u) if self.left.src.hom_matrix().leq(q, &u) => {}
            _ => r.push("unit", "hom_A ≰ right⊗left"),
        }
        match mat_compose(q, &self.left.mat, &self.right.mat) {
            Ok(c) if c.leq(q, self.left.dst.hom_matrix()) => {}
            _ => r.push("counit", "left⊗right ≰ hom_B"),
        }
        r
    }

    pub fn unit(&self) -> QMatrix {
        mat_compose(self.left.src.q(), &self.right.mat, &self.left.mat).expect("shapes agree")
    }

    pub fn counit(&self) -> QMatrix {
        mat_compose(self.left.src.q(), &self.left.mat, &self.right.mat).expect("shapes agree")
    }
}

/// The graph `hom_B(F−,−)` and cograph `hom_B(−,F−)` of a functor.
pub fn graph_cograph(f: &QFunctor) -> Result<AdjointPair> {
    let r = f.validate();
    if !r.is_ok() {
        return Err(QError::InvariantViolation(r));
    }
    let (a, b) = (&f.src, &f.dst);
    let left = QMatrix::from_fn(a.objs().clone(), b.objs().clone(), |x, y| {
        b.hom(f.map[x], y)
    });
    let right = QMatrix::from_fn(b.objs().clone(), a.objs().clone(), |y, x| {
        b.hom(y, f.map[x])
    });
    let pair = AdjointPair {
        left: QDistributor {
            src: a.clone(),
            dst: b.clone(),
            mat: left,
        },
        right: QDistributor {
            src: b.clone(),
            dst: a.clone(),
            mat: right,
        },
    };
    let r = pair.validate();
    if !r.is_ok() {
        return Err(QError::InternalInconsistency(format!(
            "graph/cograph is not an adjunction: {r}"
        )));
    }
    Ok(pair)
}

/// A functor `G` with `hom_B(Fa, b) = hom_A(a, Gb)` for all `a, b`.
///
/// The defining equality separates over `b`, so each `Gb` is found
/// independently; the least-index representative is returned.
pub fn right_adjoint_functor(f: &QFunctor) -> Option<QFunctor> {
    let (a, b) = (&f.src, &f.dst);
    let mut map = Vec::with_capacity(b.n());
    for y in 0..b.n() {
        let g = (0..a.n()).find(|&x2| {
            a.ty(x2) == b.ty(y) && (0..a.n()).all(|x| a.hom(x, x2) == b.hom(f.map[x], y))
        })?;
        map.push(g);
    }
    Some(QFunctor {
        src: b.clone(),
        dst: a.clone(),
        map,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FunctorFlags {
    pub fully_faithful: bool,
    pub dense: bool,
    pub ess_injective: bool,
    pub ess_surjective: bool,
    /// `G∘F ≅ 1_A`; `None` when `F` has no right adjoint.
    pub mono: Option<bool>,
    /// `F∘G ≅ 1_B`; `None` when `F` has no right adjoint.
    pub epi: Option<bool>,
    /// For left adjoints: `ff ⇔ ess-injective ⇔ mono` and `dense ⇔ ess-surjective ⇔ epi`.
    pub coherent: Option<bool>,
}

pub fn classify_functor(f: &QFunctor) -> FunctorFlags {
    let (a, b) = (&f.src, &f.dst);
    let fully_faithful =
        (0..a.n()).all(|x| (0..a.n()).all(|y| a.hom(x, y) == b.hom(f.map[x], f.map[y])));
    let dense = {
        let q = b.q();
        (0..b.n()).all(|y| {
            (0..b.n()).all(|y2| {
                let (ty, ty2) = (b.ty(y), b.ty(y2));
                let v =
                    q.hom(ty, ty2).join_all((0..a.n()).map(|x| {
                        q.comp(ty, a.ty(x), ty2, b.hom(f.map[x], y2), b.hom(y, f.map[x]))
                    }));
                v == b.hom(y, y2)
            })
        })
    };
    let ess_surjective = (0..b.n()).all(|y| (0..a.n()).any(|x| b.iso(f.map[x], y)));
    let ess_injective =
        (0..a.n()).all(|x| (0..a.n()).all(|y| !b.iso(f.map[x], f.map[y]) || a.iso(x, y)));
    let (mono, epi, coherent) = match right_adjoint_functor(f) {
        Some(g) => {
            let gf = g.after(f).expect("composable");
            let fg = f.after(&g).expect("composable");
            let mono = gf.is_identity_up_to_iso();
            let epi = fg.is_identity_up_to_iso();
            let coherent = fully_faithful == ess_injective
                && ess_injective == mono
                && dense == ess_surjective
                && ess_surjective == epi;
            (Some(mono), Some(epi), Some(coherent))
        }
        None => (None, None, None),
    };
    FunctorFlags {
        fully_faithful,
        dense,
        ess_injective,
        ess_surjective,
        mono,
        epi,
        coherent,
    }
}

/// The kernel pair of `F`: same-type pairs with isomorphic images.
pub struct KernelPair {
    pub k: Arc<QCategory>,
    pub d1: QFunctor,
    pub d2: QFunctor,
}

pub fn kernel_pair(f: &QFunctor) -> Result<KernelPair> {
    let a = &f.src;
    let q = a.q().clone();
    let mut pairs = Vec::new();
    for x in 0..a.n() {
        for y in 0..a.n() {
            if a.ty(x) == a.ty(y) && f.dst.iso(f.map[x], f.map[y]) {
                pairs.push((x, y));
            }
        }
    }
    let objs = TypedSet::from_items(
        pairs
            .iter()
            .map(|&(x, y)| (format!("({},{})", a.label(x), a.label(y)), a.ty(x))),
    )?;
    let k = QCategory::from_fn(q.clone(), objs, |i, j| {
        let ((b1, b2), (a1, a2)) = (pairs[i], pairs[j]);
        q.hom(a.ty(b1), a.ty(a1)).meet(a.hom(b1, a1), a.hom(b2, a2))
    })?;
    let k = Arc::new(k);
    let d1 = QFunctor {
        src: k.clone(),
        dst: a.clone(),
        map: pairs.iter().map(|p| p.0).collect(),
    };
    let d2 = QFunctor {
        src: k.clone(),
        dst: a.clone(),
        map: pairs.iter().map(|p| p.1).collect(),
    };
    let mut r = k.validate();
    r.extend(d1.validate());
    r.extend(d2.validate());
    if !f.after(&d1)?.is_iso_to(&f.after(&d2)?) {
        r.push("kernel-pair", "F∘D1 ≇ F∘D2");
    }
    if !r.is_ok() {
        return Err(QError::InternalInconsistency(format!("kernel pair: {r}")));
    }
    Ok(KernelPair { k, d1, d2 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{boolean_poset, diamond};

    #[test]
    fn two_chain_validates() {
        let c = boolean_poset(&["bot", "top"], &[("bot", "top")]);
        assert!(c.validate().is_ok());
        let o = c.underlying_order();
        assert!(o.leq(0, 1) && !o.leq(1, 0));
    }

    #[test]
    fn missing_reflexivity_is_reported() {
        let q = Arc::new(Quantaloid::boolean());
        let objs = TypedSet::from_items([("x".to_string(), 0), ("y".to_string(), 0)]).unwrap();
        let c = QCategory::from_fn(q, objs, |a, b| (a == b && a == 0) as Elem).unwrap();
        let r = c.validate();
        assert_eq!(r.violations.len(), 1);
        assert_eq!(r.violations[0].check, "identity-law");
        assert!(r.violations[0].witness.contains("hom(y,y)"));
    }

    #[test]
    fn broken_functor_reports_action_increasing() {
        let d = Arc::new(diamond());
        let c2 = Arc::new(boolean_poset(&["bot", "top"], &[("bot", "top")]));
        // ⊥ ↦ top, a ↦ bot: hom(⊥,a) = 1 but hom(top,bot) = 0.
        let f = QFunctor::new(d, c2, vec![1, 0, 0, 1]).unwrap();
        let r = f.validate();
        assert!(r.violations.iter().any(|v| v.check == "action-increasing"));
    }

    #[test]
    fn identity_functor_flags() {
        let d = Arc::new(diamond());
        let id = QFunctor::identity(&d);
        let flags = classify_functor(&id);
        assert!(flags.fully_faithful && flags.dense && flags.ess_injective && flags.ess_surjective);
        assert_eq!(flags.mono, Some(true));
        assert_eq!(flags.epi, Some(true));
        let g = right_adjoint_functor(&id).unwrap();
        assert_eq!(g.map, id.map);
        let p = graph_cograph(&id).unwrap();
        assert_eq!(p.unit(), *d.hom_matrix());
        assert_eq!(p.counit(), *d.hom_matrix());
    }

    #[test]
    fn embedding_two_chain_into_diamond() {
        let d = Arc::new(diamond());
        let c2 = Arc::new(boolean_poset(&["bot", "top"], &[("bot", "top")]));
        let f = QFunctor::new(c2, d.clone(), vec![0, 3]).unwrap();
        let flags = classify_functor(&f);
        assert!(flags.fully_faithful);
        assert!(!flags.dense);
        assert_eq!(flags.epi, Some(false));
        let p = graph_cograph(&f).unwrap();
        assert!(p.counit().leq(d.q(), d.hom_matrix()));
        assert_ne!(p.counit(), *d.hom_matrix());
        // left ⊗ right ⊗ left = left
        let q = d.q();
        let lrl = mat_compose(
            q,
            &p.left.mat,
            &mat_compose(q, &p.right.mat, &p.left.mat).unwrap(),
        )
        .unwrap();
        assert_eq!(lrl, p.left.mat);
    }

    #[test]
    fn collapse_of_diamond() {
        let d = Arc::new(diamond());
        let c2 = Arc::new(boolean_poset(&["bot", "top"], &[("bot", "top")]));
        // ⊥, a ↦ bot; b, ⊤ ↦ top
        let f = QFunctor::new(d, c2, vec![0, 0, 1, 1]).unwrap();
        assert!(f.validate().is_ok());
        let flags = classify_functor(&f);
        assert_eq!(flags.epi, Some(true));
        assert!(!flags.fully_faithful);
        assert_eq!(flags.coherent, Some(true));
        let kp = kernel_pair(&f).unwrap();
        assert_eq!(kp.k.n(), 8);
    }

    #[test]
    fn non_join_preserving_map_has_no_right_adjoint() {
        // Monotone but not join-preserving: a, b ↦ bot while a ∨ b = ⊤ ↦ top.
        let d = Arc::new(diamond());
        let c2 = Arc::new(boolean_poset(&["bot", "top"], &[("bot", "top")]));
        let f = QFunctor::new(d, c2, vec![0, 0, 0, 1]).unwrap();
        assert!(f.validate().is_ok());
        assert!(right_adjoint_functor(&f).is_none());
    }

    #[test]
    fn kernel_pair_of_identity_and_constant() {
        let d = Arc::new(diamond());
        let kp = kernel_pair(&QFunctor::identity(&d)).unwrap();
        assert_eq!(kp.k.n(), 4);
        assert_eq!(kp.d1.map, kp.d2.map);
        let one = Arc::new(boolean_poset(&["*"], &[]));
        let kp = kernel_pair(&QFunctor::new(d, one, vec![0; 4]).unwrap()).unwrap();
        assert_eq!(kp.k.n(), 16);
    }
}
