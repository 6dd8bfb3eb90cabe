//! Presheaves, the free cocompletion `P(A)`, suprema and weighted colimits.
//!
//! A presheaf of type `W` on `A` is a family `at(x) ∈ Q(tx, W)` with
//! `at(y)∘hom(x,y) ≤ at(x)`. Presheaves are enumerated by backtracking with the
//! action constraint checked on every assignment; because every consistent
//! prefix extends (e.g. by the presheaf it generates), the search has no dead
//! ends and runs in time linear in its output.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock};

use crate::error::{QError, Result};
use crate::lattice::Elem;
use crate::qcategory::{QCategory, QFunctor};
use crate::qmatrix::{QMatrix, TypedSet};
use crate::quantaloid::Quantaloid;

/// Default bound on the number of presheaves enumerated per category.
pub const DEFAULT_CAP: usize = 20_000;

/// The presheaf cap, honouring the `QDOMAIN_CAP` environment variable.
pub fn cap_from_env() -> usize {
    std::env::var("QDOMAIN_CAP")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .filter(|&c: &usize| c > 0)
        .unwrap_or(DEFAULT_CAP)
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Presheaf {
    /// The object `W` of `Q` the presheaf takes values in.
    pub ty: usize,
    pub at: Vec<Elem>,
}

impl Presheaf {
    /// `Y(x) = hom(−, x)`.
    pub fn representable(a: &QCategory, x: usize) -> Self {
        Presheaf {
            ty: a.ty(x),
            at: (0..a.n()).map(|y| a.hom(y, x)).collect(),
        }
    }

    /// The empty presheaf of type `w`.
    pub fn bottom(a: &QCategory, w: usize) -> Self {
        Presheaf {
            ty: w,
            at: (0..a.n()).map(|y| a.q().bottom(a.ty(y), w)).collect(),
        }
    }

    /// First pair `(x, y)` violating `at(y)∘hom(x,y) ≤ at(x)`.
    pub fn action_witness(&self, a: &QCategory) -> Option<(usize, usize)> {
        if self.at.len() != a.n() {
            return Some((0, 0));
        }
        let q = a.q();
        for x in 0..a.n() {
            for y in 0..a.n() {
                let v = q.comp(a.ty(x), a.ty(y), self.ty, self.at[y], a.hom(x, y));
                if !q.hom(a.ty(x), self.ty).leq(v, self.at[x]) {
                    return Some((x, y));
                }
            }
        }
        None
    }

    pub fn is_presheaf_on(&self, a: &QCategory) -> bool {
        self.action_witness(a).is_none()
    }

    /// Pointwise order (same type required).
    pub fn leq(&self, q: &Quantaloid, types: &[usize], other: &Presheaf) -> bool {
        self.ty == other.ty
            && self
                .at
                .iter()
                .zip(&other.at)
                .enumerate()
                .all(|(x, (&u, &v))| q.hom(types[x], self.ty).leq(u, v))
    }

    /// Deterministic display label such as `{a,b}` (boolean values) or `{a:m}`.
    pub fn label(&self, q: &Quantaloid, objs: &TypedSet) -> String {
        let parts: Vec<String> = self
            .at
            .iter()
            .enumerate()
            .filter_map(|(x, &v)| {
                let l = q.hom(objs.ty(x), self.ty);
                if v == l.bottom() {
                    None
                } else if l.len() == 2 {
                    Some(objs.label(x).to_string())
                } else {
                    Some(format!("{}:{}", objs.label(x), l.name(v)))
                }
            })
            .collect();
        if q.n_obj() == 1 {
            format!("{{{}}}", parts.join(","))
        } else {
            format!("{}|{{{}}}", q.object_name(self.ty), parts.join(","))
        }
    }
}

/// `hom_{P(A)}(φ, ψ) = ⋀_x ext(φ(x), ψ(x)) ∈ Q(W_φ, W_ψ)`.
pub fn presheaf_hom(q: &Quantaloid, types: &[usize], phi: &Presheaf, psi: &Presheaf) -> Elem {
    let l = q.hom(phi.ty, psi.ty);
    let mut acc = l.top();
    for (x, &t) in types.iter().enumerate() {
        acc = l.meet(acc, q.ext(t, phi.ty, psi.ty, phi.at[x], psi.at[x]));
        if acc == l.bottom() {
            break;
        }
    }
    acc
}

/// Enumerates all families `at(x) ∈ Q(t x, W)` with `at(y)∘h(x,y) ≤ at(x)`.
///
/// `h` need not be reflexive; only `h⊗h ≤ h` is required for the search to be
/// free of dead ends.
pub fn enumerate_families(
    q: &Quantaloid,
    types: &[usize],
    h: &[Elem],
    cap: usize,
    what: &str,
) -> Result<Vec<Presheaf>> {
    let n = types.len();
    let mut out = Vec::new();
    let mut cur: Vec<Elem> = vec![0; n];
    for w in 0..q.n_obj() {
        // Recursive backtracking over positions 0..n.
        fn rec(
            q: &Quantaloid,
            types: &[usize],
            h: &[Elem],
            w: usize,
            k: usize,
            cur: &mut Vec<Elem>,
            out: &mut Vec<Presheaf>,
            cap: usize,
        ) -> bool {
            let n = types.len();
            if k == n {
                if out.len() >= cap {
                    return false;
                }
                out.push(Presheaf {
                    ty: w,
                    at: cur.clone(),
                });
                return true;
            }
            let tk = types[k];
            let lk = q.hom(tk, w);
            for v in lk.elements() {
                let ok = (0..k).all(|j| {
                    let tj = types[j];
                    // at(j)∘h(k,j) ≤ at(k)   and   at(k)∘h(j,k) ≤ at(j)
                    lk.leq(q.comp(tk, tj, w, cur[j], h[k * n + j]), v)
                        && q.hom(tj, w).leq(q.comp(tj, tk, w, v, h[j * n + k]), cur[j])
                }) && lk.leq(q.comp(tk, tk, w, v, h[k * n + k]), v);
                if ok {
                    cur[k] = v;
                    if !rec(q, types, h, w, k + 1, cur, out, cap) {
                        return false;
                    }
                }
            }
            true
        }
        if !rec(q, types, h, w, 0, &mut cur, &mut out, cap) {
            return Err(QError::EnumerationCapExceeded {
                cap,
                what: what.to_string(),
            });
        }
    }
    Ok(out)
}

/// All presheaves on `a`, ordered by type and then lexicographically.
pub fn enumerate_presheaves(a: &QCategory, cap: usize) -> Result<Vec<Presheaf>> {
    let n = a.n();
    let h: Vec<Elem> = (0..n * n).map(|i| a.hom(i / n, i % n)).collect();
    enumerate_families(
        a.q(),
        a.objs().types(),
        &h,
        cap,
        &format!("presheaves on a {n}-object category"),
    )
}

/// Operations shared by materialized categories and presheaf categories.
pub trait Colimits {
    fn quantaloid(&self) -> &Quantaloid;
    fn size(&self) -> usize;
    fn obj_type(&self, i: usize) -> usize;
    fn hom_at(&self, i: usize, j: usize) -> Elem;
    fn obj_label(&self, i: usize) -> String;

    /// The colimit of `weight` (a presheaf on some `C`) along the object map
    /// `map: C₀ → self`, if it exists.
    fn colim(&self, weight: &Presheaf, map: &[usize]) -> Option<usize>;

    fn le(&self, i: usize, j: usize) -> bool {
        let t = self.obj_type(i);
        t == self.obj_type(j)
            && self
                .quantaloid()
                .hom(t, t)
                .leq(self.quantaloid().id(t), self.hom_at(i, j))
    }

    fn is_iso(&self, i: usize, j: usize) -> bool {
        self.le(i, j) && self.le(j, i)
    }
}

impl Colimits for QCategory {
    fn quantaloid(&self) -> &Quantaloid {
        self.q()
    }

    fn size(&self) -> usize {
        self.n()
    }

    fn obj_type(&self, i: usize) -> usize {
        self.ty(i)
    }

    fn hom_at(&self, i: usize, j: usize) -> Elem {
        self.hom(i, j)
    }

    fn obj_label(&self, i: usize) -> String {
        self.label(i).to_string()
    }

    /// The object `K` with `hom(K, t) = ⋀_c ext(weight(c), hom(map c, t))`.
    fn colim(&self, weight: &Presheaf, map: &[usize]) -> Option<usize> {
        let row = colim_row(self, weight, map);
        self.find_by_row(weight.ty, &row)
    }
}

/// The hom-row any colimit of `weight` along `map` must have.
pub fn colim_row(a: &QCategory, weight: &Presheaf, map: &[usize]) -> Vec<Elem> {
    let q = a.q();
    let w = weight.ty;
    (0..a.n())
        .map(|t| {
            let tt = a.ty(t);
            let l = q.hom(w, tt);
            let mut acc = l.top();
            for (c, &fc) in map.iter().enumerate() {
                acc = l.meet(acc, q.ext(a.ty(fc), w, tt, weight.at[c], a.hom(fc, t)));
            }
            acc
        })
        .collect()
}

/// The pushforward `x ↦ ⋁_c φ(c)∘hom_B(x, F c)` of a presheaf along an object map into `b`.
pub fn pushforward(b: &QCategory, map: &[usize], phi: &Presheaf) -> Presheaf {
    let q = b.q();
    let w = phi.ty;
    Presheaf {
        ty: w,
        at: (0..b.n())
            .map(|x| {
                let tx = b.ty(x);
                q.hom(tx, w).join_all(
                    map.iter()
                        .enumerate()
                        .map(|(c, &fc)| q.comp(tx, b.ty(fc), w, phi.at[c], b.hom(x, fc))),
                )
            })
            .collect(),
    }
}

/// `sup φ`: an object `s` of type `W_φ` with `hom(s, a) = hom_{P(A)}(φ, Y a)`.
pub fn sup(a: &QCategory, phi: &Presheaf) -> Option<usize> {
    let id: Vec<usize> = (0..a.n()).collect();
    a.colim(phi, &id)
}

/// The presheaf category of a base category, held as an enumeration.
///
/// Homs are computed on demand; the category is materialized as a
/// [`QCategory`] only when requested.
pub struct PresheafCategory {
    pub base: Arc<QCategory>,
    pub presheaves: Vec<Presheaf>,
    index: HashMap<Presheaf, usize>,
    materialized: OnceLock<Arc<QCategory>>,
}

/// Largest presheaf category that will be materialized as a hom matrix.
pub const MATERIALIZE_LIMIT: usize = 4096;

impl PresheafCategory {
    pub fn new(base: Arc<QCategory>, cap: usize) -> Result<Self> {
        let presheaves = enumerate_presheaves(&base, cap)?;
        Ok(Self::from_presheaves(base, presheaves))
    }

    pub fn from_presheaves(base: Arc<QCategory>, presheaves: Vec<Presheaf>) -> Self {
        let index = presheaves
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i))
            .collect();
        PresheafCategory {
            base,
            presheaves,
            index,
            materialized: OnceLock::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.presheaves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.presheaves.is_empty()
    }

    pub fn get(&self, i: usize) -> &Presheaf {
        &self.presheaves[i]
    }

    pub fn index_of(&self, p: &Presheaf) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn hom(&self, i: usize, j: usize) -> Elem {
        presheaf_hom(
            self.base.q(),
            self.base.objs().types(),
            &self.presheaves[i],
            &self.presheaves[j],
        )
    }

    /// Index of `Y(x)` for each base object.
    pub fn yoneda_map(&self) -> Vec<usize> {
        (0..self.base.n())
            .map(|x| {
                self.index_of(&Presheaf::representable(&self.base, x))
                    .expect("representables are presheaves")
            })
            .collect()
    }

    /// `P(A)` as a materialized category (labels from [`Presheaf::label`]).
    pub fn category(&self) -> Result<Arc<QCategory>> {
        if let Some(c) = self.materialized.get() {
            return Ok(c.clone());
        }
        if self.len() > MATERIALIZE_LIMIT {
            return Err(QError::EnumerationCapExceeded {
                cap: MATERIALIZE_LIMIT,
                what: "objects of a materialized presheaf category".into(),
            });
        }
        let q = self.base.q();
        let objs = TypedSet::from_items(
            self.presheaves
                .iter()
                .map(|p| (p.label(q, self.base.objs()), p.ty)),
        )?;
        let n = self.len();
        let entries: Vec<Elem> = (0..n * n).map(|k| self.hom(k / n, k % n)).collect();
        let hom = QMatrix::from_entries(objs.clone(), objs, entries)?;
        let c = Arc::new(QCategory::new(q.clone(), hom)?);
        Ok(self.materialized.get_or_init(|| c).clone())
    }

    /// The Yoneda embedding `A → P(A)` as a functor into the materialized category.
    pub fn yoneda(&self) -> Result<QFunctor> {
        QFunctor::new(self.base.clone(), self.category()?, self.yoneda_map())
    }
}

impl Colimits for PresheafCategory {
    fn quantaloid(&self) -> &Quantaloid {
        self.base.q()
    }

    fn size(&self) -> usize {
        self.len()
    }

    fn obj_type(&self, i: usize) -> usize {
        self.presheaves[i].ty
    }

    fn hom_at(&self, i: usize, j: usize) -> Elem {
        self.hom(i, j)
    }

    fn obj_label(&self, i: usize) -> String {
        self.presheaves[i].label(self.base.q(), self.base.objs())
    }

    /// Pointwise: `colim(φ, F)(x) = ⋁_c φ(c)∘F(c)(x)`.
    fn colim(&self, weight: &Presheaf, map: &[usize]) -> Option<usize> {
        let q = self.base.q();
        let w = weight.ty;
        let at = (0..self.base.n())
            .map(|x| {
                let tx = self.base.ty(x);
                q.hom(tx, w)
                    .join_all(map.iter().enumerate().map(|(c, &fc)| {
                        let p = &self.presheaves[fc];
                        q.comp(tx, p.ty, w, weight.at[c], p.at[x])
                    }))
            })
            .collect();
        self.index_of(&Presheaf { ty: w, at })
    }
}

/// A cocomplete category together with its enumerated presheaves and their suprema.
pub struct Cocomplete {
    pub cat: Arc<QCategory>,
    pub psh: Arc<PresheafCategory>,
    /// `sups[i]` = chosen supremum of presheaf `i`.
    pub sups: Vec<usize>,
}

/// Outcome of a cocompleteness test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CocompletenessReport {
    pub cocomplete: bool,
    /// First presheaf (in enumeration order) without a supremum.
    pub witness: Option<Presheaf>,
}

impl Cocomplete {
    /// Enumerates `P(A)` and computes every supremum; fails if one is missing.
    pub fn new(cat: Arc<QCategory>, cap: usize) -> Result<Self> {
        let psh = Arc::new(PresheafCategory::new(cat.clone(), cap)?);
        Self::with_presheaves(cat, psh)
    }

    pub fn with_presheaves(cat: Arc<QCategory>, psh: Arc<PresheafCategory>) -> Result<Self> {
        let mut sups = Vec::with_capacity(psh.len());
        for p in &psh.presheaves {
            match sup(&cat, p) {
                Some(s) => sups.push(s),
                None => {
                    return Err(QError::NotCocomplete {
                        witness: p.label(cat.q(), cat.objs()),
                    })
                }
            }
        }
        Ok(Cocomplete { cat, psh, sups })
    }

    pub fn q(&self) -> &Quantaloid {
        self.cat.q()
    }

    pub fn n(&self) -> usize {
        self.cat.n()
    }

    /// `sup_A` as an object map from the enumerated presheaves.
    pub fn sup_of(&self, i: usize) -> usize {
        self.sups[i]
    }
}

pub fn is_cocomplete(a: &QCategory, cap: usize) -> Result<CocompletenessReport> {
    for p in enumerate_presheaves(a, cap)? {
        if sup(a, &p).is_none() {
            return Ok(CocompletenessReport {
                cocomplete: false,
                witness: Some(p),
            });
        }
    }
    Ok(CocompletenessReport {
        cocomplete: true,
        witness: None,
    })
}

/// `(PresheafCategory, Yoneda)`; Yoneda is checked fully faithful.
pub fn presheaf_category(a: &Arc<QCategory>, cap: usize) -> Result<(PresheafCategory, QFunctor)> {
    let p = PresheafCategory::new(a.clone(), cap)?;
    let y = p.yoneda()?;
    let ff = (0..a.n()).all(|x| (0..a.n()).all(|z| y.dst.hom(y.map[x], y.map[z]) == a.hom(x, z)));
    if !ff {
        return Err(QError::InternalInconsistency(
            "Yoneda embedding is not fully faithful".into(),
        ));
    }
    Ok((p, y))
}

/// `K(d) = colim(Φ(−,d), F)` for each column `d` of the weight; `None` if some
/// colimit is missing.
pub fn weighted_colimit(weight: &QMatrix, f: &QFunctor) -> Result<Option<Vec<usize>>> {
    let c = &f.src;
    if weight.dom().types() != c.objs().types() {
        return Err(QError::TypeMismatch(
            "weight rows must be the objects of the diagram's domain".into(),
        ));
    }
    let mut out = Vec::with_capacity(weight.cod().len());
    for d in 0..weight.cod().len() {
        let col = Presheaf {
            ty: weight.cod().ty(d),
            at: (0..c.n()).map(|x| weight.get(x, d)).collect(),
        };
        if !col.is_presheaf_on(c) {
            return Err(QError::WeightNotPresheaf(weight.cod().label(d).to_string()));
        }
        match f.dst.colim(&col, &f.map) {
            Some(k) => out.push(k),
            None => return Ok(None),
        }
    }
    Ok(Some(out))
}

/// Left Kan extension `⟨F, Y⟩: P(A) → B`, `φ ↦ colim(φ, F)`; verified to restrict to `F` along Yoneda.
pub fn kan_extend<B: Colimits + ?Sized>(
    p: &PresheafCategory,
    map: &[usize],
    b: &B,
) -> Result<Vec<usize>> {
    let mut out = Vec::with_capacity(p.len());
    for phi in &p.presheaves {
        match b.colim(phi, map) {
            Some(k) => out.push(k),
            None => {
                return Err(QError::NotCocomplete {
                    witness: phi.label(p.base.q(), p.base.objs()),
                })
            }
        }
    }
    for (x, &yx) in p.yoneda_map().iter().enumerate() {
        if !b.is_iso(out[yx], map[x]) {
            return Err(QError::InternalInconsistency(format!(
                "⟨F,Y⟩∘Y ≇ F at {}",
                p.base.label(x)
            )));
        }
    }
    Ok(out)
}

/// Outcome of a cocontinuity test: the first presheaf whose colimit is not preserved.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CocontinuityReport {
    pub cocontinuous: bool,
    pub witness: Option<usize>,
}

/// Whether `F(sup φ) ≅ colim(φ, F)` for every presheaf `φ` on the cocomplete source.
pub fn is_cocontinuous<B: Colimits + ?Sized>(
    src: &Cocomplete,
    map: &[usize],
    b: &B,
) -> CocontinuityReport {
    for (i, phi) in src.psh.presheaves.iter().enumerate() {
        let ok = match b.colim(phi, map) {
            Some(k) => b.is_iso(k, map[src.sups[i]]),
            None => false,
        };
        if !ok {
            return CocontinuityReport {
                cocontinuous: false,
                witness: Some(i),
            };
        }
    }
    CocontinuityReport {
        cocontinuous: true,
        witness: None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::*;

    fn sorted_sets(p: &PresheafCategory) -> Vec<String> {
        let mut v: Vec<String> = (0..p.len()).map(|i| p.obj_label(i)).collect();
        v.sort();
        v
    }

    #[test]
    fn two_chain_has_three_downsets() {
        let c = Arc::new(boolean_poset(&["bot", "top"], &[("bot", "top")]));
        let p = PresheafCategory::new(c.clone(), DEFAULT_CAP).unwrap();
        assert_eq!(sorted_sets(&p), vec!["{bot,top}", "{bot}", "{}"]);
        let y = p.yoneda_map();
        assert_eq!(p.obj_label(y[1]), "{bot,top}");
    }

    #[test]
    fn discrete_two_gives_all_subsets_forming_a_diamond() {
        let c = Arc::new(discrete(Arc::new(Quantaloid::boolean()), 2));
        let p = PresheafCategory::new(c, DEFAULT_CAP).unwrap();
        assert_eq!(p.len(), 4);
        let cat = p.category().unwrap();
        let o = cat.underlying_order();
        // exactly one bottom and one top, two incomparable middles
        let below_all = (0..4).filter(|&i| (0..4).all(|j| o.leq(i, j))).count();
        let above_all = (0..4).filter(|&i| (0..4).all(|j| o.leq(j, i))).count();
        assert_eq!((below_all, above_all), (1, 1));
        assert!(cat.is_skeletal());
    }

    #[test]
    fn free_one_object_over_chain3_has_three() {
        let q = Arc::new(Quantaloid::chain_min(3));
        let c = Arc::new(discrete(q, 1));
        assert_eq!(enumerate_presheaves(&c, DEFAULT_CAP).unwrap().len(), 3);
    }

    #[test]
    fn cap_is_enforced() {
        let c = discrete(Arc::new(Quantaloid::boolean()), 4);
        let e = enumerate_presheaves(&c, 15).unwrap_err();
        assert!(matches!(e, QError::EnumerationCapExceeded { cap: 15, .. }));
        assert_eq!(enumerate_presheaves(&c, 16).unwrap().len(), 16);
    }

    #[test]
    fn sups_of_downsets() {
        let c2 = boolean_poset(&["bot", "top"], &[("bot", "top")]);
        assert_eq!(sup(&c2, &Presheaf::bottom(&c2, 0)), Some(0));
        let d = diamond();
        let phi = Presheaf {
            ty: 0,
            at: vec![1, 1, 1, 0],
        };
        assert!(phi.is_presheaf_on(&d));
        assert_eq!(sup(&d, &phi), Some(3));
        let anti = boolean_poset(&["x", "y"], &[]);
        assert_eq!(sup(&anti, &Presheaf::bottom(&anti, 0)), None);
        let r = is_cocomplete(&anti, DEFAULT_CAP).unwrap();
        assert!(!r.cocomplete);
        assert_eq!(r.witness, Some(Presheaf::bottom(&anti, 0)));
    }

    #[test]
    fn yoneda_lemma_and_sup_after_yoneda() {
        for a in [diamond(), m3(), chain_category(3)] {
            let a = Arc::new(a);
            let cc = Cocomplete::new(a.clone(), DEFAULT_CAP).unwrap();
            let y = cc.psh.yoneda_map();
            for (i, phi) in cc.psh.presheaves.iter().enumerate() {
                for x in 0..a.n() {
                    assert_eq!(cc.psh.hom(y[x], i), phi.at[x]);
                }
            }
            for x in 0..a.n() {
                assert!(a.iso(cc.sups[y[x]], x));
            }
        }
    }

    #[test]
    fn presheaf_category_is_cocomplete_with_pointwise_joins() {
        let a = Arc::new(chain_category(2));
        let p = PresheafCategory::new(a, DEFAULT_CAP).unwrap();
        let pa = p.category().unwrap();
        let cc = Cocomplete::new(pa.clone(), DEFAULT_CAP).unwrap();
        let id: Vec<usize> = (0..pa.n()).collect();
        for (i, xi) in cc.psh.presheaves.iter().enumerate() {
            let pointwise = p.colim(xi, &id).unwrap();
            assert!(pa.iso(pointwise, cc.sups[i]));
        }
    }

    #[test]
    fn weighted_colimits() {
        let a = Arc::new(diamond());
        let id = QFunctor::identity(&a);
        // single column weight = a presheaf
        let objs = a.objs().clone();
        let one = TypedSet::from_items([("d".to_string(), 0)]).unwrap();
        let w = QMatrix::from_fn(objs.clone(), one, |x, _| [1, 1, 1, 0][x]);
        assert_eq!(weighted_colimit(&w, &id).unwrap(), Some(vec![3]));
        // weight = hom: identity up to iso
        let k = weighted_colimit(a.hom_matrix(), &id).unwrap().unwrap();
        assert!(k.iter().enumerate().all(|(x, &kx)| a.iso(x, kx)));
        // non-presheaf weight
        let bad = QMatrix::from_fn(
            objs,
            TypedSet::from_items([("d".to_string(), 0)]).unwrap(),
            |x, _| (x == 3) as Elem,
        );
        assert!(matches!(
            weighted_colimit(&bad, &id),
            Err(QError::WeightNotPresheaf(_))
        ));
    }

    #[test]
    fn colim_row_agrees_with_sup_of_pushforward() {
        let a = Arc::new(diamond());
        let c2 = Arc::new(boolean_poset(&["bot", "top"], &[("bot", "top")]));
        let map = vec![0, 3];
        for phi in enumerate_presheaves(&c2, DEFAULT_CAP).unwrap() {
            let k1 = a.colim(&phi, &map);
            let k2 = sup(&a, &pushforward(&a, &map, &phi));
            assert_eq!(k1, k2);
        }
    }

    #[test]
    fn kan_extension_of_yoneda_is_identity() {
        let a = Arc::new(chain_category(2));
        let p = PresheafCategory::new(a.clone(), DEFAULT_CAP).unwrap();
        let k = kan_extend(&p, &p.yoneda_map(), &p).unwrap();
        assert!(k.iter().enumerate().all(|(i, &j)| p.is_iso(i, j)));
        // F = 1_A on a cocomplete A is sup
        let cc = Cocomplete::new(a.clone(), DEFAULT_CAP).unwrap();
        let id: Vec<usize> = (0..a.n()).collect();
        let k = kan_extend(&cc.psh, &id, a.as_ref()).unwrap();
        assert_eq!(k, cc.sups);
        // embedding of the 2-chain into the diamond sends each downset to the join of its image
        let d = diamond();
        let k = kan_extend(&cc.psh, &[0, 3], &d).unwrap();
        for (i, phi) in cc.psh.presheaves.iter().enumerate() {
            let expected = if phi.at[1] == 1 { 3 } else { 0 };
            assert_eq!(k[i], expected);
        }
    }

    #[test]
    fn cocontinuity_examples() {
        let a = Arc::new(chain_category(2));
        let cc = Cocomplete::new(a.clone(), DEFAULT_CAP).unwrap();
        let id: Vec<usize> = (0..a.n()).collect();
        assert!(is_cocontinuous(&cc, &id, a.as_ref()).cocontinuous);
        // Yoneda is not cocontinuous: Y(sup ∅) = Y(bot) ≠ ∅
        let r = is_cocontinuous(&cc, &cc.psh.yoneda_map(), cc.psh.as_ref());
        assert!(!r.cocontinuous);
        let w = &cc.psh.presheaves[r.witness.unwrap()];
        assert_eq!(w.at, vec![0, 0]);
        // sup: P(A) → A is cocontinuous
        let pa = cc.psh.category().unwrap();
        let ccp = Cocomplete::new(pa, DEFAULT_CAP).unwrap();
        assert!(is_cocontinuous(&ccp, &cc.sups, a.as_ref()).cocontinuous);
    }
}
