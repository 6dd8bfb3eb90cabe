//! The totally-below relation and everything built from it: total
//! continuity, complete distributivity, projectivity, liftings in the category
//! of cocomplete categories, and the splitting of `Θ` into regular presheaves.

use std::sync::Arc;

use crate::equivalence::find_equivalence;
use crate::error::{QError, Result};
use crate::lattice::Elem;
use crate::presheaf::{
    enumerate_families, is_cocontinuous, presheaf_hom, sup, Cocomplete, Presheaf,
};
use crate::qcategory::{QCategory, QFunctor};
use crate::qmatrix::{is_idempotent, mat_compose, QMatrix, TypedSet};
use crate::quantaloid::{Quantaloid, Side};

/// `Θ` together with its columns `T(a) = Θ(−, a)`.
#[derive(Debug, Clone)]
pub struct TotallyBelow {
    pub theta: QMatrix,
    pub t_columns: Vec<Presheaf>,
}

impl TotallyBelow {
    #[inline]
    pub fn get(&self, x: usize, a: usize) -> Elem {
        self.theta.get(x, a)
    }

    fn from_matrix(a: &QCategory, theta: QMatrix) -> Result<Self> {
        let t_columns: Vec<Presheaf> = (0..a.n())
            .map(|c| Presheaf {
                ty: a.ty(c),
                at: (0..a.n()).map(|x| theta.get(x, c)).collect(),
            })
            .collect();
        let q = a.q();
        if let Some((x, y)) = theta.leq_witness(q, a.hom_matrix()) {
            return Err(QError::InternalInconsistency(format!(
                "Θ({},{}) ≰ hom",
                a.label(x),
                a.label(y)
            )));
        }
        let sq = mat_compose(q, &theta, &theta)?;
        if let Some((x, y)) = sq.leq_witness(q, &theta) {
            return Err(QError::InternalInconsistency(format!(
                "(Θ⊗Θ)({},{}) ≰ Θ",
                a.label(x),
                a.label(y)
            )));
        }
        if let Some(c) = t_columns.iter().position(|t| !t.is_presheaf_on(a)) {
            return Err(QError::InternalInconsistency(format!(
                "T({}) is not a presheaf",
                a.label(c)
            )));
        }
        Ok(TotallyBelow { theta, t_columns })
    }
}

/// `Θ(x,a) = ⋀_{φ ∈ P(A)} lift(hom(a, sup φ), φ(x))`.
pub fn totally_below(a: &Cocomplete) -> Result<TotallyBelow> {
    let cat = &a.cat;
    let q = cat.q();
    let n = cat.n();
    let mut theta: Vec<Elem> = (0..n * n)
        .map(|k| q.top(cat.ty(k / n), cat.ty(k % n)))
        .collect();
    for (i, phi) in a.psh.presheaves.iter().enumerate() {
        let s = a.sups[i];
        let w = phi.ty;
        for c in 0..n {
            let (tc, k) = (cat.ty(c), cat.hom(c, s));
            for x in 0..n {
                let tx = cat.ty(x);
                let v = q.lift(tx, tc, w, k, phi.at[x]);
                let slot = &mut theta[x * n + c];
                *slot = q.hom(tx, tc).meet(*slot, v);
            }
        }
    }
    let m = QMatrix::from_entries(cat.objs().clone(), cat.objs().clone(), theta)?;
    TotallyBelow::from_matrix(cat, m)
}

/// The same meet restricted to the cofinal family `φ_{x,v}(y) = ext(hom(x,y), v)`,
/// the largest presheaf with `φ(x) ≤ v`. Needs suprema only, no enumeration.
pub fn totally_below_cofinal(a: &QCategory) -> Result<QMatrix> {
    let q = a.q();
    let n = a.n();
    let mut theta: Vec<Elem> = (0..n * n)
        .map(|k| q.top(a.ty(k / n), a.ty(k % n)))
        .collect();
    for x in 0..n {
        let tx = a.ty(x);
        for w in 0..q.n_obj() {
            for v in q.hom(tx, w).elements() {
                let phi = Presheaf {
                    ty: w,
                    at: (0..n)
                        .map(|y| q.ext(tx, a.ty(y), w, a.hom(x, y), v))
                        .collect(),
                };
                let s = sup(a, &phi).ok_or_else(|| QError::NotCocomplete {
                    witness: phi.label(q, a.objs()),
                })?;
                for c in 0..n {
                    let tc = a.ty(c);
                    let t = q.lift(tx, tc, w, a.hom(c, s), phi.at[x]);
                    let slot = &mut theta[x * n + c];
                    *slot = q.hom(tx, tc).meet(*slot, t);
                }
            }
        }
    }
    QMatrix::from_entries(a.objs().clone(), a.objs().clone(), theta)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DomainFlags {
    pub totally_continuous: bool,
    pub completely_distributive: bool,
    pub projective: bool,
    /// `T` is a cocontinuous section of `sup`.
    pub section_cross_check: bool,
    /// A maximal object `a` with `sup(T a) ≇ a` (the first such in object order).
    pub witness: Option<usize>,
    /// Index of `T(a)` among the enumerated presheaves.
    pub t_map: Vec<usize>,
}

/// Total continuity, complete distributivity and projectivity; all three must agree.
pub fn classify_domain(a: &Cocomplete, tb: &TotallyBelow) -> Result<DomainFlags> {
    let cat = &a.cat;
    let t_map: Vec<usize> = tb
        .t_columns
        .iter()
        .map(|t| {
            a.psh
                .index_of(t)
                .ok_or_else(|| QError::InternalInconsistency("T(a) missing from P(A)".into()))
        })
        .collect::<Result<_>>()?;
    let failing: Vec<usize> = (0..cat.n())
        .filter(|&x| !cat.iso(a.sups[t_map[x]], x))
        .collect();
    let witness = failing
        .iter()
        .copied()
        .find(|&x| failing.iter().all(|&y| !cat.leq(x, y) || cat.leq(y, x)));
    let totally_continuous = witness.is_none();
    let completely_distributive = (0..cat.n())
        .all(|x| (0..a.psh.len()).all(|i| a.psh.hom(t_map[x], i) == cat.hom(x, a.sups[i])));
    let section_cross_check =
        totally_continuous && is_cocontinuous(a, &t_map, a.psh.as_ref()).cocontinuous;
    let projective = completely_distributive;
    if totally_continuous != completely_distributive || section_cross_check != projective {
        return Err(QError::InternalInconsistency(format!(
            "domain flags disagree: continuous={totally_continuous} distributive={completely_distributive} section={section_cross_check}"
        )));
    }
    Ok(DomainFlags {
        totally_continuous,
        completely_distributive,
        projective,
        section_cross_check,
        witness,
        t_map,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InterpolationReport {
    /// The instance is not totally continuous, so interpolation is not claimed.
    pub vacuous: bool,
    /// `Θ ≤ hom` and `Θ⊗Θ ≤ Θ`.
    pub lower_laws: bool,
    /// `Θ ≤ Θ⊗Θ`; `None` when vacuous.
    pub interpolation: Option<bool>,
    /// First `(x, a)` violating the applicable law.
    pub counterexample: Option<(usize, usize)>,
}

pub fn interpolation_check(
    a: &QCategory,
    tb: &TotallyBelow,
    flags: &DomainFlags,
) -> InterpolationReport {
    let q = a.q();
    let sq = mat_compose(q, &tb.theta, &tb.theta).expect("square");
    let below_hom = tb.theta.leq_witness(q, a.hom_matrix());
    let sub = sq.leq_witness(q, &tb.theta);
    let lower_laws = below_hom.is_none() && sub.is_none();
    let mut counterexample = below_hom.or(sub);
    if !flags.totally_continuous {
        return InterpolationReport {
            vacuous: true,
            lower_laws,
            interpolation: None,
            counterexample,
        };
    }
    let sup_w = tb.theta.leq_witness(q, &sq);
    counterexample = counterexample.or(sup_w);
    InterpolationReport {
        vacuous: false,
        lower_laws,
        interpolation: Some(sup_w.is_none()),
        counterexample,
    }
}

/// Result of a brute-force residual search in the category of cocomplete
/// categories and cocontinuous functors.
#[derive(Debug, Clone)]
pub struct ResidualResult {
    pub functor: QFunctor,
    /// `right_adjoint(G)∘F`, when `G` has a right adjoint (lift side only).
    pub seed: Option<QFunctor>,
    pub seed_is_result: Option<bool>,
    /// Number of cocontinuous functors satisfying the inequality.
    pub solutions: usize,
}

/// Largest cocontinuous `H` with
/// * `Lift`: `G∘H ≤ F` for `F: A→B`, `G: C→B` (so `H: A→C`);
/// * `Ext`: `H∘G ≤ F` for `G: C→A`, `F: C→B` (so `H: A→B`).
///
/// `src` must be the cocomplete structure of `A`. Returns `None` only if no
/// cocontinuous functor satisfies the inequality.
pub fn cocont_residual(
    side: Side,
    f: &QFunctor,
    g: &QFunctor,
    src: &Cocomplete,
    node_cap: usize,
) -> Result<Option<ResidualResult>> {
    let a = &src.cat;
    let target: Arc<QCategory> = match side {
        Side::Lift => {
            if f.src.as_ref() != a.as_ref() || f.dst.as_ref() != g.dst.as_ref() {
                return Err(QError::TypeMismatch("lift needs F: A→B and G: C→B".into()));
            }
            g.src.clone()
        }
        Side::Ext => {
            if g.dst.as_ref() != a.as_ref() || f.src.as_ref() != g.src.as_ref() {
                return Err(QError::TypeMismatch("ext needs G: C→A and F: C→B".into()));
            }
            f.dst.clone()
        }
    };
    let n = a.n();
    let cands: Vec<Vec<usize>> = (0..n)
        .map(|x| {
            (0..target.n())
                .filter(|&t| target.ty(t) == a.ty(x))
                .filter(|&t| match side {
                    Side::Lift => f.dst.leq(g.map[t], f.map[x]),
                    Side::Ext => (0..g.src.n())
                        .filter(|&c| g.map[c] == x)
                        .all(|c| f.dst.leq(t, f.map[c])),
                })
                .collect()
        })
        .collect();
    let mut solutions: Vec<Vec<usize>> = Vec::new();
    let mut cur = vec![0usize; n];
    let mut nodes = 0usize;
    #[allow(clippy::too_many_arguments)]
    fn rec(
        a: &QCategory,
        t: &QCategory,
        src: &Cocomplete,
        cands: &[Vec<usize>],
        k: usize,
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
        nodes: &mut usize,
        cap: usize,
    ) -> bool {
        *nodes += 1;
        if *nodes > cap {
            return false;
        }
        if k == cands.len() {
            if is_cocontinuous(src, cur, t).cocontinuous {
                out.push(cur.clone());
            }
            return true;
        }
        let q = a.q();
        for &c in &cands[k] {
            let ok = (0..k).all(|j| {
                q.hom(a.ty(j), a.ty(k)).leq(a.hom(j, k), t.hom(cur[j], c))
                    && q.hom(a.ty(k), a.ty(j)).leq(a.hom(k, j), t.hom(c, cur[j]))
            }) && q.hom(a.ty(k), a.ty(k)).leq(a.hom(k, k), t.hom(c, c));
            if ok {
                cur[k] = c;
                if !rec(a, t, src, cands, k + 1, cur, out, nodes, cap) {
                    return false;
                }
            }
        }
        true
    }
    if !rec(
        a,
        &target,
        src,
        &cands,
        0,
        &mut cur,
        &mut solutions,
        &mut nodes,
        node_cap,
    ) {
        return Err(QError::EnumerationCapExceeded {
            cap: node_cap,
            what: "candidate functors in a residual search".into(),
        });
    }
    if solutions.is_empty() {
        return Ok(None);
    }
    let le = |s: &[usize], t: &[usize]| s.iter().zip(t).all(|(&x, &y)| target.leq(x, y));
    let best = solutions
        .iter()
        .find(|s| solutions.iter().all(|o| le(o, s)))
        .cloned()
        .ok_or_else(|| {
            QError::InternalInconsistency("cocontinuous solutions have no largest element".into())
        })?;
    let functor = QFunctor::new(a.clone(), target.clone(), best)?;
    let seed = match side {
        Side::Lift => crate::qcategory::right_adjoint_functor(g).and_then(|r| r.after(f).ok()),
        Side::Ext => None,
    };
    let seed_is_result = seed.as_ref().map(|s| s.is_iso_to(&functor));
    Ok(Some(ResidualResult {
        functor,
        seed,
        seed_is_result,
        solutions: solutions.len(),
    }))
}

/// An object set with an idempotent hom matrix (no identities required).
#[derive(Debug, Clone)]
pub struct RegularSemicategory {
    q: Arc<Quantaloid>,
    hom: QMatrix,
}

impl RegularSemicategory {
    pub fn new(q: Arc<Quantaloid>, hom: QMatrix) -> Result<Self> {
        hom.check_entries(&q)?;
        if !is_idempotent(&q, &hom)? {
            return Err(QError::NotIdempotent("hom⊗hom ≠ hom".into()));
        }
        Ok(RegularSemicategory { q, hom })
    }

    pub fn q(&self) -> &Arc<Quantaloid> {
        &self.q
    }

    pub fn objs(&self) -> &TypedSet {
        self.hom.dom()
    }

    pub fn hom(&self) -> &QMatrix {
        &self.hom
    }

    pub fn n(&self) -> usize {
        self.hom.dom().len()
    }

    /// `⋁_{b'} at(b')∘hom(b,b') = at(b)` for all `b`.
    pub fn is_regular(&self, p: &Presheaf) -> bool {
        let q = &self.q;
        let t = self.objs().types();
        (0..self.n()).all(|b| {
            let v = q.hom(t[b], p.ty).join_all(
                (0..self.n()).map(|b2| q.comp(t[b], t[b2], p.ty, p.at[b2], self.hom.get(b, b2))),
            );
            v == p.at[b]
        })
    }
}

/// All regular presheaves on `b`.
pub fn regular_presheaves(b: &RegularSemicategory, cap: usize) -> Result<Vec<Presheaf>> {
    let all = enumerate_families(
        b.q(),
        b.objs().types(),
        b.hom().entries(),
        cap,
        "presheaves on a regular semicategory",
    )?;
    Ok(all.into_iter().filter(|p| b.is_regular(p)).collect())
}

/// `R(B)`: the category of regular presheaves.
#[derive(Clone)]
pub struct RegularPresheafCategory {
    pub presheaves: Vec<Presheaf>,
    pub cat: Arc<QCategory>,
}

impl RegularPresheafCategory {
    pub fn index_of(&self, p: &Presheaf) -> Option<usize> {
        self.presheaves.iter().position(|x| x == p)
    }
}

/// Builds `R(B)` and verifies that it is a cocomplete, totally continuous category.
pub fn regular_presheaf_category(
    b: &RegularSemicategory,
    cap: usize,
) -> Result<RegularPresheafCategory> {
    let r = regular_presheaf_category_unchecked(b, cap)?;
    let v = r.cat.validate();
    if !v.is_ok() {
        return Err(QError::InternalInconsistency(format!(
            "R(B) is not a category: {v}"
        )));
    }
    let cc = Cocomplete::new(r.cat.clone(), cap).map_err(|e| match e {
        QError::NotCocomplete { witness } => {
            QError::InternalInconsistency(format!("R(B) is not cocomplete at {witness}"))
        }
        other => other,
    })?;
    let tb = totally_below(&cc)?;
    let flags = classify_domain(&cc, &tb)?;
    if !flags.totally_continuous {
        return Err(QError::InternalInconsistency(
            "R(B) is not totally continuous".into(),
        ));
    }
    Ok(r)
}

fn regular_presheaf_category_unchecked(
    b: &RegularSemicategory,
    cap: usize,
) -> Result<RegularPresheafCategory> {
    let presheaves = regular_presheaves(b, cap)?;
    let q = b.q();
    let types = b.objs().types();
    let objs = TypedSet::from_items(presheaves.iter().map(|p| (p.label(q, b.objs()), p.ty)))?;
    let cat = QCategory::from_fn(q.clone(), objs, |i, j| {
        presheaf_hom(q, types, &presheaves[i], &presheaves[j])
    })?;
    Ok(RegularPresheafCategory {
        presheaves,
        cat: Arc::new(cat),
    })
}

/// `A ≃ R(A₀, Θ)` with the explicit functors `a ↦ T(a)` and `φ ↦ sup φ`.
pub struct ContinuousRepresentation {
    pub semi: RegularSemicategory,
    pub rb: RegularPresheafCategory,
    pub f: QFunctor,
    pub g: QFunctor,
}

pub fn totally_continuous_representation(
    a: &Cocomplete,
    tb: &TotallyBelow,
    flags: &DomainFlags,
    cap: usize,
) -> Result<ContinuousRepresentation> {
    let cat = &a.cat;
    if let Some(w) = flags.witness {
        return Err(QError::NotTotallyContinuous(cat.label(w).to_string()));
    }
    let semi = RegularSemicategory::new(cat.q().clone(), tb.theta.clone())?;
    let rb = regular_presheaf_category(&semi, cap)?;
    let fmap = tb
        .t_columns
        .iter()
        .map(|t| {
            rb.index_of(t)
                .ok_or_else(|| QError::InternalInconsistency("T(a) is not regular".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    let gmap = rb
        .presheaves
        .iter()
        .map(|p| {
            sup(cat, p).ok_or_else(|| {
                QError::InternalInconsistency("regular presheaf without supremum".into())
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let f = QFunctor::new(cat.clone(), rb.cat.clone(), fmap)?;
    let g = QFunctor::new(rb.cat.clone(), cat.clone(), gmap)?;
    let mut problems = Vec::new();
    if !f.validate().is_ok() || !g.validate().is_ok() {
        problems.push("functoriality");
    }
    if !g.after(&f)?.is_identity_up_to_iso() {
        problems.push("G∘F ≇ 1");
    }
    if !f.after(&g)?.is_identity_up_to_iso() {
        problems.push("F∘G ≇ 1");
    }
    if !is_cocontinuous(a, &f.map, rb.cat.as_ref()).cocontinuous {
        problems.push("F not cocontinuous");
    }
    let rcc = Cocomplete::new(rb.cat.clone(), cap)?;
    if !is_cocontinuous(&rcc, &g.map, cat.as_ref()).cocontinuous {
        problems.push("G not cocontinuous");
    }
    if !problems.is_empty() {
        return Err(QError::InternalInconsistency(format!(
            "representation A ≃ R(A₀,Θ) failed: {}",
            problems.join(", ")
        )));
    }
    Ok(ContinuousRepresentation { semi, rb, f, g })
}

/// Independent test of `A ≃ R(A₀, Θ)`: requires `Θ` idempotent and an
/// equivalence found by search (no use of the continuity flags).
pub fn equivalent_to_regular_splitting(
    a: &Arc<QCategory>,
    tb: &TotallyBelow,
    cap: usize,
) -> Result<bool> {
    let semi = match RegularSemicategory::new(a.q().clone(), tb.theta.clone()) {
        Ok(s) => s,
        Err(QError::NotIdempotent(_)) => return Ok(false),
        Err(e) => return Err(e),
    };
    let rb = regular_presheaf_category_unchecked(&semi, cap)?;
    Ok(find_equivalence(a, &rb.cat).is_some_and(|e| e.verify()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::*;
    use crate::presheaf::{PresheafCategory, DEFAULT_CAP};

    fn cc(c: QCategory) -> Cocomplete {
        Cocomplete::new(Arc::new(c), DEFAULT_CAP).unwrap()
    }

    /// Q = 2 oracle: x ≪ a iff every downset whose join dominates a contains x.
    fn downset_oracle(c: &Cocomplete) -> Vec<Vec<bool>> {
        let n = c.n();
        let mut out = vec![vec![true; n]; n];
        for (i, d) in c.psh.presheaves.iter().enumerate() {
            let j = c.sups[i];
            for a in 0..n {
                if c.cat.leq(a, j) {
                    for x in 0..n {
                        if d.at[x] == 0 {
                            out[x][a] = false;
                        }
                    }
                }
            }
        }
        out
    }

    fn theta_bool(c: &Cocomplete, tb: &TotallyBelow) -> Vec<Vec<bool>> {
        (0..c.n())
            .map(|x| (0..c.n()).map(|a| tb.get(x, a) == 1).collect())
            .collect()
    }

    #[test]
    fn two_chain_theta() {
        let c = cc(chain_category(2));
        let tb = totally_below(&c).unwrap();
        assert_eq!(tb.theta.entries(), &[0, 1, 0, 1]);
        assert_eq!(theta_bool(&c, &tb), downset_oracle(&c));
    }

    #[test]
    fn diamond_and_m3_theta_at_top() {
        let d = cc(diamond());
        let tb = totally_below(&d).unwrap();
        assert_eq!(
            (0..4).map(|x| tb.get(x, 3)).collect::<Vec<_>>(),
            vec![1, 1, 1, 0]
        );
        let m = cc(m3());
        let tb = totally_below(&m).unwrap();
        assert_eq!(
            (0..5).map(|x| tb.get(x, 4)).collect::<Vec<_>>(),
            vec![1, 0, 0, 0, 0]
        );
        assert_eq!(theta_bool(&m, &tb), downset_oracle(&m));
    }

    #[test]
    fn theta_of_diamond_is_idempotent() {
        let d = cc(diamond());
        let tb = totally_below(&d).unwrap();
        assert!(is_idempotent(d.q(), &tb.theta).unwrap());
    }

    #[test]
    fn cofinal_route_agrees() {
        for c in [diamond(), m3(), n5(), chain_category(3)] {
            let c = cc(c);
            let tb = totally_below(&c).unwrap();
            assert_eq!(totally_below_cofinal(&c.cat).unwrap(), tb.theta);
        }
    }

    #[test]
    fn classification_examples() {
        let d = cc(diamond());
        let tb = totally_below(&d).unwrap();
        let f = classify_domain(&d, &tb).unwrap();
        assert!(
            f.totally_continuous
                && f.completely_distributive
                && f.projective
                && f.section_cross_check
        );
        let m = cc(m3());
        let tb = totally_below(&m).unwrap();
        let f = classify_domain(&m, &tb).unwrap();
        assert!(!f.totally_continuous && !f.completely_distributive && !f.projective);
        // atoms and top all have T = {bot}; the reported witness is the maximal one
        assert_eq!(f.witness, Some(4));
        assert_eq!(m.sups[f.t_map[1]], 0);
        assert_eq!(m.sups[f.t_map[4]], 0);
    }

    #[test]
    fn free_objects_are_distributive() {
        let c = Arc::new(discrete(Arc::new(Quantaloid::chain_min(3)), 2));
        let p = PresheafCategory::new(c, DEFAULT_CAP).unwrap();
        let pc = Cocomplete::new(p.category().unwrap(), DEFAULT_CAP).unwrap();
        let tb = totally_below(&pc).unwrap();
        assert!(classify_domain(&pc, &tb).unwrap().projective);
    }

    #[test]
    fn interpolation_examples() {
        for (c, vacuous) in [(diamond(), false), (chain_category(2), false), (m3(), true)] {
            let c = cc(c);
            let tb = totally_below(&c).unwrap();
            let f = classify_domain(&c, &tb).unwrap();
            let r = interpolation_check(&c.cat, &tb, &f);
            assert_eq!(r.vacuous, vacuous);
            assert!(r.lower_laws);
            if !vacuous {
                assert_eq!(r.interpolation, Some(true));
            }
        }
    }

    #[test]
    fn regular_presheaves_of_theta() {
        for (c, n) in [(diamond(), 4), (chain_category(2), 2)] {
            let c = cc(c);
            let tb = totally_below(&c).unwrap();
            let semi = RegularSemicategory::new(c.cat.q().clone(), tb.theta.clone()).unwrap();
            let rb = regular_presheaf_category(&semi, DEFAULT_CAP).unwrap();
            assert_eq!(rb.cat.n(), n);
            assert!(find_equivalence(&c.cat, &rb.cat).is_some());
            let flags = classify_domain(&c, &tb).unwrap();
            let rep = totally_continuous_representation(&c, &tb, &flags, DEFAULT_CAP).unwrap();
            assert_eq!(rep.f.map.len(), c.n());
        }
    }

    #[test]
    fn regular_presheaves_of_a_category_are_all_presheaves() {
        let c = chain_category(3);
        let semi = RegularSemicategory::new(c.q().clone(), c.hom_matrix().clone()).unwrap();
        let r = regular_presheaves(&semi, DEFAULT_CAP).unwrap();
        assert_eq!(
            r,
            crate::presheaf::enumerate_presheaves(&c, DEFAULT_CAP).unwrap()
        );
    }

    #[test]
    fn empty_semicategory_has_one_presheaf_per_type() {
        let q = Arc::new(Quantaloid::chain_min(3));
        let e = TypedSet::new();
        let semi =
            RegularSemicategory::new(q, QMatrix::from_entries(e.clone(), e, vec![]).unwrap())
                .unwrap();
        assert_eq!(regular_presheaves(&semi, DEFAULT_CAP).unwrap().len(), 1);
    }

    #[test]
    fn non_idempotent_rejected() {
        let q = Arc::new(Quantaloid::boolean());
        let c = chain_category(3);
        let strict = QMatrix::from_fn(c.objs().clone(), c.objs().clone(), |a, b| (a < b) as Elem);
        assert!(matches!(
            RegularSemicategory::new(q, strict),
            Err(QError::NotIdempotent(_))
        ));
    }

    #[test]
    fn m3_has_no_continuous_representation() {
        let m = cc(m3());
        let tb = totally_below(&m).unwrap();
        let f = classify_domain(&m, &tb).unwrap();
        assert!(matches!(
            totally_continuous_representation(&m, &tb, &f, DEFAULT_CAP),
            Err(QError::NotTotallyContinuous(w)) if w == "top"
        ));
        assert!(!equivalent_to_regular_splitting(&m.cat, &tb, DEFAULT_CAP).unwrap());
    }

    fn sup_functor(c: &Cocomplete) -> (Arc<QCategory>, QFunctor) {
        let pa = c.psh.category().unwrap();
        let s = QFunctor::new(pa.clone(), c.cat.clone(), c.sups.clone()).unwrap();
        (pa, s)
    }

    #[test]
    fn lifting_reproduces_t_on_diamond() {
        let d = cc(diamond());
        let tb = totally_below(&d).unwrap();
        let flags = classify_domain(&d, &tb).unwrap();
        let (_, s) = sup_functor(&d);
        let id = QFunctor::identity(&d.cat);
        let r = cocont_residual(Side::Lift, &id, &s, &d, 1_000_000)
            .unwrap()
            .unwrap();
        assert_eq!(r.functor.map, flags.t_map);
        assert_eq!(r.seed_is_result, Some(false));
        assert!(s.after(&r.functor).unwrap().is_identity_up_to_iso());
        // extension shape {sup, 1_{P A}}
        let pid = QFunctor::identity(&s.src);
        let e = cocont_residual(Side::Ext, &pid, &s, &d, 1_000_000)
            .unwrap()
            .unwrap();
        assert_eq!(e.functor.map, flags.t_map);
    }

    #[test]
    fn lifting_fails_identity_on_m3() {
        let m = cc(m3());
        let (_, s) = sup_functor(&m);
        let id = QFunctor::identity(&m.cat);
        let r = cocont_residual(Side::Lift, &id, &s, &m, 10_000_000)
            .unwrap()
            .unwrap();
        assert!(!s.after(&r.functor).unwrap().is_identity_up_to_iso());
    }

    #[test]
    fn lifting_through_identity_is_f() {
        let c = cc(chain_category(2));
        let (pa, s) = sup_functor(&c);
        let pc = Cocomplete::new(pa.clone(), DEFAULT_CAP).unwrap();
        let id = QFunctor::identity(&c.cat);
        let r = cocont_residual(Side::Lift, &s, &id, &pc, 1_000_000)
            .unwrap()
            .unwrap();
        assert!(r.functor.is_iso_to(&s));
        assert_eq!(r.seed_is_result, Some(true));
    }
}
