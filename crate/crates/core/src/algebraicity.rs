//! Totally compact objects, total algebraicity and `A ≃ P(A_c)`; Cauchy
//! presheaves, the Cauchy completion, and `Θ` on presheaf categories.

use std::sync::Arc;

use crate::continuity::{totally_below, DomainFlags, TotallyBelow};
use crate::error::{QError, Result};
use crate::lattice::Elem;
use crate::presheaf::{is_cocontinuous, pushforward, sup, Cocomplete, Presheaf, PresheafCategory};
use crate::qcategory::{QCategory, QFunctor};
use crate::qmatrix::QMatrix;

/// `A_c`, `Σ` and the columns `S(a) = Σ(−, a)`.
#[derive(Debug, Clone)]
pub struct CompactData {
    pub compacts: Vec<usize>,
    pub sigma: QMatrix,
    pub s_columns: Vec<Presheaf>,
}

impl CompactData {
    pub fn is_compact(&self, a: usize) -> bool {
        self.compacts.binary_search(&a).is_ok()
    }
}

/// Compacts are the objects with `1 ≤ Θ(a,a)`; `Σ(x,a) = ⋁_c hom(c,a)∘hom(x,c)`.
pub fn totally_compact(a: &QCategory, tb: &TotallyBelow) -> Result<CompactData> {
    let q = a.q();
    let n = a.n();
    let compacts: Vec<usize> = (0..n)
        .filter(|&x| q.hom(a.ty(x), a.ty(x)).leq(q.id(a.ty(x)), tb.get(x, x)))
        .collect();
    let sigma = QMatrix::from_fn(a.objs().clone(), a.objs().clone(), |x, y| {
        let (tx, ty) = (a.ty(x), a.ty(y));
        q.hom(tx, ty).join_all(
            compacts
                .iter()
                .map(|&c| q.comp(tx, a.ty(c), ty, a.hom(c, y), a.hom(x, c))),
        )
    });
    if let Some((x, y)) = sigma.leq_witness(q, &tb.theta) {
        return Err(QError::InternalInconsistency(format!(
            "Σ({},{}) ≰ Θ",
            a.label(x),
            a.label(y)
        )));
    }
    for x in 0..n {
        let t_is_y = (0..n).all(|z| tb.get(z, x) == a.hom(z, x));
        if t_is_y != compacts.contains(&x) {
            return Err(QError::InternalInconsistency(format!(
                "T({0}) = Y({0}) does not match compactness",
                a.label(x)
            )));
        }
    }
    let s_columns = (0..n)
        .map(|c| Presheaf {
            ty: a.ty(c),
            at: (0..n).map(|x| sigma.get(x, c)).collect(),
        })
        .collect();
    Ok(CompactData {
        compacts,
        sigma,
        s_columns,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraicityReport {
    pub totally_algebraic: bool,
    /// First object with `sup(S a) ≇ a`.
    pub witness: Option<usize>,
    pub sigma_equals_theta: bool,
    /// First entry where `Σ < Θ`.
    pub sigma_theta_witness: Option<(usize, usize)>,
}

/// `A` is totally algebraic iff `sup(S a) ≅ a` for all `a`; cross-checked
/// against "totally continuous and `Σ = Θ`".
pub fn is_totally_algebraic(
    a: &QCategory,
    tb: &TotallyBelow,
    cd: &CompactData,
    flags: &DomainFlags,
) -> Result<AlgebraicityReport> {
    let mut witness = None;
    for (x, s) in cd.s_columns.iter().enumerate() {
        let ok = sup(a, s).is_some_and(|v| a.iso(v, x));
        if !ok {
            witness = Some(x);
            break;
        }
    }
    let n = a.n();
    let sigma_theta_witness = (0..n * n)
        .map(|k| (k / n, k % n))
        .find(|&(x, y)| cd.sigma.get(x, y) != tb.get(x, y));
    let r = AlgebraicityReport {
        totally_algebraic: witness.is_none(),
        witness,
        sigma_equals_theta: sigma_theta_witness.is_none(),
        sigma_theta_witness,
    };
    if r.totally_algebraic && !r.sigma_equals_theta {
        return Err(QError::InternalInconsistency(
            "totally algebraic but Σ ≠ Θ".into(),
        ));
    }
    if r.totally_algebraic != (flags.totally_continuous && r.sigma_equals_theta) {
        return Err(QError::InternalInconsistency(
            "algebraicity disagrees with continuity and Σ = Θ".into(),
        ));
    }
    Ok(r)
}

/// `A ≃ P(A_c)` with `F(a) = hom(i−, a)` and `G(φ) = sup_A(i_! φ)`.
pub struct AlgebraicRepresentation {
    pub ac: Arc<QCategory>,
    pub pac: Arc<PresheafCategory>,
    pub f: QFunctor,
    pub g: QFunctor,
}

pub fn algebraic_representation(
    a: &Cocomplete,
    cd: &CompactData,
    report: &AlgebraicityReport,
    cap: usize,
) -> Result<AlgebraicRepresentation> {
    let cat = &a.cat;
    if let Some(w) = report.witness {
        return Err(QError::NotTotallyAlgebraic(cat.label(w).to_string()));
    }
    let ac = Arc::new(cat.full_subcategory(&cd.compacts));
    let pac = Arc::new(PresheafCategory::new(ac.clone(), cap)?);
    let pcat = pac.category()?;
    let fmap = (0..cat.n())
        .map(|x| {
            let p = Presheaf {
                ty: cat.ty(x),
                at: cd.compacts.iter().map(|&c| cat.hom(c, x)).collect(),
            };
            pac.index_of(&p)
                .ok_or_else(|| QError::InternalInconsistency("hom(i−,a) is not a presheaf".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    let gmap = pac
        .presheaves
        .iter()
        .map(|p| {
            sup(cat, &pushforward(cat, &cd.compacts, p)).ok_or_else(|| QError::NotCocomplete {
                witness: p.label(cat.q(), ac.objs()),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let f = QFunctor::new(cat.clone(), pcat.clone(), fmap)?;
    let g = QFunctor::new(pcat.clone(), cat.clone(), gmap)?;
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
    if !is_cocontinuous(a, &f.map, pac.as_ref()).cocontinuous {
        problems.push("F not cocontinuous");
    }
    let pcc = Cocomplete::new(pcat, cap)?;
    if !is_cocontinuous(&pcc, &g.map, cat.as_ref()).cocontinuous {
        problems.push("G not cocontinuous");
    }
    if !problems.is_empty() {
        return Err(QError::InternalInconsistency(format!(
            "representation A ≃ P(A_c) failed: {}",
            problems.join(", ")
        )));
    }
    Ok(AlgebraicRepresentation { ac, pac, f, g })
}

/// A Cauchy presheaf with its largest companion `ψ(a) = hom_P(φ, Y a)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CauchyWitness {
    pub phi: usize,
    pub psi: Vec<Elem>,
}

/// `ψ(a')∘φ(a) ≤ hom(a,a')` for all `a, a'`.
pub fn cauchy_counit_holds(c: &QCategory, phi: &Presheaf, psi: &[Elem]) -> bool {
    let q = c.q();
    let w = phi.ty;
    (0..c.n()).all(|x| {
        (0..c.n()).all(|y| {
            let (tx, ty) = (c.ty(x), c.ty(y));
            q.hom(tx, ty)
                .leq(q.comp(tx, w, ty, psi[y], phi.at[x]), c.hom(x, y))
        })
    })
}

/// `1_W ≤ ⋁_a φ(a)∘ψ(a)`.
pub fn cauchy_unit_holds(c: &QCategory, phi: &Presheaf, psi: &[Elem]) -> bool {
    let q = c.q();
    let w = phi.ty;
    let s = q
        .hom(w, w)
        .join_all((0..c.n()).map(|x| q.comp(w, c.ty(x), w, phi.at[x], psi[x])));
    q.hom(w, w).leq(q.id(w), s)
}

/// The counit condition is downward closed and the unit upward closed, so
/// the largest candidate decides Cauchy-ness.
pub fn cauchy_witness(p: &PresheafCategory, i: usize) -> Option<CauchyWitness> {
    let c = &p.base;
    let phi = &p.presheaves[i];
    let q = c.q();
    let psi: Vec<Elem> = (0..c.n())
        .map(|y| {
            let ty = c.ty(y);
            q.hom(phi.ty, ty)
                .meet_all((0..c.n()).map(|x| q.ext(c.ty(x), phi.ty, ty, phi.at[x], c.hom(x, y))))
        })
        .collect();
    debug_assert!(cauchy_counit_holds(c, phi, &psi));
    cauchy_unit_holds(c, phi, &psi).then_some(CauchyWitness { phi: i, psi })
}

pub struct CauchyCompletion {
    /// Indices of the Cauchy presheaves in the enumeration.
    pub cauchy: Vec<usize>,
    pub witnesses: Vec<CauchyWitness>,
    pub cat: Arc<QCategory>,
    /// Yoneda, corestricted.
    pub inclusion: QFunctor,
}

pub fn cauchy_completion(p: &PresheafCategory) -> Result<CauchyCompletion> {
    let witnesses: Vec<CauchyWitness> = (0..p.len()).filter_map(|i| cauchy_witness(p, i)).collect();
    let cauchy: Vec<usize> = witnesses.iter().map(|w| w.phi).collect();
    let base = &p.base;
    let objs = crate::qmatrix::TypedSet::from_items(cauchy.iter().map(|&i| {
        (
            p.presheaves[i].label(base.q(), base.objs()),
            p.presheaves[i].ty,
        )
    }))?;
    let cat = Arc::new(QCategory::from_fn(base.q().clone(), objs, |x, y| {
        p.hom(cauchy[x], cauchy[y])
    })?);
    let imap = p
        .yoneda_map()
        .into_iter()
        .map(|y| {
            cauchy.iter().position(|&c| c == y).ok_or_else(|| {
                QError::InternalInconsistency("a representable is not Cauchy".into())
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let inclusion = QFunctor::new(base.clone(), cat.clone(), imap)?;
    Ok(CauchyCompletion {
        cauchy,
        witnesses,
        cat,
        inclusion,
    })
}

/// `P(C)` with its own cocomplete structure and `Θ`.
pub struct PresheafInstance {
    pub psh: Arc<PresheafCategory>,
    pub pc: Cocomplete,
    pub tb: TotallyBelow,
}

impl PresheafInstance {
    pub fn new(c: Arc<QCategory>, cap: usize) -> Result<Self> {
        let psh = Arc::new(PresheafCategory::new(c, cap)?);
        let pc = Cocomplete::new(psh.category()?, cap)?;
        let tb = totally_below(&pc)?;
        Ok(PresheafInstance { psh, pc, tb })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PresheafThetaReport {
    /// `Θ(ψ,φ) = ⋁_c φ(c)∘hom(ψ, Y c)` entrywise.
    pub formula_matches: bool,
    pub mismatch: Option<(usize, usize)>,
    /// Compacts of `P(C)` are exactly the Cauchy presheaves.
    pub compacts_are_cauchy: bool,
}

pub fn theta_of_presheaf_category(
    inst: &PresheafInstance,
    cd: &CompactData,
    cc: &CauchyCompletion,
) -> PresheafThetaReport {
    let p = &inst.psh;
    let c = &p.base;
    let q = c.q();
    let y = p.yoneda_map();
    let n = p.len();
    let mut mismatch = None;
    'outer: for s in 0..n {
        for f in 0..n {
            let (ws, wf) = (p.presheaves[s].ty, p.presheaves[f].ty);
            let phi = &p.presheaves[f];
            let v = q
                .hom(ws, wf)
                .join_all((0..c.n()).map(|x| q.comp(ws, c.ty(x), wf, phi.at[x], p.hom(s, y[x]))));
            if v != inst.tb.get(s, f) {
                mismatch = Some((s, f));
                break 'outer;
            }
        }
    }
    PresheafThetaReport {
        formula_matches: mismatch.is_none(),
        mismatch,
        compacts_are_cauchy: cd.compacts == cc.cauchy,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::continuity::classify_domain;
    use crate::equivalence::is_equivalent;
    use crate::fixtures::*;
    use crate::presheaf::DEFAULT_CAP;
    use crate::quantaloid::Quantaloid;

    fn analyse(c: QCategory) -> (Cocomplete, TotallyBelow, CompactData, AlgebraicityReport) {
        let a = Cocomplete::new(Arc::new(c), DEFAULT_CAP).unwrap();
        let tb = totally_below(&a).unwrap();
        let flags = classify_domain(&a, &tb).unwrap();
        let cd = totally_compact(&a.cat, &tb).unwrap();
        let r = is_totally_algebraic(&a.cat, &tb, &cd, &flags).unwrap();
        (a, tb, cd, r)
    }

    #[test]
    fn compacts_of_small_lattices() {
        assert_eq!(analyse(diamond()).2.compacts, vec![1, 2]);
        assert_eq!(analyse(chain_category(2)).2.compacts, vec![1]);
        assert_eq!(analyse(chain_category(3)).2.compacts, vec![1, 2]);
    }

    #[test]
    fn algebraic_examples() {
        let (a, _, cd, r) = analyse(diamond());
        assert!(r.totally_algebraic);
        let rep = algebraic_representation(&a, &cd, &r, DEFAULT_CAP).unwrap();
        let disc = Arc::new(QCategory::free(a.cat.q().clone(), rep.ac.objs().clone()));
        assert!(is_equivalent(&rep.ac, &disc));
        let (a, _, cd, r) = analyse(chain_category(3));
        let rep = algebraic_representation(&a, &cd, &r, DEFAULT_CAP).unwrap();
        assert!(is_equivalent(&rep.ac, &Arc::new(chain_category(2))));
        assert_eq!(rep.pac.len(), 3);
    }

    #[test]
    fn m3_not_algebraic() {
        let (a, _, cd, r) = analyse(m3());
        assert!(!r.totally_algebraic);
        assert!(matches!(
            algebraic_representation(&a, &cd, &r, DEFAULT_CAP),
            Err(QError::NotTotallyAlgebraic(_))
        ));
    }

    /// Brute force over every family `ψ`.
    fn cauchy_oracle(p: &PresheafCategory, i: usize) -> bool {
        let c = &p.base;
        let q = c.q();
        let phi = &p.presheaves[i];
        let sizes: Vec<Vec<Elem>> = (0..c.n())
            .map(|x| q.hom(phi.ty, c.ty(x)).elements().collect())
            .collect();
        let mut idx = vec![0usize; c.n()];
        loop {
            let psi: Vec<Elem> = idx.iter().enumerate().map(|(x, &k)| sizes[x][k]).collect();
            if cauchy_unit_holds(c, phi, &psi) && cauchy_counit_holds(c, phi, &psi) {
                return true;
            }
            let mut k = 0;
            loop {
                if k == idx.len() {
                    return false;
                }
                idx[k] += 1;
                if idx[k] < sizes[k].len() {
                    break;
                }
                idx[k] = 0;
                k += 1;
            }
        }
    }

    #[test]
    fn cauchy_matches_brute_force() {
        for c in [
            discrete(Arc::new(Quantaloid::boolean()), 2),
            chain_category(2),
            discrete(Arc::new(Quantaloid::chain_min(3)), 2),
            QCategory::free(
                Arc::new(endo3()),
                crate::qmatrix::TypedSet::from_items([("x".to_string(), 0)]).unwrap(),
            ),
        ] {
            let p = PresheafCategory::new(Arc::new(c), DEFAULT_CAP).unwrap();
            let cc = cauchy_completion(&p).unwrap();
            for i in 0..p.len() {
                assert_eq!(cc.cauchy.contains(&i), cauchy_oracle(&p, i), "presheaf {i}");
            }
        }
    }

    #[test]
    fn cauchy_completion_examples() {
        let d = Arc::new(discrete(Arc::new(Quantaloid::boolean()), 2));
        let p = PresheafCategory::new(d.clone(), DEFAULT_CAP).unwrap();
        let cc = cauchy_completion(&p).unwrap();
        assert_eq!(cc.cauchy.len(), 2);
        assert!(is_equivalent(&cc.cat, &d));
        let ch = Arc::new(chain_category(2));
        let p = PresheafCategory::new(ch.clone(), DEFAULT_CAP).unwrap();
        assert!(is_equivalent(&cauchy_completion(&p).unwrap().cat, &ch));
    }

    #[test]
    fn presheaf_theta_formula() {
        for c in [
            discrete(Arc::new(Quantaloid::boolean()), 2),
            chain_category(2),
            QCategory::free(
                Arc::new(endo3()),
                crate::qmatrix::TypedSet::from_items([("x".to_string(), 0)]).unwrap(),
            ),
        ] {
            let inst = PresheafInstance::new(Arc::new(c), DEFAULT_CAP).unwrap();
            let cd = totally_compact(&inst.pc.cat, &inst.tb).unwrap();
            let cc = cauchy_completion(&inst.psh).unwrap();
            let r = theta_of_presheaf_category(&inst, &cd, &cc);
            assert!(r.formula_matches, "{:?}", r.mismatch);
            assert!(r.compacts_are_cauchy);
        }
    }
}
