//! The theorem-verification suite: enumerate small instances and run every
//! cross-module invariant on each, producing a deterministic report.

use std::sync::Arc;
use std::time::Instant;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::algebraicity::{
    algebraic_representation, cauchy_completion, is_totally_algebraic, theta_of_presheaf_category,
    totally_compact, PresheafInstance,
};
use crate::continuity::{
    classify_domain, cocont_residual, equivalent_to_regular_splitting, interpolation_check,
    totally_below, totally_below_cofinal, totally_continuous_representation, DomainFlags,
};
use crate::enumerate::{categories_up_to_iso, functors, lattices_up_to_iso};
use crate::equivalence::is_equivalent;
use crate::error::QError;
use crate::fixtures::lattice_category;
use crate::lattice::{Elem, FiniteLattice};
use crate::modules::{
    causal_duality_check, projectivity_via_truly_free, roundtrip_category, DynamicSystem,
};
use crate::presheaf::{is_cocontinuous, presheaf_hom, Cocomplete, Presheaf};
use crate::qcategory::{classify_functor, kernel_pair, QCategory, QFunctor};
use crate::qmatrix::{mat_compose, QMatrix};
use crate::quantaloid::{Quantaloid, Side};
use crate::report::{Report, Status};

/// Base quantaloid of a suite run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SuiteBase {
    Boolean,
    Chain3,
    Endo3,
}

impl SuiteBase {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "boolean" => Some(SuiteBase::Boolean),
            "chain3" => Some(SuiteBase::Chain3),
            "endo3" => Some(SuiteBase::Endo3),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            SuiteBase::Boolean => "boolean",
            SuiteBase::Chain3 => "chain3",
            SuiteBase::Endo3 => "endo3",
        }
    }

    pub fn quantaloid(self) -> Quantaloid {
        match self {
            SuiteBase::Boolean => Quantaloid::boolean(),
            SuiteBase::Chain3 => Quantaloid::chain_min(3),
            SuiteBase::Endo3 => crate::fixtures::endo3(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct SuiteParams {
    pub base: SuiteBase,
    pub max_objects: usize,
    pub seed: u64,
    pub cap: usize,
}

impl SuiteParams {
    pub fn new(base: SuiteBase, max_objects: usize) -> Self {
        SuiteParams {
            base,
            max_objects,
            seed: 0,
            cap: crate::presheaf::DEFAULT_CAP,
        }
    }
}

/// Which optional checks [`analyze_domain`] runs.
#[derive(Debug, Clone)]
pub struct AnalysisOptions {
    pub cap: usize,
    pub modules: bool,
    pub truly_free: bool,
    /// Brute-force lifting `[sup, 1]` (small instances only).
    pub residual: bool,
    /// Random spot checks of suprema; `None` disables them.
    pub seed: Option<u64>,
}

impl AnalysisOptions {
    pub fn new(cap: usize) -> Self {
        AnalysisOptions {
            cap,
            modules: true,
            truly_free: true,
            residual: false,
            seed: None,
        }
    }
}

/// Per-instance results of [`analyze_domain`].
#[derive(Debug, Clone, Default)]
pub struct DomainAnalysis {
    pub report: Report,
    pub cocomplete: bool,
    pub flags: Option<DomainFlags>,
    pub equiv_regular: Option<bool>,
    pub algebraic: Option<bool>,
    pub sigma_equals_theta: Option<bool>,
    pub theta: Option<QMatrix>,
}

/// `Q = 2`: `x ≪ a` iff every downset whose join dominates `a` contains `x`.
pub fn downset_oracle(a: &QCategory) -> Vec<Vec<bool>> {
    let n = a.n();
    let mut out = vec![vec![true; n]; n];
    for mask in 0u32..(1u32 << n) {
        let d = |x: usize| mask >> x & 1 == 1;
        let is_downset = (0..n).all(|x| !d(x) || (0..n).all(|y| !a.leq(y, x) || d(y)));
        if !is_downset {
            continue;
        }
        // the join of D: least upper bound among all objects
        let ubs: Vec<usize> = (0..n)
            .filter(|&u| (0..n).all(|x| !d(x) || a.leq(x, u)))
            .collect();
        let Some(&j) = ubs.iter().find(|&&u| ubs.iter().all(|&v| a.leq(u, v))) else {
            continue;
        };
        for b in 0..n {
            if a.leq(b, j) {
                for x in 0..n {
                    if !d(x) {
                        out[x][b] = false;
                    }
                }
            }
        }
    }
    out
}

fn err_line(r: &mut Report, entity: &str, check: &str, e: QError) {
    let status = if matches!(e, QError::EnumerationCapExceeded { .. }) {
        Status::Skip
    } else {
        Status::Fail
    };
    r.push(entity, check, status, e.to_string());
}

/// Runs every per-instance invariant on a category.
pub fn analyze_domain(entity: &str, cat: Arc<QCategory>, opts: &AnalysisOptions) -> DomainAnalysis {
    let mut out = DomainAnalysis::default();
    let r = &mut out.report;
    let a = match Cocomplete::new(cat.clone(), opts.cap) {
        Ok(a) => a,
        Err(QError::NotCocomplete { witness }) => {
            r.push(
                entity,
                "cocomplete",
                Status::Info,
                format!("no supremum for {witness}"),
            );
            return out;
        }
        Err(e) => {
            err_line(r, entity, "cocomplete", e);
            return out;
        }
    };
    out.cocomplete = true;
    let q = cat.q();
    let n = cat.n();
    r.info(
        entity,
        "size",
        format!("objects={} presheaves={}", n, a.psh.len()),
    );
    if let Some(seed) = opts.seed {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let k = a.psh.len().min(8);
        let picks = sample(&mut rng, a.psh.len(), k).into_vec();
        let bad = picks.iter().find(|&&i| {
            let s = a.sups[i];
            (0..n).any(|b| {
                cat.hom(s, b)
                    != presheaf_hom(
                        q,
                        cat.objs().types(),
                        a.psh.get(i),
                        &Presheaf::representable(&cat, b),
                    )
            })
        });
        r.check(
            entity,
            "spot-sup",
            bad.is_none(),
            match bad {
                Some(&i) => a.psh.get(i).label(q, cat.objs()),
                None => format!("sampled={k}"),
            },
        );
    }
    let tb = match totally_below(&a) {
        Ok(t) => t,
        Err(e) => {
            err_line(r, entity, "theta", e);
            return out;
        }
    };
    match totally_below_cofinal(&cat) {
        Ok(m) => r.check(entity, "theta-cofinal", m == tb.theta, ""),
        Err(e) => err_line(r, entity, "theta-cofinal", e),
    }
    if q.n_obj() == 1 && q.hom(0, 0).len() == 2 {
        let oracle = downset_oracle(&cat);
        let w = (0..n * n)
            .map(|k| (k / n, k % n))
            .find(|&(x, y)| (tb.get(x, y) == 1) != oracle[x][y]);
        r.check(
            entity,
            "downset-oracle",
            w.is_none(),
            w.map(|(x, y)| format!("({},{})", cat.label(x), cat.label(y)))
                .unwrap_or_default(),
        );
    }
    let below = tb.theta.leq_witness(q, cat.hom_matrix());
    r.check(
        entity,
        "theta-below-hom",
        below.is_none(),
        below
            .map(|(x, y)| format!("({},{})", cat.label(x), cat.label(y)))
            .unwrap_or_default(),
    );
    let sq = mat_compose(q, &tb.theta, &tb.theta).expect("square");
    let trans = sq.leq_witness(q, &tb.theta);
    r.check(
        entity,
        "theta-transitive",
        trans.is_none(),
        trans
            .map(|(x, y)| format!("({},{})", cat.label(x), cat.label(y)))
            .unwrap_or_default(),
    );
    out.theta = Some(tb.theta.clone());
    let flags = match classify_domain(&a, &tb) {
        Ok(f) => f,
        Err(e) => {
            err_line(r, entity, "domain-flags", e);
            return out;
        }
    };
    let w = flags
        .witness
        .map(|x| format!(" witness={}", cat.label(x)))
        .unwrap_or_default();
    r.check(
        entity,
        "domain-flags",
        true,
        format!(
            "totally_continuous={} completely_distributive={} projective={}{}",
            flags.totally_continuous, flags.completely_distributive, flags.projective, w
        ),
    );
    match equivalent_to_regular_splitting(&cat, &tb, opts.cap) {
        Ok(e) => {
            out.equiv_regular = Some(e);
            r.check(
                entity,
                "regular-splitting",
                e == flags.totally_continuous,
                format!("equivalent={e}"),
            );
        }
        Err(e) => err_line(r, entity, "regular-splitting", e),
    }
    let ip = interpolation_check(&cat, &tb, &flags);
    match ip.interpolation {
        None => r.push(
            entity,
            "interpolation",
            Status::Skip,
            "not totally continuous",
        ),
        Some(ok) => r.check(
            entity,
            "interpolation",
            ok,
            ip.counterexample
                .map(|(x, y)| format!("({},{})", cat.label(x), cat.label(y)))
                .unwrap_or_default(),
        ),
    }
    if flags.totally_continuous {
        match totally_continuous_representation(&a, &tb, &flags, opts.cap) {
            Ok(rep) => r.check(
                entity,
                "representation-regular",
                true,
                format!("regular presheaves={}", rep.rb.cat.n()),
            ),
            Err(e) => err_line(r, entity, "representation-regular", e),
        }
    }
    // T(a) ≤ Y(a); on distributive A also sup∘T ≅ 1 and T∘sup ≤ 1.
    let t_below_y = (0..n)
        .all(|c| (0..n).all(|x| q.hom(cat.ty(x), cat.ty(c)).leq(tb.get(x, c), cat.hom(x, c))));
    let mut yoneda_ok = t_below_y;
    if flags.completely_distributive {
        let types = cat.objs().types();
        yoneda_ok &= (0..n).all(|x| cat.iso(a.sups[flags.t_map[x]], x));
        yoneda_ok &= (0..a.psh.len()).all(|i| tb.t_columns[a.sups[i]].leq(q, types, a.psh.get(i)));
    }
    r.check(entity, "yoneda-t", yoneda_ok, "");
    out.flags = Some(flags.clone());
    let cd = match totally_compact(&cat, &tb) {
        Ok(c) => c,
        Err(e) => {
            err_line(r, entity, "compacts", e);
            return out;
        }
    };
    r.check(
        entity,
        "compacts",
        true,
        format!(
            "[{}]",
            cd.compacts
                .iter()
                .map(|&c| cat.label(c))
                .collect::<Vec<_>>()
                .join(",")
        ),
    );
    match is_totally_algebraic(&cat, &tb, &cd, &flags) {
        Ok(alg) => {
            out.algebraic = Some(alg.totally_algebraic);
            out.sigma_equals_theta = Some(alg.sigma_equals_theta);
            r.check(
                entity,
                "algebraicity",
                !alg.totally_algebraic || flags.totally_continuous,
                format!(
                    "totally_algebraic={} sigma_equals_theta={}",
                    alg.totally_algebraic, alg.sigma_equals_theta
                ),
            );
            if alg.totally_algebraic {
                match algebraic_representation(&a, &cd, &alg, opts.cap) {
                    Ok(rep) => {
                        let cauchy_complete = cauchy_completion(&rep.pac)
                            .map(|cc| cc.cat.n() == rep.ac.n() || is_equivalent(&cc.cat, &rep.ac))
                            .unwrap_or(false);
                        r.check(
                            entity,
                            "representation-algebraic",
                            cauchy_complete,
                            format!(
                                "compacts={} cauchy_complete={}",
                                rep.ac.n(),
                                cauchy_complete
                            ),
                        );
                    }
                    Err(e) => err_line(r, entity, "representation-algebraic", e),
                }
            }
        }
        Err(e) => err_line(r, entity, "algebraicity", e),
    }
    if opts.modules {
        match roundtrip_category(&a, &flags, opts.cap) {
            Ok(rt) => r.check(
                entity,
                "module-roundtrip",
                rt.passes(),
                format!(
                    "equivalent={} projective_category={} projective_module={}",
                    rt.round_trip, rt.projective_category, rt.projective_module
                ),
            ),
            Err(e) => err_line(r, entity, "module-roundtrip", e),
        }
    }
    if opts.truly_free {
        match projectivity_via_truly_free(&a, &flags, Some(&tb.t_columns), opts.cap) {
            Ok(tf) => r.check(
                entity,
                "truly-free-section",
                tf.section.is_some() == flags.projective,
                format!("cover={} section={}", tf.free_size, tf.section.is_some()),
            ),
            Err(e) => err_line(r, entity, "truly-free-section", e),
        }
    }
    if opts.residual {
        match residual_check(&a, &flags) {
            Ok((ok, w)) => r.check(entity, "residual-lift", ok, w),
            Err(e) => err_line(r, entity, "residual-lift", e),
        }
    }
    out
}

/// Lifting of `1_A` through `sup`: equals `T` exactly on distributive `A`,
/// and `sup∘[sup,1] ≇ 1` otherwise.
pub fn residual_check(a: &Cocomplete, flags: &DomainFlags) -> crate::error::Result<(bool, String)> {
    let pa = a.psh.category()?;
    let s = QFunctor::new(pa, a.cat.clone(), a.sups.clone())?;
    let id = QFunctor::identity(&a.cat);
    let res = cocont_residual(
        Side::Lift,
        &id,
        &s,
        a,
        crate::modules::DEFAULT_HOM_SEARCH_CAP,
    )?
    .ok_or_else(|| QError::InternalInconsistency("no cocontinuous lifting".into()))?;
    let sup_after = s.after(&res.functor)?.is_identity_up_to_iso();
    let ok = if flags.completely_distributive {
        res.functor.map == flags.t_map && sup_after
    } else {
        !sup_after
    };
    Ok((
        ok,
        format!(
            "equals_t={} sup_after_identity={}",
            res.functor.map == flags.t_map,
            sup_after
        ),
    ))
}

/// Checks on `P(C)`: algebraic with verified `P(C) ≃ P(P(C)_c)`, compacts
/// equal Cauchy presheaves, `(P C)_c ≃ C_cc`, and the formula for `Θ_{P(C)}`.
pub fn analyze_presheaf_instance(entity: &str, c: Arc<QCategory>, cap: usize) -> Report {
    let mut r = Report::new();
    let inst = match PresheafInstance::new(c.clone(), cap) {
        Ok(i) => i,
        Err(e) => {
            err_line(&mut r, entity, "presheaf-instance", e);
            return r;
        }
    };
    let pc = &inst.pc;
    r.info(entity, "presheaf-size", format!("{}", inst.psh.len()));
    let flags = match classify_domain(pc, &inst.tb) {
        Ok(f) => f,
        Err(e) => {
            err_line(&mut r, entity, "free-projective", e);
            return r;
        }
    };
    r.check(
        entity,
        "free-projective",
        flags.projective && flags.totally_continuous,
        "",
    );
    let cd = match totally_compact(&pc.cat, &inst.tb) {
        Ok(cd) => cd,
        Err(e) => {
            err_line(&mut r, entity, "presheaf-compacts", e);
            return r;
        }
    };
    let alg = match is_totally_algebraic(&pc.cat, &inst.tb, &cd, &flags) {
        Ok(a) => a,
        Err(e) => {
            err_line(&mut r, entity, "presheaf-algebraic", e);
            return r;
        }
    };
    r.check(entity, "presheaf-algebraic", alg.totally_algebraic, "");
    let cc = match cauchy_completion(&inst.psh) {
        Ok(cc) => cc,
        Err(e) => {
            err_line(&mut r, entity, "cauchy-completion", e);
            return r;
        }
    };
    if alg.totally_algebraic {
        match algebraic_representation(pc, &cd, &alg, cap) {
            Ok(rep) => {
                r.check(
                    entity,
                    "presheaf-representation",
                    true,
                    format!("compacts={}", rep.ac.n()),
                );
                r.check(
                    entity,
                    "compacts-vs-cauchy-completion",
                    is_equivalent(&rep.ac, &cc.cat),
                    "",
                );
            }
            Err(e) => err_line(&mut r, entity, "presheaf-representation", e),
        }
    }
    let th = theta_of_presheaf_category(&inst, &cd, &cc);
    r.check(
        entity,
        "presheaf-theta-formula",
        th.formula_matches,
        th.mismatch
            .map(|(x, y)| format!("({},{})", pc.cat.label(x), pc.cat.label(y)))
            .unwrap_or_default(),
    );
    r.check(
        entity,
        "compacts-are-cauchy",
        th.compacts_are_cauchy,
        format!("cauchy={}", cc.cauchy.len()),
    );
    r
}

/// Every cocontinuous epi `F: A → B` between the given lattices factors each
/// cocontinuous `F'` that equalizes its kernel pair.
pub fn regular_epi_check(lattices: &[(String, Arc<QCategory>)], cap: usize) -> Report {
    let mut r = Report::new();
    let cc: Vec<Cocomplete> = lattices
        .iter()
        .map(|(_, c)| Cocomplete::new(c.clone(), cap).expect("lattices are cocomplete"))
        .collect();
    let cocont = |i: usize, j: usize| -> Vec<QFunctor> {
        functors(&cc[i].cat, &cc[j].cat)
            .into_iter()
            .filter(|f| is_cocontinuous(&cc[i], &f.map, cc[j].cat.as_ref()).cocontinuous)
            .collect()
    };
    for i in 0..cc.len() {
        let outgoing: Vec<Vec<QFunctor>> = (0..cc.len()).map(|j| cocont(i, j)).collect();
        for (j, fs) in outgoing.iter().enumerate() {
            let (mut epis, mut factored, mut failures) = (0usize, 0usize, Vec::new());
            for f in fs {
                if classify_functor(f).epi != Some(true) {
                    continue;
                }
                epis += 1;
                let kp = match kernel_pair(f) {
                    Ok(k) => k,
                    Err(e) => {
                        failures.push(e.to_string());
                        continue;
                    }
                };
                for fps in &outgoing {
                    for fp in fps {
                        let equalizes = fp
                            .after(&kp.d1)
                            .and_then(|a| Ok(a.is_iso_to(&fp.after(&kp.d2)?)));
                        if !matches!(equalizes, Ok(true)) {
                            continue;
                        }
                        // H(b) = F'(a) for any a with F(a) ≅ b.
                        let b = &f.dst;
                        let hmap: Option<Vec<usize>> = (0..b.n())
                            .map(|y| {
                                (0..f.src.n())
                                    .find(|&x| b.iso(f.map[x], y))
                                    .map(|x| fp.map[x])
                            })
                            .collect();
                        let ok = hmap
                            .and_then(|m| QFunctor::new(b.clone(), fp.dst.clone(), m).ok())
                            .is_some_and(|h| {
                                h.validate().is_ok()
                                    && is_cocontinuous(&cc[j], &h.map, h.dst.as_ref()).cocontinuous
                                    && h.after(f).is_ok_and(|hf| hf.is_iso_to(fp))
                            });
                        factored += 1;
                        if !ok {
                            failures.push(format!("F={:?} F'={:?}", f.map, fp.map));
                        }
                    }
                }
            }
            if epis > 0 {
                let entity = format!("{}->{}", lattices[i].0, lattices[j].0);
                r.check(
                    &entity,
                    "regular-epi",
                    failures.is_empty(),
                    if failures.is_empty() {
                        format!("epis={epis} factorizations={factored}")
                    } else {
                        failures.join("; ")
                    },
                );
            }
        }
    }
    r
}

/// The evaluation action of all join-preserving maps on the 3-chain.
pub fn dynamics_check() -> Report {
    let mut r = Report::new();
    let d = DynamicSystem::evaluation(&FiniteLattice::chain(3)).expect("3-chain");
    let dr = causal_duality_check(&d);
    r.check(
        "e3l3",
        "causal-duality",
        dr.failures.is_empty(),
        if dr.failures.is_empty() {
            format!("checks={}", dr.checks)
        } else {
            dr.failures.join("; ")
        },
    );
    let h = d.updates.hom(0, 0);
    let (f, g) = (
        h.index_of("f0m").expect("arrow"),
        h.index_of("fmm").expect("arrow"),
    );
    let (gf, fg) = (d.updates.comp(0, 0, 0, g, f), d.updates.comp(0, 0, 0, f, g));
    r.check(
        "e3l3",
        "noncommutative",
        gf != fg,
        format!("fmm∘f0m={} f0m∘fmm={}", h.name(gf), h.name(fg)),
    );
    r
}

fn lattice_label(l: &FiniteLattice, k: usize) -> String {
    format!("L{}#{}", l.len(), k)
}

/// Lattices `≤ max` elements, named `L<size>#<k>` (M3 and N5 by name).
pub fn named_lattices(max: usize) -> Vec<(String, FiniteLattice)> {
    let m3 = crate::fixtures::m3_lattice();
    let n5 = crate::fixtures::n5_lattice();
    let mut counter = std::collections::HashMap::new();
    lattices_up_to_iso(max)
        .into_iter()
        .map(|l| {
            let c = lattice_category(&l);
            let k = counter.entry(l.len()).or_insert(0usize);
            *k += 1;
            let name = if l.len() == 5
                && is_equivalent(&Arc::new(c.clone()), &Arc::new(lattice_category(&m3)))
            {
                "M3".to_string()
            } else if l.len() == 5 && is_equivalent(&Arc::new(c), &Arc::new(lattice_category(&n5)))
            {
                "N5".to_string()
            } else {
                lattice_label(&l, *k)
            };
            (name, l)
        })
        .collect()
}

/// Runs the full suite for one base.
pub fn run_suite(p: &SuiteParams) -> Report {
    let started = Instant::now();
    let q = Arc::new(p.base.quantaloid());
    let mut rng = ChaCha8Rng::seed_from_u64(p.seed);
    let mut report = Report::new();
    report.info(
        "suite",
        "params",
        format!(
            "q={} max_objects={} seed={}",
            p.base.name(),
            p.max_objects,
            p.seed
        ),
    );
    let instances: Vec<(String, Arc<QCategory>)> = match p.base {
        SuiteBase::Boolean => named_lattices(p.max_objects)
            .into_iter()
            .map(|(n, l)| (n, Arc::new(lattice_category(&l))))
            .collect(),
        _ => categories_up_to_iso(&q, p.max_objects)
            .into_iter()
            .enumerate()
            .map(|(i, c)| (format!("C{}#{}", c.n(), i), Arc::new(c)))
            .collect(),
    };
    let seeds: Vec<u64> = instances.iter().map(|_| rng.gen()).collect();
    let analyses: Vec<DomainAnalysis> = instances
        .par_iter()
        .zip(seeds.par_iter())
        .map(|((name, c), &s)| {
            let mut o = AnalysisOptions::new(p.cap);
            o.residual = p.base == SuiteBase::Boolean && c.n() <= 5;
            o.seed = Some(s);
            analyze_domain(name, c.clone(), &o)
        })
        .collect();
    let mut cocomplete = 0;
    let mut continuous_not_algebraic = Vec::new();
    for ((name, _), a) in instances.iter().zip(&analyses) {
        report.extend(a.report.clone());
        if a.cocomplete {
            cocomplete += 1;
        }
        if a.flags.as_ref().is_some_and(|f| f.totally_continuous) && a.algebraic == Some(false) {
            continuous_not_algebraic.push(name.clone());
        }
    }
    report.info(
        "suite",
        "instances",
        format!("enumerated={} cocomplete={}", instances.len(), cocomplete),
    );
    report.info(
        "suite",
        "continuous-not-algebraic",
        if continuous_not_algebraic.is_empty() {
            "none".to_string()
        } else {
            continuous_not_algebraic.join(",")
        },
    );
    if p.base == SuiteBase::Boolean {
        let m3n5 = ["M3", "N5"];
        for (name, a) in instances.iter().map(|(n, _)| n).zip(&analyses) {
            if m3n5.contains(&name.as_str()) {
                let f = a.flags.as_ref();
                report.check(
                    name,
                    "nondistributive-fails",
                    f.is_some_and(|f| !f.totally_continuous && !f.projective)
                        && a.equiv_regular == Some(false),
                    "",
                );
            }
        }
    }
    // Presheaf categories of small categories.
    let psh_max = match p.base {
        SuiteBase::Endo3 => p.max_objects.min(1),
        _ => p.max_objects.min(3),
    };
    let small: Vec<QCategory> = categories_up_to_iso(&q, psh_max);
    let psh_reports: Vec<Report> = small
        .par_iter()
        .enumerate()
        .map(|(i, c)| {
            analyze_presheaf_instance(&format!("P(C{}#{})", c.n(), i), Arc::new(c.clone()), p.cap)
        })
        .collect();
    for r in psh_reports {
        report.extend(r);
    }
    match p.base {
        SuiteBase::Boolean => {
            let small: Vec<(String, Arc<QCategory>)> = named_lattices(p.max_objects.min(4))
                .into_iter()
                .map(|(n, l)| (n, Arc::new(lattice_category(&l))))
                .collect();
            report.extend(regular_epi_check(&small, p.cap));
        }
        SuiteBase::Endo3 => report.extend(dynamics_check()),
        SuiteBase::Chain3 => {}
    }
    // Residual laws of the base at random arrows.
    let h = q.hom(0, 0);
    let picks: Vec<(Elem, Elem, Elem)> = (0..32)
        .map(|_| {
            let k = h.len() as Elem;
            (
                rng.gen_range(0..k),
                rng.gen_range(0..k),
                rng.gen_range(0..k),
            )
        })
        .collect();
    let bad = picks.iter().find(|&&(f, g, x)| {
        h.leq(q.comp(0, 0, 0, f, x), g) != h.leq(x, q.lift(0, 0, 0, f, g))
            || h.leq(q.comp(0, 0, 0, x, f), g) != h.leq(x, q.ext(0, 0, 0, f, g))
    });
    report.check(
        "suite",
        "spot-residuals",
        bad.is_none(),
        bad.map(|&(f, g, x)| format!("{} {} {}", h.name(f), h.name(g), h.name(x)))
            .unwrap_or_else(|| "sampled=32".into()),
    );
    let summary = format!(
        "pass={} fail={} skip={}",
        report.count(Status::Pass),
        report.count(Status::Fail),
        report.count(Status::Skip)
    );
    report.check("suite", "summary", report.is_ok(), summary);
    eprintln!("suite {}: {:.2?}", p.base.name(), started.elapsed());
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_boolean_suite_passes() {
        let r = run_suite(&SuiteParams::new(SuiteBase::Boolean, 4));
        let fails: Vec<String> = r.failures().map(|l| l.to_string()).collect();
        assert!(fails.is_empty(), "{fails:#?}");
    }

    #[test]
    fn suite_is_deterministic() {
        let mut p = SuiteParams::new(SuiteBase::Chain3, 2);
        p.seed = 7;
        assert_eq!(run_suite(&p).render_text(), run_suite(&p).render_text());
    }

    #[test]
    fn oracle_on_diamond() {
        let d = crate::fixtures::diamond();
        let o = downset_oracle(&d);
        assert_eq!(
            (0..4).map(|x| o[x][3]).collect::<Vec<_>>(),
            vec![true, true, true, false]
        );
    }
}
