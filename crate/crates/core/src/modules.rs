//! Q-modules and their correspondence with cocomplete Q-categories; tensors,
//! predicate-transformer dynamics (strongest postcondition / weakest
//! precondition) and projectivity via retracts of sums of representables.
//!
//! Actions are covariant in the orientation used throughout the crate: an
//! arrow `f: X → Y` acts as a join-preserving map `F(f): F X → F Y` with
//! `F(g∘f) = F(g)∘F(f)`.

use std::sync::Arc;

use crate::continuity::{classify_domain, totally_below, DomainFlags};
use crate::equivalence::is_equivalent;
use crate::error::{QError, Result, ValidationReport};
use crate::lattice::{Elem, FiniteLattice};
use crate::presheaf::{is_cocontinuous, pushforward, sup, Cocomplete, PresheafCategory};
use crate::qcategory::QCategory;
use crate::qmatrix::TypedSet;
use crate::quantaloid::{join_preserving_maps, Quantaloid};

/// A module `F`: a suplattice per object of `Q` and a join-preserving action per arrow.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QModule {
    pub q: Arc<Quantaloid>,
    pub carriers: Vec<FiniteLattice>,
    /// `action[x * n + y][f][e]`.
    action: Vec<Vec<Vec<Elem>>>,
}

impl QModule {
    pub fn from_fn(
        q: Arc<Quantaloid>,
        carriers: Vec<FiniteLattice>,
        act: impl Fn(usize, usize, Elem, Elem) -> Elem,
    ) -> Result<Self> {
        let n = q.n_obj();
        if carriers.len() != n {
            return Err(QError::MalformedParams(format!(
                "module needs {n} carriers, got {}",
                carriers.len()
            )));
        }
        let mut action = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                let mut per_f = Vec::new();
                for f in q.hom(x, y).elements() {
                    let row: Vec<Elem> = carriers[x].elements().map(|e| act(x, y, f, e)).collect();
                    if let Some(&bad) = row.iter().find(|&&v| v as usize >= carriers[y].len()) {
                        return Err(QError::MalformedParams(format!(
                            "action value {bad} outside carrier"
                        )));
                    }
                    per_f.push(row);
                }
                action.push(per_f);
            }
        }
        Ok(QModule {
            q,
            carriers,
            action,
        })
    }

    /// A suplattice as a module over `2`.
    pub fn from_lattice(l: FiniteLattice) -> Self {
        let q = Arc::new(Quantaloid::boolean());
        let bot = l.bottom();
        Self::from_fn(q, vec![l], |_, _, f, e| if f == 1 { e } else { bot })
            .expect("trivial action")
    }

    /// `Q(X, −)` with action by postcomposition.
    pub fn representable(q: Arc<Quantaloid>, x: usize) -> Self {
        let carriers = (0..q.n_obj()).map(|y| q.hom(x, y).clone()).collect();
        let q2 = q.clone();
        Self::from_fn(q, carriers, move |y, z, f, h| q2.comp(x, y, z, f, h))
            .expect("composition stays in homs")
    }

    pub fn n_obj(&self) -> usize {
        self.q.n_obj()
    }

    #[inline]
    pub fn act(&self, x: usize, y: usize, f: Elem, e: Elem) -> Elem {
        self.action[x * self.n_obj() + y][f as usize][e as usize]
    }

    /// Total number of carrier elements.
    pub fn size(&self) -> usize {
        self.carriers.iter().map(|c| c.len()).sum()
    }

    /// Unit, composition and join laws, with witnesses.
    pub fn validate(&self) -> ValidationReport {
        let q = &self.q;
        let n = self.n_obj();
        let mut r = ValidationReport::new();
        for x in 0..n {
            let cx = &self.carriers[x];
            for e in cx.elements() {
                if self.act(x, x, q.id(x), e) != e {
                    r.push(
                        "unit-law",
                        format!(
                            "1_{}({}) = {}",
                            q.object_name(x),
                            cx.name(e),
                            cx.name(self.act(x, x, q.id(x), e))
                        ),
                    );
                }
            }
            for y in 0..n {
                let cy = &self.carriers[y];
                let hxy = q.hom(x, y);
                for f in hxy.elements() {
                    for e in cx.elements() {
                        for e2 in cx.elements() {
                            if self.act(x, y, f, cx.join(e, e2))
                                != cy.join(self.act(x, y, f, e), self.act(x, y, f, e2))
                            {
                                r.push(
                                    "join-in-element",
                                    format!("{} at {} ∨ {}", hxy.name(f), cx.name(e), cx.name(e2)),
                                );
                            }
                        }
                        if self.act(x, y, f, cx.bottom()) != cy.bottom() {
                            r.push("join-in-element", format!("{} does not fix ⊥", hxy.name(f)));
                        }
                        if self.act(x, y, hxy.bottom(), e) != cy.bottom() {
                            r.push(
                                "join-in-arrow",
                                format!("⊥ acts nontrivially on {}", cx.name(e)),
                            );
                        }
                        for f2 in hxy.elements() {
                            let lhs = self.act(x, y, hxy.join(f, f2), e);
                            if lhs != cy.join(self.act(x, y, f, e), self.act(x, y, f2, e)) {
                                r.push(
                                    "join-in-arrow",
                                    format!(
                                        "({} ∨ {}) at {}",
                                        hxy.name(f),
                                        hxy.name(f2),
                                        cx.name(e)
                                    ),
                                );
                            }
                        }
                    }
                    for z in 0..n {
                        for g in q.hom(y, z).elements() {
                            let gf = q.comp(x, y, z, g, f);
                            for e in cx.elements() {
                                if self.act(x, z, gf, e) != self.act(y, z, g, self.act(x, y, f, e))
                                {
                                    r.push(
                                        "composition-law",
                                        format!(
                                            "({}∘{}) at {}",
                                            q.hom(y, z).name(g),
                                            hxy.name(f),
                                            cx.name(e)
                                        ),
                                    );
                                }
                            }
                        }
                    }
                }
            }
        }
        r.violations.dedup();
        r
    }

    /// Object labels used by [`module_to_category`].
    fn element_label(&self, x: usize, e: Elem) -> String {
        if self.n_obj() == 1 {
            self.carriers[x].name(e).to_string()
        } else {
            format!("{}/{}", self.q.object_name(x), self.carriers[x].name(e))
        }
    }
}

pub fn validate_module(f: &QModule) -> ValidationReport {
    f.validate()
}

/// `C_F`: objects are all carrier elements, `hom(y, x) = ⋁{f | F(f)(y) ≤ x}`.
/// Returned with its verified cocomplete structure.
pub fn module_to_category(f: &QModule, cap: usize) -> Result<Cocomplete> {
    f.validate().into_result()?;
    let q = &f.q;
    let mut items = Vec::new();
    let mut home = Vec::new();
    for x in 0..f.n_obj() {
        for e in f.carriers[x].elements() {
            items.push((f.element_label(x, e), x));
            home.push((x, e));
        }
    }
    let objs = TypedSet::from_items(items)?;
    let cat = QCategory::from_fn(q.clone(), objs, |i, j| {
        let ((y, ey), (x, ex)) = (home[i], home[j]);
        let cx = &f.carriers[x];
        q.hom(y, x).join_all(
            q.hom(y, x)
                .elements()
                .filter(|&g| cx.leq(f.act(y, x, g, ey), ex)),
        )
    })?;
    cat.validate().into_result()?;
    Cocomplete::new(Arc::new(cat), cap)
}

/// `a⊗f` for `f: t a → Y`: the object `s` of type `Y` with `hom(s, b) = ext(f, hom(a, b))`.
pub fn tensor(a: &QCategory, x: usize, y: usize, f: Elem) -> Result<usize> {
    let q = a.q();
    let tx = a.ty(x);
    if f as usize >= q.hom(tx, y).len() {
        return Err(QError::TypeMismatch(
            "tensor weight is not an arrow out of the object's type".into(),
        ));
    }
    let row: Vec<Elem> = (0..a.n())
        .map(|b| q.ext(tx, y, a.ty(b), f, a.hom(x, b)))
        .collect();
    a.find_by_row(y, &row).ok_or_else(|| QError::NotCocomplete {
        witness: format!("{}⊗{}", a.label(x), q.hom(tx, y).name(f)),
    })
}

/// `F_A`: carriers are iso-classes of objects per type, `F(f) = −⊗f`.
pub struct CategoryModule {
    pub module: QModule,
    /// Representative object of each carrier element, per type.
    pub reps: Vec<Vec<usize>>,
    /// Carrier element of each object.
    pub class_of: Vec<Elem>,
}

pub fn category_to_module(a: &QCategory) -> Result<CategoryModule> {
    let q = a.q().clone();
    let order = a.underlying_order();
    let reps_all = order.representatives();
    let n = q.n_obj();
    let mut reps = vec![Vec::new(); n];
    let mut class_of = vec![0 as Elem; a.n()];
    for &r in &reps_all {
        reps[a.ty(r)].push(r);
    }
    for x in 0..a.n() {
        let t = a.ty(x);
        class_of[x] = reps[t]
            .iter()
            .position(|&r| a.iso(r, x))
            .expect("every object has a representative") as Elem;
    }
    let carriers = reps
        .iter()
        .map(|rs| {
            if rs.is_empty() {
                return Err(QError::NotCocomplete {
                    witness: "a type without objects has no bottom".into(),
                });
            }
            FiniteLattice::from_leq_fn(
                rs.iter().map(|&r| a.label(r).to_string()).collect(),
                |i, j| a.leq(rs[i], rs[j]),
            )
        })
        .collect::<Result<Vec<_>>>()?;
    let mut table = vec![Vec::new(); n * n];
    for x in 0..n {
        for y in 0..n {
            for f in q.hom(x, y).elements() {
                let row = reps[x]
                    .iter()
                    .map(|&r| tensor(a, r, y, f).map(|s| class_of[s]))
                    .collect::<Result<Vec<_>>>()?;
                table[x * n + y].push(row);
            }
        }
    }
    let module = QModule::from_fn(q, carriers, |x, y, f, e| {
        table[x * n + y][f as usize][e as usize]
    })?;
    let v = module.validate();
    if !v.is_ok() {
        return Err(QError::InternalInconsistency(format!(
            "F_A is not a module: {v}"
        )));
    }
    Ok(CategoryModule {
        module,
        reps,
        class_of,
    })
}

/// All order isomorphisms between two finite lattices.
fn lattice_isos(a: &FiniteLattice, b: &FiniteLattice) -> Vec<Vec<Elem>> {
    let mut out = Vec::new();
    if a.len() != b.len() {
        return out;
    }
    let n = a.len();
    let below = |l: &FiniteLattice, e: Elem| l.elements().filter(|&d| l.leq(d, e)).count();
    let mut cur = vec![Elem::MAX; n];
    let mut used = vec![false; n];
    fn rec(
        a: &FiniteLattice,
        b: &FiniteLattice,
        k: usize,
        cur: &mut Vec<Elem>,
        used: &mut Vec<bool>,
        out: &mut Vec<Vec<Elem>>,
        below: &dyn Fn(&FiniteLattice, Elem) -> usize,
    ) {
        if k == a.len() {
            out.push(cur.clone());
            return;
        }
        for t in b.elements() {
            if used[t as usize] || below(a, k as Elem) != below(b, t) {
                continue;
            }
            let ok = (0..k).all(|j| {
                a.leq(j as Elem, k as Elem) == b.leq(cur[j], t)
                    && a.leq(k as Elem, j as Elem) == b.leq(t, cur[j])
            });
            if ok {
                cur[k] = t;
                used[t as usize] = true;
                rec(a, b, k + 1, cur, used, out, below);
                used[t as usize] = false;
            }
        }
    }
    rec(a, b, 0, &mut cur, &mut used, &mut out, &below);
    out
}

/// A module isomorphism `F ≅ G`: per-object order isomorphisms commuting with every action.
pub fn module_iso(f: &QModule, g: &QModule) -> Option<Vec<Vec<Elem>>> {
    if f.q != g.q {
        return None;
    }
    let n = f.n_obj();
    let options: Vec<Vec<Vec<Elem>>> = (0..n)
        .map(|x| lattice_isos(&f.carriers[x], &g.carriers[x]))
        .collect();
    if options.iter().any(|o| o.is_empty()) {
        return None;
    }
    let mut choice = vec![0usize; n];
    loop {
        let sigma: Vec<&Vec<Elem>> = (0..n).map(|x| &options[x][choice[x]]).collect();
        let commutes = (0..n).all(|x| {
            (0..n).all(|y| {
                f.q.hom(x, y).elements().all(|h| {
                    f.carriers[x].elements().all(|e| {
                        sigma[y][f.act(x, y, h, e) as usize] == g.act(x, y, h, sigma[x][e as usize])
                    })
                })
            })
        });
        if commutes {
            return Some(sigma.into_iter().cloned().collect());
        }
        let mut k = 0;
        loop {
            if k == n {
                return None;
            }
            choice[k] += 1;
            if choice[k] < options[k].len() {
                break;
            }
            choice[k] = 0;
            k += 1;
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RoundTrip {
    /// `C_{F_A} ≃ A` or `F_{C_F} ≅ F`.
    pub round_trip: bool,
    pub projective_category: bool,
    pub projective_module: bool,
}

impl RoundTrip {
    pub fn passes(&self) -> bool {
        self.round_trip && self.projective_category == self.projective_module
    }
}

/// `A ↦ F_A ↦ C_{F_A}` and projectivity on both sides.
pub fn roundtrip_category(a: &Cocomplete, flags: &DomainFlags, cap: usize) -> Result<RoundTrip> {
    let fa = category_to_module(&a.cat)?;
    let c = module_to_category(&fa.module, cap)?;
    let proj = module_projectivity_analysis(&fa.module, cap)?;
    Ok(RoundTrip {
        round_trip: is_equivalent(&a.cat, &c.cat),
        projective_category: flags.projective,
        projective_module: proj.projective,
    })
}

/// `F ↦ C_F ↦ F_{C_F}` and projectivity on both sides.
pub fn roundtrip_module(f: &QModule, cap: usize) -> Result<RoundTrip> {
    let c = module_to_category(f, cap)?;
    let back = category_to_module(&c.cat)?;
    let tb = totally_below(&c)?;
    let flags = classify_domain(&c, &tb)?;
    let proj = module_projectivity_analysis(f, cap)?;
    Ok(RoundTrip {
        round_trip: module_iso(f, &back.module).is_some(),
        projective_category: flags.projective,
        projective_module: proj.projective,
    })
}

/// A lattice of properties acted on by a one-object quantaloid of updates.
#[derive(Debug, Clone)]
pub struct DynamicSystem {
    pub properties: FiniteLattice,
    pub updates: Arc<Quantaloid>,
    /// `act[f][a]` = `f^*(a)`.
    act: Vec<Vec<Elem>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Sp,
    Wp,
}

impl DynamicSystem {
    pub fn new(
        properties: FiniteLattice,
        updates: Arc<Quantaloid>,
        act: Vec<Vec<Elem>>,
    ) -> Result<Self> {
        if updates.n_obj() != 1 {
            return Err(QError::MalformedParams(
                "updates must form a one-object quantaloid".into(),
            ));
        }
        if act.len() != updates.hom(0, 0).len()
            || act.iter().any(|r| {
                r.len() != properties.len() || r.iter().any(|&v| v as usize >= properties.len())
            })
        {
            return Err(QError::MalformedParams(
                "action table has the wrong shape".into(),
            ));
        }
        Ok(DynamicSystem {
            properties,
            updates,
            act,
        })
    }

    /// `L` acted on by all join-preserving self-maps, by evaluation.
    pub fn evaluation(l: &FiniteLattice) -> Result<Self> {
        let q = Arc::new(Quantaloid::endo(l)?);
        let act = join_preserving_maps(l);
        Self::new(l.clone(), q, act)
    }

    #[inline]
    pub fn act(&self, a: Elem, f: Elem) -> Elem {
        self.act[f as usize][a as usize]
    }

    pub fn sp(&self, f: Elem, a: Elem) -> Elem {
        self.act(a, f)
    }

    pub fn wp(&self, f: Elem, a: Elem) -> Elem {
        let l = &self.properties;
        l.join_all(l.elements().filter(|&b| l.leq(self.act(b, f), a)))
    }

    pub fn as_module(&self) -> QModule {
        QModule::from_fn(
            self.updates.clone(),
            vec![self.properties.clone()],
            |_, _, f, e| self.act(e, f),
        )
        .expect("action table was shape-checked")
    }

    pub fn validate(&self) -> ValidationReport {
        self.as_module().validate()
    }
}

pub fn sp_wp(d: &DynamicSystem, f: Elem, a: Elem, dir: Direction) -> Elem {
    match dir {
        Direction::Sp => d.sp(f, a),
        Direction::Wp => d.wp(f, a),
    }
}

/// Exhaustive check of the causal-duality laws.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DualityReport {
    pub checks: usize,
    pub failures: Vec<String>,
}

pub fn causal_duality_check(d: &DynamicSystem) -> DualityReport {
    let q = &d.updates;
    let h = q.hom(0, 0);
    let l = &d.properties;
    let mut r = DualityReport::default();
    let check = |ok: bool, what: String, r: &mut DualityReport| {
        r.checks += 1;
        if !ok {
            r.failures.push(what);
        }
    };
    for a in l.elements() {
        check(d.sp(q.id(0), a) == a, format!("1^*({})", l.name(a)), &mut r);
        check(
            d.sp(h.bottom(), a) == l.bottom(),
            format!("⊥^*({})", l.name(a)),
            &mut r,
        );
    }
    for f in h.elements() {
        for g in h.elements() {
            let gf = q.comp(0, 0, 0, g, f);
            let fg = h.join(f, g);
            for a in l.elements() {
                check(
                    d.sp(gf, a) == d.sp(g, d.sp(f, a)),
                    format!("({}∘{})^*({})", h.name(g), h.name(f), l.name(a)),
                    &mut r,
                );
                check(
                    d.sp(fg, a) == l.join(d.sp(f, a), d.sp(g, a)),
                    format!("({}∨{})^*({})", h.name(f), h.name(g), l.name(a)),
                    &mut r,
                );
            }
        }
        for a in l.elements() {
            let w = d.wp(f, a);
            for b in l.elements() {
                check(
                    l.leq(d.sp(f, b), a) == l.leq(b, w),
                    format!(
                        "{}^* ⊣ {}_* at ({}, {})",
                        h.name(f),
                        h.name(f),
                        l.name(b),
                        l.name(a)
                    ),
                    &mut r,
                );
            }
        }
    }
    r
}

/// One-typed category on `L` with `hom(a,b) = ⋁{f | act(a,f) ≤ b}`, checked
/// against [`module_to_category`] of the induced module.
pub fn category_from_action(d: &DynamicSystem, cap: usize) -> Result<Cocomplete> {
    let l = &d.properties;
    let h = d.updates.hom(0, 0);
    let objs = TypedSet::from_items(l.names().iter().map(|s| (s.clone(), 0)))?;
    let cat = QCategory::from_fn(d.updates.clone(), objs, |a, b| {
        h.join_all(
            h.elements()
                .filter(|&f| l.leq(d.act(a as Elem, f), b as Elem)),
        )
    })?;
    let via_module = module_to_category(&d.as_module(), cap)?;
    if !cat.hom_matrix().same_entries(via_module.cat.hom_matrix()) {
        return Err(QError::InternalInconsistency(
            "category from action differs from the module's category".into(),
        ));
    }
    Cocomplete::new(Arc::new(cat), cap)
}

/// Codomain interface for module-hom search.
trait HomTarget {
    type E: Clone + PartialEq;
    fn bottom(&self, y: usize) -> Self::E;
    fn join(&self, y: usize, a: &Self::E, b: &Self::E) -> Self::E;
    fn leq(&self, y: usize, a: &Self::E, b: &Self::E) -> bool;
    fn act(&self, x: usize, y: usize, f: Elem, a: &Self::E) -> Self::E;
}

impl HomTarget for QModule {
    type E = Elem;
    fn bottom(&self, y: usize) -> Elem {
        self.carriers[y].bottom()
    }
    fn join(&self, y: usize, a: &Elem, b: &Elem) -> Elem {
        self.carriers[y].join(*a, *b)
    }
    fn leq(&self, y: usize, a: &Elem, b: &Elem) -> bool {
        self.carriers[y].leq(*a, *b)
    }
    fn act(&self, x: usize, y: usize, f: Elem, a: &Elem) -> Elem {
        QModule::act(self, x, y, f, *a)
    }
}

/// `D = ⊕_u Q(t u, −)`, one summand per generator `u`; elements are vectors.
struct SumOfRepresentables<'a> {
    q: &'a Quantaloid,
    types: Vec<usize>,
}

impl HomTarget for SumOfRepresentables<'_> {
    type E = Vec<Elem>;
    fn bottom(&self, y: usize) -> Vec<Elem> {
        self.types.iter().map(|&t| self.q.bottom(t, y)).collect()
    }
    fn join(&self, y: usize, a: &Vec<Elem>, b: &Vec<Elem>) -> Vec<Elem> {
        self.types
            .iter()
            .enumerate()
            .map(|(u, &t)| self.q.hom(t, y).join(a[u], b[u]))
            .collect()
    }
    fn leq(&self, y: usize, a: &Vec<Elem>, b: &Vec<Elem>) -> bool {
        self.types
            .iter()
            .enumerate()
            .all(|(u, &t)| self.q.hom(t, y).leq(a[u], b[u]))
    }
    fn act(&self, x: usize, y: usize, f: Elem, a: &Vec<Elem>) -> Vec<Elem> {
        self.types
            .iter()
            .enumerate()
            .map(|(u, &t)| self.q.comp(t, x, y, f, a[u]))
            .collect()
    }
}

/// A small generating set of a module and, for each element, the terms
/// `(k, f)` with `F(f)(g_k) ≤ e` (whose join is `e`).
struct Generators {
    gens: Vec<(usize, Elem)>,
    terms: Vec<Vec<Vec<(usize, Elem)>>>,
}

impl Generators {
    fn new(m: &QModule) -> Self {
        let n = m.n_obj();
        let q = &m.q;
        let all: Vec<(usize, Elem)> = (0..n)
            .flat_map(|x| m.carriers[x].elements().map(move |e| (x, e)))
            .collect();
        let height = |&(x, e): &(usize, Elem)| {
            m.carriers[x]
                .elements()
                .filter(|&d| m.carriers[x].leq(d, e))
                .count()
        };
        let closure = |gens: &[(usize, Elem)]| -> Vec<Vec<bool>> {
            (0..n)
                .map(|y| {
                    let c = &m.carriers[y];
                    let mut gen: Vec<bool> = c.elements().map(|e| e == c.bottom()).collect();
                    for &(gx, g) in gens {
                        for f in q.hom(gx, y).elements() {
                            gen[m.act(gx, y, f, g) as usize] = true;
                        }
                    }
                    loop {
                        let mut changed = false;
                        for a in c.elements() {
                            for b in c.elements() {
                                let j = c.join(a, b) as usize;
                                if gen[a as usize] && gen[b as usize] && !gen[j] {
                                    gen[j] = true;
                                    changed = true;
                                }
                            }
                        }
                        if !changed {
                            break gen;
                        }
                    }
                })
                .collect()
        };
        let count = |g: &[Vec<bool>]| g.iter().flatten().filter(|&&b| b).count();
        // Greedy: largest marginal submodule first, lower elements on ties.
        let mut gens: Vec<(usize, Elem)> = Vec::new();
        let mut generated = closure(&gens);
        while count(&generated) < all.len() {
            let base = count(&generated);
            let best = all
                .iter()
                .filter(|&&(x, e)| !generated[x][e as usize])
                .map(|&p| {
                    let mut t = gens.clone();
                    t.push(p);
                    (count(&closure(&t)) - base, p)
                })
                .max_by(|(ga, pa), (gb, pb)| {
                    ga.cmp(gb)
                        .then(height(pb).cmp(&height(pa)))
                        .then(pb.cmp(pa))
                })
                .map(|(_, p)| p)
                .expect("an ungenerated element exists");
            gens.push(best);
            generated = closure(&gens);
        }
        let terms = (0..n)
            .map(|y| {
                m.carriers[y]
                    .elements()
                    .map(|e| {
                        gens.iter()
                            .enumerate()
                            .flat_map(|(k, &(gx, g))| {
                                q.hom(gx, y)
                                    .elements()
                                    .filter(move |&f| m.carriers[y].leq(m.act(gx, y, f, g), e))
                                    .map(move |f| (k, f))
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        Generators { gens, terms }
    }
}

/// Searches module homs `m → t` whose value on generator `k` lies in
/// `cands[k]`; calls `found` on each (per object, per element) and stops when
/// it returns `false`.
fn search_homs<T: HomTarget>(
    m: &QModule,
    t: &T,
    gens: &Generators,
    cands: &[Vec<T::E>],
    node_cap: usize,
    mut found: impl FnMut(Vec<Vec<T::E>>) -> bool,
) -> Result<()> {
    let q = &m.q;
    let k_all = gens.gens.len();
    let mut cur: Vec<Option<T::E>> = vec![None; k_all];
    let mut nodes = 0usize;
    // Iterative DFS over candidate indices.
    let mut idx = vec![0usize; k_all];
    let mut depth = 0usize;
    if k_all == 0 {
        let s = extend(m, t, gens, &cur);
        if let Some(s) = s {
            found(s);
        }
        return Ok(());
    }
    loop {
        if idx[depth] >= cands[depth].len() {
            idx[depth] = 0;
            cur[depth] = None;
            if depth == 0 {
                return Ok(());
            }
            depth -= 1;
            idx[depth] += 1;
            continue;
        }
        nodes += 1;
        if nodes > node_cap {
            return Err(QError::EnumerationCapExceeded {
                cap: node_cap,
                what: "candidate module homomorphisms".into(),
            });
        }
        let v = cands[depth][idx[depth]].clone();
        let (xk, gk) = gens.gens[depth];
        let ok = (0..depth).all(|i| {
            let (xi, gi) = gens.gens[i];
            let vi = cur[i].as_ref().expect("assigned");
            q.hom(xi, xk).elements().all(|f| {
                !m.carriers[xk].leq(m.act(xi, xk, f, gi), gk)
                    || t.leq(xk, &t.act(xi, xk, f, vi), &v)
            }) && q.hom(xk, xi).elements().all(|f| {
                !m.carriers[xi].leq(m.act(xk, xi, f, gk), gi)
                    || t.leq(xi, &t.act(xk, xi, f, &v), vi)
            })
        });
        if !ok {
            idx[depth] += 1;
            continue;
        }
        cur[depth] = Some(v);
        if depth + 1 == k_all {
            if let Some(s) = extend(m, t, gens, &cur) {
                if !found(s) {
                    return Ok(());
                }
            }
            idx[depth] += 1;
            continue;
        }
        depth += 1;
    }
}

/// Extends generator values to a full map and checks it is a module hom.
fn extend<T: HomTarget>(
    m: &QModule,
    t: &T,
    gens: &Generators,
    vals: &[Option<T::E>],
) -> Option<Vec<Vec<T::E>>> {
    let q = &m.q;
    let n = m.n_obj();
    let s: Vec<Vec<T::E>> = (0..n)
        .map(|y| {
            gens.terms[y]
                .iter()
                .map(|terms| {
                    terms.iter().fold(t.bottom(y), |acc, &(k, f)| {
                        let (gx, _) = gens.gens[k];
                        t.join(
                            y,
                            &acc,
                            &t.act(gx, y, f, vals[k].as_ref().expect("assigned")),
                        )
                    })
                })
                .collect()
        })
        .collect();
    for (k, &(x, g)) in gens.gens.iter().enumerate() {
        if &s[x][g as usize] != vals[k].as_ref().expect("assigned") {
            return None;
        }
    }
    for y in 0..n {
        let c = &m.carriers[y];
        if s[y][c.bottom() as usize] != t.bottom(y) {
            return None;
        }
        for a in c.elements() {
            for b in c.elements() {
                if s[y][c.join(a, b) as usize] != t.join(y, &s[y][a as usize], &s[y][b as usize]) {
                    return None;
                }
            }
        }
        for z in 0..n {
            for f in q.hom(y, z).elements() {
                for e in c.elements() {
                    if s[z][m.act(y, z, f, e) as usize] != t.act(y, z, f, &s[y][e as usize]) {
                        return None;
                    }
                }
            }
        }
    }
    Some(s)
}

/// Result of searching for a retract presentation `F ◁ ⊕ Q(t u, −)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuleProjectivity {
    pub projective: bool,
    /// Number of summands (one per carrier element).
    pub summands: usize,
    pub generators: usize,
    /// Section `s` of the canonical surjection, per object and element.
    pub section: Option<Vec<Vec<Vec<Elem>>>>,
    /// Finite proxy for small-projectivity: module endomorphisms checked to lift through the surjection.
    pub endomorphisms_lifted: Option<usize>,
    pub proxy_label: &'static str,
}

pub const DEFAULT_HOM_SEARCH_CAP: usize = 5_000_000;

pub fn module_projectivity_analysis(f: &QModule, cap: usize) -> Result<ModuleProjectivity> {
    let q = &f.q;
    let n = f.n_obj();
    let units: Vec<(usize, Elem)> = (0..n)
        .flat_map(|x| f.carriers[x].elements().map(move |e| (x, e)))
        .collect();
    let d = SumOfRepresentables {
        q,
        types: units.iter().map(|u| u.0).collect(),
    };
    let r = |y: usize, v: &[Elem]| -> Elem {
        f.carriers[y].join_all(
            units
                .iter()
                .enumerate()
                .map(|(u, &(x, e))| f.act(x, y, v[u], e)),
        )
    };
    let gens = Generators::new(f);
    let mut cands: Vec<Vec<Vec<Elem>>> = Vec::with_capacity(gens.gens.len());
    for &(x, g) in &gens.gens {
        let radices: Vec<usize> = units.iter().map(|&(t, _)| q.hom(t, x).len()).collect();
        let total = radices
            .iter()
            .try_fold(1usize, |acc, &r| acc.checked_mul(r))
            .unwrap_or(usize::MAX);
        if total > cap.max(DEFAULT_HOM_SEARCH_CAP) {
            return Err(QError::EnumerationCapExceeded {
                cap: cap.max(DEFAULT_HOM_SEARCH_CAP),
                what: "elements of a sum of representable modules".into(),
            });
        }
        let mut fiber = Vec::new();
        let mut v = vec![0 as Elem; units.len()];
        'outer: loop {
            if r(x, &v) == g {
                fiber.push(v.clone());
            }
            let mut k = 0;
            loop {
                if k == v.len() {
                    break 'outer;
                }
                v[k] += 1;
                if (v[k] as usize) < radices[k] {
                    break;
                }
                v[k] = 0;
                k += 1;
            }
        }
        cands.push(fiber);
    }
    let mut section = None;
    search_homs(f, &d, &gens, &cands, DEFAULT_HOM_SEARCH_CAP, |s| {
        section = Some(s);
        false
    })?;
    let mut endomorphisms_lifted = None;
    if let Some(s) = &section {
        let all: Vec<Vec<Elem>> = gens
            .gens
            .iter()
            .map(|&(x, _)| f.carriers[x].elements().collect())
            .collect();
        let mut count = 0usize;
        let mut ok = true;
        search_homs(f, f, &gens, &all, DEFAULT_HOM_SEARCH_CAP, |g| {
            // h = s∘g must be a module hom with r∘h = g.
            let h: Vec<Vec<Vec<Elem>>> = (0..n)
                .map(|y| g[y].iter().map(|&e| s[y][e as usize].clone()).collect())
                .collect();
            let lifts = (0..n).all(|y| {
                f.carriers[y]
                    .elements()
                    .all(|e| r(y, &h[y][e as usize]) == g[y][e as usize])
            });
            let hom = (0..n).all(|y| {
                (0..n).all(|z| {
                    q.hom(y, z).elements().all(|a| {
                        f.carriers[y].elements().all(|e| {
                            h[z][f.act(y, z, a, e) as usize] == d.act(y, z, a, &h[y][e as usize])
                        })
                    })
                })
            });
            ok &= lifts && hom;
            count += 1;
            ok
        })?;
        if !ok {
            return Err(QError::InternalInconsistency(
                "an endomorphism failed to lift through a section".into(),
            ));
        }
        endomorphisms_lifted = Some(count);
    }
    Ok(ModuleProjectivity {
        projective: section.is_some(),
        summands: units.len(),
        generators: gens.gens.len(),
        section,
        endomorphisms_lifted,
        proxy_label: "finite-proxy only",
    })
}

/// Outcome of searching for a cocontinuous section of `P(A₀^f) → A`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrulyFreeReport {
    /// Number of objects of `P(A₀^f)`.
    pub free_size: usize,
    pub section: Option<Vec<usize>>,
    /// The section is `a ↦ Θ(−, a)`.
    pub section_is_t: bool,
}

/// Builds `P(A₀^f)`, the counit `ε(φ) = sup_A(i_! φ)`, and searches for a
/// cocontinuous section; its existence must agree with projectivity.
pub fn projectivity_via_truly_free(
    a: &Cocomplete,
    flags: &DomainFlags,
    theta_columns: Option<&[crate::presheaf::Presheaf]>,
    cap: usize,
) -> Result<TrulyFreeReport> {
    let cat = &a.cat;
    let n = cat.n();
    let free = Arc::new(QCategory::free(cat.q().clone(), cat.objs().clone()));
    let pf = PresheafCategory::new(free, cap)?;
    let ident: Vec<usize> = (0..n).collect();
    let eps = pf
        .presheaves
        .iter()
        .map(|p| {
            sup(cat, &pushforward(cat, &ident, p)).ok_or_else(|| QError::NotCocomplete {
                witness: p.label(cat.q(), cat.objs()),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let seed: Option<Vec<usize>> = theta_columns.map(|cols| {
        cols.iter()
            .map(|t| {
                pf.index_of(t)
                    .expect("every family is a presheaf on a free category")
            })
            .collect()
    });
    let cands: Vec<Vec<usize>> = (0..n)
        .map(|x| {
            let mut c: Vec<usize> = (0..pf.len()).filter(|&i| cat.iso(eps[i], x)).collect();
            if let Some(s) = &seed {
                if let Some(p) = c.iter().position(|&i| i == s[x]) {
                    c.remove(p);
                    c.insert(0, s[x]);
                }
            }
            c
        })
        .collect();
    let q = cat.q();
    let mut cur = vec![0usize; n];
    let mut nodes = 0usize;
    fn rec(
        a: &Cocomplete,
        pf: &PresheafCategory,
        q: &Quantaloid,
        cands: &[Vec<usize>],
        k: usize,
        cur: &mut Vec<usize>,
        nodes: &mut usize,
        cap: usize,
    ) -> Result<bool> {
        *nodes += 1;
        if *nodes > cap {
            return Err(QError::EnumerationCapExceeded {
                cap,
                what: "candidate sections of a truly free cover".into(),
            });
        }
        if k == cands.len() {
            return Ok(is_cocontinuous(a, cur, pf).cocontinuous);
        }
        let cat = &a.cat;
        for &c in &cands[k] {
            let ok = (0..=k).all(|j| {
                let cj = if j == k { c } else { cur[j] };
                q.hom(cat.ty(j), cat.ty(k))
                    .leq(cat.hom(j, k), pf.hom(cj, c))
                    && q.hom(cat.ty(k), cat.ty(j))
                        .leq(cat.hom(k, j), pf.hom(c, cj))
            });
            if ok {
                cur[k] = c;
                if rec(a, pf, q, cands, k + 1, cur, nodes, cap)? {
                    return Ok(true);
                }
            }
        }
        Ok(false)
    }
    let found = rec(
        a,
        &pf,
        q,
        &cands,
        0,
        &mut cur,
        &mut nodes,
        DEFAULT_HOM_SEARCH_CAP,
    )?;
    let section = found.then_some(cur);
    if section.is_some() != flags.projective {
        return Err(QError::InternalInconsistency(format!(
            "truly free section {} but projective = {}",
            if section.is_some() { "found" } else { "absent" },
            flags.projective
        )));
    }
    let section_is_t = match (&section, &seed) {
        (Some(s), Some(t)) => s == t,
        _ => false,
    };
    Ok(TrulyFreeReport {
        free_size: pf.len(),
        section,
        section_is_t,
    })
}
