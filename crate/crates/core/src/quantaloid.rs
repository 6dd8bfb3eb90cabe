//! Finite quantaloids: the base of enrichment.
//!
//! A quantaloid is stored as a square grid of finite lattices `Q(X,Y)` plus
//! dense composition tables. Both residuals are tabulated eagerly by the
//! brute-force join formula, so every operation used by the higher layers is a
//! constant-time lookup.

use std::collections::HashMap;
use std::fmt;

use crate::error::{QError, Result, ValidationReport};
use crate::lattice::{Elem, FiniteLattice};

/// Which residual of composition is requested.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    /// `lift(f, g)` for `f: Z→W`, `g: X→W`: largest `h: X→Z` with `f∘h ≤ g`.
    Lift,
    /// `ext(f, g)` for `f: X→Z`, `g: X→W`: largest `h: Z→W` with `h∘f ≤ g`.
    Ext,
}

/// An arrow `elem ∈ Q(src, dst)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QArrow {
    pub src: usize,
    pub dst: usize,
    pub elem: Elem,
}

impl QArrow {
    pub fn new(src: usize, dst: usize, elem: Elem) -> Self {
        QArrow { src, dst, elem }
    }
}

/// Parameters of the built-in quantaloid constructors.
#[derive(Debug, Clone)]
pub enum Builtin {
    Boolean,
    ChainMin(usize),
    Endo(FiniteLattice),
    PowersetMonoid {
        elements: Vec<String>,
        /// `table[a][b]` is the index of `a·b`.
        table: Vec<Vec<usize>>,
        unit: usize,
    },
    Opposite(Box<Quantaloid>),
}

#[derive(Clone)]
pub struct Quantaloid {
    objects: Vec<String>,
    obj_index: HashMap<String, usize>,
    homs: Vec<FiniteLattice>,
    comp: Vec<Vec<Elem>>,
    ids: Vec<Elem>,
    lift: Vec<Vec<Elem>>,
    ext: Vec<Vec<Elem>>,
}

impl PartialEq for Quantaloid {
    fn eq(&self, other: &Self) -> bool {
        self.objects == other.objects
            && self.homs == other.homs
            && self.comp == other.comp
            && self.ids == other.ids
    }
}

impl Eq for Quantaloid {}

impl fmt::Debug for Quantaloid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Quantaloid")
            .field("objects", &self.objects)
            .field(
                "hom_sizes",
                &self.homs.iter().map(|h| h.len()).collect::<Vec<_>>(),
            )
            .finish()
    }
}

impl Quantaloid {
    /// Assembles a quantaloid from raw tables without checking the axioms.
    ///
    /// `comp(x, y, z, g, f)` must return `g∘f ∈ Q(x,z)` for `f ∈ Q(x,y)` and
    /// `g ∈ Q(y,z)`; a `None` or out-of-range value is a structural error.
    pub fn from_parts(
        objects: Vec<String>,
        homs: Vec<FiniteLattice>,
        comp: impl Fn(usize, usize, usize, Elem, Elem) -> Option<Elem>,
        ids: Vec<Elem>,
    ) -> Result<Self> {
        let n = objects.len();
        if n == 0 {
            return Err(QError::MalformedParams(
                "a quantaloid needs at least one object".into(),
            ));
        }
        if homs.len() != n * n {
            return Err(QError::MalformedParams(format!(
                "expected {} hom lattices, got {}",
                n * n,
                homs.len()
            )));
        }
        if ids.len() != n {
            return Err(QError::MalformedParams(
                "one identity per object is required".into(),
            ));
        }
        let mut obj_index = HashMap::new();
        for (i, o) in objects.iter().enumerate() {
            if obj_index.insert(o.clone(), i).is_some() {
                return Err(QError::MalformedParams(format!("duplicate object `{o}`")));
            }
        }
        for (x, &id) in ids.iter().enumerate() {
            if id as usize >= homs[x * n + x].len() {
                return Err(QError::MalformedParams(format!(
                    "identity of `{}` is not an element of its endo-hom",
                    objects[x]
                )));
            }
        }
        let mut tables = Vec::with_capacity(n * n * n);
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let (lxy, lyz, lxz) = (&homs[x * n + y], &homs[y * n + z], &homs[x * n + z]);
                    let mut t = Vec::with_capacity(lxy.len() * lyz.len());
                    for g in lyz.elements() {
                        for f in lxy.elements() {
                            match comp(x, y, z, g, f) {
                                Some(v) if (v as usize) < lxz.len() => t.push(v),
                                _ => {
                                    return Err(QError::MalformedParams(format!(
                                        "missing or invalid composite {}∘{} for {}→{}→{}",
                                        lyz.name(g),
                                        lxy.name(f),
                                        objects[x],
                                        objects[y],
                                        objects[z]
                                    )))
                                }
                            }
                        }
                    }
                    tables.push(t);
                }
            }
        }
        let mut q = Quantaloid {
            objects,
            obj_index,
            homs,
            comp: tables,
            ids,
            lift: Vec::new(),
            ext: Vec::new(),
        };
        q.build_residuals();
        Ok(q)
    }

    fn build_residuals(&mut self) {
        let n = self.n_obj();
        let mut lift = Vec::with_capacity(n * n * n);
        let mut ext = Vec::with_capacity(n * n * n);
        for x in 0..n {
            for z in 0..n {
                for w in 0..n {
                    let (lzw, lxw, lxz) = (self.hom(z, w), self.hom(x, w), self.hom(x, z));
                    let mut t = Vec::with_capacity(lzw.len() * lxw.len());
                    for f in lzw.elements() {
                        for g in lxw.elements() {
                            let h = lxz.join_all(
                                lxz.elements()
                                    .filter(|&h| lxw.leq(self.comp(x, z, w, f, h), g)),
                            );
                            t.push(h);
                        }
                    }
                    lift.push(t);
                    let mut t = Vec::with_capacity(lxz.len() * lxw.len());
                    for f in lxz.elements() {
                        for g in lxw.elements() {
                            let h = lzw.join_all(
                                lzw.elements()
                                    .filter(|&h| lxw.leq(self.comp(x, z, w, h, f), g)),
                            );
                            t.push(h);
                        }
                    }
                    ext.push(t);
                }
            }
        }
        self.lift = lift;
        self.ext = ext;
    }

    /// Builds and validates one of the built-in quantaloids.
    pub fn make_builtin(kind: &Builtin) -> Result<Self> {
        let q = match kind {
            Builtin::Boolean => Self::chain_min_unchecked(2),
            Builtin::ChainMin(n) => {
                if *n < 1 {
                    return Err(QError::MalformedParams("chain_min needs n ≥ 1".into()));
                }
                Self::chain_min_unchecked(*n)
            }
            Builtin::Endo(l) => Self::endo_unchecked(l)?,
            Builtin::PowersetMonoid {
                elements,
                table,
                unit,
            } => Self::powerset_unchecked(elements, table, *unit)?,
            Builtin::Opposite(q) => q.opposite(),
        };
        let report = q.validate();
        if !report.is_ok() {
            return Err(QError::MalformedParams(format!(
                "builder produced an invalid quantaloid:\n{report}"
            )));
        }
        Ok(q)
    }

    /// The one-object quantaloid `2`.
    pub fn boolean() -> Self {
        Self::chain_min_unchecked(2)
    }

    /// The `n`-element chain with composition = meet and unit = top.
    pub fn chain_min(n: usize) -> Self {
        Self::make_builtin(&Builtin::ChainMin(n)).expect("chains form a quantale under meet")
    }

    /// Join-preserving self-maps of `l` under functional composition.
    pub fn endo(l: &FiniteLattice) -> Result<Self> {
        Self::make_builtin(&Builtin::Endo(l.clone()))
    }

    fn chain_min_unchecked(n: usize) -> Self {
        let l = FiniteLattice::chain(n);
        let top = l.top();
        let meet = l.clone();
        Self::from_parts(
            vec!["*".into()],
            vec![l],
            |_, _, _, g, f| Some(meet.meet(g, f)),
            vec![top],
        )
        .expect("chain tables are complete")
    }

    fn endo_unchecked(l: &FiniteLattice) -> Result<Self> {
        let maps = join_preserving_maps(l);
        let nonbottom: Vec<Elem> = l.elements().filter(|&e| e != l.bottom()).collect();
        let short = l.names().iter().all(|s| s.chars().count() == 1);
        let names: Vec<String> = maps
            .iter()
            .map(|m| {
                let vals: Vec<&str> = nonbottom.iter().map(|&e| l.name(m[e as usize])).collect();
                if short {
                    format!("f{}", vals.concat())
                } else {
                    format!("f({})", vals.join(","))
                }
            })
            .collect();
        let pointwise = |a: usize, b: usize| {
            l.elements()
                .all(|e| l.leq(maps[a][e as usize], maps[b][e as usize]))
        };
        let mut hom = FiniteLattice::from_leq_fn(names, pointwise)?;
        for (i, m) in maps.iter().enumerate() {
            let vals: Vec<&str> = nonbottom.iter().map(|&e| l.name(m[e as usize])).collect();
            hom.add_alias(format!("({})", vals.join(",")), i as Elem);
        }
        let index: HashMap<&Vec<Elem>, Elem> = maps
            .iter()
            .enumerate()
            .map(|(i, m)| (m, i as Elem))
            .collect();
        let identity: Vec<Elem> = l.elements().collect();
        let id = *index.get(&identity).expect("identity is join-preserving");
        Self::from_parts(
            vec!["*".into()],
            vec![hom],
            |_, _, _, g, f| {
                let gm = &maps[g as usize];
                let comp: Vec<Elem> = maps[f as usize].iter().map(|&v| gm[v as usize]).collect();
                index.get(&comp).copied()
            },
            vec![id],
        )
    }

    fn powerset_unchecked(elements: &[String], table: &[Vec<usize>], unit: usize) -> Result<Self> {
        let m = elements.len();
        if m == 0 || m > 5 {
            return Err(QError::MalformedParams(
                "powerset_monoid supports 1 to 5 monoid elements".into(),
            ));
        }
        if unit >= m
            || table.len() != m
            || table
                .iter()
                .any(|r| r.len() != m || r.iter().any(|&v| v >= m))
        {
            return Err(QError::MalformedParams(
                "monoid table is not an m×m table over the elements".into(),
            ));
        }
        for a in 0..m {
            if table[unit][a] != a || table[a][unit] != a {
                return Err(QError::MalformedParams(format!(
                    "monoid table is not unital at `{}`",
                    elements[a]
                )));
            }
            for b in 0..m {
                for c in 0..m {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(QError::MalformedParams(format!(
                            "monoid table is not associative at ({}, {}, {})",
                            elements[a], elements[b], elements[c]
                        )));
                    }
                }
            }
        }
        let count = 1usize << m;
        let names: Vec<String> = (0..count)
            .map(|s| {
                let inner: Vec<&str> = (0..m)
                    .filter(|i| s >> i & 1 == 1)
                    .map(|i| elements[i].as_str())
                    .collect();
                format!("{{{}}}", inner.join(","))
            })
            .collect();
        let hom = FiniteLattice::from_leq_fn(names, |a, b| a & !b == 0)?;
        Self::from_parts(
            vec!["*".into()],
            vec![hom],
            |_, _, _, g, f| {
                let mut out = 0usize;
                for i in (0..m).filter(|i| (g as usize) >> i & 1 == 1) {
                    for j in (0..m).filter(|j| (f as usize) >> j & 1 == 1) {
                        out |= 1 << table[i][j];
                    }
                }
                Some(out as Elem)
            },
            vec![(1usize << unit) as Elem],
        )
    }

    /// `Q^op`: `Q^op(X,Y) = Q(Y,X)` and `g ∘_op f = f ∘ g`.
    pub fn opposite(&self) -> Self {
        let n = self.n_obj();
        let homs = (0..n)
            .flat_map(|x| (0..n).map(move |y| (x, y)))
            .map(|(x, y)| self.hom(y, x).clone())
            .collect();
        Self::from_parts(
            self.objects.clone(),
            homs,
            |x, y, z, g, f| Some(self.comp(z, y, x, f, g)),
            self.ids.clone(),
        )
        .expect("opposite of complete tables is complete")
    }

    pub fn n_obj(&self) -> usize {
        self.objects.len()
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn object_name(&self, x: usize) -> &str {
        &self.objects[x]
    }

    pub fn object_index(&self, name: &str) -> Option<usize> {
        self.obj_index.get(name).copied()
    }

    #[inline]
    pub fn hom(&self, x: usize, y: usize) -> &FiniteLattice {
        &self.homs[x * self.objects.len() + y]
    }

    #[inline]
    pub fn id(&self, x: usize) -> Elem {
        self.ids[x]
    }

    #[inline]
    pub fn bottom(&self, x: usize, y: usize) -> Elem {
        self.hom(x, y).bottom()
    }

    #[inline]
    pub fn top(&self, x: usize, y: usize) -> Elem {
        self.hom(x, y).top()
    }

    #[inline]
    fn triple(&self, x: usize, y: usize, z: usize) -> usize {
        let n = self.objects.len();
        (x * n + y) * n + z
    }

    /// `g∘f` for `f ∈ Q(x,y)`, `g ∈ Q(y,z)`.
    #[inline]
    pub fn comp(&self, x: usize, y: usize, z: usize, g: Elem, f: Elem) -> Elem {
        let w = self.hom(x, y).len();
        self.comp[self.triple(x, y, z)][g as usize * w + f as usize]
    }

    /// Largest `h: X→Z` with `f∘h ≤ g`, for `f: Z→W`, `g: X→W`.
    #[inline]
    pub fn lift(&self, x: usize, z: usize, w: usize, f: Elem, g: Elem) -> Elem {
        let width = self.hom(x, w).len();
        self.lift[self.triple(x, z, w)][f as usize * width + g as usize]
    }

    /// Largest `h: Z→W` with `h∘f ≤ g`, for `f: X→Z`, `g: X→W`.
    #[inline]
    pub fn ext(&self, x: usize, z: usize, w: usize, f: Elem, g: Elem) -> Elem {
        let width = self.hom(x, w).len();
        self.ext[self.triple(x, z, w)][f as usize * width + g as usize]
    }

    pub fn arrow_name(&self, a: QArrow) -> &str {
        self.hom(a.src, a.dst).name(a.elem)
    }

    /// Resolves an arrow by name (or alias) inside `Q(x,y)`.
    pub fn arrow(&self, x: usize, y: usize, name: &str) -> Result<QArrow> {
        self.hom(x, y)
            .index_of(name)
            .map(|e| QArrow::new(x, y, e))
            .ok_or_else(|| {
                QError::UnknownName(format!(
                    "arrow `{name}` in Q({},{})",
                    self.objects[x], self.objects[y]
                ))
            })
    }

    /// Checked composition `g∘f`.
    pub fn q_compose(&self, g: QArrow, f: QArrow) -> Result<QArrow> {
        if f.dst != g.src {
            return Err(QError::TypeMismatch(format!(
                "cannot compose {} after {}: {} ≠ {}",
                self.arrow_name(g),
                self.arrow_name(f),
                self.objects[g.src],
                self.objects[f.dst]
            )));
        }
        Ok(QArrow::new(
            f.src,
            g.dst,
            self.comp(f.src, f.dst, g.dst, g.elem, f.elem),
        ))
    }

    /// Checked residual.
    pub fn q_residual(&self, side: Side, f: QArrow, g: QArrow) -> Result<QArrow> {
        match side {
            Side::Lift => {
                if f.dst != g.dst {
                    return Err(QError::TypeMismatch("lift needs f: Z→W and g: X→W".into()));
                }
                Ok(QArrow::new(
                    g.src,
                    f.src,
                    self.lift(g.src, f.src, f.dst, f.elem, g.elem),
                ))
            }
            Side::Ext => {
                if f.src != g.src {
                    return Err(QError::TypeMismatch("ext needs f: X→Z and g: X→W".into()));
                }
                Ok(QArrow::new(
                    f.dst,
                    g.dst,
                    self.ext(f.src, f.dst, g.dst, f.elem, g.elem),
                ))
            }
        }
    }

    /// Checks associativity, unit laws and join preservation in each argument.
    pub fn validate(&self) -> ValidationReport {
        let n = self.n_obj();
        let mut report = ValidationReport::new();
        let name = |x: usize, y: usize, e: Elem| self.hom(x, y).name(e).to_string();
        for x in 0..n {
            for y in 0..n {
                let id_y = self.id(y);
                let id_x = self.id(x);
                for f in self.hom(x, y).elements() {
                    if self.comp(x, y, y, id_y, f) != f {
                        report.push(
                            "unit-law",
                            format!(
                                "1_{}∘{} ≠ {}",
                                self.objects[y],
                                name(x, y, f),
                                name(x, y, f)
                            ),
                        );
                    }
                    if self.comp(x, x, y, f, id_x) != f {
                        report.push(
                            "unit-law",
                            format!(
                                "{}∘1_{} ≠ {}",
                                name(x, y, f),
                                self.objects[x],
                                name(x, y, f)
                            ),
                        );
                    }
                }
            }
        }
        for w in 0..n {
            for x in 0..n {
                for y in 0..n {
                    for z in 0..n {
                        for h in self.hom(w, x).elements() {
                            for g in self.hom(x, y).elements() {
                                let gh = self.comp(w, x, y, g, h);
                                for f in self.hom(y, z).elements() {
                                    let left = self.comp(w, y, z, f, gh);
                                    let right = self.comp(w, x, z, self.comp(x, y, z, f, g), h);
                                    if left != right {
                                        report.push(
                                            "associativity",
                                            format!(
                                                "({}, {}, {}) over {}→{}→{}→{}",
                                                name(y, z, f),
                                                name(x, y, g),
                                                name(w, x, h),
                                                self.objects[w],
                                                self.objects[x],
                                                self.objects[y],
                                                self.objects[z]
                                            ),
                                        );
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let (lxy, lyz, lxz) = (self.hom(x, y), self.hom(y, z), self.hom(x, z));
                    for g in lyz.elements() {
                        if self.comp(x, y, z, g, lxy.bottom()) != lxz.bottom() {
                            report.push("join-preservation", format!("{}∘⊥ ≠ ⊥", name(y, z, g)));
                        }
                        for f1 in lxy.elements() {
                            for f2 in lxy.elements() {
                                let l = self.comp(x, y, z, g, lxy.join(f1, f2));
                                let r =
                                    lxz.join(self.comp(x, y, z, g, f1), self.comp(x, y, z, g, f2));
                                if l != r {
                                    report.push(
                                        "join-preservation",
                                        format!(
                                            "{}∘({} ∨ {})",
                                            name(y, z, g),
                                            name(x, y, f1),
                                            name(x, y, f2)
                                        ),
                                    );
                                }
                            }
                        }
                    }
                    for f in lxy.elements() {
                        if self.comp(x, y, z, lyz.bottom(), f) != lxz.bottom() {
                            report.push("join-preservation", format!("⊥∘{} ≠ ⊥", name(x, y, f)));
                        }
                        for g1 in lyz.elements() {
                            for g2 in lyz.elements() {
                                let l = self.comp(x, y, z, lyz.join(g1, g2), f);
                                let r =
                                    lxz.join(self.comp(x, y, z, g1, f), self.comp(x, y, z, g2, f));
                                if l != r {
                                    report.push(
                                        "join-preservation",
                                        format!(
                                            "({} ∨ {})∘{}",
                                            name(y, z, g1),
                                            name(y, z, g2),
                                            name(x, y, f)
                                        ),
                                    );
                                }
                            }
                        }
                    }
                }
            }
        }
        report
    }

    /// Copy of this quantaloid with a replaced identity; used to exhibit
    /// validation failures.
    pub fn with_identity(&self, x: usize, id: Elem) -> Self {
        let mut q = self.clone();
        q.ids[x] = id;
        q
    }
}

/// All join-preserving self-maps of `l`, in lexicographic order of their value
/// tuples.
pub fn join_preserving_maps(l: &FiniteLattice) -> Vec<Vec<Elem>> {
    let n = l.len();
    // Assign in an order compatible with ≤ so joins are checked as soon as possible.
    let mut order: Vec<Elem> = l.elements().collect();
    order.sort_by_key(|&e| l.elements().filter(|&d| l.leq(d, e)).count());
    let mut out = Vec::new();
    let mut cur = vec![Elem::MAX; n];
    fn rec(
        l: &FiniteLattice,
        order: &[Elem],
        k: usize,
        cur: &mut Vec<Elem>,
        out: &mut Vec<Vec<Elem>>,
    ) {
        if k == order.len() {
            out.push(cur.clone());
            return;
        }
        let e = order[k] as usize;
        for v in l.elements() {
            if e == l.bottom() as usize && v != l.bottom() {
                continue;
            }
            cur[e] = v;
            let ok = order[..=k].iter().all(|&a| {
                order[..=k].iter().all(|&b| {
                    let j = l.join(a, b) as usize;
                    cur[j] == Elem::MAX || cur[j] == l.join(cur[a as usize], cur[b as usize])
                })
            });
            if ok {
                rec(l, order, k + 1, cur, out);
            }
            cur[e] = Elem::MAX;
        }
    }
    rec(l, &order, 0, &mut cur, &mut out);
    out.sort();
    out
}
