//! JSON workspace files: named quantaloids, categories, modules and dynamic
//! systems, given explicitly or through builder invocations.
//!
//! ```json
//! {
//!   "quantaloids": { "two": { "builtin": { "kind": "boolean" } } },
//!   "categories": {
//!     "c2": { "base": "two", "objects": [["lo", "*"], ["hi", "*"]],
//!             "hom": [["lo", "lo", "1"], ["lo", "hi", "1"], ["hi", "hi", "1"]] }
//!   }
//! }
//! ```
//!
//! Unlisted hom entries of an explicit category are bottom.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{QError, Result};
use crate::fixtures::lattice_category;
use crate::lattice::{Elem, FiniteLattice};
use crate::modules::{category_to_module, DynamicSystem, QModule};
use crate::presheaf::PresheafCategory;
use crate::qcategory::QCategory;
use crate::qmatrix::TypedSet;
use crate::quantaloid::{Builtin, Quantaloid};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BuiltinCall {
    pub kind: String,
    #[serde(default, skip_serializing_if = "Value::is_null")]
    pub params: Value,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawLattice {
    pub elements: Vec<String>,
    #[serde(default)]
    pub leq: Vec<[String; 2]>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawHom {
    pub src: String,
    pub dst: String,
    pub elements: Vec<String>,
    #[serde(default)]
    pub leq: Vec<[String; 2]>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExplicitQuantaloid {
    pub objects: Vec<String>,
    pub hom: Vec<RawHom>,
    /// `[X, Y, Z, g, f, g∘f]` with `f: X→Y`, `g: Y→Z`.
    pub comp: Vec<[String; 6]>,
    pub identities: BTreeMap<String, String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BuiltinOnly {
    pub builtin: BuiltinCall,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RawQuantaloid {
    Builtin(BuiltinOnly),
    Explicit(ExplicitQuantaloid),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BuiltinWithBase {
    pub base: String,
    pub builtin: BuiltinCall,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExplicitCategory {
    pub base: String,
    /// `[label, type]`.
    pub objects: Vec<[String; 2]>,
    /// `[a, b, hom(a,b)]`.
    #[serde(default)]
    pub hom: Vec<[String; 3]>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RawCategory {
    Builtin(BuiltinWithBase),
    Explicit(ExplicitCategory),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawAction {
    pub src: String,
    pub dst: String,
    pub arrow: String,
    pub map: BTreeMap<String, String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExplicitModule {
    pub base: String,
    pub carriers: BTreeMap<String, RawLattice>,
    pub action: Vec<RawAction>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RawModule {
    Builtin(BuiltinWithBase),
    Explicit(ExplicitModule),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExplicitSystem {
    pub properties: RawLattice,
    pub updates: String,
    /// `act[arrow][a] = f^*(a)`.
    pub act: BTreeMap<String, BTreeMap<String, String>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RawSystem {
    Builtin(BuiltinOnly),
    Explicit(ExplicitSystem),
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Settings {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cap: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_objects: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

/// The document as written; rendering serializes this with sorted keys.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawWorkspace {
    #[serde(default)]
    pub quantaloids: BTreeMap<String, RawQuantaloid>,
    #[serde(default)]
    pub categories: BTreeMap<String, RawCategory>,
    #[serde(default)]
    pub modules: BTreeMap<String, RawModule>,
    #[serde(default)]
    pub systems: BTreeMap<String, RawSystem>,
    #[serde(default)]
    pub settings: Settings,
}

/// A parsed and fully validated workspace.
#[derive(Debug, Clone)]
pub struct Workspace {
    pub raw: RawWorkspace,
    pub quantaloids: BTreeMap<String, Arc<Quantaloid>>,
    pub categories: BTreeMap<String, Arc<QCategory>>,
    pub modules: BTreeMap<String, QModule>,
    pub systems: BTreeMap<String, DynamicSystem>,
}

impl PartialEq for Workspace {
    fn eq(&self, other: &Self) -> bool {
        self.raw == other.raw
            && self.quantaloids == other.quantaloids
            && self.categories == other.categories
            && self.modules == other.modules
    }
}

fn malformed(entity: &str, msg: impl std::fmt::Display) -> QError {
    QError::MalformedParams(format!("{entity}: {msg}"))
}

fn params<T: for<'de> Deserialize<'de>>(entity: &str, call: &BuiltinCall) -> Result<T> {
    let v = if call.params.is_null() {
        Value::Object(Default::default())
    } else {
        call.params.clone()
    };
    serde_json::from_value(v)
        .map_err(|e| malformed(entity, format!("bad params for `{}`: {e}", call.kind)))
}

fn raw_lattice(l: &RawLattice) -> Result<FiniteLattice> {
    let pairs: Vec<(String, String)> = l.leq.iter().map(|[a, b]| (a.clone(), b.clone())).collect();
    let pairs_ref: Vec<(&str, &str)> = pairs
        .iter()
        .map(|(a, b)| (a.as_str(), b.as_str()))
        .collect();
    let names: Vec<&str> = l.elements.iter().map(|s| s.as_str()).collect();
    FiniteLattice::from_pairs(&names, &pairs_ref)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ChainParams {
    n: usize,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct EndoParams {
    #[serde(default)]
    chain: Option<usize>,
    #[serde(default)]
    lattice: Option<RawLattice>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PowersetParams {
    elements: Vec<String>,
    table: Vec<Vec<String>>,
    unit: String,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct OfParams {
    of: String,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ObjectParams {
    object: String,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct FreeParams {
    objects: Vec<[String; 2]>,
}

fn endo_lattice(entity: &str, call: &BuiltinCall) -> Result<FiniteLattice> {
    let p: EndoParams = params(entity, call)?;
    match (p.chain, p.lattice) {
        (Some(n), None) => Ok(FiniteLattice::chain(n)),
        (None, Some(l)) => raw_lattice(&l),
        _ => Err(malformed(
            entity,
            "endo needs exactly one of `chain` or `lattice`",
        )),
    }
}

struct Builder<'a> {
    raw: &'a RawWorkspace,
    quantaloids: BTreeMap<String, Arc<Quantaloid>>,
    categories: BTreeMap<String, Arc<QCategory>>,
    systems: BTreeMap<String, DynamicSystem>,
    in_progress: Vec<String>,
    cap: usize,
}

impl Builder<'_> {
    fn enter(&mut self, key: String) -> Result<()> {
        if self.in_progress.contains(&key) {
            return Err(malformed(&key, "cyclic reference"));
        }
        self.in_progress.push(key);
        Ok(())
    }

    fn quantaloid(&mut self, name: &str) -> Result<Arc<Quantaloid>> {
        if let Some(q) = self.quantaloids.get(name) {
            return Ok(q.clone());
        }
        let raw = self
            .raw
            .quantaloids
            .get(name)
            .ok_or_else(|| QError::UnknownName(format!("quantaloid `{name}`")))?;
        self.enter(format!("quantaloid {name}"))?;
        let q = match raw {
            RawQuantaloid::Builtin(b) => {
                let call = &b.builtin;
                let kind = match call.kind.as_str() {
                    "boolean" => Builtin::Boolean,
                    "chain_min" => Builtin::ChainMin(params::<ChainParams>(name, call)?.n),
                    "endo" => Builtin::Endo(endo_lattice(name, call)?),
                    "powerset_monoid" => {
                        let p: PowersetParams = params(name, call)?;
                        let pos = |s: &str| {
                            p.elements.iter().position(|e| e == s).ok_or_else(|| {
                                malformed(name, format!("unknown monoid element `{s}`"))
                            })
                        };
                        let table = p
                            .table
                            .iter()
                            .map(|row| row.iter().map(|s| pos(s)).collect::<Result<Vec<_>>>())
                            .collect::<Result<Vec<_>>>()?;
                        Builtin::PowersetMonoid {
                            elements: p.elements.clone(),
                            table,
                            unit: pos(&p.unit)?,
                        }
                    }
                    "opposite" => {
                        let p: OfParams = params(name, call)?;
                        Builtin::Opposite(Box::new(self.quantaloid(&p.of)?.as_ref().clone()))
                    }
                    other => {
                        return Err(malformed(
                            name,
                            format!("unknown quantaloid builder `{other}`"),
                        ))
                    }
                };
                Quantaloid::make_builtin(&kind)?
            }
            RawQuantaloid::Explicit(e) => explicit_quantaloid(name, e)?,
        };
        let report = q.validate();
        if !report.is_ok() {
            return Err(QError::Validation {
                entity: format!("quantaloid {name}"),
                report,
            });
        }
        self.in_progress.pop();
        let q = Arc::new(q);
        self.quantaloids.insert(name.to_string(), q.clone());
        Ok(q)
    }

    fn category(&mut self, name: &str) -> Result<Arc<QCategory>> {
        if let Some(c) = self.categories.get(name) {
            return Ok(c.clone());
        }
        let raw = self
            .raw
            .categories
            .get(name)
            .ok_or_else(|| QError::UnknownName(format!("category `{name}`")))?;
        self.enter(format!("category {name}"))?;
        let c = match raw {
            RawCategory::Builtin(b) => {
                let q = self.quantaloid(&b.base)?;
                let call = &b.builtin;
                match call.kind.as_str() {
                    "lattice" => {
                        if q.n_obj() != 1 || q.hom(0, 0).len() != 2 {
                            return Err(malformed(
                                name,
                                "a lattice category needs the two-element base",
                            ));
                        }
                        let l: RawLattice = params(name, call)?;
                        let c = lattice_category(&raw_lattice(&l)?);
                        QCategory::new(q.clone(), c.hom_matrix().clone())?
                    }
                    "chain" => {
                        let n = params::<ChainParams>(name, call)?.n;
                        if q.n_obj() != 1 {
                            return Err(malformed(name, "chain needs a one-object base"));
                        }
                        let (bot, id) = (q.bottom(0, 0), q.id(0));
                        let objs = TypedSet::from_items((0..n).map(|i| (format!("c{i}"), 0)))?;
                        QCategory::from_fn(q.clone(), objs, |a, b| if a <= b { id } else { bot })?
                    }
                    "discrete" => {
                        let n = params::<ChainParams>(name, call)?.n;
                        let objs = TypedSet::from_items((0..n).map(|i| (format!("x{i}"), 0)))?;
                        QCategory::free(q.clone(), objs)
                    }
                    "free" => {
                        let p: FreeParams = params(name, call)?;
                        QCategory::free(q.clone(), typed_objects(name, &q, &p.objects)?)
                    }
                    "presheaf" => {
                        let p: OfParams = params(name, call)?;
                        let base = self.category(&p.of)?;
                        if base.q() != &q {
                            return Err(QError::TypeMismatch(format!(
                                "{name}: base of `{}` differs",
                                p.of
                            )));
                        }
                        let pc = PresheafCategory::new(base, self.cap)?;
                        pc.category()?.as_ref().clone()
                    }
                    other => {
                        return Err(malformed(
                            name,
                            format!("unknown category builder `{other}`"),
                        ))
                    }
                }
            }
            RawCategory::Explicit(e) => {
                let q = self.quantaloid(&e.base)?;
                let objs = typed_objects(name, &q, &e.objects)?;
                let n = objs.len();
                let mut entries: Vec<Elem> = (0..n * n)
                    .map(|k| q.bottom(objs.ty(k / n), objs.ty(k % n)))
                    .collect();
                for [a, b, v] in &e.hom {
                    let ia = objs
                        .index_of(a)
                        .ok_or_else(|| QError::UnknownName(format!("{name}: object `{a}`")))?;
                    let ib = objs
                        .index_of(b)
                        .ok_or_else(|| QError::UnknownName(format!("{name}: object `{b}`")))?;
                    let l = q.hom(objs.ty(ia), objs.ty(ib));
                    entries[ia * n + ib] = l.index_of(v).ok_or_else(|| {
                        QError::UnknownName(format!("{name}: arrow `{v}` in hom({a},{b})"))
                    })?;
                }
                QCategory::from_fn(q.clone(), objs, |a, b| entries[a * n + b])?
            }
        };
        let report = c.validate();
        if !report.is_ok() {
            return Err(QError::Validation {
                entity: format!("category {name}"),
                report,
            });
        }
        self.in_progress.pop();
        let c = Arc::new(c);
        self.categories.insert(name.to_string(), c.clone());
        Ok(c)
    }

    fn system(&mut self, name: &str) -> Result<DynamicSystem> {
        if let Some(s) = self.systems.get(name) {
            return Ok(s.clone());
        }
        let raw = self
            .raw
            .systems
            .get(name)
            .ok_or_else(|| QError::UnknownName(format!("system `{name}`")))?;
        let s = match raw {
            RawSystem::Builtin(b) => match b.builtin.kind.as_str() {
                "evaluation" => DynamicSystem::evaluation(&endo_lattice(name, &b.builtin)?)?,
                other => return Err(malformed(name, format!("unknown system builder `{other}`"))),
            },
            RawSystem::Explicit(e) => {
                let q = self.quantaloid(&e.updates)?;
                let l = raw_lattice(&e.properties)?;
                if q.n_obj() != 1 {
                    return Err(malformed(name, "updates must form a one-object quantaloid"));
                }
                let h = q.hom(0, 0);
                let mut act = vec![vec![Elem::MAX; l.len()]; h.len()];
                for (arrow, m) in &e.act {
                    let f = h
                        .index_of(arrow)
                        .ok_or_else(|| QError::UnknownName(format!("{name}: arrow `{arrow}`")))?;
                    for (a, b) in m {
                        let (ia, ib) = (
                            l.index_of(a).ok_or_else(|| {
                                QError::UnknownName(format!("{name}: property `{a}`"))
                            })?,
                            l.index_of(b).ok_or_else(|| {
                                QError::UnknownName(format!("{name}: property `{b}`"))
                            })?,
                        );
                        act[f as usize][ia as usize] = ib;
                    }
                }
                if let Some(f) = act.iter().position(|r| r.contains(&Elem::MAX)) {
                    return Err(malformed(
                        name,
                        format!("action of `{}` is incomplete", h.name(f as Elem)),
                    ));
                }
                DynamicSystem::new(l, q, act)?
            }
        };
        let report = s.validate();
        if !report.is_ok() {
            return Err(QError::Validation {
                entity: format!("system {name}"),
                report,
            });
        }
        self.systems.insert(name.to_string(), s.clone());
        Ok(s)
    }

    fn module(&mut self, name: &str, raw: &RawModule) -> Result<QModule> {
        let m = match raw {
            RawModule::Builtin(b) => {
                let q = self.quantaloid(&b.base)?;
                let call = &b.builtin;
                let m = match call.kind.as_str() {
                    "representable" => {
                        let p: ObjectParams = params(name, call)?;
                        let x = q.object_index(&p.object).ok_or_else(|| {
                            QError::UnknownName(format!("{name}: object `{}`", p.object))
                        })?;
                        QModule::representable(q.clone(), x)
                    }
                    "lattice" => {
                        if q.n_obj() != 1 || q.hom(0, 0).len() != 2 {
                            return Err(malformed(
                                name,
                                "a lattice module needs the two-element base",
                            ));
                        }
                        let l: RawLattice = params(name, call)?;
                        let m = QModule::from_lattice(raw_lattice(&l)?);
                        QModule::from_fn(q.clone(), m.carriers.clone(), |x, y, f, e| {
                            m.act(x, y, f, e)
                        })?
                    }
                    "system" => self
                        .system(&params::<OfParams>(name, call)?.of)?
                        .as_module(),
                    "category" => {
                        let c = self.category(&params::<OfParams>(name, call)?.of)?;
                        category_to_module(c.as_ref())?.module
                    }
                    other => {
                        return Err(malformed(name, format!("unknown module builder `{other}`")))
                    }
                };
                if m.q.as_ref() != q.as_ref() {
                    return Err(QError::TypeMismatch(format!(
                        "{name}: module is not over `{}`",
                        b.base
                    )));
                }
                m
            }
            RawModule::Explicit(e) => {
                let q = self.quantaloid(&e.base)?;
                let mut carriers = Vec::new();
                for x in q.objects() {
                    let l = e
                        .carriers
                        .get(x)
                        .ok_or_else(|| malformed(name, format!("missing carrier for `{x}`")))?;
                    carriers.push(raw_lattice(l)?);
                }
                let n = q.n_obj();
                let mut table: HashMap<(usize, usize, Elem), Vec<Elem>> = HashMap::new();
                for a in &e.action {
                    let (x, y) = (
                        q.object_index(&a.src).ok_or_else(|| {
                            QError::UnknownName(format!("{name}: object `{}`", a.src))
                        })?,
                        q.object_index(&a.dst).ok_or_else(|| {
                            QError::UnknownName(format!("{name}: object `{}`", a.dst))
                        })?,
                    );
                    let f = q.hom(x, y).index_of(&a.arrow).ok_or_else(|| {
                        QError::UnknownName(format!("{name}: arrow `{}`", a.arrow))
                    })?;
                    let mut row = vec![Elem::MAX; carriers[x].len()];
                    for (s, t) in &a.map {
                        let (is, it) = (
                            carriers[x].index_of(s).ok_or_else(|| {
                                QError::UnknownName(format!("{name}: element `{s}`"))
                            })?,
                            carriers[y].index_of(t).ok_or_else(|| {
                                QError::UnknownName(format!("{name}: element `{t}`"))
                            })?,
                        );
                        row[is as usize] = it;
                    }
                    if row.contains(&Elem::MAX) {
                        return Err(malformed(
                            name,
                            format!("action of `{}` is incomplete", a.arrow),
                        ));
                    }
                    table.insert((x, y, f), row);
                }
                for x in 0..n {
                    for y in 0..n {
                        for f in q.hom(x, y).elements() {
                            if !table.contains_key(&(x, y, f)) {
                                return Err(malformed(
                                    name,
                                    format!("no action given for `{}`", q.hom(x, y).name(f)),
                                ));
                            }
                        }
                    }
                }
                QModule::from_fn(q.clone(), carriers, |x, y, f, e| {
                    table[&(x, y, f)][e as usize]
                })?
            }
        };
        let report = m.validate();
        if !report.is_ok() {
            return Err(QError::Validation {
                entity: format!("module {name}"),
                report,
            });
        }
        Ok(m)
    }
}

fn typed_objects(entity: &str, q: &Quantaloid, objects: &[[String; 2]]) -> Result<TypedSet> {
    let items = objects
        .iter()
        .map(|[l, t]| {
            q.object_index(t)
                .map(|ty| (l.clone(), ty))
                .ok_or_else(|| QError::UnknownName(format!("{entity}: type `{t}`")))
        })
        .collect::<Result<Vec<_>>>()?;
    TypedSet::from_items(items)
}

fn explicit_quantaloid(name: &str, e: &ExplicitQuantaloid) -> Result<Quantaloid> {
    let n = e.objects.len();
    let pos = |s: &str| {
        e.objects
            .iter()
            .position(|o| o == s)
            .ok_or_else(|| QError::UnknownName(format!("{name}: object `{s}`")))
    };
    let mut homs: Vec<Option<FiniteLattice>> = vec![None; n * n];
    for h in &e.hom {
        let (x, y) = (pos(&h.src)?, pos(&h.dst)?);
        let l = raw_lattice(&RawLattice {
            elements: h.elements.clone(),
            leq: h.leq.clone(),
        })?;
        homs[x * n + y] = Some(l);
    }
    let homs = homs
        .into_iter()
        .enumerate()
        .map(|(k, h)| {
            h.ok_or_else(|| {
                malformed(
                    name,
                    format!("missing hom({},{})", e.objects[k / n], e.objects[k % n]),
                )
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let mut comp: HashMap<(usize, usize, usize, Elem, Elem), Elem> = HashMap::new();
    for [xs, ys, zs, g, f, gf] in &e.comp {
        let (x, y, z) = (pos(xs)?, pos(ys)?, pos(zs)?);
        let look = |l: &FiniteLattice, s: &str| {
            l.index_of(s)
                .ok_or_else(|| QError::UnknownName(format!("{name}: arrow `{s}`")))
        };
        let key = (
            x,
            y,
            z,
            look(&homs[y * n + z], g)?,
            look(&homs[x * n + y], f)?,
        );
        comp.insert(key, look(&homs[x * n + z], gf)?);
    }
    let ids = e
        .objects
        .iter()
        .enumerate()
        .map(|(x, o)| {
            let s = e
                .identities
                .get(o)
                .ok_or_else(|| malformed(name, format!("missing identity for `{o}`")))?;
            homs[x * n + x]
                .index_of(s)
                .ok_or_else(|| QError::UnknownName(format!("{name}: arrow `{s}`")))
        })
        .collect::<Result<Vec<_>>>()?;
    Quantaloid::from_parts(
        e.objects.clone(),
        homs,
        |x, y, z, g, f| comp.get(&(x, y, z, g, f)).copied(),
        ids,
    )
}

/// The presheaf cap: `QDOMAIN_CAP` if set, else `settings.cap`, else the default.
pub fn effective_cap(settings: &Settings) -> usize {
    match std::env::var("QDOMAIN_CAP") {
        Ok(_) => crate::presheaf::cap_from_env(),
        Err(_) => settings.cap.unwrap_or(crate::presheaf::DEFAULT_CAP),
    }
}

pub fn parse_workspace(text: &str) -> Result<Workspace> {
    let raw: RawWorkspace = serde_json::from_str(text).map_err(|e| QError::Parse {
        line: e.line(),
        column: e.column(),
        message: {
            let full = e.to_string();
            let suffix = format!(" at line {} column {}", e.line(), e.column());
            full.strip_suffix(&suffix).unwrap_or(&full).to_string()
        },
    })?;
    build_workspace(raw)
}

pub fn build_workspace(raw: RawWorkspace) -> Result<Workspace> {
    let cap = effective_cap(&raw.settings);
    let mut b = Builder {
        raw: &raw,
        quantaloids: BTreeMap::new(),
        categories: BTreeMap::new(),
        systems: BTreeMap::new(),
        in_progress: Vec::new(),
        cap,
    };
    for name in raw.quantaloids.keys() {
        b.quantaloid(name)?;
    }
    for name in raw.categories.keys() {
        b.category(name)?;
    }
    for name in raw.systems.keys() {
        b.system(name)?;
    }
    let mut modules = BTreeMap::new();
    for (name, m) in &raw.modules {
        modules.insert(name.clone(), b.module(name, m)?);
    }
    let (quantaloids, categories, systems) = (b.quantaloids, b.categories, b.systems);
    Ok(Workspace {
        raw,
        quantaloids,
        categories,
        modules,
        systems,
    })
}

/// Canonical JSON: sorted keys, two-space indentation, trailing newline.
pub fn render_workspace(w: &Workspace) -> String {
    let v = serde_json::to_value(&w.raw).expect("workspace serializes");
    serde_json::to_string_pretty(&v).expect("value serializes") + "\n"
}

/// A readable listing of every entity.
pub fn render_text(w: &Workspace) -> String {
    let mut s = String::new();
    for (name, q) in &w.quantaloids {
        s.push_str(&format!(
            "quantaloid {name}: objects [{}]\n",
            q.objects().join(", ")
        ));
        for x in 0..q.n_obj() {
            for y in 0..q.n_obj() {
                s.push_str(&format!(
                    "  hom({},{}) = {{{}}}\n",
                    q.object_name(x),
                    q.object_name(y),
                    q.hom(x, y).names().join(", ")
                ));
            }
        }
    }
    for (name, c) in &w.categories {
        s.push_str(&format!("category {name}: {} objects\n", c.n()));
        for a in 0..c.n() {
            let row: Vec<&str> = (0..c.n()).map(|b| c.hom_name(a, b)).collect();
            s.push_str(&format!("  {}: {}\n", c.label(a), row.join(" ")));
        }
    }
    for (name, m) in &w.modules {
        let sizes: Vec<String> = m.carriers.iter().map(|c| c.len().to_string()).collect();
        s.push_str(&format!(
            "module {name}: carrier sizes [{}]\n",
            sizes.join(", ")
        ));
    }
    for (name, d) in &w.systems {
        s.push_str(&format!(
            "system {name}: properties {{{}}}, {} updates\n",
            d.properties.names().join(", "),
            d.updates.hom(0, 0).len()
        ));
    }
    s
}
