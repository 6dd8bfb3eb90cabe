//! Finite complete lattices given by an explicit order relation.
//!
//! Elements are dense indices `0..len()` with an attached opaque name. Joins
//! and meets of pairs are tabulated once at construction time; every other
//! lattice operation is a table lookup.

use std::collections::HashMap;
use std::fmt;

use crate::error::{QError, Result};

/// Index of an element inside some finite lattice.
pub type Elem = u16;

#[derive(Clone)]
pub struct FiniteLattice {
    names: Vec<String>,
    index: HashMap<String, Elem>,
    leq: Vec<bool>,
    join: Vec<Elem>,
    meet: Vec<Elem>,
    bottom: Elem,
    top: Elem,
}

impl PartialEq for FiniteLattice {
    fn eq(&self, other: &Self) -> bool {
        self.names == other.names && self.leq == other.leq
    }
}

impl Eq for FiniteLattice {}

impl fmt::Debug for FiniteLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteLattice")
            .field("elements", &self.names)
            .field("covers", &self.covers())
            .finish()
    }
}

impl FiniteLattice {
    /// Builds a lattice from element names and generating `(lower, upper)` pairs.
    ///
    /// The reflexive-transitive closure of the pairs is taken; the result must
    /// be antisymmetric and every subset must have a least upper bound.
    pub fn from_pairs<S: AsRef<str>>(names: &[S], pairs: &[(S, S)]) -> Result<Self> {
        let names: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        let mut index = HashMap::new();
        for (i, n) in names.iter().enumerate() {
            if index.insert(n.clone(), i as Elem).is_some() {
                return Err(QError::MalformedParams(format!("duplicate element `{n}`")));
            }
        }
        let mut idx_pairs = Vec::with_capacity(pairs.len());
        for (a, b) in pairs {
            let ia = *index.get(a.as_ref()).ok_or_else(|| {
                QError::MalformedParams(format!("unknown element `{}`", a.as_ref()))
            })?;
            let ib = *index.get(b.as_ref()).ok_or_else(|| {
                QError::MalformedParams(format!("unknown element `{}`", b.as_ref()))
            })?;
            idx_pairs.push((ia as usize, ib as usize));
        }
        Self::from_relation(names, |rel, n| {
            for &(a, b) in &idx_pairs {
                rel[a * n + b] = true;
            }
        })
    }

    /// Builds a lattice from names and an order predicate on indices.
    pub fn from_leq_fn(names: Vec<String>, leq: impl Fn(usize, usize) -> bool) -> Result<Self> {
        Self::from_relation(names, |rel, n| {
            for a in 0..n {
                for b in 0..n {
                    if leq(a, b) {
                        rel[a * n + b] = true;
                    }
                }
            }
        })
    }

    fn from_relation(names: Vec<String>, fill: impl FnOnce(&mut Vec<bool>, usize)) -> Result<Self> {
        let n = names.len();
        if n == 0 {
            return Err(QError::MalformedParams(
                "empty lattice has no least upper bound of the empty set".into(),
            ));
        }
        if n > Elem::MAX as usize {
            return Err(QError::MalformedParams("lattice too large".into()));
        }
        let mut rel = vec![false; n * n];
        fill(&mut rel, n);
        for a in 0..n {
            rel[a * n + a] = true;
        }
        // Warshall closure.
        for k in 0..n {
            for a in 0..n {
                if rel[a * n + k] {
                    for b in 0..n {
                        if rel[k * n + b] {
                            rel[a * n + b] = true;
                        }
                    }
                }
            }
        }
        for a in 0..n {
            for b in (a + 1)..n {
                if rel[a * n + b] && rel[b * n + a] {
                    return Err(QError::MalformedParams(format!(
                        "order is not antisymmetric: `{}` and `{}`",
                        names[a], names[b]
                    )));
                }
            }
        }
        let least_upper = |cands: &mut dyn Iterator<Item = usize>| -> Option<usize> {
            let ub: Vec<usize> = cands.collect();
            ub.iter()
                .copied()
                .find(|&c| ub.iter().all(|&d| rel[c * n + d]))
        };
        let greatest_lower = |cands: &mut dyn Iterator<Item = usize>| -> Option<usize> {
            let lb: Vec<usize> = cands.collect();
            lb.iter()
                .copied()
                .find(|&c| lb.iter().all(|&d| rel[d * n + c]))
        };
        // The least element of the whole set is the join of the empty set.
        let bottom = least_upper(&mut (0..n)).ok_or_else(|| {
            QError::MalformedParams("lattice has no bottom element (empty join missing)".into())
        })?;
        let top = (0..n)
            .find(|&t| (0..n).all(|x| rel[x * n + t]))
            .ok_or_else(|| QError::MalformedParams("lattice has no top element".into()))?;
        let mut join = vec![0 as Elem; n * n];
        let mut meet = vec![0 as Elem; n * n];
        for a in 0..n {
            for b in 0..n {
                let j = least_upper(&mut (0..n).filter(|&c| rel[a * n + c] && rel[b * n + c]))
                    .ok_or_else(|| {
                        QError::MalformedParams(format!(
                            "no least upper bound for `{}` and `{}`",
                            names[a], names[b]
                        ))
                    })?;
                let m = greatest_lower(&mut (0..n).filter(|&c| rel[c * n + a] && rel[c * n + b]))
                    .ok_or_else(|| {
                    QError::MalformedParams(format!(
                        "no greatest lower bound for `{}` and `{}`",
                        names[a], names[b]
                    ))
                })?;
                join[a * n + b] = j as Elem;
                meet[a * n + b] = m as Elem;
            }
        }
        let index = names
            .iter()
            .enumerate()
            .map(|(i, s)| (s.clone(), i as Elem))
            .collect();
        Ok(FiniteLattice {
            names,
            index,
            leq: rel,
            join,
            meet,
            bottom: bottom as Elem,
            top: top as Elem,
        })
    }

    /// The two-element lattice `0 < 1`.
    pub fn boolean() -> Self {
        Self::chain(2)
    }

    /// The `n`-element chain. Names are `0`, `1` and `m` (or `m1`, `m2`, …) in between.
    pub fn chain(n: usize) -> Self {
        assert!(n >= 1, "a chain needs at least one element");
        let names: Vec<String> = (0..n)
            .map(|i| {
                if i == 0 {
                    "0".to_string()
                } else if i == n - 1 {
                    "1".to_string()
                } else if n == 3 {
                    "m".to_string()
                } else {
                    format!("m{i}")
                }
            })
            .collect();
        Self::from_leq_fn(names, |a, b| a <= b).expect("chains are complete lattices")
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> + Clone {
        (0..self.names.len() as Elem).into_iter()
    }

    pub fn name(&self, e: Elem) -> &str {
        &self.names[e as usize]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// Looks an element up by name or registered alias.
    pub fn index_of(&self, name: &str) -> Option<Elem> {
        self.index.get(name).copied()
    }

    /// Registers an additional lookup name for an element. Ignored if the alias
    /// is already taken.
    pub fn add_alias(&mut self, alias: impl Into<String>, e: Elem) {
        self.index.entry(alias.into()).or_insert(e);
    }

    #[inline]
    pub fn leq(&self, a: Elem, b: Elem) -> bool {
        self.leq[a as usize * self.names.len() + b as usize]
    }

    #[inline]
    pub fn join(&self, a: Elem, b: Elem) -> Elem {
        self.join[a as usize * self.names.len() + b as usize]
    }

    #[inline]
    pub fn meet(&self, a: Elem, b: Elem) -> Elem {
        self.meet[a as usize * self.names.len() + b as usize]
    }

    pub fn bottom(&self) -> Elem {
        self.bottom
    }

    pub fn top(&self) -> Elem {
        self.top
    }

    pub fn join_all(&self, it: impl IntoIterator<Item = Elem>) -> Elem {
        it.into_iter().fold(self.bottom, |acc, x| self.join(acc, x))
    }

    pub fn meet_all(&self, it: impl IntoIterator<Item = Elem>) -> Elem {
        it.into_iter().fold(self.top, |acc, x| self.meet(acc, x))
    }

    /// Covering pairs `(a, b)` with `a < b` and nothing strictly between.
    pub fn covers(&self) -> Vec<(Elem, Elem)> {
        let mut out = Vec::new();
        for a in self.elements() {
            for b in self.elements() {
                if a != b && self.leq(a, b) {
                    let between = self
                        .elements()
                        .any(|c| c != a && c != b && self.leq(a, c) && self.leq(c, b));
                    if !between {
                        out.push((a, b));
                    }
                }
            }
        }
        out
    }

    /// Whether the binary distributive law holds (finite lattices: equivalent to
    /// complete distributivity).
    pub fn is_distributive(&self) -> bool {
        self.elements().all(|a| {
            self.elements().all(|b| {
                self.elements().all(|c| {
                    self.meet(a, self.join(b, c)) == self.join(self.meet(a, b), self.meet(a, c))
                })
            })
        })
    }
}
