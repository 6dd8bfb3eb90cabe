//! Typed object sets and Q-valued matrices between them.
//!
//! A matrix `M: A → B` stores `entry(a, b) ∈ Q(t a, t b)`. Matrices do not own
//! their quantaloid; every operation receives it explicitly so the same data
//! can be reinterpreted (e.g. under `Q^op`) without copying.

use std::collections::HashMap;

use crate::error::{QError, Result};
use crate::lattice::Elem;
use crate::quantaloid::{Quantaloid, Side};

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TypedSet {
    labels: Vec<String>,
    types: Vec<usize>,
    index: HashMap<String, usize>,
}

impl TypedSet {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds a typed set; labels must be unique.
    pub fn from_items(items: impl IntoIterator<Item = (String, usize)>) -> Result<Self> {
        let mut s = TypedSet::new();
        for (l, t) in items {
            s.push(l, t)?;
        }
        Ok(s)
    }

    pub fn push(&mut self, label: String, ty: usize) -> Result<usize> {
        if self.index.contains_key(&label) {
            return Err(QError::MalformedParams(format!(
                "duplicate label `{label}`"
            )));
        }
        let i = self.labels.len();
        self.index.insert(label.clone(), i);
        self.labels.push(label);
        self.types.push(ty);
        Ok(i)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    #[inline]
    pub fn ty(&self, i: usize) -> usize {
        self.types[i]
    }

    pub fn types(&self) -> &[usize] {
        &self.types
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    /// Checks that every type is an object of `q`.
    pub fn check_types(&self, q: &Quantaloid) -> Result<()> {
        match self.types.iter().position(|&t| t >= q.n_obj()) {
            Some(i) => Err(QError::MalformedParams(format!(
                "item `{}` has an unknown type",
                self.labels[i]
            ))),
            None => Ok(()),
        }
    }

    /// The sub-set on the given indices, in that order.
    pub fn restrict(&self, idx: &[usize]) -> TypedSet {
        TypedSet::from_items(idx.iter().map(|&i| (self.labels[i].clone(), self.types[i])))
            .expect("labels stay unique")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QMatrix {
    dom: TypedSet,
    cod: TypedSet,
    entries: Vec<Elem>,
}

impl QMatrix {
    /// Matrix from a dense row-major entry vector (`dom × cod`).
    pub fn from_entries(dom: TypedSet, cod: TypedSet, entries: Vec<Elem>) -> Result<Self> {
        if entries.len() != dom.len() * cod.len() {
            return Err(QError::MalformedParams(
                "matrix entry count does not match its shape".into(),
            ));
        }
        Ok(QMatrix { dom, cod, entries })
    }

    pub fn from_fn(dom: TypedSet, cod: TypedSet, f: impl Fn(usize, usize) -> Elem) -> Self {
        let (n, m) = (dom.len(), cod.len());
        let entries = (0..n)
            .flat_map(|a| (0..m).map(move |b| (a, b)))
            .map(|(a, b)| f(a, b))
            .collect();
        QMatrix { dom, cod, entries }
    }

    /// Matrix with all entries at the bottom of their hom lattice.
    pub fn bottom(q: &Quantaloid, dom: TypedSet, cod: TypedSet) -> Self {
        let (dt, ct) = (dom.types().to_vec(), cod.types().to_vec());
        Self::from_fn(dom, cod, |a, b| q.bottom(dt[a], ct[b]))
    }

    pub fn dom(&self) -> &TypedSet {
        &self.dom
    }

    pub fn cod(&self) -> &TypedSet {
        &self.cod
    }

    #[inline]
    pub fn get(&self, a: usize, b: usize) -> Elem {
        self.entries[a * self.cod.len() + b]
    }

    pub fn set(&mut self, a: usize, b: usize, v: Elem) {
        let m = self.cod.len();
        self.entries[a * m + b] = v;
    }

    pub fn entries(&self) -> &[Elem] {
        &self.entries
    }

    /// Checks that every entry lies in its hom lattice.
    pub fn check_entries(&self, q: &Quantaloid) -> Result<()> {
        self.dom.check_types(q)?;
        self.cod.check_types(q)?;
        for a in 0..self.dom.len() {
            for b in 0..self.cod.len() {
                if self.get(a, b) as usize >= q.hom(self.dom.ty(a), self.cod.ty(b)).len() {
                    return Err(QError::MalformedParams(format!(
                        "entry ({}, {}) is not an arrow of the right hom",
                        self.dom.label(a),
                        self.cod.label(b)
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn same_shape(&self, other: &QMatrix) -> bool {
        self.dom.types() == other.dom.types() && self.cod.types() == other.cod.types()
    }

    /// Entrywise order.
    pub fn leq(&self, q: &Quantaloid, other: &QMatrix) -> bool {
        self.same_shape(other)
            && (0..self.dom.len()).all(|a| {
                (0..self.cod.len()).all(|b| {
                    q.hom(self.dom.ty(a), self.cod.ty(b))
                        .leq(self.get(a, b), other.get(a, b))
                })
            })
    }

    /// First entry where `self ≤ other` fails.
    pub fn leq_witness(&self, q: &Quantaloid, other: &QMatrix) -> Option<(usize, usize)> {
        for a in 0..self.dom.len() {
            for b in 0..self.cod.len() {
                if !q
                    .hom(self.dom.ty(a), self.cod.ty(b))
                    .leq(self.get(a, b), other.get(a, b))
                {
                    return Some((a, b));
                }
            }
        }
        None
    }

    /// Entrywise join of two matrices of the same shape.
    pub fn join(&self, q: &Quantaloid, other: &QMatrix) -> Result<QMatrix> {
        if !self.same_shape(other) {
            return Err(QError::TypeMismatch(
                "joining matrices of different shapes".into(),
            ));
        }
        Ok(QMatrix::from_fn(
            self.dom.clone(),
            self.cod.clone(),
            |a, b| {
                q.hom(self.dom.ty(a), self.cod.ty(b))
                    .join(self.get(a, b), other.get(a, b))
            },
        ))
    }

    /// Entrywise equality as a matrix; labels are ignored.
    pub fn same_entries(&self, other: &QMatrix) -> bool {
        self.same_shape(other) && self.entries == other.entries
    }
}

/// `(Ψ ⊗ Φ)(a,c) = ⋁_b Ψ(b,c) ∘ Φ(a,b)` for `Φ: A→B`, `Ψ: B→C`.
pub fn mat_compose(q: &Quantaloid, psi: &QMatrix, phi: &QMatrix) -> Result<QMatrix> {
    if phi.cod.types() != psi.dom.types() {
        return Err(QError::TypeMismatch(
            "matrix composition needs Φ.cod = Ψ.dom".into(),
        ));
    }
    let mid = phi.cod.len();
    Ok(QMatrix::from_fn(
        phi.dom.clone(),
        psi.cod.clone(),
        |a, c| {
            let (ta, tc) = (phi.dom.ty(a), psi.cod.ty(c));
            let l = q.hom(ta, tc);
            l.join_all(
                (0..mid).map(|b| q.comp(ta, phi.cod.ty(b), tc, psi.get(b, c), phi.get(a, b))),
            )
        },
    ))
}

/// Largest matrix solving the corresponding inequality.
///
/// * `Lift`: `F: B→C`, `G: A→C`, result `H: A→B` with `F⊗H ≤ G`.
/// * `Ext`: `F: A→B`, `G: A→C`, result `H: B→C` with `H⊗F ≤ G`.
pub fn mat_residual(q: &Quantaloid, side: Side, f: &QMatrix, g: &QMatrix) -> Result<QMatrix> {
    match side {
        Side::Lift => {
            if f.cod.types() != g.cod.types() {
                return Err(QError::TypeMismatch("lift needs F: B→C and G: A→C".into()));
            }
            Ok(QMatrix::from_fn(g.dom.clone(), f.dom.clone(), |a, b| {
                let (ta, tb) = (g.dom.ty(a), f.dom.ty(b));
                q.hom(ta, tb).meet_all(
                    (0..f.cod.len()).map(|c| q.lift(ta, tb, f.cod.ty(c), f.get(b, c), g.get(a, c))),
                )
            }))
        }
        Side::Ext => {
            if f.dom.types() != g.dom.types() {
                return Err(QError::TypeMismatch("ext needs F: A→B and G: A→C".into()));
            }
            Ok(QMatrix::from_fn(f.cod.clone(), g.cod.clone(), |b, c| {
                let (tb, tc) = (f.cod.ty(b), g.cod.ty(c));
                q.hom(tb, tc).meet_all(
                    (0..f.dom.len()).map(|a| q.ext(f.dom.ty(a), tb, tc, f.get(a, b), g.get(a, c))),
                )
            }))
        }
    }
}

/// Identity matrix on `t`: `1_{ta}` on the diagonal, bottom elsewhere.
pub fn mat_diag(q: &Quantaloid, t: &TypedSet) -> QMatrix {
    QMatrix::from_fn(t.clone(), t.clone(), |a, b| {
        if a == b {
            q.id(t.ty(a))
        } else {
            q.bottom(t.ty(a), t.ty(b))
        }
    })
}

/// Whether `M ⊗ M = M`.
pub fn is_idempotent(q: &Quantaloid, m: &QMatrix) -> Result<bool> {
    if m.dom.types() != m.cod.types() {
        return Err(QError::TypeMismatch(
            "idempotency needs a square matrix".into(),
        ));
    }
    Ok(mat_compose(q, m, m)?.entries == m.entries)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::FiniteLattice;
    use proptest::prelude::*;

    fn ts(n: usize) -> TypedSet {
        TypedSet::from_items((0..n).map(|i| (format!("x{i}"), 0))).unwrap()
    }

    #[test]
    fn boolean_relation_composition() {
        let q = Quantaloid::boolean();
        let a = TypedSet::from_items([("x".to_string(), 0)]).unwrap();
        let b = TypedSet::from_items([("u".to_string(), 0)]).unwrap();
        let c = TypedSet::from_items([("p".to_string(), 0)]).unwrap();
        let phi = QMatrix::from_entries(a, b.clone(), vec![1]).unwrap();
        let psi = QMatrix::from_entries(b, c, vec![1]).unwrap();
        assert_eq!(mat_compose(&q, &psi, &phi).unwrap().entries(), &[1]);
    }

    #[test]
    fn chain3_one_by_one() {
        let q = Quantaloid::chain_min(3);
        let m = QMatrix::from_entries(ts(1), ts(1), vec![1]).unwrap();
        assert_eq!(mat_compose(&q, &m, &m).unwrap().entries(), &[1]);
        let z = QMatrix::from_entries(ts(1), ts(1), vec![0]).unwrap();
        assert_eq!(
            mat_residual(&q, Side::Lift, &m, &z).unwrap().entries(),
            &[0]
        );
    }

    #[test]
    fn diag_is_unit() {
        let q = Quantaloid::chain_min(3);
        let m = QMatrix::from_entries(ts(2), ts(3), vec![0, 1, 2, 2, 1, 0]).unwrap();
        assert_eq!(mat_compose(&q, &m, &mat_diag(&q, &ts(2))).unwrap(), m);
        assert_eq!(mat_compose(&q, &mat_diag(&q, &ts(3)), &m).unwrap(), m);
    }

    #[test]
    fn strict_chain_order_is_not_idempotent() {
        let q = Quantaloid::boolean();
        // x0 < x1 < x2, strict part only
        let m = QMatrix::from_fn(ts(3), ts(3), |a, b| (a < b) as Elem);
        assert!(!is_idempotent(&q, &m).unwrap());
        let full = QMatrix::from_fn(ts(3), ts(3), |a, b| (a <= b) as Elem);
        assert!(is_idempotent(&q, &full).unwrap());
    }

    #[test]
    fn empty_middle_gives_bottom() {
        let q = Quantaloid::chain_min(3);
        let phi = QMatrix::from_entries(ts(2), ts(0), vec![]).unwrap();
        let psi = QMatrix::from_entries(ts(0), ts(2), vec![]).unwrap();
        assert_eq!(
            mat_compose(&q, &psi, &phi).unwrap().entries(),
            &[0, 0, 0, 0]
        );
    }

    #[test]
    fn lift_of_relation_through_itself_contains_diagonal() {
        let q = Quantaloid::boolean();
        let f = QMatrix::from_entries(ts(2), ts(2), vec![1, 1, 0, 1]).unwrap();
        let h = mat_residual(&q, Side::Lift, &f, &f).unwrap();
        assert!(mat_diag(&q, &ts(2)).leq(&q, &h));
    }

    fn arb_matrix(rows: usize, cols: usize, k: u16) -> impl Strategy<Value = QMatrix> {
        proptest::collection::vec(0..k, rows * cols)
            .prop_map(move |e| QMatrix::from_entries(ts(rows), ts(cols), e).unwrap())
    }

    fn endo3() -> Quantaloid {
        Quantaloid::endo(&FiniteLattice::chain(3)).unwrap()
    }

    proptest! {
        #[test]
        fn composition_is_associative(a in arb_matrix(2, 3, 6), b in arb_matrix(3, 2, 6), c in arb_matrix(2, 2, 6)) {
            let q = endo3();
            let l = mat_compose(&q, &c, &mat_compose(&q, &b, &a).unwrap()).unwrap();
            let r = mat_compose(&q, &mat_compose(&q, &c, &b).unwrap(), &a).unwrap();
            prop_assert_eq!(l, r);
        }

        #[test]
        fn matrix_galois_laws(f in arb_matrix(2, 3, 6), g in arb_matrix(2, 3, 6), h in arb_matrix(2, 2, 6)) {
            let q = endo3();
            // lift: F: B→C (2×3), G: A→C (2×3), H: A→B (2×2)
            let fh = mat_compose(&q, &f, &h).unwrap();
            let lift = mat_residual(&q, Side::Lift, &f, &g).unwrap();
            prop_assert_eq!(fh.leq(&q, &g), h.leq(&q, &lift));
            // ext: F: A→B (2×2 = h), G: A→C (2×3 = g), H: B→C (2×3 = f)
            let fh2 = mat_compose(&q, &f, &h).unwrap();
            let ext = mat_residual(&q, Side::Ext, &h, &g).unwrap();
            prop_assert_eq!(fh2.leq(&q, &g), f.leq(&q, &ext));
        }

        #[test]
        fn composition_distributes_over_joins(a in arb_matrix(2, 2, 3), b in arb_matrix(2, 2, 3), c in arb_matrix(2, 2, 3)) {
            let q = Quantaloid::chain_min(3);
            let l = mat_compose(&q, &c, &a.join(&q, &b).unwrap()).unwrap();
            let r = mat_compose(&q, &c, &a).unwrap().join(&q, &mat_compose(&q, &c, &b).unwrap()).unwrap();
            prop_assert_eq!(l, r);
            let l = mat_compose(&q, &a.join(&q, &b).unwrap(), &c).unwrap();
            let r = mat_compose(&q, &a, &c).unwrap().join(&q, &mat_compose(&q, &b, &c).unwrap()).unwrap();
            prop_assert_eq!(l, r);
        }
    }
}
