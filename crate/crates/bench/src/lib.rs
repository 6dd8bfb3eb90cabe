//! Shared workloads for the benchmarks in `benches/`.

use std::sync::Arc;

use qdomain::fixtures::{discrete, lattice_category};
use qdomain::{named_lattices, QCategory, Quantaloid};

/// Cocomplete categories of increasing size: M3, N5 and the first six-element
/// lattices, plus `P` of the discrete three-object category over the
/// three-element chain quantale.
pub fn cocomplete_workloads() -> Vec<(String, Arc<QCategory>)> {
    let mut out: Vec<(String, Arc<QCategory>)> = named_lattices(6)
        .into_iter()
        .filter(|(name, _)| matches!(name.as_str(), "M3" | "N5") || name.starts_with("L6"))
        .map(|(name, l)| (name, Arc::new(lattice_category(&l))))
        .collect();
    out.truncate(6);
    out.push(("P(discrete3/chain3)".into(), presheaf_workload()));
    out
}

/// `P(C)` for `C` the discrete three-object category over `chain_min(3)`.
pub fn presheaf_workload() -> Arc<QCategory> {
    let c = Arc::new(discrete(Arc::new(Quantaloid::chain_min(3)), 3));
    let p = qdomain::PresheafCategory::new(c, qdomain::DEFAULT_CAP).expect("within cap");
    p.category().expect("presheaf category")
}

/// The small category whose presheaf category is the largest analysed above.
pub fn discrete_chain3() -> Arc<QCategory> {
    Arc::new(discrete(Arc::new(Quantaloid::chain_min(3)), 3))
}
