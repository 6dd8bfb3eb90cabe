//! Finite quantaloid-enriched categories: presheaves, suprema, the
//! totally-below relation, compact objects, Cauchy completion, modules and
//! predicate-transformer dynamics, all computed exactly at desk scale.

pub mod algebraicity;
pub mod continuity;
pub mod enumerate;
pub mod equivalence;
pub mod error;
pub mod fixtures;
pub mod lattice;
pub mod modules;
pub mod presheaf;
pub mod qcategory;
pub mod qmatrix;
pub mod quantaloid;
pub mod report;
pub mod suite;
pub mod workspace;

pub use algebraicity::{
    algebraic_representation, cauchy_completion, cauchy_witness, is_totally_algebraic,
    theta_of_presheaf_category, totally_compact, AlgebraicRepresentation, AlgebraicityReport,
    CauchyCompletion, CauchyWitness, CompactData, PresheafInstance, PresheafThetaReport,
};
pub use continuity::{
    classify_domain, cocont_residual, equivalent_to_regular_splitting, interpolation_check,
    regular_presheaf_category, regular_presheaves, totally_below, totally_below_cofinal,
    totally_continuous_representation, ContinuousRepresentation, DomainFlags, InterpolationReport,
    RegularPresheafCategory, RegularSemicategory, ResidualResult, TotallyBelow,
};
pub use enumerate::{categories_up_to_iso, diagonal_candidates, functors, lattices_up_to_iso};
pub use equivalence::{find_equivalence, is_equivalent, Equivalence};
pub use error::{QError, Result, ValidationReport, Violation};
pub use lattice::{Elem, FiniteLattice};
pub use modules::{
    category_from_action, category_to_module, causal_duality_check, module_iso,
    module_projectivity_analysis, module_to_category, projectivity_via_truly_free,
    roundtrip_category, roundtrip_module, sp_wp, tensor, validate_module, CategoryModule,
    Direction, DualityReport, DynamicSystem, ModuleProjectivity, QModule, RoundTrip,
    TrulyFreeReport, DEFAULT_HOM_SEARCH_CAP,
};
pub use presheaf::{
    cap_from_env, enumerate_presheaves, is_cocomplete, is_cocontinuous, kan_extend,
    presheaf_category, presheaf_hom, pushforward, sup, weighted_colimit, Cocomplete, Colimits,
    Presheaf, PresheafCategory, DEFAULT_CAP,
};
pub use qcategory::{
    classify_functor, graph_cograph, kernel_pair, right_adjoint_functor, AdjointPair, FunctorFlags,
    KernelPair, Preorder, QCategory, QDistributor, QFunctor,
};
pub use qmatrix::{is_idempotent, mat_compose, mat_diag, mat_residual, QMatrix, TypedSet};
pub use quantaloid::{Builtin, QArrow, Quantaloid, Side};
pub use report::{Report, ReportLine, Status};
pub use suite::{
    analyze_domain, analyze_presheaf_instance, downset_oracle, dynamics_check, named_lattices,
    regular_epi_check, residual_check, run_suite, AnalysisOptions, DomainAnalysis, SuiteBase,
    SuiteParams,
};
pub use workspace::{
    effective_cap, parse_workspace, render_text, render_workspace, RawWorkspace, Settings,
    Workspace,
};
