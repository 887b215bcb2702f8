//! Generation certificates for augmentation-type ideals, lifting of left
//! ideals across finite-index normal subgroups, and separation of elements
//! by finite quotients.

pub mod certificate;
pub mod factorization;
pub mod lift;
pub mod pullback;
pub mod separation;

pub use certificate::{
    coset_components, decompose_augmentation, telescope_norm_bound, express_in_j_generators, telescope_certificate,
    telescope_from_factorization, AugmentationDecomposition, GrowthBoundEvidence, JExpression, PhiNormEvidence,
    TelescopeCertificate,
};
pub use factorization::{y_geodesic_factorization, YFactorization, YMetric, DEFAULT_NODE_CAP};
pub use lift::{
    codimension_report, extract_subgroup_expression, lift_ideal, solve_left_ideal_membership, CodimensionReport,
    CosetStructure, ExtractedExpression, ExtractedTerm, FiniteModel, LeftIdealWitness, LiftedIdeal,
};
pub use pullback::{left_ideal_dimension, pull_back_generators, PullbackResult};
pub use separation::{separate, GrigorchukFamily, QuotientFamily, SeparationResult, SupportClass};
