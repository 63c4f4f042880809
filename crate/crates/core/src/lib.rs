//! Candidate placement selection by fuzzy multiple attribute decision making.
//!
//! Raw candidate attributes are converted to crisp values through lookup
//! tables ([`criteria`]), normalized per criterion and combined by simple
//! additive weighting into a preference value ([`saw`]). Candidates live in a
//! file-backed [`registry`]; executed selections are rendered by [`report`].

pub mod criteria;
pub mod error;
pub mod model;
pub mod registry;
pub mod report;
pub mod saw;
pub mod store;

pub use criteria::{
    apply_crisp_map, crispify_profile, default_criteria, load_criteria, parse_criteria, weight_from_label,
    Attribute, CrispRule, CriterionKind, CriterionSpec, RawValue, WeightLabel,
};
pub use error::{Error, Result};
pub use model::{compute_age, AttributeProfile, CandidateRecord, EducationLevel, Gender, PsychResult};
pub use registry::{Registry, Scope, ScopeFilter, SelectionBatch, StoredCandidate};
pub use report::{explain, render_report, round_display, ReportFormat, SelectionReport};
pub use saw::{
    build_matrix, normalize, preference_scores, rank, run_selection, DecisionMatrix, Exclusion, NormalizedMatrix,
    PreferenceScore, RankedResult, SelectionOutcome,
};
