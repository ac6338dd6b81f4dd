//! Finite projective planes and the projective-plane poetic form.
//!
//! - [`field`]: GF(q) arithmetic for q ≤ 9.
//! - [`plane`]: incidence structures, PG(2,q), and the plane axioms.
//! - [`diffset`]: perfect difference sets and their developments.
//! - [`conic`]: arcs, ovals, conics, and the oval/conic comparison.
//! - [`octonion`]: the octonion table from an oriented Fano plane.
//! - [`form`]: form patterns, scaffolding, parsing, and validation of poems.
//! - [`corpus`]: bundled poems written in the form.

pub mod conic;
pub mod corpus;
pub mod diffset;
pub mod field;
pub mod form;
pub mod octonion;
pub mod plane;

pub use conic::{
    enumerate_conics, enumerate_ovals, is_arc, segre_check, QuadraticForm, SegreReport,
};
pub use diffset::{
    develop, search_difference_sets, singer_shift_check, verify_difference_set, DifferenceSet,
};
pub use field::{make_field, FieldElement, FieldSpec};
pub use form::{
    canonical_fano_form, discover_structure, form_from_difference_set, octonion_ordered_form,
    parse_poem, scaffold, similarity, validate, BaseLines, FormPattern, MatchMode, PoemDocument,
    ValidationReport,
};
pub use octonion::{algebra_report, build_table, paper_orientation, Octonion, OctonionTable};
pub use plane::{
    build_field_plane, check_axioms, regularity_stats, IncidenceStructure, ProjectivePlane,
};

/// JSON rendering shared by every front end: pretty-printed, struct field
/// order, trailing newline.
pub fn to_json<T: serde::Serialize>(value: &T) -> String {
    let mut out = serde_json::to_string_pretty(value).expect("documents serialize");
    out.push('\n');
    out
}
