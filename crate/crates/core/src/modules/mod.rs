//! Standard modules `I(χ)`, their integral structures and reductions modulo `p`.

mod character;
mod integral;
pub mod linalg;
mod presentation;
mod scan;
mod standard;

pub use character::{nested_decomposition, CharacterData, HeckeCharacter};
pub use integral::{
    integral_structure, integrality_criterion, presentation_torsion, reduce_character, reduce_module,
    IntegralStructure, IntegralityPoint, IntegralityReport, TorsionReport,
};
pub use presentation::{
    presentation_data, presentation_dimension, stabilized_presentation, standard_module_presentation,
    Presentation, PresentationData, StabilityReport,
};
pub use scan::{complementary_values, subquotient_scan, LineCharacter, ScanReport};
pub use standard::{
    action_elements, action_names, center_representatives, field_central_character, generating_set,
    standard_module_field, RelationReport, StandardModule,
};

#[cfg(test)]
mod tests;
