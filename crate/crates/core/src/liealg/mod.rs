//! Exact Chevalley-basis engine for split real forms and complex algebras viewed as real ones.

mod chevalley;
mod csa;
mod orbit;
mod structure;
mod verify;

pub use csa::{
    cayley_csa, centralizer_dim, chamber_element, iwasawa_n, killing_dual, killing_norm2, regular_element,
    regular_element_from, rho_check, CsaDescriptor, PositiveSystem,
};
pub use orbit::{darboux_basis, is_ad_nilpotent, kirillov_form, nilpotent_ad_orbit, DarbouxBasis, DarbouxPair};
pub use structure::{chevalley_basis, BasisLabel, Element, FormMode, StructureConstants};
pub use verify::{
    foliate_exact, restricted_roots, ruling_samples, verify_foliation, ExactFoliation, VerifyOptions,
    RULING_RANDOM_SAMPLES,
};
