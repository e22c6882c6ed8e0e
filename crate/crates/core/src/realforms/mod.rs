//! Numeric matrix realizations of classical real forms.

mod algebra;
mod cayley;
mod decomposition;
mod family;
mod form;
mod linalg;
mod roots;
mod verify;

pub use algebra::{cartan_decompose, MatrixAlgebra, Tolerances, TOLERANCE_RANGE};
pub use cayley::{cayley_chain, centralizer_dim, CayleyChain, CayleyStep};
pub use decomposition::{restricted_decomposition, RestrictedDatum, RestrictedSpace};
pub use family::{parse_family, standard_families, Family};
pub use form::{FormSummary, NumericFoliation, RealForm};
pub use roots::{full_roots, FullRoot, FullRootData, RootKind};
pub use verify::{adjoint_exp, nilpotent_exp, ruling_samples_numeric, verify_foliation_numeric};
