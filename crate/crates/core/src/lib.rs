//! Generalized Weierstrass semigroups `Ĥ(Q)` of a curve at `m` rational
//! points, represented by a finite [`Description`]: the genus, the period
//! lattice `Θ(Q)`, and the absolute maximal elements in the fundamental
//! region `C`.
//!
//! From that data the crate computes Riemann-Roch dimensions `ℓ(α)`,
//! membership, maximal and absolute maximal elements, box truncations of the
//! Poincaré series and its relatives, the semigroup polynomial, and symmetry
//! certificates, and checks the functional equations these satisfy.
//!
//! Coordinates are exact `i64`. Inputs are bounded by [`COORD_LIMIT`].
//! Indices into tuples are 0-based in the API.
//!
//! ```
//! use gws_core::{hermitian_description, IntTuple, Semigroup};
//!
//! let sg = Semigroup::new(hermitian_description(3).unwrap());
//! assert_eq!(sg.ell(&IntTuple::from([2, 2])), 2);
//! assert!(sg.is_maximal(&IntTuple::from([3, -1])));
//! ```

pub mod backends;
pub mod description;
pub mod error;
pub mod lattice;
pub mod semigroup;
pub mod series;
pub mod tuple;
pub mod validate;
pub mod verify;

pub use backends::{
    cross_validate, cross_validation_failure, genus0_description, genus0_ell,
    hermitian_description, hermitian_ell, Genus0Model, HermitianTwoPointModel, MonomialExponent,
};
pub use description::Description;
pub use error::{Error, Result};
pub use lattice::{IntBox, Lattice};
pub use semigroup::{NablaQuery, RegionClassification, Semigroup, TwoPointProfile};
pub use series::{
    check_qp_equation, check_reconstruction, check_symmetry_equations, coeff_d, coeff_p,
    coeff_p_index, coeff_q, semigroup_polynomial, series_on_box, symmetry_report, BoxSeries,
    SemigroupPolynomial, SeriesKind, SymmetryReport,
};
pub use tuple::{lub, unit_tuple, IndexSet, IntTuple, COORD_LIMIT, MAX_POINTS};
pub use validate::{top_degree_witness, validate_description, Violation};
pub use verify::{verify, CheckOutcome, CheckStatus, VerificationReport};
