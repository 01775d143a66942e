//! Exact Schubert calculus for based loop groups and complete flag varieties.
//!
//! This crate computes, in exact rational arithmetic and for every simple Lie
//! type `A`–`G`:
//!
//! * structure constants of the Pontryagin product on the torus-equivariant
//!   homology of a based loop group ΩK, indexed by the length-minimal coset
//!   representatives `W_af^-` of the affine Weyl group (the [`pontryagin`]
//!   module);
//! * torus-equivariant quantum Schubert structure constants and 3-pointed
//!   genus-zero Gromov–Witten invariants of the complete flag variety `G/B`
//!   (the [`quantum`] module).
//!
//! The bridge between the two is exact and combinatorial: a quantum constant
//! of `G/B` equals a signed Pontryagin constant of ΩK once the finite Weyl
//! elements are pushed into `W_af^-` by a sufficiently antidominant
//! translation.  Everything in turn reduces to two families of coefficients
//! attached to one reduced word in the affine Weyl group — rational-function
//! coefficients `c_{x,y}` whose denominators are products of real roots, and
//! polynomial coefficients `d_{y,x}` — computed here by dynamic programming
//! over word positions (the [`coeffs`] module) and cross-checked against
//! naive exponential enumeration and closed-form identities.
//!
//! # Layout
//!
//! | module          | contents                                                         |
//! |-----------------|------------------------------------------------------------------|
//! | [`root_system`] | Cartan data, roots/coroots, finite Weyl group                    |
//! | [`affine`]      | affine Weyl group, length, Bruhat order, coset representatives   |
//! | [`symbolic`]    | exact polynomials and rational forms in `α₁…α_n, δ`              |
//! | [`coeffs`]      | the `c`/`d` coefficient engine with caching                      |
//! | [`pontryagin`]  | loop-homology products and cohomology variants                   |
//! | [`quantum`]     | (equivariant) quantum products and Gromov–Witten invariants      |
//! | [`selftest`]    | the acceptance suite shared by `cargo test` and the CLI          |
//!
//! # A taste
//!
//! ```
//! use schub::coeffs::Engine;
//! use schub::quantum::quantum_product;
//! use schub::root_system::RootSystem;
//! use std::sync::Arc;
//!
//! // σ^{s1 s2} ⋆ σ^{s1 s2 s1} = q1 q2 σ^{s2} in the flag variety of type A2.
//! let rs = Arc::new(RootSystem::build("A2".parse()?)?);
//! let engine = Engine::new(rs.clone());
//! let u = rs.weyl_from_word(&[1, 2])?;
//! let v = rs.weyl_from_word(&[1, 2, 1])?;
//! let (product, _choice) = quantum_product(&engine, &u, &v)?;
//! let rows = product.rows(&rs);
//! assert_eq!(rows.len(), 1);
//! assert_eq!(rows[0].q_exponents, vec![1, 1]);
//! assert_eq!(rows[0].w_word, vec![2]);
//! assert_eq!(rows[0].coefficient.to_string(), "1");
//! # Ok::<(), Box<dyn std::error::Error>>(())
//! ```

pub mod affine;
pub mod coeffs;
pub mod pontryagin;
pub mod quantum;
pub mod root_system;
pub mod selftest;
pub mod symbolic;

mod book;

/// Errors shared by every module.
///
/// The split matters to callers: *input* errors (bad type strings, malformed
/// words, out-of-range indices) are recoverable and map to usage mistakes;
/// [`Error::BoundExceeded`] is a clean refusal to start a computation whose
/// enumeration would outgrow the configured length bound; and
/// [`Error::Inconsistency`] means an internal invariant failed — a value that
/// the theory guarantees to be polynomial or constant was not — and should be
/// treated as a bug, never as a value.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("unrecognized Lie type `{0}`: expected a family letter A..G followed by a rank, e.g. `A2`, `B3`, `G2`")]
    BadLieType(String),
    #[error("rank {rank} is not admissible for family {family}")]
    BadRank { family: char, rank: usize },
    #[error("reflection index {index} out of range for rank {rank}")]
    IndexOutOfRange { index: usize, rank: usize },
    #[error("coordinate vector has length {got}, expected {want}")]
    DimensionMismatch { got: usize, want: usize },
    #[error("{0} is not a root of this system")]
    NotARoot(String),
    #[error("word {0:?} is not reduced")]
    NotReduced(Vec<usize>),
    #[error("invalid element: {0}")]
    BadElement(String),
    #[error("length bound exceeded while {what}: needs {needed}, bound is {bound}")]
    BoundExceeded {
        what: &'static str,
        needed: usize,
        bound: usize,
    },
    #[error("internal inconsistency: {0}")]
    Inconsistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;
