//! Exact symbolic kernel for affine charts of ramified unitary local models.
//!
//! The crate is organized in layers:
//!
//! - [`coeff`], [`ring`], [`poly`], [`matrix`]: sparse multivariate polynomial
//!   arithmetic over the rationals or an odd prime field, monomial orders,
//!   and polynomial-matrix algebra (products, adjoints, minors).
//! - [`ideal`]: a Buchberger Gröbner engine with membership, equality,
//!   elimination, saturation, intersection and leading-term dimension.
//! - [`model`]: builders that realize the local-model, Krämer, splitting and
//!   blow-up charts as explicit ideals, together with component data,
//!   exceptional-divisor incidence presentations and lattice pairings.
//! - [`verify`]: structural checks (spin containment, chart presentations,
//!   special-fiber decompositions, flatness witnesses, semi-stable forms,
//!   blow-up chart isomorphisms, pairing identities) producing machine
//!   readable reports.
//! - [`oracle`]: brute-force finite-field point counting used to
//!   cross-validate the symbolic results.
//!
//! The crate is `no_std`-compatible (with `alloc`); I/O, the CLI and file
//! formats live in the companion `ulm-cli` crate.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod coeff;
pub mod error;
pub mod ideal;
pub mod matrix;
pub mod model;
pub mod oracle;
pub mod poly;
pub mod ring;
pub mod verify;

pub use coeff::CoeffDomain;
pub use error::KernelError;
pub use ideal::{Guard, Ideal};
pub use matrix::PolyMatrix;
pub use poly::Polynomial;
pub use ring::{MonomialOrder, PolyRing};
