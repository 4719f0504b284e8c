//! Exact normal forms in the Kauffman bracket skein modules of the thickened
//! annulus `A^2 x S^1` and of `(beta,2)`-fibered tori.
//!
//! The crate works with arrow diagrams on the annulus. Crossingless diagrams
//! are encoded as words `l^n0 x(m1) l^n1 ... x(mk) l^nk` over two generator
//! families: `l`, a one-arrow circle bounding a disk, and `x(m)`, the core
//! curve carrying `m` arrows. Formal `Z[A,A^-1]`-linear combinations of these
//! words form a free module, and two rewriting engines reduce any combination
//! to its coordinates in a basis:
//!
//! * the annulus engine, onto `Sigma_c = { l^n, x(c) l^n x(c)^k, x(c+1) l^n x(c)^k }`
//!   for a chosen integer `c`;
//! * the fibered-torus engine, onto `Sigma'_nu = { l^n, x(nu) l^n }` with
//!   `nu = floor(beta/2)`.
//!
//! Diagrams with crossings enter through [`diagram`], which resolves Kauffman
//! states, interprets the resulting crossingless pictures as words, and hands
//! them to [`reduce`]. [`suites`] packages the identity grids and randomized
//! checks that pin the whole construction down.

pub mod diagram;
pub mod expr;
pub mod laurent;
pub mod polyfam;
pub mod reduce;
pub mod suites;
pub mod word;

mod guide;

pub use laurent::{Laurent, ParseError};
pub use polyfam::{ppoly, ppoly_k, qpoly, LambdaPoly};
pub use reduce::{check_identity, reduce_c, reduce_nu, ReduceError, Reducer, Space};
pub use word::{GammaWord, ModuleElement};
