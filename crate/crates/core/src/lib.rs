//! Exact Krull dimension of finitely presented modules over polynomial rings.
//!
//! The dimension of `M` over `D[x_1,…,x_n]` is found constructively: while
//! `M` is torsion over the current ring, a nonzero annihilating polynomial is
//! made monic in the last variable by an invertible change of variables and
//! `M` is rewritten as a finitely generated module over one variable fewer.
//! The number of variables left when `M` stops being torsion is its
//! dimension. Every answer is cross-checked against a Gröbner-basis oracle
//! that reads the dimension off leading-term ideals.
//!
//! The crate is `no_std` and only needs `alloc`.
#![no_std]

extern crate alloc;

pub mod autom;
pub mod catalog;
pub mod coeff;
pub mod error;
pub mod gb;
pub mod krull;
pub mod modpres;
pub mod nilrad;
pub mod poly;

pub use autom::{monicize, monicize_with, MonicStrategy, VarChange};
pub use coeff::{BaseField, Coeff, CoeffRing, CoeffValue};
pub use error::{Error, Result};
pub use gb::{FreeElem, GroebnerBasis, Ideal, Limits};
pub use krull::{Config, Dim, DimReport};
pub use modpres::{ModulePresentation, Torsion, TorsionProfile};
pub use poly::{parse_poly, Monomial, MonomialOrder, Poly};
