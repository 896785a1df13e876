//! Exact-arithmetic engine for S^1-equivariant localization from isolated fixed-point data.
//!
//! The layers, bottom up:
//! - [`algebra`]: rationals, polynomials, Laurent polynomials and rational functions in `u`;
//! - [`series`]: Laurent expansions at zero, infinity and rational points, and residue maps;
//! - [`fgl`]: formal group laws, Euler-series inversion and residue-axiom checks;
//! - [`localization`]: fixed-point models, closed pushforwards, the boundary map and the
//!   quantization/reduction comparison;
//! - [`models`]: built-in fixtures (projective spaces and products);
//! - [`expr`] and [`format`]: expression parsing and the JSON exchange formats.

pub mod algebra;
pub mod error;
pub mod expr;
pub mod fgl;
pub mod format;
pub mod localization;
pub mod models;
pub mod series;

pub use error::{Error, Result};
