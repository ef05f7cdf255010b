//! Symmetry, reduction and conservation-law toolkit for the two-dimensional
//! porous-media population model
//!
//! ```text
//! φ_t = 2(φ_x² + φ_y²) + 2φ(φ_xx + φ_yy) − hφ^θ,   0 < θ < 1.
//! ```

pub mod conslaw;
pub mod liealg;
pub mod model;
pub mod numgrid;
pub mod solutions;
pub mod symexpr;

pub use symexpr::{Expr, ExprError};
