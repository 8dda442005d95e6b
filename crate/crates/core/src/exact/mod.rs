//! Exact algebra substrate: rational scalars, univariate and bivariate
//! polynomials, resultants, and real-root counting.

mod bipoly;
mod poly;
mod rat;

pub use bipoly::{resultant, BiPoly, Var};
pub use poly::{RootInterval, UniPoly};
pub use rat::{
    big_gcd, ceil_log2, floor_log2, parse_rat, rat, rat_int, rat_sqrt, rat_to_f64, sign,
    small_int, Rat,
};
