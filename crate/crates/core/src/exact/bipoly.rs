//! Sparse bivariate polynomials over the rationals, plus resultants.
//!
//! Resultants eliminate one variable from a pair of curves: the resultant of
//! `f` and `g` with respect to `y` is a univariate polynomial in `x` that
//! vanishes exactly where the two curves share a `y`-root (or where both
//! leading coefficients vanish). We compute it as the determinant of the
//! Sylvester matrix, evaluated by fraction-free Gaussian elimination
//! (Bareiss) over the polynomial ring in the surviving variable — every
//! division the algorithm performs is exact, so the result stays in the ring.
//! Degrees here are tiny (at most 8), so the dense determinant is the right
//! tool.

use num_traits::Zero;
use std::collections::BTreeMap;

use super::poly::UniPoly;
use super::rat::Rat;
use crate::error::{Error, Result};

/// Which variable an operation refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Var {
    X,
    Y,
}

/// Polynomial in `x` and `y`; key `(i, j)` holds the coefficient of
/// `x^i * y^j`. Zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BiPoly {
    terms: BTreeMap<(u32, u32), Rat>,
}

impl BiPoly {
    pub fn zero() -> Self {
        BiPoly::default()
    }

    pub fn from_terms(terms: impl IntoIterator<Item = ((u32, u32), Rat)>) -> Self {
        let mut p = BiPoly::zero();
        for ((i, j), c) in terms {
            p.add_term(i, j, c);
        }
        p
    }

    pub fn add_term(&mut self, i: u32, j: u32, c: Rat) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry((i, j)).or_insert_with(Rat::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&(i, j));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &Rat)> {
        self.terms.iter()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&(i, j), c) in &other.terms {
            out.add_term(i, j, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        BiPoly {
            terms: self
                .terms
                .iter()
                .map(|(&k, c)| (k, -c.clone()))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = BiPoly::zero();
        for (&(i1, j1), c1) in &self.terms {
            for (&(i2, j2), c2) in &other.terms {
                out.add_term(i1 + i2, j1 + j2, c1 * c2);
            }
        }
        out
    }

    pub fn eval(&self, x: &Rat, y: &Rat) -> Rat {
        // Term-by-term with memoized powers; degrees are small.
        let dx = self.degree_in(Var::X).unwrap_or(0) as usize;
        let dy = self.degree_in(Var::Y).unwrap_or(0) as usize;
        let xp = powers(x, dx);
        let yp = powers(y, dy);
        let mut acc = Rat::zero();
        for (&(i, j), c) in &self.terms {
            acc += c * &xp[i as usize] * &yp[j as usize];
        }
        acc
    }

    /// Highest exponent of `var`, `None` for the zero polynomial.
    pub fn degree_in(&self, var: Var) -> Option<u32> {
        self.terms
            .keys()
            .map(|&(i, j)| match var {
                Var::X => i,
                Var::Y => j,
            })
            .max()
    }

    /// Coefficients with respect to `var`: entry `k` is the coefficient of
    /// `var^k` as a univariate polynomial in the other variable.
    pub fn coeffs_in(&self, var: Var) -> Vec<UniPoly> {
        let deg = match self.degree_in(var) {
            None => return Vec::new(),
            Some(d) => d as usize,
        };
        let mut out = vec![Vec::new(); deg + 1];
        for (&(i, j), c) in &self.terms {
            let (k, other) = match var {
                Var::X => (i as usize, j as usize),
                Var::Y => (j as usize, i as usize),
            };
            if out[k].len() < other + 1 {
                out[k].resize(other + 1, Rat::zero());
            }
            out[k][other] = c.clone();
        }
        out.into_iter().map(UniPoly::from_coeffs).collect()
    }

    /// Substitute a univariate polynomial (in the *other* variable) for
    /// `var`; the result is univariate in the other variable.
    pub fn substitute(&self, var: Var, value: &UniPoly) -> UniPoly {
        let mut acc = UniPoly::zero();
        for (k, coeff) in self.coeffs_in(var).into_iter().enumerate() {
            acc = acc.add(&coeff.mul(&value.pow(k as u32)));
        }
        acc
    }
}

fn powers(x: &Rat, up_to: usize) -> Vec<Rat> {
    let mut v = Vec::with_capacity(up_to + 1);
    v.push(Rat::from_integer(1.into()));
    for k in 1..=up_to {
        let next = &v[k - 1] * x;
        v.push(next);
    }
    v
}

/// Resultant of `f` and `g` with respect to `eliminate`; the output is
/// univariate in the surviving variable.
///
/// Errors if either polynomial is zero or has degree 0 in the eliminated
/// variable (the Sylvester matrix would be degenerate).
pub fn resultant(f: &BiPoly, g: &BiPoly, eliminate: Var) -> Result<UniPoly> {
    let df = f.degree_in(eliminate).unwrap_or(0) as usize;
    let dg = g.degree_in(eliminate).unwrap_or(0) as usize;
    if f.is_zero() || g.is_zero() || df == 0 || dg == 0 {
        return Err(Error::DegenerateResultant {
            reason: format!(
                "inputs must both have positive degree in the eliminated variable (got {df} and {dg})"
            ),
        });
    }
    let fc = f.coeffs_in(eliminate);
    let gc = g.coeffs_in(eliminate);
    let n = df + dg;
    let mut m = vec![vec![UniPoly::zero(); n]; n];
    // dg staggered rows of f's coefficients (highest degree first), then df
    // rows of g's.
    for r in 0..dg {
        for t in 0..=df {
            m[r][r + t] = fc[df - t].clone();
        }
    }
    for r in 0..df {
        for t in 0..=dg {
            m[dg + r][r + t] = gc[dg - t].clone();
        }
    }
    Ok(bareiss_determinant(m))
}

/// Determinant by Bareiss fraction-free elimination; entries live in the
/// polynomial ring and every division is exact.
fn bareiss_determinant(mut m: Vec<Vec<UniPoly>>) -> UniPoly {
    let n = m.len();
    debug_assert!(m.iter().all(|row| row.len() == n));
    if n == 0 {
        return UniPoly::one();
    }
    let mut sign_flip = false;
    let mut prev_pivot = UniPoly::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign_flip = !sign_flip;
                }
                None => return UniPoly::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = m[k][k].mul(&m[i][j]).sub(&m[i][k].mul(&m[k][j]));
                m[i][j] = num.exact_div(&prev_pivot);
            }
            m[i][k] = UniPoly::zero();
        }
        prev_pivot = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if sign_flip {
        det.neg()
    } else {
        det
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat::rat_int;

    fn t(i: u32, j: u32, c: i64) -> ((u32, u32), Rat) {
        ((i, j), rat_int(c))
    }

    /// Equality up to a nonzero scalar, for resultants pinned only up to
    /// sign/scaling conventions.
    fn proportional(a: &UniPoly, b: &UniPoly) -> bool {
        match (a.degree(), b.degree()) {
            (None, None) => true,
            (Some(da), Some(db)) if da == db => {
                let la = a.leading_coeff().unwrap();
                let lb = b.leading_coeff().unwrap();
                a.scale(&(lb / la)) == *b
            }
            _ => false,
        }
    }

    #[test]
    fn arithmetic_and_eval() {
        // f = x^2 + 2xy - 3
        let f = BiPoly::from_terms([t(2, 0, 1), t(1, 1, 2), t(0, 0, -3)]);
        assert_eq!(f.eval(&rat_int(2), &rat_int(5)), rat_int(4 + 20 - 3));
        assert_eq!(f.degree_in(Var::X), Some(2));
        assert_eq!(f.degree_in(Var::Y), Some(1));
        assert!(f.sub(&f).is_zero());
        let g = BiPoly::from_terms([t(0, 1, 1), t(1, 0, 1)]); // x + y
        let fg = f.mul(&g);
        assert_eq!(
            fg.eval(&rat_int(2), &rat_int(5)),
            f.eval(&rat_int(2), &rat_int(5)) * rat_int(7)
        );
    }

    #[test]
    fn cancellation_drops_terms() {
        let mut f = BiPoly::zero();
        f.add_term(1, 1, rat_int(4));
        f.add_term(1, 1, rat_int(-4));
        assert!(f.is_zero());
    }

    #[test]
    fn substitution_reduces_to_univariate() {
        // f(x, y) = x^2 - y^2; y := x + 1 gives -2x - 1.
        let f = BiPoly::from_terms([t(2, 0, 1), t(0, 2, -1)]);
        let line = UniPoly::from_coeffs(vec![rat_int(1), rat_int(1)]);
        let s = f.substitute(Var::Y, &line);
        assert_eq!(s, UniPoly::from_coeffs(vec![rat_int(-1), rat_int(-2)]));
    }

    #[test]
    fn resultant_of_crossing_lines() {
        // res_y(x - y, x + y) = 2x up to sign.
        let f = BiPoly::from_terms([t(1, 0, 1), t(0, 1, -1)]);
        let g = BiPoly::from_terms([t(1, 0, 1), t(0, 1, 1)]);
        let r = resultant(&f, &g, Var::Y).unwrap();
        let expected = UniPoly::from_coeffs(vec![rat_int(0), rat_int(2)]);
        assert!(proportional(&r, &expected), "got {r}");
    }

    #[test]
    fn resultant_circle_and_axis() {
        // res_y(x^2 + y^2 - 1, y) = x^2 - 1 up to sign/scalar.
        let circle = BiPoly::from_terms([t(2, 0, 1), t(0, 2, 1), t(0, 0, -1)]);
        let axis = BiPoly::from_terms([t(0, 1, 1)]);
        let r = resultant(&circle, &axis, Var::Y).unwrap();
        let expected = UniPoly::from_coeffs(vec![rat_int(-1), rat_int(0), rat_int(1)]);
        assert!(proportional(&r, &expected), "got {r}");
    }

    #[test]
    fn resultant_circle_and_diagonal() {
        // res_y(x^2 + y^2 - 1, x - y) = 2x^2 - 1 up to sign/scalar.
        let circle = BiPoly::from_terms([t(2, 0, 1), t(0, 2, 1), t(0, 0, -1)]);
        let diag = BiPoly::from_terms([t(1, 0, 1), t(0, 1, -1)]);
        let r = resultant(&circle, &diag, Var::Y).unwrap();
        let expected = UniPoly::from_coeffs(vec![rat_int(-1), rat_int(0), rat_int(2)]);
        assert!(proportional(&r, &expected), "got {r}");
    }

    #[test]
    fn resultant_rejects_degenerate_inputs() {
        let constant = BiPoly::from_terms([t(1, 0, 1)]); // x: degree 0 in y
        let line = BiPoly::from_terms([t(0, 1, 1)]);
        assert!(matches!(
            resultant(&constant, &line, Var::Y),
            Err(Error::DegenerateResultant { .. })
        ));
        assert!(resultant(&BiPoly::zero(), &line, Var::Y).is_err());
    }

    #[test]
    fn resultant_detects_common_roots_under_specialization() {
        // f and g share the point (x0, y0) = (3, 2); res_y must vanish at 3.
        // f = (y - 2) * (x + y) + (x - 3) * y, g = (y - 2) * 1 + (x - 3) * (y + 5)
        let y_minus = BiPoly::from_terms([t(0, 1, 1), t(0, 0, -2)]);
        let x_minus = BiPoly::from_terms([t(1, 0, 1), t(0, 0, -3)]);
        let f = y_minus
            .mul(&BiPoly::from_terms([t(1, 0, 1), t(0, 1, 1)]))
            .add(&x_minus.mul(&BiPoly::from_terms([t(0, 1, 1)])));
        let g = y_minus.add(&x_minus.mul(&BiPoly::from_terms([t(0, 1, 1), t(0, 0, 5)])));
        let r = resultant(&f, &g, Var::Y).unwrap();
        assert!(r.eval(&rat_int(3)).is_zero(), "resultant {r} at x=3");
        assert!(!r.is_zero());
    }
}
