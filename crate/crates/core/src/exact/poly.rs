//! Dense univariate polynomials over the rationals, with exact real-root
//! counting.
//!
//! Root counts drive the curve-intersection oracles, so they must be exact:
//! a polynomial is first reduced to its square-free part (dividing by
//! `gcd(p, p')`), then distinct real roots are counted by sign variations of
//! the Sturm chain. No numeric root finding is involved anywhere.

use num_traits::{One, Signed, Zero};
use std::fmt;

use super::rat::{sign, Rat};
use crate::error::{Error, Result};

/// Polynomial in one variable, coefficients ascending by degree.
///
/// Invariant: no trailing zero coefficients, so the zero polynomial is the
/// empty vector and `degree` is well defined for everything else.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniPoly {
    coeffs: Vec<Rat>,
}

/// Where to count distinct real roots.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RootInterval {
    WholeLine,
    /// Open interval `(a, b)`; empty when `a >= b`.
    Open(Rat, Rat),
}

impl UniPoly {
    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        UniPoly::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        UniPoly::from_coeffs(vec![c])
    }

    /// `c * x^deg`.
    pub fn monomial(c: Rat, deg: usize) -> Self {
        if c.is_zero() {
            return UniPoly::zero();
        }
        let mut coeffs = vec![Rat::zero(); deg + 1];
        coeffs[deg] = c;
        UniPoly { coeffs }
    }

    /// The identity polynomial `x`.
    pub fn x() -> Self {
        UniPoly::monomial(Rat::one(), 1)
    }

    /// Build from ascending coefficients, trimming trailing zeros.
    pub fn from_coeffs(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    /// Coefficient of `x^k` (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> Rat {
        self.coeffs.get(k).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coeff(&self) -> Option<&Rat> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            out.push(self.coeff(k) + other.coeff(k));
        }
        UniPoly::from_coeffs(out)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        UniPoly {
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }

    pub fn scale(&self, s: &Rat) -> Self {
        if s.is_zero() {
            return UniPoly::zero();
        }
        UniPoly {
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![Rat::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::from_coeffs(out)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = UniPoly::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return UniPoly::zero();
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * Rat::from_integer(k.into()))
            .collect();
        UniPoly::from_coeffs(coeffs)
    }

    /// Euclidean division: `self = q * div + r` with `deg r < deg div`.
    pub fn div_rem(&self, div: &Self) -> Result<(Self, Self)> {
        let dd = div.degree().ok_or(Error::ZeroPolynomial)?;
        let lc = div.leading_coeff().expect("nonzero divisor");
        let mut rem = self.coeffs.clone();
        if rem.len() < dd + 1 {
            return Ok((UniPoly::zero(), self.clone()));
        }
        let mut quot = vec![Rat::zero(); rem.len() - dd];
        while rem.len() >= dd + 1 {
            let k = rem.len() - 1 - dd;
            let factor = rem.last().expect("nonempty") / lc;
            quot[k] = factor.clone();
            for (i, c) in div.coeffs.iter().enumerate() {
                let t = c * &factor;
                rem[k + i] -= t;
            }
            debug_assert!(rem.last().expect("nonempty").is_zero());
            rem.pop();
            while rem.last().is_some_and(Zero::is_zero) {
                rem.pop();
            }
            if rem.len() < dd + 1 {
                break;
            }
        }
        Ok((UniPoly::from_coeffs(quot), UniPoly { coeffs: rem }))
    }

    /// Division known to be exact; panics if a remainder appears (that would
    /// mean a broken algebraic invariant upstream, e.g. in fraction-free
    /// elimination).
    pub fn exact_div(&self, div: &Self) -> Self {
        let (q, r) = self
            .div_rem(div)
            .expect("exact_div: division by zero polynomial");
        assert!(r.is_zero(), "exact_div left remainder {r}");
        q
    }

    /// Monic greatest common divisor (1 for coprime, 0 only if both are 0).
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).expect("nonzero divisor in gcd loop");
            a = b;
            b = r;
        }
        a.into_monic()
    }

    /// Scale so the leading coefficient is 1 (zero stays zero).
    pub fn into_monic(self) -> Self {
        match self.leading_coeff() {
            None => self,
            Some(lc) => {
                let inv = Rat::one() / lc;
                self.scale(&inv)
            }
        }
    }

    /// Square-free part: `p / gcd(p, p')`. Same distinct roots, all simple.
    pub fn square_free(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let d = self.derivative();
        if d.is_zero() {
            // Nonzero constant.
            return Ok(UniPoly::one());
        }
        let g = self.gcd(&d);
        Ok(self.exact_div(&g))
    }

    /// Number of *distinct* real roots in the interval, by square-free
    /// reduction followed by Sturm sign-variation counting.
    pub fn count_real_roots(&self, interval: &RootInterval) -> Result<usize> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let sf = self.square_free()?;
        if sf.degree() == Some(0) {
            return Ok(0);
        }
        let chain = sturm_chain(&sf);
        match interval {
            RootInterval::WholeLine => {
                let at_neg = variations(&chain, SturmPoint::NegInf);
                let at_pos = variations(&chain, SturmPoint::PosInf);
                Ok(at_neg - at_pos)
            }
            RootInterval::Open(a, b) => {
                if a >= b {
                    return Ok(0);
                }
                let va = variations(&chain, SturmPoint::At(a));
                let vb = variations(&chain, SturmPoint::At(b));
                // V(a) - V(b) counts roots in (a, b]; the square-free part has
                // only simple roots, so chop the endpoint off explicitly.
                let mut count = va - vb;
                if sf.eval(b).is_zero() {
                    count -= 1;
                }
                Ok(count)
            }
        }
    }

    /// Discriminant `b^2 - 4ac` of a degree-2 polynomial.
    pub fn discriminant_quadratic(&self) -> Result<Rat> {
        if self.degree() != Some(2) {
            return Err(Error::WrongDegree {
                expected: 2,
                got: self.degree(),
            });
        }
        let a = self.coeff(2);
        let b = self.coeff(1);
        let c = self.coeff(0);
        Ok(&b * &b - Rat::from_integer(4.into()) * a * c)
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " {} ", if c.is_negative() { "-" } else { "+" })?;
            } else if c.is_negative() {
                write!(f, "-")?;
            }
            let a = c.abs();
            match k {
                0 => write!(f, "{a}")?,
                _ => {
                    if !a.is_one() {
                        write!(f, "{a}*")?;
                    }
                    if k == 1 {
                        write!(f, "x")?;
                    } else {
                        write!(f, "x^{k}")?;
                    }
                }
            }
            first = false;
        }
        Ok(())
    }
}

enum SturmPoint<'a> {
    NegInf,
    PosInf,
    At(&'a Rat),
}

/// Sturm chain of a square-free polynomial: `p, p', -rem(...), ...` down to a
/// nonzero constant.
fn sturm_chain(p: &UniPoly) -> Vec<UniPoly> {
    let mut chain = vec![p.clone(), p.derivative()];
    loop {
        let n = chain.len();
        let (prev, last) = (&chain[n - 2], &chain[n - 1]);
        if last.is_zero() {
            chain.pop();
            break;
        }
        let (_, r) = prev.div_rem(last).expect("nonzero divisor in Sturm chain");
        if r.is_zero() {
            break;
        }
        chain.push(r.neg());
    }
    chain
}

/// Sign variations of the chain at a point (or at an infinity), zeros skipped.
fn variations(chain: &[UniPoly], at: SturmPoint) -> usize {
    let mut count = 0;
    let mut prev: i8 = 0;
    for p in chain {
        let s = match at {
            SturmPoint::At(x) => sign(&p.eval(x)),
            SturmPoint::PosInf => p.leading_coeff().map_or(0, sign),
            SturmPoint::NegInf => match (p.leading_coeff(), p.degree()) {
                (Some(lc), Some(d)) => {
                    let s = sign(lc);
                    if d % 2 == 0 {
                        s
                    } else {
                        -s
                    }
                }
                _ => 0,
            },
        };
        if s == 0 {
            continue;
        }
        if prev != 0 && s != prev {
            count += 1;
        }
        prev = s;
    }
    count
}
