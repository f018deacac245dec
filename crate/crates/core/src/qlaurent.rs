//! Integer-coefficient Laurent polynomials in one variable `q`.
//!
//! The q-analogues in this crate live in `Z[q, q^-1]`: most are ordinary
//! polynomials with nonnegative coefficients, but a few carry a `q^-1` term
//! or signed coefficients, so the general Laurent form is the base type.
//! Coefficients are arbitrary-precision integers and all arithmetic is
//! exact — identity checks reduce to structural equality of canonical forms.
//!
//! Besides ring arithmetic the module provides the two standard q-products
//! used throughout, `(-q;q)_n = (1+q)(1+q^2)...(1+q^n)` and
//! `(q;q)_n = (1-q)(1-q^2)...(1-q^n)`, and Gaussian binomial coefficients
//! computed by the Pascal recurrence (no polynomial division anywhere).

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// An integer-coefficient Laurent polynomial in `q`.
///
/// Stored as the lowest exponent present (`offset`, possibly negative)
/// plus a dense coefficient vector. The representation is canonical: the
/// zero polynomial is the empty coefficient vector with offset 0, and a
/// nonzero polynomial's first and last stored coefficients are nonzero.
/// Derived equality is therefore mathematical equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    offset: i64,
    coeffs: Vec<BigInt>,
}

impl LaurentPoly {
    /// The zero polynomial.
    pub fn zero() -> Self {
        Self::default()
    }

    /// The constant polynomial 1.
    pub fn one() -> Self {
        Self::monomial(0)
    }

    /// The monomial `q^exp` with coefficient 1.
    pub fn monomial(exp: i64) -> Self {
        Self::term(1, exp)
    }

    /// The single term `coeff * q^exp` (zero if `coeff` is zero).
    pub fn term(coeff: impl Into<BigInt>, exp: i64) -> Self {
        Self::from_coeffs(exp, vec![coeff.into()])
    }

    /// Builds a polynomial whose coefficient of `q^(offset + i)` is
    /// `coeffs[i]`, trimming to canonical form.
    pub fn from_coeffs(offset: i64, coeffs: Vec<BigInt>) -> Self {
        let mut p = LaurentPoly { offset, coeffs };
        p.canonicalize();
        p
    }

    /// Builds a polynomial from `(exponent, coefficient)` terms; repeated
    /// exponents are summed.
    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, BigInt)>,
    {
        let mut acc: std::collections::BTreeMap<i64, BigInt> = std::collections::BTreeMap::new();
        for (e, c) in terms {
            let slot = acc.entry(e).or_insert_with(BigInt::zero);
            *slot += c;
        }
        match acc.keys().next().copied() {
            None => Self::zero(),
            Some(lo) => {
                let hi = *acc.keys().next_back().unwrap();
                let mut coeffs = vec![BigInt::zero(); (hi - lo + 1) as usize];
                for (e, c) in acc {
                    coeffs[(e - lo) as usize] = c;
                }
                Self::from_coeffs(lo, coeffs)
            }
        }
    }

    fn canonicalize(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
        let leading_zeros = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if leading_zeros > 0 {
            self.coeffs.drain(..leading_zeros);
            self.offset += leading_zeros as i64;
        }
        if self.coeffs.is_empty() {
            self.offset = 0;
        }
    }

    /// True for the zero polynomial.
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Lowest exponent with a nonzero coefficient, `None` for zero.
    pub fn min_exp(&self) -> Option<i64> {
        (!self.is_zero()).then_some(self.offset)
    }

    /// Highest exponent with a nonzero coefficient, `None` for zero.
    pub fn max_exp(&self) -> Option<i64> {
        (!self.is_zero()).then(|| self.offset + self.coeffs.len() as i64 - 1)
    }

    /// The coefficient of `q^exp`.
    pub fn coeff(&self, exp: i64) -> BigInt {
        let idx = exp - self.offset;
        if idx < 0 || idx >= self.coeffs.len() as i64 {
            BigInt::zero()
        } else {
            self.coeffs[idx as usize].clone()
        }
    }

    /// The polynomial multiplied by `q^exp`.
    pub fn shifted(&self, exp: i64) -> Self {
        if self.is_zero() {
            Self::zero()
        } else {
            LaurentPoly {
                offset: self.offset + exp,
                coeffs: self.coeffs.clone(),
            }
        }
    }

    /// The polynomial multiplied by the integer `c`.
    pub fn scaled(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentPoly {
            offset: self.offset,
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// The value at `q = 1`, i.e. the sum of all coefficients.
    pub fn eval_at_one(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    /// True if every coefficient is nonnegative.
    pub fn has_nonneg_coeffs(&self) -> bool {
        self.coeffs.iter().all(|c| !c.is_negative())
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;

    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let lo = self.offset.min(rhs.offset);
        let hi = (self.offset + self.coeffs.len() as i64).max(rhs.offset + rhs.coeffs.len() as i64);
        let mut coeffs = vec![BigInt::zero(); (hi - lo) as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[(self.offset - lo) as usize + i] += c;
        }
        for (i, c) in rhs.coeffs.iter().enumerate() {
            coeffs[(rhs.offset - lo) as usize + i] += c;
        }
        LaurentPoly::from_coeffs(lo, coeffs)
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;

    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        LaurentPoly::from_coeffs(self.offset + rhs.offset, coeffs)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;

    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            offset: self.offset,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;

    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self + &(-rhs)
    }
}

macro_rules! forward_owned_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: LaurentPoly) -> LaurentPoly {
                $trait::$method(&self, &rhs)
            }
        }
        impl $trait<&LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: &LaurentPoly) -> LaurentPoly {
                $trait::$method(&self, rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl fmt::Display for LaurentPoly {
    /// Renders as `c*q^e` terms in increasing exponent order joined by
    /// ` + `, e.g. `1*q^-1 + 2*q^0 + -1*q^3`; the zero polynomial is `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{}*q^{}", c, self.offset + i as i64)?;
        }
        Ok(())
    }
}

/// `(-q;q)_n = (1+q)(1+q^2)...(1+q^n)`, the generating function of subsets
/// of `{1..n}` by element sum; `n = 0` gives 1.
pub fn neg_q_pochhammer(n: usize) -> LaurentPoly {
    let mut p = LaurentPoly::one();
    for i in 1..=n {
        let factor = &LaurentPoly::one() + &LaurentPoly::monomial(i as i64);
        p = &p * &factor;
    }
    p
}

/// `(q;q)_n = (1-q)(1-q^2)...(1-q^n)`; `n = 0` gives 1.
pub fn q_pochhammer(n: usize) -> LaurentPoly {
    let mut p = LaurentPoly::one();
    for i in 1..=n {
        let factor = &LaurentPoly::one() - &LaurentPoly::monomial(i as i64);
        p = &p * &factor;
    }
    p
}

/// The Gaussian binomial coefficient `[n choose k]_q`.
///
/// Computed bottom-up by the Pascal recurrence
/// `[m j] = [m-1 j-1] + q^j [m-1 j]`, starting from `[0 0] = 1`, so no
/// polynomial division is ever needed. Out-of-range `k` (negative or
/// greater than `n`) gives the zero polynomial.
pub fn q_binomial(n: usize, k: isize) -> LaurentPoly {
    if k < 0 || k as usize > n {
        return LaurentPoly::zero();
    }
    let k = k as usize;
    let mut row = vec![LaurentPoly::one()];
    for m in 1..=n {
        let mut next = Vec::with_capacity(m + 1);
        for j in 0..=m {
            let from_left = if j > 0 { row[j - 1].clone() } else { LaurentPoly::zero() };
            let from_up = if j < m {
                row[j].shifted(j as i64)
            } else {
                LaurentPoly::zero()
            };
            next.push(&from_left + &from_up);
        }
        row = next;
    }
    row.swap_remove(k)
}

/// The ordinary binomial coefficient `C(n, k)` as a big integer.
pub fn binomial(n: usize, k: isize) -> BigInt {
    if k < 0 || k as usize > n {
        return BigInt::zero();
    }
    let k = (k as usize).min(n - k as usize);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}
