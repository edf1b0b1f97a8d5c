//! Dense univariate polynomials with ascending coefficients.

use std::fmt;
use std::ops::{Add, Mul};

use num_traits::{One, PrimInt, Signed, Zero};
use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct Poly<T> {
    coeffs: Vec<T>,
}

impl<T: PrimInt> Poly<T> {
    /// Trailing zero coefficients are trimmed.
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn constant(c: T) -> Self {
        Self::new(vec![c])
    }

    pub fn one() -> Self {
        Self::constant(T::one())
    }

    /// `q^j + 1`.
    pub fn q_power_plus_one(j: usize) -> Self {
        let mut c = vec![T::zero(); j + 1];
        c[0] = c[0] + T::one();
        c[j] = c[j] + T::one();
        Self::new(c)
    }

    /// `∏_{j=1}^{n} (q^j + 1)`.
    pub fn q_product(n: usize) -> Self {
        (1..=n).fold(Self::one(), |acc, j| acc * Self::q_power_plus_one(j))
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, x: T) -> T {
        self.coeffs
            .iter()
            .rev()
            .fold(T::zero(), |acc, &c| acc * x + c)
    }

    pub fn scale(&self, c: T) -> Self {
        Self::new(self.coeffs.iter().map(|&a| a * c).collect())
    }

    /// Coefficientwise exact division by a non-zero constant.
    pub fn div_exact(&self, c: T) -> Option<Self> {
        if c.is_zero() || self.coeffs.iter().any(|&a| !(a % c).is_zero()) {
            return None;
        }
        Some(Self::new(self.coeffs.iter().map(|&a| a / c).collect()))
    }
}

impl<T: PrimInt + Signed> Poly<T> {
    pub fn has_nonnegative_coeffs(&self) -> bool {
        self.coeffs.iter().all(|c| !c.is_negative())
    }
}

impl<T: PrimInt> Add for Poly<T> {
    type Output = Poly<T>;

    fn add(self, rhs: Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let get = |v: &[T], i: usize| v.get(i).copied().unwrap_or_else(T::zero);
        Poly::new(
            (0..n)
                .map(|i| get(&self.coeffs, i) + get(&rhs.coeffs, i))
                .collect(),
        )
    }
}

impl<T: PrimInt> Mul for Poly<T> {
    type Output = Poly<T>;

    fn mul(self, rhs: Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Poly::new(Vec::new());
        }
        let mut out = vec![T::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j] + a * b;
            }
        }
        Poly::new(out)
    }
}

impl<T: PrimInt> Zero for Poly<T> {
    fn zero() -> Self {
        Poly::new(Vec::new())
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl<T: PrimInt> One for Poly<T> {
    fn one() -> Self {
        Poly::constant(T::one())
    }
}

impl<T: PrimInt + fmt::Display> fmt::Display for Poly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        let mut terms = Vec::new();
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let coeff = if c.is_one() && i > 0 {
                String::new()
            } else {
                c.to_string()
            };
            terms.push(match i {
                0 => coeff,
                1 => format!("{coeff}q"),
                _ => format!("{coeff}q^{i}"),
            });
        }
        f.write_str(&terms.join(" + "))
    }
}
