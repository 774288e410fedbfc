//! Truncated formal power series in t with coefficients in Q[λ].
//!
//! A series of order `M` keeps the raw coefficients of t⁰…t^{M−1}. EGF
//! normalisation happens only at extraction time via [`Series::egf_coefficient`].

use num_bigint::BigInt;
use serde::de::{self, Deserializer};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{falling_lambda, log_coeff, Poly};
use crate::rational::{factorial, int, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Series {
    order: usize,
    coeffs: Vec<Poly>,
}

#[derive(Deserialize)]
struct RawSeries {
    order: usize,
    coeffs: Vec<Poly>,
}

impl<'de> Deserialize<'de> for Series {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = RawSeries::deserialize(deserializer)?;
        if raw.coeffs.len() != raw.order {
            return Err(de::Error::custom(format!(
                "series order {} but {} coefficients",
                raw.order,
                raw.coeffs.len()
            )));
        }
        Series::new(raw.coeffs).map_err(de::Error::custom)
    }
}

fn inv_factorial(n: usize) -> Rational {
    Rational::new(BigInt::from(1), factorial(n))
}

impl Series {
    pub fn new(coeffs: Vec<Poly>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::ZeroOrder);
        }
        Ok(Series {
            order: coeffs.len(),
            coeffs,
        })
    }

    pub fn zero(order: usize) -> Result<Self> {
        Self::new(vec![Poly::zero(); order])
    }

    pub fn one(order: usize) -> Result<Self> {
        let mut s = Self::zero(order)?;
        s.coeffs[0] = Poly::one();
        Ok(s)
    }

    /// The series `t` (truncated to `[0]` at order 1).
    pub fn t(order: usize) -> Result<Self> {
        let mut s = Self::zero(order)?;
        if order > 1 {
            s.coeffs[1] = Poly::one();
        }
        Ok(s)
    }

    /// `e_λ^x(t) = Σ (x)_{n,λ} tⁿ/n!`
    pub fn e_lambda(x: &Rational, order: usize) -> Result<Self> {
        Self::new(
            (0..order)
                .map(|n| falling_lambda(x, n).scale(&inv_factorial(n)))
                .collect(),
        )
    }

    /// `log_λ(1+t) = Σ_{n≥1} c_n(λ) tⁿ/n!`
    pub fn log_lambda(order: usize) -> Result<Self> {
        Self::new(
            (0..order)
                .map(|n| match n {
                    0 => Ok(Poly::zero()),
                    _ => log_coeff(n).map(|c| c.scale(&inv_factorial(n))),
                })
                .collect::<Result<Vec<_>>>()?,
        )
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeffs(&self) -> &[Poly] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> Result<&Poly> {
        self.coeffs.get(n).ok_or(Error::CoefficientOutOfRange {
            index: n,
            order: self.order,
        })
    }

    /// `n! · [tⁿ]`, the EGF-normalised coefficient.
    pub fn egf_coefficient(&self, n: usize) -> Result<Poly> {
        let raw = self.coeff(n)?;
        Ok(raw.scale(&Rational::from_integer(factorial(n))))
    }

    /// Replaces the coefficient of `tⁿ`; indices at or beyond the order are an error.
    pub fn set_coeff(&mut self, n: usize, value: Poly) -> Result<()> {
        let order = self.order;
        let slot = self
            .coeffs
            .get_mut(n)
            .ok_or(Error::CoefficientOutOfRange { index: n, order })?;
        *slot = value;
        Ok(())
    }

    fn check_order(&self, other: &Series) -> Result<()> {
        if self.order != other.order {
            return Err(Error::OrderMismatch {
                left: self.order,
                right: other.order,
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Series) -> Result<Series> {
        self.check_order(other)?;
        Self::new(
            self.coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn try_sub(&self, other: &Series) -> Result<Series> {
        self.check_order(other)?;
        Self::new(
            self.coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        )
    }

    pub fn try_mul(&self, other: &Series) -> Result<Series> {
        self.check_order(other)?;
        let m = self.order;
        let mut out = vec![Poly::zero(); m];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..m - i].iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += &(a * b);
                }
            }
        }
        Self::new(out)
    }

    pub fn neg(&self) -> Series {
        Series {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn scale(&self, c: &Poly) -> Series {
        Series {
            order: self.order,
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn scale_rational(&self, c: &Rational) -> Series {
        Series {
            order: self.order,
            coeffs: self.coeffs.iter().map(|a| a.scale(c)).collect(),
        }
    }

    /// `self^k` by repeated squaring.
    pub fn pow(&self, mut k: usize) -> Series {
        let mut acc = Self::one(self.order).expect("order is at least 1");
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.try_mul(&base).expect("equal orders");
            }
            k >>= 1;
            if k > 0 {
                base = base.try_mul(&base).expect("equal orders");
            }
        }
        acc
    }

    /// `exp(self)` from `f' = a'·f`, i.e. `n·f_n = Σ_{j=1}^{n} j·a_j·f_{n−j}`.
    pub fn exp(&self) -> Result<Series> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::NonzeroConstantTerm { op: "series_exp" });
        }
        let m = self.order;
        let mut f: Vec<Poly> = Vec::with_capacity(m);
        f.push(Poly::one());
        for n in 1..m {
            let mut acc = Poly::zero();
            for j in 1..=n {
                let a = &self.coeffs[j];
                if !a.is_zero() {
                    acc += &(a * &f[n - j]).scale(&int(j as i64));
                }
            }
            f.push(acc.scale(&Rational::new(BigInt::from(1), BigInt::from(n))));
        }
        Self::new(f)
    }

    /// `self(inner(t))`; `inner` must have zero constant term.
    pub fn compose(&self, inner: &Series) -> Result<Series> {
        self.check_order(inner)?;
        if !inner.coeffs[0].is_zero() {
            return Err(Error::NonzeroConstantTerm {
                op: "series_compose",
            });
        }
        let mut acc = Self::zero(self.order)?;
        for c in self.coeffs.iter().rev() {
            acc = acc.try_mul(inner)?;
            acc.coeffs[0] += c;
        }
        Ok(acc)
    }

    /// Evaluates every coefficient at `λ = v`.
    pub fn eval_lambda(&self, v: &Rational) -> Vec<Rational> {
        self.coeffs.iter().map(|c| c.eval(v)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Poly::is_zero)
    }

    /// Lowest index with a nonzero coefficient, if any.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }
}
