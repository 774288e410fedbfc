//! Degenerate r-associated Bell polynomials `φ_n(x) = Σ_k x^k·S₂(n,k)`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::rational::{factorial, Rational};
use crate::stirling::{base_series, Kind, StirlingTable};

/// A polynomial in x whose coefficients are polynomials in λ.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawBell")]
pub struct BellPoly {
    n: usize,
    r: usize,
    coeffs_in_x: Vec<Poly>,
}

#[derive(Deserialize)]
struct RawBell {
    n: usize,
    r: usize,
    coeffs_in_x: Vec<Poly>,
}

impl TryFrom<RawBell> for BellPoly {
    type Error = Error;
    fn try_from(raw: RawBell) -> Result<Self> {
        if raw.r == 0 {
            return Err(Error::ZeroR);
        }
        if raw.coeffs_in_x.len() != raw.n / raw.r + 1 {
            return Err(Error::MalformedTable(format!(
                "Bell polynomial of index {} needs {} coefficients, found {}",
                raw.n,
                raw.n / raw.r + 1,
                raw.coeffs_in_x.len()
            )));
        }
        Ok(BellPoly {
            n: raw.n,
            r: raw.r,
            coeffs_in_x: raw.coeffs_in_x,
        })
    }
}

impl BellPoly {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.r
    }

    /// Coefficient of `x^k`, for `k = 0..=⌊n/r⌋`.
    pub fn coeffs_in_x(&self) -> &[Poly] {
        &self.coeffs_in_x
    }

    pub fn eval(&self, x0: &Rational, lambda0: &Rational) -> Rational {
        self.coeffs_in_x
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x0 + c.eval(lambda0))
    }

    /// Substitutes `x = x0`, leaving a polynomial in λ.
    pub fn eval_x(&self, x0: &Rational) -> Poly {
        self.coeffs_in_x
            .iter()
            .rev()
            .fold(Poly::zero(), |acc, c| &acc.scale(x0) + c)
    }

    /// Substitutes `λ = lambda0`, leaving the rational coefficients of a polynomial in x.
    pub fn eval_lambda(&self, lambda0: &Rational) -> Vec<Rational> {
        self.coeffs_in_x.iter().map(|c| c.eval(lambda0)).collect()
    }
}

/// Renders `Σ x^k · (poly in λ)`, skipping vanishing terms.
impl fmt::Display for BellPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs_in_x
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| match k {
                0 => format!("({c})"),
                1 => format!("x·({c})"),
                _ => format!("x^{k}·({c})"),
            })
            .collect();
        if terms.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&terms.join(" + "))
        }
    }
}

/// Reads `φ_n` off a second-kind table with matching `r`.
pub fn bell_poly(n: usize, r: usize, table: &StirlingTable) -> Result<BellPoly> {
    if table.kind() != Kind::Second || table.r() != r {
        return Err(Error::TableMismatch {
            expected: format!("second kind, r = {r}"),
            found: format!("{} kind, r = {}", table.kind(), table.r()),
        });
    }
    let row = table.row(n)?;
    Ok(BellPoly {
        n,
        r,
        coeffs_in_x: row.to_vec(),
    })
}

/// n-th EGF coefficient of `exp(x0·B(t))`, B the second-kind base series.
pub fn bell_by_egf(n: usize, r: usize, x0: &Rational, order: usize) -> Result<Poly> {
    if order <= n {
        return Err(Error::CoefficientOutOfRange { index: n, order });
    }
    let inner = base_series(Kind::Second, r, order)?.scale_rational(x0);
    let egf = inner.exp()?;
    let raw = egf.coeff(n)?;
    Ok(raw.scale(&Rational::new(factorial(n), BigInt::one())))
}
