//! Degenerate r-associated Stirling numbers of both kinds.
//!
//! Every value is a polynomial in λ. The recurrence tables are the fast path;
//! the explicit sums and the generating-function extraction exist to check
//! them.
//!
//! Second kind, EGF `(1/k!)·(e_λ(t) − Σ_{l<r} (1)_{l,λ} tˡ/l!)^k`, recurrence
//!
//! ```text
//! S(n+1,k) = (k − nλ)·S(n,k) + [(1)_{r−1,λ} − λ(r−1)(1)_{r−1,λ}]·C(n,r−1)·S(n−r+1,k−1)
//! ```
//!
//! First kind, EGF `(1/k!)·(log_λ(1+t) − Σ_{1≤l<r} c_l(λ) tˡ/l!)^k`, recurrence
//!
//! ```text
//! S(n+1,k) = (kλ − n)·S(n,k) + c_r(λ)·C(n,r−1)·S(n−r+1,k−1),   c_r = ∏_{i=1}^{r−1}(λ − i)
//! ```

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::de::{self, Deserializer};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::oracle::Compositions;
use crate::poly::{falling_lambda, log_coeff, Poly};
use crate::rational::{factorial, int, to_integer, Binomials, Rational};
use crate::series::Series;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    First,
    Second,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::First => "first",
            Kind::Second => "second",
        })
    }
}

impl FromStr for Kind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Kind> {
        match s {
            "first" => Ok(Kind::First),
            "second" => Ok(Kind::Second),
            _ => Err(Error::Parse {
                what: "kind",
                input: s.to_string(),
            }),
        }
    }
}

static ZERO: Poly = Poly::zero();

/// Triangle of `S(n,k)` for one `(kind, r)`, rows `0..=nmax`, row `n` holding
/// `k = 0..=⌊n/r⌋`. Entries with `n < kr` are implicit zeros.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StirlingTable {
    kind: Kind,
    r: usize,
    nmax: usize,
    entries: Vec<Vec<Poly>>,
}

#[derive(Deserialize)]
struct RawTable {
    kind: Kind,
    r: usize,
    nmax: usize,
    entries: Vec<Vec<Poly>>,
}

impl<'de> Deserialize<'de> for StirlingTable {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = RawTable::deserialize(deserializer)?;
        if raw.entries.len() != raw.nmax + 1 {
            return Err(de::Error::custom(format!(
                "nmax {} but {} rows",
                raw.nmax,
                raw.entries.len()
            )));
        }
        StirlingTable::from_rows(raw.kind, raw.r, raw.entries).map_err(de::Error::custom)
    }
}

impl StirlingTable {
    /// Wraps precomputed rows after checking the triangle shape.
    pub fn from_rows(kind: Kind, r: usize, entries: Vec<Vec<Poly>>) -> Result<Self> {
        if r == 0 {
            return Err(Error::ZeroR);
        }
        if entries.is_empty() {
            return Err(Error::MalformedTable("no rows".into()));
        }
        for (n, row) in entries.iter().enumerate() {
            if row.len() != n / r + 1 {
                return Err(Error::MalformedTable(format!(
                    "row {n} has {} entries, expected {}",
                    row.len(),
                    n / r + 1
                )));
            }
        }
        Ok(StirlingTable {
            kind,
            r,
            nmax: entries.len() - 1,
            entries,
        })
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn nmax(&self) -> usize {
        self.nmax
    }

    pub fn rows(&self) -> &[Vec<Poly>] {
        &self.entries
    }

    pub fn row(&self, n: usize) -> Result<&[Poly]> {
        self.entries
            .get(n)
            .map(Vec::as_slice)
            .ok_or(Error::RowOutOfRange { n, nmax: self.nmax })
    }

    /// `S(n,k)`; zero for `k > ⌊n/r⌋`.
    pub fn get(&self, n: usize, k: usize) -> Result<&Poly> {
        Ok(self.row(n)?.get(k).unwrap_or(&ZERO))
    }

    /// The entry at λ = 0 as an exact integer.
    pub fn classical_value(&self, n: usize, k: usize) -> Result<BigInt> {
        let v = self.get(n, k)?.eval(&Rational::zero());
        to_integer(&v).ok_or(Error::NotIntegral {
            kind: self.kind,
            n,
            k,
            r: self.r,
        })
    }

    pub fn eval_lambda(&self, v: &Rational) -> Vec<Vec<Rational>> {
        self.entries
            .iter()
            .map(|row| row.iter().map(|p| p.eval(v)).collect())
            .collect()
    }

    /// Replaces one stored entry. Meant for tests that need a corrupted table.
    pub fn set(&mut self, n: usize, k: usize, value: Poly) -> Result<()> {
        let nmax = self.nmax;
        let slot = self
            .entries
            .get_mut(n)
            .and_then(|row| row.get_mut(k))
            .ok_or(Error::RowOutOfRange { n, nmax })?;
        *slot = value;
        Ok(())
    }
}

/// Coefficient of the `k−1` term in the second-kind step, kept in its
/// two-term form `(1)_{r−1,λ} − λ(r−1)(1)_{r−1,λ}`; it equals `(1)_{r,λ}`.
pub fn second_kind_block_coeff(r: usize) -> Poly {
    let f = falling_lambda(&Rational::one(), r - 1);
    let correction = &Poly::linear(Rational::zero(), int(r as i64 - 1)) * &f;
    &f - &correction
}

/// `c_r(λ) = ∏_{i=1}^{r−1} (λ − i)`, the combined `k−1` coefficient of the
/// first-kind step.
pub fn first_kind_block_coeff(r: usize) -> Poly {
    log_coeff(r).expect("r >= 1")
}

fn build_table(kind: Kind, r: usize, nmax: usize) -> Result<StirlingTable> {
    if r == 0 {
        return Err(Error::ZeroR);
    }
    let block = match kind {
        Kind::Second => second_kind_block_coeff(r),
        Kind::First => first_kind_block_coeff(r),
    };
    let mut binom = Binomials::with_rows(nmax);
    let mut rows: Vec<Vec<Poly>> = Vec::with_capacity(nmax + 1);
    rows.push(vec![Poly::one()]);
    for n in 0..nmax {
        let c = Rational::from_integer(binom.get(n, r - 1));
        let block_n = block.scale(&c);
        let prev = &rows[n];
        let mut next = Vec::with_capacity((n + 1) / r + 1);
        for k in 0..=(n + 1) / r {
            let (ki, ni) = (int(k as i64), int(n as i64));
            let mult = match kind {
                Kind::Second => Poly::linear(ki, -ni),
                Kind::First => Poly::linear(-ni, ki),
            };
            let mut value = match prev.get(k) {
                Some(s) => &mult * s,
                None => Poly::zero(),
            };
            if k >= 1 && n + 1 >= r {
                if let Some(s) = rows[n + 1 - r].get(k - 1) {
                    value += &(&block_n * s);
                }
            }
            next.push(value);
        }
        rows.push(next);
    }
    StirlingTable::from_rows(kind, r, rows)
}

/// Second-kind triangle up to `nmax` by the three-term recurrence, seeded with
/// `S(0,0) = 1`.
pub fn build_table_second(r: usize, nmax: usize) -> Result<StirlingTable> {
    build_table(Kind::Second, r, nmax)
}

/// First-kind triangle up to `nmax`. `r = 1` gives the degenerate Stirling
/// numbers of the first kind.
pub fn build_table_first(r: usize, nmax: usize) -> Result<StirlingTable> {
    build_table(Kind::First, r, nmax)
}

pub fn build(kind: Kind, r: usize, nmax: usize) -> Result<StirlingTable> {
    build_table(kind, r, nmax)
}

/// `(1/k!)·Σ n!·∏(1)_{lᵢ,λ}/∏lᵢ!` over ordered compositions `l₁+⋯+l_k = n`
/// with every `lᵢ >= r`.
pub fn second_kind_by_composition_sum(n: usize, k: usize, r: usize) -> Result<Poly> {
    if r == 0 {
        return Err(Error::ZeroR);
    }
    let one = Rational::one();
    let falling: Vec<Poly> = (0..=n).map(|l| falling_lambda(&one, l)).collect();
    let facts: Vec<BigInt> = (0..=n).map(factorial).collect();
    let mut total = Poly::zero();
    for parts in Compositions::new(n, k, r) {
        let mut multinomial = facts[n].clone();
        let mut prod = Poly::one();
        for &l in &parts {
            multinomial /= &facts[l];
            prod = &prod * &falling[l];
        }
        total += &prod.scale(&Rational::from_integer(multinomial));
    }
    Ok(total.scale(&Rational::new(BigInt::one(), factorial(k))))
}

/// Inclusion–exclusion form of the same number:
///
/// ```text
/// (1/k!)·Σ_{m=0}^{k} C(k,m)(−1)^m Σ_{l₁…l_m ∈ [0,r−1]} n!·∏(1)_{lⱼ,λ}·(k−m)_{n−Σl,λ} / (∏lⱼ!·(n−Σl)!)
/// ```
///
/// Tuples with `Σl > n` contribute nothing.
pub fn second_kind_by_inclusion_exclusion(n: usize, k: usize, r: usize) -> Result<Poly> {
    if r == 0 {
        return Err(Error::ZeroR);
    }
    let one = Rational::one();
    let small: Vec<Poly> = (0..r).map(|l| falling_lambda(&one, l)).collect();
    let facts: Vec<BigInt> = (0..=n.max(k)).map(factorial).collect();
    let mut binom = Binomials::with_rows(k);

    // Σ over tuples of ∏(1)_{lⱼ,λ}/∏lⱼ!, bucketed by Σl (terms with Σl > n pruned).
    struct Walk<'a> {
        small: &'a [Poly],
        facts: &'a [BigInt],
        n: usize,
        buckets: Vec<Poly>,
    }
    impl Walk<'_> {
        fn go(&mut self, depth: usize, sum: usize, prod: &Poly, denom: &BigInt) {
            if depth == 0 {
                let term = prod.scale(&Rational::new(BigInt::one(), denom.clone()));
                self.buckets[sum] += &term;
                return;
            }
            for (l, f) in self.small.iter().enumerate() {
                if sum + l > self.n {
                    break;
                }
                let p = prod * f;
                let d = denom * &self.facts[l];
                self.go(depth - 1, sum + l, &p, &d);
            }
        }
    }

    let mut total = Poly::zero();
    for m in 0..=k {
        let mut walk = Walk {
            small: &small,
            facts: &facts,
            n,
            buckets: vec![Poly::zero(); n + 1],
        };
        walk.go(m, 0, &Poly::one(), &BigInt::one());
        let base = int((k - m) as i64);
        let mut inner = Poly::zero();
        for (s, bucket) in walk.buckets.iter().enumerate() {
            if bucket.is_zero() {
                continue;
            }
            let rest = n - s;
            let scale = Rational::new(facts[n].clone(), facts[rest].clone());
            inner += &(&falling_lambda(&base, rest) * bucket).scale(&scale);
        }
        let mut coeff = Rational::from_integer(binom.get(k, m));
        if m % 2 == 1 {
            coeff = -coeff;
        }
        total += &inner.scale(&coeff);
    }
    Ok(total.scale(&Rational::new(BigInt::one(), factorial(k))))
}

/// The series whose k-th power over k! generates column k:
/// `e_λ(t) − Σ_{l=0}^{r−1}(1)_{l,λ}tˡ/l!` or `log_λ(1+t) − Σ_{l=1}^{r−1} c_l(λ)tˡ/l!`.
pub fn base_series(kind: Kind, r: usize, order: usize) -> Result<Series> {
    if r == 0 {
        return Err(Error::ZeroR);
    }
    let mut s = match kind {
        Kind::Second => Series::e_lambda(&Rational::one(), order)?,
        Kind::First => Series::log_lambda(order)?,
    };
    for l in 0..r.min(order) {
        s.set_coeff(l, Poly::zero())?;
    }
    Ok(s)
}

/// `B(t)^k / k!` truncated at `order`.
pub fn column_series(kind: Kind, k: usize, r: usize, order: usize) -> Result<Series> {
    let base = base_series(kind, r, order)?;
    Ok(base
        .pow(k)
        .scale_rational(&Rational::new(BigInt::one(), factorial(k))))
}

/// `S(n,k)` by extracting the n-th EGF coefficient of `B(t)^k/k!`.
pub fn number_by_series(kind: Kind, n: usize, k: usize, r: usize, order: usize) -> Result<Poly> {
    if order <= n {
        return Err(Error::CoefficientOutOfRange { index: n, order });
    }
    column_series(kind, k, r, order)?.egf_coefficient(n)
}
