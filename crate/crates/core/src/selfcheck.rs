//! Cross-path consistency suite behind the `selfcheck` command.
//!
//! Each `(kind, r)` pair is checked on its own thread. The first mismatch in
//! `(kind, r)` order is reported with its `(n, k)` witness.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::bell::{bell_by_egf, bell_poly};
use crate::error::Result;
use crate::oracle::{count_bell, count_partitions, PartitionSpec, PARTITION_BUDGET};
use crate::poly::Poly;
use crate::rational::{int, ratio, Binomials, Rational};
use crate::stirling::{
    column_series, second_kind_by_composition_sum, second_kind_by_inclusion_exclusion, Kind,
    StirlingTable,
};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SelfcheckConfig {
    pub rmax: usize,
    /// Rows compared across computation paths.
    pub nmax: usize,
    /// Rows compared against partition enumeration.
    pub partition_nmax: usize,
    /// Rows checked against the classical r-associated recursion at λ = 0.
    pub classical_nmax: usize,
    /// Bound for the r = 1 inverse relation.
    pub inverse_nmax: usize,
    pub bell_nmax: usize,
    pub bell_rmax: usize,
}

impl Default for SelfcheckConfig {
    fn default() -> Self {
        SelfcheckConfig {
            rmax: 4,
            nmax: 16,
            partition_nmax: 10,
            classical_nmax: 14,
            inverse_nmax: 12,
            bell_nmax: 12,
            bell_rmax: 3,
        }
    }
}

/// First failing cell.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mismatch {
    pub kind: Kind,
    pub r: usize,
    pub n: usize,
    pub k: usize,
    pub check: String,
    pub detail: String,
}

impl fmt::Display for Mismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "kind={} r={} n={} k={}: {}: {}",
            self.kind, self.r, self.n, self.k, self.check, self.detail
        )
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Report {
    pub lines: Vec<String>,
    pub checks: usize,
}

/// x values used for the Bell generating-function comparison.
pub fn bell_sample_points() -> Vec<Rational> {
    vec![int(1), int(-2), ratio(1, 2), ratio(-3, 7), ratio(5, 3)]
}

/// λ values used for the first-kind coefficient identity.
pub fn lambda_sample_points() -> Vec<Rational> {
    vec![
        int(1),
        int(-1),
        int(2),
        int(7),
        ratio(1, 2),
        ratio(-2, 3),
        ratio(5, 4),
        ratio(-7, 9),
        ratio(11, 13),
        ratio(100, 3),
        ratio(-1, 1000),
    ]
}

/// `λ^{r−1}(1)_{r−1,1/λ} − (r−1)λ^{r−2}(1)_{r−1,1/λ}` at a nonzero rational λ,
/// with `(1)_{m,1/λ} = ∏_{i<m}(1 − i/λ)` taken literally.
pub fn first_kind_raw_coefficient(r: usize, lambda: &Rational) -> Rational {
    assert!(r >= 1 && !lambda.is_zero());
    let m = r - 1;
    let falling: Rational = (0..m)
        .map(|i| Rational::one() - int(i as i64) / lambda)
        .product();
    let pow = |e: i64| -> Rational {
        if e >= 0 {
            num_traits::pow(lambda.clone(), e as usize)
        } else {
            num_traits::pow(lambda.recip(), (-e) as usize)
        }
    };
    let m_i = m as i64;
    pow(m_i) * &falling - int(m_i) * pow(m_i - 1) * &falling
}

struct Ctx {
    kind: Kind,
    r: usize,
    checks: usize,
}

impl Ctx {
    fn expect_eq<T: PartialEq + fmt::Display>(
        &mut self,
        n: usize,
        k: usize,
        check: &str,
        expected: &T,
        found: &T,
    ) -> std::result::Result<(), Mismatch> {
        self.checks += 1;
        if expected == found {
            Ok(())
        } else {
            Err(self.fail(n, k, check, format!("expected {expected}, found {found}")))
        }
    }

    fn fail(&self, n: usize, k: usize, check: &str, detail: String) -> Mismatch {
        Mismatch {
            kind: self.kind,
            r: self.r,
            n,
            k,
            check: check.to_string(),
            detail,
        }
    }
}

fn lift<T>(
    ctx: &Ctx,
    n: usize,
    k: usize,
    what: &str,
    r: Result<T>,
) -> std::result::Result<T, Mismatch> {
    r.map_err(|e| ctx.fail(n, k, what, e.to_string()))
}

fn check_pair(
    cfg: &SelfcheckConfig,
    kind: Kind,
    r: usize,
    table: &StirlingTable,
) -> std::result::Result<(String, usize), Mismatch> {
    let mut ctx = Ctx { kind, r, checks: 0 };
    let nmax = cfg.nmax;
    let order = nmax + 1;

    // recurrence vs generating function (both kinds)
    for k in 0..=nmax / r {
        let col = lift(&ctx, k * r, k, "series", column_series(kind, k, r, order))?;
        for n in 0..=nmax {
            let from_series = lift(&ctx, n, k, "series", col.egf_coefficient(n))?;
            let from_table = lift(&ctx, n, k, "table", table.get(n, k).cloned())?;
            ctx.expect_eq(n, k, "recurrence vs series", &from_series, &from_table)?;
        }
    }

    if kind == Kind::Second {
        for n in 0..=nmax {
            for k in 0..=n / r {
                let rec = table.get(n, k).expect("row in range");
                let comp = lift(
                    &ctx,
                    n,
                    k,
                    "composition sum",
                    second_kind_by_composition_sum(n, k, r),
                )?;
                ctx.expect_eq(n, k, "recurrence vs composition sum", &comp, rec)?;
                let incl = lift(
                    &ctx,
                    n,
                    k,
                    "inclusion-exclusion",
                    second_kind_by_inclusion_exclusion(n, k, r),
                )?;
                ctx.expect_eq(n, k, "recurrence vs inclusion-exclusion", &incl, rec)?;
                ctx.checks += 1;
                if rec.degree().is_some_and(|d| d + k > n) {
                    return Err(ctx.fail(
                        n,
                        k,
                        "degree bound",
                        format!("degree of {rec} exceeds n-k"),
                    ));
                }
            }
        }

        let mut binom = Binomials::new();
        let classical_top = cfg.classical_nmax.min(nmax);
        for n in 0..=classical_top {
            for k in 0..=n {
                let v = lift(&ctx, n, k, "classical value", table.classical_value(n, k))?;
                if n <= cfg.partition_nmax.min(PARTITION_BUDGET) {
                    let spec = lift(&ctx, n, k, "partition spec", PartitionSpec::new(n, k, r))?;
                    ctx.expect_eq(n, k, "λ=0 vs partition count", &count_partitions(spec), &v)?;
                }
                if n >= 1 {
                    let mut rhs = BigInt::from(k)
                        * lift(
                            &ctx,
                            n,
                            k,
                            "classical value",
                            table.classical_value(n - 1, k),
                        )?;
                    if n >= r && k >= 1 {
                        rhs += binom.get(n - 1, r - 1)
                            * lift(
                                &ctx,
                                n,
                                k,
                                "classical value",
                                table.classical_value(n - r, k - 1),
                            )?;
                    }
                    ctx.expect_eq(n, k, "classical r-associated recursion", &rhs, &v)?;
                }
            }
        }

        if r <= cfg.bell_rmax {
            for n in 0..=cfg.bell_nmax.min(nmax) {
                let b = lift(&ctx, n, 0, "bell polynomial", bell_poly(n, r, table))?;
                for x in bell_sample_points() {
                    let egf = lift(&ctx, n, 0, "bell egf", bell_by_egf(n, r, &x, n + 1))?;
                    ctx.expect_eq(n, 0, "bell egf vs Stirling sum", &egf, &b.eval_x(&x))?;
                }
                if n <= cfg.partition_nmax.min(PARTITION_BUDGET) {
                    let count = lift(&ctx, n, 0, "bell count", count_bell(n, r))?;
                    let v = b.eval(&Rational::one(), &Rational::zero());
                    ctx.expect_eq(
                        n,
                        0,
                        "bell λ=0 x=1 vs partition count",
                        &Rational::from_integer(count),
                        &v,
                    )?;
                }
            }
        }
    }

    if r == 1 {
        // the degenerate Stirling recurrences
        for n in 0..nmax {
            for k in 0..=n + 1 {
                let (ni, ki) = (int(n as i64), int(k as i64));
                let mult = match kind {
                    Kind::Second => Poly::linear(ki, -ni),
                    Kind::First => Poly::linear(-ni, ki),
                };
                let mut rhs = &mult * table.get(n, k).expect("row in range");
                if k >= 1 {
                    rhs += table.get(n, k - 1).expect("row in range");
                }
                ctx.expect_eq(
                    n + 1,
                    k,
                    "r=1 degenerate recurrence",
                    &rhs,
                    table.get(n + 1, k).expect("row in range"),
                )?;
            }
        }
    }

    if kind == Kind::First {
        let c = crate::stirling::first_kind_block_coeff(r);
        for lam in lambda_sample_points() {
            let raw = first_kind_raw_coefficient(r, &lam);
            ctx.expect_eq(0, 0, "first-kind coefficient identity", &raw, &c.eval(&lam))?;
        }
    }

    let line = format!("ok {kind} r={r}: {} checks", ctx.checks);
    Ok((line, ctx.checks))
}

fn check_inverse(
    cfg: &SelfcheckConfig,
    second: &StirlingTable,
    first: &StirlingTable,
) -> std::result::Result<(String, usize), Mismatch> {
    let mut ctx = Ctx {
        kind: Kind::Second,
        r: 1,
        checks: 0,
    };
    let top = cfg.inverse_nmax.min(cfg.nmax);
    for n in 0..=top {
        for m in 0..=top {
            let sum: Poly = (0..=n)
                .map(|k| second.get(n, k).expect("row") * first.get(k, m).expect("row"))
                .sum();
            let delta = if n == m { Poly::one() } else { Poly::zero() };
            ctx.expect_eq(n, m, "Σ S₂(n,k)S₁(k,m) = δ", &delta, &sum)?;
        }
    }
    Ok((
        format!("ok inverse relation r=1: {} checks", ctx.checks),
        ctx.checks,
    ))
}

/// Runs the suite with the recurrence tables supplied by `build`.
pub fn run_with<F>(cfg: &SelfcheckConfig, build: F) -> std::result::Result<Report, Mismatch>
where
    F: Fn(Kind, usize, usize) -> Result<StirlingTable> + Sync,
{
    let pairs: Vec<(Kind, usize)> = [Kind::Second, Kind::First]
        .into_iter()
        .flat_map(|kind| (1..=cfg.rmax).map(move |r| (kind, r)))
        .collect();

    type Outcome = std::result::Result<(StirlingTable, String, usize), Mismatch>;
    let outcomes: Vec<Outcome> = std::thread::scope(|scope| {
        let handles: Vec<_> = pairs
            .iter()
            .map(|&(kind, r)| {
                let build = &build;
                scope.spawn(move || -> Outcome {
                    let table = build(kind, r, cfg.nmax).map_err(|e| Mismatch {
                        kind,
                        r,
                        n: 0,
                        k: 0,
                        check: "table construction".into(),
                        detail: e.to_string(),
                    })?;
                    let (line, checks) = check_pair(cfg, kind, r, &table)?;
                    Ok((table, line, checks))
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("selfcheck worker panicked"))
            .collect()
    });

    let mut report = Report::default();
    let mut second_r1 = None;
    let mut first_r1 = None;
    for ((kind, r), outcome) in pairs.into_iter().zip(outcomes) {
        let (table, line, checks) = outcome?;
        report.lines.push(line);
        report.checks += checks;
        if r == 1 {
            match kind {
                Kind::Second => second_r1 = Some(table),
                Kind::First => first_r1 = Some(table),
            }
        }
    }
    if let (Some(s), Some(f)) = (second_r1, first_r1) {
        let (line, checks) = check_inverse(cfg, &s, &f)?;
        report.lines.push(line);
        report.checks += checks;
    }
    Ok(report)
}

pub fn run(cfg: &SelfcheckConfig) -> std::result::Result<Report, Mismatch> {
    run_with(cfg, crate::stirling::build)
}
