//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each, and
//! exits nonzero if any criterion fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::{Duration, Instant};

use dstirling::bell::{bell_by_egf, bell_poly, BellPoly};
use dstirling::export::{table_from_csv, table_to_csv};
use dstirling::oracle::{count_bell, count_partitions, PartitionSpec};
use dstirling::rational::{int, ratio, Binomials};
use dstirling::stirling::build;
use dstirling::{
    build_table_first, build_table_second, column_series, log_coeff,
    second_kind_by_composition_sum, second_kind_by_inclusion_exclusion, Kind, Poly, Rational,
    Series, StirlingTable,
};
use dstirling_cli::{run_selfcheck_with, CliError, EXIT_MISMATCH};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

const NMAX: usize = 16;
const RMAX: usize = 4;
const AC1_BUDGET: Duration = Duration::from_secs(30);
const AC2_BUDGET: Duration = Duration::from_secs(10);

type Outcome = Result<(), String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn random_rational(rng: &mut StdRng, nonzero: bool) -> Rational {
    loop {
        let p: i64 = rng.gen_range(-60..=60);
        let q: i64 = rng.gen_range(1..=25);
        if !(nonzero && p == 0) {
            return ratio(p, q);
        }
    }
}

fn ac1_second_kind_four_paths() -> Outcome {
    let start = Instant::now();
    for r in 1..=RMAX {
        let table = build_table_second(r, NMAX).map_err(|e| e.to_string())?;
        for k in 0..=NMAX / r {
            let col = column_series(Kind::Second, k, r, NMAX + 1).map_err(|e| e.to_string())?;
            for n in k * r..=NMAX {
                let rec = table.get(n, k).unwrap();
                let comp = second_kind_by_composition_sum(n, k, r).unwrap();
                let incl = second_kind_by_inclusion_exclusion(n, k, r).unwrap();
                let ser = col.egf_coefficient(n).unwrap();
                ensure(&comp == rec && &incl == rec && &ser == rec, || {
                    format!("r={r} n={n} k={k}: rec={rec} comp={comp} incl={incl} series={ser}")
                })?;
            }
        }
    }
    let elapsed = start.elapsed();
    ensure(elapsed < AC1_BUDGET, || format!("took {elapsed:?}"))
}

fn ac2_first_kind_two_paths() -> Outcome {
    let start = Instant::now();
    for r in 1..=RMAX {
        let table = build_table_first(r, NMAX).map_err(|e| e.to_string())?;
        for k in 0..=NMAX / r {
            let col = column_series(Kind::First, k, r, NMAX + 1).map_err(|e| e.to_string())?;
            for n in 0..=NMAX {
                let rec = table.get(n, k).unwrap();
                let ser = col.egf_coefficient(n).unwrap();
                ensure(&ser == rec, || {
                    format!("r={r} n={n} k={k}: rec={rec} series={ser}")
                })?;
            }
        }
    }
    let elapsed = start.elapsed();
    ensure(elapsed < AC2_BUDGET, || format!("took {elapsed:?}"))
}

fn ac3_classical_specialisation() -> Outcome {
    let mut binom = Binomials::new();
    for r in 1..=RMAX {
        let table = build_table_second(r, 14).unwrap();
        for n in 0..=10 {
            for k in 0..=n {
                let got = table.classical_value(n, k).map_err(|e| e.to_string())?;
                let count = count_partitions(PartitionSpec::new(n, k, r).unwrap());
                ensure(got == count, || {
                    format!("r={r} n={n} k={k}: {got} vs {count} partitions")
                })?;
            }
        }
        for n in 1..=14 {
            for k in 0..=n {
                let lhs = table.classical_value(n, k).unwrap();
                let mut rhs = BigInt::from(k) * table.classical_value(n - 1, k).unwrap();
                if n >= r && k >= 1 {
                    rhs += binom.get(n - 1, r - 1) * table.classical_value(n - r, k - 1).unwrap();
                }
                ensure(lhs == rhs, || {
                    format!("recursion r={r} n={n} k={k}: {lhs} vs {rhs}")
                })?;
            }
        }
    }
    Ok(())
}

fn ac4_r1_reductions() -> Outcome {
    let s2 = build_table_second(1, NMAX).unwrap();
    let s1 = build_table_first(1, NMAX).unwrap();
    for n in 0..NMAX {
        for k in 0..=n + 1 {
            let (ni, ki) = (int(n as i64), int(k as i64));
            let prev2 = if k > 0 {
                s2.get(n, k - 1).unwrap().clone()
            } else {
                Poly::zero()
            };
            let prev1 = if k > 0 {
                s1.get(n, k - 1).unwrap().clone()
            } else {
                Poly::zero()
            };
            let rhs2 = &(&Poly::linear(ki.clone(), -ni.clone()) * s2.get(n, k).unwrap()) + &prev2;
            let rhs1 = &(&Poly::linear(-ni, ki) * s1.get(n, k).unwrap()) + &prev1;
            ensure(s2.get(n + 1, k).unwrap() == &rhs2, || {
                format!("second kind n={n} k={k}")
            })?;
            ensure(s1.get(n + 1, k).unwrap() == &rhs1, || {
                format!("first kind n={n} k={k}")
            })?;
        }
    }
    for n in 0..=12 {
        for m in 0..=12 {
            let sum: Poly = (0..=n)
                .map(|k| s2.get(n, k).unwrap() * s1.get(k, m).unwrap())
                .sum();
            let delta = if n == m { Poly::one() } else { Poly::zero() };
            ensure(sum == delta, || format!("inverse n={n} m={m}: {sum}"))?;
        }
    }
    Ok(())
}

fn ac5_bell() -> Outcome {
    let mut rng = StdRng::seed_from_u64(0x5eed_0005);
    let xs: Vec<Rational> = (0..5).map(|_| random_rational(&mut rng, false)).collect();
    for r in 1..=3 {
        let table = build_table_second(r, 12).unwrap();
        for n in 0..=12 {
            let b = bell_poly(n, r, &table).map_err(|e| e.to_string())?;
            for x in &xs {
                let by_sum: Poly = (0..=n / r)
                    .map(|k| {
                        table
                            .get(n, k)
                            .unwrap()
                            .scale(&num_traits::pow(x.clone(), k))
                    })
                    .sum();
                let egf = bell_by_egf(n, r, x, n + 1).map_err(|e| e.to_string())?;
                ensure(egf == by_sum, || {
                    format!("r={r} n={n} x={x}: {egf} vs {by_sum}")
                })?;
                ensure(b.eval_x(x) == by_sum, || {
                    format!("bell_poly r={r} n={n} x={x}")
                })?;
            }
            let at_zero = b.eval(&Rational::one(), &Rational::zero());
            let count = Rational::from_integer(count_bell(n, r).unwrap());
            ensure(at_zero == count, || {
                format!("r={r} n={n}: {at_zero} vs {count}")
            })?;
        }
    }
    Ok(())
}

fn ac6_first_kind_coefficient() -> Outcome {
    let mut rng = StdRng::seed_from_u64(0x5eed_0006);
    for r in 1..=8usize {
        let c: Poly = (1..r as i64)
            .map(|i| Poly::linear(int(-i), int(1)))
            .product();
        ensure(c == log_coeff(r).unwrap(), || {
            format!("r={r}: product form differs from log_coeff")
        })?;
        for _ in 0..12 {
            let lam = random_rational(&mut rng, true);
            // (1)_{r−1,1/λ} as the literal product ∏_{i<r−1}(1 − i/λ)
            let falling: Rational = (0..r - 1)
                .map(|i| Rational::one() - int(i as i64) / &lam)
                .product();
            let m = r as i32 - 1;
            let raw = lam.pow(m) * &falling - int(m as i64) * lam.pow(m - 1) * &falling;
            let got = c.eval(&lam);
            ensure(raw == got, || format!("r={r} λ={lam}: {raw} vs {got}"))?;
        }
    }
    Ok(())
}

fn ac7_inverse_pair() -> Outcome {
    let m = 10;
    let e_minus_one = Series::e_lambda(&int(1), m)
        .unwrap()
        .try_sub(&Series::one(m).unwrap())
        .unwrap();
    let log = Series::log_lambda(m).unwrap();
    let t = Series::t(m).unwrap();
    let a = log.compose(&e_minus_one).map_err(|e| e.to_string())?;
    let b = e_minus_one.compose(&log).map_err(|e| e.to_string())?;
    ensure(a == t, || format!("log∘(e−1) = {:?}", a.coeffs()))?;
    ensure(b == t, || format!("(e−1)∘log = {:?}", b.coeffs()))
}

fn cli(args: &[&str]) -> (i32, Vec<u8>) {
    let out = Command::new(env!("CARGO_BIN_EXE_dstirling"))
        .args(args)
        .output()
        .expect("binary runs");
    (out.status.code().unwrap_or(-1), out.stdout)
}

fn text(bytes: &[u8]) -> String {
    String::from_utf8(bytes.to_vec()).expect("utf-8 output")
}

fn ac8_cli_contract() -> Outcome {
    // tagged examples
    let (code, out) = cli(&[
        "table", "--kind", "second", "--r", "2", "--nmax", "4", "--format", "csv",
    ]);
    ensure(
        code == 0 && text(&out).lines().any(|l| l == "4,2,3;-6;3"),
        || text(&out),
    )?;
    let (code, out) = cli(&[
        "value", "--kind", "second", "--r", "2", "--n", "3", "--k", "2",
    ]);
    ensure(code == 0 && text(&out).trim() == "0", || text(&out))?;
    let (code, out) = cli(&["bell", "--r", "2", "--n", "5", "--x", "1", "--lambda", "0"]);
    ensure(code == 0 && text(&out).trim() == "11", || text(&out))?;

    // exit codes
    let (code, out) = cli(&["selfcheck"]);
    ensure(code == 0, || {
        format!("selfcheck exit {code}: {}", text(&out))
    })?;
    for bad in [
        &["table", "--kind", "third", "--r", "1", "--nmax", "3"][..],
        &[
            "value", "--kind", "second", "--r", "0", "--n", "3", "--k", "1",
        ],
        &["value", "--kind", "second", "--r", "1", "--n", "3"],
        &["bell", "--r", "2", "--n", "5", "--x", "1/0"],
        &["frobnicate"],
    ] {
        let (code, _) = cli(bad);
        ensure(code == 2, || format!("{bad:?} exited {code}"))?;
    }
    let corrupt = |kind: Kind, r: usize, nmax: usize| -> dstirling::Result<StirlingTable> {
        let mut t = build(kind, r, nmax)?;
        if kind == Kind::First && r == 3 {
            t.set(7, 2, Poly::from_ints(&[5]))?;
        }
        Ok(t)
    };
    let cfg = dstirling::selfcheck::SelfcheckConfig::default();
    match run_selfcheck_with(&cfg, corrupt) {
        Err(e @ CliError::Mismatch(_)) => {
            let msg = e.to_string();
            ensure(e.exit_code() == EXIT_MISMATCH, || {
                "mismatch exit code".into()
            })?;
            ensure(msg.contains("kind=first r=3 n=7 k=2"), || msg.clone())?;
        }
        other => return Err(format!("corrupted table not caught: {other:?}")),
    }

    // round trips
    for (kind, r) in [(Kind::Second, 2usize), (Kind::First, 3)] {
        let expected = build(kind, r, 9).unwrap();
        let args = [
            "table",
            "--kind",
            &kind.to_string(),
            "--r",
            &r.to_string(),
            "--nmax",
            "9",
        ];
        let (_, csv) = cli(&[&args[..], &["--format", "csv"]].concat());
        let parsed = table_from_csv(kind, r, &text(&csv)).map_err(|e| e.to_string())?;
        ensure(parsed == expected, || "csv round trip".into())?;
        ensure(table_to_csv(&parsed) == text(&csv), || "csv re-emit".into())?;
        let (_, json) = cli(&[&args[..], &["--format", "json"]].concat());
        let parsed: StirlingTable = serde_json::from_slice(&json).map_err(|e| e.to_string())?;
        ensure(parsed == expected, || "json round trip".into())?;
        ensure(
            serde_json::to_string(&parsed).unwrap() + "\n" == text(&json),
            || "json re-emit".into(),
        )?;
    }
    let (_, json) = cli(&["bell", "--r", "2", "--n", "7", "--format", "json"]);
    let b: BellPoly = serde_json::from_slice(&json).map_err(|e| e.to_string())?;
    ensure(
        serde_json::to_string(&b).unwrap() + "\n" == text(&json),
        || "bell json".into(),
    )?;
    let (_, json) = cli(&[
        "series", "--which", "base", "--kind", "first", "--r", "2", "--order", "7", "--format",
        "json",
    ]);
    let s: Series = serde_json::from_slice(&json).map_err(|e| e.to_string())?;
    ensure(
        s.order() == 7 && serde_json::to_string(&s).unwrap() + "\n" == text(&json),
        || "series json".into(),
    )?;
    let (_, json) = cli(&[
        "value", "--kind", "first", "--r", "1", "--n", "6", "--k", "3", "--format", "json",
    ]);
    let p: Poly = serde_json::from_slice(&json).map_err(|e| e.to_string())?;
    ensure(
        p == build_table_first(1, 6).unwrap().get(6, 3).unwrap().clone(),
        || "value json".into(),
    )?;

    // determinism
    for args in [
        &[
            "table", "--kind", "first", "--r", "2", "--nmax", "12", "--format", "json",
        ][..],
        &[
            "table", "--kind", "second", "--r", "1", "--nmax", "10", "--lambda", "-3/7",
            "--format", "csv",
        ],
        &["bell", "--r", "1", "--n", "8"],
        &[
            "series", "--which", "e-lambda", "--x", "2/3", "--order", "8", "--format", "json",
        ],
    ] {
        let (c1, a) = cli(args);
        let (c2, b) = cli(args);
        ensure(c1 == 0 && c2 == 0 && a == b, || {
            format!("{args:?} not byte-identical")
        })?;
    }
    Ok(())
}

fn main() {
    let criteria: [Criterion; 8] = [
        (
            "AC1 four-path agreement, second kind (r<=4, n<=16)",
            ac1_second_kind_four_paths,
        ),
        (
            "AC2 recurrence vs series, first kind (r<=4, n<=16)",
            ac2_first_kind_two_paths,
        ),
        (
            "AC3 λ=0 partition counts and classical recursion",
            ac3_classical_specialisation,
        ),
        (
            "AC4 r=1 degenerate recurrences and inverse relation",
            ac4_r1_reductions,
        ),
        ("AC5 Bell polynomial sum vs generating function", ac5_bell),
        (
            "AC6 first-kind coefficient identity (r<=8)",
            ac6_first_kind_coefficient,
        ),
        (
            "AC7 e_λ−1 / log_λ compositional inverses to order 10",
            ac7_inverse_pair,
        ),
        ("AC8 CLI contract", ac8_cli_contract),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        let start = Instant::now();
        let outcome =
            catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".to_string()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(()) => println!("[PASS] {name} ({secs:.2}s)"),
            Err(why) => {
                failed += 1;
                println!("[FAIL] {name} ({secs:.2}s): {why}");
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
