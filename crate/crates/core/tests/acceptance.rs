//! Acceptance runner: one PASS/FAIL line per criterion, nonzero exit if any
//! criterion fails or exceeds its time budget.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use f2growth::conjectures::analyze;
use f2growth::corpus;
use f2growth::counting::{
    brute_force_counts, check_identities, density, dp_counts, evaluate_recurrence,
};
use f2growth::freegroup::sphere_size;
use f2growth::recurrence::{default_max_steps, run_omega, EdgeSteps, OmegaSteps, VitalSteps};
use f2growth::subgroup::{fold, SubgroupPresentation};
use f2growth::{CoefficientTable, CosetAction, CosetGraph, Letter, Word};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

type Check = fn() -> Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn folded(generators: &[&str]) -> CosetGraph {
    let p = SubgroupPresentation::parse(generators).expect("generators parse");
    CosetGraph::build(fold(&p).expect("finite index"))
}

fn labeled(g: &CosetGraph, t: &CoefficientTable) -> Vec<(usize, String, u64)> {
    let mut v: Vec<_> = t
        .entries
        .iter()
        .map(|(&(i, x), &a)| (i, g.label(x).to_string(), a))
        .collect();
    v.sort();
    v
}

fn expected(list: &[(usize, &str, u64)]) -> Vec<(usize, String, u64)> {
    let mut v: Vec<_> = list
        .iter()
        .map(|&(i, l, a)| (i, l.to_string(), a))
        .collect();
    v.sort();
    v
}

fn golden(
    g: &CosetGraph,
    target: &str,
    want: &[(usize, &str, u64)],
    last_step: usize,
) -> Result<(), String> {
    let y = Word::parse(target).map_err(|e| e.to_string())?;
    let t = run_omega(g, &y, default_max_steps(g.degree()));
    let got = labeled(g, &t);
    ensure(got == expected(want), || format!("coefficients {got:?}"))?;
    ensure(t.terminated && t.last_step == last_step, || {
        format!("terminated={} last_step={}", t.terminated, t.last_step)
    })
}

fn corpus_graphs() -> Vec<(&'static str, CosetGraph)> {
    corpus::all()
        .into_iter()
        .map(|(name, a)| (name, CosetGraph::build(a)))
        .collect()
}

fn odd_examples() -> Vec<(CosetGraph, &'static str, u64)> {
    vec![
        (CosetGraph::build(corpus::index3_action()), "a", 7),
        (CosetGraph::build(corpus::index5_action()), "", 11),
        (CosetGraph::build(corpus::index7_action()), "", 15),
    ]
}

fn index3_golden() -> Result<(), String> {
    let g = folded(&corpus::INDEX3_GENERATORS);
    golden(
        &g,
        "a",
        &[
            (1, "aH", 1),
            (1, "H", 1),
            (2, "H", 1),
            (2, "bH", 1),
            (3, "bH", 3),
        ],
        3,
    )
}

fn index5_golden() -> Result<(), String> {
    let g = CosetGraph::build(corpus::index5_action());
    golden(
        &g,
        "",
        &[
            (1, "aH", 1),
            (1, "bH", 1),
            (2, "abH", 2),
            (3, "baH", 2),
            (4, "aH", 1),
            (4, "bH", 1),
            (5, "H", 3),
        ],
        5,
    )
}

fn index7_golden() -> Result<(), String> {
    let g = CosetGraph::build(corpus::index7_action());
    golden(
        &g,
        "",
        &[
            (2, "aH", 2),
            (2, "AH", 2),
            (2, "bH", 1),
            (2, "BH", 1),
            (3, "H", 3),
            (3, "bbH", 3),
            (3, "BBH", 3),
        ],
        3,
    )
}

fn even_golden() -> Result<(), String> {
    let g = folded(&corpus::EVEN_GENERATORS);
    golden(&g, "", &[(1, "aH", 3)], 1)?;
    ensure(!g.action().has_odd_element(), || {
        "odd element reported".into()
    })
}

fn oracle_equivalence() -> Result<(), String> {
    for (name, g) in corpus_graphs() {
        for target in 0..g.degree() {
            let omega = OmegaSteps::new(&g, target).take(60);
            let edges = EdgeSteps::new(&g, target).take(60);
            let vital = VitalSteps::new(&g, target).take(60);
            for ((o, e), v) in omega.zip(edges).zip(vital) {
                ensure(o.edges(&g) == e.highlighted && e == v, || {
                    format!("{name} target {} step {}", g.label(target), o.step)
                })?;
            }
        }
        let bf = brute_force_counts(&g, 10).map_err(|e| e.to_string())?;
        ensure(bf == dp_counts(&g, 10), || format!("{name}: counts differ"))?;
    }
    Ok(())
}

fn recurrence_correctness() -> Result<(), String> {
    for (name, g) in corpus_graphs() {
        let counts = dp_counts(&g, 20).totals();
        for target in 0..g.degree() {
            let t = run_omega(&g, g.representative(target), default_max_steps(g.degree()));
            ensure(t.terminated, || {
                format!("{name} {} not terminated", g.label(target))
            })?;
            let predicted = evaluate_recurrence(&t, &counts, 20).map_err(|e| e.to_string())?;
            for (n, value) in predicted {
                if n >= t.valid_from() {
                    ensure(&value == counts.get(target, n), || {
                        format!(
                            "{name} {} n={n}: {value} vs {}",
                            g.label(target),
                            counts.get(target, n)
                        )
                    })?;
                }
            }
        }
    }
    Ok(())
}

fn identity_suite() -> Result<(), String> {
    for (name, g) in corpus_graphs() {
        let report = check_identities(&g, &dp_counts(&g, 10));
        ensure(report.passed(), || {
            format!("{name}: {:?}", report.violation)
        })?;
        ensure(report.checks == 20 * 9 * g.degree(), || {
            format!("{name}: {} checks", report.checks)
        })?;
    }
    Ok(())
}

fn sphere_sizes() -> Result<(), String> {
    for (name, g) in corpus_graphs() {
        let counts = dp_counts(&g, 20).totals();
        for n in 1..=20 {
            let total: num_bigint::BigUint = counts.row(n).iter().sum();
            let expected =
                num_bigint::BigUint::from(4u32) * num_bigint::BigUint::from(3u32).pow(n as u32 - 1);
            ensure(total == expected && total == sphere_size(n), || {
                format!("{name} n={n}: {total}")
            })?;
        }
    }
    Ok(())
}

fn normalization() -> Result<(), String> {
    for (g, target, sum) in odd_examples() {
        for v in 0..g.degree() {
            let r = analyze(&g, g.representative(v), default_max_steps(g.degree()));
            if r.terminated {
                ensure(r.normalized_sum.is_one(), || {
                    format!(
                        "degree {} target {}: Σa/3^i = {}",
                        g.degree(),
                        r.target_label,
                        r.normalized_sum
                    )
                })?;
            }
        }
        let r = analyze(
            &g,
            &Word::parse(target).unwrap(),
            default_max_steps(g.degree()),
        );
        ensure(
            r.coefficient_sum == sum && sum == 2 * g.degree() as u64 + 1,
            || format!("degree {}: sum {}", g.degree(), r.coefficient_sum),
        )?;
    }
    Ok(())
}

fn density_proxy() -> Result<(), String> {
    let g = CosetGraph::build(corpus::index3_action());
    let counts = dp_counts(&g, 20).totals();
    let third = BigRational::new(BigInt::from(1), BigInt::from(3));
    let tol = BigRational::new(BigInt::from(1), BigInt::from(100));
    for n in 15..=20 {
        let d = density(&g, &Word::identity(), Letter::A, n, &counts).map_err(|e| e.to_string())?;
        let dev = if d > third { &d - &third } else { &third - &d };
        ensure(dev < tol, || format!("n={n}: d={d}"))?;
    }
    Ok(())
}

fn scan_smoke() -> Result<(), String> {
    let out = Command::new(env!("CARGO_BIN_EXE_f2growth"))
        .args(["scan", "--max-degree", "3", "--format", "json"])
        .output()
        .map_err(|e| e.to_string())?;
    ensure(out.status.success(), || {
        String::from_utf8_lossy(&out.stderr).into_owned()
    })?;
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())?;
    let entries = doc["entries"].as_array().ok_or("no entries")?;
    let actions: Vec<CosetAction> = entries
        .iter()
        .map(|e| {
            let perm = |k: &str| -> Vec<usize> {
                e[k].as_array()
                    .unwrap()
                    .iter()
                    .map(|x| x.as_u64().unwrap() as usize)
                    .collect()
            };
            CosetAction::new(perm("sigma_a"), perm("sigma_b"), 0)
                .unwrap()
                .canonical()
        })
        .collect();
    let distinct: std::collections::BTreeSet<_> = actions
        .iter()
        .map(|a| (a.sigma_a().to_vec(), a.sigma_b().to_vec()))
        .collect();
    ensure(distinct.len() == actions.len(), || {
        "duplicate isomorphic actions".into()
    })?;
    ensure(actions.len() == 1 + 3 + 13, || {
        format!("{} records", actions.len())
    })?;
    let ex1 = corpus::index3_action().canonical();
    ensure(actions.contains(&ex1), || "index-3 example missing".into())?;
    let flagged = doc["flagged_for_review"].as_array().ok_or("no flag list")?;
    ensure(flagged.is_empty(), || format!("flagged: {flagged:?}"))
}

fn main() -> ExitCode {
    let criteria: [(&str, Check, Duration); 11] = [
        (
            "index-3 coefficients from folded generators, target aH",
            index3_golden,
            Duration::from_secs(1),
        ),
        (
            "index-5 coefficients, target H",
            index5_golden,
            Duration::from_secs(1),
        ),
        (
            "index-7 coefficients, target H",
            index7_golden,
            Duration::from_secs(1),
        ),
        (
            "even-length subgroup, target H",
            even_golden,
            Duration::from_secs(1),
        ),
        (
            "three formulations and two counters agree",
            oracle_equivalence,
            Duration::from_secs(120),
        ),
        (
            "recurrence reproduces counts up to n = 20",
            recurrence_correctness,
            Duration::from_secs(120),
        ),
        (
            "counting identities for n ≤ 10 and all 15 letter sets",
            identity_suite,
            Duration::from_secs(120),
        ),
        (
            "sphere sizes 4·3^(n-1) for n ≤ 20",
            sphere_sizes,
            Duration::from_secs(120),
        ),
        (
            "normalization Σa/3^i = 1 and sums 2·index+1",
            normalization,
            Duration::from_secs(120),
        ),
        (
            "index-3 density within 0.01 of 1/3 for 15 ≤ n ≤ 20",
            density_proxy,
            Duration::from_secs(5),
        ),
        ("scan to degree 3", scan_smoke, Duration::from_secs(60)),
    ];
    let mut failures = 0;
    for (i, (name, check, budget)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result =
            catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        let result = result.and_then(|()| {
            ensure(elapsed <= *budget, || {
                format!("took {elapsed:.2?}, budget {budget:?}")
            })
        });
        match result {
            Ok(()) => println!("criterion {:>2} PASS  {name} ({elapsed:.2?})", i + 1),
            Err(msg) => {
                failures += 1;
                println!("criterion {:>2} FAIL  {name} ({elapsed:.2?}): {msg}", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {} failed",
        criteria.len() - failures,
        failures
    );
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
