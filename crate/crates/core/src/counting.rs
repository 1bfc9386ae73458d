//! Exact sphere counts `|xH ∩ Sₙ|`, refined by first letter.
//!
//! `refined(v, n, h)` is the number of reduced words of length `n` in coset
//! `v` whose first letter is `h`, i.e. `|xH ∩ Sₙ ∩ A_h^c|`. Counts avoiding
//! `h` as first letter (`|· ∩ A_h|`) are obtained by subtraction.

use std::fmt::Write as _;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::cosetgraph::CosetGraph;
use crate::error::{Error, Result};
use crate::freegroup::{enumerate_sphere, sphere_size, sphere_with_prefix, Letter, Word};
use crate::recurrence::CoefficientTable;

pub const DEFAULT_BRUTE_FORCE_CAP: usize = 14;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountTable {
    /// `counts[n][v]`.
    counts: Vec<Vec<BigUint>>,
}

impl CountTable {
    pub fn horizon(&self) -> usize {
        self.counts.len() - 1
    }

    pub fn degree(&self) -> usize {
        self.counts[0].len()
    }

    pub fn get(&self, v: usize, n: usize) -> &BigUint {
        &self.counts[n][v]
    }

    pub fn row(&self, n: usize) -> &[BigUint] {
        &self.counts[n]
    }

    pub fn to_csv(&self, g: &CosetGraph) -> String {
        let mut out = String::from("n,coset,count\n");
        for (n, row) in self.counts.iter().enumerate() {
            for (v, c) in row.iter().enumerate() {
                let _ = writeln!(out, "{n},{},{c}", g.label(v));
            }
        }
        out
    }

    pub fn to_json(&self, g: &CosetGraph) -> String {
        #[derive(Serialize)]
        struct Row<'a> {
            n: usize,
            coset: &'a str,
            count: String,
        }
        let rows: Vec<Row> = self
            .counts
            .iter()
            .enumerate()
            .flat_map(|(n, row)| {
                row.iter().enumerate().map(move |(v, c)| Row {
                    n,
                    coset: g.label(v),
                    count: c.to_string(),
                })
            })
            .collect();
        serde_json::to_string_pretty(&rows).expect("counts serialize") + "\n"
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RefinedCountTable {
    /// `refined[n][v][h]`.
    refined: Vec<Vec<[BigUint; 4]>>,
    totals: CountTable,
}

impl RefinedCountTable {
    fn from_refined(refined: Vec<Vec<[BigUint; 4]>>, basepoint: usize) -> Self {
        let mut counts: Vec<Vec<BigUint>> = refined
            .iter()
            .map(|row| row.iter().map(|cells| cells.iter().sum()).collect())
            .collect();
        counts[0][basepoint] = BigUint::from(1u32);
        RefinedCountTable {
            refined,
            totals: CountTable { counts },
        }
    }

    pub fn horizon(&self) -> usize {
        self.refined.len() - 1
    }

    /// `|xH ∩ Sₙ ∩ A_h^c|`: words starting with `h`.
    pub fn starting_with(&self, v: usize, n: usize, h: Letter) -> &BigUint {
        &self.refined[n][v][h.index()]
    }

    /// `|xH ∩ Sₙ ∩ A_h|`: nonidentity words not starting with `h`.
    pub fn avoiding(&self, v: usize, n: usize, h: Letter) -> BigUint {
        if n == 0 {
            return BigUint::zero();
        }
        self.totals.get(v, n) - self.starting_with(v, n, h)
    }

    pub fn count(&self, v: usize, n: usize) -> &BigUint {
        self.totals.get(v, n)
    }

    pub fn totals(&self) -> CountTable {
        self.totals.clone()
    }

    pub fn as_totals(&self) -> &CountTable {
        &self.totals
    }
}

fn zero_row(degree: usize) -> Vec<[BigUint; 4]> {
    vec![std::array::from_fn(|_| BigUint::zero()); degree]
}

/// Transfer-matrix counts. State `(v, x)` is a word in coset `v` with first
/// letter `x`; prepending `h ≠ x⁻¹` moves it to `(σ_h v, h)`.
pub fn dp_counts(g: &CosetGraph, n_max: usize) -> RefinedCountTable {
    let k = g.degree();
    let action = g.action();
    let mut refined = vec![zero_row(k)];
    if n_max >= 1 {
        let mut first = zero_row(k);
        for x in Letter::ALL {
            first[action.image(x, g.basepoint())][x.index()] += 1u32;
        }
        refined.push(first);
    }
    for _ in 2..=n_max {
        let prev = refined.last().unwrap();
        let mut next = zero_row(k);
        for (v, cells) in prev.iter().enumerate() {
            for x in Letter::ALL {
                let mass = &cells[x.index()];
                if mass.is_zero() {
                    continue;
                }
                for h in Letter::ALL {
                    if h != x.inverse() {
                        next[action.image(h, v)][h.index()] += mass;
                    }
                }
            }
        }
        refined.push(next);
    }
    RefinedCountTable::from_refined(refined, g.basepoint())
}

pub fn brute_force_counts(g: &CosetGraph, n_max: usize) -> Result<RefinedCountTable> {
    brute_force_counts_with_cap(g, n_max, DEFAULT_BRUTE_FORCE_CAP)
}

/// Enumerates every reduced word up to length `n_max` and tallies its coset.
/// Each length is split by two-letter prefix across worker threads.
pub fn brute_force_counts_with_cap(
    g: &CosetGraph,
    n_max: usize,
    cap: usize,
) -> Result<RefinedCountTable> {
    if n_max > cap {
        return Err(Error::CapExceeded {
            what: "enumeration length",
            requested: n_max,
            cap,
        });
    }
    let k = g.degree();
    let tally = |words: &mut dyn Iterator<Item = Word>| -> Vec<[u64; 4]> {
        let mut local = vec![[0u64; 4]; k];
        for w in words {
            if let Some(first) = w.first() {
                local[g.coset_of(&w)][first.index()] += 1;
            }
        }
        local
    };
    let mut refined = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let parts: Vec<Vec<[u64; 4]>> = if n < 2 {
            vec![tally(&mut enumerate_sphere(n))]
        } else {
            let prefixes: Vec<Word> = enumerate_sphere(2).collect();
            prefixes
                .par_iter()
                .map(|p| tally(&mut sphere_with_prefix(p, n)))
                .collect()
        };
        let mut row = zero_row(k);
        for part in parts {
            for (v, cells) in part.iter().enumerate() {
                for (h, &c) in cells.iter().enumerate() {
                    row[v][h] += c;
                }
            }
        }
        refined.push(row);
    }
    Ok(RefinedCountTable::from_refined(refined, g.basepoint()))
}

/// `Σ_{i=1}^{n-1} Σ_x a_{i,x}·|xH∩S_{n-i}|` for `2 ≤ n ≤ n_max`, as `(n, value)`.
pub fn evaluate_recurrence(
    t: &CoefficientTable,
    base: &CountTable,
    n_max: usize,
) -> Result<Vec<(usize, BigUint)>> {
    if n_max >= 2 && base.horizon() < n_max - 1 {
        return Err(Error::InsufficientBase(format!(
            "counts cover n ≤ {}, need n ≤ {}",
            base.horizon(),
            n_max - 1
        )));
    }
    if !t.terminated && n_max > t.last_step + 1 {
        return Err(Error::InsufficientBase(format!(
            "coefficients known only through step {} (not terminated), need step {}",
            t.last_step,
            n_max - 1
        )));
    }
    let mut out = Vec::new();
    for n in 2..=n_max {
        let mut sum = BigUint::zero();
        for (&(i, x), &a) in t.entries.range((1, 0)..(n, 0)) {
            sum += base.get(x, n - i) * a;
        }
        out.push((n, sum));
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityViolation {
    /// 1: first-letter shift, 2: partition sum, 3: subset sum.
    pub identity: u8,
    pub vertex: usize,
    pub n: usize,
    pub detail: String,
    pub lhs: BigInt,
    pub rhs: BigInt,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityReport {
    pub checks: usize,
    pub violation: Option<IdentityViolation>,
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        self.violation.is_none()
    }
}

/// Checks, for every vertex, `2 ≤ n ≤ horizon`, letter `h` and nonempty
/// `Ω ⊆ Ξ`:
///
/// 1. `|xH∩Sₙ∩A_h^c| = |h⁻¹xH∩S_{n-1}∩A_{h⁻¹}|`
/// 2. `|xH∩Sₙ| = Σ_h |hxH∩S_{n-1}∩A_h|`
/// 3. `Σ_{h∈Ω}|xH∩Sₙ∩A_h| = (|Ω|-1)|xH∩Sₙ| + Σ_{h∉Ω}|xH∩Sₙ∩A_h^c|`
///
/// Stops at the first violation.
pub fn check_identities(g: &CosetGraph, refined: &RefinedCountTable) -> IdentityReport {
    let action = g.action();
    let mut checks = 0;
    let fail = |identity, vertex, n, detail: String, lhs: BigUint, rhs: BigUint| IdentityReport {
        checks: 0,
        violation: Some(IdentityViolation {
            identity,
            vertex,
            n,
            detail,
            lhs: lhs.into(),
            rhs: rhs.into(),
        }),
    };
    for n in 2..=refined.horizon() {
        for x in 0..g.degree() {
            for h in Letter::ALL {
                checks += 1;
                let lhs = refined.starting_with(x, n, h).clone();
                let rhs = refined.avoiding(action.image(h.inverse(), x), n - 1, h.inverse());
                if lhs != rhs {
                    let mut r = fail(1, x, n, format!("h = {h}"), lhs, rhs);
                    r.checks = checks;
                    return r;
                }
            }

            checks += 1;
            let lhs = refined.count(x, n).clone();
            let rhs: BigUint = Letter::ALL
                .into_iter()
                .map(|h| refined.avoiding(action.image(h, x), n - 1, h))
                .sum();
            if lhs != rhs {
                let mut r = fail(2, x, n, String::new(), lhs, rhs);
                r.checks = checks;
                return r;
            }

            for bits in 1u8..16 {
                checks += 1;
                let in_omega = |h: Letter| bits & (1 << h.index()) != 0;
                let size = bits.count_ones();
                let lhs: BigUint = Letter::ALL
                    .into_iter()
                    .filter(|&h| in_omega(h))
                    .map(|h| refined.avoiding(x, n, h))
                    .sum();
                let rest: BigUint = Letter::ALL
                    .into_iter()
                    .filter(|&h| !in_omega(h))
                    .map(|h| refined.starting_with(x, n, h).clone())
                    .sum();
                let rhs = refined.count(x, n) * (size - 1) + rest;
                if lhs != rhs {
                    let omega: String = Letter::ALL
                        .into_iter()
                        .filter(|&h| in_omega(h))
                        .map(|h| h.to_char())
                        .collect();
                    let mut r = fail(3, x, n, format!("Ω = {{{omega}}}"), lhs, rhs);
                    r.checks = checks;
                    return r;
                }
            }
        }
    }
    IdentityReport {
        checks,
        violation: None,
    }
}

/// `d_n^h(zH) = (|zH∩Sₙ| + |h⁻¹zH∩Sₙ|) / (2|Sₙ|)`.
pub fn density(
    g: &CosetGraph,
    z: &Word,
    h: Letter,
    n: usize,
    counts: &CountTable,
) -> Result<BigRational> {
    if n == 0 {
        return Err(Error::Malformed("density is defined for n ≥ 1".into()));
    }
    if counts.horizon() < n {
        return Err(Error::InsufficientBase(format!(
            "counts cover n ≤ {}, need n = {n}",
            counts.horizon()
        )));
    }
    let zv = g.coset_of(z);
    let shifted = g.action().image(h.inverse(), zv);
    let num = counts.get(zv, n) + counts.get(shifted, n);
    let den = sphere_size(n) * 2u32;
    Ok(BigRational::new(BigInt::from(num), BigInt::from(den)))
}

#[derive(Debug, Clone, PartialEq)]
pub struct DensityRow {
    pub n: usize,
    pub density: BigRational,
    /// `|d_n − 1/[F₂:H]|`.
    pub deviation: BigRational,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DensityReport {
    pub rows: Vec<DensityRow>,
    /// Largest deviation over `n ≥ horizon − ⌊horizon/4⌋`.
    pub tail_max_deviation: BigRational,
    pub tolerance: f64,
    pub converged: bool,
}

pub fn density_convergence(
    g: &CosetGraph,
    z: &Word,
    h: Letter,
    horizon: usize,
    tolerance: f64,
) -> Result<DensityReport> {
    if horizon == 0 {
        return Err(Error::Malformed("horizon must be positive".into()));
    }
    let counts = dp_counts(g, horizon).totals();
    let limit = BigRational::new(BigInt::from(1), BigInt::from(g.degree()));
    let rows = (1..=horizon)
        .map(|n| {
            let d = density(g, z, h, n, &counts)?;
            let deviation = (&d - &limit).abs();
            Ok(DensityRow {
                n,
                density: d,
                deviation,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let tail_start = horizon - horizon / 4;
    let tail_max_deviation = rows
        .iter()
        .filter(|r| r.n >= tail_start)
        .map(|r| r.deviation.clone())
        .max()
        .unwrap_or_else(BigRational::zero);
    let tol = BigRational::from_float(tolerance)
        .ok_or_else(|| Error::Malformed(format!("tolerance {tolerance} is not finite")))?;
    let converged = tail_max_deviation < tol;
    Ok(DensityReport {
        rows,
        tail_max_deviation,
        tolerance,
        converged,
    })
}

/// `p/q` with a decimal approximation, e.g. `1/3 (0.333333)`.
pub fn format_rational(r: &BigRational) -> String {
    format!("{} ({:.6})", r, r.to_f64().unwrap_or(f64::NAN))
}
