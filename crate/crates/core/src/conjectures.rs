//! Batch measurements for the open questions: step count against index,
//! coefficient sums, the `Σ a·3^{-i}` normalization, and runs that hit the
//! step cap. Nothing here asserts a conjecture; records only measure.

use std::fmt::Write as _;

use itertools::Itertools;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::cosetgraph::CosetGraph;
use crate::counting::format_rational;
use crate::error::{Error, Result};
use crate::freegroup::Word;
use crate::recurrence::{default_max_steps, run_omega};
use crate::subgroup::CosetAction;

pub const SCAN_DEGREE_CAP: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanRecord {
    pub degree: usize,
    pub sigma_a: Vec<usize>,
    pub sigma_b: Vec<usize>,
    pub target: usize,
    pub target_label: String,
    pub has_odd: bool,
    pub terminated: bool,
    pub last_step: usize,
    pub max_steps: usize,
    pub coefficient_sum: u64,
    /// `Σ a_{i,xH}·3^{-i}`.
    pub normalized_sum: BigRational,
    /// `last_step ≤ degree`.
    pub bound_check: bool,
}

impl ScanRecord {
    pub fn action(&self) -> CosetAction {
        CosetAction::new(self.sigma_a.clone(), self.sigma_b.clone(), 0)
            .expect("records hold valid actions")
    }

    pub fn status(&self) -> &'static str {
        if self.terminated {
            "terminated"
        } else {
            "undetermined at cap"
        }
    }

    /// Odd-containing and still running at the cap.
    pub fn needs_review(&self) -> bool {
        self.has_odd && !self.terminated
    }
}

pub fn analyze(g: &CosetGraph, y: &Word, max_steps: usize) -> ScanRecord {
    let t = run_omega(g, y, max_steps);
    let three = BigInt::from(3);
    let normalized_sum = t
        .entries
        .iter()
        .map(|(&(i, _), &a)| BigRational::new(BigInt::from(a), num_traits::pow(three.clone(), i)))
        .fold(BigRational::zero(), |acc, x| acc + x);
    ScanRecord {
        degree: g.degree(),
        sigma_a: g.action().sigma_a().to_vec(),
        sigma_b: g.action().sigma_b().to_vec(),
        target: t.target,
        target_label: g.label(t.target).to_string(),
        has_odd: g.action().has_odd_element(),
        terminated: t.terminated,
        last_step: t.last_step,
        max_steps,
        coefficient_sum: t.coefficient_sum(),
        normalized_sum,
        bound_check: t.last_step <= g.degree(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Targets {
    BasepointOnly,
    AllCosets,
}

/// Lexicographically least `(σ_a, σ_b)` over relabelings fixing vertex 0.
pub fn orbit_representative(action: &CosetAction) -> CosetAction {
    let k = action.degree();
    let base = action.canonical();
    (1..k)
        .permutations(k.saturating_sub(1))
        .map(|rest| {
            let new_id: Vec<usize> = std::iter::once(0).chain(rest).collect();
            base.relabel(&new_id)
        })
        .min_by(|x, y| (x.sigma_a(), x.sigma_b()).cmp(&(y.sigma_a(), y.sigma_b())))
        .unwrap_or(base)
}

/// One representative per isomorphism class of pointed transitive actions
/// of degree `k`, in lexicographic order of the representative.
pub fn transitive_actions(k: usize) -> Vec<CosetAction> {
    let perms: Vec<Vec<usize>> = (0..k).permutations(k).collect();
    let mut reps: Vec<CosetAction> = perms
        .par_iter()
        .flat_map_iter(|sa| {
            perms.iter().filter_map(move |sb| {
                let action = CosetAction::new(sa.clone(), sb.clone(), 0).ok()?;
                // each class meets the BFS-canonical forms exactly once
                (action.canonical() == action).then_some(action)
            })
        })
        .map(|a| orbit_representative(&a))
        .collect();
    reps.sort_by(|x, y| (x.sigma_a(), x.sigma_b()).cmp(&(y.sigma_a(), y.sigma_b())));
    reps
}

/// Every transitive action of degree `1..=max_degree` up to isomorphism,
/// analyzed at `max_steps` (default `10·degree + 16`).
pub fn scan(
    max_degree: usize,
    max_steps: Option<usize>,
    targets: Targets,
) -> Result<Vec<ScanRecord>> {
    scan_with_cap(max_degree, max_steps, targets, SCAN_DEGREE_CAP)
}

pub fn scan_with_cap(
    max_degree: usize,
    max_steps: Option<usize>,
    targets: Targets,
    cap: usize,
) -> Result<Vec<ScanRecord>> {
    if max_degree > cap {
        return Err(Error::CapExceeded {
            what: "scan degree",
            requested: max_degree,
            cap,
        });
    }
    let jobs: Vec<(CosetGraph, usize)> = (1..=max_degree)
        .flat_map(transitive_actions)
        .flat_map(|action| {
            let g = CosetGraph::build(action);
            let vertices = match targets {
                Targets::BasepointOnly => vec![g.basepoint()],
                Targets::AllCosets => (0..g.degree()).collect(),
            };
            vertices.into_iter().map(move |v| (g.clone(), v))
        })
        .collect();
    Ok(jobs
        .par_iter()
        .map(|(g, v)| {
            let steps = max_steps.unwrap_or_else(|| default_max_steps(g.degree()));
            analyze(g, g.representative(*v), steps)
        })
        .collect())
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScanSummary {
    pub records: usize,
    pub terminated: usize,
    /// Largest `last_step / degree` among terminated records.
    pub max_step_ratio: Option<BigRational>,
    /// Odd-containing terminated records with sum `≠ 2·degree + 1`.
    pub sum_exceptions: Vec<usize>,
    /// Terminated records with `Σ a·3^{-i} ≠ 1`.
    pub normalization_exceptions: Vec<usize>,
    /// Terminated records with `last_step > degree`.
    pub bound_exceptions: Vec<usize>,
    /// Records that reached the step cap.
    pub undetermined: Vec<usize>,
    /// Undetermined records whose subgroup has an odd-length element.
    pub flagged_for_review: Vec<usize>,
}

pub fn report(records: &[ScanRecord]) -> ScanSummary {
    let pick = |pred: &dyn Fn(&ScanRecord) -> bool| -> Vec<usize> {
        records
            .iter()
            .enumerate()
            .filter(|(_, r)| pred(r))
            .map(|(i, _)| i)
            .collect()
    };
    let max_step_ratio = records
        .iter()
        .filter(|r| r.terminated)
        .map(|r| BigRational::new(r.last_step.into(), r.degree.into()))
        .max();
    ScanSummary {
        records: records.len(),
        terminated: records.iter().filter(|r| r.terminated).count(),
        max_step_ratio,
        sum_exceptions: pick(&|r| {
            r.terminated && r.has_odd && r.coefficient_sum != 2 * r.degree as u64 + 1
        }),
        normalization_exceptions: pick(&|r| r.terminated && !r.normalized_sum.is_one()),
        bound_exceptions: pick(&|r| r.terminated && !r.bound_check),
        undetermined: pick(&|r| !r.terminated),
        flagged_for_review: pick(&|r| r.needs_review()),
    }
}

#[derive(Serialize)]
struct RecordDocument<'a> {
    degree: usize,
    sigma_a: &'a [usize],
    sigma_b: &'a [usize],
    target: &'a str,
    has_odd: bool,
    status: &'static str,
    last_step: usize,
    max_steps: usize,
    coefficient_sum: u64,
    normalized_sum: String,
    normalized_sum_decimal: f64,
    bound_check: bool,
}

impl<'a> From<&'a ScanRecord> for RecordDocument<'a> {
    fn from(r: &'a ScanRecord) -> Self {
        use num_traits::ToPrimitive;
        RecordDocument {
            degree: r.degree,
            sigma_a: &r.sigma_a,
            sigma_b: &r.sigma_b,
            target: &r.target_label,
            has_odd: r.has_odd,
            status: r.status(),
            last_step: r.last_step,
            max_steps: r.max_steps,
            coefficient_sum: r.coefficient_sum,
            normalized_sum: r.normalized_sum.to_string(),
            normalized_sum_decimal: r.normalized_sum.to_f64().unwrap_or(f64::NAN),
            bound_check: r.bound_check,
        }
    }
}

#[derive(Serialize)]
struct SummaryDocument<'a> {
    records: usize,
    terminated: usize,
    max_step_ratio: Option<String>,
    sum_exceptions: &'a [usize],
    normalization_exceptions: &'a [usize],
    bound_exceptions: &'a [usize],
    undetermined_at_cap: &'a [usize],
    flagged_for_review: &'a [usize],
    entries: Vec<RecordDocument<'a>>,
}

fn index_list(ix: &[usize]) -> String {
    if ix.is_empty() {
        "none".into()
    } else {
        ix.iter().map(|i| format!("#{i}")).join(", ")
    }
}

impl ScanSummary {
    pub fn to_json(&self, records: &[ScanRecord]) -> String {
        let doc = SummaryDocument {
            records: self.records,
            terminated: self.terminated,
            max_step_ratio: self.max_step_ratio.as_ref().map(|r| r.to_string()),
            sum_exceptions: &self.sum_exceptions,
            normalization_exceptions: &self.normalization_exceptions,
            bound_exceptions: &self.bound_exceptions,
            undetermined_at_cap: &self.undetermined,
            flagged_for_review: &self.flagged_for_review,
            entries: records.iter().map(RecordDocument::from).collect(),
        };
        serde_json::to_string_pretty(&doc).expect("summary serializes") + "\n"
    }

    pub fn to_text(&self, records: &[ScanRecord]) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "{:>4}  {:>3}  {:<16}  {:<16}  {:<8}  {:<4}  {:<20}  {:>4}  {:>4}  {:<10}",
            "#", "deg", "sigma_a", "sigma_b", "target", "odd", "status", "last", "sum", "norm"
        );
        for (i, r) in records.iter().enumerate() {
            let _ = writeln!(
                out,
                "{:>4}  {:>3}  {:<16}  {:<16}  {:<8}  {:<4}  {:<20}  {:>4}  {:>4}  {:<10}",
                i,
                r.degree,
                format!("{:?}", r.sigma_a),
                format!("{:?}", r.sigma_b),
                r.target_label,
                if r.has_odd { "yes" } else { "no" },
                r.status(),
                r.last_step,
                r.coefficient_sum,
                r.normalized_sum.to_string()
            );
        }
        let _ = writeln!(out);
        let _ = writeln!(
            out,
            "records: {} ({} terminated)",
            self.records, self.terminated
        );
        let ratio = self
            .max_step_ratio
            .as_ref()
            .map(format_rational)
            .unwrap_or_else(|| "n/a".into());
        let _ = writeln!(out, "max last_step/degree: {ratio}");
        let _ = writeln!(
            out,
            "sum != 2*degree+1 (odd, terminated): {}",
            index_list(&self.sum_exceptions)
        );
        let _ = writeln!(
            out,
            "normalized sum != 1 (terminated): {}",
            index_list(&self.normalization_exceptions)
        );
        let _ = writeln!(
            out,
            "last_step > degree (terminated): {}",
            index_list(&self.bound_exceptions)
        );
        let _ = writeln!(
            out,
            "undetermined at cap: {}",
            index_list(&self.undetermined)
        );
        let _ = writeln!(
            out,
            "flagged for review: {}",
            index_list(&self.flagged_for_review)
        );
        out
    }
}

pub fn records_csv(records: &[ScanRecord]) -> String {
    let mut out = String::from(
        "degree,sigma_a,sigma_b,target,has_odd,status,last_step,max_steps,coefficient_sum,normalized_sum,bound_check\n",
    );
    let perm = |p: &[usize]| p.iter().join(" ");
    for r in records {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{},{}",
            r.degree,
            perm(&r.sigma_a),
            perm(&r.sigma_b),
            r.target_label,
            r.has_odd,
            r.status(),
            r.last_step,
            r.max_steps,
            r.coefficient_sum,
            r.normalized_sum,
            r.bound_check
        );
    }
    out
}
