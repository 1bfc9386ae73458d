//! Recurrence coefficients `a_{i,xH}` for `|yH ∩ Sₙ|`.
//!
//! Three independent formulations are provided and must agree:
//!
//! * [`OmegaSteps`]: letter sets `Ω_{i,xH}`, where `Ω_{k+1,zH}` holds the
//!   letters `h` with `Ω_{k-1,zH} = ∅` and `Ω_{k,h⁻¹zH} ≠ ∅`, starting from
//!   `Ω_{0,yH} = Ξ` and `Ω_{-1,·} = ∅`.
//! * [`EdgeSteps`]: highlighted edge sets `E_i`. `E_1` is every edge out of
//!   `yH`; `t → s` is in `E_{i+1}` when some edge of `E_i` enters `t` and the
//!   reverse edge `s → t` is not in `E_i`.
//! * [`VitalSteps`]: last edges of vital walks, by a layered reachability
//!   program.
//!
//! The coefficient is `a_{i,xH} = b_{i,xH} - 1` where `b_{i,xH}` counts the
//! highlighted edges into `xH` (equivalently `|Ω_{i,xH}|`), and zero when
//! nothing enters `xH`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::cosetgraph::{CosetGraph, DirectedEdge};
use crate::counting::CountTable;
use crate::error::{Error, Result};
use crate::freegroup::{Letter, Word};

/// Step cap used when none is given: `10·[F₂:H] + 16`.
pub fn default_max_steps(degree: usize) -> usize {
    10 * degree + 16
}

/// A subset of the four letters, bit `i` for `Letter::ALL[i]`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct LetterSet(u8);

impl LetterSet {
    pub const EMPTY: LetterSet = LetterSet(0);
    pub const ALL: LetterSet = LetterSet(0b1111);

    pub fn from_bits(bits: u8) -> LetterSet {
        LetterSet(bits & 0b1111)
    }

    pub fn bits(self) -> u8 {
        self.0
    }

    pub fn insert(&mut self, h: Letter) {
        self.0 |= 1 << h.index();
    }

    pub fn contains(self, h: Letter) -> bool {
        self.0 & (1 << h.index()) != 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn iter(self) -> impl Iterator<Item = Letter> {
        Letter::ALL.into_iter().filter(move |&h| self.contains(h))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OmegaState {
    pub step: usize,
    pub omega: Vec<LetterSet>,
}

impl OmegaState {
    pub fn is_empty(&self) -> bool {
        self.omega.iter().all(|s| s.is_empty())
    }

    /// Vertices with nonempty `Ω`.
    pub fn charged(&self) -> Vec<usize> {
        (0..self.omega.len())
            .filter(|&v| !self.omega[v].is_empty())
            .collect()
    }

    /// `E_i(xH) = {h⁻¹xH → xH : h ∈ Ω_{i,xH}}`, sorted by edge id.
    pub fn edges(&self, g: &CosetGraph) -> Vec<DirectedEdge> {
        let mut edges: Vec<DirectedEdge> = self
            .omega
            .iter()
            .enumerate()
            .flat_map(|(x, set)| {
                set.iter().map(move |h| DirectedEdge {
                    source: g.action().image(h.inverse(), x),
                    label: h,
                    target: x,
                })
            })
            .collect();
        edges.sort_by_key(DirectedEdge::id);
        edges
    }
}

/// Unbounded iterator over `Ω_1, Ω_2, …`.
#[derive(Debug, Clone)]
pub struct OmegaSteps<'g> {
    graph: &'g CosetGraph,
    prev2: Vec<LetterSet>,
    prev: Vec<LetterSet>,
    step: usize,
}

impl<'g> OmegaSteps<'g> {
    pub fn new(graph: &'g CosetGraph, target: usize) -> Self {
        let k = graph.degree();
        let mut prev = vec![LetterSet::EMPTY; k];
        prev[target] = LetterSet::ALL;
        OmegaSteps {
            graph,
            prev2: vec![LetterSet::EMPTY; k],
            prev,
            step: 0,
        }
    }
}

impl Iterator for OmegaSteps<'_> {
    type Item = OmegaState;

    fn next(&mut self) -> Option<OmegaState> {
        let action = self.graph.action();
        let next: Vec<LetterSet> = (0..self.graph.degree())
            .map(|z| {
                let mut set = LetterSet::EMPTY;
                if self.prev2[z].is_empty() {
                    for h in Letter::ALL {
                        if !self.prev[action.image(h.inverse(), z)].is_empty() {
                            set.insert(h);
                        }
                    }
                }
                set
            })
            .collect();
        self.prev2 = std::mem::replace(&mut self.prev, next.clone());
        self.step += 1;
        Some(OmegaState {
            step: self.step,
            omega: next,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeState {
    pub step: usize,
    /// Sorted by edge id.
    pub highlighted: Vec<DirectedEdge>,
}

impl EdgeState {
    fn from_mask(step: usize, g: &CosetGraph, mask: &[bool]) -> EdgeState {
        let highlighted = g.edges().iter().filter(|e| mask[e.id()]).copied().collect();
        EdgeState { step, highlighted }
    }

    pub fn is_empty(&self) -> bool {
        self.highlighted.is_empty()
    }

    /// `b_{i,xH}` for every vertex.
    pub fn in_counts(&self, degree: usize) -> Vec<usize> {
        let mut counts = vec![0; degree];
        for e in &self.highlighted {
            counts[e.target] += 1;
        }
        counts
    }

    /// Charged vertices: those entered by a highlighted edge.
    pub fn charged(&self, degree: usize) -> Vec<bool> {
        self.in_counts(degree).into_iter().map(|c| c > 0).collect()
    }
}

/// Unbounded iterator over `E_1, E_2, …` following the edge recursion.
#[derive(Debug, Clone)]
pub struct EdgeSteps<'g> {
    graph: &'g CosetGraph,
    current: Option<Vec<bool>>,
    target: usize,
    step: usize,
}

impl<'g> EdgeSteps<'g> {
    pub fn new(graph: &'g CosetGraph, target: usize) -> Self {
        EdgeSteps {
            graph,
            current: None,
            target,
            step: 0,
        }
    }
}

impl Iterator for EdgeSteps<'_> {
    type Item = EdgeState;

    fn next(&mut self) -> Option<EdgeState> {
        let g = self.graph;
        let mut next = vec![false; g.edges().len()];
        match &self.current {
            None => {
                for e in &g.edges()[4 * self.target..4 * self.target + 4] {
                    next[e.id()] = true;
                }
            }
            Some(cur) => {
                let mut charged = vec![false; g.degree()];
                for e in g.edges() {
                    if cur[e.id()] {
                        charged[e.target] = true;
                    }
                }
                for e in g.edges() {
                    if charged[e.source] && !cur[e.reverse().id()] {
                        next[e.id()] = true;
                    }
                }
            }
        }
        self.step += 1;
        let state = EdgeState::from_mask(self.step, g, &next);
        self.current = Some(next);
        Some(state)
    }
}

/// Unbounded iterator over `V_1, V_2, …`: `V_ℓ` is the set of edges that
/// end some vital walk of length `ℓ` from `yH`.
///
/// A walk `(v_0, …, v_n)` is vital when no walk `(u_0, …, u_m)` with
/// `m < n`, `u_0 = v_0`, `u_{m-1} = v_{m+1}`, `u_m = v_m` exists. Since the
/// graph is symmetric, such a `u` exists iff `v_{m+1}` is reachable from
/// `v_0` in exactly `m - 1` steps, so the program tracks `R_m`, the vertices
/// reachable in exactly `m` steps, alongside the frontier edges.
#[derive(Debug, Clone)]
pub struct VitalSteps<'g> {
    graph: &'g CosetGraph,
    target: usize,
    /// `R_{m-1}` where `m` is the step last emitted.
    reach_before: Vec<bool>,
    current: Option<Vec<bool>>,
    step: usize,
}

impl<'g> VitalSteps<'g> {
    pub fn new(graph: &'g CosetGraph, target: usize) -> Self {
        let mut reach = vec![false; graph.degree()];
        reach[target] = true;
        VitalSteps {
            graph,
            target,
            reach_before: reach,
            current: None,
            step: 0,
        }
    }

    /// `(u, w) ∈ D_m`: the pair can be the last two vertices of a walk of
    /// length `m` from `yH`.
    fn realizable(&self, u: usize, w: usize) -> bool {
        self.reach_before[u]
            && self.graph.edges()[4 * u..4 * u + 4]
                .iter()
                .any(|e| e.target == w)
    }
}

impl Iterator for VitalSteps<'_> {
    type Item = EdgeState;

    fn next(&mut self) -> Option<EdgeState> {
        let g = self.graph;
        let mut next = vec![false; g.edges().len()];
        match &self.current {
            None => {
                for e in &g.edges()[4 * self.target..4 * self.target + 4] {
                    next[e.id()] = true;
                }
            }
            Some(cur) => {
                let mut ends = vec![false; g.degree()];
                for e in g.edges() {
                    if cur[e.id()] {
                        ends[e.target] = true;
                    }
                }
                for e in g.edges() {
                    if ends[e.source] && !self.realizable(e.target, e.source) {
                        next[e.id()] = true;
                    }
                }
                let mut reach = vec![false; g.degree()];
                for e in g.edges() {
                    if self.reach_before[e.source] {
                        reach[e.target] = true;
                    }
                }
                self.reach_before = reach;
            }
        }
        self.step += 1;
        let state = EdgeState::from_mask(self.step, g, &next);
        self.current = Some(next);
        Some(state)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoefficientTable {
    /// Vertex of `yH`.
    pub target: usize,
    /// Nonzero `a_{i,xH}` keyed by `(i, xH)`.
    pub entries: BTreeMap<(usize, usize), u64>,
    /// Largest step with a nonempty set, or the step cap when not terminated.
    pub last_step: usize,
    pub terminated: bool,
}

impl CoefficientTable {
    /// Builds the table from per-step `b_{i,xH}` counts, stopping once two
    /// consecutive steps are empty or `max_steps` is reached. Returns the
    /// table and the number of steps consumed.
    fn from_counts<I>(target: usize, counts: I, max_steps: usize) -> (CoefficientTable, usize)
    where
        I: Iterator<Item = Vec<usize>>,
    {
        let mut entries = BTreeMap::new();
        let mut last_nonempty = 0;
        let mut prev_empty = false;
        let mut consumed = 0;
        for (i, b) in (1..=max_steps).zip(counts) {
            consumed = i;
            let empty = b.iter().all(|&c| c == 0);
            for (x, &c) in b.iter().enumerate() {
                if c > 1 {
                    entries.insert((i, x), (c - 1) as u64);
                }
            }
            if empty {
                if prev_empty {
                    return (
                        CoefficientTable {
                            target,
                            entries,
                            last_step: last_nonempty,
                            terminated: true,
                        },
                        consumed,
                    );
                }
                prev_empty = true;
            } else {
                prev_empty = false;
                last_nonempty = i;
            }
        }
        (
            CoefficientTable {
                target,
                entries,
                last_step: max_steps,
                terminated: false,
            },
            consumed,
        )
    }

    pub fn get(&self, step: usize, vertex: usize) -> u64 {
        self.entries.get(&(step, vertex)).copied().unwrap_or(0)
    }

    /// `Σ a_{i,xH}`.
    pub fn coefficient_sum(&self) -> u64 {
        self.entries.values().sum()
    }

    /// First `n` from which the recurrence is guaranteed: `last_step + 1`.
    pub fn valid_from(&self) -> usize {
        self.last_step + 1
    }

    pub fn to_json(&self, g: &CosetGraph) -> String {
        let doc = TableDocument {
            target: g.label(self.target).to_string(),
            terminated: self.terminated,
            last_step: self.last_step,
            entries: self
                .entries
                .iter()
                .map(|(&(step, v), &a)| EntryDocument {
                    step,
                    coset: g.label(v).to_string(),
                    a,
                })
                .collect(),
        };
        serde_json::to_string_pretty(&doc).expect("table serializes") + "\n"
    }

    pub fn from_json(g: &CosetGraph, text: &str) -> Result<CoefficientTable> {
        let doc: TableDocument =
            serde_json::from_str(text).map_err(|e| Error::Malformed(e.to_string()))?;
        let vertex = |label: &str| {
            g.vertex_of_label(label)
                .ok_or_else(|| Error::Malformed(format!("unknown coset label {label:?}")))
        };
        let mut entries = BTreeMap::new();
        for e in &doc.entries {
            if e.step == 0 {
                return Err(Error::Malformed("coefficient steps start at 1".into()));
            }
            if e.a != 0 {
                entries.insert((e.step, vertex(&e.coset)?), e.a);
            }
        }
        Ok(CoefficientTable {
            target: vertex(&doc.target)?,
            entries,
            last_step: doc.last_step,
            terminated: doc.terminated,
        })
    }

    pub fn to_csv(&self, g: &CosetGraph) -> String {
        let mut out = String::from("step,coset,a\n");
        for (&(step, v), &a) in &self.entries {
            let _ = writeln!(out, "{step},{},{a}", g.label(v));
        }
        out
    }

    /// `|yH∩S_n| = c·|xH∩S_{n-i}| + …  (n ≥ N)`.
    pub fn render_text(&self, g: &CosetGraph) -> String {
        let terms: Vec<String> = self
            .entries
            .iter()
            .map(|(&(i, v), &a)| format!("{a}·|{}∩S_{{n-{i}}}|", g.label(v)))
            .collect();
        let rhs = if terms.is_empty() {
            "0".to_string()
        } else {
            terms.join(" + ")
        };
        let scope = if self.terminated {
            format!("(n ≥ {})", self.valid_from())
        } else {
            format!(
                "(undetermined at cap {}; terms shown are exact)",
                self.last_step
            )
        };
        format!("|{}∩S_n| = {rhs}  {scope}", g.label(self.target))
    }

    pub fn render_latex(&self, g: &CosetGraph) -> String {
        let label = |v: usize| latex_coset(g.representative(v));
        let terms: Vec<String> = self
            .entries
            .iter()
            .map(|(&(i, v), &a)| {
                let c = if a == 1 { String::new() } else { a.to_string() };
                format!("{c}|{}\\cap S_{{n-{i}}}|", label(v))
            })
            .collect();
        let rhs = if terms.is_empty() {
            "0".to_string()
        } else {
            terms.join(" + ")
        };
        format!(
            "|{}\\cap S_{{n}}| = {rhs} \\quad\\text{{ for each }} n\\geq {}",
            label(self.target),
            self.valid_from()
        )
    }
}

/// `bbA` → `b^{2}a^{-1}H`.
pub fn latex_coset(w: &Word) -> String {
    let mut out = String::new();
    let letters = w.letters();
    let mut i = 0;
    while i < letters.len() {
        let x = letters[i];
        let mut run = 1;
        while i + run < letters.len() && letters[i + run] == x {
            run += 1;
        }
        let base = x.inverse().min(x).to_char();
        let exp: i64 = if x.is_inverse() {
            -(run as i64)
        } else {
            run as i64
        };
        if exp == 1 {
            out.push(base);
        } else {
            let _ = write!(out, "{base}^{{{exp}}}");
        }
        i += run;
    }
    out.push('H');
    out
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct TableDocument {
    target: String,
    terminated: bool,
    last_step: usize,
    entries: Vec<EntryDocument>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct EntryDocument {
    step: usize,
    coset: String,
    a: u64,
}

pub fn run_omega(g: &CosetGraph, y: &Word, max_steps: usize) -> CoefficientTable {
    let target = g.coset_of(y);
    let counts = OmegaSteps::new(g, target).map(|s| s.omega.iter().map(|o| o.len()).collect());
    CoefficientTable::from_counts(target, counts, max_steps).0
}

/// The highlighted-edge algorithm. Returns the table and every `E_i`
/// computed, up to the step at which termination was detected.
pub fn run_edges(g: &CosetGraph, y: &Word, max_steps: usize) -> (CoefficientTable, Vec<EdgeState>) {
    let target = g.coset_of(y);
    let states: Vec<EdgeState> = EdgeSteps::new(g, target).take(max_steps).collect();
    let counts = states.iter().map(|s| s.in_counts(g.degree()));
    let (table, consumed) = CoefficientTable::from_counts(target, counts, max_steps);
    let mut states = states;
    states.truncate(consumed);
    (table, states)
}

/// `V_1, …, V_{max_steps}`.
pub fn run_vital(g: &CosetGraph, y: &Word, max_steps: usize) -> Vec<EdgeState> {
    VitalSteps::new(g, g.coset_of(y)).take(max_steps).collect()
}

/// Diagnostic upper bound `N₀ + 2·[F₂:H]` on vital-walk length, where `N₀`
/// is the least `n₀ ≥ 1` with `|H∩Sₙ| > 0` for all `n₀ ≤ n ≤ horizon`.
/// `None` when `|H∩S_horizon| = 0`.
pub fn termination_bound(g: &CosetGraph, counts: &CountTable) -> Result<Option<usize>> {
    if !g.action().has_odd_element() {
        return Err(Error::OddElementRequired);
    }
    let base = g.basepoint();
    let horizon = counts.horizon();
    let mut n0 = None;
    for n in (1..=horizon).rev() {
        if counts.get(base, n).bits() == 0 {
            break;
        }
        n0 = Some(n);
    }
    Ok(n0.map(|n0| n0 + 2 * g.degree()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::counting::dp_counts;

    fn w(s: &str) -> Word {
        Word::parse(s).unwrap()
    }

    fn entries(g: &CosetGraph, t: &CoefficientTable) -> Vec<(usize, String, u64)> {
        t.entries
            .iter()
            .map(|(&(i, v), &a)| (i, g.label(v).to_string(), a))
            .collect()
    }

    fn expect(list: &[(usize, &str, u64)]) -> Vec<(usize, String, u64)> {
        let mut v: Vec<_> = list
            .iter()
            .map(|&(i, l, a)| (i, l.to_string(), a))
            .collect();
        v.sort();
        v
    }

    fn sorted(mut v: Vec<(usize, String, u64)>) -> Vec<(usize, String, u64)> {
        v.sort();
        v
    }

    #[test]
    fn index3_target_a() {
        let g = CosetGraph::build(corpus::index3_action());
        let t = run_omega(&g, &w("a"), 20);
        assert_eq!(
            sorted(entries(&g, &t)),
            expect(&[
                (1, "aH", 1),
                (1, "H", 1),
                (2, "H", 1),
                (2, "bH", 1),
                (3, "bH", 3)
            ])
        );
        assert!(t.terminated);
        assert_eq!(t.last_step, 3);
    }

    #[test]
    fn index5_identity() {
        let g = CosetGraph::build(corpus::index5_action());
        let t = run_omega(&g, &Word::identity(), 60);
        assert_eq!(
            sorted(entries(&g, &t)),
            expect(&[
                (1, "aH", 1),
                (1, "bH", 1),
                (2, "abH", 2),
                (3, "baH", 2),
                (4, "aH", 1),
                (4, "bH", 1),
                (5, "H", 3)
            ])
        );
        assert_eq!((t.terminated, t.last_step), (true, 5));
    }

    #[test]
    fn index7_identity() {
        let g = CosetGraph::build(corpus::index7_action());
        let t = run_omega(&g, &Word::identity(), 86);
        assert_eq!(
            sorted(entries(&g, &t)),
            expect(&[
                (2, "aH", 2),
                (2, "AH", 2),
                (2, "bH", 1),
                (2, "BH", 1),
                (3, "H", 3),
                (3, "bbH", 3),
                (3, "BBH", 3)
            ])
        );
        assert_eq!((t.terminated, t.last_step), (true, 3));
    }

    #[test]
    fn even_identity() {
        let g = CosetGraph::build(corpus::even_action());
        let t = run_omega(&g, &Word::identity(), 36);
        assert_eq!(entries(&g, &t), expect(&[(1, "aH", 3)]));
        assert_eq!((t.terminated, t.last_step), (true, 1));
    }

    #[test]
    fn cap_reports_undetermined() {
        let g = CosetGraph::build(corpus::index5_action());
        let t = run_omega(&g, &Word::identity(), 5);
        assert!(!t.terminated);
        assert_eq!(t.last_step, 5);
        // one step past the last nonempty one is still not enough
        assert!(!run_omega(&g, &Word::identity(), 6).terminated);
        assert!(run_omega(&g, &Word::identity(), 7).terminated);
    }

    #[test]
    fn edge_steps_index3() {
        let g = CosetGraph::build(corpus::index3_action());
        let (t, states) = run_edges(&g, &w("a"), 20);
        assert_eq!(t, run_omega(&g, &w("a"), 20));
        let e1 = &states[0];
        assert_eq!(e1.highlighted.len(), 4);
        assert!(e1.highlighted.iter().all(|e| e.source == 1));
        let b1 = e1.in_counts(3);
        assert_eq!(b1, [2, 2, 0]);
    }

    #[test]
    fn edge_steps_index5_and_index7() {
        let g5 = CosetGraph::build(corpus::index5_action());
        let (_, s5) = run_edges(&g5, &Word::identity(), 60);
        let ab = g5.vertex_of_label("abH").unwrap();
        assert_eq!(s5[1].in_counts(5)[ab], 3);

        let g7 = CosetGraph::build(corpus::index7_action());
        let (_, s7) = run_edges(&g7, &Word::identity(), 60);
        let b1 = s7[0].in_counts(7);
        assert_eq!(b1.iter().filter(|&&c| c == 1).count(), 4);
        assert!(b1.iter().all(|&c| c <= 1));
    }

    #[test]
    fn vital_first_step_and_termination() {
        let g = CosetGraph::build(corpus::index3_action());
        let v = run_vital(&g, &w("a"), 6);
        assert_eq!(v[0].highlighted, g.out_edges(1).unwrap().to_vec());
        assert!(v[3].is_empty());
        let even = CosetGraph::build(corpus::even_action());
        let v = run_vital(&even, &Word::identity(), 3);
        assert!(v[1].is_empty());
    }

    // Oracle: enumerate every walk of length ℓ from the target and test the
    // vitality definition directly against all shorter walks.
    fn vital_by_enumeration(g: &CosetGraph, target: usize, len: usize) -> Vec<DirectedEdge> {
        fn walks(
            g: &CosetGraph,
            start: usize,
            len: usize,
        ) -> Vec<Vec<(usize, Option<DirectedEdge>)>> {
            let mut out = vec![vec![(start, None)]];
            for _ in 0..len {
                out = out
                    .into_iter()
                    .flat_map(|walk| {
                        let last = walk.last().unwrap().0;
                        g.out_edges(last)
                            .unwrap()
                            .iter()
                            .map(move |e| {
                                let mut w = walk.clone();
                                w.push((e.target, Some(*e)));
                                w
                            })
                            .collect::<Vec<_>>()
                    })
                    .collect();
            }
            out
        }
        let shorter: Vec<Vec<Vec<usize>>> = (0..len)
            .map(|m| {
                walks(g, target, m)
                    .into_iter()
                    .map(|w| w.into_iter().map(|(v, _)| v).collect())
                    .collect()
            })
            .collect();
        let mut result = std::collections::BTreeSet::new();
        for walk in walks(g, target, len) {
            let v: Vec<usize> = walk.iter().map(|(x, _)| *x).collect();
            let blocked = (1..len).any(|m| {
                shorter[m]
                    .iter()
                    .any(|u| u[m - 1] == v[m + 1] && u[m] == v[m])
            });
            if !blocked {
                result.insert(walk.last().unwrap().1.unwrap());
            }
        }
        let mut v: Vec<_> = result.into_iter().collect();
        v.sort_by_key(DirectedEdge::id);
        v
    }

    #[test]
    fn vital_matches_walk_enumeration() {
        for (_, action) in corpus::all() {
            let g = CosetGraph::build(action);
            let max_len = if g.degree() > 5 { 5 } else { 6 };
            for target in 0..g.degree() {
                let y = g.representative(target).clone();
                let dp = run_vital(&g, &y, max_len);
                for len in 1..=max_len {
                    assert_eq!(
                        dp[len - 1].highlighted,
                        vital_by_enumeration(&g, target, len),
                        "target {target} length {len}"
                    );
                }
            }
        }
    }

    #[test]
    fn three_formulations_agree() {
        for (_, action) in corpus::all() {
            let g = CosetGraph::build(action);
            for target in 0..g.degree() {
                let omega = OmegaSteps::new(&g, target).take(40);
                let edges = EdgeSteps::new(&g, target).take(40);
                let vital = VitalSteps::new(&g, target).take(40);
                for ((o, e), v) in omega.zip(edges).zip(vital) {
                    assert_eq!(o.edges(&g), e.highlighted);
                    assert_eq!(e, v);
                }
            }
        }
    }

    #[test]
    fn parallel_edges_move_together() {
        for (_, action) in corpus::all() {
            let g = CosetGraph::build(action);
            for target in 0..g.degree() {
                for e in EdgeSteps::new(&g, target).take(30) {
                    for a in g.edges() {
                        for b in g.edges() {
                            if a.source == b.source && a.target == b.target {
                                assert_eq!(e.highlighted.contains(a), e.highlighted.contains(b));
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn emptiness_is_absorbing() {
        for (_, action) in corpus::all() {
            let g = CosetGraph::build(action);
            for target in 0..g.degree() {
                let states: Vec<OmegaState> = OmegaSteps::new(&g, target).take(50).collect();
                if let Some(first) = states.iter().position(|s| s.is_empty()) {
                    assert!(states[first..].iter().all(|s| s.is_empty()));
                }
            }
        }
    }

    #[test]
    fn bounds() {
        let g = CosetGraph::build(corpus::index3_action());
        let counts = dp_counts(&g, 20).totals();
        assert_eq!(termination_bound(&g, &counts).unwrap(), Some(8));
        assert!(run_omega(&g, &w("a"), 100).last_step <= 8);

        let g7 = CosetGraph::build(corpus::index7_action());
        let counts = dp_counts(&g7, 20).totals();
        let bound = termination_bound(&g7, &counts).unwrap().unwrap();
        assert!(bound >= run_omega(&g7, &Word::identity(), 100).last_step);

        let even = CosetGraph::build(corpus::even_action());
        let counts = dp_counts(&even, 20).totals();
        assert_eq!(
            termination_bound(&even, &counts),
            Err(Error::OddElementRequired)
        );
    }

    #[test]
    fn renderings() {
        let g = CosetGraph::build(corpus::index3_action());
        let t = run_omega(&g, &w("a"), 40);
        assert_eq!(
            t.render_text(&g),
            "|aH∩S_n| = 1·|H∩S_{n-1}| + 1·|aH∩S_{n-1}| + 1·|H∩S_{n-2}| + 1·|bH∩S_{n-2}| + 3·|bH∩S_{n-3}|  (n ≥ 4)"
        );
        assert_eq!(
            t.render_latex(&g),
            "|aH\\cap S_{n}| = |H\\cap S_{n-1}| + |aH\\cap S_{n-1}| + |H\\cap S_{n-2}| + |bH\\cap S_{n-2}| + 3|bH\\cap S_{n-3}| \\quad\\text{ for each } n\\geq 4"
        );
        let back = CoefficientTable::from_json(&g, &t.to_json(&g)).unwrap();
        assert_eq!(back, t);
        assert_eq!(t.to_csv(&g).lines().count(), 6);
        assert_eq!(latex_coset(&w("bbA")), "b^{2}a^{-1}H");
        assert_eq!(latex_coset(&w("BB")), "b^{-2}H");
        assert_eq!(latex_coset(&Word::identity()), "H");
        assert!(CoefficientTable::from_json(
            &g,
            r#"{"target":"zH","terminated":true,"last_step":1,"entries":[]}"#
        )
        .is_err());
    }
}
