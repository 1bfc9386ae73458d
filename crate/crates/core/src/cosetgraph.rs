//! The directed coset graph: one labeled edge `v → σ_h(v)` per vertex and
//! letter, parallel edges and loops kept distinct.

use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::freegroup::{Letter, Word};
use crate::subgroup::CosetAction;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DirectedEdge {
    pub source: usize,
    pub label: Letter,
    pub target: usize,
}

impl DirectedEdge {
    /// Dense id `4·source + label`.
    pub fn id(&self) -> usize {
        4 * self.source + self.label.index()
    }

    /// `(v, h, σ_h v)` reversed is `(σ_h v, h⁻¹, v)`.
    pub fn reverse(&self) -> DirectedEdge {
        DirectedEdge {
            source: self.target,
            label: self.label.inverse(),
            target: self.source,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CosetGraph {
    action: CosetAction,
    edges: Vec<DirectedEdge>,
    label_words: Vec<Word>,
    labels: Vec<String>,
}

/// `"H"` for the identity, `"<word>H"` otherwise.
pub fn coset_label(w: &Word) -> String {
    format!("{w}H")
}

impl CosetGraph {
    pub fn build(action: CosetAction) -> CosetGraph {
        let k = action.degree();
        let edges = (0..k)
            .flat_map(|v| {
                let action = &action;
                Letter::ALL.into_iter().map(move |h| DirectedEdge {
                    source: v,
                    label: h,
                    target: action.image(h, v),
                })
            })
            .collect();
        // Shortlex-least representative (letter order a, b, A, B). The first
        // letter dominates, so take the least x stepping one closer to H.
        let order = action.bfs_tree();
        let mut dist = vec![0usize; k];
        for &(v, parent) in &order {
            if let Some((p, _)) = parent {
                dist[v] = dist[p] + 1;
            }
        }
        let mut label_words = vec![Word::identity(); k];
        for &(v, parent) in &order {
            if parent.is_none() {
                continue;
            }
            let (x, u) = Letter::ALL
                .into_iter()
                .map(|x| (x, action.image(x.inverse(), v)))
                .find(|&(_, u)| dist[u] + 1 == dist[v])
                .expect("BFS parent exists");
            label_words[v] = label_words[u].prepend(x);
        }
        let labels = label_words.iter().map(coset_label).collect();
        CosetGraph {
            action,
            edges,
            label_words,
            labels,
        }
    }

    pub fn action(&self) -> &CosetAction {
        &self.action
    }

    pub fn degree(&self) -> usize {
        self.action.degree()
    }

    pub fn basepoint(&self) -> usize {
        self.action.basepoint()
    }

    pub fn edges(&self) -> &[DirectedEdge] {
        &self.edges
    }

    pub fn edge(&self, source: usize, label: Letter) -> DirectedEdge {
        self.edges[4 * source + label.index()]
    }

    pub fn out_edges(&self, v: usize) -> Result<&[DirectedEdge]> {
        if v >= self.degree() {
            return Err(Error::VertexOutOfRange {
                vertex: v,
                degree: self.degree(),
            });
        }
        Ok(&self.edges[4 * v..4 * v + 4])
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, v: usize) -> &str {
        &self.labels[v]
    }

    /// Shortlex-least representative `w` with `wH` equal to vertex `v`.
    pub fn representative(&self, v: usize) -> &Word {
        &self.label_words[v]
    }

    pub fn vertex_of_label(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn coset_of(&self, w: &Word) -> usize {
        self.action.coset_of(w)
    }

    pub fn export(&self, format: ExportFormat) -> String {
        match format {
            ExportFormat::Dot => self.to_dot(),
            ExportFormat::Json => self.to_json(),
        }
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph coset_graph {\n");
        for (v, label) in self.labels.iter().enumerate() {
            let _ = writeln!(out, "  n{v} [label=\"{label}\"];");
        }
        for e in &self.edges {
            let _ = writeln!(
                out,
                "  n{} -> n{} [label=\"{}\"];",
                e.source, e.target, e.label
            );
        }
        out.push_str("}\n");
        out
    }

    pub fn to_json(&self) -> String {
        let doc = GraphDocument {
            kind: "action".into(),
            degree: self.degree(),
            sigma_a: self.action.sigma_a().to_vec(),
            sigma_b: self.action.sigma_b().to_vec(),
            basepoint: self.basepoint(),
            labels: self.labels.clone(),
            has_odd_element: self.action.has_odd_element(),
            edges: self
                .edges
                .iter()
                .map(|e| EdgeDocument {
                    source: e.source,
                    label: e.label.to_string(),
                    target: e.target,
                })
                .collect(),
        };
        serde_json::to_string_pretty(&doc).expect("graph serializes") + "\n"
    }
}

/// Graph export. Also a valid `{"kind":"action", ...}` subgroup spec: the
/// extra fields are ignored on input.
#[derive(Debug, Clone, Serialize, Deserialize)]
struct GraphDocument {
    kind: String,
    degree: usize,
    sigma_a: Vec<usize>,
    sigma_b: Vec<usize>,
    basepoint: usize,
    labels: Vec<String>,
    has_odd_element: bool,
    edges: Vec<EdgeDocument>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct EdgeDocument {
    source: usize,
    label: String,
    target: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExportFormat {
    Dot,
    Json,
}

impl FromStr for ExportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "dot" => Ok(ExportFormat::Dot),
            "json" => Ok(ExportFormat::Json),
            other => Err(Error::UnsupportedFormat(other.to_string())),
        }
    }
}
