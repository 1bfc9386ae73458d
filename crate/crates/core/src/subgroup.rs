//! Finite-index subgroups of F₂ as permutation actions on their cosets.
//!
//! A word `w = x₁…xₙ` acts by `σ_w = σ_{x₁} ∘ … ∘ σ_{xₙ}` (rightmost letter
//! first), so the vertex of the coset `wH` is `σ_w(basepoint)` and the letter
//! `h` sends `rH` to `hrH`.

use std::collections::{HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::freegroup::{Letter, Word};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CosetAction {
    sigma_a: Vec<usize>,
    sigma_b: Vec<usize>,
    inv_a: Vec<usize>,
    inv_b: Vec<usize>,
    basepoint: usize,
}

fn invert(perm: &[usize], generator: char) -> Result<Vec<usize>> {
    let degree = perm.len();
    let mut inv = vec![usize::MAX; degree];
    for (i, &img) in perm.iter().enumerate() {
        if img >= degree || inv[img] != usize::MAX {
            return Err(Error::NotAPermutation { generator, degree });
        }
        inv[img] = i;
    }
    Ok(inv)
}

/// Checks bijectivity of both generators and transitivity from the basepoint.
pub fn validate(sigma_a: &[usize], sigma_b: &[usize], basepoint: usize) -> Result<()> {
    CosetAction::new(sigma_a.to_vec(), sigma_b.to_vec(), basepoint).map(|_| ())
}

impl CosetAction {
    pub fn new(sigma_a: Vec<usize>, sigma_b: Vec<usize>, basepoint: usize) -> Result<CosetAction> {
        let degree = sigma_a.len();
        if degree == 0 {
            return Err(Error::Malformed("degree must be positive".into()));
        }
        if sigma_b.len() != degree {
            return Err(Error::NotAPermutation {
                generator: 'b',
                degree,
            });
        }
        let inv_a = invert(&sigma_a, 'a')?;
        let inv_b = invert(&sigma_b, 'b')?;
        if basepoint >= degree {
            return Err(Error::VertexOutOfRange {
                vertex: basepoint,
                degree,
            });
        }
        let action = CosetAction {
            sigma_a,
            sigma_b,
            inv_a,
            inv_b,
            basepoint,
        };
        let order = action.bfs_order();
        if order.len() < degree {
            let mut seen = vec![false; degree];
            for &v in &order {
                seen[v] = true;
            }
            let vertex = seen.iter().position(|s| !s).unwrap_or(0);
            return Err(Error::NotTransitive { vertex });
        }
        Ok(action)
    }

    /// `[F₂:H]`.
    pub fn degree(&self) -> usize {
        self.sigma_a.len()
    }

    pub fn index(&self) -> usize {
        self.degree()
    }

    pub fn basepoint(&self) -> usize {
        self.basepoint
    }

    pub fn sigma_a(&self) -> &[usize] {
        &self.sigma_a
    }

    pub fn sigma_b(&self) -> &[usize] {
        &self.sigma_b
    }

    /// `σ_h(v)`, the coset `h·vH`. Panics if `v` is out of range.
    #[inline]
    pub fn image(&self, h: Letter, v: usize) -> usize {
        match h {
            Letter::A => self.sigma_a[v],
            Letter::B => self.sigma_b[v],
            Letter::AInv => self.inv_a[v],
            Letter::BInv => self.inv_b[v],
        }
    }

    pub fn act(&self, w: &Word, v: usize) -> Result<usize> {
        if v >= self.degree() {
            return Err(Error::VertexOutOfRange {
                vertex: v,
                degree: self.degree(),
            });
        }
        Ok(w.letters()
            .iter()
            .rev()
            .fold(v, |cur, &x| self.image(x, cur)))
    }

    /// Vertex of the coset `wH`.
    pub fn coset_of(&self, w: &Word) -> usize {
        w.letters()
            .iter()
            .rev()
            .fold(self.basepoint, |cur, &x| self.image(x, cur))
    }

    fn bfs_order(&self) -> Vec<usize> {
        bfs(self.degree(), self.basepoint, |v, h| Some(self.image(h, v)))
            .into_iter()
            .map(|(v, _)| v)
            .collect()
    }

    /// BFS tree from the basepoint with letter priority `a, b, A, B`: each
    /// vertex in discovery order together with the letter used to reach it.
    pub fn bfs_tree(&self) -> Vec<(usize, Option<(usize, Letter)>)> {
        bfs(self.degree(), self.basepoint, |v, h| Some(self.image(h, v)))
    }

    /// True iff the undirected Schreier graph has an odd cycle, i.e. iff
    /// the subgroup contains a reduced word of odd length.
    pub fn has_odd_element(&self) -> bool {
        let mut colour: Vec<Option<bool>> = vec![None; self.degree()];
        let mut queue = VecDeque::new();
        colour[self.basepoint] = Some(false);
        queue.push_back(self.basepoint);
        while let Some(v) = queue.pop_front() {
            let c = colour[v].unwrap();
            for h in Letter::ALL {
                let u = self.image(h, v);
                match colour[u] {
                    None => {
                        colour[u] = Some(!c);
                        queue.push_back(u);
                    }
                    Some(cu) if cu == c => return true,
                    Some(_) => {}
                }
            }
        }
        false
    }

    /// Relabels vertices in BFS discovery order from the basepoint, which
    /// becomes vertex 0. Two pointed transitive actions are isomorphic iff
    /// their canonical forms are equal.
    pub fn canonical(&self) -> CosetAction {
        let order = self.bfs_order();
        let mut new_id = vec![0; self.degree()];
        for (i, &v) in order.iter().enumerate() {
            new_id[v] = i;
        }
        self.relabel(&new_id)
    }

    /// Applies the vertex bijection `old -> new_id[old]`.
    pub fn relabel(&self, new_id: &[usize]) -> CosetAction {
        let k = self.degree();
        let mut sa = vec![0; k];
        let mut sb = vec![0; k];
        for v in 0..k {
            sa[new_id[v]] = new_id[self.sigma_a[v]];
            sb[new_id[v]] = new_id[self.sigma_b[v]];
        }
        CosetAction::new(sa, sb, new_id[self.basepoint]).expect("relabeling preserves validity")
    }

    pub fn to_spec(&self) -> SubgroupSpec {
        SubgroupSpec::Action {
            degree: self.degree(),
            sigma_a: self.sigma_a.clone(),
            sigma_b: self.sigma_b.clone(),
            basepoint: self.basepoint,
        }
    }
}

fn bfs<F>(degree: usize, start: usize, step: F) -> Vec<(usize, Option<(usize, Letter)>)>
where
    F: Fn(usize, Letter) -> Option<usize>,
{
    let mut seen = vec![false; degree];
    let mut out = vec![(start, None)];
    seen[start] = true;
    let mut head = 0;
    while head < out.len() {
        let v = out[head].0;
        head += 1;
        for h in Letter::ALL {
            if let Some(u) = step(v, h) {
                if !seen[u] {
                    seen[u] = true;
                    out.push((u, Some((v, h))));
                }
            }
        }
    }
    out
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubgroupPresentation {
    pub generators: Vec<Word>,
}

impl SubgroupPresentation {
    pub fn new(generators: Vec<Word>) -> Self {
        SubgroupPresentation { generators }
    }

    pub fn parse<S: AsRef<str>>(words: &[S]) -> Result<Self> {
        let generators = words
            .iter()
            .map(|s| Word::parse(s.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        Ok(SubgroupPresentation { generators })
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut cur = x;
        while self.parent[cur] != root {
            let next = self.parent[cur];
            self.parent[cur] = root;
            cur = next;
        }
        root
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        // Keep the smaller id as root so the basepoint (0) stays a root.
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }
}

/// Stallings folding of the generator bouquet into the coset graph.
///
/// Each generator `x₁…xₙ` becomes a closed path at the basepoint read from
/// `xₙ` back to `x₁`, matching the left action. Folding runs to a fixpoint;
/// the result is relabeled canonically by BFS. A folded graph missing any
/// of the four edge directions at some vertex means infinite index.
pub fn fold(p: &SubgroupPresentation) -> Result<CosetAction> {
    // edges: (source, generator 0=a 1=b, target) meaning σ_gen(source) = target
    let mut edges: Vec<(usize, usize, usize)> = Vec::new();
    let mut vertices = 1usize;
    for g in &p.generators {
        let letters = g.letters();
        let mut cur = 0;
        for (j, &x) in letters.iter().enumerate().rev() {
            let next = if j == 0 {
                0
            } else {
                vertices += 1;
                vertices - 1
            };
            let gen = if matches!(x, Letter::A | Letter::AInv) {
                0
            } else {
                1
            };
            if x.is_inverse() {
                edges.push((next, gen, cur));
            } else {
                edges.push((cur, gen, next));
            }
            cur = next;
        }
    }

    let mut uf = UnionFind::new(vertices);
    loop {
        let mut changed = false;
        let mut out: HashMap<(usize, usize), usize> = HashMap::new();
        let mut inc: HashMap<(usize, usize), usize> = HashMap::new();
        for &(s, gen, t) in &edges {
            let (s, t) = (uf.find(s), uf.find(t));
            if let Some(&t2) = out.get(&(s, gen)) {
                changed |= uf.union(t, t2);
            } else {
                out.insert((s, gen), t);
            }
            let t = uf.find(t);
            let s = uf.find(s);
            if let Some(&s2) = inc.get(&(t, gen)) {
                changed |= uf.union(s, s2);
            } else {
                inc.insert((t, gen), s);
            }
        }
        if !changed {
            break;
        }
    }

    let mut out: HashMap<(usize, usize), usize> = HashMap::new();
    let mut inc: HashMap<(usize, usize), usize> = HashMap::new();
    for &(s, gen, t) in &edges {
        let (s, t) = (uf.find(s), uf.find(t));
        out.insert((s, gen), t);
        inc.insert((t, gen), s);
    }
    let step = |v: usize, h: Letter| -> Option<usize> {
        match h {
            Letter::A => out.get(&(v, 0)).copied(),
            Letter::B => out.get(&(v, 1)).copied(),
            Letter::AInv => inc.get(&(v, 0)).copied(),
            Letter::BInv => inc.get(&(v, 1)).copied(),
        }
    };
    let root = uf.find(0);
    let order = bfs(vertices, root, step);
    let mut new_id: HashMap<usize, usize> = HashMap::new();
    for (i, &(v, _)) in order.iter().enumerate() {
        new_id.insert(v, i);
    }
    for (i, &(v, _)) in order.iter().enumerate() {
        for h in Letter::ALL {
            if step(v, h).is_none() {
                return Err(Error::InfiniteIndex {
                    vertex: i,
                    missing: h,
                });
            }
        }
    }
    let k = order.len();
    let mut sigma_a = vec![0; k];
    let mut sigma_b = vec![0; k];
    for (i, &(v, _)) in order.iter().enumerate() {
        sigma_a[i] = new_id[&step(v, Letter::A).unwrap()];
        sigma_b[i] = new_id[&step(v, Letter::B).unwrap()];
    }
    CosetAction::new(sigma_a, sigma_b, 0)
}

/// The structured subgroup description accepted on input.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum SubgroupSpec {
    Action {
        degree: usize,
        sigma_a: Vec<usize>,
        sigma_b: Vec<usize>,
        basepoint: usize,
    },
    Generators {
        generators: Vec<Word>,
    },
}

impl SubgroupSpec {
    pub fn from_json(text: &str) -> Result<SubgroupSpec> {
        serde_json::from_str(text).map_err(|e| Error::Malformed(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("spec serializes")
    }

    pub fn resolve(&self) -> Result<CosetAction> {
        match self {
            SubgroupSpec::Action {
                degree,
                sigma_a,
                sigma_b,
                basepoint,
            } => {
                if sigma_a.len() != *degree {
                    return Err(Error::NotAPermutation {
                        generator: 'a',
                        degree: *degree,
                    });
                }
                if sigma_b.len() != *degree {
                    return Err(Error::NotAPermutation {
                        generator: 'b',
                        degree: *degree,
                    });
                }
                CosetAction::new(sigma_a.clone(), sigma_b.clone(), *basepoint)
            }
            SubgroupSpec::Generators { generators } => {
                fold(&SubgroupPresentation::new(generators.clone()))
            }
        }
    }
}
