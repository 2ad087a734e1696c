use serde::{Deserialize, Serialize};

use super::oracle::{FamilyOracle, IntersectionOracle, Memo};
use super::property::first_failure;
use crate::convex::Family;
use crate::error::{Error, Result};

/// A hypergraph on vertices `0..n` with sorted, distinct edges.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "HypergraphDto", into = "HypergraphDto")]
pub struct Hypergraph {
    n: usize,
    edges: Vec<Vec<usize>>,
    arity: Option<usize>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct HypergraphDto {
    n: usize,
    edges: Vec<Vec<usize>>,
}

impl TryFrom<HypergraphDto> for Hypergraph {
    type Error = Error;
    fn try_from(d: HypergraphDto) -> Result<Self> {
        Hypergraph::new(d.n, d.edges)
    }
}

impl From<Hypergraph> for HypergraphDto {
    fn from(h: Hypergraph) -> Self {
        HypergraphDto {
            n: h.n,
            edges: h.edges,
        }
    }
}

impl Hypergraph {
    /// Sorts each edge and the edge list, dropping duplicate edges. The arity
    /// is set when all edges have the same size.
    pub fn new(n: usize, edges: Vec<Vec<usize>>) -> Result<Self> {
        let mut clean = Vec::with_capacity(edges.len());
        for mut e in edges {
            if e.is_empty() {
                return Err(Error::Malformed("empty edge".into()));
            }
            e.sort_unstable();
            if e.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::Malformed(format!("edge {e:?} repeats a vertex")));
            }
            if let Some(&v) = e.iter().find(|&&v| v >= n) {
                return Err(Error::IndexOutOfRange { index: v, len: n });
            }
            clean.push(e);
        }
        clean.sort();
        clean.dedup();
        let arity = match clean.first() {
            Some(e) if clean.iter().all(|f| f.len() == e.len()) => Some(e.len()),
            _ => None,
        };
        Ok(Hypergraph {
            n,
            edges: clean,
            arity,
        })
    }

    /// A `lam`-uniform hypergraph; the arity is kept even without edges.
    pub fn uniform(n: usize, lam: usize, edges: Vec<Vec<usize>>) -> Result<Self> {
        let mut h = Self::new(n, edges)?;
        if let Some(e) = h.edges.iter().find(|e| e.len() != lam) {
            return Err(Error::Malformed(format!("edge {e:?} is not of size {lam}")));
        }
        h.arity = Some(lam);
        Ok(h)
    }

    pub fn n_vertices(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[Vec<usize>] {
        &self.edges
    }

    pub fn arity(&self) -> Option<usize> {
        self.arity
    }

    /// Sub-hypergraph induced on `vertices`, relabelled to `0..vertices.len()`.
    pub fn induced(&self, vertices: &[usize]) -> Hypergraph {
        let mut pos = vec![usize::MAX; self.n];
        for (k, &v) in vertices.iter().enumerate() {
            pos[v] = k;
        }
        let edges = self
            .edges
            .iter()
            .filter(|e| e.iter().all(|&v| pos[v] != usize::MAX))
            .map(|e| e.iter().map(|&v| pos[v]).collect())
            .collect();
        let mut h = Hypergraph::new(vertices.len(), edges).expect("induced edges are valid");
        h.arity = self.arity;
        h
    }

    pub fn is_cover(&self, cover: &[usize]) -> bool {
        self.edges
            .iter()
            .all(|e| e.iter().any(|v| cover.contains(v)))
    }
}

/// A vertex cover; `optimal` is false when a limit cut the search short.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Transversal {
    pub beta: usize,
    pub cover: Vec<usize>,
    pub optimal: bool,
}

struct CoverSearch<'h> {
    h: &'h Hypergraph,
    best: Option<Vec<usize>>,
    bound: usize,
}

impl CoverSearch<'_> {
    fn run(&mut self, chosen: &mut Vec<usize>, hit: &mut [bool]) {
        if chosen.len() >= self.bound {
            return;
        }
        let uncovered: Vec<&Vec<usize>> = self
            .h
            .edges
            .iter()
            .filter(|e| !e.iter().any(|&v| hit[v]))
            .collect();
        let Some(smallest) = uncovered.iter().min_by_key(|e| e.len()) else {
            self.bound = chosen.len();
            let mut c = chosen.clone();
            c.sort_unstable();
            self.best = Some(c);
            return;
        };
        // Pairwise disjoint uncovered edges each need their own vertex.
        let mut packed = vec![false; self.h.n];
        let mut packing = 0;
        for e in &uncovered {
            if e.iter().all(|&v| !packed[v]) {
                e.iter().for_each(|&v| packed[v] = true);
                packing += 1;
            }
        }
        if chosen.len() + packing >= self.bound {
            return;
        }
        for &v in smallest.iter() {
            hit[v] = true;
            chosen.push(v);
            self.run(chosen, hit);
            chosen.pop();
            hit[v] = false;
        }
    }
}

/// Exact transversal number by branch and bound on a smallest uncovered edge.
///
/// With `limit`, only covers of at most `limit` vertices are sought; if none
/// exists a greedy cover is returned with `optimal = false`.
pub fn transversal_number(h: &Hypergraph, limit: Option<usize>) -> Transversal {
    let cap = limit.map_or(usize::MAX, |l| l.saturating_add(1));
    let mut search = CoverSearch {
        h,
        best: None,
        bound: cap,
    };
    search.run(&mut Vec::new(), &mut vec![false; h.n]);
    match search.best {
        Some(cover) => Transversal {
            beta: cover.len(),
            cover,
            optimal: true,
        },
        None => {
            let cover = greedy_cover(h);
            Transversal {
                beta: cover.len(),
                cover,
                optimal: false,
            }
        }
    }
}

fn greedy_cover(h: &Hypergraph) -> Vec<usize> {
    let mut cover = Vec::new();
    let mut left: Vec<&Vec<usize>> = h.edges.iter().collect();
    while !left.is_empty() {
        let mut degree = vec![0usize; h.n];
        left.iter()
            .flat_map(|e| e.iter())
            .for_each(|&v| degree[v] += 1);
        // Highest degree, lowest index on ties.
        let v = (0..h.n)
            .max_by_key(|&v| (degree[v], std::cmp::Reverse(v)))
            .unwrap();
        cover.push(v);
        left.retain(|e| !e.contains(&v));
    }
    cover.sort_unstable();
    cover
}

/// The `(d+1)`-uniform hypergraph whose edges are the `(d+1)`-subsets of the
/// family with empty intersection.
pub fn build_gf_with<O: IntersectionOracle>(memo: &Memo<'_, O>, d: usize) -> Result<Hypergraph> {
    let all: Vec<usize> = (0..memo.len()).collect();
    let edges = std::sync::Mutex::new(Vec::new());
    // Reuses the batched scan; every tuple passes, empty ones are recorded.
    first_failure(&all, d + 1, |t| {
        if !memo.intersects(t)? {
            edges.lock().unwrap().push(t.to_vec());
        }
        Ok(true)
    })?;
    let mut edges = edges.into_inner().unwrap();
    edges.sort();
    Hypergraph::uniform(memo.len(), d + 1, edges)
}

pub fn build_gf(fam: &Family, d: usize) -> Result<Hypergraph> {
    if fam.dim() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: fam.dim(),
        });
    }
    let oracle = FamilyOracle(fam);
    build_gf_with(&Memo::new(&oracle)?, d)
}
