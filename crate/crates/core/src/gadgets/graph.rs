use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Rational;
use crate::set::{SetMask, MAX_GROUND_SET};

/// Simple undirected graph on vertices `1..=n`, optionally edge-weighted.
/// Edges are stored as `(u, v)` with `u < v`, in insertion order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "GraphFile", into = "GraphFile")]
pub struct Graph {
    num_vertices: usize,
    edges: Vec<(usize, usize)>,
    weights: Option<Vec<Rational>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphFile {
    vertices: usize,
    edges: Vec<[usize; 2]>,
    #[serde(
        default,
        skip_serializing_if = "Option::is_none",
        with = "crate::scalar::serde_rational::option_vec"
    )]
    weights: Option<Vec<Rational>>,
}

impl TryFrom<GraphFile> for Graph {
    type Error = Error;

    fn try_from(g: GraphFile) -> Result<Graph> {
        let graph = Graph::new(g.vertices, g.edges.iter().map(|e| (e[0], e[1])).collect())?;
        match g.weights {
            Some(w) => graph.with_weights(w),
            None => Ok(graph),
        }
    }
}

impl From<Graph> for GraphFile {
    fn from(g: Graph) -> GraphFile {
        GraphFile {
            vertices: g.num_vertices,
            edges: g.edges.iter().map(|&(u, v)| [u, v]).collect(),
            weights: g.weights,
        }
    }
}

impl Graph {
    pub fn new(num_vertices: usize, edges: Vec<(usize, usize)>) -> Result<Graph> {
        if num_vertices == 0 || num_vertices > MAX_GROUND_SET {
            return Err(Error::InvalidArgument(format!(
                "vertex count {num_vertices} outside 1..={MAX_GROUND_SET}"
            )));
        }
        let mut normalized = Vec::with_capacity(edges.len());
        for (u, v) in edges {
            if u == v {
                return Err(Error::InvalidArgument(format!("self-loop at vertex {u}")));
            }
            let e = (u.min(v), u.max(v));
            if e.0 == 0 || e.1 > num_vertices {
                return Err(Error::InvalidArgument(format!(
                    "edge {{{u},{v}}} outside 1..={num_vertices}"
                )));
            }
            if normalized.contains(&e) {
                return Err(Error::InvalidArgument(format!("duplicate edge {{{},{}}}", e.0, e.1)));
            }
            normalized.push(e);
        }
        Ok(Graph {
            num_vertices,
            edges: normalized,
            weights: None,
        })
    }

    pub fn with_weights(mut self, weights: Vec<Rational>) -> Result<Graph> {
        if weights.len() != self.edges.len() {
            return Err(Error::InvalidArgument(format!(
                "{} weights for {} edges",
                weights.len(),
                self.edges.len()
            )));
        }
        self.weights = Some(weights);
        Ok(self)
    }

    pub fn complete(n: usize) -> Graph {
        let edges = (1..=n).flat_map(|u| (u + 1..=n).map(move |v| (u, v))).collect();
        Graph::new(n, edges).expect("complete graph is simple")
    }

    pub fn cycle(n: usize) -> Graph {
        assert!(n >= 3, "cycle needs at least three vertices");
        Graph::new(n, (1..=n).map(|u| (u, u % n + 1)).collect()).expect("cycle is simple")
    }

    pub fn path(n: usize) -> Graph {
        Graph::new(n, (1..n).map(|u| (u, u + 1)).collect()).expect("path is simple")
    }

    /// Outer 5-cycle `1..5`, inner pentagram `6..10`, spokes `i ~ i + 5`.
    pub fn petersen() -> Graph {
        let mut edges: Vec<(usize, usize)> = (1..=5).map(|u| (u, u % 5 + 1)).collect();
        edges.extend((0..5).map(|i| (6 + i, 6 + (i + 2) % 5)));
        edges.extend((1..=5).map(|u| (u, u + 5)));
        Graph::new(10, edges).expect("Petersen graph is simple")
    }

    /// The subgraph induced by `keep`, relabelled in increasing order.
    pub fn induced(&self, keep: SetMask) -> Result<Graph> {
        let labels = keep.elements();
        let index = |v: usize| labels.iter().position(|&x| x == v).map(|p| p + 1);
        let mut edges = Vec::new();
        let mut weights = Vec::new();
        for (k, &(u, v)) in self.edges.iter().enumerate() {
            if let (Some(a), Some(b)) = (index(u), index(v)) {
                edges.push((a, b));
                if let Some(w) = &self.weights {
                    weights.push(w[k].clone());
                }
            }
        }
        let g = Graph::new(labels.len(), edges)?;
        if self.weights.is_some() {
            g.with_weights(weights)
        } else {
            Ok(g)
        }
    }

    pub fn num_vertices(&self) -> usize {
        self.num_vertices
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn weights(&self) -> Option<&[Rational]> {
        self.weights.as_deref()
    }

    pub fn vertex_set(&self) -> SetMask {
        SetMask::full(self.num_vertices)
    }

    pub fn edge_mask(&self, k: usize) -> SetMask {
        let (u, v) = self.edges[k];
        SetMask::singleton(u).union(SetMask::singleton(v))
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edges.contains(&(u.min(v), u.max(v)))
    }

    pub fn is_independent(&self, s: SetMask) -> bool {
        (0..self.edges.len()).all(|k| !self.edge_mask(k).is_subset_of(s))
    }

    fn weight_or_one(&self, k: usize) -> Rational {
        self.weights
            .as_ref()
            .map_or_else(|| Rational::from_integer(1.into()), |w| w[k].clone())
    }

    fn sum_where(&self, keep: impl Fn(usize, usize) -> bool) -> Rational {
        (0..self.edges.len())
            .filter(|&k| keep(self.edges[k].0, self.edges[k].1))
            .fold(Rational::from_integer(0.into()), |acc, k| acc + self.weight_or_one(k))
    }

    /// `w(δ(S))`, edges with exactly one endpoint in `S`; unit weights when
    /// the graph is unweighted.
    pub fn cut_weight(&self, s: SetMask) -> Rational {
        self.sum_where(|u, v| s.contains(u) != s.contains(v))
    }

    /// `w(E⁺(S))`, edges with at least one endpoint in `S`.
    pub fn span_weight(&self, s: SetMask) -> Rational {
        self.sum_where(|u, v| s.contains(u) || s.contains(v))
    }

    /// `w(δ({v}))`.
    pub fn weighted_degree(&self, v: usize) -> Rational {
        self.cut_weight(SetMask::singleton(v))
    }

    pub fn cut_size(&self, s: SetMask) -> usize {
        self.edges
            .iter()
            .filter(|&&(u, v)| s.contains(u) != s.contains(v))
            .count()
    }
}
