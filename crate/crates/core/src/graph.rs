//! Graphs, interior/boundary domains and the input document format.
//!
//! A [`Domain`] is built from an edge list and an interior vertex list. Its
//! graph is the subgraph of the input induced on the closure `S ∪ δS`: vertices
//! that are neither interior nor adjacent to the interior are dropped. Vertex
//! indices are laid out with the interior first, in the order given by the
//! interior list, followed by the boundary in order of first appearance in the
//! edge list.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Simple undirected graph with string vertex identifiers.
#[derive(Debug, Clone, PartialEq)]
pub struct Graph {
    vertices: Vec<String>,
    index: HashMap<String, usize>,
    neighbors: Vec<Vec<usize>>,
    edges: Vec<(usize, usize)>,
}

impl Graph {
    /// Builds a graph, rejecting self-loops and repeated edges (in either orientation).
    pub fn new(vertices: Vec<String>, edges: &[(usize, usize)]) -> Result<Self> {
        let mut index = HashMap::with_capacity(vertices.len());
        for (i, v) in vertices.iter().enumerate() {
            validate_id(v)?;
            if index.insert(v.clone(), i).is_some() {
                return Err(Error::Document(format!("vertex {v:?} declared twice")));
            }
        }
        let mut neighbors = vec![Vec::new(); vertices.len()];
        let mut seen = HashSet::with_capacity(edges.len());
        for &(x, y) in edges {
            if x >= vertices.len() {
                return Err(Error::VertexOutOfRange(x));
            }
            if y >= vertices.len() {
                return Err(Error::VertexOutOfRange(y));
            }
            if x == y {
                return Err(Error::SelfLoop(vertices[x].clone()));
            }
            if !seen.insert((x.min(y), x.max(y))) {
                return Err(Error::DuplicateEdge(
                    vertices[x].clone(),
                    vertices[y].clone(),
                ));
            }
            neighbors[x].push(y);
            neighbors[y].push(x);
        }
        Ok(Self {
            vertices,
            index,
            neighbors,
            edges: edges.to_vec(),
        })
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn name(&self, v: usize) -> &str {
        &self.vertices[v]
    }

    pub fn names(&self) -> &[String] {
        &self.vertices
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.neighbors[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.neighbors[v].len()
    }

    pub fn adjacent(&self, x: usize, y: usize) -> bool {
        self.neighbors[x].contains(&y)
    }

    /// Edges in insertion order, each listed once.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }
}

fn validate_id(id: &str) -> Result<()> {
    if id.is_empty() || id.chars().any(char::is_whitespace) {
        return Err(Error::InvalidVertexId(id.to_owned()));
    }
    Ok(())
}

/// Interior set `S` of a graph together with its vertex boundary `δS`.
///
/// Indices `0..n_interior()` are interior vertices, the rest are boundary
/// vertices. Every boundary vertex has at least one interior neighbor, the
/// interior induces a connected subgraph, and the boundary is nonempty.
#[derive(Debug, Clone)]
pub struct Domain {
    graph: Graph,
    n_interior: usize,
    dropped: usize,
}

impl PartialEq for Domain {
    fn eq(&self, other: &Self) -> bool {
        self.n_interior == other.n_interior && self.graph == other.graph
    }
}

impl Domain {
    /// Builds a domain from an edge list over vertex names and an interior list.
    pub fn from_edges<S: AsRef<str>>(edges: &[(S, S)], interior: &[S]) -> Result<Self> {
        if interior.is_empty() {
            return Err(Error::EmptyInterior);
        }
        let mut in_edges = HashSet::new();
        let mut pairs = HashSet::new();
        for (x, y) in edges {
            let (x, y) = (x.as_ref(), y.as_ref());
            validate_id(x)?;
            validate_id(y)?;
            if x == y {
                return Err(Error::SelfLoop(x.to_owned()));
            }
            if !pairs.insert((x.min(y), x.max(y))) {
                return Err(Error::DuplicateEdge(x.to_owned(), y.to_owned()));
            }
            in_edges.insert(x);
            in_edges.insert(y);
        }

        let mut names: Vec<String> = Vec::new();
        let mut index: HashMap<&str, usize> = HashMap::new();
        for v in interior {
            let v = v.as_ref();
            validate_id(v)?;
            if index.contains_key(v) {
                return Err(Error::DuplicateInterior(v.to_owned()));
            }
            if !in_edges.contains(v) {
                return Err(Error::InteriorNotInEdges(v.to_owned()));
            }
            index.insert(v, names.len());
            names.push(v.to_owned());
        }
        let n_interior = names.len();

        // Boundary: non-interior endpoints of edges that touch the interior.
        for (x, y) in edges {
            let (x, y) = (x.as_ref(), y.as_ref());
            let (xi, yi) = (index.get(x).copied(), index.get(y).copied());
            for (this, other) in [(x, yi), (y, xi)] {
                if other.is_some_and(|o| o < n_interior) && !index.contains_key(this) {
                    index.insert(this, names.len());
                    names.push(this.to_owned());
                }
            }
        }
        if names.len() == n_interior {
            return Err(Error::EmptyBoundary);
        }

        // Keep edges with both endpoints in the closure.
        let mut kept = Vec::new();
        for (x, y) in edges {
            if let (Some(&xi), Some(&yi)) = (index.get(x.as_ref()), index.get(y.as_ref())) {
                kept.push((xi, yi));
            }
        }
        let dropped = in_edges.iter().filter(|v| !index.contains_key(*v)).count();

        let graph = Graph::new(names, &kept)?;
        let domain = Self {
            graph,
            n_interior,
            dropped,
        };
        let components = domain.interior_components();
        if components != 1 {
            return Err(Error::Disconnected(components));
        }
        Ok(domain)
    }

    fn interior_components(&self) -> usize {
        let n = self.n_interior;
        let mut seen = vec![false; n];
        let mut components = 0;
        for start in 0..n {
            if seen[start] {
                continue;
            }
            components += 1;
            seen[start] = true;
            let mut queue = VecDeque::from([start]);
            while let Some(x) = queue.pop_front() {
                for &y in self.graph.neighbors(x) {
                    if y < n && !seen[y] {
                        seen[y] = true;
                        queue.push_back(y);
                    }
                }
            }
        }
        components
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    /// |S̄|
    pub fn len(&self) -> usize {
        self.graph.len()
    }

    pub fn is_empty(&self) -> bool {
        self.graph.is_empty()
    }

    pub fn n_interior(&self) -> usize {
        self.n_interior
    }

    pub fn n_boundary(&self) -> usize {
        self.graph.len() - self.n_interior
    }

    pub fn interior(&self) -> std::ops::Range<usize> {
        0..self.n_interior
    }

    pub fn boundary(&self) -> std::ops::Range<usize> {
        self.n_interior..self.graph.len()
    }

    pub fn is_interior(&self, v: usize) -> bool {
        v < self.n_interior
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.graph
            .index_of(name)
            .ok_or_else(|| Error::UnknownVertex(name.to_owned()))
    }

    pub fn name(&self, v: usize) -> &str {
        self.graph.name(v)
    }

    /// Number of input vertices discarded because they are neither interior
    /// nor adjacent to the interior.
    pub fn dropped_vertices(&self) -> usize {
        self.dropped
    }

    /// Document describing this domain, without initial data.
    pub fn to_document(&self) -> GraphDocument {
        GraphDocument {
            edges: self
                .graph
                .edges()
                .iter()
                .map(|&(x, y)| [self.name(x).to_owned(), self.name(y).to_owned()])
                .collect(),
            interior: self.interior().map(|v| self.name(v).to_owned()).collect(),
            ..GraphDocument::default()
        }
    }
}

/// The JSON graph document read by the CLI.
///
/// ```json
/// { "edges": [["a","b"],["b","c"]], "interior": ["b"], "initial": {"b": [1.0, 0.0]} }
/// ```
///
/// `initial` and `initial_velocity` map vertex ids to `[re, im]` pairs;
/// unlisted vertices are zero. `potential` maps interior vertices to
/// nonnegative reals for the ground-state problem.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphDocument {
    pub edges: Vec<[String; 2]>,
    pub interior: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub initial: Option<BTreeMap<String, [f64; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub initial_velocity: Option<BTreeMap<String, [f64; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub potential: Option<BTreeMap<String, f64>>,
}

impl GraphDocument {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Document(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("graph document serializes")
    }

    pub fn domain(&self) -> Result<Domain> {
        let edges: Vec<(&str, &str)> = self
            .edges
            .iter()
            .map(|[x, y]| (x.as_str(), y.as_str()))
            .collect();
        let interior: Vec<&str> = self.interior.iter().map(String::as_str).collect();
        Domain::from_edges(&edges, &interior)
    }
}

/// Parses a JSON graph document into a validated domain.
pub fn parse_graph(text: &str) -> Result<Domain> {
    GraphDocument::from_json(text)?.domain()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(d: &Domain, r: std::ops::Range<usize>) -> Vec<&str> {
        r.map(|v| d.name(v)).collect()
    }

    #[test]
    fn path_three_single_interior() {
        let d = Domain::from_edges(&[("a", "b"), ("b", "c")], &["b"]).unwrap();
        assert_eq!(names(&d, d.interior()), ["b"]);
        assert_eq!(names(&d, d.boundary()), ["a", "c"]);
        assert_eq!(d.graph().degree(0), 2);
    }

    #[test]
    fn path_four_two_interior() {
        let d = Domain::from_edges(&[("0", "1"), ("1", "2"), ("2", "3")], &["1", "2"]).unwrap();
        assert_eq!(names(&d, d.interior()), ["1", "2"]);
        assert_eq!(names(&d, d.boundary()), ["0", "3"]);
    }

    #[test]
    fn empty_boundary_rejected() {
        let err = Domain::from_edges(&[("a", "b")], &["a", "b"]).unwrap_err();
        assert!(matches!(err, Error::EmptyBoundary));
    }

    #[test]
    fn validation_errors() {
        assert!(matches!(
            Domain::from_edges(&[("a", "b"), ("b", "a")], &["a"]).unwrap_err(),
            Error::DuplicateEdge(..)
        ));
        assert!(matches!(
            Domain::from_edges(&[("a", "a"), ("a", "b")], &["a"]).unwrap_err(),
            Error::SelfLoop(_)
        ));
        assert!(matches!(
            Domain::from_edges(&[("a", "b")], &["z"]).unwrap_err(),
            Error::InteriorNotInEdges(_)
        ));
        assert!(matches!(
            Domain::from_edges(&[("a", "b"), ("c", "d")], &["a", "c"]).unwrap_err(),
            Error::Disconnected(2)
        ));
        assert!(matches!(
            Domain::from_edges(&[("a", "b")], &["a", "a"]).unwrap_err(),
            Error::DuplicateInterior(_)
        ));
        assert!(matches!(
            Domain::from_edges(&[("a b", "c")], &["c"]).unwrap_err(),
            Error::InvalidVertexId(_)
        ));
        assert!(matches!(
            Domain::from_edges::<&str>(&[("a", "b")], &[]).unwrap_err(),
            Error::EmptyInterior
        ));
    }

    #[test]
    fn far_vertices_are_dropped() {
        // d and e are not adjacent to the interior {b}.
        let d =
            Domain::from_edges(&[("a", "b"), ("b", "c"), ("c", "d"), ("d", "e")], &["b"]).unwrap();
        assert_eq!(d.len(), 3);
        assert_eq!(d.dropped_vertices(), 2);
        assert_eq!(d.graph().edges().len(), 2);
    }

    #[test]
    fn boundary_boundary_edges_retained() {
        let d = Domain::from_edges(&[("a", "b"), ("b", "c"), ("a", "c")], &["b"]).unwrap();
        assert_eq!(d.graph().edges().len(), 3);
        let a = d.index_of("a").unwrap();
        let c = d.index_of("c").unwrap();
        assert!(d.graph().adjacent(a, c));
    }

    #[test]
    fn document_round_trip() {
        let text = r#"{"edges": [["x","y"],["y","z"],["z","w"],["w","q"]], "interior": ["z","y"]}"#;
        let d = parse_graph(text).unwrap();
        assert_eq!(d.dropped_vertices(), 1);
        let again = parse_graph(&d.to_document().to_json()).unwrap();
        assert_eq!(d, again);
        assert_eq!(names(&again, again.boundary()), ["x", "w"]);
    }

    #[test]
    fn unknown_keys_rejected() {
        assert!(matches!(
            parse_graph(r#"{"edges": [], "interior": [], "bogus": 1}"#).unwrap_err(),
            Error::Document(_)
        ));
    }
}
