//! Simple graphs decorated with colored loops.
//!
//! A [`LoopedGraph`] is an ordinary simple graph on vertices `0..n` together
//! with a nonnegative loop multiplicity for every (vertex, color) pair, colors
//! drawn from `0..c`. Loops never count toward vertex degree.
//!
//! The JSON interchange form is
//!
//! ```json
//! {"n": 3, "c": 3, "edges": [[0,1],[0,2],[1,2]], "loops": {"0": {"0": 1}, "1": {"1": 1}, "2": {"2": 1}}}
//! ```
//!
//! with edges written `u < v` in lexicographic order and zero loop entries omitted.

use std::collections::BTreeMap;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default bound on vertex count for the brute-force automorphism search.
pub const DEFAULT_VERTEX_BOUND: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "GraphFile", into = "GraphFile")]
pub struct LoopedGraph {
    n: usize,
    c: usize,
    edges: Vec<(usize, usize)>,
    // dense n x c table
    loops: Vec<Vec<u64>>,
    neighbors: Vec<Vec<usize>>,
}

/// The per-vertex generator `(d_u, e_{u,0}, ..., e_{u,c-1})` of the degree-loop lattice.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DegreeLoopVector {
    pub degree: u64,
    pub loop_counts: Vec<u64>,
}

impl DegreeLoopVector {
    /// The vector as a flat list, degree first.
    pub fn components(&self) -> Vec<u64> {
        std::iter::once(self.degree)
            .chain(self.loop_counts.iter().copied())
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphInvariants {
    pub n: usize,
    pub m: usize,
    pub loop_totals: Vec<u64>,
    pub degree_gcd: u64,
}

impl LoopedGraph {
    /// Builds a graph, validating every structural invariant.
    ///
    /// `loops` lists `(vertex, color, multiplicity)`; a (vertex, color) pair
    /// may appear at most once, and zero multiplicities are dropped.
    pub fn new(
        n: usize,
        c: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
        loops: impl IntoIterator<Item = (usize, usize, u64)>,
    ) -> Result<Self> {
        let mut normalized = Vec::new();
        for (a, b) in edges {
            if a == b {
                return Err(Error::InvalidGraph(format!(
                    "self-pair ({a},{a}) in edge list"
                )));
            }
            if a >= n || b >= n {
                return Err(Error::InvalidGraph(format!(
                    "edge ({a},{b}) out of range for n = {n}"
                )));
            }
            normalized.push((a.min(b), a.max(b)));
        }
        normalized.sort_unstable();
        if let Some(w) = normalized.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidGraph(format!("duplicate edge {:?}", w[0])));
        }

        let mut table = vec![vec![0u64; c]; n];
        let mut seen = std::collections::BTreeSet::new();
        for (u, i, count) in loops {
            if u >= n || i >= c {
                return Err(Error::InvalidGraph(format!(
                    "loop at vertex {u} color {i} out of range (n = {n}, c = {c})"
                )));
            }
            if !seen.insert((u, i)) {
                return Err(Error::InvalidGraph(format!(
                    "loop entry for vertex {u} color {i} given twice"
                )));
            }
            table[u][i] = count;
        }

        let mut neighbors = vec![Vec::new(); n];
        for &(a, b) in &normalized {
            neighbors[a].push(b);
            neighbors[b].push(a);
        }
        for list in &mut neighbors {
            list.sort_unstable();
        }

        Ok(LoopedGraph {
            n,
            c,
            edges: normalized,
            loops: table,
            neighbors,
        })
    }

    /// A loopless graph with `c = 0`.
    pub fn simple(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        Self::new(n, 0, edges, std::iter::empty())
    }

    pub fn complete(k: usize) -> Self {
        let edges = (0..k).flat_map(|a| (a + 1..k).map(move |b| (a, b)));
        Self::simple(k, edges).expect("complete graph is simple")
    }

    pub fn path(n: usize) -> Self {
        Self::simple(n, (1..n).map(|i| (i - 1, i))).expect("path is simple")
    }

    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidParameter(format!(
                "cycle needs n >= 3, got {n}"
            )));
        }
        Self::simple(n, (0..n).map(|i| (i, (i + 1) % n)))
    }

    /// Same ordinary edges, replacing all loops with the given table.
    pub fn with_loops(
        &self,
        c: usize,
        loops: impl IntoIterator<Item = (usize, usize, u64)>,
    ) -> Result<Self> {
        Self::new(self.n, c, self.edges.iter().copied(), loops)
    }

    /// The underlying simple graph (`c = 0`).
    pub fn without_loops(&self) -> Self {
        Self::simple(self.n, self.edges.iter().copied()).expect("edges already validated")
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn color_count(&self) -> usize {
        self.c
    }

    /// Edges as `(u, v)` with `u < v`, lexicographically sorted.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.edges.binary_search(&(a.min(b), a.max(b))).is_ok()
    }

    pub fn neighbors(&self, u: usize) -> &[usize] {
        &self.neighbors[u]
    }

    pub fn degree(&self, u: usize) -> usize {
        self.neighbors[u].len()
    }

    /// Loop multiplicities at `u`, one entry per color.
    pub fn loops_at(&self, u: usize) -> &[u64] {
        &self.loops[u]
    }

    pub fn loop_count(&self, u: usize, color: usize) -> u64 {
        self.loops[u][color]
    }

    pub fn has_loops(&self) -> bool {
        self.loops.iter().flatten().any(|&x| x > 0)
    }

    /// Total number of loops of each color.
    pub fn loop_totals(&self) -> Vec<u64> {
        (0..self.c)
            .map(|i| self.loops.iter().map(|row| row[i]).sum())
            .collect()
    }

    /// gcd of ordinary degrees; 0 when the graph has no edges.
    pub fn degree_gcd(&self) -> u64 {
        (0..self.n).fold(0u64, |g, u| g.gcd(&(self.degree(u) as u64)))
    }

    pub fn invariants(&self) -> GraphInvariants {
        GraphInvariants {
            n: self.n,
            m: self.edges.len(),
            loop_totals: self.loop_totals(),
            degree_gcd: self.degree_gcd(),
        }
    }

    pub fn degree_loop_vectors(&self) -> Vec<DegreeLoopVector> {
        (0..self.n)
            .map(|u| DegreeLoopVector {
                degree: self.degree(u) as u64,
                loop_counts: self.loops[u].clone(),
            })
            .collect()
    }

    /// Vertices grouped by degree; keys are the degree set.
    pub fn degree_classes(&self) -> BTreeMap<usize, Vec<usize>> {
        let mut classes: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for u in 0..self.n {
            classes.entry(self.degree(u)).or_default().push(u);
        }
        classes
    }

    /// Calls `visit` once per automorphism, as a vertex permutation `perm[u] = image of u`.
    ///
    /// With `respect_loops`, automorphisms must also preserve every loop multiplicity.
    pub fn for_each_automorphism(
        &self,
        respect_loops: bool,
        bound: usize,
        mut visit: impl FnMut(&[usize]),
    ) -> Result<()> {
        if self.n > bound {
            return Err(Error::VertexBoundExceeded {
                what: "automorphism search",
                count: self.n,
                bound,
            });
        }
        let compatible = |a: usize, b: usize| {
            self.degree(a) == self.degree(b) && (!respect_loops || self.loops[a] == self.loops[b])
        };
        let mut perm = vec![usize::MAX; self.n];
        let mut used = vec![false; self.n];
        self.extend_automorphism(0, &mut perm, &mut used, &compatible, &mut visit);
        Ok(())
    }

    fn extend_automorphism(
        &self,
        u: usize,
        perm: &mut [usize],
        used: &mut [bool],
        compatible: &dyn Fn(usize, usize) -> bool,
        visit: &mut dyn FnMut(&[usize]),
    ) {
        if u == self.n {
            visit(perm);
            return;
        }
        for image in 0..self.n {
            if used[image] || !compatible(u, image) {
                continue;
            }
            // adjacency must agree with every earlier vertex
            if (0..u).any(|w| self.has_edge(u, w) != self.has_edge(image, perm[w])) {
                continue;
            }
            perm[u] = image;
            used[image] = true;
            self.extend_automorphism(u + 1, perm, used, compatible, visit);
            used[image] = false;
        }
        perm[u] = usize::MAX;
    }

    /// Vertex orbits under the automorphism group, each sorted, ordered by least member.
    pub fn automorphism_orbits(&self, ignore_loops: bool) -> Result<Vec<Vec<usize>>> {
        self.automorphism_orbits_bounded(ignore_loops, DEFAULT_VERTEX_BOUND)
    }

    pub fn automorphism_orbits_bounded(
        &self,
        ignore_loops: bool,
        bound: usize,
    ) -> Result<Vec<Vec<usize>>> {
        let mut root: Vec<usize> = (0..self.n).collect();
        fn find(root: &mut [usize], mut x: usize) -> usize {
            while root[x] != x {
                root[x] = root[root[x]];
                x = root[x];
            }
            x
        }
        self.for_each_automorphism(!ignore_loops, bound, |perm| {
            for (u, &w) in perm.iter().enumerate() {
                let (a, b) = (find(&mut root, u), find(&mut root, w));
                if a != b {
                    root[a.max(b)] = a.min(b);
                }
            }
        })?;
        let mut orbits: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for u in 0..self.n {
            let r = find(&mut root, u);
            orbits.entry(r).or_default().push(u);
        }
        Ok(orbits.into_values().collect())
    }

    /// Size of the automorphism group.
    pub fn automorphism_count(&self, respect_loops: bool) -> Result<usize> {
        let mut count = 0;
        self.for_each_automorphism(respect_loops, DEFAULT_VERTEX_BOUND, |_| count += 1)?;
        Ok(count)
    }
}

#[derive(Serialize, Deserialize)]
struct GraphFile {
    n: usize,
    c: usize,
    edges: Vec<[usize; 2]>,
    #[serde(default)]
    loops: BTreeMap<usize, BTreeMap<usize, u64>>,
}

impl TryFrom<GraphFile> for LoopedGraph {
    type Error = Error;

    fn try_from(file: GraphFile) -> Result<Self> {
        let loops = file
            .loops
            .into_iter()
            .flat_map(|(u, row)| row.into_iter().map(move |(i, k)| (u, i, k)));
        LoopedGraph::new(
            file.n,
            file.c,
            file.edges.into_iter().map(|[a, b]| (a, b)),
            loops,
        )
    }
}

impl From<LoopedGraph> for GraphFile {
    fn from(g: LoopedGraph) -> Self {
        let mut loops = BTreeMap::new();
        for (u, row) in g.loops.iter().enumerate() {
            let entries: BTreeMap<usize, u64> = row
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| (i, k))
                .collect();
            if !entries.is_empty() {
                loops.insert(u, entries);
            }
        }
        GraphFile {
            n: g.n,
            c: g.c,
            edges: g.edges.iter().map(|&(a, b)| [a, b]).collect(),
            loops,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bowtie() -> LoopedGraph {
        LoopedGraph::simple(5, [(0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (3, 4)]).unwrap()
    }

    #[test]
    fn rejects_bad_edges() {
        assert!(LoopedGraph::simple(3, [(0, 0)]).is_err());
        assert!(LoopedGraph::simple(3, [(0, 3)]).is_err());
        assert!(LoopedGraph::simple(3, [(0, 1), (1, 0)]).is_err());
        assert!(LoopedGraph::new(2, 1, [(0, 1)], [(0, 1, 1)]).is_err());
    }

    #[test]
    fn zero_loops_are_normalized_away() {
        let a = LoopedGraph::new(2, 1, [(0, 1)], [(0, 0, 0)]).unwrap();
        let b = LoopedGraph::new(2, 1, [(0, 1)], []).unwrap();
        assert_eq!(a, b);
        assert_eq!(
            serde_json::to_string(&a).unwrap(),
            r#"{"n":2,"c":1,"edges":[[0,1]],"loops":{}}"#
        );
    }

    #[test]
    fn single_edge_invariants() {
        let g = LoopedGraph::complete(2);
        assert_eq!(
            g.invariants(),
            GraphInvariants {
                n: 2,
                m: 1,
                loop_totals: vec![],
                degree_gcd: 1
            }
        );
    }

    #[test]
    fn edgeless_gcd_is_zero() {
        let g = LoopedGraph::new(3, 1, [], [(1, 0, 2)]).unwrap();
        assert_eq!(g.degree_gcd(), 0);
        assert_eq!(g.loop_totals(), vec![2]);
    }

    #[test]
    fn k3_degree_loop_vectors() {
        let vs = LoopedGraph::complete(3).degree_loop_vectors();
        assert!(vs.iter().all(|v| v.components() == vec![2]));
    }

    #[test]
    fn orbits_of_small_graphs() {
        assert_eq!(
            LoopedGraph::cycle(5)
                .unwrap()
                .automorphism_orbits(true)
                .unwrap(),
            vec![vec![0, 1, 2, 3, 4]]
        );
        assert_eq!(
            LoopedGraph::path(4).automorphism_orbits(true).unwrap(),
            vec![vec![0, 3], vec![1, 2]]
        );
        assert_eq!(
            bowtie().automorphism_orbits(true).unwrap(),
            vec![vec![0], vec![1, 2, 3, 4]]
        );
        assert_eq!(bowtie().automorphism_count(false).unwrap(), 8);
        assert_eq!(
            LoopedGraph::cycle(5)
                .unwrap()
                .automorphism_count(false)
                .unwrap(),
            10
        );
    }

    #[test]
    fn loops_split_orbits() {
        let g = LoopedGraph::path(4).with_loops(1, [(0, 0, 1)]).unwrap();
        assert_eq!(
            g.automorphism_orbits(false).unwrap(),
            vec![vec![0], vec![1], vec![2], vec![3]]
        );
        assert_eq!(
            g.automorphism_orbits(true).unwrap(),
            vec![vec![0, 3], vec![1, 2]]
        );
    }

    #[test]
    fn orbit_bound_enforced() {
        let g = LoopedGraph::path(11);
        assert!(matches!(
            g.automorphism_orbits(true),
            Err(Error::VertexBoundExceeded { count: 11, .. })
        ));
        assert_eq!(g.automorphism_orbits_bounded(true, 11).unwrap().len(), 6);
    }

    #[test]
    fn degree_classes_of_bowtie_and_path() {
        let classes = bowtie().degree_classes();
        assert_eq!(classes[&4], vec![0]);
        assert_eq!(classes[&2], vec![1, 2, 3, 4]);
        let p = LoopedGraph::path(4).degree_classes();
        assert_eq!(p[&1], vec![0, 3]);
        assert_eq!(p[&2], vec![1, 2]);
        assert_eq!(LoopedGraph::complete(4).degree_classes().len(), 1);
    }

    #[test]
    fn json_roundtrip_uses_numeric_key_order() {
        let g = LoopedGraph::new(12, 1, [(0, 11)], [(2, 0, 1), (10, 0, 3)]).unwrap();
        let text = serde_json::to_string(&g).unwrap();
        assert!(text.find("\"2\"").unwrap() < text.find("\"10\"").unwrap());
        let back: LoopedGraph = serde_json::from_str(&text).unwrap();
        assert_eq!(back, g);
    }

    #[test]
    fn json_rejects_invalid() {
        let bad = r#"{"n":2,"c":0,"edges":[[0,0]]}"#;
        assert!(serde_json::from_str::<LoopedGraph>(bad).is_err());
    }
}
