//! Signed decompositions: integer combinations of block copies that hit the
//! edge and loop targets of `K_v^[mu; lambda]` exactly.
//!
//! One column per loop-decorated copy of the block graph in `K_v`; one row per
//! host edge (target `lambda`) and per (host vertex, color) pair (target
//! `mu_i`). The system is solved exactly over the integers by growing a
//! Hermite-form basis of the column lattice until it captures the right-hand
//! side.

use std::collections::HashSet;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::arith::{is_admissible, HostSpec};
use crate::error::{Error, Result};
use crate::graph::LoopedGraph;
use crate::lattice::Lattice;

/// Default bound on host order for copy enumeration.
pub const DEFAULT_HOST_BOUND: usize = 10;

/// Injective placement of block vertices: position `u` holds the host vertex for block vertex `u`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Embedding(pub Vec<usize>);

impl Embedding {
    pub fn image(&self, u: usize) -> usize {
        self.0[u]
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SignedBlock {
    #[serde(rename = "map")]
    pub embedding: Embedding,
    #[serde(rename = "sign")]
    pub coefficient: i64,
}

impl SignedBlock {
    pub fn positive(map: Vec<usize>) -> Self {
        SignedBlock {
            embedding: Embedding(map),
            coefficient: 1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RowLabel {
    Edge(usize, usize),
    Loop { vertex: usize, color: usize },
}

impl fmt::Display for RowLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RowLabel::Edge(a, b) => write!(f, "edge {{{a},{b}}}"),
            RowLabel::Loop { vertex, color } => {
                write!(f, "loops of color {color} at vertex {vertex}")
            }
        }
    }
}

/// Lists every copy of `graph` in `K_v` once, up to automorphisms that
/// preserve loops. The representative is the lexicographically first
/// embedding of its copy.
pub fn enumerate_blocks(graph: &LoopedGraph, v: usize) -> Result<Vec<Embedding>> {
    enumerate_blocks_bounded(graph, v, DEFAULT_HOST_BOUND)
}

pub fn enumerate_blocks_bounded(
    graph: &LoopedGraph,
    v: usize,
    bound: usize,
) -> Result<Vec<Embedding>> {
    let n = graph.vertex_count();
    if v > bound {
        return Err(Error::VertexBoundExceeded {
            what: "copy enumeration",
            count: v,
            bound,
        });
    }
    if v < n {
        return Err(Error::InvalidParameter(format!(
            "host order {v} is smaller than block order {n}"
        )));
    }

    // a copy is determined by its image edges, image vertices and loops per image vertex
    type CopyKey = (Vec<(usize, usize)>, Vec<(usize, Vec<u64>)>);
    let key_of = |map: &[usize]| -> CopyKey {
        let mut edges: Vec<(usize, usize)> = graph
            .edges()
            .iter()
            .map(|&(a, b)| (map[a].min(map[b]), map[a].max(map[b])))
            .collect();
        edges.sort_unstable();
        let mut verts: Vec<(usize, Vec<u64>)> = (0..n)
            .map(|u| (map[u], graph.loops_at(u).to_vec()))
            .collect();
        verts.sort_unstable();
        (edges, verts)
    };

    let mut seen: HashSet<CopyKey> = HashSet::new();
    let mut out = Vec::new();
    let mut map = Vec::with_capacity(n);
    let mut used = vec![false; v];

    fn walk(
        n: usize,
        v: usize,
        map: &mut Vec<usize>,
        used: &mut [bool],
        emit: &mut dyn FnMut(&[usize]),
    ) {
        if map.len() == n {
            emit(map);
            return;
        }
        for x in 0..v {
            if !used[x] {
                used[x] = true;
                map.push(x);
                walk(n, v, map, used, emit);
                map.pop();
                used[x] = false;
            }
        }
    }

    walk(n, v, &mut map, &mut used, &mut |m: &[usize]| {
        if seen.insert(key_of(m)) {
            out.push(Embedding(m.to_vec()));
        }
    });
    Ok(out)
}

/// The integer system whose solutions are signed decompositions.
#[derive(Debug, Clone)]
pub struct LinearSystem {
    graph: LoopedGraph,
    host: HostSpec,
    columns: Vec<Embedding>,
}

impl LinearSystem {
    pub fn new(graph: &LoopedGraph, host: HostSpec, columns: Vec<Embedding>) -> Self {
        LinearSystem {
            graph: graph.clone(),
            host,
            columns,
        }
    }

    pub fn columns(&self) -> &[Embedding] {
        &self.columns
    }

    pub fn host(&self) -> &HostSpec {
        &self.host
    }

    fn edge_rows(&self) -> usize {
        self.host.v * self.host.v.saturating_sub(1) / 2
    }

    pub fn row_count(&self) -> usize {
        self.edge_rows() + self.host.v * self.graph.color_count()
    }

    fn edge_row(&self, a: usize, b: usize) -> usize {
        let (a, b) = (a.min(b), a.max(b));
        let v = self.host.v;
        a * v - a * (a + 1) / 2 + (b - a - 1)
    }

    pub fn row_label(&self, row: usize) -> RowLabel {
        let edges = self.edge_rows();
        if row < edges {
            let v = self.host.v;
            let mut a = 0;
            let mut start = 0;
            while start + (v - a - 1) <= row {
                start += v - a - 1;
                a += 1;
            }
            RowLabel::Edge(a, a + 1 + row - start)
        } else {
            let c = self.graph.color_count();
            let k = row - edges;
            RowLabel::Loop {
                vertex: k / c,
                color: k % c,
            }
        }
    }

    /// Nonzero entries of a column as `(row, value)`.
    pub fn column_entries(&self, map: &Embedding) -> Vec<(usize, u64)> {
        let c = self.graph.color_count();
        let edges = self.edge_rows();
        let mut entries: Vec<(usize, u64)> = self
            .graph
            .edges()
            .iter()
            .map(|&(a, b)| (self.edge_row(map.image(a), map.image(b)), 1))
            .collect();
        for u in 0..self.graph.vertex_count() {
            for (i, &e) in self.graph.loops_at(u).iter().enumerate() {
                if e > 0 {
                    entries.push((edges + map.image(u) * c + i, e));
                }
            }
        }
        entries.sort_unstable();
        entries
    }

    pub fn rhs(&self) -> Vec<BigInt> {
        let mut rhs = vec![BigInt::from(self.host.lambda); self.edge_rows()];
        for _ in 0..self.host.v {
            rhs.extend(self.host.mu.iter().map(|&x| BigInt::from(x)));
        }
        rhs
    }

    /// `A x` for a list of signed blocks.
    pub fn evaluate(&self, blocks: &[SignedBlock]) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); self.row_count()];
        for block in blocks {
            for (row, value) in self.column_entries(&block.embedding) {
                out[row] += BigInt::from(value) * block.coefficient;
            }
        }
        out
    }

    pub fn is_solution(&self, blocks: &[SignedBlock]) -> bool {
        self.evaluate(blocks) == self.rhs()
    }
}

#[derive(Debug, Clone, Default)]
pub struct SignedOptions {
    /// Shuffles the column order to pick a different particular solution.
    pub seed: Option<u64>,
    /// Host order bound for copy enumeration (default 10).
    pub host_bound: Option<usize>,
}

#[derive(Debug, Clone)]
pub struct SignedSolution {
    pub host: HostSpec,
    pub blocks: Vec<SignedBlock>,
    /// Number of copies of the block graph in `K_v`.
    pub column_count: usize,
    /// Columns that enlarged the lattice; the solution is supported on these.
    pub generator_count: usize,
    pub row_count: usize,
}

fn check_preconditions(graph: &LoopedGraph, v: usize, lambda: u64) -> Result<HostSpec> {
    let report = is_admissible(graph, v, lambda)?;
    if !report.admissible {
        return Err(Error::Inadmissible {
            v,
            lambda,
            global_ok: report.global_ok,
            local_ok: report.local_ok,
        });
    }
    if v < graph.vertex_count() {
        return Err(Error::InvalidParameter(format!(
            "host order {v} is smaller than block order {}",
            graph.vertex_count()
        )));
    }
    Ok(HostSpec {
        v,
        lambda,
        mu: report.mu.expect("admissible reports carry mu"),
    })
}

pub fn solve_signed(graph: &LoopedGraph, v: usize, lambda: u64) -> Result<SignedSolution> {
    solve_signed_with(graph, v, lambda, &SignedOptions::default())
}

pub fn solve_signed_with(
    graph: &LoopedGraph,
    v: usize,
    lambda: u64,
    options: &SignedOptions,
) -> Result<SignedSolution> {
    let host = check_preconditions(graph, v, lambda)?;
    let mut columns =
        enumerate_blocks_bounded(graph, v, options.host_bound.unwrap_or(DEFAULT_HOST_BOUND))?;
    if let Some(seed) = options.seed {
        columns.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    }
    let system = LinearSystem::new(graph, host.clone(), columns);
    let rows = system.row_count();
    let rhs = system.rhs();

    let mut lattice = Lattice::new(rows);
    let mut accepted = Vec::new();
    for (j, map) in system.columns().iter().enumerate() {
        if lattice.contains(&rhs) {
            break;
        }
        let mut column = vec![BigInt::zero(); rows];
        for (row, value) in system.column_entries(map) {
            column[row] = BigInt::from(value);
        }
        if lattice.insert(&column) {
            accepted.push(j);
        }
    }

    let coefficients = lattice.express(&rhs).map_err(|obstruction| {
        let label = system.row_label(obstruction.position);
        Error::Inconsistent(match obstruction.pivot {
            Some(p) => format!(
                "{label}: residual {} is not a multiple of the lattice pivot {p}",
                obstruction.residue
            ),
            None => format!(
                "{label}: residual {} lies outside the span of all copies",
                obstruction.residue
            ),
        })
    })?;

    let mut blocks = Vec::new();
    for (&j, x) in accepted.iter().zip(&coefficients) {
        if x.is_zero() {
            continue;
        }
        blocks.push(SignedBlock {
            embedding: system.columns()[j].clone(),
            coefficient: x.to_i64().ok_or(Error::Overflow("block coefficient"))?,
        });
    }
    blocks.sort_by(|a, b| a.embedding.cmp(&b.embedding));

    if !system.is_solution(&blocks) {
        return Err(Error::VerificationFailed(
            "signed solution does not reproduce the right-hand side".into(),
        ));
    }
    Ok(SignedSolution {
        host,
        blocks,
        column_count: system.columns().len(),
        generator_count: accepted.len(),
        row_count: rows,
    })
}

#[derive(Debug, Clone)]
pub struct NonnegativeOptions {
    /// Maximum number of search nodes before giving up.
    pub budget: u64,
    /// Shuffles candidate order at every node.
    pub seed: Option<u64>,
    pub host_bound: Option<usize>,
}

impl Default for NonnegativeOptions {
    fn default() -> Self {
        NonnegativeOptions {
            budget: 1_000_000,
            seed: None,
            host_bound: None,
        }
    }
}

struct NonnegSearch<'a> {
    edge_rows: usize,
    columns: &'a [Vec<(usize, u64)>],
    by_edge: Vec<Vec<usize>>,
    residual: Vec<u64>,
    chosen: Vec<usize>,
    nodes: u64,
    budget: u64,
    rng: Option<ChaCha8Rng>,
}

impl NonnegSearch<'_> {
    fn run(&mut self) -> Result<bool> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::NotFoundWithinBudget {
                budget: self.budget,
            });
        }
        let Some(edge) = (0..self.edge_rows).find(|&r| self.residual[r] > 0) else {
            return Ok(self.residual.iter().all(|&x| x == 0));
        };
        let mut candidates = self.by_edge[edge].clone();
        if let Some(rng) = self.rng.as_mut() {
            candidates.shuffle(rng);
        }
        for j in candidates {
            let fits = self.columns[j]
                .iter()
                .all(|&(row, value)| self.residual[row] >= value);
            if !fits {
                continue;
            }
            for &(row, value) in &self.columns[j] {
                self.residual[row] -= value;
            }
            self.chosen.push(j);
            if self.run()? {
                return Ok(true);
            }
            self.chosen.pop();
            for &(row, value) in &self.columns[j] {
                self.residual[row] += value;
            }
        }
        Ok(false)
    }
}

/// Depth-first search for a genuine decomposition (all coefficients positive).
pub fn solve_nonnegative(
    graph: &LoopedGraph,
    v: usize,
    lambda: u64,
    options: &NonnegativeOptions,
) -> Result<Vec<SignedBlock>> {
    let host = check_preconditions(graph, v, lambda)?;
    let columns =
        enumerate_blocks_bounded(graph, v, options.host_bound.unwrap_or(DEFAULT_HOST_BOUND))?;
    let system = LinearSystem::new(graph, host, columns);
    let entries: Vec<Vec<(usize, u64)>> = system
        .columns()
        .iter()
        .map(|map| system.column_entries(map))
        .collect();
    let edge_rows = system.edge_rows();
    let mut by_edge = vec![Vec::new(); edge_rows];
    for (j, col) in entries.iter().enumerate() {
        for &(row, _) in col {
            if row < edge_rows {
                by_edge[row].push(j);
            }
        }
    }
    let residual: Vec<u64> = system
        .rhs()
        .iter()
        .map(|x| x.to_u64().expect("targets are nonnegative"))
        .collect();

    let mut search = NonnegSearch {
        edge_rows,
        columns: &entries,
        by_edge,
        residual,
        chosen: Vec::new(),
        nodes: 0,
        budget: options.budget,
        rng: options.seed.map(ChaCha8Rng::seed_from_u64),
    };
    if !search.run()? {
        return Err(Error::SearchExhausted);
    }
    let mut chosen = search.chosen;
    chosen.sort_unstable();
    let blocks: Vec<SignedBlock> = chosen
        .into_iter()
        .map(|j| SignedBlock {
            embedding: system.columns()[j].clone(),
            coefficient: 1,
        })
        .collect();
    if !system.is_solution(&blocks) {
        return Err(Error::VerificationFailed(
            "nonnegative search produced a non-solution".into(),
        ));
    }
    Ok(blocks)
}
