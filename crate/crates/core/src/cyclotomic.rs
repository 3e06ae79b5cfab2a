//! Cyclic decompositions of `K_q^[mu; lambda]` for prime powers `q ≡ 1 (mod 2m)`.
//!
//! A base block places the block graph on elements of `GF(q)` so that its `m`
//! edge differences fall in `m` distinct cosets of the index-`m` subgroup
//! `C_0`. Since `-1` lies in `C_0`, the sign of a difference never matters.
//! Developing the base block as `{t * B + a : t in T, a in GF(q)}`, with `T`
//! a transversal of `{1, -1}` in `C_0`, covers every pair of field elements
//! exactly once; `lambda` copies of the family give multiplicity `lambda`.
//! Loops travel with the placed vertices, and closure of the family under
//! additive shifts spreads them evenly.

use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::arith::HostSpec;
use crate::error::{Error, Result};
use crate::field::{CosetSystem, Field};
use crate::graph::LoopedGraph;
use crate::signed::SignedBlock;
use crate::verify::{verify_decomposition, Decomposition};

pub const DEFAULT_TIMEOUT: Duration = Duration::from_millis(10_000);

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BaseBlock {
    pub q: u32,
    /// Field element (encoded) assigned to each block vertex.
    pub placement: Vec<u32>,
}

#[derive(Debug, Clone)]
pub struct CyclotomicDesign {
    pub base: BaseBlock,
    pub decomposition: Decomposition,
}

fn check_congruence(graph: &LoopedGraph, q: u64) -> Result<u64> {
    let m = graph.edge_count() as u64;
    if m == 0 {
        return Err(Error::NoEdges);
    }
    if (q - 1) % (2 * m) != 0 {
        return Err(Error::CongruenceFails { q, two_m: 2 * m });
    }
    Ok(m)
}

/// Checks injectivity and that edge differences occupy pairwise distinct cosets.
pub fn is_valid_base_block(
    graph: &LoopedGraph,
    cosets: &CosetSystem<'_>,
    placement: &[u32],
) -> bool {
    let field = cosets.field();
    if placement.len() != graph.vertex_count() || placement.iter().any(|&x| x >= field.order()) {
        return false;
    }
    let mut sorted = placement.to_vec();
    sorted.sort_unstable();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return false;
    }
    let mut used = vec![false; cosets.index() as usize];
    graph.edges().iter().all(|&(a, b)| {
        let j = cosets
            .coset_of(field.sub(placement[a], placement[b]))
            .expect("distinct elements have nonzero difference");
        !std::mem::replace(&mut used[j as usize], true)
    })
}

/// Placement order: each component breadth-first from a vertex of maximum
/// degree, so every vertex after a component's first has a placed neighbor.
fn search_order(graph: &LoopedGraph) -> Vec<usize> {
    let n = graph.vertex_count();
    let mut order = Vec::with_capacity(n);
    let mut seen = vec![false; n];
    let mut roots: Vec<usize> = (0..n).collect();
    roots.sort_by_key(|&u| (std::cmp::Reverse(graph.degree(u)), u));
    for root in roots {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        let start = order.len();
        order.push(root);
        let mut head = start;
        while head < order.len() {
            let u = order[head];
            head += 1;
            for &w in graph.neighbors(u) {
                if !seen[w] {
                    seen[w] = true;
                    order.push(w);
                }
            }
        }
    }
    order
}

struct BaseSearch<'a, 'f> {
    graph: &'a LoopedGraph,
    cosets: &'a CosetSystem<'f>,
    order: Vec<usize>,
    candidates: Vec<Vec<u32>>,
    placement: Vec<Option<u32>>,
    taken: Vec<bool>,
    used_coset: Vec<bool>,
    nodes: u64,
    started: Instant,
    timeout: Duration,
}

impl BaseSearch<'_, '_> {
    fn run(&mut self, depth: usize) -> Result<bool> {
        if depth == self.order.len() {
            return Ok(true);
        }
        self.nodes += 1;
        if self.nodes % 4096 == 0 && self.started.elapsed() >= self.timeout {
            return Err(Error::Timeout {
                elapsed_ms: self.started.elapsed().as_millis(),
            });
        }
        let field = self.cosets.field();
        let u = self.order[depth];
        let placed: Vec<u32> = self
            .graph
            .neighbors(u)
            .iter()
            .filter_map(|&w| self.placement[w])
            .collect();

        for k in 0..self.candidates[depth].len() {
            let x = self.candidates[depth][k];
            if self.taken[x as usize] {
                continue;
            }
            let mut claimed = Vec::with_capacity(placed.len());
            let mut ok = true;
            for &y in &placed {
                let j = self.cosets.coset_of(field.sub(x, y)).expect("x != y") as usize;
                if self.used_coset[j] {
                    ok = false;
                    break;
                }
                self.used_coset[j] = true;
                claimed.push(j);
            }
            if ok {
                self.placement[u] = Some(x);
                self.taken[x as usize] = true;
                if self.run(depth + 1)? {
                    return Ok(true);
                }
                self.taken[x as usize] = false;
                self.placement[u] = None;
            }
            for j in claimed {
                self.used_coset[j] = false;
            }
        }
        Ok(false)
    }
}

/// Backtracking search for a base block over `field`.
///
/// The first placed vertex is fixed at 0 and, if it has a neighbor, that
/// neighbor at 1: translations and nonzero scalings map base blocks to base
/// blocks, so this loses nothing. `SearchExhausted` is therefore a proof that
/// no base block exists for this `q`. The remaining candidate orders are
/// shuffled by `seed`.
pub fn find_base_block(
    graph: &LoopedGraph,
    field: &Field,
    seed: u64,
    timeout: Duration,
) -> Result<BaseBlock> {
    let q = field.order() as u64;
    let m = check_congruence(graph, q)?;
    let cosets = CosetSystem::new(field, m)?;
    let n = graph.vertex_count();
    if n as u64 > q {
        return Err(Error::SearchExhausted);
    }

    let order = search_order(graph);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let candidates: Vec<Vec<u32>> = order
        .iter()
        .enumerate()
        .map(|(depth, &u)| match depth {
            0 => vec![0],
            1 if graph.has_edge(order[0], u) => vec![1],
            _ => {
                let mut all: Vec<u32> = field.elements().collect();
                all.shuffle(&mut rng);
                all
            }
        })
        .collect();

    let mut search = BaseSearch {
        graph,
        cosets: &cosets,
        order,
        candidates,
        placement: vec![None; n],
        taken: vec![false; q as usize],
        used_coset: vec![false; m as usize],
        nodes: 0,
        started: Instant::now(),
        timeout,
    };
    if !search.run(0)? {
        return Err(Error::SearchExhausted);
    }
    let placement: Vec<u32> = search
        .placement
        .into_iter()
        .map(|x| x.expect("all placed"))
        .collect();
    debug_assert!(is_valid_base_block(graph, &cosets, &placement));
    Ok(BaseBlock {
        q: field.order(),
        placement,
    })
}

/// Develops a valid base block into `lambda * q * (q - 1) / (2m)` blocks.
pub fn develop(
    graph: &LoopedGraph,
    field: &Field,
    base: &BaseBlock,
    lambda: u64,
) -> Result<Decomposition> {
    let q = field.order() as u64;
    if base.q as u64 != q {
        return Err(Error::InvalidParameter(format!(
            "base block lives in GF({}), field is GF({q})",
            base.q
        )));
    }
    let m = check_congruence(graph, q)?;
    let cosets = CosetSystem::new(field, m)?;
    if !is_valid_base_block(graph, &cosets, &base.placement) {
        return Err(Error::InvalidParameter(
            "edge differences of the base block do not lie in distinct cosets".into(),
        ));
    }
    let transversal = cosets.pm1_transversal()?;
    let host = HostSpec::for_graph(graph, q as usize, lambda)?;

    let mut blocks = Vec::with_capacity((lambda * transversal.len() as u64 * q) as usize);
    for _ in 0..lambda {
        for &t in &transversal {
            let scaled: Vec<u32> = base.placement.iter().map(|&x| field.mul(t, x)).collect();
            for a in field.elements() {
                let map = scaled.iter().map(|&x| field.add(x, a) as usize).collect();
                blocks.push(SignedBlock::positive(map));
            }
        }
    }
    Ok(Decomposition::new(graph.clone(), host, blocks))
}

/// Base block search, development, and a full verification pass.
pub fn construct_cyclotomic(
    graph: &LoopedGraph,
    q: u64,
    lambda: u64,
    seed: u64,
    timeout: Duration,
) -> Result<CyclotomicDesign> {
    if lambda == 0 {
        return Err(Error::InvalidParameter("lambda must be positive".into()));
    }
    let field = Field::new(q)?;
    check_congruence(graph, q)?;
    let base = find_base_block(graph, &field, seed, timeout)?;
    let decomposition = develop(graph, &field, &base, lambda)?;
    let report = verify_decomposition(&decomposition)?;
    if !report.pass {
        return Err(Error::VerificationFailed(format!(
            "{} edge defects, {} loop defects",
            report.edge_defects.len(),
            report.loop_defects.len()
        )));
    }
    Ok(CyclotomicDesign {
        base,
        decomposition,
    })
}
