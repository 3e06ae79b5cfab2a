//! Pairwise balanced designs and the gluing of small decompositions along them.

use std::collections::{BTreeMap, BTreeSet};

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::arith::HostSpec;
use crate::error::{Error, Result};
use crate::signed::SignedBlock;
use crate::verify::{verify_decomposition, Decomposition};

/// Points `0..v` and blocks such that every pair of points lies in exactly one block.
///
/// JSON: `{"v": 7, "blocks": [[0, 1, 3], ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Pbd {
    pub v: usize,
    pub blocks: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PbdParameters {
    pub alpha: u64,
    pub beta: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairCount {
    pub pair: (usize, usize),
    pub count: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PbdReport {
    pub pass: bool,
    /// Blocks that are too small, repeat a point, or leave the point range.
    pub malformed_blocks: Vec<usize>,
    pub uncovered: Vec<(usize, usize)>,
    pub overcovered: Vec<PairCount>,
}

/// `alpha(K) = gcd{k - 1}` and `beta(K) = gcd{k(k - 1)}`.
pub fn pbd_parameters(sizes: &BTreeSet<u64>) -> Result<PbdParameters> {
    if sizes.is_empty() {
        return Err(Error::EmptyK);
    }
    if let Some(k) = sizes.iter().find(|&&k| k < 2) {
        return Err(Error::InvalidParameter(format!(
            "block sizes must be at least 2, got {k}"
        )));
    }
    let (alpha, beta) = sizes.iter().fold((0u64, 0u64), |(a, b), &k| {
        (a.gcd(&(k - 1)), b.gcd(&(k * (k - 1))))
    });
    Ok(PbdParameters { alpha, beta })
}

/// Exact pair tally.
pub fn verify_pbd(pbd: &Pbd) -> PbdReport {
    let v = pbd.v;
    let mut malformed_blocks = Vec::new();
    let mut counts = vec![0usize; v * v];
    for (index, block) in pbd.blocks.iter().enumerate() {
        let distinct: BTreeSet<usize> = block.iter().copied().collect();
        if block.len() < 2 || distinct.len() != block.len() || block.iter().any(|&x| x >= v) {
            malformed_blocks.push(index);
            continue;
        }
        for (i, &a) in block.iter().enumerate() {
            for &b in &block[i + 1..] {
                counts[a.min(b) * v + a.max(b)] += 1;
            }
        }
    }
    let mut uncovered = Vec::new();
    let mut overcovered = Vec::new();
    for a in 0..v {
        for b in a + 1..v {
            match counts[a * v + b] {
                0 => uncovered.push((a, b)),
                1 => {}
                count => overcovered.push(PairCount {
                    pair: (a, b),
                    count,
                }),
            }
        }
    }
    PbdReport {
        pass: malformed_blocks.is_empty() && uncovered.is_empty() && overcovered.is_empty(),
        malformed_blocks,
        uncovered,
        overcovered,
    }
}

impl Pbd {
    /// Builds a design and rejects it unless it verifies.
    pub fn new(v: usize, blocks: Vec<Vec<usize>>) -> Result<Self> {
        let pbd = Pbd { v, blocks };
        let report = verify_pbd(&pbd);
        if !report.pass {
            return Err(Error::InvalidPbd(format!(
                "{} malformed blocks, {} uncovered pairs, {} pairs covered more than once",
                report.malformed_blocks.len(),
                report.uncovered.len(),
                report.overcovered.len()
            )));
        }
        Ok(pbd)
    }

    /// The single block holding all `v >= 2` points.
    pub fn trivial(v: usize) -> Result<Self> {
        Pbd::new(v, vec![(0..v).collect()])
    }

    /// The seven lines of the projective plane of order 2.
    pub fn fano() -> Result<Self> {
        let lines = (0..7).map(|i| vec![i, (i + 1) % 7, (i + 3) % 7]).collect();
        Pbd::new(7, lines)
    }

    /// The twelve lines of the affine plane of order 3, point `(x, y)` numbered `3x + y`.
    pub fn affine_plane_order_3() -> Result<Self> {
        let mut lines = Vec::new();
        for x in 0..3 {
            lines.push((0..3).map(|y| 3 * x + y).collect());
        }
        for slope in 0..3 {
            for intercept in 0..3 {
                lines.push(
                    (0..3)
                        .map(|x| 3 * x + (slope * x + intercept) % 3)
                        .collect(),
                );
            }
        }
        Pbd::new(9, lines)
    }

    pub fn block_sizes(&self) -> BTreeSet<usize> {
        self.blocks.iter().map(Vec::len).collect()
    }
}

/// Glues one decomposition per block size into a decomposition of `K_v`.
///
/// Each PBD block, sorted ascending, receives a copy of the part for its
/// size, with host vertex `i` of the part sent to the block's `i`-th point.
/// Every part must use the same block graph and `lambda` and must verify on
/// its own.
pub fn compose(pbd: &Pbd, parts: &BTreeMap<usize, Decomposition>) -> Result<Decomposition> {
    let report = verify_pbd(pbd);
    if !report.pass {
        return Err(Error::InvalidPbd(format!(
            "{} malformed blocks, {} uncovered pairs, {} pairs covered more than once",
            report.malformed_blocks.len(),
            report.uncovered.len(),
            report.overcovered.len()
        )));
    }
    let sizes = pbd.block_sizes();
    for &size in &sizes {
        if !parts.contains_key(&size) {
            return Err(Error::MissingPart(size));
        }
    }
    let reference = parts
        .get(
            sizes
                .iter()
                .next()
                .ok_or_else(|| Error::InvalidPbd("no blocks".into()))?,
        )
        .expect("checked above");
    let graph = &reference.graph;
    let lambda = reference.host.lambda;
    for &size in &sizes {
        let part = &parts[&size];
        let fail = |reason: String| Error::PartNotVerified { size, reason };
        if part.host.v != size {
            return Err(fail(format!("host order is {}", part.host.v)));
        }
        if part.host.lambda != lambda {
            return Err(fail(format!(
                "lambda is {}, other parts use {lambda}",
                part.host.lambda
            )));
        }
        if part.graph != *graph {
            return Err(fail("block graph differs from the other parts".into()));
        }
        if let Some(b) = part.blocks.iter().find(|b| b.coefficient != 1) {
            return Err(fail(format!("block with coefficient {}", b.coefficient)));
        }
        let check = verify_decomposition(part).map_err(|e| fail(e.to_string()))?;
        if !check.pass {
            return Err(fail(format!(
                "{} edge defects, {} loop defects",
                check.edge_defects.len(),
                check.loop_defects.len()
            )));
        }
    }

    let host = HostSpec::for_graph(graph, pbd.v, lambda)?;
    let mut loop_sums = vec![vec![0u64; graph.color_count()]; pbd.v];
    let mut blocks = Vec::new();
    for block in &pbd.blocks {
        let mut points = block.clone();
        points.sort_unstable();
        let part = &parts[&points.len()];
        for &x in &points {
            for (sum, mu) in loop_sums[x].iter_mut().zip(&part.host.mu) {
                *sum += mu;
            }
        }
        for b in &part.blocks {
            let map = b.embedding.as_slice().iter().map(|&i| points[i]).collect();
            blocks.push(SignedBlock::positive(map));
        }
    }
    if let Some((vertex, got)) = loop_sums
        .iter()
        .enumerate()
        .find(|(_, got)| **got != host.mu)
    {
        return Err(Error::LoopSumMismatch {
            vertex,
            got: got.clone(),
            want: host.mu.clone(),
        });
    }

    let composed = Decomposition::new(graph.clone(), host, blocks);
    let check = verify_decomposition(&composed)?;
    if !check.pass {
        return Err(Error::VerificationFailed(format!(
            "composition has {} edge defects and {} loop defects",
            check.edge_defects.len(),
            check.loop_defects.len()
        )));
    }
    Ok(composed)
}
