//! Ground-truth checks for decompositions and their balance properties.
//!
//! Every check recounts from the raw block list; nothing here reuses the
//! bookkeeping of the constructions it is used to audit.

use serde::{Deserialize, Serialize};

use crate::arith::HostSpec;
use crate::error::{Error, Result};
use crate::graph::LoopedGraph;
use crate::signed::SignedBlock;

/// A block graph, a host, and an integer-weighted list of placed copies.
///
/// JSON: `{"graph": {...}, "host": {"v", "lambda", "mu"}, "blocks": [{"map": [...], "sign": k}]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Decomposition {
    pub graph: LoopedGraph,
    pub host: HostSpec,
    pub blocks: Vec<SignedBlock>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeDefect {
    pub edge: (usize, usize),
    pub got: i64,
    pub want: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LoopDefect {
    pub vertex: usize,
    pub color: usize,
    pub got: i64,
    pub want: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub pass: bool,
    pub edge_defects: Vec<EdgeDefect>,
    pub loop_defects: Vec<LoopDefect>,
    /// Signed number of blocks containing each host vertex.
    pub replication: Vec<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BalanceReport {
    pub balanced: bool,
    /// The common replication number when balanced.
    pub replication: Option<u64>,
    pub counts: Vec<u64>,
}

/// Appearance counts for one class of block-graph vertices (a degree class or an orbit).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassCounts {
    /// The degree for degree classes, the orbit index for orbits.
    pub key: usize,
    pub members: Vec<usize>,
    /// `counts[x]`: blocks in which host vertex `x` plays a member of the class.
    pub counts: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassBalanceReport {
    pub balanced: bool,
    pub classes: Vec<ClassCounts>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColoringReport {
    pub pass: bool,
    /// `counts[x][i]`: blocks through host vertex `x` with color `i + 1`.
    pub counts: Vec<Vec<u64>>,
    pub failing_vertices: Vec<usize>,
}

impl Decomposition {
    pub fn new(graph: LoopedGraph, host: HostSpec, blocks: Vec<SignedBlock>) -> Self {
        Decomposition {
            graph,
            host,
            blocks,
        }
    }

    /// Checks lengths, ranges and injectivity of every block.
    pub fn check_structure(&self) -> Result<()> {
        let n = self.graph.vertex_count();
        if self.host.mu.len() != self.graph.color_count() {
            return Err(Error::InvalidParameter(format!(
                "host has {} loop colors but the block graph has {}",
                self.host.mu.len(),
                self.graph.color_count()
            )));
        }
        for (index, block) in self.blocks.iter().enumerate() {
            let map = block.embedding.as_slice();
            if map.len() != n {
                return Err(Error::MalformedBlock {
                    index,
                    reason: format!("maps {} vertices, block graph has {n}", map.len()),
                });
            }
            let mut seen = vec![false; self.host.v];
            for &x in map {
                if x >= self.host.v {
                    return Err(Error::MalformedBlock {
                        index,
                        reason: format!("host vertex {x} out of range for v = {}", self.host.v),
                    });
                }
                if std::mem::replace(&mut seen[x], true) {
                    return Err(Error::MalformedBlock {
                        index,
                        reason: format!("host vertex {x} used twice"),
                    });
                }
            }
        }
        Ok(())
    }

    fn require_unsigned(&self) -> Result<()> {
        match self
            .blocks
            .iter()
            .enumerate()
            .find(|(_, b)| b.coefficient != 1)
        {
            Some((index, b)) => Err(Error::SignedInput {
                index,
                coefficient: b.coefficient,
            }),
            None => Ok(()),
        }
    }
}

/// Exact signed edge and loop tallies against `lambda` and `mu`.
pub fn verify_decomposition(d: &Decomposition) -> Result<VerifyReport> {
    d.check_structure()?;
    let v = d.host.v;
    let c = d.graph.color_count();
    let mut edge_count = vec![vec![0i64; v]; v];
    let mut loop_count = vec![vec![0i64; c]; v];
    let mut replication = vec![0i64; v];

    for block in &d.blocks {
        let map = block.embedding.as_slice();
        let w = block.coefficient;
        for &(a, b) in d.graph.edges() {
            let (x, y) = (map[a].min(map[b]), map[a].max(map[b]));
            edge_count[x][y] += w;
        }
        for (u, &x) in map.iter().enumerate() {
            replication[x] += w;
            for (i, &e) in d.graph.loops_at(u).iter().enumerate() {
                loop_count[x][i] += w * e as i64;
            }
        }
    }

    let lambda = d.host.lambda as i64;
    let mut edge_defects = Vec::new();
    for x in 0..v {
        for y in x + 1..v {
            if edge_count[x][y] != lambda {
                edge_defects.push(EdgeDefect {
                    edge: (x, y),
                    got: edge_count[x][y],
                    want: lambda,
                });
            }
        }
    }
    let mut loop_defects = Vec::new();
    for (x, row) in loop_count.iter().enumerate() {
        for (i, &got) in row.iter().enumerate() {
            let want = d.host.mu[i] as i64;
            if got != want {
                loop_defects.push(LoopDefect {
                    vertex: x,
                    color: i,
                    got,
                    want,
                });
            }
        }
    }
    Ok(VerifyReport {
        pass: edge_defects.is_empty() && loop_defects.is_empty(),
        edge_defects,
        loop_defects,
        replication,
    })
}

/// Every host vertex lies in the same number of blocks.
pub fn verify_balanced(d: &Decomposition) -> Result<BalanceReport> {
    d.check_structure()?;
    d.require_unsigned()?;
    let mut counts = vec![0u64; d.host.v];
    for block in &d.blocks {
        for &x in block.embedding.as_slice() {
            counts[x] += 1;
        }
    }
    let balanced = counts.windows(2).all(|w| w[0] == w[1]);
    Ok(BalanceReport {
        balanced,
        replication: balanced.then(|| counts.first().copied().unwrap_or(0)),
        counts,
    })
}

fn class_balance(
    d: &Decomposition,
    classes: Vec<(usize, Vec<usize>)>,
) -> Result<ClassBalanceReport> {
    d.check_structure()?;
    d.require_unsigned()?;
    let mut out = Vec::with_capacity(classes.len());
    for (key, members) in classes {
        let mut counts = vec![0u64; d.host.v];
        for block in &d.blocks {
            for &u in &members {
                counts[block.embedding.image(u)] += 1;
            }
        }
        out.push(ClassCounts {
            key,
            members,
            counts,
        });
    }
    let balanced = out
        .iter()
        .all(|c| c.counts.windows(2).all(|w| w[0] == w[1]));
    Ok(ClassBalanceReport {
        balanced,
        classes: out,
    })
}

/// `r_d(x)`: blocks in which host vertex `x` has block-degree `d`, constant in `x`.
pub fn verify_degree_balanced(d: &Decomposition) -> Result<ClassBalanceReport> {
    let classes = d.graph.degree_classes().into_iter().collect();
    class_balance(d, classes)
}

/// `r_a(x)`: blocks in which host vertex `x` lies in automorphism orbit `a`
/// of the loopless block graph, constant in `x`.
pub fn verify_orbit_balanced(d: &Decomposition) -> Result<ClassBalanceReport> {
    let orbits = d.graph.automorphism_orbits(true)?;
    class_balance(d, orbits.into_iter().enumerate().collect())
}

/// `(s, p)`-equitable block coloring check, colors in `1..=s`.
///
/// For `p < s` every vertex must meet exactly `p` colors with counts within
/// one of each other. For `p = s` this is the `s`-equitable condition: counts
/// over all `s` colors, absent colors counting zero, within one of each other.
pub fn verify_equitable_coloring(
    d: &Decomposition,
    coloring: &[usize],
    s: usize,
    p: usize,
) -> Result<ColoringReport> {
    d.check_structure()?;
    d.require_unsigned()?;
    if s == 0 || p == 0 || p > s {
        return Err(Error::InvalidParameter(format!(
            "need 1 <= p <= s, got s = {s}, p = {p}"
        )));
    }
    if coloring.len() != d.blocks.len() {
        return Err(Error::InvalidParameter(format!(
            "coloring has {} entries for {} blocks",
            coloring.len(),
            d.blocks.len()
        )));
    }
    let mut counts = vec![vec![0u64; s]; d.host.v];
    for (index, (block, &color)) in d.blocks.iter().zip(coloring).enumerate() {
        if color == 0 || color > s {
            return Err(Error::BadColorRange { index, color, s });
        }
        for &x in block.embedding.as_slice() {
            counts[x][color - 1] += 1;
        }
    }
    let failing_vertices: Vec<usize> = counts
        .iter()
        .enumerate()
        .filter(|(_, row)| {
            let considered: Vec<u64> = if p == s {
                row.to_vec()
            } else {
                row.iter().copied().filter(|&b| b > 0).collect()
            };
            let spread_ok = match (considered.iter().min(), considered.iter().max()) {
                (Some(lo), Some(hi)) => hi - lo <= 1,
                _ => true,
            };
            let colors_ok = p == s || considered.len() == p;
            !(spread_ok && colors_ok)
        })
        .map(|(x, _)| x)
        .collect();
    Ok(ColoringReport {
        pass: failing_vertices.is_empty(),
        counts,
        failing_vertices,
    })
}

/// Cyclic `(s, t)` ordering: block `k`'s image of `t` is block `k+1`'s image of `s`.
pub fn verify_block_ordering(
    d: &Decomposition,
    order: &[usize],
    s: usize,
    t: usize,
) -> Result<bool> {
    d.check_structure()?;
    d.require_unsigned()?;
    let n = d.graph.vertex_count();
    if s >= n || t >= n {
        return Err(Error::InvalidParameter(format!(
            "distinguished vertices ({s}, {t}) out of range for n = {n}"
        )));
    }
    let mut seen = vec![false; d.blocks.len()];
    if order.len() != d.blocks.len()
        || order
            .iter()
            .any(|&i| i >= seen.len() || std::mem::replace(&mut seen[i], true))
    {
        return Err(Error::NotAPermutation {
            blocks: d.blocks.len(),
        });
    }
    Ok((0..order.len()).all(|k| {
        let here = &d.blocks[order[k]].embedding;
        let next = &d.blocks[order[(k + 1) % order.len()]].embedding;
        here.image(t) == next.image(s)
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn oriented_edge() -> LoopedGraph {
        LoopedGraph::new(2, 2, [(0, 1)], [(0, 0, 1), (1, 1, 1)]).unwrap()
    }

    fn triangle_design() -> Decomposition {
        Decomposition::new(
            oriented_edge(),
            HostSpec {
                v: 3,
                lambda: 1,
                mu: vec![1, 1],
            },
            [vec![0, 1], vec![1, 2], vec![2, 0]]
                .into_iter()
                .map(SignedBlock::positive)
                .collect(),
        )
    }

    #[test]
    fn directed_triangle_passes() {
        let report = verify_decomposition(&triangle_design()).unwrap();
        assert!(report.pass);
        assert_eq!(report.replication, vec![2, 2, 2]);
    }

    #[test]
    fn wrong_orientation_fails_loops_only() {
        let mut d = triangle_design();
        d.blocks[2] = SignedBlock::positive(vec![0, 2]);
        let report = verify_decomposition(&d).unwrap();
        assert!(!report.pass);
        assert!(report.edge_defects.is_empty());
        assert_eq!(report.loop_defects.len(), 4);
    }

    #[test]
    fn malformed_blocks_rejected() {
        let mut d = triangle_design();
        d.blocks[0] = SignedBlock::positive(vec![1, 1]);
        assert!(matches!(
            verify_decomposition(&d),
            Err(Error::MalformedBlock { index: 0, .. })
        ));
        d.blocks[0] = SignedBlock::positive(vec![0, 3]);
        assert!(matches!(
            verify_decomposition(&d),
            Err(Error::MalformedBlock { .. })
        ));
        d.blocks[0] = SignedBlock::positive(vec![0]);
        assert!(matches!(
            verify_decomposition(&d),
            Err(Error::MalformedBlock { .. })
        ));
    }

    #[test]
    fn whole_clique_is_balanced() {
        let d = Decomposition::new(
            LoopedGraph::complete(4),
            HostSpec {
                v: 4,
                lambda: 1,
                mu: vec![],
            },
            vec![SignedBlock::positive(vec![2, 0, 3, 1])],
        );
        assert!(verify_decomposition(&d).unwrap().pass);
        assert_eq!(verify_balanced(&d).unwrap().replication, Some(1));
    }

    #[test]
    fn unbalanced_block_list_detected() {
        let d = Decomposition::new(
            LoopedGraph::complete(2),
            HostSpec {
                v: 3,
                lambda: 1,
                mu: vec![],
            },
            vec![
                SignedBlock::positive(vec![0, 1]),
                SignedBlock::positive(vec![0, 2]),
            ],
        );
        let report = verify_balanced(&d).unwrap();
        assert!(!report.balanced);
        assert_eq!(report.counts, vec![2, 1, 1]);
        assert_eq!(report.replication, None);
    }

    #[test]
    fn balance_rejects_signed_input() {
        let mut d = triangle_design();
        d.blocks[1].coefficient = -1;
        assert!(matches!(
            verify_balanced(&d),
            Err(Error::SignedInput {
                index: 1,
                coefficient: -1
            })
        ));
        assert!(verify_degree_balanced(&d).is_err());
        assert!(verify_orbit_balanced(&d).is_err());
    }

    #[test]
    fn ordering_of_directed_triangle() {
        let d = triangle_design();
        assert!(verify_block_ordering(&d, &[0, 1, 2], 0, 1).unwrap());
        assert!(!verify_block_ordering(&d, &[0, 2, 1], 0, 1).unwrap());
        assert!(matches!(
            verify_block_ordering(&d, &[0, 0, 1], 0, 1),
            Err(Error::NotAPermutation { blocks: 3 })
        ));
        assert!(verify_block_ordering(&d, &[0, 1], 0, 1).is_err());
    }

    #[test]
    fn single_color_is_equitable() {
        let d = triangle_design();
        assert!(
            verify_equitable_coloring(&d, &[1, 1, 1], 1, 1)
                .unwrap()
                .pass
        );
        assert!(matches!(
            verify_equitable_coloring(&d, &[1, 2, 1], 1, 1),
            Err(Error::BadColorRange {
                index: 1,
                color: 2,
                s: 1
            })
        ));
        assert!(verify_equitable_coloring(&d, &[1, 1], 1, 1).is_err());
    }

    #[test]
    fn sp_coloring_requires_exactly_p_colors() {
        // each vertex of the triangle meets two blocks
        let d = triangle_design();
        let r = verify_equitable_coloring(&d, &[1, 2, 3], 3, 2).unwrap();
        assert!(r.pass);
        // vertex 1 lies in blocks 0 and 1, both color 1: one color only
        let r = verify_equitable_coloring(&d, &[1, 1, 2], 3, 2).unwrap();
        assert_eq!(r.failing_vertices, vec![1]);
    }
}
