//! Divisibility conditions for decompositions of `K_v^[mu; lambda]`.
//!
//! For a block graph with `m` edges, degrees `d_u` and loop counts `e_{u,i}`
//! (totals `l_i`), a decomposition of the host needs
//!
//! * `mu_i = lambda * l_i * (v - 1) / (2m)` loops of color `i` per host vertex,
//! * `2m | lambda * v * (v - 1)`, and
//! * `alpha | lambda * (v - 1)`,
//!
//! where `alpha` is the least positive integer with
//! `alpha * (1, l_1/2m, ..., l_c/2m)` in the lattice spanned by the vectors
//! `(d_u, e_{u,1}, ..., e_{u,c})`. Everything here is exact integer arithmetic.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::LoopedGraph;
use crate::lattice::Lattice;

/// The host multigraph `K_v^[mu; lambda]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HostSpec {
    pub v: usize,
    pub lambda: u64,
    pub mu: Vec<u64>,
}

impl HostSpec {
    /// Host for `graph` at order `v`, with the loop multiplicities it forces.
    pub fn for_graph(graph: &LoopedGraph, v: usize, lambda: u64) -> Result<Self> {
        Ok(HostSpec {
            v,
            lambda,
            mu: compute_mu(graph, v, lambda)?,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdmissibilityReport {
    pub admissible: bool,
    pub alpha: u64,
    pub global_ok: bool,
    pub local_ok: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mu: Option<Vec<u64>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResidueReport {
    pub modulus: u64,
    /// Residues all of whose members are admissible.
    pub residues: BTreeSet<u64>,
    /// Residues containing both admissible and inadmissible orders; only
    /// possible when the modulus is not a multiple of the period `2m`.
    pub mixed: BTreeSet<u64>,
}

fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// The local divisibility modulus of a block graph.
pub fn compute_alpha(graph: &LoopedGraph) -> Result<u64> {
    let m = graph.edge_count() as u64;
    if m == 0 {
        return Err(Error::NoEdges);
    }
    let two_m = 2 * m;
    let totals = graph.loop_totals();
    let vectors = graph.degree_loop_vectors();

    // the generators sum to (2m, l_1, ..., l_c), so alpha = 2m always works
    let mut sum = vec![0u64; graph.color_count() + 1];
    for v in &vectors {
        for (s, x) in sum.iter_mut().zip(v.components()) {
            *s += x;
        }
    }
    let target: Vec<u64> = std::iter::once(two_m)
        .chain(totals.iter().copied())
        .collect();
    assert_eq!(sum, target, "degree-loop vectors must sum to (2m, l)");

    let mut lattice = Lattice::new(graph.color_count() + 1);
    for v in &vectors {
        let big: Vec<BigInt> = v.components().into_iter().map(BigInt::from).collect();
        lattice.insert(&big);
    }

    for alpha in divisors(two_m) {
        if totals.iter().any(|&l| (alpha * l) % two_m != 0) {
            continue;
        }
        let point: Vec<BigInt> = std::iter::once(alpha)
            .chain(totals.iter().map(|&l| alpha * l / two_m))
            .map(BigInt::from)
            .collect();
        if lattice.contains(&point) {
            return Ok(alpha);
        }
    }
    unreachable!("alpha = 2m is always a lattice point")
}

/// Loop multiplicities `mu_i = lambda * l_i * (v - 1) / 2m`, required to be integral.
pub fn compute_mu(graph: &LoopedGraph, v: usize, lambda: u64) -> Result<Vec<u64>> {
    let m = graph.edge_count() as u128;
    if m == 0 {
        return Err(Error::NoEdges);
    }
    let denominator = 2 * m;
    let degree_total = lambda as u128 * (v as u128).saturating_sub(1);
    graph
        .loop_totals()
        .into_iter()
        .enumerate()
        .map(|(color, l)| {
            let numerator = degree_total * l as u128;
            if numerator % denominator != 0 {
                let g = numerator.gcd(&denominator);
                return Err(Error::NonIntegralMu {
                    color,
                    numerator: numerator / g,
                    denominator: denominator / g,
                });
            }
            u64::try_from(numerator / denominator).map_err(|_| Error::Overflow("loop multiplicity"))
        })
        .collect()
}

fn conditions(two_m: u128, alpha: u128, v: u128, lambda: u128) -> (bool, bool) {
    let v_minus_1 = v.saturating_sub(1);
    let global = (lambda * v * v_minus_1) % two_m == 0;
    let local = (lambda * v_minus_1) % alpha == 0;
    (global, local)
}

pub fn is_admissible(graph: &LoopedGraph, v: usize, lambda: u64) -> Result<AdmissibilityReport> {
    if lambda == 0 {
        return Err(Error::InvalidParameter("lambda must be positive".into()));
    }
    let alpha = compute_alpha(graph)?;
    let two_m = 2 * graph.edge_count() as u128;
    let (global_ok, local_ok) = conditions(two_m, alpha as u128, v as u128, lambda as u128);
    let admissible = global_ok && local_ok;
    let mu = if admissible {
        Some(compute_mu(graph, v, lambda)?)
    } else {
        None
    };
    Ok(AdmissibilityReport {
        admissible,
        alpha,
        global_ok,
        local_ok,
        mu,
    })
}

/// Residues `r mod modulus` whose orders `v` are all admissible.
///
/// Both conditions depend only on `v mod 2m` (alpha divides 2m), so every
/// member of a residue class is represented among `r + k * modulus` for
/// `k` ranging over one period of the class. Representatives start at
/// `modulus` so that `v = 0, 1` never stand in for a class.
pub fn admissible_residues(
    graph: &LoopedGraph,
    lambda: u64,
    modulus: u64,
) -> Result<ResidueReport> {
    if modulus == 0 {
        return Err(Error::InvalidParameter("modulus must be at least 1".into()));
    }
    if lambda == 0 {
        return Err(Error::InvalidParameter("lambda must be positive".into()));
    }
    let alpha = compute_alpha(graph)? as u128;
    let two_m = 2 * graph.edge_count() as u128;
    let modulus_wide = modulus as u128;
    let representatives = (modulus_wide.lcm(&two_m) / modulus_wide).max(2);

    let mut residues = BTreeSet::new();
    let mut mixed = BTreeSet::new();
    for r in 0..modulus_wide {
        let mut any = false;
        let mut all = true;
        for k in 1..=representatives {
            let v = r + k * modulus_wide;
            let (g, l) = conditions(two_m, alpha, v, lambda as u128);
            any |= g && l;
            all &= g && l;
        }
        if all {
            residues.insert(r as u64);
        } else if any {
            mixed.insert(r as u64);
        }
    }
    Ok(ResidueReport {
        modulus,
        residues,
        mixed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn divisors_are_sorted() {
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(divisors(1), vec![1]);
        assert_eq!(divisors(16), vec![1, 2, 4, 8, 16]);
    }

    #[test]
    fn loopless_alpha_is_degree_gcd() {
        assert_eq!(compute_alpha(&LoopedGraph::complete(3)).unwrap(), 2);
        assert_eq!(compute_alpha(&LoopedGraph::path(4)).unwrap(), 1);
        assert_eq!(compute_alpha(&LoopedGraph::complete(4)).unwrap(), 3);
    }

    #[test]
    fn edgeless_graph_rejected() {
        let g = LoopedGraph::simple(3, []).unwrap();
        assert_eq!(compute_alpha(&g), Err(Error::NoEdges));
        assert_eq!(compute_mu(&g, 4, 1), Err(Error::NoEdges));
        assert!(is_admissible(&g, 4, 1).is_err());
    }

    #[test]
    fn loopless_mu_is_empty() {
        assert_eq!(
            compute_mu(&LoopedGraph::complete(3), 7, 1).unwrap(),
            Vec::<u64>::new()
        );
    }

    #[test]
    fn non_integral_mu_reports_reduced_fraction() {
        // K2 with one loop: mu = lambda * (v - 1) / 2
        let g = LoopedGraph::new(2, 1, [(0, 1)], [(0, 0, 1)]).unwrap();
        assert_eq!(compute_mu(&g, 3, 1).unwrap(), vec![1]);
        assert_eq!(
            compute_mu(&g, 4, 1),
            Err(Error::NonIntegralMu {
                color: 0,
                numerator: 3,
                denominator: 2
            })
        );
    }

    #[test]
    fn trivial_orders_are_admissible() {
        let g = LoopedGraph::complete(3).with_loops(1, [(0, 0, 1)]).unwrap();
        for v in [0, 1] {
            let report = is_admissible(&g, v, 1).unwrap();
            assert!(report.admissible);
            assert_eq!(report.mu, Some(vec![0]));
        }
    }

    #[test]
    fn steiner_triple_residues() {
        let report = admissible_residues(&LoopedGraph::complete(3), 1, 6).unwrap();
        assert_eq!(report.residues, BTreeSet::from([1, 3]));
        assert!(report.mixed.is_empty());
    }

    #[test]
    fn full_lambda_admits_everything() {
        let g = LoopedGraph::path(4);
        let report = admissible_residues(&g, 6, 1).unwrap();
        assert_eq!(report.residues, BTreeSet::from([0]));
    }

    #[test]
    fn coarse_modulus_reports_mixed_classes() {
        // K3 needs v = 1, 3 mod 6; modulus 2 splits those classes
        let report = admissible_residues(&LoopedGraph::complete(3), 1, 2).unwrap();
        assert!(report.residues.is_empty());
        assert_eq!(report.mixed, BTreeSet::from([1]));
    }
}
