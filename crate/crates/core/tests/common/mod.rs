//! Oracles written independently of the library's algorithms.

#![allow(dead_code)]

use std::collections::BTreeSet;

use loopdec_core::{Decomposition, LoopedGraph};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

fn det(m: &[Vec<i128>]) -> i128 {
    match m.len() {
        0 => 1,
        1 => m[0][0],
        n => (0..n)
            .map(|j| {
                let minor: Vec<Vec<i128>> = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|&(k, _)| k != j)
                            .map(|(_, &x)| x)
                            .collect()
                    })
                    .collect();
                let sign = if j % 2 == 0 { 1 } else { -1 };
                sign * m[0][j] * det(&minor)
            })
            .sum(),
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// gcd of all `k x k` minors of a matrix given by columns.
fn determinantal_divisor(columns: &[Vec<i128>], k: usize) -> i128 {
    let rows = columns[0].len();
    let mut g = 0;
    for rs in subsets(rows, k) {
        for cs in subsets(columns.len(), k) {
            let m: Vec<Vec<i128>> = rs
                .iter()
                .map(|&r| cs.iter().map(|&c| columns[c][r]).collect())
                .collect();
            g = gcd(g, det(&m));
        }
    }
    g
}

fn rank(columns: &[Vec<i128>]) -> usize {
    let rows = columns[0].len();
    (1..=rows.min(columns.len()))
        .rev()
        .find(|&k| determinantal_divisor(columns, k) != 0)
        .unwrap_or(0)
}

/// Least `alpha` with `alpha * (1, l / 2m)` in the degree-loop lattice, from
/// the index of the lattice in its extension by `(1, l / 2m)`:
/// `alpha = (2m)^r d_r(A) / d_r([2m A | (2m, l)])`.
pub fn alpha_by_minors(g: &LoopedGraph) -> u64 {
    let two_m = 2 * g.edge_count() as i128;
    let columns: Vec<Vec<i128>> = (0..g.vertex_count())
        .map(|u| {
            std::iter::once(g.degree(u) as i128)
                .chain(g.loops_at(u).iter().map(|&x| x as i128))
                .collect()
        })
        .collect();
    let r = rank(&columns);
    let mut extended: Vec<Vec<i128>> = columns
        .iter()
        .map(|c| c.iter().map(|x| x * two_m).collect())
        .collect();
    let mut t = vec![two_m];
    for i in 0..g.color_count() {
        t.push(
            (0..g.vertex_count())
                .map(|u| g.loops_at(u)[i] as i128)
                .sum(),
        );
    }
    extended.push(t);
    let num = two_m.pow(r as u32) * determinantal_divisor(&columns, r);
    let den = determinantal_divisor(&extended, r);
    assert_eq!(num % den, 0, "index must be an integer");
    (num / den) as u64
}

/// Every positive first coordinate `a` of a lattice point `a * (1, l/2m)`
/// reachable with coefficients in `[-bound, bound]`.
pub fn alpha_candidates_by_enumeration(g: &LoopedGraph, bound: i64) -> BTreeSet<u64> {
    let n = g.vertex_count();
    let two_m = 2 * g.edge_count() as i64;
    let totals: Vec<i64> = (0..g.color_count())
        .map(|i| (0..n).map(|u| g.loops_at(u)[i] as i64).sum())
        .collect();
    let mut found = BTreeSet::new();
    let mut coeffs = vec![-bound; n];
    loop {
        let a: i64 = (0..n).map(|u| coeffs[u] * g.degree(u) as i64).sum();
        if a > 0 {
            let on_ray = (0..g.color_count()).all(|i| {
                let b: i64 = (0..n).map(|u| coeffs[u] * g.loops_at(u)[i] as i64).sum();
                b * two_m == a * totals[i]
            });
            if on_ray {
                found.insert(a as u64);
            }
        }
        let Some(pos) = (0..n).find(|&u| coeffs[u] < bound) else {
            break;
        };
        coeffs[pos] += 1;
        for c in &mut coeffs[..pos] {
            *c = -bound;
        }
    }
    found
}

/// Outcome of a from-scratch tally: pass flag and the sets of wrong counts.
#[derive(Debug, PartialEq, Eq)]
pub struct Tally {
    pub pass: bool,
    pub edge_defects: BTreeSet<((usize, usize), i64, i64)>,
    pub loop_defects: BTreeSet<(usize, usize, i64, i64)>,
}

pub fn tally(d: &Decomposition) -> Tally {
    let v = d.host.v;
    let c = d.graph.color_count();
    let mut edge = vec![vec![0i64; v]; v];
    let mut loops = vec![vec![0i64; c]; v];
    for b in &d.blocks {
        let f = b.embedding.as_slice();
        for &(x, y) in d.graph.edges() {
            let (p, q) = (f[x].min(f[y]), f[x].max(f[y]));
            edge[p][q] += b.coefficient;
        }
        for u in 0..d.graph.vertex_count() {
            for i in 0..c {
                loops[f[u]][i] += b.coefficient * d.graph.loops_at(u)[i] as i64;
            }
        }
    }
    let mut edge_defects = BTreeSet::new();
    for p in 0..v {
        for q in p + 1..v {
            if edge[p][q] != d.host.lambda as i64 {
                edge_defects.insert(((p, q), edge[p][q], d.host.lambda as i64));
            }
        }
    }
    let mut loop_defects = BTreeSet::new();
    for x in 0..v {
        for i in 0..c {
            if loops[x][i] != d.host.mu[i] as i64 {
                loop_defects.insert((x, i, loops[x][i], d.host.mu[i] as i64));
            }
        }
    }
    Tally {
        pass: edge_defects.is_empty() && loop_defects.is_empty(),
        edge_defects,
        loop_defects,
    }
}

/// A random graph on `2..=max_n` vertices with at least one edge.
pub fn random_graph(
    rng: &mut ChaCha8Rng,
    max_n: usize,
    max_c: usize,
    max_loop: u64,
) -> LoopedGraph {
    loop {
        let n = rng.gen_range(2..=max_n);
        let c = rng.gen_range(0..=max_c);
        let mut edges = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                if rng.gen_bool(0.5) {
                    edges.push((a, b));
                }
            }
        }
        if edges.is_empty() {
            continue;
        }
        let mut loops = Vec::new();
        for u in 0..n {
            for i in 0..c {
                let k = rng.gen_range(0..=max_loop);
                if k > 0 {
                    loops.push((u, i, k));
                }
            }
        }
        return LoopedGraph::new(n, c, edges, loops).unwrap();
    }
}
