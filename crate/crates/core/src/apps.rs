//! Loop recipes that turn local balance properties into loop balance, plus
//! the two post-processing steps that read a property back off a design:
//! coloring extraction for equitable unions and cyclic block ordering.

use serde::{Deserialize, Serialize};

use crate::arith::HostSpec;
use crate::error::{Error, Result};
use crate::graph::LoopedGraph;
use crate::signed::SignedBlock;
use crate::verify::{verify_decomposition, Decomposition};

/// One loop color introduced by an attachment recipe.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LoopClass {
    pub color: usize,
    /// The degree (degree recipe) or orbit index (orbit recipe) this color stands for.
    pub key: usize,
    pub members: Vec<usize>,
}

/// A graph with recipe loops and the meaning of each color.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AttachedLoops {
    pub graph: LoopedGraph,
    pub classes: Vec<LoopClass>,
}

fn attach_by_classes(graph: &LoopedGraph, classes: Vec<(usize, Vec<usize>)>) -> AttachedLoops {
    let loops = classes
        .iter()
        .enumerate()
        .flat_map(|(color, (_, members))| members.iter().map(move |&u| (u, color, 1)));
    let looped = graph
        .without_loops()
        .with_loops(classes.len(), loops)
        .expect("classes partition the vertex set");
    AttachedLoops {
        graph: looped,
        classes: classes
            .into_iter()
            .enumerate()
            .map(|(color, (key, members))| LoopClass {
                color,
                key,
                members,
            })
            .collect(),
    }
}

/// One loop per vertex, colored by degree; colors follow ascending degree.
///
/// Any loops already on `graph` are discarded.
pub fn attach_degree_loops(graph: &LoopedGraph) -> AttachedLoops {
    attach_by_classes(graph, graph.degree_classes().into_iter().collect())
}

/// One loop per vertex, colored by automorphism orbit of the loopless graph.
///
/// Orbits are ordered by least member. Any loops already on `graph` are discarded.
pub fn attach_orbit_loops(graph: &LoopedGraph) -> Result<AttachedLoops> {
    let orbits = graph.automorphism_orbits(true)?;
    Ok(attach_by_classes(
        graph,
        orbits.into_iter().enumerate().collect(),
    ))
}

/// `K_k` whose vertex `i` carries a single loop of color `i`.
pub fn seats_clique(k: usize) -> Result<LoopedGraph> {
    if k < 2 {
        return Err(Error::InvalidParameter(format!(
            "seat clique needs k >= 2, got {k}"
        )));
    }
    LoopedGraph::complete(k).with_loops(k, (0..k).map(|i| (i, i, 1)))
}

/// Disjoint union of copies of the loopless graph, copy `j` colored `colors[j]`.
fn colored_union(graph: &LoopedGraph, colors: &[usize], c: usize) -> Result<LoopedGraph> {
    let n = graph.vertex_count();
    let edges = colors.iter().enumerate().flat_map(|(j, _)| {
        graph
            .edges()
            .iter()
            .map(move |&(a, b)| (a + j * n, b + j * n))
    });
    let loops = colors
        .iter()
        .enumerate()
        .flat_map(|(j, &color)| (0..n).map(move |u| (u + j * n, color, 1)));
    LoopedGraph::new(n * colors.len(), c, edges, loops)
}

/// `s` disjoint copies of `graph`; copy `i` occupies vertices `i*n .. (i+1)*n`
/// and has one loop of color `i` at each vertex.
///
/// Any loops already on `graph` are discarded.
pub fn build_equitable_union(graph: &LoopedGraph, s: usize) -> Result<LoopedGraph> {
    if s == 0 {
        return Err(Error::InvalidParameter("s must be at least 1".into()));
    }
    let colors: Vec<usize> = (0..s).collect();
    colored_union(&graph.without_loops(), &colors, s)
}

/// One union per `p`-subset of the `s` colors, for `(s, p)`-equitable
/// colorings with `p < s`. Each carries all `s` colors, so they share a host.
pub fn equitable_union_family(
    graph: &LoopedGraph,
    s: usize,
    p: usize,
) -> Result<Vec<(Vec<usize>, LoopedGraph)>> {
    if p == 0 || p > s {
        return Err(Error::InvalidParameter(format!(
            "need 1 <= p <= s, got s = {s}, p = {p}"
        )));
    }
    let base = graph.without_loops();
    let mut out = Vec::new();
    let mut subset: Vec<usize> = (0..p).collect();
    loop {
        out.push((subset.clone(), colored_union(&base, &subset, s)?));
        // next p-subset in lexicographic order
        let Some(i) = (0..p).rev().find(|&i| subset[i] < s - p + i) else {
            break;
        };
        subset[i] += 1;
        for j in i + 1..p {
            subset[j] = subset[j - 1] + 1;
        }
    }
    Ok(out)
}

/// A loopless design together with a block coloring in `1..=s`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColoredDesign {
    pub decomposition: Decomposition,
    pub coloring: Vec<usize>,
}

/// Splits each block of a design by an equitable union into its `s` copies.
///
/// The copy that carried loops of color `i` becomes a block colored `i + 1`.
pub fn extract_coloring(d: &Decomposition) -> Result<ColoredDesign> {
    let union = &d.graph;
    let s = union.color_count();
    let not_union = |why: String| Error::NotAUnionBlockGraph(why);
    if s == 0 || union.vertex_count() % s != 0 {
        return Err(not_union(format!(
            "{} vertices cannot split into {s} copies",
            union.vertex_count()
        )));
    }
    let n = union.vertex_count() / s;
    let base = LoopedGraph::simple(n, union.edges().iter().filter(|&&(_, b)| b < n).copied())?;
    if build_equitable_union(&base, s)? != *union {
        return Err(not_union(
            "block graph is not a union of identical copies, copy i looped in color i".into(),
        ));
    }
    let report = verify_decomposition(d)?;
    if !report.pass {
        return Err(Error::VerificationFailed(
            "input is not a decomposition of its host".into(),
        ));
    }
    if let Some((index, b)) = d
        .blocks
        .iter()
        .enumerate()
        .find(|(_, b)| b.coefficient != 1)
    {
        return Err(Error::SignedInput {
            index,
            coefficient: b.coefficient,
        });
    }

    let mut blocks = Vec::with_capacity(d.blocks.len() * s);
    let mut coloring = Vec::with_capacity(d.blocks.len() * s);
    for block in &d.blocks {
        for (i, part) in block.embedding.as_slice().chunks(n).enumerate() {
            blocks.push(SignedBlock::positive(part.to_vec()));
            coloring.push(i + 1);
        }
    }
    let host = HostSpec {
        v: d.host.v,
        lambda: d.host.lambda,
        mu: Vec::new(),
    };
    Ok(ColoredDesign {
        decomposition: Decomposition::new(base, host, blocks),
        coloring,
    })
}

/// An Eulerian circuit of a directed multigraph, as arc indices in traversal order.
///
/// Fails with `ImbalancedArcs` when some vertex has in-degree different from
/// out-degree, and with `DisconnectedArcDigraph` when the arcs do not form a
/// single circuit.
pub fn eulerian_circuit(vertex_count: usize, arcs: &[(usize, usize)]) -> Result<Vec<usize>> {
    let mut out_arcs = vec![Vec::new(); vertex_count];
    let mut balance = vec![0i64; vertex_count];
    for (k, &(a, b)) in arcs.iter().enumerate() {
        if a >= vertex_count || b >= vertex_count {
            return Err(Error::InvalidParameter(format!(
                "arc ({a},{b}) out of range for {vertex_count} vertices"
            )));
        }
        out_arcs[a].push(k);
        balance[a] += 1;
        balance[b] -= 1;
    }
    if let Some(vertex) = balance.iter().position(|&x| x != 0) {
        let outdegree = out_arcs[vertex].len();
        let indegree = arcs.iter().filter(|&&(_, b)| b == vertex).count();
        return Err(Error::ImbalancedArcs {
            vertex,
            indegree,
            outdegree,
        });
    }
    if arcs.is_empty() {
        return Ok(Vec::new());
    }

    // Hierholzer: walk until stuck, emitting arcs on backtrack
    let mut next = vec![0usize; vertex_count];
    let mut stack: Vec<(usize, Option<usize>)> = vec![(arcs[0].0, None)];
    let mut circuit = Vec::with_capacity(arcs.len());
    while let Some(&(x, via)) = stack.last() {
        if next[x] < out_arcs[x].len() {
            let k = out_arcs[x][next[x]];
            next[x] += 1;
            stack.push((arcs[k].1, Some(k)));
        } else {
            stack.pop();
            if let Some(k) = via {
                circuit.push(k);
            }
        }
    }
    circuit.reverse();
    if circuit.len() != arcs.len() {
        return Err(Error::DisconnectedArcDigraph {
            covered: circuit.len(),
            total: arcs.len(),
        });
    }
    Ok(circuit)
}

/// A cyclic order of the blocks in which each block's image of `t` is the
/// next block's image of `s`.
///
/// Loop balance of a red loop at `s` and a blue loop at `t` is what makes
/// the arc digraph `f(s) -> f(t)` balanced; other inputs are accepted and
/// fail with `ImbalancedArcs` when they are not.
pub fn order_blocks(d: &Decomposition, s: usize, t: usize) -> Result<Vec<usize>> {
    let n = d.graph.vertex_count();
    if s >= n || t >= n || s == t {
        return Err(Error::InvalidParameter(format!(
            "need distinct block vertices below {n}, got s = {s}, t = {t}"
        )));
    }
    let report = verify_decomposition(d)?;
    if !report.pass {
        return Err(Error::VerificationFailed(
            "input is not a decomposition of its host".into(),
        ));
    }
    if let Some((index, b)) = d
        .blocks
        .iter()
        .enumerate()
        .find(|(_, b)| b.coefficient != 1)
    {
        return Err(Error::SignedInput {
            index,
            coefficient: b.coefficient,
        });
    }
    let arcs: Vec<(usize, usize)> = d
        .blocks
        .iter()
        .map(|b| (b.embedding.image(s), b.embedding.image(t)))
        .collect();
    eulerian_circuit(d.host.v, &arcs)
}
