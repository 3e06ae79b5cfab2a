//! Small named graphs and certificates used by tests, benches and the CLI.
//!
//! Loop colors follow one convention throughout: color 0 is red, color 1 is blue.

use crate::arith::HostSpec;
use crate::error::Result;
use crate::graph::LoopedGraph;
use crate::signed::SignedBlock;
use crate::verify::Decomposition;

/// Vertex 0 is the center; wings 1, 2 and 3, 4 form the two triangles.
pub const BOWTIE_EDGES: [(usize, usize); 6] = [(0, 1), (0, 2), (1, 2), (0, 3), (0, 4), (3, 4)];

pub fn bowtie() -> LoopedGraph {
    LoopedGraph::simple(5, BOWTIE_EDGES).expect("bowtie is simple")
}

/// Bowtie with degree-loop vectors `(4,1,1), (2,1,0), (2,1,1), (2,1,1), (2,0,1)`; alpha = 6.
pub fn bowtie_left() -> LoopedGraph {
    let loops = [
        (0, 0, 1),
        (0, 1, 1),
        (1, 0, 1),
        (2, 0, 1),
        (2, 1, 1),
        (3, 0, 1),
        (3, 1, 1),
        (4, 1, 1),
    ];
    LoopedGraph::new(5, 2, BOWTIE_EDGES, loops).expect("valid fixture")
}

/// Bowtie with degree-loop vectors `(4,1,0), (2,1,1), (2,1,1), (2,1,1), (2,0,1)`; alpha = 12.
pub fn bowtie_right() -> LoopedGraph {
    let loops = [
        (0, 0, 1),
        (1, 0, 1),
        (1, 1, 1),
        (2, 0, 1),
        (2, 1, 1),
        (3, 0, 1),
        (3, 1, 1),
        (4, 1, 1),
    ];
    LoopedGraph::new(5, 2, BOWTIE_EDGES, loops).expect("valid fixture")
}

/// `P_4` with a blue loop at an end and a red and a blue loop at an inner vertex.
pub fn path4_two_colors() -> LoopedGraph {
    LoopedGraph::path(4)
        .with_loops(2, [(0, 1, 1), (2, 0, 1), (2, 1, 1)])
        .expect("valid fixture")
}

/// `P_4` with a red loop at an end and a blue loop at an inner vertex.
pub fn path4_end_and_middle() -> LoopedGraph {
    LoopedGraph::path(4)
        .with_loops(2, [(0, 0, 1), (2, 1, 1)])
        .expect("valid fixture")
}

/// `P_4` with a red loop at one end and a blue loop at the other.
pub fn path4_oriented() -> LoopedGraph {
    LoopedGraph::path(4)
        .with_loops(2, [(0, 0, 1), (3, 1, 1)])
        .expect("valid fixture")
}

/// Base block of `P_4` in `GF(7)`.
pub const PATH4_BASE_BLOCK: [u32; 4] = [0, 4, 6, 5];

/// `K_2` with a red loop at vertex 0 and a blue loop at vertex 1.
pub fn oriented_edge() -> LoopedGraph {
    LoopedGraph::new(2, 2, [(0, 1)], [(0, 0, 1), (1, 1, 1)]).expect("valid fixture")
}

/// The three arcs of a directed triangle as an `oriented_edge` design of `K_3`.
pub fn oriented_triangle() -> Decomposition {
    let g = oriented_edge();
    let host = HostSpec::for_graph(&g, 3, 1).expect("integral loop counts");
    let blocks = [[0, 1], [1, 2], [2, 0]]
        .iter()
        .map(|m| SignedBlock::positive(m.to_vec()))
        .collect();
    Decomposition::new(g, host, blocks)
}

/// `C_5` whose vertices carry (red, blue) loops `(0,2), (0,1), (2,1), (3,0), (0,1)`.
pub fn signed_pentagon() -> LoopedGraph {
    let loops = [
        (0, 1, 2),
        (1, 1, 1),
        (2, 0, 2),
        (2, 1, 1),
        (3, 0, 3),
        (4, 1, 1),
    ];
    LoopedGraph::cycle(5)
        .and_then(|c| c.with_loops(2, loops))
        .expect("valid fixture")
}

/// Six copies of `signed_pentagon`, four added and two subtracted, that
/// together give `K_5^[(2,2);1]`.
pub fn signed_pentagon_certificate() -> Result<Decomposition> {
    let g = signed_pentagon();
    let host = HostSpec::for_graph(&g, 5, 1)?;
    let placed: [([usize; 5], i64); 6] = [
        ([0, 1, 2, 3, 4], 1),
        ([0, 3, 1, 4, 2], 1),
        ([2, 3, 4, 0, 1], 1),
        ([4, 1, 3, 0, 2], 1),
        ([2, 1, 0, 4, 3], -1),
        ([4, 2, 0, 3, 1], -1),
    ];
    let blocks = placed
        .iter()
        .map(|(map, sign)| SignedBlock {
            embedding: crate::signed::Embedding(map.to_vec()),
            coefficient: *sign,
        })
        .collect();
    Ok(Decomposition::new(g, host, blocks))
}
