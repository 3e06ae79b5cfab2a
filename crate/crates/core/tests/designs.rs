mod common;

use std::collections::BTreeMap;

use loopdec_core::cyclotomic::DEFAULT_TIMEOUT;
use loopdec_core::fixtures;
use loopdec_core::{
    attach_degree_loops, build_equitable_union, compose, construct_cyclotomic, extract_coloring,
    order_blocks, solve_nonnegative, verify_balanced, verify_block_ordering, verify_decomposition,
    verify_degree_balanced, verify_equitable_coloring, verify_pbd, Decomposition, Error, HostSpec,
    LoopedGraph, NonnegativeOptions, Pbd, SignedBlock,
};

#[test]
fn equitable_union_design_yields_exactly_equal_coloring() {
    let union = build_equitable_union(&LoopedGraph::complete(3), 2).unwrap();
    let design = [13, 37, 61]
        .iter()
        .find_map(|&q| construct_cyclotomic(&union, q, 1, 0, DEFAULT_TIMEOUT).ok())
        .expect("a base block for two disjoint triangles");
    let colored = extract_coloring(&design.decomposition).unwrap();
    let d = &colored.decomposition;
    assert!(verify_decomposition(d).unwrap().pass);
    let report = verify_equitable_coloring(d, &colored.coloring, 2, 2).unwrap();
    assert!(report.pass);
    for row in &report.counts {
        assert_eq!(row[0], row[1]);
    }
}

#[test]
fn malformed_union_is_rejected() {
    let union = build_equitable_union(&LoopedGraph::complete(3), 2).unwrap();
    let mut d = construct_cyclotomic(&union, 13, 1, 0, DEFAULT_TIMEOUT)
        .or_else(|_| construct_cyclotomic(&union, 37, 1, 0, DEFAULT_TIMEOUT))
        .unwrap()
        .decomposition;
    d.graph = union.with_loops(2, [(0, 0, 1)]).unwrap();
    assert!(matches!(
        extract_coloring(&d),
        Err(Error::NotAUnionBlockGraph(_))
    ));
}

fn p4_designs_of_k7(count: u64) -> Vec<Decomposition> {
    let p4 = LoopedGraph::path(4);
    (0..count)
        .map(|seed| {
            let options = NonnegativeOptions {
                seed: Some(seed),
                ..Default::default()
            };
            let blocks = solve_nonnegative(&p4, 7, 1, &options).unwrap();
            Decomposition::new(p4.clone(), HostSpec::for_graph(&p4, 7, 1).unwrap(), blocks)
        })
        .collect()
}

#[test]
fn exact_search_finds_a_design_that_is_not_degree_balanced() {
    let designs = p4_designs_of_k7(20);
    assert!(designs.iter().all(|d| common::tally(d).pass));
    assert!(designs
        .iter()
        .any(|d| !verify_degree_balanced(d).unwrap().balanced));

    let looped = attach_degree_loops(&LoopedGraph::path(4)).graph;
    let cyclic = construct_cyclotomic(&looped, 7, 1, 0, DEFAULT_TIMEOUT).unwrap();
    assert!(
        verify_degree_balanced(&cyclic.decomposition)
            .unwrap()
            .balanced
    );
}

#[test]
fn some_path_design_admits_no_end_to_end_ordering() {
    let designs = p4_designs_of_k7(20);
    let failing = designs.iter().find(|d| order_blocks(d, 0, 3).is_err());
    let d = failing.expect("a P4 design of K_7 without an (s, t) ordering");
    assert!(matches!(
        order_blocks(d, 0, 3),
        Err(Error::ImbalancedArcs { .. } | Error::DisconnectedArcDigraph { .. })
    ));
}

#[test]
fn orderings_of_cyclic_oriented_path_designs() {
    let p4 = fixtures::path4_oriented();
    for q in [7, 13, 19, 31, 37] {
        let d = construct_cyclotomic(&p4, q, 1, 0, DEFAULT_TIMEOUT)
            .unwrap()
            .decomposition;
        let order = order_blocks(&d, 0, 3).unwrap();
        assert_eq!(order.len() as u64, q * (q - 1) / 6);
        assert!(verify_block_ordering(&d, &order, 0, 3).unwrap());
    }
}

#[test]
fn prime_power_fields() {
    let k3 = LoopedGraph::complete(3);
    for q in [25, 49] {
        let d = construct_cyclotomic(&k3, q, 1, 3, DEFAULT_TIMEOUT)
            .unwrap()
            .decomposition;
        assert_eq!(d.blocks.len() as u64, q * (q - 1) / 6);
        assert!(common::tally(&d).pass);
        assert!(verify_balanced(&d).unwrap().balanced);
    }
}

#[test]
fn multiplicity_two_doubles_the_family() {
    let d = construct_cyclotomic(&fixtures::path4_two_colors(), 7, 2, 0, DEFAULT_TIMEOUT)
        .unwrap()
        .decomposition;
    assert_eq!(d.blocks.len(), 14);
    assert_eq!(d.host.mu, vec![2, 4]);
    assert!(common::tally(&d).pass);
}

#[test]
fn affine_plane_compositions() {
    let plane = Pbd::affine_plane_order_3().unwrap();
    assert!(verify_pbd(&plane).pass);

    let k3 = LoopedGraph::complete(3);
    let triangle = Decomposition::new(
        k3.clone(),
        HostSpec::for_graph(&k3, 3, 1).unwrap(),
        vec![SignedBlock::positive(vec![0, 1, 2])],
    );
    let sts9 = compose(&plane, &BTreeMap::from([(3, triangle)])).unwrap();
    assert_eq!(sts9.blocks.len(), 12);
    assert!(common::tally(&sts9).pass);

    let oriented = compose(
        &plane,
        &BTreeMap::from([(3, fixtures::oriented_triangle())]),
    )
    .unwrap();
    assert_eq!(oriented.host.mu, vec![4, 4]);
    assert!(common::tally(&oriented).pass);
    let order = order_blocks(&oriented, 0, 1).unwrap();
    assert!(verify_block_ordering(&oriented, &order, 0, 1).unwrap());
}

#[test]
fn composition_rejects_unverified_parts() {
    let mut broken = fixtures::oriented_triangle();
    broken.blocks.pop();
    assert!(matches!(
        compose(&Pbd::fano().unwrap(), &BTreeMap::from([(3, broken)])),
        Err(Error::PartNotVerified { size: 3, .. })
    ));
}

#[test]
fn loops_on_a_path_spread_evenly() {
    let d = construct_cyclotomic(&fixtures::path4_end_and_middle(), 7, 1, 0, DEFAULT_TIMEOUT)
        .unwrap()
        .decomposition;
    assert_eq!(d.host.mu, vec![1, 1]);
    assert!(common::tally(&d).pass);
}
