//! Every example under `examples/` runs to completion.

mod boundedness {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/boundedness.rs"));
}

#[test]
fn boundedness_runs() {
    boundedness::run_example().expect("boundedness example should run");
}

mod colour_absorber {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/colour_absorber.rs"));
}

#[test]
fn colour_absorber_runs() {
    colour_absorber::run_example().expect("colour_absorber example should run");
}

mod command_line {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/command_line.rs"));
}

#[test]
fn command_line_runs() {
    command_line::run_example().expect("command_line example should run");
}

mod connector {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/connector.rs"));
}

#[test]
fn connector_runs() {
    connector::run_example().expect("connector example should run");
}

mod cycle_hypergraph {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/cycle_hypergraph.rs"));
}

#[test]
fn cycle_hypergraph_runs() {
    cycle_hypergraph::run_example().expect("cycle_hypergraph example should run");
}

mod disjoint_matchings {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/disjoint_matchings.rs"));
}

#[test]
fn disjoint_matchings_runs() {
    disjoint_matchings::run_example().expect("disjoint_matchings example should run");
}

mod edge_absorber {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/edge_absorber.rs"));
}

#[test]
fn edge_absorber_runs() {
    edge_absorber::run_example().expect("edge_absorber example should run");
}

mod exact_decompose {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/exact_decompose.rs"));
}

#[test]
fn exact_decompose_runs() {
    exact_decompose::run_example().expect("exact_decompose example should run");
}

mod factorizations {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/factorizations.rs"));
}

#[test]
fn factorizations_runs() {
    factorizations::run_example().expect("factorizations example should run");
}

mod greedy_embed {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/greedy_embed.rs"));
}

#[test]
fn greedy_embed_runs() {
    greedy_embed::run_example().expect("greedy_embed example should run");
}

mod isomorphic_decompose {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/isomorphic_decompose.rs"));
}

#[test]
fn isomorphic_decompose_runs() {
    isomorphic_decompose::run_example().expect("isomorphic_decompose example should run");
}

mod max_flow {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/max_flow.rs"));
}

#[test]
fn max_flow_runs() {
    max_flow::run_example().expect("max_flow example should run");
}

mod nibble {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/nibble.rs"));
}

#[test]
fn nibble_runs() {
    nibble::run_example().expect("nibble example should run");
}

mod params_ledger {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/params_ledger.rs"));
}

#[test]
fn params_ledger_runs() {
    params_ledger::run_example().expect("params_ledger example should run");
}

mod rainbow_matching {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/rainbow_matching.rs"));
}

#[test]
fn rainbow_matching_runs() {
    rainbow_matching::run_example().expect("rainbow_matching example should run");
}

mod rmbg {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/rmbg.rs"));
}

#[test]
fn rmbg_runs() {
    rmbg::run_example().expect("rmbg example should run");
}

mod strategy {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/strategy.rs"));
}

#[test]
fn strategy_runs() {
    strategy::run_example().expect("strategy example should run");
}

mod target_tree {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/target_tree.rs"));
}

#[test]
fn target_tree_runs() {
    target_tree::run_example().expect("target_tree example should run");
}
