//! Splitting a measure-preserving flow along its orbits.
//!
//! When the flow preserves the point weights, restricting the kernel to
//! each orbit yields stationary processes whose independent sum has the
//! original law — the discrete ergodic decomposition.

use stable_decomp::decompose::verify_decomposition;
use stable_decomp::stationary::{
    build_flow_rep, ergodic_decomposition, FlowAction, Permutation, StationaryProcessSpec,
};
use stable_decomp::{Alpha, FinitePointSpace, SpectralRep, DEFAULT_TOL};

fn main() {
    // two independent 2-cycles; the weights are constant on each orbit, so
    // the flow preserves the measure
    let space = FinitePointSpace::new(
        vec!["p0".into(), "p1".into(), "p2".into(), "p3".into()],
        vec![1.0, 1.0, 0.5, 0.5],
    )
    .unwrap();
    let swap = Permutation::new(vec![1, 0, 3, 2]).unwrap();
    let flow = FlowAction::new(space, vec![2], vec![swap], vec![vec![1, 1, 1, 1]]).unwrap();
    let spec =
        StationaryProcessSpec::new(Alpha::new(1.5).unwrap(), flow, vec![1.0, -0.5, 0.8, 0.2])
            .unwrap();

    let pieces = ergodic_decomposition(&spec).unwrap();
    println!("ergodic decomposition into {} orbit pieces:", pieces.len());
    for (k, piece) in pieces.iter().enumerate() {
        println!("  piece {k} lives on {:?}", piece.flow().space().points());
    }

    // the pieces really decompose the process
    let rep = build_flow_rep(&spec).unwrap();
    let comps: Vec<SpectralRep> = pieces
        .iter()
        .map(|piece| build_flow_rep(piece).unwrap())
        .collect();
    println!(
        "independent sum of the pieces has the original law: {}",
        verify_decomposition(&rep, &comps, DEFAULT_TOL).unwrap()
    );
}
