//! Stationary processes from finite torus flows.
//!
//! A flow is a commuting family of permutations indexed by a finite torus,
//! together with a +-1 cocycle.  Pushing a single kernel through the flow
//! (with Radon-Nikodym corrections for a non-invariant measure) yields a
//! process indexed by the torus whose law is shift-invariant.

use stable_decomp::decompose::WeightFamily;
use stable_decomp::stationary::{
    build_flow_rep, is_stationary, recover_stationary_weights, stationary_components, FlowAction,
    Permutation, StationaryProcessSpec,
};
use stable_decomp::{Alpha, FinitePointSpace, DEFAULT_TOL};

fn main() {
    // four points on a cycle, non-uniform weights, alternating cocycle
    let space = FinitePointSpace::new(
        vec!["p0".into(), "p1".into(), "p2".into(), "p3".into()],
        vec![1.0, 0.5, 2.0, 0.8],
    )
    .unwrap();
    let shift = Permutation::new(vec![1, 2, 3, 0]).unwrap();
    let cocycle = vec![vec![1i8, -1, 1, -1]];
    let flow = FlowAction::new(space, vec![4], vec![shift], cocycle).unwrap();

    let alpha = Alpha::new(1.5).unwrap();
    let spec = StationaryProcessSpec::new(alpha, flow, vec![1.0, 0.4, -0.7, 0.9]).unwrap();
    let rep = build_flow_rep(&spec).unwrap();
    println!("flow representation over times {:?}", rep.times());
    println!(
        "stationary under the length-4 shift: {}",
        is_stationary(&rep, &[4], DEFAULT_TOL).unwrap()
    );

    // invariant components carry orbit-constant weights; the single orbit
    // here forces globally constant rows, e.g. an even split
    let family = WeightFamily::uniform(2, 4, alpha).unwrap();
    let comps = stationary_components(&spec, &family).unwrap();
    for (k, comp) in comps.iter().enumerate() {
        let w = recover_stationary_weights(&spec, comp, DEFAULT_TOL).unwrap();
        println!(
            "component {k}: stationary, recovered weight {:.6} on the whole orbit",
            w[0]
        );
    }
}
