//! Processes with independent increments and their components.
//!
//! An increment process is specified by time points and the accumulated
//! scale mass on (0, t].  Every component of such a process again has
//! independent increments.

use stable_decomp::decompose::{
    has_independent_increments, independent_increments_rep, make_components, WeightFamily,
};
use stable_decomp::Alpha;

fn main() {
    let alpha = Alpha::new(1.2).unwrap();
    let times = [0.5, 1.0, 2.0, 3.5];
    // cumulative mass function: flat on (1, 2], jumps elsewhere
    let m = [1.0, 1.5, 1.5, 2.75];
    let rep = independent_increments_rep(&times, &m, alpha).unwrap();
    println!(
        "increment representation over {} intervals:",
        rep.n_points()
    );
    for (s, label) in rep.space().points().iter().enumerate() {
        println!("  {label}  mass {:.3}", rep.space().weight(s));
    }
    println!(
        "has independent increments: {}",
        has_independent_increments(&rep)
    );

    let n = rep.n_points();
    let family = WeightFamily::uniform(3, n, alpha).unwrap();
    let comps = make_components(&rep, &family).unwrap();
    for (k, c) in comps.iter().enumerate() {
        println!(
            "component {k}: independent increments = {}",
            has_independent_increments(c)
        );
    }
}
