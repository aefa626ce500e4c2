//! Moving averages on a cyclic group and the mixing dichotomy.
//!
//! One kernel sheet gives an indecomposable stationary process; mixing
//! several non-proportional sheets produces an honest decomposition, and
//! the verdict names an invariant witness set.

use stable_decomp::stationary::{is_indecomposable, mma_build, IndecomposabilityVerdict};
use stable_decomp::{Alpha, DEFAULT_TOL};

fn main() {
    let alpha = Alpha::new(1.2).unwrap();

    let single = mma_build(
        &[6],
        &[vec![1.0, 0.5, -0.25, 0.0, 0.3, -0.6]],
        &[1.0],
        alpha,
    )
    .unwrap();
    println!(
        "one sheet on Z/6: {:?}",
        is_indecomposable(&single, DEFAULT_TOL).unwrap()
    );

    let mixed = mma_build(
        &[4],
        &[vec![1.0, 0.5, 0.0, -0.5], vec![0.2, -0.3, 0.9, 0.1]],
        &[1.0, 0.7],
        alpha,
    )
    .unwrap();
    match is_indecomposable(&mixed, DEFAULT_TOL).unwrap() {
        IndecomposabilityVerdict::Indecomposable => println!("two sheets: indecomposable?!"),
        IndecomposabilityVerdict::Decomposable { witness } => {
            println!("two sheets on Z/4: decomposable, invariant witness {witness:?}")
        }
    }
}
