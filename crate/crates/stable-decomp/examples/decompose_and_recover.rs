//! Cutting a process into independent components and getting the weights
//! back from the laws alone.
//!
//! A nonnegative weight family with sum_k r_k(s)^alpha = 1 at every point
//! splits X into independent components; conversely, any component's weights
//! are recoverable by comparing canonical atom masses.

use stable_decomp::decompose::{
    make_components, recover_weights, verify_decomposition, WeightFamily,
};
use stable_decomp::{Alpha, FinitePointSpace, SpectralRep, DEFAULT_TOL};

fn main() {
    let alpha = Alpha::new(1.2).unwrap();
    let rep = SpectralRep::new(
        alpha,
        FinitePointSpace::new(
            vec!["s0".into(), "s1".into(), "s2".into(), "s3".into()],
            vec![1.0, 0.7, 1.3, 0.4],
        )
        .unwrap(),
        vec!["t0".into(), "t1".into(), "t2".into()],
        vec![
            vec![1.0, 0.2, -0.5, 1.1],
            vec![0.0, 1.4, 0.8, -0.3],
            vec![0.6, -0.7, 0.1, 0.9],
        ],
    )
    .unwrap();

    // a two-component family: r0^alpha + r1^alpha = 1 pointwise
    let r0 = [0.9f64, 0.3, 0.5, 1.0];
    let a = alpha.get();
    let rows: Vec<Vec<f64>> = vec![
        r0.to_vec(),
        r0.iter().map(|x| (1.0 - x.powf(a)).powf(1.0 / a)).collect(),
    ];
    let family = WeightFamily::new(rows).unwrap();
    let comps = make_components(&rep, &family).unwrap();
    println!("split X into {} components", comps.len());
    for (k, c) in comps.iter().enumerate() {
        println!(
            "  component {k}: {} points, {} times",
            c.n_points(),
            c.n_times()
        );
    }

    println!(
        "components sum back to X: {}",
        verify_decomposition(&rep, &comps, DEFAULT_TOL).unwrap()
    );

    // recovery sees only the two laws, not the construction
    for (k, c) in comps.iter().enumerate() {
        let w = recover_weights(&rep, c, DEFAULT_TOL).unwrap();
        println!(
            "  recovered weights of component {k}: {:?}",
            w.iter()
                .map(|x| (x * 1e6).round() / 1e6)
                .collect::<Vec<_>>()
        );
    }

    // a stranger process is rejected
    let foreign = SpectralRep::new(
        alpha,
        FinitePointSpace::new(vec!["z".into()], vec![1.0]).unwrap(),
        rep.times().to_vec(),
        vec![vec![1.0], vec![1.0], vec![-1.0]],
    )
    .unwrap();
    println!(
        "foreign candidate rejected: {:?}",
        recover_weights(&rep, &foreign, DEFAULT_TOL)
            .err()
            .map(|e| e.to_string())
    );
}
