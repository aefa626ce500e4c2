//! The max-stable side: Frechet processes, the association bridge, and
//! indices alpha >= 2.
//!
//! Replacing the independent sum with an independent maximum gives the
//! alpha-Frechet theory.  For alpha < 2 every sum-stable statement
//! transports through association on the same spectral data; for
//! alpha >= 2 a power transform reduces everything to index 1.

use stable_decomp::decompose::WeightFamily;
use stable_decomp::maxstable::{
    alpha_power_transform, associate, deassociate, frechet_fdd_cdf, make_max_components,
    max_same_process, recover_max_weights, verify_max_decomposition, MaxStableRep,
};
use stable_decomp::{Alpha, FinitePointSpace, DEFAULT_TOL};

fn main() {
    let rep = MaxStableRep::new(
        1.5,
        FinitePointSpace::new(vec!["a".into(), "b".into()], vec![1.0, 2.0]).unwrap(),
        vec!["t0".into(), "t1".into()],
        vec![vec![1.0, 0.5], vec![0.0, 1.5]],
    )
    .unwrap();

    let y = [1.0, 2.0];
    let p = frechet_fdd_cdf(&rep, rep.times(), &y).unwrap();
    println!("P(X_t0 <= 1, X_t1 <= 2) = {p:.6}");
    // max-stability: the n-fold maximum rescales back to the same law
    let scaled: Vec<f64> = y.iter().map(|v| v * 3.0f64.powf(1.0 / 1.5)).collect();
    let p3 = frechet_fdd_cdf(&rep, rep.times(), &scaled).unwrap().powi(3);
    println!("max-stability check: CDF(3^(1/a) y)^3 = {p3:.6}");

    // association: same spectral data, sum law <-> max law
    let sas = deassociate(&rep).unwrap();
    let back = associate(&sas).unwrap();
    println!(
        "deassociate/associate round trip keeps the law: {}",
        max_same_process(&rep, &back, DEFAULT_TOL).unwrap()
    );

    // decomposition works verbatim on the max side
    let family = WeightFamily::uniform(2, 2, Alpha::new(1.5).unwrap()).unwrap();
    let comps = make_max_components(&rep, &family).unwrap();
    println!(
        "even max-split verifies: {}",
        verify_max_decomposition(&rep, &comps, DEFAULT_TOL).unwrap()
    );
    let w = recover_max_weights(&rep, &comps[0], DEFAULT_TOL).unwrap();
    println!(
        "recovered max-weights: {:?}",
        w.iter()
            .map(|x| (x * 1e6).round() / 1e6)
            .collect::<Vec<_>>()
    );

    // alpha >= 2 is out of reach for sum-stable laws but fine here: the
    // power transform renormalizes the index to 1
    let heavy = MaxStableRep::new(
        2.5,
        FinitePointSpace::new(vec!["a".into(), "b".into()], vec![1.0, 1.0]).unwrap(),
        vec!["t0".into(), "t1".into()],
        vec![vec![1.0, 0.3], vec![0.4, 1.2]],
    )
    .unwrap();
    let unit = alpha_power_transform(&heavy);
    println!(
        "alpha = {} transforms to alpha' = {} with the same point space",
        heavy.alpha(),
        unit.alpha()
    );
    // even split normalized for exponent 2.5
    let r = 0.5f64.powf(1.0 / 2.5);
    let family25 = WeightFamily::new(vec![vec![r, r], vec![r, r]]).unwrap();
    let comps25 = make_max_components(&heavy, &family25).unwrap();
    println!(
        "alpha 2.5 split verifies through the transform: {}",
        verify_max_decomposition(&heavy, &comps25, DEFAULT_TOL).unwrap()
    );
    let w25 = recover_max_weights(&heavy, &comps25[0], DEFAULT_TOL).unwrap();
    println!(
        "alpha 2.5 recovered weights: {:?}",
        w25.iter()
            .map(|x| (x * 1e6).round() / 1e6)
            .collect::<Vec<_>>()
    );
}
