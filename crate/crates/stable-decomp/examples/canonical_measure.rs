//! Canonical spectral measures: the law fingerprint.
//!
//! Two spectral representations describe the same process exactly when their
//! canonical measures coincide.  This tour builds a representation, reads off
//! its atoms, then rescales and permutes the point space and shows the
//! fingerprint does not move.

use stable_decomp::{Alpha, FinitePointSpace, SpectralRep, DEFAULT_TOL};

fn main() {
    let alpha = Alpha::new(1.5).unwrap();
    let space = FinitePointSpace::new(
        vec!["a".into(), "b".into(), "c".into()],
        vec![1.0, 2.0, 0.5],
    )
    .unwrap();
    let rep = SpectralRep::new(
        alpha,
        space,
        vec!["t0".into(), "t1".into()],
        vec![vec![1.0, 0.0, 2.0], vec![0.5, 1.5, 1.0]],
    )
    .unwrap();

    let canon = rep.canonicalize();
    println!("canonical measure of X over times {:?}", canon.times);
    for atom in &canon.atoms {
        println!(
            "  direction ({:+.6}, {:+.6})  mass {:.6}",
            atom.direction[0], atom.direction[1], atom.mass
        );
    }
    println!("  total mass {:.6}", canon.total_mass);

    // the same process written differently: column "a" negated and doubled,
    // its weight divided by 2^alpha, points listed in another order
    let other = SpectralRep::new(
        alpha,
        FinitePointSpace::new(
            vec!["p".into(), "q".into(), "r".into()],
            vec![0.5, 1.0 / 2.0f64.powf(1.5), 2.0],
        )
        .unwrap(),
        vec!["t0".into(), "t1".into()],
        vec![vec![2.0, -2.0, 0.0], vec![1.0, -1.0, 1.5]],
    )
    .unwrap();
    println!(
        "rescaled + permuted rewrite has the same law: {}",
        rep.same_process(&other, DEFAULT_TOL).unwrap()
    );

    // scale functional = exponent of the joint characteristic function
    let a = [0.7, -0.3];
    println!(
        "scale functional at {:?}: {:.6} (both reps: {:.6})",
        a,
        rep.scale_functional(&a).unwrap(),
        other.scale_functional(&a).unwrap()
    );
}
