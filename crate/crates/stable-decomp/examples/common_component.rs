//! The maximal common component of two processes.
//!
//! Where both canonical measures charge the same direction, the smaller
//! mass can be split off from either process; collecting every shared
//! direction gives the largest process that is a component of both.

use stable_decomp::decompose::{common_component, recover_weights};
use stable_decomp::{Alpha, FinitePointSpace, SpectralRep, DEFAULT_TOL};

fn main() {
    let alpha = Alpha::new(1.5).unwrap();
    let times = vec!["t0".to_string(), "t1".to_string()];
    let x = SpectralRep::new(
        alpha,
        FinitePointSpace::new(vec!["a".into(), "b".into()], vec![1.0, 2.0]).unwrap(),
        times.clone(),
        vec![vec![1.0, 0.0], vec![0.0, 1.5]],
    )
    .unwrap();
    let y = SpectralRep::new(
        alpha,
        FinitePointSpace::new(vec!["u".into(), "v".into()], vec![0.4, 1.0]).unwrap(),
        times.clone(),
        vec![vec![1.0, 1.0], vec![0.0, -1.0]],
    )
    .unwrap();

    match common_component(&x, &y, DEFAULT_TOL).unwrap() {
        Some(z) => {
            println!("maximal common component exists:");
            let canon = z.canonicalize();
            for atom in &canon.atoms {
                println!(
                    "  direction ({:+.6}, {:+.6})  mass {:.6}",
                    atom.direction[0], atom.direction[1], atom.mass
                );
            }
            println!(
                "  component of X: {}",
                recover_weights(&x, &z, DEFAULT_TOL).is_ok()
            );
            println!(
                "  component of Y: {}",
                recover_weights(&y, &z, DEFAULT_TOL).is_ok()
            );
        }
        None => println!("the canonical measures share no direction"),
    }

    // disjoint directions: no common component
    let w = SpectralRep::new(
        alpha,
        FinitePointSpace::new(vec!["w".into()], vec![1.0]).unwrap(),
        times,
        vec![vec![1.0], vec![1.0]],
    )
    .unwrap();
    println!(
        "X and a diagonal process share: {:?}",
        common_component(&x, &w, DEFAULT_TOL)
            .unwrap()
            .map(|_| "something")
    );
}
