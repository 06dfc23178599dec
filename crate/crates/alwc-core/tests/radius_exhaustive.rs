//! Exhaustive small-instance checks of the exact radius oracle against
//! the finite-alphabet sandwich and the data-processing direction of
//! alphabet projection.

use alwc_core::dist::Pmf;
use alwc_core::radius::{exact_radius_small, finite_alphabet_radius_bounds};

/// All pmfs on {1,2,3} with masses on a quarter grid.
fn quarter_grid_pmfs() -> Vec<Pmf> {
    let mut out = Vec::new();
    for a in 0..=4u32 {
        for b in 0..=(4 - a) {
            let c = 4 - a - b;
            out.push(
                Pmf::explicit(vec![a as f64 / 4.0, b as f64 / 4.0, c as f64 / 4.0]).unwrap(),
            );
        }
    }
    out
}

#[test]
fn projection_never_raises_the_radius() {
    // quantized families have no larger radius than the originals, on
    // every exhaustively checkable instance (<= 3 pmfs, alphabet 3, n <= 3)
    let pmfs = quarter_grid_pmfs();
    let mut families: Vec<Vec<Pmf>> = Vec::new();
    for i in 0..pmfs.len() {
        families.push(vec![pmfs[i].clone()]);
        for j in (i + 1)..pmfs.len() {
            families.push(vec![pmfs[i].clone(), pmfs[j].clone()]);
        }
    }
    // a slice of the triples keeps the runtime sane without losing variety
    for i in (0..pmfs.len()).step_by(2) {
        for j in ((i + 1)..pmfs.len()).step_by(2) {
            for l in ((j + 1)..pmfs.len()).step_by(2) {
                families.push(vec![pmfs[i].clone(), pmfs[j].clone(), pmfs[l].clone()]);
            }
        }
    }
    for family in &families {
        for n in 1..=3u32 {
            let original = exact_radius_small(family, n).unwrap();
            for k in [2u64, 3] {
                let projected: Vec<Pmf> =
                    family.iter().map(|p| p.quantized(k).unwrap()).collect();
                let reduced = exact_radius_small(&projected, n).unwrap();
                assert!(
                    reduced <= original + 1e-8,
                    "k={k} n={n}: projected {reduced} > original {original}"
                );
                // the finite-alphabet upper bound dominates the projected radius
                let upper = finite_alphabet_radius_bounds(k, n as u64).upper_bits;
                assert!(reduced <= upper + 1e-9);
            }
        }
    }
}

#[test]
fn oracle_rejects_bad_instances() {
    assert!(exact_radius_small(&[], 1).is_err());
    let g = Pmf::geometric(0.5).unwrap();
    assert!(exact_radius_small(&[g], 1).is_err());
    let d = Pmf::delta(1).unwrap();
    assert!(exact_radius_small(&[d], 5).is_err());
}

#[test]
fn radius_grows_with_block_length() {
    let fam = vec![
        Pmf::explicit(vec![0.75, 0.25]).unwrap(),
        Pmf::explicit(vec![0.25, 0.75]).unwrap(),
    ];
    let mut prev = 0.0;
    for n in 1..=4u32 {
        let r = exact_radius_small(&fam, n).unwrap();
        assert!(r >= prev - 1e-9);
        prev = r;
    }
}
