//! Envelope-class closure properties: random members of a class stay
//! dominated after projection, quantization commutes with restriction,
//! and tail masses stay consistent with point masses.

use alwc_core::dist::{Envelope, PartitionSpec, Pmf, Tail};
use alwc_core::math::{self, SplitMix64};
use proptest::prelude::*;

/// Builds a random member of the class dominated by `f`: walk symbols
/// `1..=limit` in a seed-dependent order, greedily assigning
/// `min(f(x), remaining)` until the unit of mass is spent. Domination
/// holds by construction.
fn random_member(f: &Envelope, seed: u64, limit: u64) -> Pmf {
    assert!(f.tail_mass(0) - f.tail_mass(limit) >= 1.0, "limit too small");
    let mut order: Vec<u64> = (1..=limit).collect();
    let mut rng = SplitMix64::new(seed);
    // Fisher-Yates
    for i in (1..order.len()).rev() {
        let j = (rng.next_u64() % (i as u64 + 1)) as usize;
        order.swap(i, j);
    }
    let mut head = vec![0.0f64; limit as usize];
    let mut remaining = 1.0f64;
    for &x in &order {
        if remaining <= 0.0 {
            break;
        }
        let take = f.value(x).min(remaining);
        head[x as usize - 1] = take;
        remaining -= take;
    }
    Pmf::explicit(head).expect("greedy fill produces a normalized pmf")
}

#[test]
fn quantized_members_stay_dominated() {
    // closure of the envelope class under the tail partition: the image
    // of any member lies in the class of the projected envelope
    let envelopes = [
        Envelope::geometric_tail(2.0, 0.5).unwrap(),
        Envelope::geometric_tail(1.0, 0.5).unwrap(),
        Envelope::power_tail(1.0, 2.0).unwrap(),
        Envelope::power_tail(2.0, 1.5).unwrap(),
    ];
    for (ei, f) in envelopes.iter().enumerate() {
        for seed in 0..40u64 {
            let member = random_member(f, 1000 + seed * 7 + ei as u64, 64);
            // pointwise domination of the member itself
            for x in 1..=64u64 {
                assert!(member.mass(x) <= f.value(x) + 1e-12);
            }
            for k in [2u64, 3, 5, 9] {
                let projected = f.project(k).unwrap();
                let image = member.quantized(k).unwrap();
                for i in 1..=k {
                    assert!(
                        image.mass(i) <= projected.value(i) + 1e-12,
                        "envelope {ei}, seed {seed}, k {k}, cell {i}"
                    );
                }
            }
        }
    }
}

#[test]
fn restriction_commutes_with_quantization() {
    let f = Envelope::geometric_tail(2.0, 0.5).unwrap();
    for seed in 0..10u64 {
        let member = random_member(&f, seed, 64);
        for k in 2..=12u64 {
            let a = member.quantized(k).unwrap().entropy_bits();
            let b = member.restricted_entropy_bits(&PartitionSpec::tail(k).unwrap());
            assert!(math::abs(a - b) < 1e-12);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn tail_mass_telescopes(p in 0.05f64..0.95, u in 0u64..40) {
        let g = Pmf::geometric(p).unwrap();
        let diff = g.tail_mass(u) - g.tail_mass(u + 1);
        prop_assert!(math::abs(diff - g.mass(u + 1)) <= 1e-12);
    }

    #[test]
    fn explicit_pmfs_normalize(weights in proptest::collection::vec(0.0f64..1.0, 1..20)) {
        let s: f64 = weights.iter().sum();
        prop_assume!(s > 1e-6);
        let head: Vec<f64> = weights.iter().map(|w| w / s).collect();
        let pmf = Pmf::explicit(head).unwrap();
        prop_assert!(math::abs(pmf.tail_mass(0) - 1.0) <= 1e-12);
    }

    #[test]
    fn geometric_tail_total_is_exact(p in 0.05f64..0.95) {
        let g = Pmf::new(Vec::new(), Tail::Geometric { scale: p / (1.0 - p), ratio: 1.0 - p });
        prop_assert!(g.is_ok());
    }

    #[test]
    fn u_star_is_the_exact_minimizer(j in 1u32..24, r in 0.2f64..0.9) {
        let n = 1u64 << j;
        let f = Envelope::geometric_tail((1.0 - r) / r, r).unwrap();
        let mu = f.envelope_probability();
        let u = mu.u_star(n);
        prop_assert!(mu.tail_fn(u) < 1.0 / n as f64);
        prop_assert!(mu.tail_fn(u - 1) >= 1.0 / n as f64);
    }

    #[test]
    fn hazard_inverse_brackets_u_star(j in 1u32..20) {
        // U(t) at integer t stays within [u*(t) - 1, u*(t)]
        let n = 1u64 << j;
        let f = Envelope::power_tail(1.0, 2.0).unwrap();
        let mu = f.envelope_probability();
        let u_star = mu.u_star(n);
        let u = mu.hazard_inverse().value(n as f64).unwrap();
        prop_assert!(u >= u_star as f64 - 1.0 - 1e-9);
        prop_assert!(u <= u_star as f64 + 1e-9);
    }
}
