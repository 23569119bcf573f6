//! Randomized equivalence of the recurrence against the exhaustive
//! enumeration oracle, across all profile shapes the crate can produce.

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use runlaw::{enumerate_exact, failure_probability, ErrorModel, ErrorProfile};

fn random_profile(rng: &mut ChaCha8Rng, kind: usize, n: usize) -> ErrorProfile {
    match kind {
        0 => {
            let probs = (0..n).map(|_| rng.random::<f64>()).collect();
            ErrorProfile::new(probs).unwrap()
        }
        1 => ErrorModel::Constant {
            p: rng.random::<f64>(),
        }
        .profile(n)
        .unwrap(),
        2 => {
            let a = rng.random_range(0.1..10.0);
            let b = rng.random_range(a..a + 20.0);
            ErrorModel::Radio { a, b }.profile(n).unwrap()
        }
        _ => {
            let b = rng.random_range(0.01..0.4);
            let a = rng.random_range(b + 0.01..1.0 - b);
            let t_cycles = rng.random_range(0.5..n as f64 - 0.5);
            ErrorModel::Radar { a, b, t_cycles }.profile(n).unwrap()
        }
    }
}

#[test]
fn recurrence_matches_enumeration_on_random_instances() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x6f7261636c65);
    let mut worst: f64 = 0.0;
    for instance in 0..200 {
        let kind = instance % 4;
        // The radar model needs room for its period inside the zone.
        let n = if kind == 3 {
            rng.random_range(3..=20)
        } else {
            rng.random_range(1..=20)
        };
        let profile = random_profile(&mut rng, kind, n);
        let k = rng.random_range(1..=n);
        let exact = enumerate_exact(&profile, k).unwrap();
        let recurred = failure_probability(&profile, k).unwrap();
        let diff = (exact - recurred).abs();
        worst = worst.max(diff);
        assert!(
            diff <= 1e-12,
            "instance {instance}: kind {kind}, n = {n}, k = {k}: \
             enumeration {exact:e} vs recurrence {recurred:e}"
        );
    }
    println!("worst |enumeration - recurrence| over 200 instances: {worst:e}");
}

#[test]
fn recurrence_matches_enumeration_at_guard_boundary() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let probs: Vec<f64> = (0..25).map(|_| rng.random::<f64>()).collect();
    let profile = ErrorProfile::new(probs).unwrap();
    for k in [1, 3, 12, 25] {
        let exact = enumerate_exact(&profile, k).unwrap();
        let recurred = failure_probability(&profile, k).unwrap();
        assert!((exact - recurred).abs() <= 1e-12);
    }
}
