//! Wall time of one selection step as the number of subproblems doubles,
//! with 1.2 candidate solutions per subproblem.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use stable_moead::decomposition::{generate_weights, NormalizationContext};
use stable_moead::selection::{
    build_preference_profile, selection_amostm, selection_aoostm, ListLengths, SelectionContext,
};

fn population(q: usize, rng: &mut ChaCha8Rng) -> Vec<Vec<f64>> {
    (0..q)
        .map(|_| {
            let t: f64 = rng.gen();
            let noise: f64 = 0.2 * rng.gen::<f64>();
            vec![t + noise, 1.0 - t.sqrt() + noise]
        })
        .collect()
}

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    println!(
        "{:>6} {:>6} {:>12} {:>12} {:>12}",
        "N", "Q", "profile ms", "aoostm ms", "amostm ms"
    );
    for n in [150, 300, 600, 1200] {
        let q = n + n / 5;
        let weights = generate_weights(2, &[n - 1]).expect("lattice");
        let raw = population(q, &mut rng);
        let normalized = NormalizationContext::new(2)
            .normalize(&raw)
            .expect("normalize");
        let ctx = SelectionContext::new(&weights, &normalized, &raw, 20).expect("context");
        let reps = 5;
        let time = |f: &mut dyn FnMut()| {
            (0..reps)
                .map(|_| {
                    let start = Instant::now();
                    f();
                    start.elapsed().as_secs_f64() * 1e3
                })
                .fold(f64::INFINITY, f64::min)
        };
        let profile = time(&mut || {
            build_preference_profile(&ctx, &ListLengths::Complete).expect("profile");
        });
        let one = time(&mut || {
            selection_aoostm(&ctx, &mut rng).expect("aoostm");
        });
        let many = time(&mut || {
            selection_amostm(&ctx, &mut rng).expect("amostm");
        });
        println!("{n:>6} {q:>6} {profile:>12.2} {one:>12.2} {many:>12.2}");
    }
}
