//! The three matching engines on one random profile, checked for stability.
//!
//! ```text
//! cargo run --example matching -- [n_left] [n_right] [list_len] [seed]
//! ```

use std::env;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use stable_moead::matching::{
    many_one_match_counted, stable_match_complete_counted, stable_match_incomplete_counted,
    verify_stability, MatchMode, PreferenceProfile,
};

fn arg(i: usize, default: usize) -> usize {
    env::args()
        .nth(i)
        .and_then(|s| s.parse().ok())
        .unwrap_or(default)
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let (nl, nr, len) = (arg(1, 6), arg(2, 9), arg(3, 3));
    let mut rng = ChaCha8Rng::seed_from_u64(arg(4, 7) as u64);
    let shuffled = |n: usize, rng: &mut ChaCha8Rng| {
        let mut v: Vec<usize> = (0..n).collect();
        v.shuffle(rng);
        v
    };
    let left: Vec<Vec<usize>> = (0..nl).map(|_| shuffled(nr, &mut rng)).collect();
    let right: Vec<Vec<usize>> = (0..nr).map(|_| shuffled(nl, &mut rng)).collect();

    let complete = PreferenceProfile::complete(left.clone(), right.clone())?;
    let truncated = PreferenceProfile::new(nl, nr, left, right, Some(vec![len.min(nl); nr]))?;

    let (m, proposals) = stable_match_complete_counted(&complete, &mut rng)?;
    let blocking = verify_stability(&complete, &m, MatchMode::OneOne);
    println!(
        "complete lists:   {:?}  ({proposals} proposals, {} blocking)",
        m.pairs(),
        blocking.len()
    );

    let (m, proposals) = stable_match_incomplete_counted(&truncated, &mut rng)?;
    let blocking = verify_stability(&truncated, &m, MatchMode::OneOne);
    println!(
        "lists cut at {len}:  {:?}  ({proposals} proposals, {} blocking)",
        m.pairs(),
        blocking.len()
    );

    let quota = nl;
    let (m, proposals) = many_one_match_counted(&truncated, quota, &mut rng)?;
    let blocking = verify_stability(&truncated, &m, MatchMode::ManyOne { quota });
    println!(
        "many-one, quota {quota}: {:?}  ({proposals} proposals, {} blocking)",
        m.pairs(),
        blocking.len()
    );
    Ok(())
}
