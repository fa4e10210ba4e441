//! Five subproblems and ten solutions: stable matching against the greedy
//! rule that lets each subproblem take its favourite solution.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use stable_moead::matching::{
    many_one_match, stable_match_complete, stable_match_incomplete, PreferenceProfile,
};
use stable_moead::selection::greedy_from_profile;

fn one_based(rows: &[&[usize]]) -> Vec<Vec<usize>> {
    rows.iter()
        .map(|r| r.iter().map(|v| v - 1).collect())
        .collect()
}

fn show(pairs: &[(usize, usize)]) -> String {
    pairs
        .iter()
        .map(|(p, x)| format!("p{}-x{}", p + 1, x + 1))
        .collect::<Vec<_>>()
        .join(" ")
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // subproblem rankings of the solutions, then solution rankings of the
    // subproblems
    let left = one_based(&[
        &[1, 2, 3, 4, 5, 6, 7, 8, 10, 9],
        &[1, 3, 2, 4, 5, 6, 7, 8, 10, 9],
        &[1, 3, 2, 4, 6, 5, 7, 10, 8, 9],
        &[10, 1, 3, 2, 4, 9, 6, 5, 7, 8],
        &[10, 1, 3, 2, 4, 9, 6, 5, 7, 8],
    ]);
    let right = one_based(&[
        &[1, 2, 3, 4, 5],
        &[1, 2, 3, 4, 5],
        &[1, 2, 3, 4, 5],
        &[2, 1, 3, 4, 5],
        &[2, 1, 3, 4, 5],
        &[2, 3, 1, 4, 5],
        &[3, 2, 4, 1, 5],
        &[3, 4, 2, 5, 1],
        &[4, 3, 5, 2, 1],
        &[5, 4, 3, 2, 1],
    ]);
    let mut rng = ChaCha8Rng::seed_from_u64(0);

    let full = PreferenceProfile::complete(left.clone(), right.clone())?;
    let greedy = greedy_from_profile(&full);
    let greedy_pairs: Vec<(usize, usize)> = greedy
        .iter()
        .enumerate()
        .filter_map(|(p, x)| x.map(|x| (p, x)))
        .collect();
    println!("greedy:           {}", show(&greedy_pairs));
    println!(
        "stable, complete: {}",
        show(stable_match_complete(&full, &mut rng)?.pairs())
    );

    let cut = PreferenceProfile::new(5, 10, left, right, Some(vec![2; 10]))?;
    println!(
        "stable, r = 2:    {}",
        show(stable_match_incomplete(&cut, &mut rng)?.pairs())
    );
    println!(
        "many-one, r = 2:  {}",
        show(many_one_match(&cut, 5, &mut rng)?.pairs())
    );
    Ok(())
}
