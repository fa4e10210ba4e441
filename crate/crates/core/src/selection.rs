//! Environmental selection between subproblems and candidate solutions.
//!
//! Subproblems rank solutions by their normalized Tchebycheff value and
//! solutions rank subproblems by perpendicular distance to the weight vector.
//! On top of those rankings this module builds:
//!
//! * the adaptive list length of every solution (local competitiveness),
//! * the two-level one-one selection (incomplete lists first, then a complete
//!   matching over whatever is left),
//! * the many-one selection with a common quota equal to the subproblem count,
//! * the plain stable-matching and greedy baselines.

use std::cmp::Ordering;

use rand::Rng;

use crate::decomposition::{perp_distance, WEIGHT_FLOOR};
use crate::error::{Error, Result};
use crate::matching::{
    many_one_match, stable_match_complete, stable_match_incomplete, Matching, PreferenceProfile,
};
use crate::problems::dominates;

/// Everything selection needs to know about one generation.
#[derive(Debug, Clone, Copy)]
pub struct SelectionContext<'a> {
    pub weights: &'a [Vec<f64>],
    pub normalized: &'a [Vec<f64>],
    pub raw: &'a [Vec<f64>],
    /// Upper bound on a solution's preference list length.
    pub ell_max: usize,
}

impl<'a> SelectionContext<'a> {
    pub fn new(
        weights: &'a [Vec<f64>],
        normalized: &'a [Vec<f64>],
        raw: &'a [Vec<f64>],
        ell_max: usize,
    ) -> Result<Self> {
        let m = weights
            .first()
            .map(Vec::len)
            .ok_or_else(|| Error::Contract("selection needs at least one subproblem".into()))?;
        if normalized.len() != raw.len() {
            return Err(Error::Dimension {
                expected: raw.len(),
                actual: normalized.len(),
            });
        }
        for v in weights.iter().chain(normalized).chain(raw) {
            if v.len() != m {
                return Err(Error::Dimension {
                    expected: m,
                    actual: v.len(),
                });
            }
        }
        Ok(Self {
            weights,
            normalized,
            raw,
            ell_max,
        })
    }

    /// Objective count.
    pub fn m(&self) -> usize {
        self.weights[0].len()
    }

    /// Subproblem count.
    pub fn n(&self) -> usize {
        self.weights.len()
    }

    /// Solution count.
    pub fn q(&self) -> usize {
        self.normalized.len()
    }
}

/// Preference values of both sides. Subproblem-side values are stored
/// subproblem-major and solution-side values solution-major, so every list
/// is built from a contiguous row.
#[derive(Debug, Clone)]
pub struct PreferenceValues {
    n: usize,
    q: usize,
    subproblem_side: Vec<f64>,
    solution_side: Vec<f64>,
}

impl PreferenceValues {
    pub fn compute(ctx: &SelectionContext<'_>) -> Self {
        let (n, q) = (ctx.n(), ctx.q());
        let mut subproblem_side = Vec::with_capacity(n * q);
        for w in ctx.weights {
            let clamped: Vec<f64> = w.iter().map(|v| v.max(WEIGHT_FLOOR)).collect();
            subproblem_side.extend(ctx.normalized.iter().map(|f| normalized_tch(f, &clamped)));
        }
        let mut solution_side = Vec::with_capacity(n * q);
        for f in ctx.normalized {
            solution_side.extend(ctx.weights.iter().map(|w| perp_distance(f, w)));
        }
        Self {
            n,
            q,
            subproblem_side,
            solution_side,
        }
    }

    /// How much subproblem `p` likes solution `x` (lower is better).
    pub fn subproblem_value(&self, p: usize, x: usize) -> f64 {
        self.subproblem_side[p * self.q + x]
    }

    /// How much solution `x` likes subproblem `p` (lower is better).
    pub fn solution_value(&self, x: usize, p: usize) -> f64 {
        self.solution_side[x * self.n + p]
    }

    /// Subproblem `p`'s ranking of the given solutions.
    fn subproblem_list(&self, p: usize, solutions: impl Iterator<Item = usize>) -> Vec<usize> {
        let row = &self.subproblem_side[p * self.q..(p + 1) * self.q];
        ranked(solutions.map(|x| (row[x], x)).collect(), usize::MAX)
    }

    /// The `len` subproblems closest to solution `x`, best first.
    fn solution_list(&self, x: usize, subproblems: &[usize], len: usize) -> Vec<usize> {
        let row = &self.solution_side[x * self.n..(x + 1) * self.n];
        ranked(subproblems.iter().map(|&p| (row[p], p)).collect(), len)
    }
}

// Indices of the `len` smallest keys, ascending, ties by index.
fn ranked(mut keyed: Vec<(f64, usize)>, len: usize) -> Vec<usize> {
    let cmp = |a: &(f64, usize), b: &(f64, usize)| by_value_then_index(a.0, a.1, b.0, b.1);
    if len < keyed.len() {
        keyed.select_nth_unstable_by(len, cmp);
        keyed.truncate(len);
    }
    keyed.sort_unstable_by(cmp);
    keyed.into_iter().map(|(_, i)| i).collect()
}

fn by_value_then_index(va: f64, a: usize, vb: f64, b: usize) -> Ordering {
    va.total_cmp(&vb).then(a.cmp(&b))
}

// `weight` must already be floored.
fn normalized_tch(f: &[f64], weight: &[f64]) -> f64 {
    f.iter()
        .zip(weight)
        .map(|(v, w)| v.abs() / w)
        .fold(0.0, f64::max)
}

/// Length of every solution's acceptable list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ListLengths {
    /// Every solution accepts every subproblem.
    Complete,
    /// Solution `i` accepts its first `r[i]` subproblems.
    Prefix(Vec<usize>),
}

/// Builds the two-sided profile: subproblems rank every solution, solutions
/// rank subproblems and keep only the prefix given by `lengths`.
pub fn build_preference_profile(
    ctx: &SelectionContext<'_>,
    lengths: &ListLengths,
) -> Result<PreferenceProfile> {
    let values = PreferenceValues::compute(ctx);
    profile_from_values(&values, lengths)
}

fn profile_from_values(
    values: &PreferenceValues,
    lengths: &ListLengths,
) -> Result<PreferenceProfile> {
    let (n, q) = (values.n, values.q);
    let all: Vec<usize> = (0..n).collect();
    let left: Vec<Vec<usize>> = (0..n).map(|p| values.subproblem_list(p, 0..q)).collect();
    let (right, r) = match lengths {
        ListLengths::Complete => (
            (0..q).map(|x| values.solution_list(x, &all, n)).collect(),
            None,
        ),
        ListLengths::Prefix(r) => {
            if r.len() != q {
                return Err(Error::Dimension {
                    expected: q,
                    actual: r.len(),
                });
            }
            let r: Vec<usize> = r.iter().map(|&v| v.min(n)).collect();
            let right = (0..q)
                .map(|x| values.solution_list(x, &all, r[x]))
                .collect();
            (right, Some(r))
        }
    };
    PreferenceProfile::new(n, q, left, right, r)
}

/// Association of solutions to their closest subproblem and the best
/// associated solution of every subproblem.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepresentativeMap {
    /// Closest subproblem of every solution.
    pub association: Vec<usize>,
    /// Best associated solution of every subproblem, if any.
    pub representative: Vec<Option<usize>>,
}

/// Association and representatives from the solutions' ranked subproblem
/// lists (first entry = closest).
pub fn representatives(
    ctx: &SelectionContext<'_>,
    solution_lists: &[Vec<usize>],
) -> Result<RepresentativeMap> {
    if solution_lists.len() != ctx.q() {
        return Err(Error::Dimension {
            expected: ctx.q(),
            actual: solution_lists.len(),
        });
    }
    let mut association = Vec::with_capacity(ctx.q());
    for (i, list) in solution_lists.iter().enumerate() {
        let &p = list
            .first()
            .ok_or_else(|| Error::Contract(format!("solution {i} has an empty list")))?;
        association.push(p);
    }
    let floored: Vec<Vec<f64>> = ctx
        .weights
        .iter()
        .map(|w| w.iter().map(|v| v.max(WEIGHT_FLOOR)).collect())
        .collect();
    let mut best: Vec<Option<(f64, usize)>> = vec![None; ctx.n()];
    for (i, &p) in association.iter().enumerate() {
        let g = normalized_tch(&ctx.normalized[i], &floored[p]);
        match best[p] {
            Some((bg, _)) if bg <= g => {}
            _ => best[p] = Some((g, i)),
        }
    }
    Ok(RepresentativeMap {
        association,
        representative: best.into_iter().map(|b| b.map(|(_, i)| i)).collect(),
    })
}

/// Preference list length of every solution from its local competitiveness.
///
/// Solution `i` starts at `m` and grows one subproblem at a time up to
/// `ell_max`, stopping before the first subproblem whose representative it
/// Pareto-dominates (raw objectives). Lengths are capped by the available
/// list length.
pub fn adaptive_set_r(
    ctx: &SelectionContext<'_>,
    solution_lists: &[Vec<usize>],
) -> Result<Vec<usize>> {
    let m = ctx.m();
    if ctx.ell_max < m {
        return Err(Error::Config(format!(
            "maximum list length {} is below the objective count {m}",
            ctx.ell_max
        )));
    }
    let reps = representatives(ctx, solution_lists)?;
    Ok(solution_lists
        .iter()
        .enumerate()
        .map(|(i, list)| {
            let cap = ctx.ell_max.min(list.len());
            let mut r = m.min(cap);
            for ell in (m + 1)..=cap {
                if let Some(t) = reps.representative[list[ell - 1]] {
                    if dominates(&ctx.raw[i], &ctx.raw[t]) {
                        break;
                    }
                }
                r = ell;
            }
            r
        })
        .collect())
}

fn require_enough_solutions(ctx: &SelectionContext<'_>) -> Result<()> {
    if ctx.q() < ctx.n() {
        return Err(Error::Contract(format!(
            "{} solutions cannot cover {} subproblems",
            ctx.q(),
            ctx.n()
        )));
    }
    Ok(())
}

fn top_lists(values: &PreferenceValues, len: usize) -> Vec<Vec<usize>> {
    let all: Vec<usize> = (0..values.n).collect();
    (0..values.q)
        .map(|x| values.solution_list(x, &all, len.min(values.n)))
        .collect()
}

/// How the first level decides list lengths.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LengthPolicy {
    /// Local-competitiveness rule.
    Adaptive,
    /// The same length for every solution.
    Fixed(usize),
}

fn resolve_lengths(
    ctx: &SelectionContext<'_>,
    values: &PreferenceValues,
    policy: &LengthPolicy,
) -> Result<(Vec<usize>, Vec<Vec<usize>>)> {
    match policy {
        LengthPolicy::Adaptive => {
            let lists = top_lists(values, ctx.ell_max);
            let r = adaptive_set_r(ctx, &lists)?;
            Ok((r, lists))
        }
        LengthPolicy::Fixed(r) => {
            if *r == 0 {
                return Err(Error::Config("fixed list length must be >= 1".into()));
            }
            let r = (*r).min(ctx.n());
            Ok((vec![r; ctx.q()], top_lists(values, r)))
        }
    }
}

fn truncated_profile(
    values: &PreferenceValues,
    mut lists: Vec<Vec<usize>>,
    r: Vec<usize>,
) -> Result<PreferenceProfile> {
    let left: Vec<Vec<usize>> = (0..values.n)
        .map(|p| values.subproblem_list(p, 0..values.q))
        .collect();
    for (list, &len) in lists.iter_mut().zip(&r) {
        list.truncate(len);
    }
    PreferenceProfile::new(values.n, values.q, left, lists, Some(r))
}

/// Two-level one-one selection with the given list-length policy.
///
/// The first level matches with incomplete solution lists; unmatched
/// subproblems are then matched to unmatched solutions with complete lists.
/// Every subproblem ends with exactly one distinct solution.
pub fn selection_two_level<R: Rng + ?Sized>(
    ctx: &SelectionContext<'_>,
    policy: &LengthPolicy,
    rng: &mut R,
) -> Result<Matching> {
    require_enough_solutions(ctx)?;
    let values = PreferenceValues::compute(ctx);
    let (r, lists) = resolve_lengths(ctx, &values, policy)?;
    let profile = truncated_profile(&values, lists, r)?;
    let first = stable_match_incomplete(&profile, rng)?;

    let mut sub_taken = vec![false; ctx.n()];
    let mut sol_taken = vec![false; ctx.q()];
    for &(p, x) in first.pairs() {
        sub_taken[p] = true;
        sol_taken[x] = true;
    }
    let open_subs: Vec<usize> = (0..ctx.n()).filter(|&p| !sub_taken[p]).collect();
    if open_subs.is_empty() {
        return Ok(first);
    }
    let open_sols: Vec<usize> = (0..ctx.q()).filter(|&x| !sol_taken[x]).collect();
    let second = complete_match_on(&values, &open_subs, &open_sols, rng)?;

    let mut pairs = first.pairs().to_vec();
    pairs.extend(second);
    Ok(Matching::new(pairs))
}

// Stable matching with complete lists restricted to the given agents; returns
// pairs in the original index space.
fn complete_match_on<R: Rng + ?Sized>(
    values: &PreferenceValues,
    subs: &[usize],
    sols: &[usize],
    rng: &mut R,
) -> Result<Vec<(usize, usize)>> {
    let mut sol_local = vec![usize::MAX; values.q];
    for (k, &x) in sols.iter().enumerate() {
        sol_local[x] = k;
    }
    let mut sub_local = vec![usize::MAX; values.n];
    for (k, &p) in subs.iter().enumerate() {
        sub_local[p] = k;
    }
    let left: Vec<Vec<usize>> = subs
        .iter()
        .map(|&p| {
            values
                .subproblem_list(p, sols.iter().copied())
                .into_iter()
                .map(|x| sol_local[x])
                .collect()
        })
        .collect();
    let right: Vec<Vec<usize>> = sols
        .iter()
        .map(|&x| {
            values
                .solution_list(x, subs, subs.len())
                .into_iter()
                .map(|p| sub_local[p])
                .collect()
        })
        .collect();
    let profile = PreferenceProfile::complete(left, right)?;
    let m = stable_match_complete(&profile, rng)?;
    Ok(m.pairs().iter().map(|&(p, x)| (subs[p], sols[x])).collect())
}

/// Adaptive two-level one-one selection.
pub fn selection_aoostm<R: Rng + ?Sized>(
    ctx: &SelectionContext<'_>,
    rng: &mut R,
) -> Result<Matching> {
    selection_two_level(ctx, &LengthPolicy::Adaptive, rng)
}

/// Many-one selection with common quota `N` and the given list-length policy.
pub fn selection_many_one<R: Rng + ?Sized>(
    ctx: &SelectionContext<'_>,
    policy: &LengthPolicy,
    rng: &mut R,
) -> Result<Matching> {
    require_enough_solutions(ctx)?;
    let values = PreferenceValues::compute(ctx);
    let (r, lists) = resolve_lengths(ctx, &values, policy)?;
    let profile = truncated_profile(&values, lists, r)?;
    many_one_match(&profile, ctx.n(), rng)
}

/// Adaptive many-one selection.
pub fn selection_amostm<R: Rng + ?Sized>(
    ctx: &SelectionContext<'_>,
    rng: &mut R,
) -> Result<Matching> {
    selection_many_one(ctx, &LengthPolicy::Adaptive, rng)
}

/// Stable matching with complete lists on both sides.
pub fn selection_stm<R: Rng + ?Sized>(ctx: &SelectionContext<'_>, rng: &mut R) -> Result<Matching> {
    require_enough_solutions(ctx)?;
    let profile = build_preference_profile(ctx, &ListLengths::Complete)?;
    stable_match_complete(&profile, rng)
}

/// Each subproblem takes its favourite solution; solutions may be shared.
pub fn greedy_from_profile(profile: &PreferenceProfile) -> Vec<Option<usize>> {
    profile
        .left_lists()
        .iter()
        .map(|l| l.first().copied())
        .collect()
}

/// Greedy baseline: every subproblem keeps the solution with the lowest
/// normalized Tchebycheff value.
pub fn greedy_assignment(ctx: &SelectionContext<'_>) -> Result<Vec<usize>> {
    if ctx.q() == 0 {
        return Err(Error::Contract("greedy selection needs solutions".into()));
    }
    let values = PreferenceValues::compute(ctx);
    Ok((0..ctx.n())
        .map(|p| {
            (0..ctx.q())
                .min_by(|&a, &b| {
                    by_value_then_index(
                        values.subproblem_value(p, a),
                        a,
                        values.subproblem_value(p, b),
                        b,
                    )
                })
                .expect("q > 0")
        })
        .collect())
}
