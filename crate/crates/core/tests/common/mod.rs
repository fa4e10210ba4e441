//! Independent oracles and generators shared by the integration tests.
#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::Rng;
use stable_moead::matching::{Matching, PreferenceProfile};
use stable_moead::selection::SelectionContext;

/// Plain-data view of a profile; `lengths[x]` is the acceptable prefix of
/// right agent `x`.
#[derive(Debug, Clone)]
pub struct Lists {
    pub left: Vec<Vec<usize>>,
    pub right: Vec<Vec<usize>>,
    pub lengths: Vec<usize>,
}

impl Lists {
    pub fn n_left(&self) -> usize {
        self.left.len()
    }

    pub fn n_right(&self) -> usize {
        self.right.len()
    }

    pub fn profile(&self) -> PreferenceProfile {
        PreferenceProfile::new(
            self.n_left(),
            self.n_right(),
            self.left.clone(),
            self.right.clone(),
            Some(self.lengths.clone()),
        )
        .expect("generated profile is valid")
    }

    fn lpos(&self, p: usize, x: usize) -> usize {
        self.left[p]
            .iter()
            .position(|&v| v == x)
            .expect("left lists are complete")
    }

    fn rpos(&self, x: usize, p: usize) -> Option<usize> {
        self.right[x][..self.lengths[x]]
            .iter()
            .position(|&v| v == p)
    }

    pub fn acceptable(&self, p: usize, x: usize) -> bool {
        self.rpos(x, p).is_some()
    }
}

/// Random profile: complete left lists, right lists complete over the left
/// side with acceptable prefixes of length `1..=max_len` (or full).
pub fn random_lists<R: Rng>(
    rng: &mut R,
    n_left: usize,
    n_right: usize,
    max_len: Option<usize>,
) -> Lists {
    let mut left = Vec::with_capacity(n_left);
    for _ in 0..n_left {
        let mut l: Vec<usize> = (0..n_right).collect();
        l.shuffle(rng);
        left.push(l);
    }
    let mut right = Vec::with_capacity(n_right);
    let mut lengths = Vec::with_capacity(n_right);
    for _ in 0..n_right {
        let mut l: Vec<usize> = (0..n_left).collect();
        l.shuffle(rng);
        right.push(l);
        lengths.push(match max_len {
            Some(k) => rng.gen_range(1..=k.min(n_left)),
            None => n_left,
        });
    }
    Lists {
        left,
        right,
        lengths,
    }
}

/// Left partner of every left agent.
pub type OneOne = Vec<Option<usize>>;

pub fn one_one_of(m: &Matching, n_left: usize) -> OneOne {
    let mut out = vec![None; n_left];
    for &(p, x) in m.pairs() {
        assert!(out[p].is_none(), "left agent {p} matched twice");
        out[p] = Some(x);
    }
    out
}

pub fn blocking_one_one(lists: &Lists, m: &OneOne) -> Vec<(usize, usize)> {
    let mut holder = vec![None; lists.n_right()];
    for (p, x) in m.iter().enumerate() {
        if let Some(x) = x {
            holder[*x] = Some(p);
        }
    }
    let mut out = Vec::new();
    for p in 0..lists.n_left() {
        for x in 0..lists.n_right() {
            if !lists.acceptable(p, x) || m[p] == Some(x) {
                continue;
            }
            let p_wants = m[p].is_none_or(|y| lists.lpos(p, x) < lists.lpos(p, y));
            let x_wants = holder[x].is_none_or(|q| lists.rpos(x, p) < lists.rpos(x, q));
            if p_wants && x_wants {
                out.push((p, x));
            }
        }
    }
    out
}

/// Every stable one-one matching, by exhaustive search with pruning of
/// partial assignments that already contain a blocking pair. When
/// `must_match` holds, every left agent is matched.
pub fn stable_one_one(lists: &Lists, must_match: bool) -> Vec<OneOne> {
    fn rec(
        lists: &Lists,
        must: bool,
        p: usize,
        cur: &mut OneOne,
        holder: &mut Vec<Option<usize>>,
        out: &mut Vec<OneOne>,
    ) {
        let n = lists.n_left();
        if p == n {
            if blocking_one_one(lists, cur).is_empty() {
                out.push(cur.clone());
            }
            return;
        }
        let mut options: Vec<Option<usize>> = (0..lists.n_right())
            .filter(|&x| holder[x].is_none() && lists.acceptable(p, x))
            .map(Some)
            .collect();
        if !must {
            options.push(None);
        }
        for y in options {
            // p against the partners already fixed for earlier agents
            let p_rank = |x: usize| lists.lpos(p, x);
            let doomed = (0..lists.n_right()).any(|x| {
                let Some(q) = holder[x] else { return false };
                lists.acceptable(p, x)
                    && y.is_none_or(|y| p_rank(x) < p_rank(y))
                    && lists.rpos(x, p) < lists.rpos(x, q)
            }) || y.is_some_and(|y| {
                (0..p).any(|q| {
                    lists.acceptable(q, y)
                        && cur[q].is_none_or(|z| lists.lpos(q, y) < lists.lpos(q, z))
                        && lists.rpos(y, q) < lists.rpos(y, p)
                })
            });
            if doomed {
                continue;
            }
            cur[p] = y;
            if let Some(y) = y {
                holder[y] = Some(p);
            }
            rec(lists, must, p + 1, cur, holder, out);
            if let Some(y) = y {
                holder[y] = None;
            }
            cur[p] = None;
        }
    }
    let mut out = Vec::new();
    let mut cur = vec![None; lists.n_left()];
    let mut holder = vec![None; lists.n_right()];
    rec(lists, must_match, 0, &mut cur, &mut holder, &mut out);
    out
}

/// The stable matching every left agent weakly prefers to all others, if the
/// per-agent best partners form one of the stable matchings.
pub fn left_optimal(lists: &Lists, stable: &[OneOne]) -> Option<OneOne> {
    let best: OneOne = (0..lists.n_left())
        .map(|p| {
            stable
                .iter()
                .filter_map(|m| m[p])
                .min_by_key(|&x| lists.lpos(p, x))
        })
        .collect();
    stable.contains(&best).then_some(best)
}

/// Right partner of every right agent.
pub type ManyOne = Vec<Option<usize>>;

pub fn many_one_of(m: &Matching, n_right: usize) -> ManyOne {
    let mut out = vec![None; n_right];
    for &(p, x) in m.pairs() {
        assert!(out[x].is_none(), "right agent {x} matched twice");
        out[x] = Some(p);
    }
    out
}

pub fn blocking_many_one(lists: &Lists, m: &ManyOne, quota: usize) -> Vec<(usize, usize)> {
    let total = m.iter().flatten().count();
    let mut out = Vec::new();
    for p in 0..lists.n_left() {
        let worst = (0..lists.n_right())
            .filter(|&x| m[x] == Some(p))
            .map(|x| lists.lpos(p, x))
            .max();
        for x in 0..lists.n_right() {
            if !lists.acceptable(p, x) || m[x] == Some(p) {
                continue;
            }
            let x_wants = m[x].is_none_or(|q| lists.rpos(x, p) < lists.rpos(x, q));
            let p_wants = total < quota || worst.is_some_and(|w| lists.lpos(p, x) < w);
            if x_wants && p_wants {
                out.push((p, x));
            }
        }
    }
    out
}

/// Every stable many-one matching with at most `quota` pairs.
pub fn stable_many_one(lists: &Lists, quota: usize) -> Vec<ManyOne> {
    fn rec(
        lists: &Lists,
        quota: usize,
        x: usize,
        used: usize,
        cur: &mut ManyOne,
        out: &mut Vec<ManyOne>,
    ) {
        if x == lists.n_right() {
            if blocking_many_one(lists, cur, quota).is_empty() {
                out.push(cur.clone());
            }
            return;
        }
        cur[x] = None;
        rec(lists, quota, x + 1, used, cur, out);
        if used < quota {
            for &p in &lists.right[x][..lists.lengths[x]] {
                cur[x] = Some(p);
                rec(lists, quota, x + 1, used + 1, cur, out);
            }
        }
        cur[x] = None;
    }
    let mut out = Vec::new();
    let mut cur = vec![None; lists.n_right()];
    rec(lists, quota, 0, 0, &mut cur, &mut out);
    out
}

/// The published 5 x 10 preference matrices (0-based): subproblem lists over
/// solutions and solution lists over subproblems.
pub fn worked_example() -> Lists {
    let one_based = |rows: &[&[usize]]| -> Vec<Vec<usize>> {
        rows.iter()
            .map(|r| r.iter().map(|v| v - 1).collect())
            .collect()
    };
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
    Lists {
        left,
        right,
        lengths: vec![5; 10],
    }
}

pub fn igd_oracle(p: &[Vec<f64>], reference: &[Vec<f64>]) -> f64 {
    let mut total = 0.0;
    for z in reference {
        let mut best = f64::INFINITY;
        for x in p {
            let mut d = 0.0;
            for k in 0..z.len() {
                d += (x[k] - z[k]) * (x[k] - z[k]);
            }
            best = best.min(d.sqrt());
        }
        total += best;
    }
    total / reference.len() as f64
}

/// Union volume of the boxes `[p, zr]` by inclusion-exclusion over subsets.
pub fn hv_inclusion_exclusion(points: &[Vec<f64>], zr: &[f64]) -> f64 {
    let pts: Vec<&Vec<f64>> = points
        .iter()
        .filter(|p| p.iter().zip(zr).all(|(a, r)| a < r))
        .collect();
    assert!(pts.len() <= 16, "oracle is exponential");
    let mut total = 0.0;
    for mask in 1u32..(1 << pts.len()) {
        let mut corner = vec![f64::NEG_INFINITY; zr.len()];
        for (i, p) in pts.iter().enumerate() {
            if mask & (1 << i) != 0 {
                for k in 0..zr.len() {
                    corner[k] = corner[k].max(p[k]);
                }
            }
        }
        let vol: f64 = corner.iter().zip(zr).map(|(c, r)| r - c).product();
        total += if mask.count_ones() % 2 == 1 {
            vol
        } else {
            -vol
        };
    }
    total
}

// Selection oracles: preference values and list lengths from coordinates.

#[derive(Debug)]
pub struct Population {
    pub weights: Vec<Vec<f64>>,
    pub normalized: Vec<Vec<f64>>,
    pub raw: Vec<Vec<f64>>,
    pub ell_max: usize,
}

impl Population {
    pub fn ctx(&self) -> SelectionContext<'_> {
        SelectionContext::new(&self.weights, &self.normalized, &self.raw, self.ell_max).unwrap()
    }
}

pub fn simplex_point<R: Rng>(rng: &mut R, m: usize) -> Vec<f64> {
    let e: Vec<f64> = (0..m).map(|_| -(1.0 - rng.gen::<f64>()).ln()).collect();
    let s: f64 = e.iter().sum();
    e.iter().map(|v| v / s).collect()
}

pub fn random_population<R: Rng>(rng: &mut R, m: usize, n: usize, q: usize) -> Population {
    let mut weights: Vec<Vec<f64>> = (0..m.min(n))
        .map(|i| (0..m).map(|k| if k == i { 1.0 } else { 0.0 }).collect())
        .collect();
    while weights.len() < n {
        weights.push(simplex_point(rng, m));
    }
    // coarse grid so that dominance and ties both occur
    let normalized: Vec<Vec<f64>> = (0..q)
        .map(|_| (0..m).map(|_| rng.gen_range(0..20) as f64 / 20.0).collect())
        .collect();
    let raw = normalized
        .iter()
        .map(|f| f.iter().map(|v| 3.0 * v - 1.0).collect())
        .collect();
    Population {
        weights,
        normalized,
        raw,
        ell_max: rng.gen_range(m..=n.max(m)),
    }
}

pub fn delta_p(f: &[f64], w: &[f64]) -> f64 {
    f.iter()
        .zip(w)
        .map(|(a, b)| a.abs() / b.max(1e-6))
        .fold(f64::MIN, f64::max)
}

pub fn delta_x(f: &[f64], w: &[f64]) -> f64 {
    let ww: f64 = w.iter().map(|v| v * v).sum();
    let t = f.iter().zip(w).map(|(a, b)| a * b).sum::<f64>() / ww;
    f.iter()
        .zip(w)
        .map(|(a, b)| (a - t * b).powi(2))
        .sum::<f64>()
        .sqrt()
}

pub fn sorted_by(keys: Vec<f64>) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..keys.len()).collect();
    idx.sort_by(|&a, &b| keys[a].partial_cmp(&keys[b]).unwrap().then(a.cmp(&b)));
    idx
}

pub fn dominates(a: &[f64], b: &[f64]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y) && a.iter().zip(b).any(|(x, y)| x < y)
}

/// Full rankings of both sides computed from scratch.
pub fn oracle_lists(pop: &Population) -> Lists {
    let left = pop
        .weights
        .iter()
        .map(|w| sorted_by(pop.normalized.iter().map(|f| delta_p(f, w)).collect()))
        .collect();
    let right: Vec<Vec<usize>> = pop
        .normalized
        .iter()
        .map(|f| sorted_by(pop.weights.iter().map(|w| delta_x(f, w)).collect()))
        .collect();
    let lengths = vec![pop.weights.len(); right.len()];
    Lists {
        left,
        right,
        lengths,
    }
}

/// Brute-force list lengths from explicit coordinates.
pub fn oracle_r(pop: &Population) -> Vec<usize> {
    let m = pop.weights[0].len();
    let n = pop.weights.len();
    let lists = oracle_lists(pop);
    let mut rep: Vec<Option<usize>> = vec![None; n];
    for (i, list) in lists.right.iter().enumerate() {
        let j = list[0];
        let better = match rep[j] {
            None => true,
            Some(t) => {
                delta_p(&pop.normalized[i], &pop.weights[j])
                    < delta_p(&pop.normalized[t], &pop.weights[j])
            }
        };
        if better {
            rep[j] = Some(i);
        }
    }
    (0..pop.raw.len())
        .map(|i| {
            let mut r = m;
            let mut ell = m + 1;
            while ell <= pop.ell_max.min(n) {
                let j = lists.right[i][ell - 1];
                if rep[j].is_some_and(|t| dominates(&pop.raw[i], &pop.raw[t])) {
                    break;
                }
                r = ell;
                ell += 1;
            }
            r
        })
        .collect()
}
