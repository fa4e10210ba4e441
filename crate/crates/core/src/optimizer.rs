//! Decomposition-based main loop with dynamic resource allocation and a
//! pluggable environmental selection.
//!
//! Draw order per run: initial population, initial random matching, then for
//! every generation the active-set tournaments followed, per active
//! subproblem, by the mating-pool draw, parent picks and operator draws, and
//! finally the selection's own randomness.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::decomposition::{
    build_neighborhoods, tch, weights_for_population, NormalizationContext,
};
use crate::error::{Error, Result};
use crate::metrics::{score, MetricConfig, Scores};
use crate::problems::{ProblemInstance, Suite};
use crate::selection::{
    greedy_assignment, selection_amostm, selection_aoostm, selection_stm, SelectionContext,
};
use crate::variation::{de_rand_1, poly_mutation, sbx, Recombination, VariationParams};

/// Environmental selection used after each generation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Algorithm {
    /// Adaptive two-level one-one stable matching.
    Aoostm,
    /// Adaptive many-one stable matching.
    Amostm,
    /// Stable matching with complete lists.
    Stm,
    /// Each subproblem keeps its best solution (duplicates allowed).
    Dra,
}

impl Algorithm {
    pub const ALL: [Algorithm; 4] = [
        Algorithm::Aoostm,
        Algorithm::Amostm,
        Algorithm::Stm,
        Algorithm::Dra,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Algorithm::Aoostm => "aoostm",
            Algorithm::Amostm => "amostm",
            Algorithm::Stm => "stm",
            Algorithm::Dra => "dra",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.as_str())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.trim().to_ascii_lowercase();
        let key = key.strip_prefix("moea/d-").unwrap_or(&key);
        Algorithm::ALL
            .into_iter()
            .find(|a| a.as_str() == key)
            .ok_or_else(|| Error::UnknownAlgorithm(s.to_string()))
    }
}

/// Optional replacements for the suite's default operator settings.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OperatorOverrides {
    pub cr: Option<f64>,
    pub f: Option<f64>,
    pub pc: Option<f64>,
    pub eta_c: Option<f64>,
    pub pm: Option<f64>,
    pub eta_m: Option<f64>,
}

impl OperatorOverrides {
    pub fn apply(&self, mut p: VariationParams) -> VariationParams {
        let set = |slot: &mut f64, v: Option<f64>| {
            if let Some(v) = v {
                *slot = v;
            }
        };
        set(&mut p.cr, self.cr);
        set(&mut p.f, self.f);
        set(&mut p.pc, self.pc);
        set(&mut p.eta_c, self.eta_c);
        set(&mut p.pm, self.pm);
        set(&mut p.eta_m, self.eta_m);
        p
    }
}

/// Population size per instance family and objective count.
pub fn default_pop_size(problem: &ProblemInstance) -> usize {
    match (problem.suite(), problem.m()) {
        (Suite::Uf, 2) => 600,
        (Suite::Uf, _) => 1000,
        (Suite::Mop, 2) => 100,
        (Suite::Mop, _) => 300,
        (Suite::Wfg, 2) => 250,
        (Suite::Wfg, 3) => 91,
        (Suite::Wfg, 5) => 210,
        (Suite::Wfg, 8) => 156,
        (Suite::Wfg, 10) => 275,
        (Suite::Wfg, m) => 20 * m,
    }
}

/// Evaluation budget per instance family. Many-objective WFG uses `N x N`.
pub fn default_budget(problem: &ProblemInstance, pop_size: usize) -> usize {
    match (problem.suite(), problem.m()) {
        (Suite::Wfg, 2) => 25_000,
        (Suite::Wfg, _) => pop_size * pop_size,
        _ => 300_000,
    }
}

/// Everything that determines one run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OptimizerConfig {
    pub problem: String,
    pub m: usize,
    pub wfg_k: Option<usize>,
    pub wfg_l: Option<usize>,
    pub algorithm: Algorithm,
    pub pop_size: usize,
    pub budget: usize,
    pub seed: u64,
    pub neighborhood_size: usize,
    pub delta: f64,
    pub ell_max: usize,
    pub utility_period: usize,
    pub operators: OperatorOverrides,
    /// Record metrics every this many evaluations (final values always).
    pub checkpoint_every: Option<usize>,
}

impl OptimizerConfig {
    /// Defaults for `problem` with `m` objectives.
    pub fn new(problem: &str, m: usize, algorithm: Algorithm, seed: u64) -> Result<Self> {
        let inst = ProblemInstance::new(problem, m)?;
        let pop_size = default_pop_size(&inst);
        Ok(Self {
            problem: inst.name(),
            m,
            wfg_k: inst.wfg_k(),
            wfg_l: inst.wfg_l(),
            algorithm,
            pop_size,
            budget: default_budget(&inst, pop_size),
            seed,
            neighborhood_size: 20,
            delta: 0.9,
            ell_max: 20,
            utility_period: 30,
            operators: OperatorOverrides::default(),
            checkpoint_every: None,
        })
    }

    pub fn instance(&self) -> Result<ProblemInstance> {
        match (self.wfg_k, self.wfg_l) {
            (Some(k), Some(l)) if self.problem.to_ascii_uppercase().starts_with("WFG") => {
                let id = self.problem[3..]
                    .parse::<u8>()
                    .map_err(|_| Error::UnknownProblem(self.problem.clone()))?;
                ProblemInstance::wfg(id, self.m, k, l)
            }
            _ => ProblemInstance::new(&self.problem, self.m),
        }
    }

    pub fn variation(&self, problem: &ProblemInstance) -> Result<VariationParams> {
        let p = self.operators.apply(VariationParams::for_problem(problem));
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        let problem = self.instance()?;
        if self.pop_size < self.m {
            return Err(Error::Config(format!(
                "population {} is smaller than the objective count {}",
                self.pop_size, self.m
            )));
        }
        if self.budget < self.pop_size {
            return Err(Error::Config(format!(
                "budget {} cannot evaluate the initial population of {}",
                self.budget, self.pop_size
            )));
        }
        if self.neighborhood_size < 1 {
            return Err(Error::Config("neighborhood size must be >= 1".into()));
        }
        if !(0.0..=1.0).contains(&self.delta) {
            return Err(Error::Config(format!(
                "delta = {} is not a probability",
                self.delta
            )));
        }
        if self.ell_max < self.m {
            return Err(Error::Config(format!(
                "maximum list length {} is below the objective count {}",
                self.ell_max, self.m
            )));
        }
        if self.utility_period == 0 {
            return Err(Error::Config("utility period must be >= 1".into()));
        }
        if self.checkpoint_every == Some(0) {
            return Err(Error::Config("checkpoint cadence must be >= 1".into()));
        }
        self.variation(&problem)?;
        Ok(())
    }
}

/// A decision vector with its objectives.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Individual {
    pub x: Vec<f64>,
    pub f: Vec<f64>,
}

/// Mutable state of a run.
#[derive(Debug, Clone)]
pub struct OptimizerState {
    pub config: OptimizerConfig,
    pub problem: ProblemInstance,
    pub variation: VariationParams,
    pub weights: Vec<Vec<f64>>,
    pub neighborhoods: Vec<Vec<usize>>,
    /// Current solutions; exactly `N` after every selection.
    pub population: Vec<Individual>,
    /// Population indices matched to each subproblem.
    pub members: Vec<Vec<usize>>,
    pub norm: NormalizationContext,
    pub utility: Vec<f64>,
    /// Objectives of each subproblem's best solution at the last utility
    /// update.
    pub saved_best: Vec<Option<Vec<f64>>>,
    pub neval: usize,
    pub iteration: usize,
    pub rng: ChaCha8Rng,
}

fn random_point<R: Rng + ?Sized>(bounds: &[(f64, f64)], rng: &mut R) -> Vec<f64> {
    bounds
        .iter()
        .map(|&(lo, hi)| lo + rng.gen::<f64>() * (hi - lo))
        .collect()
}

impl OptimizerState {
    /// Random population, weights, neighborhoods, random one-one matching,
    /// unit utilities and the ideal point of the initial evaluations.
    pub fn initialize(config: &OptimizerConfig) -> Result<Self> {
        config.validate()?;
        let problem = config.instance()?;
        let variation = config.variation(&problem)?;
        let n = config.pop_size;
        let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
        let weights = weights_for_population(problem.m(), n, &mut rng)?;
        let neighborhoods = build_neighborhoods(&weights, config.neighborhood_size.min(n))?;
        let mut norm = NormalizationContext::new(problem.m());
        let mut population = Vec::with_capacity(n);
        for _ in 0..n {
            let x = random_point(problem.bounds(), &mut rng);
            let f = problem.evaluate(&x)?;
            norm.update_ideal(&f);
            population.push(Individual { x, f });
        }
        let mut perm: Vec<usize> = (0..n).collect();
        perm.shuffle(&mut rng);
        let members: Vec<Vec<usize>> = perm.into_iter().map(|x| vec![x]).collect();
        let saved_best = members
            .iter()
            .map(|m| Some(population[m[0]].f.clone()))
            .collect();
        Ok(Self {
            config: config.clone(),
            problem,
            variation,
            weights,
            neighborhoods,
            population,
            members,
            norm,
            utility: vec![1.0; n],
            saved_best,
            neval: n,
            iteration: 0,
            rng,
        })
    }

    pub fn n(&self) -> usize {
        self.weights.len()
    }

    pub fn g(&self, f: &[f64], p: usize) -> f64 {
        tch(f, &self.weights[p], &self.norm.ideal)
    }

    /// Subproblems receiving offspring this generation: the `m` axis
    /// subproblems plus utility-tournament winners up to `max(N/5, m)`.
    pub fn select_active_subproblems(&mut self) -> Vec<usize> {
        select_active(&self.weights, &self.utility, &mut self.rng)
    }

    fn best_member(&self, p: usize, candidates: impl Iterator<Item = usize>) -> Option<usize> {
        candidates.min_by(|&a, &b| {
            self.g(&self.population[a].f, p)
                .total_cmp(&self.g(&self.population[b].f, p))
                .then(a.cmp(&b))
        })
    }

    fn make_offspring(&mut self, i: usize) -> Result<Vec<f64>> {
        let n = self.n();
        let t = self.config.neighborhood_size.min(n);
        let draw: f64 = self.rng.gen();
        let mut pool: Vec<usize> = Vec::new();
        if draw < self.config.delta {
            for &j in &self.neighborhoods[i] {
                for &s in &self.members[j] {
                    if !pool.contains(&s) {
                        pool.push(s);
                    }
                }
            }
        }
        if pool.len() < t {
            pool = (0..self.population.len()).collect();
        }
        let base = match self.members[i].as_slice() {
            [only] => *only,
            [] => self
                .best_member(i, 0..self.population.len())
                .expect("population non-empty"),
            many => self
                .best_member(i, many.iter().copied())
                .expect("non-empty"),
        };
        let mut others: Vec<usize> = pool.into_iter().filter(|&s| s != base).collect();
        if others.len() < 2 {
            others = (0..self.population.len()).filter(|&s| s != base).collect();
        }
        let picks: Vec<usize> = others.choose_multiple(&mut self.rng, 2).copied().collect();
        let (r2, r3) = match picks.as_slice() {
            [a, b] => (*a, *b),
            [a] => (*a, *a),
            _ => (base, base),
        };
        let pop = &self.population;
        let child = match self.variation.recombination {
            Recombination::De => de_rand_1(
                &pop[base].x,
                &pop[r2].x,
                &pop[r3].x,
                &self.variation,
                &mut self.rng,
            )?,
            Recombination::Sbx => sbx(&pop[base].x, &pop[r2].x, &self.variation, &mut self.rng)?.0,
        };
        poly_mutation(&child, &self.variation, &mut self.rng)
    }

    /// One generation: offspring for every active subproblem (stopping early
    /// if the budget runs out), then selection back to `N` solutions.
    pub fn evolve_generation(&mut self) -> Result<()> {
        if self.neval >= self.config.budget {
            return Err(Error::Contract(
                "evaluation budget already exhausted".into(),
            ));
        }
        let active = self.select_active_subproblems();
        let mut offspring = Vec::with_capacity(active.len());
        for &i in &active {
            if self.neval >= self.config.budget {
                break;
            }
            let x = self.make_offspring(i)?;
            let f = self.problem.evaluate(&x)?;
            self.neval += 1;
            self.norm.update_ideal(&f);
            offspring.push(Individual { x, f });
        }
        let mut pool = std::mem::take(&mut self.population);
        pool.extend(offspring);
        self.select(pool)?;
        self.iteration += 1;
        if self.iteration.is_multiple_of(self.config.utility_period) {
            self.update_utility();
        }
        Ok(())
    }

    fn select(&mut self, pool: Vec<Individual>) -> Result<()> {
        let n = self.n();
        let raw: Vec<Vec<f64>> = pool.iter().map(|s| s.f.clone()).collect();
        let normalized = self.norm.normalize(&raw)?;
        let ctx = SelectionContext::new(&self.weights, &normalized, &raw, self.config.ell_max)?;
        match self.config.algorithm {
            Algorithm::Aoostm | Algorithm::Stm => {
                let matching = if self.config.algorithm == Algorithm::Aoostm {
                    selection_aoostm(&ctx, &mut self.rng)?
                } else {
                    selection_stm(&ctx, &mut self.rng)?
                };
                let mut chosen = vec![usize::MAX; n];
                for &(p, x) in matching.pairs() {
                    chosen[p] = x;
                }
                if chosen.contains(&usize::MAX) {
                    return Err(Error::Contract(
                        "one-one selection left a subproblem unmatched".into(),
                    ));
                }
                self.population = chosen.iter().map(|&x| pool[x].clone()).collect();
                self.members = (0..n).map(|p| vec![p]).collect();
            }
            Algorithm::Dra => {
                let chosen = greedy_assignment(&ctx)?;
                self.population = chosen.iter().map(|&x| pool[x].clone()).collect();
                self.members = (0..n).map(|p| vec![p]).collect();
            }
            Algorithm::Amostm => {
                let matching = selection_amostm(&ctx, &mut self.rng)?;
                let mut slot = vec![usize::MAX; pool.len()];
                let mut kept: Vec<usize> = Vec::with_capacity(n);
                let mut members = vec![Vec::new(); n];
                for &(p, x) in matching.pairs() {
                    if slot[x] == usize::MAX {
                        slot[x] = kept.len();
                        kept.push(x);
                    }
                    members[p].push(slot[x]);
                }
                for p in 0..n {
                    if kept.len() >= n {
                        break;
                    }
                    if !members[p].is_empty() {
                        continue;
                    }
                    let best = (0..pool.len())
                        .filter(|&x| slot[x] == usize::MAX)
                        .min_by(|&a, &b| {
                            self.g(&pool[a].f, p)
                                .total_cmp(&self.g(&pool[b].f, p))
                                .then(a.cmp(&b))
                        })
                        .expect("pool holds at least N solutions");
                    slot[best] = kept.len();
                    kept.push(best);
                    members[p].push(slot[best]);
                }
                self.population = kept.iter().map(|&x| pool[x].clone()).collect();
                self.members = members;
            }
        }
        Ok(())
    }

    /// Utility refresh from the relative improvement of each subproblem's
    /// best matched solution since the previous refresh.
    pub fn update_utility(&mut self) {
        for p in 0..self.n() {
            let best = self.best_member(p, self.members[p].iter().copied());
            let delta = match (best, &self.saved_best[p]) {
                (Some(b), Some(old)) => {
                    let g_old = self.g(old, p);
                    if g_old < 1e-12 {
                        0.0
                    } else {
                        (g_old - self.g(&self.population[b].f, p)) / g_old
                    }
                }
                _ => 0.0,
            };
            self.utility[p] = next_utility(self.utility[p], delta);
            if let Some(b) = best {
                self.saved_best[p] = Some(self.population[b].f.clone());
            }
        }
    }

    pub fn objectives(&self) -> Vec<Vec<f64>> {
        self.population.iter().map(|s| s.f.clone()).collect()
    }
}

/// Piecewise utility update for relative improvement `delta`.
pub fn next_utility(pi: f64, delta: f64) -> f64 {
    if delta > 0.001 {
        1.0
    } else if delta < 0.0 {
        0.95 * pi
    } else {
        (0.95 + 0.05 * delta / 0.001) * pi
    }
}

/// Axis subproblems plus tournament winners; see
/// [`OptimizerState::select_active_subproblems`].
pub fn select_active<R: Rng + ?Sized>(
    weights: &[Vec<f64>],
    utility: &[f64],
    rng: &mut R,
) -> Vec<usize> {
    let n = weights.len();
    let mut active: Vec<usize> = (0..n)
        .filter(|&i| weights[i].iter().any(|&w| w >= 1.0 - 1e-12))
        .collect();
    let target = (n / 5).max(active.len()).min(n);
    let mut remaining: Vec<usize> = (0..n).filter(|i| !active.contains(i)).collect();
    while active.len() < target && !remaining.is_empty() {
        let size = remaining.len().min(10);
        let drawn = rand::seq::index::sample(rng, remaining.len(), size);
        let mut winner = drawn.index(0);
        for k in drawn.iter().skip(1) {
            if utility[remaining[k]] > utility[remaining[winner]] {
                winner = k;
            }
        }
        active.push(remaining.swap_remove(winner));
    }
    active
}

/// Metric values recorded at one point of a run.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Checkpoint {
    pub neval: usize,
    pub igd: f64,
    pub hv: f64,
}

/// Outcome of one run.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunRecord {
    pub config: OptimizerConfig,
    pub seed: u64,
    pub generations: usize,
    pub neval: usize,
    pub checkpoints: Vec<Checkpoint>,
    pub final_scores: Scores,
    pub population: Vec<Individual>,
    /// Excluded from equality: the only non-deterministic field.
    pub wall_ms: u64,
}

impl PartialEq for RunRecord {
    fn eq(&self, other: &Self) -> bool {
        self.config == other.config
            && self.seed == other.seed
            && self.generations == other.generations
            && self.neval == other.neval
            && self.checkpoints == other.checkpoints
            && self.final_scores == other.final_scores
            && self.population == other.population
    }
}

impl RunRecord {
    pub fn to_json(&self) -> Result<String> {
        serde_json::to_string_pretty(self).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }
}

/// Runs until the budget is spent.
pub fn run(config: &OptimizerConfig) -> Result<RunRecord> {
    let start = Instant::now();
    let mut state = OptimizerState::initialize(config)?;
    let metric_cfg = MetricConfig::for_problem(&state.problem);
    let mut checkpoints = Vec::new();
    let mut next_mark = config.checkpoint_every;
    while state.neval < config.budget {
        state.evolve_generation()?;
        if let Some(mark) = next_mark {
            if state.neval >= mark {
                let s = score(&state.problem, &state.objectives(), &metric_cfg)?;
                checkpoints.push(Checkpoint {
                    neval: state.neval,
                    igd: s.igd,
                    hv: s.hv,
                });
                let every = config.checkpoint_every.expect("cadence set");
                next_mark = Some((state.neval / every + 1) * every);
            }
        }
    }
    let final_scores = score(&state.problem, &state.objectives(), &metric_cfg)?;
    if checkpoints
        .last()
        .is_none_or(|c: &Checkpoint| c.neval < state.neval)
    {
        checkpoints.push(Checkpoint {
            neval: state.neval,
            igd: final_scores.igd,
            hv: final_scores.hv,
        });
    }
    Ok(RunRecord {
        config: config.clone(),
        seed: config.seed,
        generations: state.iteration,
        neval: state.neval,
        checkpoints,
        final_scores,
        population: state.population,
        wall_ms: start.elapsed().as_millis() as u64,
    })
}
