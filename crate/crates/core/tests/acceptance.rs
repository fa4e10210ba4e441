//! End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any criterion fails.

mod common;

use std::process::{Command, ExitCode, Stdio};
use std::time::Instant;

use common::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use stable_moead::decomposition::{generate_weights, NormalizationContext};
use stable_moead::harness::{run_batch, RunConfig};
use stable_moead::matching::*;
use stable_moead::metrics::{hv, igd};
use stable_moead::optimizer::{Algorithm, OptimizerConfig};
use stable_moead::selection::*;

type Outcome = Result<String, String>;

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn median(mut v: Vec<f64>) -> f64 {
    v.sort_by(f64::total_cmp);
    let n = v.len();
    if n % 2 == 1 {
        v[n / 2]
    } else {
        0.5 * (v[n / 2 - 1] + v[n / 2])
    }
}

fn jobs() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

fn stability() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(1001);
    let mut oracle_checks = 0;
    for case in 0..1000 {
        let nl = rng.gen_range(1..=12);
        let nr = nl + rng.gen_range(0..=if nl <= 8 { 3 } else { 8 });
        let lists = random_lists(&mut rng, nl, nr, None);
        let m = stable_match_complete(&lists.profile(), &mut rng).map_err(|e| e.to_string())?;
        let got = one_one_of(&m, nl);
        if !verify_stability(&lists.profile(), &m, MatchMode::OneOne).is_empty() {
            return Err(format!("complete engine unstable on case {case}"));
        }
        if nl <= 8 {
            oracle_checks += 1;
            if left_optimal(&lists, &stable_one_one(&lists, true)) != Some(got) {
                return Err(format!(
                    "complete engine disagrees with oracle on case {case}"
                ));
            }
        }
    }
    for case in 0..1000 {
        let nl = rng.gen_range(1..=10);
        let nr = rng.gen_range(1..=10);
        let lists = random_lists(&mut rng, nl, nr, Some(3));
        let m = stable_match_incomplete(&lists.profile(), &mut rng).map_err(|e| e.to_string())?;
        let got = one_one_of(&m, nl);
        if !verify_stability(&lists.profile(), &m, MatchMode::OneOne).is_empty() {
            return Err(format!("incomplete engine unstable on case {case}"));
        }
        if nl <= 8 {
            oracle_checks += 1;
            if left_optimal(&lists, &stable_one_one(&lists, false)) != Some(got) {
                return Err(format!(
                    "incomplete engine disagrees with oracle on case {case}"
                ));
            }
        }
    }
    for case in 0..1000 {
        let nl = rng.gen_range(1..=10);
        let nr = if nl <= 8 {
            rng.gen_range(1..=8)
        } else {
            rng.gen_range(1..=14)
        };
        let quota = rng.gen_range(1..=nr);
        let lists = random_lists(&mut rng, nl, nr, Some(3));
        let m = many_one_match(&lists.profile(), quota, &mut rng).map_err(|e| e.to_string())?;
        if m.len() > quota
            || !verify_stability(&lists.profile(), &m, MatchMode::ManyOne { quota }).is_empty()
        {
            return Err(format!("many-one engine unstable on case {case}"));
        }
        if nl <= 8 {
            oracle_checks += 1;
            if !stable_many_one(&lists, quota).contains(&many_one_of(&m, nr)) {
                return Err(format!(
                    "many-one outcome outside the oracle's stable set on case {case}"
                ));
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    check(
        secs < 30.0,
        format!("3000 profiles stable, {oracle_checks} oracle agreements, {secs:.1} s"),
    )
}

fn worked_example_fidelity() -> Outcome {
    let lists = worked_example();
    let profile = lists.profile();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let m = stable_match_complete(&profile, &mut rng).map_err(|e| e.to_string())?;
    let oracle = stable_one_one(&lists, true);
    let expected: Vec<(usize, usize)> = oracle[0]
        .iter()
        .enumerate()
        .filter_map(|(p, x)| x.map(|x| (p, x)))
        .collect();
    let first_four = (0..4).all(|x| m.left_of(x).is_some());
    let mut greedy: Vec<usize> = greedy_from_profile(&profile)
        .into_iter()
        .flatten()
        .collect();
    greedy.sort_unstable();
    greedy.dedup();
    check(
        oracle.len() == 1 && m.pairs() == &expected[..] && first_four && greedy.len() == 2,
        format!("stable pairs {:?}, greedy keeps {greedy:?}", m.pairs()),
    )
}

fn degeneration() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3003);
    for case in 0..500 {
        let nl = rng.gen_range(1..=20);
        let nr = nl + rng.gen_range(0..=10);
        let lists = random_lists(&mut rng, nl, nr, None);
        let profile = lists.profile();
        let a = stable_match_complete(&profile, &mut rng).map_err(|e| e.to_string())?;
        let b = stable_match_incomplete(&profile, &mut rng).map_err(|e| e.to_string())?;
        if a != b {
            return Err(format!("case {case} differs"));
        }
    }
    Ok("500 profiles, identical pair sets".into())
}

fn adaptive_r_oracle() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4004);
    for case in 0..500 {
        let m = rng.gen_range(2..=3);
        let n = rng.gen_range(m..=20);
        let q = rng.gen_range(n..=40);
        let pop = random_population(&mut rng, m, n, q);
        let lists = oracle_lists(&pop);
        let r = adaptive_set_r(&pop.ctx(), &lists.right).map_err(|e| e.to_string())?;
        if r != oracle_r(&pop) {
            return Err(format!("case {case} disagrees"));
        }
        if !r.iter().all(|&v| m <= v && v <= pop.ell_max) {
            return Err(format!("case {case} out of band"));
        }
    }
    Ok("500 populations, exact agreement, lengths within [m, l_max]".into())
}

struct Campaign {
    igd: Vec<f64>,
    hv: Vec<f64>,
    secs_per_run: f64,
}

fn campaign(
    problem: &str,
    m: usize,
    algorithm: Algorithm,
    reps: usize,
) -> Result<Campaign, String> {
    let optimizer = OptimizerConfig::new(problem, m, algorithm, 1).map_err(|e| e.to_string())?;
    let cfg = RunConfig {
        name: format!("{problem}-{algorithm}"),
        optimizer,
        reps,
        out: None,
    };
    let start = Instant::now();
    let entries = run_batch(&[cfg], jobs()).map_err(|e| e.to_string())?;
    let mut out = Campaign {
        igd: Vec::new(),
        hv: Vec::new(),
        secs_per_run: start.elapsed().as_secs_f64() * jobs().min(reps) as f64 / reps as f64,
    };
    for e in &entries {
        let r = e
            .outcome
            .as_ref()
            .map_err(|err| format!("seed {}: {err}", e.seed))?;
        out.igd.push(r.final_scores.igd);
        out.hv.push(r.final_scores.hv);
    }
    Ok(out)
}

fn mop1() -> Outcome {
    let c = campaign("MOP1", 2, Algorithm::Aoostm, 11)?;
    let med = median(c.igd);
    check(
        med <= 5e-2,
        format!(
            "median IGD {med:.4e} over 11 seeds, {:.1} s per run",
            c.secs_per_run
        ),
    )
}

fn uf1() -> Outcome {
    let c = campaign("UF1", 2, Algorithm::Aoostm, 5)?;
    let (mi, mh) = (median(c.igd), median(c.hv));
    check(
        mi <= 5e-3 && mh >= 1.09,
        format!(
            "median IGD {mi:.4e}, median HV {mh:.4} over 5 seeds, {:.1} s per run",
            c.secs_per_run
        ),
    )
}

fn mop6() -> Outcome {
    let a = campaign("MOP6", 3, Algorithm::Aoostm, 5)?;
    let b = campaign("MOP6", 3, Algorithm::Amostm, 5)?;
    let (ma, mb) = (median(a.igd), median(b.igd));
    check(
        ma <= 0.15 && mb <= 0.15,
        format!("median IGD aoostm {ma:.4e}, amostm {mb:.4e} over 5 seeds"),
    )
}

fn metric_correctness() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8008);
    let cloud = |rng: &mut ChaCha8Rng, len: usize, m: usize| -> Vec<Vec<f64>> {
        (0..len)
            .map(|_| (0..m).map(|_| rng.gen_range(0.0..1.3)).collect())
            .collect()
    };
    let mut worst_igd: f64 = 0.0;
    let mut worst_hv: f64 = 0.0;
    for _ in 0..100 {
        let m = rng.gen_range(2..=4);
        let (lp, lr) = (rng.gen_range(1..=60), rng.gen_range(1..=60));
        let p = cloud(&mut rng, lp, m);
        let r = cloud(&mut rng, lr, m);
        let got = igd(&p, &r).map_err(|e| e.to_string())?;
        worst_igd = worst_igd.max((got - igd_oracle(&p, &r)).abs());
        let len = rng.gen_range(1..=14);
        let pts = cloud(&mut rng, len, 2);
        let got = hv(&pts, &[1.2, 1.2]).map_err(|e| e.to_string())?;
        worst_hv = worst_hv.max((got - hv_inclusion_exclusion(&pts, &[1.2, 1.2])).abs());
    }
    let unit = hv(&[vec![0.0, 0.0]], &[1.2, 1.2]).map_err(|e| e.to_string())?;
    check(
        worst_igd <= 1e-12 && worst_hv <= 1e-9 && unit == 1.44,
        format!("max IGD error {worst_igd:.1e}, max HV error {worst_hv:.1e}, unit box {unit}"),
    )
}

fn cli(args: &[&str]) -> Result<(), String> {
    let status = Command::new(env!("CARGO_BIN_EXE_stable-moead"))
        .args(args)
        .stdout(Stdio::null())
        .status()
        .map_err(|e| e.to_string())?;
    status
        .success()
        .then_some(())
        .ok_or(format!("{args:?} exited with {status}"))
}

fn read_dir_bytes(dir: &std::path::Path) -> Vec<(String, Vec<u8>)> {
    let mut files: Vec<(String, Vec<u8>)> = std::fs::read_dir(dir)
        .into_iter()
        .flatten()
        .flatten()
        .map(|e| {
            (
                e.file_name().to_string_lossy().into_owned(),
                std::fs::read(e.path()).unwrap_or_default(),
            )
        })
        .collect();
    files.sort();
    files
}

fn strip_wall_time(path: &std::path::Path) -> Vec<String> {
    let text = std::fs::read_to_string(path).unwrap_or_default();
    text.lines()
        .map(|l| {
            let mut cols: Vec<&str> = l.split(',').collect();
            if cols.len() > 7 {
                cols.remove(7);
            }
            cols.join(",")
        })
        .collect()
}

fn determinism() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let p = |s: &str| dir.path().join(s).to_string_lossy().into_owned();
    let run = [
        "run",
        "--problem",
        "WFG4",
        "--m",
        "3",
        "--pop",
        "30",
        "--evals",
        "3000",
        "--seed",
        "17",
    ];
    cli(&[&run[..], &["--out", &p("a")]].concat())?;
    cli(&[&run[..], &["--out", &p("b")]].concat())?;
    let plots_a = read_dir_bytes(&dir.path().join("a/plot"));
    let same_run = !plots_a.is_empty() && plots_a == read_dir_bytes(&dir.path().join("b/plot"));

    let config = "[mop2]\nproblem = \"MOP2\"\npop = 20\nevals = 2000\n\n[uf3]\nproblem = \"UF3\"\nalgo = \"amostm\"\npop = 20\nevals = 2000\n";
    std::fs::write(p("exp.toml"), config).map_err(|e| e.to_string())?;
    cli(&[
        "batch",
        &p("exp.toml"),
        "--reps",
        "4",
        "--jobs",
        "1",
        "--out",
        &p("j1"),
    ])?;
    cli(&[
        "batch",
        &p("exp.toml"),
        "--reps",
        "4",
        "--jobs",
        "8",
        "--out",
        &p("j8"),
    ])?;
    let j1 = dir.path().join("j1");
    let j8 = dir.path().join("j8");
    let same_batch = strip_wall_time(&j1.join("runs.csv")) == strip_wall_time(&j8.join("runs.csv"))
        && read_dir_bytes(&j1.join("plot")) == read_dir_bytes(&j8.join("plot"))
        && std::fs::read(j1.join("summary.csv")).ok() == std::fs::read(j8.join("summary.csv")).ok();
    check(
        same_run && same_batch,
        format!("repeated run identical: {same_run}, --jobs 1 vs 8 identical: {same_batch}"),
    )
}

fn scaling() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1010);
    let mut times = Vec::new();
    for n in [600usize, 1200] {
        let q = n + n / 5;
        let weights = generate_weights(2, &[n - 1]).map_err(|e| e.to_string())?;
        let raw: Vec<Vec<f64>> = (0..q)
            .map(|_| {
                let t: f64 = rng.gen();
                let noise = 0.2 * rng.gen::<f64>();
                vec![t + noise, 1.0 - t.sqrt() + noise]
            })
            .collect();
        let normalized = NormalizationContext::new(2)
            .normalize(&raw)
            .map_err(|e| e.to_string())?;
        let ctx =
            SelectionContext::new(&weights, &normalized, &raw, 20).map_err(|e| e.to_string())?;
        let mut best = [f64::INFINITY; 2];
        for _ in 0..7 {
            let t = Instant::now();
            selection_aoostm(&ctx, &mut rng).map_err(|e| e.to_string())?;
            best[0] = best[0].min(t.elapsed().as_secs_f64());
            let t = Instant::now();
            selection_amostm(&ctx, &mut rng).map_err(|e| e.to_string())?;
            best[1] = best[1].min(t.elapsed().as_secs_f64());
        }
        times.push(best);
    }
    let ratios = [times[1][0] / times[0][0], times[1][1] / times[0][1]];
    check(
        ratios.iter().all(|&r| r < 5.0),
        format!(
            "N 600 -> 1200: aoostm {:.1} -> {:.1} ms (x{:.2}), amostm {:.1} -> {:.1} ms (x{:.2})",
            times[0][0] * 1e3,
            times[1][0] * 1e3,
            ratios[0],
            times[0][1] * 1e3,
            times[1][1] * 1e3,
            ratios[1]
        ),
    )
}

fn main() -> ExitCode {
    let filter: Vec<usize> = std::env::args()
        .skip(1)
        .filter_map(|a| a.parse().ok())
        .collect();
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("matching stability", stability),
        ("worked example", worked_example_fidelity),
        ("degeneration", degeneration),
        ("adaptive r oracle", adaptive_r_oracle),
        ("MOP1 reproduction", mop1),
        ("UF1 reproduction", uf1),
        ("MOP6 aoostm vs amostm", mop6),
        ("metric correctness", metric_correctness),
        ("determinism", determinism),
        ("selection scaling", scaling),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let id = i + 1;
        if !filter.is_empty() && !filter.contains(&id) {
            continue;
        }
        let start = Instant::now();
        let outcome = f();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {id:>2} PASS  {name}: {detail} [{secs:.1} s]"),
            Err(detail) => {
                failed += 1;
                println!("criterion {id:>2} FAIL  {name}: {detail} [{secs:.1} s]");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
