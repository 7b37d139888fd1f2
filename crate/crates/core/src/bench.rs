//! Benchmark harness and the randomized self-check suite behind the `bench`
//! and `verify` commands.

use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;

use crate::clique::{find_simplicial, max_clique_sweep};
use crate::error::{Error, Result};
use crate::geometry::{filter_dominated, generate_instance, Instance, Point, Region};
use crate::graph::IntersectionGraph;
use crate::heuristics::{gcc, gcc_i, mis_greedy, mis_i, Algorithm, Solution};
use crate::oracles::{
    exact_mcc_capped, exact_mis_capped, max_clique_candidates, simplicial_scan, verify_cover,
    verify_independent, OracleCaps,
};

/// Largest n the bench runs without `allow_large`.
pub const DESK_SCALE_MAX_N: usize = 5000;
/// Default cap above which simplicial-based algorithms are skipped.
pub const DEFAULT_SIMPLICIAL_CAP: usize = 20_000;
pub const DEFAULT_N_LIST: [usize; 3] = [500, 1000, 5000];
pub const DEFAULT_TRIALS: usize = 20;

/// Seed of trial `t` at size `n`.
pub fn trial_seed(base_seed: u64, _n: usize, t: usize) -> u64 {
    base_seed ^ t as u64
}

#[derive(Debug, Clone)]
pub struct BenchConfig {
    pub n_list: Vec<usize>,
    pub trials: usize,
    pub base_seed: u64,
    pub algos: Vec<Algorithm>,
    pub region: Region,
    pub allow_large: bool,
    pub simplicial_cap: usize,
    /// Append mean wall-clock columns. Off by default since timings make the
    /// CSV non-reproducible.
    pub timings: bool,
    pub parallel: bool,
}

impl Default for BenchConfig {
    fn default() -> Self {
        Self {
            n_list: DEFAULT_N_LIST.to_vec(),
            trials: DEFAULT_TRIALS,
            base_seed: 0,
            algos: Algorithm::ALL.to_vec(),
            region: Region::unit(),
            allow_large: false,
            simplicial_cap: DEFAULT_SIMPLICIAL_CAP,
            timings: false,
            parallel: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunRecord {
    pub seed: u64,
    pub n: usize,
    pub algo: Algorithm,
    pub size: usize,
    pub theta: Option<usize>,
    pub phi: Option<usize>,
    pub elapsed_ms: f64,
    pub verified: bool,
}

impl RunRecord {
    pub const CSV_HEADER: &'static str = "seed,n,algo,size,theta,phi,elapsed_ms,verified";

    fn new(instance: &Instance, algo: Algorithm, sol: &Solution) -> Self {
        let (theta, phi, verified) = match sol {
            Solution::Cover(c) => (
                Some(c.theta_count),
                Some(c.phi_count),
                cover_is_valid(instance, &c.points, &c.assignment),
            ),
            Solution::Independent(s) => {
                (None, None, verify_independent(&instance.rects, &s.members))
            }
        };
        Self {
            seed: instance.seed,
            n: instance.len(),
            algo,
            size: sol.size(),
            theta,
            phi,
            elapsed_ms: sol.elapsed().as_secs_f64() * 1e3,
            verified,
        }
    }

    pub fn csv_row(&self) -> String {
        let opt = |v: Option<usize>| v.map(|v| v.to_string()).unwrap_or_default();
        format!(
            "{},{},{},{},{},{},{:.3},{}",
            self.seed,
            self.n,
            self.algo,
            self.size,
            opt(self.theta),
            opt(self.phi),
            self.elapsed_ms,
            self.verified
        )
    }
}

/// Each rectangle contains its assigned point, and the point set as a whole
/// pierces every rectangle.
fn cover_is_valid(instance: &Instance, points: &[Point], assignment: &[usize]) -> bool {
    assignment.len() == instance.len()
        && instance
            .rects
            .iter()
            .zip(assignment)
            .all(|(r, &k)| points.get(k).is_some_and(|&p| r.contains_point(p)))
}

/// One aggregated line of the bench CSV.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchRow {
    pub n: usize,
    pub trials: usize,
    pub mean_gcc: Option<f64>,
    pub mean_gcc_i: Option<f64>,
    pub mean_mis: Option<f64>,
    pub mean_mis_i: Option<f64>,
    pub ratio_gcc_i_over_mis: Option<f64>,
    pub two_sqrt_n: f64,
    pub three_sqrt_n: f64,
    /// Reserved for a manually entered baseline (e.g. a published DCC value).
    pub external_baseline: Option<f64>,
    pub mean_elapsed_ms: [Option<f64>; 4],
}

impl BenchRow {
    pub const CSV_HEADER: &'static str =
        "n,trials,gcc,gcc_i,mis,mis_i,ratio_gcci_mis,two_sqrt_n,three_sqrt_n,external_baseline";
    pub const TIMING_HEADER: &'static str = "gcc_ms,gcc_i_ms,mis_ms,mis_i_ms";

    pub fn mean(&self, algo: Algorithm) -> Option<f64> {
        match algo {
            Algorithm::Gcc => self.mean_gcc,
            Algorithm::GccI => self.mean_gcc_i,
            Algorithm::Mis => self.mean_mis,
            Algorithm::MisI => self.mean_mis_i,
        }
    }

    pub fn csv_row(&self, timings: bool) -> String {
        let f = |v: Option<f64>| v.map(|v| format!("{v:.4}")).unwrap_or_default();
        let mut s = format!(
            "{},{},{},{},{},{},{},{:.4},{:.4},{}",
            self.n,
            self.trials,
            f(self.mean_gcc),
            f(self.mean_gcc_i),
            f(self.mean_mis),
            f(self.mean_mis_i),
            f(self.ratio_gcc_i_over_mis),
            self.two_sqrt_n,
            self.three_sqrt_n,
            f(self.external_baseline),
        );
        if timings {
            for t in self.mean_elapsed_ms {
                write!(s, ",{}", f(t)).expect("write to String");
            }
        }
        s
    }
}

#[derive(Debug, Clone, Default)]
pub struct BenchOutcome {
    pub rows: Vec<BenchRow>,
    pub records: Vec<RunRecord>,
    /// Human-readable notes about skipped work.
    pub warnings: Vec<String>,
}

impl BenchOutcome {
    pub fn to_csv(&self, timings: bool) -> String {
        let mut s = String::from(BenchRow::CSV_HEADER);
        if timings {
            s.push(',');
            s.push_str(BenchRow::TIMING_HEADER);
        }
        s.push('\n');
        for row in &self.rows {
            s.push_str(&row.csv_row(timings));
            s.push('\n');
        }
        s
    }

    pub fn records_csv(&self) -> String {
        let mut s = format!("{}\n", RunRecord::CSV_HEADER);
        for r in &self.records {
            s.push_str(&r.csv_row());
            s.push('\n');
        }
        s
    }
}

fn algo_slot(a: Algorithm) -> usize {
    match a {
        Algorithm::Gcc => 0,
        Algorithm::GccI => 1,
        Algorithm::Mis => 2,
        Algorithm::MisI => 3,
    }
}

/// Runs every configured algorithm on `trials` seeded instances per n.
///
/// Fails before doing any work if a size exceeds [`DESK_SCALE_MAX_N`]
/// without `allow_large`, and fails on the first unverified run.
pub fn run_bench(cfg: &BenchConfig) -> Result<BenchOutcome> {
    if cfg.trials == 0 {
        return Err(Error::Usage("trials must be at least 1".into()));
    }
    cfg.region.validate()?;
    if !cfg.allow_large {
        if let Some(&n) = cfg.n_list.iter().find(|&&n| n > DESK_SCALE_MAX_N) {
            return Err(Error::TooLarge {
                n,
                limit: DESK_SCALE_MAX_N,
            });
        }
    }
    let mut algos = cfg.algos.clone();
    algos.sort();
    algos.dedup();

    let mut out = BenchOutcome::default();
    for &n in &cfg.n_list {
        let active: Vec<Algorithm> = algos
            .iter()
            .copied()
            .filter(|a| !a.uses_simplicial() || n <= cfg.simplicial_cap)
            .collect();
        if active.len() < algos.len() {
            out.warnings.push(format!(
                "n = {n}: skipping simplicial-based algorithms above the cap of {}",
                cfg.simplicial_cap
            ));
        }
        let run_trial = |t: usize| -> Vec<RunRecord> {
            let instance = generate_instance(n, cfg.region, trial_seed(cfg.base_seed, n, t));
            active
                .iter()
                .map(|&a| RunRecord::new(&instance, a, &a.run(&instance)))
                .collect()
        };
        let per_trial: Vec<Vec<RunRecord>> = if cfg.parallel {
            (0..cfg.trials).into_par_iter().map(run_trial).collect()
        } else {
            (0..cfg.trials).map(run_trial).collect()
        };
        let records: Vec<RunRecord> = per_trial.into_iter().flatten().collect();
        if let Some(bad) = records.iter().find(|r| !r.verified) {
            return Err(Error::Unverified {
                algo: bad.algo.name().into(),
                n: bad.n,
                seed: bad.seed,
            });
        }

        let mut sums = [None::<(f64, f64)>; 4];
        for r in &records {
            let slot = sums[algo_slot(r.algo)].get_or_insert((0.0, 0.0));
            slot.0 += r.size as f64;
            slot.1 += r.elapsed_ms;
        }
        let trials = cfg.trials as f64;
        let mean = |a: Algorithm| sums[algo_slot(a)].map(|(s, _)| s / trials);
        let ratio = match (mean(Algorithm::GccI), mean(Algorithm::Mis)) {
            (Some(c), Some(m)) if m > 0.0 => Some(c / m),
            _ => None,
        };
        let root = (n as f64).sqrt();
        out.rows.push(BenchRow {
            n,
            trials: cfg.trials,
            mean_gcc: mean(Algorithm::Gcc),
            mean_gcc_i: mean(Algorithm::GccI),
            mean_mis: mean(Algorithm::Mis),
            mean_mis_i: mean(Algorithm::MisI),
            ratio_gcc_i_over_mis: ratio,
            two_sqrt_n: 2.0 * root,
            three_sqrt_n: 3.0 * root,
            external_baseline: None,
            mean_elapsed_ms: Algorithm::ALL.map(|a| sums[algo_slot(a)].map(|(_, t)| t / trials)),
        });
        out.records.extend(records);
    }
    Ok(out)
}

/// Gnuplot script plotting the bench CSV at `csv_path` against the
/// 2√n and 3√n reference curves.
pub fn gnuplot_script(csv_path: &str) -> String {
    format!(
        "set datafile separator ','\n\
         set key autotitle columnhead left top\n\
         set xlabel 'n'\n\
         set ylabel 'solution size'\n\
         set terminal pngcairo size 900,600\n\
         set output 'cover.png'\n\
         plot '{csv_path}' using 1:3 with linespoints, \
         '' using 1:4 with linespoints, \
         '' using 1:9 with lines dashtype 2\n\
         set output 'independent.png'\n\
         plot '{csv_path}' using 1:5 with linespoints, \
         '' using 1:6 with linespoints, \
         '' using 1:8 with lines dashtype 2\n\
         set output 'ratio.png'\n\
         set ylabel 'gcc_i / mis'\n\
         plot '{csv_path}' using 1:7 with linespoints\n"
    )
}

/// Options for [`verify_suite`].
#[derive(Debug, Clone, Copy, Default)]
pub struct VerifyOptions {
    pub caps: OracleCaps,
    /// Test hook: move every GCC stab point outside the region so the cover
    /// checks must fail.
    pub inject_invalid_cover: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Violation {
    pub seed: u64,
    pub n: usize,
    pub check: String,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct VerifyReport {
    pub instances: usize,
    pub checks: usize,
    pub violations: Vec<Violation>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Runs `count` random instances of size `n` through every cross-check:
/// sweep vs. candidate-cell clique size, simplicial search vs. exhaustive
/// scan, validity of all heuristic outputs, and the chain
/// `mis, mis_i <= OPT_MIS <= OPT_MCC <= gcc_i, gcc`.
pub fn verify_suite(
    count: usize,
    n: usize,
    seed: u64,
    opts: VerifyOptions,
) -> Result<VerifyReport> {
    let cap = opts.caps.mcc.min(opts.caps.mis);
    if n > cap {
        return Err(Error::CapExceeded { n, cap });
    }
    let mut report = VerifyReport::default();
    for t in 0..count {
        let instance = generate_instance(n, Region::unit(), trial_seed(seed, n, t));
        report.instances += 1;
        for (ok, check) in check_instance(&instance, opts)? {
            report.checks += 1;
            if !ok {
                report.violations.push(Violation {
                    seed: instance.seed,
                    n,
                    check,
                });
            }
        }
    }
    Ok(report)
}

/// Every check on one instance as (passed, name).
pub fn check_instance(instance: &Instance, opts: VerifyOptions) -> Result<Vec<(bool, String)>> {
    let rects = &instance.rects;
    let mut checks = Vec::new();
    let mut check = |ok: bool, name: &str| checks.push((ok, name.to_string()));

    if !rects.is_empty() {
        let sweep = max_clique_sweep(rects)?;
        let cells = max_clique_candidates(rects)?;
        check(
            sweep.size() == cells.size(),
            "sweep clique size = candidate clique size",
        );
        check(
            sweep
                .members
                .iter()
                .all(|&i| rects[i].contains_point(sweep.stab)),
            "sweep stab point inside every member",
        );
    }

    let graph = IntersectionGraph::build(rects);
    check(
        graph.edge_count() == IntersectionGraph::build_pairwise(rects).edge_count(),
        "sweep graph = pairwise graph",
    );
    let scan = simplicial_scan(&graph);
    match find_simplicial(&graph, rects) {
        Some(w) => {
            check(scan.contains(&w.vertex), "simplicial witness is simplicial");
            check(
                w.neighborhood
                    .iter()
                    .all(|&u| rects[u].contains_point(w.stab)),
                "simplicial stab point inside the neighborhood",
            );
        }
        None => check(scan.is_empty(), "no witness only when no simplicial vertex"),
    }

    let mut cover_gcc = gcc(instance);
    if opts.inject_invalid_cover {
        for p in &mut cover_gcc.points {
            *p = Point::new(instance.region.x_max + 1.0, instance.region.y_max + 1.0);
        }
    }
    let cover_gcc_i = gcc_i(instance);
    let is_greedy = mis_greedy(instance);
    let is_i = mis_i(instance);
    for (name, c) in [("gcc", &cover_gcc), ("gcc-i", &cover_gcc_i)] {
        check(
            verify_cover(rects, &c.points) && cover_is_valid(instance, &c.points, &c.assignment),
            &format!("{name} cover is valid"),
        );
        check(
            c.theta_count + c.phi_count == c.size(),
            &format!("{name} theta + phi = |points|"),
        );
    }
    check(cover_gcc.theta_count == 0, "gcc theta = 0");
    for (name, s) in [("mis", &is_greedy), ("mis-i", &is_i)] {
        check(
            verify_independent(rects, &s.members),
            &format!("{name} set is independent"),
        );
    }

    let opt_mis = exact_mis_capped(&graph, opts.caps.mis)?;
    let opt_mcc = exact_mcc_capped(rects, opts.caps.mcc)?;
    check(
        verify_independent(rects, &opt_mis),
        "exact MIS witness is independent",
    );
    check(
        verify_cover(rects, &opt_mcc),
        "exact MCC witness is a cover",
    );
    let (mis, mcc) = (opt_mis.len(), opt_mcc.len());
    check(is_greedy.size() <= mis, "|mis| <= OPT_MIS");
    check(is_i.size() <= mis, "|mis_i| <= OPT_MIS");
    check(mis <= mcc, "OPT_MIS <= OPT_MCC");
    check(mcc <= cover_gcc_i.size(), "OPT_MCC <= |gcc_i|");
    check(mcc <= cover_gcc.size(), "OPT_MCC <= |gcc|");

    let kept = filter_dominated(rects).kept;
    let kept_rects: Vec<_> = kept.iter().map(|&i| rects[i]).collect();
    let kept_graph = IntersectionGraph::build(&kept_rects);
    check(
        exact_mis_capped(&kept_graph, opts.caps.mis)?.len() == mis,
        "dropping dominated rectangles keeps OPT_MIS",
    );
    check(
        exact_mcc_capped(&kept_rects, opts.caps.mcc)?.len() == mcc,
        "dropping dominated rectangles keeps OPT_MCC",
    );
    Ok(checks)
}
