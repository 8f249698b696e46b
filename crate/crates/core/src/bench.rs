//! Time-budget-matched comparison of clustering algorithms.
//!
//! A reference algorithm fixes a wall-time budget (one INCKM run, or N runs of
//! the sampled incremental algorithm). Every competitor is then launched
//! again and again with seeds `root, root + 1, …` until the budget is spent;
//! a run that starts before the deadline is always finished and counted, and
//! the first run always happens. Each row reports the best and mean
//! objective, mean update steps, and the number of completed runs, averaged
//! over independent replications.

use std::fmt::Write as _;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::algorithms::{
    self, inckm_sweep, lambda_sweep, InckmParams, SampleParams,
};
use crate::{
    build_dissimilarity, ClusteringResult, Dataset, DissimilarityMatrix, Error, MetricKind,
    Result, RngStream,
};

/// Sample share used by the sampled algorithms when none is given.
pub const DEFAULT_PERCENT: f64 = 10.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AlgorithmId {
    Fkm,
    Kpp,
    Inckm,
    Inckpp,
    FkmSample,
    KppSample,
    InckppSample,
}

impl AlgorithmId {
    pub const ALL: [AlgorithmId; 7] = [
        AlgorithmId::Fkm,
        AlgorithmId::Kpp,
        AlgorithmId::Inckm,
        AlgorithmId::Inckpp,
        AlgorithmId::FkmSample,
        AlgorithmId::KppSample,
        AlgorithmId::InckppSample,
    ];

    pub fn name(self) -> &'static str {
        match self {
            AlgorithmId::Fkm => "fkm",
            AlgorithmId::Kpp => "kpp",
            AlgorithmId::Inckm => "inckm",
            AlgorithmId::Inckpp => "inckpp",
            AlgorithmId::FkmSample => "fkm_sample",
            AlgorithmId::KppSample => "kpp_sample",
            AlgorithmId::InckppSample => "inckpp_sample",
        }
    }

    pub fn is_sampled(self) -> bool {
        matches!(
            self,
            AlgorithmId::FkmSample | AlgorithmId::KppSample | AlgorithmId::InckppSample
        )
    }

    pub fn is_deterministic(self) -> bool {
        self == AlgorithmId::Inckm
    }
}

impl std::fmt::Display for AlgorithmId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for AlgorithmId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().to_ascii_lowercase();
        AlgorithmId::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| Error::Config(format!("unknown algorithm `{s}`")))
    }
}

/// An algorithm together with its own parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AlgorithmSpec {
    pub id: AlgorithmId,
    /// INCKM stretch factor; `None` sweeps 1.5..=2.5 and keeps the best.
    pub lambda: Option<f64>,
    /// Sample share of the sampled algorithms; `None` means [`DEFAULT_PERCENT`].
    pub percent: Option<f64>,
    /// INCKM refinement schedule, see [`InckmParams::refine_each_stage`].
    pub refine_each_stage: bool,
}

impl AlgorithmSpec {
    pub fn new(id: AlgorithmId) -> Self {
        Self {
            id,
            lambda: None,
            percent: None,
            refine_each_stage: true,
        }
    }

    pub fn lambda(mut self, lambda: f64) -> Self {
        self.lambda = Some(lambda);
        self
    }

    pub fn percent(mut self, percent: f64) -> Self {
        self.percent = Some(percent);
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.lambda.is_some() && self.id != AlgorithmId::Inckm {
            return Err(Error::Config(format!("lambda does not apply to {}", self.id)));
        }
        if self.percent.is_some() && !self.id.is_sampled() {
            return Err(Error::Config(format!(
                "a sample percentage does not apply to {}",
                self.id
            )));
        }
        if let Some(l) = self.lambda {
            InckmParams::new(l).map_err(|e| Error::Config(e.to_string()))?;
        }
        if let Some(p) = self.percent {
            SampleParams::new(p).map_err(|e| Error::Config(e.to_string()))?;
        }
        Ok(())
    }

    fn effective_percent(&self) -> Option<f64> {
        self.id
            .is_sampled()
            .then(|| self.percent.unwrap_or(DEFAULT_PERCENT))
    }
}

/// A named dataset with its dissimilarity matrix.
#[derive(Debug, Clone)]
pub struct Instance {
    pub id: String,
    pub dataset: Dataset,
    pub matrix: DissimilarityMatrix,
}

impl Instance {
    pub fn new(id: impl Into<String>, dataset: Dataset, metric: MetricKind) -> Result<Self> {
        let matrix = build_dissimilarity(&dataset, metric)?;
        Ok(Self {
            id: id.into(),
            dataset,
            matrix,
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchSpec {
    pub dataset: String,
    pub k: usize,
    pub algorithm: AlgorithmSpec,
    pub root_seed: u64,
    /// Independent repetitions of the whole budgeted experiment.
    pub replications: usize,
}

impl BenchSpec {
    pub fn new(dataset: impl Into<String>, k: usize, algorithm: AlgorithmSpec, root_seed: u64) -> Self {
        Self {
            dataset: dataset.into(),
            k,
            algorithm,
            root_seed,
            replications: 1,
        }
    }

    pub fn replications(mut self, r: usize) -> Self {
        self.replications = r;
        self
    }
}

/// One run's result and, for INCKM, the stretch factor it used.
#[derive(Debug, Clone, PartialEq)]
pub struct RunOutcome {
    pub result: ClusteringResult,
    pub lambda: Option<f64>,
}

/// Runs `algo` once on `inst` with random stream `seed`.
pub fn run_once(inst: &Instance, k: usize, algo: &AlgorithmSpec, seed: u64) -> Result<RunOutcome> {
    let m = &inst.matrix;
    let mut rng = RngStream::new(seed);
    let sample = || SampleParams::new(algo.percent.unwrap_or(DEFAULT_PERCENT));
    let result = match algo.id {
        AlgorithmId::Fkm => algorithms::fkm_random(m, k, &mut rng)?,
        AlgorithmId::Kpp => algorithms::kpp(m, k, &mut rng)?,
        AlgorithmId::Inckpp => algorithms::inckpp(m, k, &mut rng)?,
        AlgorithmId::FkmSample => algorithms::fkm_sample(m, k, &sample()?, &mut rng)?.result,
        AlgorithmId::KppSample => algorithms::kpp_sample(m, k, &sample()?, &mut rng)?.result,
        AlgorithmId::InckppSample => {
            algorithms::inckpp_sample(m, k, &sample()?, &mut rng)?.result
        }
        AlgorithmId::Inckm => {
            let (lambda, result) = match algo.lambda {
                Some(l) => {
                    let params = InckmParams::new(l)?.refine_each_stage(algo.refine_each_stage);
                    (l, algorithms::inckm(&inst.dataset, m, k, &params)?)
                }
                None => inckm_sweep(&inst.dataset, m, k, &lambda_sweep(), algo.refine_each_stage)?,
            };
            return Ok(RunOutcome {
                result,
                lambda: Some(lambda),
            });
        }
    };
    Ok(RunOutcome {
        result,
        lambda: None,
    })
}

/// Wall time of `runs` complete runs with seeds `root, root + 1, …`.
pub fn measure_budget(inst: &Instance, spec: &BenchSpec, runs: usize) -> Result<Duration> {
    if runs == 0 {
        return Ok(Duration::ZERO);
    }
    let start = Instant::now();
    for ordinal in 0..runs {
        run_once(
            inst,
            spec.k,
            &spec.algorithm,
            spec.root_seed.wrapping_add(ordinal as u64),
        )?;
    }
    Ok(start.elapsed())
}

/// How long a budgeted schedule keeps launching runs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Budget {
    /// Launch while less than this much wall time has elapsed.
    Wall(Duration),
    /// Launch exactly this many runs (at least one); timing-independent.
    Repeats(usize),
}

/// The four comparison criteria of one budgeted schedule, or their means over
/// replications.
#[derive(Debug, Clone, PartialEq)]
pub struct Criteria {
    pub min_se: f64,
    pub aver_se: f64,
    pub iter_mean: f64,
    /// Completed runs; fractional once averaged over replications.
    pub repeats: f64,
    /// Budget in seconds (0 for [`Budget::Repeats`]).
    pub wall_budget: f64,
    /// Seconds actually spent.
    pub wall: f64,
    /// Stretch factor used by INCKM rows.
    pub lambda: Option<f64>,
}

/// Repeats `spec.algorithm` with seeds `spec.root_seed + ordinal` until
/// `budget` has elapsed.
pub fn run_budgeted(inst: &Instance, spec: &BenchSpec, budget: Duration) -> Result<Criteria> {
    if budget.is_zero() {
        return Err(Error::Contract("budget must be positive".into()));
    }
    run_schedule(inst, spec, spec.root_seed, Budget::Wall(budget))
}

/// Budgeted schedule with an explicit root seed and budget kind.
pub fn run_schedule(inst: &Instance, spec: &BenchSpec, root: u64, budget: Budget) -> Result<Criteria> {
    let start = Instant::now();
    let mut min_se = f64::INFINITY;
    let mut se_sum = 0.0;
    let mut iter_sum = 0usize;
    let mut lambda = None;
    let mut runs = 0usize;
    loop {
        if runs > 0 {
            let done = match budget {
                Budget::Wall(b) => start.elapsed() >= b,
                Budget::Repeats(r) => runs >= r,
            };
            if done {
                break;
            }
        }
        let out = run_once(inst, spec.k, &spec.algorithm, root.wrapping_add(runs as u64))?;
        min_se = min_se.min(out.result.se);
        se_sum += out.result.se;
        iter_sum += out.result.iterations;
        lambda = lambda.or(out.lambda);
        runs += 1;
    }
    let wall = start.elapsed().as_secs_f64();
    Ok(Criteria {
        min_se,
        aver_se: se_sum / runs as f64,
        iter_mean: iter_sum as f64 / runs as f64,
        repeats: runs as f64,
        wall_budget: match budget {
            Budget::Wall(b) => b.as_secs_f64(),
            Budget::Repeats(_) => 0.0,
        },
        wall,
        lambda,
    })
}

/// Which algorithm sets the shared budget in [`compare`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BudgetRef {
    /// One INCKM run (a full stretch-factor sweep when `lambda` is `None`).
    Inckm { lambda: Option<f64> },
    /// `runs` runs of the sampled incremental algorithm at `percent`.
    InckppSample { runs: usize, percent: f64 },
}

impl BudgetRef {
    fn name(&self) -> &'static str {
        match self {
            BudgetRef::Inckm { .. } => "inckm",
            BudgetRef::InckppSample { .. } => "inckpp_sample",
        }
    }

    fn spec(&self, inst: &Instance, k: usize, root_seed: u64) -> (BenchSpec, usize) {
        let (algo, runs) = match *self {
            BudgetRef::Inckm { lambda } => {
                let mut a = AlgorithmSpec::new(AlgorithmId::Inckm);
                a.lambda = lambda;
                (a, 1)
            }
            BudgetRef::InckppSample { runs, percent } => (
                AlgorithmSpec::new(AlgorithmId::InckppSample).percent(percent),
                runs,
            ),
        };
        (BenchSpec::new(inst.id.clone(), k, algo, root_seed), runs)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CompareOptions {
    pub reference: BudgetRef,
    /// Replace the wall-time budget by a fixed number of runs per row, which
    /// makes every criterion reproducible.
    pub fixed_repeats: Option<usize>,
    /// Worker threads for independent rows.
    pub jobs: usize,
}

impl CompareOptions {
    pub fn new(reference: BudgetRef) -> Self {
        Self {
            reference,
            fixed_repeats: None,
            jobs: 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReportRow {
    pub dataset: String,
    pub k: usize,
    pub algorithm: AlgorithmSpec,
    pub replications: usize,
    pub criteria: Criteria,
}

/// Result table of [`compare`], one row per spec in input order.
#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub reference: BudgetRef,
    pub fixed_repeats: Option<usize>,
    pub rows: Vec<ReportRow>,
}

/// Root seed of replication `r`: `root + r · 2³²`.
pub fn replication_root(root: u64, r: usize) -> u64 {
    root.wrapping_add((r as u64) << 32)
}

/// Runs every spec under the budget set by `opts.reference`.
///
/// Budgets are measured once per replication, sequentially, with the first
/// spec's replication seeds; rows may then run on `opts.jobs` threads, each
/// row's runs staying sequential.
pub fn compare(inst: &Instance, specs: &[BenchSpec], opts: &CompareOptions) -> Result<Report> {
    let Some(first) = specs.first() else {
        return Err(Error::Config("no algorithms to compare".into()));
    };
    for s in specs {
        if s.dataset != inst.id || s.k != first.k {
            return Err(Error::Config(format!(
                "all specs must share dataset `{}` and K = {}; got `{}` with K = {}",
                inst.id, first.k, s.dataset, s.k
            )));
        }
        if s.replications == 0 {
            return Err(Error::Config("replications must be at least 1".into()));
        }
        s.algorithm.validate()?;
    }
    if opts.jobs == 0 {
        return Err(Error::Config("jobs must be at least 1".into()));
    }
    if let BudgetRef::InckppSample { runs, percent } = opts.reference {
        if runs == 0 {
            return Err(Error::Config("the reference needs at least one run".into()));
        }
        SampleParams::new(percent).map_err(|e| Error::Config(e.to_string()))?;
    }

    let max_reps = specs.iter().map(|s| s.replications).max().unwrap_or(1);
    let budgets: Vec<Budget> = match opts.fixed_repeats {
        Some(r) => vec![Budget::Repeats(r); max_reps],
        None => (0..max_reps)
            .map(|r| {
                let (mut ref_spec, runs) = opts.reference.spec(inst, first.k, 0);
                ref_spec.root_seed = replication_root(first.root_seed, r);
                measure_budget(inst, &ref_spec, runs).map(|d| Budget::Wall(d.max(Duration::from_nanos(1))))
            })
            .collect::<Result<_>>()?,
    };

    let run_row = |spec: &BenchSpec| -> Result<ReportRow> {
        let per_rep = (0..spec.replications)
            .map(|r| run_schedule(inst, spec, replication_root(spec.root_seed, r), budgets[r]))
            .collect::<Result<Vec<_>>>()?;
        Ok(ReportRow {
            dataset: spec.dataset.clone(),
            k: spec.k,
            algorithm: spec.algorithm,
            replications: spec.replications,
            criteria: average(&per_rep),
        })
    };

    let rows = if opts.jobs == 1 {
        specs.iter().map(run_row).collect::<Result<Vec<_>>>()?
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(opts.jobs)
            .build()
            .map_err(|e| Error::Config(e.to_string()))?;
        pool.install(|| specs.par_iter().map(run_row).collect::<Result<Vec<_>>>())?
    };
    Ok(Report {
        reference: opts.reference,
        fixed_repeats: opts.fixed_repeats,
        rows,
    })
}

fn average(all: &[Criteria]) -> Criteria {
    let n = all.len() as f64;
    let mean = |f: fn(&Criteria) -> f64| all.iter().map(f).sum::<f64>() / n;
    Criteria {
        min_se: mean(|c| c.min_se),
        aver_se: mean(|c| c.aver_se),
        iter_mean: mean(|c| c.iter_mean),
        repeats: mean(|c| c.repeats),
        wall_budget: mean(|c| c.wall_budget),
        wall: mean(|c| c.wall),
        lambda: all[0].lambda,
    }
}

pub const CSV_HEADER: &str =
    "dataset,algorithm,params,K,p,N,lambda,min_se,aver_se,iter_mean,repeats,budget_s,wall_s";

const CSV_NOTE: &str = "# min_se, aver_se, iter_mean and repeats are means over replications \
(min_se is a mean of per-replication minima); budget_s and wall_s are wall-clock seconds \
and vary between invocations";

impl Report {
    /// The full CSV report: a comment line, the header, one line per row.
    pub fn to_csv(&self) -> String {
        self.render(true)
    }

    /// The report without the `budget_s` and `wall_s` columns. Byte-identical
    /// across invocations with the same specs and seeds when every row is
    /// reproducible (fixed repeats, or deterministic algorithms).
    pub fn deterministic_csv(&self) -> String {
        self.render(false)
    }

    fn render(&self, timings: bool) -> String {
        let mut out = String::new();
        if timings {
            out.push_str(CSV_NOTE);
            out.push('\n');
            out.push_str(CSV_HEADER);
        } else {
            out.push_str(CSV_HEADER.trim_end_matches(",budget_s,wall_s"));
        }
        out.push('\n');
        let n_col = match self.reference {
            BudgetRef::InckppSample { runs, .. } => runs.to_string(),
            BudgetRef::Inckm { .. } => String::new(),
        };
        for row in &self.rows {
            let a = &row.algorithm;
            let mut params = format!("ref={}", self.reference.name());
            if let Some(r) = self.fixed_repeats {
                write!(params, ";repeats={r}").unwrap();
            }
            write!(params, ";replications={}", row.replications).unwrap();
            if a.id == AlgorithmId::Inckm {
                if a.lambda.is_none() {
                    params.push_str(";lambda=sweep");
                }
                if !a.refine_each_stage {
                    params.push_str(";refine=once");
                }
            }
            let p_col = a.effective_percent().map(format_sig6).unwrap_or_default();
            let lambda_col = row.criteria.lambda.map(format_sig6).unwrap_or_default();
            let c = &row.criteria;
            write!(
                out,
                "{},{},{},{},{},{},{},{},{},{},{}",
                row.dataset,
                a.id,
                params,
                row.k,
                p_col,
                n_col,
                lambda_col,
                format_sig6(c.min_se),
                format_sig6(c.aver_se),
                format_sig6(c.iter_mean),
                format_sig6(c.repeats),
            )
            .unwrap();
            if timings {
                write!(out, ",{},{}", format_sig6(c.wall_budget), format_sig6(c.wall)).unwrap();
            }
            out.push('\n');
        }
        out
    }
}

/// Formats like C's `%g`: six significant digits, trailing zeros dropped,
/// scientific notation for exponents below -4 or above 5.
pub fn format_sig6(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let sci = format!("{x:.5e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-4..6).contains(&exp) {
        let decimals = (5 - exp) as usize;
        trim_zeros(&format!("{x:.decimals$}"))
    } else {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{sign}{:02}", trim_zeros(mantissa), exp.abs())
    }
}

fn trim_zeros(s: &str) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s.to_string()
    }
}
