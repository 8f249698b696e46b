//! Command-line front end.
//!
//! Exit codes: 0 success, 2 configuration error, 3 data error, 4 capacity
//! error. Messages go to the error stream.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::algorithms::{self, InckmParams, SampleParams};
use crate::bench::{
    self, AlgorithmId, AlgorithmSpec, BenchSpec, BudgetRef, CompareOptions, Instance,
};
use crate::io::{self, LabelColumn, RawDatasetFile};
use crate::oracle::exhaustive_kmedoids;
use crate::{ClusteringResult, Dataset, Error, MetricKind, Result, RngStream};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_DATA: i32 = 3;
pub const EXIT_CAPACITY: i32 = 4;

/// Exit code reported for `err`.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Config(_) | Error::Contract(_) => EXIT_CONFIG,
        Error::Capacity(_) => EXIT_CAPACITY,
        Error::InvalidData(_)
        | Error::DegenerateDistribution
        | Error::CandidateSetTooSmall { .. }
        | Error::Parse { .. }
        | Error::EmptySubset
        | Error::ManifestMismatch { .. }
        | Error::Io(_) => EXIT_DATA,
    }
}

#[derive(Debug, Parser)]
#[command(name = "inckpp", version, about = "Incremental k-medoids clustering and benchmarking")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Cluster a dataset and write medoids, assignments and the objective.
    Cluster(ClusterArgs),
    /// Write initial medoids chosen by a seeding rule.
    Seed(SeedArgs),
    /// Compare algorithms under a shared time budget and write a CSV report.
    Bench(BenchArgs),
    /// Solve small instances exactly by enumeration.
    Oracle(OracleArgs),
    /// Generate a labelled Gaussian mixture.
    Gen(GenArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum LabelArg {
    None,
    First,
    Last,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MetricArg {
    Euclidean,
    Manhattan,
}

#[derive(Debug, Args)]
struct DataArgs {
    /// Dataset file (comma- or whitespace-separated).
    #[arg(long, conflicts_with_all = ["manifest", "id"])]
    input: Option<PathBuf>,
    /// Dataset manifest; use together with --id.
    #[arg(long, requires = "id")]
    manifest: Option<PathBuf>,
    /// Dataset id inside the manifest.
    #[arg(long, requires = "manifest")]
    id: Option<String>,
    /// Column holding integer class labels in --input files.
    #[arg(long, value_enum, default_value = "none")]
    label_column: LabelArg,
    /// Skip min-max normalization of the attributes.
    #[arg(long)]
    no_normalize: bool,
    #[arg(long, value_enum, default_value = "euclidean")]
    metric: MetricArg,
}

#[derive(Debug, Args)]
struct ClusterArgs {
    #[command(flatten)]
    data: DataArgs,
    /// fkm, kpp, inckm, inckpp, fkm_sample, kpp_sample or inckpp_sample.
    #[arg(long)]
    algo: String,
    #[arg(long)]
    k: usize,
    /// Required by every randomized algorithm.
    #[arg(long)]
    seed: Option<u64>,
    /// INCKM stretch factor; without it the 1.5..=2.5 sweep keeps the best.
    #[arg(long)]
    lambda: Option<f64>,
    /// Sample percentage of the sampled algorithms (default 10).
    #[arg(long)]
    p: Option<f64>,
    /// INCKM: seed all medoids first and refine once.
    #[arg(long)]
    refine_once: bool,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct SeedArgs {
    #[command(flatten)]
    data: DataArgs,
    /// kpp, inckm or uniform.
    #[arg(long)]
    algo: String,
    #[arg(long)]
    k: usize,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    lambda: Option<f64>,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct BenchArgs {
    #[command(flatten)]
    data: DataArgs,
    /// Comma-separated algorithms, one report row each.
    #[arg(long, default_value = "inckpp_sample,kpp_sample,fkm_sample,kpp,fkm")]
    algos: String,
    #[arg(long)]
    k: usize,
    /// Root seed of the run schedule.
    #[arg(long)]
    seed: u64,
    #[arg(long, default_value_t = 1)]
    replications: usize,
    #[arg(long, value_enum, default_value = "inckpp-sample")]
    budget_ref: BudgetRefArg,
    /// Runs of the sampled incremental algorithm that make up the budget.
    #[arg(long = "N", default_value_t = 1)]
    n_runs: usize,
    /// Sample percentage for the sampled algorithms and the budget reference.
    #[arg(long)]
    p: Option<f64>,
    /// INCKM stretch factor; without it the 1.5..=2.5 sweep keeps the best.
    #[arg(long)]
    lambda: Option<f64>,
    /// Run exactly this many runs per row instead of filling a time budget.
    /// The report then leaves out the wall-clock columns.
    #[arg(long)]
    repeats: Option<usize>,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum BudgetRefArg {
    Inckm,
    #[value(name = "inckpp_sample", alias = "inckpp-sample")]
    InckppSample,
}

#[derive(Debug, Args)]
struct OracleArgs {
    #[command(flatten)]
    data: DataArgs,
    #[arg(long)]
    k: usize,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct GenArgs {
    /// `center:std:count` groups separated by `;`, e.g. "0,0:1:2000;10,10:1:100".
    #[arg(long)]
    clusters: String,
    #[arg(long)]
    seed: u64,
    #[arg(long)]
    output: Option<PathBuf>,
}

/// Parses `args` (program name first), runs the subcommand, and returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                let _ = write!(stderr, "{e}");
                EXIT_CONFIG
            } else {
                let _ = write!(stdout, "{e}");
                EXIT_OK
            };
            return code;
        }
    };
    let outcome = match cli.command {
        Command::Cluster(a) => cmd_cluster(&a).and_then(|s| emit(&a.output, &s, stdout)),
        Command::Seed(a) => cmd_seed(&a).and_then(|s| emit(&a.output, &s, stdout)),
        Command::Bench(a) => cmd_bench(&a).and_then(|s| emit(&a.output, &s, stdout)),
        Command::Oracle(a) => cmd_oracle(&a).and_then(|s| emit(&a.output, &s, stdout)),
        Command::Gen(a) => cmd_gen(&a).and_then(|s| emit(&a.output, &s, stdout)),
    };
    match outcome {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            exit_code(&e)
        }
    }
}

fn emit(path: &Option<PathBuf>, text: &str, stdout: &mut dyn Write) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, text)?,
        None => stdout.write_all(text.as_bytes())?,
    }
    Ok(())
}

fn load_data(a: &DataArgs) -> Result<(String, Dataset)> {
    let (id, ds) = match (&a.input, &a.manifest, &a.id) {
        (Some(path), None, None) => {
            let labels = match a.label_column {
                LabelArg::None => LabelColumn::None,
                LabelArg::First => LabelColumn::First,
                LabelArg::Last => LabelColumn::Last,
            };
            let id = path
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_else(|| "data".into());
            (id, io::load(&RawDatasetFile::new(path).labels(labels))?)
        }
        (None, Some(manifest), Some(id)) => (id.clone(), io::load_manifest_entry(manifest, id)?),
        _ => {
            return Err(Error::Config(
                "give either --input or --manifest with --id".into(),
            ))
        }
    };
    let ds = if a.no_normalize {
        ds
    } else {
        io::normalize_min_max(&ds)
    };
    Ok((id, ds))
}

fn metric(a: &DataArgs) -> MetricKind {
    match a.metric {
        MetricArg::Euclidean => MetricKind::Euclidean,
        MetricArg::Manhattan => MetricKind::Manhattan,
    }
}

fn need_seed(seed: Option<u64>, what: &str) -> Result<u64> {
    seed.ok_or_else(|| Error::Config(format!("{what} is randomized and needs --seed")))
}

fn cmd_cluster(a: &ClusterArgs) -> Result<String> {
    let algo: AlgorithmId = a.algo.parse()?;
    if a.lambda.is_some() && algo != AlgorithmId::Inckm {
        return Err(Error::Config("--lambda only applies to inckm".into()));
    }
    if a.refine_once && algo != AlgorithmId::Inckm {
        return Err(Error::Config("--refine-once only applies to inckm".into()));
    }
    if a.p.is_some() && !algo.is_sampled() {
        return Err(Error::Config("--p only applies to sampled algorithms".into()));
    }
    let seed = if algo.is_deterministic() {
        a.seed.unwrap_or(0)
    } else {
        need_seed(a.seed, algo.name())?
    };
    let (id, ds) = load_data(&a.data)?;
    let inst = Instance::new(id, ds, metric(&a.data))?;
    let mut spec = AlgorithmSpec::new(algo);
    spec.lambda = a.lambda;
    spec.percent = a.p;
    spec.refine_each_stage = !a.refine_once;
    spec.validate()?;
    let out = bench::run_once(&inst, a.k, &spec, seed)?;

    let mut header = format!("# algorithm={algo} k={}", a.k);
    if !algo.is_deterministic() {
        header.push_str(&format!(" seed={seed}"));
    }
    if let Some(l) = out.lambda {
        header.push_str(&format!(" lambda={l}"));
    }
    Ok(format_result(&header, &inst, &out.result))
}

fn format_result(header: &str, inst: &Instance, r: &ClusteringResult) -> String {
    let medoids: Vec<String> = r.medoids.indices().iter().map(|i| i.to_string()).collect();
    let mut s = format!(
        "{header} se={} iterations={} medoids={}\npoint,cluster,medoid,distance\n",
        r.se,
        r.iterations,
        medoids.join(";")
    );
    for (i, &c) in r.assignment.owner.iter().enumerate() {
        let med = r.medoids.indices()[c];
        s.push_str(&format!("{i},{c},{med},{}\n", inst.matrix.get(i, med)));
    }
    s
}

fn cmd_seed(a: &SeedArgs) -> Result<String> {
    let (id, ds) = load_data(&a.data)?;
    let inst = Instance::new(id, ds, metric(&a.data))?;
    let m = &inst.matrix;
    let medoids = match a.algo.as_str() {
        "kpp" | "uniform" => {
            if a.lambda.is_some() {
                return Err(Error::Config("--lambda only applies to inckm".into()));
            }
            let mut rng = RngStream::new(need_seed(a.seed, &a.algo)?);
            if a.algo == "kpp" {
                algorithms::kpp_seed(m, a.k, &mut rng)?
            } else {
                algorithms::uniform_seed(m.len(), a.k, &mut rng)?
            }
        }
        "inckm" => {
            let lambda = a
                .lambda
                .ok_or_else(|| Error::Config("inckm seeding needs --lambda".into()))?;
            let params = InckmParams::new(lambda).map_err(|e| Error::Config(e.to_string()))?;
            algorithms::inckm_seed(&inst.dataset, m, a.k, &params)?
        }
        other => {
            return Err(Error::Config(format!(
                "unknown seeding rule `{other}` (kpp, inckm, uniform)"
            )))
        }
    };
    let mut s = String::from("order,index\n");
    for (o, i) in medoids.indices().iter().enumerate() {
        s.push_str(&format!("{o},{i}\n"));
    }
    Ok(s)
}

fn cmd_bench(a: &BenchArgs) -> Result<String> {
    let algos = a
        .algos
        .split(',')
        .filter(|s| !s.trim().is_empty())
        .map(str::parse)
        .collect::<Result<Vec<AlgorithmId>>>()?;
    if algos.is_empty() {
        return Err(Error::Config("--algos is empty".into()));
    }
    let reference = match a.budget_ref {
        BudgetRefArg::Inckm => BudgetRef::Inckm { lambda: a.lambda },
        BudgetRefArg::InckppSample => {
            let percent = a.p.unwrap_or(bench::DEFAULT_PERCENT);
            SampleParams::new(percent).map_err(|e| Error::Config(e.to_string()))?;
            BudgetRef::InckppSample {
                runs: a.n_runs,
                percent,
            }
        }
    };
    let uses_inckm =
        algos.contains(&AlgorithmId::Inckm) || a.budget_ref == BudgetRefArg::Inckm;
    let uses_sample =
        algos.iter().any(|x| x.is_sampled()) || a.budget_ref == BudgetRefArg::InckppSample;
    if a.lambda.is_some() && !uses_inckm {
        return Err(Error::Config("--lambda only applies to inckm".into()));
    }
    if a.p.is_some() && !uses_sample {
        return Err(Error::Config("--p only applies to sampled algorithms".into()));
    }

    let (id, ds) = load_data(&a.data)?;
    let inst = Instance::new(id, ds, metric(&a.data))?;
    let specs: Vec<BenchSpec> = algos
        .iter()
        .map(|&algo| {
            let mut spec = AlgorithmSpec::new(algo);
            if algo == AlgorithmId::Inckm {
                spec.lambda = a.lambda;
            }
            if algo.is_sampled() {
                spec.percent = a.p;
            }
            BenchSpec::new(inst.id.clone(), a.k, spec, a.seed).replications(a.replications)
        })
        .collect();
    let mut opts = CompareOptions::new(reference);
    opts.fixed_repeats = a.repeats;
    opts.jobs = a.jobs;
    let report = bench::compare(&inst, &specs, &opts)?;
    // Fixed-repeat runs are reproducible; leave out the wall-clock columns so
    // the output is too.
    Ok(match a.repeats {
        Some(_) => report.deterministic_csv(),
        None => report.to_csv(),
    })
}

fn cmd_oracle(a: &OracleArgs) -> Result<String> {
    let (id, ds) = load_data(&a.data)?;
    let inst = Instance::new(id, ds, metric(&a.data))?;
    let r = exhaustive_kmedoids(&inst.matrix, a.k)?;
    let mut s = format!("best_se,{}\nenumerated,{}\n", r.best_se, r.enumerated);
    for set in &r.best_medoids {
        let idx: Vec<String> = set.indices().iter().map(|i| i.to_string()).collect();
        s.push_str(&format!("optimum,{}\n", idx.join(";")));
    }
    Ok(s)
}

fn cmd_gen(a: &GenArgs) -> Result<String> {
    let spec = io::GeneratorSpec::parse(&a.clusters, a.seed)?;
    Ok(io::format_dataset(&io::generate(&spec)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(
            std::iter::once("inckpp").chain(args.iter().copied()),
            &mut out,
            &mut err,
        );
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn exit_codes_partition_errors() {
        assert_eq!(exit_code(&Error::Config(String::new())), 2);
        assert_eq!(exit_code(&Error::Contract(String::new())), 2);
        assert_eq!(exit_code(&Error::Capacity(String::new())), 4);
        assert_eq!(exit_code(&Error::EmptySubset), 3);
        assert_eq!(
            exit_code(&Error::CandidateSetTooSmall {
                lambda: 1.5,
                candidates: 1,
                k: 2
            }),
            3
        );
    }

    #[test]
    fn help_succeeds_and_unknown_flags_fail() {
        assert_eq!(call(&["--help"]).0, 0);
        assert_eq!(call(&["cluster", "--bogus"]).0, 2);
        assert_eq!(call(&[]).0, 2);
    }

    #[test]
    fn gen_writes_labelled_points() {
        let (code, out, _) = call(&["gen", "--clusters", "0,0:1:20;10,10:1:5", "--seed", "1"]);
        assert_eq!(code, 0);
        assert_eq!(out.lines().count(), 25);
        assert!(out.lines().last().unwrap().ends_with(",1"));
        assert_eq!(call(&["gen", "--clusters", "0,0:1:20"]).0, 2);
        assert_eq!(call(&["gen", "--clusters", "0,0:-1:20", "--seed", "1"]).0, 2);
    }
}
