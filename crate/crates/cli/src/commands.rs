use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::process::ExitCode;
use std::time::Duration;

use anyhow::Context;
use graphlet_core::generators::erdos_renyi;
use graphlet_core::oracle::brute_force_global_capped;
use graphlet_core::scheduler::{work_report, OrderingKey, RunOutput};
use graphlet_core::{run, Graph, GraphletCounts, OracleError, SchedulerConfig, SchedulerError};

use crate::args::{BenchArgs, CountArgs, OutputFormat, ReportArgs, ReportFormat, SchedulerArgs, VerifyArgs};
use crate::document::{micro_rows, write_micro_csv, ResultDocument, WorkDoc};
use crate::{source, Failure};

fn config(args: &SchedulerArgs) -> Result<SchedulerConfig, Failure> {
    let cfg = args.config();
    cfg.validate().map_err(|e| Failure::Usage(e.to_string()))?;
    Ok(cfg)
}

fn execute(g: &Graph, cfg: &SchedulerConfig) -> Result<RunOutput<u128>, Failure> {
    run::<u128>(g, cfg).map_err(|e| match e {
        SchedulerError::Config(c) => Failure::Usage(c.to_string()),
        other => Failure::Runtime(other.into()),
    })
}

fn sink(path: Option<&std::path::Path>) -> anyhow::Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p).with_context(|| format!("creating {}", p.display()))?)),
        None => Box::new(io::stdout().lock()),
    })
}

pub fn count(args: &CountArgs) -> Result<ExitCode, Failure> {
    let cfg = config(&args.scheduler)?;
    let (g, _) = source::load(&args.source)?;
    let out = execute(&g, &cfg)?;

    let micro = match &args.micro {
        Some(path) => {
            let rows = micro_rows(&g, &out).map_err(anyhow::Error::from)?;
            let f = File::create(path).with_context(|| format!("creating {}", path.display()))?;
            write_micro_csv(&rows, BufWriter::new(f)).with_context(|| format!("writing {}", path.display()))?;
            Some(rows)
        }
        None => None,
    };
    let doc = ResultDocument::new(&g, &cfg, &out, micro);
    let mut w = sink(args.output.as_deref())?;
    match args.format {
        OutputFormat::Json => {
            serde_json::to_writer_pretty(&mut w, &doc).context("writing document")?;
            writeln!(w)?;
        }
        OutputFormat::Csv => doc.write_csv(&mut w).context("writing document")?,
    }
    w.flush()?;
    Ok(ExitCode::SUCCESS)
}

enum Verdict {
    Equal,
    Differs(String),
}

fn compare(label: &str, g: &Graph, cfg: &SchedulerConfig, cap: usize, fault: Option<u8>) -> Result<Verdict, Failure> {
    let want = match brute_force_global_capped(g, cap) {
        Ok(x) => x,
        Err(e @ OracleError::CapExceeded { .. }) => return Err(Failure::Usage(format!("{label}: {e}"))),
        Err(e) => return Err(Failure::Runtime(e.into())),
    };
    let mut got: GraphletCounts = execute(g, cfg)?.counts;
    if let Some(i) = fault {
        let i = i as usize;
        got.set(i, got.get(i) + 1);
    }
    Ok(match got.first_difference(&want) {
        None => Verdict::Equal,
        Some(i) => Verdict::Differs(format!("X{i}: engine={} oracle={}", got.get(i), want.get(i))),
    })
}

pub fn verify(args: &VerifyArgs) -> Result<ExitCode, Failure> {
    let cfg = config(&args.scheduler)?;
    let mut instances: Vec<(String, Graph)> = Vec::new();
    if let Some(r) = &args.random {
        let bad = |what: &str| Failure::Usage(format!("--random: invalid {what}"));
        let n: u64 = r[0].parse().map_err(|_| bad("N"))?;
        let p: f64 = r[1].parse().ok().filter(|p| (0.0..=1.0).contains(p)).ok_or_else(|| bad("P"))?;
        let seed: u64 = r[2].parse().map_err(|_| bad("SEED"))?;
        let trials: u64 = r[3].parse().map_err(|_| bad("TRIALS"))?;
        for t in 0..trials {
            let s = seed.wrapping_add(t);
            instances.push((format!("er:{n}:{p}:{s}"), erdos_renyi(n, p, s)));
        }
    }
    if args.source.input.is_some() || args.source.generate.is_some() || instances.is_empty() {
        let (g, label) = source::load(&args.source)?;
        instances.insert(0, (label, g));
    }

    let mut out = io::stdout().lock();
    let mut mismatches = 0;
    for (label, g) in &instances {
        match compare(label, g, &cfg, args.cap, args.inject_fault)? {
            Verdict::Equal => {}
            Verdict::Differs(detail) => {
                mismatches += 1;
                writeln!(out, "mismatch {label}: {detail}").map_err(anyhow::Error::from)?;
            }
        }
    }
    writeln!(out, "{} of {} instances match the oracle", instances.len() - mismatches, instances.len())
        .map_err(anyhow::Error::from)?;
    Ok(if mismatches == 0 { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

const BENCH_HEADER: [&str; 14] = [
    "ordering",
    "repeats",
    "median_wall_ms",
    "min_wall_ms",
    "max_wall_ms",
    "total_work",
    "median_work",
    "p99_work",
    "max_work",
    "max_over_median",
    "p99_over_median",
    "cpu_edges",
    "gpu_edges",
    "split_edges",
];

pub fn bench_ordering(args: &BenchArgs) -> Result<ExitCode, Failure> {
    let base = config(&args.scheduler)?;
    let (g, _) = source::load(&args.source)?;
    let mut w = csv::Writer::from_writer(io::stdout().lock());
    w.write_record(BENCH_HEADER).map_err(anyhow::Error::from)?;
    let mut reference: Option<GraphletCounts> = None;

    for key in OrderingKey::ALL {
        let cfg = SchedulerConfig { ordering: key, ..base.clone() };
        let mut runs: Vec<RunOutput<u128>> = Vec::with_capacity(args.repeats as usize);
        for _ in 0..args.repeats {
            let out = execute(&g, &cfg)?;
            match &reference {
                Some(x) if *x != out.counts => {
                    return Err(Failure::Runtime(anyhow::anyhow!("counts changed under ordering {key}")));
                }
                Some(_) => {}
                None => reference = Some(out.counts.clone()),
            }
            runs.push(out);
        }
        runs.sort_by_key(|r| r.stats.wall_time);
        let wall = |d: Duration| format!("{:.3}", d.as_secs_f64() * 1e3);
        let median = &runs[runs.len() / 2];
        let work = WorkDoc::from(&work_report(&median.stats));
        let cpu_edges = median.stats.pool_assignment.iter().filter(|p| p.is_cpu()).count();
        let ratio = |x: Option<f64>| x.map(|r| format!("{r:.3}")).unwrap_or_else(|| "inf".into());
        w.write_record([
            key.to_string(),
            args.repeats.to_string(),
            wall(median.stats.wall_time),
            wall(runs[0].stats.wall_time),
            wall(runs[runs.len() - 1].stats.wall_time),
            work.total.to_string(),
            work.median.to_string(),
            work.p99.to_string(),
            work.max.to_string(),
            ratio(work.max_over_median),
            ratio(work.p99_over_median),
            cpu_edges.to_string(),
            (g.m() - cpu_edges).to_string(),
            median.stats.split_edges.to_string(),
        ])
        .map_err(anyhow::Error::from)?;
    }
    w.flush().map_err(anyhow::Error::from)?;
    Ok(ExitCode::SUCCESS)
}

pub fn work_report_cmd(args: &ReportArgs) -> Result<ExitCode, Failure> {
    let cfg = config(&args.scheduler)?;
    let (g, _) = source::load(&args.source)?;
    let out = execute(&g, &cfg)?;
    let report = work_report(&out.stats);
    let mut w = io::stdout().lock();
    match args.format {
        ReportFormat::Text => write!(w, "{report}").map_err(anyhow::Error::from)?,
        ReportFormat::Json => {
            serde_json::to_writer_pretty(&mut w, &WorkDoc::from(&report)).map_err(anyhow::Error::from)?;
            writeln!(w).map_err(anyhow::Error::from)?;
        }
    }
    Ok(ExitCode::SUCCESS)
}
