use std::fmt;
use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::Path;
use std::sync::Arc;
use std::time::Instant;

use serde::Serialize;

use semiarray::dual::DualSemiring;
use semiarray::partition::{partition, traffic_stats, triple_product, TrafficReport};
use semiarray::path::{optimal_nhop_paths, PathString, TropicalPathSemiring, DEFAULT_PATH_GUARD};
use semiarray::provenance::{provenance_product, recover_product, ProvenanceSemiring};
use semiarray::semiring::BrokenDemo;
use semiarray::tsv::{read_events, read_triples};
use semiarray::{
    axiom_check, stock_semiring, AssocArray, AxiomReport, Error, GraphArrays, Key, KeySet, Scalar,
    StockSemiring, StreamConfig, StreamEngine, Strategy, TrafficMode, WindowMode,
};

use crate::{BenchArgs, CheckArgs, PathsArgs, ProvenanceArgs, StatsArgs, StreamArgs};

#[derive(Debug)]
pub enum Failure {
    /// A computed result failed its own cross-check.
    Verify(String),
    /// Bad flags or unreadable input.
    Input(String),
}

impl Failure {
    pub fn code(&self) -> u8 {
        match self {
            Failure::Verify(_) => 1,
            Failure::Input(_) => 2,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Verify(m) => write!(f, "verification failed: {m}"),
            Failure::Input(m) => write!(f, "error: {m}"),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

pub struct Output {
    sink: BufWriter<Box<dyn Write>>,
}

impl Output {
    pub fn open(path: Option<&Path>) -> io::Result<Output> {
        let inner: Box<dyn Write> = match path {
            Some(p) => Box::new(File::create(p)?),
            None => Box::new(io::stdout()),
        };
        Ok(Output {
            sink: BufWriter::new(inner),
        })
    }

    fn line<T: Serialize>(&mut self, value: &T) -> Outcome {
        let text = serde_json::to_string(value).map_err(|e| Failure::Input(e.to_string()))?;
        writeln!(self.sink, "{text}")?;
        Ok(())
    }

    pub fn finish(mut self) -> Outcome {
        self.sink.flush()?;
        Ok(())
    }
}

fn open(path: &Path) -> Result<BufReader<File>, Failure> {
    File::open(path)
        .map(BufReader::new)
        .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn in_file(path: &Path) -> impl Fn(Error) -> Failure + '_ {
    move |e| Failure::Input(format!("{}: {e}", path.display()))
}

fn read_array(path: &Path, s: StockSemiring) -> Result<AssocArray<StockSemiring>, Failure> {
    let triples = read_triples(open(path)?, |t| s.parse_value(t)).map_err(in_file(path))?;
    Ok(AssocArray::from_triples(Arc::new(s), triples)?)
}

fn small_keys(n: i64) -> KeySet {
    (1..=n).map(Key::from).collect()
}

fn report_for(name: &str, trials: usize, seed: u64) -> Result<AxiomReport, Error> {
    let unknown = || Error::UnknownSemiring {
        name: name.to_owned(),
        valid: StockSemiring::NAMES
            .iter()
            .map(|s| s.to_string())
            .chain(["dual:<stock>", "tropical-path", "provenance:<stock>", "broken-demo"].map(String::from))
            .collect(),
    };
    let report = match name {
        "broken-demo" => axiom_check(&BrokenDemo, trials, seed),
        "tropical-path" => {
            let alphabet = small_keys(4).into_iter().collect();
            axiom_check(&TropicalPathSemiring::new(DEFAULT_PATH_GUARD, alphabet), trials, seed)
        }
        _ => {
            if let Some(base) = name.strip_prefix("dual:") {
                let base = stock_semiring(base).map_err(|_| unknown())?;
                axiom_check(&DualSemiring::new(Arc::new(base)), trials, seed)
            } else if let Some(base) = name.strip_prefix("provenance:") {
                let base = stock_semiring(base).map_err(|_| unknown())?;
                axiom_check(&ProvenanceSemiring::new(Arc::new(base), small_keys(3)), trials, seed)
            } else {
                axiom_check(&stock_semiring(name).map_err(|_| unknown())?, trials, seed)
            }
        }
    };
    Ok(report)
}

pub fn check(args: &CheckArgs, out: &mut Output) -> Outcome {
    let report = report_for(&args.semiring, args.trials, args.seed)?;
    out.line(&report)?;
    if report.passed() {
        Ok(())
    } else {
        let laws: Vec<String> = report
            .failed_laws()
            .iter()
            .map(|l| serde_json::to_string(l).unwrap_or_default())
            .collect();
        Err(Failure::Verify(format!(
            "{} law violations in {} ({})",
            report.failures.len(),
            report.semiring,
            laws.join(", ")
        )))
    }
}

#[derive(Serialize)]
struct StatsLine<'a> {
    partitions: usize,
    #[serde(flatten)]
    report: &'a TrafficReport,
    agree: bool,
}

pub fn stats(args: &StatsArgs, out: &mut Output) -> Outcome {
    let s = stock_semiring(&args.semiring)?;
    let mode = TrafficMode::parse(&args.mode)?;
    if let Some(name) = &args.strategy {
        let found = Strategy::parse(name)?;
        if found != mode.strategy() {
            return Err(Error::ModeStrategyMismatch {
                mode: mode.label().into(),
                expected: mode.strategy().label().into(),
                found: found.label().into(),
            }
            .into());
        }
    }
    let a = read_array(&args.input, s)?;
    let parts = partition(&a, args.partitions, mode.strategy(), args.seed)?;
    let report = traffic_stats(&parts, mode)?;
    let agree = report.agrees();
    out.line(&StatsLine {
        partitions: args.partitions,
        report: &report,
        agree,
    })?;
    if agree {
        Ok(())
    } else {
        Err(Failure::Verify("combined per-part stats differ from whole-array stats".into()))
    }
}

#[derive(Serialize)]
struct PathsLine<'a> {
    src: &'a Key,
    dst: &'a Key,
    hops: usize,
    weight: Scalar,
    paths: Vec<&'a PathString>,
}

pub fn paths(args: &PathsArgs, out: &mut Output) -> Outcome {
    let edges = read_triples(open(&args.input)?, Scalar::parse).map_err(in_file(&args.input))?;
    let g = GraphArrays::build(Arc::new(StockSemiring::MinPlus), &edges)?;
    let (src, dst) = (Key::parse(&args.src), Key::parse(&args.dst));
    for k in [&src, &dst] {
        if !g.vertices.contains(k) {
            return Err(Error::UnknownVertex(k.clone()).into());
        }
    }
    let b = optimal_nhop_paths(&g, args.hops, DEFAULT_PATH_GUARD)?;
    let best = b.value(&src, &dst);
    out.line(&PathsLine {
        src: &src,
        dst: &dst,
        hops: args.hops,
        weight: best.weight(),
        paths: best.paths().iter().collect(),
    })
}

#[derive(Serialize)]
struct Contributor<'a> {
    key: &'a Key,
    a: Scalar,
    b: Scalar,
    product: Scalar,
}

#[derive(Serialize)]
struct ProvenanceLine<'a> {
    row: &'a Key,
    col: &'a Key,
    value: Scalar,
    contributors: Vec<Contributor<'a>>,
}

#[derive(Serialize)]
struct ProvenanceSummary {
    entries: usize,
    recovered_equals_product: bool,
}

pub fn provenance(args: &ProvenanceArgs, out: &mut Output) -> Outcome {
    let [path_a, path_b] = args.input.as_slice() else {
        return Err(Failure::Input(format!(
            "provenance needs exactly two --input files, got {}",
            args.input.len()
        )));
    };
    let s = stock_semiring(&args.semiring)?;
    let a = read_array(path_a, s)?;
    let b = read_array(path_b, s)?;
    // the inner key set of files without declared keys is every key seen on it
    let inner: Arc<KeySet> = Arc::new(a.col_keys().union(b.row_keys()).cloned().collect());
    let a = a.with_key_sets(Arc::new(a.row_keys().clone()), Arc::clone(&inner))?;
    let b = b.with_key_sets(inner, Arc::new(b.col_keys().clone()))?;

    let c = provenance_product(&a, &b)?;
    let recovered = match recover_product(&c) {
        Ok(r) => r,
        Err(e @ Error::RecoveryMismatch { .. }) => return Err(Failure::Verify(e.to_string())),
        Err(e) => return Err(e.into()),
    };
    for (u, v, set) in c.iter() {
        out.line(&ProvenanceLine {
            row: u,
            col: v,
            value: recovered.value(u, v),
            contributors: set
                .iter()
                .map(|t| Contributor {
                    key: &t.key,
                    a: t.v1,
                    b: t.v2,
                    product: t.v3,
                })
                .collect(),
        })?;
    }
    let ok = recovered == a.array_mul(&b)?;
    out.line(&ProvenanceSummary {
        entries: c.nnz(),
        recovered_equals_product: ok,
    })?;
    if ok {
        Ok(())
    } else {
        Err(Failure::Verify("recovered product differs from the direct product".into()))
    }
}

pub fn stream(args: &StreamArgs, out: &mut Output) -> Outcome {
    let s = stock_semiring(&args.semiring)?;
    let semiring = Arc::new(s);
    let mode = WindowMode::parse(&args.mode)?;
    let config = match mode {
        WindowMode::FixedM => StreamConfig::fixed_m(args.window_m, args.levels),
        WindowMode::FixedT => StreamConfig::fixed_t(args.window_t, args.levels),
    }
    .with_capacity(args.capacity);
    let mut engine = StreamEngine::new(Arc::clone(&semiring), config)?;
    let events = read_events(open(&args.input)?, |t| s.parse_value(t)).map_err(in_file(&args.input))?;

    let mut mismatches = Vec::new();
    let mut emit = |windows: Vec<semiarray::WindowedMatrix<StockSemiring>>, out: &mut Output| -> Outcome {
        for w in windows {
            if args.verify {
                let batch = AssocArray::from_triples(
                    Arc::clone(&semiring),
                    events[w.span.events()]
                        .iter()
                        .map(|e| (e.src.clone(), e.dst.clone(), e.count)),
                )?;
                if batch != *w.matrix {
                    mismatches.push(format!("level {} window {}", w.level, w.index));
                }
            }
            out.line(&w.record())?;
        }
        Ok(())
    };
    for e in &events {
        let done = engine.ingest(e.clone())?;
        emit(done, out)?;
    }
    emit(engine.flush()?, out)?;

    if mismatches.is_empty() {
        Ok(())
    } else {
        Err(Failure::Verify(format!(
            "windows differ from their raw events: {}",
            mismatches.join(", ")
        )))
    }
}

#[derive(Serialize)]
struct BenchRow {
    partitions: usize,
    strategy: Strategy,
    nnz: usize,
    whole_ms: f64,
    partitioned_ms: f64,
    nnz_per_part: Vec<usize>,
    /// Largest part over the mean part size; 1 is perfectly balanced.
    imbalance: f64,
    exact: bool,
}

fn millis(start: Instant) -> f64 {
    start.elapsed().as_secs_f64() * 1e3
}

pub fn bench(args: &BenchArgs, out: &mut Output) -> Outcome {
    let s = stock_semiring(&args.semiring)?;
    let strategy = Strategy::parse(&args.strategy)?;
    let a = read_array(&args.input, s)?;
    let b = a.transpose();
    let c = a.transpose();

    let start = Instant::now();
    let whole = b.array_mul(&a)?.array_mul(&c)?;
    let whole_ms = millis(start);

    let mut inexact = Vec::new();
    for &p in &args.partitions {
        let parts = partition(&a, p, strategy, args.seed)?;
        let start = Instant::now();
        let got = triple_product(&b, &parts, &c)?;
        let partitioned_ms = millis(start);
        let nnz_per_part = parts.nnz_per_part();
        let max = nnz_per_part.iter().copied().max().unwrap_or(0);
        let imbalance = if a.nnz() == 0 {
            1.0
        } else {
            max as f64 * p as f64 / a.nnz() as f64
        };
        let exact = got == whole;
        if !exact {
            inexact.push(p);
        }
        out.line(&BenchRow {
            partitions: p,
            strategy,
            nnz: a.nnz(),
            whole_ms,
            partitioned_ms,
            nnz_per_part,
            imbalance,
            exact,
        })?;
    }
    if inexact.is_empty() {
        Ok(())
    } else {
        Err(Failure::Verify(format!("partitioned product differs for P in {inexact:?}")))
    }
}
