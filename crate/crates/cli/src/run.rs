use std::collections::{BTreeMap, HashMap};
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use krfusion::current::{character_entries, fusion_of_spec, g_decompose, graded_character};
use krfusion::dual::{compute_p, dim_v, DimV};
use krfusion::fermionic::{
    dominance_surjection_exists, fermionic_multiplicity, fermionic_table, KrSpec,
};
use krfusion::liealg::{dominant_gammas, NTuplePartitions, RootVector};
use krfusion::pbw::{multiplicity_upper_bound, UpperBound};
use krfusion::Error;

use crate::cache::{Cache, CacheKey};
use crate::config::{Command, Engine, Job, ScanKind};
use crate::error::{CliError, CliResult};
use crate::report::{Report, Row, ScanSummary};

const CONSTRAINT_NOTE: &str =
    "configurations are constrained by γ = Σ a·m_a^(i)·α_i (simple roots, not fundamental weights)";

/// Runtime switches that are not part of a job description.
#[derive(Debug, Clone, Copy, Default)]
pub struct Options {
    /// Perturbs one engine result; exercises the disagreement path.
    pub inject_disagreement: bool,
}

/// A finished report and whether it records a mathematical failure.
pub struct Outcome {
    pub report: Report,
    pub failed: bool,
}

type Timings = BTreeMap<String, u64>;

fn timed<T>(timings: &mut Timings, name: &str, f: impl FnOnce() -> T) -> T {
    let start = Instant::now();
    let v = f();
    *timings.entry(name.to_string()).or_default() += start.elapsed().as_millis() as u64;
    v
}

fn merge(into: &mut Timings, from: Timings) {
    for (k, v) in from {
        *into.entry(k).or_default() += v;
    }
}

pub fn run(job: &Job, opts: Options) -> CliResult<Outcome> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = job.config.jobs {
        builder = builder.num_threads(n);
    }
    let pool = builder
        .build()
        .map_err(|e| CliError::Failure(format!("thread pool: {e}")))?;
    let cache = Cache::new(job.cache_dir.clone())?;
    let start = Instant::now();
    let mut timings = Timings::new();
    let mut outcome = pool.install(|| match &job.config.command {
        Command::Mult => mult(job, &mut timings),
        Command::FusionChar => fusion_char(job, &mut timings),
        Command::Verify { engines } => verify(job, engines, &cache, opts, &mut timings),
        Command::Scan { kind, max } => scan(job, *kind, *max, &mut timings),
        Command::DualDim => dual_dim(job, &cache, &mut timings),
    })?;
    if job.config.timings {
        timings.insert("total".into(), start.elapsed().as_millis() as u64);
        outcome.report.timings_ms = Some(timings);
    }
    Ok(outcome)
}

fn spec(job: &Job) -> &KrSpec {
    job.spec.as_ref().expect("validated jobs carry a spec")
}

fn gammas(job: &Job) -> Vec<RootVector> {
    match &job.gamma {
        Some(g) => vec![g.clone()],
        None => dominant_gammas(&job.cartan, &spec(job).lambda(job.cartan.rank())),
    }
}

/// Nonzero fermionic multiplicities.
fn mult(job: &Job, timings: &mut Timings) -> CliResult<Outcome> {
    let mut report = Report::new(job.config.clone());
    report.rows = timed(timings, "fermionic", || {
        gammas(job)
            .par_iter()
            .map(|g| {
                Ok(Row {
                    gamma: g.0.clone(),
                    multiplicity: Some(fermionic_multiplicity(&job.cartan, spec(job), g)?),
                    ..Row::default()
                })
            })
            .collect::<CliResult<Vec<_>>>()
    })?;
    report.rows.retain(|r| r.multiplicity != Some(0));
    report.notes.push(CONSTRAINT_NOTE.into());
    Ok(Outcome {
        report,
        failed: false,
    })
}

fn fusion_char(job: &Job, timings: &mut Timings) -> CliResult<Outcome> {
    let mut report = Report::new(job.config.clone());
    let m = timed(timings, "module", || {
        fusion_of_spec(&job.cartan, spec(job), job.points.as_deref())
    })?;
    report.character = Some(character_entries(&graded_character(&m)));
    Ok(Outcome {
        report,
        failed: false,
    })
}

#[derive(Serialize, Deserialize)]
struct ModuleResult {
    multiplicities: Vec<(Vec<i64>, u64)>,
}

/// `g`-decomposition of the fusion product, summed over degrees.
fn module_multiplicities(job: &Job, cache: &Cache) -> CliResult<HashMap<Vec<i64>, u64>> {
    let key = CacheKey {
        engine: "module",
        lie_type: &job.config.lie_type,
        spec: spec(job).to_string(),
        gamma: None,
        parameters: serde_json::Value::Null,
    };
    let r: ModuleResult = cache.get_or_compute(&key, || {
        let m = fusion_of_spec(&job.cartan, spec(job), None)?;
        let mut acc: BTreeMap<Vec<i64>, u64> = BTreeMap::new();
        for ((w, _), k) in g_decompose(&m, &job.cartan)? {
            *acc.entry(w.0).or_default() += k;
        }
        Ok(ModuleResult {
            multiplicities: acc.into_iter().collect(),
        })
    })?;
    Ok(r.multiplicities.into_iter().collect())
}

fn pbw(
    job: &Job,
    cache: &Cache,
    g: &RootVector,
) -> CliResult<std::result::Result<UpperBound, String>> {
    let schedule = job.schedule(g);
    let key = CacheKey {
        engine: "pbw",
        lie_type: &job.config.lie_type,
        spec: spec(job).to_string(),
        gamma: Some(g.0.clone()),
        parameters: serde_json::to_value(schedule).unwrap(),
    };
    cache.get_or_compute(&key, || {
        match multiplicity_upper_bound(&job.cartan, spec(job), g, schedule) {
            Ok(b) => Ok(Ok(b)),
            Err(e @ Error::NotStabilized { .. }) => Ok(Err(e.to_string())),
            Err(e) => Err(e.into()),
        }
    })
}

fn dual(job: &Job, cache: &Cache, g: &RootVector) -> CliResult<std::result::Result<DimV, String>> {
    let key = CacheKey {
        engine: "dual",
        lie_type: &job.config.lie_type,
        spec: spec(job).to_string(),
        gamma: Some(g.0.clone()),
        parameters: serde_json::Value::Null,
    };
    cache.get_or_compute(&key, || match dim_v(&job.cartan, spec(job), g) {
        Ok(d) => Ok(Ok(d)),
        Err(e @ Error::NotStabilized { .. }) => Ok(Err(e.to_string())),
        Err(e) => Err(e.into()),
    })
}

fn verify(
    job: &Job,
    engines: &[Engine],
    cache: &Cache,
    opts: Options,
    timings: &mut Timings,
) -> CliResult<Outcome> {
    let mut report = Report::new(job.config.clone());
    let uses = |e: Engine| engines.contains(&e);
    let lambda = spec(job).lambda(job.cartan.rank());
    let module = if uses(Engine::Module) {
        match timed(timings, "module", || module_multiplicities(job, cache)) {
            Ok(m) => Some(m),
            Err(CliError::Unsupported(msg)) if engines.iter().any(|&e| e != Engine::Module) => {
                report.notes.push(format!("module engine skipped: {msg}"));
                None
            }
            Err(e) => return Err(e),
        }
    } else {
        None
    };
    if uses(Engine::Fermionic) {
        report.notes.push(CONSTRAINT_NOTE.into());
    }
    let results = gammas(job)
        .par_iter()
        .map(|g| {
            let mut t = Timings::new();
            let mut notes = Vec::new();
            let mut row = Row {
                gamma: g.0.clone(),
                ..Row::default()
            };
            if uses(Engine::Fermionic) {
                row.fermionic = Some(timed(&mut t, "fermionic", || {
                    fermionic_multiplicity(&job.cartan, spec(job), g)
                })?);
            }
            if let Some(m) = &module {
                let mu = &lambda - &job.cartan.rootvec_to_weight(g);
                row.module = Some(m.get(&mu.0).copied().unwrap_or(0));
            }
            if uses(Engine::Pbw) {
                match timed(&mut t, "pbw", || pbw(job, cache, g))? {
                    Ok(b) => {
                        row.pbw = Some(b.value);
                        row.pbw_trace = Some(b.trace);
                    }
                    Err(e) => notes.push(format!("pbw, γ = {g}: {e}")),
                }
            }
            if uses(Engine::Dual) {
                match timed(&mut t, "dual", || dual(job, cache, g))? {
                    Ok(d) => {
                        row.dual = Some(d.value);
                        row.dual_trace = Some(d.trace);
                    }
                    Err(e) => notes.push(format!("dual, γ = {g}: {e}")),
                }
            }
            Ok((row, notes, t))
        })
        .collect::<CliResult<Vec<_>>>()?;
    let mut stalled = false;
    for (row, notes, t) in results {
        stalled |= !notes.is_empty();
        report.rows.push(row);
        report.notes.extend(notes);
        merge(timings, t);
    }
    if opts.inject_disagreement {
        if let Some(r) = report.rows.first_mut() {
            let values = [&mut r.fermionic, &mut r.module, &mut r.pbw, &mut r.dual];
            if let Some(x) = values.into_iter().flatten().next() {
                *x += 1;
            }
        }
    }
    for r in &mut report.rows {
        let v = r.values();
        r.agree = Some(v.windows(2).all(|w| w[0] == w[1]));
    }
    let agree = !stalled && report.rows.iter().all(|r| r.agree == Some(true));
    report.agree = Some(agree);
    Ok(Outcome {
        report,
        failed: !agree,
    })
}

fn dual_dim(job: &Job, cache: &Cache, timings: &mut Timings) -> CliResult<Outcome> {
    let mut report = Report::new(job.config.clone());
    let rows = timed(timings, "dual", || {
        gammas(job)
            .par_iter()
            .map(|g| {
                let d = dual(job, cache, g)?.map_err(CliError::Failure)?;
                Ok(Row {
                    gamma: g.0.clone(),
                    dual: Some(d.value),
                    graded: Some(d.by_quotient_degree(g)),
                    dual_trace: Some(d.trace),
                    ..Row::default()
                })
            })
            .collect::<CliResult<Vec<_>>>()
    })?;
    report.rows = rows;
    Ok(Outcome {
        report,
        failed: false,
    })
}

fn scan(job: &Job, kind: ScanKind, max: u32, timings: &mut Timings) -> CliResult<Outcome> {
    let mut report = Report::new(job.config.clone());
    let tuples: Vec<NTuplePartitions> = NTuplePartitions::all_up_to(job.cartan.rank(), max)
        .into_iter()
        .filter(|t| !t.is_empty())
        .collect();
    let summary = timed(timings, "scan", || match kind {
        ScanKind::Pmu => scan_pmu(job, &tuples),
        ScanKind::Dominance => scan_dominance(job, &tuples),
    })?;
    if kind == ScanKind::Dominance {
        report.notes.push(CONSTRAINT_NOTE.into());
    }
    let failed = !summary.violations.is_empty();
    report.scan = Some(summary);
    Ok(Outcome { report, failed })
}

fn scan_pmu(job: &Job, tuples: &[NTuplePartitions]) -> CliResult<ScanSummary> {
    let violations = tuples
        .par_iter()
        .map(|mu| {
            let p = compute_p(&job.cartan, mu)?;
            Ok((p <= -(mu.total() as i64)).then(|| format!("μ = {mu}: P = {p}")))
        })
        .collect::<CliResult<Vec<_>>>()?;
    Ok(ScanSummary {
        checked: tuples.len() as u64,
        violations: violations.into_iter().flatten().collect(),
    })
}

/// For every surjection `W(μ) ↠ W(ν)` predicted by dominance, the
/// multiplicities of `W(μ)` bound those of `W(ν)` from above.
fn scan_dominance(job: &Job, tuples: &[NTuplePartitions]) -> CliResult<ScanSummary> {
    let tables: Vec<BTreeMap<RootVector, u64>> = tuples
        .par_iter()
        .map(|t| {
            let s = KrSpec::from_tuple(t)?;
            Ok(fermionic_table(&job.cartan, &s)?.into_iter().collect())
        })
        .collect::<CliResult<Vec<_>>>()?;
    let pairs: Vec<(usize, usize)> = (0..tuples.len())
        .flat_map(|a| (0..tuples.len()).map(move |b| (a, b)))
        .filter(|&(a, b)| a != b && tuples[a].sizes() == tuples[b].sizes())
        .collect();
    let checked = pairs
        .par_iter()
        .map(|&(a, b)| {
            if !dominance_surjection_exists(&tuples[a], &tuples[b])? {
                return Ok((0, Vec::new()));
            }
            let mut v = Vec::new();
            for (g, &n) in &tables[b] {
                let m = tables[a].get(g).copied().unwrap_or(0);
                if m < n {
                    v.push(format!("{} ↠ {}, γ = {g}: {m} < {n}", tuples[a], tuples[b]));
                }
            }
            Ok((1u64, v))
        })
        .collect::<CliResult<Vec<_>>>()?;
    Ok(ScanSummary {
        checked: checked.iter().map(|c| c.0).sum(),
        violations: checked.into_iter().flat_map(|c| c.1).collect(),
    })
}
