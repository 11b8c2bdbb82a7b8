//! Command implementations behind the `quadweb` binary.

use std::fs;
use std::path::{Path, PathBuf};
use std::thread;
use std::time::{Duration, Instant, SystemTime, UNIX_EPOCH};

use anyhow::{bail, Context, Result};
use quadweb_core::exactnum::PrimeField;
use quadweb_core::groebner::Deadline;
use quadweb_core::webquadrics::numerics::contracted_class_enum;
use quadweb_core::webquadrics::{
    analyze, fiber_type, prime_sequence, random_web, screen, validate_web, AnalysisOptions, Certificate, DerivedMatrices,
    FiberReport, FieldMode, IntegerWeb, Verdict,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

/// Exit status for each overall verdict.
pub fn exit_code(verdict: Verdict) -> i32 {
    match verdict {
        Verdict::Holds => 0,
        Verdict::Fails => 2,
        Verdict::Inconclusive => 3,
    }
}

pub const EXIT_INPUT_ERROR: i32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FieldDirective {
    /// `"auto"` or `"rational"`.
    Named(String),
    Prime { prime: u64 },
}

/// On-disk web: four row-major 8×8 integer matrices plus optional defaults.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WebInputFile {
    pub matrices: Vec<Vec<Vec<i64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<FieldDirective>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

impl WebInputFile {
    pub fn new(web: &IntegerWeb) -> Self {
        let matrices = web.iter().map(|m| m.iter().map(|r| r.to_vec()).collect()).collect();
        WebInputFile { matrices, field: None, seed: None }
    }

    /// Shape check and syntactic symmetry; semantic checks happen in `validate_web`.
    pub fn to_web(&self) -> Result<IntegerWeb> {
        if self.matrices.len() != 4 {
            bail!("expected 4 matrices, found {}", self.matrices.len());
        }
        let mut web = [[[0i64; 8]; 8]; 4];
        for (k, m) in self.matrices.iter().enumerate() {
            if m.len() != 8 {
                bail!("matrix {k}: expected 8 rows, found {}", m.len());
            }
            for (i, row) in m.iter().enumerate() {
                if row.len() != 8 {
                    bail!("matrix {k}, row {i}: expected 8 entries, found {}", row.len());
                }
                web[k][i].copy_from_slice(row);
            }
        }
        validate_web(&quadweb_core::exactnum::RationalField, &web).map_err(|e| anyhow::anyhow!("{e}"))?;
        Ok(web)
    }

    pub fn field_mode(&self) -> Result<Option<FieldMode>> {
        Ok(match &self.field {
            None => None,
            Some(FieldDirective::Named(s)) if s == "auto" => Some(FieldMode::Auto),
            Some(FieldDirective::Named(s)) if s == "rational" => Some(FieldMode::Rational),
            Some(FieldDirective::Named(s)) => bail!("unknown field directive {s:?} (expected \"auto\", \"rational\" or {{\"prime\": p}})"),
            Some(FieldDirective::Prime { prime }) => Some(FieldMode::Prime(*prime)),
        })
    }
}

/// Read and check an input file; parse errors carry line and column.
pub fn read_input(path: &Path) -> Result<WebInputFile> {
    let text = fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    let file: WebInputFile = serde_json::from_str(&text).with_context(|| format!("{}: malformed input", path.display()))?;
    file.to_web().with_context(|| format!("{}: invalid web", path.display()))?;
    file.field_mode().with_context(|| format!("{}: invalid field directive", path.display()))?;
    Ok(file)
}

/// Non-reproducible facts about a run, kept apart from the certificate.
#[derive(Debug, Clone, Serialize)]
pub struct RunInfo {
    pub timestamp_unix: u64,
    pub stage_seconds: std::collections::BTreeMap<String, f64>,
    pub total_seconds: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct CertificateFile {
    #[serde(flatten)]
    pub certificate: Certificate,
    pub run: RunInfo,
}

fn now_unix() -> u64 {
    SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0)
}

pub struct AnalyzeConfig {
    /// Overrides the file's directive when set.
    pub mode: Option<FieldMode>,
    pub seed: Option<u64>,
    pub timeout: Duration,
}

/// Analyze one input file and return the certificate file.
pub fn run_analyze(input: &WebInputFile, cfg: &AnalyzeConfig) -> Result<CertificateFile> {
    let web = input.to_web()?;
    let mode = cfg.mode.or(input.field_mode()?).unwrap_or(FieldMode::Auto);
    let seed = cfg.seed.or(input.seed).unwrap_or(0);
    let opts = AnalysisOptions { mode, seed, timeout: Some(cfg.timeout) };
    let start = Instant::now();
    let analysis = analyze(&web, &opts).map_err(|e| anyhow::anyhow!("analysis failed: {e}"))?;
    Ok(CertificateFile {
        certificate: analysis.certificate,
        run: RunInfo { timestamp_unix: now_unix(), stage_seconds: analysis.timings, total_seconds: start.elapsed().as_secs_f64() },
    })
}

pub fn certificate_json(cert: &CertificateFile) -> Result<String> {
    Ok(serde_json::to_string_pretty(cert)? + "\n")
}

#[derive(Debug, Clone)]
pub struct SearchConfig {
    pub trials: u64,
    pub entry_bound: i64,
    pub seed: u64,
    pub jobs: usize,
    pub out_dir: PathBuf,
    pub timeout: Duration,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TrialOutcome {
    pub trial: u64,
    /// Screen stage that rejected the web, `"analysis"` when the full run
    /// did not hold, `"verify"` when re-analysis disagreed, `None` if found.
    pub rejected_at: Option<String>,
    pub input_file: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchSummary {
    pub trials: u64,
    pub entry_bound: i64,
    pub seed: u64,
    pub found: usize,
    pub rejections: std::collections::BTreeMap<String, usize>,
    pub outcomes: Vec<TrialOutcome>,
}

/// The web sampled at a given trial: independent of the job count.
pub fn sample_web(seed: u64, trial: u64, bound: i64) -> IntegerWeb {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    random_web(&mut rng, bound)
}

/// Random search with the default sampler.
pub fn run_search(cfg: &SearchConfig) -> Result<SearchSummary> {
    run_search_with(cfg, |trial| sample_web(cfg.seed, trial, cfg.entry_bound))
}

/// Random search drawing webs from `sampler`; compliant webs are written to
/// `out_dir` with their certificates, then re-read and re-analyzed.
pub fn run_search_with(cfg: &SearchConfig, sampler: impl Fn(u64) -> IntegerWeb + Sync) -> Result<SearchSummary> {
    if cfg.trials == 0 {
        bail!("--trials must be at least 1");
    }
    fs::create_dir_all(&cfg.out_dir).with_context(|| format!("cannot create {}", cfg.out_dir.display()))?;
    let probe = cfg.out_dir.join(".quadweb-write-test");
    fs::write(&probe, b"").with_context(|| format!("output directory {} is not writable", cfg.out_dir.display()))?;
    let _ = fs::remove_file(&probe);

    let prime = prime_sequence(cfg.seed, 1)[0];
    let jobs = cfg.jobs.max(1);
    let mut outcomes: Vec<Result<TrialOutcome>> = thread::scope(|s| {
        let handles: Vec<_> = (0..jobs)
            .map(|j| {
                let sampler = &sampler;
                s.spawn(move || {
                    (j as u64..cfg.trials).step_by(jobs).map(|t| run_trial(cfg, prime, t, sampler(t))).collect::<Vec<_>>()
                })
            })
            .collect();
        handles.into_iter().flat_map(|h| h.join().expect("search worker")).collect()
    });
    outcomes.sort_by_key(|o| o.as_ref().map(|o| o.trial).unwrap_or(u64::MAX));
    let outcomes = outcomes.into_iter().collect::<Result<Vec<_>>>()?;
    let mut rejections = std::collections::BTreeMap::new();
    for o in &outcomes {
        if let Some(r) = &o.rejected_at {
            *rejections.entry(r.clone()).or_insert(0) += 1;
        }
    }
    let summary = SearchSummary {
        trials: cfg.trials,
        entry_bound: cfg.entry_bound,
        seed: cfg.seed,
        found: outcomes.iter().filter(|o| o.rejected_at.is_none()).count(),
        rejections,
        outcomes,
    };
    fs::write(cfg.out_dir.join("summary.json"), serde_json::to_string_pretty(&summary)? + "\n")?;
    Ok(summary)
}

fn run_trial(cfg: &SearchConfig, prime: u64, trial: u64, web: IntegerWeb) -> Result<TrialOutcome> {
    let reject = |stage: &str| Ok(TrialOutcome { trial, rejected_at: Some(stage.into()), input_file: None });
    let deadline = Deadline::after(cfg.timeout);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ trial.rotate_left(32));
    let screened = screen(&web, prime, &mut rng, &deadline);
    match screened {
        Ok(s) if s.rejected_at.is_some() => return reject(s.rejected_at.as_deref().unwrap_or("screen")),
        Ok(_) => {}
        Err(e) => {
            log::warn!("trial {trial}: screen failed: {e}");
            return reject("screen_error");
        }
    }
    let mut input = WebInputFile::new(&web);
    input.seed = Some(cfg.seed);
    let acfg = AnalyzeConfig { mode: None, seed: Some(cfg.seed), timeout: cfg.timeout };
    let cert = match run_analyze(&input, &acfg) {
        Ok(c) if c.certificate.verdict == Verdict::Holds => c,
        Ok(_) => return reject("analysis"),
        Err(e) => {
            log::warn!("trial {trial}: {e}");
            return reject("analysis");
        }
    };
    let stem = format!("web-{}-seed{}-trial{:06}", cert.run.timestamp_unix, cfg.seed, trial);
    let input_path = cfg.out_dir.join(format!("{stem}.json"));
    let cert_path = cfg.out_dir.join(format!("{stem}.certificate.json"));
    fs::write(&input_path, serde_json::to_string_pretty(&input)? + "\n")?;
    fs::write(&cert_path, certificate_json(&cert)?)?;
    // write-then-verify: the stored input must reproduce the stored certificate
    let reread = read_input(&input_path)?;
    let again = run_analyze(&reread, &acfg);
    if !matches!(&again, Ok(c) if c.certificate == cert.certificate) {
        let _ = fs::remove_file(&input_path);
        let _ = fs::remove_file(&cert_path);
        log::warn!("trial {trial}: re-analysis disagreed with the stored certificate; discarded");
        return reject("verify");
    }
    Ok(TrialOutcome { trial, rejected_at: None, input_file: Some(input_path.display().to_string()) })
}

/// Fiber type over an integer point y, computed at the file's first prime.
pub fn run_fiber(input: &WebInputFile, y: &[i64]) -> Result<(u64, std::result::Result<FiberReport, String>)> {
    if y.len() != 4 {
        bail!("--y needs four integers, got {}", y.len());
    }
    if y.iter().all(|&c| c == 0) {
        bail!("--y must not be the zero vector");
    }
    let web = input.to_web()?;
    let seed = input.seed.unwrap_or(0);
    let prime = match input.field_mode()? {
        Some(FieldMode::Prime(p)) => p,
        _ => prime_sequence(seed, 1)[0],
    };
    let field = PrimeField::new(prime).map_err(|e| anyhow::anyhow!("{e}"))?;
    let w = validate_web(&field, &web).map_err(|e| anyhow::anyhow!("web degenerates modulo {prime}: {e}"))?;
    let d = DerivedMatrices::new(&w);
    let yy: Vec<u64> = y.iter().map(|&c| quadweb_core::exactnum::Field::from_i64(&field, c)).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok((prime, fiber_type(&w, &d, &yy, &mut rng).map_err(|e| e.to_string())))
}

/// One line per fiber report.
pub fn describe_fiber(r: &FiberReport) -> String {
    let mut s = format!(
        "type {} (rank Q = {}, rank B = {}): {}",
        r.fiber_type.letter(),
        r.rank_q,
        r.rank_b,
        r.description
    );
    if let Some(c) = &r.plane_cubic {
        let degrees: Vec<String> = c.factor_degrees.iter().map(|d| d.to_string()).collect();
        s += &format!("; cubic span {}, factor degrees [{}]", c.span_dimension, degrees.join(", "));
    }
    s
}

/// The contracted-class table as text; identical on every call.
pub fn contracted_table() -> String {
    let mut out = String::from("case  d  multiplicities          Σn  class\n");
    for c in contracted_class_enum() {
        let m: Vec<String> = c.multiplicities.iter().map(|x| x.to_string()).collect();
        out += &format!("({})   {}  {:<22}  {}   {}\n", c.case, c.d, format!("({})", m.join(",")), c.sum_n, c.class);
        if let Some(a) = &c.annotation {
            out += &format!("        note: {a}\n");
        }
    }
    out
}
