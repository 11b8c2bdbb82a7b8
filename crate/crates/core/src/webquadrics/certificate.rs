//! The full analysis of one web, assembled into a serializable certificate.
//!
//! Every modular computation runs at two independent 62-bit primes. Results
//! are compared through a prime-independent fingerprint; on disagreement a
//! third prime decides by majority and the certificate carries a warning.

use std::collections::BTreeMap;
use std::thread;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::discriminant::normalized_point;
use super::numerics::{self, Constants, ContractedClass, EulerBudget, CONSTANTS, H1S1_TABLE, HS_TABLE};
use super::*;
use crate::exactnum::{random_prime, Field, PrimeField, RationalField};
use crate::groebner::{Deadline, GroebnerError};

pub const SCHEMA_VERSION: u32 = 1;
pub const DEFAULT_TIMEOUT: Duration = Duration::from_secs(600);

/// Coefficient field of the analysis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldMode {
    /// Two seeded random 62-bit primes with the agreement policy.
    Auto,
    /// One given prime, no cross-check.
    Prime(u64),
    /// Auto, plus the on-plane checks repeated over the rationals.
    Rational,
}

#[derive(Debug, Clone)]
pub struct AnalysisOptions {
    pub mode: FieldMode,
    pub seed: u64,
    pub timeout: Option<Duration>,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        AnalysisOptions { mode: FieldMode::Auto, seed: 0, timeout: Some(DEFAULT_TIMEOUT) }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "status")]
pub enum Agreement {
    /// Only one prime was requested.
    Single,
    /// Both primes produced the same fingerprint.
    Agreed,
    /// Two of three primes agreed; the dissenting prime is listed.
    Majority { dissenting: Vec<u64> },
    /// No two primes agreed; the verdict is downgraded to inconclusive.
    Disagreed,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FieldReport {
    pub mode: String,
    /// Every prime used, in order of use.
    pub primes: Vec<u64>,
    /// The prime whose detailed results are reported below.
    pub reported_prime: u64,
    pub agreement: Agreement,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NodesCheck {
    pub holds: bool,
    /// Length of the Jacobian-minor scheme on the plane.
    pub length: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AssumptionVerdicts {
    pub a1: A1Verdict,
    pub nodes_on_plane: Option<NodesCheck>,
    pub a2: A2Verdict,
    pub a3: A3Verdict,
    pub a4: A4Verdict,
}

impl AssumptionVerdicts {
    /// Fails if any assumption fails, else inconclusive if any is, else holds.
    pub fn overall(&self) -> Verdict {
        let all = [self.a1.status, self.a2.status, self.a3.status, self.a4.status];
        if all.contains(&Verdict::Fails) {
            Verdict::Fails
        } else if all.contains(&Verdict::Inconclusive) {
            Verdict::Inconclusive
        } else {
            Verdict::Holds
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FiberSample {
    /// Point of P3, first nonzero coordinate 1, entries in the field of definition.
    pub y: Vec<String>,
    /// Number of conjugate points sharing this description.
    pub orbit_size: usize,
    pub source: String,
    pub report: Option<FiberReport>,
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IntersectionCheck {
    pub name: String,
    pub table: [i64; 4],
    pub combo: (i64, i64),
    pub value: i64,
    pub expected: i64,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RationalChecks {
    pub on_plane_count: Option<usize>,
    pub on_plane_length: Option<usize>,
    pub nodes_length: Option<usize>,
    pub agrees_with_modular: bool,
    pub note: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub schema_version: u32,
    pub tool_version: String,
    pub web: IntegerWeb,
    pub field: FieldReport,
    pub identities: IdentityReport,
    pub assumptions: AssumptionVerdicts,
    pub quintic: QuinticSummary,
    pub bordiga: Option<BordigaSummary>,
    pub rank2_locus: Option<Rank2Summary>,
    pub discriminant: Option<DiscriminantReport>,
    pub fibers: Vec<FiberSample>,
    /// Points of P3 whose fiber is of type a.
    pub type_a_fibers: usize,
    pub euler: EulerBudget,
    pub constants: Constants,
    pub intersection_numbers: Vec<IntersectionCheck>,
    pub contracted_classes: Vec<ContractedClass>,
    pub rational: Option<RationalChecks>,
    pub warnings: Vec<String>,
    pub notes: Vec<String>,
    pub verdict: Verdict,
    pub summary: String,
}

/// A certificate together with the per-stage wall times that produced it.
#[derive(Debug, Clone)]
pub struct Analysis {
    pub certificate: Certificate,
    /// Seconds per stage, keyed `p<index>.<stage>`.
    pub timings: BTreeMap<String, f64>,
}

/// Results of the pipeline at one prime.
#[derive(Debug, Clone)]
struct PrimeRun {
    prime: u64,
    identities: IdentityReport,
    assumptions: AssumptionVerdicts,
    quintic: QuinticSummary,
    bordiga: Option<BordigaSummary>,
    rank2: Option<Rank2Summary>,
    discriminant: Option<DiscriminantReport>,
    fibers: Vec<FiberSample>,
    notes: Vec<String>,
    timings: Vec<(String, f64)>,
}

/// Everything in a run that should not depend on the prime.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Fingerprint {
    identities: IdentityReport,
    a1: (Verdict, Option<usize>, Option<usize>, i64),
    nodes: Option<usize>,
    a2: (Verdict, Option<usize>, Option<Vec<i64>>),
    a3: (Verdict, Option<usize>, Option<usize>),
    a4: (Verdict, i64),
    quintic_terms: usize,
    bordiga: Option<(i64, i64, bool, bool)>,
    rank2: Option<Rank2Summary>,
    discriminant: Option<(usize, usize, Vec<(usize, usize)>, Vec<(SingularityLabel, usize)>, usize)>,
    fibers: Vec<(Option<char>, usize)>,
}

impl PrimeRun {
    fn fingerprint(&self) -> Fingerprint {
        let a = &self.assumptions;
        Fingerprint {
            identities: self.identities,
            a1: (a.a1.status, a.a1.on_plane_count, a.a1.on_plane_length, a.a1.on_plane_dimension),
            nodes: a.nodes_on_plane.as_ref().map(|n| n.length),
            a2: (a.a2.status, a.a2.bad_line_count, a.a2.witness.as_ref().and_then(|w| w.integer_form.clone())),
            a3: (a.a3.status, a.a3.count, a.a3.length),
            a4: (a.a4.status, a.a4.singular_dimension),
            quintic_terms: self.quintic.terms,
            bordiga: self.bordiga.as_ref().map(|b| (b.projective_dimension, b.degree, b.smooth, b.quintic_member)),
            rank2: self.rank2.clone(),
            discriminant: self.discriminant.as_ref().map(|r| {
                (r.singular_points, r.tjurina_length, r.tjurina_profile.clone(), r.label_counts.clone(), r.budget.sum_tau_plus_one)
            }),
            // orbits depend on the prime; count type-a points instead
            fibers: {
                let mut counts = BTreeMap::new();
                for f in self.fibers.iter().filter(|f| f.source == RANK_TWO_SOURCE) {
                    *counts.entry(f.report.as_ref().map(|r| r.fiber_type.letter())).or_insert(0) += f.orbit_size;
                }
                counts.into_iter().collect()
            },
        }
    }
}

const RANK_TWO_SOURCE: &str = "rank_two_member";
const RANDOM_SOURCE: &str = "random_point";

/// Seeded generator for one stage at one prime.
fn stage_rng(seed: u64, prime_index: usize, stage: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(((prime_index as u64) << 8) | stage);
    rng
}

/// The i-th prime of the sequence determined by `seed`.
pub fn prime_sequence(seed: u64, count: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(count);
    let mut k = 0u64;
    while out.len() < count {
        let p = random_prime(62, seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(k)).expect("62 bits is a valid size");
        if !out.contains(&p) {
            out.push(p);
        }
        k += 1;
    }
    out
}

fn timed<T>(timings: &mut Vec<(String, f64)>, name: &str, f: impl FnOnce() -> T) -> T {
    let start = Instant::now();
    let out = f();
    timings.push((name.to_string(), start.elapsed().as_secs_f64()));
    out
}

fn inconclusive_a2(reason: String) -> A2Verdict {
    A2Verdict { status: Verdict::Inconclusive, reason: Some(reason), bad_line_count: None, witness: None }
}

/// Stages A1, nodes and A2, which share the on-plane scheme.
fn plane_stages(
    d: &DerivedMatrices<PrimeField>,
    seed: u64,
    idx: usize,
    deadline: &Deadline,
    t: &mut Vec<(String, f64)>,
) -> Result<(A1Verdict, Option<NodesCheck>, A2Verdict), AnalysisError> {
    let mut rng = stage_rng(seed, idx, 1);
    let on_plane = timed(t, "sing_on_plane", || sing_on_plane(d, &mut rng, deadline));
    if let Err(GroebnerError::Timeout) = on_plane {
        let a1 = A1Verdict {
            status: Verdict::Inconclusive,
            on_plane_count: None,
            on_plane_length: None,
            on_plane_dimension: -1,
            off_plane: OffPlane::NotChecked,
        };
        return Ok((a1, None, inconclusive_a2("on-plane singular locus timed out".into())));
    }
    let a1 = timed(t, "a1", || check_a1(d, &on_plane, deadline))?;
    let nodes = if a1.on_plane_count == Some(ON_PLANE_POINTS) {
        match timed(t, "nodes_on_plane", || check_nodes_on_plane(d, &mut rng, deadline)) {
            Ok((holds, length)) => Some(NodesCheck { holds, length }),
            Err(AnalysisError::Groebner(GroebnerError::Timeout)) => None,
            Err(AnalysisError::Groebner(GroebnerError::PositiveDimensional(_))) => Some(NodesCheck { holds: false, length: 0 }),
            Err(e) => return Err(e),
        }
    } else {
        None
    };
    let a2 = match &on_plane {
        Ok(scheme) => match timed(t, "a2", || check_a2(d, scheme, &mut rng, deadline)) {
            Ok(v) => v,
            Err(AnalysisError::Groebner(GroebnerError::Timeout)) => inconclusive_a2("line search timed out".into()),
            Err(e) => return Err(e),
        },
        Err(_) => inconclusive_a2("the on-plane singular locus is not finite".into()),
    };
    Ok((a1, nodes, a2))
}

fn a3_stage(d: &DerivedMatrices<PrimeField>, seed: u64, idx: usize, deadline: &Deadline, t: &mut Vec<(String, f64)>) -> Result<A3Verdict, AnalysisError> {
    let mut rng = stage_rng(seed, idx, 2);
    match timed(t, "a3", || check_a3(d, &mut rng, deadline)) {
        Ok((v, _)) => Ok(v),
        Err(AnalysisError::Groebner(GroebnerError::Timeout)) => {
            Ok(A3Verdict { status: Verdict::Inconclusive, count: None, length: None, dimension: -1 })
        }
        Err(e) => Err(e),
    }
}

struct SurfaceStages {
    quintic: QuinticSummary,
    bordiga: Option<BordigaSummary>,
    rank2: Option<Rank2Summary>,
    fibers: Vec<FiberSample>,
    notes: Vec<String>,
}

fn surface_stages(
    web: &Web<PrimeField>,
    d: &DerivedMatrices<PrimeField>,
    seed: u64,
    idx: usize,
    deadline: &Deadline,
    t: &mut Vec<(String, f64)>,
) -> Result<SurfaceStages, AnalysisError> {
    let mut rng = stage_rng(seed, idx, 3);
    let mut notes = Vec::new();
    let q = timed(t, "quintic", || quintic(d))?;
    let bordiga = match timed(t, "bordiga", || bordiga(d, &q.poly, &mut rng, deadline)) {
        Ok(b) => Some(b),
        Err(AnalysisError::Groebner(GroebnerError::Timeout)) => {
            notes.push("Bordiga summary timed out".into());
            None
        }
        Err(e) => return Err(e),
    };
    let mut fibers = Vec::new();
    let rank2 = match timed(t, "rank2_locus", || rank2_locus(d, &mut rng, deadline)) {
        Ok((summary, scheme)) => {
            if let Some(orbits) = scheme.as_ref().and_then(|s| s.orbits(&mut rng)) {
                for o in orbits {
                    let k = &o.field;
                    let result = fiber_type_in(web, d, k, |c| k.embed(*c), &o.coords, &mut rng);
                    fibers.push(sample(normalized_point(k, &o.coords), o.size, RANK_TWO_SOURCE, result));
                }
            }
            Some(summary)
        }
        Err(AnalysisError::Groebner(GroebnerError::Timeout)) => {
            notes.push("rank-two locus timed out".into());
            None
        }
        Err(e) => return Err(e),
    };
    let f = web.field();
    let y: Vec<u64> = (0..4).map(|_| f.sample(&mut rng)).collect();
    let result = fiber_type(web, d, &y, &mut rng);
    fibers.push(sample(y.iter().map(|c| f.format_elem(c)).collect(), 1, RANDOM_SOURCE, result));
    Ok(SurfaceStages { quintic: q.summary(), bordiga, rank2, fibers, notes })
}

fn sample(y: Vec<String>, orbit_size: usize, source: &str, result: Result<FiberReport, AnalysisError>) -> FiberSample {
    let (report, error) = match result {
        Ok(r) => (Some(r), None),
        Err(e) => (None, Some(e.to_string())),
    };
    FiberSample { y, orbit_size, source: source.into(), report, error }
}

fn discriminant_stages(
    web: &Web<PrimeField>,
    d: &DerivedMatrices<PrimeField>,
    seed: u64,
    idx: usize,
    deadline: &Deadline,
    t: &mut Vec<(String, f64)>,
) -> Result<(A4Verdict, Option<DiscriminantReport>, Vec<String>), AnalysisError> {
    let mut rng = stage_rng(seed, idx, 4);
    let mut notes = Vec::new();
    let s8 = match timed(t, "discriminant", || discriminant(web, d)) {
        Ok(s) => s,
        Err(AnalysisError::Degenerate(msg)) => {
            notes.push(msg);
            return Ok((A4Verdict { status: Verdict::Fails, singular_dimension: 2 }, None, notes));
        }
        Err(e) => return Err(e),
    };
    let a4 = match timed(t, "a4", || check_a4(&s8, deadline)) {
        Ok(v) => v,
        Err(AnalysisError::Groebner(GroebnerError::Timeout)) => {
            notes.push("singular locus of the discriminant timed out".into());
            return Ok((A4Verdict { status: Verdict::Inconclusive, singular_dimension: -1 }, None, notes));
        }
        Err(e) => return Err(e),
    };
    if a4.status != Verdict::Holds {
        return Ok((a4, None, notes));
    }
    let report = match timed(t, "classification", || classify_discriminant(web, d, &s8, &mut rng, deadline)) {
        Ok(r) => Some(r),
        Err(AnalysisError::Groebner(GroebnerError::Timeout)) => {
            notes.push("discriminant classification timed out".into());
            None
        }
        Err(AnalysisError::Inconsistent(msg)) => {
            notes.push(format!("discriminant classification inconsistent ({msg}); bad prime suspected"));
            None
        }
        Err(e) => return Err(e),
    };
    Ok((a4, report, notes))
}

/// The modular pipeline at one prime, four stage groups in parallel.
fn run_at_prime(ints: &IntegerWeb, prime: u64, idx: usize, seed: u64, deadline: &Deadline) -> Result<PrimeRun, AnalysisError> {
    let field = PrimeField::new(prime).map_err(|e| AnalysisError::Groebner(e.into()))?;
    let web = validate_web(&field, ints).map_err(|e| AnalysisError::Inconsistent(format!("web degenerates modulo {prime}: {e}")))?;
    let d = DerivedMatrices::new(&web);
    let identities = d.identities();
    let (plane, a3, surfaces, disc) = thread::scope(|s| {
        let plane = s.spawn(|| {
            let mut t = Vec::new();
            (plane_stages(&d, seed, idx, deadline, &mut t), t)
        });
        let a3 = s.spawn(|| {
            let mut t = Vec::new();
            (a3_stage(&d, seed, idx, deadline, &mut t), t)
        });
        let surfaces = s.spawn(|| {
            let mut t = Vec::new();
            (surface_stages(&web, &d, seed, idx, deadline, &mut t), t)
        });
        let disc = s.spawn(|| {
            let mut t = Vec::new();
            (discriminant_stages(&web, &d, seed, idx, deadline, &mut t), t)
        });
        (plane.join().expect("plane stages"), a3.join().expect("a3 stage"), surfaces.join().expect("surface stages"), disc.join().expect("discriminant stages"))
    });
    let mut timings = Vec::new();
    timings.extend(plane.1);
    timings.extend(a3.1);
    timings.extend(surfaces.1);
    timings.extend(disc.1);
    let (a1, nodes_on_plane, a2) = plane.0?;
    let a3 = a3.0?;
    let surfaces = surfaces.0?;
    let (a4, discriminant, disc_notes) = disc.0?;
    let mut notes = surfaces.notes;
    notes.extend(disc_notes);
    Ok(PrimeRun {
        prime,
        identities,
        assumptions: AssumptionVerdicts { a1, nodes_on_plane, a2, a3, a4 },
        quintic: surfaces.quintic,
        bordiga: surfaces.bordiga,
        rank2: surfaces.rank2,
        discriminant,
        fibers: surfaces.fibers,
        notes,
        timings,
    })
}

/// The on-plane checks over ℚ.
fn rational_checks(ints: &IntegerWeb, seed: u64, deadline: &Deadline, modular: &AssumptionVerdicts) -> Result<RationalChecks, AnalysisError> {
    let web = validate_web(&RationalField, ints)?;
    let d = DerivedMatrices::new(&web);
    let mut rng = stage_rng(seed, 255, 5);
    let (count, length) = match sing_on_plane(&d, &mut rng, deadline) {
        Ok(s) => (Some(s.point_count()), Some(s.length())),
        Err(GroebnerError::PositiveDimensional(_)) | Err(GroebnerError::Timeout) => (None, None),
        Err(e) => return Err(e.into()),
    };
    let nodes_length = if count == Some(ON_PLANE_POINTS) {
        match check_nodes_on_plane(&d, &mut rng, deadline) {
            Ok((_, len)) => Some(len),
            Err(AnalysisError::Groebner(GroebnerError::Timeout | GroebnerError::PositiveDimensional(_))) => None,
            Err(e) => return Err(e),
        }
    } else {
        None
    };
    let agrees = count == modular.a1.on_plane_count
        && length == modular.a1.on_plane_length
        && nodes_length == modular.nodes_on_plane.as_ref().map(|n| n.length);
    Ok(RationalChecks {
        on_plane_count: count,
        on_plane_length: length,
        nodes_length,
        agrees_with_modular: agrees,
        note: "on-plane singular locus and node check computed over ℚ; all other stages are modular".into(),
    })
}

fn intersection_checks() -> Vec<IntersectionCheck> {
    let check = |name: &str, table: [i64; 4], combo: (i64, i64), expected: i64| {
        let value = numerics::intersection_numbers(table, combo);
        IntersectionCheck { name: name.into(), table, combo, value, expected, holds: value == expected }
    };
    vec![
        check("(H−S)³", HS_TABLE, (1, -1), 5),
        check("H³", HS_TABLE, (1, 0), 16),
        check("H₁³", H1S1_TABLE, (1, 0), 5),
        check("(3H₁−S₁)³", H1S1_TABLE, (3, -1), 2),
    ]
}

/// Pick the reported run: two agreeing primes, else a 2-of-3 majority.
fn reconcile(
    ints: &IntegerWeb,
    primes: &mut Vec<u64>,
    seed: u64,
    deadline: &Deadline,
    mut runs: Vec<Result<PrimeRun, AnalysisError>>,
    warnings: &mut Vec<String>,
) -> Result<(PrimeRun, Agreement), AnalysisError> {
    let same = |a: &Result<PrimeRun, AnalysisError>, b: &Result<PrimeRun, AnalysisError>| match (a, b) {
        (Ok(x), Ok(y)) => x.fingerprint() == y.fingerprint(),
        _ => false,
    };
    if same(&runs[0], &runs[1]) {
        return Ok((runs.swap_remove(0).expect("checked"), Agreement::Agreed));
    }
    for (p, r) in primes.iter().zip(&runs) {
        if let Err(e) = r {
            warnings.push(format!("prime {p} failed: {e}"));
        }
    }
    warnings.push(format!("primes {} and {} disagree; consulting a third prime", primes[0], primes[1]));
    let third = prime_sequence(seed, 3)[2];
    primes.push(third);
    runs.push(run_at_prime(ints, third, 2, seed, deadline));
    if let Err(e) = &runs[2] {
        warnings.push(format!("prime {third} failed: {e}"));
    }
    for (i, j) in [(0, 2), (1, 2)] {
        if same(&runs[i], &runs[j]) {
            let dissenting = vec![primes[1 - i]];
            warnings.push(format!("majority of primes {} and {} reported", primes[i], primes[j]));
            return Ok((runs.swap_remove(i).expect("checked"), Agreement::Majority { dissenting }));
        }
    }
    warnings.push("no two primes agree; verdict downgraded to inconclusive".into());
    let first_ok = runs.into_iter().find_map(Result::ok);
    match first_ok {
        Some(r) => Ok((r, Agreement::Disagreed)),
        None => Err(AnalysisError::Inconsistent("the analysis failed at every prime".into())),
    }
}

/// Run the whole pipeline and assemble the certificate.
pub fn analyze(ints: &IntegerWeb, opts: &AnalysisOptions) -> Result<Analysis, AnalysisError> {
    validate_web(&RationalField, ints)?;
    let deadline = opts.timeout.map(Deadline::after).unwrap_or_else(Deadline::never);
    let seed = opts.seed;
    let mut warnings = Vec::new();
    let (mut primes, mode) = match opts.mode {
        FieldMode::Prime(p) => (vec![p], "prime"),
        FieldMode::Auto => (prime_sequence(seed, 2), "prime_auto"),
        FieldMode::Rational => (prime_sequence(seed, 2), "rational"),
    };
    let (run, agreement, all_timings) = if primes.len() == 1 {
        let run = run_at_prime(ints, primes[0], 0, seed, &deadline)?;
        let t = run.timings.clone();
        (run, Agreement::Single, vec![(0, t)])
    } else {
        let runs: Vec<Result<PrimeRun, AnalysisError>> = thread::scope(|s| {
            let handles: Vec<_> = primes.iter().enumerate().map(|(i, &p)| s.spawn(move || run_at_prime(ints, p, i, seed, &deadline))).collect();
            handles.into_iter().map(|h| h.join().expect("prime run")).collect()
        });
        let timings: Vec<(usize, Vec<(String, f64)>)> =
            runs.iter().enumerate().filter_map(|(i, r)| r.as_ref().ok().map(|r| (i, r.timings.clone()))).collect();
        let (run, agreement) = reconcile(ints, &mut primes, seed, &deadline, runs, &mut warnings)?;
        (run, agreement, timings)
    };
    let mut timings = BTreeMap::new();
    for (i, t) in all_timings {
        for (name, secs) in t {
            timings.insert(format!("p{i}.{name}"), secs);
        }
    }

    let rational = if opts.mode == FieldMode::Rational {
        let start = Instant::now();
        let r = rational_checks(ints, seed, &deadline, &run.assumptions)?;
        timings.insert("rational.on_plane".into(), start.elapsed().as_secs_f64());
        if !r.agrees_with_modular {
            warnings.push("rational on-plane counts differ from the modular ones".into());
        }
        Some(r)
    } else {
        None
    };

    let type_a_fibers = run
        .fibers
        .iter()
        .filter(|f| f.report.as_ref().is_some_and(|r| r.fiber_type == FiberType::A))
        .map(|f| f.orbit_size)
        .sum();
    let mut verdict = run.assumptions.overall();
    if agreement == Agreement::Disagreed && verdict == Verdict::Holds {
        verdict = Verdict::Inconclusive;
    }
    let summary = summary_line(&run, verdict);
    let certificate = Certificate {
        schema_version: SCHEMA_VERSION,
        tool_version: env!("CARGO_PKG_VERSION").into(),
        web: *ints,
        field: FieldReport { mode: mode.into(), primes: primes.clone(), reported_prime: run.prime, agreement },
        identities: run.identities,
        assumptions: run.assumptions.clone(),
        quintic: run.quintic.clone(),
        bordiga: run.bordiga.clone(),
        rank2_locus: run.rank2.clone(),
        discriminant: run.discriminant.clone(),
        fibers: run.fibers.clone(),
        type_a_fibers,
        euler: numerics::euler_budget(QUINTIC_NODES, QUINTIC_NODES),
        constants: CONSTANTS,
        intersection_numbers: intersection_checks(),
        contracted_classes: numerics::contracted_class_enum(),
        rational,
        warnings,
        notes: run.notes.clone(),
        verdict,
        summary,
    };
    Ok(Analysis { certificate, timings })
}

fn summary_line(run: &PrimeRun, verdict: Verdict) -> String {
    let a = &run.assumptions;
    let show = |v: Verdict| match v {
        Verdict::Holds => "holds",
        Verdict::Fails => "fails",
        Verdict::Inconclusive => "inconclusive",
    };
    let mut s = format!(
        "a1 {} (on-plane {}), a2 {}, a3 {} ({} nodes), a4 {}",
        show(a.a1.status),
        a.a1.on_plane_count.map_or("∞".into(), |c| c.to_string()),
        show(a.a2.status),
        show(a.a3.status),
        a.a3.count.map_or("∞".into(), |c| c.to_string()),
        show(a.a4.status),
    );
    if let Some(r) = &run.discriminant {
        s += &format!("; discriminant: {} singular points, Σ(τ+1) = {}", r.singular_points, r.budget.sum_tau_plus_one);
    }
    s += &format!("; overall {}", show(verdict));
    s
}

/// Outcome of the cheap compliance screen used by the random search.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Screen {
    /// First check that failed, or `None` if every check passed.
    pub rejected_at: Option<String>,
}

/// Check, in increasing cost order, that the web has ten reduced on-plane
/// singular points, no four of them collinear, 46 quintic nodes and an
/// octic with isolated singularities. Off-plane smoothness is left to the
/// full analysis.
pub fn screen<R: Rng + ?Sized>(ints: &IntegerWeb, prime: u64, rng: &mut R, deadline: &Deadline) -> Result<Screen, AnalysisError> {
    let reject = |s: &str| Ok(Screen { rejected_at: Some(s.into()) });
    let field = PrimeField::new(prime).map_err(|e| AnalysisError::Groebner(e.into()))?;
    let web = match validate_web(&field, ints) {
        Ok(w) => w,
        Err(_) => return reject("validate"),
    };
    let d = DerivedMatrices::new(&web);
    let on_plane = match sing_on_plane(&d, rng, deadline) {
        Ok(s) if s.point_count() == ON_PLANE_POINTS && s.is_reduced() => s,
        Ok(_) | Err(GroebnerError::PositiveDimensional(_)) => return reject("on_plane"),
        Err(e) => return Err(e.into()),
    };
    if check_a2(&d, &on_plane, rng, deadline)?.status != Verdict::Holds {
        return reject("a2");
    }
    if check_a3(&d, rng, deadline)?.0.status != Verdict::Holds {
        return reject("a3");
    }
    let s8 = match discriminant(&web, &d) {
        Ok(s) => s,
        Err(AnalysisError::Degenerate(_)) => return reject("a4"),
        Err(e) => return Err(e),
    };
    if check_a4(&s8, deadline)?.status != Verdict::Holds {
        return reject("a4");
    }
    Ok(Screen { rejected_at: None })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::webquadrics::fixtures::{COLLINEAR_QUADRUPLE_WEB, RANK_FIVE_WEB};

    #[test]
    fn prime_sequence_is_deterministic_and_distinct() {
        let a = prime_sequence(7, 3);
        assert_eq!(a, prime_sequence(7, 3));
        assert_eq!(a[..2], prime_sequence(7, 2)[..]);
        assert!(a[0] != a[1] && a[1] != a[2] && a[0] != a[2]);
        assert!(a.iter().all(|p| *p >= 1 << 61));
    }

    #[test]
    fn rank_five_certificate() {
        let a = analyze(&RANK_FIVE_WEB, &AnalysisOptions { seed: 3, ..Default::default() }).unwrap();
        let c = &a.certificate;
        assert_eq!(c.field.agreement, Agreement::Agreed);
        assert_eq!(c.verdict, Verdict::Holds);
        assert_eq!(c.assumptions.a3.count, Some(46));
        assert_eq!(c.type_a_fibers, 10);
        assert!(c.fibers.iter().all(|f| f.error.is_none()));
        let random = c.fibers.iter().find(|f| f.source == RANDOM_SOURCE).unwrap();
        assert_eq!(random.report.as_ref().unwrap().fiber_type, FiberType::D);
        assert_eq!(c.discriminant.as_ref().unwrap().budget.sum_tau_plus_one, 187);
        assert!(c.euler.holds && c.intersection_numbers.iter().all(|i| i.holds));
        assert_eq!(c.contracted_classes.len(), 4);
    }

    #[test]
    fn collinear_certificate_fails_a2() {
        let a = analyze(&COLLINEAR_QUADRUPLE_WEB, &AnalysisOptions { seed: 4, ..Default::default() }).unwrap();
        assert_eq!(a.certificate.verdict, Verdict::Fails);
        assert_eq!(a.certificate.assumptions.a2.status, Verdict::Fails);
    }

    #[test]
    fn certificate_is_reproducible() {
        let opts = AnalysisOptions { seed: 11, ..Default::default() };
        let a = analyze(&RANK_FIVE_WEB, &opts).unwrap().certificate;
        let b = analyze(&RANK_FIVE_WEB, &opts).unwrap().certificate;
        assert_eq!(a, b);
    }

    #[test]
    fn screen_accepts_rank_five_fixture() {
        let p = prime_sequence(1, 1)[0];
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        assert_eq!(screen(&RANK_FIVE_WEB, p, &mut rng, &Deadline::never()).unwrap().rejected_at, None);
        assert_eq!(screen(&COLLINEAR_QUADRUPLE_WEB, p, &mut rng, &Deadline::never()).unwrap().rejected_at.as_deref(), Some("a2"));
    }
}
