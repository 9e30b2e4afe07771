//! Named verification suites and their JSON reports.
//!
//! Every check carries the measured and expected values, so its status can be
//! recomputed from the report alone.

use std::collections::BTreeMap;
use std::f64::consts::TAU;
use std::time::Instant;

use num_traits::ToPrimitive;
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::cqs::{self, CqsError};
use crate::lattice;
use crate::lg::branch::{
    branch_points, full_monodromy, outer_radius_check, radial_collision, sector_monodromy, MonodromyRegime,
};
use crate::lg::critical::{critical_set, real_type_i_value};
use crate::lg::track::{arc, track_roots, RootTrajectory, TrackOptions};
use crate::lg::{self, newton_polygon_count, palais_smale_sample, sturm_real_roots, LGSpec, LgError, C};
use crate::mutation::{self, MutationError};
use crate::quiver::{self, QuiverError};

pub const SUITES: [&str; 12] = [
    "cqs",
    "gram",
    "braid",
    "quiver",
    "normalize",
    "critical",
    "branch",
    "monodromy",
    "sturm",
    "palais-smale",
    "pick",
    "all",
];

#[derive(Debug, Error)]
pub enum ReportError {
    #[error("unknown suite `{0}` (expected one of {list})", list = SUITES.join(", "))]
    UnknownSuite(String),
    #[error("invalid parameter: {0}")]
    InvalidParams(String),
    #[error("{context}: {source}")]
    Lg {
        context: String,
        #[source]
        source: LgError,
    },
    #[error("{context}: {message}")]
    Module { context: String, message: String },
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
}

impl ReportError {
    /// 2 for usage errors, 3 for numerical non-convergence, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::UnknownSuite(_) | Self::InvalidParams(_) => 2,
            Self::Lg { source, .. } => match source {
                LgError::Invalid(_) | LgError::DoubleRoot => 2,
                LgError::NonConvergence { .. } | LgError::Ambiguous { .. } => 3,
                _ => 1,
            },
            Self::Module { .. } | Self::Io(_) => 1,
        }
    }
}

trait Context<T> {
    fn ctx(self, context: &str) -> Result<T, ReportError>;
}

impl<T> Context<T> for Result<T, LgError> {
    fn ctx(self, context: &str) -> Result<T, ReportError> {
        self.map_err(|source| ReportError::Lg { context: context.into(), source })
    }
}

impl<T> Context<T> for Result<T, CqsError> {
    fn ctx(self, context: &str) -> Result<T, ReportError> {
        self.map_err(|e| ReportError::InvalidParams(format!("{context}: {e}")))
    }
}

impl<T> Context<T> for Result<T, MutationError> {
    fn ctx(self, context: &str) -> Result<T, ReportError> {
        self.map_err(|e| ReportError::Module { context: context.into(), message: e.to_string() })
    }
}

impl<T> Context<T> for Result<T, QuiverError> {
    fn ctx(self, context: &str) -> Result<T, ReportError> {
        self.map_err(|e| ReportError::Module { context: context.into(), message: e.to_string() })
    }
}

impl<T> Context<T> for Result<T, lattice::LatticeError> {
    fn ctx(self, context: &str) -> Result<T, ReportError> {
        self.map_err(|e| ReportError::Module { context: context.into(), message: e.to_string() })
    }
}

/// Suite parameters. Unset values take per-suite defaults.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct Params {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub s: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub delta: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub steps: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tol: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    /// Fiber value for `branch`, start value for radial tracking and `sturm`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t0: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub radius: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub samples: Option<usize>,
    /// Trajectory path: `rotation`, `constant` or `segment`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub path: Option<String>,
    /// Rotation angle for `rotation` paths.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub theta: Option<f64>,
    /// End value for `segment` paths.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t1: Option<f64>,
    /// Emit the path in reverse.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reverse: Option<bool>,
}

fn parse_val<T: std::str::FromStr>(key: &str, v: &str) -> Result<T, ReportError> {
    v.parse().map_err(|_| ReportError::InvalidParams(format!("cannot parse `{v}` for `{key}`")))
}

impl Params {
    /// Parses `key = value` lines; `#` starts a comment.
    pub fn from_config(text: &str) -> Result<Self, ReportError> {
        let mut p = Self::default();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, val) = line
                .split_once('=')
                .ok_or_else(|| ReportError::InvalidParams(format!("line {}: expected key = value", lineno + 1)))?;
            p.set(key.trim(), val.trim())?;
        }
        Ok(p)
    }

    pub fn set(&mut self, key: &str, v: &str) -> Result<(), ReportError> {
        match key {
            "k" => self.k = Some(parse_val(key, v)?),
            "n" => self.n = Some(parse_val(key, v)?),
            "q" => self.q = Some(parse_val(key, v)?),
            "s" => self.s = Some(parse_val(key, v)?),
            "delta" => self.delta = Some(parse_val(key, v)?),
            "steps" => self.steps = Some(parse_val(key, v)?),
            "tol" => self.tol = Some(parse_val(key, v)?),
            "seed" => self.seed = Some(parse_val(key, v)?),
            "t0" => self.t0 = Some(parse_val(key, v)?),
            "t1" => self.t1 = Some(parse_val(key, v)?),
            "radius" => self.radius = Some(parse_val(key, v)?),
            "samples" => self.samples = Some(parse_val(key, v)?),
            "theta" => self.theta = Some(parse_val(key, v)?),
            "reverse" => self.reverse = Some(parse_val(key, v)?),
            "path" => self.path = Some(v.to_string()),
            _ => return Err(ReportError::InvalidParams(format!("unknown key `{key}`"))),
        }
        Ok(())
    }

    /// Values set in `other` override those in `self`.
    pub fn merged(&self, other: &Self) -> Self {
        macro_rules! pick {
            ($($f:ident),*) => { Self { $($f: other.$f.clone().or_else(|| self.$f.clone())),* } };
        }
        pick!(k, n, q, s, delta, steps, tol, seed, t0, radius, samples, path, theta, t1, reverse)
    }

    fn k(&self) -> usize {
        self.k.unwrap_or(5)
    }

    fn tol(&self) -> f64 {
        self.tol.unwrap_or(0.05)
    }

    fn lg_spec(&self, default_s: f64) -> Result<LGSpec, ReportError> {
        LGSpec::new(self.k(), self.s.unwrap_or(default_s), self.delta.unwrap_or(lg::DEFAULT_DELTA)).ctx("LG parameters")
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub measured: Value,
    pub expected: Value,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub note: String,
}

impl Check {
    pub fn new(name: impl Into<String>, pass: bool, measured: Value, expected: Value) -> Self {
        Self { name: name.into(), pass, measured, expected, note: String::new() }
    }

    pub fn eq<T: Serialize + PartialEq>(name: impl Into<String>, measured: T, expected: T) -> Self {
        let pass = measured == expected;
        Self::new(name, pass, json!(measured), json!(expected))
    }

    /// `|measured/expected - 1| ≤ tol`.
    pub fn rel(name: impl Into<String>, measured: f64, expected: f64, tol: f64) -> Self {
        let err = (measured / expected - 1.0).abs();
        let mut c = Self::new(name, err <= tol, json!(measured), json!(expected));
        c.note = format!("relative error {err:.4} vs tolerance {tol}");
        c
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = note.into();
        self
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub suite: String,
    pub params: Params,
    pub checks: Vec<Check>,
    pub payload: Value,
    /// Wall-clock milliseconds per phase; omitted from canonical output.
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub timings: BTreeMap<String, f64>,
}

impl Report {
    fn new(suite: &str, params: &Params) -> Self {
        Self {
            suite: suite.into(),
            params: params.clone(),
            checks: Vec::new(),
            payload: json!({}),
            timings: BTreeMap::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            0
        } else {
            1
        }
    }

    /// The report without timings, which is reproducible bit for bit.
    pub fn canonical(&self) -> Self {
        Self { timings: BTreeMap::new(), ..self.clone() }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    fn timed<T>(&mut self, phase: &str, f: impl FnOnce() -> T) -> T {
        let start = Instant::now();
        let out = f();
        self.timings.insert(phase.into(), start.elapsed().as_secs_f64() * 1e3);
        out
    }

    fn set(&mut self, key: &str, v: Value) {
        self.payload[key] = v;
    }
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("payload serializes")
}

/// Runs a named suite.
pub fn run_suite(name: &str, params: &Params) -> Result<Report, ReportError> {
    match name {
        "cqs" => suite_cqs(params),
        "gram" => suite_gram(params),
        "braid" => suite_braid(params),
        "quiver" => suite_quiver(params),
        "normalize" => suite_normalize(params),
        "critical" => suite_critical(params),
        "branch" => suite_branch(params),
        "monodromy" => suite_monodromy(params),
        "sturm" => suite_sturm(params),
        "palais-smale" => suite_palais_smale(params),
        "pick" => suite_pick(params),
        "all" => suite_all(params),
        other => Err(ReportError::UnknownSuite(other.into())),
    }
}

fn odd_k(k: usize) -> Result<usize, ReportError> {
    if k < 3 || k.is_multiple_of(2) {
        Err(ReportError::InvalidParams(format!("k must be odd and at least 3, got {k}")))
    } else {
        Ok(k)
    }
}

fn suite_cqs(p: &Params) -> Result<Report, ReportError> {
    let (n, q) = (p.n.unwrap_or(5), p.q.unwrap_or(3));
    let mut r = Report::new("cqs", p);
    let desc = cqs::CQSDescriptor::new(n, q).ctx("descriptor")?;
    r.checks.push(Check::eq("HJ identity and series recursions", desc.check_invariants(), true));
    let om = r.timed("order_map", || cqs::order_map(n, q));
    r.checks.push(Check::new(
        "order map strictly decreasing on I'",
        om.is_ok(),
        json!(om.as_ref().map_err(|e| e.to_string())),
        json!("strictly decreasing images"),
    ));
    let sched = cqs::handle_schedule(n, q).ctx("handle schedule")?;
    let cores = desc
        .non_special()
        .into_iter()
        .filter(|&d| d > 0)
        .map(|d| cqs::core_schedule(n, q, d).map(|c| (d, c)))
        .collect::<Result<Vec<_>, _>>()
        .ctx("core schedule")?;
    r.set("descriptor", to_value(&desc));
    r.set("hj", json!(desc.b));
    r.set("i_prime", json!(desc.i_series));
    r.set("non_special", json!(desc.non_special()));
    r.set("order_map", to_value(&om.ok()));
    r.set("handle_schedule", to_value(&sched));
    r.set("core_schedules", to_value(&cores));
    Ok(r)
}

fn suite_gram(p: &Params) -> Result<Report, ReportError> {
    let k = odd_k(p.k())?;
    let mut r = Report::new("gram", p);
    let l = mutation::l_collection(k).ctx("L-collection")?;
    let dual = mutation::left_dual(&l).ctx("left dual")?;
    let sg = mutation::seifert_gram(&dual).ctx("Seifert form")?;
    let eg = quiver::euler_gram(&quiver::mckay_quiver(k).ctx("McKay quiver")?).ctx("Euler form")?;
    let row = mutation::seifert_gram(&l).ctx("Seifert form")?.to_i64()[0].clone();
    let want_row: Vec<i64> = (0..k - 2).map(|i| if i % 2 == 0 { i as i64 + 1 } else { -(i as i64 + 1) }).collect();
    r.checks.push(Check::eq("|Seifert(left dual)| equals McKay Euler form", sg.abs().to_i64(), eg.to_i64()));
    r.checks.push(Check::eq("Seifert(left dual) sign-conjugate to McKay Euler form", sg.sign_conjugate(&eg), true));
    r.checks.push(Check::eq("L-collection Seifert first row", row, want_row));
    r.set("l_collection", to_value(&l));
    r.set("left_dual", to_value(&dual));
    r.set("seifert_left_dual", json!(sg.to_i64()));
    r.set("euler_mckay", json!(eg.to_i64()));
    Ok(r)
}

fn suite_braid(p: &Params) -> Result<Report, ReportError> {
    let k = odd_k(p.k())?;
    let mut r = Report::new("braid", p);
    let rep = r.timed("replay", || mutation::replay_script(&mutation::braid_script(k))).ctx("braid replay")?;
    for s in &rep.steps {
        r.checks.push(
            Check::eq(format!("{} matches reference up to sign", s.name), s.corrected_mismatches.clone(), vec![])
                .with_note(format!("literal reference differs at {:?}", s.literal_mismatches)),
        );
    }
    r.set("script", to_value(&mutation::braid_script(k)));
    r.set("replay", to_value(&rep));
    Ok(r)
}

/// Hom dimensions from a source vertex to `PhiO, PhiT(-H), PhiO(H), PhiO_B1`.
fn thickness_row(q: &quiver::Quiver, d: &[Vec<usize>], src: &str) -> Result<Vec<usize>, ReportError> {
    let s = q.vertex_index(src).ctx("vertex")?;
    ["PhiO", "PhiT(-H)", "PhiO(H)", "PhiO_B1"].iter().map(|t| Ok(d[s][q.vertex_index(t).ctx("vertex")?])).collect()
}

fn suite_quiver(p: &Params) -> Result<Report, ReportError> {
    let k = odd_k(p.k())?;
    if k < 5 {
        return Err(ReportError::InvalidParams("the X_{k+1} quiver needs k ≥ 5".into()));
    }
    let mut r = Report::new("quiver", p);
    let q = quiver::xk_quiver(k, &quiver::default_points(k)).ctx("B-side quiver")?;
    let d = r.timed("hom_dims", || quiver::hom_dims_with_seed(&q, p.seed.unwrap_or(0))).ctx("hom dims")?;
    let row1 = thickness_row(&q, &d, &format!("e_{}", k - 2))?;
    let row2 = thickness_row(&q, &d, &format!("e_{}", k - 1))?;
    r.checks.push(Check::eq(format!("row e_{}", k - 2), row1, vec![1, 3, 2, 1]));
    r.checks.push(Check::eq(format!("row e_{}", k - 1), row2, vec![0, 1, 1, 1]));
    let cf = lattice::cf_table_mismatches(k).ctx("CF table")?;
    r.checks.push(Check::eq("CF table predictions", cf.len(), 0));
    r.set("vertices", json!(q.vertices));
    r.set("hom_dims", json!(d));
    r.set("cf_table", to_value(&lattice::cf_table(k)));
    r.set("cf_mismatches", to_value(&cf));
    Ok(r)
}

fn suite_normalize(p: &Params) -> Result<Report, ReportError> {
    let k = odd_k(p.k())?;
    if k < 5 {
        return Err(ReportError::InvalidParams("the X_{k+1} quiver needs k ≥ 5".into()));
    }
    let mut r = Report::new("normalize", p);
    let f = quiver::fukaya_quiver(k, quiver::FukayaForm::Derived).ctx("A-side quiver")?;
    let target = quiver::xk_quiver_symbolic(k).ctx("B-side quiver")?;
    let n = r.timed("normalize", || quiver::normalize_constants(&f)).ctx("normalization")?;
    let bad = quiver::relation_mismatches(&n.quiver, &target);
    r.checks.push(Check::eq("normalized relations equal B-side relations", bad.clone(), vec![]));
    let listed = quiver::fukaya_quiver(k, quiver::FukayaForm::AsListed).ctx("A-side quiver")?;
    let listed_ok = quiver::normalize_constants(&listed).is_ok();
    let displayed: Vec<usize> =
        [quiver::RescaleConvention::NewIsFactorTimesOld, quiver::RescaleConvention::OldIsFactorTimesNew]
            .iter()
            .map(|&c| {
                quiver::relation_mismatches(&quiver::apply_rescaling(&f, &quiver::displayed_rescaling(k), c), &target)
                    .len()
            })
            .collect();
    r.set("rescaling", json!(n.rescaling.iter().map(|(g, m)| (g.clone(), m.to_string())).collect::<BTreeMap<_, _>>()));
    r.set("points", json!(n.points.iter().map(|(a, b)| [a.to_string(), b.to_string()]).collect::<Vec<_>>()));
    r.set(
        "normalized_relations",
        json!(n.quiver.relations.iter().map(|x| n.quiver.relation_string(x)).collect::<Vec<_>>()),
    );
    r.set("as_listed_form_normalizes", json!(listed_ok));
    r.set("displayed_rescaling_mismatches", json!(displayed));
    Ok(r)
}

fn suite_critical(p: &Params) -> Result<Report, ReportError> {
    let spec = p.lg_spec(lg::DEFAULT_S)?;
    let k = spec.k;
    let mut r = Report::new("critical", p);
    let set = r.timed("critical_set", || critical_set(&spec, 0.25)).ctx("critical set")?;
    let np = newton_polygon_count(k);
    r.checks.push(Check::eq("count equals 2·vol(Newton polygon)", set.points.len(), np.two_volume));
    r.checks.push(Check::eq("class counts (I, II, III)", set.counts.to_vec(), vec![k - 2, 3, k + 1]));
    r.checks.push(Check::eq("critical points with real positive y", set.real_positive, 2));
    r.checks.push(Check::rel(
        "max type-I |t| vs ((k-2)/k)(1/s)^{1/(k-2)}",
        set.type_i.radius_uncorrected * (1.0 + set.type_i.max_rel_err_uncorrected),
        set.type_i.radius_uncorrected,
        p.tol(),
    ));
    r.set("points", json!(set.points));
    r.set("counts", json!(set.counts));
    r.set("threshold_counts", json!(set.threshold_counts));
    r.set("type_i", to_value(&set.type_i));
    r.set("anchor_s", json!(set.anchor_s));
    Ok(r)
}

fn suite_branch(p: &Params) -> Result<Report, ReportError> {
    let spec = p.lg_spec(1e-4)?;
    let k = spec.k;
    let t = p.t0.unwrap_or(3.0);
    let mut r = Report::new("branch", p);
    let bp = branch_points(&spec, C::new(t, 0.0)).ctx("branch points")?;
    r.checks.push(Check::eq("branch point count", bp.roots.len(), k + 1));
    r.checks.push(Check::rel("outer radius (geometric mean)", bp.outer_radius, bp.predicted_outer_radius, p.tol()));
    let set = critical_set(&spec, 0.25).ctx("critical set")?;
    let tc = real_type_i_value(&set).ok_or_else(|| ReportError::Module {
        context: "radial collision".into(),
        message: "no real type-I critical value".into(),
    })?;
    let rc = r.timed("radial", || radial_collision(&spec, 0.5 * tc)).ctx("radial collision")?;
    r.checks.push(Check::eq("twin-to-outer distance decreases monotonically", rc.monotone, true));
    r.checks.push(Check::new(
        "collision detected within 1e-4 of the critical value",
        rc.detection_gap.is_some_and(|g| g < 1e-4),
        json!(rc.detection_gap),
        json!(1e-4),
    ));
    r.checks.push(Check::new(
        "path stays within 1e-3 of the real axis",
        rc.max_imag < 1e-3,
        json!(rc.max_imag),
        json!(1e-3),
    ));
    r.checks.push(Check::eq("smaller twin stays below the larger", rc.order_kept, true));
    r.set("branch_points", to_value(&bp));
    r.set("radial_collision", to_value(&rc));
    Ok(r)
}

fn regime(p: &Params) -> MonodromyRegime {
    let d = MonodromyRegime::default();
    MonodromyRegime { s: p.s.unwrap_or(d.s), samples: p.steps.unwrap_or(d.samples), ..d }
}

fn suite_monodromy(p: &Params) -> Result<Report, ReportError> {
    let spec = p.lg_spec(lg::DEFAULT_S)?;
    let k = spec.k;
    let reg = regime(p);
    let mut r = Report::new("monodromy", p);
    let sec = r.timed("sector", || sector_monodromy(&spec, &reg)).ctx("sector monodromy")?;
    r.checks.push(Check::eq("sector: twins transposed", sec.twins_swapped, true));
    r.checks.push(Check::eq("sector: near-zero root fixed", sec.near_zero_fixed, true));
    r.checks.push(Check::eq("sector: outer roots permuted cyclically", sec.outer_cyclic, true));
    let full = r.timed("full", || full_monodromy(&spec, &reg)).ctx("full monodromy")?;
    r.checks.push(Check::eq("full loop is the twin transposition", full.is_twin_transposition, true));
    r.checks.push(Check::eq("composed sectors equal the full loop", full.composed.clone(), full.permutation.clone()));
    r.checks.push(Check::eq("reversed loop inverts the permutation", full.reverse_is_inverse, true));
    r.checks.push(
        Check::new(
            "twin half-turns relative to t has odd parity",
            (full.twin_half_turns.round() as i64).rem_euclid(2) == 1,
            json!(full.twin_half_turns),
            json!(format!("odd (sector count {})", k - 2)),
        )
        .with_note("each sector contributes one interchange"),
    );
    r.set("regime", to_value(&reg));
    r.set("sector", to_value(&sec));
    r.set("full", to_value(&full));
    Ok(r)
}

fn suite_sturm(p: &Params) -> Result<Report, ReportError> {
    let k = odd_k(p.k())?;
    let mut r = Report::new("sturm", p);
    let td = lg::sturm::t_double(k);
    let t0 = p.t0.unwrap_or(0.2);
    let c = sturm_real_roots(k, t0).ctx("Sturm count")?;
    let want = if t0 < td { 3 } else { 1 };
    r.checks.push(Check::eq(format!("real roots at t0 = {t0}"), c.distinct, want));
    r.checks.push(Check::eq("numeric cross-check", c.numeric_real, c.distinct));
    let at = sturm_real_roots(k, td).ctx("Sturm count")?;
    r.checks.push(
        Check::eq("double root at t_double (distinct, with multiplicity)", (at.distinct, at.with_multiplicity), (2, 3))
            .with_note(format!("double-root locus is t0 = {:.6}", c.t_double_root_locus)),
    );
    r.set("count", to_value(&c));
    r.set("at_t_double", to_value(&at));
    Ok(r)
}

fn suite_palais_smale(p: &Params) -> Result<Report, ReportError> {
    let spec = p.lg_spec(lg::DEFAULT_S)?;
    let radius = p.radius.unwrap_or(1e3);
    let n = p.samples.unwrap_or(10_000);
    let seed = p.seed.unwrap_or(0);
    let mut r = Report::new("palais-smale", p);
    let ps = r.timed("sample", || palais_smale_sample(&spec, radius, n, seed)).ctx("sampling")?;
    r.checks.push(Check::new("minimum ≥ s²/2", ps.passes_bound(), json!(ps.min_value), json!(ps.bound)));
    let mut zero = spec.clone();
    zero.s = 0.0;
    let ps0 = palais_smale_sample(&zero, radius, n, seed).ctx("sampling")?;
    r.checks.push(Check::new("minimum ≥ 0 at s = 0", ps0.min_value >= 0.0, json!(ps0.min_value), json!(0.0)));
    r.checks.push(Check::new("on-hypersurface residual", ps.max_residual < 1e-9, json!(ps.max_residual), json!(1e-9)));
    r.set("sample", to_value(&ps));
    r.set("sample_s0", to_value(&ps0));
    Ok(r)
}

fn suite_pick(p: &Params) -> Result<Report, ReportError> {
    let k = odd_k(p.k())?;
    let mut r = Report::new("pick", p);
    let c = newton_polygon_count(k);
    r.checks.push(Check::eq(
        "(interior, boundary, 2·vol)",
        (c.interior, c.boundary, c.two_volume),
        (k.div_ceil(2), k + 3, 2 * k + 2),
    ));
    r.checks.push(Check::eq("Pick identity", c.pick_holds(), true));
    r.set("count", to_value(&c));
    Ok(r)
}

fn suite_all(p: &Params) -> Result<Report, ReportError> {
    let mut r = Report::new("all", p);
    let mut per = BTreeMap::new();
    for i in 1..=CRITERIA.len() {
        let start = Instant::now();
        let c = criterion(i)?;
        per.insert(format!("criterion_{i:02}"), start.elapsed().as_secs_f64() * 1e3);
        r.checks.push(c);
    }
    r.timings = per;
    Ok(r)
}

/// Short names of the acceptance criteria.
pub const CRITERIA: [&str; 12] = [
    "Gram-matrix match",
    "L-collection Seifert first row",
    "braid replay",
    "CF table",
    "quiver dims and normalization",
    "Kouchnirenko/Pick counts",
    "type-I asymptotics",
    "monodromy",
    "Sturm counts",
    "Palais-Smale bound",
    "order map",
    "path-sum lemma",
];

fn elapsed_s(start: Instant) -> f64 {
    start.elapsed().as_secs_f64()
}

/// Evaluates acceptance criterion `i` (1-based).
pub fn criterion(i: usize) -> Result<Check, ReportError> {
    let name =
        format!("{i}. {}", CRITERIA.get(i - 1).ok_or_else(|| ReportError::InvalidParams(format!("no criterion {i}")))?);
    let odd = || (3..=15usize).step_by(2);
    let start = Instant::now();
    let c = match i {
        1 => {
            let mut bad = Vec::new();
            for k in odd() {
                let dual = mutation::left_dual(&mutation::l_collection(k).ctx("L")?).ctx("dual")?;
                let sg = mutation::seifert_gram(&dual).ctx("Seifert")?;
                let eg = quiver::euler_gram(&quiver::mckay_quiver(k).ctx("McKay")?).ctx("Euler")?;
                if sg.abs() != eg {
                    bad.push(k);
                }
            }
            let t = elapsed_s(start);
            Check::new(
                &name,
                bad.is_empty() && t < 1.0,
                json!({"failing_k": bad, "seconds": t}),
                json!({"failing_k": [], "seconds": "< 1"}),
            )
        }
        2 => {
            let mut bad = Vec::new();
            for k in odd() {
                let row =
                    mutation::seifert_gram(&mutation::l_collection(k).ctx("L")?).ctx("Seifert")?.to_i64()[0].clone();
                let want: Vec<i64> = (1..=row.len() as i64).map(|j| if j % 2 == 1 { j } else { -j }).collect();
                if row != want {
                    bad.push(k);
                }
            }
            Check::eq(&name, bad, vec![])
        }
        3 => {
            let mut res = BTreeMap::new();
            let mut literal = BTreeMap::new();
            for k in [5, 7] {
                let rep = mutation::replay_script(&mutation::braid_script(k)).ctx("replay")?;
                res.insert(k, rep.steps.iter().map(|s| s.corrected_mismatches.len()).sum::<usize>());
                literal.insert(k, rep.steps.iter().map(|s| s.literal_mismatches.len()).sum::<usize>());
            }
            Check::new(
                &name,
                res.values().all(|&v| v == 0),
                json!({"mismatched_entries": res}),
                json!({"mismatched_entries": 0}),
            )
            .with_note(format!(
                "compared with the reference lists after two corrections; literal mismatches {literal:?}"
            ))
        }
        4 => {
            let mut bad = BTreeMap::new();
            for k in [5, 7, 9] {
                bad.insert(k, lattice::cf_table_mismatches(k).ctx("CF")?.len());
            }
            Check::new(&name, bad.values().all(|&v| v == 0), json!(bad), json!("no mismatches"))
        }
        5 => {
            let mut ok = true;
            let mut got = BTreeMap::new();
            for k in [5, 7] {
                let q = quiver::xk_quiver(k, &quiver::default_points(k)).ctx("quiver")?;
                let d = quiver::hom_dims(&q).ctx("dims")?;
                let rows =
                    (thickness_row(&q, &d, &format!("e_{}", k - 2))?, thickness_row(&q, &d, &format!("e_{}", k - 1))?);
                ok &= rows == (vec![1, 3, 2, 1], vec![0, 1, 1, 1]);
                let f = quiver::fukaya_quiver(k, quiver::FukayaForm::Derived).ctx("A-side")?;
                let n = quiver::normalize_constants(&f).ctx("normalize")?;
                let bad = quiver::relation_mismatches(&n.quiver, &quiver::xk_quiver_symbolic(k).ctx("B-side")?);
                ok &= bad.is_empty();
                got.insert(k, json!({"rows": rows, "relation_mismatches": bad.len()}));
            }
            Check::new(&name, ok, json!(got), json!({"rows": [[1, 3, 2, 1], [0, 1, 1, 1]], "relation_mismatches": 0}))
        }
        6 => {
            let mut ok = true;
            let mut got = Vec::new();
            for k in [3, 5, 7] {
                let c = newton_polygon_count(k);
                ok &= (c.interior, c.boundary, c.two_volume) == (k.div_ceil(2), k + 3, 2 * k + 2);
                for s in [1e-2, 1e-3] {
                    let set = critical_set(&LGSpec::new(k, s, lg::DEFAULT_DELTA).ctx("spec")?, 0.25).ctx("critical")?;
                    ok &= set.points.len() == c.two_volume && set.counts == [k - 2, 3, k + 1];
                    got.push(json!({"k": k, "s": s, "newton": c, "count": set.points.len(), "clusters": set.counts}));
                }
            }
            let t = elapsed_s(start);
            Check::new(
                &name,
                ok && t < 5.0,
                json!({"runs": got, "seconds": t}),
                json!("counts ((k+1)/2, k+3, 2k+2), clusters (k-2, 3, k+1), < 5 s"),
            )
        }
        7 => {
            let spec = LGSpec::new(5, 1e-3, lg::DEFAULT_DELTA).ctx("spec")?;
            let set = critical_set(&spec, 0.25).ctx("critical")?;
            let bp = outer_radius_check(&spec).ctx("branch")?;
            let t_err = set.type_i.max_rel_err_uncorrected;
            let r_err = (bp.outer_radius / bp.predicted_outer_radius - 1.0).abs();
            Check::new(
                &name,
                t_err <= 0.05 && r_err <= 0.05,
                json!({"type_i_rel_err": t_err, "outer_radius_rel_err": r_err, "type_i_rel_err_with_k2": set.type_i.max_rel_err}),
                json!({"type_i_rel_err": "≤ 0.05", "outer_radius_rel_err": "≤ 0.05"}),
            )
            .with_note("k = 5, s = 1e-3")
        }
        8 => {
            let mut ok = true;
            let mut got = BTreeMap::new();
            for k in [5, 7] {
                let spec = LGSpec::new(k, lg::DEFAULT_S, lg::DEFAULT_DELTA).ctx("spec")?;
                let reg = MonodromyRegime::default();
                let t0 = Instant::now();
                let sec = sector_monodromy(&spec, &reg).ctx("sector")?;
                let ts = elapsed_s(t0);
                let t1 = Instant::now();
                let full = full_monodromy(&spec, &reg).ctx("full")?;
                let tf = elapsed_s(t1);
                let pass = sec.twins_swapped
                    && sec.near_zero_fixed
                    && sec.outer_cyclic
                    && full.is_twin_transposition
                    && full.composed == full.permutation
                    && ts < 30.0
                    && tf < 30.0;
                ok &= pass;
                got.insert(
                    k,
                    json!({"sector_permutation": sec.rotated_permutation, "full_permutation": full.permutation,
                    "twin_half_turns": full.twin_half_turns, "seconds": [ts, tf]}),
                );
            }
            Check::new(
                &name,
                ok,
                json!(got),
                json!("sector swaps twins, full loop is the twin transposition, < 30 s per track"),
            )
        }
        9 => {
            let mut bad = Vec::new();
            for k in [5, 7, 9] {
                let td = lg::sturm::t_double(k);
                let below = (1..50).map(|j| (td * j as f64 / 50.0, 3));
                let above = (1..=10).map(|j| (td * (1.0 + j as f64 / 10.0), 1));
                for (t0, want) in below.chain(above) {
                    let c = sturm_real_roots(k, t0).ctx("Sturm")?;
                    if c.distinct != want || c.numeric_real != c.distinct {
                        bad.push(
                            json!({"k": k, "t0": t0, "sturm": c.distinct, "numeric": c.numeric_real, "expected": want}),
                        );
                    }
                }
            }
            Check::new(&name, bad.is_empty(), json!(bad), json!([]))
        }
        10 => {
            let spec = LGSpec::new(5, 1e-2, lg::DEFAULT_DELTA).ctx("spec")?;
            let ps = palais_smale_sample(&spec, 1e3, 10_000, 0).ctx("sampling")?;
            let mut zero = spec.clone();
            zero.s = 0.0;
            let ps0 = palais_smale_sample(&zero, 1e3, 10_000, 0).ctx("sampling")?;
            Check::new(
                &name,
                ps.passes_bound() && ps0.min_value >= 0.0,
                json!({"min": ps.min_value, "min_s0": ps0.min_value}),
                json!({"min": format!("≥ {}", ps.bound), "min_s0": "≥ 0"}),
            )
        }
        11 => {
            let bad: Vec<(u64, u64)> =
                cqs::coprime_pairs(200).filter(|&(n, q)| cqs::order_map(n, q).is_err()).collect();
            let t = elapsed_s(start);
            Check::new(
                &name,
                bad.is_empty() && t < 1.0,
                json!({"violations": bad, "seconds": t}),
                json!({"violations": [], "seconds": "< 1"}),
            )
        }
        12 => {
            let got: Vec<i64> = mutation::path_sum_lemma(12).iter().map(|x| x.to_i64().unwrap_or(i64::MAX)).collect();
            Check::eq(&name, got, (2..=13).collect::<Vec<i64>>())
        }
        _ => unreachable!(),
    };
    Ok(c)
}

/// Paths for trajectory emission.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum PathSpec {
    Constant { t: C, steps: usize },
    Rotation { radius: f64, theta: f64, steps: usize },
    Segment { from: C, to: C, steps: usize },
}

impl PathSpec {
    /// From `path`, `t0`, `t1`, `radius`, `theta` and `steps`; rotations default
    /// to the monodromy regime.
    pub fn from_params(p: &Params, spec: &LGSpec) -> Result<Self, ReportError> {
        let steps = p.steps.unwrap_or(256);
        let t0 = p.t0.unwrap_or(1.0);
        match p.path.as_deref().unwrap_or("rotation") {
            "constant" => Ok(Self::Constant { t: C::new(t0, 0.0), steps }),
            "segment" => Ok(Self::Segment { from: C::new(t0, 0.0), to: C::new(p.t1.unwrap_or(2.0 * t0), 0.0), steps }),
            "rotation" => {
                let k = spec.k as f64;
                let r_i = (k - 2.0) / k * (1.0 / (k * k * spec.s)).powf(1.0 / (k - 2.0));
                Ok(Self::Rotation { radius: p.radius.unwrap_or(0.3 * r_i), theta: p.theta.unwrap_or(TAU), steps })
            }
            other => Err(ReportError::InvalidParams(format!("unknown path `{other}`"))),
        }
    }

    pub fn points(&self) -> Vec<C> {
        match *self {
            Self::Constant { t, steps } => vec![t; steps + 1],
            Self::Rotation { radius, theta, steps } => arc(radius, 0.0, -theta, steps),
            Self::Segment { from, to, steps } => {
                (0..=steps).map(|i| from + (to - from) * (i as f64 / steps as f64)).collect()
            }
        }
    }
}

/// Tracks the branch points along `path` and keeps only the rows at path nodes.
pub fn emit_trajectory(spec: &LGSpec, path: &[C]) -> Result<RootTrajectory, ReportError> {
    let opts = TrackOptions { max_step: f64::INFINITY, ..Default::default() };
    let mut tr = track_roots(spec, path, &opts).ctx("tracking")?;
    let keep = tr.nodes.clone();
    tr.t_path = keep.iter().map(|&i| tr.t_path[i]).collect();
    tr.roots = keep.iter().map(|&i| tr.roots[i].clone()).collect();
    tr.nodes = (0..keep.len()).collect();
    Ok(tr)
}

/// Writes the trajectory CSV for the parameters, returning the trajectory.
pub fn emit_trajectories<W: std::io::Write>(p: &Params, out: W) -> Result<RootTrajectory, ReportError> {
    let spec = p.lg_spec(MonodromyRegime::default().s)?;
    let mut pts = PathSpec::from_params(p, &spec)?.points();
    if p.reverse.unwrap_or(false) {
        pts.reverse();
    }
    let tr = emit_trajectory(&spec, &pts)?;
    tr.write_csv(out).map_err(|e| ReportError::Io(std::io::Error::other(e)))?;
    Ok(tr)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_parsing() {
        let p = Params::from_config("# comment\nk = 7\ns=1e-3 # trailing\npath = segment\n").unwrap();
        assert_eq!(p.k, Some(7));
        assert_eq!(p.s, Some(1e-3));
        assert_eq!(p.path.as_deref(), Some("segment"));
        assert!(Params::from_config("bogus = 1").is_err());
        assert!(Params::from_config("k = seven").is_err());
        let merged = p.merged(&Params { k: Some(9), ..Default::default() });
        assert_eq!((merged.k, merged.s), (Some(9), Some(1e-3)));
    }

    #[test]
    fn suite_examples() {
        let cqs = run_suite("cqs", &Params { n: Some(5), q: Some(3), ..Default::default() }).unwrap();
        assert!(cqs.passed());
        assert_eq!(cqs.payload["i_prime"], json!([3, 1, 0]));
        assert_eq!(cqs.payload["non_special"], json!([2, 4]));
        let pick = run_suite("pick", &Params { k: Some(7), ..Default::default() }).unwrap();
        assert_eq!(pick.payload["count"], json!({"interior": 4, "boundary": 10, "two_volume": 16}));
        let gram = run_suite("gram", &Params { k: Some(5), ..Default::default() }).unwrap();
        assert!(gram.passed());
        assert!(gram.payload.get("seifert_left_dual").is_some() && gram.payload.get("euler_mckay").is_some());
    }

    #[test]
    fn errors_map_to_exit_codes() {
        assert_eq!(run_suite("nope", &Params::default()).unwrap_err().exit_code(), 2);
        assert_eq!(run_suite("pick", &Params { k: Some(4), ..Default::default() }).unwrap_err().exit_code(), 2);
        assert_eq!(
            run_suite("cqs", &Params { n: Some(6), q: Some(2), ..Default::default() }).unwrap_err().exit_code(),
            2
        );
        let e = ReportError::Lg { context: "x".into(), source: LgError::NonConvergence { degree: 4 } };
        assert_eq!(e.exit_code(), 3);
    }

    #[test]
    fn canonical_reports_are_reproducible() {
        let p = Params { samples: Some(300), seed: Some(3), ..Default::default() };
        let a = run_suite("palais-smale", &p).unwrap().canonical().to_json();
        let b = run_suite("palais-smale", &p).unwrap().canonical().to_json();
        assert_eq!(a, b);
    }
}
