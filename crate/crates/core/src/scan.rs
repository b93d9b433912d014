//! Parameter sweeps and their tabular output.
//!
//! Sweep coordinates are dimensionless offsets in units of the wavelength:
//! `q = q_base + a·λ` and `Q = Q_base + b·λ`. Outer sweep units (membrane
//! reflectivities, `b` rows) run in parallel; each unit walks its `a`
//! axis serially so the exact solver can follow one branch. The output
//! order never depends on scheduling.

use std::fmt::Write as _;
use std::io::Write;
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::cavity::CavityConfig;
use crate::coupling::{self, Coordinate, MechanicalSpec};
use crate::error::{CavityError, Result};
use crate::finesse::{cap_over_kappa, finesse_at, finesse_empty, kappa};
use crate::modes::{self, empty_mode, Method, ModeSolution};
use crate::numeric::linspace;
use crate::transfer::transmission;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ScanKind {
    #[serde(rename = "shift-1d")]
    Shift1d,
    #[serde(rename = "shift-2d")]
    Shift2d,
    ReflectivitySweep,
    CouplingReport,
    FinesseScan,
}

impl ScanKind {
    pub fn name(&self) -> &'static str {
        match self {
            ScanKind::Shift1d => "shift-1d",
            ScanKind::Shift2d => "shift-2d",
            ScanKind::ReflectivitySweep => "reflectivity-sweep",
            ScanKind::CouplingReport => "coupling-report",
            ScanKind::FinesseScan => "finesse-scan",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Axis {
    pub start: f64,
    pub stop: f64,
    pub points: usize,
}

impl Axis {
    pub fn new(start: f64, stop: f64, points: usize) -> Self {
        Axis { start, stop, points }
    }

    pub fn values(&self) -> Vec<f64> {
        linspace(self.start, self.stop, self.points)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScanRequest {
    pub kind: ScanKind,
    pub cavity: CavityConfig,
    /// Offsets of `q` in wavelengths.
    pub a_axis: Option<Axis>,
    /// Offsets of `Q` in wavelengths.
    pub b_axis: Option<Axis>,
    /// Synthetic membrane reflectivities swept as the outermost axis.
    pub membrane_reflectivities: Vec<f64>,
    pub methods: Vec<Method>,
    pub mode_index: Option<u64>,
    pub mechanics: MechanicalSpec,
    /// Finesse used for `κ` in reports instead of the computed one.
    pub finesse_override: Option<f64>,
    /// Move `q` to the separation of peak `|g_q|` before reporting.
    pub optimize_separation: bool,
}

impl ScanRequest {
    pub fn new(kind: ScanKind, cavity: CavityConfig) -> Self {
        ScanRequest {
            kind,
            cavity,
            a_axis: None,
            b_axis: None,
            membrane_reflectivities: Vec::new(),
            methods: vec![Method::Exact, Method::Zeroth, Method::First],
            mode_index: None,
            mechanics: MechanicalSpec::default(),
            finesse_override: None,
            optimize_separation: false,
        }
    }

    pub fn mode(&self) -> u64 {
        self.mode_index.unwrap_or_else(|| self.cavity.nearest_mode())
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(CavityError::InvalidConfig(m));
        self.cavity.validate()?;
        self.mechanics.validate()?;
        if self.mode_index == Some(0) {
            return bad("mode_index must be >= 1".into());
        }
        if self.methods.is_empty() {
            return bad("at least one method is required".into());
        }
        let needs_a = !matches!(self.kind, ScanKind::CouplingReport);
        match (needs_a, self.a_axis) {
            (true, None) => return bad(format!("{} needs an a axis", self.kind.name())),
            (_, Some(ax)) if ax.points < 2 || !ax.start.is_finite() || !ax.stop.is_finite() => {
                return bad("axis needs at least 2 points and finite bounds".into())
            }
            _ => {}
        }
        match (self.kind, self.b_axis) {
            (ScanKind::Shift2d, None) => return bad("shift-2d needs a b axis".into()),
            (ScanKind::Shift2d, Some(ax)) if ax.points < 2 => {
                return bad("axis needs at least 2 points".into())
            }
            (ScanKind::Shift2d, _) => {}
            (_, Some(_)) => return bad(format!("{} takes no b axis", self.kind.name())),
            _ => {}
        }
        if let Some(f) = self.finesse_override {
            if !(f > 0.0) {
                return bad(format!("finesse override must be > 0, got {f}"));
            }
        }
        for c in self.unit_configs()? {
            // the constraints are linear in (q, Q): checking the corners suffices
            for a in self.a_axis.map(|x| vec![x.start, x.stop]).unwrap_or(vec![0.0]) {
                for b in self.b_axis.map(|x| vec![x.start, x.stop]).unwrap_or(vec![0.0]) {
                    self.point(&c, a, b).validate()?;
                }
            }
        }
        Ok(())
    }

    fn unit_configs(&self) -> Result<Vec<CavityConfig>> {
        if self.membrane_reflectivities.is_empty() {
            return Ok(vec![self.cavity]);
        }
        self.membrane_reflectivities
            .iter()
            .map(|&rm| self.cavity.with_membrane_reflectivity(rm))
            .collect()
    }

    fn point(&self, base: &CavityConfig, a: f64, b: f64) -> CavityConfig {
        let lambda = base.wavelength;
        base.with_separation(base.separation + a * lambda).with_com(base.com + b * lambda)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Column {
    pub name: &'static str,
    pub integer: bool,
}

const fn real(name: &'static str) -> Column {
    Column { name, integer: false }
}

const fn int(name: &'static str) -> Column {
    Column { name, integer: true }
}

/// One failed computation inside a row.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RowFailure {
    pub row: usize,
    pub what: String,
    pub code: String,
    pub message: String,
}

/// One output row; failed values are NaN and listed in `failures`.
#[derive(Debug, Clone, PartialEq)]
pub struct ScanRecord {
    pub values: Vec<f64>,
    pub failures: Vec<(String, CavityError)>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScanOutput {
    pub kind: ScanKind,
    pub columns: Vec<Column>,
    pub records: Vec<ScanRecord>,
    pub summary: Value,
}

impl ScanOutput {
    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let i = self.columns.iter().position(|c| c.name == name)?;
        Some(self.records.iter().map(|r| r.values[i]).collect())
    }

    pub fn warning_count(&self) -> usize {
        self.records.iter().map(|r| r.failures.len()).sum()
    }

    pub fn failures(&self) -> Vec<RowFailure> {
        self.records
            .iter()
            .enumerate()
            .flat_map(|(row, r)| {
                r.failures.iter().map(move |(what, e)| RowFailure {
                    row,
                    what: what.clone(),
                    code: e.code().to_string(),
                    message: e.to_string(),
                })
            })
            .collect()
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::new();
        let header: Vec<&str> = self.columns.iter().map(|c| c.name).collect();
        s.push_str(&header.join(","));
        s.push('\n');
        for r in &self.records {
            for (i, (v, c)) in r.values.iter().zip(&self.columns).enumerate() {
                if i > 0 {
                    s.push(',');
                }
                write_value(&mut s, *v, c.integer);
            }
            s.push('\n');
        }
        s
    }

    /// Rows as objects plus the summary. Non-finite values become `null`.
    pub fn to_json(&self) -> Value {
        let rows: Vec<Value> = self
            .records
            .iter()
            .map(|r| {
                let obj: serde_json::Map<String, Value> = self
                    .columns
                    .iter()
                    .zip(&r.values)
                    .map(|(c, &v)| (c.name.to_string(), number(v)))
                    .collect();
                Value::Object(obj)
            })
            .collect();
        json!({ "rows": rows, "summary": self.summary })
    }

    pub fn write_csv(&self, path: &Path) -> Result<()> {
        write_file(path, self.to_csv().as_bytes())
    }

    pub fn write_json(&self, path: &Path) -> Result<()> {
        write_file(path, pretty(&self.to_json()).as_bytes())
    }

    pub fn write_summary(&self, path: &Path) -> Result<()> {
        write_file(path, pretty(&self.summary).as_bytes())
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).unwrap_or_default();
    s.push('\n');
    s
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<()> {
    let mut f = std::fs::File::create(path)
        .map_err(|e| CavityError::Io(format!("{}: {e}", path.display())))?;
    f.write_all(bytes)
        .map_err(|e| CavityError::Io(format!("{}: {e}", path.display())))
}

/// 17 significant digits.
fn write_value(s: &mut String, v: f64, integer: bool) {
    if v.is_nan() {
        s.push_str("NaN");
    } else if integer {
        let _ = write!(s, "{}", v as i64);
    } else {
        let _ = write!(s, "{v:.16e}");
    }
}

fn number(v: f64) -> Value {
    serde_json::Number::from_f64(v).map(Value::Number).unwrap_or(Value::Null)
}

/// Runs the request on the current rayon pool.
pub fn run_scan(request: &ScanRequest) -> Result<ScanOutput> {
    request.validate()?;
    match request.kind {
        ScanKind::Shift1d | ScanKind::Shift2d => shift_scan(request),
        ScanKind::ReflectivitySweep => reflectivity_sweep(request),
        ScanKind::FinesseScan => finesse_scan(request),
        ScanKind::CouplingReport => coupling_scan(request),
    }
}

/// Runs the request on a dedicated pool of `threads` workers.
pub fn run_scan_with_threads(request: &ScanRequest, threads: usize) -> Result<ScanOutput> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| CavityError::InvalidConfig(format!("thread pool: {e}")))?;
    pool.install(|| run_scan(request))
}

/// Collects values from a row computation, recording failures.
struct RowBuilder {
    values: Vec<f64>,
    failures: Vec<(String, CavityError)>,
}

impl RowBuilder {
    fn new() -> Self {
        RowBuilder { values: Vec::new(), failures: Vec::new() }
    }

    fn push(&mut self, v: f64) {
        self.values.push(v);
    }

    fn push_result(&mut self, what: &str, r: Result<f64>) -> bool {
        match r {
            Ok(v) => {
                self.values.push(v);
                true
            }
            Err(e) => {
                self.values.push(f64::NAN);
                self.failures.push((what.to_string(), e));
                false
            }
        }
    }

    fn finish(self) -> ScanRecord {
        ScanRecord { values: self.values, failures: self.failures }
    }
}

fn extremum(records: &[ScanRecord], col: usize, f: impl Fn(f64, f64) -> f64, init: f64) -> Value {
    let v = records.iter().map(|r| r.values[col]).filter(|v| v.is_finite()).fold(init, f);
    if v.is_finite() {
        number(v)
    } else {
        Value::Null
    }
}

fn max_abs(records: &[ScanRecord], col: usize) -> Value {
    extremum(records, col, |acc, v| acc.max(v.abs()), f64::NEG_INFINITY)
}

fn base_summary(request: &ScanRequest, records: &[ScanRecord]) -> serde_json::Map<String, Value> {
    let failures: Vec<Value> = records
        .iter()
        .enumerate()
        .flat_map(|(row, r)| {
            r.failures.iter().map(move |(what, e)| {
                json!({ "row": row, "what": what, "code": e.code(), "message": e.to_string() })
            })
        })
        .collect();
    let mut m = serde_json::Map::new();
    m.insert("kind".into(), json!(request.kind.name()));
    m.insert("mode_index".into(), json!(request.mode()));
    m.insert("rows".into(), json!(records.len()));
    m.insert("warnings".into(), json!(failures.len()));
    m.insert("failures".into(), Value::Array(failures));
    m
}

fn shift_scan(request: &ScanRequest) -> Result<ScanOutput> {
    let two_d = request.kind == ScanKind::Shift2d;
    let m = request.mode();
    let a_values = request.a_axis.map(|a| a.values()).unwrap_or_default();
    let b_values = request.b_axis.map(|b| b.values()).unwrap_or_else(|| vec![0.0]);
    let units: Vec<(CavityConfig, f64)> = request
        .unit_configs()?
        .into_iter()
        .flat_map(|c| b_values.iter().map(move |&b| (c, b)))
        .collect();

    let blocks: Vec<Vec<ScanRecord>> = units
        .par_iter()
        .map(|(base, b)| {
            let mut hint = None;
            a_values
                .iter()
                .map(|&a| {
                    let c = request.point(base, a, *b);
                    let (rec, k) = shift_row(&c, m, a, *b, two_d, &request.methods, hint);
                    if k.is_some() {
                        hint = k;
                    }
                    rec
                })
                .collect()
        })
        .collect();
    let records: Vec<ScanRecord> = blocks.into_iter().flatten().collect();

    let mut columns = vec![real("a")];
    if two_d {
        columns.push(real("b"));
    }
    columns.extend([
        real("q_m"),
        real("Q_m"),
        real("Rm"),
        real("dk_exact"),
        real("dk_zeroth"),
        real("dk_first"),
        real("Tc_max"),
        int("converged"),
    ]);
    let off = usize::from(two_d);
    let mut summary = base_summary(request, &records);
    summary.insert("max_abs_dk_exact".into(), max_abs(&records, 4 + off));
    summary.insert("max_abs_dk_zeroth".into(), max_abs(&records, 5 + off));
    summary.insert("max_abs_dk_first".into(), max_abs(&records, 6 + off));
    summary.insert("dk_bound".into(), number(2.0 * std::f64::consts::PI / request.cavity.length));
    summary.insert("per_reflectivity".into(), per_reflectivity(&records, 3 + off, 4 + off, 5 + off));
    Ok(ScanOutput { kind: request.kind, columns, records, summary: Value::Object(summary) })
}

fn per_reflectivity(records: &[ScanRecord], rm_col: usize, exact_col: usize, zeroth_col: usize) -> Value {
    let mut groups: Vec<(f64, Vec<&ScanRecord>)> = Vec::new();
    for r in records {
        let rm = r.values[rm_col];
        match groups.iter_mut().find(|(v, _)| *v == rm) {
            Some((_, g)) => g.push(r),
            None => groups.push((rm, vec![r])),
        }
    }
    Value::Array(
        groups
            .into_iter()
            .map(|(rm, g)| {
                let col = |i: usize| g.iter().map(move |r| r.values[i]).filter(|v: &f64| v.is_finite());
                let min = col(exact_col).fold(f64::INFINITY, f64::min);
                let max = col(exact_col).fold(f64::NEG_INFINITY, f64::max);
                let err = g
                    .iter()
                    .map(|r| (r.values[zeroth_col] - r.values[exact_col]).abs())
                    .filter(|v| v.is_finite())
                    .fold(f64::NEG_INFINITY, f64::max);
                json!({
                    "Rm": number(rm),
                    "dk_exact_min": number(min),
                    "dk_exact_max": number(max),
                    "max_abs_zeroth_error": number(err),
                })
            })
            .collect(),
    )
}

/// One shift row and the exact wavenumber for the next hint.
fn shift_row(
    c: &CavityConfig,
    m: u64,
    a: f64,
    b: f64,
    two_d: bool,
    methods: &[Method],
    hint: Option<f64>,
) -> (ScanRecord, Option<f64>) {
    let mut row = RowBuilder::new();
    row.push(a);
    if two_d {
        row.push(b);
    }
    row.push(c.separation);
    row.push(c.com);
    row.push(c.membrane_at(empty_mode(m, c.length)).map(|x| x.reflectivity).unwrap_or(f64::NAN));
    let mut ok = true;
    let mut exact_k = None;
    for method in [Method::Exact, Method::Zeroth, Method::First] {
        if !methods.contains(&method) {
            row.push(f64::NAN);
            continue;
        }
        let sol = match method {
            Method::Exact => modes::exact_shift_near(c, m, hint),
            other => modes::solve(c, m, other),
        };
        if let (Method::Exact, Ok(s)) = (method, &sol) {
            exact_k = Some(s.k);
            if !s.converged {
                ok = false;
            }
        }
        ok &= row.push_result(method.name(), sol.map(|s: ModeSolution| s.delta_k));
    }
    let tc = match exact_k {
        Some(k) => transmission(c, k),
        None => modes::transmission_peak(c, empty_mode(m, c.length)),
    };
    ok &= row.push_result("Tc_max", tc);
    row.push(if ok { 1.0 } else { 0.0 });
    (row.finish(), exact_k)
}

fn reflectivity_sweep(request: &ScanRequest) -> Result<ScanOutput> {
    let m = request.mode();
    let mech = request.mechanics;
    let a_values = request.a_axis.map(|a| a.values()).unwrap_or_default();
    let units = request.unit_configs()?;

    let blocks: Vec<(Vec<ScanRecord>, Value)> = units
        .par_iter()
        .map(|base| {
            let rows = a_values
                .iter()
                .map(|&a| {
                    let c = request.point(base, a, 0.0);
                    let mut row = RowBuilder::new();
                    let mem = c.membrane_at(empty_mode(m, c.length));
                    row.push(a);
                    row.push(c.separation);
                    row.push(c.com);
                    row.push(mem.as_ref().map(|x| x.reflectivity).unwrap_or(f64::NAN));
                    row.push(mem.as_ref().map(|x| x.transmissivity).unwrap_or(f64::NAN));
                    let mut ok = row.push_result("dk_exact", modes::exact_shift(&c, m).map(|s| s.delta_k));
                    let g = coupling::coupling_numeric(&c, m, &mech, Coordinate::Relative);
                    let cap = coupling::coupling_cap(&c, m, &mech);
                    ok &= row.push_result("g_q", g.clone());
                    row.push(g.map(|g| g / cap).unwrap_or(f64::NAN));
                    row.push(cap);
                    row.push(if ok { 1.0 } else { 0.0 });
                    row.finish()
                })
                .collect();
            let peak = match coupling::peak_coupling(base, m, &mech) {
                Ok(p) => json!({
                    "Tm": number(base.membrane_at(empty_mode(m, base.length)).map(|x| x.transmissivity).unwrap_or(f64::NAN)),
                    "separation_m": number(p.separation),
                    "peak_g_q": number(p.g_q),
                    "g_q_max": number(p.g_q_max),
                    "peak_g_over_max": number(p.saturation()),
                }),
                Err(e) => json!({ "code": e.code(), "message": e.to_string() }),
            };
            (rows, peak)
        })
        .collect();
    let mut records = Vec::new();
    let mut peaks = Vec::new();
    for (rows, peak) in blocks {
        records.extend(rows);
        peaks.push(peak);
    }
    let columns = vec![
        real("a"),
        real("q_m"),
        real("Q_m"),
        real("Rm"),
        real("Tm"),
        real("dk_exact"),
        real("g_q"),
        real("g_q_over_max"),
        real("g_q_max"),
        int("converged"),
    ];
    let mut summary = base_summary(request, &records);
    summary.insert("max_abs_g_q".into(), max_abs(&records, 6));
    summary.insert("peaks".into(), Value::Array(peaks));
    Ok(ScanOutput { kind: request.kind, columns, records, summary: Value::Object(summary) })
}

fn finesse_scan(request: &ScanRequest) -> Result<ScanOutput> {
    let m = request.mode();
    let a_values = request.a_axis.map(|a| a.values()).unwrap_or_default();
    let units = request.unit_configs()?;
    let blocks: Vec<Vec<ScanRecord>> = units
        .par_iter()
        .map(|base| {
            let mut hint = None;
            a_values
                .iter()
                .map(|&a| {
                    let c = request.point(base, a, 0.0);
                    let mut row = RowBuilder::new();
                    row.push(a);
                    row.push(c.separation);
                    row.push(c.com);
                    row.push(c.membrane_at(empty_mode(m, c.length)).map(|x| x.reflectivity).unwrap_or(f64::NAN));
                    let sol = modes::exact_shift_near(&c, m, hint);
                    let rep = sol.clone().and_then(|s| {
                        hint = Some(s.k);
                        finesse_at(&c, &s)
                    });
                    let mut ok = row.push_result("dk_exact", sol.map(|s| s.delta_k));
                    ok &= row.push_result("finesse_numeric", rep.clone().map(|r| r.finesse_numeric));
                    row.push(rep.clone().ok().and_then(|r| r.finesse_closed).unwrap_or(f64::NAN));
                    row.push(finesse_empty(c.mirror_reflectivity));
                    row.push(rep.clone().map(|r| r.kappa).unwrap_or(f64::NAN));
                    row.push(rep.clone().map(|r| r.tc_max).unwrap_or(f64::NAN));
                    row.push(rep.map(|r| r.asymmetry).unwrap_or(f64::NAN));
                    row.push(if ok { 1.0 } else { 0.0 });
                    row.finish()
                })
                .collect()
        })
        .collect();
    let records: Vec<ScanRecord> = blocks.into_iter().flatten().collect();
    let columns = vec![
        real("a"),
        real("q_m"),
        real("Q_m"),
        real("Rm"),
        real("dk_exact"),
        real("finesse_numeric"),
        real("finesse_closed"),
        real("finesse_empty"),
        real("kappa"),
        real("Tc_max"),
        real("asymmetry"),
        int("converged"),
    ];
    let mut summary = base_summary(request, &records);
    summary.insert("min_finesse".into(), extremum(&records, 5, f64::min, f64::INFINITY));
    summary.insert("max_finesse".into(), extremum(&records, 5, f64::max, f64::NEG_INFINITY));
    summary.insert("finesse_empty".into(), number(finesse_empty(request.cavity.mirror_reflectivity)));
    Ok(ScanOutput { kind: request.kind, columns, records, summary: Value::Object(summary) })
}

/// Every coupling and figure-of-merit quantity at one configuration.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StrongCouplingReport {
    pub mode_index: u64,
    pub separation: f64,
    pub g_q: f64,
    pub g_com: f64,
    pub g1: f64,
    pub g2: f64,
    pub g_sing: f64,
    pub g_q_max: f64,
    pub g_q_analytic: Option<f64>,
    pub enhancement: f64,
    pub x_zpm: f64,
    pub omega0: f64,
    pub finesse: f64,
    pub finesse_computed: Option<f64>,
    pub kappa: f64,
    pub g_over_kappa: f64,
    pub g_max_over_kappa: f64,
    pub cooperativity: Option<f64>,
}

pub fn strong_coupling_report(request: &ScanRequest) -> Result<StrongCouplingReport> {
    request.validate()?;
    let m = request.mode();
    let mech = request.mechanics;
    let mut c = request.cavity;
    if request.optimize_separation {
        c = c.with_separation(coupling::peak_coupling(&c, m, &mech)?.separation);
    }
    let rep = coupling::coupling_report(&c, m, &mech)?;
    let computed = crate::finesse::finesse_numeric(&c, m).map(|f| f.finesse_numeric);
    let finesse = match (request.finesse_override, &computed) {
        (Some(f), _) => f,
        (None, Ok(f)) => *f,
        (None, Err(e)) => return Err(e.clone()),
    };
    let k = kappa(c.length, finesse);
    let coop = match coupling::cooperativity(rep.g_q, k, &mech) {
        Ok(v) => Some(v),
        Err(CavityError::MissingDamping) => None,
        Err(e) => return Err(e),
    };
    Ok(StrongCouplingReport {
        mode_index: m,
        separation: c.separation,
        g_q: rep.g_q,
        g_com: rep.g_com,
        g1: rep.g1,
        g2: rep.g2,
        g_sing: rep.g_sing,
        g_q_max: rep.g_q_max,
        g_q_analytic: rep.g_q_analytic,
        enhancement: rep.enhancement,
        x_zpm: rep.x_zpm,
        omega0: rep.omega0,
        finesse,
        finesse_computed: computed.ok(),
        kappa: k,
        g_over_kappa: rep.g_q.abs() / k,
        g_max_over_kappa: cap_over_kappa(&c, m, &mech, finesse),
        cooperativity: coop,
    })
}

fn coupling_scan(request: &ScanRequest) -> Result<ScanOutput> {
    let r = strong_coupling_report(request)?;
    let opt = |v: Option<f64>| v.unwrap_or(f64::NAN);
    let values = vec![
        r.separation,
        request.cavity.com,
        r.g_q,
        r.g_com,
        r.g1,
        r.g2,
        r.g_sing,
        r.g_q_max,
        opt(r.g_q_analytic),
        r.enhancement,
        r.x_zpm,
        r.omega0,
        r.finesse,
        r.kappa,
        r.g_over_kappa,
        r.g_max_over_kappa,
        opt(r.cooperativity),
    ];
    let columns = vec![
        real("q_m"),
        real("Q_m"),
        real("g_q"),
        real("g_Q"),
        real("g1"),
        real("g2"),
        real("g_sing"),
        real("g_q_max"),
        real("g_q_analytic"),
        real("enhancement"),
        real("x_zpm"),
        real("omega0"),
        real("finesse"),
        real("kappa"),
        real("g_over_kappa"),
        real("g_max_over_kappa"),
        real("C0"),
    ];
    let records = vec![ScanRecord { values, failures: Vec::new() }];
    let mut summary = base_summary(request, &records);
    summary.insert("report".into(), serde_json::to_value(r).unwrap_or(Value::Null));
    Ok(ScanOutput { kind: request.kind, columns, records, summary: Value::Object(summary) })
}
