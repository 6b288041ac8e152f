//! Command-line front end: argument parsing, the four commands and the
//! JSON / CSV output records.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::geometry::{
    gram_mild, gram_prism, MildTetConfig, PrismTetConfig, VertexSign, PRISM_SIGNS, THETA_LABELS,
};
use crate::jacobian::{dual_jacobian_mild, dual_jacobian_prism, finite_difference_jacobian, DualJacobian};
use crate::prism::{phi_prime_with, prism_volume, PrismSpec, SlotOrientation, SolveOptions};
use crate::volume::{mu_angle, tet_report, tet_volume};

pub const SCHEMA: &str = "hyptet-output/1";

/// Parses radians given as a decimal number or as a rational multiple of
/// pi: `pi`, `-pi/3`, `2pi/5`, `2*pi/5`, `0.5π`, `1.2`, `3/4`.
pub fn parse_angle(text: &str) -> Result<f64> {
    let err = |why: &str| Error::Parse(format!("cannot read angle '{text}': {why}"));
    let s = text.trim();
    if s.is_empty() {
        return Err(err("empty"));
    }
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (s, None),
    };
    let numerator = if let Some(pos) = num.find("pi").or_else(|| num.find('π')) {
        let tail_len = if num[pos..].starts_with("pi") { 2 } else { 'π'.len_utf8() };
        if !num[pos + tail_len..].trim().is_empty() {
            return Err(err("unexpected text after pi"));
        }
        let head = num[..pos].trim();
        let coef = head.strip_suffix('*').unwrap_or(head).trim();
        let c = match coef {
            "" | "+" => 1.0,
            "-" => -1.0,
            _ => parse_number(coef).ok_or_else(|| err("bad coefficient"))?,
        };
        c * PI
    } else {
        parse_number(num).ok_or_else(|| err("not a number"))?
    };
    let value = match den {
        None => numerator,
        Some(d) => {
            let d = parse_number(d).ok_or_else(|| err("bad denominator"))?;
            if d == 0.0 {
                return Err(err("zero denominator"));
            }
            numerator / d
        }
    };
    if !value.is_finite() {
        return Err(err("not finite"));
    }
    Ok(value)
}

fn parse_number(s: &str) -> Option<f64> {
    let ok = !s.is_empty() && s.chars().all(|c| c.is_ascii_digit() || matches!(c, '.' | '-' | '+' | 'e' | 'E'));
    if !ok {
        return None;
    }
    s.parse::<f64>().ok().filter(|v| v.is_finite())
}

/// Comma separated angles.
pub fn parse_angle_list(text: &str) -> Result<Vec<f64>> {
    if text.trim().is_empty() {
        return Err(Error::Parse("empty angle list".into()));
    }
    text.split(',').map(parse_angle).collect()
}

fn parse_signs(text: &str) -> Result<[VertexSign; 4]> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    if parts.len() != 4 {
        return Err(Error::Parse(format!("expected four signs, got '{text}'")));
    }
    let mut out = [VertexSign::Proper; 4];
    for (slot, p) in out.iter_mut().zip(parts) {
        let v: i32 = p
            .parse()
            .map_err(|_| Error::Parse(format!("sign '{p}' is not an integer")))?;
        *slot = VertexSign::from_value(v).map_err(|e| Error::Parse(e.to_string()))?;
    }
    Ok(out)
}

fn angle_arg(s: &str) -> std::result::Result<f64, String> {
    parse_angle(s).map_err(|e| e.to_string())
}

fn number_arg(s: &str) -> std::result::Result<f64, String> {
    parse_number(s.trim()).ok_or_else(|| format!("'{s}' is not a finite number"))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum Format {
    #[default]
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(name = "hyptet", version, about = "Volumes, angles and dual Jacobians of truncated hyperbolic tetrahedra and prisms")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Volume, angle and edge lengths of a prism truncated tetrahedron.
    Tet(TetArgs),
    /// Dual Jacobian of a mildly or prism truncated tetrahedron.
    Jacobian(JacobianArgs),
    /// Volume of an n-gonal prism.
    Prism(PrismArgs),
    /// Tabulate a quantity against ell.
    Scan(ScanArgs),
}

#[derive(Debug, Clone, Args)]
pub struct ThetaArgs {
    #[arg(long, value_parser = angle_arg, allow_hyphen_values = true)]
    pub theta1: Option<f64>,
    #[arg(long, value_parser = angle_arg, allow_hyphen_values = true)]
    pub theta2: Option<f64>,
    #[arg(long, value_parser = angle_arg, allow_hyphen_values = true)]
    pub theta3: Option<f64>,
    #[arg(long, value_parser = angle_arg, allow_hyphen_values = true)]
    pub theta5: Option<f64>,
    #[arg(long, value_parser = angle_arg, allow_hyphen_values = true)]
    pub theta6: Option<f64>,
}

impl ThetaArgs {
    fn values(&self) -> Result<[f64; 5]> {
        let v = [self.theta1, self.theta2, self.theta3, self.theta5, self.theta6];
        let mut out = [0.0; 5];
        for ((slot, value), name) in out.iter_mut().zip(v).zip(THETA_LABELS) {
            *slot = value.ok_or_else(|| Error::Parse(format!("missing --{name}")))?;
        }
        Ok(out)
    }

    fn is_empty(&self) -> bool {
        [self.theta1, self.theta2, self.theta3, self.theta5, self.theta6]
            .iter()
            .all(Option::is_none)
    }
}

#[derive(Debug, Clone, Args)]
pub struct TetArgs {
    #[command(flatten)]
    pub theta: ThetaArgs,
    #[arg(long, value_parser = number_arg, allow_hyphen_values = true)]
    pub ell: f64,
    /// Allowed gap between the two ways of computing mu.
    #[arg(long, value_parser = number_arg, default_value = "1e-8")]
    pub tol: f64,
}

#[derive(Debug, Clone, Args)]
pub struct JacobianArgs {
    #[arg(long, conflicts_with = "prism")]
    pub mild: bool,
    #[arg(long)]
    pub prism: bool,
    /// Six angles a12,a13,a14,a23,a24,a34.
    #[arg(long, allow_hyphen_values = true)]
    pub angles: Option<String>,
    /// Four vertex signs, e.g. -1,-1,1,1.
    #[arg(long, allow_hyphen_values = true)]
    pub signs: Option<String>,
    #[command(flatten)]
    pub theta: ThetaArgs,
    #[arg(long, value_parser = number_arg, allow_hyphen_values = true)]
    pub ell: Option<f64>,
    /// Compare with central finite differences.
    #[arg(long)]
    pub check_fd: bool,
    #[arg(long, value_parser = number_arg, default_value = "1e-5")]
    pub step: f64,
}

#[derive(Debug, Clone, Args)]
pub struct PrismSpecArgs {
    #[arg(long)]
    pub n: Option<usize>,
    /// One angle for every side, or n comma separated angles.
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub beta: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub gamma: Option<String>,
    /// Use the mirrored angle slot assignment.
    #[arg(long)]
    pub mirrored: bool,
}

impl PrismSpecArgs {
    fn spec(&self) -> Result<PrismSpec> {
        let n = self.n.ok_or_else(|| Error::Parse("missing --n".into()))?;
        let list = |name: &str, v: &Option<String>| -> Result<Vec<f64>> {
            let text = v.as_ref().ok_or_else(|| Error::Parse(format!("missing --{name}")))?;
            let vals = parse_angle_list(text)?;
            match vals.len() {
                1 => Ok(vec![vals[0]; n]),
                m if m == n => Ok(vals),
                m => Err(Error::Parse(format!("--{name} has {m} values; expected 1 or {n}"))),
            }
        };
        PrismSpec::new(n, list("alpha", &self.alpha)?, list("beta", &self.beta)?, list("gamma", &self.gamma)?)
    }

    fn orientation(&self) -> SlotOrientation {
        if self.mirrored {
            SlotOrientation::Mirrored
        } else {
            SlotOrientation::Standard
        }
    }

    fn is_empty(&self) -> bool {
        self.n.is_none() && self.alpha.is_none() && self.beta.is_none() && self.gamma.is_none()
    }
}

#[derive(Debug, Clone, Args)]
pub struct PrismArgs {
    #[command(flatten)]
    pub spec: PrismSpecArgs,
    #[arg(long, value_parser = number_arg, default_value = "1e-12")]
    pub tol: f64,
    /// Number of doublings of the initial bracket end.
    #[arg(long, default_value_t = 5)]
    pub max_expand: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Quantity {
    TetVolume,
    PhiPrime,
    Mu,
}

impl Quantity {
    fn name(self) -> &'static str {
        match self {
            Quantity::TetVolume => "tet-volume",
            Quantity::PhiPrime => "phi-prime",
            Quantity::Mu => "mu",
        }
    }

    fn unit(self) -> &'static str {
        match self {
            Quantity::TetVolume => "volume",
            Quantity::PhiPrime | Quantity::Mu => "radians",
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct ScanArgs {
    #[arg(long, value_enum)]
    pub quantity: Quantity,
    #[arg(long, value_parser = number_arg, allow_hyphen_values = true)]
    pub from: f64,
    #[arg(long, value_parser = number_arg, allow_hyphen_values = true)]
    pub to: f64,
    /// Number of intervals; steps + 1 rows are emitted.
    #[arg(long)]
    pub steps: usize,
    #[command(flatten)]
    pub theta: ThetaArgs,
    #[command(flatten)]
    pub spec: PrismSpecArgs,
}

/// One command's output.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OutputRecord {
    pub schema: String,
    pub command: String,
    pub argv: Vec<String>,
    pub inputs: BTreeMap<String, Value>,
    pub results: BTreeMap<String, Value>,
    pub diagnostics: BTreeMap<String, Value>,
    pub units: BTreeMap<String, String>,
}

impl OutputRecord {
    pub fn new(command: &str, argv: &[String]) -> Self {
        OutputRecord {
            schema: SCHEMA.to_string(),
            command: command.to_string(),
            argv: argv.to_vec(),
            inputs: BTreeMap::new(),
            results: BTreeMap::new(),
            diagnostics: BTreeMap::new(),
            units: BTreeMap::new(),
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let rec: OutputRecord =
            serde_json::from_str(text).map_err(|e| Error::Parse(format!("output record: {e}")))?;
        if rec.schema != SCHEMA {
            return Err(Error::Parse(format!("unknown schema '{}'", rec.schema)));
        }
        Ok(rec)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("records hold only finite numbers")
    }

    /// Two columns `name,value`; nested arrays are flattened with indices.
    pub fn to_csv(&self) -> String {
        if let Some(Value::Array(rows)) = self.results.get("rows") {
            return self.scan_csv(rows);
        }
        let mut out = String::from("name,value\n");
        for (k, v) in self.results.iter() {
            flatten_csv(&mut out, k, v);
        }
        out
    }

    fn scan_csv(&self, rows: &[Value]) -> String {
        let param = self.results.get("parameter").and_then(Value::as_str).unwrap_or("x");
        let quantity = self.results.get("quantity").and_then(Value::as_str).unwrap_or("y");
        let mut out = format!("{param},{quantity},status\n");
        for row in rows {
            let x = row.get("x").and_then(Value::as_f64).unwrap_or(f64::NAN);
            match row.get("y").and_then(Value::as_f64) {
                Some(y) => out.push_str(&format!("{},{},ok\n", csv_number(x), csv_number(y))),
                None => {
                    let reason = row.get("gap").and_then(Value::as_str).unwrap_or("invalid");
                    out.push_str(&format!("{},,gap: {}\n", csv_number(x), csv_quote(reason)));
                }
            }
        }
        out
    }

    pub fn all_numbers_finite(&self) -> bool {
        fn finite(v: &Value) -> bool {
            match v {
                Value::Number(n) => n.as_f64().map(f64::is_finite).unwrap_or(true),
                Value::Array(a) => a.iter().all(finite),
                Value::Object(o) => o.values().all(finite),
                _ => true,
            }
        }
        [&self.inputs, &self.results, &self.diagnostics]
            .iter()
            .all(|m| m.values().all(finite))
    }
}

fn csv_number(v: f64) -> String {
    format!("{v:.16e}")
}

fn csv_quote(s: &str) -> String {
    if s.contains(',') || s.contains('"') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn flatten_csv(out: &mut String, key: &str, v: &Value) {
    match v {
        Value::Array(a) => {
            for (i, x) in a.iter().enumerate() {
                flatten_csv(out, &format!("{key}[{i}]"), x);
            }
        }
        Value::Object(o) => {
            for (k, x) in o.iter() {
                flatten_csv(out, &format!("{key}.{k}"), x);
            }
        }
        Value::Number(n) => match n.as_f64() {
            Some(f) if n.is_f64() => out.push_str(&format!("{key},{}\n", csv_number(f))),
            _ => out.push_str(&format!("{key},{n}\n")),
        },
        Value::String(s) => out.push_str(&format!("{key},{}\n", csv_quote(s))),
        other => out.push_str(&format!("{key},{other}\n")),
    }
}

fn num(v: f64) -> Result<Value> {
    if v.is_finite() {
        Ok(json!(v))
    } else {
        Err(Error::NonFinite(format!("result {v}")))
    }
}

fn complex_value(z: num_complex::Complex64) -> Result<Value> {
    Ok(json!([num(z.re)?, num(z.im)?]))
}

fn prism_tet_inputs(rec: &mut OutputRecord, cfg: &PrismTetConfig) -> Result<()> {
    for (name, &t) in THETA_LABELS.iter().zip(cfg.theta.iter()) {
        rec.inputs.insert(name.to_string(), num(t)?);
        rec.units.insert(name.to_string(), "radians".into());
    }
    rec.inputs.insert("ell".into(), num(cfg.ell)?);
    rec.units.insert("ell".into(), "hyperbolic length".into());
    Ok(())
}

fn validity_diagnostics(rec: &mut OutputRecord, det: f64, minors: [f64; 4], signs: &[VertexSign; 4]) -> Result<()> {
    rec.diagnostics.insert("det_gram".into(), num(det)?);
    let signed: Vec<Value> = (0..4)
        .map(|i| num(signs[i].as_f64() * minors[i]))
        .collect::<Result<_>>()?;
    rec.diagnostics.insert("signed_minors".into(), Value::Array(signed));
    Ok(())
}

pub fn cmd_tet(args: &TetArgs, argv: &[String]) -> Result<OutputRecord> {
    let cfg = PrismTetConfig::new(args.theta.values()?, args.ell)?;
    let mut rec = OutputRecord::new("tet", argv);
    prism_tet_inputs(&mut rec, &cfg)?;
    let g = gram_prism(&cfg);
    validity_diagnostics(&mut rec, g.det(), g.minors(), &PRISM_SIGNS)?;
    let r = tet_report(&cfg)?;
    if (r.mu - r.mu_gram).abs() > args.tol {
        return Err(Error::Inconsistent(format!(
            "mu from the volume formula ({}) and from the Gram matrix ({}) differ by more than {:e}",
            r.mu, r.mu_gram, args.tol
        )));
    }
    rec.results.insert("volume".into(), num(r.volume)?);
    rec.results.insert("mu".into(), num(r.mu)?);
    rec.units.insert("volume".into(), "volume".into());
    rec.units.insert("mu".into(), "radians".into());
    for (name, &l) in ["l1", "l2", "l3", "l5", "l6"].iter().zip(r.lengths.iter()) {
        rec.results.insert(name.to_string(), num(l)?);
        rec.units.insert(name.to_string(), "hyperbolic length".into());
    }
    let c = &r.critical;
    rec.diagnostics.insert("mu_gram".into(), num(r.mu_gram)?);
    rec.diagnostics.insert("z_minus".into(), complex_value(c.z_minus)?);
    rec.diagnostics.insert("z_plus".into(), complex_value(c.z_plus)?);
    rec.diagnostics.insert("discriminant".into(), complex_value(c.discriminant)?);
    rec.diagnostics.insert("quadratic_residual".into(), num(c.quadratic_residual)?);
    rec.diagnostics.insert("exponential_residual".into(), num(c.exponential_residual)?);
    rec.diagnostics.insert("m_minus".into(), json!(c.m_minus));
    rec.diagnostics.insert("m_plus".into(), json!(c.m_plus));
    rec.diagnostics.insert("valid".into(), json!(true));
    Ok(rec)
}

fn jacobian_value(j: &DualJacobian) -> Result<Value> {
    let rows: Vec<Value> = j
        .matrix
        .iter()
        .map(|row| row.iter().map(|&v| num(v)).collect::<Result<Vec<_>>>().map(Value::Array))
        .collect::<Result<_>>()?;
    Ok(Value::Array(rows))
}

pub fn cmd_jacobian(args: &JacobianArgs, argv: &[String]) -> Result<OutputRecord> {
    let mut rec = OutputRecord::new("jacobian", argv);
    let (jac, fd) = if args.prism {
        let ell = args.ell.ok_or_else(|| Error::Parse("missing --ell".into()))?;
        let cfg = PrismTetConfig::new(args.theta.values()?, ell)?;
        prism_tet_inputs(&mut rec, &cfg)?;
        let g = gram_prism(&cfg);
        validity_diagnostics(&mut rec, g.det(), g.minors(), &PRISM_SIGNS)?;
        let j = dual_jacobian_prism(&cfg)?;
        let fd = if args.check_fd {
            Some(finite_difference_jacobian(&cfg, args.step)?)
        } else {
            None
        };
        (j, fd)
    } else if args.mild {
        let text = args.angles.as_ref().ok_or_else(|| Error::Parse("missing --angles".into()))?;
        let angles = parse_angle_list(text)?;
        let angles: [f64; 6] = angles
            .try_into()
            .map_err(|v: Vec<f64>| Error::Parse(format!("--angles needs six values, got {}", v.len())))?;
        let signs = parse_signs(args.signs.as_deref().ok_or_else(|| Error::Parse("missing --signs".into()))?)?;
        let cfg = MildTetConfig::new(angles, signs)?;
        rec.inputs.insert("angles".into(), Value::Array(angles.iter().map(|&a| num(a)).collect::<Result<_>>()?));
        rec.inputs.insert("signs".into(), json!(signs.map(VertexSign::value)));
        rec.units.insert("angles".into(), "radians".into());
        let g = gram_mild(&cfg);
        validity_diagnostics(&mut rec, g.det(), g.minors(), &signs)?;
        let j = dual_jacobian_mild(&cfg)?;
        rec.diagnostics.insert("asymmetry".into(), num(j.asymmetry())?);
        let fd = if args.check_fd {
            Some(finite_difference_jacobian(&cfg, args.step)?)
        } else {
            None
        };
        (j, fd)
    } else {
        return Err(Error::Parse("choose --mild or --prism".into()));
    };
    rec.results.insert("matrix".into(), jacobian_value(&jac)?);
    rec.results.insert("row_labels".into(), json!(jac.kind.row_labels()));
    rec.results.insert("column_labels".into(), json!(jac.kind.column_labels()));
    rec.results.insert("layout".into(), json!("row-major; entry (r, c) = d row_label[r] / d column_label[c]"));
    if let Some(fd) = fd {
        rec.results.insert("fd_relative_deviation".into(), num(jac.relative_deviation(&fd))?);
        rec.diagnostics.insert("fd_step".into(), num(args.step)?);
        rec.diagnostics.insert("fd_metric".into(), json!("max|J - F| / max|F|"));
    }
    Ok(rec)
}

pub fn cmd_prism(args: &PrismArgs, argv: &[String]) -> Result<OutputRecord> {
    let spec = args.spec.spec()?;
    let options = SolveOptions {
        tol: args.tol,
        max_expand: args.max_expand,
        orientation: args.spec.orientation(),
        ..SolveOptions::default()
    };
    let mut rec = OutputRecord::new("prism", argv);
    rec.inputs.insert("n".into(), json!(spec.n));
    for (name, v) in [("alpha", &spec.alpha), ("beta", &spec.beta), ("gamma", &spec.gamma)] {
        rec.inputs.insert(name.into(), Value::Array(v.iter().map(|&a| num(a)).collect::<Result<_>>()?));
        rec.units.insert(name.into(), "radians".into());
    }
    rec.inputs.insert("tol".into(), num(args.tol)?);
    rec.inputs.insert("orientation".into(), json!(format!("{:?}", options.orientation).to_lowercase()));
    let sol = prism_volume(&spec, &options)?;
    rec.results.insert("ell_star".into(), num(sol.ell_star)?);
    rec.results.insert("mu_k".into(), Value::Array(sol.mu_k.iter().map(|&a| num(a)).collect::<Result<_>>()?));
    rec.results.insert(
        "tet_volumes".into(),
        Value::Array(sol.tet_volumes.iter().map(|&a| num(a)).collect::<Result<_>>()?),
    );
    rec.results.insert("total_volume".into(), num(sol.total_volume)?);
    rec.units.insert("ell_star".into(), "hyperbolic length".into());
    rec.units.insert("mu_k".into(), "radians".into());
    rec.units.insert("tet_volumes".into(), "volume".into());
    rec.units.insert("total_volume".into(), "volume".into());
    rec.diagnostics.insert("iterations".into(), json!(sol.iterations));
    rec.diagnostics.insert("residual".into(), num(sol.residual)?);
    rec.diagnostics.insert("bracket".into(), json!([num(sol.bracket.0)?, num(sol.bracket.1)?]));
    rec.diagnostics.insert("mu_sum_minus_two_pi".into(), num(sol.mu_k.iter().sum::<f64>() - 2.0 * PI)?);
    Ok(rec)
}

pub fn cmd_scan(args: &ScanArgs, argv: &[String]) -> Result<OutputRecord> {
    if args.steps == 0 {
        return Err(Error::Parse("--steps must be at least 1".into()));
    }
    let mut rec = OutputRecord::new("scan", argv);
    rec.inputs.insert("from".into(), num(args.from)?);
    rec.inputs.insert("to".into(), num(args.to)?);
    rec.inputs.insert("steps".into(), json!(args.steps));
    let eval: Box<dyn Fn(f64) -> Result<f64>> = match args.quantity {
        Quantity::PhiPrime => {
            if !args.theta.is_empty() {
                return Err(Error::Parse("phi-prime scans take the prism flags, not --theta*".into()));
            }
            let spec = args.spec.spec()?;
            let orientation = args.spec.orientation();
            rec.inputs.insert("n".into(), json!(spec.n));
            for (name, v) in [("alpha", &spec.alpha), ("beta", &spec.beta), ("gamma", &spec.gamma)] {
                rec.inputs.insert(name.into(), Value::Array(v.iter().map(|&a| num(a)).collect::<Result<_>>()?));
            }
            Box::new(move |ell| phi_prime_with(&spec, ell, orientation))
        }
        q => {
            if !args.spec.is_empty() {
                return Err(Error::Parse(format!("{} scans take --theta* flags, not prism flags", q.name())));
            }
            let theta = args.theta.values()?;
            for (name, &t) in THETA_LABELS.iter().zip(theta.iter()) {
                rec.inputs.insert(name.to_string(), num(t)?);
            }
            Box::new(move |ell| {
                let cfg = PrismTetConfig::new(theta, ell)?;
                if q == Quantity::Mu {
                    mu_angle(&cfg)
                } else {
                    tet_volume(&cfg)
                }
            })
        }
    };
    let mut rows = Vec::with_capacity(args.steps + 1);
    let mut gaps = 0usize;
    for i in 0..=args.steps {
        let t = i as f64 / args.steps as f64;
        let x = if i == args.steps { args.to } else { args.from + (args.to - args.from) * t };
        match eval(x) {
            Ok(y) if y.is_finite() => rows.push(json!({"x": x, "y": y})),
            Ok(_) => {
                gaps += 1;
                rows.push(json!({"x": x, "y": null, "gap": "non-finite value"}));
            }
            Err(e) => {
                gaps += 1;
                rows.push(json!({"x": x, "y": null, "gap": e.to_string()}));
            }
        }
    }
    rec.results.insert("parameter".into(), json!("ell"));
    rec.results.insert("quantity".into(), json!(args.quantity.name()));
    rec.results.insert("rows".into(), Value::Array(rows));
    rec.units.insert("ell".into(), "hyperbolic length".into());
    rec.units.insert(args.quantity.name().into(), args.quantity.unit().into());
    rec.diagnostics.insert("gaps".into(), json!(gaps));
    Ok(rec)
}

/// Runs the CLI on `argv` (including the program name) and returns the
/// process exit code: 0 success, 1 parse error, 2 invalid configuration,
/// 3 solver failure.
pub fn run(argv: &[String], out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{text}");
                    0
                }
                _ => {
                    let _ = write!(err, "{text}");
                    1
                }
            };
        }
    };
    let rest = &argv[1.min(argv.len())..];
    let result = match &cli.command {
        Command::Tet(a) => cmd_tet(a, rest),
        Command::Jacobian(a) => cmd_jacobian(a, rest),
        Command::Prism(a) => cmd_prism(a, rest),
        Command::Scan(a) => cmd_scan(a, rest),
    };
    match result {
        Ok(rec) => {
            let text = match cli.format {
                Format::Json => rec.to_json() + "\n",
                Format::Csv => rec.to_csv(),
            };
            let _ = out.write_all(text.as_bytes());
            0
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
