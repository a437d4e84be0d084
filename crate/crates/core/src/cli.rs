//! Command-line front end.
//!
//! Every command builds a [`Report`]: named values, certificates and axiom
//! tallies. `--json` prints it as JSON; otherwise it is printed as a table.
//! Exit codes: 0 when every check passes, 1 when an identity fails, 2 for
//! usage and input errors, 3 when a witness search hits its bound.

use std::io::Read;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::cns::desc::{CnsDesc, CnsVariant, CubicSpec, JbkShapeDesc};
use crate::cns::{Cns, H3};
use crate::composition::{comp_axioms_check, nonassociative_triple, CompDesc};
use crate::error::{Error, Result};
use crate::freudenthal::{self, CubeJson, WElem, WElementJson};
use crate::lifting::law1::lift_wj;
use crate::lifting::law2::{bhargava_a1b1, pair_lift_h3};
use crate::lifting::lowrank::{rank2_h3_lift, rank2_w_lift, rank3_w_lift};
use crate::lifting::Structure;
use crate::report::{AxiomReport, Certificate};
use crate::rings_ideals::{
    balanced_to_cube, balanced_to_pair, cube_to_balanced, field_invariant_b1, field_invariant_b2, pair_to_balanced,
    IdealJson, IdealSA, IdealTC,
};
use crate::scalars::{q_to_rats, q_to_string, qi, qvec_to_json, rats_to_q, QElem, Rat, Scalar, Q};

/// Exit code for success.
pub const EXIT_OK: i32 = 0;
/// Exit code for a failed identity.
pub const EXIT_IDENTITY: i32 = 1;
/// Exit code for usage and input errors.
pub const EXIT_USAGE: i32 = 2;
/// Exit code for an exhausted witness search.
pub const EXIT_BOUND: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "lifting-laws", version, about = "Exact lifting laws, Freudenthal spaces and balanced ideals")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Common {
    /// Structure: a preset name (optionally `preset:NAME`) or inline JSON.
    #[arg(long)]
    structure: Option<String>,
    /// Input JSON file, or `-` for stdin.
    #[arg(long)]
    input: Option<String>,
    /// Number of random trials.
    #[arg(long, default_value_t = 100)]
    trials: usize,
    /// Seed for every random choice.
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Height bound for witness searches.
    #[arg(long, default_value_t = 4)]
    bound: i64,
    /// Print JSON instead of a table.
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run the axiom and identity suites of a structure.
    Verify(Common),
    /// Lift an element of `W_J` or a pair `(A, B)` and certify the lift.
    Lift(Common),
    /// Convert between `v ∈ W_A` and balanced `S ⊗ A`-ideals.
    Cube {
        #[command(flatten)]
        common: Common,
        /// Direction of the conversion.
        #[arg(long, value_enum, default_value_t = CubeTo::Ideals)]
        to: CubeTo,
        /// Coordinates of `v` as `a,b..,c..,d` instead of `--input`.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        coeffs: Option<Vec<String>>,
    },
    /// Lift a pair `(A, B) ∈ H_3(C)^2`, convert it to a balanced ideal or
    /// compute its invariant `μ`.
    Pair {
        #[command(flatten)]
        common: Common,
        /// `bhargava-a1b1` (with `--coeffs a,b,c,d`) or `diag`.
        #[arg(long)]
        preset: Option<String>,
        /// Coefficients for the preset.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        coeffs: Option<Vec<String>>,
        /// Compute the invariant `μ`.
        #[arg(long)]
        invariant: bool,
        /// Convert to balanced ideal data, or back to a pair.
        #[arg(long, value_enum)]
        to: Option<PairTo>,
    },
    /// Compute the invariant `λ` of `v ∈ W_A`.
    Invariant(Common),
    /// Lift a rank two or rank three element.
    Lowrank(Common),
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum CubeTo {
    /// From `v` to ideal data.
    Ideals,
    /// From ideal data to `v`.
    Cube,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum PairTo {
    /// From `(A, B)` to ideal data.
    Ideals,
    /// From ideal data to `(A, B)`.
    Pair,
}

/// Output of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunOutput {
    /// Process exit code.
    pub code: i32,
    /// Text for stdout.
    pub stdout: String,
    /// Text for stderr.
    pub stderr: String,
}

/// Named values, certificates and axiom tallies produced by a command.
#[derive(Clone, Debug, Default, Serialize)]
pub struct Report {
    /// What was computed.
    pub title: String,
    /// Named results in insertion order.
    pub values: Vec<(String, Value)>,
    /// Named certificates.
    pub certificates: Vec<(String, Certificate)>,
    /// Axiom tallies.
    pub suites: Vec<AxiomReport>,
}

impl Report {
    fn new(title: impl Into<String>) -> Self {
        Report { title: title.into(), ..Report::default() }
    }

    fn value(&mut self, name: &str, v: impl Serialize) -> &mut Self {
        self.values.push((name.to_string(), serde_json::to_value(v).expect("serializable")));
        self
    }

    fn cert(&mut self, name: &str, c: &Certificate) -> &mut Self {
        self.certificates.push((name.to_string(), c.clone()));
        self
    }

    /// True when every certificate and every suite passed.
    pub fn ok(&self) -> bool {
        self.certificates.iter().all(|(_, c)| c.all_passed()) && self.suites.iter().all(|s| s.all_passed())
    }

    /// JSON form.
    pub fn to_json(&self) -> Value {
        let values: serde_json::Map<String, Value> = self.values.iter().cloned().collect();
        let certs: serde_json::Map<String, Value> =
            self.certificates.iter().map(|(n, c)| (n.clone(), serde_json::to_value(c).expect("serializable"))).collect();
        json!({
            "title": self.title,
            "ok": self.ok(),
            "values": values,
            "certificates": certs,
            "suites": self.suites,
        })
    }

    /// Table form.
    pub fn to_text(&self) -> String {
        let mut out = format!("{}\n", self.title);
        for (name, v) in &self.values {
            let shown = match v {
                Value::String(s) => s.clone(),
                other => other.to_string(),
            };
            out.push_str(&format!("  {name}: {shown}\n"));
        }
        for (name, c) in &self.certificates {
            out.push_str(&format!("certificate {name}\n"));
            for e in &c.entries {
                out.push_str(&format!("  {:<4}  {}\n", e.status, e.identity));
            }
        }
        for s in &self.suites {
            out.push_str(&format!("suite {} ({} trials)\n", s.subject, s.trials));
            for t in &s.identities {
                out.push_str(&format!("  {:>5} pass {:>5} fail  {}\n", t.passed, t.failed, t.name));
                if let Some(w) = &t.first_counterexample {
                    out.push_str(&format!("      first failure: {w}\n"));
                }
            }
        }
        out.push_str(if self.ok() { "result: pass\n" } else { "result: FAIL\n" });
        out
    }
}

/// The exit code for an error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::IdentityFailed(_) => EXIT_IDENTITY,
        Error::BoundExceeded(_) => EXIT_BOUND,
        _ => EXIT_USAGE,
    }
}

/// Parses `argv` (including the program name) and runs the command.
pub fn run<I, T>(argv: I) -> RunOutput
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                RunOutput { code, stdout: text, stderr: String::new() }
            } else {
                RunOutput { code, stdout: String::new(), stderr: text }
            };
        }
    };
    let as_json = match &cli.command {
        Command::Verify(c) | Command::Lift(c) | Command::Invariant(c) | Command::Lowrank(c) => c.json,
        Command::Cube { common, .. } | Command::Pair { common, .. } => common.json,
    };
    match dispatch(cli.command) {
        Ok(rep) => {
            let stdout = if as_json {
                format!("{}\n", serde_json::to_string_pretty(&rep.to_json()).expect("serializable"))
            } else {
                rep.to_text()
            };
            RunOutput { code: if rep.ok() { EXIT_OK } else { EXIT_IDENTITY }, stdout, stderr: String::new() }
        }
        Err(e) => RunOutput { code: exit_code(&e), stdout: String::new(), stderr: format!("error: {e}\n") },
    }
}

fn dispatch(cmd: Command) -> Result<Report> {
    match cmd {
        Command::Verify(c) => verify(&c),
        Command::Lift(c) => lift(&c),
        Command::Cube { common, to, coeffs } => cube(&common, to, coeffs.as_deref()),
        Command::Pair { common, preset, coeffs, invariant, to } => {
            pair(&common, preset.as_deref(), coeffs.as_deref(), invariant, to)
        }
        Command::Invariant(c) => invariant(&c),
        Command::Lowrank(c) => lowrank(&c),
    }
}

/// A resolved `--structure`.
#[derive(Clone, Debug, PartialEq)]
pub enum StructureArg {
    /// A cubic norm structure.
    Cns(CnsDesc),
    /// A composition algebra.
    Comp(CompDesc),
}

/// Names accepted by `--structure`.
pub const PRESETS: [&str; 16] = [
    "trivial-f",
    "fxf",
    "split-cube",
    "cubic-field",
    "fx-quaternion",
    "matrix3",
    "h3-rational",
    "h3-gaussian",
    "h3-quaternion",
    "h3-octonion",
    "tits-hermitian",
    "cayley-u",
    "rationals",
    "gaussian",
    "quaternion",
    "octonion",
];

/// Resolves a preset name.
pub fn preset(name: &str) -> Result<StructureArg> {
    let cns = |v: CnsVariant| Ok(StructureArg::Cns(CnsDesc::rational(v)));
    let h3 = |comp: CompDesc| cns(CnsVariant::H3 { comp });
    match name {
        "trivial-f" => cns(CnsVariant::TrivialF),
        "fxf" => cns(CnsVariant::Fxf),
        "split-cube" => cns(CnsVariant::EtaleCubic(CubicSpec::split())),
        "cubic-field" => cns(CnsVariant::EtaleCubic(CubicSpec::form(&[qi(1), qi(0), qi(0), qi(-2)]))),
        "fx-quaternion" => cns(CnsVariant::FxQuaternion { comp: CompDesc::quaternion(-1, -1) }),
        "matrix3" => cns(CnsVariant::Matrix3),
        "h3-rational" => h3(CompDesc::rationals()),
        "h3-gaussian" => h3(CompDesc::quadratic(-1)),
        "h3-quaternion" => h3(CompDesc::quaternion(-1, -1)),
        "h3-octonion" => h3(CompDesc::octonion(-1, -1, -1)),
        "tits-hermitian" => {
            let one = Cns::<Q>::identity(&H3::new(CompDesc::quadratic(-1)));
            cns(CnsVariant::TitsU {
                shape: JbkShapeDesc::Hermitian,
                d: Rat(qi(-1)),
                a: None,
                s: q_to_rats(&one),
                lambda: q_to_rats(&[qi(1), qi(0)]),
            })
        }
        "cayley-u" => cns(CnsVariant::CayleyU { comp: CompDesc::quaternion(-1, -1), gamma: Rat(qi(-1)) }),
        "rationals" => Ok(StructureArg::Comp(CompDesc::rationals())),
        "gaussian" => Ok(StructureArg::Comp(CompDesc::quadratic(-1))),
        "quaternion" => Ok(StructureArg::Comp(CompDesc::quaternion(-1, -1))),
        "octonion" => Ok(StructureArg::Comp(CompDesc::octonion(-1, -1, -1))),
        other => Err(Error::Parse(format!("unknown preset {other:?}; known presets: {}", PRESETS.join(", ")))),
    }
}

/// Resolves a `--structure` value: inline JSON for a cubic norm structure
/// or a composition algebra (`{"gammas": [...]}`), or a preset name.
pub fn parse_structure(s: &str) -> Result<StructureArg> {
    let t = s.trim();
    if t.starts_with('{') {
        let v: Value = serde_json::from_str(t).map_err(|e| Error::Parse(format!("--structure: {e}")))?;
        if v.get("variant").is_some() {
            let d: CnsDesc = serde_json::from_value(v).map_err(|e| Error::Parse(format!("--structure: {e}")))?;
            return Ok(StructureArg::Cns(d));
        }
        let c: CompDesc = serde_json::from_value(v).map_err(|e| Error::Parse(format!("--structure: {e}")))?;
        return Ok(StructureArg::Comp(CompDesc::new(c.gammas)?));
    }
    preset(t.strip_prefix("preset:").unwrap_or(t))
}

fn structure_or(c: &Common, default: &str) -> Result<StructureArg> {
    parse_structure(c.structure.as_deref().unwrap_or(default))
}

fn cns_desc(c: &Common, default: &str) -> Result<CnsDesc> {
    match structure_or(c, default)? {
        StructureArg::Cns(d) => Ok(d),
        StructureArg::Comp(comp) => Ok(CnsDesc::rational(CnsVariant::H3 { comp })),
    }
}

fn rational_variant(c: &Common, default: &str) -> Result<CnsVariant> {
    let d = cns_desc(c, default)?;
    if d.base.is_some() {
        return Err(Error::Unsupported("this command works over Q only".into()));
    }
    Ok(d.variant)
}

fn comp_of(c: &Common) -> Result<CompDesc> {
    match structure_or(c, "rationals")? {
        StructureArg::Comp(comp) => Ok(comp),
        StructureArg::Cns(CnsDesc { variant: CnsVariant::H3 { comp }, base: None }) => Ok(comp),
        StructureArg::Cns(d) => {
            Err(Error::Parse(format!("expected a composition algebra or H_3(C), got {}", d.variant.name())))
        }
    }
}

fn read_input(c: &Common) -> Result<Value> {
    let path = c.input.as_deref().ok_or_else(|| Error::Parse("--input is required".into()))?;
    let text = if path == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| Error::Parse(format!("stdin: {e}")))?;
        s
    } else {
        std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{path}: {e}")))?
    };
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{path}: {e}")))
}

fn from_value<T: serde::de::DeserializeOwned>(v: Value, what: &str) -> Result<T> {
    serde_json::from_value(v).map_err(|e| Error::Parse(format!("{what}: {e}")))
}

/// Reads `{"cube": [...]}` or `{"a", "b", "c", "d"}`.
fn welem_from(v: Value, n: usize) -> Result<WElem<Q>> {
    if v.get("cube").is_some() {
        if n != 3 {
            return Err(Error::Parse("a cube has eight entries and needs a three dimensional structure".into()));
        }
        return Ok(from_value::<CubeJson>(v, "cube")?.to_welem());
    }
    from_value::<WElementJson>(v, "element of W_J")?.to_welem(n)
}

fn parse_coeffs(xs: &[String]) -> Result<Vec<Q>> {
    xs.iter()
        .map(|s| s.trim().parse::<Q>().map_err(|_| Error::Parse(format!("{s:?} is not a rational number"))))
        .collect()
}

fn qs(xs: &[Q]) -> Value {
    qvec_to_json(xs)
}

fn elem_json(e: &QElem, alg: &std::sync::Arc<crate::scalars::QAlg>) -> Value {
    qs(&e.coords_in(alg))
}

fn verify(c: &Common) -> Result<Report> {
    let s = c.structure.as_deref().ok_or_else(|| Error::Parse("--structure is required".into()))?;
    let mut rep = Report::new(format!("verify {s}"));
    rep.value("trials", c.trials).value("seed", c.seed);
    match parse_structure(s)? {
        StructureArg::Comp(comp) => {
            rep.suites.push(comp_axioms_check(&comp, c.trials, c.seed));
            let triple = nonassociative_triple(&comp);
            rep.value("associative", comp.is_associative());
            rep.value("nonassociative_triple", triple.map(|(i, j, k)| vec![i, j, k]));
        }
        StructureArg::Cns(desc) => {
            rep.suites.push(crate::cns::axioms::check_desc(&desc, c.trials, c.seed)?);
            if desc.base.is_none() {
                rep.suites.push(freudenthal::check_identities(&desc.variant, c.trials, c.seed)?);
            }
        }
    }
    Ok(rep)
}

fn lift(c: &Common) -> Result<Report> {
    let variant = rational_variant(c, "h3-rational")?;
    let input = read_input(c)?;
    if input.get("A").is_some() {
        let s = Structure::new(&variant)?;
        let n = s.q.dim();
        let a = rats_to_q(&from_value::<Vec<Rat>>(input["A"].clone(), "A")?);
        let b = rats_to_q(&from_value::<Vec<Rat>>(input["B"].clone(), "B")?);
        if a.len() != n || b.len() != n {
            return Err(Error::Parse(format!("A and B must have {n} coordinates")));
        }
        let l = crate::lifting::law2::pair_lift(&s, &a, &b);
        let mut rep = Report::new(format!("lift of (A, B) in {}", s.q.label()));
        rep.value("form", qs(&l.cubic.f)).value("Q", q_to_string(&l.cubic.q));
        rep.value("X", l.to_result().lifted);
        rep.value("Y", l.y.iter().map(|e| elem_json(e, &l.cubic.alg)).collect::<Vec<_>>());
        rep.cert("lift", &l.certificate);
        return Ok(rep);
    }
    let je = variant.build_generic::<QElem>()?;
    let v = welem_from(input, je.dim())?;
    let l = lift_wj(je.as_ref(), &v)?;
    let mut rep = Report::new(format!("lift of v in W_J for {}", je.label()));
    rep.value("q", q_to_string(&l.q));
    let r = l.to_result();
    rep.value("extension", r.extension).value("X", r.lifted);
    rep.cert("lift", &l.certificate);
    Ok(rep)
}

fn cube(c: &Common, to: CubeTo, coeffs: Option<&[String]>) -> Result<Report> {
    let variant = rational_variant(c, "split-cube")?;
    let a = variant.build_assoc::<QElem>()?;
    let n = a.dim();
    match to {
        CubeTo::Ideals => {
            let v = match coeffs {
                Some(xs) => {
                    let x = parse_coeffs(xs)?;
                    if x.len() != 2 + 2 * n {
                        return Err(Error::Parse(format!("expected {} coefficients", 2 + 2 * n)));
                    }
                    WElem::from_vec(&x)
                }
                None => welem_from(read_input(c)?, n)?,
            };
            let ci = cube_to_balanced(a.as_ref(), &v, c.bound)?;
            let mut rep = Report::new(format!("cube to balanced ideal over {}", a.label()));
            rep.value("input", WElementJson::from(&v));
            rep.value("ideal", ci.ideal.to_json());
            rep.value("norm", q_to_string(&crate::rings_ideals::ideal_norm_sa(a.as_ref(), &ci.ideal)));
            rep.cert("balanced", &ci.certificate);
            Ok(rep)
        }
        CubeTo::Cube => {
            let input = read_input(c)?;
            let j: IdealJson = from_value(input.get("values").and_then(|v| v.get("ideal")).or(input.get("ideal")).cloned().unwrap_or(input), "ideal")?;
            let ideal = IdealSA::from_json(&j, n)?;
            let (v, cert) = balanced_to_cube(a.as_ref(), &ideal)?;
            let mut rep = Report::new(format!("balanced ideal to cube over {}", a.label()));
            rep.value("element", WElementJson::from(&v));
            if n == 3 {
                rep.value("cube", CubeJson::from(&v));
            }
            rep.cert("cube", &cert);
            Ok(rep)
        }
    }
}

fn pair_input(c: &Common, preset: Option<&str>, coeffs: Option<&[String]>) -> Result<(CompDesc, Vec<Q>, Vec<Q>)> {
    match preset {
        Some("bhargava-a1b1") => {
            let xs = parse_coeffs(coeffs.ok_or_else(|| Error::Parse("bhargava-a1b1 needs --coeffs a,b,c,d".into()))?)?;
            let f: [Q; 4] = xs.try_into().map_err(|_| Error::Parse("--coeffs needs four entries".into()))?;
            let (a, b) = bhargava_a1b1(&f);
            Ok((CompDesc::rationals(), a, b))
        }
        Some("diag") => {
            let h = H3::new(CompDesc::rationals());
            Ok((CompDesc::rationals(), h.diag([qi(1), qi(1), qi(1)]), h.diag([qi(1), qi(-1), qi(0)])))
        }
        Some(other) => Err(Error::Parse(format!("unknown pair preset {other:?}; known: bhargava-a1b1, diag"))),
        None => {
            let comp = comp_of(c)?;
            let input = read_input(c)?;
            let n = 3 + 3 * comp.dim();
            let get = |k: &str| -> Result<Vec<Q>> {
                let x = rats_to_q(&from_value::<Vec<Rat>>(input.get(k).cloned().unwrap_or(Value::Null), k)?);
                if x.len() != n {
                    return Err(Error::Parse(format!("{k} must have {n} coordinates")));
                }
                Ok(x)
            };
            Ok((comp, get("A")?, get("B")?))
        }
    }
}

fn pair(c: &Common, preset: Option<&str>, coeffs: Option<&[String]>, inv: bool, to: Option<PairTo>) -> Result<Report> {
    if to == Some(PairTo::Pair) {
        let comp = comp_of(c)?;
        let input = read_input(c)?;
        let j: IdealJson = from_value(input.get("values").and_then(|v| v.get("ideal")).or(input.get("ideal")).cloned().unwrap_or(input), "ideal")?;
        let ideal = IdealTC::from_json(&j, &comp)?;
        let (a, b, cert) = balanced_to_pair(&ideal)?;
        let mut rep = Report::new("balanced ideal to pair");
        rep.value("A", qs(&a)).value("B", qs(&b));
        rep.cert("pair", &cert);
        return Ok(rep);
    }
    let (comp, a, b) = pair_input(c, preset, coeffs)?;
    let mut rep = Report::new(format!("pair in {}", Cns::<Q>::label(&H3::new(comp.clone()))));
    rep.value("A", qs(&a)).value("B", qs(&b));
    if inv {
        let fi = field_invariant_b2(&comp, &a, &b)?;
        rep.value("form", qs(&fi.cubic.f)).value("Q", q_to_string(&fi.cubic.q));
        rep.value("mu", elem_json(&fi.mu, &fi.cubic.alg));
        rep.value("mu_is_one", fi.mu == QElem::one());
        rep.value("norm_witness", qs(&fi.norm_witness));
        rep.cert("invariant", &fi.certificate);
        return Ok(rep);
    }
    if to == Some(PairTo::Ideals) {
        let pi = pair_to_balanced(&comp, &a, &b, None, c.bound)?;
        rep.value("form", qs(&pi.ideal.ring.f)).value("ideal", pi.ideal.to_json()).value("v0", qs(&pi.v0));
        rep.cert("balanced", &pi.certificate);
        return Ok(rep);
    }
    let (lift, sr, eps) = pair_lift_h3(&comp, &a, &b)?;
    rep.value("form", qs(&lift.cubic.f)).value("Q", q_to_string(&lift.cubic.q));
    rep.value("X", lift.to_result().lifted);
    rep.cert("lift", &lift.certificate).cert("S_r", &sr.certificate);
    if let Some(e) = eps {
        rep.cert("ε", &e.certificate);
    }
    Ok(rep)
}

fn invariant(c: &Common) -> Result<Report> {
    let variant = rational_variant(c, "split-cube")?;
    let a = variant.build_assoc::<QElem>()?;
    let v = welem_from(read_input(c)?, a.dim())?;
    let fi = field_invariant_b1(a.as_ref(), &v, c.bound)?;
    let mut rep = Report::new(format!("invariant λ over {}", a.label()));
    rep.value("q", q_to_string(&fi.q));
    rep.value("lambda", elem_json(&fi.lambda, &fi.alg));
    rep.value("norm_witness", fi.witness.iter().map(|e| elem_json(e, &fi.alg)).collect::<Vec<_>>());
    rep.cert("invariant", &fi.certificate);
    Ok(rep)
}

fn lowrank(c: &Common) -> Result<Report> {
    let desc = cns_desc(c, "h3-rational")?;
    let input = read_input(c)?;
    match &desc.variant {
        CnsVariant::H3 { comp } if desc.base.is_none() => {
            let h = H3::new(comp.clone());
            if input.is_array() {
                let x = rats_to_q(&from_value::<Vec<Rat>>(input, "element of H_3(C)")?);
                if x.len() != Cns::<Q>::dim(&h) {
                    return Err(Error::Parse(format!("expected {} coordinates", Cns::<Q>::dim(&h))));
                }
                let l = rank2_h3_lift(comp, &x)?;
                let mut rep = Report::new(format!("rank two lift in {}", Cns::<Q>::label(&h)));
                rep.value("gamma", q_to_string(&l.gamma)).value("v", qs(&l.v)).value("lifted", qs(&l.lifted));
                rep.cert("lift", &l.certificate);
                Ok(rep)
            } else {
                let x = welem_from(input, Cns::<Q>::dim(&h))?;
                let l = rank2_w_lift(comp, &x)?;
                let mut rep = Report::new(format!("rank two lift in W_J for {}", Cns::<Q>::label(&h)));
                rep.value("gamma", q_to_string(&l.gamma)).value("v", qs(&l.v)).value("w", qs(&l.w));
                rep.value("lifted", WElementJson::from(&l.lifted));
                rep.cert("lift", &l.certificate);
                Ok(rep)
            }
        }
        CnsVariant::TitsU { .. } if desc.base.is_none() => {
            let p = std::sync::Arc::new(desc.variant.jbk_pair()?);
            let x = welem_from(input, p.j().dim())?;
            let l = rank3_w_lift(&p, &x)?;
            let mut rep = Report::new(format!("rank three lift in W_J for {}", p.j().label()));
            rep.value("h", qs(&l.h)).value("case", format!("{:?}", l.case));
            rep.value("lifted", WElementJson::from(&l.lifted));
            rep.cert("lift", &l.certificate);
            Ok(rep)
        }
        other => Err(Error::Unsupported(format!(
            "lowrank needs an h3 structure (rank two) or a tits_u structure (rank three), got {}",
            other.name()
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> RunOutput {
        run(std::iter::once("lifting-laws").chain(args.iter().copied()))
    }

    fn temp(name: &str, text: &str) -> String {
        let dir = std::env::temp_dir().join(format!("lifting-laws-cli-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let p = dir.join(name);
        std::fs::write(&p, text).unwrap();
        p.to_string_lossy().into_owned()
    }

    #[test]
    fn verify_quaternion_h3() {
        let out = run_args(&["verify", "--structure", "preset:h3-quaternion", "--trials", "10", "--seed", "7"]);
        assert_eq!(out.code, EXIT_OK, "{}{}", out.stdout, out.stderr);
        assert!(out.stdout.contains("result: pass"));
        let again = run_args(&["verify", "--structure", "preset:h3-quaternion", "--trials", "10", "--seed", "7"]);
        assert_eq!(out, again);
    }

    #[test]
    fn verify_octonion_reports_a_triple() {
        let out = run_args(&["verify", "--structure", "octonion", "--trials", "10", "--json"]);
        assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
        let v: Value = serde_json::from_str(&out.stdout).unwrap();
        assert_eq!(v["values"]["associative"], json!(false));
        assert!(v["values"]["nonassociative_triple"].is_array());
    }

    #[test]
    fn every_preset_resolves() {
        for p in PRESETS {
            assert!(preset(p).is_ok(), "{p}");
        }
        assert!(matches!(preset("nope"), Err(Error::Parse(_))));
    }

    #[test]
    fn bhargava_pair_has_mu_one() {
        let out = run_args(&["pair", "--preset", "bhargava-a1b1", "--coeffs", "1,2,3,4", "--invariant", "--json"]);
        assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
        let v: Value = serde_json::from_str(&out.stdout).unwrap();
        assert_eq!(v["values"]["mu_is_one"], json!(true));
        assert_eq!(v["values"]["form"], json!(["1", "2", "3", "4"]));
    }

    #[test]
    fn cube_round_trip_through_files() {
        let input = temp("cube.json", r#"{"cube":["1","2","0","1","-1","1","2","1"]}"#);
        let out = run_args(&["cube", "--input", &input, "--to", "ideals", "--json"]);
        assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
        let ideal = temp("ideal.json", &out.stdout);
        let back = run_args(&["cube", "--input", &ideal, "--to", "cube", "--json"]);
        assert_eq!(back.code, EXIT_OK, "{}", back.stderr);
        let v: Value = serde_json::from_str(&back.stdout).unwrap();
        assert_eq!(v["values"]["cube"]["cube"], json!(["1", "2", "0", "1", "-1", "1", "2", "1"]));
    }

    #[test]
    fn pair_round_trip_through_files() {
        let out = run_args(&["pair", "--preset", "diag", "--to", "ideals", "--json"]);
        assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
        let ideal = temp("pair-ideal.json", &out.stdout);
        let back = run_args(&["pair", "--input", &ideal, "--to", "pair", "--json"]);
        assert_eq!(back.code, EXIT_OK, "{}", back.stderr);
        let v: Value = serde_json::from_str(&back.stdout).unwrap();
        assert_eq!(v["values"]["A"], json!(["1", "1", "1", "0", "0", "0"]));
        assert_eq!(v["values"]["B"], json!(["1", "-1", "0", "0", "0", "0"]));
    }

    #[test]
    fn lift_and_lowrank() {
        let v = temp("v.json", r#"{"a":"1","b":["0","0","0","0","0","0"],"c":["1","1","1","0","0","0"],"d":"2"}"#);
        let out = run_args(&["lift", "--structure", "h3-rational", "--input", &v]);
        assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
        let x = temp("x.json", r#"["1","1","0","0","0","0"]"#);
        let out = run_args(&["lowrank", "--structure", "h3-rational", "--input", &x]);
        assert_eq!(out.code, EXIT_OK, "{}{}", out.stdout, out.stderr);
        let w = temp("w.json", r#"{"a":"1","b":["0","0","0","0","0","0","0","0","0"],"c":["-1","1","1","0","0","0","0","0","0"],"d":"2"}"#);
        let out = run_args(&["lowrank", "--structure", "tits-hermitian", "--input", &w]);
        assert_eq!(out.code, EXIT_OK, "{}{}", out.stdout, out.stderr);
    }

    #[test]
    fn invariant_of_a_cube() {
        let v = temp("inv.json", r#"{"cube":["1","0","0","0","0","0","0","1"]}"#);
        let out = run_args(&["invariant", "--input", &v]);
        assert_eq!(out.code, EXIT_OK, "{}{}", out.stdout, out.stderr);
    }

    #[test]
    fn error_codes() {
        assert_eq!(run_args(&["frobnicate"]).code, EXIT_USAGE);
        let bad = temp("bad.json", "{\"cube\": [1,");
        let out = run_args(&["cube", "--input", &bad]);
        assert_eq!(out.code, EXIT_USAGE);
        assert!(out.stderr.contains("line 1"), "{}", out.stderr);
        let degenerate = temp("deg.json", r#"{"cube":["0","0","0","0","0","0","0","0"]}"#);
        assert_eq!(run_args(&["cube", "--input", &degenerate]).code, EXIT_USAGE);
        assert_eq!(exit_code(&Error::BoundExceeded("x".into())), EXIT_BOUND);
        assert_eq!(exit_code(&Error::IdentityFailed("x".into())), EXIT_IDENTITY);
        assert_eq!(run_args(&["--help"]).code, EXIT_OK);
    }
}
