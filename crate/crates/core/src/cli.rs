//! Command-line front end. Every subcommand reads flags or a JSON input
//! document and prints a JSON report with sorted keys:
//! `{command, inputs, outputs, warnings}`.
//!
//! Exit codes: 0 success, 2 invalid input, 3 a check or tolerance failed,
//! 64 unknown subcommand.

use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use serde::de::DeserializeOwned;
use serde::Deserialize;
use serde_json::{json, Value};

use crate::bwb::{alpha_pi, line_bundle_cohomology, FlagDomainSpec};
use crate::error::{invalid, Error, Result};
use crate::linalg::{Matrix, Vector};
use crate::modforms::{
    self, cusp_basis, hecke, hecke_self_adjointness_report, petersson, QSeries, QSeriesDoc,
    QuadratureParams,
};
use crate::nonab::{self, FiniteGroup, GroupAction};
use crate::parabolic::{
    self, admissibility_check, metric_exponent, par_degree, slope, stability_verdict,
    LocalMonodromy, ParabolicBundle, ParabolicPoint, SubBundleCandidate, UnitaryRepData,
};
use crate::perioddomain::{
    self, adapted_complex_structures, check_compatible, graded_pairing, hodge_structure_on_g,
    isotropy_group, jordan_block_sizes, polarized_nilpotent, primitive_decomposition,
    primitive_pairings, weight_filtration, weight_filtration_by_kernels, FormSymmetry,
    HodgeNumbers, NilpotentEndo,
};
use crate::rational::{fmt_q, parse_q, Q};
use crate::rootsys::{CartanType, RootSystem};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_TOLERANCE: i32 = 3;
pub const EXIT_USAGE: i32 = 64;

pub const NILPOTENT_SCHEMA: &str = "periodbench.nilpotent/1";
pub const BUNDLE_SCHEMA: &str = "periodbench.parabolic/1";
pub const ACTION_SCHEMA: &str = "periodbench.action/1";
pub const TENSORS_SCHEMA: &str = "periodbench.tensors/1";

const HECKE_CONVENTION: &str =
    "convention:hecke-normalization a_m(T(k)f) = sum_{d|gcd(k,m)} d^(w-1) a_(km/d^2)(f)";
const ISOTROPY_CONVENTION: &str =
    "convention:isotropy-factors U(h^{n,0}) x U(h^{n-1,1}) x ..., O(h^{m,m}) for weight 2m";
const PAIRING_CONVENTION: &str = "convention:graded-pairing B_k(u,v) = B(u, N^k v)";
const ALPHA_PI_CONVENTION: &str =
    "convention:alpha-pi-literal #{<lambda,a> > 0} + #{<lambda,a> < 0}, both counts reported";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliOutput {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Parser, Debug)]
#[command(
    name = "periodbench",
    version,
    about = "Exact and numerical checks around period domains, modular forms, parabolic bundles and group cohomology"
)]
struct Cli {
    /// Add wall-clock time to the report (makes reports non-reproducible).
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Cohomology of a homogeneous line bundle.
    Bwb(BwbArgs),
    /// The two root counts of α(π).
    Alphapi(AlphaPiArgs),
    /// Isotropy group and dimension of a period domain.
    Isotropy(IsotropyArgs),
    /// Weight filtration of a nilpotent endomorphism and its pairings.
    Weightfilt(WeightFiltArgs),
    /// Adapted complex structures on a flag domain.
    Adapted(AdaptedArgs),
    /// Hecke operator on a q-expansion.
    Hecke(HeckeArgs),
    /// Petersson product of cusp forms.
    Petersson(PeterssonArgs),
    /// Self-adjointness of a Hecke operator on a cusp space.
    Selfadj(SelfAdjArgs),
    /// Parabolic degree of a bundle and its candidates.
    Pardeg(BundleArgs),
    /// Stability relative to supplied sub-bundles.
    Stability(BundleArgs),
    /// Admissibility of unitary local monodromy.
    Admissible(AdmissibleArgs),
    /// Fixed points of a group action.
    H0(ActionArgs),
    /// First cohomology as a pointed set.
    H1(GuardedActionArgs),
    /// Six-term exact sequence for a normal subgroup.
    Exactseq(GuardedActionArgs),
    /// Twisted forms over a quadratic extension of finite fields.
    Twisted(TwistedArgs),
}

#[derive(Args, Debug)]
struct RootArgs {
    /// Cartan type: A, B, C or D.
    #[arg(long = "type")]
    cartan: Option<String>,
    #[arg(long)]
    rank: Option<usize>,
}

#[derive(Args, Debug)]
struct BwbArgs {
    #[command(flatten)]
    root: RootArgs,
    /// Weight in fundamental-weight coordinates, comma separated.
    #[arg(long, allow_hyphen_values = true)]
    mu: Option<String>,
    /// Multiplier c(D) for the dimension factor.
    #[arg(long, default_value = "1")]
    c_d: String,
    /// Multiplier v(X) for the dimension factor.
    #[arg(long, default_value = "1")]
    v_x: String,
    #[arg(long)]
    selftest: bool,
}

#[derive(Args, Debug)]
struct AlphaPiArgs {
    #[command(flatten)]
    root: RootArgs,
    /// λ in fundamental-weight coordinates, comma separated.
    #[arg(long, allow_hyphen_values = true)]
    lambda: Option<String>,
    /// Simple roots spanning the isotropy subsystem, comma separated.
    #[arg(long, default_value = "")]
    isotropy_simple: String,
    #[arg(long)]
    selftest: bool,
}

#[derive(Args, Debug)]
struct IsotropyArgs {
    #[arg(long)]
    weight: Option<u32>,
    /// Hodge numbers h^{n,0}, ..., h^{0,n}, comma separated.
    #[arg(long)]
    hodge: Option<String>,
    #[arg(long)]
    selftest: bool,
}

#[derive(Args, Debug)]
struct WeightFiltArgs {
    /// JSON document with `n` and optionally `b`.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Jordan block sizes for a standard polarized example.
    #[arg(long)]
    blocks: Option<String>,
    /// Form type for `--blocks`: symmetric or antisymmetric.
    #[arg(long, default_value = "symmetric")]
    form: String,
    #[arg(long)]
    selftest: bool,
}

#[derive(Args, Debug)]
struct AdaptedArgs {
    #[command(flatten)]
    root: RootArgs,
    #[arg(long, default_value = "")]
    isotropy_simple: String,
    #[arg(long, default_value_t = perioddomain::DEFAULT_ADAPTED_GUARD)]
    guard: u128,
    #[arg(long)]
    selftest: bool,
}

#[derive(Args, Debug)]
struct HeckeArgs {
    #[arg(long, default_value_t = 12)]
    weight: u32,
    #[arg(long)]
    k: Option<u64>,
    /// Precision of the input series.
    #[arg(long, default_value_t = 100)]
    prec: usize,
    /// q-series document to act on instead of the first cusp basis form.
    #[arg(long)]
    input: Option<PathBuf>,
    #[arg(long)]
    selftest: bool,
}

#[derive(Args, Debug)]
struct QuadratureArgs {
    #[arg(long, default_value_t = 512)]
    grid: usize,
    #[arg(long, default_value_t = 8.0)]
    y_max: f64,
    #[arg(long, default_value_t = 1e-12)]
    tail_tol: f64,
}

impl QuadratureArgs {
    fn params(&self) -> QuadratureParams {
        QuadratureParams {
            grid: self.grid,
            y_max: self.y_max,
            tail_tol: self.tail_tol,
        }
    }
}

#[derive(Args, Debug)]
struct PeterssonArgs {
    /// Weight of the cusp basis whose Gram matrix is computed when no
    /// series files are given.
    #[arg(long, default_value_t = 12)]
    weight: u32,
    #[arg(long, default_value_t = 60)]
    prec: usize,
    #[arg(long)]
    f: Option<PathBuf>,
    #[arg(long)]
    g: Option<PathBuf>,
    #[command(flatten)]
    quad: QuadratureArgs,
    /// Allowed relative error estimate.
    #[arg(long, default_value_t = 1e-6)]
    tol: f64,
    #[arg(long)]
    selftest: bool,
}

#[derive(Args, Debug)]
struct SelfAdjArgs {
    #[arg(long, default_value_t = 24)]
    weight: u32,
    #[arg(long, default_value_t = 2)]
    k: u64,
    /// Precision of the basis series; defaults to 60 k.
    #[arg(long)]
    prec: Option<usize>,
    #[command(flatten)]
    quad: QuadratureArgs,
    #[arg(long, default_value_t = 1e-6)]
    tol: f64,
    #[arg(long)]
    selftest: bool,
}

#[derive(Args, Debug)]
struct BundleArgs {
    #[arg(long)]
    input: Option<PathBuf>,
    #[arg(long)]
    selftest: bool,
}

#[derive(Args, Debug)]
struct AdmissibleArgs {
    #[arg(long)]
    input: Option<PathBuf>,
    #[arg(long, default_value_t = parabolic::DEFAULT_TOLERANCE)]
    tol: f64,
    #[arg(long)]
    selftest: bool,
}

#[derive(Args, Debug)]
struct ActionArgs {
    #[arg(long)]
    input: Option<PathBuf>,
    #[arg(long)]
    selftest: bool,
}

#[derive(Args, Debug)]
struct GuardedActionArgs {
    #[arg(long)]
    input: Option<PathBuf>,
    #[arg(long, default_value_t = nonab::DEFAULT_GUARD)]
    guard: u128,
    #[arg(long)]
    selftest: bool,
}

#[derive(Args, Debug)]
struct TwistedArgs {
    #[arg(long)]
    input: Option<PathBuf>,
    #[arg(long)]
    p: Option<usize>,
    #[arg(long)]
    dim: Option<usize>,
    /// A bilinear form over F_p, rows separated by `;`; repeatable.
    #[arg(long, allow_hyphen_values = true)]
    form: Vec<String>,
    #[arg(long, default_value_t = nonab::DEFAULT_GUARD)]
    guard: u128,
    #[arg(long)]
    selftest: bool,
}

/// Result of one subcommand before it is wrapped into a report.
struct Outcome {
    inputs: Value,
    outputs: Value,
    warnings: Vec<String>,
    passed: bool,
}

impl Outcome {
    fn new(inputs: Value, outputs: Value) -> Self {
        Outcome {
            inputs,
            outputs,
            warnings: Vec::new(),
            passed: true,
        }
    }

    fn warn(mut self, w: impl Into<String>) -> Self {
        self.warnings.push(w.into());
        self
    }

    fn check(mut self, passed: bool) -> Self {
        self.passed &= passed;
        self
    }
}

/// Parses `args` (including the program name) and runs one subcommand.
pub fn run<I, T>(args: I) -> CliOutput
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => CliOutput {
                    code: EXIT_OK,
                    stdout: text,
                    stderr: String::new(),
                },
                ErrorKind::InvalidSubcommand
                | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand
                | ErrorKind::MissingSubcommand => CliOutput {
                    code: EXIT_USAGE,
                    stdout: String::new(),
                    stderr: text,
                },
                _ => CliOutput {
                    code: EXIT_INVALID,
                    stdout: String::new(),
                    stderr: text,
                },
            };
        }
    };
    let start = Instant::now();
    let (name, result) = dispatch(&cli.command);
    let elapsed = start.elapsed().as_secs_f64() * 1e3;
    let mut stderr = format!("{name}: {elapsed:.1} ms\n");
    match result {
        Ok(outcome) => {
            let mut report = json!({
                "command": name,
                "inputs": outcome.inputs,
                "outputs": outcome.outputs,
                "warnings": outcome.warnings,
            });
            if cli.timing {
                report["timing_ms"] = json!(elapsed);
            }
            let code = if outcome.passed {
                EXIT_OK
            } else {
                stderr.push_str("check failed\n");
                EXIT_TOLERANCE
            };
            CliOutput {
                code,
                stdout: serde_json::to_string_pretty(&report).expect("reports serialize") + "\n",
                stderr,
            }
        }
        Err(e) => {
            stderr.push_str(&format!("error: {e}\n"));
            CliOutput {
                code: match e {
                    Error::ToleranceExceeded(_) => EXIT_TOLERANCE,
                    _ => EXIT_INVALID,
                },
                stdout: String::new(),
                stderr,
            }
        }
    }
}

fn dispatch(cmd: &Command) -> (&'static str, Result<Outcome>) {
    macro_rules! sub {
        ($name:literal, $args:expr, $selftest:expr, $run:expr) => {
            (
                $name,
                if $args.selftest {
                    Ok(selftest_outcome($selftest()))
                } else {
                    $run($args)
                },
            )
        };
    }
    match cmd {
        Command::Bwb(a) => sub!("bwb", a, selftest_bwb, cmd_bwb),
        Command::Alphapi(a) => sub!("alphapi", a, selftest_alphapi, cmd_alphapi),
        Command::Isotropy(a) => sub!("isotropy", a, selftest_isotropy, cmd_isotropy),
        Command::Weightfilt(a) => sub!("weightfilt", a, selftest_weightfilt, cmd_weightfilt),
        Command::Adapted(a) => sub!("adapted", a, selftest_adapted, cmd_adapted),
        Command::Hecke(a) => sub!("hecke", a, selftest_hecke, cmd_hecke),
        Command::Petersson(a) => sub!("petersson", a, selftest_petersson, cmd_petersson),
        Command::Selfadj(a) => sub!("selfadj", a, selftest_selfadj, cmd_selfadj),
        Command::Pardeg(a) => sub!("pardeg", a, selftest_pardeg, cmd_pardeg),
        Command::Stability(a) => sub!("stability", a, selftest_stability, cmd_stability),
        Command::Admissible(a) => sub!("admissible", a, selftest_admissible, cmd_admissible),
        Command::H0(a) => sub!("h0", a, selftest_h0, cmd_h0),
        Command::H1(a) => sub!("h1", a, selftest_h1, cmd_h1),
        Command::Exactseq(a) => sub!("exactseq", a, selftest_exactseq, cmd_exactseq),
        Command::Twisted(a) => sub!("twisted", a, selftest_twisted, cmd_twisted),
    }
}

// ---------------------------------------------------------------------------
// helpers

fn need<T: Clone>(v: &Option<T>, flag: &str) -> Result<T> {
    v.clone()
        .ok_or_else(|| invalid(format!("missing --{flag}")))
}

fn parse_list<T: std::str::FromStr>(s: &str, what: &str) -> Result<Vec<T>> {
    s.split(',')
        .map(str::trim)
        .filter(|x| !x.is_empty())
        .map(|x| {
            x.parse()
                .map_err(|_| invalid(format!("bad {what} entry {x:?}")))
        })
        .collect()
}

fn parse_q_list(s: &str) -> Result<Vec<Q>> {
    s.split(',')
        .map(str::trim)
        .filter(|x| !x.is_empty())
        .map(parse_q)
        .collect()
}

fn strings(v: &[Q]) -> Vec<String> {
    v.iter().map(fmt_q).collect()
}

fn root_system(r: &RootArgs) -> Result<RootSystem> {
    let t: CartanType = need(&r.cartan, "type")?.parse()?;
    RootSystem::new(t, need(&r.rank, "rank")?)
}

fn root_inputs(r: &RootArgs) -> Value {
    json!({"type": r.cartan, "rank": r.rank})
}

/// Reads a JSON document and checks its `schema` field.
fn read_doc<T: DeserializeOwned>(path: &Path, schema: &str) -> Result<(T, Value)> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| invalid(format!("cannot read {}: {e}", path.display())))?;
    let value: Value = serde_json::from_str(&text)
        .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    match value.get("schema").and_then(Value::as_str) {
        Some(s) if s == schema => {}
        other => {
            return Err(Error::Parse(format!(
                "{}: expected schema {schema:?}, found {other:?}",
                path.display()
            )))
        }
    }
    let doc = serde_json::from_value(value.clone())
        .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    Ok((doc, value))
}

fn matrix_strings(m: &Matrix) -> Value {
    json!(m.to_strings())
}

fn vectors(vs: &[Vector]) -> Value {
    json!(vs.iter().map(|v| strings(v)).collect::<Vec<_>>())
}

fn isotropy_from_simple(rs: &RootSystem, list: &str) -> Result<Vec<usize>> {
    let simple: Vec<usize> = parse_list(list, "simple root index")?;
    let mut roots = rs.levi_roots(&simple)?;
    let negs: Vec<usize> = roots.iter().map(|&i| rs.negative_index(i)).collect();
    roots.extend(negs);
    roots.sort_unstable();
    roots.dedup();
    Ok(roots)
}

fn selftest_outcome(cases: Vec<(&'static str, bool)>) -> Outcome {
    let passed = cases.iter().all(|(_, ok)| *ok);
    let list: Vec<Value> = cases
        .iter()
        .map(|(name, ok)| json!({"case": name, "passed": ok}))
        .collect();
    Outcome::new(
        json!({"selftest": true}),
        json!({"cases": list, "passed": passed}),
    )
    .check(passed)
}

// ---------------------------------------------------------------------------
// root systems and flag domains

fn cmd_bwb(a: &BwbArgs) -> Result<Outcome> {
    let rs = root_system(&a.root)?;
    let mu = rs.from_fundamental(&parse_q_list(&need(&a.mu, "mu")?)?)?;
    let report = line_bundle_cohomology(&rs, &mu)?;
    let (c, v) = (parse_q(&a.c_d)?, parse_q(&a.v_x)?);
    let scaled = &c * &v * Q::from_integer(report.dimension.into());
    let mut inputs = root_inputs(&a.root);
    inputs["mu"] = json!(a.mu);
    inputs["c_d"] = json!(a.c_d);
    inputs["v_x"] = json!(a.v_x);
    Ok(Outcome::new(
        inputs,
        json!({
            "cohomology": report.record(&rs),
            "mu_coordinates": strings(mu.coords()),
            "scaled_dimension": fmt_q(&scaled),
        }),
    ))
}

fn selftest_bwb() -> Vec<(&'static str, bool)> {
    let a1 = RootSystem::new(CartanType::A, 1).unwrap();
    let coh =
        |n: i64| line_bundle_cohomology(&a1, &a1.from_fundamental_i64(&[n]).unwrap()).unwrap();
    vec![
        (
            "A1 mu=-1 is singular",
            coh(-1).singular && coh(-1).dimension == 0,
        ),
        (
            "A1 mu=3 gives degree 0 dim 4",
            (coh(3).degree, coh(3).dimension) == (Some(0), 4),
        ),
        (
            "A1 mu=-5 gives degree 1 dim 4",
            (coh(-5).degree, coh(-5).dimension) == (Some(1), 4),
        ),
    ]
}

fn cmd_alphapi(a: &AlphaPiArgs) -> Result<Outcome> {
    let rs = root_system(&a.root)?;
    let lambda = rs.from_fundamental(&parse_q_list(&need(&a.lambda, "lambda")?)?)?;
    let iso = isotropy_from_simple(&rs, &a.isotropy_simple)?;
    let spec = FlagDomainSpec::new(rs.clone(), iso.clone(), Some(lambda))?;
    let ap = alpha_pi(&spec)?;
    let remaining: Vec<Vector> = (0..rs.positive_roots().len())
        .filter(|i| !iso.contains(i))
        .map(|i| rs.roots()[i].clone())
        .collect();
    let mut inputs = root_inputs(&a.root);
    inputs["lambda"] = json!(a.lambda);
    inputs["isotropy_simple"] = json!(a.isotropy_simple);
    Ok(Outcome::new(
        inputs,
        json!({
            "alpha_pi": ap,
            "non_isotropy_positive_roots": vectors(&remaining),
        }),
    )
    .warn(ALPHA_PI_CONVENTION))
}

fn selftest_alphapi() -> Vec<(&'static str, bool)> {
    let a1 = RootSystem::new(CartanType::A, 1).unwrap();
    let a2 = RootSystem::new(CartanType::A, 2).unwrap();
    let count = |rs: &RootSystem, l: &[i64]| {
        let spec = FlagDomainSpec::new(
            rs.clone(),
            vec![],
            Some(rs.from_fundamental_i64(l).unwrap()),
        )
        .unwrap();
        alpha_pi(&spec).unwrap().total
    };
    vec![
        ("A1 lambda=fund gives 1", count(&a1, &[1]) == 1),
        ("A2 lambda=0 gives 0", count(&a2, &[0, 0]) == 0),
    ]
}

fn cmd_isotropy(a: &IsotropyArgs) -> Result<Outcome> {
    let h = HodgeNumbers::new(
        need(&a.weight, "weight")?,
        parse_list(&need(&a.hodge, "hodge")?, "Hodge number")?,
    )?;
    let iso = isotropy_group(&h);
    let g: Vec<Value> = hodge_structure_on_g(&h)
        .into_iter()
        .map(|(r, d)| json!({"r": r, "dim": d}))
        .collect();
    Ok(Outcome::new(
        json!({"weight": a.weight, "hodge": a.hodge}),
        json!({
            "isotropy": iso.to_string(),
            "factors": iso.factors.iter().map(|(k, s)| json!({"kind": format!("{k:?}"), "size": s})).collect::<Vec<_>>(),
            "isotropy_real_dimension": iso.real_dimension,
            "ambient_group": iso.ambient_group,
            "ambient_real_dimension": iso.ambient_real_dimension,
            "domain_complex_dimension": iso.domain_complex_dimension,
            "g_hodge_decomposition": g,
        }),
    )
    .warn(ISOTROPY_CONVENTION))
}

fn selftest_isotropy() -> Vec<(&'static str, bool)> {
    let h = HodgeNumbers::new(1, vec![3, 3]).unwrap();
    let iso = isotropy_group(&h);
    let total: u64 = hodge_structure_on_g(&h).iter().map(|&(_, d)| d).sum();
    vec![
        (
            "Siegel g=3 has dimension 6",
            iso.domain_complex_dimension == 6,
        ),
        (
            "g decomposition is exhaustive",
            total == iso.ambient_real_dimension,
        ),
    ]
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct NilpotentDoc {
    #[allow(dead_code)]
    schema: String,
    n: Vec<Vec<String>>,
    #[serde(default)]
    b: Option<Vec<Vec<String>>>,
}

fn cmd_weightfilt(a: &WeightFiltArgs) -> Result<Outcome> {
    let (n, b, inputs) = match (&a.input, &a.blocks) {
        (Some(path), None) => {
            let (doc, raw): (NilpotentDoc, Value) = read_doc(path, NILPOTENT_SCHEMA)?;
            let b = doc.b.as_deref().map(Matrix::parse).transpose()?;
            (
                Matrix::parse(&doc.n)?,
                b,
                json!({"input": path, "document": raw}),
            )
        }
        (None, Some(blocks)) => {
            let sizes: Vec<usize> = parse_list(blocks, "block size")?;
            let sym = match a.form.as_str() {
                "symmetric" => FormSymmetry::Symmetric,
                "antisymmetric" => FormSymmetry::Antisymmetric,
                other => return Err(invalid(format!("unknown form type {other:?}"))),
            };
            let (n, b) = polarized_nilpotent(&sizes, sym)?;
            (n, Some(b), json!({"blocks": blocks, "form": a.form}))
        }
        _ => return Err(invalid("give exactly one of --input or --blocks")),
    };
    let n = NilpotentEndo::new(n)?;
    let filt = weight_filtration(&n);
    let by_kernels = weight_filtration_by_kernels(&n);
    let check = filt.check(&n);
    let k = filt.max_index() as i64;
    let agree = filt == by_kernels;
    let prim = primitive_decomposition(&n, &filt);
    let mut outputs = json!({
        "dimension": n.dim(),
        "max_nonzero_power": n.order(),
        "jordan_blocks": jordan_block_sizes(&n),
        "graded_dims": filt.graded_dims().iter().map(|(j, d)| json!({"j": j, "dim": d})).collect::<Vec<_>>(),
        "filtration": (-k..=k).map(|j| json!({"j": j, "basis": vectors(filt.w(j).basis())})).collect::<Vec<_>>(),
        "shift_property": check.shift,
        "hard_lefschetz": check.hard_lefschetz,
        "constructions_agree": agree,
        "primitive_dims": prim.pieces.iter().map(|(l, v)| json!({"l": l, "dim": v.len()})).collect::<Vec<_>>(),
        "lefschetz_decomposition": prim.lefschetz,
    });
    let mut passed = check.ok() && agree && prim.lefschetz;
    let mut out = Outcome::new(inputs, Value::Null);
    if let Some(b) = b {
        let sym = check_compatible(&n, &b)?;
        let mut pairings = Vec::new();
        for kk in 0..=filt.max_index() {
            if filt.gr_dim(kk as i64) == 0 {
                continue;
            }
            let gp = graded_pairing(&n, &b, kk)?;
            passed &= gp.nondegenerate;
            pairings.push(json!({
                "k": kk,
                "matrix": matrix_strings(&gp.matrix),
                "nondegenerate": gp.nondegenerate,
                "sign": gp.sign,
            }));
        }
        let prims: Vec<Value> = primitive_pairings(&n, &b)?
            .iter()
            .map(|p| {
                json!({
                    "l": p.l,
                    "inertia": p.inertia,
                    "definite": p.is_definite(),
                    "nondegenerate": p.pairing.nondegenerate,
                })
            })
            .collect();
        outputs["form_symmetry"] = json!(sym);
        outputs["graded_pairings"] = json!(pairings);
        outputs["primitive_pairings"] = json!(prims);
        out = out.warn(PAIRING_CONVENTION);
    }
    out.outputs = outputs;
    Ok(out.check(passed))
}

fn selftest_weightfilt() -> Vec<(&'static str, bool)> {
    let block3 =
        NilpotentEndo::new(Matrix::from_i64(&[&[0, 1, 0], &[0, 0, 1], &[0, 0, 0]])).unwrap();
    let zero = NilpotentEndo::new(Matrix::zeros(3, 3)).unwrap();
    let f3 = weight_filtration(&block3);
    let f0 = weight_filtration(&zero);
    let prim0 = primitive_decomposition(&zero, &f0);
    vec![
        (
            "single block of size 3 has Gr dims 1 at -2, 0, 2",
            f3.graded_dims()
                .into_iter()
                .filter(|&(_, d)| d > 0)
                .collect::<Vec<_>>()
                == vec![(-2, 1), (0, 1), (2, 1)],
        ),
        (
            "N = 0 has Gr_0 everything",
            f0.graded_dims() == vec![(0, 3)],
        ),
        ("N = 0 has P_0 everything", prim0.dim(0) == 3),
    ]
}

fn cmd_adapted(a: &AdaptedArgs) -> Result<Outcome> {
    let rs = root_system(&a.root)?;
    let iso = isotropy_from_simple(&rs, &a.isotropy_simple)?;
    let sets = adapted_complex_structures(&rs, &iso, a.guard)?;
    let count =
        |f: &dyn Fn(&perioddomain::AdaptedSet) -> bool| sets.iter().filter(|s| f(s)).count();
    let listed: Vec<Value> = sets
        .iter()
        .map(|s| {
            let roots: Vec<Vector> = s.roots().iter().map(|&i| rs.roots()[i].clone()).collect();
            json!({
                "roots": vectors(&roots),
                "one_of_pm": s.one_of_pm(),
                "positively_adapted": s.positively_adapted(),
                "closed": s.closed(),
            })
        })
        .collect();
    let mut inputs = root_inputs(&a.root);
    inputs["isotropy_simple"] = json!(a.isotropy_simple);
    inputs["guard"] = json!(a.guard.to_string());
    Ok(Outcome::new(
        inputs,
        json!({
            "total": sets.len(),
            "one_of_pm": count(&|s| s.one_of_pm()),
            "positively_adapted": count(&|s| s.positively_adapted()),
            "closed": count(&|s| s.closed()),
            "sets": listed,
        }),
    ))
}

fn selftest_adapted() -> Vec<(&'static str, bool)> {
    let a1 = RootSystem::new(CartanType::A, 1).unwrap();
    let sets = adapted_complex_structures(&a1, &[], perioddomain::DEFAULT_ADAPTED_GUARD).unwrap();
    vec![(
        "A1 has two sets, both adapted",
        sets.len() == 2 && sets.iter().all(|s| s.positively_adapted()),
    )]
}

// ---------------------------------------------------------------------------
// modular forms

/// `λ` with `g = λ f` on the common precision, if any.
fn eigenvalue(f: &QSeries, g: &QSeries) -> Option<Q> {
    let n = g.precision().min(f.precision());
    let lead = (0..n).find(|&i| !num_traits::Zero::is_zero(f.coeff(i)))?;
    let lambda = g.coeff(lead) / f.coeff(lead);
    (0..n)
        .all(|i| *g.coeff(i) == f.coeff(i) * &lambda)
        .then_some(lambda)
}

fn cmd_hecke(a: &HeckeArgs) -> Result<Outcome> {
    let k = need(&a.k, "k")?;
    let (f, mut inputs) = match &a.input {
        Some(path) => {
            let (doc, raw): (QSeriesDoc, Value) = read_doc(path, modforms::QSERIES_SCHEMA)?;
            (
                QSeries::from_doc(&doc)?,
                json!({"input": path, "document": raw}),
            )
        }
        None => {
            let basis = cusp_basis(a.weight, a.prec)?;
            let f = basis
                .into_iter()
                .next()
                .ok_or_else(|| invalid(format!("no cusp forms of weight {}", a.weight)))?;
            (f, json!({"weight": a.weight, "prec": a.prec}))
        }
    };
    inputs["k"] = json!(k);
    let tf = hecke(&f, k)?;
    let lambda = eigenvalue(&f, &tf);
    let mut out = Outcome::new(
        inputs,
        json!({
            "series": tf.to_doc(),
            "eigenform": lambda.is_some(),
            "eigenvalue": lambda.as_ref().map(fmt_q),
        }),
    )
    .warn(HECKE_CONVENTION);
    if f.weight() == 12 && a.input.is_none() && a.prec > 2 {
        let bound = (a.prec as u64).min(21);
        for p in modforms::ramanujan_bound_violations(bound)? {
            out = out.warn(format!("diagnostic: |tau({p})| >= 2 p^(11/2)"));
        }
    }
    Ok(out)
}

fn selftest_hecke() -> Vec<(&'static str, bool)> {
    let d = modforms::delta(30).unwrap();
    vec![
        ("T(1) is the identity", hecke(&d, 1).unwrap() == d),
        (
            "T(2) Delta = -24 Delta",
            eigenvalue(&d, &hecke(&d, 2).unwrap()) == Some(crate::rational::int(-24)),
        ),
    ]
}

fn complex_json(z: Complex64) -> Value {
    json!({"re": z.re, "im": z.im})
}

fn cmd_petersson(a: &PeterssonArgs) -> Result<Outcome> {
    let params = a.quad.params();
    let mut inputs = json!({
        "grid": a.quad.grid,
        "y_max": a.quad.y_max,
        "tail_tol": a.quad.tail_tol,
        "tol": a.tol,
    });
    match (&a.f, &a.g) {
        (Some(fp), Some(gp)) => {
            let (fd, fraw): (QSeriesDoc, Value) = read_doc(fp, modforms::QSERIES_SCHEMA)?;
            let (gd, graw): (QSeriesDoc, Value) = read_doc(gp, modforms::QSERIES_SCHEMA)?;
            let (f, g) = (QSeries::from_doc(&fd)?, QSeries::from_doc(&gd)?);
            let r = petersson(&f, &g, params)?;
            inputs["f"] = fraw;
            inputs["g"] = graw;
            let rel = r.estimated_error / r.value.norm();
            Ok(Outcome::new(
                inputs,
                json!({
                    "value": complex_json(r.value),
                    "estimated_error": r.estimated_error,
                    "relative_error": rel,
                }),
            )
            .check(rel <= a.tol))
        }
        (None, None) => {
            let basis = cusp_basis(a.weight, a.prec)?;
            if basis.is_empty() {
                return Err(invalid(format!("no cusp forms of weight {}", a.weight)));
            }
            let refs: Vec<&QSeries> = basis.iter().collect();
            let r = modforms::gram(&refs, a.weight as i64, params)?;
            inputs["weight"] = json!(a.weight);
            inputs["prec"] = json!(a.prec);
            let d = basis.len();
            let real = nalgebra::DMatrix::from_fn(d, d, |i, j| r.values[i][j].re);
            let positive = nalgebra::Cholesky::new(real).is_some();
            let worst = (0..d)
                .flat_map(|i| (0..d).map(move |j| (i, j)))
                .map(|(i, j)| r.errors[i][j] / r.values[i][i].norm().min(r.values[j][j].norm()))
                .fold(0.0, f64::max);
            Ok(Outcome::new(
                inputs,
                json!({
                    "basis": basis.iter().map(|f| f.truncate(d + 2).to_doc()).collect::<Vec<_>>(),
                    "gram": r.values.iter().map(|row| row.iter().map(|&z| complex_json(z)).collect::<Vec<_>>()).collect::<Vec<_>>(),
                    "estimated_errors": r.errors,
                    "positive_definite": positive,
                    "relative_error": worst,
                }),
            )
            .check(positive && worst <= a.tol))
        }
        _ => Err(invalid("give both --f and --g, or neither")),
    }
}

fn selftest_petersson() -> Vec<(&'static str, bool)> {
    let d = modforms::delta(40).unwrap();
    let params = QuadratureParams::default().with_grid(64);
    let one = petersson(&d, &d, params).unwrap();
    let two = petersson(&d.scale(&crate::rational::int(2)), &d, params).unwrap();
    let e4 = modforms::eisenstein(4, 40).unwrap();
    vec![
        (
            "<2f, g> = 2 <f, g>",
            (two.value - one.value * 2.0).norm()
                <= two.estimated_error + 2.0 * one.estimated_error + 1e-20,
        ),
        (
            "non-cusp input rejected",
            petersson(&e4, &e4, params).is_err(),
        ),
    ]
}

fn cmd_selfadj(a: &SelfAdjArgs) -> Result<Outcome> {
    let prec = a.prec.unwrap_or(60 * a.k as usize);
    let r = hecke_self_adjointness_report(a.weight, a.k, prec, a.quad.params())?;
    let passed = r.residual <= a.tol;
    Ok(Outcome::new(
        json!({
            "weight": a.weight,
            "k": a.k,
            "prec": prec,
            "grid": a.quad.grid,
            "y_max": a.quad.y_max,
            "tail_tol": a.quad.tail_tol,
            "tol": a.tol,
        }),
        serde_json::to_value(&r).expect("report serializes"),
    )
    .warn(HECKE_CONVENTION)
    .check(passed))
}

fn selftest_selfadj() -> Vec<(&'static str, bool)> {
    let params = QuadratureParams::default().with_grid(64);
    let r = hecke_self_adjointness_report(12, 1, 40, params).unwrap();
    vec![("T(1) has zero residual", r.residual <= 1e-12)]
}

// ---------------------------------------------------------------------------
// parabolic bundles

#[derive(Deserialize, Clone)]
#[serde(deny_unknown_fields)]
struct PointDoc {
    label: String,
    dims: Vec<usize>,
    weights: Vec<String>,
}

impl PointDoc {
    fn build(&self) -> Result<ParabolicPoint> {
        let w = self
            .weights
            .iter()
            .map(|s| parse_q(s))
            .collect::<Result<_>>()?;
        ParabolicPoint::new(self.label.clone(), self.dims.clone(), w)
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CandidateDoc {
    rank: usize,
    degree: i64,
    #[serde(default)]
    levels: Option<Vec<Vec<usize>>>,
    #[serde(default)]
    points: Option<Vec<PointDoc>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RepDoc {
    point: String,
    /// Entries as `[re, im]`.
    #[serde(default)]
    matrix: Option<Vec<Vec<[f64; 2]>>>,
    #[serde(default)]
    eigenargs: Option<Vec<String>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct BundleDoc {
    #[allow(dead_code)]
    schema: String,
    rank: usize,
    degree: i64,
    #[serde(default)]
    points: Vec<PointDoc>,
    #[serde(default)]
    candidates: Vec<CandidateDoc>,
    #[serde(default)]
    reps: Vec<RepDoc>,
}

struct BundleInput {
    bundle: ParabolicBundle,
    candidates: Vec<SubBundleCandidate>,
    rep: UnitaryRepData,
    raw: Value,
}

fn read_bundle(path: &Option<PathBuf>) -> Result<BundleInput> {
    let path = need(path, "input")?;
    let (doc, raw): (BundleDoc, Value) = read_doc(&path, BUNDLE_SCHEMA)?;
    let points = doc
        .points
        .iter()
        .map(PointDoc::build)
        .collect::<Result<_>>()?;
    let bundle = ParabolicBundle::new(doc.rank, doc.degree, points)?;
    let candidates = doc
        .candidates
        .iter()
        .map(|c| match (&c.levels, &c.points) {
            (Some(l), None) => SubBundleCandidate::from_levels(&bundle, c.rank, c.degree, l),
            (None, Some(p)) => {
                let pts = p.iter().map(PointDoc::build).collect::<Result<_>>()?;
                SubBundleCandidate::new(&bundle, c.rank, c.degree, pts)
            }
            (None, None) if bundle.points().is_empty() => {
                SubBundleCandidate::new(&bundle, c.rank, c.degree, vec![])
            }
            _ => Err(invalid("a candidate needs exactly one of levels or points")),
        })
        .collect::<Result<_>>()?;
    let local = doc
        .reps
        .iter()
        .map(|r| {
            let m = match (&r.matrix, &r.eigenargs) {
                (Some(m), None) => LocalMonodromy::Matrix(
                    m.iter()
                        .map(|row| row.iter().map(|&[re, im]| Complex64::new(re, im)).collect())
                        .collect(),
                ),
                (None, Some(e)) => {
                    LocalMonodromy::EigenArgs(e.iter().map(|s| parse_q(s)).collect::<Result<_>>()?)
                }
                _ => return Err(invalid("a rep needs exactly one of matrix or eigenargs")),
            };
            Ok((r.point.clone(), m))
        })
        .collect::<Result<_>>()?;
    Ok(BundleInput {
        bundle,
        candidates,
        rep: UnitaryRepData { local },
        raw: json!({"input": path, "document": raw}),
    })
}

fn cmd_pardeg(a: &BundleArgs) -> Result<Outcome> {
    let inp = read_bundle(&a.input)?;
    let e = &inp.bundle;
    let points: Vec<Value> = e
        .points()
        .iter()
        .map(|p| {
            let exps: Vec<String> = (1..=p.weights().len())
                .map(|i| fmt_q(&metric_exponent(e, p.label(), i).expect("index in range")))
                .collect();
            json!({
                "label": p.label(),
                "jumps": p.jumps(),
                "contribution": fmt_q(&p.weight_contribution()),
                "metric_exponents": exps,
            })
        })
        .collect();
    let cands: Vec<Value> = inp
        .candidates
        .iter()
        .map(|c| json!({"rank": c.rank(), "degree": c.degree(), "par_degree": fmt_q(&par_degree(c)), "slope": fmt_q(&slope(c))}))
        .collect();
    Ok(Outcome::new(
        inp.raw,
        json!({
            "par_degree": fmt_q(&par_degree(e)),
            "slope": fmt_q(&slope(e)),
            "points": points,
            "candidates": cands,
        }),
    ))
}

fn selftest_pardeg() -> Vec<(&'static str, bool)> {
    use crate::rational::{frac, int};
    let pt = ParabolicPoint::new("s", vec![2], vec![frac(1, 2)]).unwrap();
    let e = ParabolicBundle::new(2, -1, vec![pt]).unwrap();
    let plain = ParabolicBundle::new(3, 5, vec![]).unwrap();
    vec![
        ("-1 + 1/2 + 1/2 = 0", par_degree(&e) == int(0)),
        ("no points gives the degree", par_degree(&plain) == int(5)),
    ]
}

fn cmd_stability(a: &BundleArgs) -> Result<Outcome> {
    let inp = read_bundle(&a.input)?;
    let r = stability_verdict(&inp.bundle, &inp.candidates);
    let slopes: Vec<String> = inp.candidates.iter().map(|c| fmt_q(&slope(c))).collect();
    Ok(Outcome::new(
        inp.raw,
        json!({
            "verdict": r.verdict,
            "bundle_slope": fmt_q(&r.bundle_slope),
            "candidate_slopes": slopes,
            "witness": r.witness,
            "max_candidate_slope": r.max_candidate_slope.as_ref().map(fmt_q),
        }),
    )
    .warn("stability is decided relative to the supplied candidates only"))
}

fn selftest_stability() -> Vec<(&'static str, bool)> {
    let e = ParabolicBundle::new(2, 0, vec![]).unwrap();
    let up = SubBundleCandidate::new(&e, 1, 1, vec![]).unwrap();
    let down = SubBundleCandidate::new(&e, 1, -1, vec![]).unwrap();
    vec![
        (
            "empty list is undetermined",
            stability_verdict(&e, &[]).verdict == parabolic::Verdict::Undetermined,
        ),
        (
            "larger slope is unstable",
            stability_verdict(&e, &[down.clone(), up]).witness == Some(1),
        ),
        (
            "smaller slopes are stable",
            stability_verdict(&e, &[down]).verdict
                == parabolic::Verdict::StableRelativeToCandidates,
        ),
    ]
}

fn cmd_admissible(a: &AdmissibleArgs) -> Result<Outcome> {
    let inp = read_bundle(&a.input)?;
    let r = admissibility_check(&inp.rep, &inp.bundle, a.tol)?;
    let mut inputs = inp.raw;
    inputs["tol"] = json!(a.tol);
    Ok(Outcome::new(
        inputs,
        serde_json::to_value(&r).expect("report serializes"),
    ))
}

fn selftest_admissible() -> Vec<(&'static str, bool)> {
    use crate::rational::frac;
    let pt = ParabolicPoint::new("s", vec![1], vec![frac(1, 3)]).unwrap();
    let e = ParabolicBundle::new(1, 0, vec![pt]).unwrap();
    let rep = |z: Complex64| UnitaryRepData {
        local: vec![("s".into(), LocalMonodromy::Matrix(vec![vec![z]]))],
    };
    let third = Complex64::from_polar(1.0, std::f64::consts::TAU / 3.0);
    let ok = |z| admissibility_check(&rep(z), &e, 1e-9).map(|r| r.admissible);
    vec![
        ("exp(2 pi i/3) matches 1/3", ok(third) == Ok(true)),
        (
            "exp(pi i) does not match 1/3",
            ok(Complex64::new(-1.0, 0.0)) == Ok(false),
        ),
    ]
}

// ---------------------------------------------------------------------------
// group cohomology

#[derive(Deserialize)]
#[serde(untagged)]
enum GroupDoc {
    Cyclic { cyclic: usize },
    Symmetric { symmetric: usize },
    Product { product: Vec<GroupDoc> },
    Table { table: Vec<Vec<usize>> },
}

impl GroupDoc {
    fn build(&self) -> Result<FiniteGroup> {
        match self {
            GroupDoc::Cyclic { cyclic } => {
                if *cyclic == 0 {
                    return Err(invalid("cyclic group order must be positive"));
                }
                Ok(FiniteGroup::cyclic(*cyclic))
            }
            GroupDoc::Symmetric { symmetric } => FiniteGroup::symmetric(*symmetric),
            GroupDoc::Product { product } => {
                product.iter().try_fold(FiniteGroup::trivial(), |acc, g| {
                    Ok(acc.direct_product(&g.build()?))
                })
            }
            GroupDoc::Table { table } => FiniteGroup::new(table.clone()),
        }
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum ActionSpec {
    Named(String),
    Table(Vec<Vec<usize>>),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ActionDoc {
    #[allow(dead_code)]
    schema: String,
    group: GroupDoc,
    target: GroupDoc,
    action: ActionSpec,
    #[serde(default)]
    normal: Option<Vec<usize>>,
}

fn read_action(path: &Option<PathBuf>) -> Result<(GroupAction, Option<Vec<usize>>, Value)> {
    let path = need(path, "input")?;
    let (doc, raw): (ActionDoc, Value) = read_doc(&path, ACTION_SCHEMA)?;
    let (g, a) = (doc.group.build()?, doc.target.build()?);
    let action = match &doc.action {
        ActionSpec::Named(n) => match n.as_str() {
            "trivial" => GroupAction::trivial(g, a),
            "inversion" => {
                let act = GroupAction::inversion(a)?;
                if act.acting().order() != g.order() || g.order() != 2 {
                    return Err(invalid("inversion needs the acting group Z/2"));
                }
                act
            }
            "conjugation" => {
                if g != a {
                    return Err(invalid("conjugation needs group = target"));
                }
                GroupAction::conjugation(g)
            }
            other => return Err(invalid(format!("unknown action {other:?}"))),
        },
        ActionSpec::Table(t) => GroupAction::new(g, a, t.clone())?,
    };
    Ok((action, doc.normal, json!({"input": path, "document": raw})))
}

fn cmd_h0(a: &ActionArgs) -> Result<Outcome> {
    let (action, _, inputs) = read_action(&a.input)?;
    let fixed = nonab::h0(&action);
    Ok(Outcome::new(
        inputs,
        json!({"fixed": fixed, "order": fixed.len()}),
    ))
}

fn selftest_h0() -> Vec<(&'static str, bool)> {
    let act = GroupAction::trivial(FiniteGroup::cyclic(2), FiniteGroup::cyclic(3));
    vec![(
        "trivial action fixes everything",
        nonab::h0(&act) == vec![0, 1, 2],
    )]
}

fn cmd_h1(a: &GuardedActionArgs) -> Result<Outcome> {
    let (action, _, mut inputs) = read_action(&a.input)?;
    inputs["guard"] = json!(a.guard.to_string());
    let r = nonab::h1(&action, a.guard)?;
    let classes: Vec<Value> = r
        .classes
        .iter()
        .enumerate()
        .map(|(i, cl)| {
            json!({
                "distinguished": i == r.distinguished,
                "cocycles": cl.iter().map(|&c| &r.cocycles[c]).collect::<Vec<_>>(),
            })
        })
        .collect();
    Ok(Outcome::new(
        inputs,
        json!({
            "cocycles": r.cocycles.len(),
            "classes": r.len(),
            "class_list": classes,
        }),
    ))
}

fn selftest_h1() -> Vec<(&'static str, bool)> {
    let act = GroupAction::trivial(FiniteGroup::trivial(), FiniteGroup::cyclic(3));
    vec![(
        "trivial group has one class",
        nonab::h1(&act, nonab::DEFAULT_GUARD).map(|r| r.len()) == Ok(1),
    )]
}

fn cmd_exactseq(a: &GuardedActionArgs) -> Result<Outcome> {
    let (action, normal, mut inputs) = read_action(&a.input)?;
    let normal = normal.ok_or_else(|| invalid("input needs a `normal` subgroup"))?;
    inputs["guard"] = json!(a.guard.to_string());
    let r = nonab::pointed_exact_sequence_check(&action, &normal, a.guard)?;
    let exact = r.exact;
    Ok(Outcome::new(inputs, serde_json::to_value(&r).expect("report serializes")).check(exact))
}

fn selftest_exactseq() -> Vec<(&'static str, bool)> {
    let act = GroupAction::trivial(FiniteGroup::cyclic(2), FiniteGroup::cyclic(3));
    vec![(
        "A = B is exact",
        nonab::pointed_exact_sequence_check(&act, &[0, 1, 2], nonab::DEFAULT_GUARD)
            .map(|r| r.exact)
            == Ok(true),
    )]
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct TensorsDoc {
    #[allow(dead_code)]
    schema: String,
    p: usize,
    dim: usize,
    #[serde(default)]
    forms: Vec<Vec<Vec<i64>>>,
}

fn parse_form(s: &str) -> Result<Vec<Vec<i64>>> {
    s.split(';')
        .map(|row| parse_list(row, "form entry"))
        .collect()
}

fn cmd_twisted(a: &TwistedArgs) -> Result<Outcome> {
    let (p, dim, forms, mut inputs) = match &a.input {
        Some(path) => {
            if a.p.is_some() || a.dim.is_some() || !a.form.is_empty() {
                return Err(invalid("--input excludes --p, --dim and --form"));
            }
            let (doc, raw): (TensorsDoc, Value) = read_doc(path, TENSORS_SCHEMA)?;
            (
                doc.p,
                doc.dim,
                doc.forms,
                json!({"input": path, "document": raw}),
            )
        }
        None => {
            let forms = a
                .form
                .iter()
                .map(|f| parse_form(f))
                .collect::<Result<Vec<_>>>()?;
            (
                need(&a.p, "p")?,
                need(&a.dim, "dim")?,
                forms,
                json!({"p": a.p, "dim": a.dim, "form": a.form}),
            )
        }
    };
    inputs["guard"] = json!(a.guard.to_string());
    let r = nonab::twisted_forms(p, dim, &forms, a.guard)?;
    let ok = r.bijective();
    let mut outputs = serde_json::to_value(&r).expect("report serializes");
    outputs["bijective"] = json!(ok);
    Ok(Outcome::new(inputs, outputs).check(ok))
}

fn selftest_twisted() -> Vec<(&'static str, bool)> {
    vec![(
        "identity gives the unit cocycle",
        nonab::theta_cocycle(3, &[1, 0, 0, 1]).ok() == Some(vec![1, 0, 0, 1]),
    )]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn go(args: &[&str]) -> CliOutput {
        run(std::iter::once("periodbench").chain(args.iter().copied()))
    }

    #[test]
    fn bwb_example() {
        let out = go(&["bwb", "--type", "A", "--rank", "1", "--mu", "3"]);
        assert_eq!(out.code, 0, "{}", out.stderr);
        let v: Value = serde_json::from_str(&out.stdout).unwrap();
        assert_eq!(v["outputs"]["cohomology"]["degree"], 0);
        assert_eq!(v["outputs"]["cohomology"]["dimension"], "4");
    }

    #[test]
    fn negative_mu() {
        let out = go(&["bwb", "--type", "A", "--rank", "1", "--mu", "-5"]);
        let v: Value = serde_json::from_str(&out.stdout).unwrap();
        assert_eq!(v["outputs"]["cohomology"]["degree"], 1);
    }

    #[test]
    fn hecke_example() {
        let out = go(&["hecke", "--weight", "12", "--k", "2", "--prec", "50"]);
        assert_eq!(out.code, 0, "{}", out.stderr);
        let v: Value = serde_json::from_str(&out.stdout).unwrap();
        assert_eq!(v["outputs"]["eigenvalue"], "-24");
    }

    #[test]
    fn exit_codes() {
        assert_eq!(go(&["frobnicate"]).code, EXIT_USAGE);
        assert_eq!(go(&[]).code, EXIT_USAGE);
        assert_eq!(
            go(&["bwb", "--type", "E", "--rank", "6", "--mu", "0"]).code,
            EXIT_INVALID
        );
        assert_eq!(
            go(&["bwb", "--type", "A", "--rank", "1"]).code,
            EXIT_INVALID
        );
        assert_eq!(go(&["--help"]).code, EXIT_OK);
    }

    #[test]
    fn every_selftest_passes() {
        for cmd in [
            "bwb",
            "alphapi",
            "isotropy",
            "weightfilt",
            "adapted",
            "hecke",
            "petersson",
            "selfadj",
            "pardeg",
            "stability",
            "admissible",
            "h0",
            "h1",
            "exactseq",
            "twisted",
        ] {
            let out = go(&[cmd, "--selftest"]);
            assert_eq!(out.code, 0, "{cmd}: {}", out.stdout);
        }
    }

    #[test]
    fn weightfilt_blocks() {
        let out = go(&["weightfilt", "--blocks", "3,2,2,1", "--form", "symmetric"]);
        assert_eq!(out.code, 0, "{}{}", out.stdout, out.stderr);
        let v: Value = serde_json::from_str(&out.stdout).unwrap();
        assert_eq!(v["outputs"]["constructions_agree"], true);
    }
}
