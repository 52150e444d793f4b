//! Command-line front end. Reports are deterministic: the same inputs give
//! byte-identical output for any thread count.

use std::ffi::OsString;
use std::fmt::{Debug, Display, Write as _};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::complex::{Complex, ComplexDocument};
use crate::homology::{homology, wedge_certificate, HomologyResult, Verdict, WedgeCertificate};
use crate::newton::{
    newton_polyhedron, parse_support, predicted_sphere_count, torus_hypersurface_boundary_complex_weighted,
    w0_report, CountVariant, PolytopeInput, W0Report,
};
use crate::snc::{dual_complex, realize_boundary, toric_link, Fan, SimplicialInput, StrataDescription};
use crate::transforms::{run_blowup_script, BlowupScript, ScriptRun};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

const SCHEMAS: &str = "\
Input formats (JSON):
  complex    {\"faces\": [{\"id\", \"dim\", \"label\", \"facets\"?, \"delta_order\"?, \"level\"?}]}
             ids are integers or strings; delta_order lists facet i as the face omitting vertex i
  script     [{\"case\": 1}, {\"case\": 2, \"face\", \"level\"?, \"label\"?},
              {\"case\": 3, \"base\", \"attach\": [..], \"pivot\", \"level\"?, \"label\"?}]
             faces are named by label; the list may be wrapped as {\"steps\": [..]}
  strata     {\"components\": [{\"label\", \"level\"?}],
              \"strata\": [{\"indices\": [i, j, ..], \"label\", \"parents\"?: {\"i\": label}}]}
  fan        {\"rays\": [[..]], \"cones\": [[ray indices]]}
  simplicial {\"ground\": n, \"simplices\": [[..]]}
  support    [[exponents], ..] or {\"points\": [..]}
  polytope   [[coordinates], ..] or {\"points\": [..], \"weights\"?: [{\"edge\": [p, q], \"weight\": d}]}

Exit codes: 0 success, 1 invalid input or failed computation (an error object
is printed), 2 usage error.";

#[derive(Parser, Debug)]
#[command(name = "sncx", version, about = "Dual complexes, blowup moves and their homology", after_long_help = SCHEMAS)]
struct Cli {
    /// Report format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    /// Report reduced homology.
    #[arg(long, global = true)]
    reduced: bool,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Homology of a complex.
    Homology { complex: PathBuf },
    /// Run a blowup script, logging homology after each step.
    Transform { complex: PathBuf, script: PathBuf },
    /// Dual complex of declared strata.
    Dual { strata: PathBuf },
    /// Link of the origin in a toric fan.
    ToricLink { fan: PathBuf },
    /// Realize the boundary of a simplicial complex by iterated blowups.
    Realize { simplicial: PathBuf },
    /// Resolution complex of a nondegenerate singularity from its support.
    Newton {
        support: PathBuf,
        #[arg(long, value_enum)]
        variant: Option<Variant>,
    },
    /// Boundary complex of a nondegenerate hypersurface in a torus.
    TorusBoundary { polytope: PathBuf },
    /// Certify a complex as a wedge of spheres.
    Certify {
        complex: PathBuf,
        #[arg(long)]
        sphere_dim: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Variant {
    Literal,
    Interior,
}

impl From<Variant> for CountVariant {
    fn from(v: Variant) -> Self {
        match v {
            Variant::Literal => CountVariant::Literal,
            Variant::Interior => CountVariant::Interior,
        }
    }
}

/// Exit code and the text destined for standard output and error.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Input {
    path: String,
    text: String,
    sha256: String,
}

#[derive(Debug)]
struct Failure {
    kind: String,
    message: String,
    input: Option<String>,
}

const WRAPPERS: [&str; 6] = ["Complex", "Transform", "Homology", "Snc", "Newton", "StepFailed"];

/// Kebab-case name of the innermost meaningful variant of an error.
fn error_kind(e: &impl Debug) -> String {
    let debug = format!("{e:?}");
    let mut rest = debug.as_str();
    loop {
        let end = rest
            .find(|c: char| !c.is_alphanumeric() && c != '_')
            .unwrap_or(rest.len());
        let name = &rest[..end];
        let next = &rest[end..];
        let inner = next
            .strip_prefix('(')
            .or_else(|| next.strip_prefix(" { step: ").and_then(|s| s.find("source: ").map(|i| &s[i + 8..])));
        match inner {
            Some(inner) if WRAPPERS.contains(&name) && inner.starts_with(char::is_uppercase) => rest = inner,
            _ => return kebab(name),
        }
    }
}

fn kebab(name: &str) -> String {
    let mut out = String::new();
    for (i, c) in name.chars().enumerate() {
        if c.is_uppercase() && i > 0 {
            out.push('-');
        }
        out.push(c.to_ascii_lowercase());
    }
    out
}

fn fail<E: Debug + Display>(input: &Input) -> impl Fn(E) -> Failure + '_ {
    move |e| Failure {
        kind: error_kind(&e),
        message: e.to_string(),
        input: Some(input.path.clone()),
    }
}

fn read(path: &PathBuf) -> Result<Input, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure {
        kind: "io".into(),
        message: e.to_string(),
        input: Some(path.display().to_string()),
    })?;
    Ok(Input {
        path: path.display().to_string(),
        sha256: hex::encode(Sha256::digest(text.as_bytes())),
        text,
    })
}

fn load_complex(input: &Input) -> Result<Complex, Failure> {
    Complex::from_json(&input.text).map_err(fail(input))
}

/// Summary of a complex: face counts, homology and the canonical document.
#[derive(Serialize)]
struct ComplexSummary {
    f_vector: Vec<usize>,
    euler_characteristic: i64,
    homology: HomologyResult,
    complex: ComplexDocument,
}

fn summarize(c: &Complex, reduced: bool, input: &Input) -> Result<ComplexSummary, Failure> {
    Ok(ComplexSummary {
        f_vector: c.f_vector(),
        euler_characteristic: c.euler_characteristic(),
        homology: homology(c, reduced).map_err(fail(input))?,
        complex: ComplexDocument::from_complex(c),
    })
}

#[derive(Serialize)]
struct RealizeResult {
    input_homology: HomologyResult,
    homology_matches: bool,
    steps: crate::snc::RealizationScript,
    #[serde(flatten)]
    summary: ComplexSummary,
}

#[derive(Serialize)]
struct NewtonResult {
    #[serde(skip_serializing_if = "Option::is_none")]
    variant: Option<CountVariant>,
    #[serde(skip_serializing_if = "Option::is_none")]
    predicted: Option<u64>,
    computed: u64,
    verdict: String,
    report: W0Report,
}

enum Report {
    Summary(ComplexSummary),
    Transform(ScriptRun, ComplexSummary),
    Realize(RealizeResult),
    Newton(Box<NewtonResult>),
    Certify(WedgeCertificate),
}

fn execute(cli: &Cli) -> Result<(Vec<Input>, Report), Failure> {
    let reduced = cli.reduced;
    match &cli.command {
        Command::Homology { complex } => {
            let input = read(complex)?;
            let c = load_complex(&input)?;
            let s = summarize(&c, reduced, &input)?;
            Ok((vec![input], Report::Summary(s)))
        }
        Command::Transform { complex, script } => {
            let input = read(complex)?;
            let script_input = read(script)?;
            let c = load_complex(&input)?;
            let s = BlowupScript::from_json(&script_input.text).map_err(fail(&script_input))?;
            let run = run_blowup_script(&c, &s).map_err(fail(&script_input))?;
            let summary = summarize(&run.complex, reduced, &input)?;
            Ok((vec![input, script_input], Report::Transform(run, summary)))
        }
        Command::Dual { strata } => {
            let input = read(strata)?;
            let s = StrataDescription::from_json(&input.text).map_err(fail(&input))?;
            let c = dual_complex(&s).map_err(fail(&input))?;
            let summary = summarize(&c, reduced, &input)?;
            Ok((vec![input], Report::Summary(summary)))
        }
        Command::ToricLink { fan } => {
            let input = read(fan)?;
            let f = Fan::from_json(&input.text).map_err(fail(&input))?;
            let c = toric_link(&f).map_err(fail(&input))?;
            let summary = summarize(&c, reduced, &input)?;
            Ok((vec![input], Report::Summary(summary)))
        }
        Command::Realize { simplicial } => {
            let input = read(simplicial)?;
            let k = SimplicialInput::from_json(&input.text).map_err(fail(&input))?;
            let (c, steps) = realize_boundary(&k).map_err(fail(&input))?;
            let summary = summarize(&c, reduced, &input)?;
            let original = k.to_complex().map_err(fail(&input))?;
            let input_homology = homology(&original, reduced).map_err(fail(&input))?;
            Ok((
                vec![input],
                Report::Realize(RealizeResult {
                    homology_matches: input_homology.same_groups(&summary.homology),
                    input_homology,
                    steps,
                    summary,
                }),
            ))
        }
        Command::Newton { support, variant } => {
            let input = read(support)?;
            let points = parse_support(&input.text).map_err(fail(&input))?;
            let np = newton_polyhedron(&points).map_err(fail(&input))?;
            let report = w0_report(&np).map_err(fail(&input))?;
            let variant = variant.map(CountVariant::from);
            Ok((
                vec![input],
                Report::Newton(Box::new(NewtonResult {
                    variant,
                    predicted: variant.map(|v| predicted_sphere_count(&np, v)),
                    computed: report.predicted.computed,
                    verdict: report.certificate.verdict.to_string(),
                    report,
                })),
            ))
        }
        Command::TorusBoundary { polytope } => {
            let input = read(polytope)?;
            let p = PolytopeInput::from_json(&input.text).map_err(fail(&input))?;
            let c = torus_hypersurface_boundary_complex_weighted(&p.points, &p.weights)
                .map_err(fail(&input))?;
            let summary = summarize(&c, reduced, &input)?;
            Ok((vec![input], Report::Summary(summary)))
        }
        Command::Certify { complex, sphere_dim } => {
            let input = read(complex)?;
            let c = load_complex(&input)?;
            Ok((vec![input], Report::Certify(wedge_certificate(&c, *sphere_dim))))
        }
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Homology { .. } => "homology",
        Command::Transform { .. } => "transform",
        Command::Dual { .. } => "dual",
        Command::ToricLink { .. } => "toric-link",
        Command::Realize { .. } => "realize",
        Command::Newton { .. } => "newton",
        Command::TorusBoundary { .. } => "torus-boundary",
        Command::Certify { .. } => "certify",
    }
}

fn report_json(report: &Report) -> Value {
    let v = match report {
        Report::Summary(s) => serde_json::to_value(s),
        Report::Transform(run, s) => serde_json::to_value(json!({ "log": run.log, "final": s })),
        Report::Realize(r) => serde_json::to_value(r),
        Report::Newton(r) => serde_json::to_value(r),
        Report::Certify(c) => serde_json::to_value(c),
    };
    v.expect("reports serialize")
}

fn tuple<T: Display>(xs: impl IntoIterator<Item = T>) -> String {
    let items: Vec<String> = xs.into_iter().map(|x| x.to_string()).collect();
    format!("({})", items.join(","))
}

fn homology_lines(out: &mut String, h: &HomologyResult) {
    let name = if h.reduced { "reduced b" } else { "b" };
    let _ = writeln!(out, "{name} = {}", tuple(h.betti_vector()));
    if h.betti(-1) > 0 {
        let _ = writeln!(out, "{name}(-1) = {}", h.betti(-1));
    }
    for d in &h.degrees {
        if !d.torsion.is_empty() {
            let groups: Vec<String> = d.torsion.iter().map(|t| format!("Z/{t}")).collect();
            let _ = writeln!(out, "torsion H{} = {}", d.degree, groups.join(" + "));
        }
    }
}

fn summary_lines(out: &mut String, s: &ComplexSummary) {
    let _ = writeln!(out, "f = {}", tuple(&s.f_vector));
    let _ = writeln!(out, "euler characteristic = {}", s.euler_characteristic);
    homology_lines(out, &s.homology);
}

fn verdict_line(out: &mut String, c: &WedgeCertificate) {
    let _ = writeln!(out, "verdict = {}", c.verdict);
    if let Verdict::CertifiedWedge { .. } = c.verdict {
        let kind = serde_json::to_value(&c.witness).expect("witness serializes")["kind"].clone();
        let _ = writeln!(out, "witness = {}", kind.as_str().unwrap_or(""));
    }
}

fn report_text(report: &Report) -> String {
    let mut out = String::new();
    match report {
        Report::Summary(s) => summary_lines(&mut out, s),
        Report::Transform(run, s) => {
            for step in &run.log {
                let case = step.case.map_or("-".to_string(), |c| c.to_string());
                let _ = write!(
                    out,
                    "step {} case {} f = {} b = {}",
                    step.step,
                    case,
                    tuple(&step.f_vector),
                    tuple(step.homology.betti_vector())
                );
                for l in &step.levels {
                    let _ = write!(out, " level {} b = {}", l.level, tuple(l.homology.betti_vector()));
                }
                out.push('\n');
            }
            out.push_str("final\n");
            summary_lines(&mut out, s);
        }
        Report::Realize(r) => {
            for step in &r.steps.steps {
                let _ = writeln!(out, "blow up {} as {}", tuple(&step.center), step.label);
            }
            summary_lines(&mut out, &r.summary);
            let _ = writeln!(out, "matches input homology = {}", r.homology_matches);
        }
        Report::Newton(r) => {
            let w = &r.report;
            let np = &w.polyhedron;
            let _ = writeln!(out, "n = {}", w.n);
            for v in &np.vertices {
                let _ = writeln!(out, "vertex {}", tuple(v));
            }
            for f in &np.facets {
                let kind = if f.compact { "compact" } else { "unbounded" };
                let _ = writeln!(out, "facet normal {} offset {} {kind}", tuple(&f.normal), f.offset);
            }
            for e in &np.compact_edges {
                let place = if e.interior { "interior" } else { "boundary" };
                let _ = writeln!(out, "compact edge {} length {} {place}", np.faces[e.face].label, e.length);
            }
            for c in &w.interior_cells {
                let _ = writeln!(out, "interior cell {c}");
            }
            for p in &w.puckerings {
                let _ = writeln!(out, "pucker {} x{}", p.cell, p.multiplicity);
            }
            let _ = writeln!(out, "f = {}", tuple(&w.f_vector));
            homology_lines(&mut out, &w.homology);
            let _ = writeln!(out, "predicted literal = {}", w.predicted.literal);
            let _ = writeln!(out, "predicted interior = {}", w.predicted.interior);
            if let (Some(v), Some(p)) = (r.variant, r.predicted) {
                let name = match v {
                    CountVariant::Literal => "literal",
                    CountVariant::Interior => "interior",
                };
                let _ = writeln!(out, "predicted ({name}) = {p}");
            }
            let _ = writeln!(out, "computed b{} = {}", w.n as i64 - 1, r.computed);
            if !w.predicted.literal_agrees || !w.predicted.interior_agrees {
                let _ = writeln!(
                    out,
                    "disagreement: literal {} interior {}",
                    if w.predicted.literal_agrees { "agrees" } else { "differs" },
                    if w.predicted.interior_agrees { "agrees" } else { "differs" }
                );
            }
            for r in &w.weight_zero {
                let _ = writeln!(out, "W0 H~^{} rank = {}", r.k, r.rank);
            }
            verdict_line(&mut out, &w.certificate);
        }
        Report::Certify(c) => {
            let _ = writeln!(out, "sphere dimension = {}", c.sphere_dim);
            homology_lines(&mut out, &c.homology);
            verdict_line(&mut out, c);
        }
    }
    out
}

fn render_error(f: &Failure, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&json!({
                "tool": "sncx",
                "version": VERSION,
                "error": { "kind": f.kind, "message": f.message, "input": f.input },
            }))
            .expect("error serializes");
            s.push('\n');
            s
        }
        Format::Text => match &f.input {
            Some(input) => format!("error [{}] {input}: {}\n", f.kind, f.message),
            None => format!("error [{}]: {}\n", f.kind, f.message),
        },
    }
}

/// Runs the tool on a command line (including the program name).
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code: 2, stdout: String::new(), stderr: text }
            };
        }
    };
    let result = match cli.threads {
        Some(0) => Err(Failure {
            kind: "bad-threads".into(),
            message: "--threads must be at least 1".into(),
            input: None,
        }),
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(|| execute(&cli)),
            Err(e) => Err(Failure {
                kind: "thread-pool".into(),
                message: e.to_string(),
                input: None,
            }),
        },
        None => execute(&cli),
    };
    match result {
        Ok((inputs, report)) => {
            let stdout = match cli.format {
                Format::Json => {
                    let inputs: Vec<Value> = inputs
                        .iter()
                        .map(|i| json!({ "path": i.path, "sha256": i.sha256 }))
                        .collect();
                    let mut s = serde_json::to_string_pretty(&json!({
                        "tool": "sncx",
                        "version": VERSION,
                        "command": command_name(&cli.command),
                        "inputs": inputs,
                        "result": report_json(&report),
                    }))
                    .expect("report serializes");
                    s.push('\n');
                    s
                }
                Format::Text => {
                    let mut s = format!("sncx {VERSION} {}\n", command_name(&cli.command));
                    for i in &inputs {
                        let _ = writeln!(s, "input {} sha256 {}", i.path, i.sha256);
                    }
                    s.push_str(&report_text(&report));
                    s
                }
            };
            Outcome { code: 0, stdout, stderr: String::new() }
        }
        Err(f) => Outcome {
            code: 1,
            stderr: format!("sncx: {}\n", f.message),
            stdout: render_error(&f, cli.format),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::transforms::TransformError;

    #[test]
    fn error_kinds() {
        assert_eq!(error_kind(&TransformError::MatchingNotAcyclic), "matching-not-acyclic");
        assert_eq!(
            error_kind(&TransformError::Complex(crate::complex::ComplexError::NoSuchFace("x".into()))),
            "no-such-face"
        );
        let nested = TransformError::StepFailed {
            step: 2,
            source: Box::new(TransformError::NotMaximal("a".into())),
        };
        assert_eq!(error_kind(&nested), "not-maximal");
    }

    #[test]
    fn usage_errors_exit_two() {
        assert_eq!(run(["sncx"]).code, 2);
        assert_eq!(run(["sncx", "certify", "x.json"]).code, 2);
        assert_eq!(run(["sncx", "--help"]).code, 0);
    }
}
