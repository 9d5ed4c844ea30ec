use std::fs;
use std::io::Read;
use std::path::{Path, PathBuf};

use coverext::approx::{alpha_bounds, generate_tight_instance, KappaMode};
use coverext::extension::{decide_extension, verify_certificate, verify_witness, ExtensionVerdict};
use coverext::gadgets::{
    check_cut_membership, check_span_membership, chromatic_gadget, cut_to_span_gadget,
    cut_to_span_gadget_unbounded, densest_cut_gadget, fractional_chromatic, has_set_cover,
    max_cut_density, max_span_sum, setcover_membership_gadget, Graph, Membership, Polytope,
};
use coverext::io::{
    instance_to_json, parse_instance, parse_total_function, BoundsReport, InstanceFile, NormReport,
    TransformReport, VerdictReport,
};
use coverext::lp::SolverStats;
use coverext::norm::{norm_extension_approx, norm_extension_with_oracle};
use coverext::{Error, Rational, Scalar, SetMask};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::args::{CheckCommand, ExtendArgs, GadgetCommand, GenCommand, Mode, OutputArgs};
use crate::report::digest;

#[derive(Debug)]
pub enum CliError {
    Core(Error),
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(Error::EnumerationLimit { .. }) => 3,
            _ => 1,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Io(e) => f.write_str(e),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> CliError {
        CliError::Core(e)
    }
}

pub type CliResult<T> = Result<T, CliError>;

/// A generated file, printed on stdout unless a path is given.
pub struct Artifact {
    pub text: String,
    pub path: Option<PathBuf>,
}

pub struct Outcome {
    pub result: Value,
    pub stats: Option<SolverStats>,
    pub code: i32,
    pub summary: String,
    pub input_digest: Option<String>,
    pub artifact: Option<Artifact>,
}

impl Outcome {
    fn new(result: Value, summary: String) -> Outcome {
        Outcome {
            result,
            stats: None,
            code: 0,
            summary,
            input_digest: None,
            artifact: None,
        }
    }

    fn negative_if(mut self, negative: bool) -> Outcome {
        self.code = if negative { 2 } else { 0 };
        self
    }
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report serializes")
}

/// Reads a file, or stdin for `-`.
fn read_source(source: &str) -> CliResult<(String, String)> {
    let mut text = String::new();
    if source == "-" {
        std::io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| CliError::Io(format!("cannot read stdin: {e}")))?;
    } else {
        text = fs::read_to_string(source).map_err(|e| CliError::Io(format!("cannot read {source}: {e}")))?;
    }
    let d = digest(text.as_bytes());
    Ok((text, d))
}

fn read_graph(source: &str) -> CliResult<(Graph, String)> {
    let (text, d) = read_source(source)?;
    let g = serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{source}: {e}")))?;
    Ok((g, d))
}

fn parse_rational(flag: &str, text: &str) -> CliResult<Rational> {
    Rational::parse_exact(text).map_err(|e| CliError::Core(Error::Parse(format!("--{flag}: {e}"))))
}

fn with_output(mut outcome: Outcome, text: String, output: OutputArgs) -> Outcome {
    outcome.artifact = Some(Artifact {
        text,
        path: output.output,
    });
    outcome
}

fn verdict_report(h: &coverext::PartialFunction, v: &ExtensionVerdict, certify: bool) -> CliResult<VerdictReport> {
    let mut report = VerdictReport::from(v);
    if certify {
        report.verified = Some(match (&v.witness, &v.certificate) {
            (Some(w), _) => verify_witness(h, w) && w.support_size() <= h.len(),
            (None, Some(l)) => verify_certificate(h, l)?,
            (None, None) => false,
        });
    }
    Ok(report)
}

fn extend_one(text: &str, certify: bool) -> CliResult<(VerdictReport, SolverStats, usize)> {
    let h = parse_instance(text)?;
    let v = decide_extension(&h)?;
    Ok((verdict_report(&h, &v, certify)?, v.stats, h.len()))
}

pub fn extend(args: ExtendArgs) -> CliResult<Outcome> {
    if let Some(dir) = &args.input_dir {
        return extend_dir(dir, args.jobs as usize, args.certify);
    }
    let source = args.input.as_deref().expect("clap requires --input or --input-dir");
    let (text, d) = read_source(source)?;
    let (report, stats, n) = extend_one(&text, args.certify)?;
    let negative = report.status != "extendible" || report.verified == Some(false);
    let detail = match &report.witness {
        Some(w) => format!("witness with {} sets", w.len()),
        None => format!("certificate over {n} points"),
    };
    let mut out = Outcome::new(
        to_value(&report),
        format!("extend: {} ({detail}, {} pivots)", report.status, stats.pivots),
    );
    out.stats = Some(stats);
    out.input_digest = Some(d);
    Ok(out.negative_if(negative))
}

fn extend_dir(dir: &Path, jobs: usize, certify: bool) -> CliResult<Outcome> {
    let mut files: Vec<PathBuf> = fs::read_dir(dir)
        .map_err(|e| CliError::Io(format!("cannot read {}: {e}", dir.display())))?
        .filter_map(|entry| entry.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    files.sort();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| CliError::Io(format!("cannot start workers: {e}")))?;
    let entries: Vec<(Value, i32, SolverStats)> = pool.install(|| {
        files
            .par_iter()
            .map(|path| {
                let name = path.file_name().map(|f| f.to_string_lossy().into_owned()).unwrap_or_default();
                let run = read_source(&path.to_string_lossy())
                    .and_then(|(text, d)| extend_one(&text, certify).map(|r| (r, d)));
                match run {
                    Ok(((report, stats, _), d)) => {
                        let code = if report.status == "extendible" && report.verified != Some(false) { 0 } else { 2 };
                        (json!({"file": name, "input_digest": d, "exit_code": code, "result": report}), code, stats)
                    }
                    Err(e) => (
                        json!({"file": name, "exit_code": e.exit_code(), "error": e.to_string()}),
                        e.exit_code(),
                        SolverStats::default(),
                    ),
                }
            })
            .collect()
    });
    let mut stats = SolverStats::default();
    let mut codes = Vec::new();
    let mut results = Vec::new();
    for (value, code, s) in entries {
        stats.absorb(s);
        codes.push(code);
        results.push(value);
    }
    // Parse errors dominate cap errors, which dominate negatives.
    let code = [1, 3, 2].into_iter().find(|c| codes.contains(c)).unwrap_or(0);
    let negatives = codes.iter().filter(|&&c| c == 2).count();
    let failed = codes.iter().filter(|&&c| c == 1 || c == 3).count();
    let mut out = Outcome::new(
        Value::Array(results),
        format!(
            "extend: {} instances, {negatives} not extendible, {failed} failed",
            codes.len()
        ),
    );
    out.stats = Some(stats);
    out.code = code;
    Ok(out)
}

pub fn approx(source: &str, mode: Mode, with_alpha_star: bool) -> CliResult<Outcome> {
    let (text, d) = read_source(source)?;
    let h = parse_instance(&text)?;
    let kappa_mode = match mode {
        Mode::Exact => KappaMode::Exact,
        Mode::Greedy => KappaMode::Greedy,
    };
    let bounds = alpha_bounds(&h, kappa_mode, with_alpha_star)?;
    let report = BoundsReport::from(&bounds);
    let star = report
        .alpha_star
        .as_ref()
        .map(|a| format!(", alpha* = {a}"))
        .unwrap_or_default();
    let mut out = Outcome::new(
        to_value(&report),
        format!(
            "approx: kappa = {}, {} <= alpha* <= {}{star}",
            report.kappa, report.lower, report.upper
        ),
    );
    out.input_digest = Some(d);
    Ok(out)
}

pub fn norm(source: &str, exact: bool) -> CliResult<Outcome> {
    let (text, d) = read_source(source)?;
    let h = parse_instance(&text)?;
    let r = if exact {
        norm_extension_with_oracle(&h)?
    } else {
        norm_extension_approx(&h)?
    };
    let report = NormReport::from(&r);
    let exact_part = report
        .opt_exact
        .as_ref()
        .map(|v| format!(", OPT = {v}"))
        .unwrap_or_default();
    let mut out = Outcome::new(
        to_value(&report),
        format!(
            "norm: OPT^R = {}{exact_part}, additive bound {}",
            report.opt_restricted, report.additive_bound
        ),
    );
    out.stats = Some(r.stats);
    out.input_digest = Some(d);
    Ok(out)
}

pub fn wtransform(source: &str) -> CliResult<Outcome> {
    let (text, d) = read_source(source)?;
    let f = parse_total_function(&text)?;
    let report = TransformReport::new(&f);
    let verdict = match report.violating_set {
        None => "coverage".to_string(),
        Some(s) => format!("not coverage (negative coefficient at {s})"),
    };
    let mut out = Outcome::new(
        to_value(&report),
        format!("wtransform: {} nonzero coefficients, {verdict}", report.coefficients.len()),
    );
    out.input_digest = Some(d);
    Ok(out.negative_if(!report.is_coverage))
}

fn parse_set(text: &str, universe: usize) -> CliResult<SetMask> {
    let elements = text
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<usize>().map_err(|e| Error::Parse(format!("--set {text}: {e}"))))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(SetMask::from_elements(&elements, universe)?)
}

/// Brute-force diagnostics are skipped above this many sets or vertices.
const DIAGNOSTIC_LIMIT: usize = 16;

pub fn gadget(cmd: GadgetCommand) -> CliResult<Outcome> {
    match cmd {
        GadgetCommand::Chromatic { graph, k, output } => {
            let (g, d) = read_graph(&graph)?;
            let k = parse_rational("k", &k)?;
            let h = chromatic_gadget(&g, &k)?;
            let chi = if g.num_vertices() <= 8 {
                Some(fractional_chromatic(&g)?.0)
            } else {
                None
            };
            let summary = match &chi {
                Some(c) => format!("gadget chromatic: {} points, chi* = {c}, k = {k}", h.len()),
                None => format!("gadget chromatic: {} points, k = {k}", h.len()),
            };
            let mut out = Outcome::new(
                json!({
                    "instance": InstanceFile::from(&h),
                    "fractional_chromatic": chi.map(|c| c.to_string()),
                }),
                summary,
            );
            out.input_digest = Some(d);
            Ok(with_output(out, instance_to_json(&h), output))
        }
        GadgetCommand::Setcover {
            universe,
            sets,
            k,
            output,
        } => {
            let sets = sets
                .iter()
                .map(|s| parse_set(s, universe))
                .collect::<CliResult<Vec<_>>>()?;
            let gadget = setcover_membership_gadget(universe, &sets, k)?;
            let mut result = json!({ "gadget": gadget });
            let mut summary = format!("gadget setcover: L = {}", gadget.scale);
            if sets.len() <= DIAGNOSTIC_LIMIT {
                let Polytope::Coverage { ground_size, family } = &gadget.instance.polytope else {
                    unreachable!("set cover gadget is a coverage instance")
                };
                let (set, value) = max_span_sum(*ground_size, family, &gadget.instance.point)?;
                let cover = has_set_cover(universe, &sets, k);
                result["has_cover"] = json!(cover);
                result["max_span_sum"] = json!({ "set": set, "value": value.to_string() });
                summary.push_str(&format!(", cover of size {k}: {cover}, max span sum {value} at {set}"));
            }
            let text = serde_json::to_string_pretty(&gadget).expect("gadget serializes");
            Ok(with_output(Outcome::new(result, summary), text, output))
        }
        GadgetCommand::Cut2span { graph, unbounded, output } => {
            let (g, d) = read_graph(&graph)?;
            let out = if unbounded {
                cut_to_span_gadget_unbounded(&g)?
            } else {
                cut_to_span_gadget(&g)?
            };
            let mut o = Outcome::new(
                to_value(&out),
                format!("gadget cut2span: L = {}, {} edges", out.scale, out.graph.edges().len()),
            );
            o.input_digest = Some(d);
            let text = serde_json::to_string_pretty(&out.graph).expect("graph serializes");
            Ok(with_output(o, text, output))
        }
        GadgetCommand::Densest { graph, density, output } => {
            let (g, d) = read_graph(&graph)?;
            let m = parse_rational("density", &density)?;
            let out = densest_cut_gadget(&g, &m)?;
            let mut result = to_value(&out);
            let mut summary = format!("gadget densest: L = {}", out.scale);
            if g.num_vertices() <= DIAGNOSTIC_LIMIT {
                if let Some((set, best)) = max_cut_density(&g) {
                    result["max_density"] = json!({ "set": set, "value": best.to_string() });
                    let relation = match best.cmp(&m) {
                        std::cmp::Ordering::Greater => "above",
                        std::cmp::Ordering::Equal => "equal to",
                        std::cmp::Ordering::Less => "below",
                    };
                    summary.push_str(&format!(", max density {best} at {set} is {relation} M"));
                }
            }
            let mut o = Outcome::new(result, summary);
            o.input_digest = Some(d);
            let text = serde_json::to_string_pretty(&out.graph).expect("graph serializes");
            Ok(with_output(o, text, output))
        }
    }
}

fn clock_seed() -> u64 {
    std::time::SystemTime::now()
        .duration_since(std::time::UNIX_EPOCH)
        .map(|d| d.as_nanos() as u64)
        .unwrap_or(0)
}

pub fn gen(cmd: GenCommand) -> CliResult<Outcome> {
    match cmd {
        GenCommand::Tight { m, k, seed, output } => {
            let seed = seed.unwrap_or_else(clock_seed);
            let t = generate_tight_instance(m, k, seed).map_err(|e| match e {
                Error::SeedExhausted { .. } => CliError::Io(format!("{e} (pass a different --seed)")),
                other => CliError::Core(other),
            })?;
            let out = Outcome::new(
                json!({
                    "seed": seed,
                    "attempts": t.attempts,
                    "blocks": t.blocks,
                    "instance": InstanceFile::from(&t.function),
                }),
                format!(
                    "gen tight: seed {seed}, {} points ({} blocks), {} attempts",
                    t.function.len(),
                    t.blocks,
                    t.attempts
                ),
            );
            Ok(with_output(out, instance_to_json(&t.function), output))
        }
    }
}

pub fn check(cmd: CheckCommand) -> CliResult<Outcome> {
    let (name, graph, span) = match cmd {
        CheckCommand::Cut { graph } => ("cut", graph, false),
        CheckCommand::Span { graph } => ("span", graph, true),
    };
    let (g, d) = read_graph(&graph)?;
    let y = g
        .weights()
        .ok_or_else(|| Error::InvalidArgument(format!("{graph} has no weights")))?
        .to_vec();
    let m = if span {
        check_span_membership(&g, &y)?
    } else {
        check_cut_membership(&g, &y)?
    };
    let summary = match &m {
        Membership::Inside => format!("check {name}: inside"),
        Membership::Violated { set, value } => format!("check {name}: violated by {set} with weight {value}"),
        Membership::OutsideBox { index } => format!("check {name}: weight {} outside [-1, 1]", index + 1),
    };
    let mut out = Outcome::new(to_value(&m), summary);
    out.input_digest = Some(d);
    Ok(out.negative_if(!m.is_inside()))
}
