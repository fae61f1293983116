use std::fmt::Write as _;
use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crossratio::charfns::verify_symset_equals_r;
use crossratio::moebius::criterion::DEFAULT_TOLERANCE;
use crossratio::moebius::structure::default_point_names;
use crossratio::moebius::{random_submoebius, AxiomReport, CriterionReport, Structure, StructureFile};
use crossratio::rep::S5_CLASSES;
use crossratio::report::{charfns_report, decompose_report};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "crossratio", version, about = "Exact symmetry computations for cross-ratios")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Seed for every randomized step
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,

    /// Number of sampled 5-tuples when a point set is too large to enumerate
    #[arg(long, global = true, default_value_t = 1000)]
    samples: usize,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Tolerance for the float log-form cross-check
    #[arg(long, global = true, default_value_t = DEFAULT_TOLERANCE)]
    tolerance: f64,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Character of η_5 and its decomposition into irreducibles
    Decompose,
    /// The ten characteristic functions and their S_5 orbit
    Charfns,
    /// Symmetry set versus the χ^32 component
    Symset,
    /// Möbius criterion for a structure file or the extended real line
    VerifyMoebius {
        /// Structure JSON, or `-` for standard input
        #[arg(long, conflicts_with = "extended_line", required_unless_present = "extended_line")]
        input: Option<PathBuf>,
        #[arg(long)]
        extended_line: bool,
    },
    /// A random sub-Möbius structure on five points and its criterion report
    Counterexample,
}

struct Outcome {
    stdout: String,
    stderr: String,
    code: i32,
}

impl Outcome {
    fn new(stdout: String, pass: bool) -> Self {
        Self {
            stdout,
            stderr: String::new(),
            code: if pass { EXIT_PASS } else { EXIT_FAIL },
        }
    }

    fn usage(msg: String) -> Self {
        Self {
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
            code: EXIT_USAGE,
        }
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

fn verdict(pass: bool) -> &'static str {
    if pass {
        "PASS"
    } else {
        "FAIL"
    }
}

fn decompose(format: Format) -> Outcome {
    let report = match decompose_report() {
        Ok(r) => r,
        Err(e) => return Outcome::usage(e.to_string()),
    };
    if format == Format::Json {
        return Outcome::new(to_json(&report), report.pass);
    }
    let mut out = String::new();
    let _ = write!(out, "{:<8}", "class");
    for c in S5_CLASSES {
        let _ = write!(out, "{c:>6}");
    }
    let _ = write!(out, "\n{:<8}", "size");
    for s in &report.class_sizes {
        let _ = write!(out, "{s:>6}");
    }
    out.push('\n');
    for row in &report.character_table {
        let _ = write!(out, "{:<8}", format!("χ^{}", row.name));
        for v in &row.values {
            let _ = write!(out, "{v:>6}");
        }
        out.push('\n');
    }
    let _ = write!(out, "{:<8}", "ψ");
    for v in &report.psi {
        let _ = write!(out, "{v:>6}");
    }
    out.push_str("\n\n");
    for (lambda, ip) in &report.inner_products {
        let _ = writeln!(out, "<ψ, χ^{lambda}> = {ip}");
    }
    let parts: Vec<String> = report
        .multiplicities
        .iter()
        .filter(|(_, &m)| m > 0)
        .map(|(l, m)| format!("{m}·χ^{l}"))
        .collect();
    let _ = writeln!(out, "\nψ = {}", parts.join(" + "));
    let _ = writeln!(out, "dimensions: {}", report.dimension_split);
    let _ = writeln!(out, "{}", verdict(report.pass));
    Outcome::new(out, report.pass)
}

fn charfns(format: Format) -> Outcome {
    let report = match charfns_report() {
        Ok(r) => r,
        Err(e) => return Outcome::usage(e.to_string()),
    };
    if format == Format::Json {
        return Outcome::new(to_json(&report), report.pass);
    }
    let mut out = String::new();
    for f in &report.functions {
        let _ = writeln!(out, "r_{}(v) = {}", f.edge, f.expression);
    }
    if report.diff.is_empty() {
        out.push_str("\nreference diff: empty\n");
    } else {
        out.push_str("\nreference diff:\n");
        for d in &report.diff {
            let _ = writeln!(
                out,
                "  r_{}: expected {}, generated {}",
                d.edge, d.expected, d.generated
            );
        }
    }
    out.push_str("\norbit table (s·r_λ under adjacent transpositions):\n");
    let _ = write!(out, "{:<6}", "λ");
    for step in &report.orbit_table[0].steps {
        let _ = write!(out, "{:>9}", step.generator);
    }
    out.push('\n');
    for row in &report.orbit_table {
        let _ = write!(out, "{:<6}", row.edge.to_string());
        for step in &row.steps {
            let sign = if step.sign > 0 { '+' } else { '-' };
            let _ = write!(out, "{:>9}", format!("{sign}r_{}", step.image));
        }
        out.push('\n');
    }
    let _ = writeln!(out, "\norbit size: {}", report.orbit_size);
    let _ = writeln!(out, "transitive: {}", report.transitive);
    let _ = writeln!(out, "endpoint transpositions flip sign: {}", report.endpoint_flips);
    let _ = writeln!(out, "{}", verdict(report.pass));
    Outcome::new(out, report.pass)
}

fn symset(format: Format) -> Outcome {
    let report = match verify_symset_equals_r() {
        Ok(r) => r,
        Err(e) => return Outcome::usage(e.to_string()),
    };
    if format == Format::Json {
        return Outcome::new(to_json(&report), report.pass);
    }
    let join =
        |edges: &[crossratio::charfns::Edge]| edges.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ");
    let mut out = String::new();
    let _ = writeln!(out, "dim L_5 = {}", report.dim_l5);
    let _ = writeln!(out, "dim R̂ = {}", report.dim_symmetry_set);
    let _ = writeln!(out, "dim R = {}", report.dim_r);
    let _ = writeln!(out, "R̂ = R: {}", report.symmetry_set_equals_r);
    let _ = writeln!(
        out,
        "Tr η_5({}) on R̂^⊥ ∩ L_5 = {}",
        report.transposition, report.restricted_trace
    );
    let _ = writeln!(
        out,
        "normals negated by η_5({}): {{{}}}",
        report.transposition,
        join(&report.negated_normals)
    );
    let _ = writeln!(
        out,
        "normals fixed by η_5({}): {{{}}}",
        report.transposition,
        join(&report.fixed_normals)
    );
    let _ = writeln!(out, "span of negated normals: dim {}", report.negated_span_dim);
    let _ = writeln!(out, "n_25 + n_13 = n_14 + n_34: {}", report.dependence_holds);
    out.push_str("n_25 =\n");
    for row in &report.n25 {
        let _ = writeln!(out, "  [{}]", row.join(", "));
    }
    let _ = writeln!(out, "{}", verdict(report.pass));
    Outcome::new(out, report.pass)
}

fn render_criterion(out: &mut String, axioms: &AxiomReport, report: &CriterionReport) {
    let _ = writeln!(
        out,
        "axioms: {} ({} admissible 4-tuples)",
        verdict(axioms.pass),
        axioms.tuples_checked
    );
    if let Some(v) = &axioms.first_violation {
        let _ = writeln!(out, "  {v}");
    }
    let seed = report.seed.map(|s| format!(", seed {s}")).unwrap_or_default();
    let _ = writeln!(
        out,
        "mode: {} ({} regular 5-tuples{seed})",
        report.mode, report.tuples_checked
    );
    let roots: Vec<String> = report.single_root.roots.iter().map(ToString::to_string).collect();
    let _ = writeln!(
        out,
        "single root R_λ: {} (roots containing every value: {{{}}})",
        verdict(report.single_root.pass),
        roots.join(", ")
    );
    for (name, c) in [
        ("symmetry set R̂", &report.symmetry_set),
        ("component R", &report.isotypic),
    ] {
        let _ = writeln!(
            out,
            "{name}: {} ({} passed, {} failed)",
            verdict(c.pass),
            c.passed,
            c.failed
        );
    }
    let _ = writeln!(out, "conditions agree: {}", report.conditions_agree);
    let _ = writeln!(
        out,
        "float cross-check: {} disagreements at tolerance {:e}",
        report.float_disagreements, report.tolerance
    );
    if report.per_lambda_violations.values().any(|&v| v > 0) {
        out.push_str("violations per λ:");
        for (edge, count) in &report.per_lambda_violations {
            let _ = write!(out, " {edge}:{count}");
        }
        out.push('\n');
    }
    for w in &report.witnesses {
        let _ = writeln!(
            out,
            "witness: P = ({}), r_{} = ln({}) ≈ {:.6}",
            w.tuple.join(", "),
            w.edge,
            w.value,
            w.log_value
        );
    }
}

fn read_input(path: &PathBuf, stdin: &mut dyn Read) -> std::io::Result<String> {
    let mut text = String::new();
    if path.as_os_str() == "-" {
        stdin.read_to_string(&mut text)?;
    } else {
        text = std::fs::read_to_string(path)?;
    }
    Ok(text)
}

fn verify_moebius(cli: &Cli, input: Option<&PathBuf>, extended_line: bool, stdin: &mut dyn Read) -> Outcome {
    let structure = if extended_line {
        Structure::ExtendedLine
    } else {
        let path = input.expect("clap requires --input without --extended-line");
        let text = match read_input(path, stdin) {
            Ok(t) => t,
            Err(e) => return Outcome::usage(format!("cannot read {}: {e}", path.display())),
        };
        match Structure::from_json(&text) {
            Ok(s) => s,
            Err(e) => return Outcome::usage(e.to_string()),
        }
    };
    if let Some(n) = structure.point_count() {
        if n < 5 {
            return Outcome::usage(format!("need at least 5 points, got {n}"));
        }
    }
    let axioms = match structure.check_axioms() {
        Ok(a) => a,
        Err(e) => return Outcome::usage(e.to_string()),
    };
    let report = match structure.verify(cli.samples, cli.seed, cli.tolerance) {
        Ok(r) => r,
        Err(e) => return Outcome::usage(e.to_string()),
    };
    let pass = axioms.pass && report.is_moebius && report.conditions_agree;
    if cli.format == Format::Json {
        let doc = json!({ "axioms": axioms, "criterion": report, "pass": pass });
        return Outcome::new(to_json(&doc), pass);
    }
    let mut out = String::new();
    render_criterion(&mut out, &axioms, &report);
    let _ = writeln!(out, "Möbius: {}", if report.is_moebius { "yes" } else { "no" });
    let _ = writeln!(out, "{}", verdict(pass));
    Outcome::new(out, pass)
}

/// Emits a pipeable structure document. The check passes when the axioms
/// hold and the criterion fails with a witness.
fn counterexample(cli: &Cli) -> Outcome {
    let run = || -> Result<(Structure, AxiomReport, CriterionReport), crossratio::moebius::MoebiusError> {
        let structure = Structure::Free(random_submoebius(default_point_names(5), cli.seed)?);
        let axioms = structure.check_axioms()?;
        let report = structure.verify(cli.samples, cli.seed, cli.tolerance)?;
        Ok((structure, axioms, report))
    };
    let (structure, axioms, report) = match run() {
        Ok(x) => x,
        Err(e) => return Outcome::usage(e.to_string()),
    };
    let found = axioms.pass && !report.is_moebius && !report.witnesses.is_empty();
    let file: StructureFile = structure.to_file().expect("finite structure");
    let mut doc = serde_json::to_value(&file).expect("structure serializes");
    doc["seed"] = json!(cli.seed);
    doc["axioms"] = json!(axioms);
    doc["criterion"] = json!(report);
    doc["counterexample"] = json!(found);
    let mut outcome = Outcome::new(to_json(&doc), found);
    if cli.format == Format::Text {
        let mut summary = String::new();
        render_criterion(&mut summary, &axioms, &report);
        let _ = writeln!(
            summary,
            "{}",
            if found {
                "counterexample: axioms hold, criterion fails"
            } else {
                "no counterexample for this seed"
            }
        );
        outcome.stderr = summary;
    }
    outcome
}

/// Parses `args` and runs one command, returning the exit code.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                stderr.write_all(text.as_bytes())
            } else {
                stdout.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let outcome = match &cli.command {
        Command::Decompose => decompose(cli.format),
        Command::Charfns => charfns(cli.format),
        Command::Symset => symset(cli.format),
        Command::VerifyMoebius { input, extended_line } => verify_moebius(&cli, input.as_ref(), *extended_line, stdin),
        Command::Counterexample => counterexample(&cli),
    };
    let _ = stdout.write_all(outcome.stdout.as_bytes());
    let _ = stderr.write_all(outcome.stderr.as_bytes());
    outcome.code
}
