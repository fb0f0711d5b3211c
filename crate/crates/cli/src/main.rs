//! `crossprod`: crossed-product models, equivalence, decomposition and
//! structure reports from JSON inputs.

mod examples;
mod io;
mod text;

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use crossprod::analyzer::{analyze, classify_s3, cyclic_analyze, CyclicReport, S3Class, StructureReport};
use crossprod::crossed::{build_crossed_model, CrossedModel};
use crossprod::numkit::Tolerance;
use crossprod::reps::{
    are_equivalent, commutant_dim, decompose, equivalent_by_decomposition, intertwiners, CovariantRep, CovariantRepSpec,
    IrrepDecomposition, Rep,
};
use serde::Serialize;

use io::{CliError, Diagnostic, ErrorBody, Header};
use text::{fmt_matrix, fmt_real, fmt_spectrum};

#[derive(Parser)]
#[command(name = "crossprod", version, about = "Finite-dimensional C*-algebras under finite group actions")]
struct Cli {
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,
    #[arg(long, global = true)]
    abs_eps: Option<f64>,
    #[arg(long, global = true)]
    rank_eps: Option<f64>,
    #[arg(long, global = true)]
    eig_sep: Option<f64>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Build the matrix model of A ⋊ G and its defining covariant representation.
    BuildCrossed {
        /// Algebra JSON (`{"blocks": [...]}`); optional if the action file embeds it.
        #[arg(long)]
        algebra: Option<PathBuf>,
        /// Action JSON: `group` plus `auts` (every element) or `generators`.
        #[arg(long)]
        action: PathBuf,
        /// Where to write the model; printed to stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decide unitary equivalence of two representations.
    Equiv { rep1: PathBuf, rep2: PathBuf },
    /// Decompose a representation into irreducibles.
    Decompose { rep: PathBuf },
    /// Structure report of an irreducible covariant representation.
    Analyze { covrep: PathBuf },
    /// Run the built-in worked examples.
    VerifyExamples,
}

struct Ctx {
    header: Header,
    tol: Tolerance,
    format: Format,
}

/// A finished command: the JSON document and its text rendering.
struct Output {
    json: String,
    text: String,
    code: u8,
}

#[derive(Serialize)]
struct Report<'a, T: Serialize> {
    header: Header,
    #[serde(flatten)]
    body: &'a T,
}

fn document<T: Serialize>(ctx: &Ctx, body: &T) -> Result<String, CliError> {
    io::to_json(&Report { header: ctx.header, body })
}

fn header_text(h: &Header) -> String {
    let t = &h.tolerance;
    format!("{} {}  seed={}  abs_eps={:e} rank_eps={:e} eig_sep={:e}\n", h.tool, h.version, h.seed, t.abs_eps, t.rank_eps, t.eig_sep)
}

#[derive(Serialize)]
struct BuildBody<'a> {
    span_dim: usize,
    host_dim: usize,
    group_order: usize,
    algebra_dim: usize,
    model: &'a CrossedModel,
    defining_rep: &'a CovariantRep,
}

#[derive(Serialize)]
struct BuildSummary<'a> {
    span_dim: usize,
    host_dim: usize,
    group_order: usize,
    algebra_dim: usize,
    out: &'a Path,
}

fn build_crossed(ctx: &Ctx, algebra: Option<&Path>, action: &Path, out: Option<&Path>) -> Result<Output, CliError> {
    let action = io::load_action(algebra, action, &ctx.tol)?;
    let model = build_crossed_model(&action, &ctx.tol)?;
    model.check_invariants(&ctx.tol)?;
    let defining = model.defining_rep();
    let (group_order, algebra_dim) = (action.group().order(), action.algebra().dim());
    let full = document(ctx, &BuildBody { span_dim: model.span_dim, host_dim: model.host_dim, group_order, algebra_dim, model: &model, defining_rep: &defining })?;
    let text = format!("span_dim: {}\nhost_dim: {}\ngroup_order: {group_order}\nalgebra_dim: {algebra_dim}\n", model.span_dim, model.host_dim);
    let json = match out {
        Some(path) => {
            io::write_file(path, &full)?;
            document(ctx, &BuildSummary { span_dim: model.span_dim, host_dim: model.host_dim, group_order, algebra_dim, out: path })?
        }
        None => full,
    };
    let text = match out {
        Some(path) => format!("{text}written: {}\n", path.display()),
        None => text,
    };
    Ok(Output { json, text, code: 0 })
}

#[derive(Serialize)]
struct EquivBody {
    verdict: &'static str,
    equivalent: bool,
    irreducible: [bool; 2],
    intertwiner_dim: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<crossprod::numkit::CMatrix>,
}

fn equiv(ctx: &Ctx, p1: &Path, p2: &Path) -> Result<Output, CliError> {
    let r1: Rep = io::read_json(p1)?;
    let r2: Rep = io::read_json(p2)?;
    let irreducible = [commutant_dim(&r1, &ctx.tol)? == 1, commutant_dim(&r2, &ctx.tol)? == 1];
    let body = if irreducible == [true, true] {
        let e = are_equivalent(&r1, &r2, &ctx.tol)?;
        EquivBody { verdict: verdict(e.equivalent), equivalent: e.equivalent, irreducible, intertwiner_dim: e.intertwiner_dim, witness: e.witness }
    } else {
        let eq = equivalent_by_decomposition(&r1, &r2, ctx.header.seed, &ctx.tol)?;
        let k = if r1.dim() == r2.dim() || eq { intertwiners(&r1, &r2, &ctx.tol)?.len() } else { 0 };
        EquivBody { verdict: verdict(eq), equivalent: eq, irreducible, intertwiner_dim: k, witness: None }
    };
    let chop = ctx.tol.abs_eps;
    let mut text = format!("verdict: {}\nirreducible: {} {}\nintertwiner_dim: {}\n", body.verdict, irreducible[0], irreducible[1], body.intertwiner_dim);
    if let Some(w) = &body.witness {
        text.push_str("witness:\n");
        text.push_str(&fmt_matrix(w, chop, "  "));
    }
    Ok(Output { json: document(ctx, &body)?, text, code: 0 })
}

fn verdict(eq: bool) -> &'static str {
    if eq {
        "equivalent"
    } else {
        "inequivalent"
    }
}

#[derive(Serialize)]
struct DecomposeBody<'a> {
    dim: usize,
    signature: Vec<(usize, usize)>,
    decomposition: &'a IrrepDecomposition,
}

fn decomposition_text(d: &IrrepDecomposition) -> String {
    let mut s = format!("components: {}\n", d.components.len());
    for (i, (dim, mult)) in d.signature().into_iter().enumerate() {
        let _ = writeln!(s, "  [{i}] dim {dim}, multiplicity {mult}");
    }
    s
}

fn decompose_cmd(ctx: &Ctx, path: &Path) -> Result<Output, CliError> {
    let rep: Rep = io::read_json(path)?;
    let d = decompose(&rep, ctx.header.seed, &ctx.tol)?;
    let body = DecomposeBody { dim: rep.dim(), signature: d.signature(), decomposition: &d };
    Ok(Output { json: document(ctx, &body)?, text: format!("dim: {}\n{}", rep.dim(), decomposition_text(&d)), code: 0 })
}

#[derive(Serialize)]
#[serde(tag = "kind", content = "report", rename_all = "snake_case")]
enum AnalyzeBody {
    Structure(Box<StructureReport>),
    Cyclic(Box<CyclicReport>),
    S3(Box<S3Class>),
}

fn structure_text(r: &StructureReport, chop: f64) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "stabilizer: {{{}}} (order {}, normal: {})", r.h_labels.join(", "), r.h.order(), r.h_is_normal);
    let _ = writeln!(s, "m: {}\nmultiplicity: {}\nbase_irrep_dim: {}", r.m(), r.multiplicity, r.base_irrep.dim());
    if let Some(b) = r.normal_block_criterion {
        let _ = writeln!(s, "normal_block_criterion: {b}");
    }
    let _ = writeln!(s, "cocycle_defect: lambda {} v {}", fmt_real(r.lambda.defect(), chop), fmt_real(r.vproj.defect(), chop));
    let c = &r.checks;
    let _ = writeln!(s, "checks: {} (pia {}, block {}, psi {})", if c.passed() { "passed" } else { "FAILED" }, fmt_real(c.pia_residual, chop), fmt_real(c.block_residual, chop), fmt_real(c.psi_residual, chop));
    s
}

fn analyze_text(body: &AnalyzeBody, chop: f64) -> String {
    match body {
        AnalyzeBody::Structure(r) => format!("kind: structure\n{}", structure_text(r, chop)),
        AnalyzeBody::Cyclic(r) => {
            let mut s = String::from("kind: cyclic\n");
            let _ = writeln!(s, "m: {}\nk: {}\nminimal: {}", r.m, r.k, r.minimal);
            let _ = writeln!(s, "spectrum_of_u: {}\nspectrum_is_coset: {}", fmt_spectrum(&r.spectrum_of_u, chop), r.spectrum_is_coset);
            let _ = writeln!(s, "spectrum_of_v: {}", fmt_spectrum(&r.spectrum_of_v, chop));
            let _ = writeln!(s, "fixed_point_dim: {}\nphi_count: {}\neta: {}", r.a1_dim, r.fixed_pt_irreps.len(), r.eta);
            s + &structure_text(&r.base, chop)
        }
        AnalyzeBody::S3(c) => {
            let mut s = format!("kind: s3\ncase: {:?}\n", c.case);
            let _ = writeln!(s, "z3_irreducible: {}\na_irreducible: {}", c.z3_irreducible, c.a_irreducible);
            if let Some(t) = c.tau_equivalent {
                let _ = writeln!(s, "tau_equivalent: {t}");
            }
            let _ = writeln!(s, "display_residual: {}", fmt_real(c.display_residual, chop));
            s + &structure_text(&c.structure, chop)
        }
    }
}

fn analyze_cmd(ctx: &Ctx, path: &Path) -> Result<Output, CliError> {
    let spec: CovariantRepSpec = io::read_json(path)?;
    let pi = spec.build(&ctx.tol)?;
    let (seed, tol) = (ctx.header.seed, &ctx.tol);
    let flat = pi.to_rep();
    let k = commutant_dim(&flat, tol)?;
    if k != 1 {
        let mut err = CliError::from(crossprod::Error::NotIrreducible { commutant_dim: k });
        err.decomposition = Some(decompose(&flat, seed, tol)?);
        return Err(err);
    }
    let g = pi.group();
    let body = if g.order() == 6 && !g.is_abelian() {
        AnalyzeBody::S3(Box::new(classify_s3(&pi, seed, tol)?))
    } else if g.cyclic_generator().is_some() && pi.action().algebra_action().is_some() {
        AnalyzeBody::Cyclic(Box::new(cyclic_analyze(&pi, seed, tol)?))
    } else {
        AnalyzeBody::Structure(Box::new(analyze(&pi, seed, tol)?))
    };
    Ok(Output { json: document(ctx, &body)?, text: analyze_text(&body, tol.abs_eps), code: 0 })
}

#[derive(Serialize)]
struct VerifyBody<'a> {
    passed: usize,
    failed: usize,
    rows: &'a [examples::Row],
}

fn verify_examples(ctx: &Ctx) -> Result<Output, CliError> {
    let rows = examples::run(ctx.header.seed, &ctx.tol);
    let passed = rows.iter().filter(|r| r.pass).count();
    let failed = rows.len() - passed;
    let width = rows.iter().map(|r| r.name.len()).max().unwrap_or(0);
    let mut text = String::new();
    for r in &rows {
        let _ = writeln!(text, "{}  {:<width$}  expected: {}", if r.pass { "PASS" } else { "FAIL" }, r.name, r.expected);
        let _ = writeln!(text, "      {:<width$}  computed: {}", "", r.computed);
    }
    let _ = writeln!(text, "{passed} passed, {failed} failed");
    Ok(Output { json: document(ctx, &VerifyBody { passed, failed, rows: &rows })?, text, code: if failed == 0 { 0 } else { 1 } })
}

fn run(cli: &Cli, ctx: &Ctx) -> Result<Output, CliError> {
    match &cli.command {
        Command::BuildCrossed { algebra, action, out } => build_crossed(ctx, algebra.as_deref(), action, out.as_deref()),
        Command::Equiv { rep1, rep2 } => equiv(ctx, rep1, rep2),
        Command::Decompose { rep } => decompose_cmd(ctx, rep),
        Command::Analyze { covrep } => analyze_cmd(ctx, covrep),
        Command::VerifyExamples => verify_examples(ctx),
    }
}

fn report_error(ctx: &Ctx, e: &CliError) {
    match ctx.format {
        Format::Json => {
            let diag = Diagnostic {
                header: ctx.header,
                error: ErrorBody { kind: &e.kind, exit_code: e.code, message: &e.message },
                decomposition: e.decomposition.as_ref(),
            };
            match serde_json::to_string_pretty(&diag) {
                Ok(s) => println!("{s}"),
                Err(_) => eprintln!("error[{}]: {}", e.kind, e.message),
            }
        }
        Format::Text => {
            eprint!("{}", header_text(&ctx.header));
            eprintln!("error[{}]: {}", e.kind, e.message);
            if let Some(d) = &e.decomposition {
                eprint!("{}", decomposition_text(d));
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let d = Tolerance::default();
    let tol = Tolerance { abs_eps: cli.abs_eps.unwrap_or(d.abs_eps), rank_eps: cli.rank_eps.unwrap_or(d.rank_eps), eig_sep: cli.eig_sep.unwrap_or(d.eig_sep) };
    let ctx = Ctx { header: Header::new(cli.seed, tol), tol, format: cli.format };
    let result = tol.validate().map_err(CliError::from).and_then(|_| run(&cli, &ctx));
    match result {
        Ok(out) => {
            match ctx.format {
                Format::Json => println!("{}", out.json),
                Format::Text => print!("{}{}", header_text(&ctx.header), out.text),
            }
            ExitCode::from(out.code)
        }
        Err(e) => {
            report_error(&ctx, &e);
            ExitCode::from(e.code)
        }
    }
}
