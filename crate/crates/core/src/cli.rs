//! The `nullgrid` command line. Library indices are 0-based; everything
//! printed here uses `x1..xn`, 1-based coordinates and 1-based divisor numbers.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::counting::{af_punctured_bounds, clark_count, count_nonzeros, sharpness_construction, CountDomain};
use crate::division::{check_natural, divide_with, DivisionTrace, DivisorChoice, MonomialChoice, Strategy};
use crate::error::Error;
use crate::grid::{EdgeSet, GridInput, MultisetEdge};
use crate::ideals::{
    buchberger_complete, buchberger_criterion, grid_basis, grid_power_basis, multigrid_basis, punctured_basis,
};
use crate::lacunary::{is_lacunary, lacunary_witness, max_null_index, vanishing_poly, LacunarityVector};
use crate::nullsatz::{check_theorem, NullCertificate, TheoremTag};
use crate::order::MonomialOrder;
use crate::parse::{max_variable_index, parse_polynomial, parse_scalar_list, parse_u32_list};
use crate::poly::{ExponentVector, Polynomial};
use crate::scalar::Field;
use crate::selftest::{run_criterion, CriterionReport};
use crate::stability::{ShadingContext, StabilityReport, StabilityViolation};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_REJECTED: i32 = 3;
pub const EXIT_INTERNAL: i32 = 4;

#[derive(Parser, Debug)]
#[command(
    name = "nullgrid",
    version,
    about = "Exact polynomial division, grid vanishing ideals and nonvanishing checks"
)]
pub struct Cli {
    /// Coefficient field: `q` or `gfp:P`. Grid files carry their own field.
    #[arg(long, global = true)]
    pub field: Option<String>,
    /// Monomial order: lex, grlex or grevlex.
    #[arg(long, global = true, default_value = "grlex")]
    pub order: String,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Human,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Pick {
    Greatest,
    Least,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum DivisorPick {
    Lowest,
    Highest,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum BasisKind {
    Grid,
    Punctured,
    Multigrid,
    Power,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Divide a polynomial by an ordered list of divisors.
    Divide {
        #[arg(long)]
        poly: String,
        /// Divisors separated by `;`.
        #[arg(long)]
        divisors: String,
        #[arg(long)]
        nvars: Option<usize>,
        #[arg(long, value_enum, default_value_t = Pick::Greatest)]
        pick: Pick,
        #[arg(long, value_enum, default_value_t = DivisorPick::Lowest)]
        divisor_choice: DivisorPick,
    },
    /// Decide λ-lacunarity of a polynomial.
    Lacunary {
        #[arg(long)]
        poly: String,
        #[arg(long)]
        lambda: String,
        #[arg(long)]
        nvars: Option<usize>,
    },
    /// Largest λ for which an edge (or each edge of a grid) is λ-null.
    Nullindex {
        /// Comma-separated elements.
        #[arg(long, conflicts_with = "grid")]
        edge: Option<String>,
        #[arg(long)]
        grid: Option<PathBuf>,
    },
    /// Stability of a monomial, or the list of stable monomials.
    Stable {
        #[arg(long)]
        poly: String,
        #[arg(long)]
        divisors: String,
        #[arg(long)]
        lambda: String,
        #[arg(long)]
        alpha: Option<String>,
        #[arg(long)]
        nvars: Option<usize>,
    },
    /// Build a vanishing-ideal basis (or read generators) and run the Buchberger criterion.
    GroebnerVerify {
        #[arg(long)]
        grid: Option<PathBuf>,
        #[arg(long, value_enum)]
        basis: Option<BasisKind>,
        /// Power for `--basis power`.
        #[arg(long, default_value_t = 1)]
        t: u32,
        /// Explicit generators separated by `;`.
        #[arg(long, conflicts_with = "grid")]
        gens: Option<String>,
        #[arg(long)]
        nvars: Option<usize>,
        /// Complete the generators to a Gröbner basis first.
        #[arg(long)]
        complete: bool,
    },
    /// Check the hypotheses of a nonvanishing theorem.
    Check {
        #[arg(long)]
        theorem: String,
        #[arg(long)]
        mode: Option<String>,
        #[arg(long)]
        poly: String,
        #[arg(long)]
        alpha: String,
        #[arg(long)]
        grid: PathBuf,
        #[arg(long, default_value_t = 1)]
        t: u32,
        /// One value per variable, or a single value used for all.
        #[arg(long)]
        lambda: Option<String>,
        /// Search the domain for a point meeting the conclusion.
        #[arg(long)]
        witness: bool,
    },
    /// Count nonzeros exactly and compare with the punctured bounds.
    Count {
        #[arg(long)]
        grid: PathBuf,
        #[arg(long)]
        poly: String,
    },
    /// Build a polynomial attaining the punctured bound.
    Sharp {
        #[arg(long)]
        grid: PathBuf,
        #[arg(long)]
        e: String,
    },
    /// Run the embedded acceptance criteria.
    Selftest {
        #[arg(long, default_value_t = 20_261_016)]
        seed: u64,
        /// Comma-separated criterion numbers.
        #[arg(long)]
        only: Option<String>,
    },
}

#[derive(Debug)]
enum Failure {
    Precondition(Error),
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvariantViolated(msg) => Failure::Internal(msg),
            e => Failure::Precondition(e),
        }
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

/// What a subcommand produced: the JSON document, a human rendering and
/// whether the verdict was positive.
struct Output {
    json: Value,
    human: String,
    accepted: bool,
}

impl Output {
    fn ok(json: Value, human: String) -> Self {
        Output {
            json,
            human,
            accepted: true,
        }
    }
}

/// Parses `argv`, runs the subcommand and returns the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let format = cli.format;
    match execute(&cli) {
        Ok(out) => {
            match format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&out.json).expect("json")),
                Format::Human => println!("{}", out.human.trim_end()),
            }
            if out.accepted {
                EXIT_OK
            } else if matches!(cli.command, Command::Selftest { .. }) {
                EXIT_INTERNAL
            } else {
                EXIT_REJECTED
            }
        }
        Err(Failure::Precondition(e)) => {
            eprintln!("{}", json!({"error": e.code(), "message": e.to_string()}));
            EXIT_USAGE
        }
        Err(Failure::Internal(msg)) => {
            eprintln!("{}", json!({"error": "internal", "message": msg}));
            EXIT_INTERNAL
        }
    }
}

fn execute(cli: &Cli) -> CliResult<Output> {
    let order: MonomialOrder = cli.order.parse()?;
    let field = match &cli.field {
        Some(text) => Some(text.parse::<Field>()?),
        None => None,
    };
    let plain_field = field.unwrap_or_else(Field::rationals);
    match &cli.command {
        Command::Divide {
            poly,
            divisors,
            nvars,
            pick,
            divisor_choice,
        } => divide_cmd(plain_field, order, poly, divisors, *nvars, *pick, *divisor_choice),
        Command::Lacunary { poly, lambda, nvars } => lacunary_cmd(plain_field, poly, lambda, *nvars),
        Command::Nullindex { edge, grid } => nullindex_cmd(field, edge.as_deref(), grid.as_ref()),
        Command::Stable {
            poly,
            divisors,
            lambda,
            alpha,
            nvars,
        } => stable_cmd(plain_field, order, poly, divisors, lambda, alpha.as_deref(), *nvars),
        Command::GroebnerVerify {
            grid,
            basis,
            t,
            gens,
            nvars,
            complete,
        } => groebner_cmd(
            field,
            order,
            grid.as_ref(),
            *basis,
            *t,
            gens.as_deref(),
            *nvars,
            *complete,
        ),
        Command::Check {
            theorem,
            mode,
            poly,
            alpha,
            grid,
            t,
            lambda,
            witness,
        } => {
            let input = read_grid(grid, field)?;
            check_cmd(
                &input,
                theorem,
                mode.as_deref(),
                poly,
                alpha,
                *t,
                lambda.as_deref(),
                *witness,
            )
        }
        Command::Count { grid, poly } => count_cmd(&read_grid(grid, field)?, poly),
        Command::Sharp { grid, e } => sharp_cmd(&read_grid(grid, field)?, e),
        Command::Selftest { seed, only } => selftest_cmd(*seed, only.as_deref()),
    }
}

fn read_grid(path: &PathBuf, field: Option<Field>) -> CliResult<GridInput> {
    let text =
        std::fs::read_to_string(path).map_err(|e| Error::Invalid(format!("cannot read {}: {e}", path.display())))?;
    let input = GridInput::from_json(&text)?;
    if field.is_some_and(|f| f != input.field()) {
        return Err(Error::MixedFields.into());
    }
    Ok(input)
}

fn split_list(text: &str) -> Vec<&str> {
    text.split(';').map(str::trim).filter(|s| !s.is_empty()).collect()
}

/// Number of variables: the explicit value, else the largest index mentioned.
fn arity<'a>(explicit: Option<usize>, texts: impl IntoIterator<Item = &'a str>, floor: usize) -> usize {
    explicit.unwrap_or_else(|| {
        texts
            .into_iter()
            .map(max_variable_index)
            .max()
            .unwrap_or(0)
            .max(floor)
            .max(1)
    })
}

fn exponent(text: &str, n: usize) -> CliResult<ExponentVector> {
    let v = parse_u32_list(text)?;
    if v.len() != n {
        return Err(Error::ArityMismatch {
            expected: n,
            found: v.len(),
        }
        .into());
    }
    Ok(ExponentVector::new(&v))
}

fn lambda_vector(text: Option<&str>, n: usize) -> CliResult<LacunarityVector> {
    let Some(text) = text else {
        return Ok(LacunarityVector::zeros(n));
    };
    let v = parse_u32_list(text)?;
    match v.len() {
        1 => Ok(LacunarityVector::uniform(n, v[0])),
        k if k == n => Ok(LacunarityVector::new(v)),
        k => Err(Error::ArityMismatch { expected: n, found: k }.into()),
    }
}

fn monomial_text(e: &ExponentVector, field: Field) -> String {
    Polynomial::monomial(field, e.len(), field.one(), e.clone()).to_string()
}

fn trace_json(trace: &DivisionTrace) -> Value {
    let steps: Vec<Value> = trace
        .steps
        .iter()
        .map(|s| json!({"coefficient": s.coefficient.to_string(), "shift": s.shift, "divisor": s.divisor + 1}))
        .collect();
    json!({
        "order": trace.order.name(),
        "dividend": trace.dividend.to_string(),
        "divisors": trace.divisors.iter().map(ToString::to_string).collect::<Vec<_>>(),
        "steps": steps,
        "quotients": trace.quotients().iter().map(ToString::to_string).collect::<Vec<_>>(),
        "remainder": trace.remainder.to_string(),
    })
}

fn divide_cmd(
    field: Field,
    order: MonomialOrder,
    poly: &str,
    divisors: &str,
    nvars: Option<usize>,
    pick: Pick,
    divisor_choice: DivisorPick,
) -> CliResult<Output> {
    let texts = split_list(divisors);
    let n = arity(nvars, texts.iter().copied().chain([poly]), 0);
    let f = parse_polynomial(poly, field, n)?;
    let gs = texts
        .iter()
        .map(|t| parse_polynomial(t, field, n))
        .collect::<crate::error::Result<Vec<_>>>()?;
    let strategy = Strategy {
        monomial: match pick {
            Pick::Greatest => MonomialChoice::Greatest,
            Pick::Least => MonomialChoice::Least,
        },
        divisor: match divisor_choice {
            DivisorPick::Lowest => DivisorChoice::LowestIndex,
            DivisorPick::Highest => DivisorChoice::HighestIndex,
        },
    };
    let trace = divide_with(&f, &gs, order, strategy)?;
    if let Err(v) = check_natural(&trace) {
        return Err(Failure::Internal(format!("division trace is not natural: {v}")));
    }
    let mut human = format!("{:>12}  {:<16}  divisor\n", "coefficient", "shift");
    for s in &trace.steps {
        human += &format!(
            "{:>12}  {:<16}  {}\n",
            s.coefficient.to_string(),
            monomial_text(&s.shift, field),
            s.divisor + 1
        );
    }
    human += &format!("remainder: {}\n", trace.remainder);
    let mut json = trace_json(&trace);
    json["natural"] = Value::Bool(true);
    Ok(Output::ok(json, human))
}

fn lacunary_cmd(field: Field, poly: &str, lambda: &str, nvars: Option<usize>) -> CliResult<Output> {
    let lam = parse_u32_list(lambda)?;
    let n = arity(nvars, [poly], lam.len());
    let f = parse_polynomial(poly, field, n)?;
    let lv = lambda_vector(Some(lambda), n)?;
    let verdict = is_lacunary(&f, &lv)?;
    let mu = lacunary_witness(&f, &lv)?;
    let human = match &mu {
        Some(m) => format!(
            "lacunary: yes, every monomial lies in a translate of {}",
            monomial_text(m, field)
        ),
        None => "lacunary: no".to_string(),
    };
    Ok(Output::ok(json!({"lacunary": verdict, "mu": mu}), human))
}

fn edge_report(edge: &EdgeSet) -> CliResult<Value> {
    let elements: Vec<String> = edge.elements().iter().map(ToString::to_string).collect();
    if edge.is_empty() {
        // The empty product 1 is λ-null for every λ.
        return Ok(json!({"elements": elements, "size": 0, "vanishing": "1", "max_null_index": null}));
    }
    let g = vanishing_poly(edge, 1, 0)?;
    Ok(json!({
        "elements": elements,
        "size": edge.len(),
        "vanishing": g.to_string(),
        "max_null_index": max_null_index(edge)?,
    }))
}

fn multiset_report(edge: &MultisetEdge) -> CliResult<Value> {
    let g = vanishing_poly(edge, 1, 0)?;
    Ok(json!({
        "entries": edge.entries().iter().map(|(u, m)| json!([u.to_string(), m])).collect::<Vec<_>>(),
        "weight": edge.weight(),
        "vanishing": g.to_string(),
        "max_null_index": max_null_index(edge)?,
    }))
}

fn nullindex_cmd(field: Option<Field>, edge: Option<&str>, grid: Option<&PathBuf>) -> CliResult<Output> {
    let mut json = json!({});
    match (edge, grid) {
        (Some(text), None) => {
            let field = field.unwrap_or_else(Field::rationals);
            let e = EdgeSet::new(field, parse_scalar_list(text, field)?)?;
            json["field"] = json!(field.to_string());
            json["edges"] = json!([edge_report(&e)?]);
        }
        (None, Some(path)) => {
            let input = read_grid(path, field)?;
            json["field"] = json!(input.field().to_string());
            match &input {
                GridInput::Grid(g) => {
                    json["edges"] = g.edges().iter().map(edge_report).collect::<CliResult<Vec<_>>>()?.into();
                }
                GridInput::Punctured(p) => {
                    json["edges"] = p
                        .x()
                        .edges()
                        .iter()
                        .map(edge_report)
                        .collect::<CliResult<Vec<_>>>()?
                        .into();
                    json["punctures"] = p.y().iter().map(edge_report).collect::<CliResult<Vec<_>>>()?.into();
                }
                GridInput::Multigrid(m) => {
                    json["edges"] = m
                        .edges()
                        .iter()
                        .map(multiset_report)
                        .collect::<CliResult<Vec<_>>>()?
                        .into();
                }
            }
        }
        _ => return Err(Error::Invalid("give exactly one of --edge and --grid".into()).into()),
    }
    let mut human = String::new();
    for (label, key) in [("X", "edges"), ("Y", "punctures")] {
        if let Some(list) = json[key].as_array() {
            for (i, e) in list.iter().enumerate() {
                human += &format!(
                    "{label}_{}: {} is {}-null\n",
                    i + 1,
                    e["vanishing"].as_str().unwrap_or(""),
                    e["max_null_index"]
                );
            }
        }
    }
    Ok(Output::ok(json, human))
}

fn stability_json(report: &StabilityReport, field: Field) -> Value {
    let violation = report.violation.as_ref().map(|v| match v {
        StabilityViolation::NotInSupport => json!({"kind": "not-in-support"}),
        StabilityViolation::LeadingMonomialDivides { divisor } => {
            json!({"kind": "leading-monomial-divides", "divisor": divisor + 1})
        }
        StabilityViolation::ShadingMonomial { gamma } => {
            json!({"kind": "shading-monomial", "gamma": gamma, "monomial": monomial_text(gamma, field)})
        }
    });
    json!({"alpha": report.alpha, "stable": report.verdict, "violation": violation})
}

#[allow(clippy::too_many_arguments)]
fn stable_cmd(
    field: Field,
    order: MonomialOrder,
    poly: &str,
    divisors: &str,
    lambda: &str,
    alpha: Option<&str>,
    nvars: Option<usize>,
) -> CliResult<Output> {
    let texts = split_list(divisors);
    let lam = parse_u32_list(lambda)?;
    let n = arity(nvars, texts.iter().copied().chain([poly]), lam.len());
    let f = parse_polynomial(poly, field, n)?;
    let gs = texts
        .iter()
        .map(|t| parse_polynomial(t, field, n))
        .collect::<crate::error::Result<Vec<_>>>()?;
    let ctx = ShadingContext::new(gs, lambda_vector(Some(lambda), n)?, order)?;
    match alpha {
        Some(a) => {
            let alpha = exponent(a, n)?;
            let report = ctx.is_stable(&alpha, &f)?;
            if !report.recheck(&f, &ctx)? {
                return Err(Failure::Internal("stability report does not recheck".into()));
            }
            let human = match &report.violation {
                None => format!("{} is stable", monomial_text(&alpha, field)),
                Some(v) => format!(
                    "{} is not stable: {}",
                    monomial_text(&alpha, field),
                    violation_text(v, field)
                ),
            };
            Ok(Output {
                accepted: report.verdict,
                json: stability_json(&report, field),
                human,
            })
        }
        None => {
            let stable = ctx.stable_monomials(&f)?;
            let human = stable
                .iter()
                .map(|e| monomial_text(e, field))
                .collect::<Vec<_>>()
                .join("\n");
            Ok(Output::ok(json!({"stable": stable}), human))
        }
    }
}

fn violation_text(v: &StabilityViolation, field: Field) -> String {
    match v {
        StabilityViolation::NotInSupport => "not a monomial of f".into(),
        StabilityViolation::LeadingMonomialDivides { divisor } => {
            format!("divisible by the leading monomial of divisor {}", divisor + 1)
        }
        StabilityViolation::ShadingMonomial { gamma } => format!("shaded by {}", monomial_text(gamma, field)),
    }
}

#[allow(clippy::too_many_arguments)]
fn groebner_cmd(
    field: Option<Field>,
    order: MonomialOrder,
    grid: Option<&PathBuf>,
    basis: Option<BasisKind>,
    t: u32,
    gens: Option<&str>,
    nvars: Option<usize>,
    complete: bool,
) -> CliResult<Output> {
    let generators: Vec<Polynomial> = match (grid, gens) {
        (Some(path), None) => {
            let input = read_grid(path, field)?;
            let kind = basis.unwrap_or(match &input {
                GridInput::Grid(_) => BasisKind::Grid,
                GridInput::Punctured(_) => BasisKind::Punctured,
                GridInput::Multigrid(_) => BasisKind::Multigrid,
            });
            let b = match (kind, &input) {
                (BasisKind::Grid, _) => grid_basis(&input.outer_grid())?,
                (BasisKind::Power, _) => grid_power_basis(&input.outer_grid(), t)?,
                (BasisKind::Punctured, _) => punctured_basis(&input.to_punctured()?)?,
                (BasisKind::Multigrid, _) => multigrid_basis(&input.to_multigrid()?)?,
            };
            b.generators().to_vec()
        }
        (None, Some(text)) => {
            let field = field.unwrap_or_else(Field::rationals);
            let texts = split_list(text);
            let n = arity(nvars, texts.iter().copied(), 0);
            texts
                .iter()
                .map(|t| parse_polynomial(t, field, n))
                .collect::<crate::error::Result<_>>()?
        }
        _ => return Err(Error::Invalid("give exactly one of --grid and --gens".into()).into()),
    };
    let generators = if complete {
        let b = buchberger_complete(&generators, order)?;
        if !buchberger_criterion(b.generators(), order)? {
            return Err(Failure::Internal(
                "completed basis fails the Buchberger criterion".into(),
            ));
        }
        b.generators().to_vec()
    } else {
        generators
    };
    let verified = buchberger_criterion(&generators, order)?;
    let texts: Vec<String> = generators.iter().map(ToString::to_string).collect();
    let human = format!(
        "{}\n{} Gröbner basis under {}",
        texts.join("\n"),
        if verified { "is a" } else { "is NOT a" },
        order.name()
    );
    Ok(Output {
        json: json!({"order": order.name(), "generators": texts, "verified": verified}),
        human,
        accepted: verified,
    })
}

#[allow(clippy::too_many_arguments)]
fn check_cmd(
    input: &GridInput,
    theorem: &str,
    mode: Option<&str>,
    poly: &str,
    alpha: &str,
    t: u32,
    lambda: Option<&str>,
    witness: bool,
) -> CliResult<Output> {
    let tag: TheoremTag = theorem.parse()?;
    let n = input.nvars();
    let f = parse_polynomial(poly, input.field(), n)?;
    let alpha = exponent(alpha, n)?;
    let lv = lambda_vector(lambda, n)?;
    let cert = check_theorem(tag, mode, &f, &alpha, input, &lv, t, witness)?;
    Ok(Output {
        json: serde_json::from_str(&cert.to_json()).expect("certificate JSON"),
        human: certificate_text(&cert, input.field()),
        accepted: cert.accepted,
    })
}

fn certificate_text(cert: &NullCertificate, field: Field) -> String {
    let mut out = format!(
        "{} ({}{})\n",
        if cert.accepted { "accepted" } else { "rejected" },
        cert.theorem.name(),
        cert.mode
            .map(|m| format!(", mode {}", serde_json::to_value(m).unwrap().as_str().unwrap_or("")))
            .unwrap_or_default()
    );
    for c in &cert.conditions {
        out += &format!(
            "  {}: {}\n",
            serde_json::to_value(c.name).unwrap().as_str().unwrap_or(""),
            if c.holds { "holds" } else { "fails" }
        );
    }
    for j in &cert.justifications {
        out += &format!(
            "  {}: x{} {}\n",
            monomial_text(&j.gamma, field),
            j.var + 1,
            serde_json::to_value(j.clause).unwrap()["kind"].as_str().unwrap_or("")
        );
    }
    for g in &cert.uncovered {
        out += &format!("  {}: no clause holds\n", monomial_text(g, field));
    }
    if let Some(w) = &cert.witness {
        out += &format!("witness: ({})\n", w.join(", "));
    }
    out
}

fn count_cmd(input: &GridInput, poly: &str) -> CliResult<Output> {
    let field = input.field();
    let p = input.to_punctured()?;
    let f = parse_polynomial(poly, field, p.nvars())?;
    let domain = CountDomain::Punctured(&p);
    let exact = clark_count(domain, &f)?;
    let evaluated = count_nonzeros(domain, &f)?;
    if exact != evaluated {
        return Err(Failure::Internal(format!(
            "staircase count {exact} disagrees with evaluation {evaluated}"
        )));
    }
    let bounds = af_punctured_bounds(&p, &f)?;
    for b in [bounds.bound_a, bounds.bound_b].into_iter().flatten() {
        if !bounds.empty && exact < b {
            return Err(Failure::Internal(format!("count {exact} is below the bound {b}")));
        }
    }
    let json = json!({
        "exact": exact,
        "boundA": bounds.bound_a,
        "boundB": bounds.bound_b,
        "A": bounds.a_set.candidates,
        "B": bounds.b_set.as_ref().map(|s| &s.candidates),
        "minimizerA": bounds.a_set.minimizer,
        "minimizerB": bounds.b_set.as_ref().and_then(|s| s.minimizer.clone()),
        "part2_applicable": bounds.part2_applicable,
        "empty": bounds.empty,
    });
    let show = |b: Option<u64>| b.map_or("n/a".to_string(), |v| v.to_string());
    let human = format!(
        "nonzeros: {exact}\nbound A: {}\nbound B: {}\n",
        show(bounds.bound_a),
        show(bounds.bound_b)
    );
    Ok(Output::ok(json, human))
}

fn sharp_cmd(input: &GridInput, e: &str) -> CliResult<Output> {
    let p = input.to_punctured()?;
    let e = parse_u32_list(e)?;
    let inst = sharpness_construction(&p, &e)?;
    let count = count_nonzeros(CountDomain::Punctured(&p), &inst.polynomial)?;
    if count != inst.expected {
        return Err(Failure::Internal(format!(
            "construction has {count} nonzeros, expected {}",
            inst.expected
        )));
    }
    let json = json!({
        "polynomial": inst.polynomial.to_string(),
        "roots": inst.roots,
        "expected": inst.expected,
    });
    Ok(Output::ok(json, inst.polynomial.to_string()))
}

fn selftest_cmd(seed: u64, only: Option<&str>) -> CliResult<Output> {
    let ids: Vec<u8> = match only {
        None => (1..=12).collect(),
        Some(text) => parse_u32_list(text)?
            .into_iter()
            .map(|k| match k {
                1..=12 => Ok(k as u8),
                _ => Err(Error::Invalid(format!("no criterion {k}; expected 1-12"))),
            })
            .collect::<crate::error::Result<_>>()?,
    };
    let reports: Vec<CriterionReport> = ids.iter().map(|&id| run_criterion(id, seed)).collect();
    let human = reports.iter().map(CriterionReport::line).collect::<Vec<_>>().join("\n");
    Ok(Output {
        accepted: reports.iter().all(|r| r.passed),
        json: json!({"seed": seed, "criteria": reports}),
        human,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lambda_broadcasts_a_single_value() {
        assert_eq!(lambda_vector(Some("3"), 3).unwrap().entries(), &[3, 3, 3]);
        assert_eq!(lambda_vector(Some("1,2"), 2).unwrap().entries(), &[1, 2]);
        assert_eq!(lambda_vector(None, 2).unwrap().entries(), &[0, 0]);
        assert!(lambda_vector(Some("1,2"), 3).is_err());
    }

    #[test]
    fn arity_takes_the_largest_index() {
        assert_eq!(arity(None, ["x1 + x3", "x2"], 0), 3);
        assert_eq!(arity(None, ["1"], 0), 1);
        assert_eq!(arity(None, ["x1"], 2), 2);
        assert_eq!(arity(Some(5), ["x1"], 0), 5);
    }

    #[test]
    fn exit_codes() {
        assert_eq!(run(["nullgrid", "--help"]), EXIT_OK);
        assert_eq!(run(["nullgrid"]), EXIT_USAGE);
        assert_eq!(run(["nullgrid", "divide", "--poly", "x1"]), EXIT_USAGE);
        assert_eq!(
            run(["nullgrid", "divide", "--poly", "x1", "--divisors", "0"]),
            EXIT_USAGE
        );
        assert_eq!(
            run([
                "nullgrid",
                "--order",
                "revlex",
                "divide",
                "--poly",
                "x1",
                "--divisors",
                "x1"
            ]),
            EXIT_USAGE
        );
        assert_eq!(
            run(["nullgrid", "divide", "--poly", "x1^2", "--divisors", "x1 - 1"]),
            EXIT_OK
        );
        assert_eq!(
            run(["nullgrid", "groebner-verify", "--gens", "x1^2 - x2;x1*x2 - 1"]),
            EXIT_REJECTED
        );
    }

    #[test]
    fn invariant_errors_map_to_internal() {
        assert!(matches!(
            Failure::from(Error::InvariantViolated("x".into())),
            Failure::Internal(_)
        ));
        assert!(matches!(Failure::from(Error::EmptyDomain), Failure::Precondition(_)));
    }
}
