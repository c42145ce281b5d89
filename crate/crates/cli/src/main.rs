//! `tgrs`: build, classify and verify [1,0]-twisted GRS codes.
//!
//! Exit status: 0 on success, 1 when a check fails, 2 on usage or
//! precondition errors.

mod document;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};
use tgrs_core::constructions::{
    even_q_family, lcd_scale, lcd_scale_information_set, nonsquare_support, odd_q_full_support,
    odd_q_units, subfield_family, ConstructionReport, UnitsOutcome, Variant,
};
use tgrs_core::lincode::DEFAULT_BUDGET;
use tgrs_core::tgrs::{LambdaCheck, TgrsError, TgrsParams};
use tgrs_core::verify::{audit, AuditReport, CheckKind, Status};
use tgrs_core::{Elem, Field};

use document::{grid_text, parse_csv, read_document, CodeDocument, FieldDoc};

#[derive(Parser)]
#[command(
    name = "tgrs",
    version,
    about = "Build, classify and verify [1,0]-twisted GRS codes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Field utilities.
    Field {
        #[command(subcommand)]
        action: FieldAction,
    },
    /// Generator and parity-check matrices of a code.
    Build(CodeArgs),
    /// MDS or NMDS, with the minimum distance.
    Classify(CodeArgs),
    /// Weight distributions of the code and its dual.
    Weights {
        #[command(flatten)]
        code: CodeArgs,
        #[arg(long, value_enum, default_value_t = Method::Closed)]
        method: Method,
    },
    /// Test one property; exit 1 if it does not hold.
    Check {
        #[command(flatten)]
        code: CodeArgs,
        #[arg(long, value_enum)]
        property: Property,
    },
    /// Build a member of one of the self-dual, almost self-dual or LCD families.
    Construct(ConstructArgs),
    /// Audit the structured results against brute force.
    Verify {
        #[command(flatten)]
        code: CodeArgs,
        /// Comma-separated check names, or `all`.
        #[arg(long, default_value = "all")]
        checks: String,
    },
}

#[derive(Subcommand)]
enum FieldAction {
    Info {
        #[arg(long)]
        field: String,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
}

#[derive(Args)]
struct CodeArgs {
    /// `q=<p^m>` or `q=<p^m>,poly=<c0,...,cm>`.
    #[arg(long, required_unless_present = "doc")]
    field: Option<String>,
    #[arg(long, required_unless_present = "doc")]
    k: Option<usize>,
    /// Evaluation points as integer reps.
    #[arg(long, required_unless_present = "doc")]
    alpha: Option<String>,
    /// Column multipliers; all ones when omitted.
    #[arg(long)]
    v: Option<String>,
    #[arg(long, required_unless_present = "doc")]
    eta: Option<u32>,
    /// Read the code from a JSON document (`-` for stdin) instead.
    #[arg(long, conflicts_with_all = ["field", "k", "alpha", "v", "eta"])]
    doc: Option<PathBuf>,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args)]
struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Largest number of messages any brute-force step may enumerate.
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
}

#[derive(Args)]
struct ConstructArgs {
    #[arg(long, value_enum)]
    family: FamilyArg,
    #[arg(long)]
    field: String,
    /// Dimension for the cda, cda1, pcd1 and pcd2 families.
    #[arg(long, default_value_t = 3)]
    k: usize,
    #[arg(long)]
    alpha: Option<String>,
    #[arg(long)]
    eta: Option<u32>,
    #[arg(long)]
    a: Option<u32>,
    /// Must agree with the family when given.
    #[arg(long, value_enum)]
    variant: Option<VariantArg>,
    /// Rescale the result into an LCD code with this beta.
    #[arg(long)]
    lcd_beta: Option<u32>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Closed,
    Brute,
    Both,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
enum Property {
    SelfOrthogonal,
    SelfDual,
    AlmostSelfDual,
    Lcd,
    NonGrs,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FamilyArg {
    Cda,
    Cda1,
    Q1,
    Q2,
    Q12,
    Q13,
    Pcd1,
    Pcd2,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum VariantArg {
    Almost,
    SelfDual,
}

/// What a command prints, and whether its check passed.
struct Output {
    json: Value,
    text: String,
    passed: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok((out, format)) => {
            match format {
                Format::Json => println!(
                    "{}",
                    serde_json::to_string_pretty(&out.json).expect("serializable")
                ),
                Format::Text => println!("{}", out.text),
            }
            if out.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cmd: Command) -> Result<(Output, Format)> {
    match cmd {
        Command::Field {
            action: FieldAction::Info { field, format },
        } => Ok((field_info(&field.parse()?), format)),
        Command::Build(args) => {
            let p = params(&args)?;
            Ok((build(&p), args.out.format))
        }
        Command::Classify(args) => {
            let p = params(&args)?;
            Ok((classify(&p)?, args.out.format))
        }
        Command::Weights { code, method } => {
            let p = params(&code)?;
            Ok((weights(&p, method, code.out.budget)?, code.out.format))
        }
        Command::Check { code, property } => {
            let p = params(&code)?;
            Ok((check(&p, property)?, code.out.format))
        }
        Command::Construct(args) => Ok((construct(&args)?, args.format)),
        Command::Verify { code, checks } => {
            let p = params(&code)?;
            let kinds = CheckKind::parse_list(&checks)?;
            Ok((verify(&p, &kinds, code.out.budget)?, code.out.format))
        }
    }
}

fn params(args: &CodeArgs) -> Result<TgrsParams> {
    if let Some(path) = &args.doc {
        return read_document(path);
    }
    let missing = |name: &str| anyhow!("--{name} is required");
    let field: Field = args
        .field
        .as_deref()
        .ok_or_else(|| missing("field"))?
        .parse()?;
    let alpha = parse_csv(
        &field,
        args.alpha.as_deref().ok_or_else(|| missing("alpha"))?,
        "alpha",
    )?;
    let v = match &args.v {
        Some(text) => parse_csv(&field, text, "v")?,
        None => vec![Elem::ONE; alpha.len()],
    };
    let eta = field.elem(args.eta.ok_or_else(|| missing("eta"))? as u64)?;
    let k = args.k.ok_or_else(|| missing("k"))?;
    Ok(TgrsParams::new(&field, k, alpha, v, eta)?)
}

fn field_info(f: &Field) -> Output {
    let prim = f.primitive_element();
    let json = json!({
        "q": f.order(),
        "p": f.characteristic(),
        "m": f.degree(),
        "modulus": f.modulus(),
        "spec": f.spec_string(),
        "primitive_element": prim.rep(),
    });
    let poly: Vec<String> = f
        .modulus()
        .iter()
        .enumerate()
        .rev()
        .filter(|(_, &c)| c != 0)
        .map(|(i, &c)| match (i, c) {
            (0, c) => c.to_string(),
            (1, 1) => "x".to_string(),
            (1, c) => format!("{c}x"),
            (i, 1) => format!("x^{i}"),
            (i, c) => format!("{c}x^{i}"),
        })
        .collect();
    let text = format!(
        "GF({}) = GF({}^{})\nmodulus: {}\nprimitive element: {}",
        f.order(),
        f.characteristic(),
        f.degree(),
        poly.join(" + "),
        prim.rep()
    );
    Output {
        json,
        text,
        passed: true,
    }
}

fn header(p: &TgrsParams) -> String {
    let r = p.reps();
    let join = |xs: &[u32]| {
        xs.iter()
            .map(|x| x.to_string())
            .collect::<Vec<_>>()
            .join(" ")
    };
    format!(
        "[{}, {}] TGRS code over GF({})\nalpha: {}\nv:     {}\neta:   {}",
        p.n(),
        p.k(),
        p.field().order(),
        join(&r.alpha),
        join(&r.v),
        r.eta
    )
}

fn classification_text(doc: &CodeDocument) -> String {
    match &doc.classification {
        Some(c) => format!(
            "classification: {}, d = {}, m_count = {}",
            c.kind, c.d, c.m_count
        ),
        None => "classification: not determined for k < 3".to_string(),
    }
}

fn build(p: &TgrsParams) -> Output {
    let doc = CodeDocument::new(p);
    let text = format!(
        "{}\ngenerator:\n{}\nparity check:\n{}\n{}",
        header(p),
        grid_text(&doc.generator),
        grid_text(&doc.parity_check),
        classification_text(&doc)
    );
    Output {
        json: serde_json::to_value(&doc).expect("serializable"),
        text,
        passed: true,
    }
}

fn classify(p: &TgrsParams) -> Result<Output> {
    let cl = p.classify()?;
    let mut doc = CodeDocument::new(p);
    doc.classification = Some(cl.clone());
    let text = format!(
        "{}\n{}\nnmds target (-1)^k / eta = {}",
        header(p),
        classification_text(&doc),
        p.nmds_target()
    );
    Ok(Output {
        json: serde_json::to_value(&doc)?,
        text,
        passed: true,
    })
}

fn weights(p: &TgrsParams, method: Method, budget: u64) -> Result<Output> {
    let mut w = serde_json::Map::new();
    let mut text = vec![header(p)];
    let mut tables = Vec::new();
    if matches!(method, Method::Closed | Method::Both) {
        let (c, d) = p.closed_weight_distribution()?;
        tables.push(("closed", c, d));
    }
    if matches!(method, Method::Brute | Method::Both) {
        let code = p.code();
        let c = code.brute_weights(budget)?;
        let d = code.dual()?.brute_weights(budget)?;
        tables.push(("brute", c, d));
    }
    for (name, c, d) in &tables {
        w.insert(name.to_string(), json!({ "code": c, "dual": d }));
        text.push(format!("{name} A:      {}", serde_json::to_string(c)?));
        text.push(format!("{name} A_dual: {}", serde_json::to_string(d)?));
    }
    let passed = match tables.as_slice() {
        [(_, c1, d1), (_, c2, d2)] => {
            let agree = c1 == c2 && d1 == d2;
            w.insert("agree".into(), Value::Bool(agree));
            text.push(format!(
                "closed form and enumeration {}",
                if agree { "agree" } else { "DIFFER" }
            ));
            agree
        }
        _ => true,
    };
    let mut doc = CodeDocument::new(p);
    doc.weights = Some(Value::Object(w));
    Ok(Output {
        json: serde_json::to_value(&doc)?,
        text: text.join("\n"),
        passed,
    })
}

fn check(p: &TgrsParams, property: Property) -> Result<Output> {
    let status = p.code().orthogonality_status();
    let mut report = json!({ "property": property, "status": status });
    let holds = match property {
        Property::SelfOrthogonal => status.self_orthogonal,
        Property::SelfDual => status.self_dual,
        Property::AlmostSelfDual => status.almost_self_dual,
        Property::Lcd => status.lcd,
        Property::NonGrs => {
            let cert = p.non_grs_certificate()?;
            report["certificate"] = serde_json::to_value(&cert)?;
            cert.certified
        }
    };
    if matches!(property, Property::SelfDual | Property::AlmostSelfDual) {
        match p.lambda_self_dual_check() {
            Ok(LambdaCheck::SelfDual(l)) | Ok(LambdaCheck::AlmostSelfDual(l)) => {
                report["lambda"] = json!(l.rep());
            }
            Ok(LambdaCheck::Fails(why)) => report["lambda_failure"] = json!(why),
            Err(TgrsError::WrongShape(_)) | Err(TgrsError::OutOfTheoremRange(_)) => {}
            Err(e) => return Err(e.into()),
        }
    }
    report["holds"] = Value::Bool(holds);
    let name = serde_json::to_value(property)?;
    let text = format!(
        "{}\n{}: {}\nhull dimension: {}",
        header(p),
        name.as_str().unwrap_or_default(),
        if holds { "yes" } else { "no" },
        status.hull_dim
    );
    let mut doc = CodeDocument::new(p);
    doc.properties = Some(report);
    Ok(Output {
        json: serde_json::to_value(&doc)?,
        text,
        passed: holds,
    })
}

fn construct(args: &ConstructArgs) -> Result<Output> {
    let f: Field = args.field.parse()?;
    let elem = |x: u32| f.elem(x as u64);
    let a = args.a.map(elem).transpose()?;
    let eta = args.eta.map(elem).transpose()?;
    let alpha = args
        .alpha
        .as_deref()
        .map(|t| parse_csv(&f, t, "alpha"))
        .transpose()?;
    let implied = match args.family {
        FamilyArg::Cda | FamilyArg::Q1 | FamilyArg::Q12 | FamilyArg::Pcd1 => VariantArg::Almost,
        _ => VariantArg::SelfDual,
    };
    if args.variant.is_some_and(|v| v != implied) {
        bail!("--variant does not match the family");
    }
    let variant = match implied {
        VariantArg::Almost => Variant::Almost,
        VariantArg::SelfDual => Variant::SelfDual,
    };
    let report = match args.family {
        FamilyArg::Cda | FamilyArg::Cda1 => even_q_family(&f, args.k, alpha, eta, variant)?,
        FamilyArg::Q1 => odd_q_full_support(&f, a)?,
        FamilyArg::Q2 => match odd_q_units(&f)? {
            UnitsOutcome::Built(r) => *r,
            UnitsOutcome::NonExistence { q, reason } => {
                let json = json!({ "family": "Q2", "q": q, "exists": false, "reason": reason });
                let text = format!("no self-dual code in this family over GF({q}): {reason}");
                return Ok(Output {
                    json,
                    text,
                    passed: false,
                });
            }
        },
        FamilyArg::Q12 | FamilyArg::Q13 => nonsquare_support(&f, a, variant)?,
        FamilyArg::Pcd1 | FamilyArg::Pcd2 => subfield_family(&f, args.k, alpha, eta, variant)?,
    };
    let (report, base) = match args.lcd_beta {
        None => (report, None),
        Some(b) => {
            let beta = elem(b)?;
            let lcd = if report.params.zero_position() == Some(report.params.n() - 1) {
                lcd_scale(&report.params, beta)?
            } else {
                lcd_scale_information_set(&report.params, beta)?
            };
            (lcd, Some(report))
        }
    };
    Ok(construction_output(&report, base.as_ref()))
}

fn construction_output(r: &ConstructionReport, base: Option<&ConstructionReport>) -> Output {
    let p = &r.params;
    let status = p.code().orthogonality_status();
    let mut info = json!({
        "family": r.family,
        "claimed": r.claimed,
        "notes": r.notes,
    });
    if let Some(b) = base {
        info["scaled_from"] = json!({ "family": b.family, "params": b.params.reps() });
    }
    let mut doc = CodeDocument::new(p);
    doc.classification = Some(r.classification.clone());
    doc.construction = Some(info);
    doc.properties = Some(serde_json::to_value(status).expect("serializable"));
    let text = format!(
        "{}\nfamily: {}\nclaimed: {}\n{}\nhull dimension: {}{}",
        header(p),
        json!(r.family).as_str().unwrap_or_default(),
        json!(r.claimed).as_str().unwrap_or_default(),
        classification_text(&doc),
        status.hull_dim,
        r.notes
            .iter()
            .map(|n| format!("\nnote: {n}"))
            .collect::<String>()
    );
    Output {
        json: serde_json::to_value(&doc).expect("serializable"),
        text,
        passed: true,
    }
}

fn verify(p: &TgrsParams, checks: &[CheckKind], budget: u64) -> Result<Output> {
    let report: AuditReport = audit(p, checks, budget)?;
    let mut lines = vec![header(p)];
    let status = |s: Status| match s {
        Status::Pass => "pass",
        Status::Fail => "FAIL",
        Status::Skipped => "skip",
    };
    for c in &report.checks {
        lines.push(format!(
            "{:<16} {:<5} {}{}",
            c.name,
            status(c.status),
            c.claim,
            c.detail
                .as_ref()
                .map(|d| format!(" ({d})"))
                .unwrap_or_default()
        ));
        if c.status == Status::Fail {
            lines.push(format!(
                "    expected {}\n    observed {}",
                c.expected, c.observed
            ));
        }
    }
    for c in &report.discrepancies {
        lines.push(format!(
            "known misprint: {} {}",
            c.claim,
            c.detail.as_deref().unwrap_or("matches enumeration here")
        ));
    }
    Ok(Output {
        json: json!({
            "field": FieldDoc::of(p.field()),
            "audit": report,
            "passed": report.passed(),
        }),
        text: lines.join("\n"),
        passed: report.passed(),
    })
}
