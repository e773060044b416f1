use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use mfkit::catalog::{ar_quiver, build_catalog, get_sequences, Catalog};
use mfkit::json::{catalog_to_json, local_cert_to_wire, matfac_from_json, matfac_to_json, ses_from_json, ses_to_wire};
use mfkit::kgroup::{present_k0, Classification, Variant};
use mfkit::locus::{nonfree_locus, LocalVerdict};
use mfkit::text::poly_to_string;
use mfkit::verify::{default_cutoff, run_suite, Check};
use mfkit::{make_ring, Ctx, Family, Form, MatFac, MfError, SESCert};
use num_bigint::BigInt;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "mfkit", version, about = "Exact matrix factorizations over the A-inf and D-inf hypersurfaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Ring as FAMILY:d with FAMILY one of A-inf, D-inf.
    #[arg(long, global = true)]
    ring: Option<String>,

    /// Presentation of the ring: `x` (normal form) or `uv` (Knörrer coordinates).
    #[arg(long, global = true, default_value = "x")]
    form: String,

    /// Largest catalog parameter n.
    #[arg(long, global = true, default_value_t = 10)]
    nmax: u32,

    /// Degree cutoff for graded exactness checks.
    #[arg(long, global = true, env = "MFKIT_DEGREE_CUTOFF")]
    cutoff: Option<i64>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Md)]
    format: Format,

    /// Write output to this file instead of stdout.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Md,
    Dot,
}

#[derive(Subcommand)]
enum Command {
    /// Check AB = BA = fE for catalog entries or a factorization file.
    Validate {
        #[arg(long)]
        module: Option<String>,
        /// A factorization in JSON.
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// List the catalog or emit it as JSON.
    Catalog {
        #[arg(value_enum, default_value_t = CatalogAction::List)]
        action: CatalogAction,
    },
    /// The Knörrer image of a catalog entry in dimension d + 2.
    Knorrer {
        #[arg(long)]
        module: String,
    },
    /// Nonfree loci at the named primes, with local certificates.
    Locus {
        #[arg(long)]
        module: Option<String>,
    },
    /// Verify sequence certificates from the catalog or a JSON file.
    SeqCheck {
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// The Grothendieck group.
    K0 {
        #[arg(long, value_enum, default_value_t = VariantArg::Cm)]
        variant: VariantArg,
    },
    /// The Auslander-Reiten quiver.
    Quiver,
    /// Run every check for the ring, or for all rings up to dimension 5.
    VerifyPaper,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CatalogAction {
    List,
    Emit,
    Sequences,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum VariantArg {
    Cm,
    Stable,
}

enum Failure {
    Usage(String),
    Verification(String),
}

impl From<MfError> for Failure {
    fn from(e: MfError) -> Failure {
        match e {
            MfError::InvalidDimension(_)
            | MfError::UnknownFamily(_)
            | MfError::UnknownModule(_)
            | MfError::NMax { .. }
            | MfError::Parse(_)
            | MfError::Json(_)
            | MfError::NeedsUvForm(_)
            | MfError::ContextMismatch(..)
            | MfError::CutoffTooSmall { .. } => Failure::Usage(e.to_string()),
            other => Failure::Verification(other.to_string()),
        }
    }
}

/// Rendered output and whether everything verified.
struct Report {
    text: String,
    ok: bool,
}

impl Report {
    fn ok(text: String) -> Report {
        Report { text, ok: true }
    }
}

fn parse_ring(ring: Option<&str>, form: &str) -> Result<Ctx, Failure> {
    let ring = ring.ok_or_else(|| Failure::Usage("--ring FAMILY:d is required".into()))?;
    let (fam, d) =
        ring.split_once(':').ok_or_else(|| Failure::Usage(format!("ring `{ring}` is not of the form FAMILY:d")))?;
    let family: Family = fam.parse()?;
    let d: u32 = d.parse().map_err(|_| Failure::Usage(format!("dimension `{d}` is not a positive integer")))?;
    let form: Form = form.parse()?;
    Ok(make_ring(family, d, form)?)
}

fn read(path: &PathBuf) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn int(x: &BigInt) -> Value {
    match i64::try_from(x) {
        Ok(v) => json!(v),
        Err(_) => json!(x.to_string()),
    }
}

fn classification_json(c: &Classification) -> Value {
    json!({ "free_rank": c.free_rank, "torsion": c.torsion.iter().map(int).collect::<Vec<_>>() })
}

fn mat_text(m: &mfkit::Mat, ctx: &Ctx) -> String {
    let rows: Vec<String> =
        m.to_rows().iter().map(|r| r.iter().map(|p| poly_to_string(p, ctx)).collect::<Vec<_>>().join(", ")).collect();
    format!("[{}]", rows.join("; "))
}

fn catalog(cli: &Cli) -> Result<(Ctx, std::sync::Arc<Catalog>), Failure> {
    let ctx = parse_ring(cli.ring.as_deref(), &cli.form)?;
    let cat = build_catalog(&ctx, cli.nmax)?;
    Ok((ctx, cat))
}

fn lookup<'a>(cat: &'a Catalog, label: &str) -> Result<&'a MatFac, Failure> {
    cat.entry(label).map(|e| &e.mf).ok_or_else(|| Failure::Usage(format!("unknown module label `{label}`")))
}

fn validate(cli: &Cli, module: Option<&str>, input: Option<&PathBuf>) -> Result<Report, Failure> {
    let mfs: Vec<MatFac> = match (input, module) {
        (Some(path), _) => vec![matfac_from_json(&read(path)?)?],
        (None, Some(label)) => vec![lookup(&catalog(cli)?.1, label)?.clone()],
        (None, None) => catalog(cli)?.1.entries.iter().map(|e| e.mf.clone()).collect(),
    };
    let results: Vec<(String, Result<(), String>)> =
        mfs.iter().map(|m| (m.label().to_string(), m.validate().map_err(|w| w.to_string()))).collect();
    let ok = results.iter().all(|(_, r)| r.is_ok());
    let text = match cli.format {
        Format::Json => pretty(&json!({
            "results": results.iter().map(|(l, r)| match r {
                Ok(()) => json!({ "label": l, "pass": true }),
                Err(w) => json!({ "label": l, "pass": false, "witness": w }),
            }).collect::<Vec<_>>(),
            "pass": ok,
        })),
        _ => results
            .iter()
            .map(|(l, r)| match r {
                Ok(()) => format!("{l}: PASS\n"),
                Err(w) => format!("{l}: FAIL ({w})\n"),
            })
            .collect(),
    };
    Ok(Report { text, ok })
}

fn catalog_cmd(cli: &Cli, action: CatalogAction) -> Result<Report, Failure> {
    let (ctx, cat) = catalog(cli)?;
    let text = match (action, cli.format) {
        (CatalogAction::Emit, _) | (CatalogAction::List, Format::Json) => catalog_to_json(&cat) + "\n",
        (CatalogAction::Sequences, _) => {
            let seqs = get_sequences(&ctx, cli.nmax)?;
            pretty(&serde_json::to_value(seqs.iter().map(ses_to_wire).collect::<Vec<_>>()).expect("serializable"))
        }
        (CatalogAction::List, _) => {
            let mut s = format!(
                "# {}\n\nf = {}\n\n| module | size | nonfree locus | A |\n|---|---|---|---|\n",
                ctx.spec(),
                poly_to_string(ctx.f(), &ctx)
            );
            for e in &cat.entries {
                let locus: Vec<&str> = e.declared_locus.iter().map(|p| p.name.as_str()).collect();
                let _ = writeln!(
                    s,
                    "| {} | {} | {{{}}} | {} |",
                    e.label,
                    e.mf.size(),
                    locus.join(", "),
                    mat_text(&e.mf.a, &ctx)
                );
            }
            s
        }
    };
    Ok(Report::ok(text))
}

fn knorrer_cmd(cli: &Cli, module: &str) -> Result<Report, Failure> {
    let (_, cat) = catalog(cli)?;
    let mf = lookup(&cat, module)?;
    let k = mf.knorrer()?.with_label(format!("F({module})"));
    let ok = k.is_valid();
    let text = match cli.format {
        Format::Json => matfac_to_json(&k) + "\n",
        _ => format!(
            "{} over {}\nA = {}\nB = {}\nvalidates: {}\n",
            k.label(),
            k.ctx.spec(),
            mat_text(&k.a, &k.ctx),
            mat_text(&k.b, &k.ctx),
            if ok { "PASS" } else { "FAIL" }
        ),
    };
    Ok(Report { text, ok })
}

fn locus_cmd(cli: &Cli, module: Option<&str>) -> Result<Report, Failure> {
    let (ctx, cat) = catalog(cli)?;
    let entries: Vec<_> = match module {
        Some(l) => {
            lookup(&cat, l)?;
            cat.entries.iter().filter(|e| e.label == l).collect()
        }
        None => cat.entries.iter().collect(),
    };
    let mut ok = true;
    let mut mods = Vec::new();
    let mut md = String::from("| module | prime | verdict | declared |\n|---|---|---|---|\n");
    for e in entries {
        let rep = nonfree_locus(&e.mf)?;
        let agrees = rep.locus == e.declared_locus;
        ok &= agrees;
        let mut verdicts = Vec::new();
        for (p, v) in &rep.verdicts {
            let declared = e.declared_locus.contains(p);
            let (cell, j) = match v {
                LocalVerdict::Nonfree(c) => (
                    "nonfree".to_string(),
                    json!({ "prime": p.name, "free": false, "presentation": mat_text(&c.matrix, &ctx) }),
                ),
                LocalVerdict::Free { rank, cert } => (
                    format!("free of rank {rank}"),
                    json!({
                        "prime": p.name,
                        "free": true,
                        "rank": rank,
                        "certificate": cert.as_ref().map(|c| serde_json::to_value(local_cert_to_wire(c, &ctx)).expect("serializable")),
                    }),
                ),
            };
            let _ = writeln!(
                md,
                "| {} | {} {} | {cell} | {} |",
                e.label,
                p.name,
                p.display(&ctx),
                if declared { "nonfree" } else { "free" }
            );
            verdicts.push(j);
        }
        mods.push(json!({
            "label": e.label,
            "locus": rep.locus.iter().map(|p| p.name.clone()).collect::<Vec<_>>(),
            "matches_declared": agrees,
            "verdicts": verdicts,
        }));
    }
    let text = match cli.format {
        Format::Json => pretty(&json!({ "ring": ctx.spec().to_string(), "modules": mods })),
        _ => md,
    };
    Ok(Report { text, ok })
}

fn check_ses(c: &SESCert, cutoff: i64) -> Result<(), String> {
    c.verify().map_err(|e| e.to_string())?;
    let v = c.graded_check(cutoff).map_err(|e| e.to_string())?;
    match v.iter().find(|v| !v.exact) {
        Some(v) => Err(format!("not exact in degree {}", v.degree)),
        None => Ok(()),
    }
}

fn seq_check(cli: &Cli, input: Option<&PathBuf>) -> Result<Report, Failure> {
    let (seqs, ctx) = match input {
        Some(path) => {
            let text = read(path)?;
            let value: Value = serde_json::from_str(&text).map_err(|e| Failure::Usage(e.to_string()))?;
            let items = match value {
                Value::Array(a) => a,
                v => vec![v],
            };
            let seqs = items.iter().map(|v| ses_from_json(&v.to_string())).collect::<Result<Vec<_>, _>>()?;
            let ctx = seqs.first().map(|c| c.mid.ctx.clone());
            (seqs, ctx)
        }
        None => {
            let ctx = parse_ring(cli.ring.as_deref(), &cli.form)?;
            (get_sequences(&ctx, cli.nmax)?, Some(ctx))
        }
    };
    let cutoff = cli.cutoff.or(ctx.as_ref().map(default_cutoff)).unwrap_or(20);
    let results: Vec<(String, Result<(), String>)> =
        seqs.iter().map(|c| (c.name.clone(), check_ses(c, cutoff))).collect();
    let ok = results.iter().all(|(_, r)| r.is_ok());
    let total = results.len();
    let text = match cli.format {
        Format::Json => pretty(&json!({
            "cutoff": cutoff,
            "sequences": results.iter().map(|(n, r)| match r {
                Ok(()) => json!({ "name": n, "pass": true }),
                Err(e) => json!({ "name": n, "pass": false, "detail": e }),
            }).collect::<Vec<_>>(),
            "pass": ok,
        })),
        _ => results
            .iter()
            .enumerate()
            .map(|(i, (n, r))| match r {
                Ok(()) => format!("sequence {}/{total} {n}: PASS\n", i + 1),
                Err(e) => format!("sequence {}/{total} {n}: FAIL ({e})\n", i + 1),
            })
            .collect(),
    };
    Ok(Report { text, ok })
}

fn k0_cmd(cli: &Cli, variant: VariantArg) -> Result<Report, Failure> {
    let ctx = parse_ring(cli.ring.as_deref(), &cli.form)?;
    let variant = match variant {
        VariantArg::Cm => Variant::Cm,
        VariantArg::Stable => Variant::Stable,
    };
    let r = present_k0(&ctx, variant, cli.nmax)?;
    let pres = &r.presentation;
    let text = match cli.format {
        Format::Json => pretty(&json!({
            "ring": ctx.spec().to_string(),
            "variant": variant,
            "n_max": r.n_max,
            "generators": pres.generators,
            "relations": pres.relations.iter().map(|row| row.iter().map(int).collect::<Vec<_>>()).collect::<Vec<_>>(),
            "sources": pres.sources,
            "classification": classification_json(&r.classification),
            "group": r.classification.to_string(),
        })),
        _ => format!("{}\n", r.classification),
    };
    Ok(Report::ok(text))
}

fn quiver_cmd(cli: &Cli) -> Result<Report, Failure> {
    let ctx = parse_ring(cli.ring.as_deref(), &cli.form)?;
    let q = ar_quiver(&ctx, cli.nmax)?;
    let text = match cli.format {
        Format::Dot => q.to_dot(),
        Format::Json => pretty(&q.to_adjacency_json()),
        Format::Md => {
            let mut s = format!("# {} ({})\n\n", ctx.spec(), q.shape);
            for (a, b) in &q.arrows {
                let _ = writeln!(s, "- {a} -> {b}");
            }
            for (a, b) in &q.dotted {
                let _ = writeln!(s, "- {a} ... {b}");
            }
            s
        }
    };
    Ok(Report::ok(text))
}

fn verify_paper(cli: &Cli) -> Result<Report, Failure> {
    let rings: Vec<Ctx> = match cli.ring {
        Some(_) => vec![parse_ring(cli.ring.as_deref(), &cli.form)?],
        None => {
            let form: Form = cli.form.parse()?;
            let mut v = Vec::new();
            for fam in [Family::A, Family::D] {
                for d in 1..=5 {
                    v.push(make_ring(fam, d, form)?);
                }
            }
            v
        }
    };
    let mut checks: Vec<Check> = Vec::new();
    for ctx in &rings {
        let cutoff = cli.cutoff.unwrap_or_else(|| default_cutoff(ctx));
        checks.extend(run_suite(ctx, cli.nmax, cutoff)?);
    }
    let ok = checks.iter().all(|c| c.pass);
    let passed = checks.iter().filter(|c| c.pass).count();
    let text = match cli.format {
        Format::Json => pretty(&json!({ "checks": checks, "passed": passed, "total": checks.len(), "pass": ok })),
        _ => {
            let mut s: String = checks.iter().map(|c| format!("{c}\n")).collect();
            let _ = writeln!(s, "{passed}/{} checks passed", checks.len());
            s
        }
    };
    Ok(Report { text, ok })
}

fn run(cli: &Cli) -> Result<Report, Failure> {
    if cli.format == Format::Dot && !matches!(cli.command, Command::Quiver) {
        return Err(Failure::Usage("--format dot is only available for quiver".into()));
    }
    match &cli.command {
        Command::Validate { module, input } => validate(cli, module.as_deref(), input.as_ref()),
        Command::Catalog { action } => catalog_cmd(cli, *action),
        Command::Knorrer { module } => knorrer_cmd(cli, module),
        Command::Locus { module } => locus_cmd(cli, module.as_deref()),
        Command::SeqCheck { input } => seq_check(cli, input.as_ref()),
        Command::K0 { variant } => k0_cmd(cli, *variant),
        Command::Quiver => quiver_cmd(cli),
        Command::VerifyPaper => verify_paper(cli),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            match &cli.output {
                Some(path) => {
                    if let Err(e) = fs::write(path, &report.text) {
                        eprintln!("error: cannot write {}: {e}", path.display());
                        return ExitCode::from(2);
                    }
                }
                None => print!("{}", report.text),
            }
            if report.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Verification(msg)) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(1)
        }
    }
}
