use std::collections::BTreeMap;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use anyhow::{anyhow, bail, Context as _, Result};
use clap::{Args, Parser, Subcommand};
use groupcode::code::{CoordBijection, LinearCode};
use groupcode::constructions::{rep_code, rep_sum_code, GroupSpec, Prescribed};
use groupcode::ffield::Field;
use groupcode::galg::Side;
use groupcode::io::{format_code, format_group, format_phi, parse_code, parse_group, parse_phi, PhiSpec};
use groupcode::perm::{regular_representation, Perm, PermGroup};
use groupcode::theorems::{self, replay, CertResult, CertifyError, Witness};

#[derive(Parser)]
#[command(name = "groupcode", version, about = "Build group codes and certify their structure")]
struct Cli {
    /// Append one timing line per run to this file.
    #[arg(long, global = true, value_name = "FILE")]
    log: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct Out {
    /// Write to this file instead of stdout.
    #[arg(short, long, value_name = "FILE")]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct CodeGroup {
    /// Code file.
    code: PathBuf,
    /// Group file, or a builder spec such as `dihedral:3` (taken in its
    /// regular representation).
    group: String,
}

#[derive(Args)]
struct PhiArgs {
    /// Coordinate bijection file, or `regular`.
    #[arg(long, default_value = "regular")]
    phi: String,
    /// Base coordinate of the regular bijection, 1-based.
    #[arg(long, default_value_t = 1)]
    i0: usize,
}

#[derive(Subcommand)]
enum Cmd {
    /// Write a group file for a builder spec.
    BuildGroup {
        spec: String,
        #[command(flatten)]
        out: Out,
    },
    /// Write a code file: `rep:t`, `rep-sum:s,t` or `full:n`.
    BuildCode {
        spec: String,
        #[arg(long, default_value = "2")]
        field: String,
        #[command(flatten)]
        out: Out,
    },
    /// Enumerate PAut(C) for n ≤ 8.
    Paut {
        code: PathBuf,
        #[command(flatten)]
        out: Out,
    },
    /// Certify that C is a left G-code.
    CertifyLeft {
        #[command(flatten)]
        input: CodeGroup,
        #[command(flatten)]
        out: Out,
    },
    /// Certify that C is a (two-sided) G-code.
    CertifyGroup {
        #[command(flatten)]
        input: CodeGroup,
        #[command(flatten)]
        out: Out,
    },
    /// Certify that C is an abelian group code.
    CertifyAbelian {
        #[command(flatten)]
        input: CodeGroup,
        /// Generators of A (repeat the flag or separate with `;`).
        #[arg(long = "A", alias = "a", value_name = "GENS")]
        a: Vec<String>,
        #[arg(long = "B", alias = "b", value_name = "GENS")]
        b: Vec<String>,
        /// Use the trivial action of G' on the ideal instead of A and B.
        #[arg(long, conflicts_with_all = ["a", "b"])]
        via_trivial_action: bool,
        #[command(flatten)]
        phi: PhiArgs,
        #[arg(long, default_value = "left")]
        side: Side,
        #[command(flatten)]
        out: Out,
    },
    /// Certify that C is a cyclic group code. Without A and B a coprime
    /// cyclic decomposition of G is searched for.
    CertifyCyclic {
        #[command(flatten)]
        input: CodeGroup,
        #[arg(long = "A", alias = "a", value_name = "GENS")]
        a: Vec<String>,
        #[arg(long = "B", alias = "b", value_name = "GENS")]
        b: Vec<String>,
        /// Use a Hall co-cyclic derived subgroup instead of A and B.
        #[arg(long, conflicts_with_all = ["a", "b"])]
        via_hall: bool,
        #[command(flatten)]
        phi: PhiArgs,
        #[arg(long, default_value = "left")]
        side: Side,
        #[command(flatten)]
        out: Out,
    },
    /// Certify that every weight of C is divisible by |G'|.
    CheckDivisibility {
        #[command(flatten)]
        input: CodeGroup,
        #[command(flatten)]
        phi: PhiArgs,
        #[arg(long, default_value = "left")]
        side: Side,
        #[command(flatten)]
        out: Out,
    },
    /// Embed C into a direct sum of repetition codes.
    EmbedRepsum {
        #[command(flatten)]
        input: CodeGroup,
        #[command(flatten)]
        phi: PhiArgs,
        #[arg(long, default_value = "left")]
        side: Side,
        #[command(flatten)]
        out: Out,
    },
    /// Realize a sum of repetition codes as the code of F_q[G]·(G')_Σ.
    #[command(alias = "prop1")]
    RepsumFromDerived {
        spec: String,
        #[arg(long, default_value = "2")]
        field: String,
        /// Also write the code file here.
        #[arg(long, value_name = "FILE")]
        code_out: Option<PathBuf>,
        /// Also write the coordinate bijection here.
        #[arg(long, value_name = "FILE")]
        phi_out: Option<PathBuf>,
        #[command(flatten)]
        out: Out,
    },
    /// Re-evaluate every claim of a witness.
    Replay { witness: PathBuf },
}

impl Cmd {
    fn name(&self) -> &'static str {
        match self {
            Cmd::BuildGroup { .. } => "build-group",
            Cmd::BuildCode { .. } => "build-code",
            Cmd::Paut { .. } => "paut",
            Cmd::CertifyLeft { .. } => "certify-left",
            Cmd::CertifyGroup { .. } => "certify-group",
            Cmd::CertifyAbelian { .. } => "certify-abelian",
            Cmd::CertifyCyclic { .. } => "certify-cyclic",
            Cmd::CheckDivisibility { .. } => "check-divisibility",
            Cmd::EmbedRepsum { .. } => "embed-repsum",
            Cmd::RepsumFromDerived { .. } => "repsum-from-derived",
            Cmd::Replay { .. } => "replay",
        }
    }
}

/// Exit status of a run that got past argument parsing.
enum Status {
    Ok,
    Failed,
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn write_out(out: &Out, text: &str) -> Result<()> {
    match &out.output {
        Some(p) => fs::write(p, text).with_context(|| format!("cannot write {}", p.display())),
        None => {
            std::io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn load_code(path: &Path) -> Result<LinearCode> {
    parse_code(&read(path)?).with_context(|| format!("in {}", path.display()))
}

/// A file path if one exists, otherwise a builder spec.
fn load_group(arg: &str) -> Result<PermGroup> {
    let path = Path::new(arg);
    if path.is_file() {
        return parse_group(&read(path)?).with_context(|| format!("in {arg}"));
    }
    let spec: GroupSpec = arg.parse().with_context(|| format!("'{arg}' is neither a file nor a group spec"))?;
    Ok(regular_representation(&spec.table()?)?.group)
}

fn load_phi(args: &PhiArgs, g: PermGroup) -> Result<CoordBijection> {
    let g = Arc::new(g);
    let spec = if args.phi == "regular" { PhiSpec::Regular } else { parse_phi(&read(Path::new(&args.phi))?)? };
    match spec {
        PhiSpec::Regular => {
            if args.i0 == 0 {
                bail!("--i0 is 1-based");
            }
            Ok(CoordBijection::regular(g, args.i0 - 1)?)
        }
        PhiSpec::Explicit(map) => Ok(CoordBijection::new(g, map)?),
    }
}

fn parse_gens(values: &[String], degree: usize) -> Result<Vec<Perm>> {
    values
        .iter()
        .flat_map(|v| v.split(';'))
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| Perm::parse(s, degree).with_context(|| format!("bad generator '{s}'")))
        .collect()
}

fn subgroup_pair(g: &PermGroup, a: &[String], b: &[String]) -> Result<(PermGroup, PermGroup)> {
    let a = PermGroup::closure(parse_gens(a, g.degree())?, g.degree())?;
    let b = PermGroup::closure(parse_gens(b, g.degree())?, g.degree())?;
    Ok((a, b))
}

fn inputs(input: &CodeGroup) -> BTreeMap<String, String> {
    BTreeMap::from([("code".to_string(), input.code.display().to_string()), ("group".to_string(), input.group.clone())])
}

/// Prints a witness, or the report of a failed certification.
fn emit(result: CertResult<Witness>, inputs: BTreeMap<String, String>, out: &Out) -> Result<Status> {
    match result {
        Ok(mut w) => {
            w.inputs = inputs;
            write_out(out, &w.to_json())?;
            Ok(Status::Ok)
        }
        Err(CertifyError::Lib(e)) => Err(e.into()),
        Err(e) => {
            eprintln!("{e}");
            if let Some(report) = e.report() {
                let mut report = report.clone();
                report.inputs = inputs;
                write_out(out, &report.to_json())?;
            }
            Ok(Status::Failed)
        }
    }
}

fn run(cmd: Cmd) -> Result<Status> {
    match cmd {
        Cmd::BuildGroup { spec, out } => {
            let spec: GroupSpec = spec.parse()?;
            let mut text = String::new();
            if let GroupSpec::Prescribed { s, t } = spec {
                match groupcode::constructions::prescribed_commutator_group(s, t)? {
                    Prescribed::Built { case, description, .. } => {
                        text.push_str(&format!("# {case}: {description}\n"));
                    }
                    Prescribed::Unsupported { reason } => bail!("no group with |G'| = {t} and index {s}: {reason}"),
                }
            }
            let g = regular_representation(&spec.table()?)?.group;
            text.push_str(&format_group(&g));
            write_out(&out, &text)?;
            Ok(Status::Ok)
        }
        Cmd::BuildCode { spec, field, out } => {
            let field = Field::parse(&field)?;
            let (kind, arg) = spec.split_once(':').ok_or_else(|| anyhow!("expected rep:t, rep-sum:s,t or full:n"))?;
            let num = |x: &str| x.trim().parse::<usize>().with_context(|| format!("bad number '{x}'"));
            let code = match kind {
                "rep" => rep_code(num(arg)?, field)?,
                "rep-sum" => {
                    let (s, t) = arg.split_once(',').ok_or_else(|| anyhow!("expected rep-sum:s,t"))?;
                    rep_sum_code(num(s)?, num(t)?, field)?
                }
                "full" => LinearCode::full(field, num(arg)?),
                other => bail!("unknown code family '{other}'"),
            };
            write_out(&out, &format_code(&code))?;
            Ok(Status::Ok)
        }
        Cmd::Paut { code, out } => {
            let c = load_code(&code)?;
            let inputs = BTreeMap::from([("code".to_string(), code.display().to_string())]);
            emit(theorems::certify_paut(&c), inputs, &out)
        }
        Cmd::CertifyLeft { input, out } => {
            let (c, g) = (load_code(&input.code)?, load_group(&input.group)?);
            emit(theorems::certify_left_group_code(&c, &g), inputs(&input), &out)
        }
        Cmd::CertifyGroup { input, out } => {
            let (c, g) = (load_code(&input.code)?, load_group(&input.group)?);
            emit(theorems::certify_group_code(&c, &g), inputs(&input), &out)
        }
        Cmd::CertifyAbelian { input, a, b, via_trivial_action, phi, side, out } => {
            let (c, g) = (load_code(&input.code)?, load_group(&input.group)?);
            let mut inp = inputs(&input);
            if via_trivial_action {
                inp.insert("phi".into(), phi.phi.clone());
                let phi = load_phi(&phi, g)?;
                return emit(theorems::trivial_action_to_abelian_witness(&c, &phi, side), inp, &out);
            }
            if a.is_empty() || b.is_empty() {
                bail!("give both --A and --B, or --via-trivial-action");
            }
            let (ga, gb) = subgroup_pair(&g, &a, &b)?;
            inp.insert("A".into(), a.join(";"));
            inp.insert("B".into(), b.join(";"));
            emit(theorems::abelianize_code(&c, &g, &ga, &gb, base(&phi)?), inp, &out)
        }
        Cmd::CertifyCyclic { input, a, b, via_hall, phi, side, out } => {
            let (c, g) = (load_code(&input.code)?, load_group(&input.group)?);
            let mut inp = inputs(&input);
            if via_hall {
                inp.insert("phi".into(), phi.phi.clone());
                let phi = load_phi(&phi, g)?;
                return emit(theorems::hall_cocyclic_to_cyclic(&c, &phi, side), inp, &out);
            }
            let (ga, gb) = match (a.is_empty(), b.is_empty()) {
                (false, false) => {
                    inp.insert("A".into(), a.join(";"));
                    inp.insert("B".into(), b.join(";"));
                    subgroup_pair(&g, &a, &b)?
                }
                (true, true) => match g.find_coprime_cyclic_decomposition() {
                    Some(pair) => pair,
                    None => {
                        eprintln!("verification failed: G has no coprime cyclic decomposition");
                        return Ok(Status::Failed);
                    }
                },
                _ => bail!("give both --A and --B, or neither"),
            };
            emit(theorems::cyclicize_code(&c, &g, &ga, &gb, base(&phi)?), inp, &out)
        }
        Cmd::CheckDivisibility { input, phi, side, out } => {
            let (c, g) = (load_code(&input.code)?, load_group(&input.group)?);
            let mut inp = inputs(&input);
            inp.insert("phi".into(), phi.phi.clone());
            let phi = load_phi(&phi, g)?;
            emit(theorems::certify_divisibility(&c, &phi, side), inp, &out)
        }
        Cmd::EmbedRepsum { input, phi, side, out } => {
            let (c, g) = (load_code(&input.code)?, load_group(&input.group)?);
            let mut inp = inputs(&input);
            inp.insert("phi".into(), phi.phi.clone());
            let phi = load_phi(&phi, g)?;
            emit(theorems::rep_sum_embedding(&c, &phi, side).map(|e| e.witness), inp, &out)
        }
        Cmd::RepsumFromDerived { spec, field, code_out, phi_out, out } => {
            let table = spec.parse::<GroupSpec>()?.table()?;
            let inp = BTreeMap::from([("field".to_string(), field.clone()), ("group".to_string(), spec)]);
            let field = Field::parse(&field)?;
            let cert = match theorems::repsum_from_derived(&table, field) {
                Ok(cert) => cert,
                Err(e) => return emit(Err(e), inp, &out),
            };
            if let Some(p) = code_out {
                fs::write(&p, format_code(&cert.code)).with_context(|| format!("cannot write {}", p.display()))?;
            }
            if let Some(p) = phi_out {
                fs::write(&p, format_phi(cert.phi.phi())).with_context(|| format!("cannot write {}", p.display()))?;
            }
            emit(Ok(cert.witness), inp, &out)
        }
        Cmd::Replay { witness } => {
            let w = Witness::from_json(&read(&witness)?)?;
            let report = replay(&w);
            let checks: Vec<_> = report
                .checks
                .iter()
                .map(|c| {
                    serde_json::json!({
                        "name": c.name,
                        "recorded": c.recorded,
                        "replayed": match &c.replayed {
                            Ok(v) => serde_json::json!(v),
                            Err(e) => serde_json::json!({ "error": e }),
                        },
                    })
                })
                .collect();
            let summary = serde_json::json!({
                "agrees": report.agrees(),
                "all_hold": report.all_hold(),
                "checks": checks,
                "kind": w.kind,
            });
            println!("{}", serde_json::to_string_pretty(&summary)?);
            Ok(if report.agrees() && report.all_hold() { Status::Ok } else { Status::Failed })
        }
    }
}

fn base(phi: &PhiArgs) -> Result<usize> {
    phi.i0.checked_sub(1).ok_or_else(|| anyhow!("--i0 is 1-based"))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let name = cli.cmd.name();
    let start = Instant::now();
    let (code, status) = match run(cli.cmd) {
        Ok(Status::Ok) => (0, "ok"),
        Ok(Status::Failed) => (2, "failed"),
        Err(e) => {
            eprintln!("error: {e:#}");
            (1, "error")
        }
    };
    if let Some(log) = cli.log {
        let line = format!("{name} status={status} elapsed_ms={}\n", start.elapsed().as_millis());
        let appended =
            fs::OpenOptions::new().create(true).append(true).open(&log).and_then(|mut f| f.write_all(line.as_bytes()));
        if let Err(e) = appended {
            eprintln!("warning: cannot write log {}: {e}", log.display());
        }
    }
    ExitCode::from(code)
}
