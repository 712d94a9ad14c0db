//! The batch front end: schema validation, instance generation, solvers,
//! certificate re-verification, and the audit-report pipeline.
//!
//! Exit codes: 0 all checks pass, 1 a MUST-PASS check failed, 2 input error.

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::error::{Error, Result};
use crate::ratio::{rat_from_str, rat_to_string};
use crate::schema::{
    self, read_json, write_json, ActionInput, ActionSchema, GroupSchema, RepSchema,
    SubgroupFileSchema, VerdictStatus,
};

#[derive(Parser)]
#[command(
    name = "amenact",
    version,
    about = "Workbench for partial group actions, germ groupoids, partial representations, and amenability certificates"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct CommonFlags {
    /// numeric tolerance for residual checks
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
    /// require exact (rational) verification where available
    #[arg(long, default_value_t = false)]
    exact: bool,
    /// output path
    #[arg(short, long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a group, action, or representation file
    Check {
        file: PathBuf,
        #[command(flatten)]
        common: CommonFlags,
    },
    /// Enveloping action of a partial action
    Globalize {
        file: PathBuf,
        #[command(flatten)]
        common: CommonFlags,
    },
    /// Germ groupoid of a partial action
    Groupoid {
        file: PathBuf,
        /// emit the exact amenability certificate
        #[arg(long)]
        certify: bool,
        #[command(flatten)]
        common: CommonFlags,
    },
    /// Amenability-equivalence audit battery on one action
    Amen {
        file: PathBuf,
        #[arg(long, default_value = "1/4")]
        eps: String,
        /// Følner comparison mode: literal | corrected | both
        #[arg(long, default_value = "both")]
        mode: String,
        #[command(flatten)]
        common: CommonFlags,
    },
    /// Koopman partial representation of an action
    Koopman {
        file: PathBuf,
        #[command(flatten)]
        common: CommonFlags,
    },
    /// Representation-level operations
    Rep {
        #[command(subcommand)]
        op: RepOp,
    },
    /// Induced partial representation from a subgroup
    Induce {
        rep: PathBuf,
        /// subgroup file {group, elements}
        #[arg(long)]
        sub: PathBuf,
        /// Ind (weak) or ind (strong)
        #[arg(long, default_value = "ind")]
        flavor: String,
        #[command(flatten)]
        common: CommonFlags,
    },
    /// Weak containment a ⪯ b with a PSD witness per probe
    WeaklyContained {
        a: PathBuf,
        b: PathBuf,
        /// comma-separated element list; defaults to all of G
        #[arg(long)]
        k: Option<String>,
        #[arg(long, default_value_t = 1e-3)]
        eps: f64,
        #[arg(long, default_value = "plain")]
        flavor: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        common: CommonFlags,
    },
    /// Independently re-verify a certificate against an instance
    Certify {
        cert: PathBuf,
        instance: PathBuf,
        #[command(flatten)]
        common: CommonFlags,
    },
    /// Generate an instance
    Gen {
        /// rotation-arc | interval-gluing | free-ball | random-partial | global
        kind: String,
        #[arg(long, default_value_t = 4)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        arc_start: usize,
        #[arg(long, default_value_t = 2)]
        arc_len: usize,
        #[arg(long, default_value_t = 3)]
        m: usize,
        #[arg(long, default_value_t = 1)]
        cut: usize,
        #[arg(long, default_value_t = 2)]
        rank: usize,
        #[arg(long, default_value_t = 2)]
        radius: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        common: CommonFlags,
    },
    /// Run the audit batteries over the builtin suite plus a bundle dir
    RunSuite {
        /// directory of instance JSON files (optional)
        dir: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "1/4")]
        eps: String,
        #[command(flatten)]
        common: CommonFlags,
    },
}

#[derive(Subcommand)]
enum RepOp {
    /// Verify the partial-representation axioms
    Check {
        file: PathBuf,
        #[command(flatten)]
        common: CommonFlags,
    },
    /// Bekka mean densities (identity and averaged)
    Mean {
        file: PathBuf,
        #[command(flatten)]
        common: CommonFlags,
    },
    /// Representation-level Reiter solve
    Reiter {
        file: PathBuf,
        #[arg(long, default_value_t = 2)]
        p: u8,
        /// positive | plain | strong
        #[arg(long, default_value = "positive")]
        flavor: String,
        /// comma-separated element list; defaults to all of G
        #[arg(long)]
        k: Option<String>,
        #[command(flatten)]
        common: CommonFlags,
    },
    /// Enveloping (global) representation
    Globalize {
        file: PathBuf,
        #[command(flatten)]
        common: CommonFlags,
    },
}

pub fn run() -> i32 {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

fn parse_k(arg: &Option<String>, order: usize) -> Result<Vec<usize>> {
    match arg {
        None => Ok((0..order).collect()),
        Some(s) => s
            .split(',')
            .map(|tok| {
                tok.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Invalid(format!("bad element {tok:?} in K")))
            })
            .collect(),
    }
}

fn load_action_file(path: &Path) -> Result<ActionInput> {
    let schema: ActionSchema = read_json(path)?;
    schema::load_action(&schema)
}

fn emit<T: serde::Serialize>(value: &T, out: &Option<PathBuf>) -> Result<()> {
    match out {
        Some(path) => write_json(path, value),
        None => {
            println!("{}", serde_json::to_string_pretty(value)?);
            Ok(())
        }
    }
}

fn dispatch(cli: Cli) -> Result<i32> {
    match cli.command {
        Command::Check { file, common } => {
            let value: serde_json::Value = read_json(&file)?;
            if value.get("matrices").is_some() {
                let schema: RepSchema = serde_json::from_value(value)?;
                let mut rep = schema::load_rep(&schema)?;
                rep.tol = common.tol;
                let report = crate::prep::verify_partial_rep(&rep);
                println!(
                    "representation: {} (max residual {:.3e})",
                    if report.is_valid() { "VALID" } else { "INVALID" },
                    report.max_residual
                );
                for v in &report.violations {
                    println!("  {} at (t,s)=({},{}), residual {:.3e}", v.axiom, v.pair.0, v.pair.1, v.residual);
                }
                Ok(if report.is_valid() { 0 } else { 1 })
            } else if value.get("maps").is_some() {
                let schema: ActionSchema = serde_json::from_value(value)?;
                match schema::load_action(&schema)? {
                    ActionInput::Finite(a) => {
                        let report = crate::action::verify_partial_action(&a);
                        println!(
                            "action: {} ({} violation(s))",
                            if report.is_valid() { "VALID" } else { "INVALID" },
                            report.violations.len()
                        );
                        for v in report.violations.iter().take(10) {
                            println!("  {} witness {:?}: {}", v.axiom, v.witness, v.detail);
                        }
                        Ok(if report.is_valid() { 0 } else { 1 })
                    }
                    ActionInput::Free(f) => {
                        let closure = f.closure();
                        println!(
                            "free action on {} points: generators injective, closure size {}",
                            f.set_size,
                            closure.elements.len()
                        );
                        Ok(0)
                    }
                }
            } else {
                let schema: GroupSchema = serde_json::from_value(value)?;
                match schema::load_group(&schema)? {
                    schema::GroupInput::Finite(g) => {
                        println!("group of order {}: VALID", g.order);
                        Ok(0)
                    }
                    schema::GroupInput::Free(ctx) => {
                        println!("free context of rank {}", ctx.rank);
                        Ok(0)
                    }
                }
            }
        }
        Command::Globalize { file, common } => {
            let ActionInput::Finite(a) = load_action_file(&file)? else {
                return Err(Error::FreeContextRejected("globalize"));
            };
            let env = crate::envelope::globalize(&a)?;
            let dump = schema::EnvelopeSchema {
                classes: env.classes.clone(),
                beta: env.beta.clone(),
                iota: env.iota.clone(),
            };
            emit(&dump, &common.out)?;
            eprintln!("classes: {}", env.class_count());
            Ok(0)
        }
        Command::Groupoid { file, certify, common } => {
            let ActionInput::Finite(a) = load_action_file(&file)? else {
                return Err(Error::FreeContextRejected("germ groupoid"));
            };
            let gg = crate::groupoid::build_germ_groupoid(&a)?;
            if certify {
                let (cert, verification) = crate::groupoid::amenability_certificate(&gg.groupoid)?;
                let dump = schema::GroupoidCertSchema {
                    fibers: (0..gg.groupoid.unit_count)
                        .map(|u| gg.groupoid.range_fiber(u))
                        .collect(),
                    measures: cert.to_strings(),
                    defect: rat_to_string(&verification.defect),
                };
                emit(&dump, &common.out)?;
            } else {
                eprintln!(
                    "germ groupoid: {} arrows over {} units",
                    gg.groupoid.arrow_count(),
                    gg.groupoid.unit_count
                );
            }
            Ok(0)
        }
        Command::Amen { file, eps, mode, common } => {
            let input = load_action_file(&file)?;
            let eps = rat_from_str(&eps)?;
            if !["literal", "corrected", "both"].contains(&mode.as_str()) {
                return Err(Error::Invalid(format!("unknown mode {mode:?}")));
            }
            let verdicts = crate::suite::audit_instance("cli-instance", &input, &eps);
            let failed_must = verdicts
                .iter()
                .filter(|v| {
                    v.status == VerdictStatus::Fail && !crate::suite::is_expected_failure(&v.id)
                })
                .count();
            emit(&verdicts, &common.out)?;
            Ok(if failed_must == 0 { 0 } else { 1 })
        }
        Command::Koopman { file, common } => {
            let ActionInput::Finite(a) = load_action_file(&file)? else {
                return Err(Error::FreeContextRejected("Koopman matrices over all of G"));
            };
            let rep = crate::prep::koopman_build(&a)?;
            emit(&schema::dump_rep(&rep), &common.out)?;
            Ok(0)
        }
        Command::Rep { op } => rep_dispatch(op),
        Command::Induce { rep, sub, flavor, common } => {
            let rep_schema: RepSchema = read_json(&rep)?;
            let base = schema::load_rep(&rep_schema)?;
            let sub_schema: SubgroupFileSchema = read_json(&sub)?;
            let schema::GroupInput::Finite(g_group) = schema::load_group(&sub_schema.group)?
            else {
                return Err(Error::FreeContextRejected("induction"));
            };
            let subgroup = crate::group::subgroup_closure(&g_group, &sub_schema.elements)?;
            if subgroup.elements != {
                let mut e = sub_schema.elements.clone();
                e.sort_unstable();
                e.dedup();
                e
            } {
                return Err(Error::Invalid("element list is not closed; its closure differs".into()));
            }
            let flavor = match flavor.as_str() {
                "Ind" | "weak" => crate::induct::InduceFlavor::Ind,
                "ind" | "strong" => crate::induct::InduceFlavor::IndStrong,
                other => return Err(Error::Invalid(format!("unknown flavor {other:?}"))),
            };
            let induced = crate::induct::induce(g_group, &subgroup, &base, flavor)?;
            emit(&schema::dump_rep(&induced.rep), &common.out)?;
            eprintln!(
                "dim Ė = {}, dim Ė⁰ = {}",
                induced.space.dim_weak(),
                induced.space.dim_strong()
            );
            Ok(0)
        }
        Command::WeaklyContained { a, b, k, eps, flavor, seed, common } => {
            let pa = schema::load_rep(&read_json::<RepSchema>(&a)?)?;
            let pb = schema::load_rep(&read_json::<RepSchema>(&b)?)?;
            let k = parse_k(&k, pa.group.order)?;
            let flavor = match flavor.as_str() {
                "plain" => crate::induct::ContainFlavor::Plain,
                "strong" => crate::induct::ContainFlavor::Strong,
                other => return Err(Error::Invalid(format!("unknown flavor {other:?}"))),
            };
            let witnesses = crate::induct::weak_contains(&pa, &pb, &k, eps, flavor, seed)?;
            let rows: Vec<serde_json::Value> = witnesses
                .iter()
                .map(|w| {
                    serde_json::json!({
                        "max_error": w.max_error,
                        "converged": w.converged,
                        "errors": w.errors,
                        "strong_penalties": w.strong_penalties,
                    })
                })
                .collect();
            emit(&rows, &common.out)?;
            let worst = witnesses.iter().map(|w| w.max_error).fold(0.0f64, f64::max);
            eprintln!("worst probe error: {worst:.3e}");
            Ok(if worst <= eps { 0 } else { 1 })
        }
        Command::Certify { cert, instance, common } => {
            let cert: crate::suite::CertificateSchema = read_json(&cert)?;
            if common.exact {
                if let crate::suite::CertificateSchema::Reiter { f_exact: None, .. } = &cert {
                    return Err(Error::Invalid(
                        "--exact requires the certificate to carry f_exact rationals".into(),
                    ));
                }
            }
            let input = load_action_file(&instance)?;
            let verdict = crate::suite::certify(&cert, &input)?;
            emit(&verdict, &common.out)?;
            Ok(if verdict.status == VerdictStatus::Pass { 0 } else { 1 })
        }
        Command::Gen { kind, n, arc_start, arc_len, m, cut, rank, radius, seed, common } => {
            let kind = match kind.as_str() {
                "rotation-arc" => crate::generators::GenKind::RotationArc { n, arc_start, arc_len },
                "interval-gluing" => crate::generators::GenKind::IntervalGluing { m, cut },
                "free-ball" => crate::generators::GenKind::FreeBall { rank, radius },
                "random-partial" => crate::generators::GenKind::RandomPartial { m, seed },
                "global" => crate::generators::GenKind::Global { n },
                other => return Err(Error::Invalid(format!("unknown generator {other:?}"))),
            };
            match crate::generators::generate(&kind)? {
                ActionInput::Finite(a) => emit(&schema::dump_action(&a), &common.out)?,
                ActionInput::Free(f) => emit(&schema::dump_free_action(&f), &common.out)?,
            }
            Ok(0)
        }
        Command::RunSuite { dir, seed, eps, common } => {
            let eps = rat_from_str(&eps)?;
            // a bundle directory runs exactly its instances; without one the
            // builtin battery runs
            let report = match dir {
                None => crate::suite::run_suite(seed, &eps, &[]),
                Some(dir) => crate::suite::run_suite_on(seed, &eps, load_bundle_dir(&dir)?),
            };
            let out = common.out.clone().unwrap_or_else(|| PathBuf::from("audit.json"));
            crate::suite::write_report(&report, &out)?;
            println!(
                "suite: {} pass, {} fail ({} expected-gap), {} n/a → {}",
                report.summary.pass,
                report.summary.fail,
                report.summary.fail - report.summary.must_pass_failures.len(),
                report.summary.na,
                out.display()
            );
            for f in &report.summary.must_pass_failures {
                println!("MUST-PASS failure: {f}");
            }
            Ok(if crate::suite::suite_passes(&report) { 0 } else { 1 })
        }
    }
}

fn rep_dispatch(op: RepOp) -> Result<i32> {
    match op {
        RepOp::Check { file, common } => {
            let mut rep = schema::load_rep(&read_json::<RepSchema>(&file)?)?;
            rep.tol = common.tol;
            let report = crate::prep::verify_partial_rep(&rep);
            println!(
                "{} (max residual {:.3e})",
                if report.is_valid() { "VALID" } else { "INVALID" },
                report.max_residual
            );
            Ok(if report.is_valid() { 0 } else { 1 })
        }
        RepOp::Mean { file, common } => {
            let rep = schema::load_rep(&read_json::<RepSchema>(&file)?)?;
            let (id_mean, avg_mean) = crate::prep::bekka_mean_solve(&rep)?;
            let report = crate::prep::verify_bekka_mean(&rep, &id_mean.matrix)?;
            let payload = serde_json::json!({
                "identity_mean": {
                    "trace": id_mean.trace,
                    "trace_norm": id_mean.trace_norm,
                    "max_invariance_residual":
                        id_mean.invariance_residuals.iter().copied().fold(0.0f64, f64::max),
                    "verified": report.ok,
                },
                "averaged_mean": {
                    "trace": avg_mean.trace,
                    "max_invariance_residual":
                        avg_mean.invariance_residuals.iter().copied().fold(0.0f64, f64::max),
                },
            });
            emit(&payload, &common.out)?;
            Ok(if report.ok { 0 } else { 1 })
        }
        RepOp::Reiter { file, p, flavor, k, common } => {
            let rep = schema::load_rep(&read_json::<RepSchema>(&file)?)?;
            let k = parse_k(&k, rep.group.order)?;
            let flavor = match flavor.as_str() {
                "positive" => crate::prep::ReiterFlavor::Positive,
                "plain" => crate::prep::ReiterFlavor::Plain,
                "strong" => crate::prep::ReiterFlavor::Strong,
                other => return Err(Error::Invalid(format!("unknown flavor {other:?}"))),
            };
            let cert = crate::prep::rep_reiter_solve(&rep, &k, p, flavor)?;
            crate::prep::verify_rep_reiter(&rep, &k, &cert)?;
            let payload = serde_json::json!({
                "p": cert.p,
                "achieved": cert.achieved,
                "status": format!("{:?}", cert.status),
                "obstruction": cert.obstruction,
                "defects": cert.defects,
            });
            emit(&payload, &common.out)?;
            Ok(0)
        }
        RepOp::Globalize { file, common } => {
            let rep = schema::load_rep(&read_json::<RepSchema>(&file)?)?;
            let env = crate::repenv::rep_globalize(&rep)?;
            let payload = serde_json::json!({
                "dim_f": env.dim_f,
                "dim_z": env.dim_z,
                "res_residual": env.report.res_residual,
                "qi_residual": env.report.qi_residual,
                "rep_law_residual": env.report.rep_law_residual,
                "iii_scoped_residual": env.report.iii_scoped_residual,
                "iii_global_residual": env.report.iii_global_residual,
            });
            emit(&payload, &common.out)?;
            Ok(0)
        }
    }
}

fn load_bundle_dir(dir: &Path) -> Result<Vec<(String, ActionInput)>> {
    let mut out = Vec::new();
    let mut entries: Vec<PathBuf> = std::fs::read_dir(dir)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().map_or(false, |e| e == "json"))
        .collect();
    entries.sort();
    for path in entries {
        let id = path
            .file_stem()
            .and_then(|s| s.to_str())
            .unwrap_or("instance")
            .to_string();
        let input = load_action_file(&path)
            .map_err(|e| Error::Invalid(format!("{}: {e}", path.display())))?;
        out.push((format!("bundle-{id}"), input));
    }
    Ok(out)
}
