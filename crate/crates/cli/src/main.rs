use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use germlab::germfile::GermFile;
use germlab::{fixtures, report, reproduce};
use germlab_core::curve::{
    ak_normalize, congruence_test, curvature, equiaffine_curvature, frontal_invariants,
    CongruenceMode, InvariantKind,
};
use germlab_core::gfields::{ring_eg_jet, set_cache_dir, theta_g_jet};
use germlab_core::monge::monge_normal_form;
use germlab_core::tangent::{growth_probe, moduli, rigidity_report, tangent, EquivalenceKind, ModuliPair};
use germlab_core::{Error, GroupId};

#[derive(Parser)]
#[command(name = "germlab", version, about = "Exact jet calculus for map germs under group-structured equivalences")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
}

#[derive(Args)]
struct GermArg {
    /// Germ file (JSON with n, p, order, components)
    #[arg(long)]
    germ: PathBuf,
    /// Treat the germ as an exact polynomial regardless of the file flag
    #[arg(long, default_value_t = false)]
    exact_germ: bool,
}

impl GermArg {
    fn load(&self) -> Result<GermFile, Error> {
        let mut gf = GermFile::load(&self.germ)?;
        if self.exact_germ {
            gf.exact_germ = true;
        }
        Ok(gf)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Field-space dimensions of a group structure
    Gfields {
        #[arg(long)]
        group: String,
        #[arg(long = "jet-order")]
        jet_order: u32,
        /// Also compute the function-ring jet dimension
        #[arg(long, default_value_t = false)]
        ring: bool,
        /// Show the per-degree table
        #[arg(long = "per-degree", default_value_t = false)]
        per_degree: bool,
        /// Include the constant fields
        #[arg(long, default_value_t = false)]
        extended: bool,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Jets of the largest function ring acting on the field space
    Ring {
        #[arg(long)]
        group: String,
        #[arg(long = "jet-order")]
        jet_order: u32,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Tangent space, codimension and stabilization of a germ
    Tangent {
        #[command(flatten)]
        germ: GermArg,
        #[arg(long)]
        group: String,
        #[arg(long, default_value = "ag")]
        eq: String,
        #[arg(long = "jet-order")]
        jet_order: u32,
        #[arg(long, default_value_t = false)]
        extended: bool,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Relative moduli dimension between two equivalences
    Moduli {
        #[command(flatten)]
        germ: GermArg,
        /// ag-vs-rxg | ag-vs-ah | rxg-vs-rxh
        #[arg(long)]
        pair: String,
        #[arg(long)]
        group: String,
        #[arg(long)]
        subgroup: Option<String>,
        #[arg(long = "jet-order")]
        jet_order: u32,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Linearity check of a group structure and its tangent consequences
    Rigidity {
        #[arg(long)]
        group: String,
        #[arg(long = "jet-order")]
        jet_order: u32,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Codimension growth across comparison orders
    Growth {
        #[command(flatten)]
        germ: GermArg,
        #[arg(long)]
        group: String,
        #[arg(long, default_value = "ag")]
        eq: String,
        /// Largest comparison order
        #[arg(long = "k-max", default_value_t = 6)]
        k_max: u32,
        #[arg(long, default_value_t = true)]
        extended: bool,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Normal form of a curve (ak) or surface (monge) germ
    #[command(name = "normal-form")]
    NormalForm {
        #[command(flatten)]
        germ: GermArg,
        /// ak | monge
        #[arg(long)]
        kind: String,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Differential invariants of a curve germ
    Invariants {
        #[command(flatten)]
        germ: GermArg,
        /// curvature | frontal | equiaffine
        #[arg(long)]
        kind: String,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Congruence test between two curve germs
    Congruent {
        #[arg(long = "germ-a")]
        germ_a: PathBuf,
        #[arg(long = "germ-b")]
        germ_b: PathBuf,
        /// euclidean | equiaffine
        #[arg(long)]
        mode: String,
        #[arg(long = "jet-order", default_value_t = 5)]
        jet_order: u32,
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Run the reproduction suites
    Reproduce {
        /// dims | moduli | geometry
        #[arg(long)]
        suite: Option<String>,
        /// Run every suite
        #[arg(long, default_value_t = false)]
        all: bool,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// List the shipped fixture germs
    Fixtures {
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
}

fn main() -> ExitCode {
    // die quietly when the read end of a pipe goes away
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    if let Ok(dir) = std::env::var("GERMLAB_CACHE_DIR") {
        if !dir.is_empty() {
            set_cache_dir(Some(PathBuf::from(dir)));
        }
    }
    let cli = Cli::parse();
    match dispatch(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Internal(_) => ExitCode::from(2),
                _ => ExitCode::from(1),
            }
        }
    }
}

fn warn(msg: String) {
    eprintln!("warning: {msg}");
}

fn emit(format: Format, json: serde_json::Value, table: String) {
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&json).unwrap()),
        Format::Table => print!("{table}"),
    }
}

fn dispatch(cmd: Command) -> Result<(), Error> {
    match cmd {
        Command::Gfields {
            group,
            jet_order,
            ring,
            per_degree,
            extended,
            format,
        } => {
            let g = GroupId::parse(&group)?;
            let space = theta_g_jet(g, jet_order, extended)?;
            let ring_jet = if ring {
                Some(ring_eg_jet(g, jet_order)?)
            } else {
                None
            };
            emit(
                format,
                report::gfields_json(&space, ring_jet.as_ref()),
                report::gfields_table(&space, ring_jet.as_ref(), per_degree),
            );
        }
        Command::Ring {
            group,
            jet_order,
            format,
        } => {
            let g = GroupId::parse(&group)?;
            let r = ring_eg_jet(g, jet_order)?;
            emit(
                format,
                report::ring_json(&r),
                format!(
                    "ring jets of {} at k={}: dim {}\n{}\n",
                    g,
                    jet_order,
                    r.dim(),
                    r.basis_jets()
                        .iter()
                        .map(|b| format!("  {}", b.display('y')))
                        .collect::<Vec<_>>()
                        .join("\n")
                ),
            );
        }
        Command::Tangent {
            germ,
            group,
            eq,
            jet_order,
            extended,
            format,
        } => {
            let g = GroupId::parse(&group)?;
            let eq = EquivalenceKind::parse(&eq)?;
            let f = germ.load()?.germ_at_order(jet_order, &mut warn)?;
            let r = tangent(&f, g, eq, jet_order, extended)?;
            emit(format, report::tangent_json(&r), report::tangent_table(&r));
        }
        Command::Moduli {
            germ,
            pair,
            group,
            subgroup,
            jet_order,
            format,
        } => {
            let g = GroupId::parse(&group)?;
            let pair = match pair.as_str() {
                "ag-vs-rxg" => ModuliPair::AgVsRxg(g),
                "ag-vs-ah" => {
                    let h = GroupId::parse(
                        subgroup
                            .as_deref()
                            .ok_or_else(|| Error::InvalidGroup("--subgroup required".into()))?,
                    )?;
                    ModuliPair::AgVsAh(g, h)
                }
                "rxg-vs-rxh" => {
                    let h = GroupId::parse(
                        subgroup
                            .as_deref()
                            .ok_or_else(|| Error::InvalidGroup("--subgroup required".into()))?,
                    )?;
                    ModuliPair::RxgVsRxh(g, h)
                }
                other => {
                    return Err(Error::InvalidGroup(format!("unknown pair `{other}`")));
                }
            };
            let f = germ.load()?.germ_at_order(jet_order, &mut warn)?;
            let r = moduli(&f, pair, jet_order)?;
            emit(format, report::moduli_json(&r), report::moduli_table(&r));
        }
        Command::Rigidity {
            group,
            jet_order,
            format,
        } => {
            let g = GroupId::parse(&group)?;
            let germs: Vec<_> = fixtures::germs_for_target(g.ambient_dim(), jet_order)
                .into_iter()
                .map(|(_, f)| f)
                .collect();
            let r = rigidity_report(g, jet_order, &germs)?;
            let failed = r.linear_only && !r.all_hold;
            emit(format, report::rigidity_json(&r), report::rigidity_table(&r));
            if failed {
                return Err(Error::Internal(
                    "a rigidity consequence failed on a fixture".into(),
                ));
            }
        }
        Command::Growth {
            germ,
            group,
            eq,
            k_max,
            extended,
            format,
        } => {
            let g = GroupId::parse(&group)?;
            let eq = EquivalenceKind::parse(&eq)?;
            let f = germ.load()?.germ_at_order(k_max + 1, &mut warn)?;
            let r = growth_probe(&f, g, eq, extended, k_max)?;
            emit(format, report::growth_json(&r), report::growth_table(&r));
        }
        Command::NormalForm { germ, kind, format } => {
            let gf = germ.load()?;
            match kind.as_str() {
                "ak" => {
                    let f = gf.to_germ()?;
                    let nf = ak_normalize(&f)?;
                    emit(
                        format,
                        report::ak_json(&nf),
                        format!(
                            "normal form: k={} sign={} rotated={} residual={:.2e}\n",
                            nf.k, nf.sign, nf.rotated, nf.residual
                        ),
                    );
                }
                "monge" => {
                    let f = gf.to_germ()?;
                    let m = monge_normal_form(&f)?;
                    emit(
                        format,
                        report::monge_json(&m),
                        format!(
                            "graph normal form: lambda=({}, {}) cubic={:?} residual={:.2e}\n",
                            m.lambda1, m.lambda2, m.cubic, m.residual
                        ),
                    );
                }
                other => return Err(Error::InvalidGroup(format!("unknown kind `{other}`"))),
            }
        }
        Command::Invariants {
            germ,
            kind,
            tol,
            format,
        } => {
            let f = germ.load()?.to_germ()?;
            match kind.as_str() {
                "curvature" => {
                    let k = curvature(&f)?;
                    emit(
                        format,
                        serde_json::json!({
                            "kind": format!("{:?}", InvariantKind::RegularCurvature),
                            "kappa": report::numeric_jet_json(&k),
                        }),
                        format!("curvature jet: {:?}\n", k),
                    );
                }
                "frontal" => {
                    let (nf, inv) = frontal_invariants(&f, tol)?;
                    let mut v = report::invariants_json(&inv);
                    v["normal_form"] = report::ak_json(&nf);
                    emit(
                        format,
                        v,
                        format!(
                            "frontal invariants at k={}: frenet residual {:.2e}, closed-form residual {:.2e}\n",
                            nf.k, inv.frenet_residual, inv.closed_form_residual
                        ),
                    );
                }
                "equiaffine" => {
                    let k = equiaffine_curvature(&f)?;
                    emit(
                        format,
                        serde_json::json!({
                            "kind": format!("{:?}", InvariantKind::Equiaffine),
                            "kappa_e": report::numeric_jet_json(&k),
                        }),
                        format!("equi-affine curvature jet (in the affine arclength): {:?}\n", k),
                    );
                }
                other => return Err(Error::InvalidGroup(format!("unknown kind `{other}`"))),
            }
        }
        Command::Congruent {
            germ_a,
            germ_b,
            mode,
            jet_order,
            tol,
            format,
        } => {
            let fa = GermFile::load(&germ_a)?.to_germ()?;
            let fb = GermFile::load(&germ_b)?.to_germ()?;
            let mode = match mode.as_str() {
                "euclidean" => CongruenceMode::Euclidean,
                "equiaffine" => CongruenceMode::Equiaffine,
                other => return Err(Error::InvalidGroup(format!("unknown mode `{other}`"))),
            };
            let r = congruence_test(&fa, &fb, mode, jet_order, tol)?;
            let table = match &r {
                germlab_core::curve::CongruenceResult::Match {
                    orientation,
                    residual,
                    ..
                } => format!(
                    "congruent: yes (orientation {}), residual {:.2e}\n",
                    if *orientation > 0 { "+" } else { "-" },
                    residual
                ),
                germlab_core::curve::CongruenceResult::NoMatch {
                    obstruction_degree,
                    best_residual,
                } => format!(
                    "congruent: no (first obstruction at degree {}, best residual {:.2e})\n",
                    obstruction_degree, best_residual
                ),
            };
            emit(format, report::congruence_json(&r), table);
        }
        Command::Reproduce { suite, all, format } => {
            let results = match (all, suite) {
                (false, Some(s)) => {
                    let suite = reproduce::Suite::parse(&s)
                        .ok_or_else(|| Error::InvalidGroup(format!("unknown suite `{s}`")))?;
                    reproduce::run_suite(suite)
                }
                _ => reproduce::run_all(),
            };
            match format {
                Format::Table => {
                    for r in &results {
                        println!("{}", r.line());
                    }
                    let passed = results.iter().filter(|r| r.pass).count();
                    println!("{passed}/{} criteria passed", results.len());
                }
                Format::Json => {
                    let rows: Vec<_> = results.iter().map(|r| r.json()).collect();
                    println!(
                        "{}",
                        serde_json::to_string_pretty(&serde_json::json!({ "criteria": rows }))
                            .unwrap()
                    );
                }
            }
        }
        Command::Fixtures { format } => {
            let fs = fixtures::all();
            match format {
                Format::Table => {
                    for f in fs {
                        println!(
                            "{:<18} ({} -> {}, order {}): {}",
                            f.name,
                            f.file.n,
                            f.file.p,
                            f.file.order,
                            f.file.note.as_deref().unwrap_or("")
                        );
                    }
                }
                Format::Json => {
                    let rows: Vec<_> = fs
                        .iter()
                        .map(|f| serde_json::to_value(&f.file).unwrap())
                        .collect();
                    println!("{}", serde_json::to_string_pretty(&rows).unwrap());
                }
            }
        }
    }
    Ok(())
}
