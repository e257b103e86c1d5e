use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use endotriv::analysis::{format_invariants, k_g_circle, reproduce_3m10, theorem_a_report, ReportOptions};
use endotriv::families::{self, ClassicalFamily, PointAction};
use endotriv::grouptheory::sylow_2;
use endotriv::permgroup::{format_grp, read_grp, PermGroup};
use endotriv::modrep::INDUCTION_CAP;

#[derive(Parser)]
#[command(name = "endotriv", version, about = "Endo-trivial modules for groups with semi-dihedral Sylow 2-subgroups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a group from a named family and write it as a .grp file.
    Construct {
        #[command(subcommand)]
        family: Family,
        /// Output path; stdout when omitted.
        #[arg(short, long, global = true)]
        output: Option<PathBuf>,
    },
    /// Full report: Sylow type, X(G), K_G°, K(G) and the structure of T(G).
    Analyze {
        file: PathBuf,
        /// Work over GF(2^e) for the Green route.
        #[arg(long, default_value_t = 8)]
        field_exp: u32,
        #[arg(long)]
        skip_green: bool,
        /// Largest |G : N_G(P)| for the Green route.
        #[arg(long, default_value_t = INDUCTION_CAP)]
        green_cap: usize,
        /// Also write the JSON report here.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Compute K_G° and (N_G(P)/K_G°)^ab only.
    Kgc { file: PathBuf },
    /// Run the 3.M10 computation and compare against the expected values.
    #[command(name = "reproduce-3m10")]
    Reproduce3m10 {
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum Family {
    /// Semi-dihedral group of order 2^m.
    Sd { m: u32 },
    /// Dihedral group of order 2^m.
    Dihedral { m: u32 },
    /// Generalized quaternion group of order 2^m.
    Quaternion { m: u32 },
    M11,
    /// The 36-point triple cover 3.M10.
    #[command(name = "3m10")]
    ThreeM10,
    /// PGL*_2(q^2).
    PglStar { q: u32 },
    /// PGL_2(q^2).
    Pgl2 { q: u32 },
    /// PSL_3(q) (eps = 1) or PSU_3(q) (eps = -1) on projective points.
    Psl3 {
        #[arg(allow_hyphen_values = true)]
        eps: i32,
        q: u32,
    },
    /// SL_3(q) or SU_3(q), faithful action.
    Sl3 {
        #[arg(allow_hyphen_values = true)]
        eps: i32,
        q: u32,
    },
    /// GL, SL, GU, SU, SLpm or SUpm of dimension n, faithful action.
    Classical { family: ClassicalFamily, n: usize, q: u32 },
}

fn build(f: &Family) -> endotriv::Result<PermGroup> {
    Ok(match *f {
        Family::Sd { m } => families::semidihedral_group(m)?,
        Family::Dihedral { m } => families::dihedral_group(m)?,
        Family::Quaternion { m } => families::quaternion_group(m)?,
        Family::M11 => families::m11(),
        Family::ThreeM10 => families::fixture_3m10(),
        Family::PglStar { q } => families::pgl_star(q)?,
        Family::Pgl2 { q } => families::pgl2_of_square(q)?,
        Family::Psl3 { eps, q } => families::psl3_eps(eps, q)?,
        Family::Sl3 { eps, q } => families::sl3_eps(eps, q)?.1.group,
        Family::Classical { family, n, q } => {
            families::classical_group(family, n, q)?.to_perm(PointAction::Faithful)?.group
        }
    })
}

fn run(cli: Cli) -> endotriv::Result<bool> {
    match cli.command {
        Command::Construct { family, output } => {
            let g = build(&family)?;
            let text = format_grp(&g);
            match output {
                Some(p) => std::fs::write(&p, text)?,
                None => print!("{text}"),
            }
            eprintln!("order {} on {} points", g.order(), g.degree());
            Ok(true)
        }
        Command::Analyze { file, field_exp, skip_green, green_cap, json } => {
            let g = read_grp(&file)?;
            let opts = ReportOptions { field_exp, skip_green, green_cap };
            let report = theorem_a_report(&g, &opts)?;
            print!("{report}");
            if let Some(p) = json {
                std::fs::write(p, report.to_json() + "\n")?;
            }
            Ok(true)
        }
        Command::Kgc { file } => {
            let g = read_grp(&file)?;
            let p = sylow_2(&g)?;
            let r = k_g_circle(&g, &p)?;
            for c in &r.class_log {
                println!(
                    "|Q| = {:>3}  class size {:>3}  |N_G(Q)| = {:>6}  |O^2'(N_G(Q))| = {:>6}  contributes {}",
                    c.subgroup_order, c.class_size, c.normalizer_order, c.o2prime_upper_order, c.contribution_order
                );
            }
            println!("|N_G(P)| = {}, |K_G°| = {}", r.normalizer_order, r.kgc_order);
            println!("(N_G(P)/K_G°)^ab = {}", format_invariants(&r.ab_quotient_invariants));
            Ok(true)
        }
        Command::Reproduce3m10 { json } => {
            let r = reproduce_3m10()?;
            for c in &r.checks {
                let mark = if c.pass { "ok  " } else { "FAIL" };
                if c.pass {
                    println!("{mark} {}: {}", c.name, c.observed);
                } else {
                    println!("{mark} {}: expected {}, got {}", c.name, c.expected, c.observed);
                }
            }
            if let Some(p) = json {
                let text = serde_json::to_string_pretty(&r).expect("serializable");
                std::fs::write(p, text + "\n")?;
            }
            Ok(r.all_pass())
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
