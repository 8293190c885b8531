use std::collections::BTreeSet;
use std::io::Write;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use periodic_twist::corpus::{example_source, load_bundle, load_example, verify_example, Bundle, EXAMPLES};
use periodic_twist::periodicity::{check_periodic_named, check_strong_periodic_left, check_strong_periodic_right};
use periodic_twist::qalg::{verify_symmetric, Algebra, AlgebraMap, SymmetricVerdict};
use periodic_twist::rep::{Module, Side};
use periodic_twist::report::Report;
use periodic_twist::tilt::verify_tilting;

#[derive(Parser)]
#[command(name = "periodic-twist", version, about = "Syzygies, twisted periodicity and two-term tilting complexes over GF(p)")]
struct Cli {
    /// Built-in example to work in.
    #[arg(long, short, global = true, default_value = "s6")]
    corpus: String,
    /// Read definitions from a file instead of a built-in example.
    #[arg(long, short, global = true)]
    file: Option<std::path::PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Algebra summaries.
    Algebra {
        #[command(subcommand)]
        cmd: AlgebraCmd,
    },
    /// Module structure.
    Module {
        #[command(subcommand)]
        cmd: ModuleCmd,
    },
    /// Ω^n(M) ≅ σM by minimal projective covers.
    Periodicity {
        #[command(subcommand)]
        cmd: PeriodicityCmd,
    },
    /// Strong periodicity through a bimodule resolution witness.
    StrongPeriodicity {
        #[command(subcommand)]
        cmd: StrongCmd,
    },
    /// Combinatorial tilting complexes.
    Tilt {
        #[command(subcommand)]
        cmd: TiltCmd,
    },
    /// Every golden value and periodicity claim of a built-in example.
    Verify { example: String },
    /// Built-in definitions.
    Corpus {
        #[command(subcommand)]
        cmd: CorpusCmd,
    },
}

#[derive(Subcommand)]
enum AlgebraCmd {
    Info { name: Option<String> },
}

#[derive(Subcommand)]
enum ModuleCmd {
    Loewy {
        name: String,
    },
    Omega {
        name: String,
        #[arg(short, default_value_t = 1)]
        n: usize,
    },
}

#[derive(Subcommand)]
enum PeriodicityCmd {
    /// `sigma` may be `id`.
    Check { module: String, sigma: String, n: usize },
}

#[derive(Subcommand)]
enum StrongCmd {
    Check { module: String, witness: String },
}

#[derive(Subcommand)]
enum TiltCmd {
    Verify {
        /// Comma-separated vertex labels; empty for ∅.
        #[arg(short = 'J', long = "subset", allow_hyphen_values = true)]
        j: String,
        #[arg(long)]
        algebra: Option<String>,
    },
}

#[derive(Subcommand)]
enum CorpusCmd {
    Dump { name: String },
    List,
}

enum Output {
    Checks(Report),
    Info { text: String, json: serde_json::Value },
}

fn load(cli: &Cli) -> Result<Bundle, String> {
    match &cli.file {
        Some(path) => {
            let src = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
            let name = path.file_stem().and_then(|s| s.to_str()).unwrap_or("file");
            load_bundle(name, &src).map_err(|e| format!("{}: {e}", path.display()))
        }
        None => load_example(&cli.corpus).map_err(|e| e.to_string()),
    }
}

fn algebra<'a>(b: &'a Bundle, name: Option<&str>) -> Result<&'a Arc<Algebra>, String> {
    match name {
        Some(n) => b.algebra(n).map_err(|e| e.to_string()),
        None => b.main_algebra().ok_or_else(|| "no algebra defined".to_string()),
    }
}

fn module<'a>(b: &'a Bundle, name: &str) -> Result<&'a Module, String> {
    b.module(name).map_err(|e| e.to_string())
}

fn automorphism(b: &Bundle, name: &str, m: &Module) -> Result<AlgebraMap, String> {
    if name == "id" {
        return Ok(AlgebraMap::identity(m.algebra().clone()));
    }
    b.map(name).cloned().map_err(|e| e.to_string())
}

fn algebra_info(a: &Arc<Algebra>, seed: u64) -> Output {
    let q = a.quiver();
    let arrows: Vec<String> = q
        .arrows()
        .iter()
        .map(|x| format!("{}: {} -> {}", x.name, q.vertices()[x.source], q.vertices()[x.target]))
        .collect();
    let cartan = a.cartan_matrix();
    let symmetric = match verify_symmetric(a, seed) {
        SymmetricVerdict::Symmetric(_) => "yes",
        SymmetricVerdict::NotSymmetric => "no",
        SymmetricVerdict::NotFound => "undecided",
    };
    let proj: Vec<usize> = (0..a.num_vertices()).map(|v| Module::projective(a.clone(), v, Side::Left).dim()).collect();
    let mut text = format!("algebra {} over GF({})\n", a.name(), a.field().p());
    text += &format!("  dim {}\n  vertices {}\n", a.dim(), q.vertices().join(" "));
    for x in &arrows {
        text += &format!("  arrow {x}\n");
    }
    text += &format!("  projective dims {proj:?}\n  Cartan matrix\n");
    for row in &cartan {
        text += &format!("    {}\n", row.iter().map(|c| format!("{c:2}")).collect::<Vec<_>>().join(" "));
    }
    text += &format!("  symmetric: {symmetric}\n");
    let json = json!({
        "algebra": a.name(),
        "field": a.field().p(),
        "dim": a.dim(),
        "vertices": q.vertices(),
        "arrows": arrows,
        "projective_dims": proj,
        "cartan": cartan,
        "symmetric": symmetric,
    });
    Output::Info { text, json }
}

fn loewy_info(name: &str, m: &Module) -> Output {
    let l = m.loewy_series();
    let s = m.socle_series();
    let text = format!(
        "{name}: {} module over {}, dim {} {:?}\nLoewy series\n{}socle series\n{}",
        m.side(),
        m.algebra().name(),
        m.dim(),
        m.dims(),
        l.diagram(),
        s.diagram()
    );
    let json = json!({ "module": name, "dim": m.dim(), "dims": m.dims(), "loewy": l.rows(), "socle": s.rows() });
    Output::Info { text, json }
}

fn parse_subset(a: &Algebra, spec: &str) -> Result<BTreeSet<usize>, String> {
    let spec = spec.trim().trim_start_matches('{').trim_end_matches('}');
    if spec.is_empty() || spec == "∅" {
        return Ok(BTreeSet::new());
    }
    spec.split(',')
        .map(|s| a.quiver().vertex_index(s.trim()).ok_or_else(|| format!("unknown vertex '{}'", s.trim())))
        .collect()
}

fn run(cli: &Cli) -> Result<Output, String> {
    if let Command::Corpus { cmd } = &cli.command {
        return Ok(match cmd {
            CorpusCmd::Dump { name } => {
                let src = example_source(name).map_err(|e| e.to_string())?;
                Output::Info { text: src.to_string(), json: json!({ "name": name, "source": src }) }
            }
            CorpusCmd::List => Output::Info { text: EXAMPLES.join("\n") + "\n", json: json!(EXAMPLES) },
        });
    }
    if let Command::Verify { example } = &cli.command {
        let b = load_example(example).map_err(|e| e.to_string())?;
        return verify_example(&b, cli.seed).map(Output::Checks).map_err(|e| e.to_string());
    }
    let b = load(cli)?;
    match &cli.command {
        Command::Algebra { cmd: AlgebraCmd::Info { name } } => Ok(algebra_info(algebra(&b, name.as_deref())?, cli.seed)),
        Command::Module { cmd: ModuleCmd::Loewy { name } } => Ok(loewy_info(name, module(&b, name)?)),
        Command::Module { cmd: ModuleCmd::Omega { name, n } } => {
            let m = module(&b, name)?;
            let om = m.omega(*n);
            let label = if *n == 1 { format!("Ω({name})") } else { format!("Ω^{n}({name})") };
            let Output::Info { text, mut json } = loewy_info(&label, &om) else { unreachable!() };
            json["of"] = json!(name);
            json["n"] = json!(n);
            Ok(Output::Info { text, json })
        }
        Command::Periodicity { cmd: PeriodicityCmd::Check { module: name, sigma, n } } => {
            let m = module(&b, name)?;
            let s = automorphism(&b, sigma, m)?;
            check_periodic_named(m, name, &s, *n, cli.seed).map(Output::Checks).map_err(|e| e.to_string())
        }
        Command::StrongPeriodicity { cmd: StrongCmd::Check { module: name, witness } } => {
            let m = module(&b, name)?;
            let w = b.witness(witness).map_err(|e| e.to_string())?;
            let r = match m.side() {
                Side::Left => check_strong_periodic_left(m, w, cli.seed),
                Side::Right => check_strong_periodic_right(m, w, cli.seed),
            };
            r.map(Output::Checks).map_err(|e| e.to_string())
        }
        Command::Tilt { cmd: TiltCmd::Verify { j, algebra: name } } => {
            let a = match name {
                Some(n) => b.algebra(n).map_err(|e| e.to_string())?,
                None => b.algebra("A").or_else(|_| algebra(&b, None).map_err(|_| ())).map_err(|_| "no algebra defined".to_string())?,
            };
            let js = parse_subset(a, j)?;
            let r = verify_tilting(a, &js).map_err(|e| e.to_string())?;
            Ok(Output::Checks(r.to_report(&format!("combinatorial tilt of {} at {}", a.name(), r.j), a.num_vertices())))
        }
        Command::Verify { .. } | Command::Corpus { .. } => unreachable!("handled above"),
    }
}

fn emit(s: &str) {
    // a closed pipe is not an error worth reporting
    let _ = std::io::stdout().lock().write_all(s.as_bytes());
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(Output::Checks(r)) => {
            match cli.format {
                Format::Text => emit(&r.render_text()),
                Format::Json => emit(&(r.to_json() + "\n")),
            }
            if r.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
        Ok(Output::Info { text, json }) => {
            match cli.format {
                Format::Text => emit(&text),
                Format::Json => emit(&(serde_json::to_string_pretty(&json).expect("json value") + "\n")),
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
