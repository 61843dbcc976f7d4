use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use kwitt::{
    parse_element, parse_field, parse_form, parse_kelement, parse_symbol_tuple, NormQuadric,
    Place, Symbol,
};
use kwitt_cli::{campaign, CampaignConfig, Suite};

#[derive(Parser)]
#[command(
    name = "kwitt",
    version,
    about = "Exact mod-2 symbol arithmetic, Witt ring computations, and verification campaigns over the rationals"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Evaluate symbol sums and test them for zero
    Symbol {
        #[command(subcommand)]
        cmd: SymbolCmd,
    },
    /// Inspect diagonal quadratic forms
    Form {
        #[command(subcommand)]
        cmd: FormCmd,
    },
    /// Norm quadrics: low-degree points and generic isotropy witnesses
    Quadric {
        #[command(subcommand)]
        cmd: QuadricCmd,
    },
    /// Transfer an element of a quadratic field, optionally against a tail symbol
    Transfer {
        /// The field, e.g. "Q(sqrt -1)" or "Q[x]/(x^2-5)"
        #[arg(long)]
        field: String,
        /// Power-basis coordinates of the element, e.g. "1,1"
        #[arg(long)]
        element: String,
        /// Tail entries as a tuple, e.g. "(3,7)"
        #[arg(long)]
        tail: Option<String>,
    },
    /// Run a verification campaign and print its report
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        #[arg(long, default_value_t = 100)]
        samples: u32,
        #[arg(long, env = "KWITT_SEED", default_value_t = 0)]
        seed: u64,
        /// Largest square-free coefficient magnitude drawn by the samplers
        #[arg(long = "coeff-bound", default_value_t = 200)]
        coeff_bound: u64,
        /// Symbol / form degrees to draw from, comma separated
        #[arg(long = "degree-set", value_delimiter = ',', default_values_t = vec![1u8, 2, 3, 4])]
        degree_set: Vec<u8>,
        /// Section search depth for quadric points
        #[arg(long, default_value_t = 8)]
        depth: u32,
        /// Kernel bound index for the krs suite
        #[arg(long = "i", default_value_t = 1)]
        kernel_index: u32,
        /// Also write the report to this path
        #[arg(long, env = "KWITT_OUT")]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum SymbolCmd {
    /// Print the canonical form of a symbol sum
    Eval { expr: String },
    /// Decide whether a symbol sum is zero
    Iszero { expr: String },
}

#[derive(Subcommand)]
enum FormCmd {
    /// Dimension, signature, discriminant, and Hasse data
    Invariants { form: String },
    /// Witt index and anisotropic kernel
    Witt { form: String },
    /// Position in the fundamental ideal filtration
    Degree { form: String },
    /// Decide hyperbolicity
    Hyperbolic { form: String },
}

#[derive(Subcommand)]
enum QuadricCmd {
    /// List points of degree at most 2
    Points {
        symbol: String,
        #[arg(long, default_value_t = 0)]
        depth: u32,
    },
    /// Print and verify the generic isotropy witness
    Witness { symbol: String },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn dispatch(cli: Cli) -> Result<ExitCode, String> {
    match cli.cmd {
        Cmd::Symbol { cmd } => {
            match cmd {
                SymbolCmd::Eval { expr } => {
                    let x = parse_kelement(&expr).map_err(|e| e.to_string())?;
                    println!("{x}");
                }
                SymbolCmd::Iszero { expr } => {
                    let x = parse_kelement(&expr).map_err(|e| e.to_string())?;
                    println!("{}", if x.is_zero() { "zero" } else { "nonzero" });
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Form { cmd } => {
            match cmd {
                FormCmd::Invariants { form } => {
                    let f = parse_form(&form).map_err(|e| e.to_string())?;
                    let inv = f.invariants();
                    println!("dim: {}", inv.dim);
                    println!("signature: {}", inv.signature);
                    println!("disc: {}", inv.signed_disc.value());
                    if inv.hasse.is_empty() {
                        println!("hasse: trivial");
                    } else {
                        let places: Vec<String> =
                            inv.hasse.keys().map(render_place).collect();
                        println!("hasse: -1 at {}", places.join(", "));
                    }
                }
                FormCmd::Witt { form } => {
                    let f = parse_form(&form).map_err(|e| e.to_string())?;
                    let (index, kernel) = f.witt_decompose();
                    println!("witt-index: {index}");
                    println!("kernel: {kernel}");
                }
                FormCmd::Degree { form } => {
                    let f = parse_form(&form).map_err(|e| e.to_string())?;
                    println!("{}", f.i_degree());
                }
                FormCmd::Hyperbolic { form } => {
                    let f = parse_form(&form).map_err(|e| e.to_string())?;
                    println!("{}", if f.is_hyperbolic() { "hyperbolic" } else { "not hyperbolic" });
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Quadric { cmd } => {
            match cmd {
                QuadricCmd::Points { symbol, depth } => {
                    let quad = parse_quadric(&symbol)?;
                    let points = quad.quadratic_points(depth).map_err(|e| e.to_string())?;
                    for p in points {
                        println!("{p}");
                    }
                }
                QuadricCmd::Witness { symbol } => {
                    let quad = parse_quadric(&symbol)?;
                    let witness = quad.generic_isotropy_witness();
                    println!("witness: ({})", witness.coordinate_strings().join(", "));
                    println!("verified: {}", witness.verify());
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Transfer { field, element, tail } => {
            let e_field = parse_field(&field).map_err(|e| e.to_string())?;
            let e = parse_element(&e_field, &element).map_err(|e| e.to_string())?;
            let result = match tail {
                None => e_field.transfer_k1(&e).map_err(|e| e.to_string())?,
                Some(text) => {
                    let classes = parse_symbol_tuple(&text).map_err(|e| e.to_string())?;
                    let degree = 1 + classes.len();
                    match Symbol::new(classes) {
                        Some(tail_symbol) => e_field
                            .transfer_symbol(&e, &tail_symbol)
                            .map_err(|e| e.to_string())?,
                        // A square entry kills the tail, hence the transfer.
                        None => kwitt::KElement::zero(degree),
                    }
                }
            };
            println!("{result}");
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Verify {
            suite,
            samples,
            seed,
            coeff_bound,
            degree_set,
            depth,
            kernel_index,
            out,
        } => {
            let mut degrees: Vec<u8> = degree_set;
            if degrees.is_empty() {
                return Err("degree set must not be empty".into());
            }
            if degrees.iter().any(|d| !(1..=4).contains(d)) {
                return Err("degree set entries must lie in 1..=4".into());
            }
            degrees.sort_unstable();
            degrees.dedup();
            if samples < 1 {
                return Err("sample count must be positive".into());
            }
            if coeff_bound < 1 {
                return Err("coefficient bound must be positive".into());
            }
            let cfg = CampaignConfig {
                suite,
                seed,
                samples,
                coeff_bound,
                degree_set: degrees,
                depth,
                kernel_index,
            };
            let start = Instant::now();
            let report = campaign::run(&cfg);
            let text = report.render();
            print!("{text}");
            if let Some(path) = out {
                fs::write(&path, &text)
                    .map_err(|e| format!("writing {}: {e}", path.display()))?;
            }
            eprintln!("wall: {:.3}s", start.elapsed().as_secs_f64());
            Ok(if report.passed() { ExitCode::SUCCESS } else { ExitCode::FAILURE })
        }
    }
}

fn parse_quadric(text: &str) -> Result<NormQuadric, String> {
    let classes = parse_symbol_tuple(text).map_err(|e| e.to_string())?;
    let symbol = Symbol::new(classes)
        .ok_or_else(|| "an entry is a square; the quadric degenerates".to_string())?;
    NormQuadric::build(&symbol).map_err(|e| e.to_string())
}

fn render_place(place: &Place) -> String {
    match place {
        Place::Real => "real".into(),
        Place::Prime2 => "2".into(),
        Place::Odd(p) => p.to_string(),
    }
}
