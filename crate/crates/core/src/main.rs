use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use multimat::config::{load_case, CASE_NAMES};
use multimat::runner::{exact_profile, run, Overrides};
use multimat::scheme::Order;
use multimat::Error;

/// Worker count for the solver thread pool.
const THREADS_VAR: &str = "MULTIMAT_THREADS";

#[derive(Parser)]
#[command(name = "multimat", version, about = "Compressible multimaterial solver with neohookean solids")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a built-in case (tc1..tc11) or a case file.
    Run {
        case: String,
        #[arg(long)]
        nx: Option<usize>,
        #[arg(long)]
        ny: Option<usize>,
        #[arg(long)]
        cfl: Option<f64>,
        #[arg(long = "t-end")]
        t_end: Option<f64>,
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
        order: Option<u8>,
        /// Output directory [default: out/<case name>].
        #[arg(long)]
        out: Option<PathBuf>,
        /// Snapshot cadence in seconds.
        #[arg(long)]
        every: Option<f64>,
    },
    /// Print the exact solution of a shock-tube case as CSV.
    Exact {
        case: String,
        #[arg(long)]
        t: f64,
        #[arg(long)]
        nx: Option<usize>,
    },
    /// List the built-in cases.
    ListCases,
    /// Print a case in the text format.
    Show { case: String },
}

fn exit_code(e: &Error) -> ExitCode {
    ExitCode::from(if e.is_numerical() { 3 } else { 2 })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Ok(v) = std::env::var(THREADS_VAR) {
        let n = match v.parse::<usize>() {
            Ok(n) if n > 0 => n,
            _ => {
                eprintln!("error: {THREADS_VAR} must be a positive integer, got `{v}`");
                return ExitCode::from(2);
            }
        };
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match execute(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

fn execute(command: Command) -> multimat::Result<()> {
    match command {
        Command::Run {
            case,
            nx,
            ny,
            cfl,
            t_end,
            order,
            out,
            every,
        } => {
            let mut c = load_case(&case)?;
            Overrides {
                nx,
                ny,
                cfl,
                t_end,
                order: order.map(|o| if o == 1 { Order::First } else { Order::Second }),
                every,
            }
            .apply(&mut c);
            c.validate()?;
            let dir = out.unwrap_or_else(|| PathBuf::from("out").join(&c.name));
            let started = std::time::Instant::now();
            let s = run(&c, Some(&dir))?;
            let last = s.diagnostics.last().expect("initial row");
            eprintln!(
                "{}: t = {:e} after {} steps ({} flips) in {:.2} s; mass error {:.3e} %; output in {}",
                c.name,
                s.t,
                s.steps,
                s.flips,
                started.elapsed().as_secs_f64(),
                last.mass_error_pct,
                dir.display()
            );
            Ok(())
        }
        Command::Exact { case, t, nx } => {
            let mut c = load_case(&case)?;
            if let Some(n) = nx {
                c.nx = n;
            }
            c.validate()?;
            let (_, rows) = exact_profile(&c, t)?;
            let mut w = std::io::BufWriter::new(std::io::stdout().lock());
            writeln!(w, "x,rho,u1,u2,p,sigma11,sigma21")?;
            for r in rows {
                let v = [r.x, r.rho, r.u1, r.u2, r.p, r.sigma11, r.sigma21].map(|x| format!("{x:.16e}"));
                writeln!(w, "{}", v.join(","))?;
            }
            w.flush()?;
            Ok(())
        }
        Command::ListCases => {
            for name in CASE_NAMES {
                let c = load_case(name)?;
                println!("{name}\t{}x{}\tt_end = {:e}", c.nx, c.ny, c.t_end);
            }
            Ok(())
        }
        Command::Show { case } => {
            print!("{}", load_case(&case)?.to_text());
            Ok(())
        }
    }
}
