use clap::{Args, Parser, Subcommand};
use ffpgn_cli::run::{
    cmd_adelic, cmd_construct, cmd_graph, cmd_minima, cmd_pade, cmd_scan, exit_code,
    AdelicArgs, ConstructArgs, GraphArgs, MinimaArgs, PadeArgs, ScanArgs,
};

#[derive(Parser)]
#[command(name = "ffpgn", version, about = "parametric geometry of numbers over F((1/T))")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct Common {
    /// write output here instead of stdout
    #[arg(long)]
    out: Option<String>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Successive minima profile of a point
    Minima {
        /// point JSON file
        #[arg(long)]
        u: Option<String>,
        /// generator spec: exp:w1,w2 | binomial:w1,w2 | log:n
        #[arg(long)]
        gen: Option<String>,
        /// continued fraction partial quotients (comma-separated polynomials)
        #[arg(long, allow_hyphen_values = true)]
        cf: Option<String>,
        /// profile horizon
        #[arg(long = "Q")]
        q_max: i64,
        /// working precision (defaults derived from the horizon)
        #[arg(long)]
        prec: Option<i64>,
        /// Q or Fp:<p>; FFPGN_FIELD then Q when absent
        #[arg(long)]
        field: Option<String>,
        /// emit per-q basis certificates and verify them
        #[arg(long)]
        certify: bool,
        /// worker threads for the per-q sweep
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Build a point realizing given switch data
    Construct {
        /// switches JSON file
        #[arg(long)]
        switches: String,
        /// certify coefficients down to T^-N (default: file horizon + 1)
        #[arg(long = "N")]
        n_prec: Option<i64>,
        #[arg(long)]
        field: Option<String>,
        /// re-run the minima map on the result and compare
        #[arg(long)]
        verify: bool,
        /// also construct mod p and compare reductions
        #[arg(long)]
        modp: Option<u64>,
        #[command(flatten)]
        common: Common,
    },
    /// Solve one simultaneous approximation problem
    Pade {
        #[arg(long)]
        gen: String,
        /// index tuple, comma-separated
        #[arg(long)]
        rho: String,
        #[arg(long)]
        prec: Option<usize>,
        #[command(flatten)]
        common: Common,
    },
    /// Report all non-normal index tuples up to a bound
    Scan {
        #[arg(long)]
        gen: String,
        /// sigma bound
        #[arg(long = "R")]
        bound: usize,
        /// all | diagonal | sorted
        #[arg(long, default_value = "all")]
        mode: String,
        #[arg(long)]
        prec: Option<usize>,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Global margin and corollary reports for polynomial tuples
    Adelic {
        /// semicolon-separated polynomials
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        /// comma-separated exponents
        #[arg(long, allow_hyphen_values = true)]
        omega: String,
        /// comma-separated evaluation points
        #[arg(long = "S", allow_hyphen_values = true)]
        s: Option<String>,
        /// also run the specialization reports
        #[arg(long)]
        corollary: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Render a profile as csv, svg, or json
    Graph {
        /// staircase profile for n components
        #[arg(long)]
        extremal: Option<usize>,
        #[arg(long)]
        switches: Option<String>,
        #[arg(long)]
        u: Option<String>,
        #[arg(long)]
        gen: Option<String>,
        #[arg(long = "Q")]
        q_max: i64,
        #[arg(long, default_value = "svg")]
        format: String,
        #[command(flatten)]
        common: Common,
    },
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{}", e);
                std::process::exit(0);
            }
            eprint!("{}", e);
            std::process::exit(3);
        }
    };
    let (result, common) = match &cli.cmd {
        Cmd::Minima { u, gen, cf, q_max, prec, field, certify, jobs, common } => (
            cmd_minima(&MinimaArgs {
                u: u.as_deref(),
                gen: gen.as_deref(),
                cf: cf.as_deref(),
                q_max: *q_max,
                prec: *prec,
                field: field.as_deref(),
                certify: *certify,
                jobs: (*jobs).max(1),
            }),
            common,
        ),
        Cmd::Construct { switches, n_prec, field, verify, modp, common } => (
            cmd_construct(&ConstructArgs {
                switches,
                n_prec: *n_prec,
                field: field.as_deref(),
                verify: *verify,
                modp: *modp,
            }),
            common,
        ),
        Cmd::Pade { gen, rho, prec, common } => {
            (cmd_pade(&PadeArgs { gen, rho, prec: *prec }), common)
        }
        Cmd::Scan { gen, bound, mode, prec, jobs, common } => (
            cmd_scan(&ScanArgs {
                gen,
                bound: *bound,
                mode,
                prec: *prec,
                jobs: (*jobs).max(1),
            }),
            common,
        ),
        Cmd::Adelic { a, omega, s, corollary, common } => (
            cmd_adelic(&AdelicArgs {
                a,
                omega,
                s: s.as_deref(),
                corollary: *corollary,
            }),
            common,
        ),
        Cmd::Graph { extremal, switches, u, gen, q_max, format, common } => (
            cmd_graph(&GraphArgs {
                extremal: *extremal,
                switches: switches.as_deref(),
                u: u.as_deref(),
                gen: gen.as_deref(),
                q_max: *q_max,
                format,
            }),
            common,
        ),
    };
    match result {
        Ok(text) => match &common.out {
            Some(path) => {
                if std::fs::write(path, text).is_err() {
                    eprintln!("error: cannot write output file");
                    std::process::exit(5);
                }
            }
            None => print!("{}", text),
        },
        Err(e) => {
            eprintln!("error: {}", e);
            std::process::exit(exit_code(&e));
        }
    }
}
