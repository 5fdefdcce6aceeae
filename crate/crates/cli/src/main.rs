use std::io::{self, BufRead, IsTerminal, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use onp::oracle::verify::{self, Suite, VerifyOptions};
use onp::{table, Config, Context, Error, FactorLimits, Mode, Style, TablesFile};

#[derive(Parser)]
#[command(name = "onp", version, about = "Exact arithmetic in On_p below the first transcendental")]
struct Cli {
    /// Characteristic of the field.
    #[arg(short = 'p', long = "prime", global = true, default_value_t = 2)]
    prime: u32,

    #[command(flatten)]
    caps: Caps,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Caps {
    /// Candidates examined when searching for alpha_u.
    #[arg(long, global = true, default_value_t = 10_000)]
    cap_alpha_scan: u64,
    /// Frobenius iterations allowed when computing a degree.
    #[arg(long, global = true, default_value_t = 100_000)]
    cap_degree: u64,
    /// Largest field dimension handled by the dense engine.
    #[arg(long, global = true, default_value_t = 4096)]
    cap_dense: usize,
    /// Trial division bound used when factoring p^d - 1.
    #[arg(long, global = true, default_value_t = 1_000_000)]
    cap_trial_division: u64,
    /// Pollard rho step budget used when factoring p^d - 1.
    #[arg(long, global = true, default_value_t = 1 << 24)]
    cap_rho: u64,
}

impl Caps {
    fn config(&self) -> Config {
        Config {
            alpha_scan_cap: self.cap_alpha_scan,
            degree_cap: self.cap_degree,
            dense_limit: self.cap_dense,
            factor_limits: FactorLimits {
                trial_division: self.cap_trial_division,
                rho_iterations: self.cap_rho,
            },
            ..Config::default()
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate an expression and print the resulting ordinal.
    Eval {
        expr: String,
        #[arg(long, value_enum, default_value_t = StyleArg::Cnf)]
        style: StyleArg,
        /// Treat operators outside brackets as ordinal operations.
        #[arg(long)]
        ordinal: bool,
    },
    /// Print alpha_u for every prime u <= umax other than p.
    Tables {
        #[arg(long, default_value_t = 43)]
        umax: u32,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Tables JSON file used to seed and then store alpha_u values.
        #[arg(long)]
        cache: Option<PathBuf>,
    },
    /// Run a verification suite.
    Verify {
        #[arg(value_parser = parse_suite)]
        suite: Suite,
        /// Suite size bound (tower size, mex cap, or addition samples).
        #[arg(long)]
        cap: Option<u64>,
        #[arg(long, default_value_t = 1000)]
        samples: u64,
        #[arg(long, default_value_t = 0x5eed)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Read expressions line by line; `:p N` switches prime, `:quit` exits.
    Repl {
        #[arg(long, value_enum, default_value_t = StyleArg::Cnf)]
        style: StyleArg,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum StyleArg {
    Cnf,
    #[value(alias = "p-expansion")]
    P,
}

impl From<StyleArg> for Style {
    fn from(s: StyleArg) -> Style {
        match s {
            StyleArg::Cnf => Style::Cnf,
            StyleArg::P => Style::PExpansion,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::OutOfRange(_) => 3,
        Error::Resource(_) => 4,
        Error::Syntax { .. } | Error::Malformed(_) | Error::InvalidArgument(_) | Error::ZeroInput => 2,
    }
}

/// Writes to stdout, exiting quietly once the reader has gone away.
fn emit(text: &str) {
    let mut out = io::stdout().lock();
    if let Err(e) = out.write_all(text.as_bytes()).and_then(|_| out.flush()) {
        if e.kind() == io::ErrorKind::BrokenPipe {
            std::process::exit(0);
        }
        eprintln!("error: {e}");
        std::process::exit(4);
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    let config = cli.caps.config();
    let ctx = Context::with_config(cli.prime, config)?;
    match cli.command {
        Command::Eval { expr, style, ordinal } => {
            let mode = if ordinal { Mode::Ordinal } else { Mode::Field };
            let value = onp::parse(&expr, mode, &ctx)?;
            emit(&format!("{}\n", onp::format(&value, style.into(), ctx.p())));
        }
        Command::Tables { umax, format, cache } => {
            if umax < 2 {
                return Err(Error::InvalidArgument("--umax must be at least 2".into()));
            }
            if let Some(path) = cache.as_ref().filter(|p| p.exists()) {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| Error::Malformed(format!("{}: {e}", path.display())))?;
                let cached = TablesFile::from_json(&text)?;
                if cached.p == ctx.p() {
                    cached.seed(&ctx)?;
                }
            }
            let tables = table::generate(&ctx, umax)?;
            if let Some(path) = &cache {
                // Keep every row we know, including ones above this umax.
                let mut all = tables.clone();
                all.rows = ctx
                    .cached_alphas()
                    .iter()
                    .map(|r| onp::TableRow::from_record(&ctx, r))
                    .collect::<Result<_, _>>()?;
                std::fs::write(path, all.to_json() + "\n")
                    .map_err(|e| Error::Resource(format!("{}: {e}", path.display())))?;
            }
            match format {
                Format::Text => emit(&tables.render_text()),
                Format::Json => emit(&(tables.to_json() + "\n")),
            }
        }
        Command::Verify {
            suite,
            cap,
            samples,
            seed,
            format,
        } => {
            let opts = VerifyOptions { cap, samples, seed };
            let report = verify::run(suite, &ctx, &opts)?;
            match format {
                Format::Text => emit(&report.render_text()),
                Format::Json => emit(&(serde_json::to_string_pretty(&report).expect("report serializes") + "\n")),
            }
            if !report.ok() {
                return Ok(ExitCode::from(1));
            }
        }
        Command::Repl { style } => repl(ctx, config, style.into())?,
    }
    Ok(ExitCode::SUCCESS)
}

fn repl(mut ctx: Context, config: Config, mut style: Style) -> Result<(), Error> {
    let stdin = io::stdin();
    let interactive = stdin.is_terminal();
    loop {
        if interactive {
            emit(&format!("On_{}> ", ctx.p()));
        }
        let mut line = String::new();
        if stdin.lock().read_line(&mut line).map_err(|e| Error::Resource(e.to_string()))? == 0 {
            return Ok(());
        }
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(cmd) = line.strip_prefix(':') {
            let mut words = cmd.split_whitespace();
            match (words.next(), words.next()) {
                (Some("quit" | "q"), _) => return Ok(()),
                (Some("p"), Some(p)) => match p.parse().map_err(|_| Error::InvalidArgument(format!("bad prime {p:?}"))).and_then(|p| Context::with_config(p, config)) {
                    Ok(next) => ctx = next,
                    Err(e) => eprintln!("error: {e}"),
                },
                (Some("p"), None) => emit(&format!("{}\n", ctx.p())),
                (Some("style"), Some(s)) => match s.parse() {
                    Ok(s) => style = s,
                    Err(e) => eprintln!("error: {e}"),
                },
                _ => eprintln!("error: commands are :p <prime>, :style cnf|p, :quit"),
            }
            continue;
        }
        match onp::parse(line, Mode::Field, &ctx) {
            Ok(v) => emit(&format!("{}\n", onp::format(&v, style, ctx.p()))),
            Err(e) => eprintln!("error: {e}"),
        }
    }
}
