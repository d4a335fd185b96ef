//! `cg`: evaluate expressions over labelled and twisted Thompson groups, and
//! run the property suites.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use cg_core::groups::{Action, Group};
use cg_core::Error;
use clap::{Parser, Subcommand};

use cg_cli::registry::{self, ActionTask, GroupTask};
use cg_cli::report::{Outcome, Report};
use cg_cli::session::{self, Command, Line, Session};
use cg_cli::world::{ActionWorld, OracleWorld, World};

const EXIT_FAILED: u8 = 1;
const EXIT_ERROR: u8 = 2;

#[derive(Parser, Debug)]
#[command(name = "cg", version, about = "Labelled Thompson groups, twisted Brin-Thompson groups and their groupoids")]
struct Cli {
    #[command(subcommand)]
    command: Option<Cmd>,

    /// Label group for V(G) tables and bisections.
    #[arg(long, global = true, conflicts_with = "action", help = format!("Label group: {}", registry::ORACLE_HELP))]
    oracle: Option<String>,

    /// Action for twist tables and twisted bisections.
    #[arg(long, global = true, help = format!("Group action: {}", registry::ACTION_HELP))]
    action: Option<String>,

    /// Emit one JSON report per command.
    #[arg(long, global = true)]
    json: bool,

    /// Seed for randomized suites.
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,

    /// Run the commands in FILE before the command line's own.
    #[arg(long, global = true, value_name = "FILE")]
    script: Option<PathBuf>,

    /// Include wall-clock timings in reports.
    #[arg(long, global = true)]
    timing: bool,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Evaluate an expression and print its canonical form.
    Eval { expr: String },
    /// Apply an element to a point.
    Act { expr: String, point: String },
    /// Order of an element, up to a bound.
    Order {
        expr: String,
        #[arg(long, default_value_t = session::DEFAULT_MAX_ORDER)]
        max: usize,
    },
    /// Decide whether a table is central.
    Center { expr: String },
    /// A bisection with source U and range inside V.
    Witness { u: String, v: String },
    /// Run a property suite, or all of them.
    Selftest {
        #[arg(default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = session::DEFAULT_SELFTEST_N)]
        n: usize,
    },
}

impl Cmd {
    fn to_command(&self) -> Command {
        let (name, args): (&str, Vec<String>) = match self {
            Cmd::Eval { expr } => ("eval", vec![expr.clone()]),
            Cmd::Act { expr, point } => ("act", vec![expr.clone(), point.clone()]),
            Cmd::Order { expr, max } => ("order", vec![expr.clone(), max.to_string()]),
            Cmd::Center { expr } => ("center", vec![expr.clone()]),
            Cmd::Witness { u, v } => ("witness", vec![u.clone(), v.clone()]),
            Cmd::Selftest { suite, n } => ("selftest", vec![suite.clone(), n.to_string()]),
        };
        Command {
            name: name.to_string(),
            args,
        }
    }
}

struct Output {
    json: bool,
    code: u8,
}

impl Output {
    fn emit(&mut self, r: &Report) {
        if r.is_error() {
            self.code = EXIT_ERROR;
        } else if r.failed && self.code == 0 {
            self.code = EXIT_FAILED;
        }
        let stdout = std::io::stdout();
        let mut out = stdout.lock();
        if self.json {
            let _ = writeln!(out, "{}", r.to_json());
            return;
        }
        let (text, err) = r.render_text();
        if let Some(t) = text {
            let _ = writeln!(out, "{t}");
        }
        if let Some(e) = err {
            eprintln!("{e}");
        }
    }
}

struct Job {
    cli: Cli,
    script: Option<String>,
}

impl Job {
    fn run<W: World>(&self, world: W) -> u8 {
        let mut session = Session::new(world, self.cli.seed, self.cli.timing);
        let mut out = Output {
            json: self.cli.json,
            code: 0,
        };
        if let Some(script) = &self.script {
            for (i, raw) in script.lines().enumerate() {
                let line = i + 1;
                let report = match session::parse_line(raw) {
                    Ok(Line::Blank) => continue,
                    Ok(Line::Let(name, src)) => match session.bind(&name, &src) {
                        Ok(()) => continue,
                        Err(e) => session.let_error(&name, &src, line, e),
                    },
                    Ok(Line::Run(cmd)) => session.run(&cmd, Some(line)),
                    Err(e) => session.let_error("", raw.trim(), line, e),
                };
                out.emit(&report);
                if report.is_error() {
                    return out.code;
                }
            }
        }
        if let Some(cmd) = &self.cli.command {
            out.emit(&session.run(&cmd.to_command(), None));
        }
        out.code
    }
}

impl GroupTask for &Job {
    type Out = u8;
    fn run<G: Group>(self, group: G) -> u8 {
        Job::run(self, OracleWorld { group })
    }
}

impl ActionTask for &Job {
    type Out = u8;
    fn run<A: Action>(self, action: A) -> u8 {
        Job::run(self, ActionWorld { action })
    }
}

fn setup_error(json: bool, context: &str, e: Error) -> ExitCode {
    let r = Report {
        command: "setup".into(),
        args: Vec::new(),
        context: context.to_string(),
        line: None,
        seed: None,
        outcome: Outcome::Err(e),
        timing_ms: None,
        failed: false,
    };
    let mut out = Output { json, code: 0 };
    out.emit(&r);
    ExitCode::from(EXIT_ERROR)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let json = cli.json;
    if cli.command.is_none() && cli.script.is_none() {
        eprintln!("error: nothing to do; give a command or --script FILE (see --help)");
        return ExitCode::from(EXIT_ERROR);
    }
    let script = match &cli.script {
        Some(p) => match std::fs::read_to_string(p) {
            Ok(s) => Some(s),
            Err(e) => return setup_error(json, "", Error::Io(format!("{}: {e}", p.display()))),
        },
        None => None,
    };
    let action = cli.action.clone();
    let oracle = cli.oracle.clone().unwrap_or_else(|| "trivial".to_string());
    let job = Job { cli, script };
    let result = match &action {
        Some(a) => registry::with_action(a, &job).map_err(|e| (format!("action:{a}"), e)),
        None => registry::with_oracle(&oracle, &job).map_err(|e| (format!("oracle:{oracle}"), e)),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err((context, e)) => setup_error(json, &context, e),
    }
}
