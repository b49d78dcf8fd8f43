//! `syncalg` command-line driver.

use std::fs;
use std::io::{self, Read, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use syncalg::classify::classify_with_limits;
use syncalg::congruence::{atoms, quotient, PairsDigraph};
use syncalg::corpus;
use syncalg::dot::{lattice_dot, pairs_condensation_dot};
use syncalg::format::{parse_aut, parse_partition, print_aut, AutFile};
use syncalg::galois::{ideal_language_recognizer, GaloisContext};
use syncalg::lift::{lift_reset_word_general, lift_reset_word_small_class};
use syncalg::radical::{radical_algorithm1_with_limits, radical_congruence, radical_oracle, shortest_radical_word, RadicalResult};
use syncalg::report::{analyze, classification_report, Report};
use syncalg::sync::{greedy_reset_word, is_synchronizing, shortest_reset_word};
use syncalg::verify::{run_verification, Suite};
use syncalg::{Automaton, Congruence, Error, Limits};

const EXIT_USAGE: u8 = 1;
const EXIT_PARSE: u8 = 2;
const EXIT_NOT_SYNC: u8 = 3;
const EXIT_CAP: u8 = 4;
const EXIT_VERIFY: u8 = 5;

// witnesses listed by `radical` before eliding
const LISTED_WORDS: usize = 32;

#[derive(Parser)]
#[command(name = "syncalg", version, about = "Transition monoids, congruences and radicals of synchronizing automata")]
struct Cli {
    #[command(flatten)]
    caps: Caps,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Caps {
    /// Maximum transition-monoid size.
    #[arg(long, global = true)]
    max_monoid: Option<usize>,
    /// Maximum number of subsets explored by the exact reset search.
    #[arg(long, global = true)]
    max_subsets: Option<usize>,
    /// Maximum number of congruences enumerated.
    #[arg(long, global = true)]
    max_congruences: Option<usize>,
}

impl Caps {
    fn limits(&self) -> Limits {
        let mut l = Limits::default();
        if let Some(v) = self.max_monoid {
            l.max_monoid = v;
        }
        if let Some(v) = self.max_subsets {
            l.max_subsets = v;
        }
        if let Some(v) = self.max_congruences {
            l.max_congruences = v;
        }
        l
    }
}

#[derive(Subcommand)]
enum Command {
    /// Full summary report.
    Analyze { file: String },
    /// Classification keys only.
    Classify { file: String },
    /// Radical ideal and its congruence.
    Radical {
        file: String,
        #[arg(long, value_enum, default_value_t = MethodArg::Oracle)]
        method: MethodArg,
    },
    /// Atoms of the congruence lattice, one per line.
    Atoms { file: String },
    /// Congruence lattice, optionally written as DOT.
    Lattice {
        file: String,
        #[arg(long)]
        dot: Option<String>,
    },
    /// Pairs digraph summary, optionally written as DOT.
    Pairs {
        file: String,
        #[arg(long)]
        dot: Option<String>,
    },
    /// A reset word.
    Reset(ResetArgs),
    /// Recognizer of the words whose action lies in the ideal of a congruence.
    Recognizer {
        file: String,
        /// Partition file with the congruence.
        #[arg(long)]
        congruence: String,
    },
    /// Print an automaton from a named family.
    Generate {
        #[command(subcommand)]
        family: Family,
    },
    /// Run property sweeps over the corpus and a random population.
    Verify {
        #[arg(long, default_value_t = Suite::All)]
        suite: Suite,
        #[arg(long, default_value_t = 0)]
        random: usize,
        #[arg(long, default_value_t = 6)]
        states: usize,
        #[arg(long, default_value_t = 2)]
        letters: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Oracle,
    Alg1,
    Both,
}

#[derive(Args)]
struct ResetArgs {
    file: String,
    #[command(flatten)]
    mode: ResetMode,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct ResetMode {
    /// Shortest reset word by subset search.
    #[arg(long)]
    exact: bool,
    /// Greedy pair-merging reset word.
    #[arg(long)]
    greedy: bool,
    /// Lift the quotient's shortest reset word along the congruence in this partition file.
    #[arg(long, value_name = "SIGMA_FILE")]
    lift: Option<String>,
}

#[derive(Subcommand)]
enum Family {
    Cerny { n: usize },
    Chain { n: usize },
    Tower { n: usize, copies: usize },
    #[command(name = "double_cerny", alias = "double-cerny")]
    DoubleCerny,
    Modcerny1,
    Modcerny2,
    Quasi3,
    Random { n: usize, k: usize, seed: u64 },
}

enum Failure {
    Lib(Error),
    Usage(String),
    Verify(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type CmdResult = Result<String, Failure>;

fn read_input(path: &str) -> Result<String, Failure> {
    if path == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        return Ok(s);
    }
    fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{path}: {e}")))
}

fn load(path: &str) -> Result<Automaton, Failure> {
    Ok(parse_aut(&read_input(path)?)?.automaton)
}

fn load_congruence(a: &Automaton, path: &str) -> Result<Congruence, Failure> {
    let p = parse_partition(&read_input(path)?)?;
    Ok(Congruence::new(a, p)?)
}

fn write_dot(path: &str, text: &str) -> Result<(), Failure> {
    if path == "-" {
        io::stdout().write_all(text.as_bytes())?;
        return Ok(());
    }
    fs::write(path, text).map_err(|e| Failure::Usage(format!("{path}: {e}")))
}

fn require_sync(a: &Automaton) -> Result<(), Failure> {
    if is_synchronizing(a) {
        Ok(())
    } else {
        Err(Error::NotSynchronizing.into())
    }
}

fn radical_report(ctx: &GaloisContext, r: &RadicalResult, method: &str) -> Result<Report, Failure> {
    let a = ctx.automaton();
    let m = ctx.monoid();
    let mut rep = Report::default();
    rep.set("method", method);
    rep.set("rad_size", r.rad.len());
    rep.set("syn_size", r.syn.len());
    rep.set("rad_minus_syn_size", r.rad_minus_syn().len());
    rep.set("nilpotency_index", r.nilpotency_index);
    rep.set("semisimple", r.is_semisimple());
    rep.set(
        "shortest_radical_word",
        shortest_radical_word(m, r).map_or_else(|| "none".to_string(), |w| a.format_word(&w)),
    );
    let extra = r.rad_minus_syn();
    let mut words: Vec<String> = extra
        .iter()
        .take(LISTED_WORDS)
        .map(|e| a.format_word(&m.witness(e)))
        .collect();
    if extra.len() > LISTED_WORDS {
        words.push("...".into());
    }
    rep.set("rad_minus_syn", if words.is_empty() { "none".into() } else { words.join(", ") });
    rep.set("radical_congruence", radical_congruence(ctx, r)?);
    Ok(rep)
}

fn cmd_radical(a: &Automaton, method: MethodArg, limits: &Limits) -> CmdResult {
    require_sync(a)?;
    let ctx = GaloisContext::with_limits(a, *limits)?;
    match method {
        MethodArg::Oracle => Ok(radical_report(&ctx, &radical_oracle(ctx.monoid())?, "oracle")?.to_string()),
        MethodArg::Alg1 => Ok(radical_report(&ctx, &radical_algorithm1_with_limits(a, limits)?, "alg1")?.to_string()),
        MethodArg::Both => {
            let oracle = radical_oracle(ctx.monoid())?;
            let alg1 = radical_algorithm1_with_limits(a, limits)?;
            if oracle.rad != alg1.rad || oracle.nilpotency_index != alg1.nilpotency_index {
                return Err(Failure::Verify(format!(
                    "oracle and alg1 disagree\n-- oracle\n{}-- alg1\n{}",
                    radical_report(&ctx, &oracle, "oracle")?,
                    radical_report(&ctx, &alg1, "alg1")?
                )));
            }
            Ok(radical_report(&ctx, &oracle, "both")?.to_string())
        }
    }
}

fn cmd_atoms(a: &Automaton) -> CmdResult {
    if a.states() < 2 {
        return Ok(String::new());
    }
    Ok(atoms(a)?.iter().map(|c| format!("{c}\n")).collect())
}

fn cmd_lattice(a: &Automaton, dot: Option<&str>, limits: &Limits) -> CmdResult {
    let ctx = GaloisContext::with_limits(a, *limits)?;
    let l = ctx.lattice()?;
    if let Some(path) = dot {
        write_dot(path, &lattice_dot(l))?;
        if path == "-" {
            return Ok(String::new());
        }
    }
    let mut out = format!("lattice_height = {}\nlattice_size = {}\n", l.height(), l.len());
    for (i, c) in l.elements().iter().enumerate() {
        let covers: Vec<String> = l.covers(i).iter().map(|j| j.to_string()).collect();
        out.push_str(&format!("{i} {c}"));
        if !covers.is_empty() {
            out.push_str(&format!(" < {}", covers.join(" ")));
        }
        out.push('\n');
    }
    Ok(out)
}

fn cmd_pairs(a: &Automaton, dot: Option<&str>) -> CmdResult {
    let g = PairsDigraph::new(a);
    if let Some(path) = dot {
        write_dot(path, &pairs_condensation_dot(&g))?;
        if path == "-" {
            return Ok(String::new());
        }
    }
    let collapsing = (0..g.pairs().len()).filter(|&v| g.is_collapsing(v)).count();
    let mut r = Report::default();
    r.set("pairs", g.pairs().len());
    r.set("edges", g.edges().len());
    r.set("components", g.components().len());
    r.set("sink_components", g.sink_components().len());
    r.set("collapsing_pairs", collapsing);
    r.set("synchronizing", is_synchronizing(a));
    Ok(r.to_string())
}

fn cmd_reset(args: &ResetArgs, limits: &Limits) -> CmdResult {
    let a = load(&args.file)?;
    let mut r = Report::default();
    let word = if args.mode.exact {
        r.set("method", "exact");
        shortest_reset_word(&a, limits.max_subsets)?
    } else if args.mode.greedy {
        r.set("method", "greedy");
        greedy_reset_word(&a)?
    } else {
        let path = args.mode.lift.as_deref().expect("clap enforces one mode");
        let s = load_congruence(&a, path)?;
        let (q, _) = quotient(&a, &s)?;
        let u = shortest_reset_word(&q, limits.max_subsets)?;
        let lifted = if s.min_block_size() <= 2 {
            r.set("method", "lift-small-class");
            lift_reset_word_small_class(&a, &s, &u)?
        } else {
            r.set("method", "lift-general");
            lift_reset_word_general(&a, &s, &u)?
        };
        r.set("quotient_word", q.format_word(&u));
        r.set("quotient_length", u.len());
        r.set("bound_applies", lifted.bound_applies);
        lifted.word
    };
    r.set("length", word.len());
    r.set("word", a.format_word(&word));
    Ok(r.to_string())
}

fn cmd_generate(family: &Family) -> CmdResult {
    let a = match *family {
        Family::Cerny { n } => corpus::cerny(n)?,
        Family::Chain { n } => corpus::chain(n)?,
        Family::Tower { n, copies } => corpus::cerny_tower(n, copies)?,
        Family::DoubleCerny => corpus::double_cerny(),
        Family::Modcerny1 => corpus::modcerny1(),
        Family::Modcerny2 => corpus::modcerny2(),
        Family::Quasi3 => corpus::quasi3(),
        Family::Random { n, k, seed } => corpus::random_automaton(n, k, seed)?,
    };
    Ok(print_aut(&AutFile::plain(a)))
}

fn cmd_verify(suite: Suite, random: usize, states: usize, letters: usize, seed: u64, limits: &Limits) -> CmdResult {
    let outcomes = run_verification(suite, random, states, letters, seed, limits)?;
    let mut out = String::new();
    let mut failed = 0;
    for o in &outcomes {
        if !o.report.passed() {
            failed += 1;
        }
        let mut report = o.report.clone();
        report.name = o.name.clone();
        out.push_str(&format!("{report}\n"));
    }
    out.push_str(&format!(
        "suite {suite}: {} instances, {failed} failed\n",
        outcomes.len()
    ));
    if failed > 0 {
        return Err(Failure::Verify(out));
    }
    Ok(out)
}

fn run(cli: &Cli) -> CmdResult {
    let limits = cli.caps.limits();
    match &cli.command {
        Command::Analyze { file } => Ok(analyze(&load(file)?, &limits)?.to_string()),
        Command::Classify { file } => {
            let c = classify_with_limits(&load(file)?, &limits)?;
            Ok(classification_report(&c).to_string())
        }
        Command::Radical { file, method } => cmd_radical(&load(file)?, *method, &limits),
        Command::Atoms { file } => cmd_atoms(&load(file)?),
        Command::Lattice { file, dot } => cmd_lattice(&load(file)?, dot.as_deref(), &limits),
        Command::Pairs { file, dot } => cmd_pairs(&load(file)?, dot.as_deref()),
        Command::Reset(args) => cmd_reset(args, &limits),
        Command::Recognizer { file, congruence } => {
            let a = load(file)?;
            let s = load_congruence(&a, congruence)?;
            let ctx = GaloisContext::with_limits(&a, limits)?;
            Ok(print_aut(&ideal_language_recognizer(&ctx, &s)?.into()))
        }
        Command::Generate { family } => cmd_generate(family),
        Command::Verify {
            suite,
            random,
            states,
            letters,
            seed,
        } => cmd_verify(*suite, *random, *states, *letters, *seed, &limits),
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse { .. } => EXIT_PARSE,
        Error::NotSynchronizing => EXIT_NOT_SYNC,
        Error::CapExceeded { .. } => EXIT_CAP,
        _ => EXIT_USAGE,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_USAGE)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(&cli) {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(Failure::Verify(text)) => {
            print!("{text}");
            eprintln!("syncalg: verification failed");
            ExitCode::from(EXIT_VERIFY)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("syncalg: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Lib(e)) => {
            eprintln!("syncalg: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn library_errors_map_to_exit_codes() {
        assert_eq!(exit_code(&Error::Parse { line: 1, message: String::new() }), 2);
        assert_eq!(exit_code(&Error::NotSynchronizing), 3);
        assert_eq!(exit_code(&Error::CapExceeded { what: "monoid", cap: 1 }), 4);
        assert_eq!(exit_code(&Error::TrivialAutomaton), 1);
    }

    #[test]
    fn cli_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
