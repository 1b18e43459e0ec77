use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use gfgq_core::decision::{
    extract_witness, model_check_with, sat_behavioral_with, sat_game, sat_vanilla_with,
    simulate_witness_with, McMode, Options, Verdict,
};
use gfgq_core::formula::{parse, Formula};
use gfgq_core::game::build_mc_game_with_budget;
use gfgq_core::hyperoracle::{eval_alternating, is_exact_at, Flag, Hyperassignment};
use gfgq_core::models::parse_kripke;
use gfgq_core::omega::{determinize_with_budget, ltl_to_nba, Alphabet, LassoWord, DEFAULT_BUDGET};
use gfgq_core::parity::{solve, Player};
use gfgq_core::prefix_canon::canonize;
use gfgq_core::Error;

#[derive(Parser)]
#[command(name = "gfgq", version, about = "Decision procedures for behavioral QPTL")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Alt {
    Ea,
    Ae,
}

impl From<Alt> for Flag {
    fn from(a: Alt) -> Flag {
        match a {
            Alt::Ea => Flag::EA,
            Alt::Ae => Flag::AE,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Universal,
    Existential,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a formula and print it with its classification.
    Parse { file: PathBuf },
    /// Print a canonical form of the prefix.
    Canon {
        #[arg(long, value_enum, default_value = "ea")]
        form: Alt,
        file: PathBuf,
    },
    /// Decide satisfiability.
    Sat {
        /// Use the automata route for vanilla sentences.
        #[arg(long)]
        vanilla: bool,
        /// Write the witness transducer table here.
        #[arg(long)]
        witness: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: usize,
        file: PathBuf,
    },
    /// Model-check a formula against a Kripke structure.
    Mc {
        #[arg(long, value_enum, default_value = "universal")]
        mode: Mode,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: usize,
        kripke: PathBuf,
        file: PathBuf,
    },
    /// Evaluate a sentence with the bounded-horizon semantics.
    Oracle {
        #[arg(long, default_value_t = 2)]
        horizon: usize,
        #[arg(long, value_enum, default_value = "ae")]
        alt: Alt,
        file: PathBuf,
    },
    /// Build and solve the quantification game; print the solution.
    Game {
        /// Build the model-checking game for this structure instead.
        #[arg(long)]
        kripke: Option<PathBuf>,
        #[arg(long)]
        dot: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: usize,
        file: PathBuf,
    },
    /// Extract a witness transducer and test it on random adversaries.
    Witness {
        /// Number of random adversary lassos to simulate.
        #[arg(long, default_value_t = 200)]
        check: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: usize,
        file: PathBuf,
    },
}

enum Failure {
    Usage(String),
    Resource(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_resource() {
            Failure::Resource(e.to_string())
        } else {
            Failure::Usage(e.to_string())
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn formula(path: &Path) -> Result<Formula, Failure> {
    parse(&read(path)?).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn verdict(v: &Verdict, yes: &str, no: &str) -> bool {
    println!("{}", if v.answer.is_yes() { yes } else { no });
    print!("{}", v.report());
    v.answer.is_yes()
}

fn run(cli: Cli) -> Result<bool, Failure> {
    match cli.command {
        Command::Parse { file } => {
            let f = formula(&file)?;
            let c = f.classify();
            println!("{f}");
            println!("behavioral={}", c.is_behavioral);
            println!("vanilla={}", c.is_vanilla);
            println!("closed={}", c.free_props.is_empty());
            println!("alternations={}", f.prefix.alternations());
            Ok(true)
        }
        Command::Canon { form, file } => {
            let f = formula(&file)?;
            println!("{}", canonize(&f.prefix, form.into())?);
            Ok(true)
        }
        Command::Sat {
            vanilla,
            witness,
            budget,
            file,
        } => {
            let f = formula(&file)?;
            let opts = Options {
                budget,
                witness: witness.is_some(),
            };
            let v = if vanilla {
                sat_vanilla_with(&f, opts)?
            } else {
                sat_behavioral_with(&f, opts)?
            };
            if let (Some(path), Some(t)) = (witness, &v.witness) {
                write(&path, &t.to_table())?;
            }
            Ok(verdict(&v, "SAT", "UNSAT"))
        }
        Command::Mc {
            mode,
            budget,
            kripke,
            file,
        } => {
            let k = parse_kripke(&read(&kripke)?)?;
            let f = formula(&file)?;
            let mode = match mode {
                Mode::Universal => McMode::Universal,
                Mode::Existential => McMode::Existential,
            };
            let opts = Options {
                budget,
                witness: false,
            };
            Ok(verdict(&model_check_with(&k, &f, mode, opts)?, "YES", "NO"))
        }
        Command::Oracle { horizon, alt, file } => {
            let f = formula(&file)?;
            let a = Hyperassignment::unit(horizon)?;
            let g = f.to_general();
            let r = eval_alternating(&a, &g, alt.into())?;
            println!("{}", if r { "TRUE" } else { "FALSE" });
            println!("exact={}", is_exact_at(&g, horizon));
            Ok(r)
        }
        Command::Game {
            kripke,
            dot,
            budget,
            file,
        } => {
            let f = formula(&file)?;
            let (g, s) = match kripke {
                Some(path) => {
                    let k = parse_kripke(&read(&path)?)?;
                    let g = build_mc_game_with_budget(&k, &f.prefix, &f.matrix, budget)?;
                    let s = solve(&g.game);
                    (g, s)
                }
                None => sat_game(&f, budget)?,
            };
            if let Some(path) = dot {
                write(&path, &g.to_dot())?;
            }
            let eloise = s.winner[g.game.initial()] == Player::Eloise;
            println!("positions={}", g.game.len());
            println!("initial={}", g.game.initial());
            println!("winner={}", if eloise { "eloise" } else { "abelard" });
            print!("{}", s.dump());
            Ok(eloise)
        }
        Command::Witness {
            check,
            seed,
            budget,
            file,
        } => {
            let f = formula(&file)?;
            let (g, s) = sat_game(&f, budget)?;
            let t = match extract_witness(&g, &s) {
                Ok(t) => t,
                Err(Error::NoWitness(m)) => {
                    println!("UNSAT");
                    eprintln!("no witness: {m}");
                    return Ok(false);
                }
                Err(e) => return Err(e.into()),
            };
            print!("{}", t.to_table());
            let mut props = f.prefix.props();
            props.sort();
            let d = determinize_with_budget(&ltl_to_nba(&f.matrix, &Alphabet::new(props)?)?, budget)?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut failed = 0;
            for _ in 0..check {
                let adv = LassoWord::random(&mut rng, t.inputs().size(), 4, 4);
                if !simulate_witness_with(&t, &d, &adv)? {
                    failed += 1;
                }
            }
            println!("checked={check}");
            println!("failed={failed}");
            Ok(failed == 0)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::from(0),
        Ok(false) => ExitCode::from(1),
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Resource(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(3)
        }
    }
}
