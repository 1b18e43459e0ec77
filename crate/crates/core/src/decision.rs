//! Satisfiability, model checking and witness extraction.

use std::collections::{BTreeMap, HashMap};
use std::fmt::{self, Write as _};
use std::time::Instant;

use crate::error::{Error, Result};
use crate::formula::{Formula, Prop, QuantKind};
use crate::game::{build_mc_game_with_budget, build_sat_game, ProductGame};
use crate::models::KripkeStructure;
use crate::omega::{
    determinize_with_budget, ltl_to_nba, vanilla_to_nba_with_budget, Alphabet, LassoWord,
    Letter, ParityAutomaton, DEFAULT_BUDGET,
};
use crate::parity::{solve, Player, Solution};
use crate::prefix_canon::round_order;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Answer {
    Yes,
    No,
}

impl Answer {
    pub fn from_bool(b: bool) -> Self {
        if b {
            Answer::Yes
        } else {
            Answer::No
        }
    }

    pub fn is_yes(self) -> bool {
        self == Answer::Yes
    }

    pub fn negate(self) -> Self {
        Answer::from_bool(!self.is_yes())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    SatBehavioral,
    SatVanilla,
    McUniversal,
    McExistential,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::SatBehavioral => "sat_behavioral",
            Mode::SatVanilla => "sat_vanilla",
            Mode::McUniversal => "mc_universal",
            Mode::McExistential => "mc_existential",
        })
    }
}

/// Which reading of model checking to decide.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum McMode {
    Universal,
    Existential,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Stats {
    pub automaton_states: usize,
    pub game_positions: usize,
    pub priorities: usize,
    pub millis: u128,
}

#[derive(Clone, Debug)]
pub struct Verdict {
    pub answer: Answer,
    pub mode: Mode,
    pub witness: Option<Transducer>,
    pub stats: Stats,
}

impl Verdict {
    /// `key=value` lines.
    pub fn report(&self) -> String {
        let s = &self.stats;
        format!(
            "answer={}\nmode={}\nautomaton_states={}\ngame_positions={}\npriorities={}\nmillis={}\n",
            match self.answer {
                Answer::Yes => "yes",
                Answer::No => "no",
            },
            self.mode,
            s.automaton_states,
            s.game_positions,
            s.priorities,
            s.millis
        )
    }
}

/// Knobs shared by the decision procedures.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Options {
    /// Limit on automaton states built by determinization.
    pub budget: usize,
    /// Extract a witness transducer for positive behavioral answers.
    pub witness: bool,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            budget: DEFAULT_BUDGET,
            witness: false,
        }
    }
}

fn require_closed(f: &Formula) -> Result<()> {
    match f.free_props().into_iter().next() {
        Some(p) => Err(Error::NotClosed(p.to_string())),
        None => Ok(()),
    }
}

fn game_stats(g: &ProductGame, start: Instant) -> Stats {
    let mut prios: Vec<u32> = (0..g.game.len()).map(|v| g.game.priority(v)).collect();
    prios.sort_unstable();
    prios.dedup();
    Stats {
        automaton_states: g.automaton.num_states(),
        game_positions: g.game.len(),
        priorities: prios.len(),
        millis: start.elapsed().as_millis(),
    }
}

/// The solved satisfiability game of a closed behavioral sentence.
pub fn sat_game(f: &Formula, budget: usize) -> Result<(ProductGame, Solution)> {
    require_closed(f)?;
    let rounds = round_order(&f.prefix)?;
    let mut props = rounds.props();
    props.sort();
    let alphabet = Alphabet::new(props)?;
    let d = determinize_with_budget(&ltl_to_nba(&f.matrix, &alphabet)?, budget)?;
    let g = build_sat_game(&rounds, &d)?;
    let s = solve(&g.game);
    Ok((g, s))
}

pub fn sat_behavioral(f: &Formula) -> Result<Verdict> {
    sat_behavioral_with(f, Options::default())
}

/// Eloise wins the quantification game of `f` iff `f` is satisfiable.
pub fn sat_behavioral_with(f: &Formula, opts: Options) -> Result<Verdict> {
    let start = Instant::now();
    let (g, s) = sat_game(f, opts.budget)?;
    let answer = Answer::from_bool(s.winner[g.game.initial()] == Player::Eloise);
    let witness = if opts.witness && answer.is_yes() {
        Some(extract_witness(&g, &s)?)
    } else {
        None
    };
    Ok(Verdict {
        answer,
        mode: Mode::SatBehavioral,
        witness,
        stats: game_stats(&g, start),
    })
}

pub fn sat_vanilla(f: &Formula) -> Result<Verdict> {
    sat_vanilla_with(f, Options::default())
}

pub fn sat_vanilla_with(f: &Formula, opts: Options) -> Result<Verdict> {
    let start = Instant::now();
    require_closed(f)?;
    let nba = vanilla_to_nba_with_budget(f, opts.budget)?;
    Ok(Verdict {
        answer: Answer::from_bool(!nba.is_empty()),
        mode: Mode::SatVanilla,
        witness: None,
        stats: Stats {
            automaton_states: nba.num_states(),
            millis: start.elapsed().as_millis(),
            ..Stats::default()
        },
    })
}

pub fn model_check(k: &KripkeStructure, f: &Formula, mode: McMode) -> Result<Verdict> {
    model_check_with(k, f, mode, Options::default())
}

/// Universal: every trace of `K` satisfies `f`, decided by the model-checking
/// game. Existential: the negation of the universal check of `¬f`.
pub fn model_check_with(
    k: &KripkeStructure,
    f: &Formula,
    mode: McMode,
    opts: Options,
) -> Result<Verdict> {
    let start = Instant::now();
    match mode {
        McMode::Universal => {
            let g = build_mc_game_with_budget(k, &f.prefix, &f.matrix, opts.budget)?;
            let s = solve(&g.game);
            Ok(Verdict {
                answer: Answer::from_bool(s.winner[g.game.initial()] == Player::Eloise),
                mode: Mode::McUniversal,
                witness: None,
                stats: game_stats(&g, start),
            })
        }
        McMode::Existential => {
            let mut v = model_check_with(k, &f.negate_prenex(), McMode::Universal, opts)?;
            v.answer = v.answer.negate();
            v.mode = Mode::McExistential;
            Ok(v)
        }
    }
}

/// A Mealy machine playing Eloise's side of the quantification game: each
/// round it reads the universal propositions and emits the existential ones.
/// An existential picked before some universal in the round cannot see that
/// universal's current value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transducer {
    inputs: Alphabet,
    outputs: Alphabet,
    initial: usize,
    next: Vec<Vec<usize>>,
    output: Vec<Vec<Letter>>,
}

impl Transducer {
    pub fn new(
        inputs: Alphabet,
        outputs: Alphabet,
        initial: usize,
        next: Vec<Vec<usize>>,
        output: Vec<Vec<Letter>>,
    ) -> Result<Self> {
        let n = next.len();
        let ok = initial < n
            && output.len() == n
            && next.iter().all(|r| r.len() == inputs.size() && r.iter().all(|&t| t < n))
            && output
                .iter()
                .all(|r| r.len() == inputs.size() && r.iter().all(|&o| (o as usize) < outputs.size()));
        if !ok {
            return Err(Error::Domain("malformed transducer".into()));
        }
        Ok(Transducer {
            inputs,
            outputs,
            initial,
            next,
            output,
        })
    }

    pub fn inputs(&self) -> &Alphabet {
        &self.inputs
    }

    pub fn outputs(&self) -> &Alphabet {
        &self.outputs
    }

    pub fn num_states(&self) -> usize {
        self.next.len()
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn step(&self, s: usize, input: Letter) -> (usize, Letter) {
        (self.next[s][input as usize], self.output[s][input as usize])
    }

    /// Overwrite one output entry.
    pub fn set_output(&mut self, s: usize, input: Letter, out: Letter) {
        self.output[s][input as usize] = out;
    }

    /// Outputs for a finite input sequence.
    pub fn run(&self, inputs: &[Letter]) -> Vec<Letter> {
        let mut s = self.initial;
        inputs
            .iter()
            .map(|&i| {
                let (t, o) = self.step(s, i);
                s = t;
                o
            })
            .collect()
    }

    /// One row per state and input: `state input / output -> next`.
    pub fn to_table(&self) -> String {
        let names = |a: &Alphabet| {
            a.props()
                .iter()
                .map(Prop::name)
                .collect::<Vec<_>>()
                .join(" ")
        };
        let mut out = format!(
            "transducer\ninputs: {}\noutputs: {}\ninit: {}\n",
            names(&self.inputs),
            names(&self.outputs),
            self.initial
        );
        for s in 0..self.num_states() {
            for i in self.inputs.letters() {
                let (t, o) = self.step(s, i);
                let _ = writeln!(
                    out,
                    "{s} {} / {} -> {t}",
                    self.inputs.letter_to_string(i),
                    self.outputs.letter_to_string(o)
                );
            }
        }
        out
    }
}

/// Eloise's positional strategy in a solved satisfiability game, as a
/// transducer whose states are the automaton states at round starts.
pub fn extract_witness(g: &ProductGame, s: &Solution) -> Result<Transducer> {
    let q0 = g.automaton.initial();
    if s.winner[g.position(q0, g.arena.initial())] != Player::Eloise {
        return Err(Error::NoWitness("Abelard wins the game".into()));
    }
    let qs = g.arena.prefix().quantifiers();
    let uni: Vec<usize> = (0..qs.len()).filter(|&i| qs[i].kind == QuantKind::Forall).collect();
    let exi: Vec<usize> = (0..qs.len()).filter(|&i| qs[i].kind == QuantKind::Exists).collect();
    let inputs = Alphabet::new(uni.iter().map(|&i| qs[i].prop.clone()).collect())?;
    let outputs = Alphabet::new(exi.iter().map(|&i| qs[i].prop.clone()).collect())?;
    let mut index: HashMap<usize, usize> = HashMap::from([(q0, 0)]);
    let mut states = vec![q0];
    let mut next = Vec::new();
    let mut output = Vec::new();
    let mut k = 0;
    while k < states.len() {
        let q = states[k];
        let mut nrow = Vec::new();
        let mut orow = Vec::new();
        for input in inputs.letters() {
            let mut a = g.arena.initial();
            let (mut ui, mut bits) = (0, 0u64);
            for (d, quant) in qs.iter().enumerate() {
                let bit = match quant.kind {
                    QuantKind::Forall => {
                        ui += 1;
                        input >> (ui - 1) & 1 == 1
                    }
                    QuantKind::Exists => {
                        let pos = g.position(q, a);
                        let t = s.strategy[pos].ok_or_else(|| {
                            Error::NoWitness(format!("no strategy at position {pos}"))
                        })?;
                        let (_, b) = g.split(t);
                        g.arena.valuation(b).1 >> d & 1 == 1
                    }
                };
                bits |= (bit as u64) << d;
                a = g.arena.position(d + 1, bits);
            }
            let out = exi
                .iter()
                .enumerate()
                .fold(0, |acc, (j, &d)| acc | ((bits >> d & 1) as Letter) << j);
            let t = g.automaton.step(q, g.letter(bits));
            let id = *index.entry(t).or_insert_with(|| {
                states.push(t);
                states.len() - 1
            });
            nrow.push(id);
            orow.push(out);
        }
        next.push(nrow);
        output.push(orow);
        k += 1;
    }
    Transducer::new(inputs, outputs, 0, next, output)
}

/// Run `t` against `adversary` and check the resulting word against the
/// matrix of `f`.
pub fn simulate_witness(t: &Transducer, f: &Formula, adversary: &LassoWord) -> Result<bool> {
    let mut props = f.prefix.props();
    props.sort();
    let alphabet = Alphabet::new(props)?;
    let d = determinize_with_budget(&ltl_to_nba(&f.matrix, &alphabet)?, DEFAULT_BUDGET)?;
    simulate_witness_with(t, &d, adversary)
}

/// As [`simulate_witness`] with the matrix automaton given.
pub fn simulate_witness_with(
    t: &Transducer,
    d: &ParityAutomaton,
    adversary: &LassoWord,
) -> Result<bool> {
    Ok(d.accepts(&induced_word(t, d.alphabet(), adversary)?))
}

/// The eventually periodic word produced by `t` against `adversary`.
pub fn induced_word(
    t: &Transducer,
    alphabet: &Alphabet,
    adversary: &LassoWord,
) -> Result<LassoWord> {
    if t.inputs.size() <= adversary_max(adversary) {
        return Err(Error::Alphabet("adversary letter outside the inputs".into()));
    }
    let mut seen: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    let mut letters = Vec::new();
    let (mut s, mut i) = (t.initial, 0);
    loop {
        if let Some(&start) = seen.get(&(s, i)) {
            let cycle = letters.split_off(start);
            return LassoWord::new(letters, cycle);
        }
        seen.insert((s, i), letters.len());
        let input = adversary.at(i);
        let (next, out) = t.step(s, input);
        let full = t.inputs.translate(input, alphabet)? | t.outputs.translate(out, alphabet)?;
        letters.push(full);
        s = next;
        i = adversary.succ(i);
    }
}

fn adversary_max(w: &LassoWord) -> usize {
    (0..w.len()).map(|i| w.at(i) as usize).max().unwrap_or(0)
}
