//! Deterministic parity automata, max-even acceptance.

use std::collections::HashMap;

use super::alphabet::{Alphabet, Letter};
use super::lasso::LassoWord;
use super::nba::BuchiAutomaton;
use crate::error::{Error, Result};

/// Complete deterministic automaton; a run is accepting iff the largest
/// priority seen infinitely often is even.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParityAutomaton {
    alphabet: Alphabet,
    initial: usize,
    /// `delta[s][letter]`.
    delta: Vec<Vec<usize>>,
    priority: Vec<u32>,
}

impl ParityAutomaton {
    pub fn new(
        alphabet: Alphabet,
        initial: usize,
        delta: Vec<Vec<usize>>,
        priority: Vec<u32>,
    ) -> Result<Self> {
        let n = delta.len();
        if priority.len() != n || initial >= n {
            return Err(Error::Domain("malformed parity automaton".into()));
        }
        for row in &delta {
            if row.len() != alphabet.size() || row.iter().any(|&t| t >= n) {
                return Err(Error::Domain("parity automaton is not complete".into()));
            }
        }
        Ok(ParityAutomaton {
            alphabet,
            initial,
            delta,
            priority,
        })
    }

    /// Accepts every word.
    pub fn universal(alphabet: Alphabet) -> Self {
        let row = vec![0; alphabet.size()];
        ParityAutomaton {
            alphabet,
            initial: 0,
            delta: vec![row],
            priority: vec![0],
        }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn num_states(&self) -> usize {
        self.delta.len()
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn step(&self, s: usize, letter: Letter) -> usize {
        self.delta[s][letter as usize]
    }

    pub fn priority(&self, s: usize) -> u32 {
        self.priority[s]
    }

    pub fn max_priority(&self) -> u32 {
        self.priority.iter().copied().max().unwrap_or(0)
    }

    /// Run on the lasso and report the largest priority on its cycle.
    pub fn accepts(&self, word: &LassoWord) -> bool {
        let mut s = self.initial;
        for &l in &word.stem {
            s = self.step(s, l);
        }
        // Iterate the cycle until the state at its start repeats.
        let mut seen: HashMap<usize, usize> = HashMap::new();
        let mut starts = Vec::new();
        while !seen.contains_key(&s) {
            seen.insert(s, starts.len());
            starts.push(s);
            for &l in &word.cycle {
                s = self.step(s, l);
            }
        }
        let mut best = 0;
        let mut t = s;
        for _ in seen[&s]..starts.len() {
            for &l in &word.cycle {
                t = self.step(t, l);
                best = best.max(self.priority[t]);
            }
        }
        best % 2 == 0
    }

    /// Shift every priority by one, complementing the language.
    pub fn complement(&self) -> ParityAutomaton {
        ParityAutomaton {
            priority: self.priority.iter().map(|p| p + 1).collect(),
            ..self.clone()
        }
    }

    /// Büchi automaton with the same language.
    pub fn to_nba(&self) -> BuchiAutomaton {
        let n = self.num_states();
        let succ = |s: usize, l: Letter| vec![self.step(s, l)];
        parity_to_buchi(&self.alphabet, n, &[self.initial], &self.priority, succ)
    }

    /// Re-express the automaton over a larger alphabet; new propositions are
    /// ignored.
    pub fn widen(&self, alphabet: &Alphabet) -> Result<ParityAutomaton> {
        let back: Vec<usize> = self
            .alphabet
            .props()
            .iter()
            .map(|p| alphabet.require(p))
            .collect::<Result<_>>()?;
        let delta = self
            .delta
            .iter()
            .map(|row| {
                alphabet
                    .letters()
                    .map(|l| {
                        let small = back
                            .iter()
                            .enumerate()
                            .fold(0, |acc, (i, &j)| acc | ((l >> j) & 1) << i);
                        row[small as usize]
                    })
                    .collect()
            })
            .collect();
        ParityAutomaton::new(alphabet.clone(), self.initial, delta, self.priority.clone())
    }

    /// Synchronous product, priorities combined by `prio`.
    fn product_with(
        &self,
        other: &ParityAutomaton,
        prio: impl Fn(u32, u32) -> u32,
    ) -> Result<ParityAutomaton> {
        if self.alphabet != other.alphabet {
            return Err(Error::Alphabet(format!(
                "product of automata over {} and {}",
                self.alphabet, other.alphabet
            )));
        }
        let mut index: HashMap<(usize, usize), usize> = HashMap::new();
        let mut pairs = vec![(self.initial, other.initial)];
        index.insert(pairs[0], 0);
        let mut delta = Vec::new();
        let mut i = 0;
        while i < pairs.len() {
            let (a, b) = pairs[i];
            let mut row = Vec::with_capacity(self.alphabet.size());
            for l in self.alphabet.letters() {
                let key = (self.step(a, l), other.step(b, l));
                let t = *index.entry(key).or_insert_with(|| {
                    pairs.push(key);
                    pairs.len() - 1
                });
                row.push(t);
            }
            delta.push(row);
            i += 1;
        }
        let priority = pairs
            .iter()
            .map(|&(a, b)| prio(self.priority[a], other.priority[b]))
            .collect();
        ParityAutomaton::new(self.alphabet.clone(), 0, delta, priority)
    }

    /// `L(self) ∪ L(guard)` for a co-safety `guard`: its even-priority
    /// states are absorbing and exactly the accepting ones.
    pub fn union_cosafety(&self, guard: &ParityAutomaton) -> Result<ParityAutomaton> {
        let top = self.max_priority() + 2;
        let top = top + top % 2;
        self.product_with(guard, |p, g| if g % 2 == 0 { top } else { p })
    }
}

/// Nondeterministic parity to Büchi: guess the even priority `d` that will
/// dominate, then stay below it and visit it infinitely often.
pub(crate) fn parity_to_buchi<F>(
    alphabet: &Alphabet,
    n: usize,
    initial: &[usize],
    priority: &[u32],
    succ: F,
) -> BuchiAutomaton
where
    F: Fn(usize, Letter) -> Vec<usize>,
{
    let mut evens: Vec<u32> = priority.iter().copied().filter(|p| p % 2 == 0).collect();
    evens.sort_unstable();
    evens.dedup();
    let copies = evens.len() + 1;
    // State (q, c): c = 0 is the guessing copy, c = i + 1 commits to evens[i].
    let id = |q: usize, c: usize| q * copies + c;
    let mut nba = BuchiAutomaton::new(alphabet.clone());
    for q in 0..n {
        nba.add_state(false);
        for &d in &evens {
            nba.add_state(priority[q] == d);
        }
    }
    for q in 0..n {
        for l in alphabet.letters() {
            for t in succ(q, l) {
                nba.add_transition(id(q, 0), l, id(t, 0));
                for (i, &d) in evens.iter().enumerate() {
                    if priority[t] <= d {
                        nba.add_transition(id(q, 0), l, id(t, i + 1));
                        if priority[q] <= d {
                            nba.add_transition(id(q, i + 1), l, id(t, i + 1));
                        }
                    }
                }
            }
        }
    }
    for &q in initial {
        nba.add_initial(id(q, 0));
        for (i, &d) in evens.iter().enumerate() {
            if priority[q] <= d {
                nba.add_initial(id(q, i + 1));
            }
        }
    }
    nba.trim()
}
