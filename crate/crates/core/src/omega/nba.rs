//! Nondeterministic Büchi automata.

use super::alphabet::{Alphabet, Letter};
use super::graph::{on_cycle, reachable, scc_ids};
use super::lasso::LassoWord;
use crate::error::{Error, Result};
use crate::formula::Prop;

/// State-based Büchi automaton over `Val(P)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BuchiAutomaton {
    alphabet: Alphabet,
    initial: Vec<usize>,
    accepting: Vec<bool>,
    /// `trans[s][letter]`: sorted successors.
    trans: Vec<Vec<Vec<usize>>>,
}

impl BuchiAutomaton {
    /// An automaton with no states yet.
    pub fn new(alphabet: Alphabet) -> Self {
        BuchiAutomaton {
            alphabet,
            initial: Vec::new(),
            accepting: Vec::new(),
            trans: Vec::new(),
        }
    }

    pub fn add_state(&mut self, accepting: bool) -> usize {
        self.accepting.push(accepting);
        self.trans.push(vec![Vec::new(); self.alphabet.size()]);
        self.trans.len() - 1
    }

    pub fn add_initial(&mut self, s: usize) {
        if !self.initial.contains(&s) {
            self.initial.push(s);
            self.initial.sort_unstable();
        }
    }

    pub fn add_transition(&mut self, from: usize, letter: Letter, to: usize) {
        let v = &mut self.trans[from][letter as usize];
        if let Err(pos) = v.binary_search(&to) {
            v.insert(pos, to);
        }
    }

    /// Accepts every word.
    pub fn universal(alphabet: Alphabet) -> Self {
        let mut a = BuchiAutomaton::new(alphabet);
        let s = a.add_state(true);
        a.add_initial(s);
        for l in a.alphabet.letters().collect::<Vec<_>>() {
            a.add_transition(s, l, s);
        }
        a
    }

    /// Accepts no word.
    pub fn empty(alphabet: Alphabet) -> Self {
        let mut a = BuchiAutomaton::new(alphabet);
        let s = a.add_state(false);
        a.add_initial(s);
        a
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn num_states(&self) -> usize {
        self.trans.len()
    }

    pub fn initial(&self) -> &[usize] {
        &self.initial
    }

    pub fn is_accepting(&self, s: usize) -> bool {
        self.accepting[s]
    }

    pub fn successors(&self, s: usize, letter: Letter) -> &[usize] {
        &self.trans[s][letter as usize]
    }

    pub fn num_transitions(&self) -> usize {
        self.trans.iter().flatten().map(Vec::len).sum()
    }

    fn adjacency(&self) -> Vec<Vec<usize>> {
        self.trans
            .iter()
            .map(|row| {
                let mut v: Vec<usize> = row.iter().flatten().copied().collect();
                v.sort_unstable();
                v.dedup();
                v
            })
            .collect()
    }

    /// Membership of a lasso: an accepting cycle in the product with the
    /// lasso graph is reachable.
    pub fn accepts(&self, word: &LassoWord) -> bool {
        let m = word.len();
        let node = |s: usize, i: usize| s * m + i;
        let adj: Vec<Vec<usize>> = (0..self.num_states() * m)
            .map(|v| {
                let (s, i) = (v / m, v % m);
                let j = word.succ(i);
                self.successors(s, word.at(i))
                    .iter()
                    .map(|&t| node(t, j))
                    .collect()
            })
            .collect();
        let seen = reachable(&adj, self.initial.iter().map(|&s| node(s, 0)));
        let (comp, _) = scc_ids(&adj);
        let cyc = on_cycle(&adj, &comp);
        (0..adj.len()).any(|v| seen[v] && cyc[v] && self.accepting[v / m])
    }

    /// Language emptiness via strongly connected components.
    pub fn is_empty(&self) -> bool {
        let adj = self.adjacency();
        let seen = reachable(&adj, self.initial.iter().copied());
        let (comp, _) = scc_ids(&adj);
        let cyc = on_cycle(&adj, &comp);
        !(0..adj.len()).any(|v| seen[v] && cyc[v] && self.accepting[v])
    }

    /// Language emptiness via nested depth-first search.
    pub fn is_empty_nested_dfs(&self) -> bool {
        let adj = self.adjacency();
        let n = adj.len();
        let mut blue = vec![false; n];
        let mut red = vec![false; n];
        for &root in &self.initial {
            if blue[root] {
                continue;
            }
            blue[root] = true;
            let mut stack = vec![(root, 0usize)];
            while let Some(&mut (v, ref mut i)) = stack.last_mut() {
                if *i < adj[v].len() {
                    let w = adj[v][*i];
                    *i += 1;
                    if !blue[w] {
                        blue[w] = true;
                        stack.push((w, 0));
                    }
                    continue;
                }
                stack.pop();
                // Post-order: search for a cycle back to an accepting seed.
                if self.accepting[v] && red_search(&adj, v, &mut red) {
                    return false;
                }
            }
        }
        true
    }

    /// Drop states that are unreachable or cannot reach an accepting cycle.
    pub fn trim(&self) -> BuchiAutomaton {
        let adj = self.adjacency();
        let n = adj.len();
        let seen = reachable(&adj, self.initial.iter().copied());
        let (comp, ncomp) = scc_ids(&adj);
        let cyc = on_cycle(&adj, &comp);
        let mut good = vec![false; ncomp];
        for v in 0..n {
            if cyc[v] && self.accepting[v] {
                good[comp[v]] = true;
            }
        }
        let mut rev = vec![Vec::new(); n];
        for (v, succ) in adj.iter().enumerate() {
            for &w in succ {
                rev[w].push(v);
            }
        }
        let live = reachable(&rev, (0..n).filter(|&v| good[comp[v]]));
        let keep: Vec<usize> = (0..n).filter(|&v| seen[v] && live[v]).collect();
        if keep.is_empty() {
            return BuchiAutomaton::empty(self.alphabet.clone());
        }
        let mut map = vec![usize::MAX; n];
        let mut out = BuchiAutomaton::new(self.alphabet.clone());
        for &v in &keep {
            map[v] = out.add_state(self.accepting[v]);
        }
        for &v in &keep {
            for l in self.alphabet.letters() {
                for &w in self.successors(v, l) {
                    if map[w] != usize::MAX {
                        out.add_transition(map[v], l, map[w]);
                    }
                }
            }
        }
        for &s in &self.initial {
            if map[s] != usize::MAX {
                out.add_initial(map[s]);
            }
        }
        out
    }

    /// `∃ap`: forget `ap` in every letter.
    pub fn project(&self, ap: &Prop) -> Result<BuchiAutomaton> {
        let i = self.alphabet.require(ap)?;
        let alphabet = self.alphabet.without(i);
        let mut out = BuchiAutomaton::new(alphabet.clone());
        for s in 0..self.num_states() {
            out.add_state(self.accepting[s]);
        }
        for s in 0..self.num_states() {
            for l in alphabet.letters() {
                for b in [false, true] {
                    for &t in self.successors(s, Alphabet::inject(l, i, b)) {
                        out.add_transition(s, l, t);
                    }
                }
            }
        }
        for &s in &self.initial {
            out.add_initial(s);
        }
        Ok(out)
    }

    /// Re-express the automaton over a larger alphabet; new propositions are
    /// unconstrained.
    pub fn widen(&self, alphabet: &Alphabet) -> Result<BuchiAutomaton> {
        for p in self.alphabet.props() {
            alphabet.require(p)?;
        }
        let back: Vec<usize> = self
            .alphabet
            .props()
            .iter()
            .map(|p| alphabet.index(p).expect("checked"))
            .collect();
        let mut out = BuchiAutomaton::new(alphabet.clone());
        for s in 0..self.num_states() {
            out.add_state(self.accepting[s]);
        }
        for l in alphabet.letters() {
            let small = back
                .iter()
                .enumerate()
                .fold(0, |acc, (i, &j)| acc | ((l >> j) & 1) << i);
            for s in 0..self.num_states() {
                for &t in self.successors(s, small) {
                    out.add_transition(s, l, t);
                }
            }
        }
        for &s in &self.initial {
            out.add_initial(s);
        }
        Ok(out)
    }

    /// Check that two automata share an alphabet.
    pub fn require_alphabet(&self, alphabet: &Alphabet) -> Result<()> {
        if &self.alphabet != alphabet {
            return Err(Error::Alphabet(format!(
                "expected {alphabet}, automaton reads {}",
                self.alphabet
            )));
        }
        Ok(())
    }
}

fn red_search(adj: &[Vec<usize>], seed: usize, red: &mut [bool]) -> bool {
    let mut stack = vec![seed];
    while let Some(v) = stack.pop() {
        for &w in &adj[v] {
            if w == seed {
                return true;
            }
            if !red[w] {
                red[w] = true;
                stack.push(w);
            }
        }
    }
    false
}
