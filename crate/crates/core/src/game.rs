//! Quantification-game arenas and their products with parity automata.

use crate::error::{Error, Result};
use crate::formula::{Ltl, Prefix, Prop, QuantKind, Quantifier, QuantSpec};
use crate::models::{trace_automata, KripkeStructure};
use crate::omega::{
    determinize_with_budget, ltl_to_nba, Alphabet, Letter, ParityAutomaton, DEFAULT_BUDGET,
};
use crate::parity::{ParityGame, Player};
use crate::prefix_canon::round_order;

/// Largest prefix an arena is built for.
pub const MAX_ARENA_PROPS: usize = 16;

/// The round structure of a behavioral prefix. Position `2^d - 1 + v` holds
/// the partial valuation of the first `d` quantified propositions whose bit
/// `i` is the value of quantifier `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arena {
    prefix: Prefix,
}

impl Arena {
    pub fn prefix(&self) -> &Prefix {
        &self.prefix
    }

    /// Number of quantified propositions.
    pub fn depth(&self) -> usize {
        self.prefix.len()
    }

    pub fn num_positions(&self) -> usize {
        (1 << (self.depth() + 1)) - 1
    }

    pub fn initial(&self) -> usize {
        0
    }

    pub fn position(&self, depth: usize, bits: u64) -> usize {
        (1 << depth) - 1 + bits as usize
    }

    /// `(depth, bits)` of a position.
    pub fn valuation(&self, pos: usize) -> (usize, u64) {
        let d = usize::BITS as usize - 1 - (pos + 1).leading_zeros() as usize;
        (d, (pos + 1 - (1 << d)) as u64)
    }

    pub fn owner(&self, pos: usize) -> Player {
        let (d, _) = self.valuation(pos);
        match self.prefix.quantifiers().get(d).map(|q| q.kind) {
            Some(QuantKind::Exists) => Player::Eloise,
            _ => Player::Abelard,
        }
    }

    pub fn is_observable(&self, pos: usize) -> bool {
        self.valuation(pos).0 == self.depth()
    }

    pub fn successors(&self, pos: usize) -> Vec<usize> {
        let (d, v) = self.valuation(pos);
        if d == self.depth() {
            vec![self.initial()]
        } else {
            vec![self.position(d + 1, v), self.position(d + 1, v | 1 << d)]
        }
    }

    /// Human-readable valuation such as `{q=1 p=0}`.
    pub fn describe(&self, pos: usize) -> String {
        let (d, v) = self.valuation(pos);
        let parts: Vec<String> = self.prefix.quantifiers()[..d]
            .iter()
            .enumerate()
            .map(|(i, q)| format!("{}={}", q.prop, v >> i & 1))
            .collect();
        format!("{{{}}}", parts.join(" "))
    }
}

/// The arena of a behavioral prefix.
pub fn build_arena(prefix: &Prefix) -> Result<Arena> {
    if let Some(q) = prefix.iter().find(|q| !q.spec.is_b()) {
        return Err(Error::NotBehavioral(q.prop.to_string()));
    }
    if prefix.len() > MAX_ARENA_PROPS {
        return Err(Error::guard(
            "arena propositions",
            prefix.len() as u128,
            MAX_ARENA_PROPS as u128,
        ));
    }
    Ok(Arena {
        prefix: prefix.clone(),
    })
}

/// A parity game over `Q × arena` together with the pieces needed to read
/// its positions back.
#[derive(Clone, Debug)]
pub struct ProductGame {
    pub arena: Arena,
    pub automaton: ParityAutomaton,
    pub game: ParityGame,
    letter_map: Vec<usize>,
}

impl ProductGame {
    /// Position of automaton state `q` at arena position `a`.
    pub fn position(&self, q: usize, a: usize) -> usize {
        q * self.arena.num_positions() + a
    }

    /// `(automaton state, arena position)` of a game position.
    pub fn split(&self, pos: usize) -> (usize, usize) {
        let n = self.arena.num_positions();
        (pos / n, pos % n)
    }

    /// Letter of the automaton alphabet for a full arena valuation.
    pub fn letter(&self, bits: u64) -> Letter {
        encode(&self.letter_map, bits)
    }

    pub fn to_dot(&self) -> String {
        self.game.to_dot(|v| {
            let (q, a) = self.split(v);
            format!("q{q} {}", self.arena.describe(a))
        })
    }
}

fn letter_map(arena: &Arena, alphabet: &Alphabet) -> Result<Vec<usize>> {
    let props = arena.prefix.props();
    let mut sorted = props.clone();
    sorted.sort();
    let mut own: Vec<Prop> = alphabet.props().to_vec();
    own.sort();
    if sorted != own {
        return Err(Error::Alphabet(format!(
            "automaton over {alphabet} but prefix quantifies {}",
            props.iter().map(Prop::name).collect::<Vec<_>>().join(" ")
        )));
    }
    props.iter().map(|p| alphabet.require(p)).collect()
}

fn encode(map: &[usize], bits: u64) -> Letter {
    map.iter()
        .enumerate()
        .fold(0, |acc, (i, &j)| acc | ((bits >> i & 1) as Letter) << j)
}

/// Product of the arena of `prefix` with `d`. The automaton advances only on
/// resets, reading the valuation just completed; positions `(q, ∅)` carry
/// `priority(q) + 2` and every other position carries 0.
pub fn build_sat_game(prefix: &Prefix, d: &ParityAutomaton) -> Result<ProductGame> {
    let arena = build_arena(prefix)?;
    let map = letter_map(&arena, d.alphabet())?;
    let na = arena.num_positions();
    let total = (d.num_states() as u128) * na as u128;
    if total > usize::MAX as u128 >> 8 {
        return Err(Error::guard("game positions", total, usize::MAX as u128 >> 8));
    }
    let total = total as usize;
    let mut owner = Vec::with_capacity(total);
    let mut succ = Vec::with_capacity(total);
    let mut priority = Vec::with_capacity(total);
    let mut observable = Vec::with_capacity(total);
    for q in 0..d.num_states() {
        for a in 0..na {
            owner.push(arena.owner(a));
            observable.push(arena.is_observable(a));
            priority.push(if a == arena.initial() {
                d.priority(q) + 2
            } else {
                0
            });
            let (depth, bits) = arena.valuation(a);
            let moves = if depth == arena.depth() {
                let t = d.step(q, encode(&map, bits));
                vec![t * na + arena.initial()]
            } else {
                arena.successors(a).into_iter().map(|b| q * na + b).collect()
            };
            succ.push(moves);
        }
    }
    let game = ParityGame::new(
        owner,
        succ,
        priority,
        d.initial() * na + arena.initial(),
        observable,
    )?;
    Ok(ProductGame {
        arena,
        automaton: d.clone(),
        game,
        letter_map: map,
    })
}

/// The model-checking game: Abelard first picks the values of `ap(K)` (in
/// name order), then the rounds of `prefix` follow. Eloise wins a play whose
/// valuation stream either leaves the traces of `K` or satisfies `psi`.
pub fn build_mc_game(k: &KripkeStructure, prefix: &Prefix, psi: &Ltl) -> Result<ProductGame> {
    build_mc_game_with_budget(k, prefix, psi, DEFAULT_BUDGET)
}

pub fn build_mc_game_with_budget(
    k: &KripkeStructure,
    prefix: &Prefix,
    psi: &Ltl,
    budget: usize,
) -> Result<ProductGame> {
    if let Some(p) = prefix.props().iter().find(|p| k.alphabet().index(p).is_some()) {
        return Err(Error::Alphabet(format!(
            "`{p}` is both quantified and a proposition of the structure"
        )));
    }
    let bound = prefix.props();
    if let Some(p) = psi
        .props()
        .into_iter()
        .find(|p| !bound.contains(p) && k.alphabet().index(p).is_none())
    {
        return Err(Error::Unbound(p.to_string()));
    }
    let mut qs: Vec<Quantifier> = k
        .props()
        .iter()
        .map(|p| Quantifier::new(QuantKind::Forall, p.clone(), QuantSpec::b()))
        .collect();
    qs.extend(prefix.iter().cloned());
    let full = round_order(&Prefix::new(qs)?)?;
    let mut all: Vec<Prop> = full.props();
    all.sort();
    let alphabet = Alphabet::new(all)?;
    let d = determinize_with_budget(&ltl_to_nba(psi, &alphabet)?, budget)?;
    let (_, off_trace) = trace_automata(k)?;
    let winning = d.union_cosafety(&off_trace.widen(&alphabet)?)?;
    build_sat_game(&full, &winning)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse;
    use crate::models::parse_kripke;
    use crate::parity::solve;

    fn prefix(src: &str) -> Prefix {
        parse(&format!("{src} true")).unwrap().prefix
    }

    #[test]
    fn arena_counts() {
        for n in 0..=6 {
            let qs = (0..n)
                .map(|i| {
                    let kind = if i % 2 == 0 { QuantKind::Exists } else { QuantKind::Forall };
                    Quantifier::new(kind, Prop::new(format!("a{i}")), QuantSpec::b())
                })
                .collect();
            let a = build_arena(&Prefix::new(qs).unwrap()).unwrap();
            assert_eq!(a.num_positions(), (1 << (n + 1)) - 1);
            let obs = (0..a.num_positions()).filter(|&p| a.is_observable(p)).count();
            assert_eq!(obs, 1 << n);
        }
    }

    #[test]
    fn arena_owners() {
        let a = build_arena(&prefix("E a1:B. A a2:B. E a3:B.")).unwrap();
        assert_eq!(a.owner(a.initial()), Player::Eloise);
        let a1_false = a.position(1, 0);
        assert_eq!(a.describe(a1_false), "{a1=0}");
        assert_eq!(a.owner(a1_false), Player::Abelard);
        assert_eq!(a.owner(a.position(3, 5)), Player::Abelard);
        assert_eq!(a.successors(a.position(3, 5)), vec![0]);
    }

    #[test]
    fn rejects_non_behavioral() {
        assert!(matches!(
            build_arena(&prefix("E q.")),
            Err(Error::NotBehavioral(_))
        ));
    }

    #[test]
    fn product_size_and_alphabet() {
        let ab = Alphabet::new(vec!["q".into()]).unwrap();
        let d = ParityAutomaton::new(ab, 0, vec![vec![0, 1], vec![1, 1]], vec![1, 2]).unwrap();
        let g = build_sat_game(&prefix("E q:B."), &d).unwrap();
        assert_eq!(g.game.len(), 6);
        assert_eq!(solve(&g.game).winner[g.game.initial()], Player::Eloise);
        assert!(matches!(
            build_sat_game(&prefix("E r:B."), &d),
            Err(Error::Alphabet(_))
        ));
    }

    #[test]
    fn mc_self_loop() {
        let k = parse_kripke("kripke\naps: p\ninit: s\nstate s {p}\nedge s s\n").unwrap();
        let wins = |src: &str| {
            let f = parse(src).unwrap();
            let g = build_mc_game(&k, &f.prefix, &f.matrix).unwrap();
            solve(&g.game).winner[g.game.initial()] == Player::Eloise
        };
        assert!(wins("G p"));
        assert!(!wins("G !p"));
        assert!(wins("E q:B. G (q <-> p)"));
    }
}
