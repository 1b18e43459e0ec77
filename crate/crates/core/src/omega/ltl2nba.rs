//! Tableau translation of LTL into Büchi automata.
//!
//! The formula is put in negation normal form over `{∧, ∨, X, U, R}`. A
//! tableau state is the set of obligations for the current position; each
//! state expands into covers (literals now, obligations next, postponed
//! untils). This yields a transition-based generalized Büchi automaton with
//! one mark per until, degeneralized with a level counter.

use std::collections::{BTreeSet, HashMap};

use super::alphabet::{Alphabet, Letter};
use super::nba::BuchiAutomaton;
use crate::error::{Error, Result};
use crate::formula::Ltl;

type Id = u32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Node {
    True,
    False,
    Lit(usize, bool),
    And(Id, Id),
    Or(Id, Id),
    Next(Id),
    Until(Id, Id),
    Release(Id, Id),
}

#[derive(Default)]
struct Pool {
    nodes: Vec<Node>,
    ids: HashMap<Node, Id>,
    untils: Vec<Id>,
}

impl Pool {
    fn mk(&mut self, n: Node) -> Id {
        let n = match n {
            Node::And(a, b) => match (self.nodes[a as usize], self.nodes[b as usize]) {
                (Node::False, _) | (_, Node::False) => Node::False,
                (Node::True, _) => return b,
                (_, Node::True) => return a,
                _ if a == b => return a,
                _ => Node::And(a.min(b), a.max(b)),
            },
            Node::Or(a, b) => match (self.nodes[a as usize], self.nodes[b as usize]) {
                (Node::True, _) | (_, Node::True) => Node::True,
                (Node::False, _) => return b,
                (_, Node::False) => return a,
                _ if a == b => return a,
                _ => Node::Or(a.min(b), a.max(b)),
            },
            Node::Until(_, b) | Node::Release(_, b)
                if matches!(self.nodes[b as usize], Node::True | Node::False) =>
            {
                return b
            }
            other => other,
        };
        if let Some(&id) = self.ids.get(&n) {
            return id;
        }
        let id = self.nodes.len() as Id;
        self.nodes.push(n);
        self.ids.insert(n, id);
        if let Node::Until(..) = n {
            self.untils.push(id);
        }
        id
    }

    fn constant(&mut self, b: bool) -> Id {
        self.mk(if b { Node::True } else { Node::False })
    }

    /// NNF of `ψ` (negated when `neg`).
    fn conv(&mut self, psi: &Ltl, neg: bool, alphabet: &Alphabet) -> Result<Id> {
        Ok(match psi {
            Ltl::True => self.constant(!neg),
            Ltl::False => self.constant(neg),
            Ltl::Atom(p) => {
                let i = alphabet
                    .index(p)
                    .ok_or_else(|| Error::Alphabet(format!("`{p}` is not in {alphabet}")))?;
                self.mk(Node::Lit(i, !neg))
            }
            Ltl::Not(a) => self.conv(a, !neg, alphabet)?,
            Ltl::And(a, b) | Ltl::Or(a, b) => {
                let x = self.conv(a, neg, alphabet)?;
                let y = self.conv(b, neg, alphabet)?;
                if matches!(psi, Ltl::And(..)) != neg {
                    self.mk(Node::And(x, y))
                } else {
                    self.mk(Node::Or(x, y))
                }
            }
            Ltl::Implies(a, b) => {
                let x = self.conv(a, !neg, alphabet)?;
                let y = self.conv(b, neg, alphabet)?;
                if neg {
                    self.mk(Node::And(x, y))
                } else {
                    self.mk(Node::Or(x, y))
                }
            }
            Ltl::Iff(a, b) => {
                let a1 = self.conv(a, false, alphabet)?;
                let a0 = self.conv(a, true, alphabet)?;
                let b1 = self.conv(b, neg, alphabet)?;
                let b0 = self.conv(b, !neg, alphabet)?;
                let l = self.mk(Node::And(a1, b1));
                let r = self.mk(Node::And(a0, b0));
                self.mk(Node::Or(l, r))
            }
            Ltl::Next(a) => {
                let x = self.conv(a, neg, alphabet)?;
                self.mk(Node::Next(x))
            }
            Ltl::Future(a) | Ltl::Globally(a) => {
                let x = self.conv(a, neg, alphabet)?;
                if matches!(psi, Ltl::Future(_)) != neg {
                    let t = self.constant(true);
                    self.mk(Node::Until(t, x))
                } else {
                    let f = self.constant(false);
                    self.mk(Node::Release(f, x))
                }
            }
            Ltl::Until(a, b) | Ltl::Release(a, b) => {
                let x = self.conv(a, neg, alphabet)?;
                let y = self.conv(b, neg, alphabet)?;
                if matches!(psi, Ltl::Until(..)) != neg {
                    self.mk(Node::Until(x, y))
                } else {
                    self.mk(Node::Release(x, y))
                }
            }
        })
    }
}

/// One cover of a tableau state.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct Cover {
    pos: Letter,
    neg: Letter,
    next: BTreeSet<Id>,
    postponed: u64,
}

fn expand(pool: &Pool, todo: &mut Vec<Id>, cur: Cover, out: &mut BTreeSet<Cover>) {
    let Some(id) = todo.pop() else {
        out.insert(cur);
        return;
    };
    let mut cur = cur;
    match pool.nodes[id as usize] {
        Node::True => expand(pool, todo, cur, out),
        Node::False => {}
        Node::Lit(i, b) => {
            let bit = 1 << i;
            if b {
                cur.pos |= bit;
            } else {
                cur.neg |= bit;
            }
            if cur.pos & cur.neg == 0 {
                expand(pool, todo, cur, out);
            }
        }
        Node::And(a, b) => {
            todo.push(a);
            todo.push(b);
            expand(pool, todo, cur, out);
            todo.pop();
            todo.pop();
        }
        Node::Or(a, b) => {
            for x in [a, b] {
                todo.push(x);
                expand(pool, todo, cur.clone(), out);
                todo.pop();
            }
        }
        Node::Next(a) => {
            cur.next.insert(a);
            expand(pool, todo, cur, out);
        }
        Node::Until(a, b) => {
            todo.push(b);
            expand(pool, todo, cur.clone(), out);
            todo.pop();
            let u = pool.untils.iter().position(|&x| x == id).expect("until");
            cur.next.insert(id);
            cur.postponed |= 1 << u;
            todo.push(a);
            expand(pool, todo, cur, out);
            todo.pop();
        }
        Node::Release(a, b) => {
            todo.push(a);
            todo.push(b);
            expand(pool, todo, cur.clone(), out);
            todo.pop();
            todo.pop();
            cur.next.insert(id);
            todo.push(b);
            expand(pool, todo, cur, out);
            todo.pop();
        }
    }
    todo.push(id);
}

/// Covers that are not subsumed by another cover with weaker requirements.
fn prune(covers: BTreeSet<Cover>) -> Vec<Cover> {
    let v: Vec<Cover> = covers.into_iter().collect();
    let weaker = |a: &Cover, b: &Cover| {
        a.pos & b.pos == a.pos
            && a.neg & b.neg == a.neg
            && a.next.is_subset(&b.next)
            && a.postponed & b.postponed == a.postponed
    };
    v.iter()
        .enumerate()
        .filter(|(i, b)| !v.iter().enumerate().any(|(j, a)| j != *i && weaker(a, b)))
        .map(|(_, c)| c.clone())
        .collect()
}

/// Büchi automaton for the models of `ψ` over `Val(alphabet)`.
pub fn ltl_to_nba(psi: &Ltl, alphabet: &Alphabet) -> Result<BuchiAutomaton> {
    let mut pool = Pool::default();
    let root = pool.conv(psi, false, alphabet)?;
    let k = pool.untils.len();
    if k > 63 {
        return Err(Error::guard("until subformulae", k as u128, 63));
    }
    let full: u64 = (1u64 << k) - 1;

    let mut sets: Vec<BTreeSet<Id>> = Vec::new();
    let mut index: HashMap<BTreeSet<Id>, usize> = HashMap::new();
    // Transitions of the generalized automaton: (from, letter, to, marks).
    let mut edges: Vec<(usize, Letter, usize, u64)> = Vec::new();
    let mut start = BTreeSet::from([root]);
    start.retain(|&x| pool.nodes[x as usize] != Node::True);
    index.insert(start.clone(), 0);
    sets.push(start);
    let mut i = 0;
    while i < sets.len() {
        let mut todo: Vec<Id> = sets[i].iter().copied().collect();
        let mut covers = BTreeSet::new();
        expand(
            &pool,
            &mut todo,
            Cover {
                pos: 0,
                neg: 0,
                next: BTreeSet::new(),
                postponed: 0,
            },
            &mut covers,
        );
        for c in prune(covers) {
            let target = match index.get(&c.next) {
                Some(&t) => t,
                None => {
                    sets.push(c.next.clone());
                    index.insert(c.next.clone(), sets.len() - 1);
                    sets.len() - 1
                }
            };
            let marks = full & !c.postponed;
            for l in alphabet.letters() {
                if l & c.pos == c.pos && l & c.neg == 0 {
                    edges.push((i, l, target, marks));
                }
            }
        }
        i += 1;
    }

    // Degeneralize: level j waits for mark j; level k is accepting.
    let mut nba = BuchiAutomaton::new(alphabet.clone());
    let mut ids: HashMap<(usize, usize), usize> = HashMap::new();
    let mut out_edges: Vec<Vec<(Letter, usize, u64)>> = vec![Vec::new(); sets.len()];
    for (from, l, to, m) in edges {
        out_edges[from].push((l, to, m));
    }
    let mut work = vec![(0usize, 0usize)];
    let s0 = nba.add_state(k == 0);
    ids.insert((0, 0), s0);
    nba.add_initial(s0);
    while let Some((q, lvl)) = work.pop() {
        let from = ids[&(q, lvl)];
        for &(l, to, m) in &out_edges[q] {
            let mut j = if lvl == k { 0 } else { lvl };
            while j < k && m >> j & 1 == 1 {
                j += 1;
            }
            if k == 0 {
                j = 0;
            }
            let key = (to, j);
            let t = match ids.get(&key) {
                Some(&t) => t,
                None => {
                    let t = nba.add_state(k == 0 || j == k);
                    ids.insert(key, t);
                    work.push(key);
                    t
                }
            };
            nba.add_transition(from, l, t);
        }
    }
    Ok(nba.trim())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse_ltl;
    use crate::omega::{eval_ltl, LassoWord};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn check(src: &str, props: &[&str]) {
        let psi = parse_ltl(src).unwrap();
        let ab = Alphabet::new(props.iter().map(|p| (*p).into()).collect()).unwrap();
        let nba = ltl_to_nba(&psi, &ab).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..300 {
            let w = LassoWord::random(&mut rng, ab.size(), 4, 4);
            assert_eq!(
                nba.accepts(&w),
                eval_ltl(&psi, &ab, &w).unwrap(),
                "{src} on {}",
                w.to_string_over(&ab)
            );
        }
    }

    #[test]
    fn true_is_one_state() {
        let ab = Alphabet::new(vec!["p".into()]).unwrap();
        let nba = ltl_to_nba(&Ltl::True, &ab).unwrap();
        assert_eq!(nba.num_states(), 1);
        assert!(nba.is_accepting(0));
    }

    #[test]
    fn against_lasso_evaluation() {
        check("G p", &["p"]);
        check("F G p", &["p"]);
        check("G F p", &["p"]);
        check("p <-> X q", &["p", "q"]);
        check("(p U q) R !p", &["p", "q"]);
        check("G (p -> F q) & !(q <-> X p)", &["p", "q"]);
        check("false", &["p"]);
    }
}
