//! Büchi to parity determinization with Safra trees and dynamic names.
//!
//! Tree nodes carry names `1..=n` (n = number of Büchi states) that always
//! order nodes by age. After each step, removed nodes free their names and
//! younger nodes shift down. A transition gets priority `2e` when the
//! smallest name marked by a vertical merge is `e` and no smaller name was
//! removed or shifted, and `2f - 1` when `f` is the smallest removed name.
//! These are min-even priorities; the automaton stores them reversed so
//! that max-even acceptance applies.

use std::collections::HashMap;

use super::alphabet::Letter;
use super::bits::StateSet;
use super::dpa::ParityAutomaton;
use super::nba::BuchiAutomaton;
use crate::error::{Error, Result};

/// Default state budget.
pub const DEFAULT_BUDGET: usize = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct Node {
    name: u32,
    label: StateSet,
    children: Vec<Node>,
}

struct Ctx<'a> {
    nba: &'a BuchiAutomaton,
    accepting: StateSet,
    n: usize,
}

impl Ctx<'_> {
    fn spawn(&self, node: &mut Node, fresh: &mut u32) {
        for c in &mut node.children {
            self.spawn(c, fresh);
        }
        let acc = node.label.intersect(&self.accepting);
        if !acc.is_empty() {
            node.children.push(Node {
                name: *fresh,
                label: acc,
                children: Vec::new(),
            });
            *fresh += 1;
        }
    }

    fn post(&self, node: &mut Node, letter: Letter) {
        let mut next = StateSet::new(self.n);
        for q in node.label.iter() {
            for &t in self.nba.successors(q, letter) {
                next.insert(t);
            }
        }
        node.label = next;
        for c in &mut node.children {
            self.post(c, letter);
        }
    }
}

fn horizontal(node: &mut Node, forbidden: &StateSet) {
    node.label.subtract(forbidden);
    let mut acc = forbidden.clone();
    for c in &mut node.children {
        horizontal(c, &acc);
        acc.union_with(&c.label);
    }
}

fn collect_names(node: &Node, out: &mut Vec<u32>) {
    out.push(node.name);
    for c in &node.children {
        collect_names(c, out);
    }
}

fn remove_empty(node: &mut Node, removed: &mut Vec<u32>) {
    node.children.retain(|c| {
        if c.label.is_empty() {
            collect_names(c, removed);
            false
        } else {
            true
        }
    });
    for c in &mut node.children {
        remove_empty(c, removed);
    }
}

fn vertical(node: &mut Node, removed: &mut Vec<u32>, marked: &mut Vec<u32>) {
    if node.children.is_empty() {
        return;
    }
    let mut union = StateSet::new(0);
    for (i, c) in node.children.iter().enumerate() {
        if i == 0 {
            union = c.label.clone();
        } else {
            union.union_with(&c.label);
        }
    }
    if union == node.label {
        for c in &node.children {
            collect_names(c, removed);
        }
        node.children.clear();
        marked.push(node.name);
    } else {
        for c in &mut node.children {
            vertical(c, removed, marked);
        }
    }
}

fn rename(node: &mut Node, map: &HashMap<u32, u32>) {
    node.name = map[&node.name];
    for c in &mut node.children {
        rename(c, map);
    }
}

/// One Safra step; returns the successor tree and its min-even priority.
fn step(ctx: &Ctx, tree: &Option<Node>, letter: Letter) -> (Option<Node>, u32) {
    let n = ctx.n as u32;
    let none = 2 * n + 1;
    let Some(root) = tree else {
        return (None, none);
    };
    let mut root = root.clone();
    let mut fresh = n + 1;
    ctx.spawn(&mut root, &mut fresh);
    ctx.post(&mut root, letter);
    horizontal(&mut root, &StateSet::new(ctx.n));
    let mut removed = Vec::new();
    let mut marked = Vec::new();
    if root.label.is_empty() {
        collect_names(&root, &mut removed);
        let f = removed.iter().copied().filter(|&x| x <= n).min().unwrap_or(1);
        return (None, 2 * f - 1);
    }
    remove_empty(&mut root, &mut removed);
    vertical(&mut root, &mut removed, &mut marked);
    let f = removed.iter().copied().filter(|&x| x <= n).min();
    let e = marked.iter().copied().min();
    let prio = match (e, f) {
        (Some(e), Some(f)) if e < f => 2 * e,
        (Some(e), None) => 2 * e,
        (_, Some(f)) => 2 * f - 1,
        (None, None) => none,
    };
    let mut names = Vec::new();
    collect_names(&root, &mut names);
    names.sort_unstable();
    let map: HashMap<u32, u32> = names
        .iter()
        .enumerate()
        .map(|(i, &x)| (x, i as u32 + 1))
        .collect();
    rename(&mut root, &map);
    (Some(root), prio)
}

/// Deterministic parity automaton equivalent to `nba`.
pub fn determinize(nba: &BuchiAutomaton) -> Result<ParityAutomaton> {
    determinize_with_budget(nba, DEFAULT_BUDGET)
}

pub fn determinize_with_budget(nba: &BuchiAutomaton, budget: usize) -> Result<ParityAutomaton> {
    let nba = nba.trim();
    let n = nba.num_states();
    let mut accepting = StateSet::new(n);
    let mut init = StateSet::new(n);
    for q in 0..n {
        if nba.is_accepting(q) {
            accepting.insert(q);
        }
    }
    for &q in nba.initial() {
        init.insert(q);
    }
    let ctx = Ctx {
        nba: &nba,
        accepting,
        n,
    };
    let top = 2 * n as u32 + 2;
    let start = (!init.is_empty()).then(|| Node {
        name: 1,
        label: init,
        children: Vec::new(),
    });
    // A state is a tree together with the priority of the step entering it.
    let mut states: Vec<(Option<Node>, u32)> = vec![(start, 0)];
    let mut index: HashMap<(Option<Node>, u32), usize> = HashMap::new();
    index.insert(states[0].clone(), 0);
    let mut delta: Vec<Vec<usize>> = Vec::new();
    let alphabet = nba.alphabet().clone();
    let mut i = 0;
    while i < states.len() {
        let tree = states[i].0.clone();
        let mut row = Vec::with_capacity(alphabet.size());
        for l in alphabet.letters() {
            let (t, p) = step(&ctx, &tree, l);
            let key = (t, top - p);
            let id = match index.get(&key) {
                Some(&id) => id,
                None => {
                    if states.len() >= budget {
                        return Err(Error::guard(
                            "determinized states",
                            states.len() as u128 + 1,
                            budget as u128,
                        ));
                    }
                    states.push(key.clone());
                    index.insert(key, states.len() - 1);
                    states.len() - 1
                }
            };
            row.push(id);
        }
        delta.push(row);
        i += 1;
    }
    let priority = compress(states.iter().map(|s| s.1).collect());
    ParityAutomaton::new(alphabet, 0, delta, priority)
}

/// Map priorities onto `0..` keeping order and parity.
pub(crate) fn compress(priority: Vec<u32>) -> Vec<u32> {
    let mut used: Vec<u32> = priority.clone();
    used.sort_unstable();
    used.dedup();
    let mut map = HashMap::new();
    let mut next = 0u32;
    for p in used {
        if next % 2 != p % 2 {
            next += 1;
        }
        map.insert(p, next);
    }
    priority.iter().map(|p| map[p]).collect()
}
