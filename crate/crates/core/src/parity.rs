//! Parity games under max-even acceptance.

use std::collections::VecDeque;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::omega::graph::scc_ids;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Player {
    Eloise,
    Abelard,
}

impl Player {
    pub fn opponent(self) -> Player {
        match self {
            Player::Eloise => Player::Abelard,
            Player::Abelard => Player::Eloise,
        }
    }

    /// The player favoured by a priority.
    pub fn of_priority(p: u32) -> Player {
        if p % 2 == 0 {
            Player::Eloise
        } else {
            Player::Abelard
        }
    }
}

/// A sinkless game graph with total priorities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParityGame {
    owner: Vec<Player>,
    succ: Vec<Vec<usize>>,
    priority: Vec<u32>,
    initial: usize,
    observable: Vec<bool>,
}

impl ParityGame {
    pub fn new(
        owner: Vec<Player>,
        succ: Vec<Vec<usize>>,
        priority: Vec<u32>,
        initial: usize,
        observable: Vec<bool>,
    ) -> Result<Self> {
        let n = owner.len();
        if succ.len() != n || priority.len() != n || observable.len() != n || initial >= n {
            return Err(Error::Domain("malformed parity game".into()));
        }
        for (v, s) in succ.iter().enumerate() {
            if s.is_empty() {
                return Err(Error::Domain(format!("position {v} has no move")));
            }
            if s.iter().any(|&w| w >= n) {
                return Err(Error::Domain(format!("position {v} moves out of range")));
            }
        }
        Ok(ParityGame {
            owner,
            succ,
            priority,
            initial,
            observable,
        })
    }

    pub fn len(&self) -> usize {
        self.owner.len()
    }

    pub fn is_empty(&self) -> bool {
        self.owner.is_empty()
    }

    pub fn owner(&self, v: usize) -> Player {
        self.owner[v]
    }

    pub fn successors(&self, v: usize) -> &[usize] {
        &self.succ[v]
    }

    pub fn priority(&self, v: usize) -> u32 {
        self.priority[v]
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn is_observable(&self, v: usize) -> bool {
        self.observable[v]
    }

    pub fn num_edges(&self) -> usize {
        self.succ.iter().map(Vec::len).sum()
    }

    pub fn max_priority(&self) -> u32 {
        self.priority.iter().copied().max().unwrap_or(0)
    }

    /// DOT rendering: circles for Eloise, boxes for Abelard.
    pub fn to_dot(&self, names: impl Fn(usize) -> String) -> String {
        let mut out = String::from("digraph game {\n");
        for v in 0..self.len() {
            let shape = match self.owner[v] {
                Player::Eloise => "circle",
                Player::Abelard => "box",
            };
            let style = if self.observable[v] { ", style=bold" } else { "" };
            let _ = writeln!(
                out,
                "  v{v} [label=\"{}\\n{}\", shape={shape}{style}];",
                names(v),
                self.priority[v]
            );
        }
        let _ = writeln!(out, "  init [shape=point];\n  init -> v{};", self.initial);
        for v in 0..self.len() {
            for &w in &self.succ[v] {
                let _ = writeln!(out, "  v{v} -> v{w};");
            }
        }
        out.push_str("}\n");
        out
    }
}

/// Winning regions and positional strategies.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution {
    /// Winner of every position.
    pub winner: Vec<Player>,
    /// For positions won by their owner, the chosen successor.
    pub strategy: Vec<Option<usize>>,
}

impl Solution {
    pub fn region(&self, p: Player) -> Vec<usize> {
        (0..self.winner.len()).filter(|&v| self.winner[v] == p).collect()
    }

    /// Winner per position and strategy edges, one per line.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for (v, w) in self.winner.iter().enumerate() {
            let who = match w {
                Player::Eloise => "E",
                Player::Abelard => "A",
            };
            match self.strategy[v] {
                Some(t) => {
                    let _ = writeln!(out, "{v} {who} -> {t}");
                }
                None => {
                    let _ = writeln!(out, "{v} {who}");
                }
            }
        }
        out
    }
}

struct Solver<'a> {
    g: &'a ParityGame,
    pred: Vec<Vec<usize>>,
    strategy: Vec<Option<usize>>,
}

impl Solver<'_> {
    /// Attractor of `target` for `p` inside `live`, recording attracting
    /// moves of `p` in `self.strategy`.
    fn attract(&mut self, live: &[bool], target: &[usize], p: Player) -> Vec<bool> {
        let g = self.g;
        let mut inside = vec![false; g.len()];
        let mut count: Vec<usize> = (0..g.len())
            .map(|v| {
                if live[v] {
                    g.succ[v].iter().filter(|&&w| live[w]).count()
                } else {
                    0
                }
            })
            .collect();
        let mut queue: VecDeque<usize> = VecDeque::new();
        for &t in target {
            if !inside[t] {
                inside[t] = true;
                queue.push_back(t);
            }
        }
        while let Some(w) = queue.pop_front() {
            for &v in &self.pred[w] {
                if !live[v] || inside[v] {
                    continue;
                }
                if g.owner[v] == p {
                    inside[v] = true;
                    self.strategy[v] = Some(w);
                    queue.push_back(v);
                } else {
                    count[v] -= 1;
                    if count[v] == 0 {
                        inside[v] = true;
                        queue.push_back(v);
                    }
                }
            }
        }
        inside
    }

    /// Zielonka's recursion on the subgame `live`; returns Eloise's region.
    fn solve(&mut self, live: &[bool]) -> Vec<bool> {
        let g = self.g;
        let n = g.len();
        let Some(d) = (0..n).filter(|&v| live[v]).map(|v| g.priority[v]).max() else {
            return vec![false; n];
        };
        let p = Player::of_priority(d);
        let top: Vec<usize> = (0..n).filter(|&v| live[v] && g.priority[v] == d).collect();
        let a = self.attract(live, &top, p);
        for &v in &top {
            if g.owner[v] == p {
                self.strategy[v] = g.succ[v].iter().copied().find(|&w| live[w]);
            }
        }
        let rest: Vec<bool> = (0..n).map(|v| live[v] && !a[v]).collect();
        let w_even = self.solve(&rest);
        let opp_wins: Vec<usize> = (0..n)
            .filter(|&v| rest[v] && (w_even[v] != (p == Player::Eloise)))
            .collect();
        if opp_wins.is_empty() {
            return (0..n)
                .map(|v| live[v] && p == Player::Eloise)
                .collect();
        }
        let b = self.attract(live, &opp_wins, p.opponent());
        let rest2: Vec<bool> = (0..n).map(|v| live[v] && !b[v]).collect();
        let w2 = self.solve(&rest2);
        (0..n)
            .map(|v| {
                if !live[v] {
                    false
                } else if b[v] {
                    p.opponent() == Player::Eloise
                } else {
                    w2[v]
                }
            })
            .collect()
    }
}

/// Zielonka's recursive algorithm.
pub fn solve(g: &ParityGame) -> Solution {
    let n = g.len();
    let mut pred = vec![Vec::new(); n];
    for v in 0..n {
        for &w in &g.succ[v] {
            pred[w].push(v);
        }
    }
    let mut s = Solver {
        g,
        pred,
        strategy: vec![None; n],
    };
    let eloise = s.solve(&vec![true; n]);
    let winner: Vec<Player> = eloise
        .iter()
        .map(|&e| if e { Player::Eloise } else { Player::Abelard })
        .collect();
    let strategy = (0..n)
        .map(|v| {
            if winner[v] == g.owner[v] {
                s.strategy[v]
            } else {
                None
            }
        })
        .collect();
    Solution { winner, strategy }
}

/// Largest game accepted by [`brute_solve`].
pub const BRUTE_LIMIT: usize = 12;

/// Positions from which `p` wins when `p` plays the positional strategy
/// `choice` and the opponent moves freely.
pub fn winning_with(g: &ParityGame, p: Player, choice: &[Option<usize>]) -> Vec<bool> {
    let n = g.len();
    let adj: Vec<Vec<usize>> = (0..n)
        .map(|v| match (g.owner[v] == p, choice[v]) {
            (true, Some(w)) => vec![w],
            _ => g.succ[v].clone(),
        })
        .collect();
    // A node is bad if it sits on a cycle whose largest priority favours
    // the opponent.
    let mut bad = vec![false; n];
    for d in 0..=g.max_priority() {
        if Player::of_priority(d) == p {
            continue;
        }
        let sub: Vec<Vec<usize>> = (0..n)
            .map(|v| {
                if g.priority[v] <= d {
                    adj[v].iter().copied().filter(|&w| g.priority[w] <= d).collect()
                } else {
                    Vec::new()
                }
            })
            .collect();
        let (comp, ncomp) = scc_ids(&sub);
        let mut size = vec![0usize; ncomp];
        for &c in &comp {
            size[c] += 1;
        }
        for v in 0..n {
            if g.priority[v] == d && (size[comp[v]] > 1 || sub[v].contains(&v)) {
                bad[v] = true;
            }
        }
    }
    let mut rev = vec![Vec::new(); n];
    for v in 0..n {
        for &w in &adj[v] {
            rev[w].push(v);
        }
    }
    let losing = crate::omega::graph::reachable(&rev, (0..n).filter(|&v| bad[v]));
    losing.iter().map(|l| !l).collect()
}

/// Exhaustive solver: every positional strategy of each player is tried.
pub fn brute_solve(g: &ParityGame) -> Result<Solution> {
    if g.len() > BRUTE_LIMIT {
        return Err(Error::guard(
            "brute-force game size",
            g.len() as u128,
            BRUTE_LIMIT as u128,
        ));
    }
    let n = g.len();
    let mut winner = vec![None; n];
    let mut strategy = vec![None; n];
    for p in [Player::Eloise, Player::Abelard] {
        let mine: Vec<usize> = (0..n).filter(|&v| g.owner[v] == p).collect();
        let mut idx = vec![0usize; mine.len()];
        let mut region = vec![false; n];
        let mut choices: Vec<(Vec<Option<usize>>, Vec<bool>)> = Vec::new();
        loop {
            let mut choice = vec![None; n];
            for (k, &v) in mine.iter().enumerate() {
                choice[v] = Some(g.succ[v][idx[k]]);
            }
            let wins = winning_with(g, p, &choice);
            for v in 0..n {
                region[v] |= wins[v];
            }
            choices.push((choice, wins));
            let mut k = 0;
            while k < mine.len() {
                idx[k] += 1;
                if idx[k] < g.succ[mine[k]].len() {
                    break;
                }
                idx[k] = 0;
                k += 1;
            }
            if k == mine.len() {
                break;
            }
        }
        for v in 0..n {
            if region[v] {
                if winner[v].is_some() {
                    return Err(Error::Domain("both players win a position".into()));
                }
                winner[v] = Some(p);
            }
        }
        // A uniform strategy winning on the whole region exists.
        let (choice, _) = choices
            .into_iter()
            .find(|(_, w)| (0..n).all(|v| !region[v] || w[v]))
            .expect("positional determinacy");
        for &v in &mine {
            if region[v] {
                strategy[v] = choice[v];
            }
        }
    }
    let winner = winner
        .into_iter()
        .map(|w| w.ok_or_else(|| Error::Domain("position won by nobody".into())))
        .collect::<Result<_>>()?;
    Ok(Solution { winner, strategy })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn game(owner: &[Player], succ: &[&[usize]], prio: &[u32]) -> ParityGame {
        ParityGame::new(
            owner.to_vec(),
            succ.iter().map(|s| s.to_vec()).collect(),
            prio.to_vec(),
            0,
            vec![false; owner.len()],
        )
        .unwrap()
    }

    #[test]
    fn self_loops() {
        let even = game(&[Player::Abelard], &[&[0]], &[2]);
        let odd = game(&[Player::Eloise], &[&[0]], &[1]);
        assert_eq!(solve(&even).winner, vec![Player::Eloise]);
        assert_eq!(solve(&odd).winner, vec![Player::Abelard]);
        assert_eq!(brute_solve(&even).unwrap().winner, vec![Player::Eloise]);
        assert_eq!(brute_solve(&odd).unwrap().winner, vec![Player::Abelard]);
    }

    #[test]
    fn escape_to_even_loop() {
        let g = game(&[Player::Eloise, Player::Abelard], &[&[0, 1], &[1]], &[1, 2]);
        let s = solve(&g);
        assert_eq!(s.winner, vec![Player::Eloise, Player::Eloise]);
        assert_eq!(s.strategy[0], Some(1));
        assert_eq!(brute_solve(&g).unwrap().winner, s.winner);
    }

    #[test]
    fn all_odd_abelard_cycle() {
        let g = game(
            &[Player::Abelard, Player::Abelard, Player::Abelard],
            &[&[1], &[2, 0], &[0]],
            &[1, 3, 1],
        );
        assert!(solve(&g).region(Player::Eloise).is_empty());
        assert!(brute_solve(&g).unwrap().region(Player::Eloise).is_empty());
    }
}
