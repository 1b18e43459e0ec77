//! HOA text format (state-based acceptance, explicit labels) and DOT.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use super::alphabet::{Alphabet, Letter};
use super::dpa::ParityAutomaton;
use super::nba::BuchiAutomaton;
use crate::error::{Error, Result};
use crate::formula::Prop;

fn label(alphabet: &Alphabet, l: Letter) -> String {
    if alphabet.is_empty() {
        return "t".into();
    }
    (0..alphabet.len())
        .map(|i| {
            if Alphabet::holds(l, i) {
                i.to_string()
            } else {
                format!("!{i}")
            }
        })
        .collect::<Vec<_>>()
        .join("&")
}

fn header(out: &mut String, states: usize, start: &[usize], alphabet: &Alphabet) {
    let _ = writeln!(out, "HOA: v1");
    let _ = writeln!(out, "States: {states}");
    for s in start {
        let _ = writeln!(out, "Start: {s}");
    }
    let aps: String = alphabet
        .props()
        .iter()
        .map(|p| format!(" \"{p}\""))
        .collect();
    let _ = writeln!(out, "AP: {}{aps}", alphabet.len());
}

/// Acceptance condition of `parity max even k`.
fn parity_condition(k: u32) -> String {
    fn go(c: u32) -> String {
        let atom = if c % 2 == 0 {
            format!("Inf({c})")
        } else {
            format!("Fin({c})")
        };
        if c == 0 {
            return atom;
        }
        let op = if c % 2 == 0 { "|" } else { "&" };
        format!("{atom} {op} ({})", go(c - 1))
    }
    match k {
        0 => "f".into(),
        _ => go(k - 1),
    }
}

pub fn nba_to_hoa(a: &BuchiAutomaton) -> String {
    let mut out = String::new();
    header(&mut out, a.num_states(), a.initial(), a.alphabet());
    out.push_str("acc-name: Buchi\nAcceptance: 1 Inf(0)\n");
    out.push_str("properties: explicit-labels state-acc\n--BODY--\n");
    for s in 0..a.num_states() {
        let acc = if a.is_accepting(s) { " {0}" } else { "" };
        let _ = writeln!(out, "State: {s}{acc}");
        for l in a.alphabet().letters() {
            for t in a.successors(s, l) {
                let _ = writeln!(out, "[{}] {t}", label(a.alphabet(), l));
            }
        }
    }
    out.push_str("--END--\n");
    out
}

pub fn dpa_to_hoa(a: &ParityAutomaton) -> String {
    let mut out = String::new();
    header(&mut out, a.num_states(), &[a.initial()], a.alphabet());
    let k = a.max_priority() + 1;
    let _ = writeln!(out, "acc-name: parity max even {k}");
    let _ = writeln!(out, "Acceptance: {k} {}", parity_condition(k));
    out.push_str("properties: explicit-labels state-acc deterministic complete\n--BODY--\n");
    for s in 0..a.num_states() {
        let _ = writeln!(out, "State: {s} {{{}}}", a.priority(s));
        for l in a.alphabet().letters() {
            let _ = writeln!(out, "[{}] {}", label(a.alphabet(), l), a.step(s, l));
        }
    }
    out.push_str("--END--\n");
    out
}

/// An automaton read from HOA text.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HoaAutomaton {
    Buchi(BuchiAutomaton),
    Parity(ParityAutomaton),
}

fn hoa_err(msg: impl Into<String>) -> Error {
    Error::Hoa(msg.into())
}

/// Label expressions over AP indices: `t`, `f`, `n`, `!`, `&`, `|`, parens.
struct LabelParser<'a> {
    s: &'a [u8],
    i: usize,
    letter: Letter,
    aps: usize,
}

impl LabelParser<'_> {
    fn skip(&mut self) {
        while self.i < self.s.len() && self.s[self.i].is_ascii_whitespace() {
            self.i += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip();
        self.s.get(self.i).copied()
    }

    fn or(&mut self) -> Result<bool> {
        let mut v = self.and()?;
        while self.peek() == Some(b'|') {
            self.i += 1;
            v |= self.and()?;
        }
        Ok(v)
    }

    fn and(&mut self) -> Result<bool> {
        let mut v = self.atom()?;
        while self.peek() == Some(b'&') {
            self.i += 1;
            v &= self.atom()?;
        }
        Ok(v)
    }

    fn atom(&mut self) -> Result<bool> {
        match self.peek() {
            Some(b'!') => {
                self.i += 1;
                Ok(!self.atom()?)
            }
            Some(b'(') => {
                self.i += 1;
                let v = self.or()?;
                if self.peek() != Some(b')') {
                    return Err(hoa_err("unbalanced parenthesis in label"));
                }
                self.i += 1;
                Ok(v)
            }
            Some(b't') => {
                self.i += 1;
                Ok(true)
            }
            Some(b'f') => {
                self.i += 1;
                Ok(false)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.i;
                while self.i < self.s.len() && self.s[self.i].is_ascii_digit() {
                    self.i += 1;
                }
                let n: usize = std::str::from_utf8(&self.s[start..self.i])
                    .expect("digits")
                    .parse()
                    .map_err(|_| hoa_err("bad AP index"))?;
                if n >= self.aps {
                    return Err(hoa_err(format!("AP index {n} out of range")));
                }
                Ok(Alphabet::holds(self.letter, n))
            }
            _ => Err(hoa_err("malformed label")),
        }
    }
}

fn eval_label(text: &str, letter: Letter, aps: usize) -> Result<bool> {
    let mut p = LabelParser {
        s: text.as_bytes(),
        i: 0,
        letter,
        aps,
    };
    let v = p.or()?;
    if p.peek().is_some() {
        return Err(hoa_err(format!("trailing input in label `{text}`")));
    }
    Ok(v)
}

fn parse_acc_set(rest: &str) -> Result<(String, Vec<u32>)> {
    let rest = rest.trim();
    match rest.find('{') {
        Some(i) => {
            let j = rest.find('}').ok_or_else(|| hoa_err("unclosed acceptance set"))?;
            let sets = rest[i + 1..j]
                .split_whitespace()
                .map(|x| x.parse().map_err(|_| hoa_err("bad acceptance set")))
                .collect::<Result<_>>()?;
            Ok((rest[..i].trim().to_string(), sets))
        }
        None => Ok((rest.to_string(), Vec::new())),
    }
}

/// Parse the subset of HOA written by [`nba_to_hoa`] and [`dpa_to_hoa`]:
/// Büchi or `parity max even` acceptance, state-based marks, labelled edges.
pub fn parse_hoa(text: &str) -> Result<HoaAutomaton> {
    let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
    if lines.next() != Some("HOA: v1") {
        return Err(hoa_err("missing `HOA: v1` header"));
    }
    let mut states: Option<usize> = None;
    let mut start = Vec::new();
    let mut aps: Vec<Prop> = Vec::new();
    let mut parity = None;
    for line in lines.by_ref() {
        if line == "--BODY--" {
            break;
        }
        let (key, val) = line
            .split_once(':')
            .ok_or_else(|| hoa_err(format!("bad header line `{line}`")))?;
        let val = val.trim();
        match key {
            "States" => states = Some(val.parse().map_err(|_| hoa_err("bad state count"))?),
            "Start" => start.push(val.parse().map_err(|_| hoa_err("bad start state"))?),
            "AP" => {
                let mut parts = val.splitn(2, ' ');
                let n: usize = parts
                    .next()
                    .unwrap_or("")
                    .parse()
                    .map_err(|_| hoa_err("bad AP count"))?;
                let names = parts.next().unwrap_or("");
                aps = names
                    .split('"')
                    .skip(1)
                    .step_by(2)
                    .map(Prop::new)
                    .collect();
                if aps.len() != n {
                    return Err(hoa_err("AP count disagrees with names"));
                }
            }
            "acc-name" => {
                if val == "Buchi" {
                    parity = Some(false);
                } else if val.starts_with("parity max even") {
                    parity = Some(true);
                } else {
                    return Err(hoa_err(format!("unsupported acceptance `{val}`")));
                }
            }
            _ => {}
        }
    }
    let n = states.ok_or_else(|| hoa_err("missing States"))?;
    let parity = parity.ok_or_else(|| hoa_err("missing acc-name"))?;
    let alphabet = Alphabet::new(aps)?;
    let mut marks: Vec<Vec<u32>> = vec![Vec::new(); n];
    let mut edges: BTreeMap<(usize, Letter), Vec<usize>> = BTreeMap::new();
    let mut cur: Option<usize> = None;
    for line in lines {
        if line == "--END--" {
            break;
        }
        if let Some(rest) = line.strip_prefix("State:") {
            let (id, sets) = parse_acc_set(rest)?;
            let id: usize = id
                .split_whitespace()
                .next()
                .unwrap_or("")
                .parse()
                .map_err(|_| hoa_err("bad state id"))?;
            if id >= n {
                return Err(hoa_err(format!("state {id} out of range")));
            }
            marks[id] = sets;
            cur = Some(id);
        } else if let Some(rest) = line.strip_prefix('[') {
            let s = cur.ok_or_else(|| hoa_err("edge before any state"))?;
            let (lab, target) = rest
                .split_once(']')
                .ok_or_else(|| hoa_err("unclosed label"))?;
            let t: usize = target.trim().parse().map_err(|_| hoa_err("bad edge target"))?;
            if t >= n {
                return Err(hoa_err(format!("edge target {t} out of range")));
            }
            for l in alphabet.letters() {
                if eval_label(lab, l, alphabet.len())? {
                    edges.entry((s, l)).or_default().push(t);
                }
            }
        } else {
            return Err(hoa_err(format!("unexpected body line `{line}`")));
        }
    }
    if parity {
        if start.len() != 1 {
            return Err(hoa_err("parity automaton needs exactly one start state"));
        }
        let mut delta = vec![Vec::with_capacity(alphabet.size()); n];
        for (s, row) in delta.iter_mut().enumerate() {
            for l in alphabet.letters() {
                match edges.get(&(s, l)).map(Vec::as_slice) {
                    Some([t]) => row.push(*t),
                    _ => return Err(hoa_err("parity automaton is not deterministic and complete")),
                }
            }
        }
        let priority = marks
            .iter()
            .map(|m| match m.as_slice() {
                [c] => Ok(*c),
                _ => Err(hoa_err("every state needs exactly one color")),
            })
            .collect::<Result<_>>()?;
        Ok(HoaAutomaton::Parity(ParityAutomaton::new(
            alphabet, start[0], delta, priority,
        )?))
    } else {
        let mut a = BuchiAutomaton::new(alphabet);
        for m in &marks {
            a.add_state(!m.is_empty());
        }
        for s in start {
            if s >= n {
                return Err(hoa_err("start state out of range"));
            }
            a.add_initial(s);
        }
        for ((s, l), ts) in edges {
            for t in ts {
                a.add_transition(s, l, t);
            }
        }
        Ok(HoaAutomaton::Buchi(a))
    }
}

fn dot_edges(
    out: &mut String,
    alphabet: &Alphabet,
    n: usize,
    succ: impl Fn(usize, Letter) -> Vec<usize>,
) {
    for s in 0..n {
        let mut by_target: BTreeMap<usize, Vec<String>> = BTreeMap::new();
        for l in alphabet.letters() {
            for t in succ(s, l) {
                by_target
                    .entry(t)
                    .or_default()
                    .push(alphabet.letter_to_string(l));
            }
        }
        for (t, ls) in by_target {
            let _ = writeln!(out, "  s{s} -> s{t} [label=\"{}\"];", ls.join(","));
        }
    }
}

pub fn nba_to_dot(a: &BuchiAutomaton) -> String {
    let mut out = String::from("digraph nba {\n  rankdir=LR;\n");
    for s in 0..a.num_states() {
        let shape = if a.is_accepting(s) { "doublecircle" } else { "circle" };
        let _ = writeln!(out, "  s{s} [label=\"{s}\", shape={shape}];");
    }
    for &s in a.initial() {
        let _ = writeln!(out, "  i{s} [shape=point];\n  i{s} -> s{s};");
    }
    dot_edges(&mut out, a.alphabet(), a.num_states(), |s, l| {
        a.successors(s, l).to_vec()
    });
    out.push_str("}\n");
    out
}

pub fn dpa_to_dot(a: &ParityAutomaton) -> String {
    let mut out = String::from("digraph dpa {\n  rankdir=LR;\n");
    for s in 0..a.num_states() {
        let _ = writeln!(out, "  s{s} [label=\"{s}:{}\", shape=circle];", a.priority(s));
    }
    let _ = writeln!(out, "  init [shape=point];\n  init -> s{};", a.initial());
    dot_edges(&mut out, a.alphabet(), a.num_states(), |s, l| vec![a.step(s, l)]);
    out.push_str("}\n");
    out
}
