//! Kripke structures and their trace automata.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use crate::error::{Error, Result};
use crate::formula::Prop;
use crate::omega::{Alphabet, Letter, ParityAutomaton};

/// Default limit on subset-construction states.
pub const DEFAULT_SUBSETS: usize = 1 << 16;

/// A sinkless labelled transition system with one initial state.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KripkeStructure {
    alphabet: Alphabet,
    names: Vec<String>,
    labels: Vec<Letter>,
    succ: Vec<Vec<usize>>,
    init: usize,
}

fn kerr(line: usize, msg: impl fmt::Display) -> Error {
    Error::Kripke(format!("line {line}: {msg}"))
}

impl KripkeStructure {
    /// Build from parts; labels are sets of propositions of `aps`.
    pub fn new(
        aps: &[Prop],
        states: Vec<(String, BTreeSet<Prop>)>,
        edges: &[(usize, usize)],
        init: usize,
    ) -> Result<Self> {
        let alphabet = Alphabet::sorted(aps)?;
        let mut names = Vec::new();
        let mut labels = Vec::new();
        for (name, label) in states {
            let mut l = 0;
            for p in &label {
                l |= 1 << alphabet.require(p)?;
            }
            names.push(name);
            labels.push(l);
        }
        let n = names.len();
        if init >= n {
            return Err(Error::Kripke("initial state out of range".into()));
        }
        let mut succ = vec![Vec::new(); n];
        for &(a, b) in edges {
            if a >= n || b >= n {
                return Err(Error::Kripke("edge endpoint out of range".into()));
            }
            if !succ[a].contains(&b) {
                succ[a].push(b);
            }
        }
        for (s, v) in succ.iter_mut().enumerate() {
            if v.is_empty() {
                return Err(Error::Kripke(format!("state `{}` has no successor", names[s])));
            }
            v.sort_unstable();
        }
        Ok(KripkeStructure {
            alphabet,
            names,
            labels,
            succ,
            init,
        })
    }

    /// Alphabet over `ap(K)`, sorted by name.
    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn props(&self) -> &[Prop] {
        self.alphabet.props()
    }

    pub fn num_states(&self) -> usize {
        self.names.len()
    }

    pub fn init(&self) -> usize {
        self.init
    }

    pub fn name(&self, s: usize) -> &str {
        &self.names[s]
    }

    pub fn label(&self, s: usize) -> Letter {
        self.labels[s]
    }

    pub fn successors(&self, s: usize) -> &[usize] {
        &self.succ[s]
    }

    /// Label sequences of length `h` of initial paths.
    pub fn trace_prefixes(&self, h: usize) -> BTreeSet<Vec<Letter>> {
        let mut frontier: BTreeSet<(usize, Vec<Letter>)> =
            BTreeSet::from([(self.init, vec![self.labels[self.init]])]);
        for _ in 1..h {
            frontier = frontier
                .into_iter()
                .flat_map(|(s, w)| {
                    self.succ[s].iter().map(move |&t| {
                        let mut w = w.clone();
                        w.push(self.labels[t]);
                        (t, w)
                    })
                })
                .collect();
        }
        frontier.into_iter().map(|(_, w)| w).collect()
    }
}

/// Parse the text format:
///
/// ```text
/// kripke
/// aps: p q
/// init: s0
/// state s0 {p}
/// state s1 {p q}
/// edge s0 s1
/// edge s1 s1
/// ```
pub fn parse_kripke(text: &str) -> Result<KripkeStructure> {
    let mut aps: Option<Vec<Prop>> = None;
    let mut init: Option<(usize, String)> = None;
    let mut states: Vec<(String, BTreeSet<Prop>)> = Vec::new();
    let mut index: HashMap<String, usize> = HashMap::new();
    let mut edges: Vec<(usize, String, String)> = Vec::new();
    let mut header = false;
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if !header {
            if line != "kripke" {
                return Err(kerr(line_no, "expected `kripke` header"));
            }
            header = true;
            continue;
        }
        if let Some(rest) = line.strip_prefix("aps:") {
            let props: Vec<Prop> = rest.split_whitespace().map(Prop::new).collect();
            if let Some(p) = props.iter().find(|p| !Prop::is_valid_name(p.name())) {
                return Err(kerr(line_no, format!("bad proposition name `{p}`")));
            }
            aps = Some(props);
        } else if let Some(rest) = line.strip_prefix("init:") {
            init = Some((line_no, rest.trim().to_string()));
        } else if let Some(rest) = line.strip_prefix("state ") {
            let rest = rest.trim();
            let (name, label) = rest
                .split_once('{')
                .ok_or_else(|| kerr(line_no, "state label must be written `{...}`"))?;
            let name = name.trim().to_string();
            let label = label
                .strip_suffix('}')
                .ok_or_else(|| kerr(line_no, "unclosed state label"))?;
            if name.is_empty() || name.contains(char::is_whitespace) {
                return Err(kerr(line_no, "bad state name"));
            }
            if index.insert(name.clone(), states.len()).is_some() {
                return Err(kerr(line_no, format!("state `{name}` declared twice")));
            }
            let declared = aps
                .as_ref()
                .ok_or_else(|| kerr(line_no, "`aps:` must precede states"))?;
            let mut set = BTreeSet::new();
            for p in label.split_whitespace().map(Prop::new) {
                if !declared.contains(&p) {
                    return Err(kerr(line_no, format!("`{p}` is not declared in `aps:`")));
                }
                set.insert(p);
            }
            states.push((name, set));
        } else if let Some(rest) = line.strip_prefix("edge ") {
            let parts: Vec<&str> = rest.split_whitespace().collect();
            let [a, b] = parts[..] else {
                return Err(kerr(line_no, "edge needs two states"));
            };
            edges.push((line_no, a.to_string(), b.to_string()));
        } else {
            return Err(kerr(line_no, format!("unexpected `{line}`")));
        }
    }
    if !header {
        return Err(Error::Kripke("empty input".into()));
    }
    let aps = aps.ok_or_else(|| Error::Kripke("missing `aps:`".into()))?;
    let (init_line, init) = init.ok_or_else(|| Error::Kripke("missing `init:`".into()))?;
    let init = *index
        .get(&init)
        .ok_or_else(|| kerr(init_line, format!("unknown state `{init}`")))?;
    let mut es = Vec::new();
    for (line_no, a, b) in edges {
        let look = |s: &str| {
            index
                .get(s)
                .copied()
                .ok_or_else(|| kerr(line_no, format!("unknown state `{s}`")))
        };
        es.push((look(&a)?, look(&b)?));
    }
    KripkeStructure::new(&aps, states, &es, init)
}

impl fmt::Display for KripkeStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "kripke")?;
        let aps: Vec<&str> = self.props().iter().map(Prop::name).collect();
        writeln!(f, "aps: {}", aps.join(" "))?;
        writeln!(f, "init: {}", self.names[self.init])?;
        for s in 0..self.num_states() {
            let l = self.alphabet.letter_to_string(self.labels[s]);
            writeln!(f, "state {} {l}", self.names[s])?;
        }
        for s in 0..self.num_states() {
            for &t in &self.succ[s] {
                writeln!(f, "edge {} {}", self.names[s], self.names[t])?;
            }
        }
        Ok(())
    }
}

/// Deterministic automata for `L(K)` (safety) and its complement
/// (co-safety). Both track the set of structure states consistent with
/// the prefix read so far, plus an absorbing `failed` state entered exactly
/// when the prefix stops being a trace prefix.
pub fn trace_automata(k: &KripkeStructure) -> Result<(ParityAutomaton, ParityAutomaton)> {
    trace_automata_with_limit(k, DEFAULT_SUBSETS)
}

pub fn trace_automata_with_limit(
    k: &KripkeStructure,
    limit: usize,
) -> Result<(ParityAutomaton, ParityAutomaton)> {
    #[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
    enum Q {
        Start,
        At(Vec<usize>),
        Failed,
    }
    let alphabet = k.alphabet().clone();
    let mut states = vec![Q::Start];
    let mut index: BTreeMap<Q, usize> = BTreeMap::from([(Q::Start, 0)]);
    let mut delta: Vec<Vec<usize>> = Vec::new();
    let mut i = 0;
    while i < states.len() {
        let mut row = Vec::with_capacity(alphabet.size());
        for l in alphabet.letters() {
            let next = match &states[i] {
                Q::Failed => Q::Failed,
                Q::Start => {
                    if k.label(k.init()) == l {
                        Q::At(vec![k.init()])
                    } else {
                        Q::Failed
                    }
                }
                Q::At(xs) => {
                    let ys: BTreeSet<usize> = xs
                        .iter()
                        .flat_map(|&x| k.successors(x).iter().copied())
                        .filter(|&t| k.label(t) == l)
                        .collect();
                    if ys.is_empty() {
                        Q::Failed
                    } else {
                        Q::At(ys.into_iter().collect())
                    }
                }
            };
            let id = match index.get(&next) {
                Some(&id) => id,
                None => {
                    if states.len() >= limit {
                        return Err(Error::guard(
                            "trace subsets",
                            states.len() as u128 + 1,
                            limit as u128,
                        ));
                    }
                    states.push(next.clone());
                    index.insert(next, states.len() - 1);
                    states.len() - 1
                }
            };
            row.push(id);
        }
        delta.push(row);
        i += 1;
    }
    let co: Vec<u32> = states
        .iter()
        .map(|q| if *q == Q::Failed { 2 } else { 1 })
        .collect();
    let complement = ParityAutomaton::new(alphabet, 0, delta, co)?;
    Ok((complement.complement(), complement))
}
