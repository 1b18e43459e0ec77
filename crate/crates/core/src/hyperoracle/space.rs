//! Bounded-horizon assignments encoded as bit codes.
//!
//! An assignment over a name-sorted domain `p_0 .. p_{n-1}` at horizon `h`
//! is the integer whose bit `i*h + t` is the value of `p_i` at time `t`.

use std::collections::BTreeMap;
use std::fmt;

use super::set::{AsgSet, CAPACITY};
use crate::error::{Error, Result};
use crate::formula::{Ltl, Prop, QuantSpec};
use crate::omega::{eval_ltl, Alphabet, LassoWord, Letter};

/// Largest horizon accepted by the oracle.
pub const MAX_HORIZON: usize = 8;

/// Largest assignment code width.
pub const MAX_BITS: usize = 24;

/// A finite temporal valuation `bits · last^ω`; bit `t` is the value at `t`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TemporalValuation {
    bits: u32,
    len: usize,
}

impl TemporalValuation {
    pub fn new(bits: u32, len: usize) -> Self {
        TemporalValuation {
            bits: bits & mask(len),
            len,
        }
    }

    /// Parse a string such as `"0110"`, time 0 first.
    pub fn parse(s: &str) -> Result<Self> {
        let mut bits = 0;
        for (t, c) in s.chars().enumerate() {
            match c {
                '0' => {}
                '1' => bits |= 1 << t,
                _ => return Err(Error::Domain(format!("bad valuation `{s}`"))),
            }
        }
        if s.is_empty() || s.len() > MAX_HORIZON {
            return Err(Error::Domain(format!("bad valuation length `{s}`")));
        }
        Ok(TemporalValuation::new(bits, s.len()))
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Value at time `t`; times past the horizon repeat the last bit.
    pub fn get(&self, t: usize) -> bool {
        let t = t.min(self.len - 1);
        self.bits >> t & 1 == 1
    }
}

impl fmt::Display for TemporalValuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for t in 0..self.len {
            f.write_str(if self.get(t) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for TemporalValuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

pub(crate) fn mask(bits: usize) -> u32 {
    if bits >= 32 {
        u32::MAX
    } else {
        (1u32 << bits) - 1
    }
}

/// `Asg(P)` at a fixed horizon.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Space {
    props: Vec<Prop>,
    h: usize,
}

impl Space {
    pub fn new<I: IntoIterator<Item = Prop>>(props: I, h: usize) -> Result<Self> {
        let mut props: Vec<Prop> = props.into_iter().collect();
        props.sort();
        props.dedup();
        if h == 0 || h > MAX_HORIZON {
            return Err(Error::Domain(format!(
                "horizon must lie in 1..={MAX_HORIZON}, got {h}"
            )));
        }
        let bits = props.len() * h;
        if bits > MAX_BITS {
            return Err(Error::guard(
                "assignment bits",
                bits as u128,
                MAX_BITS as u128,
            ));
        }
        Ok(Space { props, h })
    }

    /// The space of the single empty assignment.
    pub fn empty(h: usize) -> Result<Self> {
        Space::new(Vec::new(), h)
    }

    pub fn props(&self) -> &[Prop] {
        &self.props
    }

    pub fn horizon(&self) -> usize {
        self.h
    }

    pub fn bits(&self) -> usize {
        self.props.len() * self.h
    }

    /// Number of assignments.
    pub fn size(&self) -> usize {
        1 << self.bits()
    }

    pub fn codes(&self) -> std::ops::Range<u32> {
        0..self.size() as u32
    }

    pub fn index(&self, p: &Prop) -> Option<usize> {
        self.props.binary_search(p).ok()
    }

    /// Sets of assignments of this space fit in an [`AsgSet`].
    pub fn check_capacity(&self) -> Result<()> {
        if self.size() > CAPACITY {
            return Err(Error::guard(
                "assignment space size",
                self.size() as u128,
                CAPACITY as u128,
            ));
        }
        Ok(())
    }

    pub fn all(&self) -> AsgSet {
        self.codes().collect()
    }

    /// Temporal valuation of the `i`-th proposition.
    pub fn valuation(&self, code: u32, i: usize) -> u32 {
        (code >> (i * self.h)) & mask(self.h)
    }

    /// The space with `p` added, and the index it lands at.
    pub fn insert(&self, p: &Prop) -> Result<(Space, usize)> {
        if self.index(p).is_some() {
            return Err(Error::Domain(format!(
                "`{p}` is already in the domain of the hyperassignment"
            )));
        }
        let mut props = self.props.clone();
        props.push(p.clone());
        let space = Space::new(props, self.h)?;
        let pos = space.index(p).expect("just inserted");
        Ok((space, pos))
    }

    /// Code of `χ[p_pos ↦ val]` where `code` lives in the space without `p_pos`.
    pub fn inject(&self, code: u32, pos: usize, val: u32) -> u32 {
        let cut = pos * self.h;
        let low = code & mask(cut);
        low | (val << cut) | ((code >> cut) << (cut + self.h))
    }

    /// Inverse of [`Space::inject`]: drop the `pos`-th proposition.
    pub fn project(&self, code: u32, pos: usize) -> u32 {
        let cut = pos * self.h;
        let low = code & mask(cut);
        low | ((code >> (cut + self.h)) << cut)
    }

    /// Overwrite the valuation of the `i`-th proposition.
    pub fn replace(&self, code: u32, i: usize, val: u32) -> u32 {
        let cut = i * self.h;
        (code & !(mask(self.h) << cut)) | (val << cut)
    }

    pub fn without(&self, i: usize) -> Space {
        let mut props = self.props.clone();
        props.remove(i);
        Space { props, h: self.h }
    }

    pub fn alphabet(&self) -> Alphabet {
        Alphabet::new(self.props.clone()).expect("space propositions are distinct")
    }

    /// `wrd(χ)` as letters over [`Space::alphabet`].
    pub fn letters(&self, code: u32) -> Vec<Letter> {
        (0..self.h)
            .map(|t| {
                (0..self.props.len()).fold(0, |l, i| {
                    l | (((code >> (i * self.h + t)) & 1) << i)
                })
            })
            .collect()
    }

    /// Inverse of [`Space::letters`].
    pub fn from_letters(&self, letters: &[Letter]) -> u32 {
        let mut code = 0;
        for (t, l) in letters.iter().enumerate() {
            for i in 0..self.props.len() {
                code |= ((l >> i) & 1) << (i * self.h + t);
            }
        }
        code
    }

    /// The stutter-extended word `wrd(χ) · last^ω`.
    pub fn lasso(&self, code: u32) -> LassoWord {
        let mut stem = self.letters(code);
        let last = stem.pop().expect("horizon is positive");
        LassoWord {
            stem,
            cycle: vec![last],
        }
    }

    /// All assignments satisfying `ψ` in the Tarski sense.
    pub fn truth_set(&self, psi: &Ltl) -> Result<AsgSet> {
        self.check_capacity()?;
        let alphabet = self.alphabet();
        let mut out = AsgSet::new();
        for c in self.codes() {
            if eval_ltl(psi, &alphabet, &self.lasso(c))? {
                out.insert(c);
            }
        }
        Ok(out)
    }

    /// Bits that a `σ`-functor may inspect when answering at time `k`;
    /// codes with equal masked bits are `≈^k_σ`-equivalent.
    pub fn visible_mask(&self, spec: &QuantSpec, k: usize) -> u32 {
        let mut m = 0;
        for (i, p) in self.props.iter().enumerate() {
            let upto = if spec.strong.contains(p) {
                k
            } else if spec.behavioral.contains(p) {
                k + 1
            } else {
                self.h
            };
            m |= mask(upto.min(self.h)) << (i * self.h);
        }
        m
    }

    pub fn format_code(&self, code: u32) -> String {
        if self.props.is_empty() {
            return "-".into();
        }
        self.props
            .iter()
            .enumerate()
            .map(|(i, p)| {
                format!("{p}={}", TemporalValuation::new(self.valuation(code, i), self.h))
            })
            .collect::<Vec<_>>()
            .join(",")
    }
}

/// A single assignment `χ ∈ Asg(P)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Assignment {
    space: Space,
    code: u32,
}

/// A letter of `Val(P)`, keyed by proposition.
pub type ValuationLetter = BTreeMap<Prop, bool>;

impl Assignment {
    pub fn new(space: Space, code: u32) -> Result<Self> {
        if code as usize >= space.size() {
            return Err(Error::Domain(format!("code {code} outside the space")));
        }
        Ok(Assignment { space, code })
    }

    /// Build from `(proposition, "0110")` pairs; all strings share a length.
    pub fn from_strs(pairs: &[(&str, &str)]) -> Result<Self> {
        let h = pairs.first().map_or(1, |(_, v)| v.len());
        let space = Space::new(pairs.iter().map(|(p, _)| Prop::new(*p)), h)?;
        if space.props().len() != pairs.len() {
            return Err(Error::Domain("proposition listed twice".into()));
        }
        let mut code = 0;
        for (p, v) in pairs {
            let val = TemporalValuation::parse(v)?;
            if val.len() != h {
                return Err(Error::Domain("valuations differ in length".into()));
            }
            let i = space.index(&Prop::new(*p)).expect("present");
            code = space.replace(code, i, val.bits());
        }
        Ok(Assignment { space, code })
    }

    /// The empty assignment `χ_∅` at horizon `h`.
    pub fn empty(h: usize) -> Result<Self> {
        Ok(Assignment {
            space: Space::empty(h)?,
            code: 0,
        })
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn code(&self) -> u32 {
        self.code
    }

    pub fn get(&self, p: &Prop) -> Option<TemporalValuation> {
        let i = self.space.index(p)?;
        Some(TemporalValuation::new(
            self.space.valuation(self.code, i),
            self.space.horizon(),
        ))
    }
}

impl fmt::Display for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.space.format_code(self.code))
    }
}

/// The word function: letter `t` maps each proposition to its value at `t`.
pub fn wrd(chi: &Assignment) -> Vec<ValuationLetter> {
    let s = &chi.space;
    s.letters(chi.code)
        .into_iter()
        .map(|l| {
            s.props()
                .iter()
                .enumerate()
                .map(|(i, p)| (p.clone(), Alphabet::holds(l, i)))
                .collect()
        })
        .collect()
}

/// Inverse of [`wrd`]; every letter must have the same domain.
pub fn wrd_inverse(word: &[ValuationLetter]) -> Result<Assignment> {
    let first = word
        .first()
        .ok_or_else(|| Error::Domain("empty word".into()))?;
    let space = Space::new(first.keys().cloned(), word.len())?;
    let mut letters = Vec::with_capacity(word.len());
    for letter in word {
        if !letter.keys().eq(first.keys()) {
            return Err(Error::Domain("letters over different domains".into()));
        }
        letters.push(
            letter
                .values()
                .enumerate()
                .fold(0, |l, (i, &b)| l | ((b as Letter) << i)),
        );
    }
    let code = space.from_letters(&letters);
    Ok(Assignment { space, code })
}

/// `χ1 ≈^k_σ χ2`, decided by the three componentwise conditions that
/// characterize the transitive closure.
pub fn spec_equiv(
    chi1: &Assignment,
    chi2: &Assignment,
    spec: &QuantSpec,
    k: usize,
) -> Result<bool> {
    if chi1.space != chi2.space {
        return Err(Error::Domain("assignments over different domains".into()));
    }
    let s = &chi1.space;
    if k >= s.horizon() {
        return Err(Error::Domain(format!(
            "time {k} outside horizon {}",
            s.horizon()
        )));
    }
    let m = s.visible_mask(spec, k);
    Ok(chi1.code & m == chi2.code & m)
}
