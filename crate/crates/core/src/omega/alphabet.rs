use std::fmt;

use crate::error::{Error, Result};
use crate::formula::Prop;

/// A letter of `Val(P)`: bit `i` is the value of the `i`-th proposition.
pub type Letter = u32;

/// Largest supported proposition count; letters are enumerated eagerly.
pub const MAX_PROPS: usize = 16;

/// The alphabet `Val(P)` over an ordered proposition list.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Alphabet {
    props: Vec<Prop>,
}

impl Alphabet {
    pub fn new(props: Vec<Prop>) -> Result<Self> {
        for (i, p) in props.iter().enumerate() {
            if props[..i].contains(p) {
                return Err(Error::Alphabet(format!("`{p}` listed twice")));
            }
        }
        if props.len() > MAX_PROPS {
            return Err(Error::guard(
                "alphabet propositions",
                props.len() as u128,
                MAX_PROPS as u128,
            ));
        }
        Ok(Alphabet { props })
    }

    /// Alphabet over the given propositions in sorted order.
    pub fn sorted<'a>(props: impl IntoIterator<Item = &'a Prop>) -> Result<Self> {
        let mut v: Vec<Prop> = props.into_iter().cloned().collect();
        v.sort();
        v.dedup();
        Alphabet::new(v)
    }

    pub fn props(&self) -> &[Prop] {
        &self.props
    }

    pub fn len(&self) -> usize {
        self.props.len()
    }

    pub fn is_empty(&self) -> bool {
        self.props.is_empty()
    }

    /// Number of letters.
    pub fn size(&self) -> usize {
        1 << self.props.len()
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> {
        0..self.size() as Letter
    }

    pub fn index(&self, p: &Prop) -> Option<usize> {
        self.props.iter().position(|q| q == p)
    }

    pub fn require(&self, p: &Prop) -> Result<usize> {
        self.index(p)
            .ok_or_else(|| Error::Alphabet(format!("`{p}` is not in the alphabet {self}")))
    }

    pub fn holds(letter: Letter, i: usize) -> bool {
        letter >> i & 1 == 1
    }

    /// The alphabet with proposition `i` removed.
    pub fn without(&self, i: usize) -> Alphabet {
        let mut props = self.props.clone();
        props.remove(i);
        Alphabet { props }
    }

    /// Drop bit `i` from a letter, shifting the higher bits down.
    pub fn project(letter: Letter, i: usize) -> Letter {
        let low = letter & ((1 << i) - 1);
        low | ((letter >> (i + 1)) << i)
    }

    /// Insert `value` as bit `i`, shifting the higher bits up.
    pub fn inject(letter: Letter, i: usize, value: bool) -> Letter {
        let low = letter & ((1 << i) - 1);
        low | (value as Letter) << i | ((letter >> i) << (i + 1))
    }

    /// Re-express a letter of `self` over `other`, which must contain every
    /// proposition of `self`; propositions absent from `self` are false.
    pub fn translate(&self, letter: Letter, other: &Alphabet) -> Result<Letter> {
        let mut out = 0;
        for (i, p) in self.props.iter().enumerate() {
            if Self::holds(letter, i) {
                out |= 1 << other.require(p)?;
            }
        }
        Ok(out)
    }

    pub fn letter_to_string(&self, letter: Letter) -> String {
        let on: Vec<&str> = self
            .props
            .iter()
            .enumerate()
            .filter(|(i, _)| Self::holds(letter, *i))
            .map(|(_, p)| p.name())
            .collect();
        format!("{{{}}}", on.join(" "))
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<&str> = self.props.iter().map(|p| p.name()).collect();
        write!(f, "[{}]", names.join(" "))
    }
}
