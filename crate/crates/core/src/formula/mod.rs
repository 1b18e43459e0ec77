//! Syntax of LTL, QPTL and GFG-QPTL.
//!
//! A [`Formula`] is a prenex sentence or formula: a quantifier [`Prefix`]
//! over an [`Ltl`] matrix. The general, non-prenex syntax with Boolean
//! connectives above quantifiers is [`GeneralFormula`]; only the bounded
//! oracle evaluates it.

mod parse;
mod render;

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};

pub use parse::{parse, parse_ltl};

/// An atomic proposition, compared by name.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Prop(String);

impl Prop {
    pub fn new(name: impl Into<String>) -> Self {
        Prop(name.into())
    }

    pub fn name(&self) -> &str {
        &self.0
    }

    pub fn is_valid_name(name: &str) -> bool {
        let mut chars = name.chars();
        match chars.next() {
            Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
            _ => return false,
        }
        chars.all(|c| c.is_ascii_alphanumeric() || c == '_') && !parse::is_keyword(name)
    }
}

impl fmt::Debug for Prop {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Display for Prop {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for Prop {
    fn from(s: &str) -> Self {
        Prop::new(s)
    }
}

/// A set of propositions, or every proposition.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PropSet {
    All,
    Set(BTreeSet<Prop>),
}

impl PropSet {
    pub fn empty() -> Self {
        PropSet::Set(BTreeSet::new())
    }

    pub fn of<I, P>(props: I) -> Self
    where
        I: IntoIterator<Item = P>,
        P: Into<Prop>,
    {
        PropSet::Set(props.into_iter().map(Into::into).collect())
    }

    pub fn contains(&self, p: &Prop) -> bool {
        match self {
            PropSet::All => true,
            PropSet::Set(s) => s.contains(p),
        }
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, PropSet::Set(s) if s.is_empty())
    }

    pub fn union(&self, other: &PropSet) -> PropSet {
        match (self, other) {
            (PropSet::All, _) | (_, PropSet::All) => PropSet::All,
            (PropSet::Set(a), PropSet::Set(b)) => PropSet::Set(a.union(b).cloned().collect()),
        }
    }

    /// The members of this set that also lie in `within`.
    pub fn restrict<'a>(&self, within: impl IntoIterator<Item = &'a Prop>) -> BTreeSet<Prop> {
        within
            .into_iter()
            .filter(|p| self.contains(p))
            .cloned()
            .collect()
    }
}

/// Quantifier specification `<P_B; P_S>`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QuantSpec {
    pub behavioral: PropSet,
    pub strong: PropSet,
}

impl QuantSpec {
    pub fn new(behavioral: PropSet, strong: PropSet) -> Self {
        QuantSpec { behavioral, strong }
    }

    /// `<;>`: no behavioral restriction.
    pub fn vanilla() -> Self {
        QuantSpec::new(PropSet::empty(), PropSet::empty())
    }

    /// `B`, i.e. `<*;>`.
    pub fn b() -> Self {
        QuantSpec::new(PropSet::All, PropSet::empty())
    }

    /// `S`, i.e. `<;*>`.
    pub fn s() -> Self {
        QuantSpec::new(PropSet::empty(), PropSet::All)
    }

    /// `B ∪ S<props>`.
    pub fn b_strong<I, P>(props: I) -> Self
    where
        I: IntoIterator<Item = P>,
        P: Into<Prop>,
    {
        QuantSpec::new(PropSet::All, PropSet::of(props))
    }

    pub fn union(&self, other: &QuantSpec) -> QuantSpec {
        QuantSpec {
            behavioral: self.behavioral.union(&other.behavioral),
            strong: self.strong.union(&other.strong),
        }
    }

    pub fn is_vanilla(&self) -> bool {
        self.behavioral.is_empty() && self.strong.is_empty()
    }

    pub fn is_b(&self) -> bool {
        *self == QuantSpec::b()
    }
}

/// Componentwise union of two specifications.
pub fn spec_union(a: &QuantSpec, b: &QuantSpec) -> QuantSpec {
    a.union(b)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum QuantKind {
    Exists,
    Forall,
}

impl QuantKind {
    pub fn dual(self) -> Self {
        match self {
            QuantKind::Exists => QuantKind::Forall,
            QuantKind::Forall => QuantKind::Exists,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Quantifier {
    pub kind: QuantKind,
    pub prop: Prop,
    pub spec: QuantSpec,
}

impl Quantifier {
    pub fn new(kind: QuantKind, prop: impl Into<Prop>, spec: QuantSpec) -> Self {
        Quantifier {
            kind,
            prop: prop.into(),
            spec,
        }
    }

    pub fn exists(prop: impl Into<Prop>, spec: QuantSpec) -> Self {
        Quantifier::new(QuantKind::Exists, prop, spec)
    }

    pub fn forall(prop: impl Into<Prop>, spec: QuantSpec) -> Self {
        Quantifier::new(QuantKind::Forall, prop, spec)
    }
}

/// A duplicate-free sequence of quantifiers.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Prefix(Vec<Quantifier>);

impl Prefix {
    pub fn new(quantifiers: Vec<Quantifier>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for q in &quantifiers {
            if !seen.insert(&q.prop) {
                return Err(Error::DuplicateQuantifier(q.prop.to_string()));
            }
        }
        Ok(Prefix(quantifiers))
    }

    pub fn empty() -> Self {
        Prefix(Vec::new())
    }

    pub fn quantifiers(&self) -> &[Quantifier] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Quantifier> {
        self.0.iter()
    }

    /// Quantified propositions in prefix order.
    pub fn props(&self) -> Vec<Prop> {
        self.0.iter().map(|q| q.prop.clone()).collect()
    }

    pub fn is_behavioral(&self) -> bool {
        self.0.iter().all(|q| q.spec.is_b())
    }

    pub fn is_vanilla(&self) -> bool {
        self.0.iter().all(|q| q.spec.is_vanilla())
    }

    /// Flip every quantifier kind; specifications are kept.
    pub fn dual(&self) -> Prefix {
        Prefix(
            self.0
                .iter()
                .map(|q| Quantifier::new(q.kind.dual(), q.prop.clone(), q.spec.clone()))
                .collect(),
        )
    }

    /// Number of ∃/∀ alternations.
    pub fn alternations(&self) -> usize {
        self.0.windows(2).filter(|w| w[0].kind != w[1].kind).count()
    }
}

/// LTL formulae. Derived operators (`F`, `G`, `R`, `->`, `<->`) are kept
/// in the tree and expanded only when an automaton is built.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Ltl {
    True,
    False,
    Atom(Prop),
    Not(Box<Ltl>),
    And(Box<Ltl>, Box<Ltl>),
    Or(Box<Ltl>, Box<Ltl>),
    Implies(Box<Ltl>, Box<Ltl>),
    Iff(Box<Ltl>, Box<Ltl>),
    Next(Box<Ltl>),
    Future(Box<Ltl>),
    Globally(Box<Ltl>),
    Until(Box<Ltl>, Box<Ltl>),
    Release(Box<Ltl>, Box<Ltl>),
}

#[allow(clippy::should_implement_trait)]
impl Ltl {
    pub fn atom(p: impl Into<Prop>) -> Ltl {
        Ltl::Atom(p.into())
    }
    pub fn not(a: Ltl) -> Ltl {
        Ltl::Not(Box::new(a))
    }
    pub fn and(a: Ltl, b: Ltl) -> Ltl {
        Ltl::And(Box::new(a), Box::new(b))
    }
    pub fn or(a: Ltl, b: Ltl) -> Ltl {
        Ltl::Or(Box::new(a), Box::new(b))
    }
    pub fn implies(a: Ltl, b: Ltl) -> Ltl {
        Ltl::Implies(Box::new(a), Box::new(b))
    }
    pub fn iff(a: Ltl, b: Ltl) -> Ltl {
        Ltl::Iff(Box::new(a), Box::new(b))
    }
    pub fn next(a: Ltl) -> Ltl {
        Ltl::Next(Box::new(a))
    }
    pub fn future(a: Ltl) -> Ltl {
        Ltl::Future(Box::new(a))
    }
    pub fn globally(a: Ltl) -> Ltl {
        Ltl::Globally(Box::new(a))
    }
    pub fn until(a: Ltl, b: Ltl) -> Ltl {
        Ltl::Until(Box::new(a), Box::new(b))
    }
    pub fn release(a: Ltl, b: Ltl) -> Ltl {
        Ltl::Release(Box::new(a), Box::new(b))
    }

    pub fn props(&self) -> BTreeSet<Prop> {
        let mut out = BTreeSet::new();
        self.collect_props(&mut out);
        out
    }

    fn collect_props(&self, out: &mut BTreeSet<Prop>) {
        match self {
            Ltl::True | Ltl::False => {}
            Ltl::Atom(p) => {
                out.insert(p.clone());
            }
            Ltl::Not(a) | Ltl::Next(a) | Ltl::Future(a) | Ltl::Globally(a) => a.collect_props(out),
            Ltl::And(a, b)
            | Ltl::Or(a, b)
            | Ltl::Implies(a, b)
            | Ltl::Iff(a, b)
            | Ltl::Until(a, b)
            | Ltl::Release(a, b) => {
                a.collect_props(out);
                b.collect_props(out);
            }
        }
    }

    /// Maximal nesting depth of `X`.
    pub fn next_depth(&self) -> usize {
        match self {
            Ltl::True | Ltl::False | Ltl::Atom(_) => 0,
            Ltl::Next(a) => 1 + a.next_depth(),
            Ltl::Not(a) | Ltl::Future(a) | Ltl::Globally(a) => a.next_depth(),
            Ltl::And(a, b)
            | Ltl::Or(a, b)
            | Ltl::Implies(a, b)
            | Ltl::Iff(a, b)
            | Ltl::Until(a, b)
            | Ltl::Release(a, b) => a.next_depth().max(b.next_depth()),
        }
    }

    /// True when the formula uses no `U`, `R`, `F`, `G`.
    pub fn is_next_only(&self) -> bool {
        match self {
            Ltl::True | Ltl::False | Ltl::Atom(_) => true,
            Ltl::Future(_) | Ltl::Globally(_) | Ltl::Until(..) | Ltl::Release(..) => false,
            Ltl::Not(a) | Ltl::Next(a) => a.is_next_only(),
            Ltl::And(a, b) | Ltl::Or(a, b) | Ltl::Implies(a, b) | Ltl::Iff(a, b) => {
                a.is_next_only() && b.is_next_only()
            }
        }
    }

    /// Truth on every word depends only on its first `h` letters.
    pub fn is_x_bounded(&self, horizon: usize) -> bool {
        self.is_next_only() && self.next_depth() < horizon
    }

    /// Push a negation inward. Negation stops at `->` and `<->`, which stay
    /// negated as written.
    pub fn negated_nnf(&self) -> Ltl {
        match self {
            Ltl::True => Ltl::False,
            Ltl::False => Ltl::True,
            Ltl::Atom(_) => Ltl::not(self.clone()),
            Ltl::Not(a) => a.nnf(),
            Ltl::And(a, b) => Ltl::or(a.negated_nnf(), b.negated_nnf()),
            Ltl::Or(a, b) => Ltl::and(a.negated_nnf(), b.negated_nnf()),
            Ltl::Implies(..) | Ltl::Iff(..) => Ltl::not(self.nnf()),
            Ltl::Next(a) => Ltl::next(a.negated_nnf()),
            Ltl::Future(a) => Ltl::globally(a.negated_nnf()),
            Ltl::Globally(a) => Ltl::future(a.negated_nnf()),
            Ltl::Until(a, b) => Ltl::release(a.negated_nnf(), b.negated_nnf()),
            Ltl::Release(a, b) => Ltl::until(a.negated_nnf(), b.negated_nnf()),
        }
    }

    /// Negation normal form in the sense of [`Ltl::negated_nnf`].
    pub fn nnf(&self) -> Ltl {
        match self {
            Ltl::True | Ltl::False | Ltl::Atom(_) => self.clone(),
            Ltl::Not(a) => a.negated_nnf(),
            Ltl::And(a, b) => Ltl::and(a.nnf(), b.nnf()),
            Ltl::Or(a, b) => Ltl::or(a.nnf(), b.nnf()),
            Ltl::Implies(a, b) => Ltl::implies(a.nnf(), b.nnf()),
            Ltl::Iff(a, b) => Ltl::iff(a.nnf(), b.nnf()),
            Ltl::Next(a) => Ltl::next(a.nnf()),
            Ltl::Future(a) => Ltl::future(a.nnf()),
            Ltl::Globally(a) => Ltl::globally(a.nnf()),
            Ltl::Until(a, b) => Ltl::until(a.nnf(), b.nnf()),
            Ltl::Release(a, b) => Ltl::release(a.nnf(), b.nnf()),
        }
    }
}

/// A prenex formula: quantifier prefix over an LTL matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Formula {
    pub prefix: Prefix,
    pub matrix: Ltl,
}

/// Structural facts about a formula.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub is_prenex: bool,
    pub is_behavioral: bool,
    pub is_strongly_behavioral: bool,
    pub is_vanilla: bool,
    pub free_props: BTreeSet<Prop>,
    pub quantified_props: Vec<Prop>,
}

impl Formula {
    pub fn new(prefix: Prefix, matrix: Ltl) -> Self {
        Formula { prefix, matrix }
    }

    pub fn ltl(matrix: Ltl) -> Self {
        Formula::new(Prefix::empty(), matrix)
    }

    pub fn free_props(&self) -> BTreeSet<Prop> {
        let bound: BTreeSet<Prop> = self.prefix.props().into_iter().collect();
        self.matrix
            .props()
            .into_iter()
            .filter(|p| !bound.contains(p))
            .collect()
    }

    pub fn is_closed(&self) -> bool {
        self.free_props().is_empty()
    }

    pub fn classify(&self) -> Classification {
        Classification {
            is_prenex: true,
            is_behavioral: self.prefix.is_behavioral(),
            is_strongly_behavioral: self.prefix.iter().all(|q| q.spec == QuantSpec::s()),
            is_vanilla: self.prefix.is_vanilla(),
            free_props: self.free_props(),
            quantified_props: self.prefix.props(),
        }
    }

    /// The prenex form of `¬self`: quantifier kinds flipped, specifications
    /// kept, matrix negated into negation normal form.
    pub fn negate_prenex(&self) -> Formula {
        Formula::new(self.prefix.dual(), self.matrix.negated_nnf())
    }

    pub fn to_general(&self) -> GeneralFormula {
        self.prefix
            .iter()
            .rev()
            .fold(GeneralFormula::Ltl(self.matrix.clone()), |acc, q| {
                GeneralFormula::Quant(q.clone(), Box::new(acc))
            })
    }
}

/// Classify a prenex formula.
pub fn classify(f: &Formula) -> Classification {
    f.classify()
}

/// Prenex negation, see [`Formula::negate_prenex`].
pub fn negate_prenex(f: &Formula) -> Formula {
    f.negate_prenex()
}

/// The full GFG-QPTL syntax, with Boolean connectives above quantifiers.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum GeneralFormula {
    Ltl(Ltl),
    Not(Box<GeneralFormula>),
    And(Box<GeneralFormula>, Box<GeneralFormula>),
    Or(Box<GeneralFormula>, Box<GeneralFormula>),
    Quant(Quantifier, Box<GeneralFormula>),
}

#[allow(clippy::should_implement_trait)]
impl GeneralFormula {
    pub fn not(a: GeneralFormula) -> Self {
        GeneralFormula::Not(Box::new(a))
    }
    pub fn and(a: GeneralFormula, b: GeneralFormula) -> Self {
        GeneralFormula::And(Box::new(a), Box::new(b))
    }
    pub fn or(a: GeneralFormula, b: GeneralFormula) -> Self {
        GeneralFormula::Or(Box::new(a), Box::new(b))
    }
    pub fn quant(q: Quantifier, body: GeneralFormula) -> Self {
        GeneralFormula::Quant(q, Box::new(body))
    }

    pub fn free_props(&self) -> BTreeSet<Prop> {
        match self {
            GeneralFormula::Ltl(l) => l.props(),
            GeneralFormula::Not(a) => a.free_props(),
            GeneralFormula::And(a, b) | GeneralFormula::Or(a, b) => {
                let mut s = a.free_props();
                s.extend(b.free_props());
                s
            }
            GeneralFormula::Quant(q, body) => {
                let mut s = body.free_props();
                s.remove(&q.prop);
                s
            }
        }
    }

    /// Back to prenex form when every quantifier is outermost.
    pub fn to_prenex(&self) -> Result<Formula> {
        let mut quants = Vec::new();
        let mut cur = self;
        loop {
            match cur {
                GeneralFormula::Quant(q, body) => {
                    quants.push(q.clone());
                    cur = body;
                }
                GeneralFormula::Ltl(l) => return Ok(Formula::new(Prefix::new(quants)?, l.clone())),
                _ => {
                    let matrix = ltl_of(cur).ok_or(Error::NotPrenex)?;
                    return Ok(Formula::new(Prefix::new(quants)?, matrix));
                }
            }
        }
    }
}

/// Quantifier-free general formulae are LTL formulae.
fn ltl_of(f: &GeneralFormula) -> Option<Ltl> {
    match f {
        GeneralFormula::Ltl(l) => Some(l.clone()),
        GeneralFormula::Not(a) => Some(Ltl::not(ltl_of(a)?)),
        GeneralFormula::And(a, b) => Some(Ltl::and(ltl_of(a)?, ltl_of(b)?)),
        GeneralFormula::Or(a, b) => Some(Ltl::or(ltl_of(a)?, ltl_of(b)?)),
        GeneralFormula::Quant(..) => None,
    }
}

impl From<Formula> for GeneralFormula {
    fn from(f: Formula) -> Self {
        f.to_general()
    }
}
