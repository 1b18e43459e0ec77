//! Rendering back into the parser's grammar.
//!
//! Specifications are always written out as `<..;..>`; vanilla ones are
//! omitted. Parentheses are inserted only where precedence requires them.

use std::fmt;

use super::{Formula, GeneralFormula, Ltl, Prefix, PropSet, QuantKind, QuantSpec, Quantifier};

impl fmt::Display for PropSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PropSet::All => f.write_str("*"),
            PropSet::Set(s) => {
                let names: Vec<&str> = s.iter().map(|p| p.name()).collect();
                f.write_str(&names.join(" "))
            }
        }
    }
}

impl fmt::Display for QuantSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}", self.behavioral)?;
        if self.strong.is_empty() {
            f.write_str(";>")
        } else {
            write!(f, "; {}>", self.strong)
        }
    }
}

impl fmt::Display for Quantifier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let k = match self.kind {
            QuantKind::Exists => "E",
            QuantKind::Forall => "A",
        };
        if self.spec.is_vanilla() {
            write!(f, "{k} {}.", self.prop)
        } else {
            write!(f, "{k} {}:{}.", self.prop, self.spec)
        }
    }
}

impl fmt::Display for Prefix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.iter().map(|q| q.to_string()).collect();
        f.write_str(&parts.join(" "))
    }
}

const IFF: u8 = 1;
const IMPLIES: u8 = 2;
const OR: u8 = 3;
const AND: u8 = 4;
const UNTIL: u8 = 5;
const UNARY: u8 = 6;
const ATOM: u8 = 7;

fn level(l: &Ltl) -> u8 {
    match l {
        Ltl::True | Ltl::False | Ltl::Atom(_) => ATOM,
        Ltl::Not(_) | Ltl::Next(_) | Ltl::Future(_) | Ltl::Globally(_) => UNARY,
        Ltl::Until(..) | Ltl::Release(..) => UNTIL,
        Ltl::And(..) => AND,
        Ltl::Or(..) => OR,
        Ltl::Implies(..) => IMPLIES,
        Ltl::Iff(..) => IFF,
    }
}

fn write_at(l: &Ltl, min: u8, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if level(l) < min {
        write!(f, "(")?;
        write_ltl(l, f)?;
        write!(f, ")")
    } else {
        write_ltl(l, f)
    }
}

fn write_ltl(l: &Ltl, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    let lv = level(l);
    // Left-associative operators need a tighter right operand and vice versa.
    let bin = |f: &mut fmt::Formatter<'_>, a: &Ltl, op: &str, b: &Ltl, right_assoc: bool| {
        let (la, lb) = if right_assoc { (lv + 1, lv) } else { (lv, lv + 1) };
        write_at(a, la, f)?;
        write!(f, " {op} ")?;
        write_at(b, lb, f)
    };
    let un = |f: &mut fmt::Formatter<'_>, op: &str, a: &Ltl| {
        f.write_str(op)?;
        write_at(a, UNARY, f)
    };
    match l {
        Ltl::True => f.write_str("true"),
        Ltl::False => f.write_str("false"),
        Ltl::Atom(p) => write!(f, "{p}"),
        Ltl::Not(a) => un(f, "!", a),
        Ltl::Next(a) => un(f, "X ", a),
        Ltl::Future(a) => un(f, "F ", a),
        Ltl::Globally(a) => un(f, "G ", a),
        Ltl::Until(a, b) => bin(f, a, "U", b, true),
        Ltl::Release(a, b) => bin(f, a, "R", b, true),
        Ltl::And(a, b) => bin(f, a, "&", b, false),
        Ltl::Or(a, b) => bin(f, a, "|", b, false),
        Ltl::Implies(a, b) => bin(f, a, "->", b, true),
        Ltl::Iff(a, b) => bin(f, a, "<->", b, false),
    }
}

impl fmt::Display for Ltl {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_ltl(self, f)
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.prefix.is_empty() {
            write!(f, "{}", self.matrix)
        } else if level(&self.matrix) == ATOM || level(&self.matrix) == UNARY {
            write!(f, "{} {}", self.prefix, self.matrix)
        } else {
            write!(f, "{} ({})", self.prefix, self.matrix)
        }
    }
}

/// Non-prenex formulae have no surface syntax; this is a debugging aid.
impl fmt::Display for GeneralFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeneralFormula::Ltl(l) => write!(f, "({l})"),
            GeneralFormula::Not(a) => write!(f, "!{a}"),
            GeneralFormula::And(a, b) => write!(f, "({a} & {b})"),
            GeneralFormula::Or(a, b) => write!(f, "({a} | {b})"),
            GeneralFormula::Quant(q, b) => write!(f, "{q} {b}"),
        }
    }
}
