//! Recursive-descent parser for the formula grammar.
//!
//! Precedence, loosest first: `<->`, `->`, `|`, `&`, `U`/`R`, unary.
//! `->`, `U` and `R` associate to the right, the others to the left.
//! `#` starts a comment running to the end of the line.

use std::collections::BTreeSet;

use super::{Formula, Ltl, Prefix, Prop, PropSet, QuantKind, QuantSpec, Quantifier};
use crate::error::{Error, Result};

const KEYWORDS: &[&str] = &["true", "false", "X", "F", "G", "U", "R", "E", "A"];

pub(crate) fn is_keyword(name: &str) -> bool {
    KEYWORDS.contains(&name)
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Not,
    And,
    Or,
    Implies,
    Iff,
    LParen,
    RParen,
    Dot,
    Colon,
    Lt,
    Gt,
    Semi,
    Star,
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Not => "`!`".into(),
            Tok::And => "`&`".into(),
            Tok::Or => "`|`".into(),
            Tok::Implies => "`->`".into(),
            Tok::Iff => "`<->`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Dot => "`.`".into(),
            Tok::Colon => "`:`".into(),
            Tok::Lt => "`<`".into(),
            Tok::Gt => "`>`".into(),
            Tok::Semi => "`;`".into(),
            Tok::Star => "`*`".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

#[derive(Clone, Debug)]
struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(text: &str) -> Result<Vec<Spanned>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0, 1, 1);
    while i < chars.len() {
        let c = chars[i];
        let (l0, c0) = (line, col);
        let advance = |n: usize, i: &mut usize, col: &mut usize| {
            *i += n;
            *col += n;
        };
        match c {
            '\n' => {
                i += 1;
                line += 1;
                col = 1;
                continue;
            }
            c if c.is_whitespace() => {
                advance(1, &mut i, &mut col);
                continue;
            }
            '#' => {
                while i < chars.len() && chars[i] != '\n' {
                    i += 1;
                }
                continue;
            }
            _ => {}
        }
        let rest = |n: usize| chars[i..].iter().take(n).collect::<String>();
        let (tok, len) = if c.is_ascii_alphabetic() || c == '_' {
            let mut j = i;
            while j < chars.len() && (chars[j].is_ascii_alphanumeric() || chars[j] == '_') {
                j += 1;
            }
            (Tok::Ident(chars[i..j].iter().collect()), j - i)
        } else if rest(3) == "<->" {
            (Tok::Iff, 3)
        } else if rest(2) == "->" {
            (Tok::Implies, 2)
        } else {
            let t = match c {
                '!' => Tok::Not,
                '&' => Tok::And,
                '|' => Tok::Or,
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                '.' => Tok::Dot,
                ':' => Tok::Colon,
                '<' => Tok::Lt,
                '>' => Tok::Gt,
                ';' => Tok::Semi,
                '*' => Tok::Star,
                _ => {
                    return Err(Error::Syntax {
                        line: l0,
                        column: c0,
                        message: format!("unexpected character `{c}`"),
                    })
                }
            };
            (t, 1)
        };
        advance(len, &mut i, &mut col);
        out.push(Spanned {
            tok,
            line: l0,
            column: c0,
        });
    }
    out.push(Spanned {
        tok: Tok::Eof,
        line,
        column: col,
    });
    Ok(out)
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].tok.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T> {
        let s = &self.toks[self.pos];
        Err(Error::Syntax {
            line: s.line,
            column: s.column,
            message: message.into(),
        })
    }

    fn expect(&mut self, tok: Tok) -> Result<()> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            self.error(format!(
                "expected {}, found {}",
                tok.describe(),
                self.peek().describe()
            ))
        }
    }

    fn is_ident(&self, name: &str) -> bool {
        matches!(self.peek(), Tok::Ident(s) if s == name)
    }

    fn prop(&mut self) -> Result<Prop> {
        match self.peek().clone() {
            Tok::Ident(s) if !is_keyword(&s) => {
                self.bump();
                Ok(Prop::new(s))
            }
            t => self.error(format!("expected a proposition, found {}", t.describe())),
        }
    }

    fn prefix(&mut self) -> Result<Prefix> {
        let mut quants = Vec::new();
        let mut seen = BTreeSet::new();
        while self.is_ident("E") || self.is_ident("A") {
            let kind = match self.bump() {
                Tok::Ident(s) if s == "E" => QuantKind::Exists,
                _ => QuantKind::Forall,
            };
            let start = self.pos;
            let prop = self.prop()?;
            if !seen.insert(prop.clone()) {
                self.pos = start;
                return Err(Error::DuplicateQuantifier(prop.to_string()));
            }
            let spec = if *self.peek() == Tok::Colon {
                self.bump();
                self.spec()?
            } else {
                QuantSpec::vanilla()
            };
            self.expect(Tok::Dot)?;
            quants.push(Quantifier::new(kind, prop, spec));
        }
        Prefix::new(quants)
    }

    fn spec(&mut self) -> Result<QuantSpec> {
        if self.is_ident("B") {
            self.bump();
            return Ok(QuantSpec::b());
        }
        if self.is_ident("S") {
            self.bump();
            return Ok(QuantSpec::s());
        }
        self.expect(Tok::Lt)?;
        let behavioral = self.props()?;
        self.expect(Tok::Semi)?;
        let strong = self.props()?;
        self.expect(Tok::Gt)?;
        Ok(QuantSpec::new(behavioral, strong))
    }

    fn props(&mut self) -> Result<PropSet> {
        if *self.peek() == Tok::Star {
            self.bump();
            return Ok(PropSet::All);
        }
        let mut set = BTreeSet::new();
        while let Tok::Ident(_) = self.peek() {
            set.insert(self.prop()?);
        }
        Ok(PropSet::Set(set))
    }

    fn iff(&mut self) -> Result<Ltl> {
        let mut lhs = self.implies()?;
        while *self.peek() == Tok::Iff {
            self.bump();
            lhs = Ltl::iff(lhs, self.implies()?);
        }
        Ok(lhs)
    }

    fn implies(&mut self) -> Result<Ltl> {
        let lhs = self.or()?;
        if *self.peek() == Tok::Implies {
            self.bump();
            return Ok(Ltl::implies(lhs, self.implies()?));
        }
        Ok(lhs)
    }

    fn or(&mut self) -> Result<Ltl> {
        let mut lhs = self.and()?;
        while *self.peek() == Tok::Or {
            self.bump();
            lhs = Ltl::or(lhs, self.and()?);
        }
        Ok(lhs)
    }

    fn and(&mut self) -> Result<Ltl> {
        let mut lhs = self.until()?;
        while *self.peek() == Tok::And {
            self.bump();
            lhs = Ltl::and(lhs, self.until()?);
        }
        Ok(lhs)
    }

    fn until(&mut self) -> Result<Ltl> {
        let lhs = self.unary()?;
        if self.is_ident("U") {
            self.bump();
            return Ok(Ltl::until(lhs, self.until()?));
        }
        if self.is_ident("R") {
            self.bump();
            return Ok(Ltl::release(lhs, self.until()?));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Ltl> {
        match self.peek().clone() {
            Tok::Not => {
                self.bump();
                Ok(Ltl::not(self.unary()?))
            }
            Tok::LParen => {
                self.bump();
                let inner = self.iff()?;
                self.expect(Tok::RParen)?;
                Ok(inner)
            }
            Tok::Ident(s) => match s.as_str() {
                "X" | "F" | "G" => {
                    self.bump();
                    let a = self.unary()?;
                    Ok(match s.as_str() {
                        "X" => Ltl::next(a),
                        "F" => Ltl::future(a),
                        _ => Ltl::globally(a),
                    })
                }
                "true" => {
                    self.bump();
                    Ok(Ltl::True)
                }
                "false" => {
                    self.bump();
                    Ok(Ltl::False)
                }
                "E" | "A" => self.error("quantifiers must precede the temporal matrix"),
                _ => Ok(Ltl::Atom(self.prop()?)),
            },
            t => self.error(format!("expected a formula, found {}", t.describe())),
        }
    }

    fn finish(&mut self) -> Result<()> {
        if *self.peek() != Tok::Eof {
            return self.error(format!("unexpected {}", self.peek().describe()));
        }
        Ok(())
    }
}

/// Parse a prenex formula.
pub fn parse(text: &str) -> Result<Formula> {
    let mut p = Parser {
        toks: lex(text)?,
        pos: 0,
    };
    let prefix = p.prefix()?;
    let matrix = p.iff()?;
    p.finish()?;
    Ok(Formula::new(prefix, matrix))
}

/// Parse a quantifier-free LTL formula.
pub fn parse_ltl(text: &str) -> Result<Ltl> {
    let mut p = Parser {
        toks: lex(text)?,
        pos: 0,
    };
    let matrix = p.iff()?;
    p.finish()?;
    Ok(matrix)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a(s: &str) -> Ltl {
        Ltl::atom(s)
    }

    #[test]
    fn bhcsat_sentence() {
        let f = parse("E q:B. A p:B. (p <-> X q)").unwrap();
        assert_eq!(
            f.prefix.quantifiers(),
            &[
                Quantifier::exists("q", QuantSpec::b()),
                Quantifier::forall("p", QuantSpec::b())
            ]
        );
        assert_eq!(f.matrix, Ltl::iff(a("p"), Ltl::next(a("q"))));
    }

    #[test]
    fn closed_true() {
        let f = parse("true").unwrap();
        assert!(f.prefix.is_empty());
        assert_eq!(f.matrix, Ltl::True);
    }

    #[test]
    fn duplicate_quantifier() {
        assert_eq!(
            parse("E q. E q. q"),
            Err(Error::DuplicateQuantifier("q".into()))
        );
    }

    #[test]
    fn precedence_and_associativity() {
        assert_eq!(
            parse_ltl("a | b & c -> d <-> e").unwrap(),
            Ltl::iff(
                Ltl::implies(Ltl::or(a("a"), Ltl::and(a("b"), a("c"))), a("d")),
                a("e")
            )
        );
        assert_eq!(
            parse_ltl("a U b U c").unwrap(),
            Ltl::until(a("a"), Ltl::until(a("b"), a("c")))
        );
        assert_eq!(
            parse_ltl("a -> b -> c").unwrap(),
            Ltl::implies(a("a"), Ltl::implies(a("b"), a("c")))
        );
        assert_eq!(
            parse_ltl("a & b & c").unwrap(),
            Ltl::and(Ltl::and(a("a"), a("b")), a("c"))
        );
        assert_eq!(
            parse_ltl("!a U X b & c").unwrap(),
            Ltl::and(Ltl::until(Ltl::not(a("a")), Ltl::next(a("b"))), a("c"))
        );
        assert_eq!(
            parse_ltl("G F p R q").unwrap(),
            Ltl::release(Ltl::globally(Ltl::future(a("p"))), a("q"))
        );
    }

    #[test]
    fn spec_forms() {
        let f = parse("A p:<*; q r t>. E q:<;*>. E r:S. E t:<p;>. E s. # comment\n true").unwrap();
        let specs: Vec<_> = f.prefix.iter().map(|q| q.spec.clone()).collect();
        assert_eq!(specs[0], QuantSpec::b_strong(["q", "r", "t"]));
        assert_eq!(specs[1], QuantSpec::s());
        assert_eq!(specs[2], QuantSpec::s());
        assert_eq!(specs[3], QuantSpec::new(PropSet::of(["p"]), PropSet::empty()));
        assert_eq!(specs[4], QuantSpec::vanilla());
    }

    #[test]
    fn errors_carry_position() {
        match parse("E q:B.\n  q & ") {
            Err(Error::Syntax { line, column, .. }) => assert_eq!((line, column), (2, 7)),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(parse("p $ q"), Err(Error::Syntax { column: 3, .. })));
        assert!(matches!(parse("p & E q. q"), Err(Error::Syntax { .. })));
        assert!(matches!(parse("(p"), Err(Error::Syntax { .. })));
        assert!(matches!(parse("E X. p"), Err(Error::Syntax { .. })));
    }
}
