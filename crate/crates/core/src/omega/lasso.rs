//! Ultimately periodic words and direct LTL evaluation on them.

use rand::Rng;

use super::alphabet::{Alphabet, Letter};
use crate::error::{Error, Result};
use crate::formula::Ltl;

/// The word `stem · cycle^ω`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LassoWord {
    pub stem: Vec<Letter>,
    pub cycle: Vec<Letter>,
}

impl LassoWord {
    pub fn new(stem: Vec<Letter>, cycle: Vec<Letter>) -> Result<Self> {
        if cycle.is_empty() {
            return Err(Error::Domain("lasso cycle must be non-empty".into()));
        }
        Ok(LassoWord { stem, cycle })
    }

    /// Number of distinct positions of the lasso graph.
    pub fn len(&self) -> usize {
        self.stem.len() + self.cycle.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Letter at time `t` of the infinite word.
    pub fn at(&self, t: usize) -> Letter {
        if t < self.stem.len() {
            self.stem[t]
        } else {
            self.cycle[(t - self.stem.len()) % self.cycle.len()]
        }
    }

    /// Successor of a lasso position.
    pub fn succ(&self, i: usize) -> usize {
        if i + 1 < self.len() {
            i + 1
        } else {
            self.stem.len()
        }
    }

    /// Uniform random lasso with stem length in `0..=max_stem` and cycle
    /// length in `1..=max_cycle`.
    pub fn random<R: Rng>(rng: &mut R, alphabet_size: usize, max_stem: usize, max_cycle: usize) -> Self {
        let s = rng.gen_range(0..=max_stem);
        let c = rng.gen_range(1..=max_cycle);
        let mut letter = || rng.gen_range(0..alphabet_size) as Letter;
        let stem = (0..s).map(|_| letter()).collect();
        let cycle = (0..c).map(|_| letter()).collect();
        LassoWord { stem, cycle }
    }

    /// Every lasso with `stem + cycle == total` over the alphabet size.
    pub fn enumerate(alphabet_size: usize, total: usize) -> impl Iterator<Item = LassoWord> {
        (1..=total).flat_map(move |c| {
            let s = total - c;
            let count = (alphabet_size as u64).pow(total as u32);
            (0..count).map(move |mut n| {
                let mut letters = Vec::with_capacity(total);
                for _ in 0..total {
                    letters.push((n % alphabet_size as u64) as Letter);
                    n /= alphabet_size as u64;
                }
                let cycle = letters.split_off(s);
                LassoWord {
                    stem: letters,
                    cycle,
                }
            })
        })
    }

    pub fn to_string_over(&self, alphabet: &Alphabet) -> String {
        let show = |v: &[Letter]| {
            v.iter()
                .map(|l| alphabet.letter_to_string(*l))
                .collect::<Vec<_>>()
                .join(" ")
        };
        format!("{} ({})^w", show(&self.stem), show(&self.cycle))
    }
}

/// Truth of `ψ` at time 0 of the lasso. Atoms outside the alphabet are an
/// error.
pub fn eval_ltl(psi: &Ltl, alphabet: &Alphabet, word: &LassoWord) -> Result<bool> {
    Ok(eval_positions(psi, alphabet, word)?[0])
}

/// Truth of `ψ` at every lasso position.
pub fn eval_positions(psi: &Ltl, alphabet: &Alphabet, word: &LassoWord) -> Result<Vec<bool>> {
    let n = word.len();
    let at = |i: usize| word.at(i);
    Ok(match psi {
        Ltl::True => vec![true; n],
        Ltl::False => vec![false; n],
        Ltl::Atom(p) => {
            let i = alphabet
                .index(p)
                .ok_or_else(|| Error::Unbound(p.to_string()))?;
            (0..n).map(|t| Alphabet::holds(at(t), i)).collect()
        }
        Ltl::Not(a) => eval_positions(a, alphabet, word)?
            .into_iter()
            .map(|b| !b)
            .collect(),
        Ltl::And(a, b) | Ltl::Or(a, b) | Ltl::Implies(a, b) | Ltl::Iff(a, b) => {
            let x = eval_positions(a, alphabet, word)?;
            let y = eval_positions(b, alphabet, word)?;
            x.iter()
                .zip(&y)
                .map(|(&x, &y)| match psi {
                    Ltl::And(..) => x && y,
                    Ltl::Or(..) => x || y,
                    Ltl::Implies(..) => !x || y,
                    _ => x == y,
                })
                .collect()
        }
        Ltl::Next(a) => {
            let x = eval_positions(a, alphabet, word)?;
            (0..n).map(|i| x[word.succ(i)]).collect()
        }
        Ltl::Future(a) => until(&vec![true; n], &eval_positions(a, alphabet, word)?, word),
        Ltl::Globally(a) => release(&vec![false; n], &eval_positions(a, alphabet, word)?, word),
        Ltl::Until(a, b) => until(
            &eval_positions(a, alphabet, word)?,
            &eval_positions(b, alphabet, word)?,
            word,
        ),
        Ltl::Release(a, b) => release(
            &eval_positions(a, alphabet, word)?,
            &eval_positions(b, alphabet, word)?,
            word,
        ),
    })
}

/// Least fixpoint of `v = b ∨ (a ∧ X v)`.
fn until(a: &[bool], b: &[bool], word: &LassoWord) -> Vec<bool> {
    let n = word.len();
    let mut v = vec![false; n];
    loop {
        let mut changed = false;
        for i in (0..n).rev() {
            let nv = b[i] || (a[i] && v[word.succ(i)]);
            if nv != v[i] {
                v[i] = nv;
                changed = true;
            }
        }
        if !changed {
            return v;
        }
    }
}

/// Greatest fixpoint of `v = b ∧ (a ∨ X v)`.
fn release(a: &[bool], b: &[bool], word: &LassoWord) -> Vec<bool> {
    let n = word.len();
    let mut v = vec![true; n];
    loop {
        let mut changed = false;
        for i in (0..n).rev() {
            let nv = b[i] && (a[i] || v[word.succ(i)]);
            if nv != v[i] {
                v[i] = nv;
                changed = true;
            }
        }
        if !changed {
            return v;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse_ltl;

    fn ab() -> Alphabet {
        Alphabet::new(vec!["p".into(), "q".into()]).unwrap()
    }

    fn holds(s: &str, stem: &[Letter], cycle: &[Letter]) -> bool {
        let w = LassoWord::new(stem.to_vec(), cycle.to_vec()).unwrap();
        eval_ltl(&parse_ltl(s).unwrap(), &ab(), &w).unwrap()
    }

    #[test]
    fn stutter_tail_examples() {
        // p = 0 then 1 forever
        assert!(holds("X p", &[0], &[1]));
        assert!(!holds("G p", &[0], &[1]));
        assert!(holds("F G p", &[0], &[1]));
        assert!(holds("G F p", &[0], &[0, 1]));
        assert!(!holds("F G p", &[0], &[0, 1]));
    }

    #[test]
    fn until_release_duality() {
        let a = ab();
        for w in LassoWord::enumerate(4, 4) {
            let u = eval_ltl(&parse_ltl("p U q").unwrap(), &a, &w).unwrap();
            let r = eval_ltl(&parse_ltl("!p R !q").unwrap(), &a, &w).unwrap();
            assert_eq!(u, !r);
        }
    }

    #[test]
    fn unbound_atom() {
        let w = LassoWord::new(vec![], vec![0]).unwrap();
        assert_eq!(
            eval_ltl(&parse_ltl("r").unwrap(), &ab(), &w),
            Err(Error::Unbound("r".into()))
        );
    }

    #[test]
    fn enumerate_counts() {
        // total 2 over 2 letters: stem 1 + cycle 1 (4) and cycle 2 (4)
        assert_eq!(LassoWord::enumerate(2, 2).count(), 8);
    }
}
