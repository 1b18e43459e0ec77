//! Functors `Asg(P) → (ℕ → 𝔹)` and their behavioral restrictions.

use std::collections::HashMap;

use super::set::AsgSet;
use super::space::{Assignment, Space, TemporalValuation};
use super::Limits;
use crate::error::{Error, Result};
use crate::formula::{Prop, QuantSpec};

/// A total functor over a finite assignment space, as a lookup table.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Functor {
    space: Space,
    table: Vec<u32>,
}

impl Functor {
    pub fn new(space: Space, table: Vec<u32>) -> Result<Self> {
        if table.len() != space.size() {
            return Err(Error::Domain(format!(
                "functor table has {} entries, space has {}",
                table.len(),
                space.size()
            )));
        }
        Ok(Functor { space, table })
    }

    pub fn from_fn(space: Space, f: impl Fn(&Assignment) -> TemporalValuation) -> Self {
        let table = space
            .codes()
            .map(|c| f(&Assignment::new(space.clone(), c).expect("in range")).bits())
            .collect();
        Functor { space, table }
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn table(&self) -> &[u32] {
        &self.table
    }

    pub fn apply(&self, code: u32) -> u32 {
        self.table[code as usize]
    }

    pub fn apply_to(&self, chi: &Assignment) -> Result<TemporalValuation> {
        if chi.space() != &self.space {
            return Err(Error::Domain("assignment outside the functor domain".into()));
        }
        Ok(TemporalValuation::new(
            self.apply(chi.code()),
            self.space.horizon(),
        ))
    }

    /// Membership in `Fnc_σ(P)`, checked literally: for every `p ∈ P_B`
    /// (resp. `P_S`) and time `k`, answers at `k` agree on all pairs of
    /// `(p, k)`-strict distinguishable (resp. distinguishable) assignments.
    pub fn satisfies(&self, spec: &QuantSpec) -> bool {
        let s = &self.space;
        let h = s.horizon();
        for (i, p) in s.props().iter().enumerate() {
            for (in_set, strict) in [(&spec.behavioral, true), (&spec.strong, false)] {
                if !in_set.contains(p) {
                    continue;
                }
                for k in 0..h {
                    // p must agree on t ≤ k (strict) or t < k.
                    let upto = if strict { k + 1 } else { k };
                    let keep = !(super::space::mask(h) << (i * h))
                        | (super::space::mask(upto) << (i * h));
                    for c1 in s.codes() {
                        for c2 in s.codes() {
                            if c1 & keep == c2 & keep
                                && (self.apply(c1) >> k & 1) != (self.apply(c2) >> k & 1)
                            {
                                return false;
                            }
                        }
                    }
                }
            }
        }
        true
    }
}

/// For each member of a set and each time `k`, the index of its
/// `≈^k_σ`-class. A `σ`-functor restricted to the set is exactly a choice
/// of one bit per class.
pub(crate) struct Classes {
    pub vars: usize,
    pub index: Vec<Vec<usize>>,
}

pub(crate) fn classes(space: &Space, members: &[u32], spec: &QuantSpec) -> Classes {
    let h = space.horizon();
    let mut index = vec![vec![0; h]; members.len()];
    let mut vars = 0;
    for k in 0..h {
        let m = space.visible_mask(spec, k);
        let mut ids: HashMap<u32, usize> = HashMap::new();
        for (j, c) in members.iter().enumerate() {
            let id = *ids.entry(c & m).or_insert_with(|| {
                vars += 1;
                vars - 1
            });
            index[j][k] = id;
        }
    }
    Classes { vars, index }
}

impl Classes {
    fn value(&self, j: usize, bits: u64) -> u32 {
        self.index[j]
            .iter()
            .enumerate()
            .fold(0, |v, (k, &x)| v | (((bits >> x) & 1) as u32) << k)
    }

    fn count_checked(&self, limits: &Limits) -> Result<u64> {
        let limit = limits.functors;
        if self.vars >= 64 || (1u64 << self.vars) > limit {
            return Err(Error::guard(
                "functor count",
                1u128 << self.vars.min(127),
                limit as u128,
            ));
        }
        Ok(1u64 << self.vars)
    }
}

/// `Fnc_σ(P)` at horizon `h`, enumerated by choosing one output bit per
/// `(time, class)` pair.
pub fn enumerate_functors(
    props: impl IntoIterator<Item = Prop>,
    spec: &QuantSpec,
    h: usize,
    limits: &Limits,
) -> Result<Vec<Functor>> {
    let space = Space::new(props, h)?;
    enumerate_on(&space, spec, limits)
}

pub(crate) fn enumerate_on(space: &Space, spec: &QuantSpec, limits: &Limits) -> Result<Vec<Functor>> {
    if space.size() > limits.functor_assignments {
        return Err(Error::guard(
            "functor domain size",
            space.size() as u128,
            limits.functor_assignments as u128,
        ));
    }
    let members: Vec<u32> = space.codes().collect();
    let cl = classes(space, &members, spec);
    let n = cl.count_checked(limits)?;
    Ok((0..n)
        .map(|bits| Functor {
            space: space.clone(),
            table: (0..members.len()).map(|j| cl.value(j, bits)).collect(),
        })
        .collect())
}

/// Every `ext(X, F, ap)` for `F ∈ Fnc_σ`, computed from the restrictions of
/// `σ`-functors to `X`. `target` is `space` with `ap` inserted at `pos`.
pub(crate) fn extensions_of(
    space: &Space,
    x: &AsgSet,
    pos: usize,
    spec: &QuantSpec,
    limits: &Limits,
) -> Result<Vec<AsgSet>> {
    let members: Vec<u32> = x.iter().collect();
    let cl = classes(space, &members, spec);
    let n = cl.count_checked(limits)?;
    Ok((0..n)
        .map(|bits| {
            members
                .iter()
                .enumerate()
                .map(|(j, &c)| space.inject(c, pos, cl.value(j, bits)))
                .collect()
        })
        .collect())
}

/// Is there a `σ`-functor `F` with `ext(X, F, ap) ⊆ allowed`? Depth-first
/// search over members, so no guard is needed.
pub(crate) fn extension_within(
    space: &Space,
    x: &AsgSet,
    pos: usize,
    spec: &QuantSpec,
    allowed: &AsgSet,
) -> bool {
    let members: Vec<u32> = x.iter().collect();
    let cl = classes(space, &members, spec);
    let h = space.horizon();
    let mut assigned: Vec<Option<bool>> = vec![None; cl.vars];

    fn go(
        j: usize,
        members: &[u32],
        cl: &Classes,
        h: usize,
        space: &Space,
        pos: usize,
        allowed: &AsgSet,
        assigned: &mut Vec<Option<bool>>,
    ) -> bool {
        if j == members.len() {
            return true;
        }
        'values: for v in 0..(1u32 << h) {
            if !allowed.contains(space.inject(members[j], pos, v)) {
                continue;
            }
            let mut fresh = Vec::new();
            for k in 0..h {
                let x = cl.index[j][k];
                let b = v >> k & 1 == 1;
                match assigned[x] {
                    Some(old) if old != b => {
                        for &f in &fresh {
                            assigned[f] = None;
                        }
                        continue 'values;
                    }
                    Some(_) => {}
                    None => {
                        assigned[x] = Some(b);
                        fresh.push(x);
                    }
                }
            }
            if go(j + 1, members, cl, h, space, pos, allowed, assigned) {
                return true;
            }
            for &f in &fresh {
                assigned[f] = None;
            }
        }
        false
    }

    go(0, &members, &cl, h, space, pos, allowed, &mut assigned)
}
