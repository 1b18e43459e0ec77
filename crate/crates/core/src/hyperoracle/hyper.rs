//! Hyperassignments and their operators.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use super::functor::{enumerate_on, extensions_of};
use super::set::AsgSet;
use super::space::{Assignment, Space};
use super::Limits;
use crate::error::{Error, Result};
use crate::formula::{Prop, QuantSpec};

/// A family of sets of assignments over one space.
///
/// Proper hyperassignments are non-empty families of non-empty sets; the
/// halves produced by [`Hyperassignment::partitions`] may be empty families.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Hyperassignment {
    space: Space,
    sets: BTreeSet<AsgSet>,
}

impl Hyperassignment {
    pub fn new(space: Space, sets: impl IntoIterator<Item = AsgSet>) -> Result<Self> {
        let sets: BTreeSet<AsgSet> = sets.into_iter().collect();
        if sets.is_empty() {
            return Err(Error::Domain("a hyperassignment has at least one set".into()));
        }
        space.check_capacity()?;
        let all = space.all();
        for x in &sets {
            if x.is_empty() {
                return Err(Error::Domain("a hyperassignment has no empty set".into()));
            }
            if !x.is_subset(&all) {
                return Err(Error::Domain("assignment code outside the space".into()));
            }
        }
        Ok(Hyperassignment { space, sets })
    }

    pub(crate) fn raw(space: Space, sets: BTreeSet<AsgSet>) -> Self {
        Hyperassignment { space, sets }
    }

    /// `{{χ_∅}}` at horizon `h`.
    pub fn unit(h: usize) -> Result<Self> {
        Ok(Hyperassignment::raw(
            Space::empty(h)?,
            BTreeSet::from([AsgSet::singleton(0)]),
        ))
    }

    /// `{Asg(P)}`.
    pub fn full(space: Space) -> Result<Self> {
        space.check_capacity()?;
        let all = space.all();
        Ok(Hyperassignment::raw(space, BTreeSet::from([all])))
    }

    /// Build from explicit assignments, which must share a space.
    pub fn from_assignments(sets: &[Vec<Assignment>]) -> Result<Self> {
        let space = sets
            .iter()
            .flatten()
            .next()
            .ok_or_else(|| Error::Domain("no assignments given".into()))?
            .space()
            .clone();
        let mut out = Vec::new();
        for x in sets {
            let mut s = AsgSet::new();
            for chi in x {
                if chi.space() != &space {
                    return Err(Error::Domain("assignments over different domains".into()));
                }
                s.insert(chi.code());
            }
            out.push(s);
        }
        Hyperassignment::new(space, out)
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn sets(&self) -> &BTreeSet<AsgSet> {
        &self.sets
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    /// `⋃𝔄`.
    pub fn union_all(&self) -> AsgSet {
        self.sets.iter().fold(AsgSet::new(), |a, x| a.union(x))
    }

    fn same_space(&self, other: &Self) -> Result<()> {
        if self.space != other.space {
            return Err(Error::Domain(
                "hyperassignments over different domains".into(),
            ));
        }
        Ok(())
    }

    /// `𝔄1 ⊑ 𝔄2`: every set of `𝔄1` includes some set of `𝔄2`.
    pub fn refines(&self, other: &Self) -> Result<bool> {
        self.same_space(other)?;
        Ok(self
            .sets
            .iter()
            .all(|x1| other.sets.iter().any(|x2| x2.is_subset(x1))))
    }

    /// `⊑` in both directions.
    pub fn equivalent(&self, other: &Self) -> Result<bool> {
        Ok(self.refines(other)? && other.refines(self)?)
    }

    /// The `⊆`-minimal sets; equivalent to `self`.
    pub fn min_antichain(&self) -> Self {
        Hyperassignment::raw(self.space.clone(), minimize(self.sets.iter().copied()))
    }

    /// Images of all choice functions.
    pub fn dualize(&self, limits: &Limits) -> Result<Self> {
        let sets: Vec<Vec<u32>> = self.sets.iter().map(|x| x.iter().collect()).collect();
        if sets.is_empty() {
            return Err(Error::Domain("dual of the empty family".into()));
        }
        let needed = sets
            .iter()
            .try_fold(1u128, |acc, x| acc.checked_mul(x.len() as u128))
            .unwrap_or(u128::MAX);
        if needed > limits.choice_functions {
            return Err(Error::guard("choice functions", needed, limits.choice_functions));
        }
        let mut out = BTreeSet::new();
        let mut idx = vec![0usize; sets.len()];
        loop {
            out.insert(sets.iter().zip(&idx).map(|(x, &i)| x[i]).collect::<AsgSet>());
            let mut d = 0;
            loop {
                if d == sets.len() {
                    return Ok(Hyperassignment::raw(self.space.clone(), out));
                }
                idx[d] += 1;
                if idx[d] < sets[d].len() {
                    break;
                }
                idx[d] = 0;
                d += 1;
            }
        }
    }

    /// The minimal transversals of `𝔄`, i.e. the minimal sets of its dual;
    /// equivalent to [`Hyperassignment::dualize`] but often far smaller.
    pub fn dualize_min(&self, limits: &Limits) -> Result<Self> {
        if self.sets.is_empty() {
            return Err(Error::Domain("dual of the empty family".into()));
        }
        let mut edges: Vec<AsgSet> = minimize(self.sets.iter().copied()).into_iter().collect();
        edges.sort_by_key(|x| x.len());
        let mut tr: Vec<AsgSet> = vec![AsgSet::new()];
        for e in &edges {
            let mut hit = Vec::new();
            let mut grown = Vec::new();
            for t in &tr {
                if t.intersects(e) {
                    hit.push(*t);
                } else {
                    for c in e.iter() {
                        let mut n = *t;
                        n.insert(c);
                        grown.push(n);
                    }
                }
            }
            // Sets that already hit `e` stay minimal among themselves; only
            // the grown ones can be redundant.
            grown.sort();
            grown.dedup();
            let mut next = hit.clone();
            grown.sort_by_key(|x| x.len());
            let mut kept: Vec<AsgSet> = Vec::new();
            for g in grown {
                if hit.iter().any(|x| x.is_subset(&g)) || kept.iter().any(|x| x.is_subset(&g)) {
                    continue;
                }
                kept.push(g);
            }
            next.extend(kept);
            if next.len() > limits.sets {
                return Err(Error::guard(
                    "transversal count",
                    next.len() as u128,
                    limits.sets as u128,
                ));
            }
            tr = next;
        }
        Ok(Hyperassignment::raw(self.space.clone(), tr.into_iter().collect()))
    }

    /// All `2^|𝔄|` ordered splits into two disjoint subfamilies.
    pub fn partitions(&self, limits: &Limits) -> Result<Vec<(Self, Self)>> {
        let n = self.sets.len();
        if n > limits.partition_sets {
            return Err(Error::guard(
                "partition family size",
                n as u128,
                limits.partition_sets as u128,
            ));
        }
        let sets: Vec<AsgSet> = self.sets.iter().copied().collect();
        Ok((0..1u64 << n)
            .map(|m| {
                let (mut a, mut b) = (BTreeSet::new(), BTreeSet::new());
                for (i, x) in sets.iter().enumerate() {
                    if m >> i & 1 == 1 { &mut a } else { &mut b }.insert(*x);
                }
                (
                    Hyperassignment::raw(self.space.clone(), a),
                    Hyperassignment::raw(self.space.clone(), b),
                )
            })
            .collect())
    }

    /// `ext_σ(𝔄, ap)`.
    pub fn extend(&self, ap: &Prop, spec: &QuantSpec, limits: &Limits) -> Result<Self> {
        let (target, pos) = self.space.insert(ap)?;
        target.check_capacity()?;
        let mut out = BTreeSet::new();
        for x in &self.sets {
            out.extend(extensions_of(&self.space, x, pos, spec, limits)?);
            if out.len() > limits.sets {
                return Err(Error::guard(
                    "extension size",
                    out.len() as u128,
                    limits.sets as u128,
                ));
            }
        }
        Ok(Hyperassignment::raw(target, out))
    }

    /// The normal-evolution step for an incoherent quantifier:
    /// `{ ⋃_F ext(ð(F), F, ap) | ð : Fnc_σ(ap(𝔄)) → 𝔄 }`.
    pub fn select_extend(&self, ap: &Prop, spec: &QuantSpec, limits: &Limits) -> Result<Self> {
        let (target, pos) = self.space.insert(ap)?;
        target.check_capacity()?;
        let functors = enumerate_on(&self.space, spec, limits)?;
        let sets: Vec<AsgSet> = self.sets.iter().copied().collect();
        let needed = (sets.len() as u128)
            .checked_pow(functors.len() as u32)
            .unwrap_or(u128::MAX);
        if needed > limits.selection_maps {
            return Err(Error::guard("selection maps", needed, limits.selection_maps));
        }
        // ext(X, F, ap) for every pair, then one union per selection map.
        let images: Vec<Vec<AsgSet>> = functors
            .iter()
            .map(|f| {
                sets.iter()
                    .map(|x| x.iter().map(|c| self.space.inject(c, pos, f.apply(c))).collect())
                    .collect()
            })
            .collect();
        let mut out = BTreeSet::new();
        let mut sel = vec![0usize; functors.len()];
        loop {
            out.insert(
                images
                    .iter()
                    .zip(&sel)
                    .fold(AsgSet::new(), |a, (im, &i)| a.union(&im[i])),
            );
            let mut d = 0;
            loop {
                if d == sel.len() {
                    return Ok(Hyperassignment::raw(target, out));
                }
                sel[d] += 1;
                if sel[d] < sets.len() {
                    break;
                }
                sel[d] = 0;
                d += 1;
            }
        }
    }

    /// Project every assignment onto the domain without `props`.
    pub fn restrict_off(&self, props: &[Prop]) -> Result<Self> {
        let mut space = self.space.clone();
        let mut sets: Vec<AsgSet> = self.sets.iter().copied().collect();
        for p in props {
            let i = space
                .index(p)
                .ok_or_else(|| Error::Domain(format!("`{p}` not in the domain")))?;
            sets = sets
                .iter()
                .map(|x| x.iter().map(|c| space.project(c, i)).collect())
                .collect();
            space = space.without(i);
        }
        Ok(Hyperassignment::raw(space, sets.into_iter().collect()))
    }

    /// One set per line, assignments as `p=01,q=11` separated by `; `.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for x in &self.sets {
            let parts: Vec<String> = x.iter().map(|c| self.space.format_code(c)).collect();
            let _ = writeln!(out, "{}", parts.join("; "));
        }
        out
    }
}

/// The `⊆`-minimal members of a family.
pub(crate) fn minimize(sets: impl IntoIterator<Item = AsgSet>) -> BTreeSet<AsgSet> {
    let mut v: Vec<AsgSet> = sets.into_iter().collect();
    v.sort_by_key(|x| x.len());
    v.dedup();
    let mut kept: Vec<AsgSet> = Vec::new();
    for x in v {
        if !kept.iter().any(|k| k.is_subset(&x)) {
            kept.push(x);
        }
    }
    kept.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(v: &[u32]) -> AsgSet {
        v.iter().copied().collect()
    }

    fn hyper(space_bits: usize, sets: &[&[u32]]) -> Hyperassignment {
        let props: Vec<Prop> = (0..space_bits).map(|i| Prop::new(format!("p{i}"))).collect();
        let space = Space::new(props, 1).unwrap();
        Hyperassignment::new(space, sets.iter().map(|x| s(x))).unwrap()
    }

    #[test]
    fn dual_example_one() {
        // X1 = {a11, a12}, X2 = {a21, a22}, X3 = {a3}
        let a = hyper(3, &[&[0, 1], &[2, 3], &[4]]);
        let d = a.dualize(&Limits::default()).unwrap();
        let expect: BTreeSet<AsgSet> =
            [s(&[0, 2, 4]), s(&[0, 3, 4]), s(&[1, 2, 4]), s(&[1, 3, 4])].into();
        assert_eq!(d.sets(), &expect);
        assert_eq!(a.dualize_min(&Limits::default()).unwrap().sets(), &expect);
    }

    #[test]
    fn dual_small_cases() {
        let l = Limits::default();
        let a = hyper(1, &[&[0]]);
        assert_eq!(a.dualize(&l).unwrap(), a);
        let b = hyper(1, &[&[0], &[1]]);
        assert_eq!(b.dualize(&l).unwrap(), hyper(1, &[&[0, 1]]));
    }

    #[test]
    fn dual_min_is_minimal_part_of_dual() {
        let a = hyper(3, &[&[0, 1], &[1, 2], &[0, 2, 5], &[3, 1]]);
        let l = Limits::default();
        let exact = a.dualize(&l).unwrap();
        assert_eq!(exact.min_antichain(), a.dualize_min(&l).unwrap());
    }

    #[test]
    fn partition_counts() {
        let l = Limits::default();
        assert_eq!(hyper(2, &[&[0]]).partitions(&l).unwrap().len(), 2);
        assert_eq!(hyper(2, &[&[0], &[1]]).partitions(&l).unwrap().len(), 4);
        let a = hyper(2, &[&[0], &[1], &[2, 3]]);
        let parts = a.partitions(&l).unwrap();
        assert_eq!(parts.len(), 8);
        for (x, y) in &parts {
            assert!(x.sets().is_disjoint(y.sets()));
            assert_eq!(x.len() + y.len(), 3);
        }
    }

    #[test]
    fn refines_examples() {
        let ab = hyper(2, &[&[0, 1]]);
        let a = hyper(2, &[&[0]]);
        assert!(ab.refines(&a).unwrap());
        assert!(!a.refines(&ab).unwrap());
        assert!(a.refines(&a).unwrap());
        let big = hyper(2, &[&[0], &[2]]);
        assert!(a.refines(&big).unwrap());
    }

    #[test]
    fn extend_unit_strong() {
        let u = Hyperassignment::unit(2).unwrap();
        let e = u.extend(&Prop::new("q"), &QuantSpec::s(), &Limits::default()).unwrap();
        assert_eq!(e.len(), 4);
        assert!(e.sets().iter().all(|x| x.len() == 1));
        assert_eq!(e.dump(), "q=00\nq=10\nq=01\nq=11\n");
    }

    #[test]
    fn extend_contains_past_copy() {
        // ext over Asg({p}) with q(t) = p(t-1), q(0) = 1
        let space = Space::new([Prop::new("p")], 2).unwrap();
        let full = Hyperassignment::full(space.clone()).unwrap();
        let spec = QuantSpec::new(PropSet::empty(), PropSet::of(["p"]));
        let e = full.extend(&Prop::new("q"), &spec, &Limits::default()).unwrap();
        let want: AsgSet = space
            .codes()
            .map(|c| {
                let p = space.valuation(c, 0);
                e.space().inject(c, 1, (p << 1 | 1) & 3)
            })
            .collect();
        assert!(e.sets().contains(&want));
        assert!(e.sets().iter().all(|x| x.len() == 4));
    }

    use crate::formula::PropSet;

    #[test]
    fn select_extend_single_set() {
        let u = Hyperassignment::unit(1).unwrap();
        let e = u
            .select_extend(&Prop::new("q"), &QuantSpec::vanilla(), &Limits::default())
            .unwrap();
        // two functors over the one-point space, one selection map
        assert_eq!(e.len(), 1);
        assert_eq!(e.sets().iter().next().unwrap().len(), 2);
    }
}
