use std::fmt;

/// Assignment codes below this bound fit in an [`AsgSet`].
pub const CAPACITY: usize = 512;
const WORDS: usize = CAPACITY / 64;

/// A set of assignment codes, as a fixed-width bitset.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct AsgSet([u64; WORDS]);

impl AsgSet {
    pub fn new() -> Self {
        AsgSet([0; WORDS])
    }

    pub fn singleton(code: u32) -> Self {
        let mut s = AsgSet::new();
        s.insert(code);
        s
    }

    pub fn insert(&mut self, code: u32) {
        self.0[code as usize / 64] |= 1 << (code % 64);
    }

    pub fn remove(&mut self, code: u32) {
        self.0[code as usize / 64] &= !(1 << (code % 64));
    }

    pub fn contains(&self, code: u32) -> bool {
        self.0[code as usize / 64] >> (code % 64) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.0.iter().all(|&w| w == 0)
    }

    pub fn is_subset(&self, other: &AsgSet) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a & !b == 0)
    }

    pub fn intersects(&self, other: &AsgSet) -> bool {
        self.0.iter().zip(&other.0).any(|(a, b)| a & b != 0)
    }

    pub fn union(&self, other: &AsgSet) -> AsgSet {
        let mut out = *self;
        for (a, b) in out.0.iter_mut().zip(&other.0) {
            *a |= b;
        }
        out
    }

    pub fn intersection(&self, other: &AsgSet) -> AsgSet {
        let mut out = *self;
        for (a, b) in out.0.iter_mut().zip(&other.0) {
            *a &= b;
        }
        out
    }

    pub fn difference(&self, other: &AsgSet) -> AsgSet {
        let mut out = *self;
        for (a, b) in out.0.iter_mut().zip(&other.0) {
            *a &= !b;
        }
        out
    }

    /// Complement within `0..size`.
    pub fn complement(&self, size: usize) -> AsgSet {
        (0..size as u32).filter(|&c| !self.contains(c)).collect()
    }

    /// Members in increasing order.
    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        self.0.iter().enumerate().flat_map(|(i, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros();
                w &= w - 1;
                Some(i as u32 * 64 + b)
            })
        })
    }

    pub fn first(&self) -> Option<u32> {
        self.iter().next()
    }
}

impl FromIterator<u32> for AsgSet {
    fn from_iter<T: IntoIterator<Item = u32>>(iter: T) -> Self {
        let mut s = AsgSet::new();
        for c in iter {
            s.insert(c);
        }
        s
    }
}

impl fmt::Debug for AsgSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}
