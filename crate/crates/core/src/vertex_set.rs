use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::VertexId;

/// A subset of `0..universe`, stored as a packed bitset.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VertexSet {
    universe: usize,
    words: Vec<u64>,
}

impl VertexSet {
    pub fn new(universe: usize) -> Self {
        Self {
            universe,
            words: vec![0; universe.div_ceil(64)],
        }
    }

    pub fn full(universe: usize) -> Self {
        let mut s = Self::new(universe);
        for (i, w) in s.words.iter_mut().enumerate() {
            let lo = i * 64;
            let bits = (universe - lo).min(64);
            *w = if bits == 64 {
                u64::MAX
            } else {
                (1u64 << bits) - 1
            };
        }
        s
    }

    /// Builds a set from members; panics if a member is out of range.
    pub fn from_members(universe: usize, members: impl IntoIterator<Item = VertexId>) -> Self {
        let mut s = Self::new(universe);
        for v in members {
            s.insert(v);
        }
        s
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    #[inline]
    pub fn insert(&mut self, v: VertexId) -> bool {
        assert!(
            v < self.universe,
            "vertex {v} out of range {}",
            self.universe
        );
        let (w, b) = (v / 64, v % 64);
        let was = self.words[w] >> b & 1 == 1;
        self.words[w] |= 1 << b;
        !was
    }

    #[inline]
    pub fn remove(&mut self, v: VertexId) -> bool {
        if v >= self.universe {
            return false;
        }
        let (w, b) = (v / 64, v % 64);
        let was = self.words[w] >> b & 1 == 1;
        self.words[w] &= !(1 << b);
        was
    }

    #[inline]
    pub fn contains(&self, v: VertexId) -> bool {
        v < self.universe && self.words[v / 64] >> (v % 64) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_full(&self) -> bool {
        self.len() == self.universe
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.words
            .iter()
            .zip(other.words.iter().chain(std::iter::repeat(&0)))
            .all(|(a, b)| a & !b == 0)
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }

    pub fn union_with(&mut self, other: &VertexSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn intersect_with(&mut self, other: &VertexSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    pub fn difference_with(&mut self, other: &VertexSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
    }

    /// Complement within the universe.
    pub fn complement(&self) -> VertexSet {
        let mut out = VertexSet::full(self.universe);
        out.difference_with(self);
        out
    }

    /// Smallest member not in the set, if any.
    pub fn first_missing(&self) -> Option<VertexId> {
        for (i, &w) in self.words.iter().enumerate() {
            if w != u64::MAX {
                let v = i * 64 + (!w).trailing_zeros() as usize;
                return (v < self.universe).then_some(v);
            }
        }
        None
    }

    pub fn iter(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(i * 64 + b)
            })
        })
    }

    /// Members in ascending order.
    pub fn to_vec(&self) -> Vec<VertexId> {
        self.iter().collect()
    }

    /// The set as a single machine word, when the universe fits.
    pub fn as_mask(&self) -> Option<u64> {
        match self.words.len() {
            0 => Some(0),
            1 => Some(self.words[0]),
            _ => None,
        }
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl Serialize for VertexSet {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}

/// Deserializes a member list; the universe is taken as `max + 1` and should be
/// widened with [`VertexSet::with_universe`] when the owning hypergraph is known.
impl<'de> Deserialize<'de> for VertexSet {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let members = Vec::<VertexId>::deserialize(d)?;
        let universe = members.iter().max().map_or(0, |m| m + 1);
        Ok(VertexSet::from_members(universe, members))
    }
}

impl VertexSet {
    pub fn with_universe(&self, universe: usize) -> VertexSet {
        VertexSet::from_members(universe, self.iter())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_ops() {
        let mut s = VertexSet::new(130);
        assert!(s.is_empty());
        assert!(s.insert(0));
        assert!(s.insert(64));
        assert!(s.insert(129));
        assert!(!s.insert(129));
        assert_eq!(s.len(), 3);
        assert_eq!(s.to_vec(), vec![0, 64, 129]);
        assert!(s.remove(64));
        assert!(!s.contains(64));
        assert_eq!(s.first_missing(), Some(1));
        let f = VertexSet::full(130);
        assert_eq!(f.len(), 130);
        assert_eq!(f.first_missing(), None);
        assert!(s.is_subset(&f));
        assert_eq!(s.complement().len(), 128);
    }

    #[test]
    fn empty_universe() {
        let s = VertexSet::full(0);
        assert!(s.is_empty());
        assert!(s.is_full());
        assert_eq!(s.first_missing(), None);
        assert_eq!(s.as_mask(), Some(0));
    }

    #[test]
    fn serde_as_member_list() {
        let s = VertexSet::from_members(10, [3, 1, 7]);
        let json = serde_json::to_string(&s).unwrap();
        assert_eq!(json, "[1,3,7]");
        let back: VertexSet = serde_json::from_str(&json).unwrap();
        assert_eq!(back.with_universe(10), s);
    }
}
