//! Points of `Z^m` and the few combinators the rest of the crate is built on.

use std::fmt;
use std::ops::{Add, Index, Neg, Sub};
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::error::{Error, Result};

/// Largest coordinate magnitude accepted from external input.
///
/// Every enumeration in the crate adds at most a few hundred coordinates of
/// this size, so `i64` arithmetic stays exact far below this bound.
pub const COORD_LIMIT: i64 = 1 << 40;

/// Largest number of points supported. Subsets of `{1..m}` are bitmasks.
pub const MAX_POINTS: usize = 16;

/// A point `(a_1, ..., a_m)` of `Z^m`.
///
/// The derived ordering is lexicographic, which is the canonical output order
/// everywhere in the crate. The Bruhat (coordinatewise) partial order is
/// [`IntTuple::le_all`].
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct IntTuple(SmallVec<[i64; 4]>);

impl IntTuple {
    pub fn new(coords: impl Into<Vec<i64>>) -> Self {
        IntTuple(SmallVec::from_vec(coords.into()))
    }

    pub fn from_slice(coords: &[i64]) -> Self {
        IntTuple(SmallVec::from_slice(coords))
    }

    pub fn zeros(m: usize) -> Self {
        IntTuple(SmallVec::from_elem(0, m))
    }

    /// The all-ones tuple `1`.
    pub fn ones(m: usize) -> Self {
        IntTuple(SmallVec::from_elem(1, m))
    }

    /// The unit vector `e_i` (0-based `i`).
    pub fn unit(m: usize, i: usize) -> Self {
        let mut t = Self::zeros(m);
        t.0[i] = 1;
        t
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn coords_mut(&mut self) -> &mut [i64] {
        &mut self.0
    }

    /// `|a| = a_1 + ... + a_m`.
    pub fn degree(&self) -> i64 {
        self.0.iter().sum()
    }

    /// Coordinatewise `self <= other`.
    pub fn le_all(&self, other: &IntTuple) -> bool {
        debug_assert_eq!(self.len(), other.len());
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    /// Copy with `delta` added to coordinate `i`.
    pub fn shifted(&self, i: usize, delta: i64) -> IntTuple {
        let mut t = self.clone();
        t.0[i] += delta;
        t
    }

    /// `self - 1_J` for the subset `J`.
    pub fn minus_subset(&self, set: IndexSet) -> IntTuple {
        let mut t = self.clone();
        for i in set.iter() {
            t.0[i] -= 1;
        }
        t
    }

    /// `self - 1`.
    pub fn minus_ones(&self) -> IntTuple {
        IntTuple(self.0.iter().map(|c| c - 1).collect())
    }

    /// `self + 1`.
    pub fn plus_ones(&self) -> IntTuple {
        IntTuple(self.0.iter().map(|c| c + 1).collect())
    }

    pub fn check_len(&self, m: usize) -> Result<()> {
        if self.len() != m {
            return Err(Error::DimensionMismatch {
                expected: m,
                found: self.len(),
            });
        }
        Ok(())
    }

    pub fn check_magnitude(&self) -> Result<()> {
        match self.0.iter().find(|c| c.abs() > COORD_LIMIT) {
            Some(&c) => Err(Error::CoordinateOverflow(c)),
            None => Ok(()),
        }
    }
}

impl Index<usize> for IntTuple {
    type Output = i64;

    fn index(&self, i: usize) -> &i64 {
        &self.0[i]
    }
}

impl Add for &IntTuple {
    type Output = IntTuple;

    fn add(self, rhs: &IntTuple) -> IntTuple {
        assert_eq!(self.len(), rhs.len(), "tuple lengths differ");
        IntTuple(
            self.0
                .iter()
                .zip(rhs.0.iter())
                .map(|(a, b)| a + b)
                .collect(),
        )
    }
}

impl Sub for &IntTuple {
    type Output = IntTuple;

    fn sub(self, rhs: &IntTuple) -> IntTuple {
        assert_eq!(self.len(), rhs.len(), "tuple lengths differ");
        IntTuple(
            self.0
                .iter()
                .zip(rhs.0.iter())
                .map(|(a, b)| a - b)
                .collect(),
        )
    }
}

impl Neg for &IntTuple {
    type Output = IntTuple;

    fn neg(self) -> IntTuple {
        IntTuple(self.0.iter().map(|c| -c).collect())
    }
}

impl From<Vec<i64>> for IntTuple {
    fn from(v: Vec<i64>) -> Self {
        IntTuple::new(v)
    }
}

impl<const N: usize> From<[i64; N]> for IntTuple {
    fn from(v: [i64; N]) -> Self {
        IntTuple::from_slice(&v)
    }
}

impl fmt::Display for IntTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (k, c) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

impl fmt::Debug for IntTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Parses `"3,-1"`, `"(3,-1)"` or `"[3, -1]"`.
impl FromStr for IntTuple {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let inner = s
            .trim()
            .trim_start_matches(['(', '['])
            .trim_end_matches([')', ']']);
        if inner.trim().is_empty() {
            return Err(Error::Parse(format!("empty tuple {s:?}")));
        }
        let coords = inner
            .split(',')
            .map(|c| {
                c.trim()
                    .parse::<i64>()
                    .map_err(|e| Error::Parse(format!("bad coordinate {c:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        let t = IntTuple::new(coords);
        t.check_magnitude()?;
        Ok(t)
    }
}

/// A subset of `{0, ..., m-1}` stored as a bitmask.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct IndexSet(u32);

impl IndexSet {
    pub const EMPTY: IndexSet = IndexSet(0);

    pub fn full(m: usize) -> Self {
        IndexSet(((1u64 << m) - 1) as u32)
    }

    pub fn singleton(i: usize) -> Self {
        IndexSet(1 << i)
    }

    pub fn from_bits(bits: u32) -> Self {
        IndexSet(bits)
    }

    /// Builds a subset of `{0..m-1}` from 0-based indices.
    pub fn from_indices(m: usize, indices: &[usize]) -> Result<Self> {
        let mut bits = 0u32;
        for &i in indices {
            if i >= m {
                return Err(Error::IndexOutOfRange { index: i + 1, m });
            }
            bits |= 1 << i;
        }
        Ok(IndexSet(bits))
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn with(self, i: usize) -> Self {
        IndexSet(self.0 | 1 << i)
    }

    pub fn without(self, i: usize) -> Self {
        IndexSet(self.0 & !(1 << i))
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        (0..32).filter(move |&i| self.contains(i))
    }

    /// `(-1)^{#J}`.
    pub fn sign(self) -> i64 {
        if self.len().is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// All subsets of `self`, in increasing bitmask order.
    pub fn subsets(self) -> impl Iterator<Item = IndexSet> {
        let full = self.0;
        let mut next = Some(0u32);
        std::iter::from_fn(move || {
            let cur = next?;
            next = if cur == full {
                None
            } else {
                Some((cur.wrapping_sub(full)) & full)
            };
            Some(IndexSet(cur))
        })
    }
}

impl fmt::Debug for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter().map(|i| i + 1)).finish()
    }
}

/// The tuple `1_J`: coordinate `j` is 1 when `j` is in `J`. Indices are 0-based.
pub fn unit_tuple(m: usize, indices: &[usize]) -> Result<IntTuple> {
    let set = IndexSet::from_indices(m, indices)?;
    let mut t = IntTuple::zeros(m);
    for i in set.iter() {
        t.coords_mut()[i] = 1;
    }
    Ok(t)
}

/// Least upper bound: the coordinatewise maximum.
pub fn lub<'a, I>(tuples: I) -> Result<IntTuple>
where
    I: IntoIterator<Item = &'a IntTuple>,
{
    let mut iter = tuples.into_iter();
    let mut acc = iter.next().ok_or(Error::Empty)?.clone();
    for t in iter {
        t.check_len(acc.len())?;
        for (a, &b) in acc.coords_mut().iter_mut().zip(t.coords()) {
            *a = (*a).max(b);
        }
    }
    Ok(acc)
}
