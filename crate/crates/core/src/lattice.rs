//! The period lattice generated by `a_i (e_i - e_{i+1})`, its fundamental
//! region, and finite boxes of `Z^m`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tuple::{IntTuple, MAX_POINTS};

/// Sublattice of the degree-zero hyperplane spanned by
/// `eta^i = a_i e_i - a_i e_{i+1}` for `i = 1..m-1`.
///
/// The fundamental region `C` constrains the first `m-1` coordinates to
/// `0 <= x_i < a_i` and leaves the last coordinate free.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Lattice {
    periods: Vec<i64>,
}

impl Lattice {
    /// Lattice for `m = periods.len() + 1` points.
    pub fn from_periods(periods: Vec<i64>) -> Result<Self> {
        let m = periods.len() + 1;
        if !(2..=MAX_POINTS).contains(&m) {
            return Err(Error::InvalidLattice(format!(
                "need between 1 and {} periods, got {}",
                MAX_POINTS - 1,
                periods.len()
            )));
        }
        if let Some(p) = periods.iter().find(|&&p| p <= 0) {
            return Err(Error::InvalidLattice(format!("period {p} is not positive")));
        }
        if let Some(&p) = periods.iter().find(|&&p| p > crate::tuple::COORD_LIMIT) {
            return Err(Error::CoordinateOverflow(p));
        }
        Ok(Lattice { periods })
    }

    /// Recovers the periods from explicit generators, checking that
    /// generator `i` is `a_i e_i - a_i e_{i+1}`.
    pub fn from_generators(generators: &[IntTuple]) -> Result<Self> {
        let m = generators.len() + 1;
        let mut periods = Vec::with_capacity(generators.len());
        for (i, g) in generators.iter().enumerate() {
            g.check_len(m).map_err(|_| {
                Error::InvalidLattice(format!(
                    "generator {} has {} coordinates, expected {m}",
                    i + 1,
                    g.len()
                ))
            })?;
            let a = g[i];
            let well_shaped = (0..m).all(|j| {
                g[j] == if j == i {
                    a
                } else if j == i + 1 {
                    -a
                } else {
                    0
                }
            });
            if !well_shaped || a <= 0 {
                return Err(Error::InvalidLattice(format!(
                    "generator {} = {g} is not of the form a*(e_{} - e_{}) with a > 0",
                    i + 1,
                    i + 1,
                    i + 2
                )));
            }
            periods.push(a);
        }
        Self::from_periods(periods)
    }

    pub fn m(&self) -> usize {
        self.periods.len() + 1
    }

    pub fn periods(&self) -> &[i64] {
        &self.periods
    }

    /// `eta^i` for 0-based `i < m - 1`.
    pub fn generator(&self, i: usize) -> IntTuple {
        let mut g = IntTuple::zeros(self.m());
        g.coords_mut()[i] = self.periods[i];
        g.coords_mut()[i + 1] = -self.periods[i];
        g
    }

    pub fn generators(&self) -> Vec<IntTuple> {
        (0..self.periods.len()).map(|i| self.generator(i)).collect()
    }

    /// `alpha + sum_i coeffs_i eta^i`.
    pub fn translate(&self, alpha: &IntTuple, coeffs: &[i64]) -> IntTuple {
        assert_eq!(coeffs.len(), self.periods.len());
        let mut t = alpha.clone();
        let c = t.coords_mut();
        for (i, (&k, &a)) in coeffs.iter().zip(&self.periods).enumerate() {
            c[i] += k * a;
            c[i + 1] -= k * a;
        }
        t
    }

    /// Whether `alpha` lies in the fundamental region `C`.
    pub fn in_region(&self, alpha: &IntTuple) -> bool {
        self.periods
            .iter()
            .enumerate()
            .all(|(i, &a)| (0..a).contains(&alpha[i]))
    }

    /// Unique representative of `alpha + Theta` in `C`, with the lattice
    /// coordinates of the difference: `alpha = rep + sum coeffs_i eta^i`.
    ///
    /// Reduction is a left-to-right carry chain: `k_1 = floor(x_1 / a_1)`,
    /// then `k_1 a_1` is carried into coordinate 2 before computing `k_2`.
    pub fn canonicalize(&self, alpha: &IntTuple) -> (IntTuple, Vec<i64>) {
        assert_eq!(alpha.len(), self.m(), "tuple length differs from m");
        let mut rep = alpha.clone();
        let mut coeffs = Vec::with_capacity(self.periods.len());
        let c = rep.coords_mut();
        for (i, &a) in self.periods.iter().enumerate() {
            let k = c[i].div_euclid(a);
            c[i] -= k * a;
            c[i + 1] += k * a;
            coeffs.push(k);
        }
        (rep, coeffs)
    }

    /// The representative alone; cheaper than [`Lattice::canonicalize`].
    pub fn reduce(&self, alpha: &IntTuple) -> IntTuple {
        let mut rep = alpha.clone();
        let c = rep.coords_mut();
        for (i, &a) in self.periods.iter().enumerate() {
            let k = c[i].div_euclid(a);
            c[i] -= k * a;
            c[i + 1] += k * a;
        }
        rep
    }

    /// Number of residue prefixes `(x_1, ..., x_{m-1})` with `0 <= x_i < a_i`.
    pub fn region_prefix_count(&self) -> u128 {
        self.periods.iter().map(|&a| a as u128).product()
    }

    /// All prefixes `(x_1, ..., x_{m-1})` of `C` in lexicographic order.
    pub fn region_prefixes(&self) -> Vec<Vec<i64>> {
        let mut out = vec![Vec::new()];
        for &a in &self.periods {
            out = out
                .into_iter()
                .flat_map(|p| {
                    (0..a).map(move |x| {
                        let mut q = p.clone();
                        q.push(x);
                        q
                    })
                })
                .collect();
        }
        out
    }

    /// The slab `{x in C : lo <= |x| <= hi}`, ordered by prefix then degree.
    pub fn region_slab(&self, lo: i64, hi: i64) -> Vec<IntTuple> {
        let mut out = Vec::new();
        for prefix in self.region_prefixes() {
            let partial: i64 = prefix.iter().sum();
            for s in lo..=hi {
                let mut coords = prefix.clone();
                coords.push(s - partial);
                out.push(IntTuple::new(coords));
            }
        }
        out
    }
}

/// The finite window `{x : lower <= x <= upper}`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "BoxRepr", into = "BoxRepr")]
pub struct IntBox {
    lower: IntTuple,
    upper: IntTuple,
}

#[derive(Serialize, Deserialize)]
struct BoxRepr {
    lower: IntTuple,
    upper: IntTuple,
}

impl TryFrom<BoxRepr> for IntBox {
    type Error = Error;

    fn try_from(r: BoxRepr) -> Result<Self> {
        IntBox::new(r.lower, r.upper)
    }
}

impl From<IntBox> for BoxRepr {
    fn from(b: IntBox) -> Self {
        BoxRepr {
            lower: b.lower,
            upper: b.upper,
        }
    }
}

impl IntBox {
    pub fn new(lower: IntTuple, upper: IntTuple) -> Result<Self> {
        if lower.len() != upper.len() || lower.is_empty() {
            return Err(Error::InvalidBox(format!(
                "bounds {lower} and {upper} have different or zero lengths"
            )));
        }
        lower.check_magnitude()?;
        upper.check_magnitude()?;
        if !lower.le_all(&upper) {
            return Err(Error::InvalidBox(format!("{lower} is not below {upper}")));
        }
        Ok(IntBox { lower, upper })
    }

    /// `[lo, hi]^m`.
    pub fn cube(m: usize, lo: i64, hi: i64) -> Result<Self> {
        Self::new(IntTuple::new(vec![lo; m]), IntTuple::new(vec![hi; m]))
    }

    /// Box with per-coordinate ranges `[(l_1, u_1), ...]`.
    pub fn from_ranges(ranges: &[(i64, i64)]) -> Result<Self> {
        Self::new(
            IntTuple::new(ranges.iter().map(|r| r.0).collect::<Vec<_>>()),
            IntTuple::new(ranges.iter().map(|r| r.1).collect::<Vec<_>>()),
        )
    }

    pub fn point(p: IntTuple) -> Result<Self> {
        Self::new(p.clone(), p)
    }

    pub fn lower(&self) -> &IntTuple {
        &self.lower
    }

    pub fn upper(&self) -> &IntTuple {
        &self.upper
    }

    pub fn dim(&self) -> usize {
        self.lower.len()
    }

    pub fn contains(&self, p: &IntTuple) -> bool {
        p.len() == self.dim() && self.lower.le_all(p) && p.le_all(&self.upper)
    }

    pub fn side(&self, i: usize) -> u128 {
        (self.upper[i] - self.lower[i]) as u128 + 1
    }

    /// Number of lattice points, saturating at `u128::MAX`.
    pub fn point_count(&self) -> u128 {
        (0..self.dim()).fold(1u128, |acc, i| acc.saturating_mul(self.side(i)))
    }

    /// Position of `p` in the lexicographic enumeration.
    pub fn linear_index(&self, p: &IntTuple) -> Option<usize> {
        if !self.contains(p) {
            return None;
        }
        let mut idx = 0usize;
        for i in 0..self.dim() {
            idx = idx * self.side(i) as usize + (p[i] - self.lower[i]) as usize;
        }
        Some(idx)
    }

    /// Point at lexicographic position `idx`.
    pub fn point_at(&self, mut idx: usize) -> IntTuple {
        let m = self.dim();
        let mut coords = vec![0i64; m];
        for i in (0..m).rev() {
            let side = self.side(i) as usize;
            coords[i] = self.lower[i] + (idx % side) as i64;
            idx /= side;
        }
        IntTuple::new(coords)
    }

    /// All points in lexicographic order (last coordinate fastest).
    pub fn points(&self) -> impl Iterator<Item = IntTuple> + '_ {
        let n = self.point_count() as usize;
        (0..n).map(move |k| self.point_at(k))
    }
}

impl fmt::Display for IntBox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.dim() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}..{}", self.lower[i], self.upper[i])?;
        }
        Ok(())
    }
}

impl fmt::Debug for IntBox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntBox[{self}]")
    }
}

/// Parses `"l1..u1,l2..u2,..."`.
impl FromStr for IntBox {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let ranges = s
            .split(',')
            .map(|part| {
                let (l, u) = part
                    .trim()
                    .split_once("..")
                    .ok_or_else(|| Error::Parse(format!("range {part:?} lacks '..'")))?;
                let parse = |x: &str| {
                    x.trim()
                        .parse::<i64>()
                        .map_err(|e| Error::Parse(format!("bad bound {x:?}: {e}")))
                };
                Ok((parse(l)?, parse(u)?))
            })
            .collect::<Result<Vec<_>>>()?;
        IntBox::from_ranges(&ranges)
    }
}
