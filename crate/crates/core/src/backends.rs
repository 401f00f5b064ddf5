//! Ground-truth models with dimension formulas that do not go through the
//! combinatorial `ℓ`: the projective line with `m` rational points, and the
//! Hermitian curve `y^q + y = x^{q+1}` at its point at infinity and `(0,0)`.

use crate::description::Description;
use crate::error::{Error, Result};
use crate::lattice::{IntBox, Lattice};
use crate::semigroup::Semigroup;
use crate::tuple::{IntTuple, MAX_POINTS};

/// `m` distinct rational points on a genus-0 curve. Needs a field with at
/// least `m` elements, which is a modelling assumption and not checked.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Genus0Model {
    m: usize,
}

impl Genus0Model {
    pub fn new(m: usize) -> Result<Self> {
        if !(2..=MAX_POINTS).contains(&m) {
            return Err(Error::InvalidParameter(format!(
                "genus-0 model needs 2 <= m <= {MAX_POINTS}, got {m}"
            )));
        }
        Ok(Genus0Model { m })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// Riemann-Roch on the projective line: `max(0, |α| + 1)`.
    pub fn ell(&self, alpha: &IntTuple) -> u64 {
        assert_eq!(alpha.len(), self.m);
        (alpha.degree() + 1).max(0) as u64
    }

    /// `Q_i - Q_{i+1}` is principal, so every period is 1 and the only
    /// absolute maximal class is that of zero.
    pub fn description(&self) -> Description {
        let lattice = Lattice::from_periods(vec![1; self.m - 1]).expect("valid periods");
        Description::new(
            0,
            lattice,
            [IntTuple::zeros(self.m)],
            format!("genus0 m={}", self.m),
        )
        .expect("genus-0 description is well formed")
    }
}

pub fn genus0_ell(m: usize, alpha: &IntTuple) -> Result<u64> {
    alpha.check_len(m)?;
    Ok(Genus0Model::new(m)?.ell(alpha))
}

pub fn genus0_description(m: usize) -> Result<Description> {
    Ok(Genus0Model::new(m)?.description())
}

/// Exponents of a reduced monomial `x^a y^b` with `0 <= a <= q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct MonomialExponent {
    pub a: i64,
    pub b: i64,
}

impl MonomialExponent {
    /// `(-v_{Q∞}, -v_{P00})` of `x^a y^b`: `x` has a pole of order `q` at
    /// infinity and a simple zero at `(0,0)`; `y` has orders `q+1` at both.
    pub fn pole_vector(&self, q: i64) -> IntTuple {
        IntTuple::from([self.a * q + self.b * (q + 1), -self.a - self.b * (q + 1)])
    }
}

/// The Hermitian curve over `F_{q^2}` with the pair `(Q∞, P00)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HermitianTwoPointModel {
    q: i64,
}

impl HermitianTwoPointModel {
    pub fn new(q: i64) -> Result<Self> {
        if q < 2 || !is_prime_power(q) {
            return Err(Error::InvalidParameter(format!(
                "q must be a prime power >= 2, got {q}"
            )));
        }
        if q > 1 << 15 {
            return Err(Error::InvalidParameter(format!("q = {q} is too large")));
        }
        Ok(HermitianTwoPointModel { q })
    }

    pub fn q(&self) -> i64 {
        self.q
    }

    pub fn genus(&self) -> i64 {
        self.q * (self.q - 1) / 2
    }

    pub fn period(&self) -> i64 {
        self.q + 1
    }

    /// Reduced monomials in `L(α)`; `b` ranges over
    /// `(-α₂ - a)/(q+1) <= b <= (α₁ - aq)/(q+1)`.
    pub fn monomials(&self, alpha: &IntTuple) -> Vec<MonomialExponent> {
        assert_eq!(alpha.len(), 2);
        let (q, p) = (self.q, self.q + 1);
        let mut out = Vec::new();
        for a in 0..=q {
            let hi = (alpha[0] - a * q).div_euclid(p);
            let lo = -(alpha[1] + a).div_euclid(p);
            out.extend((lo..=hi).map(|b| MonomialExponent { a, b }));
        }
        out
    }

    /// Number of reduced monomials with pole vector at most `α`. They have
    /// pairwise distinct valuations at both points, so they form a basis.
    pub fn ell(&self, alpha: &IntTuple) -> u64 {
        assert_eq!(alpha.len(), 2);
        let (q, p) = (self.q, self.q + 1);
        (0..=q)
            .map(|a| {
                let hi = (alpha[0] - a * q).div_euclid(p);
                let lo = -(alpha[1] + a).div_euclid(p);
                (hi - lo + 1).max(0) as u64
            })
            .sum()
    }

    fn member(&self, alpha: &IntTuple) -> bool {
        let top = self.ell(alpha);
        (0..2).all(|i| self.ell(&alpha.shifted(i, -1)) + 1 == top)
    }

    fn is_absolute_maximal(&self, alpha: &IntTuple) -> bool {
        self.member(alpha) && self.ell(&alpha.minus_ones()) + 1 == self.ell(alpha)
    }

    /// Scans the fundamental slab with this model's own dimension count.
    pub fn description(&self) -> Description {
        let lattice = Lattice::from_periods(vec![self.period()]).expect("valid period");
        let top = 2 * self.genus();
        let gamma: Vec<IntTuple> = lattice
            .region_slab(0, top)
            .into_iter()
            .filter(|alpha| self.is_absolute_maximal(alpha))
            .collect();
        Description::new(
            self.genus(),
            lattice,
            gamma,
            format!("hermitian q={} (Qinf,P00)", self.q),
        )
        .expect("hermitian description is well formed")
    }
}

pub fn hermitian_ell(q: i64, alpha: &IntTuple) -> Result<u64> {
    alpha.check_len(2)?;
    Ok(HermitianTwoPointModel::new(q)?.ell(alpha))
}

pub fn hermitian_description(q: i64) -> Result<Description> {
    Ok(HermitianTwoPointModel::new(q)?.description())
}

/// First point of `window` where the combinatorial `ℓ` of the generated
/// description disagrees with the monomial count, if any.
pub fn cross_validation_failure(q: i64, window: &IntBox) -> Result<Option<IntTuple>> {
    use rayon::prelude::*;

    let model = HermitianTwoPointModel::new(q)?;
    if window.dim() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: window.dim(),
        });
    }
    let sg = Semigroup::new(model.description());
    let n = window.point_count() as usize;
    Ok((0..n)
        .into_par_iter()
        .map(|k| window.point_at(k))
        .find_first(|alpha| sg.ell(alpha) != model.ell(alpha)))
}

pub fn cross_validate(q: i64, window: &IntBox) -> Result<bool> {
    Ok(cross_validation_failure(q, window)?.is_none())
}

pub fn is_prime_power(n: i64) -> bool {
    if n < 2 {
        return false;
    }
    let p = (2..=n).find(|d| n % d == 0).expect("n has a prime divisor");
    let mut rest = n;
    while rest % p == 0 {
        rest /= p;
    }
    rest == 1
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::{BTreeSet, HashSet};

    fn t(v: &[i64]) -> IntTuple {
        IntTuple::from_slice(v)
    }

    #[test]
    fn genus0_ell_examples() {
        assert_eq!(genus0_ell(3, &t(&[0, 0, 0])).unwrap(), 1);
        assert_eq!(genus0_ell(3, &t(&[2, -1, 0])).unwrap(), 2);
        assert_eq!(genus0_ell(2, &t(&[0, -1])).unwrap(), 0);
        assert!(genus0_ell(2, &t(&[0, 0, 0])).is_err());
        assert!(genus0_ell(1, &t(&[0])).is_err());
    }

    #[test]
    fn genus0_descriptions() {
        let d2 = genus0_description(2).unwrap();
        assert_eq!(d2.genus(), 0);
        assert_eq!(d2.lattice().generators(), vec![t(&[1, -1])]);
        assert_eq!(d2.gamma_fundamental(), &BTreeSet::from([t(&[0, 0])]));
        let d3 = genus0_description(3).unwrap();
        assert_eq!(
            d3.lattice().generators(),
            vec![t(&[1, -1, 0]), t(&[0, 1, -1])]
        );
        let d4 = genus0_description(4).unwrap();
        assert_eq!(d4.lattice().generators().len(), 3);
        assert_eq!(d4.gamma_fundamental().len(), 1);
    }

    #[test]
    fn hermitian_ell_examples() {
        assert_eq!(hermitian_ell(3, &t(&[0, 0])).unwrap(), 1);
        assert_eq!(hermitian_ell(3, &t(&[2, 2])).unwrap(), 2);
        assert_eq!(hermitian_ell(3, &t(&[4, -5])).unwrap(), 0);
        assert!(hermitian_ell(6, &t(&[0, 0])).is_err());
        assert!(hermitian_ell(1, &t(&[0, 0])).is_err());
    }

    #[test]
    fn hermitian_monomials_for_2_2() {
        let m = HermitianTwoPointModel::new(3).unwrap();
        assert_eq!(
            m.monomials(&t(&[2, 2])),
            vec![
                MonomialExponent { a: 0, b: 0 },
                MonomialExponent { a: 2, b: -1 }
            ]
        );
        assert_eq!(MonomialExponent { a: 2, b: -1 }.pole_vector(3), t(&[2, 2]));
        assert_eq!(MonomialExponent { a: 0, b: 1 }.pole_vector(3), t(&[4, -4]));
    }

    #[test]
    fn monomial_valuations_are_distinct() {
        for q in [2, 3, 4, 5, 7] {
            let mut at_inf = HashSet::new();
            let mut at_origin = HashSet::new();
            for a in 0..=q {
                for b in -60..=60 {
                    let v = MonomialExponent { a, b }.pole_vector(q);
                    assert!(at_inf.insert(v[0]), "q={q}: repeated pole order {}", v[0]);
                    assert!(at_origin.insert(v[1]), "q={q}: repeated order {}", v[1]);
                }
            }
        }
    }

    #[test]
    fn hermitian_descriptions() {
        let d3 = hermitian_description(3).unwrap();
        assert_eq!(d3.genus(), 3);
        assert_eq!(d3.lattice().periods(), &[4]);
        assert_eq!(
            d3.gamma_fundamental(),
            &BTreeSet::from([t(&[0, 0]), t(&[1, 5]), t(&[2, 2]), t(&[3, -1])])
        );
        let d2 = hermitian_description(2).unwrap();
        assert_eq!((d2.genus(), d2.lattice().periods()[0]), (1, 3));
        assert_eq!(d2.gamma_fundamental().len(), 3);
        assert_eq!(d2.gamma_fundamental().first(), Some(&t(&[0, 0])));
        let d4 = hermitian_description(4).unwrap();
        assert_eq!((d4.genus(), d4.lattice().periods()[0]), (6, 5));
        assert_eq!(d4.gamma_fundamental().len(), 5);
    }

    #[test]
    fn hermitian_riemann_roch_and_periodicity() {
        for q in [2, 3, 4] {
            let model = HermitianTwoPointModel::new(q).unwrap();
            let g = model.genus();
            let eta = t(&[q + 1, -(q + 1)]);
            for alpha in IntBox::cube(2, -3 * g - 4, 3 * g + 4).unwrap().points() {
                let l = model.ell(&alpha) as i64;
                if alpha.degree() >= 2 * g - 1 {
                    assert_eq!(l, alpha.degree() + 1 - g, "q={q} {alpha}");
                }
                if alpha.degree() < 0 {
                    assert_eq!(l, 0);
                }
                assert_eq!(model.ell(&(&alpha + &eta)) as i64, l);
                assert_eq!(model.monomials(&alpha).len() as i64, l);
            }
        }
    }

    #[test]
    fn cross_validation_examples() {
        let big = IntBox::from_ranges(&[(-8, 9), (-8, 10)]).unwrap();
        assert!(cross_validate(3, &big).unwrap());
        assert!(cross_validate(2, &IntBox::cube(2, -5, 5).unwrap()).unwrap());
        let negative = IntBox::from_ranges(&[(-9, -5), (-3, 2)]).unwrap();
        assert!(cross_validate(3, &negative).unwrap());
        assert!(cross_validate(3, &IntBox::cube(3, 0, 1).unwrap()).is_err());
    }

    #[test]
    fn prime_powers() {
        let pp: Vec<i64> = (0..30).filter(|&n| is_prime_power(n)).collect();
        assert_eq!(
            pp,
            vec![2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19, 23, 25, 27, 29]
        );
    }
}
