//! Box truncations of the series `L(t)`, `Q(t)`, `P(t)`, the semigroup
//! polynomial `P*(t)`, and coefficientwise checks of their functional
//! equations.
//!
//! Series are never multiplied. Every identity is checked one coefficient at
//! a time, and the lattice sum `Σ_{η∈Θ} t^η` is replaced by a lookup of the
//! fundamental-region representative.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::IntBox;
use crate::semigroup::Semigroup;
use crate::tuple::{IndexSet, IntTuple};

/// `d(α) = ℓ(α) - ℓ(α - 1)`, between 0 and `m`.
pub fn coeff_d(sg: &Semigroup, alpha: &IntTuple) -> i64 {
    sg.ell(alpha) as i64 - sg.ell(&alpha.minus_ones()) as i64
}

/// `q(α) = Σ_{J ⊆ I} (-1)^{#J} d(α - 1_J)`.
pub fn coeff_q(sg: &Semigroup, alpha: &IntTuple) -> i64 {
    IndexSet::full(sg.m())
        .subsets()
        .map(|j| j.sign() * coeff_d(sg, &alpha.minus_subset(j)))
        .sum()
}

/// `p_i(α) = (-1)^{m-1} Σ_{J ⊆ I∖{i}} (-1)^{#J} d_i(α - 1 + 1_J + e_i)`.
pub fn coeff_p_index(sg: &Semigroup, alpha: &IntTuple, i: usize) -> i64 {
    let m = sg.m();
    assert!(i < m, "index {i} out of range for m = {m}");
    let base = alpha.minus_ones().shifted(i, 1);
    let sum: i64 = IndexSet::full(m)
        .without(i)
        .subsets()
        .map(|j| {
            let mut beta = base.clone();
            for k in j.iter() {
                beta.coords_mut()[k] += 1;
            }
            j.sign() * sg.d_jump(&beta, i) as i64
        })
        .sum();
    if (m - 1).is_multiple_of(2) {
        sum
    } else {
        -sum
    }
}

/// `p(α)`, computed with the first index.
pub fn coeff_p(sg: &Semigroup, alpha: &IntTuple) -> i64 {
    coeff_p_index(sg, alpha, 0)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SeriesKind {
    L,
    Q,
    P,
    #[serde(rename = "custom")]
    Custom,
}

impl SeriesKind {
    pub fn coefficient(self, sg: &Semigroup, alpha: &IntTuple) -> Option<i64> {
        match self {
            SeriesKind::L => Some(coeff_d(sg, alpha)),
            SeriesKind::Q => Some(coeff_q(sg, alpha)),
            SeriesKind::P => Some(coeff_p(sg, alpha)),
            SeriesKind::Custom => None,
        }
    }
}

impl fmt::Display for SeriesKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SeriesKind::L => "L",
            SeriesKind::Q => "Q",
            SeriesKind::P => "P",
            SeriesKind::Custom => "custom",
        })
    }
}

/// A series truncated to a box, stored densely in lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoxSeries {
    window: IntBox,
    kind: SeriesKind,
    coeffs: Vec<i64>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct BoxSeriesFile {
    #[serde(rename = "box")]
    window: IntBox,
    kind: SeriesKind,
    coeffs: Vec<(IntTuple, i64)>,
}

impl BoxSeries {
    /// `coeffs` lists every box point's coefficient in lexicographic order.
    pub fn new(window: IntBox, kind: SeriesKind, coeffs: Vec<i64>) -> Result<Self> {
        if coeffs.len() as u128 != window.point_count() {
            return Err(Error::InvalidParameter(format!(
                "{} coefficients for a box of {} points",
                coeffs.len(),
                window.point_count()
            )));
        }
        Ok(BoxSeries {
            window,
            kind,
            coeffs,
        })
    }

    pub fn window(&self) -> &IntBox {
        &self.window
    }

    pub fn kind(&self) -> SeriesKind {
        self.kind
    }

    pub fn get(&self, alpha: &IntTuple) -> Option<i64> {
        self.window.linear_index(alpha).map(|k| self.coeffs[k])
    }

    pub fn iter(&self) -> impl Iterator<Item = (IntTuple, i64)> + '_ {
        self.window.points().zip(self.coeffs.iter().copied())
    }

    /// Points with nonzero coefficient, in lexicographic order.
    pub fn support(&self) -> Vec<IntTuple> {
        self.iter()
            .filter(|(_, c)| *c != 0)
            .map(|(a, _)| a)
            .collect()
    }

    pub fn to_json(&self) -> String {
        let file = BoxSeriesFile {
            window: self.window.clone(),
            kind: self.kind,
            coeffs: self.iter().filter(|(_, c)| *c != 0).collect(),
        };
        serde_json::to_string(&file).expect("series serializes")
    }

    /// Omitted box points get coefficient zero.
    pub fn from_json(text: &str) -> Result<Self> {
        let file: BoxSeriesFile = serde_json::from_str(text)?;
        let mut coeffs = vec![0i64; file.window.point_count() as usize];
        for (alpha, c) in file.coeffs {
            let k = file.window.linear_index(&alpha).ok_or_else(|| {
                Error::InvalidParameter(format!("{alpha} lies outside {}", file.window))
            })?;
            coeffs[k] = c;
        }
        BoxSeries::new(file.window, file.kind, coeffs)
    }
}

/// Evaluates `L`, `Q` or `P` at every point of `window`.
pub fn series_on_box(sg: &Semigroup, kind: SeriesKind, window: &IntBox) -> Result<BoxSeries> {
    if kind == SeriesKind::Custom {
        return Err(Error::InvalidParameter(
            "custom series cannot be computed".into(),
        ));
    }
    window.lower().check_len(sg.m())?;
    let n = window.point_count() as usize;
    let coeffs = (0..n)
        .into_par_iter()
        .map(|k| {
            kind.coefficient(sg, &window.point_at(k))
                .expect("computable kind")
        })
        .collect();
    BoxSeries::new(window.clone(), kind, coeffs)
}

/// First point of `window`, in lexicographic order, where `violated` holds.
pub fn first_violation<F>(window: &IntBox, violated: F) -> Option<IntTuple>
where
    F: Fn(&IntTuple) -> bool + Sync,
{
    let n = window.point_count() as usize;
    (0..n)
        .into_par_iter()
        .map(|k| window.point_at(k))
        .find_first(|alpha| violated(alpha))
}

/// Where `q(α) != p(α) - p(α - 1)`, i.e. `(1 - t_1⋯t_m) P = Q` fails.
pub fn qp_equation_violation(sg: &Semigroup, window: &IntBox) -> Option<IntTuple> {
    first_violation(window, |a| {
        coeff_q(sg, a) != coeff_p(sg, a) - coeff_p(sg, &a.minus_ones())
    })
}

pub fn check_qp_equation(sg: &Semigroup, window: &IntBox) -> bool {
    qp_equation_violation(sg, window).is_none()
}

/// Where `p_i(α)` differs between two indices.
pub fn poincare_index_violation(sg: &Semigroup, window: &IntBox) -> Option<IntTuple> {
    first_violation(window, |a| {
        let p0 = coeff_p_index(sg, a, 0);
        (1..sg.m()).any(|i| coeff_p_index(sg, a, i) != p0)
    })
}

/// Where the support law fails: `p = 0` off `M(Q)`, `p = 1` on `Γ(Q)`.
pub fn support_law_violation(sg: &Semigroup, window: &IntBox) -> Option<IntTuple> {
    first_violation(window, |a| {
        let p = coeff_p(sg, a);
        if !sg.is_maximal(a) {
            p != 0
        } else if sg.is_absolute_maximal(a) {
            p != 1
        } else {
            false
        }
    })
}

/// The finite Laurent polynomial `P*(t) = Σ_{α ∈ M(Q)∩C} p(α) t^α`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SemigroupPolynomial {
    terms: BTreeMap<IntTuple, i64>,
}

#[derive(Serialize, Deserialize)]
struct PolynomialFile {
    terms: Vec<(IntTuple, i64)>,
}

impl SemigroupPolynomial {
    /// Zero coefficients are dropped.
    pub fn from_terms(terms: impl IntoIterator<Item = (IntTuple, i64)>) -> Self {
        SemigroupPolynomial {
            terms: terms.into_iter().filter(|(_, c)| *c != 0).collect(),
        }
    }

    pub fn terms(&self) -> &BTreeMap<IntTuple, i64> {
        &self.terms
    }

    pub fn coefficient(&self, alpha: &IntTuple) -> i64 {
        self.terms.get(alpha).copied().unwrap_or(0)
    }

    pub fn to_json(&self) -> String {
        let file = PolynomialFile {
            terms: self.terms.iter().map(|(a, c)| (a.clone(), *c)).collect(),
        };
        serde_json::to_string(&file).expect("polynomial serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: PolynomialFile = serde_json::from_str(text)?;
        Ok(Self::from_terms(file.terms))
    }
}

/// Renders as `1 + t1*t2^5 - t3`, terms in lexicographic order of exponents.
impl fmt::Display for SemigroupPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (alpha, &c)) in self.terms.iter().enumerate() {
            let monomial: Vec<String> = alpha
                .coords()
                .iter()
                .enumerate()
                .filter(|(_, &e)| e != 0)
                .map(|(i, &e)| match e {
                    1 => format!("t{}", i + 1),
                    _ => format!("t{}^{}", i + 1, e),
                })
                .collect();
            let sign = if c < 0 { "-" } else { "+" };
            match k {
                0 if c < 0 => f.write_str("-")?,
                0 => {}
                _ => write!(f, " {sign} ")?,
            }
            let mag = c.abs();
            match (mag, monomial.is_empty()) {
                (_, true) => write!(f, "{mag}")?,
                (1, false) => write!(f, "{}", monomial.join("*"))?,
                (_, false) => write!(f, "{mag}*{}", monomial.join("*"))?,
            }
        }
        Ok(())
    }
}

pub fn semigroup_polynomial(sg: &Semigroup) -> SemigroupPolynomial {
    let region = sg.maximals_in_region();
    SemigroupPolynomial::from_terms(region.maximal.into_iter().map(|a| {
        let p = coeff_p(sg, &a);
        (a, p)
    }))
}

/// Where `p(α)` differs from the `P*` coefficient of `α`'s representative.
pub fn reconstruction_violation(
    sg: &Semigroup,
    poly: &SemigroupPolynomial,
    window: &IntBox,
) -> Option<IntTuple> {
    let lattice = sg.description().lattice();
    first_violation(window, |a| {
        coeff_p(sg, a) != poly.coefficient(&lattice.reduce(a))
    })
}

pub fn check_reconstruction(sg: &Semigroup, window: &IntBox) -> bool {
    reconstruction_violation(sg, &semigroup_polynomial(sg), window).is_none()
}

/// Symmetry verdict with its witnesses.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SymmetryReport {
    /// Some maximal class has degree `2g - 2 + m`.
    pub symmetric: bool,
    /// Lexicographically least such class representative in `C`.
    pub sigma: Option<IntTuple>,
    /// First non-member of degree `2g - 1` in the fundamental region.
    pub gamma_witness: Option<IntTuple>,
    /// Some maximal `σ'` of degree `2g - 2 + m` has no coordinate equal to 1.
    pub canonical_full_support: bool,
    pub canonical_witness: Option<IntTuple>,
}

/// Lattice coefficient vectors in `{-1, 0, 1}^n`, by L1 norm then lexicographically.
fn unit_coefficient_vectors(n: usize) -> Vec<Vec<i64>> {
    let mut all: Vec<Vec<i64>> = vec![Vec::new()];
    for _ in 0..n {
        all = all
            .into_iter()
            .flat_map(|v| {
                [-1, 0, 1].into_iter().map(move |k| {
                    let mut w = v.clone();
                    w.push(k);
                    w
                })
            })
            .collect();
    }
    all.sort_by_key(|v| (v.iter().map(|k| k.abs()).sum::<i64>(), v.clone()));
    all
}

/// Decides symmetry from `M(Q) ∩ C`, which is complete since `|·|` is
/// lattice invariant.
///
/// The full-support search only tries translates by coefficient vectors in
/// `{-1,0,1}^{m-1}`. That is exhaustive: coordinate `j` of `σ + Σ k_i η^i`
/// depends on `k_{j-1}` and `k_j` only, so choosing `k_1, k_2, ...` in turn,
/// each choice must dodge at most two values.
pub fn symmetry_report(sg: &Semigroup) -> SymmetryReport {
    let desc = sg.description();
    let top = desc.top_degree();
    let candidates: Vec<IntTuple> = sg
        .maximals_in_region()
        .maximal
        .into_iter()
        .filter(|a| a.degree() == top)
        .collect();

    let g = desc.genus();
    let gamma_witness = desc
        .lattice()
        .region_prefixes()
        .into_iter()
        .map(|prefix| {
            let partial: i64 = prefix.iter().sum();
            let mut coords = prefix;
            coords.push(2 * g - 1 - partial);
            IntTuple::new(coords)
        })
        .find(|gamma| !sg.member(gamma));

    let shifts = unit_coefficient_vectors(desc.m() - 1);
    let canonical_witness = candidates.iter().find_map(|sigma| {
        shifts
            .iter()
            .map(|k| desc.lattice().translate(sigma, k))
            .find(|s| s.coords().iter().all(|&c| c != 1) && sg.is_maximal(s))
    });

    SymmetryReport {
        symmetric: !candidates.is_empty(),
        sigma: candidates.first().cloned(),
        gamma_witness,
        canonical_full_support: canonical_witness.is_some(),
        canonical_witness,
    }
}

/// Which functional equation failed, and where.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetryViolation {
    pub at: IntTuple,
    pub equation: &'static str,
}

/// Checks at every point of `window`:
/// `p(α) = (-1)^m p(σ - α)`, `q(α) = (-1)^{m-1} q(σ - α + 1)`, and
/// `d_i(α) + d_i(σ - α - 1 + e_i) = 1` for every `i`.
pub fn symmetry_equation_violation(
    sg: &Semigroup,
    window: &IntBox,
) -> Result<Option<SymmetryViolation>> {
    let sigma = symmetry_report(sg).sigma.ok_or(Error::NotSymmetric)?;
    window.lower().check_len(sg.m())?;
    let m = sg.m();
    let sign = if m.is_multiple_of(2) { 1 } else { -1 };
    let which = |a: &IntTuple| -> Option<&'static str> {
        let mirror = &sigma - a;
        if coeff_p(sg, a) != sign * coeff_p(sg, &mirror) {
            return Some("p(a) = (-1)^m p(sigma - a)");
        }
        if coeff_q(sg, a) != -sign * coeff_q(sg, &mirror.plus_ones()) {
            return Some("q(a) = (-1)^(m-1) q(sigma - a + 1)");
        }
        let dual = mirror.minus_ones();
        if (0..m).any(|i| sg.d_jump(a, i) + sg.d_jump(&dual.shifted(i, 1), i) != 1) {
            return Some("d_i(a) + d_i(sigma - a - 1 + e_i) = 1");
        }
        None
    };
    Ok(first_violation(window, |a| which(a).is_some()).map(|at| {
        let equation = which(&at).expect("violation reproduces");
        SymmetryViolation { at, equation }
    }))
}

pub fn check_symmetry_equations(sg: &Semigroup, window: &IntBox) -> Result<bool> {
    Ok(symmetry_equation_violation(sg, window)?.is_none())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::backends::{genus0_description, hermitian_description};

    fn t(v: &[i64]) -> IntTuple {
        IntTuple::from_slice(v)
    }

    fn herm(q: i64) -> Semigroup {
        Semigroup::new(hermitian_description(q).unwrap())
    }

    fn g0(m: usize) -> Semigroup {
        Semigroup::new(genus0_description(m).unwrap())
    }

    #[test]
    fn coefficient_examples() {
        assert_eq!(coeff_d(&herm(3), &t(&[2, 2])), 1);
        assert_eq!(coeff_d(&herm(3), &t(&[-3, 1])), 0);
        assert_eq!(coeff_d(&g0(3), &t(&[1, 1, 1])), 3);

        assert_eq!(coeff_q(&g0(3), &t(&[0, 0, 0])), 1);
        assert_eq!(coeff_q(&herm(3), &t(&[-20, -20])), 0);
        assert_eq!(coeff_q(&herm(3), &t(&[0, 0])), 1);

        assert_eq!(coeff_p(&herm(3), &t(&[2, 2])), 1);
        assert_eq!(coeff_p(&g0(3), &t(&[0, 0, 1])), -1);
        assert_eq!(coeff_p(&herm(3), &t(&[1, 1])), 0);
    }

    #[test]
    fn genus0_p_oracle() {
        // d_1(β) = [|β| >= 0] on the projective line; evaluate the four
        // terms of p at (0,0,1) by hand: β = (0,-1,0) + 1_J for J ⊆ {2,3}.
        let sg = g0(3);
        let terms: Vec<i64> = [t(&[0, -1, 0]), t(&[0, 0, 0]), t(&[0, -1, 1]), t(&[0, 0, 1])]
            .iter()
            .map(|b| sg.d_jump(b, 0) as i64)
            .collect();
        assert_eq!(terms, vec![0, 1, 1, 1]);
        assert_eq!(terms[0] - terms[1] - terms[2] + terms[3], -1);
    }

    #[test]
    fn series_on_box_examples() {
        let window = IntBox::from_ranges(&[(-8, 9), (-8, 10)]).unwrap();
        let p = series_on_box(&herm(3), SeriesKind::P, &window).unwrap();
        assert_eq!(p.support().len(), 17);
        assert!(p.iter().all(|(_, c)| c == 0 || c == 1));

        let negative = IntBox::from_ranges(&[(-6, -3), (-5, 2)]).unwrap();
        let l = series_on_box(&herm(3), SeriesKind::L, &negative).unwrap();
        assert!(l.support().is_empty());

        let cube = IntBox::cube(2, -2, 2).unwrap();
        let p0 = series_on_box(&g0(2), SeriesKind::P, &cube).unwrap();
        let expected: Vec<_> = cube.points().filter(|a| a.degree() == 0).collect();
        assert_eq!(p0.support(), expected);
        assert!(series_on_box(&g0(2), SeriesKind::Custom, &cube).is_err());
    }

    #[test]
    fn box_series_json() {
        let cube = IntBox::cube(2, -1, 1).unwrap();
        let p = series_on_box(&g0(2), SeriesKind::P, &cube).unwrap();
        let text = p.to_json();
        assert_eq!(
            text,
            r#"{"box":{"lower":[-1,-1],"upper":[1,1]},"kind":"P","coeffs":[[[-1,1],1],[[0,0],1],[[1,-1],1]]}"#
        );
        assert_eq!(BoxSeries::from_json(&text).unwrap(), p);
        let bad = text.replace("[[1,-1],1]", "[[5,-1],1]");
        assert!(BoxSeries::from_json(&bad).is_err());
    }

    #[test]
    fn qp_equation_examples() {
        assert!(check_qp_equation(
            &herm(3),
            &IntBox::cube(2, -6, 6).unwrap()
        ));
        assert!(check_qp_equation(&g0(3), &IntBox::cube(3, -4, 4).unwrap()));
        let origin = IntBox::point(IntTuple::zeros(2)).unwrap();
        let sg = herm(3);
        let z = IntTuple::zeros(2);
        assert_eq!(
            check_qp_equation(&sg, &origin),
            coeff_q(&sg, &z) == coeff_p(&sg, &z) - coeff_p(&sg, &z.minus_ones())
        );
    }

    #[test]
    fn semigroup_polynomial_examples() {
        let p3 = semigroup_polynomial(&herm(3));
        assert_eq!(
            p3.terms(),
            &BTreeMap::from([
                (t(&[0, 0]), 1),
                (t(&[1, 5]), 1),
                (t(&[2, 2]), 1),
                (t(&[3, -1]), 1)
            ])
        );
        assert_eq!(p3.to_string(), "1 + t1*t2^5 + t1^2*t2^2 + t1^3*t2^-1");
        let p0 = semigroup_polynomial(&g0(3));
        assert_eq!(p0.to_string(), "1 - t3");
        assert_eq!(semigroup_polynomial(&g0(2)).to_string(), "1");
        assert_eq!(SemigroupPolynomial::from_json(&p3.to_json()).unwrap(), p3);
    }

    #[test]
    fn reconstruction_examples() {
        assert!(check_reconstruction(
            &herm(3),
            &IntBox::from_ranges(&[(-8, 9), (-8, 10)]).unwrap()
        ));
        assert!(check_reconstruction(
            &g0(3),
            &IntBox::cube(3, -3, 3).unwrap()
        ));
        let sg = herm(2);
        let origin = IntBox::point(IntTuple::zeros(2)).unwrap();
        assert!(check_reconstruction(&sg, &origin));
        assert_eq!(
            semigroup_polynomial(&sg).coefficient(&IntTuple::zeros(2)),
            1
        );
    }

    #[test]
    fn symmetry_report_examples() {
        let r = symmetry_report(&herm(3));
        assert!(r.symmetric);
        assert_eq!(r.sigma, Some(t(&[1, 5])));
        let gw = r.gamma_witness.clone().unwrap();
        assert_eq!(gw, t(&[0, 5]));
        assert_eq!(gw.degree(), 5);
        assert!(!herm(3).member(&t(&[5, 0])));
        assert!(r.canonical_full_support);
        assert_eq!(r.canonical_witness, Some(t(&[-3, 9])));

        let r3 = symmetry_report(&g0(3));
        assert!(r3.symmetric);
        assert_eq!(r3.sigma, Some(t(&[0, 0, 1])));

        let r2 = symmetry_report(&g0(2));
        assert!(r2.symmetric);
        assert_eq!(r2.sigma, Some(t(&[0, 0])));
        // degree 2g-1 = -1 tuples are never members
        assert_eq!(r2.gamma_witness, Some(t(&[0, -1])));
    }

    #[test]
    fn symmetry_equation_examples() {
        assert!(check_symmetry_equations(
            &herm(3),
            &IntBox::from_ranges(&[(-6, 8), (-6, 8)]).unwrap()
        )
        .unwrap());
        let sg = g0(3);
        assert!(check_symmetry_equations(&sg, &IntBox::cube(3, -3, 3).unwrap()).unwrap());
        assert_eq!(coeff_p(&sg, &t(&[0, 0, 0])), 1);
        assert_eq!(coeff_p(&sg, &t(&[0, 0, 1])), -1);
        for (sg, m) in [(herm(3), 2), (g0(3), 3), (g0(4), 4)] {
            let sigma = symmetry_report(&sg).sigma.unwrap();
            let expected = if m % 2 == 0 { 1 } else { -1 };
            assert_eq!(coeff_p(&sg, &sigma), expected);
        }
    }

    #[test]
    fn coefficient_vectors_order() {
        let v = unit_coefficient_vectors(1);
        assert_eq!(v, vec![vec![0], vec![-1], vec![1]]);
        assert_eq!(unit_coefficient_vectors(3).len(), 27);
        assert_eq!(unit_coefficient_vectors(0), vec![Vec::<i64>::new()]);
    }
}
