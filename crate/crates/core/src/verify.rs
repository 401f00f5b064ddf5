//! Runs every structural identity over a box and reports the first
//! counterexample of each.

use std::collections::BTreeSet;
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::description::Description;
use crate::error::Result;
use crate::lattice::IntBox;
use crate::semigroup::{NablaQuery, Semigroup};
use crate::series::{
    coeff_p, first_violation, poincare_index_violation, qp_equation_violation,
    reconstruction_violation, semigroup_polynomial, support_law_violation,
    symmetry_equation_violation, symmetry_report,
};
use crate::tuple::{IndexSet, IntTuple};
use crate::validate::validate_description;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub status: CheckStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<IntTuple>,
    pub detail: String,
}

impl CheckOutcome {
    fn from_violation(name: &'static str, what: &str, at: Option<IntTuple>) -> Self {
        match at {
            None => CheckOutcome {
                name,
                status: CheckStatus::Pass,
                counterexample: None,
                detail: what.to_string(),
            },
            Some(a) => CheckOutcome {
                name,
                status: CheckStatus::Fail,
                detail: format!("{what} fails at {a}"),
                counterexample: Some(a),
            },
        }
    }

    fn skipped(name: &'static str, why: &str) -> Self {
        CheckOutcome {
            name,
            status: CheckStatus::Skipped,
            counterexample: None,
            detail: why.to_string(),
        }
    }
}

impl fmt::Display for CheckOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self.status {
            CheckStatus::Pass => "PASS",
            CheckStatus::Fail => "FAIL",
            CheckStatus::Skipped => "SKIP",
        };
        write!(f, "{tag} {:<30} {}", self.name, self.detail)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub label: String,
    #[serde(rename = "box")]
    pub window: IntBox,
    pub checks: Vec<CheckOutcome>,
}

impl VerificationReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != CheckStatus::Fail)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckOutcome> {
        self.checks.iter().filter(|c| c.status == CheckStatus::Fail)
    }
}

/// Proper nonempty subsets `J` with `∇_J(α)` all empty.
pub fn all_nabla_subsets_empty(sg: &Semigroup, alpha: &IntTuple) -> bool {
    let m = sg.m();
    (1..(1u32 << m) - 1).all(|bits| {
        let q = NablaQuery::subset(alpha.clone(), IndexSet::from_bits(bits))
            .expect("proper nonempty subset");
        sg.nabla_is_empty(&q)
    })
}

/// Runs the full suite for `desc` over `window`.
pub fn verify(desc: &Description, window: &IntBox) -> Result<VerificationReport> {
    window.lower().check_len(desc.m())?;
    let sg = Semigroup::new(desc.clone());
    let m = desc.m();
    let g = desc.genus();
    let mut checks = Vec::new();

    let violations = validate_description(desc);
    checks.push(match violations.first() {
        None => CheckOutcome::from_violation("description-consistency", "self-consistency", None),
        Some(v) => CheckOutcome {
            name: "description-consistency",
            status: CheckStatus::Fail,
            counterexample: None,
            detail: format!("{} violation(s), first: {v}", violations.len()),
        },
    });

    let region = sg.maximals_in_region();
    let listed: BTreeSet<IntTuple> = desc.gamma_fundamental().clone();
    let diff = region
        .absolute_maximal
        .symmetric_difference(&listed)
        .next()
        .cloned();
    checks.push(CheckOutcome::from_violation(
        "finite-determination",
        "absolute maximals of the fundamental slab equal the listed elements",
        diff,
    ));

    checks.push(CheckOutcome::from_violation(
        "dimension-index-independence",
        "#(Γ(α)/≡_i) is the same for every i",
        first_violation(window, |a| {
            let c = sg.class_count(a, 0);
            (1..m).any(|i| sg.class_count(a, i) != c)
        }),
    ));

    checks.push(CheckOutcome::from_violation(
        "riemann-roch-regime",
        "ℓ(α) = |α|+1-g for |α| >= 2g-1 and 0 for |α| < 0",
        first_violation(window, |a| {
            let l = sg.ell(a) as i64;
            let d = a.degree();
            (d >= 2 * g - 1 && l != d + 1 - g) || (d < 0 && l != 0)
        }),
    ));

    checks.push(CheckOutcome::from_violation(
        "dimension-steps",
        "ℓ(α - e_i) <= ℓ(α) <= ℓ(α - e_i) + 1",
        first_violation(window, |a| {
            let l = sg.ell(a);
            (0..m).any(|i| {
                let below = sg.ell(&a.shifted(i, -1));
                l < below || l > below + 1
            })
        }),
    ));

    let by_lub = sg.members_by_lub(window);
    checks.push(CheckOutcome::from_violation(
        "lub-generation",
        "lubs of absolute maximals are exactly the members",
        first_violation(window, |a| sg.member(a) != by_lub.contains(a)),
    ));

    let generators = desc.lattice().generators();
    checks.push(CheckOutcome::from_violation(
        "lattice-invariance",
        "membership, maximality, ℓ and p are invariant under ±η^i",
        first_violation(window, |a| {
            let key = |b: &IntTuple| {
                (
                    sg.member(b),
                    sg.is_maximal(b),
                    sg.is_absolute_maximal(b),
                    sg.ell(b),
                    coeff_p(&sg, b),
                )
            };
            let here = key(a);
            generators
                .iter()
                .any(|eta| key(&(a + eta)) != here || key(&(a - eta)) != here)
        }),
    ));

    checks.push(CheckOutcome::from_violation(
        "absolute-maximal-equivalence",
        "ℓ(α) = ℓ(α-1)+1 iff every ∇_J(α) is empty",
        first_violation(window, |a| {
            let by_nabla = sg.member(a) && all_nabla_subsets_empty(&sg, a);
            sg.is_absolute_maximal(a) != by_nabla
        }),
    ));

    checks.push(CheckOutcome::from_violation(
        "absolute-implies-maximal",
        "absolute maximal elements are maximal",
        first_violation(window, |a| sg.is_absolute_maximal(a) && !sg.is_maximal(a)),
    ));

    checks.push(if m == 2 {
        CheckOutcome::from_violation(
            "two-point-collapse",
            "maximal iff absolute maximal",
            first_violation(window, |a| sg.is_maximal(a) != sg.is_absolute_maximal(a)),
        )
    } else {
        CheckOutcome::skipped("two-point-collapse", "m != 2")
    });

    checks.push(if m == 2 {
        match sg.sigma_profile() {
            Ok(p) => CheckOutcome::from_violation(
                "sigma-profile",
                &format!("σ₂ table {:?} with period {}", p.sigma2_table, p.period),
                None,
            ),
            Err(e) => CheckOutcome {
                name: "sigma-profile",
                status: CheckStatus::Fail,
                counterexample: None,
                detail: e.to_string(),
            },
        }
    } else {
        CheckOutcome::skipped("sigma-profile", "m != 2")
    });

    let members: Vec<IntTuple> = window.points().filter(|a| sg.member(a)).collect();
    let n = members.len();
    let closure = (0..n).into_par_iter().find_first(|&k| {
        let other = &members[(k * 31 + 7) % n];
        !sg.member(&(&members[k] + other))
    });
    checks.push(CheckOutcome::from_violation(
        "semigroup-closure",
        &format!("member + member is a member ({n} sampled pairs)"),
        closure.map(|k| members[k].clone()),
    ));

    checks.push(CheckOutcome::from_violation(
        "qp-equation",
        "q(α) = p(α) - p(α-1)",
        qp_equation_violation(&sg, window),
    ));

    checks.push(CheckOutcome::from_violation(
        "poincare-index-independence",
        "p_i(α) does not depend on i",
        poincare_index_violation(&sg, window),
    ));

    checks.push(CheckOutcome::from_violation(
        "support-law",
        "p = 0 off M(Q), p = 1 on Γ(Q)",
        support_law_violation(&sg, window),
    ));

    let poly = semigroup_polynomial(&sg);
    checks.push(CheckOutcome::from_violation(
        "reconstruction",
        &format!("P = (Σ t^η)·P* with P* = {poly}"),
        reconstruction_violation(&sg, &poly, window),
    ));

    let report = symmetry_report(&sg);
    checks.push(if report.symmetric {
        let sigma = report.sigma.clone().expect("symmetric has sigma");
        match symmetry_equation_violation(&sg, window)? {
            None => CheckOutcome::from_violation(
                "functional-equations",
                &format!("P, Q and d_i functional equations with σ = {sigma}"),
                None,
            ),
            Some(v) => CheckOutcome {
                name: "functional-equations",
                status: CheckStatus::Fail,
                detail: format!("{} fails at {} (σ = {sigma})", v.equation, v.at),
                counterexample: Some(v.at),
            },
        }
    } else {
        CheckOutcome::skipped("functional-equations", "semigroup is not symmetric")
    });

    Ok(VerificationReport {
        label: desc.label().to_string(),
        window: window.clone(),
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::backends::{genus0_description, hermitian_description};

    #[test]
    fn reference_fixtures_pass() {
        let window = IntBox::from_ranges(&[(-8, 9), (-8, 10)]).unwrap();
        let r = verify(&hermitian_description(3).unwrap(), &window).unwrap();
        assert!(r.all_passed(), "{:#?}", r.failures().collect::<Vec<_>>());
        let r = verify(
            &genus0_description(3).unwrap(),
            &IntBox::cube(3, -2, 2).unwrap(),
        )
        .unwrap();
        assert!(r.all_passed(), "{:#?}", r.failures().collect::<Vec<_>>());
    }

    #[test]
    fn mutilated_description_fails() {
        let d = hermitian_description(3).unwrap();
        let cut = d
            .with_gamma(d.gamma_fundamental().iter().filter(|g| g[0] != 2).cloned())
            .unwrap();
        let r = verify(&cut, &IntBox::cube(2, -6, 6).unwrap()).unwrap();
        assert!(!r.all_passed());
        assert!(r.failures().any(|c| c.name == "description-consistency"));
    }

    #[test]
    fn wrong_box_dimension_is_an_error() {
        let d = hermitian_description(3).unwrap();
        assert!(verify(&d, &IntBox::cube(3, 0, 1).unwrap()).is_err());
    }
}
