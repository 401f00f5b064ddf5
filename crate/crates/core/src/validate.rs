//! Self-consistency checks for user-supplied descriptions.

use std::fmt;

use serde::Serialize;

use crate::description::Description;
use crate::semigroup::Semigroup;
use crate::tuple::IntTuple;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    /// A listed element fails `ℓ(γ) = ℓ(γ - 1) + 1` or is not a member.
    NotAbsoluteMaximal { at: IntTuple },
    /// An absolute maximal element of the fundamental slab is not listed.
    MissingAbsoluteMaximal { at: IntTuple },
    /// `ℓ(α) != |α| + 1 - g` although `|α| >= 2g - 1`.
    RiemannRoch {
        at: IntTuple,
        expected: i64,
        found: u64,
    },
    /// `ℓ(α) != 0` although `|α| < 0`.
    NegativeDegree { at: IntTuple, found: u64 },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NotAbsoluteMaximal { at } => {
                write!(f, "listed element {at} is not absolute maximal")
            }
            Violation::MissingAbsoluteMaximal { at } => {
                write!(f, "absolute maximal element {at} is not listed")
            }
            Violation::RiemannRoch {
                at,
                expected,
                found,
            } => {
                write!(f, "l{at} = {found}, Riemann-Roch requires {expected}")
            }
            Violation::NegativeDegree { at, found } => {
                write!(f, "l{at} = {found} at negative degree")
            }
        }
    }
}

/// Runs every consistency check and returns all violations found.
///
/// Checks, in order: listed elements are absolute maximal under the
/// description's own `ℓ`; no absolute maximal element of the slab
/// `{α ∈ C : 0 <= |α| <= 2g-2+m}` is missing; `ℓ(α) = |α| + 1 - g` for one
/// representative per lattice class at each degree in
/// `2g-1 ..= 2g-1 + Σa_i + m`; and `ℓ(α) = 0` at degrees `-m-1 ..= -1`.
pub fn validate_description(desc: &Description) -> Vec<Violation> {
    let sg = Semigroup::new(desc.clone());
    let mut out = Vec::new();
    let g = desc.genus();
    let lattice = desc.lattice();

    for gamma in desc.gamma_fundamental() {
        if !sg.is_absolute_maximal(gamma) {
            out.push(Violation::NotAbsoluteMaximal { at: gamma.clone() });
        }
    }

    for alpha in lattice.region_slab(0, desc.top_degree()) {
        if !desc.gamma_fundamental().contains(&alpha) && sg.is_absolute_maximal(&alpha) {
            out.push(Violation::MissingAbsoluteMaximal { at: alpha });
        }
    }

    let span: i64 = lattice.periods().iter().sum::<i64>() + desc.m() as i64;
    for alpha in lattice.region_slab(2 * g - 1, 2 * g - 1 + span) {
        let expected = alpha.degree() + 1 - g;
        let found = sg.ell(&alpha);
        if found as i64 != expected {
            out.push(Violation::RiemannRoch {
                at: alpha,
                expected,
                found,
            });
        }
    }

    for alpha in lattice.region_slab(-(desc.m() as i64) - 1, -1) {
        let found = sg.ell(&alpha);
        if found != 0 {
            out.push(Violation::NegativeDegree { at: alpha, found });
        }
    }
    out
}

/// For `|α| >= 2g - 1 + m`, the element `α - 1 + e_i` has degree at least
/// `2g` and is therefore a member lying in `∇_i(α)`, so `α` is not maximal.
/// Returns that witness (for `i = 1`), or `None` below the threshold.
///
/// This is why scanning degrees `0..=2g-2+m` of the fundamental region finds
/// every maximal class.
pub fn top_degree_witness(desc: &Description, alpha: &IntTuple) -> Option<IntTuple> {
    if alpha.degree() < desc.top_degree() + 1 {
        return None;
    }
    Some(alpha.minus_ones().shifted(0, 1))
}
