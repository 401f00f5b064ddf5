//! Set-theoretic queries on `Ĥ(Q)` driven by one primitive, the dimension
//! `ℓ(α)`, which is the number of `≡_m`-classes of the absolute maximal
//! elements below `α`.
//!
//! All coordinate indices in this module are 0-based. Queries panic when
//! handed a tuple whose length differs from `m`.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use dashmap::DashMap;

use crate::description::Description;
use crate::error::{Error, Result};
use crate::lattice::IntBox;
use crate::tuple::{IndexSet, IntTuple};

/// A description together with a memo table for `ℓ`.
///
/// The memo is keyed on the tuple itself (not its lattice representative), so
/// periodicity checks compare genuinely independent evaluations.
#[derive(Debug)]
pub struct Semigroup {
    desc: Description,
    gamma: Vec<IntTuple>,
    memo: Option<DashMap<IntTuple, u64>>,
}

/// Which `∇` set to enumerate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NablaQuery {
    /// `∇_J(α)`: members agreeing with `α` on `J` and strictly below it elsewhere.
    Subset { base: IntTuple, set: IndexSet },
    /// `∇_i^m(α)`: members agreeing with `α` at `i` and weakly below it elsewhere.
    Partial { base: IntTuple, index: usize },
}

impl NablaQuery {
    /// Rejects `J = ∅` and `J = I`.
    pub fn subset(base: IntTuple, set: IndexSet) -> Result<Self> {
        let m = base.len();
        if set.is_empty() || set == IndexSet::full(m) || set.bits() >> m != 0 {
            return Err(Error::InvalidParameter(format!(
                "{set:?} is not a nonempty proper subset of 1..={m}"
            )));
        }
        Ok(NablaQuery::Subset { base, set })
    }

    pub fn partial(base: IntTuple, index: usize) -> Result<Self> {
        if index >= base.len() {
            return Err(Error::IndexOutOfRange {
                index: index + 1,
                m: base.len(),
            });
        }
        Ok(NablaQuery::Partial { base, index })
    }

    /// Fixed coordinates and per-coordinate upper bounds.
    fn bounds(&self) -> (&IntTuple, IndexSet, IntTuple) {
        match self {
            NablaQuery::Subset { base, set } => {
                let mut upper = base.clone();
                for i in 0..base.len() {
                    if !set.contains(i) {
                        upper.coords_mut()[i] -= 1;
                    }
                }
                (base, *set, upper)
            }
            NablaQuery::Partial { base, index } => {
                (base, IndexSet::singleton(*index), base.clone())
            }
        }
    }
}

/// `M(Q) ∩ C` and `Γ(Q) ∩ C` found by scanning the fundamental slab.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegionClassification {
    pub maximal: BTreeSet<IntTuple>,
    pub absolute_maximal: BTreeSet<IntTuple>,
}

/// Two-point data: the period `a` and `σ₂(0), ..., σ₂(a-1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoPointProfile {
    pub period: i64,
    pub sigma2_table: Vec<i64>,
}

impl TwoPointProfile {
    /// `σ₂(j)` for any `j`, using `σ₂(j + a) = σ₂(j) - a`.
    pub fn sigma2(&self, j: i64) -> i64 {
        let a = self.period;
        self.sigma2_table[j.rem_euclid(a) as usize] - j.div_euclid(a) * a
    }

    /// The maximal elements `(j, σ₂(j))` with `j` in `lo..=hi`.
    pub fn maximals(&self, lo: i64, hi: i64) -> Vec<IntTuple> {
        (lo..=hi)
            .map(|j| IntTuple::from([j, self.sigma2(j)]))
            .collect()
    }
}

impl Semigroup {
    pub fn new(desc: Description) -> Self {
        Self::build(desc, true)
    }

    /// Same queries without memoization.
    pub fn uncached(desc: Description) -> Self {
        Self::build(desc, false)
    }

    fn build(desc: Description, memoize: bool) -> Self {
        let gamma = desc.gamma_fundamental().iter().cloned().collect();
        Semigroup {
            desc,
            gamma,
            memo: memoize.then(DashMap::new),
        }
    }

    pub fn description(&self) -> &Description {
        &self.desc
    }

    pub fn m(&self) -> usize {
        self.desc.m()
    }

    pub fn genus(&self) -> i64 {
        self.desc.genus()
    }

    fn check(&self, alpha: &IntTuple) {
        assert_eq!(
            alpha.len(),
            self.m(),
            "tuple {alpha} has the wrong number of coordinates"
        );
    }

    /// Calls `visit` on every element of `Γ(α) = {β ∈ Γ(Q) : β ≤ α}`.
    ///
    /// Each `β = γ + Σ k_i η^i` with `γ` fundamental has `|β| = |γ|`, so
    /// `α_i - (|α| - |γ|) <= β_i <= α_i`; the lattice coefficients are chosen
    /// left to right inside those bounds and the last coordinate is forced.
    pub fn visit_gamma_below(&self, alpha: &IntTuple, mut visit: impl FnMut(&[i64])) {
        self.check(alpha);
        let total = alpha.degree();
        let mut beta = vec![0i64; self.m()];
        for g in &self.gamma {
            let slack = total - g.degree();
            if slack < 0 {
                continue;
            }
            self.descend(g, alpha, 0, 0, slack, &mut beta, &mut visit);
        }
    }

    #[allow(clippy::too_many_arguments)]
    fn descend(
        &self,
        g: &IntTuple,
        alpha: &IntTuple,
        j: usize,
        carry: i64,
        remaining: i64,
        beta: &mut [i64],
        visit: &mut impl FnMut(&[i64]),
    ) {
        let m = beta.len();
        let base = g[j] + carry;
        if j == m - 1 {
            // the degree constraint pins the last coordinate
            debug_assert_eq!(alpha[j] - base, remaining);
            beta[j] = base;
            visit(beta);
            return;
        }
        let a = self.desc.lattice().periods()[j];
        let k_min = div_ceil(alpha[j] - remaining - base, a);
        let k_max = (alpha[j] - base).div_euclid(a);
        for k in k_min..=k_max {
            let b = base + k * a;
            beta[j] = b;
            self.descend(
                g,
                alpha,
                j + 1,
                -k * a,
                remaining - (alpha[j] - b),
                beta,
                visit,
            );
        }
    }

    /// `Γ(α)` as a sorted set.
    pub fn gamma_below(&self, alpha: &IntTuple) -> BTreeSet<IntTuple> {
        let mut out = BTreeSet::new();
        self.visit_gamma_below(alpha, |b| {
            out.insert(IntTuple::from_slice(b));
        });
        out
    }

    /// `#(Γ(α)/≡_i)`: distinct values of coordinate `i` over `Γ(α)`.
    pub fn class_count(&self, alpha: &IntTuple, i: usize) -> u64 {
        let mut values = Vec::new();
        self.visit_gamma_below(alpha, |b| values.push(b[i]));
        values.sort_unstable();
        values.dedup();
        values.len() as u64
    }

    /// `ℓ(α)`, counted with `≡_m`.
    pub fn ell(&self, alpha: &IntTuple) -> u64 {
        self.check(alpha);
        if alpha.degree() < 0 {
            return 0;
        }
        let Some(memo) = &self.memo else {
            return self.class_count(alpha, self.m() - 1);
        };
        if let Some(v) = memo.get(alpha) {
            return *v;
        }
        let v = self.class_count(alpha, self.m() - 1);
        memo.insert(alpha.clone(), v);
        v
    }

    /// `d_i(α) = ℓ(α) - ℓ(α - e_i)`, always 0 or 1.
    pub fn d_jump(&self, alpha: &IntTuple, i: usize) -> u64 {
        self.ell(alpha) - self.ell(&alpha.shifted(i, -1))
    }

    pub fn member(&self, alpha: &IntTuple) -> bool {
        self.check(alpha);
        if alpha.degree() < 0 {
            return false;
        }
        let top = self.ell(alpha);
        (0..self.m()).all(|i| top == self.ell(&alpha.shifted(i, -1)) + 1)
    }

    /// `∇_i^m(α) = ∅`, decided as `ℓ(α) = ℓ(α - e_i)`.
    pub fn nabla_im_empty(&self, alpha: &IntTuple, i: usize) -> bool {
        self.d_jump(alpha, i) == 0
    }

    /// Maximal: a member with every `∇_i(α) = ∇_i^m(α - 1 + e_i)` empty.
    pub fn is_maximal(&self, alpha: &IntTuple) -> bool {
        if !self.member(alpha) {
            return false;
        }
        let below = alpha.minus_ones();
        let floor = self.ell(&below);
        (0..self.m()).all(|i| self.ell(&below.shifted(i, 1)) == floor)
    }

    /// Absolute maximal: a member with `ℓ(α) = ℓ(α - 1) + 1`.
    pub fn is_absolute_maximal(&self, alpha: &IntTuple) -> bool {
        self.member(alpha) && self.ell(alpha) == self.ell(&alpha.minus_ones()) + 1
    }

    /// Enumerates a `∇` set by brute force over the members it bounds.
    pub fn nabla(&self, query: &NablaQuery) -> BTreeSet<IntTuple> {
        let mut out = BTreeSet::new();
        self.visit_nabla(query, |b| {
            out.insert(b.clone());
            true
        });
        out
    }

    /// `∇_J(α)` for a nonempty proper `J`.
    pub fn nabla_j(&self, alpha: &IntTuple, set: IndexSet) -> Result<BTreeSet<IntTuple>> {
        Ok(self.nabla(&NablaQuery::subset(alpha.clone(), set)?))
    }

    pub fn nabla_is_empty(&self, query: &NablaQuery) -> bool {
        let mut empty = true;
        self.visit_nabla(query, |_| {
            empty = false;
            false
        });
        empty
    }

    /// Visits members of the query set until `visit` returns false.
    fn visit_nabla(&self, query: &NablaQuery, mut visit: impl FnMut(&IntTuple) -> bool) {
        let (base, fixed, upper) = query.bounds();
        self.check(base);
        let m = self.m();
        let free: Vec<usize> = (0..m).filter(|&i| !fixed.contains(i)).collect();
        let fixed_sum: i64 = fixed.iter().map(|i| base[i]).sum();
        // suffix_max[k] = largest possible sum of free coordinates k..
        let mut suffix_max = vec![0i64; free.len() + 1];
        for k in (0..free.len()).rev() {
            suffix_max[k] = suffix_max[k + 1] + upper[free[k]];
        }
        let mut beta = upper.clone();
        for i in fixed.iter() {
            beta.coords_mut()[i] = base[i];
        }
        let mut go = true;
        self.nabla_descend(
            &free,
            &suffix_max,
            0,
            fixed_sum,
            &upper,
            &mut beta,
            &mut |b| {
                if go && self.member(b) {
                    go = visit(b);
                }
                go
            },
        );
    }

    #[allow(clippy::too_many_arguments)]
    fn nabla_descend(
        &self,
        free: &[usize],
        suffix_max: &[i64],
        k: usize,
        partial: i64,
        upper: &IntTuple,
        beta: &mut IntTuple,
        visit: &mut impl FnMut(&IntTuple) -> bool,
    ) -> bool {
        if k == free.len() {
            return partial < 0 || visit(beta);
        }
        let i = free[k];
        // |β| >= 0 needs β_i >= -(partial + max of the rest)
        let lo = -(partial + suffix_max[k + 1]);
        for v in lo..=upper[i] {
            beta.coords_mut()[i] = v;
            if !self.nabla_descend(free, suffix_max, k + 1, partial + v, upper, beta, visit) {
                return false;
            }
        }
        true
    }

    /// Scans `{α ∈ C : 0 <= |α| <= 2g - 2 + m}`, which contains every maximal
    /// class representative (see [`crate::top_degree_witness`]).
    pub fn maximals_in_region(&self) -> RegionClassification {
        let slab = self.desc.lattice().region_slab(0, self.desc.top_degree());
        let mut maximal = BTreeSet::new();
        let mut absolute_maximal = BTreeSet::new();
        for alpha in slab {
            if self.is_maximal(&alpha) {
                if self.is_absolute_maximal(&alpha) {
                    absolute_maximal.insert(alpha.clone());
                }
                maximal.insert(alpha);
            }
        }
        RegionClassification {
            maximal,
            absolute_maximal,
        }
    }

    /// Members of `window` obtained as least upper bounds of `m` elements of
    /// `Γ(Q)`.
    ///
    /// A lub of elements of `Γ(Q)` lying at or below `α` equals `α` exactly
    /// when every coordinate of `α` is attained by one of them, so it suffices
    /// to find, for each `i`, some `γ ∈ Γ(upper)` with `γ ≤ α` and `γ_i = α_i`.
    pub fn members_by_lub(&self, window: &IntBox) -> BTreeSet<IntTuple> {
        self.check(window.upper());
        let m = self.m();
        let mut by_coord: HashMap<(usize, i64), Vec<IntTuple>> = HashMap::new();
        for g in self.gamma_below(window.upper()) {
            for i in 0..m {
                by_coord.entry((i, g[i])).or_default().push(g.clone());
            }
        }
        window
            .points()
            .filter(|alpha| {
                (0..m).all(|i| {
                    by_coord
                        .get(&(i, alpha[i]))
                        .is_some_and(|gs| gs.iter().any(|g| g.le_all(alpha)))
                })
            })
            .collect()
    }

    /// Exponents of a Riemann-Roch basis of `L(α)`: the lexicographically
    /// least element of each `≡_m`-class of `Γ(α)`, sorted.
    pub fn rr_basis_exponents(&self, alpha: &IntTuple) -> Vec<IntTuple> {
        let m = self.m();
        let mut classes: BTreeMap<i64, IntTuple> = BTreeMap::new();
        for b in self.gamma_below(alpha) {
            classes.entry(b[m - 1]).or_insert(b);
        }
        let mut out: Vec<IntTuple> = classes.into_values().collect();
        out.sort();
        out
    }

    /// `σ₂` on one period, for two-point semigroups.
    ///
    /// Fails when the description does not behave like a curve's semigroup:
    /// no member in a column below degree `2g`, or `σ₁(σ₂(j)) != j`.
    pub fn sigma_profile(&self) -> Result<TwoPointProfile> {
        if self.m() != 2 {
            return Err(Error::NotTwoPoint(self.m()));
        }
        let period = self.desc.lattice().periods()[0];
        let g = self.genus();
        let first_member = |fix: usize, j: i64| -> Result<i64> {
            let point = |t: i64| {
                if fix == 0 {
                    IntTuple::from([j, t])
                } else {
                    IntTuple::from([t, j])
                }
            };
            (-j..=2 * g - j)
                .find(|&t| self.member(&point(t)))
                .ok_or_else(|| Error::Inconsistent {
                    at: point(2 * g - j),
                    reason: "no member up to degree 2g".into(),
                })
        };
        let mut table = Vec::with_capacity(period as usize);
        for j in 0..period {
            let s2 = first_member(0, j)?;
            let back = first_member(1, s2)?;
            if back != j {
                return Err(Error::Inconsistent {
                    at: IntTuple::from([j, s2]),
                    reason: format!("sigma1(sigma2({j})) = {back}"),
                });
            }
            table.push(s2);
        }
        Ok(TwoPointProfile {
            period,
            sigma2_table: table,
        })
    }
}

fn div_ceil(a: i64, b: i64) -> i64 {
    -((-a).div_euclid(b))
}
