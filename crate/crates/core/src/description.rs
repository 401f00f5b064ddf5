//! Finite presentation of a generalized Weierstrass semigroup: the genus,
//! the period lattice, and the absolute maximal elements inside the
//! fundamental region. Everything else is recovered from these.

use std::collections::BTreeSet;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::Lattice;
use crate::tuple::IntTuple;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Description {
    genus: i64,
    lattice: Lattice,
    gamma_fundamental: BTreeSet<IntTuple>,
    label: String,
}

/// On-disk layout. All keys are required.
#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DescriptionFile {
    m: usize,
    genus: i64,
    lattice_generators: Vec<IntTuple>,
    gamma_fundamental: Vec<IntTuple>,
    label: String,
}

impl Description {
    /// Checks the structural invariants: every listed element lies in the
    /// fundamental region with `0 <= |x| <= 2g - 2 + m`, and zero is listed.
    /// Semantic consistency is [`crate::validate_description`]'s job.
    pub fn new(
        genus: i64,
        lattice: Lattice,
        gamma_fundamental: impl IntoIterator<Item = IntTuple>,
        label: impl Into<String>,
    ) -> Result<Self> {
        if genus < 0 {
            return Err(Error::InvalidDescription(format!("negative genus {genus}")));
        }
        if genus > 1 << 30 {
            return Err(Error::InvalidDescription(format!(
                "genus {genus} too large"
            )));
        }
        let m = lattice.m();
        let top = 2 * genus - 2 + m as i64;
        let gamma: BTreeSet<IntTuple> = gamma_fundamental.into_iter().collect();
        for g in &gamma {
            g.check_len(m).map_err(|_| {
                Error::InvalidDescription(format!("{g} does not have {m} coordinates"))
            })?;
            g.check_magnitude()?;
            if !lattice.in_region(g) {
                return Err(Error::InvalidDescription(format!(
                    "{g} lies outside the fundamental region"
                )));
            }
            if !(0..=top).contains(&g.degree()) {
                return Err(Error::InvalidDescription(format!(
                    "{g} has degree {} outside 0..={top}",
                    g.degree()
                )));
            }
        }
        if !gamma.contains(&IntTuple::zeros(m)) {
            return Err(Error::InvalidDescription(
                "the zero tuple is missing from gamma_fundamental".into(),
            ));
        }
        Ok(Description {
            genus,
            lattice,
            gamma_fundamental: gamma,
            label: label.into(),
        })
    }

    pub fn m(&self) -> usize {
        self.lattice.m()
    }

    pub fn genus(&self) -> i64 {
        self.genus
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    /// `Gamma(Q) ∩ C`, in lexicographic order.
    pub fn gamma_fundamental(&self) -> &BTreeSet<IntTuple> {
        &self.gamma_fundamental
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// `2g - 2 + m`, the largest degree of a maximal element.
    pub fn top_degree(&self) -> i64 {
        2 * self.genus - 2 + self.m() as i64
    }

    /// Copy with a different `Gamma(Q) ∩ C` list (structure re-checked).
    pub fn with_gamma(&self, gamma: impl IntoIterator<Item = IntTuple>) -> Result<Self> {
        Description::new(self.genus, self.lattice.clone(), gamma, self.label.clone())
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: DescriptionFile = serde_json::from_str(text)?;
        let lattice = Lattice::from_generators(&raw.lattice_generators)?;
        if lattice.m() != raw.m {
            return Err(Error::InvalidDescription(format!(
                "m = {} but {} lattice generators given",
                raw.m,
                raw.lattice_generators.len()
            )));
        }
        let count = raw.gamma_fundamental.len();
        let d = Description::new(raw.genus, lattice, raw.gamma_fundamental, raw.label)?;
        if d.gamma_fundamental.len() != count {
            return Err(Error::InvalidDescription(
                "gamma_fundamental lists a tuple twice".into(),
            ));
        }
        Ok(d)
    }

    /// Single-line JSON with keys in schema order and tuples sorted.
    pub fn to_json(&self) -> String {
        let raw = DescriptionFile {
            m: self.m(),
            genus: self.genus,
            lattice_generators: self.lattice.generators(),
            gamma_fundamental: self.gamma_fundamental.iter().cloned().collect(),
            label: self.label.clone(),
        };
        serde_json::to_string(&raw).expect("description serializes")
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::InvalidParameter(format!("cannot read {}: {e}", path.display())))?;
        Self::from_json(&text)
    }
}
