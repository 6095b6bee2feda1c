//! Property tables for generalized Heisenberg groups and audibility reports
//! for pairs of them.
//!
//! The classifications are if-and-only-if statements, so every case outside
//! the listed rows is negative. Local symmetry is not tracked: no member of
//! the family is symmetric and there is no per-dimension table to encode.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::heisalg::HeisenbergAlgebra;

/// Dimension of an irreducible module of the Clifford algebra on `dim_z`
/// generators squaring to `−1`.
pub fn irreducible_module_dim(dim_z: usize) -> Option<usize> {
    const TABLE: [usize; 8] = [2, 4, 4, 8, 8, 8, 8, 16];
    if dim_z == 0 {
        return None;
    }
    let periods = (dim_z - 1) / 8;
    16usize.checked_pow(periods as u32)?.checked_mul(TABLE[(dim_z - 1) % 8])
}

/// Whether the Clifford algebra has two inequivalent irreducible modules.
pub fn has_two_module_types(dim_z: usize) -> bool {
    dim_z % 4 == 3
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Property {
    Commutative,
    WeaklySymmetricBroad,
    WeaklySymmetricNarrow,
    GoSpace,
}

impl Property {
    pub const ALL: [Property; 4] =
        [Property::Commutative, Property::WeaklySymmetricBroad, Property::WeaklySymmetricNarrow, Property::GoSpace];

    pub fn name(self) -> &'static str {
        match self {
            Property::Commutative => "commutative",
            Property::WeaklySymmetricBroad => "weakly_symmetric_broad",
            Property::WeaklySymmetricNarrow => "weakly_symmetric_narrow",
            Property::GoSpace => "go_space",
        }
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PropertyProfile {
    pub commutative: bool,
    pub weakly_symmetric_broad: bool,
    pub weakly_symmetric_narrow: bool,
    pub go_space: bool,
}

impl PropertyProfile {
    pub fn get(&self, p: Property) -> bool {
        match p {
            Property::Commutative => self.commutative,
            Property::WeaklySymmetricBroad => self.weakly_symmetric_broad,
            Property::WeaklySymmetricNarrow => self.weakly_symmetric_narrow,
            Property::GoSpace => self.go_space,
        }
    }

    /// Properties on which `self` and `other` disagree, in declaration order.
    pub fn differences(&self, other: &Self) -> Vec<Property> {
        Property::ALL.into_iter().filter(|&p| self.get(p) != other.get(p)).collect()
    }
}

fn check_realizable(dim_z: usize, dim_v: usize, isotypic: bool) -> Result<()> {
    let unit = irreducible_module_dim(dim_z)
        .ok_or_else(|| Error::InvalidInput(format!("dim z = {dim_z} is not a valid center dimension")))?;
    if dim_v == 0 || dim_v % unit != 0 {
        return Err(Error::InvalidInput(format!(
            "dim v = {dim_v} is not a positive multiple of {unit}, the irreducible module dimension for dim z = {dim_z}"
        )));
    }
    if !isotypic && (!has_two_module_types(dim_z) || dim_v == unit) {
        return Err(Error::InvalidInput(format!(
            "dim z = {dim_z}, dim v = {dim_v} admits only isotypic modules"
        )));
    }
    Ok(())
}

/// Property profile of the generalized Heisenberg group with the given
/// center dimension, module dimension and isotypy.
pub fn classify(dim_z: usize, dim_v: usize, isotypic: bool) -> Result<PropertyProfile> {
    check_realizable(dim_z, dim_v, isotypic)?;
    let commutative = match dim_z {
        1..=3 => true,
        5 | 6 => dim_v == 8,
        7 => dim_v == 8 || (dim_v == 16 && isotypic),
        _ => false,
    };
    let go_space = commutative || (dim_z == 7 && dim_v == 24 && isotypic);
    Ok(PropertyProfile {
        commutative,
        weakly_symmetric_broad: commutative,
        weakly_symmetric_narrow: commutative && dim_z != 1,
        go_space,
    })
}

pub fn classify_algebra(alg: &HeisenbergAlgebra) -> PropertyProfile {
    classify(alg.dim_z(), alg.dim_v(), alg.is_isotypic()).expect("every n(p,q) is realizable")
}

/// Every realizable `(dim_z, dim_v, isotypic)` with `dim_z ≤ max_dim_z` and
/// at most `max_multiplicity` irreducible summands.
pub fn realizable_cases(max_dim_z: usize, max_multiplicity: usize) -> Vec<(usize, usize, bool)> {
    let mut out = Vec::new();
    for dim_z in 1..=max_dim_z {
        let unit = irreducible_module_dim(dim_z).expect("dim_z >= 1");
        for m in 1..=max_multiplicity {
            for isotypic in [true, false] {
                if check_realizable(dim_z, m * unit, isotypic).is_ok() {
                    out.push((dim_z, m * unit, isotypic));
                }
            }
        }
    }
    out
}

pub const SCOPE_NON_COMPACT: &str = "non_compact";

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AudibilityReport {
    pub pair: [HeisenbergAlgebra; 2],
    pub isospectral: bool,
    pub locally_isometric: bool,
    pub profiles: [PropertyProfile; 2],
    pub inaudible_properties: Vec<Property>,
    /// Conclusions concern the simply connected groups only, not compact quotients.
    pub scope: &'static str,
}

pub fn audibility_report(a: &HeisenbergAlgebra, b: &HeisenbergAlgebra) -> Result<AudibilityReport> {
    if a.kind() != b.kind() {
        return Err(Error::InvalidPair(format!("{a} and {b} are built over different algebras")));
    }
    let isospectral = a.p() + a.q() == b.p() + b.q();
    let sorted = |x: &HeisenbergAlgebra| (x.p().min(x.q()), x.p().max(x.q()));
    let locally_isometric = sorted(a) == sorted(b);
    let profiles = [classify_algebra(a), classify_algebra(b)];
    let inaudible_properties =
        if isospectral && !locally_isometric { profiles[0].differences(&profiles[1]) } else { Vec::new() };
    Ok(AudibilityReport {
        pair: [*a, *b],
        isospectral,
        locally_isometric,
        profiles,
        inaudible_properties,
        scope: SCOPE_NON_COMPACT,
    })
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

impl fmt::Display for AudibilityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b] = &self.pair;
        writeln!(f, "pair: {a} vs {b}")?;
        writeln!(f, "isospectral: {}", yes_no(self.isospectral))?;
        writeln!(f, "locally isometric: {}", yes_no(self.locally_isometric))?;
        for p in Property::ALL {
            writeln!(f, "{:<24} {:<4} {}", p.name(), yes_no(self.profiles[0].get(p)), yes_no(self.profiles[1].get(p)))?;
        }
        let names: Vec<&str> = self.inaudible_properties.iter().map(|p| p.name()).collect();
        writeln!(f, "inaudible: {}", if names.is_empty() { "none".to_string() } else { names.join(", ") })?;
        write!(f, "scope: {}", self.scope)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::compalg::AlgebraKind;

    fn oct(p: usize, q: usize) -> HeisenbergAlgebra {
        HeisenbergAlgebra::new(AlgebraKind::Octonion, p, q).unwrap()
    }

    #[test]
    fn module_dimensions() {
        let dims: Vec<_> = (1..=9).map(|m| irreducible_module_dim(m).unwrap()).collect();
        assert_eq!(dims, [2, 4, 4, 8, 8, 8, 8, 16, 32]);
        assert_eq!(irreducible_module_dim(0), None);
    }

    #[test]
    fn table_rows() {
        let all = PropertyProfile { commutative: true, weakly_symmetric_broad: true, weakly_symmetric_narrow: true, go_space: true };
        assert_eq!(classify(7, 16, true).unwrap(), all);
        assert_eq!(classify(7, 16, false).unwrap(), PropertyProfile::default());
        let go_only = PropertyProfile { go_space: true, ..PropertyProfile::default() };
        assert_eq!(classify(7, 24, true).unwrap(), go_only);
        assert_eq!(classify(7, 24, false).unwrap(), PropertyProfile::default());
        assert_eq!(classify(5, 8, true).unwrap(), all);
        assert_eq!(classify(5, 16, true).unwrap(), PropertyProfile::default());
        let narrow_exception = PropertyProfile { weakly_symmetric_narrow: false, ..all };
        assert_eq!(classify(1, 6, true).unwrap(), narrow_exception);
    }

    #[test]
    fn unrealizable_inputs() {
        assert!(matches!(classify(7, 12, true), Err(Error::InvalidInput(_))));
        assert!(classify(7, 0, true).is_err());
        assert!(classify(0, 4, true).is_err());
        assert!(classify(5, 16, false).is_err());
        assert!(classify(7, 8, false).is_err());
    }

    #[test]
    fn listed_case_counts() {
        let cases = realizable_cases(7, 6);
        let mut comm_rows = std::collections::BTreeSet::new();
        let mut go_rows = std::collections::BTreeSet::new();
        for &(z, v, iso) in &cases {
            let prof = classify(z, v, iso).unwrap();
            // Rows collapse dim z ≤ 3 to one row per center dimension.
            let row = if z <= 3 { (z, 0, true) } else { (z, v, iso) };
            if prof.commutative {
                comm_rows.insert(row);
            }
            if prof.go_space {
                go_rows.insert(row);
            }
        }
        assert_eq!(comm_rows.len(), 7);
        assert_eq!(go_rows.len(), 8);
        let extra: Vec<_> = go_rows.difference(&comm_rows).copied().collect();
        assert_eq!(extra, [(7, 24, true)]);
    }

    #[test]
    fn algebra_profiles() {
        assert!(classify_algebra(&oct(2, 0)).commutative);
        assert!(classify_algebra(&oct(0, 2)).commutative);
        assert!(!classify_algebra(&oct(1, 1)).commutative);
        assert!(classify_algebra(&oct(3, 0)).go_space);
        assert!(!classify_algebra(&oct(2, 1)).go_space);
        for p in 0..3 {
            for q in 0..3 {
                if p + q > 0 {
                    assert!(classify_algebra(&HeisenbergAlgebra::new(AlgebraKind::Quaternion, p, q).unwrap()).commutative);
                }
            }
        }
    }

    #[test]
    fn reports() {
        let r = audibility_report(&oct(1, 1), &oct(2, 0)).unwrap();
        assert!(r.isospectral && !r.locally_isometric);
        assert_eq!(r.inaudible_properties, Property::ALL);
        assert_eq!(r.scope, "non_compact");
        let r = audibility_report(&oct(2, 1), &oct(3, 0)).unwrap();
        assert_eq!(r.inaudible_properties, [Property::GoSpace]);
        let r = audibility_report(&oct(1, 1), &oct(1, 1)).unwrap();
        assert!(r.inaudible_properties.is_empty());
        let r = audibility_report(&oct(2, 0), &oct(0, 2)).unwrap();
        assert!(r.locally_isometric && r.inaudible_properties.is_empty());
        let r = audibility_report(&oct(1, 1), &oct(3, 0)).unwrap();
        assert!(!r.isospectral && r.inaudible_properties.is_empty());
        let h = HeisenbergAlgebra::new(AlgebraKind::Quaternion, 1, 1).unwrap();
        assert!(matches!(audibility_report(&oct(1, 1), &h), Err(Error::InvalidPair(_))));
    }

    #[test]
    fn report_json_and_text() {
        let r = audibility_report(&oct(1, 1), &oct(2, 0)).unwrap();
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(v["inaudible_properties"][3], "go_space");
        assert_eq!(v["pair"][0]["p"], 1);
        let text = r.to_string();
        assert!(text.contains("inaudible: commutative, weakly_symmetric_broad, weakly_symmetric_narrow, go_space"));
    }
}
