use serde::Serialize;

use crate::nerve::{Axis, BisimplicialMap, TruncatedBisimplicialSet};
use crate::report::Verdict;

use super::{cone_probe, pi0_bijective, ConeReport, HomologyError};

/// Outcome of the probes on one level map.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LevelVerdict {
    pub level: usize,
    pub verdict: Verdict,
    pub pi0_bijective: Option<bool>,
    pub cone: Option<ConeReport>,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LevelwiseReport {
    pub axis: Axis,
    pub degree: usize,
    pub levels: Vec<LevelVerdict>,
}

impl LevelwiseReport {
    pub fn verdict(&self) -> Verdict {
        self.levels.iter().fold(Verdict::Pass, |acc, l| acc.combine(l.verdict))
    }
}

/// Runs [`pi0_bijective`] and [`cone_probe`] through degree `d` on every level
/// map of `f` along `axis`. A level too shallow for either probe is INCONCLUSIVE.
pub fn levelwise_probe(
    f: &BisimplicialMap,
    src: &TruncatedBisimplicialSet,
    tgt: &TruncatedBisimplicialSet,
    axis: Axis,
    d: usize,
) -> Result<LevelwiseReport, HomologyError> {
    let n = src.levels(axis);
    if tgt.levels(axis) != n {
        return Err(HomologyError::Shape(format!("{n} source levels against {} target levels", tgt.levels(axis))));
    }
    if f.maps.len() != src.outer_truncation() + 1 || f.maps.iter().any(|row| row.len() != src.inner_truncation() + 1) {
        return Err(HomologyError::Shape("map shape differs from the source".into()));
    }
    let mut levels = Vec::with_capacity(n);
    for level in 0..n {
        let (a, b) = (src.level(axis, level), tgt.level(axis, level));
        let map = f.level_map(axis, level);
        let pi0 = match pi0_bijective(&map, &a, &b) {
            Ok(ok) => Some(ok),
            Err(HomologyError::TooShallow { .. }) => None,
            Err(e) => return Err(e),
        };
        let cone = match cone_probe(&map, &a, &b, d) {
            Ok(c) => Some(c),
            Err(HomologyError::TooShallow { .. }) => None,
            Err(e) => return Err(e),
        };
        let (verdict, detail) = match (pi0, &cone) {
            (Some(false), _) => (Verdict::Fail, "π₀ is not a bijection".to_string()),
            (_, Some(c)) if !c.is_trivial() => {
                (Verdict::Fail, format!("cone homology nonzero in degree {}", c.first_obstruction().unwrap_or(0)))
            }
            (Some(true), Some(_)) => (Verdict::Pass, format!("π₀ bijective, cone trivial through degree {d}")),
            _ => (Verdict::Inconclusive, format!("truncation {} too shallow for degree {d}", a.truncation())),
        };
        levels.push(LevelVerdict { level, verdict, pi0_bijective: pi0, cone, detail });
    }
    Ok(LevelwiseReport { axis, degree: d, levels })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scat::{flipped_nerve, FiniteSimplicialCategory};

    #[test]
    fn identity_on_a_flipped_nerve() {
        let z = flipped_nerve(&FiniteSimplicialCategory::terminal(2), 2);
        let f = BisimplicialMap::identity(&z.set);
        let report = levelwise_probe(&f, &z.set, &z.set, Axis::Outer, 1).unwrap();
        assert_eq!(report.levels.len(), 3);
        assert_eq!(report.verdict(), Verdict::Pass);
        let report = levelwise_probe(&f, &z.set, &z.set, Axis::Inner, 1).unwrap();
        assert_eq!(report.verdict(), Verdict::Pass);
    }

    #[test]
    fn planted_point_into_two_points() {
        // row 0: one point into two points; row 0 of the two-object discrete category
        let one = flipped_nerve(&FiniteSimplicialCategory::terminal(2), 1);
        let two = flipped_nerve(&FiniteSimplicialCategory::preorder(2, 2, |a, b| a == b), 1);
        let f = BisimplicialMap { maps: vec![vec![vec![0]; 3], vec![vec![0]; 3]] };
        assert!(f.validate(&one.set, &two.set).is_empty());
        let report = levelwise_probe(&f, &one.set, &two.set, Axis::Outer, 1).unwrap();
        assert_eq!(report.levels[0].verdict, Verdict::Fail);
        assert_eq!(report.levels[0].pi0_bijective, Some(false));
        assert_eq!(report.verdict(), Verdict::Fail);
    }

    #[test]
    fn shallow_levels_are_inconclusive() {
        let z = flipped_nerve(&FiniteSimplicialCategory::terminal(1), 1);
        let f = BisimplicialMap::identity(&z.set);
        let report = levelwise_probe(&f, &z.set, &z.set, Axis::Outer, 1).unwrap();
        assert_eq!(report.verdict(), Verdict::Inconclusive);
    }
}
