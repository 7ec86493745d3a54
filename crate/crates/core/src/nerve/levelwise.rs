use crate::cat::{FiniteCategory, Functor};
use crate::report::ValidationReport;
use crate::simp::{validate_simplicial_set, TruncatedSimplicialSet};

use super::bisimplicial::TruncatedBisimplicialSet;
use super::classical::{classical_nerve, nerve_map, ClassicalNerve};
use super::NerveError;

/// A simplicial object in finite categories, truncated at `K`: categories
/// `Y_0..Y_K` with reindexing functors for the face and degeneracy operators.
#[derive(Clone, Debug)]
pub struct SimplicialDiagram {
    pub levels: Vec<FiniteCategory>,
    /// `faces[k][i]: Y_k → Y_{k−1}`; `faces[0]` is empty.
    pub faces: Vec<Vec<Functor>>,
    /// `degens[k][i]: Y_k → Y_{k+1}`.
    pub degens: Vec<Vec<Functor>>,
}

impl SimplicialDiagram {
    pub fn truncation(&self) -> usize {
        self.levels.len() - 1
    }

    /// The constant diagram at `c`.
    pub fn constant(c: &FiniteCategory, k_max: usize) -> Self {
        let id = Functor::identity(c);
        Self {
            levels: vec![c.clone(); k_max + 1],
            faces: (0..=k_max).map(|k| if k == 0 { Vec::new() } else { vec![id.clone(); k + 1] }).collect(),
            degens: (0..k_max).map(|k| vec![id.clone(); k + 1]).collect(),
        }
    }

    /// The objects (or morphisms) of the levels as a simplicial set whose
    /// structure maps are the reindexing functors.
    fn underlying(&self, on_objects: bool) -> TruncatedSimplicialSet {
        let pick = |f: &Functor| if on_objects { f.objects.clone() } else { f.morphisms.clone() };
        let sizes = self.levels.iter().map(|c| if on_objects { c.n_objects() } else { c.n_morphisms() }).collect();
        let faces = self.faces.iter().map(|fs| fs.iter().map(pick).collect()).collect();
        let degens = self.degens.iter().map(|fs| fs.iter().map(pick).collect()).collect();
        TruncatedSimplicialSet::from_tables(sizes, faces, degens).expect("functor tables match level sizes")
    }
}

/// Each reindexing functor is a functor and the simplicial identities hold on
/// objects and on morphisms.
pub fn validate_diagram(y: &SimplicialDiagram) -> ValidationReport {
    let mut report = ValidationReport::new();
    let top = y.truncation();
    if y.faces.len() != top + 1 || y.degens.len() != top {
        report.push("shape", "reindexing functor counts");
        return report;
    }
    for k in 0..=top {
        let expected = if k == 0 { 0 } else { k + 1 };
        if y.faces[k].len() != expected || (k < top && y.degens[k].len() != k + 1) {
            report.push("shape", format!("reindexing functor counts at level {k}"));
            return report;
        }
        for (i, f) in y.faces[k].iter().enumerate() {
            report.absorb(&format!("d_{i} at level {k}"), f.validate(&y.levels[k], &y.levels[k - 1]));
        }
        if k < top {
            for (i, f) in y.degens[k].iter().enumerate() {
                report.absorb(&format!("s_{i} at level {k}"), f.validate(&y.levels[k], &y.levels[k + 1]));
            }
        }
    }
    if !report.is_empty() {
        return report;
    }
    report.absorb("objects", validate_simplicial_set(&y.underlying(true)));
    report.absorb("morphisms", validate_simplicial_set(&y.underlying(false)));
    report
}

/// The levelwise nerve `n Y` with the nerve of every level.
#[derive(Clone, Debug)]
pub struct LevelwiseNerve {
    pub set: TruncatedBisimplicialSet,
    pub nerves: Vec<ClassicalNerve>,
}

/// `B_{k,p}` = `p`-simplices of `n(Y_k)`, outer maps induced by the reindexing functors.
pub fn nerve_levelwise(y: &SimplicialDiagram, p_max: usize) -> Result<LevelwiseNerve, NerveError> {
    let report = validate_diagram(y);
    if !report.is_empty() {
        return Err(NerveError::Incoherent(report));
    }
    let top = y.truncation();
    let nerves: Vec<ClassicalNerve> = y.levels.iter().map(|c| classical_nerve(c, p_max)).collect();
    let induced = |f: &Functor, k: usize, k2: usize| nerve_map(f, &y.levels[k], &y.levels[k2], &nerves[k], &nerves[k2]).maps;
    let outer_faces = (0..=top)
        .map(|k| y.faces[k].iter().map(|f| induced(f, k, k - 1)).collect())
        .collect();
    let outer_degens = (0..top)
        .map(|k| y.degens[k].iter().map(|f| induced(f, k, k + 1)).collect())
        .collect();
    let rows = nerves.iter().map(|n| n.set.clone()).collect();
    let set = TruncatedBisimplicialSet::from_parts(rows, outer_faces, outer_degens).map_err(NerveError::Simp)?;
    Ok(LevelwiseNerve { set, nerves })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cat::RelativeCategory;
    use crate::nerve::validate_bisimplicial_set;

    #[test]
    fn constant_diagrams() {
        let point = nerve_levelwise(&SimplicialDiagram::constant(&FiniteCategory::discrete(1), 2), 2).unwrap();
        assert!(point.set.sizes().iter().flatten().all(|&s| s == 1));
        let c = RelativeCategory::hat(1).underlying;
        let n = nerve_levelwise(&SimplicialDiagram::constant(&c, 2), 2).unwrap();
        assert!(validate_bisimplicial_set(&n.set).is_empty());
        for k in 0..=2 {
            assert_eq!(n.set.row(k), &classical_nerve(&c, 2).set);
        }
    }

    #[test]
    fn incoherent_reindexing_is_rejected() {
        let c = FiniteCategory::discrete(2);
        let mut y = SimplicialDiagram::constant(&c, 1);
        // d_0 s_0 must be the identity on level 0
        y.faces[1][0] = Functor::constant(&c, &c, 0);
        match nerve_levelwise(&y, 1) {
            Err(NerveError::Incoherent(report)) => assert!(report.has("face-degeneracy")),
            other => panic!("expected incoherence, got {other:?}"),
        }
    }
}
