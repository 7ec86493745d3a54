use std::collections::HashMap;
use std::hash::Hash;

use crate::report::ValidationReport;
use crate::simp::{validate_simplicial_set, Labelled, SimpError, SimplicialMap, TruncatedSimplicialSet};

/// Which index of a bisimplicial set is held fixed when reading it levelwise.
///
/// `Outer` levels are the rows `B_{k,•}` (simplicial sets in the inner index);
/// `Inner` levels are the columns `B_{•,p}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Axis {
    Outer,
    Inner,
}

/// A bisimplicial set truncated at `K` in the outer index and `P` in the inner one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedBisimplicialSet {
    rows: Vec<TruncatedSimplicialSet>,
    /// `outer_faces[k][i][p]`: `d_i: B_{k,p} → B_{k−1,p}`; `outer_faces[0]` is empty.
    outer_faces: Vec<Vec<Vec<Vec<usize>>>>,
    /// `outer_degens[k][i][p]`: `s_i: B_{k,p} → B_{k+1,p}`.
    outer_degens: Vec<Vec<Vec<Vec<usize>>>>,
}

impl TruncatedBisimplicialSet {
    /// Assembles rows and outer tables, checking shapes and index ranges.
    pub fn from_parts(
        rows: Vec<TruncatedSimplicialSet>,
        outer_faces: Vec<Vec<Vec<Vec<usize>>>>,
        outer_degens: Vec<Vec<Vec<Vec<usize>>>>,
    ) -> Result<Self, SimpError> {
        let inner = rows.first().ok_or(SimpError::Shape("no rows".into()))?.truncation();
        if rows.iter().any(|r| r.truncation() != inner) {
            return Err(SimpError::Shape("rows differ in truncation".into()));
        }
        let outer = rows.len() - 1;
        if outer_faces.len() != outer + 1 || outer_degens.len() != outer {
            return Err(SimpError::Shape("outer table counts".into()));
        }
        let x = Self { rows, outer_faces, outer_degens };
        for k in 0..=outer {
            let n_faces = if k == 0 { 0 } else { k + 1 };
            if x.outer_faces[k].len() != n_faces || (k < outer && x.outer_degens[k].len() != k + 1) {
                return Err(SimpError::Shape(format!("outer maps at row {k}")));
            }
            for p in 0..=inner {
                for i in 0..n_faces {
                    let t = &x.outer_faces[k][i].get(p).ok_or(SimpError::Shape("outer face".into()))?;
                    if t.len() != x.size(k, p) || t.iter().any(|&y| y >= x.size(k - 1, p)) {
                        return Err(SimpError::Shape(format!("outer d_{i} at cell ({k},{p})")));
                    }
                }
                if k < outer {
                    for i in 0..=k {
                        let t = &x.outer_degens[k][i].get(p).ok_or(SimpError::Shape("outer degeneracy".into()))?;
                        if t.len() != x.size(k, p) || t.iter().any(|&y| y >= x.size(k + 1, p)) {
                            return Err(SimpError::Shape(format!("outer s_{i} at cell ({k},{p})")));
                        }
                    }
                }
            }
        }
        Ok(x)
    }

    pub fn outer_truncation(&self) -> usize {
        self.rows.len() - 1
    }

    pub fn inner_truncation(&self) -> usize {
        self.rows[0].truncation()
    }

    pub fn size(&self, k: usize, p: usize) -> usize {
        self.rows[k].size(p)
    }

    /// Cell sizes, `[k][p]`.
    pub fn sizes(&self) -> Vec<Vec<usize>> {
        self.rows.iter().map(|r| r.sizes().to_vec()).collect()
    }

    pub fn row(&self, k: usize) -> &TruncatedSimplicialSet {
        &self.rows[k]
    }

    pub fn outer_face(&self, k: usize, i: usize, p: usize, x: usize) -> usize {
        self.outer_faces[k][i][p][x]
    }

    pub fn outer_degen(&self, k: usize, i: usize, p: usize, x: usize) -> usize {
        self.outer_degens[k][i][p][x]
    }

    pub fn inner_face(&self, k: usize, i: usize, p: usize, x: usize) -> usize {
        self.rows[k].face(p, i, x)
    }

    pub fn inner_degen(&self, k: usize, i: usize, p: usize, x: usize) -> usize {
        self.rows[k].degen(p, i, x)
    }

    /// The simplicial set `B_{•,p}` in the outer index.
    pub fn column(&self, p: usize) -> TruncatedSimplicialSet {
        let outer = self.outer_truncation();
        let sizes = (0..=outer).map(|k| self.size(k, p)).collect();
        let faces = (0..=outer).map(|k| self.outer_faces[k].iter().map(|t| t[p].clone()).collect()).collect();
        let degens = (0..outer).map(|k| self.outer_degens[k].iter().map(|t| t[p].clone()).collect()).collect();
        TruncatedSimplicialSet::from_tables(sizes, faces, degens).expect("checked at construction")
    }

    /// The level `n` simplicial set along `axis`.
    pub fn level(&self, axis: Axis, n: usize) -> TruncatedSimplicialSet {
        match axis {
            Axis::Outer => self.rows[n].clone(),
            Axis::Inner => self.column(n),
        }
    }

    pub fn levels(&self, axis: Axis) -> usize {
        match axis {
            Axis::Outer => self.outer_truncation() + 1,
            Axis::Inner => self.inner_truncation() + 1,
        }
    }

    /// Swaps the two indices.
    pub fn transpose(&self) -> TruncatedBisimplicialSet {
        let (outer, inner) = (self.outer_truncation(), self.inner_truncation());
        let rows = (0..=inner).map(|p| self.column(p)).collect();
        let outer_faces = (0..=inner)
            .map(|p| {
                if p == 0 {
                    return Vec::new();
                }
                (0..=p).map(|i| (0..=outer).map(|k| self.rows[k].face_table(p, i).to_vec()).collect()).collect()
            })
            .collect();
        let outer_degens = (0..inner)
            .map(|p| (0..=p).map(|i| (0..=outer).map(|k| self.rows[k].degen_table(p, i).to_vec()).collect()).collect())
            .collect();
        TruncatedBisimplicialSet::from_parts(rows, outer_faces, outer_degens).expect("transpose of a valid shape")
    }
}

/// Simplicial identities in both directions and commutation of every outer map
/// with every inner map.
pub fn validate_bisimplicial_set(x: &TruncatedBisimplicialSet) -> ValidationReport {
    let mut report = ValidationReport::new();
    let (outer, inner) = (x.outer_truncation(), x.inner_truncation());
    for k in 0..=outer {
        report.absorb(&format!("row {k}"), validate_simplicial_set(x.row(k)));
    }
    for p in 0..=inner {
        report.absorb(&format!("column {p}"), validate_simplicial_set(&x.column(p)));
    }
    // outer map φ: B_{k,·} → B_{k',·} must commute with inner d_j and s_j
    let mut check = |k: usize, k2: usize, table: &[Vec<usize>], name: String| {
        for p in 0..=inner {
            for s in 0..x.size(k, p) {
                if p >= 1 {
                    for j in 0..=p {
                        if table[p - 1][x.inner_face(k, j, p, s)] != x.inner_face(k2, j, p, table[p][s]) {
                            report.push("commute", format!("{name} and inner d_{j} on cell ({k},{p}) simplex {s}"));
                        }
                    }
                }
                if p < inner {
                    for j in 0..=p {
                        if table[p + 1][x.inner_degen(k, j, p, s)] != x.inner_degen(k2, j, p, table[p][s]) {
                            report.push("commute", format!("{name} and inner s_{j} on cell ({k},{p}) simplex {s}"));
                        }
                    }
                }
            }
        }
    };
    for k in 1..=outer {
        for i in 0..=k {
            check(k, k - 1, &x.outer_faces[k][i], format!("outer d_{i}"));
        }
    }
    for k in 0..outer {
        for i in 0..=k {
            check(k, k + 1, &x.outer_degens[k][i], format!("outer s_{i}"));
        }
    }
    report
}

/// A bisimplicial set whose cells carry labels, built from structure rules on labels.
#[derive(Clone, Debug)]
pub struct LabelledBisimplicial<L> {
    pub set: TruncatedBisimplicialSet,
    pub labels: Vec<Vec<Vec<L>>>,
    index: Vec<Vec<HashMap<L, usize>>>,
}

type Rule<'a, L> = &'a (dyn Fn(usize, usize, &L, usize) -> L + Sync);

impl<L: Clone + Eq + Hash> LabelledBisimplicial<L> {
    /// `cells[k][p]` lists `B_{k,p}`. Each rule receives the source cell `(k, p)`,
    /// a label and the operator index, and returns a label of the target cell.
    pub fn build(
        cells: Vec<Vec<Vec<L>>>,
        outer_face: Rule<'_, L>,
        outer_degen: Rule<'_, L>,
        inner_face: Rule<'_, L>,
        inner_degen: Rule<'_, L>,
    ) -> Result<Self, SimpError> {
        let outer = cells.len() - 1;
        let mut rows = Vec::with_capacity(outer + 1);
        let mut index = Vec::with_capacity(outer + 1);
        for (k, row) in cells.iter().enumerate() {
            let built = Labelled::build(row.clone(), |p, l, i| inner_face(k, p, l, i), |p, l, i| inner_degen(k, p, l, i))?;
            index.push((0..row.len()).map(|p| row[p].iter().cloned().enumerate().map(|(i, l)| (l, i)).collect()).collect());
            rows.push(built.set);
        }
        let lookup = |index: &Vec<Vec<HashMap<L, usize>>>, k: usize, p: usize, l: &L| {
            index[k][p].get(l).copied().ok_or(SimpError::UnknownLabel { dim: k })
        };
        let inner = cells[0].len() - 1;
        let mut outer_faces = vec![Vec::new()];
        for k in 1..=outer {
            let mut per_i = Vec::new();
            for i in 0..=k {
                let mut per_p = Vec::new();
                for p in 0..=inner {
                    per_p.push(
                        cells[k][p].iter().map(|l| lookup(&index, k - 1, p, &outer_face(k, p, l, i))).collect::<Result<Vec<_>, _>>()?,
                    );
                }
                per_i.push(per_p);
            }
            outer_faces.push(per_i);
        }
        let mut outer_degens = Vec::new();
        for k in 0..outer {
            let mut per_i = Vec::new();
            for i in 0..=k {
                let mut per_p = Vec::new();
                for p in 0..=inner {
                    per_p.push(
                        cells[k][p].iter().map(|l| lookup(&index, k + 1, p, &outer_degen(k, p, l, i))).collect::<Result<Vec<_>, _>>()?,
                    );
                }
                per_i.push(per_p);
            }
            outer_degens.push(per_i);
        }
        let set = TruncatedBisimplicialSet::from_parts(rows, outer_faces, outer_degens)?;
        Ok(Self { set, labels: cells, index })
    }

    pub fn index_of(&self, k: usize, p: usize, label: &L) -> Option<usize> {
        self.index.get(k)?.get(p)?.get(label).copied()
    }

    pub fn label(&self, k: usize, p: usize, x: usize) -> &L {
        &self.labels[k][p][x]
    }
}

/// A cellwise map of bisimplicial sets, `maps[k][p]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BisimplicialMap {
    pub maps: Vec<Vec<Vec<usize>>>,
}

impl BisimplicialMap {
    pub fn identity(x: &TruncatedBisimplicialSet) -> Self {
        Self { maps: x.sizes().iter().map(|row| row.iter().map(|&s| (0..s).collect()).collect()).collect() }
    }

    /// The map on row `k`.
    pub fn row_map(&self, k: usize) -> SimplicialMap {
        SimplicialMap { maps: self.maps[k].clone() }
    }

    /// The map on column `p`.
    pub fn column_map(&self, p: usize) -> SimplicialMap {
        SimplicialMap { maps: self.maps.iter().map(|row| row[p].clone()).collect() }
    }

    pub fn level_map(&self, axis: Axis, n: usize) -> SimplicialMap {
        match axis {
            Axis::Outer => self.row_map(n),
            Axis::Inner => self.column_map(n),
        }
    }

    /// Whether every cell map is a bijection.
    pub fn is_bijective(&self, tgt: &TruncatedBisimplicialSet) -> bool {
        self.maps.iter().enumerate().all(|(k, row)| {
            row.iter().enumerate().all(|(p, m)| {
                let mut seen = vec![false; tgt.size(k, p)];
                m.len() == seen.len() && m.iter().all(|&y| !std::mem::replace(&mut seen[y], true))
            })
        })
    }

    /// Shapes plus commutation with all four families of structure maps.
    pub fn validate(&self, src: &TruncatedBisimplicialSet, tgt: &TruncatedBisimplicialSet) -> ValidationReport {
        let mut report = ValidationReport::new();
        if src.outer_truncation() != tgt.outer_truncation()
            || src.inner_truncation() != tgt.inner_truncation()
            || self.maps.len() != src.outer_truncation() + 1
        {
            report.push("shape", "truncations differ");
            return report;
        }
        for k in 0..=src.outer_truncation() {
            let row = self.row_map(k);
            if row.maps.len() != src.inner_truncation() + 1 {
                report.push("shape", format!("row {k} has the wrong number of cells"));
                return report;
            }
            report.absorb(&format!("row {k}"), row.validate(src.row(k), tgt.row(k)));
        }
        if !report.is_empty() {
            return report;
        }
        for p in 0..=src.inner_truncation() {
            report.absorb(&format!("column {p}"), self.column_map(p).validate(&src.column(p), &tgt.column(p)));
        }
        report
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simp::standard_simplex;

    /// `Δ^a ⊠ Δ^b`: cell `(k, p)` = pairs (monotone `[k] → [a]`, monotone `[p] → [b]`).
    fn external_product(a: usize, b: usize, outer: usize, inner: usize) -> LabelledBisimplicial<(Vec<usize>, Vec<usize>)> {
        let (x, y) = (standard_simplex(a, outer), standard_simplex(b, inner));
        let cells = (0..=outer)
            .map(|k| {
                (0..=inner)
                    .map(|p| {
                        x.labels[k].iter().flat_map(|s| y.labels[p].iter().map(move |t| (s.clone(), t.clone()))).collect()
                    })
                    .collect()
            })
            .collect();
        let drop = |v: &Vec<usize>, i: usize| {
            let mut v = v.clone();
            v.remove(i);
            v
        };
        let dup = |v: &Vec<usize>, i: usize| {
            let mut v = v.clone();
            v.insert(i, v[i]);
            v
        };
        LabelledBisimplicial::build(
            cells,
            &|_, _, (s, t): &(Vec<usize>, Vec<usize>), i| (drop(s, i), t.clone()),
            &|_, _, (s, t): &(Vec<usize>, Vec<usize>), i| (dup(s, i), t.clone()),
            &|_, _, (s, t): &(Vec<usize>, Vec<usize>), i| (s.clone(), drop(t, i)),
            &|_, _, (s, t): &(Vec<usize>, Vec<usize>), i| (s.clone(), dup(t, i)),
        )
        .unwrap()
    }

    #[test]
    fn external_product_is_valid() {
        let b = external_product(1, 2, 2, 2);
        assert_eq!(b.set.size(1, 1), 3 * 6);
        assert!(validate_bisimplicial_set(&b.set).is_empty());
        assert_eq!(b.set.column(0).sizes(), &[2, 3, 4].map(|s| s * 3));
        let t = b.set.transpose();
        assert!(validate_bisimplicial_set(&t).is_empty());
        assert_eq!(t.transpose(), b.set);
        assert!(BisimplicialMap::identity(&b.set).validate(&b.set, &b.set).is_empty());
    }

    #[test]
    fn broken_commutation_is_reported() {
        let mut b = external_product(1, 1, 1, 1).set;
        // swap the images of two simplices under one outer face
        b.outer_faces[1][0][1].swap(0, 1);
        assert!(!validate_bisimplicial_set(&b).is_empty());
    }
}
