use std::collections::HashMap;
use std::hash::Hash;

use super::{SimpError, SimplicialOperator};
use crate::report::ValidationReport;

/// A simplicial set truncated at dimension `P`: simplex sets `X_0..X_P` with
/// face maps `d_i: X_n → X_{n-1}` and degeneracies `s_i: X_n → X_{n+1}` inside
/// the truncation. Simplices are dense indices per dimension.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TruncatedSimplicialSet {
    sizes: Vec<usize>,
    /// `faces[n][i][x]` for `1 ≤ n ≤ P`; `faces[0]` is empty.
    faces: Vec<Vec<Vec<usize>>>,
    /// `degens[n][i][x]` for `0 ≤ n < P`.
    degens: Vec<Vec<Vec<usize>>>,
}

impl TruncatedSimplicialSet {
    /// Builds a set from generator tables, checking only shapes and index ranges.
    pub fn from_tables(
        sizes: Vec<usize>,
        faces: Vec<Vec<Vec<usize>>>,
        degens: Vec<Vec<Vec<usize>>>,
    ) -> Result<Self, SimpError> {
        let top = sizes.len().checked_sub(1).ok_or(SimpError::Shape("no dimensions".into()))?;
        if faces.len() != top + 1 || degens.len() != top {
            return Err(SimpError::Shape("face/degeneracy table counts".into()));
        }
        for n in 0..=top {
            let expected = if n == 0 { 0 } else { n + 1 };
            if faces[n].len() != expected {
                return Err(SimpError::Shape(format!("dimension {n} needs {expected} face maps")));
            }
            for (i, table) in faces[n].iter().enumerate() {
                if table.len() != sizes[n] || table.iter().any(|&y| y >= sizes[n - 1]) {
                    return Err(SimpError::Shape(format!("face d_{i} on dimension {n}")));
                }
            }
            if n < top {
                if degens[n].len() != n + 1 {
                    return Err(SimpError::Shape(format!("dimension {n} needs {} degeneracies", n + 1)));
                }
                for (i, table) in degens[n].iter().enumerate() {
                    if table.len() != sizes[n] || table.iter().any(|&y| y >= sizes[n + 1]) {
                        return Err(SimpError::Shape(format!("degeneracy s_{i} on dimension {n}")));
                    }
                }
            }
        }
        Ok(Self { sizes, faces, degens })
    }

    /// The empty simplicial set truncated at `p`.
    pub fn empty(p: usize) -> Self {
        Self {
            sizes: vec![0; p + 1],
            faces: (0..=p).map(|n| if n == 0 { Vec::new() } else { vec![Vec::new(); n + 1] }).collect(),
            degens: (0..p).map(|n| vec![Vec::new(); n + 1]).collect(),
        }
    }

    pub fn truncation(&self) -> usize {
        self.sizes.len() - 1
    }

    pub fn size(&self, n: usize) -> usize {
        self.sizes[n]
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn face(&self, n: usize, i: usize, x: usize) -> usize {
        self.faces[n][i][x]
    }

    pub fn degen(&self, n: usize, i: usize, x: usize) -> usize {
        self.degens[n][i][x]
    }

    pub fn face_table(&self, n: usize, i: usize) -> &[usize] {
        &self.faces[n][i]
    }

    pub fn degen_table(&self, n: usize, i: usize) -> &[usize] {
        &self.degens[n][i]
    }

    /// Action of an operator on a simplex, through the epi-mono factorization
    /// of its carrier: faces first, then degeneracies.
    pub fn act(&self, t: &SimplicialOperator, x: usize) -> Result<usize, SimpError> {
        let top = self.truncation();
        if t.from_dim() > top || t.to_dim() > top {
            return Err(SimpError::OutsideTruncation { dim: t.from_dim().max(t.to_dim()), truncation: top });
        }
        let mut dim = t.from_dim();
        let mut x = x;
        for &j in t.missing_vertices().iter().rev() {
            x = self.faces[dim][j][x];
            dim -= 1;
        }
        for i in t.repeated_positions() {
            x = self.degens[dim][i][x];
            dim += 1;
        }
        debug_assert_eq!(dim, t.to_dim());
        Ok(x)
    }

    /// The restriction to dimensions `≤ k`.
    pub fn truncate(&self, k: usize) -> Result<Self, SimpError> {
        if k > self.truncation() {
            return Err(SimpError::OutsideTruncation { dim: k, truncation: self.truncation() });
        }
        Ok(Self {
            sizes: self.sizes[..=k].to_vec(),
            faces: self.faces[..=k].to_vec(),
            degens: self.degens[..k].to_vec(),
        })
    }

    /// Marks degenerate simplices per dimension.
    pub fn degenerate_mask(&self) -> Vec<Vec<bool>> {
        let mut mask: Vec<Vec<bool>> = self.sizes.iter().map(|&s| vec![false; s]).collect();
        for n in 0..self.truncation() {
            for table in &self.degens[n] {
                for &y in table {
                    mask[n + 1][y] = true;
                }
            }
        }
        mask
    }
}

/// Nondegenerate simplices (those outside the image of every `s_i`), per dimension.
pub fn nondegenerate(x: &TruncatedSimplicialSet) -> Vec<Vec<usize>> {
    x.degenerate_mask()
        .into_iter()
        .map(|m| m.iter().enumerate().filter(|(_, &d)| !d).map(|(i, _)| i).collect())
        .collect()
}

/// Lists every violated simplicial identity within the truncation.
pub fn validate_simplicial_set(x: &TruncatedSimplicialSet) -> ValidationReport {
    let mut report = ValidationReport::new();
    let top = x.truncation();
    let d = |n: usize, i: usize, s: usize| x.faces[n][i][s];
    let s = |n: usize, i: usize, v: usize| x.degens[n][i][v];
    // d_i d_j = d_{j-1} d_i for i < j
    for n in 2..=top {
        for j in 1..=n {
            for i in 0..j {
                for v in 0..x.sizes[n] {
                    if d(n - 1, i, d(n, j, v)) != d(n - 1, j - 1, d(n, i, v)) {
                        report.push("face-face", format!("d_{i} d_{j} ≠ d_{} d_{i} on simplex {v} of dimension {n}", j - 1));
                    }
                }
            }
        }
    }
    for n in 0..top {
        for j in 0..=n {
            for v in 0..x.sizes[n] {
                let up = s(n, j, v);
                for i in 0..=n + 1 {
                    let lhs = d(n + 1, i, up);
                    let rhs = if i < j {
                        s(n - 1, j - 1, d(n, i, v))
                    } else if i == j || i == j + 1 {
                        v
                    } else {
                        s(n - 1, j, d(n, i - 1, v))
                    };
                    if lhs != rhs {
                        report.push("face-degeneracy", format!("d_{i} s_{j} identity fails on simplex {v} of dimension {n}"));
                    }
                }
            }
        }
    }
    // s_i s_j = s_{j+1} s_i for i ≤ j
    for n in 0..top.saturating_sub(1) {
        for j in 0..=n {
            for i in 0..=j {
                for v in 0..x.sizes[n] {
                    if s(n + 1, i, s(n, j, v)) != s(n + 1, j + 1, s(n, i, v)) {
                        report.push("degeneracy-degeneracy", format!("s_{i} s_{j} ≠ s_{} s_{i} on simplex {v} of dimension {n}", j + 1));
                    }
                }
            }
        }
    }
    report
}

/// A simplicial set whose simplices carry labels, built from face and
/// degeneracy rules on the labels.
#[derive(Clone, Debug)]
pub struct Labelled<L> {
    pub set: TruncatedSimplicialSet,
    pub labels: Vec<Vec<L>>,
    index: Vec<HashMap<L, usize>>,
}

impl<L: Clone + Eq + Hash> Labelled<L> {
    /// `levels[n]` lists the `n`-simplices; `face(n, &x, i)` and `degen(n, &x, i)`
    /// must return labels present in the neighbouring level.
    pub fn build(
        levels: Vec<Vec<L>>,
        face: impl Fn(usize, &L, usize) -> L,
        degen: impl Fn(usize, &L, usize) -> L,
    ) -> Result<Self, SimpError> {
        let index: Vec<HashMap<L, usize>> = levels
            .iter()
            .map(|lv| lv.iter().cloned().enumerate().map(|(i, l)| (l, i)).collect())
            .collect();
        for (n, lv) in levels.iter().enumerate() {
            if index[n].len() != lv.len() {
                return Err(SimpError::Shape(format!("duplicate labels in dimension {n}")));
            }
        }
        let top = levels.len() - 1;
        let mut faces = vec![Vec::new()];
        for n in 1..=top {
            let mut per_i = Vec::with_capacity(n + 1);
            for i in 0..=n {
                let table = levels[n]
                    .iter()
                    .map(|l| index[n - 1].get(&face(n, l, i)).copied().ok_or(SimpError::UnknownLabel { dim: n - 1 }))
                    .collect::<Result<Vec<_>, _>>()?;
                per_i.push(table);
            }
            faces.push(per_i);
        }
        let mut degens = Vec::new();
        for n in 0..top {
            let mut per_i = Vec::with_capacity(n + 1);
            for i in 0..=n {
                let table = levels[n]
                    .iter()
                    .map(|l| index[n + 1].get(&degen(n, l, i)).copied().ok_or(SimpError::UnknownLabel { dim: n + 1 }))
                    .collect::<Result<Vec<_>, _>>()?;
                per_i.push(table);
            }
            degens.push(per_i);
        }
        let sizes = levels.iter().map(Vec::len).collect();
        Ok(Self { set: TruncatedSimplicialSet { sizes, faces, degens }, labels: levels, index })
    }

    pub fn index_of(&self, n: usize, label: &L) -> Option<usize> {
        self.index.get(n)?.get(label).copied()
    }

    pub fn label(&self, n: usize, x: usize) -> &L {
        &self.labels[n][x]
    }
}

/// Monotone sequences of length `k + 1` in `0..=n`, lexicographic.
pub fn monotone_sequences(n: usize, k: usize) -> Vec<Vec<usize>> {
    SimplicialOperator::all(n, k).into_iter().map(|t| t.carrier().to_vec()).collect()
}

fn delete(seq: &[usize], i: usize) -> Vec<usize> {
    let mut v = seq.to_vec();
    v.remove(i);
    v
}

fn duplicate(seq: &[usize], i: usize) -> Vec<usize> {
    let mut v = seq.to_vec();
    v.insert(i, seq[i]);
    v
}

/// The standard `n`-simplex truncated at `p`: `k`-simplices are monotone maps `[k] → [n]`.
pub fn standard_simplex(n: usize, p: usize) -> Labelled<Vec<usize>> {
    let levels = (0..=p).map(|k| monotone_sequences(n, k)).collect();
    Labelled::build(levels, |_, s, i| delete(s, i), |_, s, i| duplicate(s, i)).expect("standard simplex")
}

/// The ordered simplicial complex generated by `facets` (vertex labels sorted
/// ascending), as a simplicial set: `k`-simplices are weakly increasing vertex
/// sequences whose support lies in some facet.
pub fn from_facets(facets: &[Vec<usize>], p: usize) -> Labelled<Vec<usize>> {
    let mut faces: std::collections::BTreeSet<Vec<usize>> = std::collections::BTreeSet::new();
    for f in facets {
        let mut f = f.clone();
        f.sort_unstable();
        f.dedup();
        // every nonempty subset
        for mask in 1u64..(1 << f.len()) {
            faces.insert(f.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &v)| v).collect());
        }
    }
    let mut levels = Vec::with_capacity(p + 1);
    for k in 0..=p {
        let mut level = Vec::new();
        for face in &faces {
            // sequences of length k+1 using every vertex of `face`
            let m = face.len() - 1;
            if m > k {
                continue;
            }
            for seq in monotone_sequences(m, k) {
                let surjective = seq.first() == Some(&0)
                    && seq.last() == Some(&m)
                    && seq.windows(2).all(|w| w[1] - w[0] <= 1);
                if surjective {
                    level.push(seq.iter().map(|&i| face[i]).collect::<Vec<_>>());
                }
            }
        }
        level.sort();
        levels.push(level);
    }
    Labelled::build(levels, |_, s, i| delete(s, i), |_, s, i| duplicate(s, i)).expect("complex")
}

/// Faces `d_i ↦ d_{n−i}` and degeneracies `s_i ↦ s_{n−i}`.
pub fn reverse(x: &TruncatedSimplicialSet) -> TruncatedSimplicialSet {
    TruncatedSimplicialSet {
        sizes: x.sizes.clone(),
        faces: x.faces.iter().map(|per| per.iter().rev().cloned().collect()).collect(),
        degens: x.degens.iter().map(|per| per.iter().rev().cloned().collect()).collect(),
    }
}

/// Dimensionwise disjoint union; the simplices of `xs[j]` follow those of `xs[..j]`.
pub fn disjoint_union(xs: &[&TruncatedSimplicialSet]) -> Result<TruncatedSimplicialSet, SimpError> {
    let Some(first) = xs.first() else {
        return Err(SimpError::Shape("disjoint union of nothing".into()));
    };
    let top = first.truncation();
    if let Some(bad) = xs.iter().find(|x| x.truncation() != top) {
        return Err(SimpError::TruncationMismatch { left: top, right: bad.truncation() });
    }
    let mut out = TruncatedSimplicialSet::empty(top);
    for x in xs {
        let offset = out.sizes.clone();
        for n in 0..=top {
            if n >= 1 {
                for i in 0..=n {
                    out.faces[n][i].extend(x.faces[n][i].iter().map(|&y| y + offset[n - 1]));
                }
            }
            if n < top {
                for i in 0..=n {
                    out.degens[n][i].extend(x.degens[n][i].iter().map(|&y| y + offset[n + 1]));
                }
            }
            out.sizes[n] += x.sizes[n];
        }
    }
    Ok(out)
}

/// Dimensionwise cartesian product; the pair `(x, y)` has index `x * |Y_n| + y`.
pub fn product2(x: &TruncatedSimplicialSet, y: &TruncatedSimplicialSet) -> Result<TruncatedSimplicialSet, SimpError> {
    let top = x.truncation();
    if y.truncation() != top {
        return Err(SimpError::TruncationMismatch { left: top, right: y.truncation() });
    }
    let sizes: Vec<usize> = (0..=top).map(|n| x.sizes[n] * y.sizes[n]).collect();
    let pair = |tx: &[usize], ty: &[usize], ny: usize| -> Vec<usize> {
        let mut t = Vec::with_capacity(tx.len() * ty.len());
        for &a in tx {
            for &b in ty {
                t.push(a * ny + b);
            }
        }
        t
    };
    let mut faces = vec![Vec::new()];
    for n in 1..=top {
        faces.push((0..=n).map(|i| pair(&x.faces[n][i], &y.faces[n][i], y.sizes[n - 1])).collect());
    }
    let degens = (0..top)
        .map(|n| (0..=n).map(|i| pair(&x.degens[n][i], &y.degens[n][i], y.sizes[n + 1])).collect())
        .collect();
    Ok(TruncatedSimplicialSet { sizes, faces, degens })
}

/// A dimensionwise map between simplicial sets of equal truncation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialMap {
    pub maps: Vec<Vec<usize>>,
}

impl SimplicialMap {
    pub fn identity(x: &TruncatedSimplicialSet) -> Self {
        Self { maps: x.sizes.iter().map(|&s| (0..s).collect()).collect() }
    }

    /// The unique map to the standard 0-simplex.
    pub fn terminal(x: &TruncatedSimplicialSet) -> Self {
        Self { maps: x.sizes.iter().map(|&s| vec![0; s]).collect() }
    }

    pub fn apply(&self, n: usize, x: usize) -> usize {
        self.maps[n][x]
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &SimplicialMap) -> SimplicialMap {
        SimplicialMap {
            maps: self.maps.iter().zip(&next.maps).map(|(a, b)| a.iter().map(|&x| b[x]).collect()).collect(),
        }
    }

    pub fn truncate(&self, k: usize) -> SimplicialMap {
        SimplicialMap { maps: self.maps[..=k].to_vec() }
    }

    /// Checks shapes and commutation with every face and degeneracy.
    pub fn validate(&self, src: &TruncatedSimplicialSet, tgt: &TruncatedSimplicialSet) -> ValidationReport {
        let mut report = ValidationReport::new();
        let top = src.truncation();
        if tgt.truncation() != top || self.maps.len() != top + 1 {
            report.push("shape", "truncations differ");
            return report;
        }
        for n in 0..=top {
            if self.maps[n].len() != src.sizes[n] || self.maps[n].iter().any(|&y| y >= tgt.sizes[n]) {
                report.push("shape", format!("dimension {n} map has wrong size or range"));
                return report;
            }
        }
        for n in 1..=top {
            for i in 0..=n {
                for x in 0..src.sizes[n] {
                    if self.maps[n - 1][src.faces[n][i][x]] != tgt.faces[n][i][self.maps[n][x]] {
                        report.push("face", format!("f d_{i} ≠ d_{i} f on simplex {x} of dimension {n}"));
                    }
                }
            }
        }
        for n in 0..top {
            for i in 0..=n {
                for x in 0..src.sizes[n] {
                    if self.maps[n + 1][src.degens[n][i][x]] != tgt.degens[n][i][self.maps[n][x]] {
                        report.push("degeneracy", format!("f s_{i} ≠ s_{i} f on simplex {x} of dimension {n}"));
                    }
                }
            }
        }
        report
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_simplex_sizes() {
        assert_eq!(standard_simplex(0, 2).set.sizes(), &[1, 1, 1]);
        assert_eq!(standard_simplex(1, 2).set.sizes(), &[2, 3, 4]);
        assert_eq!(standard_simplex(2, 2).set.sizes(), &[3, 6, 10]);
        for n in 0..4 {
            assert!(validate_simplicial_set(&standard_simplex(n, 3).set).is_empty());
        }
    }

    #[test]
    fn planted_face_identity_violation_is_reported() {
        let mut x = standard_simplex(2, 2).set;
        // redirect d_2 of the nondegenerate triangle [0,1,2] to a different edge
        let delta = standard_simplex(2, 2);
        let tri = delta.index_of(2, &vec![0, 1, 2]).unwrap();
        let wrong = delta.index_of(1, &vec![1, 2]).unwrap();
        x.faces[2][2][tri] = wrong;
        let report = validate_simplicial_set(&x);
        assert!(report.has("face-face"));
        assert!(report.violations().iter().any(|v| v.detail.contains(&format!("simplex {tri} "))));
    }

    #[test]
    fn act_examples() {
        let d1 = standard_simplex(1, 2);
        let edge = d1.index_of(1, &vec![0, 1]).unwrap();
        let x = &d1.set;
        assert_eq!(x.act(&SimplicialOperator::identity(1), edge).unwrap(), edge);
        let vertex = x.act(&SimplicialOperator::new(1, 0, vec![0]).unwrap(), edge).unwrap();
        assert_eq!(d1.label(0, vertex), &vec![0]);
        let up = x.act(&SimplicialOperator::new(1, 2, vec![0, 0, 1]).unwrap(), edge).unwrap();
        assert_eq!(up, x.degen(1, 0, edge));
        assert_eq!(d1.label(2, up), &vec![0, 0, 1]);
        // faces of s_0(edge): d_0 and d_1 give the edge back, d_2 the degenerate [0,0]
        assert_eq!(x.face(2, 0, up), edge);
        assert_eq!(x.face(2, 1, up), edge);
        assert_eq!(d1.label(1, x.face(2, 2, up)), &vec![0, 0]);
        assert!(x.act(&SimplicialOperator::identity(3), 0).is_err());
    }

    #[test]
    fn act_respects_composition_exhaustively() {
        let d = standard_simplex(2, 3);
        let x = &d.set;
        for p1 in 0..=3 {
            for p2 in 0..=3 {
                for p3 in 0..=3 {
                    for t1 in SimplicialOperator::all(p1, p2) {
                        for t2 in SimplicialOperator::all(p2, p3) {
                            let t21 = t2.compose(&t1).unwrap();
                            for s in 0..x.size(p1) {
                                let step = x.act(&t2, x.act(&t1, s).unwrap()).unwrap();
                                assert_eq!(x.act(&t21, s).unwrap(), step);
                            }
                        }
                    }
                }
            }
        }
        // on the monotone-map model the action is precomposition
        for t in SimplicialOperator::all(3, 1) {
            for s in 0..x.size(3) {
                let expected: Vec<usize> = t.carrier().iter().map(|&i| d.label(3, s)[i]).collect();
                assert_eq!(d.label(1, x.act(&t, s).unwrap()), &expected);
            }
        }
    }

    #[test]
    fn nondegenerate_counts() {
        let counts = |x: &TruncatedSimplicialSet| nondegenerate(x).iter().map(Vec::len).collect::<Vec<_>>();
        assert_eq!(counts(&standard_simplex(1, 2).set), vec![2, 1, 0]);
        // injective monotone maps [k] → [2]: C(3, k+1)
        assert_eq!(counts(&standard_simplex(2, 2).set), vec![3, 3, 1]);
    }

    #[test]
    fn reverse_is_involutive_and_valid() {
        let x = standard_simplex(2, 3).set;
        let r = reverse(&x);
        assert!(validate_simplicial_set(&r).is_empty());
        assert_eq!(reverse(&r), x);
    }

    #[test]
    fn reverse_of_standard_simplex_is_isomorphic_by_flip() {
        let (n, p) = (2, 3);
        let d = standard_simplex(n, p);
        let r = reverse(&d.set);
        // x ↦ (n - x[k-i])_i
        let maps = (0..=p)
            .map(|k| {
                d.labels[k]
                    .iter()
                    .map(|s| d.index_of(k, &s.iter().rev().map(|&v| n - v).collect()).unwrap())
                    .collect()
            })
            .collect();
        let flip = SimplicialMap { maps };
        assert!(flip.validate(&r, &d.set).is_empty());
    }

    #[test]
    fn unions_and_products() {
        let pt = standard_simplex(0, 1).set;
        assert_eq!(disjoint_union(&[&pt, &pt]).unwrap().sizes(), &[2, 2]);
        let e = standard_simplex(1, 1).set;
        let sq = product2(&e, &e).unwrap();
        assert_eq!(sq.sizes(), &[4, 9]);
        assert!(validate_simplicial_set(&sq).is_empty());
        let y = standard_simplex(2, 2).set;
        assert_eq!(product2(&standard_simplex(0, 2).set, &y).unwrap(), y);
        assert!(matches!(product2(&pt, &y), Err(SimpError::TruncationMismatch { .. })));
    }

    #[test]
    fn facet_complexes() {
        let circle = from_facets(&[vec![0, 1], vec![1, 2], vec![0, 2]], 2);
        assert!(validate_simplicial_set(&circle.set).is_empty());
        let nd: Vec<usize> = nondegenerate(&circle.set).iter().map(Vec::len).collect();
        assert_eq!(nd, vec![3, 3, 0]);
        let tri = from_facets(&[vec![0, 1, 2]], 3);
        assert_eq!(tri.set, standard_simplex(2, 3).set);
    }

    #[test]
    fn map_validation_detects_non_simplicial_maps() {
        let d = standard_simplex(1, 1);
        let id = SimplicialMap::identity(&d.set);
        assert!(id.validate(&d.set, &d.set).is_empty());
        let mut bad = id.clone();
        bad.maps[0] = vec![1, 0];
        assert!(!bad.validate(&d.set, &d.set).is_empty());
    }
}
