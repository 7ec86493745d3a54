use num_bigint::BigInt;
use serde::{Serialize, Serializer};

use super::matrix::{smith_normal_form, IntMatrix, SmithForm};
use super::HomologyError;
use crate::simp::{nondegenerate, SimplicialMap, TruncatedSimplicialSet};

/// Normalized integer chains `C_0..C_top` with boundaries `∂_n: C_n → C_{n−1}`.
#[derive(Clone, Debug)]
pub struct ChainComplex {
    /// Basis of `C_n`: the nondegenerate `n`-simplices.
    pub basis: Vec<Vec<usize>>,
    /// `boundaries[n]` is `∂_n`; `boundaries[0]` is the zero map to `C_{−1} = 0`.
    pub boundaries: Vec<IntMatrix>,
}

impl ChainComplex {
    /// Builds a complex from explicit ranks and boundaries `∂_1..∂_top`,
    /// rejecting shape mismatches and `∂∂ ≠ 0`.
    pub fn from_boundaries(ranks: Vec<usize>, higher: Vec<IntMatrix>) -> Result<Self, HomologyError> {
        if higher.len() + 1 != ranks.len() {
            return Err(HomologyError::Shape("one boundary per positive degree".into()));
        }
        let mut boundaries = vec![IntMatrix::zeros(0, ranks[0])];
        for (k, m) in higher.into_iter().enumerate() {
            let n = k + 1;
            if m.rows() != ranks[n - 1] || m.cols() != ranks[n] {
                return Err(HomologyError::Shape(format!("∂_{n} has shape {}×{}", m.rows(), m.cols())));
            }
            boundaries.push(m);
        }
        let basis = ranks.iter().map(|&r| (0..r).collect()).collect();
        let complex = Self { basis, boundaries };
        complex.check_square_zero()?;
        Ok(complex)
    }

    pub fn top(&self) -> usize {
        self.basis.len() - 1
    }

    pub fn rank(&self, n: usize) -> usize {
        self.basis[n].len()
    }

    pub fn boundary(&self, n: usize) -> &IntMatrix {
        &self.boundaries[n]
    }

    fn check_square_zero(&self) -> Result<(), HomologyError> {
        for n in 1..self.top() {
            let prod = self.boundaries[n].mul(&self.boundaries[n + 1]);
            if !prod.is_some_and(|p| p.is_zero()) {
                return Err(HomologyError::BoundarySquare { degree: n + 1 });
            }
        }
        Ok(())
    }
}

/// The normalized chain complex of `x` through degree `d + 1`, enough for `H_0..H_d`.
pub fn chain_complex(x: &TruncatedSimplicialSet, d: usize) -> Result<ChainComplex, HomologyError> {
    if d + 1 > x.truncation() {
        return Err(HomologyError::TooShallow { degree: d, truncation: x.truncation() });
    }
    let nd = nondegenerate(x);
    let basis: Vec<Vec<usize>> = nd[..=d + 1].to_vec();
    let position = positions(x, &basis);
    let mut boundaries = vec![IntMatrix::zeros(0, basis[0].len())];
    for n in 1..=d + 1 {
        let columns = basis[n]
            .iter()
            .map(|&s| {
                (0..=n)
                    .filter_map(|i| {
                        let f = x.face(n, i, s);
                        position[n - 1][f].map(|row| (row, if i % 2 == 0 { 1 } else { -1 }))
                    })
                    .collect()
            })
            .collect();
        boundaries.push(IntMatrix::from_columns(basis[n - 1].len(), columns));
    }
    let complex = ChainComplex { basis, boundaries };
    complex.check_square_zero()?;
    Ok(complex)
}

/// `position[n][s]`: row of simplex `s` in the basis of `C_n`, or `None` if degenerate.
fn positions(x: &TruncatedSimplicialSet, basis: &[Vec<usize>]) -> Vec<Vec<Option<usize>>> {
    basis
        .iter()
        .enumerate()
        .map(|(n, b)| {
            let mut pos = vec![None; x.size(n)];
            for (k, &s) in b.iter().enumerate() {
                pos[s] = Some(k);
            }
            pos
        })
        .collect()
}

/// One homology group: free rank and torsion coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomologyGroup {
    pub betti: usize,
    #[serde(serialize_with = "as_strings")]
    pub torsion: Vec<BigInt>,
}

impl HomologyGroup {
    pub fn is_trivial(&self) -> bool {
        self.betti == 0 && self.torsion.is_empty()
    }
}

fn as_strings<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|d| d.to_string()))
}

/// `H_0..H_d` of a space.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomologyProfile {
    pub groups: Vec<HomologyGroup>,
}

impl HomologyProfile {
    pub fn betti(&self) -> Vec<usize> {
        self.groups.iter().map(|g| g.betti).collect()
    }

    pub fn torsion(&self) -> Vec<Vec<BigInt>> {
        self.groups.iter().map(|g| g.torsion.clone()).collect()
    }

    pub fn is_trivial(&self) -> bool {
        self.groups.iter().all(HomologyGroup::is_trivial)
    }
}

/// Homology of a chain complex in degrees `0..=d`; needs `d < top`.
pub fn complex_homology(c: &ChainComplex, d: usize) -> Result<HomologyProfile, HomologyError> {
    if d + 1 > c.top() {
        return Err(HomologyError::TooShallow { degree: d, truncation: c.top() });
    }
    let forms: Vec<SmithForm> = (0..=d + 1).map(|n| smith_normal_form(c.boundary(n))).collect();
    let groups = (0..=d)
        .map(|n| HomologyGroup {
            betti: c.rank(n) - forms[n].rank - forms[n + 1].rank,
            torsion: forms[n + 1].torsion(),
        })
        .collect();
    Ok(HomologyProfile { groups })
}

/// Integer homology of `x` in degrees `0..=d`; requires `d ≤ P − 1`.
pub fn homology(x: &TruncatedSimplicialSet, d: usize) -> Result<HomologyProfile, HomologyError> {
    complex_homology(&chain_complex(x, d)?, d)
}

/// Connected components of a simplicial set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Components {
    /// Least vertex of each component, ascending.
    pub representatives: Vec<usize>,
    /// `component_of[v]`: index into `representatives`.
    pub component_of: Vec<usize>,
}

impl Components {
    pub fn len(&self) -> usize {
        self.representatives.len()
    }

    pub fn is_empty(&self) -> bool {
        self.representatives.is_empty()
    }
}

/// Coequalizer of `d_0, d_1: X_1 ⇉ X_0`.
pub fn pi0(x: &TruncatedSimplicialSet) -> Result<Components, HomologyError> {
    if x.truncation() < 1 {
        return Err(HomologyError::TooShallow { degree: 0, truncation: x.truncation() });
    }
    let n = x.size(0);
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut v: usize) -> usize {
        while parent[v] != v {
            parent[v] = parent[parent[v]];
            v = parent[v];
        }
        v
    }
    for e in 0..x.size(1) {
        let (a, b) = (find(&mut parent, x.face(1, 0, e)), find(&mut parent, x.face(1, 1, e)));
        // keep the smaller vertex as root so roots are least representatives
        if a < b {
            parent[b] = a;
        } else if b < a {
            parent[a] = b;
        }
    }
    let roots: Vec<usize> = (0..n).map(|v| find(&mut parent, v)).collect();
    let mut representatives: Vec<usize> = roots.iter().copied().enumerate().filter(|&(v, r)| v == r).map(|(v, _)| v).collect();
    representatives.sort_unstable();
    let component_of = roots.iter().map(|r| representatives.binary_search(r).expect("root")).collect();
    Ok(Components { representatives, component_of })
}

/// Whether `f` induces a bijection on components.
pub fn pi0_bijective(
    f: &SimplicialMap,
    src: &TruncatedSimplicialSet,
    tgt: &TruncatedSimplicialSet,
) -> Result<bool, HomologyError> {
    let (a, b) = (pi0(src)?, pi0(tgt)?);
    let mut hit = vec![None; b.len()];
    for (c, &rep) in a.representatives.iter().enumerate() {
        let image = b.component_of[f.apply(0, rep)];
        if hit[image].is_some() {
            return Ok(false);
        }
        hit[image] = Some(c);
    }
    Ok(hit.iter().all(Option::is_some))
}

/// Homology of the mapping cone of a simplicial map, degrees `0..=d`.
///
/// Vanishing through degree `d` means `f` induces isomorphisms on `H_n` for
/// `n < d` and an epimorphism on `H_d` (long exact sequence of the cone).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConeReport {
    pub degree: usize,
    pub cone: HomologyProfile,
}

impl ConeReport {
    pub fn is_trivial(&self) -> bool {
        self.cone.is_trivial()
    }

    /// First degree with nonzero cone homology.
    pub fn first_obstruction(&self) -> Option<usize> {
        self.cone.groups.iter().position(|g| !g.is_trivial())
    }
}

/// The mapping cone `cone_n = C_{n−1}(src) ⊕ C_n(tgt)` with boundary
/// `[[−∂, 0], [f#, ∂]]`, and its homology through degree `d`.
pub fn cone_probe(
    f: &SimplicialMap,
    src: &TruncatedSimplicialSet,
    tgt: &TruncatedSimplicialSet,
    d: usize,
) -> Result<ConeReport, HomologyError> {
    if src.truncation() != tgt.truncation() {
        return Err(HomologyError::TruncationMismatch { from: src.truncation(), to: tgt.truncation() });
    }
    let a = chain_complex(src, d)?;
    let b = chain_complex(tgt, d)?;
    let tgt_pos = positions(tgt, &b.basis);
    // f# : C_n(src) → C_n(tgt), degenerate images vanish
    let push = |n: usize, k: usize| tgt_pos[n][f.apply(n, a.basis[n][k])];
    let cone_rank = |n: usize| if n == 0 { b.rank(0) } else { a.rank(n - 1) + b.rank(n) };
    let ranks: Vec<usize> = (0..=d + 1).map(cone_rank).collect();
    let mut higher = Vec::with_capacity(d + 1);
    for n in 1..=d + 1 {
        // rows: C_{n−2}(src) ⊕ C_{n−1}(tgt); columns: C_{n−1}(src) ⊕ C_n(tgt)
        let offset = if n >= 2 { a.rank(n - 2) } else { 0 };
        let mut columns = Vec::with_capacity(ranks[n]);
        for k in 0..a.rank(n - 1) {
            let mut col: Vec<(usize, i64)> = Vec::new();
            if n >= 2 {
                col.extend(a.boundary(n - 1).column(k).iter().map(|&(r, v)| (r, -v)));
            }
            if let Some(r) = push(n - 1, k) {
                col.push((offset + r, 1));
            }
            columns.push(col);
        }
        for k in 0..b.rank(n) {
            columns.push(b.boundary(n).column(k).iter().map(|&(r, v)| (offset + r, v)).collect());
        }
        higher.push(IntMatrix::from_columns(ranks[n - 1], columns));
    }
    let cone = ChainComplex::from_boundaries(ranks, higher)?;
    Ok(ConeReport { degree: d, cone: complex_homology(&cone, d)? })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simp::{disjoint_union, from_facets, reverse, standard_simplex};

    fn circle() -> TruncatedSimplicialSet {
        from_facets(&[vec![0, 1], vec![1, 2], vec![0, 2]], 2).set
    }

    #[test]
    fn interval_boundary() {
        let c = chain_complex(&standard_simplex(1, 2).set, 1).unwrap();
        assert_eq!(c.boundary(1).to_dense(), vec![vec![-1], vec![1]]);
    }

    #[test]
    fn circle_incidence_rank_two() {
        let c = chain_complex(&circle(), 1).unwrap();
        assert_eq!(c.boundary(1).rows(), 3);
        assert_eq!(c.boundary(1).cols(), 3);
        assert_eq!(smith_normal_form(c.boundary(1)).rank, 2);
        assert_eq!(homology(&circle(), 1).unwrap().betti(), vec![1, 1]);
    }

    #[test]
    fn contractible_simplices() {
        for n in 0..4 {
            let h = homology(&standard_simplex(n, n + 1).set, n).unwrap();
            let mut expected = vec![0; n + 1];
            expected[0] = 1;
            assert_eq!(h.betti(), expected);
            assert!(h.torsion().iter().all(Vec::is_empty));
        }
    }

    #[test]
    fn too_shallow_is_an_error() {
        assert!(matches!(homology(&standard_simplex(1, 1).set, 1), Err(HomologyError::TooShallow { .. })));
    }

    #[test]
    fn components() {
        let pt = standard_simplex(0, 1).set;
        let two = disjoint_union(&[&pt, &pt]).unwrap();
        assert_eq!(pi0(&two).unwrap().len(), 2);
        assert_eq!(pi0(&standard_simplex(1, 1).set).unwrap().len(), 1);
        let c = pi0(&from_facets(&[vec![2, 3], vec![0, 1]], 1).set).unwrap();
        assert_eq!(c.representatives, vec![0, 2]);
        assert_eq!(c.component_of, vec![0, 0, 1, 1]);
    }

    #[test]
    fn cone_examples() {
        let d1 = standard_simplex(1, 2).set;
        assert!(cone_probe(&SimplicialMap::identity(&d1), &d1, &d1, 1).unwrap().is_trivial());
        let pt = standard_simplex(0, 2).set;
        let vertex = SimplicialMap { maps: vec![vec![0], vec![0], vec![0]] };
        assert!(vertex.validate(&pt, &d1).is_empty());
        assert!(cone_probe(&vertex, &pt, &d1, 1).unwrap().is_trivial());
        let pt1 = standard_simplex(0, 1).set;
        let two = disjoint_union(&[&pt1, &pt1]).unwrap();
        let include = SimplicialMap { maps: vec![vec![0], vec![0]] };
        let report = cone_probe(&include, &pt1, &two, 0).unwrap();
        assert_eq!(report.first_obstruction(), Some(0));
        assert!(!pi0_bijective(&include, &pt1, &two).unwrap());
    }

    #[test]
    fn cone_detects_circle_versus_point() {
        let s = circle();
        let pt = standard_simplex(0, 2).set;
        let collapse = SimplicialMap::terminal(&s);
        let report = cone_probe(&collapse, &s, &pt, 1).unwrap();
        // H_1(S¹) = ℤ dies, so the cone has H_2 = ℤ but H_0, H_1 vanish
        assert!(report.is_trivial());
        let include = SimplicialMap { maps: vec![vec![0], vec![0], vec![0]] };
        let report = cone_probe(&include, &pt, &s, 1).unwrap();
        assert_eq!(report.first_obstruction(), Some(1));
    }

    #[test]
    fn reverse_preserves_homology() {
        let s = circle();
        assert_eq!(homology(&reverse(&s), 1).unwrap(), homology(&s, 1).unwrap());
    }

    #[test]
    fn sphere_and_projective_plane() {
        let sphere = from_facets(&[vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]], 3).set;
        assert_eq!(homology(&sphere, 2).unwrap().betti(), vec![1, 0, 1]);
        let rp2: Vec<Vec<usize>> = [[1, 2, 3], [1, 3, 4], [1, 4, 5], [1, 5, 6], [1, 6, 2], [2, 3, 5], [3, 4, 6], [4, 5, 2], [5, 6, 3], [6, 2, 4]]
            .iter()
            .map(|f| f.to_vec())
            .collect();
        let x = from_facets(&rp2, 3).set;
        let h = homology(&x, 2).unwrap();
        assert_eq!(h.betti(), vec![1, 0, 0]);
        assert_eq!(h.torsion(), vec![vec![], vec![BigInt::from(2)], vec![]]);
    }
}
