//! Seeded random instances.
//!
//! Simplicial categories: a random preorder on `1..=max_objects` objects (a
//! total-order-compatible one when acyclic), each related pair carrying one of
//! the hom shapes allowed by `max_nondegenerate` (a point, two points, or a
//! vertex with a loop edge), composition by units and otherwise constant at a
//! basepoint. Simplicial sets: ordered simplicial complexes with per-dimension
//! bounds on nondegenerate simplices.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::scat::{validate_simplicial_category, FiniteSimplicialCategory};
use crate::simp::{disjoint_union, from_facets, standard_simplex, Labelled, SimplicialMap, TruncatedSimplicialSet};

/// Retries with a derived seed before generation gives up.
const MAX_RETRIES: usize = 8;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GenParams {
    pub seed: u64,
    pub max_objects: usize,
    /// Nondegenerate simplices per hom, summed over dimensions.
    pub max_nondegenerate: usize,
    /// Nondegenerate simplices of generated simplicial sets, per dimension.
    pub simplex_bounds: Vec<usize>,
    pub trunc_p: usize,
    pub trunc_k: usize,
    pub trunc_q: usize,
    pub degree: usize,
    pub acyclic: bool,
}

impl Default for GenParams {
    fn default() -> Self {
        Self {
            seed: 0,
            max_objects: 3,
            max_nondegenerate: 2,
            simplex_bounds: vec![4, 4, 2],
            trunc_p: 2,
            trunc_k: 2,
            trunc_q: 2,
            degree: 1,
            acyclic: true,
        }
    }
}

impl GenParams {
    pub fn with_seed(&self, seed: u64) -> Self {
        Self { seed, ..self.clone() }
    }

    pub fn check(&self) -> Result<(), GenError> {
        if self.max_objects == 0 {
            return Err(GenError::Params("max_objects must be at least 1".into()));
        }
        if self.max_nondegenerate == 0 {
            return Err(GenError::Params("every hom(A,A) holds a unit, so max_nondegenerate must be at least 1".into()));
        }
        if self.simplex_bounds.first().is_none_or(|&b| b == 0) {
            return Err(GenParams::no_vertices());
        }
        Ok(())
    }

    fn no_vertices() -> GenError {
        GenError::Params("simplex_bounds must allow at least one vertex".into())
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GenError {
    #[error("invalid parameters: {0}")]
    Params(String),
    #[error("no valid instance after {0} attempts")]
    Exhausted(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Shape {
    Empty,
    Point,
    TwoPoints,
    Loop,
}

impl Shape {
    fn build(self, p: usize) -> TruncatedSimplicialSet {
        match self {
            Shape::Empty => TruncatedSimplicialSet::empty(p),
            Shape::Point => standard_simplex(0, p).set,
            Shape::TwoPoints => {
                let pt = standard_simplex(0, p).set;
                disjoint_union(&[&pt, &pt]).expect("same truncation")
            }
            Shape::Loop => circle(p),
        }
    }
}

/// `Δ¹/∂Δ¹`: one vertex, one nondegenerate edge. An `n`-simplex is the number
/// of ones in a monotone 0/1 sequence of length `n + 1`, with `n + 1` identified with `0`.
fn circle(p: usize) -> TruncatedSimplicialSet {
    let levels = (0..=p).map(|n| (0..=n).collect::<Vec<usize>>()).collect();
    let normalize = |n: usize, ones: usize| if ones == n + 1 { 0 } else { ones };
    // deleting position i of 0^{n+1−j} 1^j removes a one iff i ≥ n + 1 − j
    let face = |n: usize, &j: &usize, i: usize| normalize(n - 1, if j > 0 && i + j > n { j - 1 } else { j });
    let degen = |n: usize, &j: &usize, i: usize| normalize(n + 1, if j > 0 && i + j > n { j + 1 } else { j });
    Labelled::build(levels, face, degen).expect("circle tables").set
}

fn attempt(params: &GenParams, rng: &mut ChaCha8Rng) -> Option<FiniteSimplicialCategory> {
    let n = rng.gen_range(1..=params.max_objects);
    let mut related = vec![false; n * n];
    for a in 0..n {
        related[a * n + a] = true;
        for b in 0..n {
            let allowed = if params.acyclic { a < b } else { a != b };
            if allowed && rng.gen_bool(if params.acyclic { 0.5 } else { 0.35 }) {
                related[a * n + b] = true;
            }
        }
    }
    for m in 0..n {
        for a in 0..n {
            for b in 0..n {
                if related[a * n + m] && related[m * n + b] {
                    related[a * n + b] = true;
                }
            }
        }
    }
    let bound = params.max_nondegenerate;
    let mut shapes = vec![Shape::Empty; n * n];
    for a in 0..n {
        for b in 0..n {
            shapes[a * n + b] = if a == b {
                let on_cycle = (0..n).any(|c| c != a && related[a * n + c] && related[c * n + a]);
                if params.acyclic || (!on_cycle && (bound < 2 || rng.gen_bool(0.5))) {
                    Shape::Point
                } else if bound >= 2 {
                    Shape::TwoPoints
                } else {
                    return None;
                }
            } else if related[a * n + b] {
                let choices: &[Shape] = if bound >= 2 { &[Shape::Point, Shape::TwoPoints, Shape::Loop] } else { &[Shape::Point] };
                *choices.choose(rng).expect("nonempty")
            } else {
                Shape::Empty
            };
        }
    }
    let p = params.trunc_p;
    let homs: Vec<TruncatedSimplicialSet> = shapes.iter().map(|s| s.build(p)).collect();
    // unit vertex 0; the basepoint of a two-point endomorphism hom is the other point
    let base: Vec<usize> = (0..n * n).map(|ab| usize::from(ab / n == ab % n && shapes[ab] == Shape::TwoPoints)).collect();
    let degenerate_vertex = |h: &TruncatedSimplicialSet, v: usize, q: usize| {
        (0..q).fold(v, |x, dim| h.degen(dim, 0, x))
    };
    let unit = |a: usize, q: usize| degenerate_vertex(&homs[a * n + a], 0, q);
    let x = FiniteSimplicialCategory::from_fn(n, homs.clone(), vec![0; n], |a, b, c, q, f, g| {
        if a == b && f == unit(a, q) {
            g
        } else if b == c && g == unit(b, q) {
            f
        } else {
            degenerate_vertex(&homs[a * n + c], base[a * n + c], q)
        }
    })
    .ok()?;
    validate_simplicial_category(&x).is_empty().then_some(x)
}

/// A valid simplicial category, deterministic in `params.seed`.
pub fn gen_simplicial_category(params: &GenParams) -> Result<FiniteSimplicialCategory, GenError> {
    params.check()?;
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    for _ in 0..MAX_RETRIES {
        let mut sub = ChaCha8Rng::seed_from_u64(rng.gen());
        if let Some(x) = attempt(params, &mut sub) {
            return Ok(x);
        }
    }
    Err(GenError::Exhausted(MAX_RETRIES))
}

/// Every `(d + 1)`-subset of `vertices` whose `d`-faces all lie in `faces`.
fn candidates(vertices: usize, faces: &[Vec<usize>], d: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for mask in 0u64..1 << vertices {
        if mask.count_ones() as usize != d + 1 {
            continue;
        }
        let s: Vec<usize> = (0..vertices).filter(|v| mask >> v & 1 == 1).collect();
        let all_faces = (0..=d).all(|i| {
            let mut face = s.clone();
            face.remove(i);
            faces.contains(&face)
        });
        if all_faces {
            out.push(s);
        }
    }
    out
}

fn complex(bounds: &[usize], p: usize, rng: &mut impl Rng) -> TruncatedSimplicialSet {
    let vertices = rng.gen_range(1..=bounds[0]);
    let mut facets: Vec<Vec<usize>> = (0..vertices).map(|v| vec![v]).collect();
    let mut previous = facets.clone();
    for (d, &bound) in bounds.iter().enumerate().skip(1) {
        let mut pool = candidates(vertices, &previous, d);
        pool.shuffle(rng);
        let take = rng.gen_range(0..=bound.min(pool.len()));
        pool.truncate(take);
        pool.sort_unstable();
        facets.extend(pool.iter().cloned());
        previous = pool;
    }
    from_facets(&facets, p).set
}

/// An ordered simplicial complex truncated at `params.trunc_p` with at most
/// `simplex_bounds[d]` nondegenerate `d`-simplices.
pub fn gen_simplicial_set(params: &GenParams) -> Result<TruncatedSimplicialSet, GenError> {
    if params.simplex_bounds.first().is_none_or(|&b| b == 0) {
        return Err(GenParams::no_vertices());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    Ok(complex(&params.simplex_bounds, params.trunc_p, &mut rng))
}

/// Maps out of `x` for naturality checks: the collapse to a point, the
/// inclusion into `x ⊔ y` for a fresh `y`, and the constant map at a vertex.
pub fn gen_maps_from(
    x: &TruncatedSimplicialSet,
    params: &GenParams,
) -> Vec<(&'static str, TruncatedSimplicialSet, SimplicialMap)> {
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed ^ 0x6d61_7073);
    let p = x.truncation();
    let point = standard_simplex(0, p).set;
    let y = complex(&params.simplex_bounds, p, &mut rng);
    let sum = disjoint_union(&[x, &y]).expect("same truncation");
    let inclusion = SimplicialMap { maps: (0..=p).map(|n| (0..x.size(n)).collect()).collect() };
    let v = rng.gen_range(0..x.size(0));
    let mut constant = Vec::with_capacity(p + 1);
    let mut at = v;
    for n in 0..=p {
        constant.push(vec![at; x.size(n)]);
        if n < p {
            at = x.degen(n, 0, at);
        }
    }
    vec![
        ("collapse", point, SimplicialMap::terminal(x)),
        ("inclusion", sum, inclusion),
        ("constant", x.clone(), SimplicialMap { maps: constant }),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::homology;
    use crate::simp::{nondegenerate, validate_simplicial_set};

    #[test]
    fn circle_is_a_circle() {
        let s = circle(3);
        assert!(validate_simplicial_set(&s).is_empty());
        assert_eq!(s.sizes(), &[1, 2, 3, 4]);
        assert_eq!(nondegenerate(&s).iter().map(Vec::len).collect::<Vec<_>>(), vec![1, 1, 0, 0]);
        assert_eq!(homology(&s, 2).unwrap().betti(), vec![1, 1, 0]);
    }

    #[test]
    fn degenerate_bounds() {
        let params = GenParams { max_objects: 1, max_nondegenerate: 1, trunc_p: 1, ..GenParams::default() };
        for seed in 0..10 {
            assert_eq!(gen_simplicial_category(&params.with_seed(seed)).unwrap(), FiniteSimplicialCategory::terminal(1));
        }
        let params = GenParams { max_objects: 2, max_nondegenerate: 1, trunc_p: 1, ..GenParams::default() };
        let d2 = FiniteSimplicialCategory::preorder(2, 1, |a, b| a <= b);
        let discrete = FiniteSimplicialCategory::preorder(2, 1, |a, b| a == b);
        let shapes: Vec<_> = (0..40).map(|s| gen_simplicial_category(&params.with_seed(s)).unwrap()).collect();
        assert!(shapes.iter().all(|x| x.n_objects() == 1 || *x == d2 || *x == discrete));
        assert!(shapes.contains(&d2) && shapes.contains(&discrete));
    }

    #[test]
    fn seeded_generation_is_stable() {
        let params = GenParams { seed: 42, ..GenParams::default() };
        assert_eq!(gen_simplicial_category(&params).unwrap(), gen_simplicial_category(&params).unwrap());
        assert_eq!(gen_simplicial_set(&params).unwrap(), gen_simplicial_set(&params).unwrap());
    }

    #[test]
    fn set_bounds() {
        let point = GenParams { simplex_bounds: vec![1, 0, 0], ..GenParams::default() };
        assert_eq!(gen_simplicial_set(&point).unwrap(), standard_simplex(0, 2).set);
        let small = GenParams { simplex_bounds: vec![2, 1, 0], ..GenParams::default() };
        let pt = standard_simplex(0, 2).set;
        let two = disjoint_union(&[&pt, &pt]).unwrap();
        let interval = standard_simplex(1, 2).set;
        for seed in 0..20 {
            let x = gen_simplicial_set(&small.with_seed(seed)).unwrap();
            assert!(x == pt || x == two || x == interval);
        }
    }

    #[test]
    fn generated_maps_are_simplicial() {
        for seed in 0..10 {
            let params = GenParams { seed, ..GenParams::default() };
            let x = gen_simplicial_set(&params).unwrap();
            for (name, target, f) in gen_maps_from(&x, &params) {
                assert!(f.validate(&x, &target).is_empty(), "{name}");
            }
        }
    }

    #[test]
    fn rejects_empty_bounds() {
        assert!(gen_simplicial_category(&GenParams { max_objects: 0, ..GenParams::default() }).is_err());
        assert!(gen_simplicial_set(&GenParams { simplex_bounds: vec![], ..GenParams::default() }).is_err());
    }
}
