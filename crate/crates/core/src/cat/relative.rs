use thiserror::Error;

use super::{check_natural_transformation, FiniteCategory, Functor, MorId, NaturalTransformation};
use crate::report::ValidationReport;

/// A category together with a wide subcategory of weak equivalences.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelativeCategory {
    pub underlying: FiniteCategory,
    weq: Vec<bool>,
}

impl RelativeCategory {
    pub fn new(underlying: FiniteCategory, weq: impl IntoIterator<Item = MorId>) -> Self {
        let mut mask = vec![false; underlying.n_morphisms()];
        for m in weq {
            mask[m] = true;
        }
        Self { underlying, weq: mask }
    }

    pub fn from_mask(underlying: FiniteCategory, weq: Vec<bool>) -> Self {
        assert_eq!(weq.len(), underlying.n_morphisms(), "weq mask length");
        Self { underlying, weq }
    }

    /// Minimal relative structure: only identities are weak equivalences.
    pub fn minimal(underlying: FiniteCategory) -> Self {
        let ids = underlying.identities().to_vec();
        Self::new(underlying, ids)
    }

    /// Maximal relative structure: every morphism is a weak equivalence.
    pub fn maximal(underlying: FiniteCategory) -> Self {
        let n = underlying.n_morphisms();
        Self::new(underlying, 0..n)
    }

    /// `0 → ⋯ → p` with only identities as weak equivalences.
    pub fn hat(p: usize) -> Self {
        Self::minimal(FiniteCategory::linear_order(p))
    }

    /// `0 → ⋯ → q` with every map a weak equivalence.
    pub fn check(q: usize) -> Self {
        Self::maximal(FiniteCategory::linear_order(q))
    }

    pub fn is_weq(&self, m: MorId) -> bool {
        self.weq[m]
    }

    pub fn weq_mask(&self) -> &[bool] {
        &self.weq
    }

    pub fn weq_ids(&self) -> Vec<MorId> {
        (0..self.weq.len()).filter(|&m| self.weq[m]).collect()
    }

    pub fn n_weq(&self) -> usize {
        self.weq.iter().filter(|&&w| w).count()
    }

    /// Product relative structure: a pair is a weak equivalence iff both coordinates are.
    pub fn product(&self, other: &RelativeCategory) -> RelativeCategory {
        let underlying = self.underlying.product(&other.underlying);
        let m2 = other.underlying.n_morphisms();
        let weq = (0..underlying.n_morphisms()).map(|m| self.weq[m / m2] && other.weq[m % m2]).collect();
        RelativeCategory { underlying, weq }
    }
}

/// Reports identities missing from the weak equivalences and composites escaping them.
pub fn validate_relative_category(x: &RelativeCategory) -> ValidationReport {
    let c = &x.underlying;
    let mut report = ValidationReport::new();
    for obj in 0..c.n_objects() {
        if !x.weq[c.identity(obj)] {
            report.push("identity", format!("id_{obj} (morphism {}) missing from weq", c.identity(obj)));
        }
    }
    for (g, f, gf) in c.composable_pairs() {
        if x.weq[g] && x.weq[f] {
            if let Some(gf) = gf {
                if !x.weq[gf] {
                    report.push("closure", format!("{g}∘{f} = {gf} is not a weak equivalence"));
                }
            }
        }
    }
    report
}

/// Whether `f` sends weak equivalences of `x` into those of `y`.
pub fn is_relative_functor(f: &Functor, x: &RelativeCategory, y: &RelativeCategory) -> bool {
    (0..x.underlying.n_morphisms()).all(|m| !x.weq[m] || y.weq[f.mor(m)])
}

/// Two-out-of-three: for every composable pair, two of `f`, `g`, `g∘f` in weq force the third.
pub fn two_of_three_check(x: &RelativeCategory) -> bool {
    x.underlying.composable_pairs().all(|(g, f, gf)| {
        let gf = gf.expect("complete composition table");
        let count = [f, g, gf].iter().filter(|&&m| x.weq[m]).count();
        count != 2
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Direction {
    /// The transformation runs from the current functor to the next one.
    Forward,
    /// The transformation runs from the next functor back to the current one.
    Backward,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZigzagStep {
    pub direction: Direction,
    /// Source functor of the transformation.
    pub source: Functor,
    /// Target functor of the transformation.
    pub target: Functor,
    pub transformation: NaturalTransformation,
}

/// A finite zigzag of natural weak equivalences; the empty zigzag connects a functor to itself.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ZigzagWitness {
    pub steps: Vec<ZigzagStep>,
}

impl ZigzagWitness {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn single(direction: Direction, source: Functor, target: Functor, components: Vec<MorId>) -> Self {
        Self {
            steps: vec![ZigzagStep {
                direction,
                source,
                target,
                transformation: NaturalTransformation { components },
            }],
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WitnessError {
    #[error("functor {which} is not a relative functor")]
    NotRelative { which: &'static str },
    #[error("functor {which} is not a valid functor: {detail}")]
    InvalidFunctor { which: &'static str, detail: String },
    #[error("zigzag {zigzag}: chain breaks at step {step}")]
    EndpointMismatch { zigzag: &'static str, step: usize },
    #[error("zigzag {zigzag}: intermediate functor at step {step} is not relative")]
    IntermediateNotRelative { zigzag: &'static str, step: usize },
    #[error("zigzag {zigzag}: step {step} is not natural: {detail}")]
    NotNatural { zigzag: &'static str, step: usize, detail: String },
    #[error("zigzag {zigzag}: component of step {step} at object {object} is not a weak equivalence")]
    ComponentNotWeq { zigzag: &'static str, step: usize, object: usize },
}

fn check_zigzag(
    name: &'static str,
    x: &RelativeCategory,
    start: &Functor,
    end: &Functor,
    w: &ZigzagWitness,
) -> Result<(), WitnessError> {
    let c = &x.underlying;
    let mut current = start;
    for (i, step) in w.steps.iter().enumerate() {
        let (here, next) = match step.direction {
            Direction::Forward => (&step.source, &step.target),
            Direction::Backward => (&step.target, &step.source),
        };
        if here != current {
            return Err(WitnessError::EndpointMismatch { zigzag: name, step: i });
        }
        for f in [&step.source, &step.target] {
            let report = f.validate(c, c);
            if !report.is_empty() {
                return Err(WitnessError::NotNatural { zigzag: name, step: i, detail: report.to_string() });
            }
            if !is_relative_functor(f, x, x) {
                return Err(WitnessError::IntermediateNotRelative { zigzag: name, step: i });
            }
        }
        let report = check_natural_transformation(c, c, &step.source, &step.target, &step.transformation);
        if !report.is_empty() {
            return Err(WitnessError::NotNatural { zigzag: name, step: i, detail: report.to_string() });
        }
        if let Some(object) = step.transformation.components.iter().position(|&m| !x.is_weq(m)) {
            return Err(WitnessError::ComponentNotWeq { zigzag: name, step: i, object });
        }
        current = next;
    }
    if current != end {
        return Err(WitnessError::EndpointMismatch { zigzag: name, step: w.steps.len() });
    }
    Ok(())
}

/// Verifies that `g` is a homotopy inverse of `f`: `w1` connects `g∘f` to `id_X`
/// and `w2` connects `f∘g` to `id_Y` through natural weak equivalences.
pub fn check_homotopy_equivalence_witness(
    f: &Functor,
    g: &Functor,
    w1: &ZigzagWitness,
    w2: &ZigzagWitness,
    x: &RelativeCategory,
    y: &RelativeCategory,
) -> Result<(), WitnessError> {
    for (which, func, src, tgt) in [("f", f, x, y), ("g", g, y, x)] {
        let report = func.validate(&src.underlying, &tgt.underlying);
        if !report.is_empty() {
            return Err(WitnessError::InvalidFunctor { which, detail: report.to_string() });
        }
        if !is_relative_functor(func, src, tgt) {
            return Err(WitnessError::NotRelative { which });
        }
    }
    let gf = f.then(g);
    let fg = g.then(f);
    check_zigzag("w1", x, &gf, &Functor::identity(&x.underlying), w1)?;
    check_zigzag("w2", y, &fg, &Functor::identity(&y.underlying), w2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cat::{validate_category, Arrow};

    #[test]
    fn hat_and_check_counts() {
        let h0 = RelativeCategory::hat(0);
        assert_eq!((h0.underlying.n_objects(), h0.underlying.n_morphisms(), h0.n_weq()), (1, 1, 1));
        assert_eq!(RelativeCategory::check(0), h0);
        let h1 = RelativeCategory::hat(1);
        assert_eq!((h1.underlying.n_objects(), h1.underlying.n_morphisms(), h1.n_weq()), (2, 3, 2));
        // monotone pairs i ≤ j in {0,1,2}
        let pairs = (0..3).flat_map(|i| (i..3).map(move |j| (i, j))).count();
        let h2 = RelativeCategory::hat(2);
        assert_eq!((h2.underlying.n_morphisms(), h2.n_weq()), (pairs, 3));
        let c1 = RelativeCategory::check(1);
        assert_eq!((c1.underlying.n_morphisms(), c1.n_weq()), (3, 3));
        let c2 = RelativeCategory::check(2);
        assert_eq!((c2.underlying.n_morphisms(), c2.n_weq()), (pairs, pairs));
        assert_eq!(c2.underlying, h2.underlying);
    }

    #[test]
    fn relative_category_validation() {
        assert!(validate_relative_category(&RelativeCategory::hat(1)).is_empty());
        let only_id0 = RelativeCategory::new(FiniteCategory::linear_order(1), [0]);
        let report = validate_relative_category(&only_id0);
        assert!(report.has("identity"));
        assert!(report.violations()[0].detail.contains("id_1"));
        // check(2) minus the composite 0→2 (morphism 2): compose(1→2, 0→1) escapes.
        let c = FiniteCategory::linear_order(2);
        let weq = (0..6).filter(|&m| m != 2);
        let report = validate_relative_category(&RelativeCategory::new(c, weq));
        assert!(report.has("closure"));
        assert!(!report.has("identity"));
    }

    #[test]
    fn relative_functor_examples() {
        let h1 = RelativeCategory::hat(1);
        let c1 = RelativeCategory::check(1);
        let id = Functor::identity(&h1.underlying);
        assert!(is_relative_functor(&id, &h1, &h1));
        assert!(is_relative_functor(&id, &h1, &c1));
        assert!(!is_relative_functor(&id, &c1, &h1));
        let c2 = RelativeCategory::check(2);
        let h2 = RelativeCategory::hat(2);
        let k = Functor::constant(&c2.underlying, &h2.underlying, 0);
        assert!(is_relative_functor(&k, &c2, &h2));
    }

    fn retraction_pair() -> RelativeCategory {
        // objects A=0, B=1; 0 id_A, 1 id_B, 2 s: A→B, 3 r: B→A, 4 e = s∘r
        let arrows = vec![
            Arrow { dom: 0, cod: 0 },
            Arrow { dom: 1, cod: 1 },
            Arrow { dom: 0, cod: 1 },
            Arrow { dom: 1, cod: 0 },
            Arrow { dom: 1, cod: 1 },
        ];
        let mult = |g: usize, f: usize| match (g, f) {
            (g, 0) | (g, 1) => g,
            (0, f) | (1, f) => f,
            (3, 2) => 0,
            (2, 3) => 4,
            (4, 2) => 2,
            (3, 4) => 3,
            (4, 4) => 4,
            _ => unreachable!("({g}, {f}) not composable"),
        };
        let c = FiniteCategory::from_fn(2, arrows, vec![0, 1], mult).unwrap();
        assert!(validate_category(&c).is_empty());
        RelativeCategory::new(c, [0, 1, 2, 4])
    }

    #[test]
    fn two_of_three_examples() {
        for q in 0..=4 {
            assert!(two_of_three_check(&RelativeCategory::check(q)));
        }
        assert!(two_of_three_check(&RelativeCategory::hat(1)));
        let x = retraction_pair();
        assert!(validate_relative_category(&x).is_empty());
        assert!(!two_of_three_check(&x));
    }

    #[test]
    fn homotopy_equivalence_witnesses() {
        let h1 = RelativeCategory::hat(1);
        let id = Functor::identity(&h1.underlying);
        let empty = ZigzagWitness::empty();
        assert_eq!(check_homotopy_equivalence_witness(&id, &id, &empty, &empty, &h1, &h1), Ok(()));

        let point = RelativeCategory::hat(0);
        for (x, expect_ok) in [(RelativeCategory::hat(1), false), (RelativeCategory::check(1), true)] {
            let f = Functor::constant(&x.underlying, &point.underlying, 0);
            let g = Functor::constant(&point.underlying, &x.underlying, 0);
            let gf = f.then(&g);
            let w1 = ZigzagWitness::single(Direction::Forward, gf, Functor::identity(&x.underlying), vec![0, 1]);
            let result = check_homotopy_equivalence_witness(&f, &g, &w1, &empty, &x, &point);
            assert_eq!(result.is_ok(), expect_ok, "{result:?}");
            if !expect_ok {
                assert!(matches!(result, Err(WitnessError::ComponentNotWeq { object: 1, .. })));
            }
        }
    }

    #[test]
    fn endpoint_mismatch_is_distinct_from_naturality() {
        let x = RelativeCategory::check(1);
        let point = RelativeCategory::hat(0);
        let f = Functor::constant(&x.underlying, &point.underlying, 0);
        let g = Functor::constant(&point.underlying, &x.underlying, 0);
        let id = Functor::identity(&x.underlying);
        // wrong orientation: claims a transformation out of the identity
        let w1 = ZigzagWitness::single(Direction::Forward, id.clone(), f.then(&g), vec![0, 1]);
        let r = check_homotopy_equivalence_witness(&f, &g, &w1, &ZigzagWitness::empty(), &x, &point);
        assert_eq!(r, Err(WitnessError::EndpointMismatch { zigzag: "w1", step: 0 }));
        // right endpoints, backwards direction, non-natural components
        let w1 = ZigzagWitness::single(Direction::Backward, id, f.then(&g), vec![0, 1]);
        let r = check_homotopy_equivalence_witness(&f, &g, &w1, &ZigzagWitness::empty(), &x, &point);
        assert!(matches!(r, Err(WitnessError::NotNatural { .. })), "{r:?}");
    }
}
