use crate::cat::{Arrow, FiniteCategory, MorId, ObjId, RelativeCategory};
use crate::simp::{OpId, OperatorTable};

use super::FiniteSimplicialCategory;

/// A morphism `(t, a): (p₁, A₁) → (p₂, A₂)` with `a ∈ hom(A₁, A₂)_{p₂}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize)]
pub struct GrothendieckMorphism {
    pub dom: ObjId,
    pub cod: ObjId,
    pub op: OpId,
    pub simplex: usize,
}

/// The Grothendieck construction `bA` truncated at `p ≤ P`. Object `(p, A)` has
/// id `p·n + A`; morphisms are ordered by domain, operator, codomain object
/// and simplex.
#[derive(Clone, Debug)]
pub struct GrothendieckCategory {
    pub category: FiniteCategory,
    pub ops: OperatorTable,
    n: usize,
    morphisms: Vec<GrothendieckMorphism>,
    /// First morphism `(t, ·)` from `dom` into the `A₂` component, keyed by
    /// `(dom · |ops| + t) · n + A₂`.
    lookup: Vec<usize>,
}

impl GrothendieckCategory {
    /// Number of objects of `A`.
    pub fn base_objects(&self) -> usize {
        self.n
    }

    pub fn truncation(&self) -> usize {
        self.ops.max_dim()
    }

    pub fn object(&self, o: ObjId) -> (usize, ObjId) {
        (o / self.n, o % self.n)
    }

    pub fn object_id(&self, p: usize, a: ObjId) -> ObjId {
        p * self.n + a
    }

    pub fn morphism(&self, m: MorId) -> GrothendieckMorphism {
        self.morphisms[m]
    }

    pub fn morphisms(&self) -> &[GrothendieckMorphism] {
        &self.morphisms
    }

    /// The morphism `(t, a)` out of `dom` into the `A₂` component.
    pub fn morphism_id(&self, dom: ObjId, op: OpId, a2: ObjId, simplex: usize) -> Option<MorId> {
        let start = *self.lookup.get((dom * self.ops.len() + op) * self.n + a2)?;
        let next = self.morphisms.get(start + simplex)?;
        (start != usize::MAX && next.dom == dom && next.op == op && next.cod % self.n == a2).then_some(start + simplex)
    }
}

/// `bA` with composition `(t′, a′)(t, a) = (t′t, a′ ∘ act(t′, a))`.
pub fn grothendieck(x: &FiniteSimplicialCategory, p_max: usize) -> GrothendieckCategory {
    assert!(p_max <= x.truncation(), "grothendieck truncation above the hom truncation");
    let n = x.n_objects();
    let ops = OperatorTable::new(p_max);
    let mut morphisms = Vec::new();
    let mut lookup = vec![usize::MAX; (p_max + 1) * n * ops.len() * n];
    for p1 in 0..=p_max {
        for a1 in 0..n {
            let dom = p1 * n + a1;
            for &t in ops.from(p1) {
                let p2 = ops.op(t).to_dim();
                for a2 in 0..n {
                    lookup[(dom * ops.len() + t) * n + a2] = morphisms.len();
                    let cod = p2 * n + a2;
                    morphisms.extend((0..x.hom(a1, a2).size(p2)).map(|simplex| GrothendieckMorphism { dom, cod, op: t, simplex }));
                }
            }
        }
    }
    let mut g = GrothendieckCategory { category: FiniteCategory::discrete(0), ops, n, morphisms, lookup };
    let identity: Vec<MorId> = (0..(p_max + 1) * n)
        .map(|o| {
            let (p, a) = g.object(o);
            g.morphism_id(o, g.ops.identity(p), a, x.unit(a, p)).expect("identity present")
        })
        .collect();
    let arrows = g.morphisms.iter().map(|m| Arrow { dom: m.dom, cod: m.cod }).collect();
    let category = FiniteCategory::from_fn((p_max + 1) * n, arrows, identity, |second, first| {
        let (f, h) = (g.morphisms[first], g.morphisms[second]);
        let (a1, a2, a3) = (f.dom % n, f.cod % n, h.cod % n);
        let p3 = h.cod / n;
        let moved = x.hom(a1, a2).act(g.ops.op(h.op), f.simplex).expect("operator within truncation");
        let simplex = x.compose(a1, a2, a3, p3, moved, h.simplex);
        let op = g.ops.compose(h.op, f.op).expect("composable operators");
        g.morphism_id(f.dom, op, a3, simplex).expect("composite present")
    })
    .expect("grothendieck tables are well shaped");
    g.category = category;
    g
}

/// `Rel A`: `bA` with the morphisms `(t, unit)` as weak equivalences.
#[derive(Clone, Debug)]
pub struct Rel {
    pub base: FiniteSimplicialCategory,
    pub groth: GrothendieckCategory,
    pub relative: RelativeCategory,
}

pub fn relativize(x: &FiniteSimplicialCategory, p_max: usize) -> Rel {
    let groth = grothendieck(x, p_max);
    let n = x.n_objects();
    let mask = groth
        .morphisms
        .iter()
        .map(|m| m.dom % n == m.cod % n && m.simplex == x.unit(m.dom % n, m.cod / n))
        .collect();
    let relative = RelativeCategory::from_mask(groth.category.clone(), mask);
    Rel { base: x.clone(), groth, relative }
}
