//! Finite categories stored as explicit composition tables.
//!
//! Objects and morphisms carry dense ids. Composition is a lookup into a table
//! laid out per morphism `f`, with one slot for every `g` leaving `cod(f)`, so
//! `compose(g, f)` is O(1) and the table holds exactly the composable pairs.

mod equivalence;
mod relative;

pub use equivalence::{
    enumerate_functors, equivalence_of_categories_search, EquivalenceSearch, EquivalenceWitness,
    SearchBudget,
};
pub use relative::{
    check_homotopy_equivalence_witness, is_relative_functor, two_of_three_check,
    validate_relative_category, Direction, RelativeCategory, WitnessError, ZigzagStep,
    ZigzagWitness,
};

use thiserror::Error;

use crate::report::ValidationReport;

pub type ObjId = usize;
pub type MorId = usize;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CatError {
    #[error("object id {0} out of range")]
    ObjectOutOfRange(usize),
    #[error("morphism id {0} out of range")]
    MorphismOutOfRange(usize),
    #[error("identity list has {got} entries for {expected} objects")]
    IdentityCount { expected: usize, got: usize },
    #[error("composition entry ({g}, {f}) is not a composable pair")]
    NotComposable { g: MorId, f: MorId },
    #[error("conflicting composition entries for ({g}, {f})")]
    ConflictingEntry { g: MorId, f: MorId },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Arrow {
    pub dom: ObjId,
    pub cod: ObjId,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteCategory {
    n_objects: usize,
    arrows: Vec<Arrow>,
    identity: Vec<MorId>,
    /// Outgoing morphisms per object, ascending.
    out: Vec<Vec<MorId>>,
    /// Incoming morphisms per object, ascending.
    incoming: Vec<Vec<MorId>>,
    /// Position of each morphism inside `out[dom]`.
    out_pos: Vec<usize>,
    /// Hom sets keyed by `a * n_objects + b`.
    hom: Vec<Vec<MorId>>,
    comp_offset: Vec<usize>,
    comp: Vec<Option<MorId>>,
}

impl FiniteCategory {
    /// Builds a category from raw tables. Only ids and composability of the
    /// given entries are checked; the category laws are left to
    /// [`validate_category`].
    pub fn from_table(
        n_objects: usize,
        arrows: Vec<Arrow>,
        identity: Vec<MorId>,
        table: impl IntoIterator<Item = (MorId, MorId, MorId)>,
    ) -> Result<Self, CatError> {
        let mut cat = Self::skeleton(n_objects, arrows, identity)?;
        for (g, f, gf) in table {
            let slot = cat.slot(g, f).ok_or(CatError::NotComposable { g, f })?;
            if gf >= cat.arrows.len() {
                return Err(CatError::MorphismOutOfRange(gf));
            }
            match cat.comp[slot] {
                Some(prev) if prev != gf => return Err(CatError::ConflictingEntry { g, f }),
                _ => cat.comp[slot] = Some(gf),
            }
        }
        Ok(cat)
    }

    /// Builds a category whose composite of every composable pair is given by `compose(g, f)`.
    pub fn from_fn(
        n_objects: usize,
        arrows: Vec<Arrow>,
        identity: Vec<MorId>,
        mut compose: impl FnMut(MorId, MorId) -> MorId,
    ) -> Result<Self, CatError> {
        let mut cat = Self::skeleton(n_objects, arrows, identity)?;
        for f in 0..cat.arrows.len() {
            let mid = cat.arrows[f].cod;
            for (k, &g) in cat.out[mid].iter().enumerate() {
                let gf = compose(g, f);
                if gf >= cat.arrows.len() {
                    return Err(CatError::MorphismOutOfRange(gf));
                }
                cat.comp[cat.comp_offset[f] + k] = Some(gf);
            }
        }
        Ok(cat)
    }

    fn skeleton(n_objects: usize, arrows: Vec<Arrow>, identity: Vec<MorId>) -> Result<Self, CatError> {
        if identity.len() != n_objects {
            return Err(CatError::IdentityCount { expected: n_objects, got: identity.len() });
        }
        let mut out = vec![Vec::new(); n_objects];
        let mut incoming = vec![Vec::new(); n_objects];
        let mut hom = vec![Vec::new(); n_objects * n_objects];
        let mut out_pos = Vec::with_capacity(arrows.len());
        for (m, a) in arrows.iter().enumerate() {
            if a.dom >= n_objects {
                return Err(CatError::ObjectOutOfRange(a.dom));
            }
            if a.cod >= n_objects {
                return Err(CatError::ObjectOutOfRange(a.cod));
            }
            out_pos.push(out[a.dom].len());
            out[a.dom].push(m);
            incoming[a.cod].push(m);
            hom[a.dom * n_objects + a.cod].push(m);
        }
        if let Some(&bad) = identity.iter().find(|&&m| m >= arrows.len()) {
            return Err(CatError::MorphismOutOfRange(bad));
        }
        let mut comp_offset = Vec::with_capacity(arrows.len());
        let mut total = 0;
        for a in &arrows {
            comp_offset.push(total);
            total += out[a.cod].len();
        }
        Ok(Self {
            n_objects,
            arrows,
            identity,
            out,
            incoming,
            out_pos,
            hom,
            comp_offset,
            comp: vec![None; total],
        })
    }

    fn slot(&self, g: MorId, f: MorId) -> Option<usize> {
        let (ag, af) = (self.arrows.get(g)?, self.arrows.get(f)?);
        (ag.dom == af.cod).then(|| self.comp_offset[f] + self.out_pos[g])
    }

    pub fn n_objects(&self) -> usize {
        self.n_objects
    }

    pub fn n_morphisms(&self) -> usize {
        self.arrows.len()
    }

    /// Number of composable pairs (the size of the composition table).
    pub fn n_composable_pairs(&self) -> usize {
        self.comp.len()
    }

    pub fn arrow(&self, m: MorId) -> Arrow {
        self.arrows[m]
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn dom(&self, m: MorId) -> ObjId {
        self.arrows[m].dom
    }

    pub fn cod(&self, m: MorId) -> ObjId {
        self.arrows[m].cod
    }

    pub fn identity(&self, x: ObjId) -> MorId {
        self.identity[x]
    }

    pub fn identities(&self) -> &[MorId] {
        &self.identity
    }

    pub fn is_identity(&self, m: MorId) -> bool {
        let a = self.arrows[m];
        a.dom == a.cod && self.identity[a.dom] == m
    }

    pub fn hom(&self, a: ObjId, b: ObjId) -> &[MorId] {
        &self.hom[a * self.n_objects + b]
    }

    pub fn out_of(&self, a: ObjId) -> &[MorId] {
        &self.out[a]
    }

    /// Position of `m` inside [`out_of`](Self::out_of)`(dom m)`.
    pub fn out_position(&self, m: MorId) -> usize {
        self.out_pos[m]
    }

    pub fn incoming(&self, b: ObjId) -> &[MorId] {
        &self.incoming[b]
    }

    /// `g ∘ f`, or `None` when the pair is not composable or the table has no entry.
    pub fn compose(&self, g: MorId, f: MorId) -> Option<MorId> {
        self.slot(g, f).and_then(|s| self.comp[s])
    }

    /// `g ∘ f` for a pair known to be composable in a complete table.
    pub fn comp(&self, g: MorId, f: MorId) -> MorId {
        self.compose(g, f)
            .unwrap_or_else(|| panic!("no composite for ({g}, {f})"))
    }

    /// Iterates every composable pair as `(g, f, g∘f)`; the composite is
    /// `None` where the table is incomplete.
    pub fn composable_pairs(&self) -> impl Iterator<Item = (MorId, MorId, Option<MorId>)> + '_ {
        (0..self.arrows.len()).flat_map(move |f| {
            let off = self.comp_offset[f];
            self.out[self.arrows[f].cod]
                .iter()
                .enumerate()
                .map(move |(k, &g)| (g, f, self.comp[off + k]))
        })
    }

    /// Morphism ids sharing the endpoints of `m` with a two-sided inverse.
    pub fn inverse(&self, m: MorId) -> Option<MorId> {
        let a = self.arrows[m];
        self.hom(a.cod, a.dom).iter().copied().find(|&n| {
            self.compose(n, m) == Some(self.identity[a.dom])
                && self.compose(m, n) == Some(self.identity[a.cod])
        })
    }

    pub fn is_isomorphism(&self, m: MorId) -> bool {
        self.inverse(m).is_some()
    }

    /// The same category with every arrow reversed.
    pub fn opposite(&self) -> FiniteCategory {
        let arrows = self.arrows.iter().map(|a| Arrow { dom: a.cod, cod: a.dom }).collect();
        FiniteCategory::from_fn(self.n_objects, arrows, self.identity.clone(), |g, f| self.comp(f, g))
            .expect("opposite of a well-formed table is well formed")
    }

    /// Cartesian product: object `(c, d)` has id `c * |D| + d`, morphism `(f, g)` has id `f * |mor D| + g`.
    pub fn product(&self, other: &FiniteCategory) -> FiniteCategory {
        let (n2, m2) = (other.n_objects, other.arrows.len());
        let mut arrows = Vec::with_capacity(self.arrows.len() * m2);
        for a in &self.arrows {
            for b in &other.arrows {
                arrows.push(Arrow { dom: a.dom * n2 + b.dom, cod: a.cod * n2 + b.cod });
            }
        }
        let mut identity = Vec::with_capacity(self.n_objects * n2);
        for x in 0..self.n_objects {
            for y in 0..n2 {
                identity.push(self.identity[x] * m2 + other.identity[y]);
            }
        }
        FiniteCategory::from_fn(self.n_objects * n2, arrows, identity, |g, f| {
            self.comp(g / m2, f / m2) * m2 + other.comp(g % m2, f % m2)
        })
        .expect("product of well-formed tables is well formed")
    }

    /// The linear order `0 → 1 → ⋯ → p`; morphism `i ≤ j` enumerated lexicographically.
    pub fn linear_order(p: usize) -> FiniteCategory {
        let mut arrows = Vec::new();
        let mut id_of = vec![vec![usize::MAX; p + 1]; p + 1];
        for i in 0..=p {
            for j in i..=p {
                id_of[i][j] = arrows.len();
                arrows.push(Arrow { dom: i, cod: j });
            }
        }
        let identity = (0..=p).map(|i| id_of[i][i]).collect();
        let snapshot = arrows.clone();
        FiniteCategory::from_fn(p + 1, arrows, identity, |g, f| id_of[snapshot[f].dom][snapshot[g].cod])
            .expect("linear order is well formed")
    }

    /// One object, `n` morphisms, composition given by `mult(g, f)`; morphism 0 is the identity.
    pub fn monoid(n: usize, mult: impl Fn(usize, usize) -> usize) -> Result<FiniteCategory, CatError> {
        let arrows = vec![Arrow { dom: 0, cod: 0 }; n];
        FiniteCategory::from_fn(1, arrows, vec![0], mult)
    }

    /// Category with the given objects and only identity morphisms.
    pub fn discrete(n: usize) -> FiniteCategory {
        let arrows = (0..n).map(|x| Arrow { dom: x, cod: x }).collect();
        FiniteCategory::from_fn(n, arrows, (0..n).collect(), |g, _| g).expect("discrete category")
    }

    /// Category with exactly one morphism between any two objects.
    pub fn chaotic(n: usize) -> FiniteCategory {
        let mut arrows = Vec::new();
        for a in 0..n {
            for b in 0..n {
                arrows.push(Arrow { dom: a, cod: b });
            }
        }
        let identity = (0..n).map(|x| x * n + x).collect();
        let snapshot = arrows.clone();
        FiniteCategory::from_fn(n, arrows, identity, |g, f| snapshot[f].dom * n + snapshot[g].cod)
            .expect("chaotic category")
    }
}

/// Lists every violated unit, associativity and dom/cod coherence instance.
pub fn validate_category(c: &FiniteCategory) -> ValidationReport {
    let mut report = ValidationReport::new();
    for (x, &id) in c.identity.iter().enumerate() {
        let a = c.arrows[id];
        if a.dom != x || a.cod != x {
            report.push("identity", format!("identity {id} of object {x} is {}→{}", a.dom, a.cod));
        }
    }
    if !report.is_empty() {
        return report;
    }
    for f in 0..c.arrows.len() {
        let a = c.arrows[f];
        if c.compose(f, c.identity[a.dom]) != Some(f) {
            report.push("unit", format!("right unit law fails at {f}: f∘id_{} ≠ f", a.dom));
        }
        if c.compose(c.identity[a.cod], f) != Some(f) {
            report.push("unit", format!("left unit law fails at {f}: id_{}∘f ≠ f", a.cod));
        }
    }
    for (g, f, gf) in c.composable_pairs() {
        match gf {
            None => report.push("missing", format!("no composite for ({g}, {f})")),
            Some(gf) => {
                let (ag, af, agf) = (c.arrows[g], c.arrows[f], c.arrows[gf]);
                if agf.dom != af.dom || agf.cod != ag.cod {
                    report.push(
                        "coherence",
                        format!("{g}∘{f} = {gf} has endpoints {}→{}, expected {}→{}", agf.dom, agf.cod, af.dom, ag.cod),
                    );
                }
            }
        }
    }
    if !report.is_empty() {
        return report;
    }
    for (g, f, gf) in c.composable_pairs() {
        let gf = gf.expect("checked above");
        for &h in c.out_of(c.arrows[g].cod) {
            let left = c.compose(h, gf);
            let right = c.compose(h, g).and_then(|hg| c.compose(hg, f));
            if left != right {
                report.push("associativity", format!("{h}∘({g}∘{f}) ≠ ({h}∘{g})∘{f}"));
            }
        }
    }
    report
}

/// A functor between finite categories, stored as its object and morphism maps.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Functor {
    pub objects: Vec<ObjId>,
    pub morphisms: Vec<MorId>,
}

impl Functor {
    pub fn identity(c: &FiniteCategory) -> Self {
        Self { objects: (0..c.n_objects()).collect(), morphisms: (0..c.n_morphisms()).collect() }
    }

    /// Constant functor at `obj`.
    pub fn constant(src: &FiniteCategory, tgt: &FiniteCategory, obj: ObjId) -> Self {
        Self {
            objects: vec![obj; src.n_objects()],
            morphisms: vec![tgt.identity(obj); src.n_morphisms()],
        }
    }

    pub fn obj(&self, x: ObjId) -> ObjId {
        self.objects[x]
    }

    pub fn mor(&self, m: MorId) -> MorId {
        self.morphisms[m]
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &Functor) -> Functor {
        Functor {
            objects: self.objects.iter().map(|&x| next.objects[x]).collect(),
            morphisms: self.morphisms.iter().map(|&m| next.morphisms[m]).collect(),
        }
    }

    /// Checks that the maps preserve endpoints, identities and composition.
    pub fn validate(&self, src: &FiniteCategory, tgt: &FiniteCategory) -> ValidationReport {
        let mut report = ValidationReport::new();
        if self.objects.len() != src.n_objects() || self.morphisms.len() != src.n_morphisms() {
            report.push("shape", "functor maps do not match the source category");
            return report;
        }
        if let Some(&x) = self.objects.iter().find(|&&x| x >= tgt.n_objects()) {
            report.push("shape", format!("object image {x} out of range"));
            return report;
        }
        if let Some(&m) = self.morphisms.iter().find(|&&m| m >= tgt.n_morphisms()) {
            report.push("shape", format!("morphism image {m} out of range"));
            return report;
        }
        for (m, a) in src.arrows().iter().enumerate() {
            let b = tgt.arrow(self.morphisms[m]);
            if b.dom != self.objects[a.dom] || b.cod != self.objects[a.cod] {
                report.push("endpoints", format!("F({m}) does not run F({})→F({})", a.dom, a.cod));
            }
        }
        for x in 0..src.n_objects() {
            if self.morphisms[src.identity(x)] != tgt.identity(self.objects[x]) {
                report.push("identity", format!("F(id_{x}) is not an identity"));
            }
        }
        if !report.is_empty() {
            return report;
        }
        for (g, f, gf) in src.composable_pairs() {
            let Some(gf) = gf else { continue };
            if tgt.compose(self.morphisms[g], self.morphisms[f]) != Some(self.morphisms[gf]) {
                report.push("composition", format!("F({g}∘{f}) ≠ F({g})∘F({f})"));
            }
        }
        report
    }

    /// Bijective on objects and on morphisms.
    pub fn is_isomorphism(&self, src: &FiniteCategory, tgt: &FiniteCategory) -> bool {
        fn bijective(map: &[usize], size: usize) -> bool {
            let mut seen = vec![false; size];
            map.len() == size && map.iter().all(|&y| y < size && !std::mem::replace(&mut seen[y], true))
        }
        bijective(&self.objects, tgt.n_objects()) && bijective(&self.morphisms, tgt.n_morphisms())
            && src.n_objects() == tgt.n_objects()
    }

    /// Full and faithful: bijective on every hom set.
    pub fn is_fully_faithful(&self, src: &FiniteCategory, tgt: &FiniteCategory) -> bool {
        for a in 0..src.n_objects() {
            for b in 0..src.n_objects() {
                let target = tgt.hom(self.objects[a], self.objects[b]);
                let mut images: Vec<MorId> = src.hom(a, b).iter().map(|&m| self.morphisms[m]).collect();
                images.sort_unstable();
                images.dedup();
                if images.len() != src.hom(a, b).len() || images.len() != target.len() {
                    return false;
                }
            }
        }
        true
    }

    /// Every target object is isomorphic to an object in the image.
    pub fn is_essentially_surjective(&self, tgt: &FiniteCategory) -> bool {
        (0..tgt.n_objects()).all(|y| {
            self.objects.iter().any(|&fx| fx == y || tgt.hom(fx, y).iter().any(|&m| tgt.is_isomorphism(m)))
        })
    }
}

/// A natural transformation given by its components, indexed by source object.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NaturalTransformation {
    pub components: Vec<MorId>,
}

impl NaturalTransformation {
    pub fn identity(f: &Functor, tgt: &FiniteCategory) -> Self {
        Self { components: f.objects.iter().map(|&x| tgt.identity(x)).collect() }
    }
}

/// Lists every component with wrong endpoints and every non-commuting naturality square of `eta: from ⇒ to`.
pub fn check_natural_transformation(
    src: &FiniteCategory,
    tgt: &FiniteCategory,
    from: &Functor,
    to: &Functor,
    eta: &NaturalTransformation,
) -> ValidationReport {
    let mut report = ValidationReport::new();
    if eta.components.len() != src.n_objects() {
        report.push("shape", "component count differs from the number of source objects");
        return report;
    }
    for (x, &c) in eta.components.iter().enumerate() {
        if c >= tgt.n_morphisms() {
            report.push("shape", format!("component at {x} out of range"));
            continue;
        }
        let a = tgt.arrow(c);
        if a.dom != from.obj(x) || a.cod != to.obj(x) {
            report.push(
                "endpoints",
                format!("component at {x} runs {}→{}, expected {}→{}", a.dom, a.cod, from.obj(x), to.obj(x)),
            );
        }
    }
    if !report.is_empty() {
        return report;
    }
    for (m, a) in src.arrows().iter().enumerate() {
        let left = tgt.compose(eta.components[a.cod], from.mor(m));
        let right = tgt.compose(to.mor(m), eta.components[a.dom]);
        if left.is_none() || left != right {
            report.push("naturality", format!("square at morphism {m} ({}→{}) does not commute", a.dom, a.cod));
        }
    }
    report
}
