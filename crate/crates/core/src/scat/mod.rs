//! Finite simplicial categories and the constructions built from them: the
//! homotopy category, the flipped nerve `Z`, the Grothendieck construction and
//! its relativization, and the diagrams `Y`/`Ȳ` with their comparison maps.

mod flipped;
mod grothendieck;
mod levels;

pub use flipped::{flipped_nerve, FlippedNerve, ZLabel};
pub use grothendieck::{grothendieck, relativize, GrothendieckCategory, GrothendieckMorphism, Rel};
pub use levels::{
    iso_nrel_ny, iso_ybar_gamma_z, ladder_diagram, retraction, retraction_sweep, y_diagram, y_level, ybar_diagram,
    ybar_level, IsoReport, LadderCategory, Retraction, RetractionSweep, YLevel, YbarLevel,
};

use crate::cat::{
    equivalence_of_categories_search, Arrow, EquivalenceSearch, FiniteCategory, Functor, MorId, ObjId, SearchBudget,
};
use crate::homology::{cone_probe, pi0, pi0_bijective, Components, HomologyError};
use crate::report::{ValidationReport, Verdict};
use crate::simp::{standard_simplex, validate_simplicial_set, SimplicialMap, SimplicialOperator, TruncatedSimplicialSet};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ScatError {
    #[error("malformed simplicial category: {0}")]
    Shape(String),
    #[error("composition is not well defined on components: {0}")]
    ComponentsNotWellDefined(String),
    #[error(transparent)]
    Homology(#[from] HomologyError),
}

/// A category enriched in truncated simplicial sets.
///
/// `comp[(a·n + b)·n + c][p][f · |hom(b,c)_p| + g]` is `g ∘ f` for
/// `f ∈ hom(a,b)_p`, `g ∈ hom(b,c)_p`. Units are vertices of `hom(a,a)_0`;
/// the unit at dimension `p` is its `p`-fold degeneracy.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteSimplicialCategory {
    n_objects: usize,
    truncation: usize,
    homs: Vec<TruncatedSimplicialSet>,
    comp: Vec<Vec<Vec<usize>>>,
    units: Vec<usize>,
    unit_at: Vec<Vec<usize>>,
}

impl FiniteSimplicialCategory {
    pub fn new(
        n_objects: usize,
        homs: Vec<TruncatedSimplicialSet>,
        comp: Vec<Vec<Vec<usize>>>,
        units: Vec<usize>,
    ) -> Result<Self, ScatError> {
        let n = n_objects;
        if n == 0 {
            return Err(ScatError::Shape("no objects".into()));
        }
        if homs.len() != n * n || comp.len() != n * n * n || units.len() != n {
            return Err(ScatError::Shape("table counts".into()));
        }
        let truncation = homs[0].truncation();
        if homs.iter().any(|h| h.truncation() != truncation) {
            return Err(ScatError::Shape("hom truncations differ".into()));
        }
        for (a, &u) in units.iter().enumerate() {
            if u >= homs[a * n + a].size(0) {
                return Err(ScatError::Shape(format!("unit of object {a} out of range")));
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let t = &comp[(a * n + b) * n + c];
                    if t.len() != truncation + 1 {
                        return Err(ScatError::Shape(format!("composition ({a},{b},{c}) dimensions")));
                    }
                    for (p, tp) in t.iter().enumerate() {
                        let (h1, h2, h3) = (&homs[a * n + b], &homs[b * n + c], &homs[a * n + c]);
                        if tp.len() != h1.size(p) * h2.size(p) || tp.iter().any(|&x| x >= h3.size(p)) {
                            return Err(ScatError::Shape(format!("composition ({a},{b},{c}) at dimension {p}")));
                        }
                    }
                }
            }
        }
        let unit_at = (0..n)
            .map(|a| {
                (0..=truncation)
                    .map(|p| {
                        let t = SimplicialOperator::new(0, p, vec![0; p + 1]).expect("constant carrier");
                        homs[a * n + a].act(&t, units[a]).expect("inside truncation")
                    })
                    .collect()
            })
            .collect();
        Ok(Self { n_objects, truncation, homs, comp, units, unit_at })
    }

    /// Builds the composition tables from `compose(a, b, c, p, f, g) = g ∘ f`.
    pub fn from_fn(
        n_objects: usize,
        homs: Vec<TruncatedSimplicialSet>,
        units: Vec<usize>,
        compose: impl Fn(ObjId, ObjId, ObjId, usize, usize, usize) -> usize,
    ) -> Result<Self, ScatError> {
        let n = n_objects;
        if homs.len() != n * n {
            return Err(ScatError::Shape("hom count".into()));
        }
        let truncation = homs.first().map_or(0, TruncatedSimplicialSet::truncation);
        let mut comp = Vec::with_capacity(n * n * n);
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    comp.push(
                        (0..=truncation)
                            .map(|p| {
                                let (s1, s2) = (homs[a * n + b].size(p), homs[b * n + c].size(p));
                                (0..s1 * s2).map(|fg| compose(a, b, c, p, fg / s2, fg % s2)).collect()
                            })
                            .collect(),
                    );
                }
            }
        }
        Self::new(n, homs, comp, units)
    }

    /// Every hom a point or empty, as decided by `related(a, b)`; `related` must be
    /// reflexive and transitive.
    pub fn preorder(n: usize, truncation: usize, related: impl Fn(ObjId, ObjId) -> bool) -> Self {
        let point = standard_simplex(0, truncation).set;
        let empty = TruncatedSimplicialSet::empty(truncation);
        let homs = (0..n * n).map(|ab| if related(ab / n, ab % n) { point.clone() } else { empty.clone() }).collect();
        Self::from_fn(n, homs, vec![0; n], |_, _, _, _, _, _| 0).expect("preorder tables")
    }

    /// `T1`: one object with a point as endomorphisms.
    pub fn terminal(truncation: usize) -> Self {
        Self::preorder(1, truncation, |_, _| true)
    }

    pub fn n_objects(&self) -> usize {
        self.n_objects
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    pub fn hom(&self, a: ObjId, b: ObjId) -> &TruncatedSimplicialSet {
        &self.homs[a * self.n_objects + b]
    }

    /// `g ∘ f` at dimension `p`.
    pub fn compose(&self, a: ObjId, b: ObjId, c: ObjId, p: usize, f: usize, g: usize) -> usize {
        let s2 = self.hom(b, c).size(p);
        self.comp[(a * self.n_objects + b) * self.n_objects + c][p][f * s2 + g]
    }

    pub fn unit_vertex(&self, a: ObjId) -> usize {
        self.units[a]
    }

    /// `s_0^p` of the unit vertex.
    pub fn unit(&self, a: ObjId, p: usize) -> usize {
        self.unit_at[a][p]
    }

    /// The same category truncated at `p ≤ P`.
    pub fn truncate(&self, p: usize) -> Result<Self, ScatError> {
        if p > self.truncation {
            return Err(ScatError::Shape(format!("cannot truncate at {p} above {}", self.truncation)));
        }
        let homs = self.homs.iter().map(|h| h.truncate(p).expect("checked")).collect();
        let comp = self.comp.iter().map(|t| t[..=p].to_vec()).collect();
        Self::new(self.n_objects, homs, comp, self.units.clone())
    }
}

/// Associativity, unit laws and simpliciality of composition, dimensionwise.
pub fn validate_simplicial_category(x: &FiniteSimplicialCategory) -> ValidationReport {
    let mut report = ValidationReport::new();
    let n = x.n_objects;
    let top = x.truncation;
    for a in 0..n {
        for b in 0..n {
            report.absorb(&format!("hom({a},{b})"), validate_simplicial_set(x.hom(a, b)));
        }
    }
    if !report.is_empty() {
        return report;
    }
    for a in 0..n {
        for b in 0..n {
            let h = x.hom(a, b);
            for p in 0..=top {
                for f in 0..h.size(p) {
                    if x.compose(a, a, b, p, x.unit(a, p), f) != f {
                        report.push("unit", format!("f ∘ id_{a} ≠ f for f = {f} in hom({a},{b}) dimension {p}"));
                    }
                    if x.compose(a, b, b, p, f, x.unit(b, p)) != f {
                        report.push("unit", format!("id_{b} ∘ f ≠ f for f = {f} in hom({a},{b}) dimension {p}"));
                    }
                }
            }
        }
    }
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let (h1, h2) = (x.hom(a, b), x.hom(b, c));
                for p in 0..=top {
                    for f in 0..h1.size(p) {
                        for g in 0..h2.size(p) {
                            let gf = x.compose(a, b, c, p, f, g);
                            if p >= 1 {
                                for i in 0..=p {
                                    let lhs = x.hom(a, c).face(p, i, gf);
                                    let rhs = x.compose(a, b, c, p - 1, h1.face(p, i, f), h2.face(p, i, g));
                                    if lhs != rhs {
                                        report.push("simplicial", format!("d_{i} does not commute with ({a},{b},{c}) composition at dimension {p}"));
                                    }
                                }
                            }
                            if p < top {
                                for i in 0..=p {
                                    let lhs = x.hom(a, c).degen(p, i, gf);
                                    let rhs = x.compose(a, b, c, p + 1, h1.degen(p, i, f), h2.degen(p, i, g));
                                    if lhs != rhs {
                                        report.push("simplicial", format!("s_{i} does not commute with ({a},{b},{c}) composition at dimension {p}"));
                                    }
                                }
                            }
                            for d in 0..n {
                                let h3 = x.hom(c, d);
                                for k in 0..h3.size(p) {
                                    let left = x.compose(a, c, d, p, gf, k);
                                    let right = x.compose(a, b, d, p, f, x.compose(b, c, d, p, g, k));
                                    if left != right {
                                        report.push("associativity", format!("({a},{b},{c},{d}) at dimension {p} on ({f},{g},{k})"));
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    report
}

/// `Ho(A)`: hom-sets are the components of the hom simplicial sets. Morphisms
/// are ordered by `(a, b, component)`.
#[derive(Clone, Debug)]
pub struct HomotopyCategory {
    pub category: FiniteCategory,
    pub components: Vec<Components>,
    /// First morphism of `Ho(A)(a, b)`, keyed by `a·n + b`.
    pub offsets: Vec<usize>,
}

impl HomotopyCategory {
    /// The morphism of `Ho(A)` containing the vertex `f ∈ hom(a,b)_0`.
    pub fn class_of(&self, n: usize, a: ObjId, b: ObjId, f: usize) -> MorId {
        self.offsets[a * n + b] + self.components[a * n + b].component_of[f]
    }
}

/// Builds `Ho(A)`, checking that composition is well defined on components.
pub fn homotopy_category(x: &FiniteSimplicialCategory) -> Result<HomotopyCategory, ScatError> {
    let n = x.n_objects;
    let components: Vec<Components> = x.homs.iter().map(pi0_or_vertices).collect::<Result<_, _>>()?;
    let mut offsets = Vec::with_capacity(n * n);
    let mut arrows = Vec::new();
    for a in 0..n {
        for b in 0..n {
            offsets.push(arrows.len());
            arrows.extend((0..components[a * n + b].len()).map(|_| Arrow { dom: a, cod: b }));
        }
    }
    let ho = HomotopyCategory { category: FiniteCategory::discrete(0), components, offsets };
    let identity: Vec<MorId> = (0..n).map(|a| ho.class_of(n, a, a, x.unit_vertex(a))).collect();
    let mut table = Vec::new();
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let (h1, h2) = (x.hom(a, b), x.hom(b, c));
                for f in 0..h1.size(0) {
                    for g in 0..h2.size(0) {
                        let gf = ho.class_of(n, a, c, x.compose(a, b, c, 0, f, g));
                        table.push((ho.class_of(n, b, c, g), ho.class_of(n, a, b, f), gf));
                    }
                }
            }
        }
    }
    let category = FiniteCategory::from_table(n, arrows, identity, table)
        .map_err(|e| ScatError::ComponentsNotWellDefined(e.to_string()))?;
    Ok(HomotopyCategory { category, ..ho })
}

/// π₀ of a hom; in truncation 0 every vertex is its own component.
fn pi0_or_vertices(h: &TruncatedSimplicialSet) -> Result<Components, ScatError> {
    if h.truncation() == 0 {
        return Ok(Components { representatives: (0..h.size(0)).collect(), component_of: (0..h.size(0)).collect() });
    }
    Ok(pi0(h)?)
}

/// A simplicial functor: an object map and a simplicial map on every hom.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialFunctor {
    pub objects: Vec<ObjId>,
    /// `homs[a·n + b]: hom(a,b) → hom(F a, F b)`.
    pub homs: Vec<SimplicialMap>,
}

impl SimplicialFunctor {
    pub fn identity(x: &FiniteSimplicialCategory) -> Self {
        Self { objects: (0..x.n_objects).collect(), homs: x.homs.iter().map(SimplicialMap::identity).collect() }
    }

    /// Hom maps are simplicial, and composition and units are preserved.
    pub fn validate(&self, src: &FiniteSimplicialCategory, tgt: &FiniteSimplicialCategory) -> ValidationReport {
        let mut report = ValidationReport::new();
        let n = src.n_objects;
        if self.objects.len() != n || self.homs.len() != n * n || self.objects.iter().any(|&o| o >= tgt.n_objects) {
            report.push("shape", "object or hom map counts");
            return report;
        }
        let f = |a: ObjId| self.objects[a];
        for a in 0..n {
            for b in 0..n {
                report.absorb(&format!("hom({a},{b})"), self.homs[a * n + b].validate(src.hom(a, b), tgt.hom(f(a), f(b))));
            }
        }
        if !report.is_empty() {
            return report;
        }
        for a in 0..n {
            if self.homs[a * n + a].apply(0, src.unit_vertex(a)) != tgt.unit_vertex(f(a)) {
                report.push("unit", format!("unit of {a} not preserved"));
            }
            for b in 0..n {
                for c in 0..n {
                    for p in 0..=src.truncation {
                        for x in 0..src.hom(a, b).size(p) {
                            for y in 0..src.hom(b, c).size(p) {
                                let lhs = self.homs[a * n + c].apply(p, src.compose(a, b, c, p, x, y));
                                let rhs = tgt.compose(
                                    f(a),
                                    f(b),
                                    f(c),
                                    p,
                                    self.homs[a * n + b].apply(p, x),
                                    self.homs[b * n + c].apply(p, y),
                                );
                                if lhs != rhs {
                                    report.push("composition", format!("({a},{b},{c}) at dimension {p} on ({x},{y})"));
                                }
                            }
                        }
                    }
                }
            }
        }
        report
    }

    /// The induced functor `Ho(F)`.
    pub fn homotopy_functor(
        &self,
        src: &FiniteSimplicialCategory,
        ho_src: &HomotopyCategory,
        ho_tgt: &HomotopyCategory,
    ) -> Functor {
        let (n, m) = (src.n_objects, ho_tgt.category.n_objects());
        let mut morphisms = vec![0; ho_src.category.n_morphisms()];
        for a in 0..n {
            for b in 0..n {
                let comps = &ho_src.components[a * n + b];
                for (k, &rep) in comps.representatives.iter().enumerate() {
                    let image = self.homs[a * n + b].apply(0, rep);
                    morphisms[ho_src.offsets[a * n + b] + k] = ho_tgt.class_of(m, self.objects[a], self.objects[b], image);
                }
            }
        }
        Functor { objects: self.objects.clone(), morphisms }
    }
}

/// Outcome of the Dwyer–Kan equivalence probe. PASS means no obstruction was
/// found: the probes are necessary conditions only.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct DkReport {
    pub verdict: Verdict,
    pub detail: String,
}

/// Refutes DK-equivalence of `F` through hom-wise π₀ bijectivity, vanishing
/// mapping-cone homology in degrees `≤ d`, essential surjectivity of `Ho(F)`
/// and an equivalence search between the homotopy categories.
pub fn dk_equivalence_probe(
    f: &SimplicialFunctor,
    src: &FiniteSimplicialCategory,
    tgt: &FiniteSimplicialCategory,
    d: usize,
    budget: u64,
) -> Result<DkReport, ScatError> {
    let report = f.validate(src, tgt);
    if !report.is_empty() {
        return Err(ScatError::Shape(format!("not a simplicial functor: {report}")));
    }
    let n = src.n_objects;
    let mut shallow = false;
    for a in 0..n {
        for b in 0..n {
            let (h1, h2) = (src.hom(a, b), tgt.hom(f.objects[a], f.objects[b]));
            let map = &f.homs[a * n + b];
            let bijective = if h1.truncation() == 0 {
                let mut seen = vec![false; h2.size(0)];
                map.maps[0].iter().all(|&y| !std::mem::replace(&mut seen[y], true)) && seen.iter().all(|&s| s)
            } else {
                pi0_bijective(map, h1, h2)?
            };
            if !bijective {
                return Ok(DkReport { verdict: Verdict::Fail, detail: format!("hom({a},{b}) → hom(F{a},F{b}) is not a bijection on components") });
            }
            match cone_probe(map, h1, h2, d) {
                Ok(cone) => {
                    if let Some(deg) = cone.first_obstruction() {
                        return Ok(DkReport {
                            verdict: Verdict::Fail,
                            detail: format!("mapping cone of hom({a},{b}) has homology in degree {deg}"),
                        });
                    }
                }
                Err(HomologyError::TooShallow { .. }) => shallow = true,
                Err(e) => return Err(e.into()),
            }
        }
    }
    let (ho_a, ho_b) = (homotopy_category(src)?, homotopy_category(tgt)?);
    let ho_f = f.homotopy_functor(src, &ho_a, &ho_b);
    if !ho_f.is_essentially_surjective(&ho_b.category) {
        return Ok(DkReport { verdict: Verdict::Fail, detail: "Ho(F) is not essentially surjective".into() });
    }
    match equivalence_of_categories_search(&ho_a.category, &ho_b.category, SearchBudget::new(budget)) {
        EquivalenceSearch::NotEquivalent => {
            Ok(DkReport { verdict: Verdict::Fail, detail: "homotopy categories are not equivalent".into() })
        }
        EquivalenceSearch::BudgetExhausted { explored } => Ok(DkReport {
            verdict: Verdict::Inconclusive,
            detail: format!("equivalence search exhausted its budget after {explored} steps"),
        }),
        EquivalenceSearch::Found(_) if shallow => Ok(DkReport {
            verdict: Verdict::Inconclusive,
            detail: format!("truncation {} too shallow for cone homology through degree {d}", src.truncation),
        }),
        EquivalenceSearch::Found(_) => Ok(DkReport {
            verdict: Verdict::Pass,
            detail: format!("no obstruction found: components, cone homology through degree {d} and homotopy categories agree"),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn d2(p: usize) -> FiniteSimplicialCategory {
        FiniteSimplicialCategory::preorder(2, p, |a, b| a <= b)
    }

    #[test]
    fn fixtures_are_valid() {
        assert!(validate_simplicial_category(&FiniteSimplicialCategory::terminal(2)).is_empty());
        assert!(validate_simplicial_category(&d2(2)).is_empty());
    }

    #[test]
    fn planted_unit_violation() {
        // endomorphisms {e, z}, with z ∘ z = z and e the unit; then redirect e ∘ e to z
        let hom = crate::simp::disjoint_union(&[&standard_simplex(0, 1).set, &standard_simplex(0, 1).set]).unwrap();
        let good = FiniteSimplicialCategory::from_fn(1, vec![hom.clone()], vec![0], |_, _, _, _, f, g| if f == 0 { g } else if g == 0 { f } else { 1 }).unwrap();
        assert!(validate_simplicial_category(&good).is_empty());
        let bad = FiniteSimplicialCategory::from_fn(1, vec![hom], vec![0], |_, _, _, _, f, g| if f == 0 && g == 0 { 1 } else { f.max(g) }).unwrap();
        assert!(validate_simplicial_category(&bad).has("unit"));
    }

    #[test]
    fn homotopy_categories() {
        let ho = homotopy_category(&FiniteSimplicialCategory::terminal(1)).unwrap();
        assert_eq!((ho.category.n_objects(), ho.category.n_morphisms()), (1, 1));
        let ho = homotopy_category(&d2(1)).unwrap();
        assert_eq!(ho.category.n_morphisms(), 3);
        assert!(crate::cat::validate_category(&ho.category).is_empty());
        // endomorphisms: an edge 0 → 1 with composition constant at vertex 1 off the unit
        let edge = standard_simplex(1, 1);
        let (v0, v1) = (edge.index_of(0, &vec![0]).unwrap(), edge.index_of(0, &vec![1]).unwrap());
        let unit_edge = |p: usize, f: usize, g: usize| {
            let lbl_f = &edge.labels[p][f];
            let lbl_g = &edge.labels[p][g];
            // pointwise max of vertex sequences: 0 is the unit, 1 absorbs
            let out: Vec<usize> = lbl_f.iter().zip(lbl_g).map(|(a, b)| *a.max(b)).collect();
            edge.index_of(p, &out).unwrap()
        };
        let x = FiniteSimplicialCategory::from_fn(1, vec![edge.set.clone()], vec![v0], |_, _, _, p, f, g| unit_edge(p, f, g)).unwrap();
        assert!(validate_simplicial_category(&x).is_empty());
        assert_ne!(v0, v1);
        assert_eq!(homotopy_category(&x).unwrap().category.n_morphisms(), 1);
    }

    #[test]
    fn dk_probe_examples() {
        let d = d2(2);
        assert_eq!(dk_equivalence_probe(&SimplicialFunctor::identity(&d), &d, &d, 1, 10_000).unwrap().verdict, Verdict::Pass);
        let t1 = FiniteSimplicialCategory::terminal(2);
        let collapse = SimplicialFunctor {
            objects: vec![0, 0],
            homs: (0..4).map(|ab| SimplicialMap { maps: (0..=2).map(|p| vec![0; d.hom(ab / 2, ab % 2).size(p)]).collect() }).collect(),
        };
        let r = dk_equivalence_probe(&collapse, &d, &t1, 1, 10_000).unwrap();
        assert_eq!(r.verdict, Verdict::Fail);
        assert!(r.detail.contains("components"));
        let chaotic = FiniteSimplicialCategory::preorder(2, 2, |_, _| true);
        let include = SimplicialFunctor { objects: vec![0], homs: vec![SimplicialMap::identity(t1.hom(0, 0))] };
        assert_eq!(dk_equivalence_probe(&include, &t1, &chaotic, 1, 10_000).unwrap().verdict, Verdict::Pass);
    }
}
