use std::collections::HashMap;

use crate::cat::{check_natural_transformation, Arrow, FiniteCategory, Functor, MorId, NaturalTransformation, ObjId};
use crate::nerve::{enumerate_grids, BisimplicialMap, Grid, LabelledBisimplicial, LevelwiseNerve, SimplicialDiagram};
use crate::report::ValidationReport;
use crate::simp::{gamma_op, CategoryOfSimplices, OpId, SimplicialOperator};

use super::flipped::{FlippedNerve, ZLabel};
use super::grothendieck::Rel;

/// A category whose objects are `k`-chains in `bA` (grids `k̂ × 0̌`) and whose
/// morphisms are commuting ladders of weak equivalences (grids `k̂ × 1̌`),
/// composed rowwise. Objects and morphisms are sorted by grid.
#[derive(Clone, Debug)]
pub struct LadderCategory {
    pub k: usize,
    pub category: FiniteCategory,
    pub objects: Vec<Grid>,
    pub morphisms: Vec<Grid>,
    object_index: HashMap<Grid, ObjId>,
    morphism_index: HashMap<Grid, MorId>,
}

/// `Y_k A`: every chain and every ladder.
pub type YLevel = LadderCategory;

/// `Ȳ_k A`: constant chains (identity operators) and the ladders between them
/// whose verticals share one operator.
pub type YbarLevel = LadderCategory;

impl LadderCategory {
    fn new(rel: &Rel, k: usize, objects: Vec<Grid>, morphisms: Vec<Grid>) -> Self {
        let c = &rel.relative.underlying;
        let object_index: HashMap<Grid, ObjId> = objects.iter().cloned().enumerate().map(|(i, g)| (g, i)).collect();
        let morphism_index: HashMap<Grid, MorId> = morphisms.iter().cloned().enumerate().map(|(i, g)| (g, i)).collect();
        let arrows = morphisms
            .iter()
            .map(|m| Arrow { dom: object_index[&column(c, m, 0)], cod: object_index[&column(c, m, 1)] })
            .collect();
        let identity = objects.iter().map(|g| morphism_index[&g.reindex(c, &identity_carrier(k), &[0, 0])]).collect();
        let category = FiniteCategory::from_fn(objects.len(), arrows, identity, |second, first| {
            let (f, g) = (&morphisms[first], &morphisms[second]);
            let vertical = (0..=k).map(|i| c.comp(g.v(i, 1), f.v(i, 1))).collect();
            morphism_index[&ladder(&column(c, f, 0), &column(c, g, 1), vertical)]
        })
        .expect("ladders compose");
        Self { k, category, objects, morphisms, object_index, morphism_index }
    }

    pub fn object_id(&self, g: &Grid) -> Option<ObjId> {
        self.object_index.get(g).copied()
    }

    pub fn morphism_id(&self, g: &Grid) -> Option<MorId> {
        self.morphism_index.get(g).copied()
    }

    /// The inclusion into a ladder category containing every chain and ladder of this one.
    pub fn inclusion(&self, into: &LadderCategory) -> Functor {
        Functor {
            objects: self.objects.iter().map(|g| into.object_index[g]).collect(),
            morphisms: self.morphisms.iter().map(|g| into.morphism_index[g]).collect(),
        }
    }
}

fn identity_carrier(n: usize) -> Vec<usize> {
    (0..=n).collect()
}

/// The ladder with columns `col0` and `col1` and verticals `vertical[i]`.
fn ladder(col0: &Grid, col1: &Grid, vertical: Vec<MorId>) -> Grid {
    let k = col0.p;
    let mut objects = Vec::with_capacity(2 * (k + 1));
    for i in 0..=k {
        objects.extend([col0.objects[i], col1.objects[i]]);
    }
    let mut horizontal = Vec::with_capacity(2 * k);
    for i in 0..k {
        horizontal.extend([col0.horizontal[i], col1.horizontal[i]]);
    }
    Grid { p: k, q: 1, objects, horizontal, vertical }
}

fn column(c: &FiniteCategory, g: &Grid, j: usize) -> Grid {
    g.reindex(c, &identity_carrier(g.p), &[j])
}

fn is_constant(rel: &Rel, chain: &Grid) -> bool {
    let g = &rel.groth;
    chain.horizontal.iter().all(|&h| g.ops.op(g.morphism(h).op).is_identity())
}

/// The weak equivalence `(u, unit)` out of the object `o` of `bA`.
fn weq(rel: &Rel, o: ObjId, u: OpId) -> MorId {
    let g = &rel.groth;
    let a = g.object(o).1;
    let p2 = g.ops.op(u).to_dim();
    g.morphism_id(o, u, a, rel.base.unit(a, p2)).expect("weak equivalence present")
}

pub fn y_level(rel: &Rel, k: usize) -> YLevel {
    LadderCategory::new(rel, k, enumerate_grids(&rel.relative, k, 0), enumerate_grids(&rel.relative, k, 1))
}

/// The constant chain at `p`, carried along `u` with every vertical `(u, unit)`.
fn constant_ladder(rel: &Rel, chain: &Grid, u: OpId) -> Option<Grid> {
    let g = &rel.groth;
    let c = &rel.relative.underlying;
    let k = chain.p;
    let p2 = g.ops.op(u).to_dim();
    let bases: Vec<ObjId> = chain.objects.iter().map(|&o| g.object(o).1).collect();
    let objects: Vec<ObjId> = bases.iter().map(|&a| g.object_id(p2, a)).collect();
    let mut horizontal = Vec::with_capacity(k);
    for i in 1..=k {
        let a = g.morphism(chain.horizontal[i - 1]).simplex;
        let moved = rel.base.hom(bases[i - 1], bases[i]).act(g.ops.op(u), a).ok()?;
        horizontal.push(g.morphism_id(objects[i - 1], g.ops.identity(p2), bases[i], moved)?);
    }
    let target = Grid { p: k, q: 0, objects, horizontal, vertical: Vec::new() };
    let vertical: Vec<MorId> = chain.objects.iter().map(|&o| weq(rel, o, u)).collect();
    let commutes = (1..=k).all(|i| {
        c.comp(target.horizontal[i - 1], vertical[i - 1]) == c.comp(vertical[i], chain.horizontal[i - 1])
    });
    commutes.then(|| ladder(chain, &target, vertical))
}

/// `Ȳ_k A`, built directly from the constant chains.
pub fn ybar_level(rel: &Rel, k: usize) -> YbarLevel {
    let g = &rel.groth;
    let objects: Vec<Grid> = enumerate_grids(&rel.relative, k, 0).into_iter().filter(|ch| is_constant(rel, ch)).collect();
    let mut morphisms: Vec<Grid> = objects
        .iter()
        .flat_map(|ch| {
            let p = g.object(ch.objects[0]).0;
            g.ops.from(p).iter().filter_map(|&u| constant_ladder(rel, ch, u)).collect::<Vec<_>>()
        })
        .collect();
    morphisms.sort_unstable();
    LadderCategory::new(rel, k, objects, morphisms)
}

fn reindexing_functor(rel: &Rel, src: &LadderCategory, tgt: &LadderCategory, alpha: &[usize]) -> Functor {
    let c = &rel.relative.underlying;
    Functor {
        objects: src.objects.iter().map(|g| tgt.object_index[&g.reindex(c, alpha, &[0])]).collect(),
        morphisms: src.morphisms.iter().map(|g| tgt.morphism_index[&g.reindex(c, alpha, &[0, 1])]).collect(),
    }
}

/// The diagram `k ↦ levels[k]` with the reindexing functors along faces and degeneracies.
pub fn ladder_diagram(rel: &Rel, levels: &[LadderCategory]) -> SimplicialDiagram {
    let top = levels.len() - 1;
    let faces = (0..=top)
        .map(|k| {
            if k == 0 {
                return Vec::new();
            }
            (0..=k)
                .map(|i| reindexing_functor(rel, &levels[k], &levels[k - 1], SimplicialOperator::face(k, i).carrier()))
                .collect()
        })
        .collect();
    let degens = (0..top)
        .map(|k| {
            (0..=k)
                .map(|i| reindexing_functor(rel, &levels[k], &levels[k + 1], SimplicialOperator::degeneracy(k, i).carrier()))
                .collect()
        })
        .collect();
    SimplicialDiagram { levels: levels.iter().map(|y| y.category.clone()).collect(), faces, degens }
}

/// `Y A` truncated at `K`.
pub fn y_diagram(rel: &Rel, k_max: usize) -> (Vec<YLevel>, SimplicialDiagram) {
    let levels: Vec<YLevel> = (0..=k_max).map(|k| y_level(rel, k)).collect();
    let diagram = ladder_diagram(rel, &levels);
    (levels, diagram)
}

/// `Ȳ A` truncated at `K`.
pub fn ybar_diagram(rel: &Rel, k_max: usize) -> (Vec<YbarLevel>, SimplicialDiagram) {
    let levels: Vec<YbarLevel> = (0..=k_max).map(|k| ybar_level(rel, k)).collect();
    let diagram = ladder_diagram(rel, &levels);
    (levels, diagram)
}

/// The constant chain `r(c)` at `p_k` and the verticals of `η_c`.
fn retract_chain(rel: &Rel, chain: &Grid) -> Option<(Grid, Vec<MorId>)> {
    let g = &rel.groth;
    let k = chain.p;
    let pk = g.object(chain.objects[k]).0;
    let bases: Vec<ObjId> = chain.objects.iter().map(|&o| g.object(o).1).collect();
    let tails = tails(rel, chain);
    let objects: Vec<ObjId> = bases.iter().map(|&a| g.object_id(pk, a)).collect();
    let mut horizontal = Vec::with_capacity(k);
    for i in 1..=k {
        let a = g.morphism(chain.horizontal[i - 1]).simplex;
        let moved = rel.base.hom(bases[i - 1], bases[i]).act(g.ops.op(tails[i]), a).ok()?;
        horizontal.push(g.morphism_id(objects[i - 1], g.ops.identity(pk), bases[i], moved)?);
    }
    let vertical = (0..=k).map(|i| weq(rel, chain.objects[i], tails[i])).collect();
    Some((Grid { p: k, q: 0, objects, horizontal, vertical: Vec::new() }, vertical))
}

/// `tails[i] = t_k ∘ ⋯ ∘ t_{i+1}: p_i ⇒ p_k`.
fn tails(rel: &Rel, chain: &Grid) -> Vec<OpId> {
    let g = &rel.groth;
    let k = chain.p;
    let pk = g.object(chain.objects[k]).0;
    let mut tails = vec![g.ops.identity(pk); k + 1];
    for i in (0..k).rev() {
        let t = g.morphism(chain.horizontal[i]).op;
        tails[i] = g.ops.compose(tails[i + 1], t).expect("composable chain");
    }
    tails
}

/// The retraction `r: Y_k → Ȳ_k` and `η: id ⇒ i∘r`, with the outcome of every
/// check of the strong deformation retraction.
#[derive(Clone, Debug)]
pub struct Retraction {
    pub r: Option<Functor>,
    pub eta: Option<NaturalTransformation>,
    pub report: ValidationReport,
}

/// Builds `r` and `η` on materialized levels and checks that `r` is a functor,
/// `r ∘ i = id`, `η` is natural with weak-equivalence components, and `η` is
/// the identity on `Ȳ`.
pub fn retraction(rel: &Rel, y: &YLevel, ybar: &YbarLevel) -> Retraction {
    let g = &rel.groth;
    let k = y.k;
    let mut report = ValidationReport::new();
    let mut r_obj = Vec::with_capacity(y.objects.len());
    let mut eta = Vec::with_capacity(y.objects.len());
    let mut retracted = Vec::with_capacity(y.objects.len());
    for (o, chain) in y.objects.iter().enumerate() {
        let Some((target, vertical)) = retract_chain(rel, chain) else {
            report.push("r-object", format!("retracted chain of object {o} is not a chain"));
            continue;
        };
        if vertical.iter().any(|&v| !rel.relative.is_weq(v)) {
            report.push("eta-weq", format!("η at object {o} has a vertical outside the weak equivalences"));
        }
        match y.morphism_id(&ladder(chain, &target, vertical)) {
            Some(m) => eta.push(m),
            None => report.push("eta-square", format!("η at object {o} has a non-commuting square")),
        }
        match ybar.object_id(&target) {
            Some(local) => r_obj.push(local),
            None => report.push("r-object", format!("retracted chain of object {o} is not in Ȳ")),
        }
        retracted.push(target);
    }
    if !report.is_empty() {
        return Retraction { r: None, eta: None, report };
    }
    let mut r_mor = Vec::with_capacity(y.morphisms.len());
    for (m, rung) in y.morphisms.iter().enumerate() {
        let (src, tgt) = (&retracted[y.category.dom(m)], &retracted[y.category.cod(m)]);
        let u = g.morphism(rung.v(k, 1)).op;
        let vertical = src.objects.iter().map(|&o| weq(rel, o, u)).collect();
        match ybar.morphism_id(&ladder(src, tgt, vertical)) {
            Some(local) => r_mor.push(local),
            None => {
                report.push("r-morphism", format!("retraction of morphism {m} is not a morphism of Ȳ"));
                r_mor.push(0);
            }
        }
    }
    let r = Functor { objects: r_obj, morphisms: r_mor };
    report.absorb("r", r.validate(&y.category, &ybar.category));
    let inclusion = ybar.inclusion(y);
    if inclusion.then(&r) != Functor::identity(&ybar.category) {
        report.push("r-section", "r ∘ inclusion is not the identity of Ȳ");
    }
    let eta = NaturalTransformation { components: eta };
    let ir = r.then(&inclusion);
    report.absorb(
        "eta",
        check_natural_transformation(&y.category, &y.category, &Functor::identity(&y.category), &ir, &eta),
    );
    for &o in &inclusion.objects {
        if !y.category.is_identity(eta.components[o]) {
            report.push("eta-strong", format!("η at the Ȳ object {o} is not an identity"));
        }
    }
    Retraction { r: Some(r), eta: Some(eta), report }
}

/// Outcome of [`retraction_sweep`].
#[derive(Clone, Debug)]
pub struct RetractionSweep {
    pub objects: usize,
    /// Morphisms of `Y_k`, counted as ladders.
    pub morphisms: u64,
    pub report: ValidationReport,
}

/// Checks the retraction identities on `Y_k` without materializing it.
///
/// Ladders over a chain are swept row by row from `k` down to `0`. The state at
/// row `i` is `(u_i, T′_i, u_k)`, where `T′_i = t′_k ⋯ t′_{i+1}` is the tail of
/// the target chain; every identity below involves only the state and the
/// source chain, so checking each reachable state checks every ladder. Per
/// morphism: the `η` naturality square and that `r(m)` is a morphism of `Ȳ`.
/// Per object: `r(c) ∈ Ȳ`, `η_c` is a ladder of weak equivalences, `r` keeps
/// identities and `η` is the identity on `Ȳ`. On `Ȳ`: `r ∘ i = id`.
pub fn retraction_sweep(rel: &Rel, ybar: &YbarLevel) -> RetractionSweep {
    let g = &rel.groth;
    let c = &rel.relative.underlying;
    let ops = &g.ops;
    let k = ybar.k;
    let mut report = ValidationReport::new();
    // factorizations w = t′ ∘ u of every operator
    let mut factor: Vec<Vec<(OpId, OpId)>> = vec![Vec::new(); ops.len()];
    for u in 0..ops.len() {
        for &t2 in ops.from(ops.op(u).to_dim()) {
            let w = ops.compose(t2, u).expect("composable");
            factor[w].push((u, t2));
        }
    }
    let chains = enumerate_grids(&rel.relative, k, 0);
    let mut morphisms = 0u64;
    for (o, chain) in chains.iter().enumerate() {
        let Some((target, eta)) = retract_chain(rel, chain) else {
            report.push("r-object", format!("retracted chain of object {o} is not a chain"));
            continue;
        };
        if ybar.object_id(&target).is_none() {
            report.push("r-object", format!("retracted chain of object {o} is not in Ȳ"));
            continue;
        }
        if eta.iter().any(|&v| !rel.relative.is_weq(v)) {
            report.push("eta-weq", format!("η at object {o} has a vertical outside the weak equivalences"));
        }
        if (1..=k).any(|i| c.comp(target.horizontal[i - 1], eta[i - 1]) != c.comp(eta[i], chain.horizontal[i - 1])) {
            report.push("eta-square", format!("η at object {o} has a non-commuting square"));
        }
        if is_constant(rel, chain) && eta.iter().any(|&v| !c.is_identity(v)) {
            report.push("eta-strong", format!("η at the Ȳ object {o} is not an identity"));
        }
        let dims: Vec<usize> = chain.objects.iter().map(|&x| g.object(x).0).collect();
        let bases: Vec<ObjId> = chain.objects.iter().map(|&x| g.object(x).1).collect();
        let pk = dims[k];
        let hom = |i: usize| rel.base.hom(bases[i - 1], bases[i]);
        let simplex = |i: usize| g.morphism(chain.horizontal[i - 1]).simplex;
        let rh = |i: usize| target.horizontal[i - 1];

        // (u_i, T′_i, u_k) ↦ number of partial ladders
        let mut states: HashMap<(OpId, OpId, OpId), u64> = HashMap::new();
        for &u in ops.from(pk) {
            states.insert((u, ops.identity(ops.op(u).to_dim()), u), 1);
        }
        for i in (0..=k).rev() {
            let mut keys: Vec<_> = states.keys().copied().collect();
            keys.sort_unstable();
            for &(u, tail2, uk) in &keys {
                let o_i = chain.objects[i];
                let p2 = ops.op(u).to_dim();
                let lhs = c.comp(weq(rel, g.object_id(p2, bases[i]), tail2), weq(rel, o_i, u));
                let rhs = c.comp(weq(rel, g.object_id(pk, bases[i]), uk), eta[i]);
                if lhs != rhs {
                    report.push("eta-natural", format!("η not natural at object {o}, row {i}"));
                }
                if i >= 1 {
                    // the square of r(m) between rows i−1 and i
                    let pk2 = ops.op(uk).to_dim();
                    let moved = hom(i).act(ops.op(u), simplex(i)).and_then(|a2| hom(i).act(ops.op(tail2), a2));
                    let square = moved.ok().and_then(|b2| {
                        let h2 = g.morphism_id(g.object_id(pk2, bases[i - 1]), ops.identity(pk2), bases[i], b2)?;
                        let lower = c.comp(h2, weq(rel, g.object_id(pk, bases[i - 1]), uk));
                        Some(lower == c.comp(weq(rel, g.object_id(pk, bases[i]), uk), rh(i)))
                    });
                    if square != Some(true) {
                        report.push("r-morphism", format!("r of a ladder at object {o} fails to commute at row {i}"));
                    }
                }
            }
            if i == 0 {
                morphisms += states.values().sum::<u64>();
                if !states.keys().any(|&(u, _, uk)| ops.op(u).is_identity() && ops.op(uk).is_identity()) {
                    report.push("r-identity", format!("no identity ladder at object {o}"));
                }
                break;
            }
            let t = g.morphism(chain.horizontal[i - 1]).op;
            let mut next: HashMap<(OpId, OpId, OpId), u64> = HashMap::new();
            for &(u, tail2, uk) in &keys {
                let count = states[&(u, tail2, uk)];
                let w = ops.compose(u, t).expect("composable");
                let Ok(a2) = hom(i).act(ops.op(u), simplex(i)) else { continue };
                let lower = c.comp(weq(rel, chain.objects[i], u), chain.horizontal[i - 1]);
                for &(u_prev, t2) in &factor[w] {
                    if ops.op(u_prev).from_dim() != dims[i - 1] {
                        continue;
                    }
                    let src = g.object_id(ops.op(u_prev).to_dim(), bases[i - 1]);
                    let Some(h2) = g.morphism_id(src, t2, bases[i], a2) else { continue };
                    if c.comp(h2, weq(rel, chain.objects[i - 1], u_prev)) == lower {
                        let tail_prev = ops.compose(tail2, t2).expect("composable");
                        *next.entry((u_prev, tail_prev, uk)).or_default() += count;
                    }
                }
            }
            states = next;
        }
    }
    // r ∘ i = id on Ȳ
    for (m, rung) in ybar.morphisms.iter().enumerate() {
        let u = g.morphism(rung.v(k, 1)).op;
        let image = retract_chain(rel, &column(c, rung, 0)).zip(retract_chain(rel, &column(c, rung, 1))).map(
            |((r_src, _), (r_tgt, _))| {
                let vertical = r_src.objects.iter().map(|&x| weq(rel, x, u)).collect();
                ladder(&r_src, &r_tgt, vertical)
            },
        );
        if image.as_ref() != Some(rung) {
            report.push("r-section", format!("r ∘ inclusion moves the Ȳ morphism {m}"));
        }
    }
    for (o, chain) in ybar.objects.iter().enumerate() {
        if retract_chain(rel, chain).map(|(t, _)| t).as_ref() != Some(chain) {
            report.push("r-section", format!("r ∘ inclusion moves the Ȳ object {o}"));
        }
    }
    RetractionSweep { objects: chains.len(), morphisms, report }
}

/// An isomorphism candidate with the outcome of its checks.
#[derive(Clone, Debug)]
pub struct IsoReport<M> {
    pub map: M,
    pub report: ValidationReport,
}

impl<M> IsoReport<M> {
    pub fn holds(&self) -> bool {
        self.report.is_empty()
    }
}

/// The canonical functor `Ȳ_k A → Γᵒᵖ (ZA)_k`, checked to be an isomorphism.
pub fn iso_ybar_gamma_z(rel: &Rel, ybar: &YbarLevel, z: &FlippedNerve) -> (CategoryOfSimplices, IsoReport<Functor>) {
    let g = &rel.groth;
    let k = ybar.k;
    let gz = gamma_op(z.set.row(k));
    let mut report = ValidationReport::new();
    let objects: Vec<ObjId> = ybar
        .objects
        .iter()
        .enumerate()
        .map(|(o, chain)| {
            let p = g.object(chain.objects[0]).0;
            let label = ZLabel {
                objects: chain.objects.iter().map(|&x| g.object(x).1).collect(),
                simplices: chain.horizontal.iter().map(|&h| g.morphism(h).simplex).collect(),
            };
            match z.index_of(k, p, &label) {
                Some(x) => gz.object_id(p, x),
                None => {
                    report.push("object", format!("Ȳ object {o} has no simplex in (ZA)_{k}"));
                    0
                }
            }
        })
        .collect();
    let morphisms: Vec<MorId> = ybar
        .morphisms
        .iter()
        .enumerate()
        .map(|(m, rung)| {
            let u = g.ops.op(g.morphism(rung.v(0, 1)).op);
            let t = gz.ops.id_of(u).expect("same truncation");
            gz.morphism_id(objects[ybar.category.dom(m)], t)
        })
        .collect();
    let f = Functor { objects, morphisms };
    if report.is_empty() {
        report.absorb("functor", f.validate(&ybar.category, &gz.category));
        if report.is_empty() && !f.is_isomorphism(&ybar.category, &gz.category) {
            report.push("bijection", "not bijective on objects and morphisms");
        }
    }
    (gz, IsoReport { map: f, report })
}

/// The cellwise map `nYA → N Rel A`: a `q`-chain of ladders in `Y_k` becomes the
/// `k̂ × q̌` grid they fill.
pub fn iso_nrel_ny(levels: &[YLevel], ny: &LevelwiseNerve, nrel: &LabelledBisimplicial<Grid>) -> IsoReport<BisimplicialMap> {
    let mut report = ValidationReport::new();
    let q_max = ny.set.inner_truncation();
    let mut maps = Vec::with_capacity(levels.len());
    for (k, y) in levels.iter().enumerate() {
        let yc = &y.category;
        let nerve = &ny.nerves[k];
        let mut per_q = Vec::with_capacity(q_max + 1);
        for q in 0..=q_max {
            let cell: Vec<usize> = (0..nerve.size(q))
                .map(|x| {
                    let (start, arrows) = nerve.chain(q, x);
                    let mut columns: Vec<&Grid> = vec![&y.objects[start]];
                    columns.extend(arrows.iter().map(|&m| &y.objects[yc.cod(m)]));
                    let mut objects = Vec::with_capacity((k + 1) * (q + 1));
                    for i in 0..=k {
                        objects.extend(columns.iter().map(|col| col.objects[i]));
                    }
                    let mut horizontal = Vec::with_capacity(k * (q + 1));
                    for i in 0..k {
                        horizontal.extend(columns.iter().map(|col| col.horizontal[i]));
                    }
                    let mut vertical = Vec::with_capacity((k + 1) * q);
                    for i in 0..=k {
                        vertical.extend(arrows.iter().map(|&m| y.morphisms[m].v(i, 1)));
                    }
                    let grid = Grid { p: k, q, objects, horizontal, vertical };
                    nrel.index_of(k, q, &grid).unwrap_or_else(|| {
                        report.push("cell", format!("chain {x} of cell ({k},{q}) is not a relative functor"));
                        0
                    })
                })
                .collect();
            per_q.push(cell);
        }
        maps.push(per_q);
    }
    let map = BisimplicialMap { maps };
    if report.is_empty() {
        report.absorb("map", map.validate(&ny.set, &nrel.set));
        if report.is_empty() && !map.is_bijective(&nrel.set) {
            report.push("bijection", "not bijective on every cell");
        }
    }
    IsoReport { map, report }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cat::validate_category;
    use crate::nerve::{nerve_levelwise, simplicial_nerve, validate_diagram};
    use crate::scat::tests::d2;
    use crate::scat::{flipped_nerve, relativize, validate_simplicial_category, FiniteSimplicialCategory};
    use crate::simp::{disjoint_union, standard_simplex, TruncatedSimplicialSet};

    /// Two objects; `hom(0,1)` two points, composition through it constant at the first.
    fn two_points(p: usize) -> FiniteSimplicialCategory {
        let point = standard_simplex(0, p).set;
        let pair = disjoint_union(&[&point, &point]).unwrap();
        let homs = vec![point.clone(), pair, TruncatedSimplicialSet::empty(p), point];
        FiniteSimplicialCategory::from_fn(2, homs, vec![0, 0], |a, b, c, _, f, g| match (a == b, b == c) {
            (true, _) => g,
            (_, true) => f,
            _ => 0,
        })
        .unwrap()
    }

    #[test]
    fn level_counts() {
        let rel = relativize(&FiniteSimplicialCategory::terminal(1), 1);
        let y0 = y_level(&rel, 0);
        assert_eq!((y0.category.n_objects(), y0.category.n_morphisms()), (2, 7));
        let y1 = y_level(&rel, 1);
        assert_eq!(y1.category.n_objects(), 7);
        assert!(validate_category(&y1.category).is_empty());
        let yb = ybar_level(&rel, 1);
        assert_eq!((yb.category.n_objects(), yb.category.n_morphisms()), (2, 7));
        assert!(validate_category(&yb.category).is_empty());
        assert_eq!(ybar_level(&rel, 0).category, y0.category);

        let rel = relativize(&d2(0), 0);
        let y1 = y_level(&rel, 1);
        assert_eq!((y1.category.n_objects(), y1.category.n_morphisms()), (3, 3));
        assert_eq!(ybar_level(&rel, 1).category, y1.category);
    }

    #[test]
    fn ybar_is_the_restriction_of_y() {
        // oracle: filter Y_k for constant chains and ladders with one common operator
        let rel = relativize(&two_points(2), 2);
        let c = &rel.relative.underlying;
        let g = &rel.groth;
        for k in 0..=1 {
            let y = y_level(&rel, k);
            let objects: Vec<&Grid> = y.objects.iter().filter(|ch| is_constant(&rel, ch)).collect();
            let morphisms: Vec<&Grid> = y
                .morphisms
                .iter()
                .filter(|m| {
                    is_constant(&rel, &column(c, m, 0))
                        && is_constant(&rel, &column(c, m, 1))
                        && (0..=k).all(|i| g.morphism(m.v(i, 1)).op == g.morphism(m.v(0, 1)).op)
                })
                .collect();
            let yb = ybar_level(&rel, k);
            assert_eq!(yb.objects.iter().collect::<Vec<_>>(), objects);
            assert_eq!(yb.morphisms.iter().collect::<Vec<_>>(), morphisms);
            assert!(validate_category(&yb.category).is_empty());
        }
    }

    #[test]
    fn retraction_of_an_operator_chain() {
        let rel = relativize(&FiniteSimplicialCategory::terminal(1), 1);
        let y1 = y_level(&rel, 1);
        let yb = ybar_level(&rel, 1);
        let ret = retraction(&rel, &y1, &yb);
        assert!(ret.report.is_empty(), "{}", ret.report);
        let g = &rel.groth;
        // the chain (0,•) → (1,•) along an operator 0 ⇒ 1
        let o = (0..y1.objects.len())
            .find(|&o| g.object(y1.objects[o].objects[0]).0 == 0 && g.object(y1.objects[o].objects[1]).0 == 1)
            .unwrap();
        let r = ret.r.unwrap();
        assert!(yb.objects[r.obj(o)].objects.iter().all(|&x| g.object(x).0 == 1));
        let eta = &y1.morphisms[ret.eta.unwrap().components[o]];
        assert_eq!(g.morphism(eta.v(0, 1)).op, g.morphism(y1.objects[o].horizontal[0]).op);
        assert!(g.ops.op(g.morphism(eta.v(1, 1)).op).is_identity());
    }

    #[test]
    fn sweep_agrees_with_materialized_retraction() {
        let x = two_points(2);
        assert!(validate_simplicial_category(&x).is_empty());
        let cases = [(FiniteSimplicialCategory::terminal(1), 1, 2), (d2(1), 1, 2), (x.truncate(1).unwrap(), 1, 2), (x, 2, 1)];
        for (x, p, k_max) in cases {
            let rel = relativize(&x, p);
            for k in 0..=k_max {
                let y = y_level(&rel, k);
                let yb = ybar_level(&rel, k);
                let ret = retraction(&rel, &y, &yb);
                assert!(ret.report.is_empty(), "level {k}: {}", ret.report);
                let sweep = retraction_sweep(&rel, &yb);
                assert!(sweep.report.is_empty(), "level {k}: {}", sweep.report);
                assert_eq!(sweep.objects, y.category.n_objects());
                assert_eq!(sweep.morphisms, y.category.n_morphisms() as u64, "ladder count at level {k}");
            }
        }
    }

    #[test]
    fn ybar_is_gamma_of_z() {
        for (x, p) in [(FiniteSimplicialCategory::terminal(1), 1), (d2(0), 0), (two_points(2), 2)] {
            let rel = relativize(&x, p);
            let z = flipped_nerve(&x, 2);
            for k in 0..=2 {
                let yb = ybar_level(&rel, k);
                let (gz, iso) = iso_ybar_gamma_z(&rel, &yb, &z);
                assert!(iso.holds(), "level {k}: {}", iso.report);
                assert_eq!(gz.category.n_objects(), yb.category.n_objects());
            }
        }
    }

    #[test]
    fn nerve_of_rel_is_levelwise_nerve_of_y() {
        for (x, p) in [(FiniteSimplicialCategory::terminal(1), 1), (d2(0), 0), (d2(1), 1)] {
            let rel = relativize(&x, p);
            let (levels, diagram) = y_diagram(&rel, 2);
            assert!(validate_diagram(&diagram).is_empty());
            let ny = nerve_levelwise(&diagram, 2).unwrap();
            let nrel = simplicial_nerve(&rel.relative, 2, 2);
            assert_eq!(nrel.set.size(0, 0), ny.set.size(0, 0));
            let iso = iso_nrel_ny(&levels, &ny, &nrel);
            assert!(iso.holds(), "{}", iso.report);
            let (_, bar) = ybar_diagram(&rel, 2);
            assert!(validate_diagram(&bar).is_empty());
        }
    }
}
