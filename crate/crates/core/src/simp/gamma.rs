use crate::cat::{Arrow, FiniteCategory, Functor, MorId, ObjId};

use super::{OpId, OperatorTable, SimpError, SimplicialMap, SimplicialOperator, TruncatedSimplicialSet};
use crate::nerve::{classical_nerve, ClassicalNerve};

/// The category of simplices of a truncated simplicial set, degenerate
/// simplices included.
///
/// Objects are pairs `(p, x)` with `x ∈ X_p`, ordered by dimension then index.
/// In `Γᵒᵖ` a morphism `(p1, x1) → (p2, t·x1)` is an operator `t: p1 ⇒ p2`;
/// `Γ` has the same labels with every arrow reversed.
#[derive(Clone, Debug)]
pub struct CategoryOfSimplices {
    pub category: FiniteCategory,
    pub ops: OperatorTable,
    objects: Vec<(usize, usize)>,
    object_ids: Vec<Vec<ObjId>>,
    /// `(source object in Γᵒᵖ, operator)` per morphism.
    morphisms: Vec<(ObjId, OpId)>,
    mor_base: Vec<usize>,
    op_pos: Vec<usize>,
    opposite: bool,
}

impl CategoryOfSimplices {
    pub fn object(&self, o: ObjId) -> (usize, usize) {
        self.objects[o]
    }

    pub fn object_id(&self, p: usize, x: usize) -> ObjId {
        self.object_ids[p][x]
    }

    /// The operator labelling a morphism and its source object in `Γᵒᵖ`.
    pub fn morphism(&self, m: MorId) -> (ObjId, OpId) {
        self.morphisms[m]
    }

    /// The morphism labelled by operator `t` out of `(p, x)` in `Γᵒᵖ`.
    pub fn morphism_id(&self, o: ObjId, t: OpId) -> MorId {
        debug_assert_eq!(self.ops.op(t).from_dim(), self.objects[o].0);
        self.mor_base[o] + self.op_pos[t]
    }

    pub fn is_opposite(&self) -> bool {
        self.opposite
    }
}

/// `Γᵒᵖ X`.
pub fn gamma_op(x: &TruncatedSimplicialSet) -> CategoryOfSimplices {
    let top = x.truncation();
    let ops = OperatorTable::new(top);
    let mut op_pos = vec![0; ops.len()];
    for p in 0..=top {
        for (k, &t) in ops.from(p).iter().enumerate() {
            op_pos[t] = k;
        }
    }
    let mut objects = Vec::new();
    let mut object_ids = Vec::with_capacity(top + 1);
    for p in 0..=top {
        object_ids.push((0..x.size(p)).map(|s| {
            objects.push((p, s));
            objects.len() - 1
        }).collect::<Vec<_>>());
    }
    let mut morphisms = Vec::new();
    let mut arrows = Vec::new();
    let mut mor_base = Vec::with_capacity(objects.len());
    for (o, &(p, s)) in objects.iter().enumerate() {
        mor_base.push(morphisms.len());
        for &t in ops.from(p) {
            let op = ops.op(t);
            let target = x.act(op, s).expect("inside truncation");
            morphisms.push((o, t));
            arrows.push(Arrow { dom: o, cod: object_ids[op.to_dim()][target] });
        }
    }
    let identity: Vec<MorId> = objects.iter().enumerate().map(|(o, &(p, _))| mor_base[o] + op_pos[ops.identity(p)]).collect();
    let category = FiniteCategory::from_fn(objects.len(), arrows, identity, |g, f| {
        let (src, t1) = morphisms[f];
        let t2 = morphisms[g].1;
        mor_base[src] + op_pos[ops.compose(t2, t1).expect("composable operators")]
    })
    .expect("category of simplices is well formed");
    CategoryOfSimplices { category, ops, objects, object_ids, morphisms, mor_base, op_pos, opposite: false }
}

/// `Γ X`, the opposite of [`gamma_op`] with the same labels.
pub fn gamma(x: &TruncatedSimplicialSet) -> CategoryOfSimplices {
    let mut g = gamma_op(x);
    g.category = g.category.opposite();
    g.opposite = true;
    g
}

/// The functor `Γ(f)` (or `Γᵒᵖ(f)`) induced by a simplicial map:
/// `(p, x) ↦ (p, f x)`, operators unchanged.
pub fn gamma_map(f: &SimplicialMap, src: &CategoryOfSimplices, tgt: &CategoryOfSimplices) -> Functor {
    let objects: Vec<ObjId> = src.objects.iter().map(|&(p, s)| tgt.object_id(p, f.apply(p, s))).collect();
    let morphisms = src.morphisms.iter().map(|&(o, t)| {
        let t2 = tgt.ops.id_of(src.ops.op(t)).expect("same truncation");
        tgt.morphism_id(objects[o], t2)
    }).collect();
    Functor { objects, morphisms }
}

/// Latch's last-vertex map `n Γ X → X` in dimensions `≤ K`, together with
/// the nerve it is defined on.
#[derive(Clone, Debug)]
pub struct LastVertexMap {
    pub gamma: CategoryOfSimplices,
    pub nerve: ClassicalNerve,
    /// `X` truncated at `K`.
    pub target: TruncatedSimplicialSet,
    pub map: SimplicialMap,
}

/// A `q`-chain `(p_0, x_0) → ⋯ → (p_q, x_q)` in `Γ X` with arrows `α_i: [p_{i−1}] → [p_i]`
/// goes to `φ*(x_q)` where `φ(i) = (α_q ∘ ⋯ ∘ α_{i+1})(p_i)`.
pub fn last_vertex_map(x: &TruncatedSimplicialSet, k: usize) -> Result<LastVertexMap, SimpError> {
    if k > x.truncation() {
        return Err(SimpError::OutsideTruncation { dim: k, truncation: x.truncation() });
    }
    let g = gamma(x);
    let nerve = classical_nerve(&g.category, k);
    let target = x.truncate(k)?;
    let mut maps = Vec::with_capacity(k + 1);
    for q in 0..=k {
        let mut level = Vec::with_capacity(nerve.size(q));
        for s in 0..nerve.size(q) {
            let objects = nerve.objects(&g.category, q, s);
            let arrows = nerve.chain(q, s).1;
            let (p_top, x_top) = g.object(objects[q]);
            let mut phi = vec![0; q + 1];
            for i in 0..=q {
                let mut v = g.object(objects[i]).0;
                for &m in &arrows[i..] {
                    v = g.ops.op(g.morphism(m).1).carrier()[v];
                }
                phi[i] = v;
            }
            let t = SimplicialOperator::new(p_top, q, phi)?;
            level.push(x.act(&t, x_top)?);
        }
        maps.push(level);
    }
    Ok(LastVertexMap { gamma: g, nerve, target, map: SimplicialMap { maps } })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cat::validate_category;
    use crate::simp::standard_simplex;

    #[test]
    fn last_vertex_examples() {
        let d1 = standard_simplex(1, 2);
        let lv = last_vertex_map(&d1.set, 2).unwrap();
        assert!(lv.map.validate(&lv.nerve.set, &lv.target).is_empty());
        let edge = d1.index_of(1, &vec![0, 1]).unwrap();
        let o = lv.gamma.object_id(1, edge);
        assert_eq!(d1.label(0, lv.map.apply(0, o)), &vec![1]);
        // (0, vertex 0) → (1, edge) in Γ is the operator 1 ⇒ 0 with carrier [0]
        let v0 = d1.index_of(0, &vec![0]).unwrap();
        let t = lv.gamma.ops.id_of(&SimplicialOperator::new(1, 0, vec![0]).unwrap()).unwrap();
        let m = lv.gamma.morphism_id(o, t);
        assert_eq!(lv.gamma.category.dom(m), lv.gamma.object_id(0, v0));
        let chain = lv.nerve.index_of(&lv.gamma.category, lv.gamma.object_id(0, v0), &[m]).unwrap();
        assert_eq!(lv.map.apply(1, chain), edge);
        let pt = standard_simplex(0, 2).set;
        let lv = last_vertex_map(&pt, 2).unwrap();
        assert!(lv.map.maps.iter().flatten().all(|&s| s == 0));
        assert!(last_vertex_map(&pt, 3).is_err());
    }

    #[test]
    fn gamma_of_a_point() {
        // one simplex per dimension, one morphism per operator
        let pt = standard_simplex(0, 2).set;
        let g = gamma_op(&pt);
        assert_eq!(g.category.n_objects(), 3);
        assert_eq!(g.category.n_morphisms(), g.ops.len());
        assert!(validate_category(&g.category).is_empty());
    }

    #[test]
    fn gamma_of_interval_truncated_at_one() {
        let d1 = standard_simplex(1, 1).set;
        let g = gamma_op(&d1);
        // objects: 2 vertices + 3 edges; each vertex has 1 + 1 maps out, each edge 2 + 3
        assert_eq!(g.category.n_objects(), 5);
        assert_eq!(g.category.n_morphisms(), 2 * 2 + 3 * 5);
        assert!(validate_category(&g.category).is_empty());
        let op = gamma(&d1);
        assert!(validate_category(&op.category).is_empty());
        assert_eq!(op.category.dom(0), g.category.cod(0));
    }

    #[test]
    fn induced_functor_is_a_functor() {
        let d1 = standard_simplex(1, 2).set;
        let pt = standard_simplex(0, 2).set;
        let f = SimplicialMap::terminal(&d1);
        let (src, tgt) = (gamma(&d1), gamma(&pt));
        assert!(gamma_map(&f, &src, &tgt).validate(&src.category, &tgt.category).is_empty());
    }
}
