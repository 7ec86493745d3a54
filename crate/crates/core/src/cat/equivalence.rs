//! Exhaustive search for functors and equivalences between small categories.

use std::ops::ControlFlow;

use super::{check_natural_transformation, FiniteCategory, Functor, MorId, NaturalTransformation, ObjId};

/// Number of backtracking nodes a search may visit.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchBudget {
    remaining: u64,
    spent: u64,
}

impl SearchBudget {
    pub fn new(limit: u64) -> Self {
        Self { remaining: limit, spent: 0 }
    }

    pub fn spent(&self) -> u64 {
        self.spent
    }

    fn tick(&mut self) -> Result<(), Exhausted> {
        if self.remaining == 0 {
            return Err(Exhausted);
        }
        self.remaining -= 1;
        self.spent += 1;
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Exhausted;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivalenceWitness {
    pub forward: Functor,
    pub backward: Functor,
    /// `backward ∘ forward ⇒ id_C`, componentwise invertible.
    pub unit: NaturalTransformation,
    /// `forward ∘ backward ⇒ id_D`, componentwise invertible.
    pub counit: NaturalTransformation,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EquivalenceSearch {
    Found(EquivalenceWitness),
    /// The whole search space was enumerated without finding a witness.
    NotEquivalent,
    /// The budget ran out before the space was exhausted.
    BudgetExhausted { explored: u64 },
}

/// Composable triples `(g, f, g∘f)` indexed by whichever member is assigned last in `order`.
fn triples_by_last(c: &FiniteCategory, order: &[MorId]) -> Vec<Vec<(MorId, MorId, MorId)>> {
    let mut rank = vec![0; c.n_morphisms()];
    for (i, &m) in order.iter().enumerate() {
        rank[m] = i;
    }
    let mut by_last = vec![Vec::new(); c.n_morphisms()];
    for (g, f, gf) in c.composable_pairs() {
        let gf = gf.expect("complete composition table");
        let last = [g, f, gf].into_iter().max_by_key(|&m| rank[m]).unwrap();
        by_last[last].push((g, f, gf));
    }
    by_last
}

struct FunctorEnumerator<'a> {
    src: &'a FiniteCategory,
    tgt: &'a FiniteCategory,
    order: Vec<MorId>,
    checks: Vec<Vec<(MorId, MorId, MorId)>>,
    current: Functor,
}

impl FunctorEnumerator<'_> {
    fn objects(
        &mut self,
        x: ObjId,
        budget: &mut SearchBudget,
        visit: &mut dyn FnMut(&Functor, &mut SearchBudget) -> Result<ControlFlow<()>, Exhausted>,
    ) -> Result<ControlFlow<()>, Exhausted> {
        if x == self.src.n_objects() {
            for y in 0..self.src.n_objects() {
                let id = self.src.identity(y);
                self.current.morphisms[id] = self.tgt.identity(self.current.objects[y]);
            }
            return self.morphisms(self.src.n_objects(), budget, visit);
        }
        for y in 0..self.tgt.n_objects() {
            budget.tick()?;
            self.current.objects[x] = y;
            if self.objects(x + 1, budget, visit)?.is_break() {
                return Ok(ControlFlow::Break(()));
            }
        }
        Ok(ControlFlow::Continue(()))
    }

    fn consistent(&self, m: MorId) -> bool {
        let f = &self.current.morphisms;
        self.checks[m].iter().all(|&(g, h, gh)| self.tgt.compose(f[g], f[h]) == Some(f[gh]))
    }

    fn morphisms(
        &mut self,
        pos: usize,
        budget: &mut SearchBudget,
        visit: &mut dyn FnMut(&Functor, &mut SearchBudget) -> Result<ControlFlow<()>, Exhausted>,
    ) -> Result<ControlFlow<()>, Exhausted> {
        if pos == self.order.len() {
            return visit(&self.current, budget);
        }
        let m = self.order[pos];
        if self.src.is_identity(m) {
            if !self.consistent(m) {
                return Ok(ControlFlow::Continue(()));
            }
            return self.morphisms(pos + 1, budget, visit);
        }
        let a = self.src.arrow(m);
        let (fa, fb) = (self.current.objects[a.dom], self.current.objects[a.cod]);
        let candidates = self.tgt.hom(fa, fb).to_vec();
        for n in candidates {
            budget.tick()?;
            self.current.morphisms[m] = n;
            if self.consistent(m) && self.morphisms(pos + 1, budget, visit)?.is_break() {
                return Ok(ControlFlow::Break(()));
            }
        }
        Ok(ControlFlow::Continue(()))
    }
}

fn run_functor_search(
    src: &FiniteCategory,
    tgt: &FiniteCategory,
    budget: &mut SearchBudget,
    visit: &mut dyn FnMut(&Functor, &mut SearchBudget) -> Result<ControlFlow<()>, Exhausted>,
) -> Result<ControlFlow<()>, Exhausted> {
    // identities first: their images are forced by the object map
    let mut order: Vec<MorId> = src.identities().to_vec();
    order.extend((0..src.n_morphisms()).filter(|&m| !src.is_identity(m)));
    let checks = triples_by_last(src, &order);
    let mut e = FunctorEnumerator {
        src,
        tgt,
        order,
        checks,
        current: Functor { objects: vec![0; src.n_objects()], morphisms: vec![0; src.n_morphisms()] },
    };
    if src.n_objects() == 0 {
        return visit(&e.current, budget);
    }
    e.objects(0, budget, visit)
}

/// Enumerates every functor `src → tgt`, lexicographically by object map and then
/// by morphism map. Returns `Err(explored)` when the budget runs out.
pub fn enumerate_functors(
    src: &FiniteCategory,
    tgt: &FiniteCategory,
    budget: &mut SearchBudget,
    mut visit: impl FnMut(&Functor) -> ControlFlow<()>,
) -> Result<ControlFlow<()>, u64> {
    run_functor_search(src, tgt, budget, &mut |f, _| Ok(visit(f))).map_err(|_| budget.spent())
}

/// Finds componentwise-invertible `eta: h ⇒ id_C` by backtracking over objects.
fn natural_iso_to_identity(
    c: &FiniteCategory,
    h: &Functor,
    budget: &mut SearchBudget,
) -> Result<Option<NaturalTransformation>, Exhausted> {
    let n = c.n_objects();
    // morphisms to check once both endpoints are assigned, keyed by the later endpoint
    let mut squares: Vec<Vec<MorId>> = vec![Vec::new(); n];
    for (m, a) in c.arrows().iter().enumerate() {
        squares[a.dom.max(a.cod)].push(m);
    }
    let mut comps = vec![0; n];

    fn go(
        x: ObjId,
        c: &FiniteCategory,
        h: &Functor,
        squares: &[Vec<MorId>],
        comps: &mut Vec<MorId>,
        budget: &mut SearchBudget,
    ) -> Result<bool, Exhausted> {
        if x == c.n_objects() {
            return Ok(true);
        }
        for &cand in c.hom(h.obj(x), x) {
            budget.tick()?;
            if !c.is_isomorphism(cand) {
                continue;
            }
            comps[x] = cand;
            let natural = squares[x].iter().all(|&m| {
                let a = c.arrow(m);
                c.compose(comps[a.cod], h.mor(m)) == c.compose(m, comps[a.dom])
            });
            if natural && go(x + 1, c, h, squares, comps, budget)? {
                return Ok(true);
            }
        }
        Ok(false)
    }

    Ok(go(0, c, h, &squares, &mut comps, budget)?.then_some(NaturalTransformation { components: comps }))
}

/// Searches for an equivalence `C ≃ D` as functors `F`, `G` with natural
/// isomorphisms `GF ⇒ id` and `FG ⇒ id`.
pub fn equivalence_of_categories_search(
    c: &FiniteCategory,
    d: &FiniteCategory,
    budget: SearchBudget,
) -> EquivalenceSearch {
    let mut budget = budget;
    let mut found = None;
    let outcome = run_functor_search(c, d, &mut budget, &mut |f, budget| {
        // equivalences are fully faithful and essentially surjective
        if !f.is_fully_faithful(c, d) || !f.is_essentially_surjective(d) {
            return Ok(ControlFlow::Continue(()));
        }
        let f = f.clone();
        let mut inner = |g: &Functor, budget: &mut SearchBudget| -> Result<ControlFlow<()>, Exhausted> {
            let Some(unit) = natural_iso_to_identity(c, &f.then(g), budget)? else {
                return Ok(ControlFlow::Continue(()));
            };
            let Some(counit) = natural_iso_to_identity(d, &g.then(&f), budget)? else {
                return Ok(ControlFlow::Continue(()));
            };
            found = Some(EquivalenceWitness { forward: f.clone(), backward: g.clone(), unit, counit });
            Ok(ControlFlow::Break(()))
        };
        run_functor_search(d, c, budget, &mut inner)
    });
    match (outcome, found) {
        (_, Some(w)) => {
            debug_assert!(check_natural_transformation(c, c, &w.forward.then(&w.backward), &Functor::identity(c), &w.unit).is_empty());
            EquivalenceSearch::Found(w)
        }
        (Ok(_), None) => EquivalenceSearch::NotEquivalent,
        (Err(Exhausted), None) => EquivalenceSearch::BudgetExhausted { explored: budget.spent() },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cat::validate_category;

    fn check_witness(c: &FiniteCategory, d: &FiniteCategory, w: &EquivalenceWitness) {
        assert!(w.forward.validate(c, d).is_empty());
        assert!(w.backward.validate(d, c).is_empty());
        let gf = w.forward.then(&w.backward);
        let fg = w.backward.then(&w.forward);
        assert!(check_natural_transformation(c, c, &gf, &Functor::identity(c), &w.unit).is_empty());
        assert!(check_natural_transformation(d, d, &fg, &Functor::identity(d), &w.counit).is_empty());
        assert!(w.unit.components.iter().all(|&m| c.is_isomorphism(m)));
        assert!(w.counit.components.iter().all(|&m| d.is_isomorphism(m)));
    }

    #[test]
    fn functor_counts_between_linear_orders() {
        // functors [1] → [2] are monotone maps on objects: C(4, 2) = 6
        let (a, b) = (FiniteCategory::linear_order(1), FiniteCategory::linear_order(2));
        let mut n = 0;
        let r = enumerate_functors(&a, &b, &mut SearchBudget::new(10_000), |f| {
            assert!(f.validate(&a, &b).is_empty());
            n += 1;
            ControlFlow::Continue(())
        });
        assert!(r.is_ok());
        assert_eq!(n, 6);
    }

    #[test]
    fn identity_witness_for_arrow_category() {
        let c = FiniteCategory::linear_order(1);
        match equivalence_of_categories_search(&c, &c, SearchBudget::new(10_000)) {
            EquivalenceSearch::Found(w) => {
                check_witness(&c, &c, &w);
                assert_eq!(w.forward, Functor::identity(&c));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn point_is_equivalent_to_chaotic_pair() {
        let point = FiniteCategory::linear_order(0);
        let pair = FiniteCategory::chaotic(2);
        assert!(validate_category(&pair).is_empty());
        assert_eq!(pair.n_morphisms(), 4);
        // one functor point → pair per object of the pair
        let mut count = 0;
        let _ = enumerate_functors(&point, &pair, &mut SearchBudget::new(100), |_| {
            count += 1;
            ControlFlow::Continue(())
        })
        .unwrap();
        assert_eq!(count, 2);
        match equivalence_of_categories_search(&point, &pair, SearchBudget::new(10_000)) {
            EquivalenceSearch::Found(w) => check_witness(&point, &pair, &w),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn point_is_not_equivalent_to_two_points() {
        let point = FiniteCategory::linear_order(0);
        let two = FiniteCategory::discrete(2);
        assert_eq!(
            equivalence_of_categories_search(&point, &two, SearchBudget::new(10_000)),
            EquivalenceSearch::NotEquivalent
        );
    }

    #[test]
    fn tiny_budget_is_reported_as_exhausted() {
        let c = FiniteCategory::linear_order(3);
        assert!(matches!(
            equivalence_of_categories_search(&c, &c, SearchBudget::new(3)),
            EquivalenceSearch::BudgetExhausted { .. }
        ));
    }
}
