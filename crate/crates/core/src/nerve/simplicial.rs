use crate::cat::{FiniteCategory, MorId, ObjId, RelativeCategory};
use crate::simp::SimplicialOperator;

use super::bisimplicial::LabelledBisimplicial;

/// A relative functor `p̂ × q̌ → X`, stored as a commuting grid.
///
/// `objects[i * (q+1) + j]` is the image of `(i, j)`; `horizontal[(i−1) * (q+1) + j]`
/// the image of `(i−1, j) → (i, j)`; `vertical[i * q + (j−1)]` the image of
/// `(i, j−1) → (i, j)`, always a weak equivalence. The derived order is the
/// lexicographic order of this encoding.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Grid {
    pub p: usize,
    pub q: usize,
    pub objects: Vec<ObjId>,
    pub horizontal: Vec<MorId>,
    pub vertical: Vec<MorId>,
}

impl Grid {
    pub fn object(&self, i: usize, j: usize) -> ObjId {
        self.objects[i * (self.q + 1) + j]
    }

    /// Image of `(i−1, j) → (i, j)`, `1 ≤ i ≤ p`.
    pub fn h(&self, i: usize, j: usize) -> MorId {
        self.horizontal[(i - 1) * (self.q + 1) + j]
    }

    /// Image of `(i, j−1) → (i, j)`, `1 ≤ j ≤ q`.
    pub fn v(&self, i: usize, j: usize) -> MorId {
        self.vertical[i * self.q + (j - 1)]
    }

    /// Precomposition with `α × β: p̂′ × q̌′ → p̂ × q̌` for monotone carriers
    /// `α: [p′] → [p]` and `β: [q′] → [q]`.
    pub fn reindex(&self, c: &FiniteCategory, alpha: &[usize], beta: &[usize]) -> Grid {
        let (p2, q2) = (alpha.len() - 1, beta.len() - 1);
        let hseg = |a: usize, b: usize, j: usize| (a + 1..=b).fold(c.identity(self.object(a, j)), |acc, i| c.comp(self.h(i, j), acc));
        let vseg = |i: usize, a: usize, b: usize| (a + 1..=b).fold(c.identity(self.object(i, a)), |acc, j| c.comp(self.v(i, j), acc));
        let mut objects = Vec::with_capacity((p2 + 1) * (q2 + 1));
        for &a in alpha {
            for &b in beta {
                objects.push(self.object(a, b));
            }
        }
        let mut horizontal = Vec::with_capacity(p2 * (q2 + 1));
        for w in alpha.windows(2) {
            for &b in beta {
                horizontal.push(hseg(w[0], w[1], b));
            }
        }
        let mut vertical = Vec::with_capacity((p2 + 1) * q2);
        for &a in alpha {
            for w in beta.windows(2) {
                vertical.push(vseg(a, w[0], w[1]));
            }
        }
        Grid { p: p2, q: q2, objects, horizontal, vertical }
    }
}

/// Every relative functor `p̂ × q̌ → X`, in lexicographic order. Columns are
/// `p`-chains; each further column is reached by weak-equivalence verticals
/// making every square commute.
pub fn enumerate_grids(x: &RelativeCategory, p: usize, q: usize) -> Vec<Grid> {
    let c = &x.underlying;
    let weq_out: Vec<Vec<MorId>> = (0..c.n_objects()).map(|o| c.out_of(o).iter().copied().filter(|&m| x.is_weq(m)).collect()).collect();
    let n = (p + 1) * (q + 1);
    let mut obj = vec![usize::MAX; n];
    let mut hor = vec![usize::MAX; p * (q + 1)];
    let mut ver = vec![usize::MAX; (p + 1) * q];
    let mut out = Vec::new();

    struct Ctx<'a> {
        c: &'a FiniteCategory,
        weq_out: &'a [Vec<MorId>],
        p: usize,
        q: usize,
    }

    // fill (i, j) in column-major order: column j, row i
    fn go(cx: &Ctx, i: usize, j: usize, obj: &mut [usize], hor: &mut [usize], ver: &mut [usize], out: &mut Vec<Grid>) {
        let (p, q) = (cx.p, cx.q);
        if j > q {
            out.push(Grid { p, q, objects: obj.to_vec(), horizontal: hor.to_vec(), vertical: ver.to_vec() });
            return;
        }
        let (ni, nj) = if i == p { (0, j + 1) } else { (i + 1, j) };
        let oi = |i: usize, j: usize| i * (q + 1) + j;
        let hi = |i: usize, j: usize| (i - 1) * (q + 1) + j;
        let vi = |i: usize, j: usize| i * q + (j - 1);
        if j == 0 {
            if i == 0 {
                for o in 0..cx.c.n_objects() {
                    obj[oi(0, 0)] = o;
                    go(cx, ni, nj, obj, hor, ver, out);
                }
            } else {
                for &m in cx.c.out_of(obj[oi(i - 1, 0)]) {
                    hor[hi(i, 0)] = m;
                    obj[oi(i, 0)] = cx.c.cod(m);
                    go(cx, ni, nj, obj, hor, ver, out);
                }
            }
            return;
        }
        for &v in &cx.weq_out[obj[oi(i, j - 1)]] {
            let target = cx.c.cod(v);
            ver[vi(i, j)] = v;
            obj[oi(i, j)] = target;
            if i == 0 {
                go(cx, ni, nj, obj, hor, ver, out);
                continue;
            }
            // h(i, j) ∘ v(i−1, j) = v(i, j) ∘ h(i, j−1)
            let lower = cx.c.comp(v, hor[hi(i, j - 1)]);
            let left = ver[vi(i - 1, j)];
            for &h in cx.c.hom(obj[oi(i - 1, j)], target) {
                if cx.c.comp(h, left) == lower {
                    hor[hi(i, j)] = h;
                    go(cx, ni, nj, obj, hor, ver, out);
                }
            }
        }
    }

    let cx = Ctx { c, weq_out: &weq_out, p, q };
    go(&cx, 0, 0, &mut obj, &mut hor, &mut ver, &mut out);
    out.sort_unstable();
    out
}

/// The simplicial nerve `N X`: cell `(p, q)` holds the relative functors
/// `p̂ × q̌ → X`; `p` is the outer index, `q` the inner one.
pub fn simplicial_nerve(x: &RelativeCategory, p_max: usize, q_max: usize) -> LabelledBisimplicial<Grid> {
    let cells = (0..=p_max).map(|p| (0..=q_max).map(|q| enumerate_grids(x, p, q)).collect()).collect();
    let c = &x.underlying;
    let id = |n: usize| -> Vec<usize> { (0..=n).collect() };
    LabelledBisimplicial::build(
        cells,
        &|p, q, g: &Grid, i| g.reindex(c, SimplicialOperator::face(p, i).carrier(), &id(q)),
        &|p, q, g: &Grid, i| g.reindex(c, SimplicialOperator::degeneracy(p, i).carrier(), &id(q)),
        &|p, q, g: &Grid, i| g.reindex(c, &id(p), SimplicialOperator::face(q, i).carrier()),
        &|p, q, g: &Grid, i| g.reindex(c, &id(p), SimplicialOperator::degeneracy(q, i).carrier()),
    )
    .expect("reindexed relative functors are relative functors")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cat::{Functor, RelativeCategory};
    use crate::nerve::{classical_nerve, validate_bisimplicial_set};

    /// Test oracle: all functors `p̂ × q̌ → X` sending weak equivalences to weak
    /// equivalences, by brute force over object and morphism assignments.
    fn brute_force_count(x: &RelativeCategory, p: usize, q: usize) -> usize {
        let src = RelativeCategory::hat(p).product(&RelativeCategory::check(q));
        let mut count = 0;
        let mut budget = crate::cat::SearchBudget::new(u64::MAX);
        let _ = crate::cat::enumerate_functors(&src.underlying, &x.underlying, &mut budget, |f: &Functor| {
            if crate::cat::is_relative_functor(f, &src, x) {
                count += 1;
            }
            std::ops::ControlFlow::Continue(())
        });
        count
    }

    #[test]
    fn small_nerves() {
        let n = simplicial_nerve(&RelativeCategory::hat(0), 2, 2);
        assert!(n.set.sizes().iter().flatten().all(|&s| s == 1));
        let hat1 = simplicial_nerve(&RelativeCategory::hat(1), 1, 1);
        assert_eq!((hat1.set.size(0, 0), hat1.set.size(1, 0), hat1.set.size(0, 1)), (2, 3, 2));
        let check1 = simplicial_nerve(&RelativeCategory::check(1), 1, 1);
        assert_eq!(check1.set.size(0, 1), 3);
        assert!(validate_bisimplicial_set(&check1.set).is_empty());
    }

    #[test]
    fn grid_enumeration_matches_brute_force() {
        let mut weird = RelativeCategory::check(2);
        // keep only identities and 0 → 1 as weak equivalences
        let c = weird.underlying.clone();
        weird = RelativeCategory::new(c.clone(), c.identities().iter().copied().chain([c.hom(0, 1)[0]]));
        for x in [RelativeCategory::hat(1), RelativeCategory::check(1), RelativeCategory::hat(2), weird] {
            for p in 0..=2 {
                for q in 0..=2 {
                    assert_eq!(enumerate_grids(&x, p, q).len(), brute_force_count(&x, p, q), "cell ({p},{q})");
                }
            }
        }
    }

    #[test]
    fn row_zero_is_the_classical_nerve() {
        let x = RelativeCategory::check(2);
        let n = simplicial_nerve(&x, 3, 1);
        let cl = classical_nerve(&x.underlying, 3);
        for p in 0..=3 {
            assert_eq!(n.set.size(p, 0), cl.size(p));
        }
        assert!(validate_bisimplicial_set(&n.set).is_empty());
    }
}
