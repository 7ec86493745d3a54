use crate::cat::ObjId;
use crate::nerve::LabelledBisimplicial;
use crate::simp::SimplicialOperator;

use super::FiniteSimplicialCategory;

/// A cell of `(ZA)_{k,p}`: objects `A_0..A_k` and simplices
/// `a_i ∈ hom(A_{i−1}, A_i)_p`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ZLabel {
    pub objects: Vec<ObjId>,
    pub simplices: Vec<usize>,
}

pub type FlippedNerve = LabelledBisimplicial<ZLabel>;

/// Every `(A_0..A_k; a_1..a_k)` at inner dimension `p`, lexicographically.
fn cells(x: &FiniteSimplicialCategory, k: usize, p: usize) -> Vec<ZLabel> {
    fn go(x: &FiniteSimplicialCategory, k: usize, p: usize, cur: &mut ZLabel, out: &mut Vec<ZLabel>) {
        if cur.objects.len() == k + 1 {
            out.push(cur.clone());
            return;
        }
        let last = *cur.objects.last().expect("started");
        for next in 0..x.n_objects() {
            cur.objects.push(next);
            for a in 0..x.hom(last, next).size(p) {
                cur.simplices.push(a);
                go(x, k, p, cur, out);
                cur.simplices.pop();
            }
            cur.objects.pop();
        }
    }
    let mut out = Vec::new();
    for a0 in 0..x.n_objects() {
        let mut cur = ZLabel { objects: vec![a0], simplices: Vec::new() };
        go(x, k, p, &mut cur, &mut out);
    }
    out
}

/// The flipped nerve `ZA`, outer index `k` (object sequences), inner index
/// `p` (the simplicial direction of the homs).
pub fn flipped_nerve(x: &FiniteSimplicialCategory, k_max: usize) -> FlippedNerve {
    let top = x.truncation();
    let all = (0..=k_max).map(|k| (0..=top).map(|p| cells(x, k, p)).collect()).collect();
    let outer_face = |k: usize, p: usize, l: &ZLabel, i: usize| {
        let mut objects = l.objects.clone();
        objects.remove(i);
        let mut simplices = l.simplices.clone();
        if i == 0 {
            simplices.remove(0);
        } else if i == k {
            simplices.pop();
        } else {
            let o = &l.objects;
            let composite = x.compose(o[i - 1], o[i], o[i + 1], p, l.simplices[i - 1], l.simplices[i]);
            simplices.splice(i - 1..=i, [composite]);
        }
        ZLabel { objects, simplices }
    };
    let outer_degen = |_k: usize, p: usize, l: &ZLabel, i: usize| {
        let mut objects = l.objects.clone();
        objects.insert(i, l.objects[i]);
        let mut simplices = l.simplices.clone();
        simplices.insert(i, x.unit(l.objects[i], p));
        ZLabel { objects, simplices }
    };
    let inner = |l: &ZLabel, t: &SimplicialOperator| ZLabel {
        objects: l.objects.clone(),
        simplices: l
            .simplices
            .iter()
            .enumerate()
            .map(|(j, &a)| x.hom(l.objects[j], l.objects[j + 1]).act(t, a).expect("inside truncation"))
            .collect(),
    };
    LabelledBisimplicial::build(
        all,
        &outer_face,
        &outer_degen,
        &|_, p, l, i| inner(l, &SimplicialOperator::face(p, i)),
        &|_, p, l, i| inner(l, &SimplicialOperator::degeneracy(p, i)),
    )
    .expect("flipped nerve rules stay inside the cells")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nerve::validate_bisimplicial_set;
    use crate::scat::tests::d2;

    #[test]
    fn small_examples() {
        let z = flipped_nerve(&FiniteSimplicialCategory::terminal(2), 2);
        assert!(z.set.sizes().iter().flatten().all(|&s| s == 1));
        let z = flipped_nerve(&d2(2), 1);
        assert!(validate_bisimplicial_set(&z.set).is_empty());
        assert_eq!(z.set.sizes(), vec![vec![2, 2, 2], vec![3, 3, 3]]);
        let discrete = FiniteSimplicialCategory::preorder(2, 1, |a, b| a == b);
        assert_eq!(flipped_nerve(&discrete, 1).set.size(1, 0), 2);
    }

    #[test]
    fn row_sizes_match_a_recount() {
        let x = FiniteSimplicialCategory::preorder(3, 1, |a, b| a <= b || (a < 2 && b < 2));
        let z = flipped_nerve(&x, 3);
        assert!(validate_bisimplicial_set(&z.set).is_empty());
        for k in 0..=3 {
            for p in 0..=1 {
                // Σ over sequences of Π |hom|: count sequences whose consecutive pairs are related
                let mut count = 0;
                let total = 3usize.pow(k as u32 + 1);
                for code in 0..total {
                    let seq: Vec<usize> = (0..=k).map(|j| code / 3usize.pow(j as u32) % 3).collect();
                    count += seq.windows(2).map(|w| x.hom(w[0], w[1]).size(p)).product::<usize>();
                }
                assert_eq!(z.set.size(k, p), count);
            }
        }
    }
}
