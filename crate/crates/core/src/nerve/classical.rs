use crate::cat::{FiniteCategory, Functor, MorId, ObjId};
use crate::simp::{SimplicialMap, SimplicialOperator, TruncatedSimplicialSet};

/// The nerve of a finite category truncated at `K`: `k`-simplices are chains
/// `x_0 → x_1 → ⋯ → x_k` of composable morphisms, ordered lexicographically by
/// `(x_0, arrows)`.
#[derive(Clone, Debug)]
pub struct ClassicalNerve {
    pub set: TruncatedSimplicialSet,
    starts: Vec<Vec<ObjId>>,
    /// Arrows of every `k`-chain, flattened with stride `k`.
    arrows: Vec<Vec<MorId>>,
    /// `first[k][j]`: index of the first `k`-chain extending the `(k−1)`-chain `j`.
    first: Vec<Vec<usize>>,
}

impl ClassicalNerve {
    pub fn truncation(&self) -> usize {
        self.set.truncation()
    }

    pub fn size(&self, k: usize) -> usize {
        self.set.size(k)
    }

    pub fn chain(&self, k: usize, x: usize) -> (ObjId, &[MorId]) {
        (self.starts[k][x], &self.arrows[k][x * k..(x + 1) * k])
    }

    /// Objects `x_0..x_k` of a chain.
    pub fn objects(&self, c: &FiniteCategory, k: usize, x: usize) -> Vec<ObjId> {
        let (start, arrows) = self.chain(k, x);
        std::iter::once(start).chain(arrows.iter().map(|&m| c.cod(m))).collect()
    }

    /// Index of the chain starting at `start` with the given arrows, if it is a
    /// composable chain within the truncation.
    pub fn index_of(&self, c: &FiniteCategory, start: ObjId, arrows: &[MorId]) -> Option<usize> {
        if arrows.len() > self.truncation() || start >= c.n_objects() {
            return None;
        }
        let mut idx = start;
        let mut last = start;
        for (i, &m) in arrows.iter().enumerate() {
            if m >= c.n_morphisms() || c.dom(m) != last {
                return None;
            }
            idx = self.first[i + 1][idx] + c.out_position(m);
            last = c.cod(m);
        }
        Some(idx)
    }
}

/// The chain `x_{α(0)} → ⋯ → x_{α(k′)}` obtained by composing (or inserting
/// identities into) a chain along a monotone map `α`.
pub fn reindex_chain(c: &FiniteCategory, start: ObjId, arrows: &[MorId], alpha: &[usize]) -> (ObjId, Vec<MorId>) {
    let objects: Vec<ObjId> = std::iter::once(start).chain(arrows.iter().map(|&m| c.cod(m))).collect();
    let segment = |a: usize, b: usize| arrows[a..b].iter().fold(c.identity(objects[a]), |acc, &m| c.comp(m, acc));
    let new_arrows = alpha.windows(2).map(|w| segment(w[0], w[1])).collect();
    (objects[alpha[0]], new_arrows)
}

/// The classical nerve of `c` truncated at `k_max`.
pub fn classical_nerve(c: &FiniteCategory, k_max: usize) -> ClassicalNerve {
    let mut starts: Vec<Vec<ObjId>> = vec![(0..c.n_objects()).collect()];
    let mut arrows: Vec<Vec<MorId>> = vec![Vec::new()];
    let mut lasts: Vec<ObjId> = (0..c.n_objects()).collect();
    let mut first = vec![Vec::new()];
    for k in 1..=k_max {
        let (prev_starts, prev_arrows) = (&starts[k - 1], &arrows[k - 1]);
        let mut s = Vec::new();
        let mut a = Vec::new();
        let mut l = Vec::new();
        let mut f = Vec::with_capacity(prev_starts.len() + 1);
        for j in 0..prev_starts.len() {
            f.push(s.len());
            for &m in c.out_of(lasts[j]) {
                s.push(prev_starts[j]);
                a.extend_from_slice(&prev_arrows[j * (k - 1)..(j + 1) * (k - 1)]);
                a.push(m);
                l.push(c.cod(m));
            }
        }
        f.push(s.len());
        starts.push(s);
        arrows.push(a);
        lasts = l;
        first.push(f);
    }
    let mut nerve = ClassicalNerve {
        set: TruncatedSimplicialSet::empty(k_max),
        starts,
        arrows,
        first,
    };
    let sizes: Vec<usize> = nerve.starts.iter().map(Vec::len).collect();
    let map_by = |nerve: &ClassicalNerve, k: usize, t: &SimplicialOperator| -> Vec<usize> {
        (0..sizes[k])
            .map(|x| {
                let (start, arr) = nerve.chain(k, x);
                let (s, a) = reindex_chain(c, start, arr, t.carrier());
                nerve.index_of(c, s, &a).expect("reindexed chain is a chain")
            })
            .collect()
    };
    let mut faces = vec![Vec::new()];
    for k in 1..=k_max {
        faces.push((0..=k).map(|i| map_by(&nerve, k, &SimplicialOperator::face(k, i))).collect());
    }
    let degens = (0..k_max)
        .map(|k| (0..=k).map(|i| map_by(&nerve, k, &SimplicialOperator::degeneracy(k, i))).collect())
        .collect();
    nerve.set = TruncatedSimplicialSet::from_tables(sizes, faces, degens).expect("nerve tables are well shaped");
    nerve
}

/// The simplicial map `n(F): n(C) → n(D)`.
pub fn nerve_map(
    f: &Functor,
    src: &FiniteCategory,
    tgt: &FiniteCategory,
    src_nerve: &ClassicalNerve,
    tgt_nerve: &ClassicalNerve,
) -> SimplicialMap {
    debug_assert_eq!(src.n_objects(), f.objects.len());
    let maps = (0..=src_nerve.truncation())
        .map(|k| {
            (0..src_nerve.size(k))
                .map(|x| {
                    let (start, arrows) = src_nerve.chain(k, x);
                    let image: Vec<MorId> = arrows.iter().map(|&m| f.mor(m)).collect();
                    tgt_nerve.index_of(tgt, f.obj(start), &image).expect("functors send chains to chains")
                })
                .collect()
        })
        .collect();
    SimplicialMap { maps }
}
