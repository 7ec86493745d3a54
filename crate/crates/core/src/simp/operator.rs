use std::collections::HashMap;

use crate::cat::{Arrow, FiniteCategory};

use super::SimpError;

/// A simplicial operator from dimension `from_dim` to dimension `to_dim`,
/// encoded by its monotone carrier `[to_dim] → [from_dim]`.
///
/// The operator acts `X_from → X_to`; the composite `t2 ∘ t1` (first `t1`)
/// has carrier `carrier(t1) ∘ carrier(t2)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SimplicialOperator {
    from_dim: usize,
    to_dim: usize,
    carrier: Vec<usize>,
}

impl SimplicialOperator {
    pub fn new(from_dim: usize, to_dim: usize, carrier: Vec<usize>) -> Result<Self, SimpError> {
        if carrier.len() != to_dim + 1
            || carrier.iter().any(|&v| v > from_dim)
            || carrier.windows(2).any(|w| w[0] > w[1])
        {
            return Err(SimpError::BadOperator { from_dim, to_dim, carrier });
        }
        Ok(Self { from_dim, to_dim, carrier })
    }

    pub fn identity(p: usize) -> Self {
        Self { from_dim: p, to_dim: p, carrier: (0..=p).collect() }
    }

    /// The face operator `d_i`: dimension `n` to `n - 1`, skipping vertex `i`.
    pub fn face(n: usize, i: usize) -> Self {
        assert!(n >= 1 && i <= n);
        Self { from_dim: n, to_dim: n - 1, carrier: (0..=n).filter(|&v| v != i).collect() }
    }

    /// The degeneracy operator `s_i`: dimension `n` to `n + 1`, repeating vertex `i`.
    pub fn degeneracy(n: usize, i: usize) -> Self {
        assert!(i <= n);
        let mut carrier: Vec<usize> = (0..=n).collect();
        carrier.insert(i, i);
        Self { from_dim: n, to_dim: n + 1, carrier }
    }

    pub fn from_dim(&self) -> usize {
        self.from_dim
    }

    pub fn to_dim(&self) -> usize {
        self.to_dim
    }

    pub fn carrier(&self) -> &[usize] {
        &self.carrier
    }

    pub fn is_identity(&self) -> bool {
        self.from_dim == self.to_dim && self.carrier.iter().enumerate().all(|(i, &v)| i == v)
    }

    /// `self ∘ first`: apply `first`, then `self`.
    pub fn compose(&self, first: &SimplicialOperator) -> Result<SimplicialOperator, SimpError> {
        if first.to_dim != self.from_dim {
            return Err(SimpError::DimensionMismatch { expected: self.from_dim, got: first.to_dim });
        }
        Ok(SimplicialOperator {
            from_dim: first.from_dim,
            to_dim: self.to_dim,
            carrier: self.carrier.iter().map(|&i| first.carrier[i]).collect(),
        })
    }

    /// Every operator `from_dim ⇒ to_dim`, carriers in lexicographic order.
    pub fn all(from_dim: usize, to_dim: usize) -> Vec<SimplicialOperator> {
        let mut out = Vec::new();
        let mut carrier = Vec::with_capacity(to_dim + 1);
        fn go(from: usize, len: usize, carrier: &mut Vec<usize>, out: &mut Vec<SimplicialOperator>, to: usize) {
            if carrier.len() == len {
                out.push(SimplicialOperator { from_dim: from, to_dim: to, carrier: carrier.clone() });
                return;
            }
            let lo = carrier.last().copied().unwrap_or(0);
            for v in lo..=from {
                carrier.push(v);
                go(from, len, carrier, out, to);
                carrier.pop();
            }
        }
        go(from_dim, to_dim + 1, &mut carrier, &mut out, to_dim);
        out
    }

    /// Vertices of `[from_dim]` missed by the carrier, ascending. Deleting them
    /// (largest first) is the face part of the epi-mono factorization.
    pub fn missing_vertices(&self) -> Vec<usize> {
        let mut hit = vec![false; self.from_dim + 1];
        for &v in &self.carrier {
            hit[v] = true;
        }
        (0..=self.from_dim).filter(|&v| !hit[v]).collect()
    }

    /// Positions `i` with `carrier[i] == carrier[i + 1]`, ascending. Applying
    /// `s_i` in this order is the degeneracy part of the factorization.
    pub fn repeated_positions(&self) -> Vec<usize> {
        (0..self.to_dim).filter(|&i| self.carrier[i] == self.carrier[i + 1]).collect()
    }
}

/// Composite `t2 ∘ t1`.
pub fn operator_compose(t2: &SimplicialOperator, t1: &SimplicialOperator) -> Result<SimplicialOperator, SimpError> {
    t2.compose(t1)
}

pub type OpId = usize;

/// All operators between dimensions `≤ max_dim`, organised as a category whose
/// objects are dimensions and whose morphisms are operators.
#[derive(Clone, Debug)]
pub struct OperatorTable {
    max_dim: usize,
    ops: Vec<SimplicialOperator>,
    index: HashMap<SimplicialOperator, OpId>,
    category: FiniteCategory,
}

impl OperatorTable {
    pub fn new(max_dim: usize) -> Self {
        let mut ops = Vec::new();
        for from in 0..=max_dim {
            for to in 0..=max_dim {
                ops.extend(SimplicialOperator::all(from, to));
            }
        }
        let index: HashMap<_, _> = ops.iter().cloned().enumerate().map(|(i, t)| (t, i)).collect();
        let arrows = ops.iter().map(|t| Arrow { dom: t.from_dim, cod: t.to_dim }).collect();
        let identity = (0..=max_dim).map(|p| index[&SimplicialOperator::identity(p)]).collect();
        let category = FiniteCategory::from_fn(max_dim + 1, arrows, identity, |g, f| {
            index[&ops[g].compose(&ops[f]).expect("composable")]
        })
        .expect("operator category is well formed");
        Self { max_dim, ops, index, category }
    }

    pub fn max_dim(&self) -> usize {
        self.max_dim
    }

    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    pub fn op(&self, id: OpId) -> &SimplicialOperator {
        &self.ops[id]
    }

    pub fn id_of(&self, t: &SimplicialOperator) -> Option<OpId> {
        self.index.get(t).copied()
    }

    pub fn identity(&self, p: usize) -> OpId {
        self.category.identity(p)
    }

    /// `t2 ∘ t1` by table lookup.
    pub fn compose(&self, t2: OpId, t1: OpId) -> Option<OpId> {
        self.category.compose(t2, t1)
    }

    /// Operators out of dimension `p`, grouped by target dimension.
    pub fn from(&self, p: usize) -> &[OpId] {
        self.category.out_of(p)
    }

    pub fn between(&self, from: usize, to: usize) -> &[OpId] {
        self.category.hom(from, to)
    }

    /// The operators viewed as a category on the dimensions `0..=max_dim`.
    pub fn category(&self) -> &FiniteCategory {
        &self.category
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn op(from: usize, to: usize, c: &[usize]) -> SimplicialOperator {
        SimplicialOperator::new(from, to, c.to_vec()).unwrap()
    }

    #[test]
    fn compose_examples() {
        let t1 = op(0, 1, &[0, 0]);
        let t2 = op(1, 0, &[0]);
        assert_eq!(operator_compose(&t2, &t1).unwrap(), SimplicialOperator::identity(0));
        let t1 = op(1, 2, &[0, 0, 1]);
        let t2 = op(2, 1, &[0, 2]);
        // pointwise: carrier(t1)[carrier(t2)[i]] = [c1[0], c1[2]] = [0, 1]
        assert_eq!(operator_compose(&t2, &t1).unwrap(), SimplicialOperator::identity(1));
        for t in [t1, t2] {
            let (p, q) = (t.from_dim(), t.to_dim());
            assert_eq!(operator_compose(&t, &SimplicialOperator::identity(p)).unwrap(), t);
            assert_eq!(operator_compose(&SimplicialOperator::identity(q), &t).unwrap(), t);
        }
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        let t = op(1, 0, &[1]);
        assert!(matches!(operator_compose(&t, &t), Err(SimpError::DimensionMismatch { .. })));
        assert!(SimplicialOperator::new(1, 1, vec![1, 0]).is_err());
        assert!(SimplicialOperator::new(1, 1, vec![0, 2]).is_err());
    }

    #[test]
    fn operator_counts_are_binomial() {
        // monotone maps [to] → [from]: C(from + to + 1, to + 1)
        let binom = |n: usize, k: usize| (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1));
        for from in 0..4 {
            for to in 0..4 {
                assert_eq!(SimplicialOperator::all(from, to).len(), binom(from + to + 1, to + 1));
            }
        }
        let table = OperatorTable::new(1);
        assert_eq!(table.len(), 7);
        assert!(crate::cat::validate_category(table.category()).is_empty());
    }

    #[test]
    fn factorization_pieces() {
        let t = op(3, 3, &[0, 0, 2, 2]);
        assert_eq!(t.missing_vertices(), vec![1, 3]);
        assert_eq!(t.repeated_positions(), vec![0, 2]);
        assert_eq!(SimplicialOperator::face(2, 1).carrier(), &[0, 2]);
        assert_eq!(SimplicialOperator::degeneracy(1, 0).carrier(), &[0, 0, 1]);
    }
}
