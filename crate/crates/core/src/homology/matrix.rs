use std::cmp::Reverse;
use std::collections::{BTreeSet, BinaryHeap};
use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// A sparse integer matrix stored by columns, each column sorted by row.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    columns: Vec<Vec<(usize, i64)>>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, columns: vec![Vec::new(); cols] }
    }

    /// Columns given as `(row, value)` lists; entries are summed and zeros dropped.
    pub fn from_columns(rows: usize, columns: Vec<Vec<(usize, i64)>>) -> Self {
        let columns = columns
            .into_iter()
            .map(|mut col| {
                col.sort_unstable_by_key(|&(r, _)| r);
                let mut out: Vec<(usize, i64)> = Vec::with_capacity(col.len());
                for (r, v) in col {
                    assert!(r < rows, "row {r} out of range");
                    match out.last_mut() {
                        Some((lr, lv)) if *lr == r => *lv += v,
                        _ => out.push((r, v)),
                    }
                }
                out.retain(|&(_, v)| v != 0);
                out
            })
            .collect();
        Self { rows, columns }
    }

    pub fn from_dense(rows: &[Vec<i64>]) -> Self {
        let n_rows = rows.len();
        let n_cols = rows.first().map_or(0, Vec::len);
        let columns = (0..n_cols)
            .map(|j| (0..n_rows).filter(|&i| rows[i][j] != 0).map(|i| (i, rows[i][j])).collect())
            .collect();
        Self { rows: n_rows, columns }
    }

    pub fn to_dense(&self) -> Vec<Vec<i64>> {
        let mut out = vec![vec![0; self.cols()]; self.rows];
        for (j, col) in self.columns.iter().enumerate() {
            for &(i, v) in col {
                out[i][j] = v;
            }
        }
        out
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.columns.len()
    }

    pub fn column(&self, j: usize) -> &[(usize, i64)] {
        &self.columns[j]
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(Vec::is_empty)
    }

    /// `self · other`, or `None` on a shape mismatch or `i64` overflow.
    pub fn mul(&self, other: &IntMatrix) -> Option<IntMatrix> {
        if self.cols() != other.rows {
            return None;
        }
        let mut columns = Vec::with_capacity(other.cols());
        let mut acc = vec![0i64; self.rows];
        let mut touched = Vec::new();
        for col in &other.columns {
            for &(k, b) in col {
                for &(i, a) in &self.columns[k] {
                    if acc[i] == 0 {
                        touched.push(i);
                    }
                    acc[i] = acc[i].checked_add(a.checked_mul(b)?)?;
                }
            }
            touched.sort_unstable();
            touched.dedup();
            columns.push(touched.iter().filter(|&&i| acc[i] != 0).map(|&i| (i, acc[i])).collect());
            for &i in &touched {
                acc[i] = 0;
            }
            touched.clear();
        }
        Some(IntMatrix { rows: self.rows, columns })
    }
}

/// Invariant factors `d₁ | d₂ | ⋯` (all positive) and the rank.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub invariants: Vec<BigInt>,
    pub rank: usize,
}

impl SmithForm {
    /// Invariant factors greater than one.
    pub fn torsion(&self) -> Vec<BigInt> {
        self.invariants.iter().filter(|d| !d.is_one()).cloned().collect()
    }
}

/// Smith normal form over the integers. Unit pivots are eliminated sparsely
/// first; the remainder is reduced densely with least-absolute-value pivots.
/// Arithmetic is checked `i64`, redone in arbitrary precision on overflow.
pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    match smith_generic::<i64>(m) {
        Some(form) => form,
        None => smith_generic::<BigInt>(m).expect("arbitrary precision cannot overflow"),
    }
}

pub(crate) trait Coefficient: Clone + PartialEq + Debug {
    fn from_i64(v: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn is_unit(&self) -> bool;
    fn abs_lt(&self, other: &Self) -> bool;
    /// `self − q·b`.
    fn mul_sub(&self, q: &Self, b: &Self) -> Option<Self>;
    fn add(&self, b: &Self) -> Option<Self>;
    fn mul(&self, b: &Self) -> Option<Self>;
    fn div_floor(&self, b: &Self) -> Option<Self>;
    fn is_divisible_by(&self, b: &Self) -> bool;
    fn to_big(&self) -> BigInt;
}

impl Coefficient for i64 {
    fn from_i64(v: i64) -> Self {
        v
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn is_unit(&self) -> bool {
        *self == 1 || *self == -1
    }
    fn abs_lt(&self, other: &Self) -> bool {
        self.unsigned_abs() < other.unsigned_abs()
    }
    fn mul_sub(&self, q: &Self, b: &Self) -> Option<Self> {
        self.checked_sub(q.checked_mul(*b)?)
    }
    fn add(&self, b: &Self) -> Option<Self> {
        self.checked_add(*b)
    }
    fn mul(&self, b: &Self) -> Option<Self> {
        self.checked_mul(*b)
    }
    fn div_floor(&self, b: &Self) -> Option<Self> {
        self.checked_div_euclid(*b)
    }
    fn is_divisible_by(&self, b: &Self) -> bool {
        self.checked_rem(*b).is_none_or(|r| r == 0)
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl Coefficient for BigInt {
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_unit(&self) -> bool {
        self.abs().is_one()
    }
    fn abs_lt(&self, other: &Self) -> bool {
        self.magnitude() < other.magnitude()
    }
    fn mul_sub(&self, q: &Self, b: &Self) -> Option<Self> {
        Some(self - q * b)
    }
    fn add(&self, b: &Self) -> Option<Self> {
        Some(self + b)
    }
    fn mul(&self, b: &Self) -> Option<Self> {
        Some(self * b)
    }
    fn div_floor(&self, b: &Self) -> Option<Self> {
        Some(Integer::div_floor(self, b))
    }
    fn is_divisible_by(&self, b: &Self) -> bool {
        Zero::is_zero(&(self % b))
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
}

type SparseVec<T> = Vec<(usize, T)>;

fn smith_generic<T: Coefficient>(m: &IntMatrix) -> Option<SmithForm> {
    let mut vecs: Vec<SparseVec<T>> =
        m.columns.iter().map(|c| c.iter().map(|&(i, v)| (i, T::from_i64(v))).collect()).collect();
    let mut occ: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); m.rows];
    for (j, v) in vecs.iter().enumerate() {
        for &(i, _) in v {
            occ[i].insert(j);
        }
    }
    let mut alive: Vec<bool> = vecs.iter().map(|v| !v.is_empty()).collect();
    let mut heap: BinaryHeap<Reverse<(usize, usize)>> =
        vecs.iter().enumerate().filter(|(_, v)| !v.is_empty()).map(|(j, v)| Reverse((v.len(), j))).collect();
    let mut units = 0usize;

    while let Some(Reverse((len, p))) = heap.pop() {
        if !alive[p] || vecs[p].len() != len {
            continue;
        }
        let Some(&(r, ref u)) = vecs[p].iter().filter(|(_, v)| v.is_unit()).min_by_key(|(i, _)| occ[*i].len()) else {
            continue;
        };
        let u = u.clone();
        let pivot = std::mem::take(&mut vecs[p]);
        alive[p] = false;
        for &(i, _) in &pivot {
            occ[i].remove(&p);
        }
        let targets: Vec<usize> = occ[r].iter().copied().collect();
        for w in targets {
            let c = vecs[w].iter().find(|(i, _)| *i == r).expect("occurrence index").1.clone();
            let q = c.mul(&u)?;
            let merged = axpy(&vecs[w], &q, &pivot)?;
            for &(i, _) in &vecs[w] {
                occ[i].remove(&w);
            }
            for &(i, _) in &merged {
                occ[i].insert(w);
            }
            vecs[w] = merged;
            if vecs[w].is_empty() {
                alive[w] = false;
            } else {
                heap.push(Reverse((vecs[w].len(), w)));
            }
        }
        units += 1;
    }

    let rest: Vec<&SparseVec<T>> = vecs.iter().zip(&alive).filter(|(v, &a)| a && !v.is_empty()).map(|(v, _)| v).collect();
    let mut used: Vec<usize> = rest.iter().flat_map(|v| v.iter().map(|(i, _)| *i)).collect();
    used.sort_unstable();
    used.dedup();
    let mut dense = vec![vec![T::from_i64(0); used.len()]; rest.len()];
    for (row, v) in rest.iter().enumerate() {
        for (i, x) in v.iter() {
            dense[row][used.binary_search(i).expect("collected")] = x.clone();
        }
    }
    let tail = dense_smith(dense)?;
    let mut invariants = vec![BigInt::one(); units];
    invariants.extend(tail.iter().map(|d| d.to_big().abs()));
    let rank = invariants.len();
    Some(SmithForm { invariants, rank })
}

/// `w − q·p` on sorted sparse vectors.
fn axpy<T: Coefficient>(w: &SparseVec<T>, q: &T, p: &SparseVec<T>) -> Option<SparseVec<T>> {
    let zero = T::from_i64(0);
    let mut out = Vec::with_capacity(w.len() + p.len());
    let (mut a, mut b) = (0, 0);
    while a < w.len() || b < p.len() {
        let ia = w.get(a).map_or(usize::MAX, |e| e.0);
        let ib = p.get(b).map_or(usize::MAX, |e| e.0);
        let (i, v) = if ia < ib {
            a += 1;
            (ia, w[a - 1].1.clone())
        } else if ib < ia {
            b += 1;
            (ib, zero.mul_sub(q, &p[b - 1].1)?)
        } else {
            a += 1;
            b += 1;
            (ia, w[a - 1].1.mul_sub(q, &p[b - 1].1)?)
        };
        if !v.is_zero() {
            out.push((i, v));
        }
    }
    Some(out)
}

fn dense_smith<T: Coefficient>(mut a: Vec<Vec<T>>) -> Option<Vec<T>> {
    let m = a.len();
    let n = a.first().map_or(0, Vec::len);
    let mut diag = Vec::new();
    for t in 0..m.min(n) {
        let Some((pi, pj)) = min_abs(&a, t..m, t..n) else {
            break;
        };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let mut clean = true;
            for i in t + 1..m {
                if !a[i][t].is_zero() {
                    let q = a[i][t].div_floor(&a[t][t])?;
                    for j in t..n {
                        a[i][j] = a[i][j].mul_sub(&q, &a[t][j])?;
                    }
                    clean &= a[i][t].is_zero();
                }
            }
            for j in t + 1..n {
                if !a[t][j].is_zero() {
                    let q = a[t][j].div_floor(&a[t][t])?;
                    for i in t..m {
                        a[i][j] = a[i][j].mul_sub(&q, &a[i][t])?;
                    }
                    clean &= a[t][j].is_zero();
                }
            }
            if !clean {
                let best = (t..m)
                    .map(|i| (i, t))
                    .chain((t + 1..n).map(|j| (t, j)))
                    .filter(|&(i, j)| !a[i][j].is_zero())
                    .min_by(|&(i, j), &(k, l)| cmp_abs(&a[i][j], &a[k][l]))
                    .expect("pivot row or column is nonzero");
                if best.0 != t {
                    a.swap(t, best.0);
                }
                if best.1 != t {
                    for row in a.iter_mut() {
                        row.swap(t, best.1);
                    }
                }
                continue;
            }
            let bad = (t + 1..m).find(|&i| (t + 1..n).any(|j| !a[i][j].is_divisible_by(&a[t][t])));
            match bad {
                Some(i) => {
                    for j in t..n {
                        a[t][j] = a[t][j].add(&a[i][j])?;
                    }
                }
                None => break,
            }
        }
        diag.push(a[t][t].clone());
    }
    Some(diag)
}

fn cmp_abs<T: Coefficient>(x: &T, y: &T) -> std::cmp::Ordering {
    if x.abs_lt(y) {
        std::cmp::Ordering::Less
    } else if y.abs_lt(x) {
        std::cmp::Ordering::Greater
    } else {
        std::cmp::Ordering::Equal
    }
}

fn min_abs<T: Coefficient>(
    a: &[Vec<T>],
    rows: std::ops::Range<usize>,
    cols: std::ops::Range<usize>,
) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in rows {
        for j in cols.clone() {
            if a[i][j].is_zero() {
                continue;
            }
            if best.is_none_or(|(k, l)| a[i][j].abs_lt(&a[k][l])) {
                best = Some((i, j));
            }
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn invariants(rows: &[Vec<i64>]) -> Vec<i64> {
        smith_normal_form(&IntMatrix::from_dense(rows)).invariants.iter().map(|d| d.try_into().unwrap()).collect()
    }

    fn det(m: &[Vec<i64>]) -> i128 {
        // cofactor expansion along the first row
        if m.is_empty() {
            return 1;
        }
        let n = m.len();
        (0..n)
            .map(|j| {
                let minor: Vec<Vec<i64>> =
                    m[1..].iter().map(|r| r.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, &v)| v).collect()).collect();
                let sign = if j % 2 == 0 { 1 } else { -1 };
                sign * m[0][j] as i128 * det(&minor)
            })
            .sum()
    }

    #[test]
    fn examples() {
        assert_eq!(invariants(&[vec![1, 0], vec![0, 2]]), vec![1, 2]);
        assert_eq!(invariants(&[vec![2, 4], vec![6, 8]]), vec![2, 4]);
        let zero = smith_normal_form(&IntMatrix::zeros(3, 2));
        assert_eq!((zero.rank, zero.invariants.len()), (0, 0));
        assert_eq!(smith_normal_form(&IntMatrix::zeros(0, 0)).rank, 0);
        assert_eq!(invariants(&[vec![2, 0], vec![0, 3]]), vec![1, 6]);
        assert_eq!(invariants(&[vec![4, 0, 0], vec![0, 6, 0], vec![0, 0, 10]]), vec![2, 2, 60]);
    }

    #[test]
    fn overflow_falls_back_to_big_integers() {
        let big = i64::MAX / 2;
        let m = [vec![big, big - 1], vec![big - 1, big - 3]];
        let form = smith_normal_form(&IntMatrix::from_dense(&m));
        let expected = (BigInt::from(big) * BigInt::from(big - 3) - BigInt::from(big - 1) * BigInt::from(big - 1)).abs();
        assert_eq!(form.invariants.iter().product::<BigInt>(), expected);
    }

    #[test]
    fn product_of_matrices() {
        let a = IntMatrix::from_dense(&[vec![1, 2], vec![3, 4]]);
        let b = IntMatrix::from_dense(&[vec![0, 1], vec![1, 0]]);
        assert_eq!(a.mul(&b).unwrap().to_dense(), vec![vec![2, 1], vec![4, 3]]);
        assert!(a.mul(&IntMatrix::zeros(3, 1)).is_none());
    }

    proptest! {
        #[test]
        fn divisibility_chain_and_determinant(n in 1usize..5, entries in prop::collection::vec(-6i64..7, 16)) {
            let m: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| entries[i * 4 + j]).collect()).collect();
            let form = smith_normal_form(&IntMatrix::from_dense(&m));
            for w in form.invariants.windows(2) {
                prop_assert!(Zero::is_zero(&(&w[1] % &w[0])));
            }
            let d = det(&m).abs();
            if d != 0 {
                prop_assert_eq!(form.rank, n);
                prop_assert_eq!(form.invariants.iter().product::<BigInt>(), BigInt::from(d));
            } else {
                prop_assert!(form.rank < n);
            }
        }

        #[test]
        fn rank_is_transpose_invariant(rows in 1usize..5, cols in 1usize..5, entries in prop::collection::vec(-3i64..4, 16)) {
            let m: Vec<Vec<i64>> = (0..rows).map(|i| (0..cols).map(|j| entries[i * 4 + j]).collect()).collect();
            let t: Vec<Vec<i64>> = (0..cols).map(|j| (0..rows).map(|i| m[i][j]).collect()).collect();
            prop_assert_eq!(smith_normal_form(&IntMatrix::from_dense(&m)), smith_normal_form(&IntMatrix::from_dense(&t)));
        }

        #[test]
        fn first_invariant_is_gcd_of_entries(rows in 1usize..5, cols in 1usize..5, entries in prop::collection::vec(-9i64..10, 16)) {
            let m: Vec<Vec<i64>> = (0..rows).map(|i| (0..cols).map(|j| entries[i * 4 + j]).collect()).collect();
            let g = m.iter().flatten().fold(0i64, |g, &v| g.gcd(&v));
            let form = smith_normal_form(&IntMatrix::from_dense(&m));
            match form.invariants.first() {
                Some(d1) => prop_assert_eq!(d1.clone(), BigInt::from(g)),
                None => prop_assert_eq!(g, 0),
            }
        }
    }
}
