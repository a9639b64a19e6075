//! Exchange matrices, c-matrices and their mutation.
//!
//! Indices here are zero-based; arc `a` sits at `a.index()`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::IntScalar;

fn check_index<T: IntScalar>(b: &Matrix<T>, k: usize) -> Result<()> {
    if !b.is_square() {
        return Err(Error::Shape(format!("exchange matrix is {}x{}", b.rows(), b.cols())));
    }
    if k >= b.rows() {
        return Err(Error::IndexOutOfRange { index: k, size: b.rows() });
    }
    Ok(())
}

/// Matrix mutation at `k`:
/// `B'[i][j] = -B[i][j]` if `k` is `i` or `j`, else
/// `B[i][j] + sign(B[i][k]) * max(B[i][k] * B[k][j], 0)`.
pub fn mutate_matrix<T: IntScalar>(b: &Matrix<T>, k: usize) -> Result<Matrix<T>> {
    check_index(b, k)?;
    let n = b.rows();
    let mut out = b.clone();
    for i in 0..n {
        for j in 0..n {
            out[(i, j)] = if i == k || j == k {
                -b[(i, j)].clone()
            } else {
                let bik = &b[(i, k)];
                let prod = (bik.clone() * b[(k, j)].clone()).positive_part();
                b[(i, j)].clone() + bik.signum() * prod
            };
        }
    }
    Ok(out)
}

/// Exchange matrix together with its c-matrix. Row `i` of `c` is the
/// c-vector of direction `i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(bound(serialize = "T: IntScalar + Serialize", deserialize = "T: IntScalar + Deserialize<'de>"))]
pub struct Seed<T> {
    pub b: Matrix<T>,
    pub c: Matrix<T>,
}

/// Sign of a sign-coherent row: `1`, `-1`, or `0` for the zero row.
fn row_sign<T: IntScalar>(row: &[T]) -> Option<i8> {
    let pos = row.iter().any(|x| x.is_positive());
    let neg = row.iter().any(|x| x.is_negative());
    match (pos, neg) {
        (true, true) => None,
        (true, false) => Some(1),
        (false, true) => Some(-1),
        (false, false) => Some(0),
    }
}

impl<T: IntScalar> Seed<T> {
    /// `(b, I)`
    pub fn initial(b: Matrix<T>) -> Result<Self> {
        if !b.is_skew_symmetric() {
            return Err(Error::Shape("exchange matrix must be skew-symmetric".into()));
        }
        let c = Matrix::identity(b.rows());
        Ok(Seed { b, c })
    }

    pub fn size(&self) -> usize {
        self.b.rows()
    }

    /// Seed mutation. Row `k` of `c` is negated and every other row `i`
    /// gains `max(e * B[i][k], 0) * c[k]`, `e` being the sign of the old
    /// row `k`.
    pub fn mutate(&self, k: usize) -> Result<Self> {
        check_index(&self.b, k)?;
        let n = self.size();
        let eps = row_sign(self.c.row(k)).ok_or(Error::SignIncoherent { row: k })?;
        let eps = T::from_int(if eps < 0 { -1 } else { 1 });
        let mut c = self.c.clone();
        c.negate_row(k);
        for i in (0..n).filter(|&i| i != k) {
            let f = (eps.clone() * self.b[(i, k)].clone()).positive_part();
            if !f.is_zero() {
                for j in 0..n {
                    c[(i, j)] = c[(i, j)].clone() + f.clone() * self.c[(k, j)].clone();
                }
            }
        }
        if let Some(row) = (0..n).find(|&i| row_sign(c.row(i)).is_none()) {
            return Err(Error::SignIncoherent { row });
        }
        Ok(Seed { b: mutate_matrix(&self.b, k)?, c })
    }

    /// `"n;B;C"` with entries comma-separated in row-major order.
    pub fn canonical_key(&self) -> Vec<u8> {
        let join = |m: &Matrix<T>| m.entries().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        format!("{};{};{}", self.size(), join(&self.b), join(&self.c)).into_bytes()
    }

    /// Seed with label `i` renamed to `perm[i]`.
    pub fn relabel(&self, perm: &[usize]) -> Self {
        let n = self.size();
        let mut b = Matrix::zeros(n, n);
        let mut c = Matrix::zeros(n, self.c.cols());
        for i in 0..n {
            for j in 0..n {
                b[(perm[i], perm[j])] = self.b[(i, j)].clone();
            }
            for j in 0..self.c.cols() {
                c[(perm[i], j)] = self.c[(i, j)].clone();
            }
        }
        Seed { b, c }
    }

    /// Position of each row of `c` in lexicographic order. Rows of a
    /// unimodular `c` are distinct, so this is a permutation.
    pub fn row_ranks(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.size()).collect();
        order.sort_by(|&x, &y| self.c.row(x).cmp(self.c.row(y)));
        let mut rank = vec![0; order.len()];
        for (r, &i) in order.iter().enumerate() {
            rank[i] = r;
        }
        rank
    }

    /// Key of the seed up to relabeling: the canonical key after sorting
    /// the c-vectors.
    pub fn unlabeled_key(&self) -> Vec<u8> {
        self.relabel(&self.row_ranks()).canonical_key()
    }

    /// `perm` with `other == self.relabel(perm)`, if the two seeds agree up
    /// to relabeling.
    pub fn matching(&self, other: &Self) -> Option<Vec<usize>> {
        let (mine, theirs) = (self.row_ranks(), other.row_ranks());
        let mut by_rank = vec![0; theirs.len()];
        for (i, &r) in theirs.iter().enumerate() {
            by_rank[r] = i;
        }
        let perm: Vec<usize> = mine.iter().map(|&r| by_rank[r]).collect();
        (self.relabel(&perm) == *other).then_some(perm)
    }

    pub fn is_sign_coherent(&self) -> bool {
        (0..self.size()).all(|i| row_sign(self.c.row(i)).is_some())
    }

    pub fn is_unimodular(&self) -> bool {
        self.c.determinant().map(|d| d.abs().is_one()).unwrap_or(false)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use proptest::prelude::*;

    fn m(rows: &[&[i64]]) -> Matrix<i64> {
        Matrix::from_i64_rows(rows).unwrap()
    }

    #[test]
    fn a2_and_kronecker() {
        let a2 = m(&[&[0, 1], &[-1, 0]]);
        assert_eq!(mutate_matrix(&a2, 0).unwrap(), m(&[&[0, -1], &[1, 0]]));
        let kr = m(&[&[0, 2], &[-2, 0]]);
        assert_eq!(mutate_matrix(&kr, 0).unwrap(), m(&[&[0, -2], &[2, 0]]));
        assert!(matches!(mutate_matrix(&a2, 2), Err(Error::IndexOutOfRange { index: 2, size: 2 })));
    }

    #[test]
    fn a3_middle() {
        // 1 -> 2 -> 3 mutated at 2: 2 -> 1, 3 -> 2, 1 -> 3
        let b = m(&[&[0, 1, 0], &[-1, 0, 1], &[0, -1, 0]]);
        let expect = m(&[&[0, -1, 1], &[1, 0, -1], &[-1, 1, 0]]);
        assert_eq!(mutate_matrix(&b, 1).unwrap(), expect);
    }

    #[test]
    fn seed_basics() {
        let s = Seed::initial(m(&[&[0, 1], &[-1, 0]])).unwrap();
        assert_eq!(s.mutate(0).unwrap().c, m(&[&[-1, 0], &[0, 1]]));
        assert_eq!(s.canonical_key(), b"2;0,1,-1,0;1,0,0,1".to_vec());
        let mut keys = vec![s.canonical_key()];
        let mut cur = s.clone();
        for k in [0, 1, 0, 1, 0] {
            cur = cur.mutate(k).unwrap();
            keys.push(cur.canonical_key());
        }
        // five mutations around the pentagon come back, up to swapping the labels
        let swapped = Seed { b: cur.b.clone(), c: Matrix::from_i64_rows(&[&[0, 1], &[1, 0]]).unwrap() };
        assert_eq!(cur, swapped);
        keys.sort();
        keys.dedup();
        assert_eq!(keys.len(), 6);
    }

    #[test]
    fn pentagon_up_to_relabeling() {
        let s = Seed::initial(m(&[&[0, 1], &[-1, 0]])).unwrap();
        let mut cur = s.clone();
        let mut keys = vec![s.unlabeled_key()];
        for k in [0, 1, 0, 1] {
            cur = cur.mutate(k).unwrap();
            keys.push(cur.unlabeled_key());
        }
        let back = cur.mutate(0).unwrap();
        assert_eq!(back.unlabeled_key(), s.unlabeled_key());
        assert_eq!(back.matching(&s), Some(vec![1, 0]));
        keys.sort();
        keys.dedup();
        assert_eq!(keys.len(), 5);
        assert_eq!(s.matching(&s.mutate(1).unwrap()), None);
    }

    #[test]
    fn generic_scalars_agree() {
        let b64 = m(&[&[0, 1, -1], &[-1, 0, 2], &[1, -2, 0]]);
        let bb = Matrix::<BigInt>::from_i64_rows(&[&[0, 1, -1], &[-1, 0, 2], &[1, -2, 0]]).unwrap();
        let s = Seed::initial(b64).unwrap().mutate(1).unwrap().mutate(2).unwrap();
        let t = Seed::initial(bb).unwrap().mutate(1).unwrap().mutate(2).unwrap();
        assert_eq!(s.canonical_key(), t.canonical_key());
    }

    fn random_skew(n: usize, entries: Vec<i64>) -> Matrix<i64> {
        let mut b = Matrix::zeros(n, n);
        let mut it = entries.into_iter();
        for i in 0..n {
            for j in i + 1..n {
                let v = it.next().unwrap_or(0);
                b[(i, j)] = v;
                b[(j, i)] = -v;
            }
        }
        b
    }

    proptest! {
        #[test]
        fn matrix_mutation_is_involutive(n in 1usize..6, e in prop::collection::vec(-3i64..=3, 15), k in 0usize..6) {
            let b = random_skew(n, e);
            let k = k % n;
            let once = mutate_matrix(&b, k).unwrap();
            prop_assert!(once.is_skew_symmetric());
            prop_assert_eq!(mutate_matrix(&once, k).unwrap(), b);
        }

        #[test]
        fn seed_walks_stay_coherent(e in prop::collection::vec(-1i64..=1, 6), walk in prop::collection::vec(0usize..4, 0..20)) {
            // arbitrary quivers can be mutation-infinite, so entries may outgrow i64
            let b = random_skew(4, e);
            let b = Matrix::<BigInt>::from_rows(b.to_rows().into_iter().map(|r| r.into_iter().map(BigInt::from).collect()).collect()).unwrap();
            let mut s = Seed::initial(b).unwrap();
            for k in walk {
                let next = s.mutate(k).unwrap();
                prop_assert_eq!(next.mutate(k).unwrap(), s.clone());
                prop_assert!(next.b.is_skew_symmetric());
                prop_assert!(next.is_unimodular());
                s = next;
            }
        }
    }
}
