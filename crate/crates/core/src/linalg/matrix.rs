use super::{Echelon, Scalar, SparseVec};

/// A rational matrix stored as sparse rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    cols: usize,
    rows: Vec<SparseVec>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            cols,
            rows: vec![SparseVec::new(); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self {
            cols: n,
            rows: (0..n).map(SparseVec::unit).collect(),
        }
    }

    pub fn from_rows(cols: usize, rows: Vec<SparseVec>) -> Self {
        assert!(
            rows.iter().all(|r| r.support_bound() <= cols),
            "row entry outside column range"
        );
        Self { cols, rows }
    }

    pub fn from_int_rows(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        Self {
            cols,
            rows: rows.iter().map(|r| SparseVec::from_ints(r)).collect(),
        }
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn rows(&self) -> &[SparseVec] {
        &self.rows
    }

    pub fn get(&self, r: usize, c: usize) -> Scalar {
        self.rows[r].get(c)
    }

    pub fn transpose(&self) -> Matrix {
        let mut cols: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); self.cols];
        for (r, row) in self.rows.iter().enumerate() {
            for (c, x) in row.iter() {
                cols[c].push((r, x.clone()));
            }
        }
        Matrix {
            cols: self.rows.len(),
            rows: cols.into_iter().map(SparseVec::from_sorted_unchecked).collect(),
        }
    }

    pub fn to_dense(&self) -> Vec<Vec<Scalar>> {
        self.rows.iter().map(|r| r.to_dense(self.cols)).collect()
    }

    pub fn rank(&self) -> usize {
        rref(self).1
    }
}

/// Reduced row-echelon form over the rationals, together with the rank.
///
/// Rows are consumed in input order; the pivot of each surviving row is its
/// first nonzero column. The result has one row per pivot, sorted by pivot.
pub fn rref(m: &Matrix) -> (Matrix, usize) {
    let mut ech = Echelon::new(m.cols);
    for row in &m.rows {
        ech.insert(row);
        if ech.is_full() {
            break;
        }
    }
    let rank = ech.rank();
    let sub = ech.into_subspace();
    (Matrix::from_rows(m.cols, sub.basis().to_vec()), rank)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_is_fixed() {
        let (r, rank) = rref(&Matrix::identity(2));
        assert_eq!(r, Matrix::identity(2));
        assert_eq!(rank, 2);
    }

    #[test]
    fn dependent_rows() {
        let m = Matrix::from_int_rows(&[vec![1, 2], vec![2, 4]]);
        let (r, rank) = rref(&m);
        assert_eq!(rank, 1);
        assert_eq!(r, Matrix::from_int_rows(&[vec![1, 2]]));
    }

    #[test]
    fn fractions_appear() {
        let m = Matrix::from_int_rows(&[vec![2, 1], vec![4, 3]]);
        let (r, rank) = rref(&m);
        assert_eq!(rank, 2);
        assert_eq!(r, Matrix::identity(2));
        let m = Matrix::from_int_rows(&[vec![2, 1, 0]]);
        let (r, _) = rref(&m);
        assert_eq!(r.get(0, 1), Scalar::ratio(1, 2));
    }

    #[test]
    fn transpose_roundtrip() {
        let m = Matrix::from_int_rows(&[vec![1, 0, 3], vec![0, 5, 0]]);
        assert_eq!(m.transpose().transpose(), m);
        assert_eq!(m.transpose().nrows(), 3);
    }
}
