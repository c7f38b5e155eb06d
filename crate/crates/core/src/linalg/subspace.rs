use super::{Echelon, LinalgError, Matrix, Scalar, SparseVec};

/// A linear subspace of `F^ambient`, stored as its reduced row-echelon basis.
///
/// The echelon basis is unique, so two subspaces are equal exactly when their
/// stored data is equal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    rows: Vec<SparseVec>,
    pivots: Vec<usize>,
}

impl std::fmt::Debug for Subspace {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Subspace")
            .field("ambient", &self.ambient)
            .field("dim", &self.dim())
            .field("rows", &self.rows)
            .finish()
    }
}

impl Subspace {
    pub(crate) fn from_rref_rows(ambient: usize, rows: Vec<SparseVec>) -> Self {
        let pivots = rows
            .iter()
            .map(|r| r.leading().expect("zero row in echelon basis").0)
            .collect();
        Self {
            ambient,
            rows,
            pivots,
        }
    }

    pub fn zero(ambient: usize) -> Self {
        Self {
            ambient,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Self {
            ambient,
            rows: (0..ambient).map(SparseVec::unit).collect(),
            pivots: (0..ambient).collect(),
        }
    }

    /// Span of the unit vectors with the given indices.
    pub fn coordinate(ambient: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let mut idx: Vec<usize> = indices.into_iter().collect();
        idx.sort_unstable();
        idx.dedup();
        Self {
            ambient,
            rows: idx.iter().map(|&i| SparseVec::unit(i)).collect(),
            pivots: idx,
        }
    }

    pub fn span<'a, I>(ambient: usize, vectors: I) -> Result<Self, LinalgError>
    where
        I: IntoIterator<Item = &'a SparseVec>,
    {
        let mut ech = Echelon::new(ambient);
        for v in vectors {
            if v.support_bound() > ambient {
                return Err(LinalgError::LengthMismatch {
                    expected: ambient,
                    found: v.support_bound(),
                });
            }
            ech.insert(v);
            if ech.is_full() {
                break;
            }
        }
        Ok(ech.into_subspace())
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.ambient
    }

    pub fn basis(&self) -> &[SparseVec] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn to_matrix(&self) -> Matrix {
        Matrix::from_rows(self.ambient, self.rows.clone())
    }

    fn check_same_ambient(&self, other: &Subspace) -> Result<(), LinalgError> {
        if self.ambient != other.ambient {
            return Err(LinalgError::AmbientMismatch {
                left: self.ambient,
                right: other.ambient,
            });
        }
        Ok(())
    }

    fn check_len(&self, v: &SparseVec) -> Result<(), LinalgError> {
        if v.support_bound() > self.ambient {
            return Err(LinalgError::LengthMismatch {
                expected: self.ambient,
                found: v.support_bound(),
            });
        }
        Ok(())
    }

    /// Remainder of `v` modulo the subspace (pivot coordinates eliminated).
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let hits: Vec<(usize, &Scalar)> = v
            .iter()
            .filter_map(|(c, x)| self.pivots.binary_search(&c).ok().map(|k| (k, x)))
            .collect();
        match hits.len() {
            0 => v.clone(),
            1 => {
                let mut out = v.clone();
                out.add_scaled(&-hits[0].1, &self.rows[hits[0].0]);
                out
            }
            _ => {
                let mut acc = super::Accumulator::new(self.ambient.max(v.support_bound()));
                acc.add_scaled(&Scalar::one(), v);
                for (k, x) in hits {
                    acc.add_scaled(&-x, &self.rows[k]);
                }
                acc.take()
            }
        }
    }

    pub fn contains(&self, v: &SparseVec) -> Result<bool, LinalgError> {
        self.check_len(v)?;
        Ok(self.reduce(v).is_zero())
    }

    /// Membership for a dense coordinate vector.
    pub fn member(&self, v: &[Scalar]) -> Result<bool, LinalgError> {
        if v.len() != self.ambient {
            return Err(LinalgError::LengthMismatch {
                expected: self.ambient,
                found: v.len(),
            });
        }
        self.contains(&SparseVec::from_dense(v))
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> Result<bool, LinalgError> {
        self.check_same_ambient(other)?;
        Ok(self.rows.iter().all(|r| other.reduce(r).is_zero()))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace, LinalgError> {
        self.check_same_ambient(other)?;
        Subspace::span(self.ambient, self.rows.iter().chain(other.rows.iter()))
    }

    /// Intersection via the kernel of the stacked system `[u | u], [v | 0]`:
    /// rows whose left half vanishes after elimination carry a vector of
    /// `U ∩ V` in their right half.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace, LinalgError> {
        self.check_same_ambient(other)?;
        let n = self.ambient;
        let mut ech = Echelon::new(2 * n);
        for u in &self.rows {
            let mut row = u.clone();
            row.add_scaled(&Scalar::one(), &u.shifted(n));
            ech.insert(&row);
        }
        for v in &other.rows {
            ech.insert(v);
        }
        let lower: Vec<SparseVec> = ech
            .into_subspace()
            .basis()
            .iter()
            .filter(|r| r.leading().is_some_and(|(c, _)| c >= n))
            .map(|r| r.remap(|c| c.checked_sub(n)))
            .collect();
        Subspace::span(n, lower.iter())
    }

    /// `dim self − dim sub`, after checking `sub ⊆ self`.
    pub fn quotient_dim(&self, sub: &Subspace) -> Result<usize, LinalgError> {
        if !sub.is_subspace_of(self)? {
            return Err(LinalgError::NotContained);
        }
        Ok(self.dim() - sub.dim())
    }

    /// Indices of the non-pivot columns; their unit vectors span a
    /// complement of the subspace.
    pub fn complement_indices(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ambient];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.ambient).filter(|&i| !is_pivot[i]).collect()
    }

    /// Image of the subspace under a linear map given by the images of the
    /// standard basis vectors.
    pub fn image(&self, map: &[SparseVec], target_dim: usize) -> Result<Subspace, LinalgError> {
        if map.len() != self.ambient {
            return Err(LinalgError::LengthMismatch {
                expected: self.ambient,
                found: map.len(),
            });
        }
        let images: Vec<SparseVec> = self.rows.iter().map(|r| apply_map(map, r, target_dim)).collect();
        Subspace::span(target_dim, images.iter())
    }
}

/// `Σ v_i · map[i]`.
pub fn apply_map(map: &[SparseVec], v: &SparseVec, target_dim: usize) -> SparseVec {
    let mut acc = super::Accumulator::new(target_dim);
    for (i, x) in v.iter() {
        acc.add_scaled(x, &map[i]);
    }
    acc.take()
}

/// Kernel of the linear map `F^source → F^target` whose standard basis images
/// are `images`.
pub fn kernel(images: &[SparseVec], target_dim: usize) -> Subspace {
    let source = images.len();
    let mut ech = Echelon::new(target_dim + source);
    for (i, img) in images.iter().enumerate() {
        let mut row = img.clone();
        row.add_scaled(&Scalar::one(), &SparseVec::unit(target_dim + i));
        ech.insert(&row);
    }
    let ker: Vec<SparseVec> = ech
        .into_subspace()
        .basis()
        .iter()
        .filter(|r| r.leading().is_some_and(|(c, _)| c >= target_dim))
        .map(|r| r.remap(|c| c.checked_sub(target_dim)))
        .collect();
    Subspace::span(source, ker.iter()).expect("kernel vectors fit the source space")
}

/// Preimage of `target` under the map with the given basis images.
pub fn preimage(images: &[SparseVec], target: &Subspace) -> Subspace {
    let reduced: Vec<SparseVec> = images.iter().map(|v| target.reduce(v)).collect();
    kernel(&reduced, target.ambient_dim())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn span_ints(ambient: usize, rows: &[&[i64]]) -> Subspace {
        let vs: Vec<SparseVec> = rows.iter().map(|r| SparseVec::from_ints(r)).collect();
        Subspace::span(ambient, vs.iter()).unwrap()
    }

    #[test]
    fn sum_with_zero_is_identity() {
        let u = span_ints(3, &[&[1, 2, 3], &[0, 1, 1]]);
        assert_eq!(u.sum(&Subspace::zero(3)).unwrap(), u);
    }

    #[test]
    fn coordinate_sum_and_intersection() {
        let e1 = Subspace::coordinate(3, [0]);
        let e2 = Subspace::coordinate(3, [1]);
        assert_eq!(e1.sum(&e2).unwrap(), Subspace::coordinate(3, [0, 1]));
        assert!(e1.intersect(&e2).unwrap().is_zero());
        assert_eq!(e1.intersect(&e1).unwrap(), e1);
    }

    #[test]
    fn membership() {
        let u = Subspace::coordinate(3, [1]);
        assert!(u.member(&[Scalar::zero(), Scalar::zero(), Scalar::zero()]).unwrap());
        assert!(!u.member(&[Scalar::one(), Scalar::zero(), Scalar::zero()]).unwrap());
        assert!(u.contains(&u.basis()[0]).unwrap());
        assert!(matches!(
            u.member(&[Scalar::one()]),
            Err(LinalgError::LengthMismatch { .. })
        ));
    }

    #[test]
    fn quotient_dims() {
        let u = Subspace::coordinate(4, [0, 1]);
        assert_eq!(u.quotient_dim(&u).unwrap(), 0);
        assert_eq!(u.quotient_dim(&Subspace::zero(4)).unwrap(), 2);
        assert_eq!(u.quotient_dim(&Subspace::coordinate(4, [0])).unwrap(), 1);
        assert_eq!(
            u.quotient_dim(&Subspace::coordinate(4, [2])),
            Err(LinalgError::NotContained)
        );
    }

    #[test]
    fn ambient_mismatch() {
        assert!(matches!(
            Subspace::zero(2).sum(&Subspace::zero(3)),
            Err(LinalgError::AmbientMismatch { left: 2, right: 3 })
        ));
    }

    #[test]
    fn kernel_of_projection() {
        // (x, y, z) ↦ (x + y, 0)
        let images = vec![
            SparseVec::from_ints(&[1, 0]),
            SparseVec::from_ints(&[1, 0]),
            SparseVec::new(),
        ];
        let k = kernel(&images, 2);
        assert_eq!(k, span_ints(3, &[&[1, -1, 0], &[0, 0, 1]]));
    }
}
