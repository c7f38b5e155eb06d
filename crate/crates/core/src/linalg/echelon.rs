use super::{Scalar, SparseVec, Subspace};

/// Incrementally maintained reduced row-echelon basis.
///
/// Every stored row has leading coefficient 1 in its pivot column and zeros in
/// all other rows' pivot columns, so reducing a vector takes one pass over the
/// pivot entries it touches.
#[derive(Clone, Debug)]
pub struct Echelon {
    dim: usize,
    rows: Vec<SparseVec>,
    pivot_row: Vec<Option<usize>>,
}

impl Echelon {
    pub fn new(dim: usize) -> Self {
        Self {
            dim,
            rows: Vec::new(),
            pivot_row: vec![None; dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.dim
    }

    /// Remainder of `v` after eliminating every pivot column.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let hits: Vec<(usize, &Scalar)> = v
            .iter()
            .filter_map(|(c, x)| self.pivot_row[c].map(|r| (r, x)))
            .collect();
        if hits.is_empty() {
            return v.clone();
        }
        if hits.len() == 1 {
            let (r, x) = hits[0];
            let mut out = v.clone();
            out.add_scaled(&-x, &self.rows[r]);
            return out;
        }
        let mut acc = super::Accumulator::new(self.dim);
        acc.add_scaled(&Scalar::one(), v);
        for (r, x) in hits {
            acc.add_scaled(&-x, &self.rows[r]);
        }
        acc.take()
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_zero()
    }

    /// Adds `v` to the span; returns whether the rank grew.
    pub fn insert(&mut self, v: &SparseVec) -> bool {
        debug_assert!(v.support_bound() <= self.dim);
        let mut r = self.reduce(v);
        let (pivot, lead) = match r.leading() {
            None => return false,
            Some((c, x)) => (c, x.clone()),
        };
        if !lead.is_one() {
            r = r.scaled(&lead.recip());
        }
        for row in self.rows.iter_mut() {
            let x = row.get(pivot);
            if !x.is_zero() {
                row.add_scaled(&-x, &r);
            }
        }
        self.pivot_row[pivot] = Some(self.rows.len());
        self.rows.push(r);
        true
    }

    /// Canonical subspace: rows ordered by pivot column.
    pub fn into_subspace(self) -> Subspace {
        let mut rows = self.rows;
        rows.sort_by_key(|r| r.leading().map(|(c, _)| c));
        Subspace::from_rref_rows(self.dim, rows)
    }

    pub fn to_subspace(&self) -> Subspace {
        self.clone().into_subspace()
    }
}
