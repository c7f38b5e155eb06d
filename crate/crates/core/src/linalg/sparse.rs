use std::fmt;

use super::Scalar;

/// A sparse rational vector: `(index, value)` pairs sorted by index, with no
/// stored zeros.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct SparseVec {
    entries: Vec<(usize, Scalar)>,
}

impl SparseVec {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn unit(i: usize) -> Self {
        Self {
            entries: vec![(i, Scalar::one())],
        }
    }

    /// Builds from arbitrary pairs: sorts, sums duplicates, drops zeros.
    pub fn from_entries<I: IntoIterator<Item = (usize, Scalar)>>(iter: I) -> Self {
        let mut raw: Vec<(usize, Scalar)> = iter.into_iter().collect();
        raw.sort_by_key(|(i, _)| *i);
        let mut entries: Vec<(usize, Scalar)> = Vec::with_capacity(raw.len());
        for (i, x) in raw {
            match entries.last_mut() {
                Some((j, y)) if *j == i => *y += &x,
                _ => entries.push((i, x)),
            }
        }
        entries.retain(|(_, x)| !x.is_zero());
        Self { entries }
    }

    /// Caller guarantees sorted, distinct indices and nonzero values.
    pub(crate) fn from_sorted_unchecked(entries: Vec<(usize, Scalar)>) -> Self {
        debug_assert!(entries.windows(2).all(|w| w[0].0 < w[1].0));
        debug_assert!(entries.iter().all(|(_, x)| !x.is_zero()));
        Self { entries }
    }

    pub fn from_dense(values: &[Scalar]) -> Self {
        Self {
            entries: values
                .iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .map(|(i, x)| (i, x.clone()))
                .collect(),
        }
    }

    pub fn from_ints(values: &[i64]) -> Self {
        Self {
            entries: values
                .iter()
                .enumerate()
                .filter(|(_, x)| **x != 0)
                .map(|(i, x)| (i, Scalar::from_int(*x)))
                .collect(),
        }
    }

    pub fn to_dense(&self, dim: usize) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); dim];
        for (i, x) in &self.entries {
            out[*i] = x.clone();
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Scalar)> + '_ {
        self.entries.iter().map(|(i, x)| (*i, x))
    }

    pub fn entries(&self) -> &[(usize, Scalar)] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<(usize, Scalar)> {
        self.entries
    }

    pub fn get(&self, i: usize) -> Scalar {
        match self.entries.binary_search_by_key(&i, |(j, _)| *j) {
            Ok(k) => self.entries[k].1.clone(),
            Err(_) => Scalar::zero(),
        }
    }

    pub fn leading(&self) -> Option<(usize, &Scalar)> {
        self.entries.first().map(|(i, x)| (*i, x))
    }

    /// Largest stored index plus one (0 for the zero vector).
    pub fn support_bound(&self) -> usize {
        self.entries.last().map_or(0, |(i, _)| i + 1)
    }

    pub fn scaled(&self, a: &Scalar) -> SparseVec {
        if a.is_zero() {
            return SparseVec::new();
        }
        Self {
            entries: self.entries.iter().map(|(i, x)| (*i, x * a)).collect(),
        }
    }

    pub fn negated(&self) -> SparseVec {
        Self {
            entries: self.entries.iter().map(|(i, x)| (*i, -x)).collect(),
        }
    }

    /// `self += a * other`.
    pub fn add_scaled(&mut self, a: &Scalar, other: &SparseVec) {
        if a.is_zero() || other.is_zero() {
            return;
        }
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let mut lhs = std::mem::take(&mut self.entries).into_iter().peekable();
        let mut rhs = other.entries.iter().peekable();
        loop {
            match (lhs.peek(), rhs.peek()) {
                (Some((i, _)), Some((j, _))) if i < j => out.push(lhs.next().unwrap()),
                (Some((i, _)), Some((j, _))) if i > j => {
                    let (j, y) = rhs.next().unwrap();
                    out.push((*j, a * y));
                }
                (Some(_), Some(_)) => {
                    let (i, x) = lhs.next().unwrap();
                    let (_, y) = rhs.next().unwrap();
                    let s = x + a * y;
                    if !s.is_zero() {
                        out.push((i, s));
                    }
                }
                (Some(_), None) => out.push(lhs.next().unwrap()),
                (None, Some(_)) => {
                    let (j, y) = rhs.next().unwrap();
                    out.push((*j, a * y));
                }
                (None, None) => break,
            }
        }
        self.entries = out;
    }

    pub fn dot(&self, other: &SparseVec) -> Scalar {
        let mut acc = Scalar::zero();
        let (mut p, mut q) = (0, 0);
        while p < self.entries.len() && q < other.entries.len() {
            let (i, x) = &self.entries[p];
            let (j, y) = &other.entries[q];
            match i.cmp(j) {
                std::cmp::Ordering::Less => p += 1,
                std::cmp::Ordering::Greater => q += 1,
                std::cmp::Ordering::Equal => {
                    acc += &(x * y);
                    p += 1;
                    q += 1;
                }
            }
        }
        acc
    }

    /// Re-indexes every entry through `f`; entries mapped to `None` are dropped.
    pub fn remap<F: Fn(usize) -> Option<usize>>(&self, f: F) -> SparseVec {
        SparseVec::from_entries(
            self.entries
                .iter()
                .filter_map(|(i, x)| f(*i).map(|j| (j, x.clone()))),
        )
    }

    pub fn shifted(&self, offset: usize) -> SparseVec {
        Self {
            entries: self
                .entries
                .iter()
                .map(|(i, x)| (i + offset, x.clone()))
                .collect(),
        }
    }
}

impl fmt::Debug for SparseVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map()
            .entries(self.entries.iter().map(|(i, x)| (i, x)))
            .finish()
    }
}

/// Dense scratch buffer for summing many sparse contributions.
pub struct Accumulator {
    values: Vec<Scalar>,
    touched: Vec<usize>,
    marked: Vec<bool>,
}

impl Accumulator {
    pub fn new(dim: usize) -> Self {
        Self {
            values: vec![Scalar::zero(); dim],
            touched: Vec::new(),
            marked: vec![false; dim],
        }
    }

    pub fn add(&mut self, i: usize, x: &Scalar) {
        if !self.marked[i] {
            self.marked[i] = true;
            self.touched.push(i);
        }
        self.values[i] += x;
    }

    pub fn add_scaled(&mut self, a: &Scalar, v: &SparseVec) {
        if a.is_zero() {
            return;
        }
        for (i, x) in v.iter() {
            if a.is_one() {
                self.add(i, x);
            } else {
                self.add(i, &(a * x));
            }
        }
    }

    /// Drains the buffer into a sparse vector, leaving it empty for reuse.
    pub fn take(&mut self) -> SparseVec {
        self.touched.sort_unstable();
        let mut entries = Vec::with_capacity(self.touched.len());
        for &i in &self.touched {
            self.marked[i] = false;
            let x = std::mem::take(&mut self.values[i]);
            if !x.is_zero() {
                entries.push((i, x));
            }
        }
        self.touched.clear();
        SparseVec::from_sorted_unchecked(entries)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn add_scaled_cancels() {
        let mut a = SparseVec::from_ints(&[1, 2, 0, 3]);
        let b = SparseVec::from_ints(&[1, 0, 5, 3]);
        a.add_scaled(&Scalar::from_int(-1), &b);
        assert_eq!(a, SparseVec::from_ints(&[0, 2, -5, 0]));
    }

    #[test]
    fn from_entries_merges() {
        let v = SparseVec::from_entries(vec![
            (3, Scalar::one()),
            (1, Scalar::one()),
            (3, Scalar::from_int(-1)),
        ]);
        assert_eq!(v, SparseVec::unit(1));
    }

    #[test]
    fn accumulator_reuse() {
        let mut acc = Accumulator::new(4);
        acc.add(2, &Scalar::one());
        acc.add(0, &Scalar::from_int(3));
        acc.add(2, &Scalar::from_int(-1));
        assert_eq!(acc.take(), SparseVec::from_ints(&[3, 0, 0, 0]));
        acc.add(1, &Scalar::one());
        assert_eq!(acc.take(), SparseVec::unit(1));
    }
}
