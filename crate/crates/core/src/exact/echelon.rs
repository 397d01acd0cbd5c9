use alloc::collections::BTreeMap;

use super::lincomb::LinComb;

/// Incrementally maintained echelon basis of a subspace of sparse vectors.
///
/// Each stored row has coefficient 1 at its pivot, which is the smallest key
/// in its support, and no two rows share a pivot.
#[derive(Clone, Debug)]
pub struct EchelonBasis<K: Ord + Clone> {
    rows: BTreeMap<K, LinComb<K>>,
}

impl<K: Ord + Clone> Default for EchelonBasis<K> {
    fn default() -> Self {
        EchelonBasis { rows: BTreeMap::new() }
    }
}

impl<K: Ord + Clone> EchelonBasis<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> impl Iterator<Item = &LinComb<K>> {
        self.rows.values()
    }

    /// The residual of `v` after elimination against the basis; zero iff
    /// `v` lies in the span.
    pub fn reduce(&self, v: &LinComb<K>) -> LinComb<K> {
        let mut v = v.clone();
        let mut cursor: Option<K> = None;
        loop {
            let next = match &cursor {
                None => v.keys().find(|k| self.rows.contains_key(k)).cloned(),
                Some(c) => v.keys().skip_while(|k| *k <= c).find(|k| self.rows.contains_key(k)).cloned(),
            };
            let Some(k) = next else { break };
            let c = v.coeff(&k);
            v.add_scaled(&self.rows[&k], &-c);
            cursor = Some(k);
        }
        v
    }

    pub fn contains(&self, v: &LinComb<K>) -> bool {
        self.reduce(v).is_zero()
    }

    /// Adds `v` to the spanning set; returns whether the dimension grew.
    pub fn insert(&mut self, v: &LinComb<K>) -> bool {
        let r = self.reduce(v);
        let Some(pivot) = r.first_key().cloned() else { return false };
        let inv = r.coeff(&pivot).inv();
        self.rows.insert(pivot, r.scale(&inv));
        true
    }
}

/// Dimension of the span of a family of sparse vectors.
pub fn sparse_rank<'a, K: Ord + Clone + 'a>(vs: impl IntoIterator<Item = &'a LinComb<K>>) -> usize {
    let mut b = EchelonBasis::new();
    for v in vs {
        b.insert(v);
    }
    b.dim()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::Scalar;
    use alloc::vec;

    fn v(entries: &[(u32, i64)]) -> LinComb<u32> {
        entries.iter().map(|&(k, c)| (k, Scalar::int(c))).collect()
    }

    #[test]
    fn insert_and_contains() {
        let mut b = EchelonBasis::new();
        assert!(b.insert(&v(&[(0, 1), (1, 1)])));
        assert!(b.insert(&v(&[(1, 1), (2, 2)])));
        assert!(!b.insert(&v(&[(0, 1), (1, 2), (2, 2)])));
        assert!(b.contains(&v(&[(0, 2), (1, 3), (2, 2)])));
        assert!(!b.contains(&v(&[(2, 1)])));
        assert_eq!(b.dim(), 2);
        assert!(!b.insert(&LinComb::zero()));
    }

    #[test]
    fn rank_matches_dense() {
        let rows = vec![v(&[(0, 1), (1, 1)]), v(&[(0, 2), (1, 2)]), v(&[(3, 5)])];
        assert_eq!(sparse_rank(&rows), 2);
    }
}
