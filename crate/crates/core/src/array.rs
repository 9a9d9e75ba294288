//! Associative arrays: finitely supported maps `K1 × K2 → S`.
//!
//! Entries are kept as sorted `(row, col) -> value` triples with no stored
//! zeros. Key sets are explicit and may be larger than the support.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::key::Key;
use crate::semiring::Semiring;

pub type KeySet = BTreeSet<Key>;

pub struct AssocArray<S: Semiring> {
    semiring: Arc<S>,
    rows: Arc<KeySet>,
    cols: Arc<KeySet>,
    entries: BTreeMap<(Key, Key), S::Value>,
}

impl<S: Semiring> Clone for AssocArray<S> {
    fn clone(&self) -> Self {
        AssocArray {
            semiring: Arc::clone(&self.semiring),
            rows: Arc::clone(&self.rows),
            cols: Arc::clone(&self.cols),
            entries: self.entries.clone(),
        }
    }
}

impl<S: Semiring> PartialEq for AssocArray<S> {
    fn eq(&self, other: &Self) -> bool {
        same_semiring(&self.semiring, &other.semiring)
            && same_keys(&self.rows, &other.rows)
            && same_keys(&self.cols, &other.cols)
            && self.entries.len() == other.entries.len()
            && self
                .entries
                .iter()
                .zip(&other.entries)
                .all(|((ka, va), (kb, vb))| ka == kb && self.semiring.values_eq(va, vb))
    }
}

impl<S: Semiring> fmt::Debug for AssocArray<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("AssocArray")
            .field("semiring", &self.semiring.name())
            .field("rows", &self.rows.len())
            .field("cols", &self.cols.len())
            .field("entries", &self.entries)
            .finish()
    }
}

fn same_semiring<S: Semiring>(a: &Arc<S>, b: &Arc<S>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

fn same_keys(a: &Arc<KeySet>, b: &Arc<KeySet>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

fn union_keys(a: &Arc<KeySet>, b: &Arc<KeySet>) -> Arc<KeySet> {
    if same_keys(a, b) || b.is_subset(a) {
        Arc::clone(a)
    } else if a.is_subset(b) {
        Arc::clone(b)
    } else {
        Arc::new(a.union(b).cloned().collect())
    }
}

fn intersect_keys(a: &Arc<KeySet>, b: &Arc<KeySet>) -> Arc<KeySet> {
    if same_keys(a, b) || a.is_subset(b) {
        Arc::clone(a)
    } else if b.is_subset(a) {
        Arc::clone(b)
    } else {
        Arc::new(a.intersection(b).cloned().collect())
    }
}

impl<S: Semiring> AssocArray<S> {
    pub fn empty(semiring: Arc<S>) -> Self {
        Self::with_keys(semiring, KeySet::new(), KeySet::new())
    }

    /// An array with the given key sets and no entries.
    pub fn with_keys(semiring: Arc<S>, rows: KeySet, cols: KeySet) -> Self {
        Self::with_shared_keys(semiring, Arc::new(rows), Arc::new(cols))
    }

    pub fn with_shared_keys(semiring: Arc<S>, rows: Arc<KeySet>, cols: Arc<KeySet>) -> Self {
        AssocArray {
            semiring,
            rows,
            cols,
            entries: BTreeMap::new(),
        }
    }

    /// Builds an array from triples. Duplicate keys are `⊕`-combined, zeros are
    /// dropped and the key sets are the keys seen.
    pub fn from_triples<I>(semiring: Arc<S>, triples: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Key, Key, S::Value)>,
    {
        let mut rows = KeySet::new();
        let mut cols = KeySet::new();
        let mut acc: BTreeMap<(Key, Key), S::Value> = BTreeMap::new();
        for (r, c, v) in triples {
            rows.insert(r.clone());
            cols.insert(c.clone());
            accumulate(&*semiring, &mut acc, (r, c), v)?;
        }
        Ok(Self::finish(semiring, Arc::new(rows), Arc::new(cols), acc))
    }

    /// Like [`from_triples`](Self::from_triples) but over caller-supplied key
    /// sets; a triple outside them is an error.
    pub fn from_triples_with_keys<I>(
        semiring: Arc<S>,
        rows: Arc<KeySet>,
        cols: Arc<KeySet>,
        triples: I,
    ) -> Result<Self>
    where
        I: IntoIterator<Item = (Key, Key, S::Value)>,
    {
        let mut acc: BTreeMap<(Key, Key), S::Value> = BTreeMap::new();
        for (r, c, v) in triples {
            if !rows.contains(&r) || !cols.contains(&c) {
                return Err(Error::KeyOutOfDomain { row: r, col: c });
            }
            accumulate(&*semiring, &mut acc, (r, c), v)?;
        }
        Ok(Self::finish(semiring, rows, cols, acc))
    }

    fn finish(
        semiring: Arc<S>,
        rows: Arc<KeySet>,
        cols: Arc<KeySet>,
        mut entries: BTreeMap<(Key, Key), S::Value>,
    ) -> Self {
        entries.retain(|_, v| !semiring.is_zero(v));
        AssocArray {
            semiring,
            rows,
            cols,
            entries,
        }
    }

    /// The `⊗`-identity over `keys`: `1` on the diagonal.
    pub fn identity(semiring: Arc<S>, keys: KeySet) -> Self {
        let keys = Arc::new(keys);
        let one = semiring.one();
        let entries = keys.iter().map(|k| ((k.clone(), k.clone()), one.clone())).collect();
        Self::finish(semiring, Arc::clone(&keys), keys, entries)
    }

    pub fn semiring(&self) -> &Arc<S> {
        &self.semiring
    }

    pub fn row_keys(&self) -> &KeySet {
        &self.rows
    }

    pub fn col_keys(&self) -> &KeySet {
        &self.cols
    }

    pub(crate) fn shared_rows(&self) -> &Arc<KeySet> {
        &self.rows
    }

    pub(crate) fn shared_cols(&self) -> &Arc<KeySet> {
        &self.cols
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, row: &Key, col: &Key) -> Option<&S::Value> {
        // BTreeMap<(Key, Key), _> cannot be probed with borrowed parts
        self.entries.get(&(row.clone(), col.clone()))
    }

    /// Value at `(row, col)`, reading missing entries as `0`.
    pub fn value(&self, row: &Key, col: &Key) -> S::Value {
        self.get(row, col).cloned().unwrap_or_else(|| self.semiring.zero())
    }

    /// Stored triples in row-major order.
    pub fn iter(&self) -> impl Iterator<Item = (&Key, &Key, &S::Value)> + '_ {
        self.entries.iter().map(|((r, c), v)| (r, c, v))
    }

    pub fn triples(&self) -> Vec<(Key, Key, S::Value)> {
        self.iter().map(|(r, c, v)| (r.clone(), c.clone(), v.clone())).collect()
    }

    /// Same entries over enlarged key sets. Fails if an entry would fall out.
    pub fn with_key_sets(&self, rows: Arc<KeySet>, cols: Arc<KeySet>) -> Result<Self> {
        for (r, c) in self.entries.keys() {
            if !rows.contains(r) || !cols.contains(c) {
                return Err(Error::KeyOutOfDomain {
                    row: r.clone(),
                    col: c.clone(),
                });
            }
        }
        Ok(AssocArray {
            semiring: Arc::clone(&self.semiring),
            rows,
            cols,
            entries: self.entries.clone(),
        })
    }

    /// Keeps the entries for which `keep` holds, over the same key sets.
    pub fn filter<F>(&self, mut keep: F) -> Self
    where
        F: FnMut(&Key, &Key, &S::Value) -> bool,
    {
        AssocArray {
            semiring: Arc::clone(&self.semiring),
            rows: Arc::clone(&self.rows),
            cols: Arc::clone(&self.cols),
            entries: self
                .entries
                .iter()
                .filter(|((r, c), v)| keep(r, c, v))
                .map(|(k, v)| (k.clone(), v.clone()))
                .collect(),
        }
    }

    /// Applies `f` entrywise into another semiring, keeping the key sets and
    /// dropping results equal to the target zero.
    pub fn map_values<T, F>(&self, target: Arc<T>, mut f: F) -> AssocArray<T>
    where
        T: Semiring,
        F: FnMut(&S::Value) -> T::Value,
    {
        let entries = self.entries.iter().map(|(k, v)| (k.clone(), f(v))).collect();
        AssocArray::finish(target, Arc::clone(&self.rows), Arc::clone(&self.cols), entries)
    }

    fn check_semiring(&self, other: &Self) -> Result<()> {
        if same_semiring(&self.semiring, &other.semiring) {
            Ok(())
        } else {
            Err(Error::SemiringMismatch {
                left: self.semiring.name(),
                right: other.semiring.name(),
            })
        }
    }

    pub fn same_key_sets(&self, other: &Self) -> bool {
        same_keys(&self.rows, &other.rows) && same_keys(&self.cols, &other.cols)
    }

    /// `A ⊕ B` over `(K1 ∪ K3) × (K2 ∪ K4)`, missing entries read as `0`.
    pub fn ewise_add(&self, other: &Self) -> Result<Self> {
        self.check_semiring(other)?;
        let s = &*self.semiring;
        let mut entries = self.entries.clone();
        for (k, v) in &other.entries {
            accumulate(s, &mut entries, k.clone(), v.clone())?;
        }
        Ok(Self::finish(
            Arc::clone(&self.semiring),
            union_keys(&self.rows, &other.rows),
            union_keys(&self.cols, &other.cols),
            entries,
        ))
    }

    /// `A ⊗ B` over `(K1 ∩ K3) × (K2 ∩ K4)`.
    pub fn ewise_mul(&self, other: &Self) -> Result<Self> {
        self.check_semiring(other)?;
        let s = &*self.semiring;
        let (small, large, swapped) = if self.entries.len() <= other.entries.len() {
            (&self.entries, &other.entries, false)
        } else {
            (&other.entries, &self.entries, true)
        };
        let mut entries = BTreeMap::new();
        for (k, a) in small {
            if let Some(b) = large.get(k) {
                let v = if swapped { s.try_mul(b, a)? } else { s.try_mul(a, b)? };
                entries.insert(k.clone(), v);
            }
        }
        Ok(Self::finish(
            Arc::clone(&self.semiring),
            intersect_keys(&self.rows, &other.rows),
            intersect_keys(&self.cols, &other.cols),
            entries,
        ))
    }

    /// Array product over `K1 × K4`:
    /// `C(i, j) = ⊕_{k ∈ K2 ∩ K3} A(i, k) ⊗ B(k, j)`.
    ///
    /// Only stored entries are visited; zero operands annihilate, so skipping
    /// them leaves the sum unchanged.
    pub fn array_mul(&self, other: &Self) -> Result<Self> {
        self.check_semiring(other)?;
        let s = &*self.semiring;

        let mut entries: BTreeMap<(Key, Key), S::Value> = BTreeMap::new();
        for ((i, k), a) in &self.entries {
            // entries are sorted by row, so row k of `other` is one range
            let row = other
                .entries
                .range((k.clone(), Key::MIN)..)
                .take_while(|((r, _), _)| r == k);
            for ((_, j), b) in row {
                let term = s.try_mul(a, b)?;
                accumulate(s, &mut entries, (i.clone(), j.clone()), term)?;
            }
        }
        Ok(Self::finish(
            Arc::clone(&self.semiring),
            Arc::clone(&self.rows),
            Arc::clone(&other.cols),
            entries,
        ))
    }

    pub fn transpose(&self) -> Self {
        AssocArray {
            semiring: Arc::clone(&self.semiring),
            rows: Arc::clone(&self.cols),
            cols: Arc::clone(&self.rows),
            entries: self
                .entries
                .iter()
                .map(|((r, c), v)| ((c.clone(), r.clone()), v.clone()))
                .collect(),
        }
    }

    /// `⊕` of all stored values.
    pub fn sum_all(&self) -> Result<S::Value> {
        let s = &*self.semiring;
        self.entries
            .values()
            .try_fold(s.zero(), |acc, v| s.try_add(&acc, v))
    }

    /// Requires `self`'s column keys to equal `other`'s row keys.
    pub fn check_conformable(&self, other: &Self) -> Result<()> {
        if same_keys(&self.cols, &other.rows) {
            Ok(())
        } else {
            Err(Error::Conformability(format!(
                "left operand has {} column keys, right operand has {} row keys and they differ",
                self.cols.len(),
                other.rows.len()
            )))
        }
    }
}

fn accumulate<S: Semiring>(
    s: &S,
    acc: &mut BTreeMap<(Key, Key), S::Value>,
    key: (Key, Key),
    v: S::Value,
) -> Result<()> {
    use std::collections::btree_map::Entry;
    match acc.entry(key) {
        Entry::Vacant(slot) => {
            slot.insert(v);
        }
        Entry::Occupied(mut slot) => {
            let sum = s.try_add(slot.get(), &v)?;
            *slot.get_mut() = sum;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semiring::{Scalar, StockSemiring};

    fn sr(s: StockSemiring) -> Arc<StockSemiring> {
        Arc::new(s)
    }

    fn arr(s: StockSemiring, t: &[(&str, &str, f64)]) -> AssocArray<StockSemiring> {
        AssocArray::from_triples(
            sr(s),
            t.iter().map(|&(r, c, v)| (Key::parse(r), Key::parse(c), Scalar::of(v))),
        )
        .unwrap()
    }

    #[test]
    fn from_triples_edge_cases() {
        let empty = arr(StockSemiring::MinPlus, &[]);
        assert_eq!(empty.nnz(), 0);

        let dup = arr(StockSemiring::MinPlus, &[("a", "b", 2.0), ("a", "b", 3.0)]);
        assert_eq!(dup.nnz(), 1);
        assert_eq!(dup.get(&"a".into(), &"b".into()), Some(&Scalar::of(2.0)));

        let zero = arr(StockSemiring::ArithNat, &[("a", "b", 0.0)]);
        assert_eq!(zero.nnz(), 0);
    }

    #[test]
    fn duplicates_merging_to_zero_reduce_count() {
        // min-plus zero is inf, so the (a, b) duplicates merge to zero and vanish
        let a = arr(
            StockSemiring::MinPlus,
            &[("a", "b", f64::INFINITY), ("a", "b", f64::INFINITY), ("c", "d", 1.0), ("e", "f", 2.0)],
        );
        assert_eq!(a.nnz(), 2);
    }

    #[test]
    fn nnz_counts_distinct() {
        let a = arr(StockSemiring::ArithNat, &[("a", "b", 1.0), ("a", "c", 1.0), ("b", "c", 1.0)]);
        assert_eq!(a.nnz(), 3);
    }

    #[test]
    fn ewise_add_examples() {
        let a = arr(StockSemiring::MinPlus, &[("a", "b", 2.0)]);
        let e = AssocArray::empty(Arc::clone(a.semiring()));
        assert_eq!(a.ewise_add(&e).unwrap(), a);

        let b = arr(StockSemiring::MinPlus, &[("a", "b", 3.0)]);
        assert_eq!(a.ewise_add(&b).unwrap(), a);

        let c = arr(StockSemiring::MinPlus, &[("c", "d", 3.0)]);
        let sum = a.ewise_add(&c).unwrap();
        assert_eq!(sum.nnz(), 2);
        assert_eq!(sum.row_keys().len(), 2);
        assert_eq!(sum.col_keys().len(), 2);
    }

    #[test]
    fn ewise_mul_examples() {
        let a = arr(StockSemiring::ArithNat, &[("a", "b", 2.0)]);
        let e = AssocArray::empty(Arc::clone(a.semiring()));
        assert!(a.ewise_mul(&e).unwrap().is_empty());

        let b = arr(StockSemiring::ArithNat, &[("a", "b", 3.0)]);
        assert_eq!(a.ewise_mul(&b).unwrap().get(&"a".into(), &"b".into()), Some(&Scalar::of(6.0)));

        let c = arr(StockSemiring::ArithNat, &[("c", "d", 3.0)]);
        let p = a.ewise_mul(&c).unwrap();
        assert!(p.is_empty());
        assert!(p.row_keys().is_empty());
    }

    #[test]
    fn semiring_mismatch_is_an_error() {
        let a = arr(StockSemiring::ArithNat, &[("a", "b", 2.0)]);
        let b = arr(StockSemiring::MinPlus, &[("a", "b", 2.0)]);
        assert!(matches!(a.ewise_add(&b), Err(Error::SemiringMismatch { .. })));
        assert!(matches!(a.ewise_mul(&b), Err(Error::SemiringMismatch { .. })));
        assert!(matches!(a.array_mul(&b), Err(Error::SemiringMismatch { .. })));
    }

    #[test]
    fn min_plus_square() {
        // brute force: (1,1) = 1+1; (1,2) = min(1+2, 2+3); (2,2) = 3+3
        let a = arr(StockSemiring::MinPlus, &[("1", "1", 1.0), ("1", "2", 2.0), ("2", "2", 3.0)]);
        let sq = a.array_mul(&a).unwrap();
        let expected = arr(StockSemiring::MinPlus, &[("1", "1", 2.0), ("1", "2", 3.0), ("2", "2", 6.0)]);
        assert_eq!(sq.triples(), expected.triples());
    }

    #[test]
    fn identity_and_empty_products() {
        let a = arr(StockSemiring::ArithNat, &[("1", "1", 1.0), ("1", "2", 2.0), ("2", "2", 3.0)]);
        let id = AssocArray::identity(Arc::clone(a.semiring()), a.col_keys().clone());
        assert_eq!(a.array_mul(&id).unwrap(), a);
        let id_rows = AssocArray::identity(Arc::clone(a.semiring()), a.row_keys().clone());
        assert_eq!(id_rows.array_mul(&a).unwrap(), a);

        let e = AssocArray::empty(Arc::clone(a.semiring()));
        assert!(e.array_mul(&a).unwrap().is_empty());
        assert!(a.array_mul(&e).unwrap().is_empty());
    }

    #[test]
    fn transpose_examples() {
        let a = arr(StockSemiring::ArithNat, &[("a", "b", 2.0)]);
        let t = a.transpose();
        assert_eq!(t.get(&"b".into(), &"a".into()), Some(&Scalar::of(2.0)));
        assert_eq!(t.transpose(), a);

        let d = arr(StockSemiring::ArithNat, &[("x", "x", 2.0), ("y", "y", 5.0)]);
        assert_eq!(d.transpose(), d);
    }

    #[test]
    fn explicit_keys_reject_out_of_domain() {
        let rows: KeySet = [Key::from(1)].into();
        let cols: KeySet = [Key::from(1)].into();
        let res = AssocArray::from_triples_with_keys(
            sr(StockSemiring::ArithNat),
            Arc::new(rows),
            Arc::new(cols),
            [(Key::from(1), Key::from(2), Scalar::ONE)],
        );
        assert!(matches!(res, Err(Error::KeyOutOfDomain { .. })));
    }
}
