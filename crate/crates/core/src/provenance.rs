//! Contributor tracking for array products (`CatValMul` / `CatKeyMul`).
//!
//! Values are sets of tuples `(x₁, x₂, x₃, u)` with nonzero base components.
//! `⊕` is union; `⊗` multiplies componentwise over pairs of tuples that share
//! the vertex `u` and discards any product with a zero component.
//!
//! Lifting `A` to `A'(u, v) = {(1, a, a, u)} + i {(a, 1, a, v)}` and forming
//! `C = Im(A') ⊕.⊗ Re(B')` gives
//! `C(u, v) = {(A(u, w), B(w, v), A(u, w) ⊗ B(w, v), w) | A(u, w) ⊗ B(w, v) ≠ 0}`.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use rand::{Rng, RngCore};
use serde::Serialize;

use crate::array::{AssocArray, KeySet};
use crate::dual::{im_part, re_part, Dual, DualSemiring};
use crate::error::{Error, Result};
use crate::key::Key;
use crate::semiring::Semiring;

/// One contributor `(v1, v2, v3, key)`. Ordered by `(key, v1, v2, v3)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct ProvTuple<V> {
    pub key: Key,
    pub v1: V,
    pub v2: V,
    pub v3: V,
}

impl<V> ProvTuple<V> {
    pub fn new(v1: V, v2: V, v3: V, key: Key) -> Self {
        ProvTuple { key, v1, v2, v3 }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct ProvenanceSet<V: Ord>(pub BTreeSet<ProvTuple<V>>);

impl<V: Ord> ProvenanceSet<V> {
    pub fn empty() -> Self {
        ProvenanceSet(BTreeSet::new())
    }

    pub fn iter(&self) -> impl Iterator<Item = &ProvTuple<V>> {
        self.0.iter()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl<V: Ord> FromIterator<ProvTuple<V>> for ProvenanceSet<V> {
    fn from_iter<I: IntoIterator<Item = ProvTuple<V>>>(iter: I) -> Self {
        ProvenanceSet(iter.into_iter().collect())
    }
}

/// `Pow(T)` with `T = (S ∖ {0})³ × V`.
#[derive(Debug, PartialEq)]
pub struct ProvenanceSemiring<S: Semiring> {
    base: Arc<S>,
    vertices: Arc<KeySet>,
}

impl<S: Semiring> ProvenanceSemiring<S>
where
    S::Value: Ord,
{
    /// The vertex set is fixed here because the multiplicative identity is
    /// `{(1, 1, 1, u) | u ∈ V}`.
    pub fn new(base: Arc<S>, vertices: KeySet) -> Self {
        ProvenanceSemiring {
            base,
            vertices: Arc::new(vertices),
        }
    }

    pub fn base(&self) -> &Arc<S> {
        &self.base
    }

    pub fn vertices(&self) -> &KeySet {
        &self.vertices
    }

    fn in_t(&self, t: &ProvTuple<S::Value>) -> bool {
        !self.base.is_zero(&t.v1) && !self.base.is_zero(&t.v2) && !self.base.is_zero(&t.v3)
    }

    fn sample_nonzero(&self, rng: &mut dyn RngCore) -> S::Value {
        loop {
            let v = self.base.sample(rng);
            if !self.base.is_zero(&v) {
                return v;
            }
        }
    }
}

impl<S: Semiring> Semiring for ProvenanceSemiring<S>
where
    S::Value: Ord,
{
    type Value = ProvenanceSet<S::Value>;

    fn name(&self) -> String {
        format!("provenance:{}", self.base.name())
    }

    fn zero(&self) -> Self::Value {
        ProvenanceSet::empty()
    }

    fn one(&self) -> Self::Value {
        let one = self.base.one();
        self.vertices
            .iter()
            .map(|u| ProvTuple::new(one.clone(), one.clone(), one.clone(), u.clone()))
            .collect()
    }

    fn add(&self, x: &Self::Value, y: &Self::Value) -> Self::Value {
        ProvenanceSet(x.0.union(&y.0).cloned().collect())
    }

    fn mul(&self, x: &Self::Value, y: &Self::Value) -> Self::Value {
        let b = &*self.base;
        let mut by_key: BTreeMap<&Key, Vec<&ProvTuple<S::Value>>> = BTreeMap::new();
        for t in &y.0 {
            by_key.entry(&t.key).or_default().push(t);
        }
        let mut out = BTreeSet::new();
        for s in &x.0 {
            let Some(matches) = by_key.get(&s.key) else { continue };
            for t in matches {
                let p = ProvTuple::new(
                    b.mul(&s.v1, &t.v1),
                    b.mul(&s.v2, &t.v2),
                    b.mul(&s.v3, &t.v3),
                    s.key.clone(),
                );
                if self.in_t(&p) {
                    out.insert(p);
                }
            }
        }
        ProvenanceSet(out)
    }

    fn validate(&self, x: &Self::Value) -> Result<()> {
        for t in &x.0 {
            if !self.in_t(t) {
                return Err(Error::InvalidValue {
                    value: format!("{t:?}"),
                    reason: "provenance tuples need three nonzero components".into(),
                });
            }
            if !self.vertices.contains(&t.key) {
                return Err(Error::UnknownVertex(t.key.clone()));
            }
        }
        Ok(())
    }

    fn sample(&self, rng: &mut dyn RngCore) -> Self::Value {
        let fallback: KeySet = (1..=3).map(Key::from).collect();
        let keys: Vec<&Key> = if self.vertices.is_empty() {
            fallback.iter().collect()
        } else {
            self.vertices.iter().collect()
        };
        let count = rng.gen_range(0..=4usize);
        (0..count)
            .map(|_| {
                let key = keys[rng.gen_range(0..keys.len())].clone();
                ProvTuple::new(
                    self.sample_nonzero(rng),
                    self.sample_nonzero(rng),
                    self.sample_nonzero(rng),
                    key,
                )
            })
            .collect()
    }
}

pub type ProvenanceArray<S> = AssocArray<ProvenanceSemiring<S>>;
pub type LiftedArray<S> = AssocArray<DualSemiring<ProvenanceSemiring<S>>>;

/// Sets of items per `(row, col)`; only nonempty entries are present.
pub type SetArray<T> = BTreeMap<(Key, Key), BTreeSet<T>>;

/// `A'(u, v) = {(1, A(u, v), A(u, v), u)} + i {(A(u, v), 1, A(u, v), v)}` for
/// stored entries; zeros lift to `∅ + i ∅` and are not stored.
pub fn lift_provenance<S: Semiring>(
    a: &AssocArray<S>,
    semiring: Arc<ProvenanceSemiring<S>>,
) -> LiftedArray<S>
where
    S::Value: Ord,
{
    let one = semiring.base().one();
    let dual = Arc::new(DualSemiring::new(semiring));
    // the map closure sees only values, so walk the triples directly
    let triples = a.iter().map(|(u, v, x)| {
        let re = ProvenanceSet::from_iter([ProvTuple::new(one.clone(), x.clone(), x.clone(), u.clone())]);
        let im = ProvenanceSet::from_iter([ProvTuple::new(x.clone(), one.clone(), x.clone(), v.clone())]);
        (u.clone(), v.clone(), Dual::new(re, im))
    });
    let lifted = AssocArray::from_triples_with_keys(
        dual,
        Arc::clone(a.shared_rows()),
        Arc::clone(a.shared_cols()),
        triples,
    );
    // keys come from `a` itself, so they always lie in its key sets
    lifted.expect("lifted entries stay inside the source key sets")
}

fn vertex_universe<S: Semiring>(a: &AssocArray<S>, b: &AssocArray<S>) -> KeySet {
    let mut v = KeySet::new();
    for ks in [a.row_keys(), a.col_keys(), b.row_keys(), b.col_keys()] {
        v.extend(ks.iter().cloned());
    }
    v
}

/// `C = Im(A') ⊕.⊗ Re(B')` over `V = ` all keys of `A` and `B`.
pub fn provenance_product<S: Semiring>(
    a: &AssocArray<S>,
    b: &AssocArray<S>,
) -> Result<ProvenanceArray<S>>
where
    S::Value: Ord,
{
    if **a.semiring() != **b.semiring() {
        return Err(Error::SemiringMismatch {
            left: a.semiring().name(),
            right: b.semiring().name(),
        });
    }
    a.check_conformable(b)?;
    let prov = Arc::new(ProvenanceSemiring::new(
        Arc::clone(a.semiring()),
        vertex_universe(a, b),
    ));
    let a_lift = lift_provenance(a, Arc::clone(&prov));
    let b_lift = lift_provenance(b, prov);
    im_part(&a_lift).array_mul(&re_part(&b_lift))
}

/// `π₁,₂` of every contributor: which value pairs produced each entry.
pub fn cat_val_mul<S: Semiring>(
    a: &AssocArray<S>,
    b: &AssocArray<S>,
) -> Result<SetArray<(S::Value, S::Value)>>
where
    S::Value: Ord,
{
    let c = provenance_product(a, b)?;
    Ok(project(&c, |t| (t.v1.clone(), t.v2.clone())))
}

/// `π₄` of every contributor: which inner keys produced each entry.
pub fn cat_key_mul<S: Semiring>(a: &AssocArray<S>, b: &AssocArray<S>) -> Result<SetArray<Key>>
where
    S::Value: Ord,
{
    let c = provenance_product(a, b)?;
    Ok(project(&c, |t| t.key.clone()))
}

pub fn project<S, T, F>(c: &ProvenanceArray<S>, mut f: F) -> SetArray<T>
where
    S: Semiring,
    S::Value: Ord,
    T: Ord,
    F: FnMut(&ProvTuple<S::Value>) -> T,
{
    c.iter()
        .map(|(u, v, set)| ((u.clone(), v.clone()), set.iter().map(&mut f).collect()))
        .collect()
}

/// Recovers `A ⊕.⊗ B` from `C` in both ways: `⊕ (x ⊗ y)` and `⊕ z` over the
/// contributors of each entry. Disagreement is an error.
pub fn recover_product<S: Semiring>(c: &ProvenanceArray<S>) -> Result<AssocArray<S>>
where
    S::Value: Ord,
{
    let base = c.semiring().base();
    let mut triples = Vec::with_capacity(c.nnz());
    for (u, v, set) in c.iter() {
        let mut by_pair = base.zero();
        let mut by_prod = base.zero();
        for t in set.iter() {
            by_pair = base.try_add(&by_pair, &base.try_mul(&t.v1, &t.v2)?)?;
            by_prod = base.try_add(&by_prod, &t.v3)?;
        }
        if !base.values_eq(&by_pair, &by_prod) {
            return Err(Error::RecoveryMismatch {
                row: u.clone(),
                col: v.clone(),
            });
        }
        triples.push((u.clone(), v.clone(), by_pair));
    }
    AssocArray::from_triples_with_keys(
        Arc::clone(base),
        Arc::new(c.row_keys().clone()),
        Arc::new(c.col_keys().clone()),
        triples,
    )
}
