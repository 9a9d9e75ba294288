//! Optimal n-hop path tracking with the tropical path semiring.
//!
//! Values are pairs `(weight, paths)`: `⊕` keeps the lighter pair and unions
//! the path sets on an exact weight tie, `⊗` adds weights and concatenates
//! every pair of paths. Iterating `B₁ = Re(Ã)`, `Bₙ₊₁ = Bₙ ⊕.⊗ Im(Ã)` yields,
//! for every vertex pair, the least n-hop weight and all paths attaining it.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use rand::{Rng, RngCore};
use serde::Serialize;

use crate::array::AssocArray;
use crate::dual::{im_part, re_part, Dual, DualSemiring};
use crate::error::{Error, Result};
use crate::graph::GraphArrays;
use crate::key::Key;
use crate::semiring::{Scalar, Semiring};

pub const DEFAULT_PATH_GUARD: usize = 10_000;
pub const DEFAULT_ENUMERATION_BUDGET: u128 = 10_000_000;

/// A vertex string `⟨v₁, …, vₙ⟩`, possibly empty.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct PathString(pub Vec<Key>);

impl PathString {
    pub fn empty() -> Self {
        PathString(Vec::new())
    }

    pub fn concat(&self, other: &PathString) -> PathString {
        let mut v = Vec::with_capacity(self.0.len() + other.0.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        PathString(v)
    }

    pub fn vertices(&self) -> &[Key] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl<K: Into<Key>> FromIterator<K> for PathString {
    fn from_iter<I: IntoIterator<Item = K>>(iter: I) -> Self {
        PathString(iter.into_iter().map(Into::into).collect())
    }
}

impl fmt::Display for PathString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("<")?;
        for (i, k) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{k}")?;
        }
        f.write_str(">")
    }
}

/// `(weight, set of paths)`.
///
/// A pair with infinite weight always carries the empty set: `(∞, X)` is
/// stored as `(∞, ∅)`. Without this, `x ↦ ∞ + x` fails to be injective and
/// distributivity breaks for operands like `(∞, {p})`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TropicalPathValue {
    weight: Scalar,
    paths: BTreeSet<PathString>,
}

impl TropicalPathValue {
    pub fn new(weight: Scalar, paths: BTreeSet<PathString>) -> Self {
        let paths = if weight.is_infinite() { BTreeSet::new() } else { paths };
        TropicalPathValue { weight, paths }
    }

    pub fn single(weight: Scalar, path: PathString) -> Self {
        Self::new(weight, BTreeSet::from([path]))
    }

    /// `(∞, ∅)`.
    pub fn unreachable() -> Self {
        Self::new(Scalar::INFINITY, BTreeSet::new())
    }

    pub fn weight(&self) -> Scalar {
        self.weight
    }

    pub fn paths(&self) -> &BTreeSet<PathString> {
        &self.paths
    }
}

impl fmt::Display for TropicalPathValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {{", self.weight)?;
        for (i, p) in self.paths.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str("})")
    }
}

/// `[0, ∞] × Pow(V⋆)` with the tie-union `⊕` and concatenating `⊗`.
#[derive(Clone, Debug, PartialEq)]
pub struct TropicalPathSemiring {
    guard: usize,
    alphabet: Vec<Key>,
}

impl TropicalPathSemiring {
    /// `guard` bounds every produced path set; exceeding it is an error from
    /// `try_add`/`try_mul`. `alphabet` is only used for sampling.
    pub fn new(guard: usize, alphabet: Vec<Key>) -> Self {
        assert!(guard >= 1, "path guard must be at least 1");
        TropicalPathSemiring { guard, alphabet }
    }

    pub fn guard(&self) -> usize {
        self.guard
    }

    fn capacity_error(&self, x: &TropicalPathValue, y: &TropicalPathValue) -> Error {
        Error::PathCapacity {
            guard: self.guard,
            left: summarize(x),
            right: summarize(y),
        }
    }
}

impl Default for TropicalPathSemiring {
    fn default() -> Self {
        Self::new(DEFAULT_PATH_GUARD, Vec::new())
    }
}

fn summarize(v: &TropicalPathValue) -> String {
    format!("(weight {}, {} paths)", v.weight, v.paths.len())
}

impl Semiring for TropicalPathSemiring {
    type Value = TropicalPathValue;

    fn name(&self) -> String {
        "tropical-path".into()
    }

    fn zero(&self) -> TropicalPathValue {
        TropicalPathValue::unreachable()
    }

    fn one(&self) -> TropicalPathValue {
        TropicalPathValue::single(Scalar::ZERO, PathString::empty())
    }

    fn add(&self, x: &TropicalPathValue, y: &TropicalPathValue) -> TropicalPathValue {
        match x.weight.cmp(&y.weight) {
            std::cmp::Ordering::Less => x.clone(),
            std::cmp::Ordering::Greater => y.clone(),
            std::cmp::Ordering::Equal => {
                TropicalPathValue::new(x.weight, x.paths.union(&y.paths).cloned().collect())
            }
        }
    }

    fn mul(&self, x: &TropicalPathValue, y: &TropicalPathValue) -> TropicalPathValue {
        let weight = Scalar::of(x.weight.get() + y.weight.get());
        let mut paths = BTreeSet::new();
        if !weight.is_infinite() {
            for p in &x.paths {
                for q in &y.paths {
                    paths.insert(p.concat(q));
                }
            }
        }
        TropicalPathValue::new(weight, paths)
    }

    fn try_add(&self, x: &TropicalPathValue, y: &TropicalPathValue) -> Result<TropicalPathValue> {
        let sum = self.add(x, y);
        if sum.paths.len() > self.guard {
            return Err(self.capacity_error(x, y));
        }
        Ok(sum)
    }

    fn try_mul(&self, x: &TropicalPathValue, y: &TropicalPathValue) -> Result<TropicalPathValue> {
        let weight = Scalar::of(x.weight.get() + y.weight.get());
        let mut paths = BTreeSet::new();
        if !weight.is_infinite() {
            for p in &x.paths {
                for q in &y.paths {
                    paths.insert(p.concat(q));
                    if paths.len() > self.guard {
                        return Err(self.capacity_error(x, y));
                    }
                }
            }
        }
        Ok(TropicalPathValue::new(weight, paths))
    }

    fn sample(&self, rng: &mut dyn RngCore) -> TropicalPathValue {
        let weight = match rng.gen_range(0u32..12) {
            11 => Scalar::INFINITY,
            k => Scalar::of(f64::from(k)),
        };
        let fallback: Vec<Key> = (1..=4).map(Key::from).collect();
        let alphabet = if self.alphabet.is_empty() { &fallback } else { &self.alphabet };
        let count = rng.gen_range(0..=3usize);
        let paths = (0..count)
            .map(|_| {
                let len = rng.gen_range(0..=3usize);
                PathString(
                    (0..len)
                        .map(|_| alphabet[rng.gen_range(0..alphabet.len())].clone())
                        .collect(),
                )
            })
            .collect();
        TropicalPathValue::new(weight, paths)
    }
}

pub type PathAdjacency = AssocArray<DualSemiring<TropicalPathSemiring>>;

/// `Ã(u, v) = (A(u, v), {⟨u, v⟩}) + i (A(u, v), {⟨v⟩})` for every edge `(u, v)`.
///
/// Non-edges carry no entry, i.e. the dual zero `(∞, ∅) + i (∞, ∅)`.
pub fn build_path_adjacency<S>(g: &GraphArrays<S>, guard: usize) -> Result<PathAdjacency>
where
    S: Semiring<Value = Scalar>,
{
    let base = Arc::new(TropicalPathSemiring::new(
        guard,
        g.vertices.iter().cloned().collect(),
    ));
    let dual = Arc::new(DualSemiring::new(base));
    let vertices = Arc::new(g.vertices.clone());
    AssocArray::from_triples_with_keys(
        dual,
        Arc::clone(&vertices),
        vertices,
        g.edge_list.iter().map(|(_, u, v, w)| {
            let re = TropicalPathValue::single(*w, PathString(vec![u.clone(), v.clone()]));
            let im = TropicalPathValue::single(*w, PathString(vec![v.clone()]));
            (u.clone(), v.clone(), Dual::new(re, im))
        }),
    )
}

/// `Bₙ(u, v)`: least weight over n-hop `u → v` paths and every path attaining
/// it. Pairs with no n-hop path have no entry.
pub fn optimal_nhop_paths<S>(
    g: &GraphArrays<S>,
    hops: usize,
    guard: usize,
) -> Result<AssocArray<TropicalPathSemiring>>
where
    S: Semiring<Value = Scalar>,
{
    if hops == 0 {
        return Err(Error::InvalidHops);
    }
    let tilde = build_path_adjacency(g, guard)?;
    let step = im_part(&tilde);
    let mut b = re_part(&tilde);
    for _ in 1..hops {
        b = b.array_mul(&step)?;
    }
    Ok(b)
}

/// Exhaustive enumeration of every vertex sequence `u, w₁, …, wₙ₋₁, v`,
/// keeping the edge-connected ones of least total weight. Returns `(∞, ∅)`
/// when no n-hop path exists.
pub fn brute_force_paths<S>(
    g: &GraphArrays<S>,
    src: &Key,
    dst: &Key,
    hops: usize,
    budget: u128,
) -> Result<TropicalPathValue>
where
    S: Semiring<Value = Scalar>,
{
    if hops == 0 {
        return Err(Error::InvalidHops);
    }
    for k in [src, dst] {
        if !g.vertices.contains(k) {
            return Err(Error::UnknownVertex(k.clone()));
        }
    }
    let vertices: Vec<&Key> = g.vertices.iter().collect();
    let inner = hops - 1;
    let required = (vertices.len() as u128).checked_pow(inner as u32).unwrap_or(u128::MAX);
    if required > budget {
        return Err(Error::EnumerationBudget { required, budget });
    }

    let mut best = f64::INFINITY;
    let mut winners: BTreeSet<PathString> = BTreeSet::new();
    let mut odometer = vec![0usize; inner];
    loop {
        let mut seq: Vec<&Key> = Vec::with_capacity(hops + 1);
        seq.push(src);
        seq.extend(odometer.iter().map(|&i| vertices[i]));
        seq.push(dst);

        let total = seq.windows(2).try_fold(0.0, |acc, pair| {
            g.weight(pair[0], pair[1]).map(|w| acc + w.get())
        });
        if let Some(total) = total {
            if total < best {
                best = total;
                winners.clear();
            }
            if total == best {
                winners.insert(PathString(seq.into_iter().cloned().collect()));
            }
        }

        // advance the odometer; done when it wraps
        let mut pos = 0;
        loop {
            if pos == inner {
                return Ok(TropicalPathValue::new(Scalar::of(best), winners));
            }
            odometer[pos] += 1;
            if odometer[pos] < vertices.len() {
                break;
            }
            odometer[pos] = 0;
            pos += 1;
        }
    }
}
