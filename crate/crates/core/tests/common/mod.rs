//! Generators and independent oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use semiarray::path::PathString;
use semiarray::{AssocArray, GraphArrays, Key, KeySet, Scalar, Semiring, StockSemiring};

pub fn keys(n: i64) -> KeySet {
    (1..=n).map(Key::from).collect()
}

pub fn nonzero(s: &StockSemiring, rng: &mut ChaCha8Rng) -> Scalar {
    loop {
        let v = s.sample(rng);
        if !s.is_zero(&v) {
            return v;
        }
    }
}

/// `nnz` distinct random positions in a `rows x cols` key space.
pub fn random_array(
    s: StockSemiring,
    rng: &mut ChaCha8Rng,
    rows: i64,
    cols: i64,
    nnz: usize,
) -> AssocArray<StockSemiring> {
    random_array_in(s, rng, &Arc::new(keys(rows)), &Arc::new(keys(cols)), nnz)
}

/// Like [`random_array`] but over shared key sets.
pub fn random_array_in(
    s: StockSemiring,
    rng: &mut ChaCha8Rng,
    rows: &Arc<KeySet>,
    cols: &Arc<KeySet>,
    nnz: usize,
) -> AssocArray<StockSemiring> {
    let row_keys: Vec<&Key> = rows.iter().collect();
    let col_keys: Vec<&Key> = cols.iter().collect();
    let mut pos = BTreeSet::new();
    while pos.len() < nnz {
        pos.insert((rng.gen_range(0..row_keys.len()), rng.gen_range(0..col_keys.len())));
    }
    let triples: Vec<_> = pos
        .into_iter()
        .map(|(r, c)| (row_keys[r].clone(), col_keys[c].clone(), nonzero(&s, rng)))
        .collect();
    AssocArray::from_triples_with_keys(Arc::new(s), Arc::clone(rows), Arc::clone(cols), triples).unwrap()
}

/// Dense-style product over explicit key sets, every inner key visited.
pub fn brute_product(
    s: StockSemiring,
    a: &AssocArray<StockSemiring>,
    b: &AssocArray<StockSemiring>,
) -> BTreeMap<(Key, Key), Scalar> {
    let mut out = BTreeMap::new();
    for i in a.row_keys() {
        for j in b.col_keys() {
            let mut acc = s.zero();
            for k in a.col_keys() {
                acc = s.add(&acc, &s.mul(&a.value(i, k), &b.value(k, j)));
            }
            if !s.is_zero(&acc) {
                out.insert((i.clone(), j.clone()), acc);
            }
        }
    }
    out
}

pub fn entries<S: Semiring>(a: &AssocArray<S>) -> BTreeMap<(Key, Key), S::Value> {
    a.iter().map(|(r, c, v)| ((r.clone(), c.clone()), v.clone())).collect()
}

/// Random digraph on `1..=n` with integer weights in `1..=max_w`.
pub fn random_graph(
    s: StockSemiring,
    rng: &mut ChaCha8Rng,
    n: i64,
    p: f64,
    max_w: u32,
) -> GraphArrays<StockSemiring> {
    let mut edges = Vec::new();
    for u in 1..=n {
        for v in 1..=n {
            if rng.gen_bool(p) {
                let w = rng.gen_range(1..=max_w);
                edges.push((Key::from(u), Key::from(v), Scalar::of(f64::from(w))));
            }
        }
    }
    GraphArrays::build_with_vertices(Arc::new(s), keys(n), &edges).unwrap()
}

/// Depth-first enumeration of every n-hop walk from `src` to `dst`; returns
/// the least weight and all walks attaining it.
pub fn dfs_paths(
    g: &GraphArrays<StockSemiring>,
    src: &Key,
    dst: &Key,
    hops: usize,
) -> (f64, BTreeSet<PathString>) {
    let mut out: BTreeMap<u64, BTreeSet<PathString>> = BTreeMap::new();
    let mut stack = vec![src.clone()];
    fn go(
        g: &GraphArrays<StockSemiring>,
        dst: &Key,
        hops: usize,
        weight: u64,
        stack: &mut Vec<Key>,
        out: &mut BTreeMap<u64, BTreeSet<PathString>>,
    ) {
        let here = stack.last().unwrap().clone();
        if stack.len() == hops + 1 {
            if &here == dst {
                out.entry(weight).or_default().insert(PathString(stack.clone()));
            }
            return;
        }
        for (_, u, v, w) in &g.edge_list {
            if *u == here {
                stack.push(v.clone());
                go(g, dst, hops, weight + w.get() as u64, stack, out);
                stack.pop();
            }
        }
    }
    go(g, dst, hops, 0, &mut stack, &mut out);
    match out.into_iter().next() {
        Some((w, paths)) => (w as f64, paths),
        None => (f64::INFINITY, BTreeSet::new()),
    }
}
