//! Seeded workload generators shared by the benchmarks.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use semiarray::tsv::RawEvent;
use semiarray::{AssocArray, Key, KeySet, Scalar, StockSemiring};

/// Keys `0..n`, shared so conformability checks stay cheap.
pub fn key_set(n: usize) -> Arc<KeySet> {
    Arc::new((0..n as i64).map(Key::Int).collect())
}

/// `n × n` array with about `nnz` stored entries drawn from `1..=9`.
pub fn random_square(s: StockSemiring, keys: &Arc<KeySet>, nnz: usize, seed: u64) -> AssocArray<StockSemiring> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = keys.len() as i64;
    let triples: Vec<_> = (0..nnz)
        .map(|_| {
            (
                Key::Int(rng.gen_range(0..n)),
                Key::Int(rng.gen_range(0..n)),
                Scalar::of(rng.gen_range(1..=9) as f64),
            )
        })
        .collect();
    AssocArray::from_triples_with_keys(Arc::new(s), Arc::clone(keys), Arc::clone(keys), triples)
        .expect("generated triples are valid")
}

/// `len` unit-count events over `vertices` vertices, one per second.
pub fn random_events(vertices: i64, len: usize, seed: u64) -> Vec<RawEvent<Scalar>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..len)
        .map(|i| RawEvent {
            src: Key::Int(rng.gen_range(0..vertices)),
            dst: Key::Int(rng.gen_range(0..vertices)),
            count: Scalar::of(1.0),
            timestamp: i as f64,
        })
        .collect()
}
