//! Sum partitions `A = A₁ ⊕ … ⊕ A_P` and linear push-down over them.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::array::{AssocArray, KeySet};
use crate::error::{Error, Result};
use crate::key::Key;
use crate::semiring::{Scalar, Semiring, StockSemiring};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Strategy {
    Random,
    RowBlock,
    ColBlock,
    /// Test-only: every triple is split into two values landing in two parts.
    Overlap,
}

impl Strategy {
    pub const NAMES: [&'static str; 3] = ["random", "row-block", "col-block"];

    pub fn label(self) -> &'static str {
        match self {
            Strategy::Random => "random",
            Strategy::RowBlock => "row-block",
            Strategy::ColBlock => "col-block",
            Strategy::Overlap => "overlap",
        }
    }

    /// The three disjoint strategies.
    pub fn builtin() -> [Strategy; 3] {
        [Strategy::Random, Strategy::RowBlock, Strategy::ColBlock]
    }

    pub fn parse(name: &str) -> Result<Strategy> {
        match name {
            "random" => Ok(Strategy::Random),
            "row-block" => Ok(Strategy::RowBlock),
            "col-block" => Ok(Strategy::ColBlock),
            other => Err(Error::InvalidConfig(format!(
                "unknown strategy `{other}` (valid: {})",
                Strategy::NAMES.join(", ")
            ))),
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// `P` arrays over identical key sets and semiring whose `⊕`-sum is the whole.
#[derive(Clone, Debug)]
pub struct SumPartition<S: Semiring> {
    parts: Vec<AssocArray<S>>,
    strategy: Strategy,
    seed: u64,
}

impl<S: Semiring> SumPartition<S> {
    pub fn from_parts(parts: Vec<AssocArray<S>>, strategy: Strategy, seed: u64) -> Result<Self> {
        check_uniform(&parts)?;
        Ok(SumPartition {
            parts,
            strategy,
            seed,
        })
    }

    pub fn parts(&self) -> &[AssocArray<S>] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn strategy(&self) -> Strategy {
        self.strategy
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn nnz_per_part(&self) -> Vec<usize> {
        self.parts.iter().map(AssocArray::nnz).collect()
    }

    fn first(&self) -> &AssocArray<S> {
        &self.parts[0]
    }

    /// Pairwise-tree `⊕` of the parts.
    pub fn reduce(&self) -> Result<AssocArray<S>> {
        tree_reduce(&self.parts)
    }
}

fn check_uniform<S: Semiring>(parts: &[AssocArray<S>]) -> Result<()> {
    let first = parts.first().ok_or(Error::EmptyPartition)?;
    for (i, p) in parts.iter().enumerate().skip(1) {
        if **p.semiring() != **first.semiring() {
            return Err(Error::SemiringMismatch {
                left: first.semiring().name(),
                right: p.semiring().name(),
            });
        }
        if !p.same_key_sets(first) {
            return Err(Error::KeyMismatch(format!("part {} differs from part 0", i)));
        }
    }
    Ok(())
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Stable across runs and platforms: FNV-1a over the key bytes, mixed with
/// the seed.
pub fn stable_hash(seed: u64, row: &Key, col: &Key) -> u64 {
    let mut bytes = Vec::with_capacity(32);
    row.write_bytes(&mut bytes);
    col.write_bytes(&mut bytes);
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in bytes {
        h ^= u64::from(b);
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    splitmix64(h ^ splitmix64(seed))
}

/// Key index `i` of `n` goes to block `i·P/n`.
fn block_of(keys: &KeySet, p: usize) -> HashMap<&Key, usize> {
    let n = keys.len();
    keys.iter().enumerate().map(|(i, k)| (k, i * p / n)).collect()
}

/// Splits the stored triples of `a` into `p` parts with pairwise disjoint
/// supports. Every part keeps the key sets of `a`.
pub fn partition<S: Semiring>(
    a: &AssocArray<S>,
    p: usize,
    strategy: Strategy,
    seed: u64,
) -> Result<SumPartition<S>> {
    if p < 1 {
        return Err(Error::InvalidPartitionCount(p));
    }
    let mut buckets: Vec<Vec<(Key, Key, S::Value)>> = vec![Vec::new(); p];
    match strategy {
        Strategy::Random => {
            for (r, c, v) in a.iter() {
                let i = (stable_hash(seed, r, c) % p as u64) as usize;
                buckets[i].push((r.clone(), c.clone(), v.clone()));
            }
        }
        Strategy::RowBlock => {
            let blocks = block_of(a.row_keys(), p);
            for (r, c, v) in a.iter() {
                buckets[blocks[r]].push((r.clone(), c.clone(), v.clone()));
            }
        }
        Strategy::ColBlock => {
            let blocks = block_of(a.col_keys(), p);
            for (r, c, v) in a.iter() {
                buckets[blocks[c]].push((r.clone(), c.clone(), v.clone()));
            }
        }
        Strategy::Overlap => {
            return Err(Error::InvalidConfig(
                "the overlap strategy needs a value splitter; use partition_overlapping".into(),
            ))
        }
    }
    let parts = buckets
        .into_iter()
        .map(|b| {
            AssocArray::from_triples_with_keys(
                Arc::clone(a.semiring()),
                Arc::clone(a.shared_rows()),
                Arc::clone(a.shared_cols()),
                b,
            )
        })
        .collect::<Result<Vec<_>>>()?;
    SumPartition::from_parts(parts, strategy, seed)
}

/// Overlapping partition: each triple `v` is split into `(l, r)` with
/// `l ⊕ r = v`, placed in parts `h mod P` and `(h + 1) mod P`.
pub fn partition_overlapping<S, F>(
    a: &AssocArray<S>,
    p: usize,
    seed: u64,
    mut split: F,
) -> Result<SumPartition<S>>
where
    S: Semiring,
    F: FnMut(&S::Value, &mut ChaCha8Rng) -> (S::Value, S::Value),
{
    if p < 1 {
        return Err(Error::InvalidPartitionCount(p));
    }
    let s = a.semiring();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut buckets: Vec<Vec<(Key, Key, S::Value)>> = vec![Vec::new(); p];
    for (r, c, v) in a.iter() {
        let (left, right) = split(v, &mut rng);
        if !s.values_eq(&s.try_add(&left, &right)?, v) {
            return Err(Error::InvalidValue {
                value: format!("{v:?}"),
                reason: format!("split into {left:?} and {right:?} does not sum back"),
            });
        }
        let i = (stable_hash(seed, r, c) % p as u64) as usize;
        buckets[i].push((r.clone(), c.clone(), left));
        buckets[(i + 1) % p].push((r.clone(), c.clone(), right));
    }
    let parts = buckets
        .into_iter()
        .map(|b| {
            AssocArray::from_triples_with_keys(
                Arc::clone(s),
                Arc::clone(a.shared_rows()),
                Arc::clone(a.shared_cols()),
                b,
            )
        })
        .collect::<Result<Vec<_>>>()?;
    SumPartition::from_parts(parts, Strategy::Overlap, seed)
}

/// Value splitter for the stock semirings: integers split at random, the
/// idempotent semirings duplicate.
pub fn stock_split(s: StockSemiring) -> impl FnMut(&Scalar, &mut ChaCha8Rng) -> (Scalar, Scalar) {
    move |v, rng| match s {
        StockSemiring::ArithNat => {
            let total = v.get() as u64;
            let left = rng.gen_range(0..=total);
            (Scalar::of(left as f64), Scalar::of((total - left) as f64))
        }
        StockSemiring::MinPlus | StockSemiring::MaxMin => (*v, *v),
    }
}

/// Fixed-shape binary tree `⊕` over `arrays`, halves evaluated concurrently.
pub fn tree_reduce<S: Semiring>(arrays: &[AssocArray<S>]) -> Result<AssocArray<S>> {
    check_uniform(arrays)?;
    tree(arrays)
}

fn tree<S: Semiring>(arrays: &[AssocArray<S>]) -> Result<AssocArray<S>> {
    match arrays {
        [] => Err(Error::EmptyPartition),
        [single] => Ok(single.clone()),
        _ => {
            let (l, r) = arrays.split_at(arrays.len() / 2);
            let (l, r) = rayon::join(|| tree(l), || tree(r));
            l?.ewise_add(&r?)
        }
    }
}

/// `F(A₁) ⊕ … ⊕ F(A_P)`, which equals `F(A)` when `F` is linear.
pub fn map_reduce_linear<S, T, F>(parts: &SumPartition<S>, f: F) -> Result<AssocArray<T>>
where
    S: Semiring,
    T: Semiring,
    F: Fn(&AssocArray<S>) -> Result<AssocArray<T>> + Sync,
{
    let mapped = parts.parts.par_iter().map(&f).collect::<Result<Vec<_>>>()?;
    tree_reduce(&mapped)
}

/// `⊕ₚ (B ⊕.⊗ Aₚ ⊕.⊗ C)`.
pub fn triple_product<S: Semiring>(
    b: &AssocArray<S>,
    parts: &SumPartition<S>,
    c: &AssocArray<S>,
) -> Result<AssocArray<S>> {
    b.check_conformable(parts.first())?;
    parts.first().check_conformable(c)?;
    map_reduce_linear(parts, |ap| b.array_mul(ap)?.array_mul(c))
}

/// `⊕ₚ (M ⊗ Aₚ)`.
pub fn apply_mask<S: Semiring>(m: &AssocArray<S>, parts: &SumPartition<S>) -> Result<AssocArray<S>> {
    if !m.same_key_sets(parts.first()) {
        return Err(Error::KeyMismatch("mask and partition key sets differ".into()));
    }
    map_reduce_linear(parts, |ap| m.ewise_mul(ap))
}

/// `⊕` of every entry, reduced per part and then across parts.
pub fn global_sum<S: Semiring>(parts: &SumPartition<S>) -> Result<S::Value> {
    let s = parts.first().semiring();
    let sums = parts
        .parts
        .par_iter()
        .map(AssocArray::sum_all)
        .collect::<Result<Vec<_>>>()?;
    sums.iter().try_fold(s.zero(), |acc, v| s.try_add(&acc, v))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TrafficMode {
    Source,
    Destination,
}

impl TrafficMode {
    pub fn label(self) -> &'static str {
        match self {
            TrafficMode::Source => "source",
            TrafficMode::Destination => "destination",
        }
    }

    pub fn parse(name: &str) -> Result<TrafficMode> {
        match name {
            "source" => Ok(TrafficMode::Source),
            "destination" => Ok(TrafficMode::Destination),
            other => Err(Error::InvalidConfig(format!(
                "unknown traffic mode `{other}` (valid: source, destination)"
            ))),
        }
    }

    /// The partition strategy this mode requires.
    pub fn strategy(self) -> Strategy {
        match self {
            TrafficMode::Source => Strategy::RowBlock,
            TrafficMode::Destination => Strategy::ColBlock,
        }
    }
}

/// Aggregate statistics of a traffic array (rows are sources, columns are
/// destinations, values are packet counts).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct TrafficStats {
    pub total_packets: Scalar,
    pub unique_sources: usize,
    pub unique_destinations: usize,
    pub unique_links: usize,
    pub max_link_packets: Scalar,
}

impl TrafficStats {
    pub fn of<S: Semiring<Value = Scalar>>(a: &AssocArray<S>) -> TrafficStats {
        let mut sources = BTreeSet::new();
        let mut destinations = BTreeSet::new();
        let mut total = 0.0;
        let mut max = Scalar::ZERO;
        for (r, c, v) in a.iter() {
            sources.insert(r);
            destinations.insert(c);
            total += v.get();
            max = max.max(*v);
        }
        TrafficStats {
            total_packets: Scalar::of(total),
            unique_sources: sources.len(),
            unique_destinations: destinations.len(),
            unique_links: a.nnz(),
            max_link_packets: max,
        }
    }
}

/// Whole-array stats computed directly and by combining per-part stats.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TrafficReport {
    pub mode: TrafficMode,
    pub whole: TrafficStats,
    pub combined: TrafficStats,
    pub parts: Vec<TrafficStats>,
}

impl TrafficReport {
    pub fn agrees(&self) -> bool {
        self.whole == self.combined
    }
}

/// Per-part stats plus the set of keys on the axis that is not partitioned,
/// which is combined by union rather than by counting.
fn part_stats<S: Semiring<Value = Scalar>>(
    a: &AssocArray<S>,
    mode: TrafficMode,
) -> (TrafficStats, BTreeSet<Key>) {
    let cross = a
        .iter()
        .map(|(r, c, _)| match mode {
            TrafficMode::Source => c.clone(),
            TrafficMode::Destination => r.clone(),
        })
        .collect();
    (TrafficStats::of(a), cross)
}

pub fn traffic_stats<S: Semiring<Value = Scalar>>(
    parts: &SumPartition<S>,
    mode: TrafficMode,
) -> Result<TrafficReport> {
    if parts.strategy() != mode.strategy() {
        return Err(Error::ModeStrategyMismatch {
            mode: mode.label().into(),
            expected: mode.strategy().label().into(),
            found: parts.strategy().label().into(),
        });
    }
    let per_part: Vec<(TrafficStats, BTreeSet<Key>)> =
        parts.parts.par_iter().map(|p| part_stats(p, mode)).collect();

    let mut combined = TrafficStats::default();
    let mut total = 0.0;
    let mut cross: BTreeSet<Key> = BTreeSet::new();
    for (st, keys) in &per_part {
        total += st.total_packets.get();
        combined.unique_links += st.unique_links;
        combined.max_link_packets = combined.max_link_packets.max(st.max_link_packets);
        match mode {
            TrafficMode::Source => combined.unique_sources += st.unique_sources,
            TrafficMode::Destination => combined.unique_destinations += st.unique_destinations,
        }
        cross.extend(keys.iter().cloned());
    }
    combined.total_packets = Scalar::of(total);
    match mode {
        TrafficMode::Source => combined.unique_destinations = cross.len(),
        TrafficMode::Destination => combined.unique_sources = cross.len(),
    }

    Ok(TrafficReport {
        mode,
        whole: TrafficStats::of(&parts.reduce()?),
        combined,
        parts: per_part.into_iter().map(|(s, _)| s).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nat() -> Arc<StockSemiring> {
        Arc::new(StockSemiring::ArithNat)
    }

    fn n(x: f64) -> Scalar {
        Scalar::of(x)
    }

    fn square(s: StockSemiring, size: i64, t: &[(i64, i64, f64)]) -> AssocArray<StockSemiring> {
        let keys: KeySet = (1..=size).map(Key::from).collect();
        AssocArray::from_triples_with_keys(
            Arc::new(s),
            Arc::new(keys.clone()),
            Arc::new(keys),
            t.iter().map(|&(r, c, v)| (Key::from(r), Key::from(c), n(v))),
        )
        .unwrap()
    }

    fn sample() -> AssocArray<StockSemiring> {
        square(
            StockSemiring::ArithNat,
            4,
            &[(1, 1, 1.0), (1, 3, 2.0), (2, 2, 3.0), (3, 4, 4.0), (4, 1, 5.0), (4, 4, 6.0)],
        )
    }

    #[test]
    fn single_part_is_whole() {
        let a = sample();
        for st in Strategy::builtin() {
            let p = partition(&a, 1, st, 9).unwrap();
            assert_eq!(p.parts()[0], a);
        }
    }

    #[test]
    fn zero_parts_rejected() {
        assert!(matches!(
            partition(&sample(), 0, Strategy::Random, 1),
            Err(Error::InvalidPartitionCount(0))
        ));
    }

    #[test]
    fn row_block_is_contiguous() {
        let p = partition(&sample(), 2, Strategy::RowBlock, 0).unwrap();
        let rows = |i: usize| -> BTreeSet<Key> { p.parts()[i].iter().map(|(r, _, _)| r.clone()).collect() };
        assert_eq!(rows(0), [Key::from(1), Key::from(2)].into());
        assert_eq!(rows(1), [Key::from(3), Key::from(4)].into());
    }

    #[test]
    fn col_block_is_contiguous() {
        let p = partition(&sample(), 2, Strategy::ColBlock, 0).unwrap();
        assert!(p.parts()[0].iter().all(|(_, c, _)| *c <= Key::from(2)));
        assert!(p.parts()[1].iter().all(|(_, c, _)| *c >= Key::from(3)));
    }

    #[test]
    fn round_trip_and_disjointness() {
        let a = sample();
        for st in Strategy::builtin() {
            for parts in [1, 2, 3, 8] {
                let p = partition(&a, parts, st, 42).unwrap();
                assert_eq!(p.reduce().unwrap(), a);
                assert_eq!(p.nnz_per_part().iter().sum::<usize>(), a.nnz());
            }
        }
    }

    #[test]
    fn random_is_reproducible() {
        let a = sample();
        let x = partition(&a, 3, Strategy::Random, 5).unwrap();
        let y = partition(&a, 3, Strategy::Random, 5).unwrap();
        assert_eq!(x.parts(), y.parts());
        assert_eq!(stable_hash(1, &Key::from(1), &Key::from("a")), stable_hash(1, &Key::from(1), &Key::from("a")));
        assert_ne!(stable_hash(1, &Key::from(1), &Key::from(2)), stable_hash(2, &Key::from(1), &Key::from(2)));
    }

    #[test]
    fn overlapping_parts_sum() {
        let keys: KeySet = [Key::from("a"), Key::from("b")].into();
        let mk = |v: f64| {
            AssocArray::from_triples_with_keys(
                nat(),
                Arc::new(keys.clone()),
                Arc::new(keys.clone()),
                [(Key::from("a"), Key::from("b"), n(v))],
            )
            .unwrap()
        };
        let p = SumPartition::from_parts(vec![mk(2.0), mk(3.0)], Strategy::Overlap, 0).unwrap();
        assert_eq!(p.reduce().unwrap().triples(), vec![("a".into(), "b".into(), n(5.0))]);
    }

    #[test]
    fn overlap_strategy_round_trips() {
        for s in StockSemiring::all() {
            let a = square(s, 4, &[(1, 1, 7.0), (2, 3, 4.0), (4, 4, 9.0)]);
            let p = partition_overlapping(&a, 3, 11, stock_split(s)).unwrap();
            assert_eq!(p.reduce().unwrap(), a);
            assert!(matches!(partition(&a, 2, Strategy::Overlap, 0), Err(Error::InvalidConfig(_))));
        }
    }

    #[test]
    fn reduce_rejects_mismatch() {
        let a = square(StockSemiring::ArithNat, 2, &[(1, 1, 1.0)]);
        let b = square(StockSemiring::ArithNat, 3, &[(1, 1, 1.0)]);
        assert!(matches!(
            SumPartition::from_parts(vec![a.clone(), b], Strategy::Random, 0),
            Err(Error::KeyMismatch(_))
        ));
        let c = square(StockSemiring::MinPlus, 2, &[(1, 1, 1.0)]);
        assert!(matches!(tree_reduce(&[a, c]), Err(Error::SemiringMismatch { .. })));
        assert!(matches!(tree_reduce::<StockSemiring>(&[]), Err(Error::EmptyPartition)));
    }

    #[test]
    fn map_reduce_identity_and_transpose() {
        let a = sample();
        let p = partition(&a, 3, Strategy::Random, 1).unwrap();
        assert_eq!(map_reduce_linear(&p, |x| Ok(x.clone())).unwrap(), a);
        assert_eq!(map_reduce_linear(&p, |x| Ok(x.transpose())).unwrap(), a.transpose());
    }

    #[test]
    fn map_reduce_left_multiply_min_plus() {
        let a = square(StockSemiring::MinPlus, 3, &[(1, 2, 1.0), (2, 3, 2.0), (3, 1, 4.0), (1, 3, 7.0)]);
        let b = square(StockSemiring::MinPlus, 3, &[(1, 1, 0.0), (2, 1, 3.0), (3, 2, 1.0)]);
        let p = partition(&a, 2, Strategy::Random, 3).unwrap();
        let got = map_reduce_linear(&p, |x| b.array_mul(x)).unwrap();
        assert_eq!(got, b.array_mul(&a).unwrap());
    }

    #[test]
    fn triple_product_identity_and_ones() {
        let a = sample();
        let keys = a.row_keys().clone();
        let id = AssocArray::identity(nat(), keys.clone());
        let p = partition(&a, 2, Strategy::ColBlock, 0).unwrap();
        assert_eq!(triple_product(&id, &p, &id).unwrap(), a);

        // 1 A 1ᵀ is the ⊕ of all entries
        let one = Arc::new(KeySet::from([Key::from(1)]));
        let ks = Arc::new(keys.clone());
        let row = AssocArray::from_triples_with_keys(
            nat(),
            Arc::clone(&one),
            Arc::clone(&ks),
            keys.iter().map(|k| (Key::from(1), k.clone(), n(1.0))),
        )
        .unwrap();
        let got = triple_product(&row, &p, &row.transpose()).unwrap();
        assert_eq!(got.value(&1.into(), &1.into()), n(21.0));
        assert_eq!(global_sum(&p).unwrap(), n(21.0));
    }

    #[test]
    fn mask_examples() {
        let a = sample();
        let p = partition(&a, 4, Strategy::Random, 2).unwrap();
        let empty = AssocArray::with_keys(nat(), a.row_keys().clone(), a.col_keys().clone());
        assert!(apply_mask(&empty, &p).unwrap().is_empty());
        let ones = a.map_values(nat(), |_| n(1.0));
        assert_eq!(apply_mask(&ones, &p).unwrap(), a);
        let other = square(StockSemiring::ArithNat, 5, &[]);
        assert!(matches!(apply_mask(&other, &p), Err(Error::KeyMismatch(_))));
    }

    fn traffic(t: &[(&str, &str, f64)]) -> AssocArray<StockSemiring> {
        AssocArray::from_triples(nat(), t.iter().map(|&(s, d, v)| (Key::from(s), Key::from(d), n(v)))).unwrap()
    }

    #[test]
    fn traffic_examples() {
        let empty = AssocArray::empty(nat());
        let p = partition(&empty, 1, Strategy::RowBlock, 0).unwrap();
        let r = traffic_stats(&p, TrafficMode::Source).unwrap();
        assert_eq!(r.whole, TrafficStats::default());
        assert!(r.agrees());

        let one = traffic(&[("s", "d", 1.0)]);
        let p = partition(&one, 1, Strategy::ColBlock, 0).unwrap();
        let r = traffic_stats(&p, TrafficMode::Destination).unwrap();
        let unit = TrafficStats {
            total_packets: n(1.0),
            unique_sources: 1,
            unique_destinations: 1,
            unique_links: 1,
            max_link_packets: n(1.0),
        };
        assert_eq!(r.whole, unit);
        assert_eq!(r.combined, unit);
    }

    #[test]
    fn traffic_shared_destinations_combine_by_union() {
        let a = traffic(&[("s1", "d", 2.0), ("s2", "d", 3.0), ("s3", "e", 1.0)]);
        let p = partition(&a, 3, Strategy::RowBlock, 0).unwrap();
        let r = traffic_stats(&p, TrafficMode::Source).unwrap();
        assert!(r.agrees(), "{r:?}");
        assert_eq!(r.whole.unique_destinations, 2);
        assert_eq!(r.whole.max_link_packets, n(3.0));
    }

    #[test]
    fn traffic_mode_must_match_strategy() {
        let a = traffic(&[("s", "d", 1.0)]);
        let p = partition(&a, 1, Strategy::Random, 0).unwrap();
        assert!(matches!(
            traffic_stats(&p, TrafficMode::Source),
            Err(Error::ModeStrategyMismatch { .. })
        ));
    }
}
