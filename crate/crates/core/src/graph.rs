//! Adjacency, incidence and edge-weight arrays of a weighted digraph.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::array::{AssocArray, KeySet};
use crate::error::{Error, Result};
use crate::key::Key;
use crate::semiring::{Scalar, Semiring};

/// The four arrays describing a finite weighted digraph `(V, E, w)`.
///
/// Edge keys are `Int(1..=|E|)`, numbered in `(src, dst)` order.
#[derive(Clone, Debug)]
pub struct GraphArrays<S: Semiring<Value = Scalar>> {
    pub adjacency: AssocArray<S>,
    pub in_incidence: AssocArray<S>,
    pub out_incidence: AssocArray<S>,
    pub weight_diag: AssocArray<S>,
    pub vertices: KeySet,
    pub edges: KeySet,
    /// `(edge key, src, dst, weight)` in edge-key order.
    pub edge_list: Vec<(Key, Key, Key, Scalar)>,
}

impl<S: Semiring<Value = Scalar>> GraphArrays<S> {
    /// Vertices are exactly the endpoints that occur in `edges`.
    pub fn build(semiring: Arc<S>, edges: &[(Key, Key, Scalar)]) -> Result<Self> {
        Self::build_with_vertices(semiring, KeySet::new(), edges)
    }

    /// `vertices` may name isolated vertices; endpoints are added to it.
    pub fn build_with_vertices(
        semiring: Arc<S>,
        vertices: KeySet,
        edges: &[(Key, Key, Scalar)],
    ) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for (src, dst, w) in edges {
            if w.get().partial_cmp(&0.0) != Some(std::cmp::Ordering::Greater) || w.is_infinite() {
                return Err(Error::NonPositiveWeight {
                    src: src.clone(),
                    dst: dst.clone(),
                    weight: w.to_string(),
                });
            }
            semiring.validate(w)?;
            if !seen.insert((src.clone(), dst.clone())) {
                return Err(Error::DuplicateEdge {
                    src: src.clone(),
                    dst: dst.clone(),
                });
            }
        }

        let mut sorted: Vec<&(Key, Key, Scalar)> = edges.iter().collect();
        sorted.sort_by(|a, b| (&a.0, &a.1).cmp(&(&b.0, &b.1)));

        let mut vertex_set = vertices;
        for (src, dst, _) in &sorted {
            vertex_set.insert(src.clone());
            vertex_set.insert(dst.clone());
        }
        let edge_list: Vec<(Key, Key, Key, Scalar)> = sorted
            .iter()
            .enumerate()
            .map(|(i, (s, d, w))| (Key::from(i + 1), s.clone(), d.clone(), *w))
            .collect();
        let edge_keys: KeySet = edge_list.iter().map(|e| e.0.clone()).collect();

        let v = Arc::new(vertex_set.clone());
        let e = Arc::new(edge_keys.clone());
        let one = semiring.one();

        let adjacency = AssocArray::from_triples_with_keys(
            Arc::clone(&semiring),
            Arc::clone(&v),
            Arc::clone(&v),
            edge_list.iter().map(|(_, s, d, w)| (s.clone(), d.clone(), *w)),
        )?;
        let in_incidence = AssocArray::from_triples_with_keys(
            Arc::clone(&semiring),
            Arc::clone(&v),
            Arc::clone(&e),
            edge_list.iter().map(|(k, _, d, _)| (d.clone(), k.clone(), one)),
        )?;
        let out_incidence = AssocArray::from_triples_with_keys(
            Arc::clone(&semiring),
            Arc::clone(&v),
            Arc::clone(&e),
            edge_list.iter().map(|(k, s, _, _)| (s.clone(), k.clone(), one)),
        )?;
        let weight_diag = AssocArray::from_triples_with_keys(
            Arc::clone(&semiring),
            Arc::clone(&e),
            Arc::clone(&e),
            edge_list.iter().map(|(k, _, _, w)| (k.clone(), k.clone(), *w)),
        )?;

        let graph = GraphArrays {
            adjacency,
            in_incidence,
            out_incidence,
            weight_diag,
            vertices: vertex_set,
            edges: edge_keys,
            edge_list,
        };
        if graph.factorize()? != graph.adjacency {
            return Err(Error::FactorizationMismatch);
        }
        Ok(graph)
    }

    /// `E_out ⊕.⊗ D_w ⊕.⊗ E_inᵀ`, which equals the adjacency array.
    pub fn factorize(&self) -> Result<AssocArray<S>> {
        self.out_incidence
            .array_mul(&self.weight_diag)?
            .array_mul(&self.in_incidence.transpose())
    }

    pub fn weight(&self, src: &Key, dst: &Key) -> Option<Scalar> {
        self.adjacency.get(src, dst).copied()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semiring::StockSemiring;

    fn e(s: i64, d: i64, w: f64) -> (Key, Key, Scalar) {
        (Key::from(s), Key::from(d), Scalar::of(w))
    }

    #[test]
    fn single_edge() {
        let g = GraphArrays::build(
            Arc::new(StockSemiring::MinPlus),
            &[(Key::from("u"), Key::from("v"), Scalar::of(3.0))],
        )
        .unwrap();
        assert_eq!(g.adjacency.triples(), vec![("u".into(), "v".into(), Scalar::of(3.0))]);
        let one = Scalar::ZERO; // min-plus one
        assert_eq!(g.out_incidence.triples(), vec![("u".into(), Key::from(1), one)]);
        assert_eq!(g.in_incidence.triples(), vec![("v".into(), Key::from(1), one)]);
        assert_eq!(g.weight_diag.triples(), vec![(Key::from(1), Key::from(1), Scalar::of(3.0))]);
        assert_eq!(g.factorize().unwrap(), g.adjacency);
    }

    #[test]
    fn empty_graph() {
        let g = GraphArrays::build(Arc::new(StockSemiring::ArithNat), &[]).unwrap();
        assert!(g.adjacency.is_empty());
        assert!(g.in_incidence.is_empty());
        assert!(g.out_incidence.is_empty());
        assert!(g.weight_diag.is_empty());
    }

    #[test]
    fn triangle_factorizes() {
        for s in StockSemiring::all() {
            let g = GraphArrays::build(Arc::new(s), &[e(1, 2, 1.0), e(2, 3, 2.0), e(1, 3, 4.0)]).unwrap();
            assert_eq!(g.adjacency.nnz(), 3);
            // brute-force product, entry by entry
            for u in &g.vertices {
                for v in &g.vertices {
                    let mut acc = s.zero();
                    for f in &g.edges {
                        for e2 in &g.edges {
                            let t = s.mul(
                                &s.mul(&g.out_incidence.value(u, f), &g.weight_diag.value(f, e2)),
                                &g.in_incidence.value(v, e2),
                            );
                            acc = s.add(&acc, &t);
                        }
                    }
                    assert_eq!(acc, g.adjacency.value(u, v), "{u}->{v} over {}", s.label());
                }
            }
        }
    }

    #[test]
    fn incidence_columns_are_one_hot() {
        let s = StockSemiring::ArithNat;
        let g = GraphArrays::build(Arc::new(s), &[e(1, 2, 1.0), e(2, 1, 2.0), e(2, 2, 3.0)]).unwrap();
        for inc in [&g.in_incidence, &g.out_incidence] {
            for edge in &g.edges {
                let col: Vec<_> = inc.iter().filter(|(_, c, _)| *c == edge).collect();
                assert_eq!(col.len(), 1);
                assert_eq!(*col[0].2, s.one());
            }
        }
        assert!(g.weight_diag.iter().all(|(r, c, _)| r == c));
    }

    #[test]
    fn rejects_bad_weights_and_duplicates() {
        let s = Arc::new(StockSemiring::MinPlus);
        assert!(matches!(
            GraphArrays::build(Arc::clone(&s), &[e(1, 2, 0.0)]),
            Err(Error::NonPositiveWeight { .. })
        ));
        assert!(matches!(
            GraphArrays::build(Arc::clone(&s), &[(Key::from(1), Key::from(2), Scalar::INFINITY)]),
            Err(Error::NonPositiveWeight { .. })
        ));
        assert!(matches!(
            GraphArrays::build(s, &[e(1, 2, 1.0), e(1, 2, 2.0)]),
            Err(Error::DuplicateEdge { .. })
        ));
    }
}
