//! Complex-index values `x + i y` over an arbitrary semiring, with `i ⊗ i = 0`.
//!
//! `(x₁, x₂) ⊕ (y₁, y₂) = (x₁ ⊕ y₁, x₂ ⊕ y₂)` and
//! `(x₁, x₂) ⊗ (y₁, y₂) = (x₁ ⊗ y₁, (x₁ ⊗ y₂) ⊕ (x₂ ⊗ y₁))`.

use std::sync::Arc;

use rand::RngCore;
use serde::Serialize;

use crate::array::AssocArray;
use crate::error::Result;
use crate::semiring::Semiring;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Dual<V> {
    pub re: V,
    pub im: V,
}

impl<V> Dual<V> {
    pub fn new(re: V, im: V) -> Self {
        Dual { re, im }
    }
}

#[derive(Debug, PartialEq)]
pub struct DualSemiring<S: Semiring> {
    base: Arc<S>,
}

impl<S: Semiring> DualSemiring<S> {
    pub fn new(base: Arc<S>) -> Self {
        DualSemiring { base }
    }

    pub fn base(&self) -> &Arc<S> {
        &self.base
    }

    /// `x ↦ (x, 0)`, a semiring homomorphism.
    pub fn embed(&self, x: S::Value) -> Dual<S::Value> {
        Dual::new(x, self.base.zero())
    }

    /// `i = (0, 1)`.
    pub fn i(&self) -> Dual<S::Value> {
        Dual::new(self.base.zero(), self.base.one())
    }

    /// `(0, y)`.
    pub fn imaginary(&self, y: S::Value) -> Dual<S::Value> {
        Dual::new(self.base.zero(), y)
    }
}

impl<S: Semiring> Semiring for DualSemiring<S> {
    type Value = Dual<S::Value>;

    fn name(&self) -> String {
        format!("dual:{}", self.base.name())
    }

    fn zero(&self) -> Self::Value {
        Dual::new(self.base.zero(), self.base.zero())
    }

    fn one(&self) -> Self::Value {
        Dual::new(self.base.one(), self.base.zero())
    }

    fn add(&self, x: &Self::Value, y: &Self::Value) -> Self::Value {
        let b = &*self.base;
        Dual::new(b.add(&x.re, &y.re), b.add(&x.im, &y.im))
    }

    fn mul(&self, x: &Self::Value, y: &Self::Value) -> Self::Value {
        let b = &*self.base;
        Dual::new(
            b.mul(&x.re, &y.re),
            b.add(&b.mul(&x.re, &y.im), &b.mul(&x.im, &y.re)),
        )
    }

    fn try_add(&self, x: &Self::Value, y: &Self::Value) -> Result<Self::Value> {
        let b = &*self.base;
        Ok(Dual::new(b.try_add(&x.re, &y.re)?, b.try_add(&x.im, &y.im)?))
    }

    fn try_mul(&self, x: &Self::Value, y: &Self::Value) -> Result<Self::Value> {
        let b = &*self.base;
        let im = b.try_add(&b.try_mul(&x.re, &y.im)?, &b.try_mul(&x.im, &y.re)?)?;
        Ok(Dual::new(b.try_mul(&x.re, &y.re)?, im))
    }

    fn values_eq(&self, x: &Self::Value, y: &Self::Value) -> bool {
        self.base.values_eq(&x.re, &y.re) && self.base.values_eq(&x.im, &y.im)
    }

    // stored iff either component is nonzero
    fn is_zero(&self, x: &Self::Value) -> bool {
        self.base.is_zero(&x.re) && self.base.is_zero(&x.im)
    }

    fn validate(&self, x: &Self::Value) -> Result<()> {
        self.base.validate(&x.re)?;
        self.base.validate(&x.im)
    }

    fn sample(&self, rng: &mut dyn RngCore) -> Self::Value {
        let re = self.base.sample(rng);
        let im = self.base.sample(rng);
        Dual::new(re, im)
    }
}

/// `Re(A)(u, v) = Re(A(u, v))`, zeros dropped.
pub fn re_part<S: Semiring>(a: &AssocArray<DualSemiring<S>>) -> AssocArray<S> {
    let base = Arc::clone(a.semiring().base());
    a.map_values(base, |d| d.re.clone())
}

/// `Im(A)(u, v) = Im(A(u, v))`, zeros dropped.
pub fn im_part<S: Semiring>(a: &AssocArray<DualSemiring<S>>) -> AssocArray<S> {
    let base = Arc::clone(a.semiring().base());
    a.map_values(base, |d| d.im.clone())
}

/// Lifts a base array into the dual semiring through `embed`.
pub fn embed_array<S: Semiring>(
    a: &AssocArray<S>,
    dual: Arc<DualSemiring<S>>,
) -> AssocArray<DualSemiring<S>> {
    let d = Arc::clone(&dual);
    a.map_values(dual, move |x| d.embed(x.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::key::Key;
    use crate::semiring::{axiom_check, Scalar, StockSemiring};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn dual(s: StockSemiring) -> DualSemiring<StockSemiring> {
        DualSemiring::new(Arc::new(s))
    }

    fn n(x: f64) -> Scalar {
        Scalar::of(x)
    }

    #[test]
    fn i_squared_is_zero() {
        for s in StockSemiring::all() {
            let d = dual(s);
            assert_eq!(d.mul(&d.i(), &d.i()), d.zero());
        }
    }

    #[test]
    fn arith_product() {
        let d = dual(StockSemiring::ArithNat);
        let p = d.mul(&Dual::new(n(2.0), n(3.0)), &Dual::new(n(4.0), n(5.0)));
        assert_eq!(p, Dual::new(n(8.0), n(22.0)));
    }

    #[test]
    fn one_is_right_identity() {
        let d = dual(StockSemiring::MinPlus);
        let x = Dual::new(n(3.0), n(7.0));
        assert_eq!(d.mul(&x, &d.one()), x);
        assert_eq!(d.one(), Dual::new(n(0.0), Scalar::INFINITY));
    }

    #[test]
    fn embed_is_a_homomorphism() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for s in StockSemiring::all() {
            let d = dual(s);
            assert_eq!(d.embed(s.zero()), d.zero());
            assert_eq!(d.embed(s.one()), d.one());
            for _ in 0..500 {
                let x = s.sample(&mut rng);
                let y = s.sample(&mut rng);
                assert_eq!(d.mul(&d.embed(x), &d.embed(y)), d.embed(s.mul(&x, &y)));
                assert_eq!(d.add(&d.embed(x), &d.embed(y)), d.embed(s.add(&x, &y)));
            }
        }
    }

    #[test]
    fn complex_notation_decomposition() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for s in StockSemiring::all() {
            let d = dual(s);
            for _ in 0..500 {
                let x = s.sample(&mut rng);
                let y = s.sample(&mut rng);
                let rebuilt = d.add(&d.embed(x), &d.mul(&d.i(), &d.embed(y)));
                assert_eq!(rebuilt, Dual::new(x, y));
            }
        }
    }

    #[test]
    fn imaginary_times_real() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for s in StockSemiring::all() {
            let d = dual(s);
            for _ in 0..200 {
                let x = s.sample(&mut rng);
                let y = s.sample(&mut rng);
                assert_eq!(
                    d.mul(&d.imaginary(x), &d.embed(y)),
                    Dual::new(s.zero(), s.mul(&x, &y))
                );
            }
        }
    }

    #[test]
    fn dual_laws_hold() {
        for s in StockSemiring::all() {
            for seed in [1, 2, 3] {
                let report = axiom_check(&dual(s), 1000, seed);
                assert!(report.passed(), "{:?}", report.failures.first());
            }
        }
    }

    #[test]
    fn projections() {
        let d = Arc::new(dual(StockSemiring::ArithNat));
        let imag_only = AssocArray::from_triples(
            Arc::clone(&d),
            [(Key::from(1), Key::from(2), Dual::new(n(0.0), n(4.0)))],
        )
        .unwrap();
        assert!(re_part(&imag_only).is_empty());
        assert_eq!(im_part(&imag_only).nnz(), 1);

        let base = AssocArray::from_triples(
            Arc::new(StockSemiring::ArithNat),
            [(Key::from(1), Key::from(1), n(3.0))],
        )
        .unwrap();
        let lifted = embed_array(&base, Arc::clone(&d));
        assert!(im_part(&lifted).is_empty());
        assert_eq!(re_part(&lifted), base);

        let mixed = AssocArray::from_triples(
            Arc::clone(&d),
            [
                (Key::from(1), Key::from(1), Dual::new(n(2.0), n(0.0))),
                (Key::from(1), Key::from(2), Dual::new(n(5.0), n(6.0))),
            ],
        )
        .unwrap();
        assert_eq!(
            re_part(&mixed).triples(),
            vec![(Key::from(1), Key::from(1), n(2.0)), (Key::from(1), Key::from(2), n(5.0))]
        );
        assert_eq!(im_part(&mixed).triples(), vec![(Key::from(1), Key::from(2), n(6.0))]);
    }

    #[test]
    fn zero_detection_checks_both_parts() {
        let d = dual(StockSemiring::ArithNat);
        assert!(d.is_zero(&Dual::new(n(0.0), n(0.0))));
        assert!(!d.is_zero(&Dual::new(n(0.0), n(1.0))));
        assert!(!d.is_zero(&Dual::new(n(1.0), n(0.0))));
    }
}
