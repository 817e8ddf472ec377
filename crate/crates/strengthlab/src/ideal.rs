//! Homogeneous ideals: an ordered generator list plus a per-order cache of
//! reduced Gröbner bases.
//!
//! The cache is populated at most once per monomial order; concurrent
//! readers share the computed basis through an `Arc`.

use std::collections::BTreeMap;
use std::sync::{Arc, RwLock};

use crate::error::{Error, Result};
use crate::groebner::{
    buchberger, codimension, dimension, minimal_generators, normal_form_gb, Budget,
    GroebnerBasis, MinimalGenerators,
};
use crate::order::MonomialOrder;
use crate::poly::{PolyRing, Polynomial};

#[derive(Debug)]
pub struct Ideal {
    ring: PolyRing,
    generators: Vec<Polynomial>,
    cache: RwLock<BTreeMap<MonomialOrder, Arc<GroebnerBasis>>>,
}

impl Clone for Ideal {
    fn clone(&self) -> Self {
        Ideal {
            ring: self.ring.clone(),
            generators: self.generators.clone(),
            cache: RwLock::new(self.cache.read().expect("cache lock").clone()),
        }
    }
}

impl PartialEq for Ideal {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.generators == other.generators
    }
}

impl Ideal {
    /// New ideal from homogeneous generators; zero polynomials are dropped.
    pub fn new(ring: PolyRing, generators: Vec<Polynomial>) -> Result<Ideal> {
        let mut kept = Vec::with_capacity(generators.len());
        for g in generators {
            if g.ring() != &ring {
                return Err(Error::RingMismatch(
                    "generator lives in a different ring".into(),
                ));
            }
            if !g.is_homogeneous() {
                return Err(Error::NotHomogeneous(format!("{g}")));
            }
            if !g.is_zero() {
                kept.push(g);
            }
        }
        Ok(Ideal {
            ring,
            generators: kept,
            cache: RwLock::new(BTreeMap::new()),
        })
    }

    pub fn ring(&self) -> &PolyRing {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn num_generators(&self) -> usize {
        self.generators.len()
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.generators.is_empty()
    }

    /// Degrees of the generators, in list order.
    pub fn generator_degrees(&self) -> Vec<u32> {
        self.generators
            .iter()
            .map(|g| g.degree().expect("generators are nonzero"))
            .collect()
    }

    /// The reduced Gröbner basis under `order`, computed once and cached.
    pub fn groebner_basis(
        &self,
        order: MonomialOrder,
        budget: &Budget,
    ) -> Result<Arc<GroebnerBasis>> {
        if let Some(gb) = self.cache.read().expect("cache lock").get(&order) {
            return Ok(Arc::clone(gb));
        }
        let gb = Arc::new(buchberger(&self.ring, &self.generators, order, budget)?);
        let mut cache = self.cache.write().expect("cache lock");
        Ok(Arc::clone(cache.entry(order).or_insert(gb)))
    }

    /// Ideal membership: the normal form of `f` vanishes.
    pub fn contains(&self, f: &Polynomial, budget: &Budget) -> Result<bool> {
        if f.ring() != &self.ring {
            return Err(Error::RingMismatch(
                "membership test across different rings".into(),
            ));
        }
        let gb = self.groebner_basis(MonomialOrder::GrevLex, budget)?;
        Ok(normal_form_gb(f, &gb)?.is_zero())
    }

    /// Equality by mutual containment of generators.
    pub fn equals(&self, other: &Ideal, budget: &Budget) -> Result<bool> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch(
                "ideal comparison across different rings".into(),
            ));
        }
        for g in &other.generators {
            if !self.contains(g, budget)? {
                return Ok(false);
            }
        }
        for g in &self.generators {
            if !other.contains(g, budget)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Krull dimension of R/I (grevlex leading terms).
    pub fn dimension(&self, budget: &Budget) -> Result<usize> {
        self.dimension_with(MonomialOrder::GrevLex, budget)
    }

    /// Dimension computed under an explicit order; the result is
    /// order-independent, which the test suite exploits as a cross-check.
    pub fn dimension_with(&self, order: MonomialOrder, budget: &Budget) -> Result<usize> {
        dimension(self.groebner_basis(order, budget)?.as_ref())
    }

    pub fn codimension(&self, budget: &Budget) -> Result<usize> {
        codimension(self.groebner_basis(MonomialOrder::GrevLex, budget)?.as_ref())
    }

    pub fn minimal_generators(&self) -> Result<MinimalGenerators> {
        minimal_generators(&self.ring, &self.generators)
    }

    /// Whether the ideal is the whole ring.
    pub fn is_unit(&self, budget: &Budget) -> Result<bool> {
        if self.generators.iter().any(|g| g.degree() == Some(0)) {
            return Ok(true);
        }
        // Homogeneous ideals with positive-degree generators are proper.
        let _ = budget;
        Ok(false)
    }

    /// Concatenation of generator lists: I + J.
    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch("ideal sum across different rings".into()));
        }
        let mut gens = self.generators.clone();
        gens.extend(other.generators.iter().cloned());
        Ideal::new(self.ring.clone(), gens)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;

    fn ring_q(n: usize) -> PolyRing {
        PolyRing::new(FieldSpec::rationals(), n)
    }

    #[test]
    fn constructor_validates() {
        let r = ring_q(2);
        let x = |i: usize| r.variable(i);
        let bad = &x(0) + &r.constant(1);
        assert!(matches!(
            Ideal::new(r.clone(), vec![bad]),
            Err(Error::NotHomogeneous(_))
        ));
        let with_zero = Ideal::new(r.clone(), vec![x(0), Polynomial::zero(r.clone())]).unwrap();
        assert_eq!(with_zero.num_generators(), 1);
    }

    #[test]
    fn membership_and_equality_examples() {
        let b = Budget::default();
        let r = ring_q(2);
        let x = |i: usize| r.variable(i);
        let i1 = Ideal::new(r.clone(), vec![x(0), x(1)]).unwrap();
        let i2 = Ideal::new(r.clone(), vec![&x(0) + &x(1), x(1)]).unwrap();
        assert!(i1.equals(&i2, &b).unwrap());
        // Generators are members; 1 is not.
        assert!(i1.contains(&x(0), &b).unwrap());
        assert!(!i1.contains(&r.constant(1), &b).unwrap());
        // (x1) != (x1^2)
        let j1 = Ideal::new(r.clone(), vec![x(0)]).unwrap();
        let j2 = Ideal::new(r.clone(), vec![x(0).pow(2)]).unwrap();
        assert!(!j1.equals(&j2, &b).unwrap());
    }

    #[test]
    fn equality_with_recombined_generators() {
        let b = Budget::default();
        let r = ring_q(3);
        let x = |i: usize| r.variable(i);
        // (x1x2, x1x3) = (x1x2 + x1x3, x1x3)
        let i1 = Ideal::new(r.clone(), vec![&x(0) * &x(1), &x(0) * &x(2)]).unwrap();
        let i2 = Ideal::new(
            r.clone(),
            vec![&(&x(0) * &x(1)) + &(&x(0) * &x(2)), &x(0) * &x(2)],
        )
        .unwrap();
        assert!(i1.equals(&i2, &b).unwrap());
    }

    #[test]
    fn cached_basis_generates_the_same_ideal() {
        let b = Budget::default();
        let r = ring_q(3);
        let x = |i: usize| r.variable(i);
        let ideal = Ideal::new(
            r.clone(),
            vec![&(&x(0) * &x(1)) - &x(2).pow(2), x(1).pow(2)],
        )
        .unwrap();
        let gb = ideal.groebner_basis(MonomialOrder::GrevLex, &b).unwrap();
        // Mutual reduction: generators reduce to zero modulo the basis, and
        // the basis elements lie in the ideal.
        for g in ideal.generators() {
            assert!(normal_form_gb(g, &gb).unwrap().is_zero());
        }
        let from_basis = Ideal::new(r.clone(), gb.elements().to_vec()).unwrap();
        assert!(ideal.equals(&from_basis, &b).unwrap());
        // Cache returns the same arc.
        let again = ideal.groebner_basis(MonomialOrder::GrevLex, &b).unwrap();
        assert!(Arc::ptr_eq(&gb, &again));
    }
}
