//! Sparse multivariate polynomials with homogeneity tracking.
//!
//! A `Polynomial` is a term list sorted in descending graded reverse
//! lexicographic order, with no zero coefficients stored. The ring (field
//! plus named variables) travels with every polynomial; it is cheap to
//! clone and compared by content.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};
use crate::order::{grevlex, MonomialOrder};
use crate::rng::{next_below, seeded_rng};

/// Exponent vector with its total degree cached.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Vec<u16>,
    degree: u32,
}

impl Monomial {
    pub fn from_exps(exps: Vec<u16>) -> Monomial {
        let degree = exps.iter().map(|&e| e as u32).sum();
        Monomial { exps, degree }
    }

    /// The constant monomial 1.
    pub fn one(nvars: usize) -> Monomial {
        Monomial {
            exps: vec![0; nvars],
            degree: 0,
        }
    }

    /// The single variable x_j.
    pub fn var(nvars: usize, j: usize) -> Monomial {
        assert!(j < nvars, "variable index out of range");
        let mut exps = vec![0; nvars];
        exps[j] = 1;
        Monomial { exps, degree: 1 }
    }

    pub fn num_vars(&self) -> usize {
        self.exps.len()
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn exp(&self, j: usize) -> u16 {
        self.exps[j]
    }

    pub fn exps(&self) -> &[u16] {
        &self.exps
    }

    pub fn is_one(&self) -> bool {
        self.degree == 0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.exps.len(), other.exps.len());
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| a + b)
                .collect(),
            degree: self.degree + other.degree,
        }
    }

    /// Quotient monomial, if `other` divides `self`.
    pub fn try_div(&self, other: &Monomial) -> Option<Monomial> {
        debug_assert_eq!(self.exps.len(), other.exps.len());
        let mut exps = Vec::with_capacity(self.exps.len());
        for (a, b) in self.exps.iter().zip(&other.exps) {
            if a < b {
                return None;
            }
            exps.push(a - b);
        }
        Some(Monomial {
            exps,
            degree: self.degree - other.degree,
        })
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial::from_exps(
            self.exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| *a.max(b))
                .collect(),
        )
    }

    pub fn is_coprime_with(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Bitmask of the variables appearing in this monomial.
    pub fn support_mask(&self) -> u64 {
        let mut mask = 0u64;
        for (j, &e) in self.exps.iter().enumerate() {
            if e > 0 {
                mask |= 1 << j;
            }
        }
        mask
    }
}

/// The intrinsic order on monomials is grevlex; other orders are applied
/// explicitly through `MonomialOrder::compare`.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        grevlex(self, other)
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Debug, PartialEq, Eq, Hash)]
struct RingRepr {
    field: FieldSpec,
    vars: Vec<String>,
}

/// The ambient polynomial ring k[x_1, ..., x_n]; cheap to clone.
#[derive(Debug, Clone)]
pub struct PolyRing {
    inner: Arc<RingRepr>,
}

impl PolyRing {
    /// Ring with default variable names x1..xn.
    pub fn new(field: FieldSpec, nvars: usize) -> PolyRing {
        let vars = (1..=nvars).map(|i| format!("x{i}")).collect();
        PolyRing {
            inner: Arc::new(RingRepr { field, vars }),
        }
    }

    pub fn with_names(field: FieldSpec, vars: Vec<String>) -> Result<PolyRing> {
        for (i, v) in vars.iter().enumerate() {
            if v.is_empty() {
                return Err(Error::ParamOutOfRange("empty variable name".into()));
            }
            if vars[..i].contains(v) {
                return Err(Error::ParamOutOfRange(format!(
                    "duplicate variable name `{v}`"
                )));
            }
        }
        Ok(PolyRing {
            inner: Arc::new(RingRepr { field, vars }),
        })
    }

    pub fn field(&self) -> FieldSpec {
        self.inner.field
    }

    pub fn num_vars(&self) -> usize {
        self.inner.vars.len()
    }

    pub fn var_name(&self, j: usize) -> &str {
        &self.inner.vars[j]
    }

    pub fn var_names(&self) -> &[String] {
        &self.inner.vars
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.inner.vars.iter().position(|v| v == name)
    }

    /// The polynomial x_j.
    pub fn variable(&self, j: usize) -> Polynomial {
        Polynomial {
            ring: self.clone(),
            terms: vec![(Monomial::var(self.num_vars(), j), self.field().one())],
        }
    }

    /// The constant polynomial with the given integer value.
    pub fn constant(&self, k: i64) -> Polynomial {
        let c = self.field().integer(k);
        if c.is_zero() {
            return Polynomial::zero(self.clone());
        }
        Polynomial {
            ring: self.clone(),
            terms: vec![(Monomial::one(self.num_vars()), c)],
        }
    }
}

impl PartialEq for PolyRing {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner) || self.inner == other.inner
    }
}

impl Eq for PolyRing {}

impl std::hash::Hash for PolyRing {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.inner.hash(state);
    }
}

/// Sparse polynomial; terms strictly descending in grevlex.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    ring: PolyRing,
    terms: Vec<(Monomial, FieldElement)>,
}

impl Polynomial {
    pub fn zero(ring: PolyRing) -> Polynomial {
        Polynomial {
            ring,
            terms: Vec::new(),
        }
    }

    /// Build from arbitrary (monomial, coefficient) pairs; merges duplicates
    /// and drops zeros. Rejects wrong-arity monomials and foreign coefficients.
    pub fn from_terms(
        ring: PolyRing,
        terms: Vec<(Monomial, FieldElement)>,
    ) -> Result<Polynomial> {
        let mut map: BTreeMap<Monomial, FieldElement> = BTreeMap::new();
        for (m, c) in terms {
            if m.num_vars() != ring.num_vars() {
                return Err(Error::RingMismatch(format!(
                    "monomial arity {} in ring with {} variables",
                    m.num_vars(),
                    ring.num_vars()
                )));
            }
            if c.spec() != ring.field() {
                return Err(Error::FieldMismatch(format!(
                    "coefficient over {} in ring over {}",
                    c.spec(),
                    ring.field()
                )));
            }
            match map.entry(m) {
                std::collections::btree_map::Entry::Vacant(e) => {
                    e.insert(c);
                }
                std::collections::btree_map::Entry::Occupied(mut e) => {
                    let s = e.get().checked_add(&c)?;
                    if s.is_zero() {
                        e.remove();
                    } else {
                        *e.get_mut() = s;
                    }
                }
            }
        }
        map.retain(|_, c| !c.is_zero());
        Ok(Polynomial {
            ring,
            terms: map.into_iter().rev().collect(),
        })
    }

    /// Internal constructor: terms already normalized (descending grevlex,
    /// no zeros, correct ring).
    pub(crate) fn from_sorted_terms(
        ring: PolyRing,
        terms: Vec<(Monomial, FieldElement)>,
    ) -> Polynomial {
        debug_assert!(terms.windows(2).all(|w| w[0].0 > w[1].0));
        debug_assert!(terms.iter().all(|(_, c)| !c.is_zero()));
        Polynomial { ring, terms }
    }

    pub fn ring(&self) -> &PolyRing {
        &self.ring
    }

    pub fn terms(&self) -> &[(Monomial, FieldElement)] {
        &self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree; None for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.first().map(|(m, _)| m.degree())
    }

    /// True iff all terms share one degree (vacuously true for zero).
    pub fn is_homogeneous(&self) -> bool {
        match (self.terms.first(), self.terms.last()) {
            (Some((hi, _)), Some((lo, _))) => hi.degree() == lo.degree(),
            _ => true,
        }
    }

    pub fn coeff(&self, m: &Monomial) -> FieldElement {
        match self
            .terms
            .binary_search_by(|(t, _)| grevlex(t, m).reverse())
        {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => self.ring.field().zero(),
        }
    }

    /// Leading term under the given order.
    pub fn leading_term(&self, order: MonomialOrder) -> Option<(&Monomial, &FieldElement)> {
        match order {
            MonomialOrder::GrevLex => self.terms.first().map(|(m, c)| (m, c)),
            _ => self
                .terms
                .iter()
                .max_by(|(a, _), (b, _)| order.compare(a, b))
                .map(|(m, c)| (m, c)),
        }
    }

    fn check_same_ring(&self, other: &Polynomial) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch(format!(
                "{} variables over {} vs {} variables over {}",
                self.ring.num_vars(),
                self.ring.field(),
                other.ring.num_vars(),
                other.ring.field()
            )));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_same_ring(other)?;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            match grevlex(&self.terms[i].0, &other.terms[j].0) {
                Ordering::Greater => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(other.terms[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let c = &self.terms[i].1 + &other.terms[j].1;
                    if !c.is_zero() {
                        out.push((self.terms[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend_from_slice(&other.terms[j..]);
        Ok(Polynomial {
            ring: self.ring.clone(),
            terms: out,
        })
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.checked_add(&other.negated())
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_same_ring(other)?;
        let mut map: BTreeMap<Monomial, FieldElement> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb);
                let c = ca * cb;
                match map.entry(m) {
                    std::collections::btree_map::Entry::Vacant(e) => {
                        e.insert(c);
                    }
                    std::collections::btree_map::Entry::Occupied(mut e) => {
                        let s = e.get() + &c;
                        if s.is_zero() {
                            e.remove();
                        } else {
                            *e.get_mut() = s;
                        }
                    }
                }
            }
        }
        Ok(Polynomial {
            ring: self.ring.clone(),
            terms: map.into_iter().rev().collect(),
        })
    }

    pub fn negated(&self) -> Polynomial {
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c.negated()))
                .collect(),
        }
    }

    pub fn scaled(&self, c: &FieldElement) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.ring.clone());
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, k)| (m.clone(), k * c))
                .collect(),
        }
    }

    /// Multiply by a single term c * x^m.
    pub fn mul_term(&self, m: &Monomial, c: &FieldElement) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.ring.clone());
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(t, k)| (t.mul(m), k * c))
                .collect(),
        }
    }

    /// Divide through by the grevlex leading coefficient.
    pub fn monic(&self, order: MonomialOrder) -> Polynomial {
        match self.leading_term(order) {
            None => self.clone(),
            Some((_, c)) => {
                let inv = c.inverse().expect("nonzero leading coefficient");
                self.scaled(&inv)
            }
        }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = self.ring.constant(1);
        for _ in 0..e {
            acc = acc.checked_mul(self).expect("same ring");
        }
        acc
    }

    /// Substitute `images[j]` for x_j. All images must live in one ring.
    pub fn substitute(&self, images: &[Polynomial]) -> Result<Polynomial> {
        if images.len() != self.ring.num_vars() {
            return Err(Error::RingMismatch(format!(
                "{} images for {} variables",
                images.len(),
                self.ring.num_vars()
            )));
        }
        let target = images
            .first()
            .map(|p| p.ring().clone())
            .unwrap_or_else(|| self.ring.clone());
        let mut acc = Polynomial::zero(target.clone());
        for (m, c) in &self.terms {
            let mut term = match c {
                FieldElement::Prime { value, .. } => target.constant(*value as i64),
                FieldElement::Rational(_) => {
                    let mut t = Polynomial::zero(target.clone());
                    t = t.checked_add(&Polynomial::from_terms(
                        target.clone(),
                        vec![(Monomial::one(target.num_vars()), c.clone())],
                    )?)?;
                    t
                }
            };
            for j in 0..m.num_vars() {
                for _ in 0..m.exp(j) {
                    term = term.checked_mul(&images[j])?;
                }
            }
            acc = acc.checked_add(&term)?;
        }
        Ok(acc)
    }
}

macro_rules! poly_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl std::ops::$trait for &Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                self.$checked(rhs).expect("ring mismatch")
            }
        }
        impl std::ops::$trait for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                (&self).$method(&rhs)
            }
        }
    };
}

poly_binop!(Add, add, checked_add);
poly_binop!(Sub, sub, checked_sub);
poly_binop!(Mul, mul, checked_mul);

impl std::ops::Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.negated()
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let (neg, mag) = match c {
                FieldElement::Rational(r) if r < &num_rational::BigRational::from_integer(0.into()) => {
                    (true, c.negated())
                }
                _ => (false, c.clone()),
            };
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut factors: Vec<String> = Vec::new();
            if !mag.is_one() || m.is_one() {
                factors.push(format!("{mag}"));
            }
            for j in 0..m.num_vars() {
                match m.exp(j) {
                    0 => {}
                    1 => factors.push(self.ring.var_name(j).to_string()),
                    e => factors.push(format!("{}^{}", self.ring.var_name(j), e)),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

/// All monomials of total degree `d` in `nvars` variables, descending grevlex.
/// The count is C(nvars + d - 1, d).
pub fn graded_monomials(nvars: usize, d: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut exps = vec![0u16; nvars];
    fn rec(out: &mut Vec<Monomial>, exps: &mut Vec<u16>, pos: usize, remaining: u32) {
        if pos + 1 == exps.len() {
            exps[pos] = remaining as u16;
            out.push(Monomial::from_exps(exps.clone()));
            return;
        }
        for e in (0..=remaining).rev() {
            exps[pos] = e as u16;
            rec(out, exps, pos + 1, remaining - e);
        }
    }
    if nvars == 0 {
        if d == 0 {
            out.push(Monomial::one(0));
        }
        return out;
    }
    rec(&mut out, &mut exps, 0, d);
    out.sort_by(|a, b| grevlex(b, a));
    out
}

/// Deterministic random homogeneous form of degree `d`: uniform coefficients
/// over F_p, integers in [-3, 3] over Q. Never returns zero.
pub fn random_homogeneous(ring: &PolyRing, d: u32, seed: u64) -> Polynomial {
    let mut rng = seeded_rng(seed, 0x706f6c79);
    random_homogeneous_with(ring, d, &mut rng)
}

/// Same sampling, drawing from a caller-supplied stream.
pub fn random_homogeneous_with(ring: &PolyRing, d: u32, rng: &mut ChaCha8Rng) -> Polynomial {
    let basis = graded_monomials(ring.num_vars(), d);
    loop {
        let mut terms = Vec::new();
        for m in &basis {
            let c = match ring.field() {
                FieldSpec::Prime(p) => ring.field().from_u64(next_below(rng, p)),
                FieldSpec::Rationals => ring.field().integer(next_below(rng, 7) as i64 - 3),
            };
            if !c.is_zero() {
                terms.push((m.clone(), c));
            }
        }
        if !terms.is_empty() {
            terms.sort_by(|a, b| grevlex(&b.0, &a.0));
            return Polynomial::from_sorted_terms(ring.clone(), terms);
        }
    }
}

fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// C(nvars + d - 1, d): the dimension of the degree-d graded piece.
pub fn graded_piece_dim(nvars: usize, d: u32) -> u128 {
    if nvars == 0 {
        return if d == 0 { 1 } else { 0 };
    }
    binomial((nvars as u64) + (d as u64) - 1, d as u64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;

    pub(crate) fn ring_q(n: usize) -> PolyRing {
        PolyRing::new(FieldSpec::rationals(), n)
    }

    pub(crate) fn ring_fp(p: u64, n: usize) -> PolyRing {
        PolyRing::new(FieldSpec::prime(p).unwrap(), n)
    }

    #[test]
    fn product_of_sum_and_difference() {
        let r = ring_q(2);
        let (x1, x2) = (r.variable(0), r.variable(1));
        let lhs = (&x1 + &x2) * (&x1 - &x2);
        let rhs = &(&x1 * &x1) - &(&x2 * &x2);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn zero_is_absorbing() {
        let r = ring_q(2);
        let f = &r.variable(0) + &r.variable(1);
        let z = Polynomial::zero(r.clone());
        assert!(f.checked_mul(&z).unwrap().is_zero());
    }

    #[test]
    fn square_mod_three_hand_expansion() {
        // (x1*x2 + x3^2)^2 = x1^2*x2^2 + 2*x1*x2*x3^2 + x3^4 over F_3
        let r = ring_fp(3, 3);
        let f = &(&r.variable(0) * &r.variable(1)) + &(&r.variable(2) * &r.variable(2));
        let sq = f.pow(2);
        let expected = Polynomial::from_terms(
            r.clone(),
            vec![
                (Monomial::from_exps(vec![2, 2, 0]), r.field().integer(1)),
                (Monomial::from_exps(vec![1, 1, 2]), r.field().integer(2)),
                (Monomial::from_exps(vec![0, 0, 4]), r.field().integer(1)),
            ],
        )
        .unwrap();
        assert_eq!(sq, expected);
    }

    #[test]
    fn ring_mismatch_is_rejected() {
        let f = ring_q(2).variable(0);
        let g = ring_q(3).variable(0);
        assert!(matches!(
            f.checked_add(&g),
            Err(Error::RingMismatch(_))
        ));
        let h = ring_fp(3, 2).variable(0);
        assert!(matches!(f.checked_mul(&h), Err(Error::RingMismatch(_))));
    }

    #[test]
    fn graded_monomials_counts_and_order() {
        // n=2, d=2: x1^2, x1x2, x2^2
        let m22 = graded_monomials(2, 2);
        assert_eq!(
            m22,
            vec![
                Monomial::from_exps(vec![2, 0]),
                Monomial::from_exps(vec![1, 1]),
                Monomial::from_exps(vec![0, 2]),
            ]
        );
        // n=3, d=1: the three variables
        assert_eq!(graded_monomials(3, 1).len(), 3);
        // n=3, d=3: C(5,3) = 10 monomials, all distinct, all of degree 3
        let m33 = graded_monomials(3, 3);
        assert_eq!(m33.len(), 10);
        assert_eq!(graded_piece_dim(3, 3), 10);
        assert!(m33.iter().all(|m| m.degree() == 3));
        assert!(m33.windows(2).all(|w| w[0] > w[1]));
    }

    #[test]
    fn random_homogeneous_is_deterministic_and_homogeneous() {
        let r = ring_fp(5, 3);
        for seed in 0..20 {
            let f = random_homogeneous(&r, 3, seed);
            let g = random_homogeneous(&r, 3, seed);
            assert_eq!(f, g);
            assert!(!f.is_zero());
            assert!(f.is_homogeneous());
            assert_eq!(f.degree(), Some(3));
        }
    }

    #[test]
    fn random_linear_forms_cover_everything_eventually() {
        // Over F_3 with n=2, d=1 there are 8 nonzero forms; all must appear.
        let r = ring_fp(3, 2);
        let mut seen = std::collections::BTreeSet::new();
        for seed in 0..400 {
            let f = random_homogeneous(&r, 1, seed);
            seen.insert(format!("{f}"));
            if seen.len() == 8 {
                break;
            }
        }
        assert_eq!(seen.len(), 8, "saw only {seen:?}");
    }

    #[test]
    fn degree_adds_and_homogeneity_is_preserved() {
        let r = ring_fp(5, 3);
        for seed in 0..50 {
            let f = random_homogeneous(&r, 2, seed);
            let g = random_homogeneous(&r, 3, seed + 1000);
            let fg = &f * &g;
            assert_eq!(fg.degree(), Some(5));
            assert!(fg.is_homogeneous());
            let h = random_homogeneous(&r, 2, seed + 2000);
            let s = &f + &h;
            assert!(s.is_homogeneous());
        }
    }

    #[test]
    fn ring_axioms_random_triples() {
        for (stream, ring) in [ring_fp(3, 2), ring_fp(5, 3), ring_q(2)]
            .into_iter()
            .enumerate()
        {
            for seed in 0..333u64 {
                let f = random_homogeneous(&ring, (1 + seed % 3) as u32, seed * 3 + stream as u64);
                let g = random_homogeneous(&ring, (1 + seed % 2) as u32, seed * 3 + 1);
                let h = random_homogeneous(&ring, 2, seed * 3 + 2);
                assert_eq!(&(&f + &g) + &h, &f + &(&g + &h));
                assert_eq!(&f + &g, &g + &f);
                assert_eq!(&(&f * &g) * &h, &f * &(&g * &h));
                assert_eq!(&f * &g, &g * &f);
                assert_eq!(&f * &(&g + &h), &(&f * &g) + &(&f * &h));
                assert!((&f - &f).is_zero());
            }
        }
    }

    #[test]
    fn display_roundtrip_shape() {
        let r = ring_q(3);
        let f = &(&r.variable(0) * &r.variable(1)) - &r.constant(3).checked_mul(&r.variable(2).pow(2)).unwrap();
        assert_eq!(format!("{f}"), "x1*x2 - 3*x3^2");
        let z = Polynomial::zero(r);
        assert_eq!(format!("{z}"), "0");
    }

    #[test]
    fn substitution_composes() {
        // f(x1, x2) = x1^2 + x2^2 under x1 -> x1 + x2, x2 -> x1 - x2 gives 2x1^2 + 2x2^2.
        let r = ring_q(2);
        let f = &r.variable(0).pow(2) + &r.variable(1).pow(2);
        let images = vec![&r.variable(0) + &r.variable(1), &r.variable(0) - &r.variable(1)];
        let g = f.substitute(&images).unwrap();
        let expected = (&r.variable(0).pow(2) + &r.variable(1).pow(2)).scaled(&r.field().integer(2));
        assert_eq!(g, expected);
    }
}
