//! Jacobian matrices, minor ideals J_c and singular-locus ideals.
//!
//! For Q = (f_1, ..., f_r) the matrix entry (i, j) is the formal partial
//! derivative of f_i by x_j, with exponent coefficients reduced in the
//! coefficient field (so x^p differentiates to zero over F_p). J_c(Q) is
//! generated by all c-by-c minors; modulo Q it does not depend on the
//! chosen generators, which the test suite checks by recombination.
//!
//! The Jacobian singular ideal Q + J_c(Q) cuts out the singular locus under
//! the usual hypotheses (perfect field, radical equidimensional Q); this
//! module computes it unconditionally and leaves those hypotheses to the
//! caller.

use std::fmt;

use itertools::Itertools;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::groebner::Budget;
use crate::ideal::Ideal;
use crate::order::MonomialOrder;
use crate::poly::{Monomial, PolyRing, Polynomial};

/// Formal partial derivative with respect to variable `j`.
pub fn partial_derivative(f: &Polynomial, j: usize) -> Result<Polynomial> {
    let n = f.ring().num_vars();
    if j >= n {
        return Err(Error::VariableOutOfRange { index: j, nvars: n });
    }
    let mut terms = Vec::new();
    for (m, c) in f.terms() {
        let e = m.exp(j);
        if e == 0 {
            continue;
        }
        let scale = f.ring().field().integer(e as i64);
        let coeff = c * &scale;
        if coeff.is_zero() {
            continue; // characteristic divides the exponent
        }
        let mut exps = m.exps().to_vec();
        exps[j] -= 1;
        terms.push((Monomial::from_exps(exps), coeff));
    }
    Polynomial::from_terms(f.ring().clone(), terms)
}

/// All first partials as a vector (the gradient row).
pub fn gradient(f: &Polynomial) -> Vec<Polynomial> {
    (0..f.ring().num_vars())
        .map(|j| partial_derivative(f, j).expect("index in range"))
        .collect()
}

/// The r-by-n matrix of partials of the generators of an ideal.
#[derive(Debug, Clone, PartialEq)]
pub struct JacobianMatrix {
    ring: PolyRing,
    entries: Vec<Vec<Polynomial>>,
}

impl JacobianMatrix {
    pub fn of(ideal: &Ideal) -> JacobianMatrix {
        let entries = ideal.generators().iter().map(gradient).collect();
        JacobianMatrix {
            ring: ideal.ring().clone(),
            entries,
        }
    }

    pub fn ring(&self) -> &PolyRing {
        &self.ring
    }

    pub fn num_rows(&self) -> usize {
        self.entries.len()
    }

    pub fn num_cols(&self) -> usize {
        self.ring.num_vars()
    }

    pub fn entry(&self, i: usize, j: usize) -> &Polynomial {
        &self.entries[i][j]
    }

    pub fn rows(&self) -> &[Vec<Polynomial>] {
        &self.entries
    }
}

impl fmt::Display for JacobianMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.entries {
            let cells: Vec<String> = row.iter().map(|p| format!("{p}")).collect();
            writeln!(f, "[ {} ]", cells.join(", "))?;
        }
        Ok(())
    }
}

/// Determinant of a square matrix of polynomials by cofactor expansion
/// along the first row.
pub fn determinant(ring: &PolyRing, m: &[Vec<Polynomial>]) -> Polynomial {
    let n = m.len();
    debug_assert!(m.iter().all(|row| row.len() == n));
    match n {
        0 => ring.constant(1),
        1 => m[0][0].clone(),
        2 => &(&m[0][0] * &m[1][1]) - &(&m[0][1] * &m[1][0]),
        _ => {
            let mut acc = Polynomial::zero(ring.clone());
            for j in 0..n {
                if m[0][j].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<Polynomial>> = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|(k, _)| *k != j)
                            .map(|(_, p)| p.clone())
                            .collect()
                    })
                    .collect();
                let cofactor = &m[0][j] * &determinant(ring, &minor);
                acc = if j % 2 == 0 {
                    &acc + &cofactor
                } else {
                    &acc - &cofactor
                };
            }
            acc
        }
    }
}

/// J_c(Q): the ideal of all c-by-c minors of the Jacobian matrix. Row and
/// column subsets are enumerated lexicographically; zero minors are dropped.
pub fn jacobian_minor_ideal(ideal: &Ideal, c: usize) -> Result<Ideal> {
    let r = ideal.num_generators();
    let n = ideal.ring().num_vars();
    if c < 1 || c > r.min(n) {
        return Err(Error::InvalidMinorSize { c, r, n });
    }
    let jac = JacobianMatrix::of(ideal);
    let mut minors = Vec::new();
    for rows in (0..r).combinations(c) {
        for cols in (0..n).combinations(c) {
            let sub: Vec<Vec<Polynomial>> = rows
                .iter()
                .map(|&i| cols.iter().map(|&j| jac.entry(i, j).clone()).collect())
                .collect();
            let det = determinant(ideal.ring(), &sub);
            if !det.is_zero() {
                minors.push(det);
            }
        }
    }
    Ideal::new(ideal.ring().clone(), minors)
}

/// The Jacobian singular ideal Q + J_c(Q) together with the codimension
/// bookkeeping used to flag experiments that pass a non-default c.
#[derive(Debug, Clone)]
pub struct SingularLocus {
    pub ideal: Ideal,
    pub c_used: usize,
    pub codim_q: usize,
}

impl SingularLocus {
    /// True when an explicitly supplied c differs from codim(Q).
    pub fn codim_mismatch(&self) -> bool {
        self.c_used != self.codim_q
    }
}

/// Q + J_c(Q) with c defaulting to codim(Q). An explicit `c` different from
/// the codimension is allowed for experiments; the mismatch is reported on
/// the returned value, not as an error.
pub fn singular_locus_ideal(
    ideal: &Ideal,
    explicit_c: Option<usize>,
    budget: &Budget,
) -> Result<SingularLocus> {
    let codim_q = ideal.codimension(budget)?;
    let c_used = explicit_c.unwrap_or(codim_q);
    let minors = jacobian_minor_ideal(ideal, c_used)?;
    Ok(SingularLocus {
        ideal: ideal.sum(&minors)?,
        c_used,
        codim_q,
    })
}

/// Codimension of the singular locus inside V(Q), or infinity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum SingCodim {
    Finite(usize),
    Infinite,
}

impl SingCodim {
    /// "Nonsingular in codimension k" means the value exceeds k.
    pub fn exceeds(&self, k: usize) -> bool {
        match self {
            SingCodim::Finite(v) => *v > k,
            SingCodim::Infinite => true,
        }
    }
}

impl fmt::Display for SingCodim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SingCodim::Finite(v) => write!(f, "{v}"),
            SingCodim::Infinite => write!(f, "infinity"),
        }
    }
}

impl Serialize for SingCodim {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            SingCodim::Finite(v) => s.serialize_u64(*v as u64),
            SingCodim::Infinite => s.serialize_str("infinity"),
        }
    }
}

/// codim(Q + J_c(Q)) - codim(Q) with c = codim(Q); the unit singular ideal
/// maps to infinity. A zero ideal (all of affine space) is smooth.
pub fn nonsingular_codim(ideal: &Ideal, budget: &Budget) -> Result<SingCodim> {
    if ideal.is_unit(budget)? {
        return Err(Error::UnitIdeal("singular locus of the unit ideal".into()));
    }
    let codim_q = ideal.codimension(budget)?;
    if codim_q == 0 {
        return Ok(SingCodim::Infinite);
    }
    let locus = singular_locus_ideal(ideal, None, budget)?;
    let gb = locus
        .ideal
        .groebner_basis(MonomialOrder::GrevLex, budget)?;
    if gb.is_unit_ideal() {
        return Ok(SingCodim::Infinite);
    }
    let codim_locus = ideal.ring().num_vars() - crate::groebner::dimension(gb.as_ref())?;
    Ok(SingCodim::Finite(codim_locus - codim_q))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;
    use crate::poly::random_homogeneous;

    fn ring_q(n: usize) -> PolyRing {
        PolyRing::new(FieldSpec::rationals(), n)
    }

    fn ring_fp(p: u64, n: usize) -> PolyRing {
        PolyRing::new(FieldSpec::prime(p).unwrap(), n)
    }

    fn ideal(ring: &PolyRing, gens: Vec<Polynomial>) -> Ideal {
        Ideal::new(ring.clone(), gens).unwrap()
    }

    // Independent oracle: determinant as the signed sum over permutations.
    fn determinant_by_permutations(ring: &PolyRing, m: &[Vec<Polynomial>]) -> Polynomial {
        fn permutations(n: usize) -> Vec<(Vec<usize>, i32)> {
            if n == 0 {
                return vec![(vec![], 1)];
            }
            let mut out = Vec::new();
            for (perm, sign) in permutations(n - 1) {
                for pos in 0..n {
                    let mut p = perm.clone();
                    p.insert(pos, n - 1);
                    let swaps = (n - 1) - pos;
                    let s = if swaps % 2 == 0 { sign } else { -sign };
                    out.push((p, s));
                }
            }
            out
        }
        let n = m.len();
        let mut acc = Polynomial::zero(ring.clone());
        for (perm, sign) in permutations(n) {
            let mut prod = ring.constant(sign as i64);
            for (i, &j) in perm.iter().enumerate() {
                prod = &prod * &m[i][j];
            }
            acc = &acc + &prod;
        }
        acc
    }

    #[test]
    fn power_rule_and_char_p() {
        let r = ring_q(2);
        let x = |i: usize| r.variable(i);
        // d/dx1 (x1^2 x2) = 2 x1 x2
        let f = &x(0).pow(2) * &x(1);
        let df = partial_derivative(&f, 0).unwrap();
        assert_eq!(df, (&x(0) * &x(1)).scaled(&r.field().integer(2)));
        // Over F_3, d/dx1 (x1^3) = 0.
        let r3 = ring_fp(3, 1);
        let g = r3.variable(0).pow(3);
        assert!(partial_derivative(&g, 0).unwrap().is_zero());
        // Out-of-range index errors.
        assert!(matches!(
            partial_derivative(&f, 5),
            Err(Error::VariableOutOfRange { .. })
        ));
    }

    #[test]
    fn leibniz_rule_on_random_forms() {
        let r = ring_fp(5, 3);
        for seed in 0..30u64 {
            let f = random_homogeneous(&r, 2, seed);
            let g = random_homogeneous(&r, 3, seed + 500);
            for j in 0..3 {
                let lhs = partial_derivative(&(&f * &g), j).unwrap();
                let rhs = &(&f * &partial_derivative(&g, j).unwrap())
                    + &(&g * &partial_derivative(&f, j).unwrap());
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn linearity_of_the_derivative() {
        let r = ring_q(3);
        for seed in 0..20u64 {
            let f = random_homogeneous(&r, 3, seed);
            let g = random_homogeneous(&r, 3, seed + 100);
            let a = r.field().integer(seed as i64 % 5 - 2);
            let b = r.field().integer(3);
            for j in 0..3 {
                let lhs =
                    partial_derivative(&(&f.scaled(&a) + &g.scaled(&b)), j).unwrap();
                let rhs = &partial_derivative(&f, j).unwrap().scaled(&a)
                    + &partial_derivative(&g, j).unwrap().scaled(&b);
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn euler_identity() {
        // sum_j x_j df/dx_j = deg(f) * f when the characteristic does not
        // divide the degree.
        for ring in [ring_q(3), ring_fp(5, 3), ring_fp(3, 3)] {
            for d in 2..=4u32 {
                if ring.field().characteristic() != 0
                    && d % ring.field().characteristic() as u32 == 0
                {
                    continue;
                }
                for seed in 0..10u64 {
                    let f = random_homogeneous(&ring, d, seed);
                    let mut acc = Polynomial::zero(ring.clone());
                    for j in 0..ring.num_vars() {
                        acc = &acc + &(&ring.variable(j) * &partial_derivative(&f, j).unwrap());
                    }
                    assert_eq!(acc, f.scaled(&ring.field().integer(d as i64)));
                }
            }
        }
    }

    #[test]
    fn jacobian_entries_are_homogeneous_of_expected_degree() {
        let r = ring_fp(5, 4);
        let gens = vec![
            random_homogeneous(&r, 2, 1),
            random_homogeneous(&r, 3, 2),
        ];
        let q = ideal(&r, gens);
        let jac = JacobianMatrix::of(&q);
        for (i, row) in jac.rows().iter().enumerate() {
            let d = q.generators()[i].degree().unwrap();
            for e in row {
                assert!(e.is_homogeneous());
                if !e.is_zero() {
                    assert_eq!(e.degree(), Some(d - 1));
                }
            }
        }
    }

    #[test]
    fn cofactor_matches_permutation_sum() {
        let r = ring_fp(7, 3);
        for seed in 0..10u64 {
            for size in 1..=3usize {
                let m: Vec<Vec<Polynomial>> = (0..size)
                    .map(|i| {
                        (0..size)
                            .map(|j| random_homogeneous(&r, 1, seed * 100 + (i * size + j) as u64))
                            .collect()
                    })
                    .collect();
                assert_eq!(determinant(&r, &m), determinant_by_permutations(&r, &m));
            }
        }
    }

    #[test]
    fn minor_ideal_examples() {
        let b = Budget::default();
        // Q = (x1x2): J_1 = (x2, x1).
        let r = ring_q(3);
        let x = |i: usize| r.variable(i);
        let q = ideal(&r, vec![&x(0) * &x(1)]);
        let j1 = jacobian_minor_ideal(&q, 1).unwrap();
        let expected = ideal(&r, vec![x(1), x(0)]);
        assert!(j1.equals(&expected, &b).unwrap());
        // Q = (x1^2 + x2^2 + x3^2) over Q: J_1 = (2x1, 2x2, 2x3), codim 3.
        let f = &(&x(0).pow(2) + &x(1).pow(2)) + &x(2).pow(2);
        let q = ideal(&r, vec![f]);
        let j1 = jacobian_minor_ideal(&q, 1).unwrap();
        assert_eq!(j1.codimension(&b).unwrap(), 3);
        // Size validation.
        assert!(matches!(
            jacobian_minor_ideal(&q, 2),
            Err(Error::InvalidMinorSize { .. })
        ));
        assert!(matches!(
            jacobian_minor_ideal(&q, 0),
            Err(Error::InvalidMinorSize { .. })
        ));
    }

    #[test]
    fn minor_ideal_is_generator_independent_modulo_q() {
        // Q + J_c from (f1, f2) equals Q + J_c from (f1 + f2, f2).
        let b = Budget::default();
        let r = ring_fp(5, 4);
        for seed in 0..10u64 {
            let f1 = random_homogeneous(&r, 2, seed * 31);
            let f2 = random_homogeneous(&r, 2, seed * 31 + 7);
            let qa = ideal(&r, vec![f1.clone(), f2.clone()]);
            let qb = ideal(&r, vec![&f1 + &f2, f2.clone()]);
            for c in 1..=2usize {
                let ja = qa.sum(&jacobian_minor_ideal(&qa, c).unwrap()).unwrap();
                let jb = qb.sum(&jacobian_minor_ideal(&qb, c).unwrap()).unwrap();
                assert!(ja.equals(&jb, &b).unwrap(), "c={c} seed={seed}");
            }
        }
    }

    #[test]
    fn singular_locus_examples() {
        let b = Budget::default();
        let r = ring_q(3);
        let x = |i: usize| r.variable(i);
        // Smooth hyperplane: Q + J_1 = (x1, 1) is the unit ideal.
        let q = ideal(&r, vec![x(0)]);
        let locus = singular_locus_ideal(&q, None, &b).unwrap();
        let gb = locus.ideal.groebner_basis(MonomialOrder::GrevLex, &b).unwrap();
        assert!(gb.is_unit_ideal());
        assert_eq!(nonsingular_codim(&q, &b).unwrap(), SingCodim::Infinite);
        // Node: Q = (x1x2): singular ideal (x1, x2), codim 2, so value 1.
        let q = ideal(&r, vec![&x(0) * &x(1)]);
        let locus = singular_locus_ideal(&q, None, &b).unwrap();
        let expected = ideal(&r, vec![x(0), x(1)]);
        assert!(locus.ideal.equals(&expected, &b).unwrap());
        assert_eq!(nonsingular_codim(&q, &b).unwrap(), SingCodim::Finite(1));
        // Fermat cubic in 4 variables over Q: only the cone vertex is
        // singular; the singular ideal has codimension 4, so 4 - 1 = 3.
        let r4 = ring_q(4);
        let fermat = (0..4)
            .map(|j| r4.variable(j).pow(3))
            .reduce(|a, b| &a + &b)
            .unwrap();
        let q = ideal(&r4, vec![fermat]);
        assert_eq!(nonsingular_codim(&q, &b).unwrap(), SingCodim::Finite(3));
    }

    #[test]
    fn affine_cone_of_smooth_quadric_over_f5() {
        let b = Budget::default();
        let r = ring_fp(5, 3);
        let f = (0..3)
            .map(|j| r.variable(j).pow(2))
            .reduce(|a, b| &a + &b)
            .unwrap();
        let q = ideal(&r, vec![f]);
        assert_eq!(nonsingular_codim(&q, &b).unwrap(), SingCodim::Finite(2));
    }

    #[test]
    fn explicit_c_mismatch_is_flagged() {
        let b = Budget::default();
        let r = ring_q(3);
        let x = |i: usize| r.variable(i);
        let q = ideal(&r, vec![&x(0) * &x(1), x(2).pow(2)]);
        let locus = singular_locus_ideal(&q, Some(1), &b).unwrap();
        assert_eq!(locus.codim_q, 2);
        assert!(locus.codim_mismatch());
        let default = singular_locus_ideal(&q, None, &b).unwrap();
        assert!(!default.codim_mismatch());
    }

    #[test]
    fn zero_minor_ideal_is_handled() {
        // Over F_3, J_1((x1^3)) = (0): the singular ideal is Q itself.
        let b = Budget::default();
        let r = ring_fp(3, 2);
        let q = ideal(&r, vec![r.variable(0).pow(3)]);
        let j1 = jacobian_minor_ideal(&q, 1).unwrap();
        assert!(j1.is_zero_ideal());
        let locus = singular_locus_ideal(&q, None, &b).unwrap();
        assert!(locus.ideal.equals(&q, &b).unwrap());
        assert_eq!(nonsingular_codim(&q, &b).unwrap(), SingCodim::Finite(0));
    }
}
