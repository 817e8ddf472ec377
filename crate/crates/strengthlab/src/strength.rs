//! Strength of homogeneous forms: the minimal k >= -1 admitting a
//! decomposition f = sum_{i=1}^{k+1} g_i h_i into products of positive-degree
//! homogeneous forms (-1 for the zero form, infinity when no decomposition
//! exists, e.g. for linear forms).
//!
//! Three routes are implemented and kept independent of one another:
//!
//! - an exact oracle for quadrics over F_p via Gram-matrix diagonalization
//!   and constructive Witt decomposition (rank/discriminant classification,
//!   with an explicit witness);
//! - a bounded exhaustive search over F_p for arbitrary degree: enumerate
//!   normalized tuples of candidate factors g_i, solve exactly for the
//!   cofactors h_i by linear algebra on the top graded piece;
//! - a certified lower bound from the codimension of the gradient ideal:
//!   codim J_1((f)) <= 2s + 2 for a form of strength s.
//!
//! Collective strength minimizes over all projective coefficient
//! combinations of equal-degree forms, and `reduce_generators` rebuilds a
//! generating set whose k-th element realizes the collective strength of
//! the first k.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};
use crate::groebner::Budget;
use crate::ideal::Ideal;
use crate::linalg::Matrix;
use crate::poly::{graded_monomials, Monomial, PolyRing, Polynomial};

/// A possibly-infinite strength value or bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Bound {
    Finite(i64),
    Infinite,
}

impl Bound {
    pub fn is_finite(&self) -> bool {
        matches!(self, Bound::Finite(_))
    }

    pub fn finite(&self) -> Option<i64> {
        match self {
            Bound::Finite(v) => Some(*v),
            Bound::Infinite => None,
        }
    }
}

impl PartialOrd for Bound {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Bound {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        match (self, other) {
            (Bound::Finite(a), Bound::Finite(b)) => a.cmp(b),
            (Bound::Finite(_), Bound::Infinite) => std::cmp::Ordering::Less,
            (Bound::Infinite, Bound::Finite(_)) => std::cmp::Ordering::Greater,
            (Bound::Infinite, Bound::Infinite) => std::cmp::Ordering::Equal,
        }
    }
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bound::Finite(v) => write!(f, "{v}"),
            Bound::Infinite => write!(f, "infinity"),
        }
    }
}

impl Serialize for Bound {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Bound::Finite(v) => s.serialize_i64(*v),
            Bound::Infinite => s.serialize_str("infinity"),
        }
    }
}

/// How the lower bound in a certificate was certified.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum LowerReason {
    RankBound,
    JacobianBound,
    ExhaustiveSearch,
    Zero,
}

/// A bracketing of the true strength: `lower <= strength <= upper`, with an
/// explicit decomposition witnessing the upper bound when it is finite.
#[derive(Debug, Clone, PartialEq)]
pub struct StrengthCertificate {
    pub lower: Bound,
    pub upper: Bound,
    pub witness: Option<Vec<(Polynomial, Polynomial)>>,
    pub lower_reason: LowerReason,
}

impl StrengthCertificate {
    /// Exact certificate: lower = upper = k, witness of length k + 1 that
    /// re-expands to `f`. Panics if the witness does not check out; callers
    /// construct witnesses, this constructor audits them.
    pub fn exact(
        f: &Polynomial,
        k: i64,
        witness: Vec<(Polynomial, Polynomial)>,
        lower_reason: LowerReason,
    ) -> StrengthCertificate {
        validate_witness(f, k, &witness);
        StrengthCertificate {
            lower: Bound::Finite(k),
            upper: Bound::Finite(k),
            witness: Some(witness),
            lower_reason,
        }
    }

    /// Bracketing certificate with an optional witness for the upper end.
    pub fn bounds(
        f: &Polynomial,
        lower: i64,
        upper: i64,
        witness: Option<Vec<(Polynomial, Polynomial)>>,
        lower_reason: LowerReason,
    ) -> StrengthCertificate {
        assert!(lower <= upper, "certificate with lower {lower} > upper {upper}");
        if let Some(w) = &witness {
            validate_witness(f, upper, w);
        }
        StrengthCertificate {
            lower: Bound::Finite(lower),
            upper: Bound::Finite(upper),
            witness,
            lower_reason,
        }
    }

    /// The zero form has strength -1, witnessed by the empty decomposition.
    pub fn zero_form() -> StrengthCertificate {
        StrengthCertificate {
            lower: Bound::Finite(-1),
            upper: Bound::Finite(-1),
            witness: Some(Vec::new()),
            lower_reason: LowerReason::Zero,
        }
    }

    /// Forms of degree <= 1 admit no decomposition at all: strength is
    /// provably infinite (the pattern set of the search is empty).
    pub fn provably_infinite() -> StrengthCertificate {
        StrengthCertificate {
            lower: Bound::Infinite,
            upper: Bound::Infinite,
            witness: None,
            lower_reason: LowerReason::ExhaustiveSearch,
        }
    }

    pub fn is_exact(&self) -> bool {
        self.lower == self.upper
    }

    /// The exact strength when lower and upper agree.
    pub fn exact_value(&self) -> Option<Bound> {
        self.is_exact().then_some(self.lower)
    }
}

fn validate_witness(f: &Polynomial, k: i64, witness: &[(Polynomial, Polynomial)]) {
    assert_eq!(witness.len() as i64, k + 1, "witness length must be k + 1");
    let mut acc = Polynomial::zero(f.ring().clone());
    for (g, h) in witness {
        assert!(
            g.degree().map_or(false, |d| d > 0) && h.degree().map_or(false, |d| d > 0),
            "witness factors must be homogeneous of positive degree"
        );
        assert!(g.is_homogeneous() && h.is_homogeneous());
        acc = &acc + &(g * h);
    }
    assert_eq!(&acc, f, "witness does not re-expand to the form");
}

/// Gram matrix of a quadratic form: A_ii = coeff(x_i^2), A_ij = coeff(x_i x_j)/2.
pub fn gram_matrix(f: &Polynomial) -> Result<Matrix> {
    if !f.is_homogeneous() || f.degree() != Some(2) {
        return Err(Error::NotQuadric(format!("{f}")));
    }
    let ring = f.ring();
    let n = ring.num_vars();
    let field = ring.field();
    let half = field.integer(2).inverse()?;
    let mut a = Matrix::zeros(field, n, n);
    for (m, c) in f.terms() {
        let support: Vec<usize> = (0..n).filter(|&j| m.exp(j) > 0).collect();
        match support.as_slice() {
            [i] => a.set(*i, *i, c.clone()),
            [i, j] => {
                let v = c * &half;
                a.set(*i, *j, v.clone());
                a.set(*j, *i, v);
            }
            _ => unreachable!("degree-2 monomials have at most two variables"),
        }
    }
    Ok(a)
}

/// Symmetric congruence diagonalization: returns (diagonal entries, S) with
/// S^T A S diagonal, so f(x) = sum_i d_i L_i(x)^2 with L_i the i-th row of
/// S^{-1}.
fn diagonalize_symmetric(a: &Matrix) -> (Vec<FieldElement>, Matrix) {
    let n = a.nrows();
    let field = a.field();
    let mut a = a.clone();
    let mut s = Matrix::identity(field, n);

    let swap_sym = |a: &mut Matrix, s: &mut Matrix, k: usize, m: usize| {
        for i in 0..n {
            let (x, y) = (a.get(i, k).clone(), a.get(i, m).clone());
            a.set(i, k, y);
            a.set(i, m, x);
        }
        a.swap_rows(k, m);
        for i in 0..n {
            let (x, y) = (s.get(i, k).clone(), s.get(i, m).clone());
            s.set(i, k, y);
            s.set(i, m, x);
        }
    };

    for k in 0..n {
        if a.get(k, k).is_zero() {
            if let Some(m) = ((k + 1)..n).find(|&m| !a.get(m, m).is_zero()) {
                swap_sym(&mut a, &mut s, k, m);
            } else if let Some(m) = ((k + 1)..n).find(|&m| !a.get(k, m).is_zero()) {
                // col_k += col_m, row_k += row_m; the new (k,k) entry is
                // 2*a[k][m], nonzero because the characteristic is odd.
                for i in 0..n {
                    let v = a.get(i, k) + a.get(i, m);
                    a.set(i, k, v);
                }
                for j in 0..n {
                    let v = a.get(k, j) + a.get(m, j);
                    a.set(k, j, v);
                }
                for i in 0..n {
                    let v = s.get(i, k) + s.get(i, m);
                    s.set(i, k, v);
                }
            } else {
                continue;
            }
        }
        let pivot = a.get(k, k).clone();
        for m in (k + 1)..n {
            if a.get(k, m).is_zero() {
                continue;
            }
            let factor = a.get(k, m).checked_div(&pivot).expect("nonzero pivot");
            for i in 0..n {
                let v = a.get(i, m) - &(a.get(i, k) * &factor);
                a.set(i, m, v);
            }
            for j in 0..n {
                let v = a.get(m, j) - &(a.get(k, j) * &factor);
                a.set(m, j, v);
            }
            for i in 0..n {
                let v = s.get(i, m) - &(s.get(i, k) * &factor);
                s.set(i, m, v);
            }
        }
    }
    let diag = (0..n).map(|i| a.get(i, i).clone()).collect();
    (diag, s)
}

/// f as sum of d_i * L_i^2 with independent linear forms and nonzero d_i.
fn diagonal_form(f: &Polynomial) -> Result<Vec<(FieldElement, Polynomial)>> {
    let ring = f.ring();
    let n = ring.num_vars();
    let gram = gram_matrix(f)?;
    let (diag, s) = diagonalize_symmetric(&gram);
    let t = s.inverse().expect("congruence transform is invertible");
    let mut entries = Vec::new();
    for i in 0..n {
        if diag[i].is_zero() {
            continue;
        }
        let mut linear = Polynomial::zero(ring.clone());
        for j in 0..n {
            linear = &linear + &ring.variable(j).scaled(t.get(i, j));
        }
        entries.push((diag[i].clone(), linear));
    }
    debug_assert_eq!(
        entries
            .iter()
            .fold(Polynomial::zero(ring.clone()), |acc, (d, l)| &acc
                + &(l * l).scaled(d)),
        *f,
        "diagonalization mismatch"
    );
    Ok(entries)
}

/// Split d1 L1^2 + d2 L2^2 into a single product when -d2/d1 is a square:
/// the factorization (d1 (L1 - t L2)) (L1 + t L2) with t^2 = -d2/d1.
fn try_pair(
    a: &(FieldElement, Polynomial),
    b: &(FieldElement, Polynomial),
) -> Option<(Polynomial, Polynomial)> {
    let ratio = b.0.negated().checked_div(&a.0).expect("nonzero entries");
    let t = ratio.exact_sqrt()?;
    let g = (&a.1 - &b.1.scaled(&t)).scaled(&a.0);
    let h = &a.1 + &b.1.scaled(&t);
    Some((g, h))
}

/// Over F_p every nondegenerate ternary form is isotropic; split three
/// diagonal entries into one hyperbolic product plus one diagonal entry.
/// Requires that no pair among the three is directly pairable.
fn ternary_split(
    field: FieldSpec,
    e1: &(FieldElement, Polynomial),
    e2: &(FieldElement, Polynomial),
    e3: &(FieldElement, Polynomial),
) -> ((Polynomial, Polynomial), (FieldElement, Polynomial)) {
    let p = field.characteristic();
    debug_assert!(p > 2);
    let (d1, d2, d3) = (&e1.0, &e2.0, &e3.0);
    // Isotropic vector (1, v, w) of d1 u^2 + d2 v^2 + d3 w^2: scan v and
    // solve for w by a square-root extraction. Guaranteed to exist since
    // every plane conic over F_p has points off the line u = 0.
    let mut iso: Option<(FieldElement, FieldElement)> = None;
    for v_raw in 0..p {
        let v = field.from_u64(v_raw);
        let rhs = (d1.negated() - (&(&v * &v) * d2))
            .checked_div(d3)
            .expect("nonzero d3");
        if let Some(w) = rhs.exact_sqrt() {
            iso = Some((v, w));
            break;
        }
    }
    let (v, w) = iso.expect("ternary forms over F_p are isotropic");
    let e = [field.one(), v, w];
    // B(x, y) = sum d_i x_i y_i. Build w1 with Q(w1) = 0, B(e, w1) = 1 from
    // the first basis vector (B(e, basis_0) = d1 != 0).
    let ds = [d1.clone(), d2.clone(), d3.clone()];
    let q_of = |x: &[FieldElement; 3]| -> FieldElement {
        let mut acc = field.zero();
        for i in 0..3 {
            acc = &acc + &(&(&x[i] * &x[i]) * &ds[i]);
        }
        acc
    };
    let d1_inv = d1.inverse().expect("nonzero");
    let w0 = [d1_inv.clone(), field.zero(), field.zero()];
    let q_w0 = q_of(&w0);
    let lambda = q_w0.checked_div(&field.integer(2)).expect("char is odd");
    let mut w1 = [field.zero(), field.zero(), field.zero()];
    for i in 0..3 {
        w1[i] = &w0[i] - &(&lambda * &e[i]);
    }
    debug_assert!(q_of(&w1).is_zero());
    // z: orthogonal to both e and w1 under B.
    let brow = |x: &[FieldElement; 3]| -> Vec<FieldElement> {
        (0..3).map(|i| &x[i] * &ds[i]).collect()
    };
    let bmat = Matrix::from_rows(field, vec![brow(&e), brow(&w1)]);
    let z_vec = bmat.kernel_vector().expect("2 equations in 3 unknowns");
    let z = [z_vec[0].clone(), z_vec[1].clone(), z_vec[2].clone()];
    let q_z = q_of(&z);
    debug_assert!(!q_z.is_zero(), "orthogonal complement is nondegenerate");
    // Dual coordinates of the basis (e, w1, z): rows of M^{-1}.
    let m = Matrix::from_rows(
        field,
        (0..3).map(|i| vec![e[i].clone(), w1[i].clone(), z[i].clone()]).collect(),
    );
    let minv = m.inverse().expect("basis change is invertible");
    let ls = [&e1.1, &e2.1, &e3.1];
    let form_from_row = |row: usize| -> Polynomial {
        let mut acc = Polynomial::zero(e1.1.ring().clone());
        for (i, l) in ls.iter().enumerate() {
            acc = &acc + &l.scaled(minv.get(row, i));
        }
        acc
    };
    let alpha = form_from_row(0);
    let beta = form_from_row(1);
    let gamma = form_from_row(2);
    // d1 L1^2 + d2 L2^2 + d3 L3^2 = (2 alpha) beta + q_z gamma^2.
    let product = (alpha.scaled(&field.integer(2)), beta);
    let remainder = (q_z, gamma);
    debug_assert_eq!(
        {
            let lhs = [e1, e2, e3]
                .iter()
                .fold(Polynomial::zero(e1.1.ring().clone()), |acc, (d, l)| &acc
                    + &(l * l).scaled(d));
            let rhs = &(&product.0 * &product.1)
                + &(&remainder.1 * &remainder.1).scaled(&remainder.0);
            (lhs, rhs)
        }
        .0,
        {
            let rhs = &(&product.0 * &product.1)
                + &(&remainder.1 * &remainder.1).scaled(&remainder.0);
            rhs
        }
    );
    (product, remainder)
}

/// Extract products from a diagonalized form. Over F_p (`allow_ternary`)
/// this realizes the exact Witt decomposition; over Q only direct pairing
/// applies and the result is just an upper bound.
fn extract_products(
    field: FieldSpec,
    mut entries: Vec<(FieldElement, Polynomial)>,
    allow_ternary: bool,
) -> Vec<(Polynomial, Polynomial)> {
    let mut products = Vec::new();
    loop {
        let mut paired = None;
        'search: for i in 0..entries.len() {
            for j in (i + 1)..entries.len() {
                if let Some(prod) = try_pair(&entries[i], &entries[j]) {
                    paired = Some((i, j, prod));
                    break 'search;
                }
            }
        }
        if let Some((i, j, prod)) = paired {
            products.push(prod);
            entries.remove(j);
            entries.remove(i);
        } else if allow_ternary && entries.len() >= 3 {
            let e3 = entries.remove(2);
            let e2 = entries.remove(1);
            let e1 = entries.remove(0);
            let (prod, rest) = ternary_split(field, &e1, &e2, &e3);
            products.push(prod);
            entries.push(rest);
        } else {
            break;
        }
    }
    for (d, l) in entries {
        products.push((l.scaled(&d), l));
    }
    products
}

/// Exact strength of a quadratic form over F_p by rank/discriminant
/// classification, with a constructive witness: strength is (r-1)/2 for odd
/// rank r; for even r it is r/2 - 1 when (-1)^{r/2} disc is a square and
/// r/2 otherwise. Over Q the certificate only brackets: the rank bound
/// ceil(r/2) - 1 below, greedy pairing above.
pub fn quadric_strength(f: &Polynomial) -> Result<StrengthCertificate> {
    if f.is_zero() {
        return Ok(StrengthCertificate::zero_form());
    }
    if !f.is_homogeneous() || f.degree() != Some(2) {
        return Err(Error::NotQuadric(format!("{f}")));
    }
    let field = f.ring().field();
    if field.characteristic() == 2 {
        return Err(Error::Char2Unsupported);
    }
    let entries = diagonal_form(f)?;
    let rank = entries.len();
    match field {
        FieldSpec::Prime(_) => {
            let formula = if rank % 2 == 1 {
                (rank as i64 - 1) / 2
            } else {
                let disc = entries
                    .iter()
                    .fold(field.one(), |acc, (d, _)| &acc * d);
                let sign = if (rank / 2) % 2 == 0 {
                    field.one()
                } else {
                    field.one().negated()
                };
                if (&sign * &disc).is_square()? {
                    rank as i64 / 2 - 1
                } else {
                    rank as i64 / 2
                }
            };
            let witness = extract_products(field, entries, true);
            assert_eq!(
                witness.len() as i64 - 1,
                formula,
                "Witt decomposition disagrees with the classification formula"
            );
            Ok(StrengthCertificate::exact(
                f,
                formula,
                witness,
                LowerReason::RankBound,
            ))
        }
        FieldSpec::Rationals => {
            let lower = (rank as i64 + 1) / 2 - 1;
            let witness = extract_products(field, entries, false);
            let upper = witness.len() as i64 - 1;
            Ok(StrengthCertificate::bounds(
                f,
                lower,
                upper,
                Some(witness),
                LowerReason::RankBound,
            ))
        }
    }
}

/// Caps on the exhaustive search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchConfig {
    pub max_candidates: u128,
}

impl Default for SearchConfig {
    fn default() -> SearchConfig {
        SearchConfig {
            max_candidates: 5_000_000,
        }
    }
}

impl SearchConfig {
    pub fn from_points(points: u64) -> SearchConfig {
        SearchConfig {
            max_candidates: points as u128,
        }
    }
}

/// Projective representatives of nonzero coefficient vectors over F_p:
/// first nonzero coordinate normalized to 1, ascending lexicographic order.
pub(crate) fn projective_reps(p: u64, dim: usize) -> ProjectiveIter {
    ProjectiveIter {
        p,
        dim,
        lead: dim,
        digits: Vec::new(),
        exhausted: dim == 0,
        started: false,
    }
}

pub(crate) struct ProjectiveIter {
    p: u64,
    dim: usize,
    lead: usize,
    digits: Vec<u64>,
    exhausted: bool,
    started: bool,
}

impl Iterator for ProjectiveIter {
    type Item = Vec<u64>;

    fn next(&mut self) -> Option<Vec<u64>> {
        if self.exhausted {
            return None;
        }
        if !self.started {
            self.started = true;
            self.lead = self.dim - 1;
            self.digits = Vec::new();
        } else {
            // Advance the odometer over the positions after the lead; carry
            // moves the lead one slot to the left.
            let mut pos = self.digits.len();
            loop {
                if pos == 0 {
                    if self.lead == 0 {
                        self.exhausted = true;
                        return None;
                    }
                    self.lead -= 1;
                    self.digits = vec![0; self.dim - 1 - self.lead];
                    break;
                }
                pos -= 1;
                self.digits[pos] += 1;
                if self.digits[pos] < self.p {
                    break;
                }
                self.digits[pos] = 0;
                if pos == 0 {
                    if self.lead == 0 {
                        self.exhausted = true;
                        return None;
                    }
                    self.lead -= 1;
                    self.digits = vec![0; self.dim - 1 - self.lead];
                    break;
                }
            }
        }
        let mut v = vec![0u64; self.dim];
        v[self.lead] = 1;
        for (off, &d) in self.digits.iter().enumerate() {
            v[self.lead + 1 + off] = d;
        }
        Some(v)
    }
}

/// (p^dim - 1)/(p - 1), the number of projective representatives.
pub(crate) fn projective_count(p: u128, dim: u32) -> u128 {
    let mut acc: u128 = 0;
    for _ in 0..dim {
        acc = acc.saturating_mul(p).saturating_add(1);
    }
    acc
}

fn binom_u128(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul(n - i) / (i + 1);
    }
    acc
}

/// Nondecreasing degree patterns (a_1 <= ... <= a_m) with 1 <= a_i <= max_a.
fn degree_patterns(m: usize, max_a: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(m);
    fn rec(out: &mut Vec<Vec<u32>>, current: &mut Vec<u32>, m: usize, lo: u32, hi: u32) {
        if current.len() == m {
            out.push(current.clone());
            return;
        }
        for a in lo..=hi {
            current.push(a);
            rec(out, current, m, a, hi);
            current.pop();
        }
    }
    if max_a >= 1 {
        rec(&mut out, &mut current, m, 1, max_a);
    }
    out
}

/// Number of index tuples for one pattern: nondecreasing within runs of
/// equal degree (multisets), free across runs.
fn pattern_tuple_count(pattern: &[u32], rep_counts: &BTreeMap<u32, u128>) -> u128 {
    let mut total: u128 = 1;
    let mut i = 0;
    while i < pattern.len() {
        let mut j = i;
        while j < pattern.len() && pattern[j] == pattern[i] {
            j += 1;
        }
        let run = (j - i) as u128;
        let m = rep_counts[&pattern[i]];
        total = total.saturating_mul(binom_u128(m + run - 1, run));
        i = j;
    }
    total
}

/// Candidate factor polynomials per degree, materialized lazily so the
/// feasibility check can reject oversized searches before any are built.
struct RepTable {
    ring: PolyRing,
    p: u64,
    reps: BTreeMap<u32, Vec<Polynomial>>,
}

impl RepTable {
    fn new(ring: &PolyRing, p: u64) -> RepTable {
        RepTable {
            ring: ring.clone(),
            p,
            reps: BTreeMap::new(),
        }
    }

    fn ensure(&mut self, a: u32) {
        if self.reps.contains_key(&a) {
            return;
        }
        let basis = graded_monomials(self.ring.num_vars(), a);
        let list: Vec<Polynomial> = projective_reps(self.p, basis.len())
            .map(|coeffs| {
                let terms: Vec<(Monomial, FieldElement)> = basis
                    .iter()
                    .zip(&coeffs)
                    .filter(|(_, &c)| c != 0)
                    .map(|(m, &c)| (m.clone(), self.ring.field().from_u64(c)))
                    .collect();
                Polynomial::from_terms(self.ring.clone(), terms).expect("valid terms")
            })
            .collect();
        self.reps.insert(a, list);
    }
}

/// Multiset odometer over rep indices: nondecreasing inside equal-degree runs.
struct TupleIter<'a> {
    pattern: &'a [u32],
    sizes: Vec<usize>,
    indices: Vec<usize>,
    fresh: bool,
    exhausted: bool,
}

impl<'a> TupleIter<'a> {
    fn new(pattern: &'a [u32], reps: &BTreeMap<u32, Vec<Polynomial>>) -> TupleIter<'a> {
        let sizes: Vec<usize> = pattern.iter().map(|a| reps[a].len()).collect();
        let exhausted = sizes.iter().any(|&s| s == 0);
        TupleIter {
            pattern,
            sizes,
            indices: vec![0; pattern.len()],
            fresh: true,
            exhausted,
        }
    }
}

impl<'a> Iterator for TupleIter<'a> {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.exhausted {
            return None;
        }
        if self.fresh {
            self.fresh = false;
            return Some(self.indices.clone());
        }
        let m = self.indices.len();
        let mut pos = m;
        loop {
            if pos == 0 {
                self.exhausted = true;
                return None;
            }
            pos -= 1;
            self.indices[pos] += 1;
            if self.indices[pos] < self.sizes[pos] {
                // Reset the tail to the smallest values permitted by the
                // multiset constraint.
                for t in (pos + 1)..m {
                    self.indices[t] = if self.pattern[t] == self.pattern[t - 1] {
                        self.indices[t - 1]
                    } else {
                        0
                    };
                }
                if self.indices.iter().zip(&self.sizes).all(|(i, s)| i < s) {
                    return Some(self.indices.clone());
                }
                // Tail reset overflowed some slot; keep carrying.
                pos += 1;
            }
        }
    }
}

/// Bounded exhaustive strength search over F_p.
///
/// For k = 0..k_max, enumerate normalized degree patterns and candidate
/// tuples (g_1, ..., g_{k+1}), then solve the exact linear system for the
/// cofactors h_i on the degree-d graded piece. Returns the least k with a
/// decomposition (exact certificate with the lexicographically first
/// witness) or the exhaustion bracket [k_max + 1, infinity).
pub fn strength_search(
    f: &Polynomial,
    k_max: i64,
    config: &SearchConfig,
) -> Result<StrengthCertificate> {
    if f.is_zero() {
        return Ok(StrengthCertificate::zero_form());
    }
    if !f.is_homogeneous() {
        return Err(Error::NotHomogeneous(format!("{f}")));
    }
    if k_max < 0 {
        return Err(Error::ParamOutOfRange("k_max must be >= 0".into()));
    }
    let p = match f.ring().field() {
        FieldSpec::Prime(p) => p,
        FieldSpec::Rationals => {
            return Err(Error::UnsupportedField(
                "exhaustive strength search requires a finite prime field".into(),
            ))
        }
    };
    let d = f.degree().expect("nonzero");
    if d <= 1 {
        // No decomposition into positive-degree factors can reach degree <= 1.
        return Ok(StrengthCertificate::provably_infinite());
    }
    let ring = f.ring();
    let n = ring.num_vars();
    let max_a = d / 2;
    let basis_d = graded_monomials(n, d);
    let index_d: BTreeMap<&Monomial, usize> =
        basis_d.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut table = RepTable::new(ring, p);
    let rep_counts: BTreeMap<u32, u128> = (1..=max_a)
        .map(|a| (a, projective_count(p as u128, graded_piece_dim(n, a) as u32)))
        .collect();

    let mut rhs = vec![ring.field().zero(); basis_d.len()];
    for (m, c) in f.terms() {
        rhs[index_d[m]] = c.clone();
    }

    for k in 0..=k_max {
        let m_summands = (k + 1) as usize;
        let patterns = degree_patterns(m_summands, max_a);
        let total: u128 = patterns
            .iter()
            .map(|pat| pattern_tuple_count(pat, &rep_counts))
            .fold(0u128, |a, b| a.saturating_add(b));
        if total > config.max_candidates {
            return Err(Error::SearchSpaceTooLarge {
                size: total,
                cap: config.max_candidates,
            });
        }
        for pattern in &patterns {
            let cof_bases: Vec<Vec<Monomial>> = pattern
                .iter()
                .map(|&a| graded_monomials(n, d - a))
                .collect();
            let col_offsets: Vec<usize> = {
                let mut offs = vec![0usize];
                for cb in &cof_bases {
                    offs.push(offs.last().unwrap() + cb.len());
                }
                offs
            };
            let ncols = *col_offsets.last().unwrap();
            for tuple in TupleIter::new(pattern, &table.reps) {
                let mut a = Matrix::zeros(ring.field(), basis_d.len(), ncols);
                for (slot, (&ai, &rep_idx)) in pattern.iter().zip(&tuple).enumerate() {
                    let g = &table.reps[&ai][rep_idx];
                    for (u, mu) in cof_bases[slot].iter().enumerate() {
                        let prod = g.mul_term(mu, &ring.field().one());
                        for (t, c) in prod.terms() {
                            a.set(index_d[t], col_offsets[slot] + u, c.clone());
                        }
                    }
                }
                if let Some(sol) = a.solve(&rhs) {
                    let mut witness = Vec::with_capacity(m_summands);
                    for (slot, (&ai, &rep_idx)) in pattern.iter().zip(&tuple).enumerate() {
                        let g = table.reps[&ai][rep_idx].clone();
                        let h_terms: Vec<(Monomial, FieldElement)> = cof_bases[slot]
                            .iter()
                            .enumerate()
                            .filter(|(u, _)| !sol[col_offsets[slot] + u].is_zero())
                            .map(|(u, mu)| (mu.clone(), sol[col_offsets[slot] + u].clone()))
                            .collect();
                        let h = Polynomial::from_terms(ring.clone(), h_terms)?;
                        assert!(
                            !h.is_zero(),
                            "a vanishing cofactor contradicts minimality of k"
                        );
                        witness.push((g, h));
                    }
                    return Ok(StrengthCertificate::exact(
                        f,
                        k,
                        witness,
                        LowerReason::ExhaustiveSearch,
                    ));
                }
            }
        }
    }
    Ok(StrengthCertificate {
        lower: Bound::Finite(k_max + 1),
        upper: Bound::Infinite,
        witness: None,
        lower_reason: LowerReason::ExhaustiveSearch,
    })
}

/// Strength dispatch over F_p: oracle for quadrics, search otherwise.
fn strength_fp(f: &Polynomial, k_max: i64, config: &SearchConfig) -> Result<StrengthCertificate> {
    if f.is_zero() {
        return Ok(StrengthCertificate::zero_form());
    }
    match f.degree() {
        Some(d) if d <= 1 => Ok(StrengthCertificate::provably_infinite()),
        Some(2) => quadric_strength(f),
        _ => strength_search(f, k_max, config),
    }
}

/// Lower bound on strength from the gradient ideal: a form of strength s
/// has codim J_1((f)) <= 2s + 2, so s >= ceil(codim/2) - 1.
pub fn strength_lower_bound_jacobian(f: &Polynomial, budget: &Budget) -> Result<i64> {
    if f.is_zero() {
        return Ok(-1);
    }
    if !f.is_homogeneous() {
        return Err(Error::NotHomogeneous(format!("{f}")));
    }
    let d = f.degree().expect("nonzero");
    if d < 2 {
        return Err(Error::ParamOutOfRange(
            "the gradient bound needs degree >= 2".into(),
        ));
    }
    let grads: Vec<Polynomial> = crate::differential::gradient(f)
        .into_iter()
        .filter(|g| !g.is_zero())
        .collect();
    if grads.is_empty() {
        return Ok(-1);
    }
    let j1 = Ideal::new(f.ring().clone(), grads)?;
    let codim = j1.codimension(budget)? as i64;
    Ok((codim + 1) / 2 - 1)
}

/// Best certificate the library can produce for a single form: the quadric
/// oracle when applicable, the exhaustive search over F_p, and over Q for
/// higher degree an Euler-identity witness above with the gradient bound
/// below.
pub fn strength_certificate(
    f: &Polynomial,
    k_max: i64,
    config: &SearchConfig,
    budget: &Budget,
) -> Result<StrengthCertificate> {
    if f.is_zero() {
        return Ok(StrengthCertificate::zero_form());
    }
    if !f.is_homogeneous() {
        return Err(Error::NotHomogeneous(format!("{f}")));
    }
    let d = f.degree().expect("nonzero");
    if d <= 1 {
        return Ok(StrengthCertificate::provably_infinite());
    }
    match f.ring().field() {
        FieldSpec::Prime(_) => {
            let cert = strength_fp(f, k_max, config)?;
            if cert.is_exact() {
                return Ok(cert);
            }
            let jac = strength_lower_bound_jacobian(f, budget)?;
            if Bound::Finite(jac) > cert.lower {
                Ok(StrengthCertificate {
                    lower: Bound::Finite(jac),
                    lower_reason: LowerReason::JacobianBound,
                    ..cert
                })
            } else {
                Ok(cert)
            }
        }
        FieldSpec::Rationals => {
            if d == 2 {
                return quadric_strength(f);
            }
            // Euler identity: f = (1/d) sum_j x_j df/dx_j in characteristic 0.
            let dinv = f.ring().field().integer(d as i64).inverse()?;
            let witness: Vec<(Polynomial, Polynomial)> = crate::differential::gradient(f)
                .into_iter()
                .enumerate()
                .filter(|(_, g)| !g.is_zero())
                .map(|(j, g)| (f.ring().variable(j).scaled(&dinv), g))
                .collect();
            let upper = witness.len() as i64 - 1;
            let lower = strength_lower_bound_jacobian(f, budget)?;
            Ok(StrengthCertificate::bounds(
                f,
                lower.min(upper),
                upper,
                Some(witness),
                LowerReason::JacobianBound,
            ))
        }
    }
}

/// Collective strength of a family: the minimal strength of a nontrivial
/// linear combination. Combinations only mix forms of equal degree (other
/// combinations are never homogeneous); all projective coefficient vectors
/// are enumerated per degree class.
///
/// Returns the combined certificate (min of lower bounds, min of upper
/// bounds over all combinations) and the full-length coefficient vector of
/// the lexicographically first combination achieving the minimal upper
/// bound.
pub fn collective_strength(
    fs: &[Polynomial],
    k_max: i64,
    config: &SearchConfig,
) -> Result<(StrengthCertificate, Vec<FieldElement>)> {
    if fs.is_empty() {
        return Err(Error::ZeroInput("collective strength of an empty family".into()));
    }
    let ring = fs[0].ring().clone();
    let p = match ring.field() {
        FieldSpec::Prime(p) => p,
        FieldSpec::Rationals => {
            return Err(Error::UnsupportedField(
                "collective strength enumerates combinations over a finite field".into(),
            ))
        }
    };
    for f in fs {
        if f.ring() != &ring {
            return Err(Error::RingMismatch("family spans different rings".into()));
        }
        if f.is_zero() {
            return Err(Error::ZeroInput("zero form in the family".into()));
        }
        if !f.is_homogeneous() {
            return Err(Error::NotHomogeneous(format!("{f}")));
        }
    }
    let mut classes: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
    for (i, f) in fs.iter().enumerate() {
        classes.entry(f.degree().expect("nonzero")).or_default().push(i);
    }

    let mut best_lower = Bound::Infinite;
    let mut best_lower_reason = LowerReason::ExhaustiveSearch;
    let mut best_upper = Bound::Infinite;
    let mut best_vec: Option<Vec<FieldElement>> = None;
    let mut best_witness: Option<Vec<(Polynomial, Polynomial)>> = None;
    let mut first_vec: Option<Vec<FieldElement>> = None;

    for indices in classes.values() {
        for coeffs in projective_reps(p, indices.len()) {
            let mut combo = Polynomial::zero(ring.clone());
            let mut full = vec![ring.field().zero(); fs.len()];
            for (slot, &idx) in indices.iter().enumerate() {
                let c = ring.field().from_u64(coeffs[slot]);
                full[idx] = c.clone();
                combo = &combo + &fs[idx].scaled(&c);
            }
            if first_vec.is_none() {
                first_vec = Some(full.clone());
            }
            let cert = strength_fp(&combo, k_max, config)?;
            if cert.lower < best_lower {
                best_lower = cert.lower;
                best_lower_reason = cert.lower_reason;
            }
            if cert.upper < best_upper {
                best_upper = cert.upper;
                best_vec = Some(full);
                best_witness = cert.witness;
            }
        }
    }
    let vec = best_vec.or(first_vec).expect("at least one combination");
    Ok((
        StrengthCertificate {
            lower: best_lower,
            upper: best_upper,
            witness: best_witness,
            lower_reason: best_lower_reason,
        },
        vec,
    ))
}

/// Reorder/recombine generators so that the strength of the k-th output
/// equals the collective strength of the first k: take a combination
/// realizing the collective strength as the last generator, swap a
/// generator with nonzero coefficient out of the prefix, recurse.
///
/// Output entries carry the certificate of the recorded combination. A zero
/// polynomial can legitimately appear when the input generators are
/// linearly dependent (collective strength -1).
pub fn reduce_generators(
    ideal: &Ideal,
    k_max: i64,
    config: &SearchConfig,
) -> Result<Vec<(Polynomial, StrengthCertificate)>> {
    fn rec(
        fs: Vec<Polynomial>,
        k_max: i64,
        config: &SearchConfig,
    ) -> Result<Vec<(Polynomial, StrengthCertificate)>> {
        match fs.len() {
            0 => Ok(Vec::new()),
            1 => {
                let cert = strength_fp(&fs[0], k_max, config)?;
                Ok(vec![(fs.into_iter().next().unwrap(), cert)])
            }
            r => {
                let (cert, coeffs) = collective_strength(&fs, k_max, config)?;
                let mut combo = Polynomial::zero(fs[0].ring().clone());
                for (f, c) in fs.iter().zip(&coeffs) {
                    combo = &combo + &f.scaled(c);
                }
                let j = coeffs
                    .iter()
                    .rposition(|c| !c.is_zero())
                    .expect("nontrivial combination");
                let mut prefix = fs;
                let last = prefix.pop().expect("r >= 2");
                if j < r - 1 {
                    prefix[j] = last;
                }
                let mut out = rec(prefix, k_max, config)?;
                out.push((combo, cert));
                Ok(out)
            }
        }
    }
    rec(ideal.generators().to_vec(), k_max, config)
}
