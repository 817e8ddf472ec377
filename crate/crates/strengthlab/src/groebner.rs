//! Buchberger engine: reduced Gröbner bases, normal forms, Krull dimension
//! and minimal generator counts for homogeneous ideals.
//!
//! The working representation inside this module is a term vector sorted
//! ascending under the active order (leading term last, popped in O(1)).
//! Pair selection uses the normal strategy: minimal lcm degree first, ties
//! broken by pair index. Pairs with coprime leading terms are skipped.
//!
//! Every computation is bounded by a `Budget`; exhausting it is a reported
//! error, never a silent truncation.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::field::FieldElement;
use crate::linalg::Matrix;
use crate::order::MonomialOrder;
use crate::poly::{graded_monomials, Monomial, PolyRing, Polynomial};

/// Caps on basis size, processed pair count and element degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    pub max_pairs: usize,
    pub max_basis: usize,
    pub max_degree: u32,
}

impl Default for Budget {
    fn default() -> Budget {
        Budget {
            max_pairs: 200_000,
            max_basis: 5_000,
            max_degree: 64,
        }
    }
}

impl Budget {
    /// Scale the default caps by a single budget figure: `points` bounds the
    /// pair count directly, the basis cap is points/10 (at least 16).
    pub fn from_points(points: u64) -> Budget {
        Budget {
            max_pairs: points as usize,
            max_basis: (points / 10).max(16) as usize,
            max_degree: 64,
        }
    }
}

/// A reduced Gröbner basis: monic elements, no term of any element divisible
/// by the leading term of another, sorted ascending by leading term.
#[derive(Debug, Clone, PartialEq)]
pub struct GroebnerBasis {
    ring: PolyRing,
    order: MonomialOrder,
    elements: Vec<Polynomial>,
}

impl GroebnerBasis {
    pub fn ring(&self) -> &PolyRing {
        &self.ring
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn elements(&self) -> &[Polynomial] {
        &self.elements
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.elements
            .iter()
            .map(|g| g.leading_term(self.order).expect("nonzero").0.clone())
            .collect()
    }

    /// The basis of the unit ideal is {1}.
    pub fn is_unit_ideal(&self) -> bool {
        self.elements
            .iter()
            .any(|g| g.degree() == Some(0))
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.elements.is_empty()
    }
}

type Term = (Monomial, FieldElement);

/// Terms ascending under `order` (leading term last).
fn sorted_terms(f: &Polynomial, order: MonomialOrder) -> Vec<Term> {
    let mut terms: Vec<Term> = f.terms().to_vec();
    match order {
        MonomialOrder::GrevLex => terms.reverse(),
        _ => terms.sort_by(|a, b| order.compare(&a.0, &b.0)),
    }
    terms
}

fn terms_to_poly(ring: &PolyRing, mut terms: Vec<Term>) -> Polynomial {
    terms.sort_by(|a, b| b.0.cmp(&a.0));
    Polynomial::from_sorted_terms(ring.clone(), terms)
}

/// a - c * x^m * b, all term vectors ascending under `order`.
fn merge_sub(a: &[Term], b: &[Term], m: &Monomial, c: &FieldElement, order: MonomialOrder) -> Vec<Term> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        let bm = b[j].0.mul(m);
        match order.compare(&a[i].0, &bm) {
            Ordering::Less => {
                out.push(a[i].clone());
                i += 1;
            }
            Ordering::Greater => {
                out.push((bm, (&b[j].1 * c).negated()));
                j += 1;
            }
            Ordering::Equal => {
                let coeff = &a[i].1 - &(&b[j].1 * c);
                if !coeff.is_zero() {
                    out.push((bm, coeff));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    while j < b.len() {
        out.push((b[j].0.mul(m), (&b[j].1 * c).negated()));
        j += 1;
    }
    out
}

struct Reducer {
    lt: Monomial,
    terms: Vec<Term>, // ascending, monic
}

impl Reducer {
    fn from_poly(f: &Polynomial, order: MonomialOrder) -> Reducer {
        let monic = f.monic(order);
        let terms = sorted_terms(&monic, order);
        let lt = terms.last().expect("nonzero reducer").0.clone();
        Reducer { lt, terms }
    }
}

/// Full multivariate division: result has no term divisible by any reducer's
/// leading term. Reducers are scanned in slice order, first divisor wins.
fn reduce_terms(mut work: Vec<Term>, reducers: &[Reducer], order: MonomialOrder) -> Vec<Term> {
    let mut out_desc: Vec<Term> = Vec::new();
    'outer: while let Some((m, c)) = work.last().cloned() {
        for red in reducers {
            if red.lt.divides(&m) {
                let factor = m.try_div(&red.lt).expect("divides");
                work = merge_sub(&work, &red.terms, &factor, &c, order);
                continue 'outer;
            }
        }
        work.pop();
        out_desc.push((m, c));
    }
    out_desc.reverse();
    out_desc
}

/// Remainder of `f` on division by the elements of `basis` under `order`.
///
/// The difference `f - normal_form(f, ...)` lies in the ideal generated by
/// the basis, and no term of the result is divisible by a basis leading term.
pub fn normal_form(f: &Polynomial, basis: &[Polynomial], order: MonomialOrder) -> Result<Polynomial> {
    for g in basis {
        if f.ring() != g.ring() {
            return Err(Error::RingMismatch(
                "normal_form arguments live in different rings".into(),
            ));
        }
    }
    let reducers: Vec<Reducer> = basis
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| Reducer::from_poly(g, order))
        .collect();
    let work = sorted_terms(f, order);
    Ok(terms_to_poly(f.ring(), reduce_terms(work, &reducers, order)))
}

/// Buchberger's algorithm returning the reduced Gröbner basis.
///
/// Deterministic: normal pair-selection strategy (minimal lcm degree, then
/// pair index), first-divisor reduction, final inter-reduction and ascending
/// sort by leading term.
pub fn buchberger(
    ring: &PolyRing,
    gens: &[Polynomial],
    order: MonomialOrder,
    budget: &Budget,
) -> Result<GroebnerBasis> {
    for g in gens {
        if g.ring() != ring {
            return Err(Error::RingMismatch("generator outside the ideal's ring".into()));
        }
    }
    let mut basis: Vec<Reducer> = Vec::new();
    for g in gens {
        if g.is_zero() {
            continue;
        }
        basis.push(Reducer::from_poly(g, order));
    }

    // (lcm degree, i, j) with i < j.
    let mut pairs: BTreeSet<(u32, usize, usize)> = BTreeSet::new();
    for i in 0..basis.len() {
        for j in (i + 1)..basis.len() {
            pairs.insert((basis[i].lt.lcm(&basis[j].lt).degree(), i, j));
        }
    }

    let mut processed = 0usize;
    while let Some(&(deg, i, j)) = pairs.iter().next() {
        pairs.remove(&(deg, i, j));
        processed += 1;
        if processed > budget.max_pairs {
            return Err(Error::ResourceBudgetExceeded(format!(
                "pair count exceeded {}",
                budget.max_pairs
            )));
        }
        if deg > budget.max_degree {
            return Err(Error::ResourceBudgetExceeded(format!(
                "S-pair degree {deg} exceeded {}",
                budget.max_degree
            )));
        }
        if basis[i].lt.is_coprime_with(&basis[j].lt) {
            continue; // first Buchberger criterion
        }
        let lcm = basis[i].lt.lcm(&basis[j].lt);
        let ui = lcm.try_div(&basis[i].lt).expect("lcm divisible");
        let uj = lcm.try_div(&basis[j].lt).expect("lcm divisible");
        let one = ring.field().one();
        let shifted: Vec<Term> = basis[i]
            .terms
            .iter()
            .map(|(m, c)| (m.mul(&ui), c.clone()))
            .collect();
        let spoly = merge_sub(&shifted, &basis[j].terms, &uj, &one, order);
        let remainder = reduce_terms(spoly, &basis, order);
        if remainder.is_empty() {
            continue;
        }
        let lt = remainder.last().expect("nonzero").0.clone();
        if lt.degree() > budget.max_degree {
            return Err(Error::ResourceBudgetExceeded(format!(
                "basis element degree {} exceeded {}",
                lt.degree(),
                budget.max_degree
            )));
        }
        if basis.len() + 1 > budget.max_basis {
            return Err(Error::ResourceBudgetExceeded(format!(
                "basis size exceeded {}",
                budget.max_basis
            )));
        }
        let lc = remainder.last().expect("nonzero").1.clone();
        let inv = lc.inverse().expect("nonzero leading coefficient");
        let monic: Vec<Term> = remainder
            .into_iter()
            .map(|(m, c)| (m, &c * &inv))
            .collect();
        let t = basis.len();
        basis.push(Reducer { lt, terms: monic });
        for k in 0..t {
            pairs.insert((basis[k].lt.lcm(&basis[t].lt).degree(), k, t));
        }
    }

    // Minimalize: drop elements whose leading term is divisible by another's.
    basis.sort_by(|a, b| order.compare(&a.lt, &b.lt));
    let mut kept: Vec<Reducer> = Vec::new();
    for e in basis {
        if !kept.iter().any(|k| k.lt.divides(&e.lt)) {
            kept.push(e);
        }
    }
    // Tail-reduce each element against the others.
    let mut elements = Vec::with_capacity(kept.len());
    for idx in 0..kept.len() {
        let others: Vec<Reducer> = kept
            .iter()
            .enumerate()
            .filter(|(k, _)| *k != idx)
            .map(|(_, r)| Reducer {
                lt: r.lt.clone(),
                terms: r.terms.clone(),
            })
            .collect();
        let reduced = reduce_terms(kept[idx].terms.clone(), &others, order);
        debug_assert!(!reduced.is_empty(), "reduced basis element vanished");
        elements.push(terms_to_poly(ring, reduced));
    }
    elements.sort_by(|a, b| {
        order.compare(
            a.leading_term(order).expect("nonzero").0,
            b.leading_term(order).expect("nonzero").0,
        )
    });
    Ok(GroebnerBasis {
        ring: ring.clone(),
        order,
        elements,
    })
}

/// Remainder of `f` modulo a computed basis.
pub fn normal_form_gb(f: &Polynomial, gb: &GroebnerBasis) -> Result<Polynomial> {
    normal_form(f, &gb.elements, gb.order)
}

/// Krull dimension of R/I from the leading-term ideal: the largest subset S
/// of the variables such that no leading monomial is supported inside S.
pub fn dimension(gb: &GroebnerBasis) -> Result<usize> {
    if gb.is_unit_ideal() {
        return Err(Error::UnitIdeal(
            "dimension of the unit ideal is undefined".into(),
        ));
    }
    let n = gb.ring.num_vars();
    if n > 20 {
        return Err(Error::ResourceBudgetExceeded(format!(
            "dimension search enumerates 2^n variable subsets; n={n} > 20"
        )));
    }
    let supports: Vec<u64> = gb
        .leading_monomials()
        .iter()
        .map(|m| m.support_mask())
        .collect();
    // S is independent iff no leading monomial is supported inside S,
    // i.e. every support has a variable outside S.
    let mut best = 0usize;
    for mask in 0u64..(1u64 << n) {
        let size = mask.count_ones() as usize;
        if size <= best {
            continue;
        }
        if supports.iter().all(|s| s & !mask != 0) {
            best = size;
        }
    }
    Ok(best)
}

/// Codimension (height) of the ideal: n - dim.
pub fn codimension(gb: &GroebnerBasis) -> Result<usize> {
    Ok(gb.ring.num_vars() - dimension(gb)?)
}

/// Minimal generator data of a homogeneous ideal: mu (count), nu (degree sum)
/// and the sorted multiset of minimal generator degrees.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinimalGenerators {
    pub mu: usize,
    pub nu: u64,
    pub degrees: Vec<u32>,
}

/// Graded Nakayama via exact linear algebra: in each degree d,
/// mu_d = dim I_d - dim (R_1 * I_{d-1}), with I_d spanned by the products
/// (monomial) * (generator) of degree d.
pub fn minimal_generators(ring: &PolyRing, gens: &[Polynomial]) -> Result<MinimalGenerators> {
    let gens: Vec<&Polynomial> = gens.iter().filter(|g| !g.is_zero()).collect();
    if gens.iter().any(|g| g.degree() == Some(0)) {
        return Err(Error::UnitIdeal(
            "minimal generators of the unit ideal are undefined".into(),
        ));
    }
    let mut degrees_present: Vec<u32> = gens.iter().filter_map(|g| g.degree()).collect();
    degrees_present.sort_unstable();
    degrees_present.dedup();

    let mut mu = 0usize;
    let mut nu = 0u64;
    let mut degrees = Vec::new();
    for &d in &degrees_present {
        let basis = graded_monomials(ring.num_vars(), d);
        let index: BTreeMap<&Monomial, usize> =
            basis.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let mut rows_full: Vec<Vec<FieldElement>> = Vec::new();
        let mut rows_sub: Vec<Vec<FieldElement>> = Vec::new();
        for g in &gens {
            let e = g.degree().expect("nonzero generator");
            if e > d {
                continue;
            }
            for m in graded_monomials(ring.num_vars(), d - e) {
                let prod = g.mul_term(&m, &ring.field().one());
                let mut row = vec![ring.field().zero(); basis.len()];
                for (t, c) in prod.terms() {
                    row[*index.get(t).expect("degree-d monomial")] = c.clone();
                }
                if e < d {
                    rows_sub.push(row.clone());
                }
                rows_full.push(row);
            }
        }
        let rank_full = Matrix::from_rows(ring.field(), rows_full).rank();
        let rank_sub = if rows_sub.is_empty() {
            0
        } else {
            Matrix::from_rows(ring.field(), rows_sub).rank()
        };
        let mu_d = rank_full - rank_sub;
        mu += mu_d;
        nu += mu_d as u64 * d as u64;
        degrees.extend(std::iter::repeat(d).take(mu_d));
    }
    Ok(MinimalGenerators { mu, nu, degrees })
}

/// The S-polynomial of two nonzero polynomials (test and verification hook).
pub fn s_polynomial(f: &Polynomial, g: &Polynomial, order: MonomialOrder) -> Polynomial {
    let f = f.monic(order);
    let g = g.monic(order);
    let (ltf, _) = f.leading_term(order).expect("nonzero");
    let (ltg, _) = g.leading_term(order).expect("nonzero");
    let lcm = ltf.lcm(ltg);
    let uf = lcm.try_div(ltf).expect("divisible");
    let ug = lcm.try_div(ltg).expect("divisible");
    let one = f.ring().field().one();
    &f.mul_term(&uf, &one) - &g.mul_term(&ug, &one)
}

/// Buchberger's criterion, checked post hoc: every S-polynomial of basis
/// pairs reduces to zero against the basis.
pub fn satisfies_buchberger_criterion(gb: &GroebnerBasis) -> bool {
    let els = gb.elements();
    for i in 0..els.len() {
        for j in (i + 1)..els.len() {
            let s = s_polynomial(&els[i], &els[j], gb.order);
            let r = normal_form(&s, els, gb.order).expect("same ring");
            if !r.is_zero() {
                return false;
            }
        }
    }
    true
}
