//! Monomial orders for the Gröbner engine.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::Error;
use crate::poly::Monomial;

/// A multiplicative total well-ordering on monomials.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MonomialOrder {
    /// Graded reverse lexicographic (the default everywhere).
    GrevLex,
    /// Pure lexicographic.
    Lex,
    /// Total degree, ties broken lexicographically.
    GradedLex,
}

impl MonomialOrder {
    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::GrevLex => grevlex(a, b),
            MonomialOrder::Lex => lex(a, b),
            MonomialOrder::GradedLex => a.degree().cmp(&b.degree()).then_with(|| lex(a, b)),
        }
    }
}

/// Degree first; ties resolved so the monomial with the smaller exponent at
/// the rightmost differing variable is the larger one.
pub(crate) fn grevlex(a: &Monomial, b: &Monomial) -> Ordering {
    match a.degree().cmp(&b.degree()) {
        Ordering::Equal => {}
        ord => return ord,
    }
    for j in (0..a.num_vars()).rev() {
        let (ea, eb) = (a.exp(j), b.exp(j));
        if ea != eb {
            return if ea < eb {
                Ordering::Greater
            } else {
                Ordering::Less
            };
        }
    }
    Ordering::Equal
}

fn lex(a: &Monomial, b: &Monomial) -> Ordering {
    for j in 0..a.num_vars() {
        let (ea, eb) = (a.exp(j), b.exp(j));
        if ea != eb {
            return ea.cmp(&eb);
        }
    }
    Ordering::Equal
}

impl fmt::Display for MonomialOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            MonomialOrder::GrevLex => "grevlex",
            MonomialOrder::Lex => "lex",
            MonomialOrder::GradedLex => "grlex",
        };
        write!(f, "{s}")
    }
}

impl FromStr for MonomialOrder {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "grevlex" => Ok(MonomialOrder::GrevLex),
            "lex" => Ok(MonomialOrder::Lex),
            "grlex" => Ok(MonomialOrder::GradedLex),
            other => Err(Error::ParamOutOfRange(format!(
                "unknown monomial order `{other}` (expected grevlex|lex|grlex)"
            ))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Monomial;

    fn m(exps: &[u16]) -> Monomial {
        Monomial::from_exps(exps.to_vec())
    }

    #[test]
    fn grevlex_quadratic_order_in_three_vars() {
        // Classic sequence: x1^2 > x1x2 > x2^2 > x1x3 > x2x3 > x3^2.
        let expected = [
            m(&[2, 0, 0]),
            m(&[1, 1, 0]),
            m(&[0, 2, 0]),
            m(&[1, 0, 1]),
            m(&[0, 1, 1]),
            m(&[0, 0, 2]),
        ];
        for w in expected.windows(2) {
            assert_eq!(
                MonomialOrder::GrevLex.compare(&w[0], &w[1]),
                Ordering::Greater
            );
        }
    }

    #[test]
    fn lex_vs_grevlex_disagree_where_expected() {
        // x2^2 vs x1x3: grevlex prefers x2^2, lex prefers x1x3.
        let a = m(&[0, 2, 0]);
        let b = m(&[1, 0, 1]);
        assert_eq!(MonomialOrder::GrevLex.compare(&a, &b), Ordering::Greater);
        assert_eq!(MonomialOrder::Lex.compare(&a, &b), Ordering::Less);
        assert_eq!(MonomialOrder::GradedLex.compare(&a, &b), Ordering::Less);
    }

    #[test]
    fn orders_are_total_multiplicative_well_orderings() {
        use crate::rng::{next_below, seeded_rng};
        let mut rng = seeded_rng(5, 0);
        let rand_mono = |rng: &mut rand_chacha::ChaCha8Rng| {
            let exps: Vec<u16> = (0..4).map(|_| next_below(rng, 4) as u16).collect();
            Monomial::from_exps(exps)
        };
        for order in [
            MonomialOrder::GrevLex,
            MonomialOrder::Lex,
            MonomialOrder::GradedLex,
        ] {
            let one = Monomial::one(4);
            for _ in 0..500 {
                let a = rand_mono(&mut rng);
                let b = rand_mono(&mut rng);
                let c = rand_mono(&mut rng);
                // Antisymmetry.
                assert_eq!(order.compare(&a, &b), order.compare(&b, &a).reverse());
                // Multiplicative: a < b implies ac < bc.
                let ord = order.compare(&a, &b);
                assert_eq!(order.compare(&a.mul(&c), &b.mul(&c)), ord);
                // 1 is minimal.
                if a.degree() > 0 {
                    assert_eq!(order.compare(&one, &a), Ordering::Less);
                }
                // Transitivity spot check.
                if order.compare(&a, &b) == Ordering::Less
                    && order.compare(&b, &c) == Ordering::Less
                {
                    assert_eq!(order.compare(&a, &c), Ordering::Less);
                }
            }
        }
    }
}
