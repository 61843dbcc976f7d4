//! Dense univariate polynomials over Q: exact division, Sturm chains, and
//! real root isolation. Internal support for the number field module.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};

/// Coefficients little-endian, trailing zeros stripped; the zero polynomial
/// has no coefficients at all.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct QPoly {
    coeffs: Vec<BigRational>,
}

pub(crate) fn sign_of(q: &BigRational) -> i8 {
    if q.is_zero() {
        0
    } else if q.is_positive() {
        1
    } else {
        -1
    }
}

impl QPoly {
    pub(crate) fn new(mut coeffs: Vec<BigRational>) -> QPoly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        QPoly { coeffs }
    }

    pub(crate) fn zero() -> QPoly {
        QPoly { coeffs: Vec::new() }
    }

    #[cfg(test)]
    pub(crate) fn from_integers(cs: &[i64]) -> QPoly {
        QPoly::new(
            cs.iter()
                .map(|&c| BigRational::from_integer(BigInt::from(c)))
                .collect(),
        )
    }

    pub(crate) fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub(crate) fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub(crate) fn coeff(&self, i: usize) -> BigRational {
        self.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero)
    }

    pub(crate) fn leading(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    pub(crate) fn add(&self, other: &QPoly) -> QPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        QPoly::new((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub(crate) fn sub(&self, other: &QPoly) -> QPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        QPoly::new((0..n).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }

    pub(crate) fn neg(&self) -> QPoly {
        QPoly { coeffs: self.coeffs.iter().map(|c| -c.clone()).collect() }
    }

    pub(crate) fn scale(&self, k: &BigRational) -> QPoly {
        if k.is_zero() {
            return QPoly::zero();
        }
        QPoly { coeffs: self.coeffs.iter().map(|c| c * k).collect() }
    }

    pub(crate) fn mul(&self, other: &QPoly) -> QPoly {
        if self.is_zero() || other.is_zero() {
            return QPoly::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        QPoly::new(out)
    }

    /// Quotient and remainder; panics on a zero divisor.
    pub(crate) fn div_rem(&self, divisor: &QPoly) -> (QPoly, QPoly) {
        let d = divisor.degree().expect("division by the zero polynomial");
        let lead = divisor.leading().unwrap().clone();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigRational::zero(); self.coeffs.len().saturating_sub(d)];
        while rem.len() > d {
            let k = rem.len() - 1 - d;
            let factor = rem.last().unwrap() / &lead;
            if !factor.is_zero() {
                for (i, c) in divisor.coeffs.iter().enumerate() {
                    let v = &factor * c;
                    rem[k + i] -= v;
                }
                quot[k] = factor;
            }
            debug_assert!(rem.last().unwrap().is_zero());
            rem.pop();
        }
        (QPoly::new(quot), QPoly::new(rem))
    }

    pub(crate) fn derivative(&self) -> QPoly {
        if self.coeffs.len() <= 1 {
            return QPoly::zero();
        }
        QPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    pub(crate) fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub(crate) fn make_monic(&self) -> QPoly {
        match self.leading() {
            None => QPoly::zero(),
            Some(l) => self.scale(&(BigRational::one() / l)),
        }
    }

    fn gcd(&self, other: &QPoly) -> QPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.make_monic()
    }

    /// Sturm chain of the squarefree part.
    pub(crate) fn sturm_chain(&self) -> Vec<QPoly> {
        let deriv = self.derivative();
        if deriv.is_zero() {
            return vec![self.clone()];
        }
        let common = self.gcd(&deriv);
        let base = if common.degree() == Some(0) {
            self.clone()
        } else {
            self.div_rem(&common).0
        };
        let mut chain = vec![base.clone(), base.derivative()];
        loop {
            let r = chain[chain.len() - 2].div_rem(chain.last().unwrap()).1;
            if r.is_zero() {
                return chain;
            }
            chain.push(r.neg());
        }
    }

    /// Root magnitude bound: every real root lies strictly inside (-M, M).
    pub(crate) fn cauchy_bound(&self) -> BigRational {
        let lead = self.leading().expect("constant polynomials have no roots");
        let mut worst = BigRational::zero();
        for c in &self.coeffs[..self.coeffs.len() - 1] {
            let ratio = (c / lead).abs();
            if ratio > worst {
                worst = ratio;
            }
        }
        worst + BigRational::one() + BigRational::one()
    }
}

fn variations(signs: impl Iterator<Item = i8>) -> usize {
    let mut count = 0;
    let mut prev = 0i8;
    for s in signs {
        if s != 0 {
            if prev != 0 && s != prev {
                count += 1;
            }
            prev = s;
        }
    }
    count
}

pub(crate) fn variations_at(chain: &[QPoly], x: &BigRational) -> usize {
    variations(chain.iter().map(|p| sign_of(&p.eval(x))))
}

#[cfg(test)]
fn variations_at_infinity(chain: &[QPoly], positive: bool) -> usize {
    variations(chain.iter().map(|p| match p.degree() {
        None => 0,
        Some(d) => {
            let lead = sign_of(p.leading().unwrap());
            if positive || d % 2 == 0 {
                lead
            } else {
                -lead
            }
        }
    }))
}

/// Number of distinct real roots.
#[cfg(test)]
pub(crate) fn real_root_count(p: &QPoly) -> usize {
    let chain = p.sturm_chain();
    variations_at_infinity(&chain, false) - variations_at_infinity(&chain, true)
}

/// Distinct real roots in the half-open interval (lo, hi].
pub(crate) fn root_count_between(chain: &[QPoly], lo: &BigRational, hi: &BigRational) -> usize {
    variations_at(chain, lo) - variations_at(chain, hi)
}

/// An interval with a sign change: p(lo) and p(hi) are nonzero of opposite
/// sign and exactly one root lies between them.
#[derive(Debug, Clone)]
pub(crate) struct RootInterval {
    pub(crate) lo: BigRational,
    pub(crate) hi: BigRational,
}

impl RootInterval {
    pub(crate) fn midpoint(&self) -> BigRational {
        (&self.lo + &self.hi) / BigRational::from_integer(BigInt::from(2))
    }

    /// Halves the interval, keeping the side where p changes sign. Requires
    /// that p not vanish at the midpoint, which holds whenever p has no
    /// rational roots.
    pub(crate) fn bisect(&mut self, p: &QPoly) {
        let mid = self.midpoint();
        let s_mid = sign_of(&p.eval(&mid));
        assert!(s_mid != 0, "bisection landed on a rational root");
        if s_mid == sign_of(&p.eval(&self.lo)) {
            self.lo = mid;
        } else {
            self.hi = mid;
        }
    }

    #[cfg(test)]
    pub(crate) fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }
}

/// Isolating intervals for every real root, in increasing order. The
/// polynomial must have no rational roots (true for any irreducible
/// polynomial of degree at least 2), so that evaluation at rational points
/// never vanishes.
pub(crate) fn isolate_real_roots(p: &QPoly) -> Vec<RootInterval> {
    let chain = p.sturm_chain();
    let bound = p.cauchy_bound();
    let mut pending = vec![(-bound.clone(), bound)];
    let mut found = Vec::new();
    while let Some((lo, hi)) = pending.pop() {
        assert!(
            sign_of(&p.eval(&lo)) != 0 && sign_of(&p.eval(&hi)) != 0,
            "isolation requires a polynomial without rational roots"
        );
        match root_count_between(&chain, &lo, &hi) {
            0 => {}
            1 => found.push(RootInterval { lo, hi }),
            _ => {
                let mid = (&lo + &hi) / BigRational::from_integer(BigInt::from(2));
                pending.push((lo, mid.clone()));
                pending.push((mid, hi));
            }
        }
    }
    found.sort_by(|a, b| a.lo.cmp(&b.lo));
    found
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    #[test]
    fn division_identity() {
        let p = QPoly::from_integers(&[1, 0, -3, 7, 2]);
        let d = QPoly::from_integers(&[-1, 1, 1]);
        let (quot, rem) = p.div_rem(&d);
        assert_eq!(quot.mul(&d).add(&rem), p);
        assert!(rem.degree() < d.degree());
    }

    #[test]
    fn derivative_and_eval() {
        let p = QPoly::from_integers(&[-2, 0, 1]); // x^2 - 2
        assert_eq!(p.eval(&q(3)), q(7));
        assert_eq!(p.derivative(), QPoly::from_integers(&[0, 2]));
    }

    #[test]
    fn root_counts() {
        assert_eq!(real_root_count(&QPoly::from_integers(&[-2, 0, 1])), 2); // x^2-2
        assert_eq!(real_root_count(&QPoly::from_integers(&[1, 0, 1])), 0); // x^2+1
        assert_eq!(real_root_count(&QPoly::from_integers(&[-2, 0, 0, 1])), 1); // x^3-2
        // (x^2-2)(x^2-3)
        let p = QPoly::from_integers(&[-2, 0, 1]).mul(&QPoly::from_integers(&[-3, 0, 1]));
        assert_eq!(real_root_count(&p), 4);
        // x^4+x^2+1 has none
        assert_eq!(real_root_count(&QPoly::from_integers(&[1, 0, 1, 0, 1])), 0);
        // Repeated roots are counted once: (x^2-2)^2
        let sq = QPoly::from_integers(&[-2, 0, 1]).mul(&QPoly::from_integers(&[-2, 0, 1]));
        assert_eq!(real_root_count(&sq), 2);
    }

    #[test]
    fn isolation_brackets_each_root() {
        let p = QPoly::from_integers(&[-2, 0, 1]); // roots at +-sqrt(2)
        let roots = isolate_real_roots(&p);
        assert_eq!(roots.len(), 2);
        assert!(roots[0].hi <= roots[1].lo);
        for r in &roots {
            assert_eq!(
                sign_of(&p.eval(&r.lo)) * sign_of(&p.eval(&r.hi)),
                -1,
                "endpoints must straddle the root"
            );
        }
        // The positive root is sqrt(2): 1 < root < 2 after refinement.
        let mut iv = roots[1].clone();
        while iv.width() > BigRational::new(BigInt::from(1), BigInt::from(64)) {
            iv.bisect(&p);
        }
        assert!(iv.lo > q(1) && iv.hi < q(2));
    }

    #[test]
    fn isolation_of_cubic() {
        let p = QPoly::from_integers(&[-2, 0, 0, 1]); // x^3 - 2
        let roots = isolate_real_roots(&p);
        assert_eq!(roots.len(), 1);
        let mut iv = roots[0].clone();
        for _ in 0..20 {
            iv.bisect(&p);
        }
        // cbrt(2) = 1.2599...
        assert!(iv.lo > BigRational::new(BigInt::from(5), BigInt::from(4)));
        assert!(iv.hi < BigRational::new(BigInt::from(13), BigInt::from(10)));
    }

    proptest! {
        #[test]
        fn division_identity_holds(
            a in proptest::collection::vec(-9i64..=9, 1..=6),
            b in proptest::collection::vec(-9i64..=9, 1..=4),
        ) {
            let p = QPoly::new(a.iter().map(|&c| q(c)).collect());
            let d = QPoly::new(b.iter().map(|&c| q(c)).collect());
            prop_assume!(!d.is_zero());
            let (quot, rem) = p.div_rem(&d);
            prop_assert_eq!(quot.mul(&d).add(&rem), p);
            prop_assert!(rem.is_zero() || rem.degree() < d.degree());
        }

        #[test]
        fn sturm_agrees_with_factored_roots(mut roots in proptest::collection::vec(-8i64..=8, 1..=4)) {
            // Build prod (x - r_i) plus an irreducible quadratic, then shift
            // evaluation points off the integers so no eval hits a root.
            roots.sort();
            roots.dedup();
            let mut p = QPoly::from_integers(&[1, 0, 1]); // x^2 + 1, no real roots
            for &r in &roots {
                p = p.mul(&QPoly::from_integers(&[-r, 1]));
            }
            prop_assert_eq!(real_root_count(&p), roots.len());
            let chain = p.sturm_chain();
            let half = BigRational::new(BigInt::from(1), BigInt::from(2));
            let lo = q(-9) - &half;
            let hi = q(9) + &half;
            prop_assert_eq!(root_count_between(&chain, &lo, &hi), roots.len());
            let mid = half; // roots in (1/2, 9 1/2] are the positive ones
            let positive = roots.iter().filter(|&&r| r > 0).count();
            prop_assert_eq!(root_count_between(&chain, &mid, &hi), positive);
        }
    }
}
