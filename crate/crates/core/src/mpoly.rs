//! Sparse multivariate polynomials over Q, just enough for substituting
//! witness coordinates into a diagonal form and eliminating one squared
//! variable through a quadric relation.

use std::collections::BTreeMap;

use num::rational::BigRational;
use num::{One, Signed, Zero};

/// Terms keyed by exponent vectors of a fixed length. Zero coefficients are
/// never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct MPoly {
    nvars: usize,
    terms: BTreeMap<Vec<u8>, BigRational>,
}

impl MPoly {
    pub(crate) fn zero(nvars: usize) -> MPoly {
        MPoly { nvars, terms: BTreeMap::new() }
    }

    pub(crate) fn constant(nvars: usize, c: BigRational) -> MPoly {
        let mut p = MPoly::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    pub(crate) fn var(nvars: usize, i: usize) -> MPoly {
        assert!(i < nvars);
        let mut exps = vec![0u8; nvars];
        exps[i] = 1;
        let mut p = MPoly::zero(nvars);
        p.terms.insert(exps, BigRational::one());
        p
    }

    pub(crate) fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn insert(&mut self, exps: Vec<u8>, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(exps);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub(crate) fn add(&self, other: &MPoly) -> MPoly {
        assert_eq!(self.nvars, other.nvars);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.insert(e.clone(), c.clone());
        }
        out
    }

    pub(crate) fn scale(&self, k: &BigRational) -> MPoly {
        if k.is_zero() {
            return MPoly::zero(self.nvars);
        }
        MPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c * k)).collect(),
        }
    }

    pub(crate) fn mul(&self, other: &MPoly) -> MPoly {
        assert_eq!(self.nvars, other.nvars);
        let mut out = MPoly::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let exps: Vec<u8> = ea
                    .iter()
                    .zip(eb)
                    .map(|(x, y)| x.checked_add(*y).expect("exponent fits"))
                    .collect();
                out.insert(exps, ca * cb);
            }
        }
        out
    }

    /// Replaces every occurrence of `var`^2 by `replacement` until `var`
    /// appears at most linearly. The replacement must not involve `var`.
    pub(crate) fn substitute_square(&self, var: usize, replacement: &MPoly) -> MPoly {
        assert_eq!(self.nvars, replacement.nvars);
        debug_assert!(replacement.terms.keys().all(|e| e[var] == 0));
        let mut current = self.clone();
        loop {
            let mut next = MPoly::zero(self.nvars);
            let mut changed = false;
            for (e, c) in &current.terms {
                if e[var] >= 2 {
                    changed = true;
                    let mut reduced = e.clone();
                    reduced[var] -= 2;
                    let mut mono = MPoly::zero(self.nvars);
                    mono.terms.insert(reduced, c.clone());
                    next = next.add(&mono.mul(replacement));
                } else {
                    next.insert(e.clone(), c.clone());
                }
            }
            current = next;
            if !changed {
                return current;
            }
        }
    }

    /// Human-readable rendering with the given variable names.
    pub(crate) fn render(&self, names: &[String]) -> String {
        assert_eq!(names.len(), self.nvars);
        if self.terms.is_empty() {
            return "0".into();
        }
        // Show low-index variables first: sort colexicographically.
        let mut ordered: Vec<(&Vec<u8>, &BigRational)> = self.terms.iter().collect();
        ordered.sort_by_key(|(e, _)| {
            let mut rev = (*e).clone();
            rev.reverse();
            rev
        });
        let mut out = String::new();
        for (e, c) in ordered {
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &exp)| exp > 0)
                .map(|(i, &exp)| {
                    if exp == 1 {
                        names[i].clone()
                    } else {
                        format!("{}^{}", names[i], exp)
                    }
                })
                .collect();
            let mag = c.abs();
            let lead = if out.is_empty() {
                if c.is_negative() {
                    "-".to_string()
                } else {
                    String::new()
                }
            } else if c.is_negative() {
                " - ".to_string()
            } else {
                " + ".to_string()
            };
            out.push_str(&lead);
            if mono.is_empty() {
                out.push_str(&mag.to_string());
            } else {
                if !mag.is_one() {
                    out.push_str(&mag.to_string());
                    out.push('*');
                }
                out.push_str(&mono.join("*"));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::bigint::BigInt;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    fn names(n: usize) -> Vec<String> {
        (1..=n).map(|i| format!("y{i}")).collect()
    }

    #[test]
    fn arithmetic_and_rendering() {
        let x = MPoly::var(2, 0);
        let y = MPoly::var(2, 1);
        let p = x.mul(&x).scale(&q(-2)).add(&y.mul(&y).scale(&q(3))).add(&MPoly::constant(2, q(1)));
        assert_eq!(p.render(&names(2)), "1 - 2*y1^2 + 3*y2^2");
        let zero = p.add(&p.scale(&q(-1)));
        assert!(zero.is_zero());
        assert_eq!(zero.render(&names(2)), "0");
        let prod = x.add(&y).mul(&x.add(&y.scale(&q(-1))));
        assert_eq!(prod.render(&names(2)), "y1^2 - y2^2");
    }

    #[test]
    fn square_substitution_eliminates_the_variable() {
        // p = 1 - 2 y1^2 - 3 y2^2 with 3 y2^2 = 1 - 2 y1^2 collapses to 0.
        let y1 = MPoly::var(2, 0);
        let y2 = MPoly::var(2, 1);
        let p = MPoly::constant(2, q(1))
            .add(&y1.mul(&y1).scale(&q(-2)))
            .add(&y2.mul(&y2).scale(&q(-3)));
        let replacement = MPoly::constant(2, q(1))
            .add(&y1.mul(&y1).scale(&q(-2)))
            .scale(&BigRational::new(BigInt::from(1), BigInt::from(3)));
        assert!(p.substitute_square(1, &replacement).is_zero());
        // Quartic powers reduce in two rounds.
        let quartic = y2.mul(&y2).mul(&y2).mul(&y2);
        let reduced = quartic.substitute_square(1, &replacement);
        assert!(reduced.terms.keys().all(|e| e[1] == 0));
        // y2^3 keeps one linear factor.
        let cubic = y2.mul(&y2).mul(&y2);
        let reduced3 = cubic.substitute_square(1, &replacement);
        assert!(reduced3.terms.keys().all(|e| e[1] == 1));
    }
}
