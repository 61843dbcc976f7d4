//! Diagonal quadratic forms over Q: classification by invariants, isotropy
//! with exact witnesses, Witt decomposition, the fundamental ideal
//! filtration, and the graded map from symbol sums to scaled Pfister forms.

use std::collections::BTreeMap;
use std::fmt;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::milnor::{KElement, Symbol};
use crate::qsearch;
use crate::squareclass::{hilbert_symbol, relevant_places, Place, SquareClass};

/// A nondegenerate diagonal form; entries are square classes, so a form
/// stands for its equivalence class under change of basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DiagonalForm {
    entries: Vec<SquareClass>,
}

/// Classifying data over Q: dimension, signed discriminant, Hasse symbols
/// at the relevant places (+1 everywhere else), and the real signature.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WittInvariants {
    pub dim: usize,
    pub signed_disc: SquareClass,
    pub hasse: BTreeMap<Place, i8>,
    pub signature: i64,
}

impl WittInvariants {
    /// Hasse symbol at any place; places outside the stored map carry +1.
    pub fn hasse_at(&self, v: Place) -> i8 {
        self.hasse.get(&v).copied().unwrap_or(1)
    }
}

/// Position of a Witt class in the powers of the even-dimensional ideal.
/// `Hyperbolic` marks the zero class, which lies in every power.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IDegree {
    Value(u32),
    Hyperbolic,
}

impl fmt::Display for IDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IDegree::Value(n) => write!(f, "{n}"),
            IDegree::Hyperbolic => write!(f, "hyperbolic"),
        }
    }
}

impl DiagonalForm {
    pub fn new(entries: Vec<SquareClass>) -> DiagonalForm {
        DiagonalForm { entries }
    }

    pub fn empty() -> DiagonalForm {
        DiagonalForm { entries: Vec::new() }
    }

    pub fn from_rationals(coeffs: &[BigRational]) -> Result<DiagonalForm> {
        let entries = coeffs
            .iter()
            .map(SquareClass::from_rational)
            .collect::<Result<Vec<_>>>()?;
        Ok(DiagonalForm { entries })
    }

    pub fn from_i64s(coeffs: &[i64]) -> Result<DiagonalForm> {
        let entries = coeffs
            .iter()
            .map(|&c| SquareClass::from_i64(c))
            .collect::<Result<Vec<_>>>()?;
        Ok(DiagonalForm { entries })
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[SquareClass] {
        &self.entries
    }

    pub fn orth_sum(&self, other: &DiagonalForm) -> DiagonalForm {
        let mut entries = self.entries.clone();
        entries.extend(other.entries.iter().cloned());
        DiagonalForm { entries }
    }

    pub fn scale(&self, c: &SquareClass) -> DiagonalForm {
        DiagonalForm {
            entries: self.entries.iter().map(|e| e.product(c)).collect(),
        }
    }

    /// Kronecker product; the factor `self` varies slowest.
    pub fn tensor(&self, other: &DiagonalForm) -> DiagonalForm {
        let mut entries = Vec::with_capacity(self.dim() * other.dim());
        for a in &self.entries {
            for b in &other.entries {
                entries.push(a.product(b));
            }
        }
        DiagonalForm { entries }
    }

    /// The 2^n-dimensional form obtained by tensoring the binary forms
    /// <1,-a_i>. Entry k multiplies -a_i over the set bits of k, with a_1 on
    /// the lowest bit, so pfister of (2,3) is <1,-2,-3,6>.
    pub fn pfister(classes: &[SquareClass]) -> DiagonalForm {
        let n = classes.len();
        assert!(n < usize::BITS as usize, "pfister form would overflow");
        let mut entries = Vec::with_capacity(1usize << n);
        for k in 0..(1usize << n) {
            let mut c = SquareClass::one();
            for (i, a) in classes.iter().enumerate() {
                if k >> i & 1 == 1 {
                    c = c.product(&a.negate());
                }
            }
            entries.push(c);
        }
        DiagonalForm { entries }
    }

    pub fn pfister_of(sym: &Symbol) -> DiagonalForm {
        DiagonalForm::pfister(sym.entries())
    }

    /// Orthogonal sum of k planes <1,-1>.
    pub fn hyperbolic(k: usize) -> DiagonalForm {
        let mut entries = Vec::with_capacity(2 * k);
        for _ in 0..k {
            entries.push(SquareClass::one());
            entries.push(SquareClass::minus_one());
        }
        DiagonalForm { entries }
    }

    /// Exact value at a rational point.
    pub fn evaluate(&self, point: &[BigRational]) -> Result<BigRational> {
        if point.len() != self.dim() {
            return Err(Error::CoordinateLength { got: point.len(), want: self.dim() });
        }
        let mut acc = BigRational::zero();
        for (c, x) in self.entries.iter().zip(point) {
            acc += BigRational::from_integer(c.value()) * x * x;
        }
        Ok(acc)
    }

    pub fn invariants(&self) -> WittInvariants {
        let m = self.dim();
        let mut disc = SquareClass::one();
        for c in &self.entries {
            disc = disc.product(c);
        }
        if m * (m.saturating_sub(1)) / 2 % 2 == 1 {
            disc = disc.negate();
        }
        let mut hasse = BTreeMap::new();
        if m > 0 {
            for v in relevant_places(&self.entries).expect("nonempty") {
                let mut s = 1i8;
                for i in 0..m {
                    for j in i + 1..m {
                        s *= hilbert_symbol(&self.entries[i], &self.entries[j], v);
                    }
                }
                if s != 1 {
                    hasse.insert(v, s);
                }
            }
        }
        let signature = self
            .entries
            .iter()
            .map(|c| if c.is_negative() { -1i64 } else { 1 })
            .sum();
        WittInvariants { dim: m, signed_disc: disc, hasse, signature }
    }

    /// Equivalence over Q, decided entirely by invariants.
    pub fn equivalent(&self, other: &DiagonalForm) -> bool {
        let a = self.invariants();
        let b = other.invariants();
        if a.dim != b.dim || a.signature != b.signature || a.signed_disc != b.signed_disc {
            return false;
        }
        let places: std::collections::BTreeSet<Place> =
            a.hasse.keys().chain(b.hasse.keys()).copied().collect();
        places.iter().all(|&v| a.hasse_at(v) == b.hasse_at(v))
    }

    /// Does the form have a nontrivial rational zero? Decided place by
    /// place: a rank 3 form is locally isotropic when its Hasse symbol
    /// agrees with (-1,-d)_v, rank 4 when the discriminant is a local
    /// non-square or the Hasse symbol agrees with (-1,-1)_v, and rank 5 and
    /// up always is at finite places, leaving only definiteness.
    pub fn is_isotropic(&self) -> bool {
        let m = self.dim();
        if m < 2 {
            return false;
        }
        // A pair <c, -c> is a zero on the spot.
        for i in 0..m {
            for j in i + 1..m {
                if self.entries[j] == self.entries[i].negate() {
                    return true;
                }
            }
        }
        if m == 2 {
            // Covered by the pair scan: isotropic iff c2 = -c1 as classes.
            return false;
        }
        let inv = self.invariants();
        if inv.signature.unsigned_abs() as usize == m {
            return false; // definite
        }
        if m >= 5 {
            return true;
        }
        let mut disc = SquareClass::one();
        for c in &self.entries {
            disc = disc.product(c);
        }
        let places = relevant_places(&self.entries).expect("nonempty");
        for v in places {
            if v == Place::Real {
                continue; // indefiniteness already checked
            }
            let ok = if m == 3 {
                hilbert_symbol(&SquareClass::minus_one(), &disc.negate(), v) == inv.hasse_at(v)
            } else {
                !disc.is_square_at(v)
                    || hilbert_symbol(
                        &SquareClass::minus_one(),
                        &SquareClass::minus_one(),
                        v,
                    ) == inv.hasse_at(v)
            };
            if !ok {
                return false;
            }
        }
        true
    }

    /// A nonzero integer zero of the form, or `None` for anisotropic forms.
    /// The decision runs first; the search only starts on isotropic input,
    /// so it always terminates.
    pub fn isotropy_witness(&self) -> Option<Vec<BigInt>> {
        if !self.is_isotropic() {
            return None;
        }
        let witness = qsearch::isotropy_witness_search(&self.entries);
        debug_assert!(self.check_zero(&witness));
        Some(witness)
    }

    fn check_zero(&self, x: &[BigInt]) -> bool {
        let mut acc = BigInt::zero();
        for (c, xi) in self.entries.iter().zip(x) {
            acc += c.value() * xi * xi;
        }
        acc.is_zero() && x.iter().any(|xi| !xi.is_zero())
    }

    /// Witt index and anisotropic kernel. The kernel entries come from
    /// chain-merging zeroes, so they are equivalent to, not subsets of, the
    /// input entries.
    pub fn witt_decompose(&self) -> (usize, DiagonalForm) {
        let mut entries = self.entries.clone();
        let mut index = 0usize;
        loop {
            let current = DiagonalForm::new(entries.clone());
            if !current.is_isotropic() {
                return (index, current);
            }
            let witness = qsearch::isotropy_witness_search(&entries);
            let (stripped, gained) = split_hyperbolic(entries, witness);
            entries = stripped;
            index += gained;
        }
    }

    /// Zero Witt class test, from invariants alone.
    pub fn is_hyperbolic(&self) -> bool {
        self.dim() % 2 == 0 && self.equivalent(&DiagonalForm::hyperbolic(self.dim() / 2))
    }

    /// Does the form take the value b (up to squares) on a nonzero vector?
    pub fn represents(&self, b: &SquareClass) -> bool {
        let probe = self.orth_sum(&DiagonalForm::new(vec![b.negate()]));
        probe.is_isotropic()
    }

    /// Exact rational vector where the form takes the value `b`, or `None`.
    pub fn representation(&self, b: &BigRational) -> Option<Vec<BigRational>> {
        if b.is_zero() {
            return None;
        }
        let b_class = SquareClass::from_rational(b).expect("nonzero");
        let probe = self.orth_sum(&DiagonalForm::new(vec![b_class.negate()]));
        let witness = probe.isotropy_witness()?;
        let (head, tail) = witness.split_at(self.dim());
        let t = &tail[0];
        if !t.is_zero() {
            // head/t hits the class representative; rescale to hit b itself.
            let hit = BigRational::from_integer(b_class.value());
            let scale = exact_sqrt_rational(&(b / hit)).expect("same square class");
            return Some(
                head.iter()
                    .map(|x| BigRational::from_integer(x.clone()) * &scale
                        / BigRational::from_integer(t.clone()))
                    .collect(),
            );
        }
        // The form itself is isotropic, hence takes every value: run along
        // the zero y through a basis vector. With f(y) = 0 and y_j nonzero,
        // v = alpha y + e_j gives f(v) = 2 alpha c_j y_j + c_j, solved for
        // f(v) = b by alpha = (b - c_j) / (2 c_j y_j).
        let j = head.iter().position(|x| !x.is_zero()).expect("nonzero zero vector");
        let c_j = BigRational::from_integer(self.entries[j].value());
        let y_j = BigRational::from_integer(head[j].clone());
        let two = BigRational::from_integer(BigInt::from(2));
        let alpha = (b - &c_j) / (two * &c_j * y_j);
        let mut v: Vec<BigRational> = head
            .iter()
            .map(|x| BigRational::from_integer(x.clone()) * &alpha)
            .collect();
        v[j] += BigRational::one();
        debug_assert_eq!(self.evaluate(&v).unwrap(), *b);
        Some(v)
    }

    /// Least n with the Witt class outside I^{n+1}, or `Hyperbolic` for the
    /// zero class. Steps: odd dimension stops at 0, a nontrivial signed
    /// discriminant at 1, a Hasse symbol differing from the hyperbolic
    /// reference at 2; past that the 2-adic valuation of the signature
    /// decides, and is at least 3.
    pub fn i_degree(&self) -> IDegree {
        if self.is_hyperbolic() {
            return IDegree::Hyperbolic;
        }
        if self.dim() % 2 == 1 {
            return IDegree::Value(0);
        }
        let inv = self.invariants();
        if !inv.signed_disc.is_one() {
            return IDegree::Value(1);
        }
        let reference = DiagonalForm::hyperbolic(self.dim() / 2).invariants();
        let places: std::collections::BTreeSet<Place> = inv
            .hasse
            .keys()
            .chain(reference.hasse.keys())
            .copied()
            .collect();
        if places.iter().any(|&v| inv.hasse_at(v) != reference.hasse_at(v)) {
            return IDegree::Value(2);
        }
        // Nonzero class with all lower invariants trivial: the signature is
        // nonzero and divisible by 8.
        let sigma = inv.signature.unsigned_abs();
        assert!(sigma > 0 && sigma % 8 == 0);
        IDegree::Value(sigma.trailing_zeros())
    }

    /// Membership in the n-th power of the even-dimensional ideal.
    pub fn in_i_power(&self, n: u32) -> bool {
        match self.i_degree() {
            IDegree::Hyperbolic => true,
            IDegree::Value(d) => d >= n,
        }
    }
}

impl fmt::Display for DiagonalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for (i, c) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ">")
    }
}

/// Square root of a rational that is an exact square.
pub(crate) fn exact_sqrt_rational(q: &BigRational) -> Option<BigRational> {
    if q.is_negative() {
        return None;
    }
    let n = q.numer().sqrt();
    let d = q.denom().sqrt();
    let candidate = BigRational::new(n, d);
    if &(&candidate * &candidate) == q {
        Some(candidate)
    } else {
        None
    }
}

/// Strips hyperbolic planes guided by a zero of the form. Returns the
/// remaining entries and the number of planes split off (at least one).
///
/// The zero is chain-merged: two supported slots <c_i, c_j> either cancel
/// outright (c_i u_i^2 + c_j u_j^2 = 0 makes them a plane) or are replaced
/// by the equivalent <s, s c_i c_j> with s the value just computed, which
/// the merged zero supports in one slot fewer.
fn split_hyperbolic(
    entries: Vec<SquareClass>,
    witness: Vec<BigInt>,
) -> (Vec<SquareClass>, usize) {
    let mut slots: Vec<(SquareClass, BigInt)> =
        entries.into_iter().zip(witness).collect();
    let mut planes = 0usize;
    loop {
        let support: Vec<usize> = slots
            .iter()
            .enumerate()
            .filter(|(_, (_, x))| !x.is_zero())
            .map(|(i, _)| i)
            .collect();
        match support.len() {
            0 => break,
            1 => unreachable!("a single diagonal term has no nontrivial zero"),
            2 => {
                let (i, j) = (support[0], support[1]);
                slots.remove(j);
                slots.remove(i);
                planes += 1;
                break;
            }
            _ => {
                let (i, j) = (support[0], support[1]);
                let (ci, ui) = slots[i].clone();
                let (cj, uj) = slots[j].clone();
                let s = ci.value() * &ui * &ui + cj.value() * &uj * &uj;
                if s.is_zero() {
                    // The two slots already form a plane; the rest of the
                    // zero still sums to zero on its own.
                    slots.remove(j);
                    slots.remove(i);
                    planes += 1;
                } else {
                    let s_class = SquareClass::from_integer(&s).expect("nonzero");
                    let m = (&s / s_class.value()).sqrt();
                    debug_assert_eq!(&m * &m * s_class.value(), s);
                    let paired = s_class.product(&ci).product(&cj);
                    slots[i] = (s_class, m);
                    slots[j] = (paired, BigInt::zero());
                }
            }
        }
    }
    assert!(planes > 0);
    (slots.into_iter().map(|(c, _)| c).collect(), planes)
}

/// A class in the graded ring attached to the ideal filtration: a form
/// carrying a degree, zero when the form lands one step deeper than its
/// degree demands.
#[derive(Debug, Clone)]
pub struct GrWittClass {
    pub form: DiagonalForm,
    pub degree: usize,
}

impl GrWittClass {
    pub fn is_zero(&self) -> bool {
        self.form.in_i_power(self.degree as u32 + 1)
    }
}

/// Sends a sum of symbols to the sum of their Pfister forms, graded by the
/// symbol degree.
pub fn phi(x: &KElement) -> GrWittClass {
    let mut form = DiagonalForm::empty();
    for t in x.terms() {
        form = form.orth_sum(&DiagonalForm::pfister_of(t));
    }
    GrWittClass { form, degree: x.degree() }
}

/// Parses `<c1,...,cn>` (angle brackets, ASCII or typographic) as a
/// diagonal form, and the doubled variant `<<a1,...,an>>` as a Pfister
/// form. Entries are nonzero rationals.
pub fn parse_form(input: &str) -> Result<DiagonalForm> {
    let s = input.trim();
    let normalized = s
        .replace('\u{27e8}', "<")
        .replace('\u{27e9}', ">")
        .replace('\u{2329}', "<")
        .replace('\u{232a}', ">");
    let (body, pfister) = if let Some(rest) = normalized.strip_prefix("<<") {
        match rest.strip_suffix(">>") {
            Some(b) => (b.to_string(), true),
            None => {
                return Err(Error::Parse { pos: normalized.len(), msg: "expected '>>'".into() })
            }
        }
    } else if let Some(rest) = normalized.strip_prefix('<') {
        match rest.strip_suffix('>') {
            Some(b) => (b.to_string(), false),
            None => {
                return Err(Error::Parse { pos: normalized.len(), msg: "expected '>'".into() })
            }
        }
    } else {
        return Err(Error::Parse { pos: 0, msg: "expected '<'".into() });
    };
    let body = body.trim();
    let mut coeffs: Vec<BigRational> = Vec::new();
    if !body.is_empty() {
        for (k, piece) in body.split(',').enumerate() {
            let text = piece.trim();
            let q = parse_rational(text).map_err(|msg| Error::Parse { pos: k, msg })?;
            if q.is_zero() {
                return Err(Error::Parse { pos: k, msg: "zero coefficient".into() });
            }
            coeffs.push(q);
        }
    }
    if pfister {
        if coeffs.is_empty() {
            return Err(Error::Parse { pos: 0, msg: "empty pfister form".into() });
        }
        let classes = coeffs
            .iter()
            .map(SquareClass::from_rational)
            .collect::<Result<Vec<_>>>()?;
        Ok(DiagonalForm::pfister(&classes))
    } else {
        DiagonalForm::from_rationals(&coeffs)
    }
}

fn parse_rational(text: &str) -> std::result::Result<BigRational, String> {
    let parse_int = |t: &str| {
        t.trim()
            .parse::<BigInt>()
            .map_err(|_| format!("bad integer '{t}'"))
    };
    match text.split_once('/') {
        None => Ok(BigRational::from_integer(parse_int(text)?)),
        Some((n, d)) => {
            let den = parse_int(d)?;
            if den.is_zero() {
                return Err("zero denominator".into());
            }
            Ok(BigRational::new(parse_int(n)?, den))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn class(n: i64) -> SquareClass {
        SquareClass::from_i64(n).unwrap()
    }

    fn form(cs: &[i64]) -> DiagonalForm {
        DiagonalForm::from_i64s(cs).unwrap()
    }

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    #[test]
    fn pfister_layout() {
        let f = DiagonalForm::pfister(&[class(2), class(3)]);
        assert_eq!(f, form(&[1, -2, -3, 6]));
        assert_eq!(DiagonalForm::pfister(&[]), form(&[1]));
        let g = DiagonalForm::pfister(&[class(-1), class(-1)]);
        assert_eq!(g, form(&[1, 1, 1, 1]));
    }

    #[test]
    fn tensor_order_and_scale() {
        let f = form(&[1, -2]).tensor(&form(&[3, 5]));
        assert_eq!(f, form(&[3, 5, -6, -10]));
        assert_eq!(form(&[2, 3]).scale(&class(-1)), form(&[-2, -3]));
    }

    #[test]
    fn evaluation_is_exact() {
        let f = form(&[1, -2, -3]);
        let v = f.evaluate(&[q(1), q(1), q(1)]).unwrap();
        assert_eq!(v, q(-4));
        assert!(matches!(
            f.evaluate(&[q(1)]),
            Err(Error::CoordinateLength { got: 1, want: 3 })
        ));
    }

    #[test]
    fn invariant_census() {
        let inv = form(&[5, 5, 5, 5]).invariants();
        assert_eq!(inv.dim, 4);
        assert!(inv.signed_disc.is_one());
        assert_eq!(inv.signature, 4);
        assert!(inv.hasse.is_empty(), "all pair symbols (5,5)_v are trivial");
        let hyp = DiagonalForm::hyperbolic(2).invariants();
        assert_eq!(hyp.signature, 0);
        assert_eq!(hyp.hasse_at(Place::Real), -1);
        assert_eq!(hyp.hasse_at(Place::Prime2), -1);
        assert_eq!(hyp.hasse_at(Place::odd(3).unwrap()), 1);
    }

    #[test]
    fn equivalence_by_invariants() {
        // Both definite, discriminant trivial, all Hasse symbols +1.
        assert!(form(&[5, 5, 5, 5]).equivalent(&form(&[1, 1, 1, 1])));
        assert!(!form(&[5, 5, 5, 5]).equivalent(&form(&[1, 1, 1, -1])));
        assert!(!form(&[1, -1]).equivalent(&form(&[1, 1])));
        assert!(form(&[1, -1]).equivalent(&form(&[2, -2])));
        assert!(form(&[]).equivalent(&DiagonalForm::empty()));
    }

    #[test]
    fn isotropy_decisions() {
        assert!(!form(&[1]).is_isotropic());
        assert!(!DiagonalForm::empty().is_isotropic());
        assert!(form(&[1, -1]).is_isotropic());
        assert!(form(&[2, -2]).is_isotropic());
        assert!(!form(&[1, -2]).is_isotropic());
        assert!(!form(&[1, 1, 1]).is_isotropic()); // definite
        assert!(form(&[1, 1, -2]).is_isotropic()); // 1 + 1 = 2
        assert!(!form(&[1, 1, -7]).is_isotropic()); // 7 not a sum of two squares
        assert!(form(&[1, 1, 1, -6]).is_isotropic()); // 6 = 4 + 1 + 1
        // 7 = 7 mod 8 is not a sum of three squares either, and the rank 4
        // local test at 2 sees it: the discriminant -7 is a 2-adic square
        // but the Hasse symbol is +1 where (-1,-1)_2 = -1.
        assert!(!form(&[1, 1, 1, -7]).is_isotropic());
        assert!(form(&[1, 1, 1, 1, -7]).is_isotropic()); // four squares always do
        // <1,1,-3>: x^2+y^2 = 3z^2 has no solution mod 3 beyond the trivial.
        assert!(!form(&[1, 1, -3]).is_isotropic());
    }

    #[test]
    fn witnesses_are_exact_zeros() {
        for cs in [
            vec![1i64, -1],
            vec![1, 1, -2],
            vec![1, 2, -3],
            vec![1, -2, -7],
            vec![2, 3, -5],
            vec![1, 1, 1, -6],
            vec![1, 1, -2, -3],
            vec![1, 2, 3, -6, 11],
            vec![1, 1, 1, 1, 1, -7],
        ] {
            let f = form(&cs);
            let w = f.isotropy_witness().unwrap_or_else(|| panic!("{f} should be isotropic"));
            let point: Vec<BigRational> =
                w.iter().map(|x| BigRational::from_integer(x.clone())).collect();
            assert_eq!(f.evaluate(&point).unwrap(), BigRational::zero(), "{f}");
            assert!(w.iter().any(|x| !x.is_zero()));
        }
        assert_eq!(form(&[1, 1, -7]).isotropy_witness(), None);
    }

    #[test]
    fn witt_decomposition_examples() {
        let (w, kernel) = form(&[1, 1, -2]).witt_decompose();
        assert_eq!(w, 1);
        assert_eq!(kernel.dim(), 1);
        assert!(kernel.equivalent(&form(&[2])), "kernel was {kernel}");

        let (w2, kernel2) = form(&[1, -1, 1, -1]).witt_decompose();
        assert_eq!(w2, 2);
        assert_eq!(kernel2.dim(), 0);

        let (w3, kernel3) = form(&[1, 1, 1]).witt_decompose();
        assert_eq!(w3, 0);
        assert_eq!(kernel3, form(&[1, 1, 1]));

        // <1,1,-2,-2> is two planes: 1+1-2 = 0 handles one, the rest follows.
        let (w4, kernel4) = form(&[1, 1, -2, -2]).witt_decompose();
        assert_eq!(w4, 2);
        assert_eq!(kernel4.dim(), 0);
    }

    #[test]
    fn witt_kernel_is_equivalent_to_input() {
        for cs in [vec![1i64, 1, -2], vec![1, 2, -3, 7], vec![2, -3, 5, -7, 11]] {
            let f = form(&cs);
            let (w, kernel) = f.witt_decompose();
            let rebuilt = DiagonalForm::hyperbolic(w).orth_sum(&kernel);
            assert!(f.equivalent(&rebuilt), "{f} vs {rebuilt}");
            assert!(!kernel.is_isotropic());
        }
    }

    #[test]
    fn hyperbolicity() {
        assert!(DiagonalForm::hyperbolic(3).is_hyperbolic());
        assert!(form(&[1, -1, 2, -2]).is_hyperbolic());
        assert!(form(&[1, 1, -2, -2]).is_hyperbolic()); // 2 = 1 + 1
        assert!(form(&[1, 1, -5, -5]).is_hyperbolic()); // 5 = 1 + 4
        assert!(!form(&[1, 1, -7, -7]).is_hyperbolic()); // 7 needs three squares
        assert!(!form(&[1, 1]).is_hyperbolic());
        assert!(DiagonalForm::empty().is_hyperbolic());
    }

    #[test]
    fn representation_decisions() {
        let f = form(&[1, 1]);
        assert!(f.represents(&class(5)));
        assert!(!f.represents(&class(7)));
        assert!(!f.represents(&class(-1)));
        // Isotropic forms are universal.
        let g = form(&[1, -2, -7]);
        for b in [-5i64, 3, 7, 11, -1] {
            assert!(g.represents(&class(b)), "{b}");
        }
    }

    #[test]
    fn representation_witnesses() {
        // Exact target values, not just classes.
        for (cs, b) in [
            (vec![1i64, 1], 5i64),
            (vec![1, 1], 45),
            (vec![1, 2], 3),
            (vec![1, 1, 1], 14),
            (vec![1, -2, -7], 5),
            (vec![1, -1], 17), // hyperbolic plane, universal
            (vec![2, -3, 5, 7], -1),
        ] {
            let f = form(&cs);
            let target = q(b);
            let v = f
                .representation(&target)
                .unwrap_or_else(|| panic!("{f} should represent {b}"));
            assert_eq!(f.evaluate(&v).unwrap(), target, "{f} at {b}");
        }
        assert_eq!(form(&[1, 1]).representation(&q(7)), None);
        assert_eq!(form(&[1, 1]).representation(&q(0)), None);
    }

    #[test]
    fn representation_hits_fractional_targets() {
        let f = form(&[1, 1]);
        let target = BigRational::new(BigInt::from(5), BigInt::from(4));
        let v = f.representation(&target).unwrap();
        assert_eq!(f.evaluate(&v).unwrap(), target);
    }

    #[test]
    fn ideal_filtration_ladder() {
        assert_eq!(form(&[1]).i_degree(), IDegree::Value(0));
        assert_eq!(form(&[1, 1, 1]).i_degree(), IDegree::Value(0));
        assert_eq!(form(&[1, 2]).i_degree(), IDegree::Value(1));
        assert_eq!(form(&[5, 5, 5, 5]).i_degree(), IDegree::Value(2));
        let eight_ones = form(&[1, 1, 1, 1, 1, 1, 1, 1]);
        assert_eq!(eight_ones.i_degree(), IDegree::Value(3));
        assert_eq!(DiagonalForm::hyperbolic(2).i_degree(), IDegree::Hyperbolic);
        assert_eq!(DiagonalForm::empty().i_degree(), IDegree::Hyperbolic);
        // Sixteen ones: signature 16, one step deeper.
        let sixteen = form(&vec![1i64; 16]);
        assert_eq!(sixteen.i_degree(), IDegree::Value(4));

        assert!(form(&[5, 5, 5, 5]).in_i_power(2));
        assert!(!form(&[5, 5, 5, 5]).in_i_power(3));
        assert!(eight_ones.in_i_power(3));
        assert!(DiagonalForm::hyperbolic(1).in_i_power(17));
        assert!(form(&[1, 2]).in_i_power(0));
    }

    #[test]
    fn pfister_forms_sit_in_their_power() {
        for entries in [vec![2i64], vec![2, 3], vec![-1, -1, -1], vec![2, 3, 5], vec![-1, 2, 3, 5]] {
            let classes: Vec<SquareClass> = entries.iter().map(|&n| class(n)).collect();
            let f = DiagonalForm::pfister(&classes);
            let n = entries.len() as u32;
            assert!(f.in_i_power(n), "{f} should lie in power {n}");
        }
    }

    #[test]
    fn phi_matches_symbol_vanishing_in_low_degree() {
        // {2,3} is nonzero and its Pfister form is anisotropic.
        let x = KElement::from_symbol(Symbol::from_i64s(&[2, 3]).unwrap().unwrap());
        let g = phi(&x);
        assert_eq!(g.degree, 2);
        assert_eq!(g.form.dim(), 4);
        assert!(!g.is_zero());
        // {2,-1} is zero (Steinberg) and its Pfister form is hyperbolic.
        let y = KElement::from_symbol(Symbol::from_i64s(&[2, -1]).unwrap().unwrap());
        assert!(phi(&y).is_zero());
        // The zero element maps to the empty form.
        assert!(phi(&KElement::zero(2)).is_zero());
    }

    #[test]
    fn form_grammar() {
        let f = parse_form("<1,-2,-3,6>").unwrap();
        assert_eq!(f, form(&[1, -2, -3, 6]));
        assert_eq!(parse_form("<<2,3>>").unwrap(), form(&[1, -2, -3, 6]));
        assert_eq!(parse_form("\u{27e8}1,-2\u{27e9}").unwrap(), form(&[1, -2]));
        assert_eq!(parse_form("<>").unwrap(), DiagonalForm::empty());
        assert_eq!(parse_form("<1/2, 3>").unwrap(), form(&[2, 3]));
        assert!(parse_form("<1,0>").is_err());
        assert!(parse_form("<<>>").is_err());
        assert!(parse_form("1,2").is_err());
        assert_eq!(form(&[1, -2]).to_string(), "<1,-2>");
        assert_eq!(DiagonalForm::empty().to_string(), "<>");
    }

    // ---- properties ----------------------------------------------------

    fn arb_class() -> impl Strategy<Value = SquareClass> {
        (any::<bool>(), proptest::sample::subsequence(vec![2u64, 3, 5, 7], 0..=2))
            .prop_map(|(neg, ps)| SquareClass::from_parts(neg, &ps).unwrap())
    }

    fn arb_form(range: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = DiagonalForm> {
        proptest::collection::vec(arb_class(), range).prop_map(DiagonalForm::new)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn hyperbolic_summand_preserves_class(f in arb_form(0..=4)) {
            let g = f.orth_sum(&DiagonalForm::hyperbolic(1));
            prop_assert_eq!(f.i_degree(), g.i_degree());
            prop_assert_eq!(f.is_hyperbolic(), g.is_hyperbolic());
        }

        #[test]
        fn scaling_preserves_isotropy(f in arb_form(2..=4), c in arb_class()) {
            prop_assert_eq!(f.is_isotropic(), f.scale(&c).is_isotropic());
        }

        #[test]
        fn decomposition_is_sound(f in arb_form(2..=5)) {
            let (w, kernel) = f.witt_decompose();
            prop_assert!(!kernel.is_isotropic());
            prop_assert_eq!(kernel.dim() + 2 * w, f.dim());
            let rebuilt = DiagonalForm::hyperbolic(w).orth_sum(&kernel);
            prop_assert!(f.equivalent(&rebuilt));
        }

        #[test]
        fn equivalent_forms_share_everything(f in arb_form(2..=4), c in arb_class()) {
            // A square scaling is an equivalence.
            let g = DiagonalForm::new(
                f.entries().iter().map(|e| e.product(&c).product(&c)).collect()
            );
            prop_assert!(f.equivalent(&g));
            prop_assert_eq!(f.is_isotropic(), g.is_isotropic());
            prop_assert_eq!(f.i_degree(), g.i_degree());
        }

        #[test]
        fn represented_classes_come_with_witnesses(f in arb_form(1..=3), b in arb_class()) {
            let target = BigRational::from_integer(b.value());
            let witness = f.representation(&target);
            prop_assert_eq!(witness.is_some(), f.represents(&b));
            if let Some(v) = witness {
                prop_assert_eq!(f.evaluate(&v).unwrap(), target);
            }
        }

        #[test]
        fn pfister_forms_are_round_or_split(a in arb_class(), b in arb_class()) {
            // A 2-fold Pfister form is either anisotropic or hyperbolic.
            let f = DiagonalForm::pfister(&[a, b]);
            if f.is_isotropic() {
                prop_assert!(f.is_hyperbolic());
            } else {
                prop_assert!(!f.is_hyperbolic());
            }
        }
    }
}
