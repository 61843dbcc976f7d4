//! Mod-2 Milnor K-theory of Q: formal sums of pure symbols with a complete
//! zero test, tame residues at odd primes, and the multiplication kernel test.
//!
//! Elements are never rewritten into a normal form beyond sorting terms and
//! cancelling mod-2 duplicates; equality with zero is decided by invariants
//! (entry product in degree 1, Hilbert symbols in degree 2, the real place in
//! degree 3 and up), not by symbol manipulation.

use std::fmt;

use num::bigint::BigInt;
use num::rational::BigRational;

use crate::error::{Error, Result};
use crate::factor::is_prime_u64;
use crate::squareclass::{hilbert_symbol, legendre, relevant_places, SquareClass};

/// A pure symbol {a_1, ..., a_n}. No entry is the trivial class; a would-be
/// entry of 1 makes the whole symbol zero and is handled at construction.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Symbol {
    entries: Vec<SquareClass>,
}

impl Symbol {
    /// Builds a symbol, or `None` when an entry is a square (the symbol is
    /// then the zero element of its graded piece).
    pub fn new(entries: Vec<SquareClass>) -> Option<Symbol> {
        if entries.iter().any(|c| c.is_one()) {
            None
        } else {
            Some(Symbol { entries })
        }
    }

    /// Symbol with entries reduced from nonzero rationals.
    pub fn from_rationals(entries: &[BigRational]) -> Result<Option<Symbol>> {
        let classes = entries
            .iter()
            .map(SquareClass::from_rational)
            .collect::<Result<Vec<_>>>()?;
        Ok(Symbol::new(classes))
    }

    pub fn from_i64s(entries: &[i64]) -> Result<Option<Symbol>> {
        let classes = entries
            .iter()
            .map(|&n| SquareClass::from_i64(n))
            .collect::<Result<Vec<_>>>()?;
        Ok(Symbol::new(classes))
    }

    pub fn degree(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[SquareClass] {
        &self.entries
    }

    /// True when every entry is negative; such a symbol is the nonzero class
    /// over the reals.
    fn totally_negative(&self) -> bool {
        self.entries.iter().all(|c| c.is_negative())
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, c) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "}}")
    }
}

/// A formal mod-2 sum of pure symbols of one degree. Terms are kept sorted
/// with duplicate pairs cancelled, which makes rendering canonical.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct KElement {
    degree: usize,
    terms: Vec<Symbol>,
}

impl KElement {
    pub fn zero(degree: usize) -> KElement {
        KElement { degree, terms: Vec::new() }
    }

    pub fn from_symbol(s: Symbol) -> KElement {
        let degree = s.degree();
        KElement { degree, terms: vec![s] }
    }

    /// Lifts `Symbol::new`'s output: `None` becomes the zero element.
    pub fn from_symbol_opt(s: Option<Symbol>, degree: usize) -> KElement {
        match s {
            Some(sym) => {
                debug_assert_eq!(sym.degree(), degree);
                KElement::from_symbol(sym)
            }
            None => KElement::zero(degree),
        }
    }

    /// The degree-1 element {b}; zero when b is the trivial class.
    pub fn from_class(b: &SquareClass) -> KElement {
        KElement::from_symbol_opt(Symbol::new(vec![b.clone()]), 1)
    }

    fn from_terms(degree: usize, mut terms: Vec<Symbol>) -> KElement {
        terms.sort();
        let mut canonical: Vec<Symbol> = Vec::with_capacity(terms.len());
        for t in terms {
            if canonical.last() == Some(&t) {
                canonical.pop(); // mod-2 cancellation
            } else {
                canonical.push(t);
            }
        }
        KElement { degree, terms: canonical }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn terms(&self) -> &[Symbol] {
        &self.terms
    }

    /// Formal sum. Degrees must agree, except that an element with no terms
    /// acts as the zero of every degree.
    pub fn add(&self, other: &KElement) -> Result<KElement> {
        if !self.terms.is_empty() && !other.terms.is_empty() && self.degree != other.degree {
            return Err(Error::DegreeMismatch { left: self.degree, right: other.degree });
        }
        let degree = if self.terms.is_empty() && !other.terms.is_empty() {
            other.degree
        } else {
            self.degree
        };
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        Ok(KElement::from_terms(degree, terms))
    }

    /// Bilinear product: concatenation of entry lists on pure symbols.
    pub fn multiply(&self, other: &KElement) -> KElement {
        let degree = self.degree + other.degree;
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for s in &self.terms {
            for t in &other.terms {
                let mut entries = s.entries.clone();
                entries.extend(t.entries.iter().cloned());
                terms.push(Symbol { entries });
            }
        }
        KElement::from_terms(degree, terms)
    }

    pub fn multiply_by_symbol(&self, alpha: &Symbol) -> KElement {
        self.multiply(&KElement::from_symbol(alpha.clone()))
    }

    /// Complete zero test.
    ///
    /// Degree 0 reads off the term count mod 2, degree 1 multiplies the
    /// entries out, degree 2 sums Hilbert symbols over every relevant place,
    /// and degree 3 and up is decided at the real place alone, where the only
    /// surviving class is the totally negative symbol.
    pub fn is_zero(&self) -> bool {
        if self.terms.is_empty() {
            return true;
        }
        match self.degree {
            0 => self.terms.len() % 2 == 0,
            1 => {
                let mut prod = SquareClass::one();
                for t in &self.terms {
                    prod = prod.product(&t.entries[0]);
                }
                prod.is_one()
            }
            2 => {
                let entries: Vec<SquareClass> = self
                    .terms
                    .iter()
                    .flat_map(|t| t.entries.iter().cloned())
                    .collect();
                let places = relevant_places(&entries).expect("nonempty by construction");
                places.into_iter().all(|v| {
                    let mut prod = 1i8;
                    for t in &self.terms {
                        prod *= hilbert_symbol(&t.entries[0], &t.entries[1], v);
                    }
                    prod == 1
                })
            }
            _ => {
                let negative_terms =
                    self.terms.iter().filter(|t| t.totally_negative()).count();
                negative_terms % 2 == 0
            }
        }
    }
}

impl fmt::Display for KElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, "+")?;
            }
            write!(f, "{t}")?;
        }
        Ok(())
    }
}

/// Does {b} multiply to zero against the symbol `alpha`?
pub fn kernel_member(b: &SquareClass, alpha: &Symbol) -> bool {
    KElement::from_class(b).multiply_by_symbol(alpha).is_zero()
}

/// A class in the mod-2 Milnor K-theory of a prime field F_p. These groups
/// are Z/2 in degrees 0 and 1 and vanish above, so one bit suffices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FiniteFieldKClass {
    p: u64,
    degree: usize,
    bit: bool,
}

impl FiniteFieldKClass {
    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn bit(&self) -> bool {
        self.bit
    }
}

/// Result of a tame residue: the target class, plus a flag that is set when
/// nontrivial content was discarded because the target group vanishes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ResidueOutcome {
    pub class: FiniteFieldKClass,
    pub forced_collapse: bool,
}

/// Tame residue at an odd prime, degrees 1 through 3.
///
/// Entries are split multilinearly into p-parts and p-units; repeated p's
/// are folded with {p,p} = {p,-1}, and a symbol with exactly one p-slot
/// drops to the class of its remaining units.
pub fn residue_at_p(x: &KElement, p: u64) -> Result<ResidueOutcome> {
    if p == 2 {
        return Err(Error::DyadicResidue);
    }
    if !is_prime_u64(p) || p < 3 {
        return Err(Error::NotOddPrime(p));
    }
    let n = x.degree();
    if !(1..=3).contains(&n) {
        return Err(Error::DegreeUnsupported { degree: n, what: "tame residue" });
    }
    let target = n - 1;

    // Per slot, the multilinear options: the prime itself, the unit part, or
    // both when the entry mixes them.
    #[derive(Clone)]
    enum Slot {
        P,
        Unit(SquareClass),
    }
    let mut residue_units: Vec<Vec<SquareClass>> = Vec::new();
    for term in x.terms() {
        let options: Vec<Vec<Slot>> = term
            .entries()
            .iter()
            .map(|entry| {
                let has_p = entry.contains(p);
                let unit = if has_p {
                    entry.product(&SquareClass::from_parts(false, &[p]).expect("p prime"))
                } else {
                    entry.clone()
                };
                let mut opts = Vec::new();
                if has_p {
                    opts.push(Slot::P);
                }
                if !unit.is_one() {
                    opts.push(Slot::Unit(unit));
                }
                opts
            })
            .collect();
        // Cartesian product over the slot options.
        let mut combos: Vec<Vec<Slot>> = vec![Vec::new()];
        for opts in &options {
            let mut next = Vec::with_capacity(combos.len() * opts.len());
            for combo in &combos {
                for o in opts {
                    let mut c = combo.clone();
                    c.push(o.clone());
                    next.push(c);
                }
            }
            combos = next;
        }
        for combo in combos {
            let p_count = combo.iter().filter(|s| matches!(s, Slot::P)).count();
            if p_count == 0 {
                continue; // units alone have trivial residue
            }
            let mut units: Vec<SquareClass> = combo
                .into_iter()
                .filter_map(|s| match s {
                    Slot::P => None,
                    Slot::Unit(u) => Some(u),
                })
                .collect();
            // {p,p} = {p,-1}: every extra p turns into a unit -1.
            for _ in 1..p_count {
                units.push(SquareClass::minus_one());
            }
            debug_assert_eq!(units.len(), n - 1);
            residue_units.push(units);
        }
    }

    let bit = match target {
        0 => residue_units.len() % 2 == 1,
        1 => {
            let mut prod = SquareClass::one();
            for units in &residue_units {
                for u in units {
                    prod = prod.product(u);
                }
            }
            legendre(&prod, p)? == -1
        }
        _ => false,
    };
    let forced_collapse = target >= 2 && !residue_units.is_empty();
    Ok(ResidueOutcome {
        class: FiniteFieldKClass { p, degree: target, bit },
        forced_collapse,
    })
}

// ---- text grammar ------------------------------------------------------

struct Scanner<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Scanner<'a> {
    fn new(s: &'a str) -> Scanner<'a> {
        Scanner { bytes: s.as_bytes(), pos: 0 }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        self.skip_ws();
        if self.bytes.get(self.pos) == Some(&c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(Error::Parse {
                pos: self.pos,
                msg: format!("expected '{}'", c as char),
            })
        }
    }

    fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.pos >= self.bytes.len()
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        if self.bytes.get(self.pos) == Some(&b'-') || self.bytes.get(self.pos) == Some(&b'+') {
            self.pos += 1;
        }
        let digits_start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == digits_start {
            return Err(Error::Parse { pos: self.pos, msg: "expected an integer".into() });
        }
        let text = std::str::from_utf8(&self.bytes[start..self.pos]).unwrap();
        text.parse::<BigInt>().map_err(|_| Error::Parse {
            pos: start,
            msg: "integer out of shape".into(),
        })
    }

    /// `n` or `n/d` as a rational.
    fn rational(&mut self) -> Result<BigRational> {
        let n = self.integer()?;
        if self.peek() == Some(b'/') {
            self.pos += 1;
            let pos = self.pos;
            let d = self.integer()?;
            if d == BigInt::from(0) {
                return Err(Error::Parse { pos, msg: "zero denominator".into() });
            }
            Ok(BigRational::new(n, d))
        } else {
            Ok(BigRational::from_integer(n))
        }
    }
}

/// Parses the sum grammar `{2,3}+{5,-1}` (or `0`) into an element.
pub fn parse_kelement(input: &str) -> Result<KElement> {
    let mut sc = Scanner::new(input);
    if sc.peek() == Some(b'0') {
        sc.pos += 1;
        if !sc.at_end() {
            return Err(Error::Parse { pos: sc.pos, msg: "trailing input after 0".into() });
        }
        return Ok(KElement::zero(0));
    }
    let mut element: Option<KElement> = None;
    loop {
        sc.expect(b'{')?;
        let mut entries = Vec::new();
        if sc.peek() != Some(b'}') {
            loop {
                let open = sc.pos;
                let q = sc.rational()?;
                if q == BigRational::from_integer(BigInt::from(0)) {
                    return Err(Error::Parse { pos: open, msg: "zero entry in symbol".into() });
                }
                entries.push(q);
                if sc.peek() == Some(b',') {
                    sc.pos += 1;
                } else {
                    break;
                }
            }
        }
        sc.expect(b'}')?;
        let degree = entries.len();
        let sym = Symbol::from_rationals(&entries)?;
        let term = KElement::from_symbol_opt(sym, degree);
        element = Some(match element {
            None => term,
            Some(acc) => acc.add(&term).map_err(|e| match e {
                Error::DegreeMismatch { left, right } => Error::Parse {
                    pos: sc.pos,
                    msg: format!("mixed degrees {left} and {right} in one sum"),
                },
                other => other,
            })?,
        });
        if sc.peek() == Some(b'+') {
            sc.pos += 1;
        } else {
            break;
        }
    }
    if !sc.at_end() {
        return Err(Error::Parse { pos: sc.pos, msg: "trailing input".into() });
    }
    Ok(element.expect("at least one term parsed"))
}

/// Parses a symbol written as a tuple, e.g. `(2,3)`, into its entry classes.
/// Entries that reduce to 1 are kept so callers can decide what a zero
/// symbol should mean for them.
pub fn parse_symbol_tuple(input: &str) -> Result<Vec<SquareClass>> {
    let mut sc = Scanner::new(input);
    sc.expect(b'(')?;
    let mut entries = Vec::new();
    loop {
        let open = sc.pos;
        let q = sc.rational()?;
        if q == BigRational::from_integer(BigInt::from(0)) {
            return Err(Error::Parse { pos: open, msg: "zero entry in symbol".into() });
        }
        entries.push(SquareClass::from_rational(&q)?);
        if sc.peek() == Some(b',') {
            sc.pos += 1;
        } else {
            break;
        }
    }
    sc.expect(b')')?;
    if !sc.at_end() {
        return Err(Error::Parse { pos: sc.pos, msg: "trailing input".into() });
    }
    Ok(entries)
}
