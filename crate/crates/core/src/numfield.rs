//! Number fields of degree 2 through 4: exact power-basis arithmetic, norms
//! by resultant, real embeddings by Sturm counting, quadratic transfers via
//! the projection formula, restriction of symbol sums with the zero tests
//! that are actually decidable, and the constructive subspace lemma.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::factor::{divisors, DEFAULT_FACTOR_BOUND};
use crate::milnor::{KElement, Symbol};
use crate::poly::{isolate_real_roots, root_count_between, sign_of, QPoly, RootInterval};
use crate::squareclass::SquareClass;

/// A field Q[x]/(f) with f monic, integral, irreducible, of degree 2 to 4.
/// Elements are coordinate vectors in the power basis of the class of x.
#[derive(Debug, Clone)]
pub struct NumberField {
    min_poly: QPoly,
    degree: usize,
    real_roots: Vec<RootInterval>,
}

/// Power-basis coordinates; the field the element belongs to is carried by
/// context (every operation goes through a `NumberField`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldElement {
    coords: Vec<BigRational>,
}

impl FieldElement {
    pub fn coords(&self) -> &[BigRational] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    fn poly(&self) -> QPoly {
        QPoly::new(self.coords.clone())
    }
}

impl NumberField {
    /// Builds the field from little-endian integer coefficients of the
    /// minimal polynomial, leading coefficient included.
    pub fn new(coeffs: &[BigInt]) -> Result<NumberField> {
        let mut cs = coeffs.to_vec();
        while cs.last().is_some_and(|c| c.is_zero()) {
            cs.pop();
        }
        if cs.is_empty() {
            return Err(Error::ZeroInput);
        }
        let degree = cs.len() - 1;
        if !(2..=4).contains(&degree) {
            return Err(Error::FieldDegreeOutOfRange { degree });
        }
        if !cs.last().unwrap().is_one() {
            return Err(Error::NotMonic);
        }
        if !irreducible(&cs)? {
            return Err(Error::ReducibleMinPoly);
        }
        let min_poly = QPoly::new(
            cs.iter().map(|c| BigRational::from_integer(c.clone())).collect(),
        );
        let real_roots = isolate_real_roots(&min_poly);
        Ok(NumberField { min_poly, degree, real_roots })
    }

    pub fn from_i64_coeffs(coeffs: &[i64]) -> Result<NumberField> {
        let cs: Vec<BigInt> = coeffs.iter().map(|&c| BigInt::from(c)).collect();
        NumberField::new(&cs)
    }

    /// Q(sqrt d), built as Q[x]/(x^2 - d).
    pub fn quadratic(d: &BigInt) -> Result<NumberField> {
        NumberField::new(&[-d.clone(), BigInt::zero(), BigInt::one()])
    }

    /// Q(sqrt d) for the value of a square class. A nontrivial square-free
    /// d is never a square, so the usual irreducibility machinery (and its
    /// factoring) can be skipped.
    pub fn quadratic_of_class(c: &SquareClass) -> Result<NumberField> {
        if c.is_one() {
            return Err(Error::ReducibleMinPoly);
        }
        let min_poly = QPoly::new(vec![
            BigRational::from_integer(-c.value()),
            BigRational::zero(),
            BigRational::one(),
        ]);
        let real_roots = isolate_real_roots(&min_poly);
        Ok(NumberField { min_poly, degree: 2, real_roots })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn real_embedding_count(&self) -> usize {
        self.real_roots.len()
    }

    pub fn min_poly_coeff(&self, i: usize) -> BigRational {
        self.min_poly.coeff(i)
    }

    pub fn element(&self, coords: Vec<BigRational>) -> Result<FieldElement> {
        if coords.len() != self.degree {
            return Err(Error::CoordinateLength { got: coords.len(), want: self.degree });
        }
        Ok(FieldElement { coords })
    }

    pub fn element_from_i64s(&self, coords: &[i64]) -> Result<FieldElement> {
        self.element(
            coords
                .iter()
                .map(|&c| BigRational::from_integer(BigInt::from(c)))
                .collect(),
        )
    }

    pub fn rational(&self, q: BigRational) -> FieldElement {
        let mut coords = vec![BigRational::zero(); self.degree];
        coords[0] = q;
        FieldElement { coords }
    }

    pub fn zero(&self) -> FieldElement {
        self.rational(BigRational::zero())
    }

    pub fn one(&self) -> FieldElement {
        self.rational(BigRational::one())
    }

    /// The class of x.
    pub fn generator(&self) -> FieldElement {
        let mut coords = vec![BigRational::zero(); self.degree];
        coords[1] = BigRational::one();
        FieldElement { coords }
    }

    fn from_poly(&self, p: QPoly) -> FieldElement {
        let reduced = if p.degree().is_some_and(|d| d >= self.degree) {
            p.div_rem(&self.min_poly).1
        } else {
            p
        };
        let mut coords = vec![BigRational::zero(); self.degree];
        for (i, c) in coords.iter_mut().enumerate() {
            *c = reduced.coeff(i);
        }
        FieldElement { coords }
    }

    pub fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        self.from_poly(a.poly().add(&b.poly()))
    }

    pub fn sub(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        self.from_poly(a.poly().sub(&b.poly()))
    }

    pub fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        self.from_poly(a.poly().mul(&b.poly()))
    }

    pub fn scale(&self, a: &FieldElement, k: &BigRational) -> FieldElement {
        self.from_poly(a.poly().scale(k))
    }

    /// Multiplicative inverse by the extended Euclidean algorithm against
    /// the minimal polynomial.
    pub fn inverse(&self, a: &FieldElement) -> Result<FieldElement> {
        if a.is_zero() {
            return Err(Error::ZeroElementInverse);
        }
        // Invariants: r0 = u0*g mod f, r1 = u1*g mod f.
        let mut r0 = self.min_poly.clone();
        let mut r1 = a.poly();
        let mut u0 = QPoly::zero();
        let mut u1 = QPoly::new(vec![BigRational::one()]);
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let u = u0.sub(&q.mul(&u1));
            r0 = r1;
            r1 = r;
            u0 = u1;
            u1 = u;
        }
        // r0 is a nonzero constant: f is irreducible and deg a < deg f.
        debug_assert_eq!(r0.degree(), Some(0));
        let inv_const = BigRational::one() / r0.coeff(0);
        Ok(self.from_poly(u0.scale(&inv_const)))
    }

    /// Field norm down to Q: the resultant of the minimal polynomial with
    /// the element polynomial, i.e. the product of the element over all
    /// embeddings.
    pub fn norm(&self, a: &FieldElement) -> BigRational {
        let g = a.poly();
        if g.is_zero() {
            return BigRational::zero();
        }
        resultant_with_monic(&self.min_poly, &g)
    }

    /// Sign of the element under the index-th real embedding (ascending
    /// order of the real roots of the minimal polynomial).
    pub fn sign_at_real_embedding(&self, a: &FieldElement, index: usize) -> Result<i8> {
        if index >= self.real_roots.len() {
            return Err(Error::NoSuchEmbedding { index, count: self.real_roots.len() });
        }
        if a.is_zero() {
            return Ok(0);
        }
        let g = a.poly();
        if g.degree() == Some(0) {
            return Ok(sign_of(&g.coeff(0)));
        }
        let chain = g.sturm_chain();
        let mut iv = self.real_roots[index].clone();
        loop {
            // Once g has no root in the closed interval its sign there is
            // constant and nonzero; keep halving until all roots of g are
            // excluded, which must happen because g does not vanish at the
            // embedded generator.
            if !g.eval(&iv.lo).is_zero() && root_count_between(&chain, &iv.lo, &iv.hi) == 0 {
                return Ok(sign_of(&g.eval(&iv.midpoint())));
            }
            iv.bisect(&self.min_poly);
        }
    }

    /// Discriminant class of a quadratic field: for x^2 + px + q this is
    /// the class of p^2 - 4q, the d with E = Q(sqrt d).
    fn quadratic_disc(&self) -> Result<SquareClass> {
        if self.degree != 2 {
            return Err(Error::QuadraticFieldRequired { degree: self.degree });
        }
        let p = self.min_poly.coeff(1);
        let q = self.min_poly.coeff(0);
        let four = BigRational::from_integer(BigInt::from(4));
        let disc = &p * &p - four * q;
        SquareClass::from_rational(&disc)
    }

    /// Is the rational class b a square in this field? Quadratic fields
    /// only: there b is a square exactly when it is trivial or matches the
    /// discriminant class.
    pub fn is_square_in(&self, b: &SquareClass) -> Result<bool> {
        let d = self.quadratic_disc()?;
        Ok(b.is_one() || *b == d)
    }

    /// Transfer on K_1 along a quadratic extension: {e} downstairs becomes
    /// the class of the norm.
    pub fn transfer_k1(&self, e: &FieldElement) -> Result<KElement> {
        if self.degree != 2 {
            return Err(Error::QuadraticFieldRequired { degree: self.degree });
        }
        if e.is_zero() {
            return Err(Error::ZeroInput);
        }
        let n = self.norm(e);
        let class = SquareClass::from_rational(&n)?;
        Ok(KElement::from_class(&class))
    }

    /// Transfer of {e, tail...} with a rational tail, by the projection
    /// formula: {N(e)} times the tail.
    pub fn transfer_symbol(&self, e: &FieldElement, tail: &Symbol) -> Result<KElement> {
        let head = self.transfer_k1(e)?;
        Ok(head.multiply(&KElement::from_symbol(tail.clone())))
    }

    /// Reinterprets a rational symbol sum in this field. Only the zero test
    /// changes; the terms carry over verbatim.
    pub fn restrict(&self, x: &KElement) -> RestrictedKElement {
        RestrictedKElement { field: self.clone(), element: x.clone() }
    }

    /// Finds nonzero v1, v2 in the span of `basis` with x * v2 = v1. Exists
    /// whenever 2 |basis| exceeds the field degree: the map (a, b) to
    /// sum a_i basis_i - x * sum b_j basis_j out of a 2k-dimensional space
    /// into an m-dimensional one has nontrivial kernel.
    pub fn lemma_simple_solve(
        &self,
        basis: &[FieldElement],
        x: &FieldElement,
    ) -> Result<(FieldElement, FieldElement)> {
        if x.is_zero() {
            return Err(Error::ZeroInput);
        }
        let m = self.degree;
        let k = basis.len();
        if 2 * k <= m {
            return Err(Error::SubspaceHypothesis { dim_v: k, field_degree: m });
        }
        for v in basis {
            if v.coords.len() != m {
                return Err(Error::CoordinateLength { got: v.coords.len(), want: m });
            }
        }
        let independence_rows: Vec<Vec<BigRational>> = (0..m)
            .map(|row| basis.iter().map(|v| v.coords[row].clone()).collect())
            .collect();
        if rank(independence_rows) != k {
            return Err(Error::DependentGenerators);
        }
        // Columns: basis vectors, then -(x * basis vector).
        let shifted: Vec<FieldElement> = basis.iter().map(|v| self.mul(x, v)).collect();
        let rows: Vec<Vec<BigRational>> = (0..m)
            .map(|row| {
                basis
                    .iter()
                    .map(|v| v.coords[row].clone())
                    .chain(shifted.iter().map(|w| -w.coords[row].clone()))
                    .collect()
            })
            .collect();
        let solution = kernel_vector(rows, 2 * k).expect("kernel forced by dimensions");
        let (a, b) = solution.split_at(k);
        let mut v1 = self.zero();
        let mut v2 = self.zero();
        for (i, basis_vec) in basis.iter().enumerate() {
            v1 = self.add(&v1, &self.scale(basis_vec, &a[i]));
            v2 = self.add(&v2, &self.scale(basis_vec, &b[i]));
        }
        // A zero v2 would force a dependence among the basis vectors.
        assert!(!v2.is_zero());
        assert_eq!(self.mul(x, &v2), v1);
        Ok((v1, v2))
    }
}

/// A symbol sum seen in a number field. Zero testing is decidable in
/// degrees 0 and 1, refused in degree 2, and read off the real embeddings
/// in degree 3 and up (rational entries keep their signs under every
/// embedding).
#[derive(Debug, Clone)]
pub struct RestrictedKElement {
    field: NumberField,
    element: KElement,
}

impl RestrictedKElement {
    pub fn field(&self) -> &NumberField {
        &self.field
    }

    pub fn element(&self) -> &KElement {
        &self.element
    }

    pub fn is_zero(&self) -> Result<bool> {
        if self.element.terms().is_empty() {
            return Ok(true);
        }
        match self.element.degree() {
            0 => Ok(self.element.terms().len() % 2 == 0),
            1 => {
                let mut b = SquareClass::one();
                for t in self.element.terms() {
                    b = b.product(&t.entries()[0]);
                }
                match self.field.degree() {
                    2 => self.field.is_square_in(&b),
                    // Odd-degree extensions add no new rational squares: a
                    // square root of b would generate a degree-2 subfield.
                    3 => Ok(b.is_one()),
                    _ => Err(Error::DegreeUnsupported {
                        degree: self.field.degree(),
                        what: "squareness of a rational class",
                    }),
                }
            }
            2 => Err(Error::ExtensionDegreeTwoZeroTest),
            _ => {
                if self.field.real_embedding_count() == 0 {
                    return Ok(true);
                }
                // Entries are rational, so every real embedding sees the
                // same signs; one parity count covers them all.
                let negative = self
                    .element
                    .terms()
                    .iter()
                    .filter(|t| t.entries().iter().all(|c| c.is_negative()))
                    .count();
                Ok(negative % 2 == 0)
            }
        }
    }
}

/// Irreducibility over Q for monic integral polynomials of degree 2 to 4:
/// no integer roots, and for quartics no split into two monic integral
/// quadratics.
fn irreducible(coeffs: &[BigInt]) -> Result<bool> {
    let degree = coeffs.len() - 1;
    let constant = &coeffs[0];
    if constant.is_zero() {
        return Ok(false); // root at 0
    }
    let eval = |x: &BigInt| -> BigInt {
        let mut acc = BigInt::zero();
        for c in coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    };
    for d in divisors(constant, DEFAULT_FACTOR_BOUND)? {
        if eval(&d).is_zero() || eval(&(-&d)).is_zero() {
            return Ok(false);
        }
    }
    if degree < 4 {
        return Ok(true);
    }
    // Quartic split test: x^4 + a x^3 + b x^2 + c x + d as
    // (x^2 + p x + q)(x^2 + r x + s) with integer entries requires q s = d,
    // p + r = a, p r = b - q - s, p s + q r = c.
    let (a, b, c, d) = (&coeffs[3], &coeffs[2], &coeffs[1], &coeffs[0]);
    let mut q_candidates = Vec::new();
    for pos in divisors(d, DEFAULT_FACTOR_BOUND)? {
        q_candidates.push(-&pos);
        q_candidates.push(pos);
    }
    for q in q_candidates {
        let s = d / &q;
        if &(&q * &s) != d {
            continue;
        }
        let pr = b - &q - &s;
        let disc = a * a - BigInt::from(4) * &pr;
        if disc.is_negative() {
            continue;
        }
        let t = disc.sqrt();
        if &t * &t != disc {
            continue;
        }
        for root in [&t, &(-&t)] {
            let twice_p = a + root;
            if (&twice_p % BigInt::from(2)).is_zero() {
                let p = twice_p / BigInt::from(2);
                let r = a - &p;
                if &(&p * &s + &q * &r) == c {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Resultant Res(f, g) for monic f: the product of g over the roots of f.
/// Computed as the Sylvester determinant.
fn resultant_with_monic(f: &QPoly, g: &QPoly) -> BigRational {
    let m = f.degree().expect("nonzero");
    let n = g.degree().expect("nonzero");
    let size = m + n;
    let mut rows: Vec<Vec<BigRational>> = Vec::with_capacity(size);
    for i in 0..n {
        let mut row = vec![BigRational::zero(); size];
        for k in 0..=m {
            row[i + k] = f.coeff(m - k);
        }
        rows.push(row);
    }
    for j in 0..m {
        let mut row = vec![BigRational::zero(); size];
        for k in 0..=n {
            row[j + k] = g.coeff(n - k);
        }
        rows.push(row);
    }
    determinant(rows)
}

fn determinant(mut rows: Vec<Vec<BigRational>>) -> BigRational {
    let n = rows.len();
    let mut det = BigRational::one();
    for col in 0..n {
        let pivot = match (col..n).find(|&r| !rows[r][col].is_zero()) {
            Some(p) => p,
            None => return BigRational::zero(),
        };
        if pivot != col {
            rows.swap(pivot, col);
            det = -det;
        }
        let lead = rows[col][col].clone();
        det *= &lead;
        for r in col + 1..n {
            if rows[r][col].is_zero() {
                continue;
            }
            let factor = &rows[r][col] / &lead;
            for c in col..n {
                let delta = &factor * &rows[col][c];
                rows[r][c] -= delta;
            }
        }
    }
    det
}

/// Row rank by Gaussian elimination.
fn rank(mut rows: Vec<Vec<BigRational>>) -> usize {
    let nrows = rows.len();
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut r = 0;
    for col in 0..ncols {
        let pivot = match (r..nrows).find(|&i| !rows[i][col].is_zero()) {
            Some(p) => p,
            None => continue,
        };
        rows.swap(pivot, r);
        let lead = rows[r][col].clone();
        for i in r + 1..nrows {
            if rows[i][col].is_zero() {
                continue;
            }
            let factor = &rows[i][col] / &lead;
            for c in col..ncols {
                let delta = &factor * &rows[r][c];
                rows[i][c] -= delta;
            }
        }
        r += 1;
        if r == nrows {
            break;
        }
    }
    r
}

/// Any nonzero kernel vector of the row-listed matrix, or None when the
/// columns are independent.
fn kernel_vector(mut rows: Vec<Vec<BigRational>>, cols: usize) -> Option<Vec<BigRational>> {
    let nrows = rows.len();
    let mut pivots: Vec<(usize, usize)> = Vec::new(); // (row, col)
    let mut r = 0;
    for col in 0..cols {
        let pivot = match (r..nrows).find(|&i| !rows[i][col].is_zero()) {
            Some(p) => p,
            None => continue,
        };
        rows.swap(pivot, r);
        let lead = rows[r][col].clone();
        for i in 0..nrows {
            if i == r || rows[i][col].is_zero() {
                continue;
            }
            let factor = &rows[i][col] / &lead;
            for c in col..cols {
                let delta = &factor * &rows[r][c];
                rows[i][c] -= delta;
            }
        }
        pivots.push((r, col));
        r += 1;
        if r == nrows {
            break;
        }
    }
    let pivot_cols: Vec<usize> = pivots.iter().map(|&(_, c)| c).collect();
    let free = (0..cols).find(|c| !pivot_cols.contains(c))?;
    let mut x = vec![BigRational::zero(); cols];
    x[free] = BigRational::one();
    for &(row, col) in pivots.iter().rev() {
        let mut acc = BigRational::zero();
        for c in col + 1..cols {
            if !x[c].is_zero() {
                acc += &rows[row][c] * &x[c];
            }
        }
        x[col] = -acc / &rows[row][col];
    }
    Some(x)
}

/// Parses `Q(sqrt d)` or `Q[x]/(f)` with f written in powers of x.
pub fn parse_field(input: &str) -> Result<NumberField> {
    let s = input.trim();
    if let Some(rest) = s.strip_prefix("Q(sqrt").or_else(|| s.strip_prefix("\u{211a}(sqrt")) {
        let inner = rest
            .strip_suffix(')')
            .ok_or_else(|| Error::Parse { pos: s.len(), msg: "expected ')'".into() })?
            .trim();
        let d = inner
            .parse::<BigInt>()
            .map_err(|_| Error::Parse { pos: 0, msg: format!("bad integer '{inner}'") })?;
        return NumberField::quadratic(&d);
    }
    if let Some(rest) = s.strip_prefix("Q[x]/(").or_else(|| s.strip_prefix("\u{211a}[x]/(")) {
        let inner = rest
            .strip_suffix(')')
            .ok_or_else(|| Error::Parse { pos: s.len(), msg: "expected ')'".into() })?;
        let coeffs = parse_poly_in_x(inner)?;
        return NumberField::new(&coeffs);
    }
    Err(Error::Parse { pos: 0, msg: "expected Q(sqrt d) or Q[x]/(f)".into() })
}

/// Integer polynomial in x, e.g. `x^3 - 2` or `x^2+x+1`, little-endian
/// coefficients out.
fn parse_poly_in_x(input: &str) -> Result<Vec<BigInt>> {
    let bytes = input.as_bytes();
    let mut coeffs: Vec<BigInt> = Vec::new();
    let mut pos = 0usize;
    let skip_ws = |pos: &mut usize| {
        while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
            *pos += 1;
        }
    };
    let mut first = true;
    loop {
        skip_ws(&mut pos);
        if pos >= bytes.len() {
            break;
        }
        let mut negative = false;
        if bytes[pos] == b'+' || bytes[pos] == b'-' {
            negative = bytes[pos] == b'-';
            pos += 1;
        } else if !first {
            return Err(Error::Parse { pos, msg: "expected '+' or '-'".into() });
        }
        first = false;
        skip_ws(&mut pos);
        // Coefficient digits, if any.
        let digit_start = pos;
        while pos < bytes.len() && bytes[pos].is_ascii_digit() {
            pos += 1;
        }
        let mut coeff = if pos > digit_start {
            std::str::from_utf8(&bytes[digit_start..pos])
                .unwrap()
                .parse::<BigInt>()
                .map_err(|_| Error::Parse { pos: digit_start, msg: "bad integer".into() })?
        } else {
            BigInt::one()
        };
        if negative {
            coeff = -coeff;
        }
        skip_ws(&mut pos);
        if pos < bytes.len() && bytes[pos] == b'*' {
            pos += 1;
            skip_ws(&mut pos);
        }
        let exp = if pos < bytes.len() && bytes[pos] == b'x' {
            pos += 1;
            if pos < bytes.len() && bytes[pos] == b'^' {
                pos += 1;
                let e_start = pos;
                while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                    pos += 1;
                }
                if pos == e_start {
                    return Err(Error::Parse { pos, msg: "expected an exponent".into() });
                }
                std::str::from_utf8(&bytes[e_start..pos])
                    .unwrap()
                    .parse::<usize>()
                    .map_err(|_| Error::Parse { pos: e_start, msg: "exponent too large".into() })?
            } else {
                1
            }
        } else {
            if pos == digit_start {
                // Neither digits nor x: nothing consumed.
                return Err(Error::Parse { pos, msg: "expected a term".into() });
            }
            0
        };
        if exp >= coeffs.len() {
            coeffs.resize(exp + 1, BigInt::zero());
        }
        coeffs[exp] += coeff;
    }
    if coeffs.is_empty() {
        return Err(Error::EmptyInput);
    }
    Ok(coeffs)
}

/// Parses power-basis coordinates, e.g. `2,1` or `[2, 1]` or `1/2,0,3`.
pub fn parse_element(field: &NumberField, input: &str) -> Result<FieldElement> {
    let s = input.trim();
    let body = s
        .strip_prefix('[')
        .and_then(|r| r.strip_suffix(']'))
        .unwrap_or(s);
    let mut coords = Vec::new();
    for (k, piece) in body.split(',').enumerate() {
        let text = piece.trim();
        let q = match text.split_once('/') {
            None => text
                .parse::<BigInt>()
                .map(BigRational::from_integer)
                .map_err(|_| Error::Parse { pos: k, msg: format!("bad rational '{text}'") })?,
            Some((n, d)) => {
                let num = n.trim().parse::<BigInt>().map_err(|_| Error::Parse {
                    pos: k,
                    msg: format!("bad rational '{text}'"),
                })?;
                let den = d.trim().parse::<BigInt>().map_err(|_| Error::Parse {
                    pos: k,
                    msg: format!("bad rational '{text}'"),
                })?;
                if den.is_zero() {
                    return Err(Error::Parse { pos: k, msg: "zero denominator".into() });
                }
                BigRational::new(num, den)
            }
        };
        coords.push(q);
    }
    field.element(coords)
}
