//! Exact Laurent polynomial arithmetic over the rationals: parsing, printing,
//! logarithmic derivatives, monomial substitutions, and face truncations.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice::IntegerMatrix;
use crate::polytope::Face;

pub type Rational = BigRational;

/// Integer exponent vector of fixed arity. Ordered graded-then-lexicographic,
/// which is also the canonical term order of the crate.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ExponentVector(Vec<i64>);

impl ExponentVector {
    pub fn new(entries: Vec<i64>) -> Self {
        ExponentVector(entries)
    }

    pub fn zeros(arity: usize) -> Self {
        ExponentVector(vec![0; arity])
    }

    pub fn unit(arity: usize, index: usize) -> Self {
        let mut e = vec![0; arity];
        e[index] = 1;
        ExponentVector(e)
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    pub fn get(&self, i: usize) -> i64 {
        self.0[i]
    }

    pub fn total_degree(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn add(&self, other: &Self) -> Self {
        debug_assert_eq!(self.arity(), other.arity());
        ExponentVector(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        debug_assert_eq!(self.arity(), other.arity());
        ExponentVector(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a - b)
                .collect(),
        )
    }

    pub fn neg(&self) -> Self {
        ExponentVector(self.0.iter().map(|a| -a).collect())
    }

    pub fn scale(&self, k: i64) -> Self {
        ExponentVector(self.0.iter().map(|a| a * k).collect())
    }

    /// Restriction to the given coordinate positions.
    pub fn project(&self, coords: &[usize]) -> Self {
        ExponentVector(coords.iter().map(|&i| self.0[i]).collect())
    }
}

impl Ord for ExponentVector {
    fn cmp(&self, other: &Self) -> Ordering {
        debug_assert_eq!(self.arity(), other.arity());
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for ExponentVector {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse Laurent polynomial: a finite map from exponent vectors to nonzero
/// rational coefficients. Values are immutable after construction.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LaurentPolynomial {
    arity: usize,
    terms: BTreeMap<ExponentVector, Rational>,
}

impl LaurentPolynomial {
    pub fn zero(arity: usize) -> Self {
        LaurentPolynomial {
            arity,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(arity: usize) -> Self {
        Self::constant(arity, Rational::one())
    }

    pub fn constant(arity: usize, c: Rational) -> Self {
        let mut p = Self::zero(arity);
        p.insert_term(ExponentVector::zeros(arity), c);
        p
    }

    pub fn monomial(arity: usize, exp: ExponentVector, c: Rational) -> Result<Self> {
        if exp.arity() != arity {
            return Err(Error::ArityMismatch {
                expected: arity,
                found: exp.arity(),
            });
        }
        let mut p = Self::zero(arity);
        p.insert_term(exp, c);
        Ok(p)
    }

    pub fn variable(arity: usize, index: usize) -> Result<Self> {
        if index >= arity {
            return Err(Error::IndexOutOfRange { index, arity });
        }
        Self::monomial(arity, ExponentVector::unit(arity, index), Rational::one())
    }

    pub fn from_terms<I>(arity: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (ExponentVector, Rational)>,
    {
        let mut p = Self::zero(arity);
        for (e, c) in terms {
            if e.arity() != arity {
                return Err(Error::ArityMismatch {
                    expected: arity,
                    found: e.arity(),
                });
            }
            p.insert_term(e, c);
        }
        Ok(p)
    }

    fn insert_term(&mut self, exp: ExponentVector, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exp) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get() + c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&ExponentVector, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, exp: &ExponentVector) -> Rational {
        self.terms.get(exp).cloned().unwrap_or_else(Rational::zero)
    }

    /// The support as a sorted point list.
    pub fn support(&self) -> Vec<ExponentVector> {
        self.terms.keys().cloned().collect()
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// True when some exponent is nonzero on the given coordinates.
    pub fn depends_on(&self, coords: &[usize]) -> bool {
        self.terms
            .keys()
            .any(|e| coords.iter().any(|&i| e.get(i) != 0))
    }

    fn check_arity(&self, other: &Self) -> Result<()> {
        if self.arity != other.arity {
            return Err(Error::ArityMismatch {
                expected: self.arity,
                found: other.arity,
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_arity(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.insert_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_arity(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.insert_term(e.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_arity(other)?;
        let mut out = Self::zero(self.arity);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                out.insert_term(ea.add(eb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn negate(&self) -> Self {
        LaurentPolynomial {
            arity: self.arity,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), -c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.arity);
        }
        LaurentPolynomial {
            arity: self.arity,
            terms: self
                .terms
                .iter()
                .map(|(e, k)| (e.clone(), k * c))
                .collect(),
        }
    }

    pub fn mul_monomial(&self, exp: &ExponentVector, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.arity);
        }
        LaurentPolynomial {
            arity: self.arity,
            terms: self
                .terms
                .iter()
                .map(|(e, k)| (e.add(exp), k * c))
                .collect(),
        }
    }

    /// `self^k` for integer `k`; negative powers only for monomials.
    pub fn pow(&self, k: i64) -> Result<Self> {
        if self.is_zero() {
            return if k > 0 {
                Ok(Self::zero(self.arity))
            } else {
                Err(Error::ZeroPower)
            };
        }
        if k == 0 {
            return Ok(Self::one(self.arity));
        }
        if k < 0 {
            if !self.is_monomial() {
                return Err(Error::NegativePower);
            }
            let (e, c) = self.terms.iter().next().unwrap();
            let inv = Rational::one() / c;
            return Self::monomial(self.arity, e.neg(), inv)?.pow(-k);
        }
        let mut acc = Self::one(self.arity);
        let mut base = self.clone();
        let mut k = k as u64;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.checked_mul(&base)?;
            }
            k >>= 1;
            if k > 0 {
                base = base.checked_mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// The logarithmic derivative `z_i * d/dz_i`, a Laurent polynomial for
    /// any integer exponents.
    pub fn log_derivative(&self, index: usize) -> Result<Self> {
        if index >= self.arity {
            return Err(Error::IndexOutOfRange {
                index,
                arity: self.arity,
            });
        }
        let mut out = Self::zero(self.arity);
        for (e, c) in &self.terms {
            let k = e.get(index);
            if k != 0 {
                out.insert_term(e.clone(), c * Rational::from(BigInt::from(k)));
            }
        }
        Ok(out)
    }

    /// Monomial substitution `z^alpha -> w^(A * alpha)` for unimodular `a`;
    /// equivalently `z_i` is replaced by the monomial with exponent column i
    /// of `a`.
    pub fn monomial_substitute(&self, a: &IntegerMatrix) -> Result<Self> {
        if a.rows() != self.arity || a.cols() != self.arity {
            return Err(Error::ArityMismatch {
                expected: self.arity,
                found: a.rows().max(a.cols()),
            });
        }
        if !a.is_unimodular() {
            return Err(Error::NotUnimodular);
        }
        let mut out = Self::zero(self.arity);
        for (e, c) in &self.terms {
            let image = a.apply_i64(e.entries())?;
            let exps: Vec<i64> = image
                .iter()
                .map(|b| i64::try_from(b).expect("substituted exponent overflows i64"))
                .collect();
            out.insert_term(ExponentVector::new(exps), c.clone());
        }
        Ok(out)
    }

    /// Truncation to a face of the Newton polytope of this polynomial.
    pub fn truncate_to_face(&self, face: &Face) -> Result<Self> {
        if face.polytope().ambient_dim() != self.arity
            || face.polytope().generators() != self.support().as_slice()
        {
            return Err(Error::FaceMismatch);
        }
        let keep: std::collections::BTreeSet<_> = face.support_points().into_iter().collect();
        Ok(LaurentPolynomial {
            arity: self.arity,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| keep.contains(*e))
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        })
    }

    /// Truncation by a face of the polytope of the projection of the support
    /// onto `coords`: keeps the terms whose projected exponent lies on the
    /// face.
    pub fn truncate_to_projected_face(&self, face: &Face, coords: &[usize]) -> Result<Self> {
        if face.polytope().ambient_dim() != coords.len() {
            return Err(Error::FaceMismatch);
        }
        let mut projected: Vec<ExponentVector> =
            self.terms.keys().map(|e| e.project(coords)).collect();
        projected.sort();
        projected.dedup();
        if face.polytope().generators() != projected.as_slice() {
            return Err(Error::FaceMismatch);
        }
        let keep: std::collections::BTreeSet<_> = face.support_points().into_iter().collect();
        Ok(LaurentPolynomial {
            arity: self.arity,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| keep.contains(&e.project(coords)))
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        })
    }

    /// Componentwise minimum of the support exponents (None for zero).
    pub fn min_exponents(&self) -> Option<Vec<i64>> {
        let mut it = self.terms.keys();
        let first = it.next()?.entries().to_vec();
        Some(it.fold(first, |acc, e| {
            acc.iter()
                .zip(e.entries())
                .map(|(a, b)| (*a).min(*b))
                .collect()
        }))
    }

    /// Multiply by the minimal monomial that clears all negative exponents,
    /// producing an ordinary polynomial with the same torus zero set.
    pub fn clear_denominators(&self) -> Self {
        match self.min_exponents() {
            None => self.clone(),
            Some(mins) => {
                let shift: Vec<i64> = mins.iter().map(|&m| if m < 0 { -m } else { 0 }).collect();
                if shift.iter().all(|&s| s == 0) {
                    self.clone()
                } else {
                    self.mul_monomial(&ExponentVector::new(shift), &Rational::one())
                }
            }
        }
    }

    /// Remove integer content and normalize the sign so that the leading
    /// coefficient (in graded-lex order) is positive. Returns zero unchanged.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut num_gcd = BigInt::zero();
        let mut den_lcm = BigInt::one();
        for c in self.terms.values() {
            num_gcd = num_gcd.gcd(c.numer());
            den_lcm = den_lcm.lcm(c.denom());
        }
        let scale = Rational::new(den_lcm, num_gcd);
        let mut out = self.scale(&scale);
        let lead_negative = out
            .terms
            .iter()
            .next_back()
            .map(|(_, c)| c.is_negative())
            .unwrap_or(false);
        if lead_negative {
            out = out.negate();
        }
        out
    }

    /// Rename/permute variables: entry i of the result exponent is taken from
    /// position `positions[i]` of the source exponent. All source exponents
    /// outside `positions` must be zero.
    pub fn restrict_variables(&self, positions: &[usize]) -> Result<Self> {
        let keep: std::collections::BTreeSet<usize> = positions.iter().copied().collect();
        for e in self.terms.keys() {
            for i in 0..self.arity {
                if !keep.contains(&i) && e.get(i) != 0 {
                    return Err(Error::IndexOutOfRange {
                        index: i,
                        arity: positions.len(),
                    });
                }
            }
        }
        let mut out = Self::zero(positions.len());
        for (e, c) in &self.terms {
            out.insert_term(e.project(positions), c.clone());
        }
        Ok(out)
    }

    /// Embed into a larger variable set: variable i of self becomes variable
    /// `positions[i]` of the result.
    pub fn embed(&self, arity: usize, positions: &[usize]) -> Result<Self> {
        if positions.len() != self.arity {
            return Err(Error::ArityMismatch {
                expected: self.arity,
                found: positions.len(),
            });
        }
        let mut out = Self::zero(arity);
        for (e, c) in &self.terms {
            let mut exp = vec![0i64; arity];
            for (i, &p) in positions.iter().enumerate() {
                exp[p] = e.get(i);
            }
            out.insert_term(ExponentVector::new(exp), c.clone());
        }
        Ok(out)
    }

    /// Render with the given variable names: descending graded-lex term
    /// order, `*` between factors, `^` for exponents.
    pub fn format(&self, names: &[&str]) -> String {
        assert_eq!(names.len(), self.arity, "variable name count mismatch");
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else if neg {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            out.push_str(&format_term(&c.abs(), e, names));
        }
        out
    }
}

fn format_term(c: &Rational, e: &ExponentVector, names: &[&str]) -> String {
    let mono: Vec<String> = e
        .entries()
        .iter()
        .enumerate()
        .filter(|(_, &k)| k != 0)
        .map(|(i, &k)| {
            if k == 1 {
                names[i].to_string()
            } else {
                format!("{}^{}", names[i], k)
            }
        })
        .collect();
    if mono.is_empty() {
        format_rational(c)
    } else if c.is_one() {
        mono.join("*")
    } else {
        format!("{}*{}", format_rational(c), mono.join("*"))
    }
}

fn format_rational(c: &Rational) -> String {
    if c.denom().is_one() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

// ---------------------------------------------------------------------------
// Expression parser
//
// expr   := ["-"] term { ("+"|"-") term }
// term   := factor { "*" factor }
// factor := primary [ "^" signed-integer ]
// primary:= integer [ "/" integer ] | variable | "(" expr ")"
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Number(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    LParen,
    RParen,
}

struct Lexer {
    tokens: Vec<(Token, usize)>,
    pos: usize,
}

impl Lexer {
    fn tokenize(text: &str) -> Result<Lexer> {
        let mut tokens = Vec::new();
        let bytes: Vec<char> = text.chars().collect();
        let mut i = 0;
        while i < bytes.len() {
            let c = bytes[i];
            let col = i + 1;
            match c {
                ' ' | '\t' | '\r' | '\n' => {
                    i += 1;
                }
                '+' => {
                    tokens.push((Token::Plus, col));
                    i += 1;
                }
                '-' => {
                    tokens.push((Token::Minus, col));
                    i += 1;
                }
                '*' => {
                    tokens.push((Token::Star, col));
                    i += 1;
                }
                '^' => {
                    tokens.push((Token::Caret, col));
                    i += 1;
                }
                '/' => {
                    tokens.push((Token::Slash, col));
                    i += 1;
                }
                '(' => {
                    tokens.push((Token::LParen, col));
                    i += 1;
                }
                ')' => {
                    tokens.push((Token::RParen, col));
                    i += 1;
                }
                '0'..='9' => {
                    let start = i;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                    let s: String = bytes[start..i].iter().collect();
                    tokens.push((Token::Number(s.parse().unwrap()), start + 1));
                }
                c if c.is_ascii_alphabetic() || c == '_' => {
                    let start = i;
                    while i < bytes.len()
                        && (bytes[i].is_ascii_alphanumeric() || bytes[i] == '_')
                    {
                        i += 1;
                    }
                    let s: String = bytes[start..i].iter().collect();
                    tokens.push((Token::Ident(s), start + 1));
                }
                other => {
                    return Err(Error::Syntax {
                        pos: col,
                        msg: format!("unexpected character `{other}`"),
                    })
                }
            }
        }
        Ok(Lexer { tokens, pos: 0 })
    }

    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(t, _)| t)
    }

    fn peek_pos(&self) -> usize {
        self.tokens
            .get(self.pos)
            .map(|&(_, p)| p)
            .unwrap_or_else(|| self.tokens.last().map(|&(_, p)| p + 1).unwrap_or(1))
    }

    fn next(&mut self) -> Option<(Token, usize)> {
        let t = self.tokens.get(self.pos).cloned();
        self.pos += 1;
        t
    }
}

struct Parser<'a> {
    lexer: Lexer,
    vars: &'a [&'a str],
    arity: usize,
}

impl<'a> Parser<'a> {
    fn expr(&mut self) -> Result<LaurentPolynomial> {
        let mut negate_first = false;
        if self.lexer.peek() == Some(&Token::Minus) {
            self.lexer.next();
            negate_first = true;
        }
        let mut acc = self.term()?;
        if negate_first {
            acc = acc.negate();
        }
        loop {
            match self.lexer.peek() {
                Some(Token::Plus) => {
                    self.lexer.next();
                    let t = self.term()?;
                    acc = acc.checked_add(&t)?;
                }
                Some(Token::Minus) => {
                    self.lexer.next();
                    let t = self.term()?;
                    acc = acc.checked_sub(&t)?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<LaurentPolynomial> {
        let mut acc = self.factor()?;
        while self.lexer.peek() == Some(&Token::Star) {
            self.lexer.next();
            let f = self.factor()?;
            acc = acc.checked_mul(&f)?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<LaurentPolynomial> {
        let base = self.primary()?;
        if self.lexer.peek() == Some(&Token::Caret) {
            self.lexer.next();
            let k = self.integer_exponent()?;
            return base.pow(k);
        }
        Ok(base)
    }

    fn integer_exponent(&mut self) -> Result<i64> {
        let pos = self.lexer.peek_pos();
        let mut sign = 1i64;
        if self.lexer.peek() == Some(&Token::Minus) {
            self.lexer.next();
            sign = -1;
        } else if self.lexer.peek() == Some(&Token::Plus) {
            self.lexer.next();
        }
        match self.lexer.next() {
            Some((Token::Number(n), npos)) => {
                if self.lexer.peek() == Some(&Token::Slash) {
                    return Err(Error::NonIntegerExponent { pos: npos });
                }
                let v = i64::try_from(&n).map_err(|_| Error::Syntax {
                    pos: npos,
                    msg: "exponent out of range".into(),
                })?;
                Ok(sign * v)
            }
            _ => Err(Error::NonIntegerExponent { pos }),
        }
    }

    fn primary(&mut self) -> Result<LaurentPolynomial> {
        let pos = self.lexer.peek_pos();
        match self.lexer.next() {
            Some((Token::Number(n), _)) => {
                let mut value = Rational::from(n);
                if self.lexer.peek() == Some(&Token::Slash) {
                    self.lexer.next();
                    let dpos = self.lexer.peek_pos();
                    match self.lexer.next() {
                        Some((Token::Number(d), _)) if !d.is_zero() => {
                            value /= Rational::from(d);
                        }
                        Some((Token::Number(_), _)) => {
                            return Err(Error::Syntax {
                                pos: dpos,
                                msg: "zero denominator".into(),
                            })
                        }
                        _ => {
                            return Err(Error::Syntax {
                                pos: dpos,
                                msg: "expected integer denominator".into(),
                            })
                        }
                    }
                }
                Ok(LaurentPolynomial::constant(self.arity, value))
            }
            Some((Token::Ident(name), ipos)) => {
                match self.vars.iter().position(|&v| v == name) {
                    Some(i) => LaurentPolynomial::variable(self.arity, i),
                    None => Err(Error::UnknownVariable { name, pos: ipos }),
                }
            }
            Some((Token::LParen, _)) => {
                let e = self.expr()?;
                match self.lexer.next() {
                    Some((Token::RParen, _)) => Ok(e),
                    other => Err(Error::Syntax {
                        pos: other.map(|(_, p)| p).unwrap_or(pos),
                        msg: "expected `)`".into(),
                    }),
                }
            }
            Some((tok, tpos)) => Err(Error::Syntax {
                pos: tpos,
                msg: format!("unexpected token `{tok:?}`"),
            }),
            None => Err(Error::Syntax {
                pos,
                msg: "unexpected end of expression".into(),
            }),
        }
    }
}

/// Parse an expression over the named variables into canonical form.
pub fn parse(text: &str, vars: &[&str]) -> Result<LaurentPolynomial> {
    let lexer = Lexer::tokenize(text)?;
    let mut parser = Parser {
        lexer,
        vars,
        arity: vars.len(),
    };
    let p = parser.expr()?;
    if let Some(tok) = parser.lexer.peek() {
        return Err(Error::Syntax {
            pos: parser.lexer.peek_pos(),
            msg: format!("unexpected token `{tok:?}`"),
        });
    }
    Ok(p)
}
