//! Exact ideal computations over the rationals: Buchberger Groebner bases
//! with the Gebauer-Moeller pair criteria, monomial saturation, and variable
//! elimination through block orders.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::laurent::{ExponentVector, LaurentPolynomial};

/// Total order on monomials, compatible with multiplication.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MonomialOrder {
    Lex,
    GrevLex,
    /// Elimination order: flagged variables form the first block; both blocks
    /// are compared graded-reverse-lexicographically.
    Block { eliminate: Vec<bool> },
}

impl MonomialOrder {
    pub fn block(arity: usize, eliminate: &[usize]) -> Self {
        let mut mask = vec![false; arity];
        for &i in eliminate {
            mask[i] = true;
        }
        MonomialOrder::Block { eliminate: mask }
    }

    fn cmp(&self, a: &[i64], b: &[i64]) -> Ordering {
        match self {
            MonomialOrder::Lex => a.cmp(b),
            MonomialOrder::GrevLex => grevlex(a, b, None, true),
            MonomialOrder::Block { eliminate } => grevlex(a, b, Some(eliminate), true)
                .then_with(|| grevlex(a, b, Some(eliminate), false)),
        }
    }
}

/// Graded-reverse-lex on the coordinates where `mask[i] == flag` (all
/// coordinates when `mask` is None).
fn grevlex(a: &[i64], b: &[i64], mask: Option<&[bool]>, flag: bool) -> Ordering {
    let keep = |i: usize| mask.map_or(true, |m| m[i] == flag);
    let da: i64 = (0..a.len()).filter(|&i| keep(i)).map(|i| a[i]).sum();
    let db: i64 = (0..b.len()).filter(|&i| keep(i)).map(|i| b[i]).sum();
    da.cmp(&db).then_with(|| {
        for i in (0..a.len()).rev() {
            if keep(i) && a[i] != b[i] {
                return if a[i] < b[i] {
                    Ordering::Greater
                } else {
                    Ordering::Less
                };
            }
        }
        Ordering::Equal
    })
}

/// Resource limits for Groebner computations.
#[derive(Clone, Debug)]
pub struct IdealOptions {
    /// Maximum number of S-pairs reduced before the computation aborts with
    /// an error rather than a wrong answer.
    pub spair_cap: usize,
}

impl Default for IdealOptions {
    fn default() -> Self {
        IdealOptions { spair_cap: 1_000_000 }
    }
}

// ---------------------------------------------------------------------------
// internal dense-ordered polynomial representation
// ---------------------------------------------------------------------------

/// Term list sorted descending under the active order.
#[derive(Clone, Debug, PartialEq)]
struct GbPoly {
    terms: Vec<(Vec<i64>, BigRational)>,
}

impl GbPoly {
    fn from_laurent(p: &LaurentPolynomial, order: &MonomialOrder) -> Self {
        let mut terms: Vec<(Vec<i64>, BigRational)> = p
            .terms()
            .map(|(e, c)| (e.entries().to_vec(), c.clone()))
            .collect();
        terms.sort_by(|x, y| order.cmp(&y.0, &x.0));
        GbPoly { terms }
    }

    fn to_laurent(&self, arity: usize) -> LaurentPolynomial {
        LaurentPolynomial::from_terms(
            arity,
            self.terms
                .iter()
                .map(|(e, c)| (ExponentVector::new(e.clone()), c.clone())),
        )
        .expect("internal terms are arity-consistent")
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn lm(&self) -> &[i64] {
        &self.terms[0].0
    }

    fn lc(&self) -> &BigRational {
        &self.terms[0].1
    }

    /// self - c * x^shift * g, merging the two sorted term lists.
    fn sub_mul(&self, c: &BigRational, shift: &[i64], g: &GbPoly, order: &MonomialOrder) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() + g.terms.len());
        let mut i = 0;
        let mut j = 0;
        while i < self.terms.len() && j < g.terms.len() {
            let ge: Vec<i64> = g.terms[j]
                .0
                .iter()
                .zip(shift)
                .map(|(a, b)| a + b)
                .collect();
            match order.cmp(&self.terms[i].0, &ge) {
                Ordering::Greater => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push((ge, -(c * &g.terms[j].1)));
                    j += 1;
                }
                Ordering::Equal => {
                    let coeff = &self.terms[i].1 - c * &g.terms[j].1;
                    if !coeff.is_zero() {
                        out.push((ge, coeff));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        for (e, k) in &g.terms[j..] {
            let ge: Vec<i64> = e.iter().zip(shift).map(|(a, b)| a + b).collect();
            out.push((ge, -(c * k)));
        }
        GbPoly { terms: out }
    }

    /// Clear rational denominators and integer content; make the leading
    /// coefficient positive.
    fn normalize_primitive(&mut self) {
        if self.terms.is_empty() {
            return;
        }
        let mut num_gcd = BigInt::zero();
        let mut den_lcm = BigInt::one();
        for (_, c) in &self.terms {
            num_gcd = num_integer::Integer::gcd(&num_gcd, c.numer());
            den_lcm = num_integer::Integer::lcm(&den_lcm, c.denom());
        }
        let mut scale = BigRational::new(den_lcm, num_gcd);
        if self.terms[0].1.is_negative() {
            scale = -scale;
        }
        for (_, c) in &mut self.terms {
            *c *= &scale;
        }
    }

    /// Scale so the leading coefficient is one.
    fn make_monic(&mut self) {
        if self.terms.is_empty() {
            return;
        }
        let lc = self.terms[0].1.clone();
        for (_, c) in &mut self.terms {
            *c /= &lc;
        }
    }
}

fn divides(a: &[i64], b: &[i64]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn lcm_exp(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| (*x).max(*y)).collect()
}

/// Fully reduce `f` modulo `basis`: the result has no term divisible by any
/// basis leading monomial. Deterministic (first divisor in basis order).
fn normal_form(mut f: GbPoly, basis: &[GbPoly], order: &MonomialOrder) -> GbPoly {
    let mut out: Vec<(Vec<i64>, BigRational)> = Vec::new();
    'outer: while !f.is_zero() {
        let (flm, flc) = (f.terms[0].0.clone(), f.terms[0].1.clone());
        for g in basis {
            if !g.is_zero() && divides(g.lm(), &flm) {
                let shift: Vec<i64> = flm.iter().zip(g.lm()).map(|(a, b)| a - b).collect();
                let c = &flc / g.lc();
                f = f.sub_mul(&c, &shift, g, order);
                continue 'outer;
            }
        }
        out.push(f.terms.remove(0));
    }
    GbPoly { terms: out }
}

fn s_polynomial(f: &GbPoly, g: &GbPoly, order: &MonomialOrder) -> GbPoly {
    let l = lcm_exp(f.lm(), g.lm());
    let shift_f: Vec<i64> = l.iter().zip(f.lm()).map(|(a, b)| a - b).collect();
    let shift_g: Vec<i64> = l.iter().zip(g.lm()).map(|(a, b)| a - b).collect();
    // f/lc(f) * x^shift_f - g/lc(g) * x^shift_g
    let scaled_f = GbPoly {
        terms: f
            .terms
            .iter()
            .map(|(e, c)| {
                (
                    e.iter().zip(&shift_f).map(|(a, b)| a + b).collect(),
                    c / f.lc(),
                )
            })
            .collect(),
    };
    let one = BigRational::one() / g.lc();
    scaled_f.sub_mul(&one, &shift_g, g, order)
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Vec<i64>,
}

/// Gebauer-Moeller pair update: install pairs (i, t) for the new basis
/// element t, pruning with the standard M, F, and B criteria.
fn update_pairs(pairs: &mut Vec<Pair>, basis: &[GbPoly], t: usize) {
    let lt = basis[t].lm();
    let mut fresh: Vec<(Pair, bool)> = (0..t)
        .filter(|&i| !basis[i].is_zero())
        .map(|i| {
            let l = lcm_exp(basis[i].lm(), lt);
            let coprime = l
                .iter()
                .zip(basis[i].lm().iter().zip(lt))
                .all(|(l, (a, b))| *l == a + b);
            (
                Pair {
                    i,
                    j: t,
                    lcm: l,
                },
                coprime,
            )
        })
        .collect();

    // criterion M: drop (i, t) when another new pair's lcm strictly divides
    let keep_m: Vec<bool> = fresh
        .iter()
        .map(|(p, _)| {
            !fresh.iter().any(|(q, _)| {
                q.lcm != p.lcm && divides(&q.lcm, &p.lcm)
            })
        })
        .collect();
    let mut kept: Vec<(Pair, bool)> = fresh
        .drain(..)
        .zip(keep_m)
        .filter(|(_, keep)| *keep)
        .map(|(p, _)| p)
        .collect();

    // criterion F: one pair per lcm class; a coprime member kills the class
    kept.sort_by(|(a, _), (b, _)| a.lcm.cmp(&b.lcm).then(a.i.cmp(&b.i)));
    let mut new_pairs: Vec<Pair> = Vec::new();
    let mut idx = 0;
    while idx < kept.len() {
        let mut end = idx + 1;
        while end < kept.len() && kept[end].0.lcm == kept[idx].0.lcm {
            end += 1;
        }
        let class_coprime = kept[idx..end].iter().any(|(_, c)| *c);
        if !class_coprime {
            new_pairs.push(kept[idx].0.clone());
        }
        idx = end;
    }

    // criterion B: prune old pairs strictly refined by the new element
    pairs.retain(|p| {
        !(divides(lt, &p.lcm)
            && lcm_exp(basis[p.i].lm(), lt) != p.lcm
            && lcm_exp(basis[p.j].lm(), lt) != p.lcm)
    });
    pairs.extend(new_pairs);
}

/// Buchberger's algorithm with normal pair selection. Returns the reduced
/// Groebner basis, primitive-integer normalized, sorted by descending
/// leading monomial.
fn buchberger(
    gens: Vec<GbPoly>,
    order: &MonomialOrder,
    opts: &IdealOptions,
) -> Result<Vec<GbPoly>> {
    let mut basis: Vec<GbPoly> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();
    for mut g in gens {
        g.normalize_primitive();
        if g.is_zero() || basis.contains(&g) {
            continue;
        }
        basis.push(g);
        update_pairs(&mut pairs, &basis, basis.len() - 1);
    }

    let mut reduced_count = 0usize;
    while !pairs.is_empty() {
        // normal strategy: minimal lcm in the active order
        let best = pairs
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| {
                order
                    .cmp(&a.lcm, &b.lcm)
                    .then(a.i.cmp(&b.i))
                    .then(a.j.cmp(&b.j))
            })
            .map(|(k, _)| k)
            .unwrap();
        let pair = pairs.swap_remove(best);

        reduced_count += 1;
        if reduced_count > opts.spair_cap {
            return Err(Error::SPairCapExceeded {
                cap: opts.spair_cap,
            });
        }

        let s = s_polynomial(&basis[pair.i], &basis[pair.j], order);
        let mut h = normal_form(s, &basis, order);
        if !h.is_zero() {
            h.normalize_primitive();
            basis.push(h);
            update_pairs(&mut pairs, &basis, basis.len() - 1);
        }
    }

    Ok(reduce_basis(basis, order))
}

/// Minimalize and tail-reduce a Groebner basis into the reduced basis.
fn reduce_basis(mut basis: Vec<GbPoly>, order: &MonomialOrder) -> Vec<GbPoly> {
    basis.retain(|g| !g.is_zero());
    // minimal: no leading monomial divides another
    let mut keep = vec![true; basis.len()];
    for i in 0..basis.len() {
        if !keep[i] {
            continue;
        }
        for j in 0..basis.len() {
            if i != j
                && keep[j]
                && divides(basis[j].lm(), basis[i].lm())
                && (basis[j].lm() != basis[i].lm() || j < i)
            {
                keep[i] = false;
                break;
            }
        }
    }
    let mut minimal: Vec<GbPoly> = basis
        .into_iter()
        .zip(keep)
        .filter(|(_, k)| *k)
        .map(|(g, _)| g)
        .collect();

    // tail reduction to the unique reduced basis
    loop {
        let mut changed = false;
        for i in 0..minimal.len() {
            let mut others: Vec<GbPoly> = Vec::with_capacity(minimal.len() - 1);
            for (j, g) in minimal.iter().enumerate() {
                if j != i {
                    others.push(g.clone());
                }
            }
            let mut reduced = normal_form(minimal[i].clone(), &others, order);
            reduced.make_monic();
            let mut old = minimal[i].clone();
            old.make_monic();
            if reduced != old {
                changed = true;
            }
            minimal[i] = reduced;
        }
        minimal.retain(|g| !g.is_zero());
        if !changed {
            break;
        }
    }

    for g in &mut minimal {
        g.normalize_primitive();
    }
    minimal.sort_by(|a, b| order.cmp(b.lm(), a.lm()));
    minimal
}

// ---------------------------------------------------------------------------
// public ideal interface
// ---------------------------------------------------------------------------

/// Finitely generated ideal of the ordinary polynomial ring (all generator
/// exponents nonnegative), with its monomial-order metadata.
#[derive(Clone, Debug)]
pub struct PolynomialIdeal {
    arity: usize,
    generators: Vec<LaurentPolynomial>,
    order: MonomialOrder,
    reduced: bool,
}

impl PolynomialIdeal {
    pub fn new(
        arity: usize,
        generators: Vec<LaurentPolynomial>,
        order: MonomialOrder,
    ) -> Result<Self> {
        let mut gens = Vec::new();
        for g in generators {
            if g.arity() != arity {
                return Err(Error::ArityMismatch {
                    expected: arity,
                    found: g.arity(),
                });
            }
            if let Some(mins) = g.min_exponents() {
                if mins.iter().any(|&m| m < 0) {
                    return Err(Error::InvalidMonomial(
                        "ideal generators must have nonnegative exponents".into(),
                    ));
                }
            }
            if !g.is_zero() {
                gens.push(g);
            }
        }
        Ok(PolynomialIdeal {
            arity,
            generators: gens,
            order,
            reduced: false,
        })
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn generators(&self) -> &[LaurentPolynomial] {
        &self.generators
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.generators.is_empty()
    }

    /// The reduced Groebner basis of this ideal with respect to its order.
    pub fn groebner(&self, opts: &IdealOptions) -> Result<PolynomialIdeal> {
        if self.reduced {
            return Ok(self.clone());
        }
        let gens: Vec<GbPoly> = self
            .generators
            .iter()
            .map(|g| GbPoly::from_laurent(g, &self.order))
            .collect();
        let basis = buchberger(gens, &self.order, opts)?;
        Ok(PolynomialIdeal {
            arity: self.arity,
            generators: basis.iter().map(|g| g.to_laurent(self.arity)).collect(),
            order: self.order.clone(),
            reduced: true,
        })
    }

    /// Normal form of `f` modulo the reduced basis of this ideal.
    pub fn reduce(&self, f: &LaurentPolynomial, opts: &IdealOptions) -> Result<LaurentPolynomial> {
        let gb = self.groebner(opts)?;
        let basis: Vec<GbPoly> = gb
            .generators
            .iter()
            .map(|g| GbPoly::from_laurent(g, &gb.order))
            .collect();
        let nf = normal_form(GbPoly::from_laurent(f, &gb.order), &basis, &gb.order);
        Ok(nf.to_laurent(self.arity))
    }

    /// True iff `1` belongs to the ideal.
    pub fn is_trivial(&self, opts: &IdealOptions) -> Result<bool> {
        let gb = self.groebner(opts)?;
        Ok(gb
            .generators
            .iter()
            .any(|g| g.num_terms() == 1 && g.support()[0].is_zero()))
    }

    /// Saturation `I : m^infinity` by a nonconstant monomial, via an
    /// auxiliary variable y with y*m - 1 and elimination of y.
    pub fn saturate_by_monomial(
        &self,
        m: &ExponentVector,
        opts: &IdealOptions,
    ) -> Result<PolynomialIdeal> {
        if m.arity() != self.arity {
            return Err(Error::ArityMismatch {
                expected: self.arity,
                found: m.arity(),
            });
        }
        if m.is_zero() || m.entries().iter().any(|&e| e < 0) {
            return Err(Error::InvalidMonomial(
                "saturation requires a nonconstant monomial with nonnegative exponents".into(),
            ));
        }
        let big = self.arity + 1;
        let embed_positions: Vec<usize> = (0..self.arity).collect();
        let mut gens: Vec<LaurentPolynomial> = self
            .generators
            .iter()
            .map(|g| g.embed(big, &embed_positions))
            .collect::<Result<_>>()?;
        let mut ym = m.entries().to_vec();
        ym.push(1);
        let ym_poly = LaurentPolynomial::from_terms(
            big,
            [
                (ExponentVector::new(ym), BigRational::one()),
                (ExponentVector::zeros(big), -BigRational::one()),
            ],
        )?;
        gens.push(ym_poly);
        let lifted = PolynomialIdeal::new(big, gens, MonomialOrder::block(big, &[self.arity]))?;
        let gb = lifted.groebner(opts)?;
        let kept: Vec<LaurentPolynomial> = gb
            .generators
            .iter()
            .filter(|g| g.support().iter().all(|e| e.get(self.arity) == 0))
            .map(|g| g.restrict_variables(&embed_positions))
            .collect::<Result<_>>()?;
        PolynomialIdeal::new(self.arity, kept, self.order.clone())
    }

    /// Generators of the elimination ideal `I` intersected with the subring
    /// of polynomials in the `keep` variables only.
    pub fn eliminate(&self, keep: &[usize], opts: &IdealOptions) -> Result<PolynomialIdeal> {
        for &i in keep {
            if i >= self.arity {
                return Err(Error::IndexOutOfRange {
                    index: i,
                    arity: self.arity,
                });
            }
        }
        let eliminate: Vec<usize> = (0..self.arity).filter(|i| !keep.contains(i)).collect();
        let order = MonomialOrder::block(self.arity, &eliminate);
        let blocked = PolynomialIdeal {
            arity: self.arity,
            generators: self.generators.clone(),
            order,
            reduced: false,
        };
        let gb = blocked.groebner(opts)?;
        let kept: Vec<LaurentPolynomial> = gb
            .generators
            .iter()
            .filter(|g| {
                g.support()
                    .iter()
                    .all(|e| eliminate.iter().all(|&i| e.get(i) == 0))
            })
            .cloned()
            .collect();
        PolynomialIdeal::new(self.arity, kept, self.order.clone())
    }

    /// Radical membership: true iff `f` vanishes on the zero set of the
    /// ideal, tested as triviality of `I + (y*f - 1)`.
    pub fn vanishes_on_zero_set(
        &self,
        f: &LaurentPolynomial,
        opts: &IdealOptions,
    ) -> Result<bool> {
        if f.arity() != self.arity {
            return Err(Error::ArityMismatch {
                expected: self.arity,
                found: f.arity(),
            });
        }
        let big = self.arity + 1;
        let embed_positions: Vec<usize> = (0..self.arity).collect();
        let mut gens: Vec<LaurentPolynomial> = self
            .generators
            .iter()
            .map(|g| g.embed(big, &embed_positions))
            .collect::<Result<_>>()?;
        let y = LaurentPolynomial::variable(big, self.arity)?;
        let fy = f
            .embed(big, &embed_positions)?
            .checked_mul(&y)?
            .checked_sub(&LaurentPolynomial::one(big))?;
        gens.push(fy);
        PolynomialIdeal::new(big, gens, MonomialOrder::GrevLex)?.is_trivial(opts)
    }
}
