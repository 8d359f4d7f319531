//! Exact Laurent coefficients of g/f for a vertex-order expansion, complete
//! Q-diagonal extraction, and a floating-point convergence-radius probe.
//!
//! This module is deliberately independent of the discriminant machinery: it
//! computes the same function from the series definition, so the two routes
//! can be compared. All coefficient arithmetic is exact; floating point
//! enters only in `radius_estimate`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::lattice::IntegerMatrix;
use crate::laurent::{ExponentVector, LaurentPolynomial, Rational};
use crate::polytope::NewtonPolytope;

/// Geometric-series expansion data of g/f at a vertex order of the Newton
/// polytope: f = a_v z^v (1 - h) with supp(h) in the pointed cone at v.
#[derive(Clone, Debug)]
pub struct VertexExpansion {
    arity: usize,
    numerator_scaled: LaurentPolynomial,
    kernel: LaurentPolynomial,
    vertex: ExponentVector,
    /// Integer functional strictly positive on the cone away from the apex.
    grading: Vec<i64>,
    kernel_coord_min: Vec<i64>,
    kernel_coord_max: Vec<i64>,
}

impl VertexExpansion {
    /// Expansion of g/f at the component of order `vertex`; `vertex` must be
    /// a vertex of the Newton polytope of f.
    pub fn new(
        f: &LaurentPolynomial,
        g: &LaurentPolynomial,
        vertex: &ExponentVector,
    ) -> Result<Self> {
        if f.is_zero() {
            return Err(Error::EmptySupport);
        }
        if g.arity() != f.arity() || vertex.arity() != f.arity() {
            return Err(Error::ArityMismatch {
                expected: f.arity(),
                found: g.arity().max(vertex.arity()),
            });
        }
        let polytope = NewtonPolytope::of_polynomial(f)?;
        if !polytope.is_vertex(vertex) {
            return Err(Error::NotAVertex {
                point: format!("{:?}", vertex.entries()),
            });
        }
        let lead = f.coefficient(vertex);
        debug_assert!(!lead.is_zero());

        // h = 1 - f / (a_v z^v); support lies in the cone at the vertex
        let inv_lead_mono =
            LaurentPolynomial::monomial(f.arity(), vertex.neg(), Rational::one() / &lead)?;
        let normalized = f.checked_mul(&inv_lead_mono)?;
        let kernel = LaurentPolynomial::one(f.arity()).checked_sub(&normalized)?;

        let grading = grading_functional(&polytope, vertex, &kernel)?;

        let (mut cmin, mut cmax) = (vec![i64::MAX; f.arity()], vec![i64::MIN; f.arity()]);
        for (e, _) in kernel.terms() {
            for i in 0..f.arity() {
                cmin[i] = cmin[i].min(e.get(i));
                cmax[i] = cmax[i].max(e.get(i));
            }
        }
        if kernel.is_zero() {
            cmin = vec![0; f.arity()];
            cmax = vec![0; f.arity()];
        }

        let numerator_scaled = g.checked_mul(&inv_lead_mono)?;

        Ok(VertexExpansion {
            arity: f.arity(),
            numerator_scaled,
            kernel,
            vertex: vertex.clone(),
            grading,
            kernel_coord_min: cmin,
            kernel_coord_max: cmax,
        })
    }

    pub fn vertex(&self) -> &ExponentVector {
        &self.vertex
    }

    pub fn grading(&self) -> &[i64] {
        &self.grading
    }

    /// All Laurent coefficients c_beta of g/f with lo <= beta <= hi
    /// componentwise, for the expansion converging on this vertex component.
    pub fn coefficients(&self, lo: &[i64], hi: &[i64]) -> Result<CoefficientTable> {
        if lo.len() != self.arity || hi.len() != self.arity {
            return Err(Error::ArityMismatch {
                expected: self.arity,
                found: lo.len().max(hi.len()),
            });
        }
        if lo.iter().zip(hi).any(|(a, b)| a > b) {
            return Err(Error::EmptyBox);
        }
        let grade_max: i64 = self
            .grading
            .iter()
            .zip(lo.iter().zip(hi))
            .map(|(&l, (&a, &b))| (l * a).max(l * b))
            .sum();

        let prune = |p: &LaurentPolynomial| -> LaurentPolynomial {
            LaurentPolynomial::from_terms(
                self.arity,
                p.terms().filter_map(|(e, c)| {
                    let grade: i64 = self
                        .grading
                        .iter()
                        .zip(e.entries())
                        .map(|(&l, &x)| l * x)
                        .sum();
                    if grade > grade_max {
                        return None;
                    }
                    for i in 0..self.arity {
                        // coordinates that the kernel can only move one way
                        if self.kernel_coord_min[i] >= 0 && e.get(i) > hi[i] {
                            return None;
                        }
                        if self.kernel_coord_max[i] <= 0 && e.get(i) < lo[i] {
                            return None;
                        }
                    }
                    Some((e.clone(), c.clone()))
                }),
            )
            .expect("pruned terms keep the arity")
        };

        let mut table = CoefficientTable {
            lo: lo.to_vec(),
            hi: hi.to_vec(),
            nonzero: BTreeMap::new(),
        };
        let in_box = |e: &ExponentVector| {
            e.entries()
                .iter()
                .zip(lo.iter().zip(hi))
                .all(|(&x, (&a, &b))| a <= x && x <= b)
        };

        let mut current = prune(&self.numerator_scaled);
        while !current.is_zero() {
            for (e, c) in current.terms() {
                if in_box(e) {
                    let entry = table
                        .nonzero
                        .entry(e.clone())
                        .or_insert_with(Rational::zero);
                    *entry += c;
                }
            }
            current = prune(&current.checked_mul(&self.kernel)?);
        }
        table.nonzero.retain(|_, c| !c.is_zero());
        Ok(table)
    }

    /// Complete Q-diagonal coefficients c_{Q.k} for all k with |k_i| <= k_max.
    pub fn diagonal_coefficients(
        &self,
        q: &IntegerMatrix,
        k_max: i64,
    ) -> Result<BTreeMap<Vec<i64>, Rational>> {
        if q.cols() != self.arity {
            return Err(Error::ArityMismatch {
                expected: self.arity,
                found: q.cols(),
            });
        }
        if k_max < 0 {
            return Err(Error::EmptyBox);
        }
        let r = q.rows();
        let qt = q.transpose();
        let mut targets: Vec<(Vec<i64>, ExponentVector)> = Vec::new();
        let mut k = vec![-k_max; r];
        loop {
            let image = qt.apply_i64(&k)?;
            let exp: Vec<i64> = image
                .iter()
                .map(|b| i64::try_from(b).expect("diagonal exponent overflows i64"))
                .collect();
            targets.push((k.clone(), ExponentVector::new(exp)));
            // odometer over the k-box
            let mut pos = 0;
            loop {
                if pos == r {
                    break;
                }
                k[pos] += 1;
                if k[pos] <= k_max {
                    break;
                }
                k[pos] = -k_max;
                pos += 1;
            }
            if pos == r {
                break;
            }
        }
        if r == 0 {
            // rank zero: the diagonal is the single coefficient at the origin
            let lo = vec![0; self.arity];
            let table = self.coefficients(&lo, &lo)?;
            let mut out = BTreeMap::new();
            out.insert(
                Vec::new(),
                table.get(&ExponentVector::zeros(self.arity)).unwrap(),
            );
            return Ok(out);
        }
        let mut lo = vec![i64::MAX; self.arity];
        let mut hi = vec![i64::MIN; self.arity];
        for (_, e) in &targets {
            for i in 0..self.arity {
                lo[i] = lo[i].min(e.get(i));
                hi[i] = hi[i].max(e.get(i));
            }
        }
        let table = self.coefficients(&lo, &hi)?;
        Ok(targets
            .into_iter()
            .map(|(k, e)| (k, table.get(&e).expect("diagonal exponent is inside the box")))
            .collect())
    }
}

/// Sum of the primitive inner normals of the facets through the vertex; falls
/// back to a small search if the polytope is degenerate.
fn grading_functional(
    polytope: &NewtonPolytope,
    vertex: &ExponentVector,
    kernel: &LaurentPolynomial,
) -> Result<Vec<i64>> {
    let n = vertex.arity();
    let positive_on_kernel = |l: &[i64]| {
        kernel.terms().all(|(e, _)| {
            l.iter()
                .zip(e.entries())
                .map(|(&a, &b)| a as i128 * b as i128)
                .sum::<i128>()
                >= 1
        })
    };
    if kernel.is_zero() {
        return Ok(vec![0; n]);
    }
    let mut sum = vec![0i64; n];
    for facet in polytope.facets() {
        let value: i128 = facet
            .normal
            .iter()
            .zip(vertex.entries())
            .map(|(&a, &b)| a as i128 * b as i128)
            .sum();
        if value == facet.offset as i128 {
            for (s, &w) in sum.iter_mut().zip(&facet.normal) {
                *s += w;
            }
        }
    }
    if positive_on_kernel(&sum) {
        return Ok(sum);
    }
    // degenerate fallback: search small integer vectors by increasing norm
    for bound in 1..=6i64 {
        let mut cand = vec![-bound; n];
        loop {
            if positive_on_kernel(&cand) {
                return Ok(cand);
            }
            let mut pos = 0;
            loop {
                if pos == n {
                    break;
                }
                cand[pos] += 1;
                if cand[pos] <= bound {
                    break;
                }
                cand[pos] = -bound;
                pos += 1;
            }
            if pos == n {
                break;
            }
        }
    }
    Err(Error::InvalidMonomial(
        "no grading functional found for the vertex cone".into(),
    ))
}

/// Laurent coefficients over a rectangular exponent box. Entries absent from
/// the map are zero; queries outside the box return None.
#[derive(Clone, Debug)]
pub struct CoefficientTable {
    lo: Vec<i64>,
    hi: Vec<i64>,
    nonzero: BTreeMap<ExponentVector, Rational>,
}

impl CoefficientTable {
    pub fn bounds(&self) -> (&[i64], &[i64]) {
        (&self.lo, &self.hi)
    }

    pub fn get(&self, e: &ExponentVector) -> Option<Rational> {
        let inside = e
            .entries()
            .iter()
            .zip(self.lo.iter().zip(&self.hi))
            .all(|(&x, (&a, &b))| a <= x && x <= b);
        if !inside {
            return None;
        }
        Some(self.nonzero.get(e).cloned().unwrap_or_else(Rational::zero))
    }

    pub fn nonzero_entries(&self) -> impl Iterator<Item = (&ExponentVector, &Rational)> {
        self.nonzero.iter()
    }
}

/// Root-test estimate of a convergence radius from a coefficient sequence.
#[derive(Clone, Copy, Debug)]
pub struct RadiusEstimate {
    pub estimate: f64,
    /// Two-standard-error band of the fitted slope, mapped to the radius.
    pub lower: f64,
    pub upper: f64,
    /// Root-mean-square residual of the log-linear fit.
    pub residual: f64,
}

/// Estimate 1/limsup |c_k|^(1/k) by a least-squares fit of log|c_k| against k
/// over the tail half of the nonzero entries.
pub fn radius_estimate(sequence: &[(i64, Rational)]) -> Result<RadiusEstimate> {
    let nonzero: Vec<(i64, &Rational)> = sequence
        .iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|(k, c)| (*k, c))
        .collect();
    if nonzero.len() < 10 {
        return Err(Error::TooFewCoefficients {
            needed: 10,
            found: nonzero.len(),
        });
    }
    let tail = &nonzero[nonzero.len() / 2..];
    let points: Vec<(f64, f64)> = tail.iter().map(|(k, c)| (*k as f64, ln_abs(c))).collect();
    let m = points.len() as f64;
    let mean_x = points.iter().map(|p| p.0).sum::<f64>() / m;
    let mean_y = points.iter().map(|p| p.1).sum::<f64>() / m;
    let sxx: f64 = points.iter().map(|p| (p.0 - mean_x).powi(2)).sum();
    let sxy: f64 = points
        .iter()
        .map(|p| (p.0 - mean_x) * (p.1 - mean_y))
        .sum();
    let slope = sxy / sxx;
    let intercept = mean_y - slope * mean_x;
    let ss_res: f64 = points
        .iter()
        .map(|p| (p.1 - (intercept + slope * p.0)).powi(2))
        .sum();
    let residual = (ss_res / m).sqrt();
    let se = if points.len() > 2 {
        (ss_res / (m - 2.0) / sxx).sqrt()
    } else {
        0.0
    };
    Ok(RadiusEstimate {
        estimate: (-slope).exp(),
        lower: (-(slope + 2.0 * se)).exp(),
        upper: (-(slope - 2.0 * se)).exp(),
        residual,
    })
}

fn ln_abs(c: &Rational) -> f64 {
    ln_big(&c.numer().abs()) - ln_big(&c.denom().abs())
}

fn ln_big(x: &BigInt) -> f64 {
    debug_assert!(x.is_positive());
    match x.to_f64() {
        Some(v) if v.is_finite() => v.ln(),
        _ => {
            // beyond f64 range: use the bit length
            let bits = x.bits();
            let shift = bits.saturating_sub(64);
            let top: BigInt = x >> shift;
            top.to_f64().unwrap().ln() + shift as f64 * std::f64::consts::LN_2
        }
    }
}
