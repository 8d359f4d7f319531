//! The discriminant construction for complete diagonals: nondegeneracy
//! certification, the monomial change of torus coordinates, the family of
//! t-dependent faces, per-face discriminant sets in the t-variables, and
//! their union. A second, independent route through rank conditions on the
//! logarithmic Gauss map is provided for cross-checking.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::elimination::{IdealOptions, MonomialOrder, PolynomialIdeal};
use crate::error::{Error, Result};
use crate::lattice::{extend_to_unimodular, inverse_unimodular, is_saturated, IntegerMatrix};
use crate::laurent::{ExponentVector, LaurentPolynomial, Rational};
use crate::polytope::{Face, NewtonPolytope};

/// A diagonal extraction problem: rational function g/f and the saturated
/// integer tuple Q, together with the derived change of coordinates.
#[derive(Clone, Debug)]
pub struct DiagonalProblem {
    f: LaurentPolynomial,
    g: LaurentPolynomial,
    q: IntegerMatrix,
    basis: IntegerMatrix,
    inverse: IntegerMatrix,
    transformed: LaurentPolynomial,
    rank: usize,
}

impl DiagonalProblem {
    /// Build a problem with the canonical unimodular extension of Q.
    pub fn new(f: LaurentPolynomial, g: LaurentPolynomial, q: IntegerMatrix) -> Result<Self> {
        if !is_saturated(&q) {
            return Err(Error::NotSaturated);
        }
        let basis = extend_to_unimodular(&q)?;
        Self::with_basis(f, g, q, basis)
    }

    /// Build a problem with an explicitly chosen basis extension; the first
    /// r columns of `basis` must be the rows of `q`.
    pub fn with_basis(
        f: LaurentPolynomial,
        g: LaurentPolynomial,
        q: IntegerMatrix,
        basis: IntegerMatrix,
    ) -> Result<Self> {
        let n = f.arity();
        let r = q.rows();
        if q.cols() != n || g.arity() != n {
            return Err(Error::ArityMismatch {
                expected: n,
                found: q.cols().max(g.arity()),
            });
        }
        if f.is_zero() {
            return Err(Error::EmptySupport);
        }
        if !is_saturated(&q) {
            return Err(Error::NotSaturated);
        }
        if basis.rows() != n || basis.cols() != n || !basis.is_unimodular() {
            return Err(Error::NotUnimodular);
        }
        for j in 0..r {
            for i in 0..n {
                if basis.get(i, j) != q.get(j, i) {
                    return Err(Error::InvalidProblem(
                        "basis columns must start with the rows of Q".into(),
                    ));
                }
            }
        }
        let inverse = inverse_unimodular(&basis)?;
        let transformed = f.monomial_substitute(&inverse)?;
        Ok(DiagonalProblem {
            f,
            g,
            q,
            basis,
            inverse,
            transformed,
            rank: r,
        })
    }

    pub fn denominator(&self) -> &LaurentPolynomial {
        &self.f
    }

    pub fn numerator(&self) -> &LaurentPolynomial {
        &self.g
    }

    pub fn q(&self) -> &IntegerMatrix {
        &self.q
    }

    pub fn basis(&self) -> &IntegerMatrix {
        &self.basis
    }

    pub fn inverse_basis(&self) -> &IntegerMatrix {
        &self.inverse
    }

    /// f after the substitution z = w^A, in the variables (t_1..t_r, u_1..u_s).
    pub fn transformed(&self) -> &LaurentPolynomial {
        &self.transformed
    }

    pub fn arity(&self) -> usize {
        self.f.arity()
    }

    /// Rank r of the diagonal.
    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Corank s = n - r.
    pub fn corank(&self) -> usize {
        self.arity() - self.rank
    }

    fn t_positions(&self) -> Vec<usize> {
        (0..self.rank).collect()
    }

    fn u_positions(&self) -> Vec<usize> {
        (self.rank..self.arity()).collect()
    }
}

/// Verdict of the per-face gradient check of the denominator.
#[derive(Clone, Debug)]
pub enum Nondegeneracy {
    Nondegenerate,
    /// A face whose truncation has a torus-critical zero, together with the
    /// reduced generators describing that critical set.
    Degenerate {
        face: Face,
        critical_set: Vec<LaurentPolynomial>,
    },
}

impl Nondegeneracy {
    pub fn is_nondegenerate(&self) -> bool {
        matches!(self, Nondegeneracy::Nondegenerate)
    }
}

fn all_vars_monomial(arity: usize) -> ExponentVector {
    ExponentVector::new(vec![1; arity])
}

/// Critical-system ideal of a truncation: the truncation itself and all its
/// logarithmic derivatives, cleared to ordinary polynomials.
fn critical_ideal(trunc: &LaurentPolynomial, derivative_vars: &[usize]) -> Result<PolynomialIdeal> {
    let n = trunc.arity();
    let mut gens = vec![trunc.clear_denominators()];
    for &i in derivative_vars {
        let d = trunc.log_derivative(i)?;
        if !d.is_zero() {
            gens.push(d.clear_denominators());
        }
    }
    PolynomialIdeal::new(n, gens, MonomialOrder::GrevLex)
}

/// Checks that every face truncation of f has no torus zero with vanishing
/// gradient. Returns the first failing face otherwise.
pub fn check_nondegenerate(f: &LaurentPolynomial, opts: &IdealOptions) -> Result<Nondegeneracy> {
    let polytope = NewtonPolytope::of_polynomial(f)?;
    let n = f.arity();
    let vars: Vec<usize> = (0..n).collect();
    for face in polytope.all_faces() {
        let trunc = f.truncate_to_face(&face)?;
        let ideal = critical_ideal(&trunc, &vars)?;
        let sat = ideal.saturate_by_monomial(&all_vars_monomial(n), opts)?;
        if !sat.is_trivial(opts)? {
            let reduced = sat.groebner(opts)?;
            return Ok(Nondegeneracy::Degenerate {
                face,
                critical_set: reduced.generators().to_vec(),
            });
        }
    }
    Ok(Nondegeneracy::Nondegenerate)
}

/// A face of the Newton polytope of the transformed denominator in the
/// u-variables whose truncation depends on t.
#[derive(Clone, Debug)]
pub struct SigmaFace {
    /// Face id within the deterministic face ordering of the u-polytope.
    pub id: usize,
    pub face: Face,
    /// Truncation of the transformed denominator, in all (t, u) variables.
    pub truncation: LaurentPolynomial,
}

/// Newton polytope of the transformed denominator viewed in the u-variables.
pub fn u_polytope(problem: &DiagonalProblem) -> Result<NewtonPolytope> {
    let u = problem.u_positions();
    let mut points: Vec<ExponentVector> = problem
        .transformed
        .support()
        .iter()
        .map(|e| e.project(&u))
        .collect();
    points.sort();
    points.dedup();
    NewtonPolytope::new(&points)
}

/// All faces of the u-polytope with their truncations and t-dependence flag.
pub fn delta_face_table(
    problem: &DiagonalProblem,
) -> Result<Vec<(Face, LaurentPolynomial, bool)>> {
    let u = problem.u_positions();
    let t = problem.t_positions();
    let delta = u_polytope(problem)?;
    delta
        .all_faces()
        .into_iter()
        .map(|face| {
            let trunc = problem
                .transformed
                .truncate_to_projected_face(&face, &u)?;
            let dep = trunc.depends_on(&t);
            Ok((face, trunc, dep))
        })
        .collect()
}

/// The family of faces whose truncations depend on t.
pub fn sigma_faces(problem: &DiagonalProblem) -> Result<Vec<SigmaFace>> {
    Ok(delta_face_table(problem)?
        .into_iter()
        .filter(|(_, _, dep)| *dep)
        .map(|(face, truncation, _)| SigmaFace {
            id: face.id(),
            face,
            truncation,
        })
        .collect())
}

/// Result of one per-face discriminant computation.
#[derive(Clone, Debug, PartialEq)]
pub enum FaceOutcome {
    /// The critical system has no torus solutions at all.
    Empty,
    /// Reduced generators of the elimination ideal in the t-variables.
    Eliminant(Vec<LaurentPolynomial>),
}

impl FaceOutcome {
    pub fn is_empty(&self) -> bool {
        matches!(self, FaceOutcome::Empty)
    }
}

/// Shared discriminant engine: given a polynomial in (t_1..t_r, u_1..u_s),
/// form its critical system in the u-directions, keep torus solutions only,
/// and eliminate u. Used by both the face family route and the direct route.
fn discriminant_in_t(
    poly: &LaurentPolynomial,
    rank: usize,
    opts: &IdealOptions,
) -> Result<FaceOutcome> {
    let n = poly.arity();
    let u_vars: Vec<usize> = (rank..n).collect();
    let ideal = critical_ideal(poly, &u_vars)?;
    let sat = ideal.saturate_by_monomial(&all_vars_monomial(n), opts)?;
    if sat.is_trivial(opts)? {
        return Ok(FaceOutcome::Empty);
    }
    let keep: Vec<usize> = (0..rank).collect();
    let elim = sat.eliminate(&keep, opts)?;
    let restricted: Vec<LaurentPolynomial> = elim
        .generators()
        .iter()
        .map(|g| g.restrict_variables(&keep))
        .collect::<Result<_>>()?;
    let canonical = PolynomialIdeal::new(rank, restricted, MonomialOrder::GrevLex)?
        .groebner(opts)?;
    Ok(FaceOutcome::Eliminant(canonical.generators().to_vec()))
}

/// Discriminant set of one sigma face: the t-values for which the truncated
/// system has a torus solution in u.
pub fn landau_component(
    problem: &DiagonalProblem,
    sigma: &SigmaFace,
    opts: &IdealOptions,
) -> Result<FaceOutcome> {
    discriminant_in_t(&sigma.truncation, problem.rank, opts)
}

/// The same discriminant computed from the transformed truncation of a face
/// of the Newton polytope of f (the image of that face under the coordinate
/// change).
pub fn landau_face_via_transform(
    problem: &DiagonalProblem,
    face: &Face,
    opts: &IdealOptions,
) -> Result<FaceOutcome> {
    let trunc = problem.f.truncate_to_face(face)?;
    let transformed = trunc.monomial_substitute(&problem.inverse)?;
    discriminant_in_t(&transformed, problem.rank, opts)
}

/// Direct route in the original z-coordinates: the truncation, the rank
/// condition on the logarithmic Gauss map expressed through (r+1)-minors,
/// and the image relations t_j = z^{q_j}; then eliminate z.
pub fn landau_direct(
    problem: &DiagonalProblem,
    face: &Face,
    opts: &IdealOptions,
) -> Result<FaceOutcome> {
    let n = problem.arity();
    let r = problem.rank;
    let f_delta = problem.f.truncate_to_face(face)?;
    let big = n + r;
    let z_pos: Vec<usize> = (0..n).collect();

    let mut gens: Vec<LaurentPolynomial> = Vec::new();
    gens.push(f_delta.clear_denominators().embed(big, &z_pos)?);

    let theta: Vec<LaurentPolynomial> = (0..n)
        .map(|i| f_delta.log_derivative(i))
        .collect::<Result<_>>()?;

    if r + 1 <= n {
        let mut cols = vec![0usize; r + 1];
        let mut minors: Vec<LaurentPolynomial> = Vec::new();
        enumerate_subsets(n, r + 1, &mut cols, 0, 0, &mut |sel| {
            let mut minor = LaurentPolynomial::zero(n);
            for (pos, &ci) in sel.iter().enumerate() {
                if theta[ci].is_zero() {
                    continue;
                }
                let rest: Vec<usize> = sel
                    .iter()
                    .copied()
                    .filter(|&c| c != ci)
                    .collect();
                let mut sub = IntegerMatrix::zero(r, r);
                for row in 0..r {
                    for (jj, &c) in rest.iter().enumerate() {
                        sub.set(row, jj, problem.q.get(row, c).clone());
                    }
                }
                let mut det = sub.determinant().expect("square minor");
                if det.is_zero() {
                    continue;
                }
                if pos % 2 == 1 {
                    det = -det;
                }
                minor = minor
                    .checked_add(&theta[ci].scale(&Rational::from(det)))
                    .expect("matched arity");
            }
            if !minor.is_zero() {
                minors.push(minor);
            }
        });
        for m in minors {
            gens.push(m.clear_denominators().embed(big, &z_pos)?);
        }
    }

    // image-coordinate relations: t_j * z^(q_j)^- - z^(q_j)^+
    for j in 0..r {
        let mut plus = vec![0i64; big];
        let mut minus = vec![0i64; big];
        for i in 0..n {
            let e = i64::try_from(problem.q.get(j, i)).expect("q entry fits i64");
            if e > 0 {
                plus[i] = e;
            } else if e < 0 {
                minus[i] = -e;
            }
        }
        minus[n + j] = 1;
        gens.push(LaurentPolynomial::from_terms(
            big,
            [
                (ExponentVector::new(minus), BigRational::from(BigInt::from(1))),
                (ExponentVector::new(plus), BigRational::from(BigInt::from(-1))),
            ],
        )?);
    }

    let ideal = PolynomialIdeal::new(big, gens, MonomialOrder::GrevLex)?;
    let sat = ideal.saturate_by_monomial(&all_vars_monomial(big), opts)?;
    if sat.is_trivial(opts)? {
        return Ok(FaceOutcome::Empty);
    }
    let keep: Vec<usize> = (n..big).collect();
    let elim = sat.eliminate(&keep, opts)?;
    let restricted: Vec<LaurentPolynomial> = elim
        .generators()
        .iter()
        .map(|g| g.restrict_variables(&keep))
        .collect::<Result<_>>()?;
    let canonical = PolynomialIdeal::new(r, restricted, MonomialOrder::GrevLex)?
        .groebner(opts)?;
    Ok(FaceOutcome::Eliminant(canonical.generators().to_vec()))
}

/// True when two outcomes describe the same zero set in the t-torus, by
/// mutual radical membership of the generators.
pub fn same_zero_set(a: &FaceOutcome, b: &FaceOutcome, opts: &IdealOptions) -> Result<bool> {
    match (a, b) {
        (FaceOutcome::Empty, FaceOutcome::Empty) => Ok(true),
        (FaceOutcome::Empty, FaceOutcome::Eliminant(_))
        | (FaceOutcome::Eliminant(_), FaceOutcome::Empty) => Ok(false),
        (FaceOutcome::Eliminant(ga), FaceOutcome::Eliminant(gb)) => {
            if ga.is_empty() != gb.is_empty() {
                return Ok(false);
            }
            if ga.is_empty() {
                return Ok(true);
            }
            let arity = ga[0].arity();
            let ia = PolynomialIdeal::new(arity, ga.clone(), MonomialOrder::GrevLex)?;
            let ib = PolynomialIdeal::new(arity, gb.clone(), MonomialOrder::GrevLex)?;
            for g in gb {
                if !ia.vanishes_on_zero_set(g, opts)? {
                    return Ok(false);
                }
            }
            for g in ga {
                if !ib.vanishes_on_zero_set(g, opts)? {
                    return Ok(false);
                }
            }
            Ok(true)
        }
    }
}

/// Per-face entry of a full variety computation.
#[derive(Clone, Debug)]
pub struct ReportEntry {
    pub face_id: usize,
    pub dim: usize,
    pub support: Vec<ExponentVector>,
    pub truncation: LaurentPolynomial,
    pub outcome: FaceOutcome,
}

/// Aggregated result: the per-face outcomes and the union of all nonempty
/// eliminant generator sets, in face-id order.
#[derive(Clone, Debug)]
pub struct LandauReport {
    pub nondegeneracy: Option<Nondegeneracy>,
    pub entries: Vec<ReportEntry>,
    pub union: Vec<LaurentPolynomial>,
}

impl LandauReport {
    pub fn is_degenerate(&self) -> bool {
        matches!(
            self.nondegeneracy,
            Some(Nondegeneracy::Degenerate { .. })
        )
    }
}

/// Full construction: certify nondegeneracy (unless skipped), enumerate the
/// t-dependent faces, compute each discriminant, and take the union.
pub fn landau_variety(
    problem: &DiagonalProblem,
    opts: &IdealOptions,
    skip_nondegeneracy_check: bool,
) -> Result<LandauReport> {
    let nondegeneracy = if skip_nondegeneracy_check {
        None
    } else {
        let verdict = check_nondegenerate(&problem.f, opts)?;
        if !verdict.is_nondegenerate() {
            return Ok(LandauReport {
                nondegeneracy: Some(verdict),
                entries: Vec::new(),
                union: Vec::new(),
            });
        }
        Some(verdict)
    };

    let mut entries = Vec::new();
    let mut union = Vec::new();
    for sigma in sigma_faces(problem)? {
        let outcome = landau_component(problem, &sigma, opts)?;
        if let FaceOutcome::Eliminant(gens) = &outcome {
            union.extend(gens.iter().cloned());
        }
        entries.push(ReportEntry {
            face_id: sigma.id,
            dim: sigma.face.dim(),
            support: sigma.face.support_points(),
            truncation: sigma.truncation.clone(),
            outcome,
        });
    }
    Ok(LandauReport {
        nondegeneracy,
        entries,
        union,
    })
}

fn enumerate_subsets(
    m: usize,
    k: usize,
    subset: &mut Vec<usize>,
    depth: usize,
    start: usize,
    visit: &mut impl FnMut(&[usize]),
) {
    if depth == k {
        visit(subset);
        return;
    }
    for i in start..m {
        subset[depth] = i;
        enumerate_subsets(m, k, subset, depth + 1, i + 1, visit);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::parse;

    fn opts() -> IdealOptions {
        IdealOptions::default()
    }

    fn ev(e: &[i64]) -> ExponentVector {
        ExponentVector::new(e.to_vec())
    }

    fn example_one(l: i64) -> DiagonalProblem {
        let names = ["z1", "z2", "z3"];
        let f = parse(
            &format!("1 - z1 - z2^{l}*z3^{l} - z3"),
            &names,
        )
        .unwrap();
        let q = IntegerMatrix::from_rows(&[vec![1, 1, 1]]).unwrap();
        DiagonalProblem::new(f, LaurentPolynomial::one(3), q).unwrap()
    }

    fn example_two() -> DiagonalProblem {
        let names = ["z1", "z2", "z3", "z4"];
        let f = parse("1 - z1 - z2 - z3 - z4", &names).unwrap();
        let q = IntegerMatrix::from_rows(&[vec![1, 1, 0, 0], vec![0, 0, 1, 1]]).unwrap();
        DiagonalProblem::new(f, LaurentPolynomial::one(4), q).unwrap()
    }

    fn bivariate() -> DiagonalProblem {
        let f = parse("1 - z1 - z2", &["z1", "z2"]).unwrap();
        let q = IntegerMatrix::from_rows(&[vec![1, 1]]).unwrap();
        DiagonalProblem::new(f, LaurentPolynomial::one(2), q).unwrap()
    }

    #[test]
    fn transform_example_one() {
        let p = example_one(1);
        let expected = parse("1 - t*u1^-1*u2^-1 - u1*u2 - u2", &["t", "u1", "u2"]).unwrap();
        assert_eq!(p.transformed(), &expected);
        let p2 = example_one(2);
        let expected2 =
            parse("1 - t*u1^-1*u2^-1 - u1^2*u2^2 - u2", &["t", "u1", "u2"]).unwrap();
        assert_eq!(p2.transformed(), &expected2);
    }

    #[test]
    fn transform_example_two() {
        let p = example_two();
        let expected = parse(
            "1 - t1*u1^-1 - u1 - t2*u2^-1 - u2",
            &["t1", "t2", "u1", "u2"],
        )
        .unwrap();
        assert_eq!(p.transformed(), &expected);
    }

    #[test]
    fn transform_bivariate() {
        let p = bivariate();
        let expected = parse("1 - t*u^-1 - u", &["t", "u"]).unwrap();
        assert_eq!(p.transformed(), &expected);
    }

    #[test]
    fn rejects_unsaturated_q() {
        let f = parse("1 - z1 - z2", &["z1", "z2"]).unwrap();
        let q = IntegerMatrix::from_rows(&[vec![2, 0]]).unwrap();
        assert!(matches!(
            DiagonalProblem::new(f, LaurentPolynomial::one(2), q),
            Err(Error::NotSaturated)
        ));
    }

    #[test]
    fn nondegenerate_examples() {
        let f = parse("1 - z1 - z2 - z3 - z4", &["z1", "z2", "z3", "z4"]).unwrap();
        assert!(check_nondegenerate(&f, &opts()).unwrap().is_nondegenerate());
        for l in 1..=2i64 {
            let f = parse(
                &format!("1 - z1 - z2^{l}*z3^{l} - z3"),
                &["z1", "z2", "z3"],
            )
            .unwrap();
            assert!(
                check_nondegenerate(&f, &opts()).unwrap().is_nondegenerate(),
                "l = {l}"
            );
        }
    }

    #[test]
    fn degenerate_square() {
        let f = parse("(1 - z1)^2", &["z1"]).unwrap();
        match check_nondegenerate(&f, &opts()).unwrap() {
            Nondegeneracy::Degenerate { face, critical_set } => {
                assert!(face.is_improper());
                let strings: Vec<String> =
                    critical_set.iter().map(|g| g.format(&["z1"])).collect();
                assert_eq!(strings, vec!["z1 - 1"], "critical point is z1 = 1");
            }
            Nondegeneracy::Nondegenerate => panic!("(1-z1)^2 must be degenerate"),
        }
    }

    #[test]
    fn degenerate_product_square() {
        let f = parse("1 - 2*z1*z2 + z1^2*z2^2", &["z1", "z2"]).unwrap();
        match check_nondegenerate(&f, &opts()).unwrap() {
            Nondegeneracy::Degenerate { face, critical_set } => {
                assert!(face.is_improper());
                let strings: Vec<String> =
                    critical_set.iter().map(|g| g.format(&["z1", "z2"])).collect();
                assert_eq!(strings, vec!["z1*z2 - 1"]);
            }
            Nondegeneracy::Nondegenerate => panic!("(1 - z1 z2)^2 must be degenerate"),
        }
    }

    #[test]
    fn sigma_family_example_one() {
        let p = example_one(1);
        let sigmas = sigma_faces(&p).unwrap();
        // vertex (-1,-1), two incident edges, improper face
        assert_eq!(sigmas.len(), 4);
        let dims: Vec<usize> = sigmas.iter().map(|s| s.face.dim()).collect();
        assert_eq!(dims, vec![0, 1, 1, 2]);
        for s in &sigmas {
            assert!(s.face.contains(&ev(&[-1, -1])));
        }
        let edge = sigmas
            .iter()
            .find(|s| s.face.dim() == 1 && s.face.support_size() == 3)
            .expect("long edge present");
        let expected =
            parse("1 - t*u1^-1*u2^-1 - u1*u2", &["t", "u1", "u2"]).unwrap();
        assert_eq!(edge.truncation, expected);
    }

    #[test]
    fn sigma_family_example_two() {
        let p = example_two();
        let sigmas = sigma_faces(&p).unwrap();
        // faces containing (-1,0) or (0,-1): 2 vertices, 3 edges, improper
        assert_eq!(sigmas.len(), 6);
        let improper_count = sigmas.iter().filter(|s| s.face.is_improper()).count();
        assert_eq!(improper_count, 1);
    }

    #[test]
    fn sigma_family_empty_for_rank_zero() {
        let f = parse("1 - z1 - z2", &["z1", "z2"]).unwrap();
        let q = IntegerMatrix::new(0, 2, vec![]).unwrap();
        let p = DiagonalProblem::new(f, LaurentPolynomial::one(2), q).unwrap();
        assert_eq!(p.rank(), 0);
        assert_eq!(p.transformed(), p.denominator());
        assert!(sigma_faces(&p).unwrap().is_empty());
        let report = landau_variety(&p, &opts(), false).unwrap();
        assert!(report.union.is_empty());
    }

    #[test]
    fn component_of_long_edge_is_4t_minus_1() {
        let p = example_one(1);
        let sigmas = sigma_faces(&p).unwrap();
        let edge = sigmas
            .iter()
            .find(|s| s.face.dim() == 1 && s.face.support_size() == 3)
            .unwrap();
        match landau_component(&p, edge, &opts()).unwrap() {
            FaceOutcome::Eliminant(gens) => {
                let strings: Vec<String> = gens.iter().map(|g| g.format(&["t"])).collect();
                assert_eq!(strings, vec!["4*t - 1"]);
            }
            FaceOutcome::Empty => panic!("long edge must carry the singular point"),
        }
    }

    #[test]
    fn component_of_short_edge_is_empty() {
        let p = example_one(1);
        let sigmas = sigma_faces(&p).unwrap();
        let short = sigmas
            .iter()
            .find(|s| s.face.dim() == 1 && s.face.support_size() == 2)
            .unwrap();
        assert_eq!(
            landau_component(&p, short, &opts()).unwrap(),
            FaceOutcome::Empty
        );
    }

    #[test]
    fn vertex_with_monomial_truncation_is_empty() {
        let p = example_one(1);
        for s in sigma_faces(&p).unwrap() {
            if s.face.dim() == 0 && s.truncation.is_monomial() {
                assert_eq!(
                    landau_component(&p, &s, &opts()).unwrap(),
                    FaceOutcome::Empty
                );
            }
        }
    }

    #[test]
    fn union_example_one_l1() {
        let p = example_one(1);
        let report = landau_variety(&p, &opts(), false).unwrap();
        assert!(report.nondegeneracy.as_ref().unwrap().is_nondegenerate());
        let strings: Vec<String> = report.union.iter().map(|g| g.format(&["t"])).collect();
        assert_eq!(strings, vec!["4*t - 1"]);
        let nonempty = report
            .entries
            .iter()
            .filter(|e| !e.outcome.is_empty())
            .count();
        assert_eq!(nonempty, 1, "exactly one nonempty face");
    }

    #[test]
    fn eliminants_are_nonconstant_integer_primitive() {
        use num_integer::Integer;
        use num_traits::One;
        for p in [example_one(1), example_one(2), example_two()] {
            let report = landau_variety(&p, &opts(), false).unwrap();
            for g in &report.union {
                assert!(!g.is_zero());
                assert!(
                    g.support().iter().any(|e| !e.is_zero()),
                    "eliminant must be nonconstant"
                );
                let mut content = num_bigint::BigInt::zero();
                for (_, c) in g.terms() {
                    assert!(c.denom().is_one(), "integer coefficients");
                    content = content.gcd(c.numer());
                }
                assert!(content.is_one(), "primitive coefficients");
                let lead = g.terms().next_back().unwrap().1;
                assert!(num_traits::Signed::is_positive(lead), "positive lead");
            }
        }
    }

    #[test]
    fn union_bivariate() {
        let p = bivariate();
        let report = landau_variety(&p, &opts(), false).unwrap();
        let strings: Vec<String> = report.union.iter().map(|g| g.format(&["t"])).collect();
        assert_eq!(strings, vec!["4*t - 1"]);
    }

    #[test]
    fn degenerate_input_reports_witness_and_no_faces() {
        let f = parse("(1 - z1)^2", &["z1"]).unwrap();
        let q = IntegerMatrix::from_rows(&[vec![1]]).unwrap();
        let p = DiagonalProblem::new(f, LaurentPolynomial::one(1), q).unwrap();
        let report = landau_variety(&p, &opts(), false).unwrap();
        assert!(report.is_degenerate());
        assert!(report.entries.is_empty());
    }

    #[test]
    fn direct_route_on_vertex_is_empty() {
        let p = example_one(1);
        let polytope = NewtonPolytope::of_polynomial(p.denominator()).unwrap();
        let vertex_face = polytope
            .all_faces()
            .into_iter()
            .find(|f| f.dim() == 0)
            .unwrap();
        assert_eq!(
            landau_direct(&p, &vertex_face, &opts()).unwrap(),
            FaceOutcome::Empty
        );
    }

    #[test]
    fn direct_route_matches_transform_route_on_sigma_preimage() {
        let p = example_one(1);
        let polytope = NewtonPolytope::of_polynomial(p.denominator()).unwrap();
        // face of the f-polytope carrying {1, z1, z2 z3}
        let target = [ev(&[0, 0, 0]), ev(&[1, 0, 0]), ev(&[0, 1, 1])];
        let face = polytope
            .all_faces()
            .into_iter()
            .find(|f| f.support_points() == target)
            .expect("preimage face exists");
        let direct = landau_direct(&p, &face, &opts()).unwrap();
        match &direct {
            FaceOutcome::Eliminant(gens) => {
                let strings: Vec<String> = gens.iter().map(|g| g.format(&["t"])).collect();
                assert_eq!(strings, vec!["4*t - 1"]);
            }
            FaceOutcome::Empty => panic!("expected the singular point"),
        }
        let via_transform = landau_face_via_transform(&p, &face, &opts()).unwrap();
        assert!(same_zero_set(&direct, &via_transform, &opts()).unwrap());
    }

    #[test]
    fn basis_choice_independence_bivariate() {
        let f = parse("1 - z1 - z2", &["z1", "z2"]).unwrap();
        let q = IntegerMatrix::from_rows(&[vec![1, 1]]).unwrap();
        let p1 = DiagonalProblem::new(f.clone(), LaurentPolynomial::one(2), q.clone()).unwrap();
        // alternative extension: add the q-column to the completion column
        let b2 = IntegerMatrix::from_rows(&[vec![1, 1], vec![1, 2]]).unwrap();
        let p2 = DiagonalProblem::with_basis(f, LaurentPolynomial::one(2), q, b2).unwrap();
        assert_ne!(p1.basis(), p2.basis());
        let r1 = landau_variety(&p1, &opts(), false).unwrap();
        let r2 = landau_variety(&p2, &opts(), false).unwrap();
        let o1 = FaceOutcome::Eliminant(r1.union.clone());
        let o2 = FaceOutcome::Eliminant(r2.union.clone());
        assert!(same_zero_set(&o1, &o2, &opts()).unwrap());
    }
}
