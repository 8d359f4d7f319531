//! Deterministic human- and machine-readable rendering of computation
//! results. Machine mode is one tab-separated record per line.

use std::collections::BTreeMap;

use crate::laurent::{ExponentVector, LaurentPolynomial, Rational};
use crate::lattice::IntegerMatrix;
use crate::series::RadiusEstimate;
use crate::variety::{DiagonalProblem, FaceOutcome, LandauReport, Nondegeneracy};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Human,
    Machine,
}

/// Names t (or t1..tr) for the diagonal variables.
pub fn t_names(rank: usize) -> Vec<String> {
    if rank == 1 {
        vec!["t".to_string()]
    } else {
        (1..=rank).map(|i| format!("t{i}")).collect()
    }
}

/// Names u (or u1..us) for the fiber variables.
pub fn u_names(corank: usize) -> Vec<String> {
    if corank == 1 {
        vec!["u".to_string()]
    } else {
        (1..=corank).map(|i| format!("u{i}")).collect()
    }
}

/// Combined (t, u) names for the transformed coordinates.
pub fn w_names(rank: usize, corank: usize) -> Vec<String> {
    let mut names = t_names(rank);
    names.extend(u_names(corank));
    names
}

fn as_strs(names: &[String]) -> Vec<&str> {
    names.iter().map(String::as_str).collect()
}

fn format_matrix(m: &IntegerMatrix, indent: &str) -> String {
    (0..m.rows())
        .map(|i| {
            let row: Vec<String> = (0..m.cols()).map(|j| m.get(i, j).to_string()).collect();
            format!("{indent}[{}]", row.join(", "))
        })
        .collect::<Vec<_>>()
        .join("\n")
}

fn format_points(points: &[ExponentVector]) -> String {
    points
        .iter()
        .map(|p| {
            let coords: Vec<String> = p.entries().iter().map(|e| e.to_string()).collect();
            format!("({})", coords.join(","))
        })
        .collect::<Vec<_>>()
        .join(";")
}

fn format_generators(gens: &[LaurentPolynomial], names: &[&str]) -> String {
    gens.iter()
        .map(|g| g.format(names))
        .collect::<Vec<_>>()
        .join(" | ")
}

pub fn render_problem_header(vars: &[&str], problem: &DiagonalProblem) -> String {
    let mut out = String::new();
    out.push_str(&format!("f = {}\n", problem.denominator().format(vars)));
    out.push_str(&format!("g = {}\n", problem.numerator().format(vars)));
    out.push_str("Q =\n");
    out.push_str(&format_matrix(problem.q(), "  "));
    out.push('\n');
    out.push_str(&format!(
        "rank r = {}, corank s = {}\n",
        problem.rank(),
        problem.corank()
    ));
    out
}

pub fn render_transform(vars: &[&str], problem: &DiagonalProblem) -> String {
    let wn = w_names(problem.rank(), problem.corank());
    let mut out = render_problem_header(vars, problem);
    out.push_str("B (columns extend Q to a lattice basis) =\n");
    out.push_str(&format_matrix(problem.basis(), "  "));
    out.push('\n');
    out.push_str("A = B^-1 (substitution z = w^A) =\n");
    out.push_str(&format_matrix(problem.inverse_basis(), "  "));
    out.push('\n');
    out.push_str(&format!("w = ({})\n", wn.join(", ")));
    for (i, var) in vars.iter().enumerate() {
        let column: Vec<String> = (0..problem.arity())
            .filter(|&j| !num_traits::Zero::is_zero(problem.inverse_basis().get(j, i)))
            .map(|j| {
                let e = problem.inverse_basis().get(j, i);
                if num_traits::One::is_one(e) {
                    wn[j].clone()
                } else {
                    format!("{}^{}", wn[j], e)
                }
            })
            .collect();
        let image = if column.is_empty() {
            "1".to_string()
        } else {
            column.join("*")
        };
        out.push_str(&format!("  {var} -> {image}\n"));
    }
    out.push_str(&format!(
        "transformed f = {}\n",
        problem.transformed().format(&as_strs(&wn))
    ));
    out
}

pub fn render_nondegeneracy(vars: &[&str], verdict: &Nondegeneracy) -> String {
    match verdict {
        Nondegeneracy::Nondegenerate => "nondegenerate: yes\n".to_string(),
        Nondegeneracy::Degenerate { face, critical_set } => {
            let mut out = String::from("nondegenerate: no\n");
            out.push_str(&format!(
                "witness face: dim {}, support {}\n",
                face.dim(),
                format_points(&face.support_points())
            ));
            out.push_str(&format!(
                "critical set in the torus: {}\n",
                format_generators(critical_set, vars)
            ));
            out
        }
    }
}

/// Full face table of the u-polytope, flagging membership in the t-dependent
/// family.
pub fn render_faces(
    vars: &[&str],
    problem: &DiagonalProblem,
    table: &[(crate::polytope::Face, LaurentPolynomial, bool)],
    format: Format,
) -> String {
    let wn = w_names(problem.rank(), problem.corank());
    let wstrs = as_strs(&wn);
    let mut out = String::new();
    if format == Format::Human {
        out.push_str(&render_transform(vars, problem));
        out.push_str("\nfaces of the u-polytope:\n");
        for (face, trunc, dep) in table {
            out.push_str(&format!(
                "face {}: dim {}, support {}{}\n",
                face.id(),
                face.dim(),
                format_points(&face.support_points()),
                if face.is_improper() { " (improper)" } else { "" },
            ));
            out.push_str(&format!("  truncation = {}\n", trunc.format(&wstrs)));
            out.push_str(&format!(
                "  depends on t: {}\n",
                if *dep { "yes" } else { "no" }
            ));
        }
    } else {
        for (face, trunc, dep) in table {
            out.push_str(&format!(
                "face_id={}\tdim={}\tsupport={}\ttruncation={}\tin_sigma={}\n",
                face.id(),
                face.dim(),
                format_points(&face.support_points()),
                trunc.format(&wstrs),
                if *dep { "yes" } else { "no" }
            ));
        }
    }
    out
}

fn entry_status(outcome: &FaceOutcome) -> &'static str {
    match outcome {
        FaceOutcome::Empty => "empty",
        FaceOutcome::Eliminant(_) => "nonempty",
    }
}

fn entry_generators(outcome: &FaceOutcome, tn: &[&str]) -> String {
    match outcome {
        FaceOutcome::Empty => String::new(),
        FaceOutcome::Eliminant(gens) => format_generators(gens, tn),
    }
}

pub fn render_landau(
    vars: &[&str],
    problem: &DiagonalProblem,
    report: &LandauReport,
    format: Format,
) -> String {
    let tn = t_names(problem.rank());
    let tstrs = as_strs(&tn);
    let wn = w_names(problem.rank(), problem.corank());
    let wstrs = as_strs(&wn);

    if format == Format::Machine {
        let mut out = String::new();
        for entry in &report.entries {
            out.push_str(&format!(
                "face_id={}\tdim={}\tsupport={}\ttruncation={}\tstatus={}\tgenerators={}\n",
                entry.face_id,
                entry.dim,
                format_points(&entry.support),
                entry.truncation.format(&wstrs),
                entry_status(&entry.outcome),
                entry_generators(&entry.outcome, &tstrs),
            ));
        }
        return out;
    }

    let mut out = render_problem_header(vars, problem);
    match &report.nondegeneracy {
        Some(v) => out.push_str(&render_nondegeneracy(vars, v)),
        None => out.push_str("nondegenerate: check skipped\n"),
    }
    if report.is_degenerate() {
        out.push_str("the construction requires a nondegenerate denominator; no faces computed\n");
        return out;
    }
    out.push_str(&format!(
        "transformed f = {}\n",
        problem.transformed().format(&wstrs)
    ));
    out.push_str("\nt-dependent faces of the u-polytope:\n");
    for entry in &report.entries {
        out.push_str(&format!(
            "face {}: dim {}, support {}\n",
            entry.face_id,
            entry.dim,
            format_points(&entry.support)
        ));
        out.push_str(&format!("  truncation = {}\n", entry.truncation.format(&wstrs)));
        match &entry.outcome {
            FaceOutcome::Empty => out.push_str("  L_sigma: empty\n"),
            FaceOutcome::Eliminant(gens) => {
                out.push_str(&format!("  L_sigma: {}\n", format_generators(gens, &tstrs)));
            }
        }
    }
    out.push_str("\nunion L:\n");
    if report.union.is_empty() {
        out.push_str("  (empty)\n");
    } else {
        for g in &report.union {
            out.push_str(&format!("  {}\n", g.format(&tstrs)));
        }
    }
    out
}

pub fn render_diagonal(
    coeffs: &BTreeMap<Vec<i64>, Rational>,
    rank: usize,
    k_max: i64,
    format: Format,
) -> String {
    let fmt_rat = |c: &Rational| -> String {
        if c.denom() == &num_bigint::BigInt::from(1) {
            c.numer().to_string()
        } else {
            format!("{}/{}", c.numer(), c.denom())
        }
    };
    if format == Format::Machine {
        let mut out = String::new();
        for (k, c) in coeffs {
            if !num_traits::Zero::is_zero(c) {
                let ks: Vec<String> = k.iter().map(|x| x.to_string()).collect();
                out.push_str(&format!("k=({})\tc={}\n", ks.join(","), fmt_rat(c)));
            }
        }
        return out;
    }
    let negative_all_zero = coeffs
        .iter()
        .filter(|(k, _)| k.iter().any(|&x| x < 0))
        .all(|(_, c)| num_traits::Zero::is_zero(c));
    if rank == 1 && negative_all_zero {
        let line: Vec<String> = (0..=k_max)
            .map(|k| fmt_rat(coeffs.get(&vec![k]).unwrap_or(&Rational::from_integer(0.into()))))
            .collect();
        return format!("{}\n", line.join(", "));
    }
    let mut out = String::new();
    for (k, c) in coeffs {
        if !num_traits::Zero::is_zero(c) {
            let ks: Vec<String> = k.iter().map(|x| x.to_string()).collect();
            out.push_str(&format!("c[{}] = {}\n", ks.join(","), fmt_rat(c)));
        }
    }
    out
}

pub fn render_radius(estimate: &RadiusEstimate, used: usize) -> String {
    format!(
        "nonzero coefficients used: {}\nradius estimate: {:.6}\ninterval (2 sigma): [{:.6}, {:.6}]\nfit residual: {:.6}\n",
        used, estimate.estimate, estimate.lower, estimate.upper, estimate.residual
    )
}

/// One line per face of the Newton polytope of f comparing the two
/// discriminant routes.
pub fn render_crosscheck_line(
    face_id: usize,
    dim: usize,
    support: &[ExponentVector],
    direct: &FaceOutcome,
    via_transform: &FaceOutcome,
    agree: bool,
    tn: &[&str],
) -> String {
    format!(
        "face_id={}\tdim={}\tsupport={}\tdirect={}\tdirect_gens={}\ttransform={}\ttransform_gens={}\tagree={}\n",
        face_id,
        dim,
        format_points(support),
        entry_status(direct),
        entry_generators(direct, tn),
        entry_status(via_transform),
        entry_generators(via_transform, tn),
        if agree { "yes" } else { "no" }
    )
}

