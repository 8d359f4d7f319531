//! Batch front end: reads a problem file, dispatches to the computation
//! modules, and prints a deterministic report.
//!
//! Exit codes: 0 success, 1 mathematical failure (e.g. degenerate
//! denominator, failed cross-check), 2 input error, 3 resource cap exceeded.

use std::path::PathBuf;
use std::process::ExitCode;

use qdiag::elimination::IdealOptions;
use qdiag::error::Error;
use qdiag::laurent::ExponentVector;
use qdiag::polytope::NewtonPolytope;
use qdiag::problem::ProblemFile;
use qdiag::report::{self, Format};
use qdiag::series::{radius_estimate, VertexExpansion};
use qdiag::variety::{
    check_nondegenerate, delta_face_table, landau_direct, landau_face_via_transform,
    landau_variety, same_zero_set, Nondegeneracy,
};

const USAGE: &str = "\
usage: qdiag <command> <file> [options]

commands:
  nondeg      certify that f is nondegenerate for its Newton polytope
  transform   print the basis extension and the transformed denominator
  faces       list the faces of the u-polytope with their truncations
  landau      compute every discriminant set and their union
  diagonal    print exact diagonal coefficients (--max K, default 10)
  radius      estimate the diagonal's convergence radius (--max K, default 40)
  crosscheck  compare the face-family route against the rank-condition route

options:
  --max K               coefficient order bound for diagonal/radius
  --skip-nondeg         skip the nondegeneracy certification in `landau`
  --format human|machine
  --spair-cap N         Groebner S-pair budget (default 1000000)
";

struct Args {
    command: String,
    file: PathBuf,
    max: Option<i64>,
    skip_nondeg: bool,
    format: Format,
    spair_cap: Option<usize>,
}

fn parse_args(argv: &[String]) -> Result<Args, String> {
    if argv.len() < 2 {
        return Err("missing command or file".to_string());
    }
    let command = argv[0].clone();
    let file = PathBuf::from(&argv[1]);
    let mut max = None;
    let mut skip_nondeg = false;
    let mut format = Format::Human;
    let mut spair_cap = None;
    let mut i = 2;
    while i < argv.len() {
        match argv[i].as_str() {
            "--max" => {
                i += 1;
                let v = argv.get(i).ok_or("--max needs a value")?;
                max = Some(v.parse().map_err(|_| "--max must be an integer")?);
            }
            "--skip-nondeg" => skip_nondeg = true,
            "--format" => {
                i += 1;
                match argv.get(i).map(String::as_str) {
                    Some("human") => format = Format::Human,
                    Some("machine") => format = Format::Machine,
                    _ => return Err("--format must be human or machine".to_string()),
                }
            }
            "--spair-cap" => {
                i += 1;
                let v = argv.get(i).ok_or("--spair-cap needs a value")?;
                spair_cap = Some(v.parse().map_err(|_| "--spair-cap must be an integer")?);
            }
            other => return Err(format!("unknown option `{other}`")),
        }
        i += 1;
    }
    Ok(Args {
        command,
        file,
        max,
        skip_nondeg,
        format,
        spair_cap,
    })
}

fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::SPairCapExceeded { .. } => 3,
        _ => 2,
    }
}

fn run(args: &Args) -> Result<u8, Error> {
    let file = ProblemFile::load(&args.file)?;
    let vars = file.var_names();
    let opts = IdealOptions {
        spair_cap: args
            .spair_cap
            .or(file.spair_cap)
            .unwrap_or_else(|| IdealOptions::default().spair_cap),
    };

    match args.command.as_str() {
        "nondeg" => {
            let verdict = check_nondegenerate(&file.f, &opts)?;
            print!("{}", report::render_nondegeneracy(&vars, &verdict));
            Ok(match verdict {
                Nondegeneracy::Nondegenerate => 0,
                Nondegeneracy::Degenerate { .. } => 1,
            })
        }
        "transform" => {
            let problem = file.problem()?;
            print!("{}", report::render_transform(&vars, &problem));
            Ok(0)
        }
        "faces" => {
            let problem = file.problem()?;
            let table = delta_face_table(&problem)?;
            print!(
                "{}",
                report::render_faces(&vars, &problem, &table, args.format)
            );
            Ok(0)
        }
        "landau" => {
            let problem = file.problem()?;
            let skip = args.skip_nondeg || file.skip_nondeg;
            let landau = landau_variety(&problem, &opts, skip)?;
            print!(
                "{}",
                report::render_landau(&vars, &problem, &landau, args.format)
            );
            Ok(if landau.is_degenerate() { 1 } else { 0 })
        }
        "diagonal" => {
            let problem = file.problem()?;
            let vertex = expansion_vertex(&file)?;
            let expansion = VertexExpansion::new(&file.f, &file.g, &vertex)?;
            let k_max = args.max.unwrap_or(10);
            let coeffs = expansion.diagonal_coefficients(&file.q, k_max)?;
            print!(
                "{}",
                report::render_diagonal(&coeffs, problem.rank(), k_max, args.format)
            );
            Ok(0)
        }
        "radius" => {
            let problem = file.problem()?;
            if problem.rank() != 1 {
                return Err(Error::InvalidProblem(
                    "radius estimation needs a rank-1 diagonal".into(),
                ));
            }
            let vertex = expansion_vertex(&file)?;
            let expansion = VertexExpansion::new(&file.f, &file.g, &vertex)?;
            let k_max = args.max.unwrap_or(40);
            let coeffs = expansion.diagonal_coefficients(&file.q, k_max)?;
            let sequence: Vec<(i64, qdiag::laurent::Rational)> = coeffs
                .into_iter()
                .map(|(k, c)| (k[0], c))
                .collect();
            let used = sequence
                .iter()
                .filter(|(_, c)| !num_traits::Zero::is_zero(c))
                .count();
            let estimate = radius_estimate(&sequence)?;
            print!("{}", report::render_radius(&estimate, used));
            Ok(0)
        }
        "crosscheck" => {
            let problem = file.problem()?;
            let tn = report::t_names(problem.rank());
            let tstrs: Vec<&str> = tn.iter().map(String::as_str).collect();
            let polytope = NewtonPolytope::of_polynomial(&file.f)?;
            let mut all_agree = true;
            for face in polytope.all_faces() {
                let direct = landau_direct(&problem, &face, &opts)?;
                let via = landau_face_via_transform(&problem, &face, &opts)?;
                let agree = same_zero_set(&direct, &via, &opts)?;
                all_agree &= agree;
                print!(
                    "{}",
                    report::render_crosscheck_line(
                        face.id(),
                        face.dim(),
                        &face.support_points(),
                        &direct,
                        &via,
                        agree,
                        &tstrs,
                    )
                );
            }
            println!(
                "crosscheck: {}",
                if all_agree { "all faces agree" } else { "MISMATCH" }
            );
            Ok(if all_agree { 0 } else { 1 })
        }
        other => Err(Error::InvalidProblem(format!("unknown command `{other}`"))),
    }
}

/// The expansion vertex: the one named in the file, or the graded-lex minimal
/// vertex of the Newton polytope of f.
fn expansion_vertex(file: &ProblemFile) -> Result<ExponentVector, Error> {
    match &file.order {
        Some(v) => Ok(v.clone()),
        None => {
            let polytope = NewtonPolytope::of_polynomial(&file.f)?;
            Ok(polytope.vertices()[0].clone())
        }
    }
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().skip(1).collect();
    if argv.iter().any(|a| a == "--help" || a == "-h") || argv.is_empty() {
        eprint!("{USAGE}");
        return ExitCode::from(if argv.is_empty() { 2 } else { 0 });
    }
    let args = match parse_args(&argv) {
        Ok(a) => a,
        Err(msg) => {
            eprintln!("error: {msg}");
            eprint!("{USAGE}");
            return ExitCode::from(2);
        }
    };
    match run(&args) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code_for(&err))
        }
    }
}
