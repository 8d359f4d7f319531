//! Line-oriented problem files: `key = value` pairs with `#` comments.
//!
//! Recognized keys: `vars`, `f`, `g` (default 1), `Q`, `order` (optional
//! expansion vertex), `spair_cap`, `skip_nondeg`.

use crate::error::{Error, Result};
use crate::lattice::IntegerMatrix;
use crate::laurent::{parse, ExponentVector, LaurentPolynomial};
use crate::variety::DiagonalProblem;

#[derive(Clone, Debug)]
pub struct ProblemFile {
    pub vars: Vec<String>,
    pub f: LaurentPolynomial,
    pub g: LaurentPolynomial,
    pub q: IntegerMatrix,
    pub order: Option<ExponentVector>,
    pub spair_cap: Option<usize>,
    pub skip_nondeg: bool,
}

impl ProblemFile {
    pub fn load(path: &std::path::Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut pairs: Vec<(usize, String, String)> = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = match raw.find('#') {
                Some(i) => &raw[..i],
                None => raw,
            }
            .trim();
            if line.is_empty() {
                continue;
            }
            let Some(eq) = line.find('=') else {
                return Err(Error::InvalidProblem(format!(
                    "line {}: expected `key = value`",
                    lineno + 1
                )));
            };
            let key = line[..eq].trim().to_string();
            let value = line[eq + 1..].trim().to_string();
            pairs.push((lineno + 1, key, value));
        }

        let mut vars: Option<Vec<String>> = None;
        let mut f_text: Option<String> = None;
        let mut g_text: Option<String> = None;
        let mut q_text: Option<String> = None;
        let mut order_text: Option<String> = None;
        let mut spair_cap: Option<usize> = None;
        let mut skip_nondeg = false;

        for (lineno, key, value) in pairs {
            match key.as_str() {
                "vars" => {
                    let names: Vec<String> = value
                        .split(',')
                        .map(|s| s.trim().to_string())
                        .filter(|s| !s.is_empty())
                        .collect();
                    if names.is_empty() {
                        return Err(Error::InvalidProblem(format!(
                            "line {lineno}: `vars` must list at least one variable"
                        )));
                    }
                    for (i, a) in names.iter().enumerate() {
                        if names[i + 1..].contains(a) {
                            return Err(Error::InvalidProblem(format!(
                                "line {lineno}: duplicate variable `{a}`"
                            )));
                        }
                    }
                    vars = Some(names);
                }
                "f" => f_text = Some(value),
                "g" => g_text = Some(value),
                "Q" | "q" => q_text = Some(value),
                "order" => order_text = Some(value),
                "spair_cap" => {
                    spair_cap = Some(value.parse().map_err(|_| {
                        Error::InvalidProblem(format!(
                            "line {lineno}: `spair_cap` must be a positive integer"
                        ))
                    })?);
                }
                "skip_nondeg" => {
                    skip_nondeg = match value.as_str() {
                        "true" | "1" | "yes" => true,
                        "false" | "0" | "no" => false,
                        _ => {
                            return Err(Error::InvalidProblem(format!(
                                "line {lineno}: `skip_nondeg` must be true or false"
                            )))
                        }
                    };
                }
                other => {
                    return Err(Error::InvalidProblem(format!(
                        "line {lineno}: unknown key `{other}`"
                    )));
                }
            }
        }

        let vars = vars.ok_or_else(|| Error::InvalidProblem("missing `vars`".into()))?;
        let names: Vec<&str> = vars.iter().map(String::as_str).collect();
        let n = vars.len();

        let f_text = f_text.ok_or_else(|| Error::InvalidProblem("missing `f`".into()))?;
        let f = parse(&f_text, &names)?;
        if f.is_zero() {
            return Err(Error::InvalidProblem("`f` must be nonzero".into()));
        }
        let g = match g_text {
            Some(t) => parse(&t, &names)?,
            None => LaurentPolynomial::one(n),
        };

        let q_text = q_text.ok_or_else(|| Error::InvalidProblem("missing `Q`".into()))?;
        let q = parse_q(&q_text, n)?;

        let order = match order_text {
            Some(t) => {
                let entries: Vec<i64> = t
                    .split(',')
                    .map(|s| s.trim().parse::<i64>())
                    .collect::<std::result::Result<_, _>>()
                    .map_err(|_| {
                        Error::InvalidProblem("`order` must be a comma-separated integer vector".into())
                    })?;
                if entries.len() != n {
                    return Err(Error::InvalidProblem(format!(
                        "`order` must have {n} entries"
                    )));
                }
                Some(ExponentVector::new(entries))
            }
            None => None,
        };

        Ok(ProblemFile {
            vars,
            f,
            g,
            q,
            order,
            spair_cap,
            skip_nondeg,
        })
    }

    pub fn var_names(&self) -> Vec<&str> {
        self.vars.iter().map(String::as_str).collect()
    }

    pub fn problem(&self) -> Result<DiagonalProblem> {
        DiagonalProblem::new(self.f.clone(), self.g.clone(), self.q.clone())
    }
}

/// `[1,1,1]` or `[1,1,0,0; 0,0,1,1]`: semicolon-separated rows.
fn parse_q(text: &str, n: usize) -> Result<IntegerMatrix> {
    let trimmed = text.trim();
    let inner = trimmed
        .strip_prefix('[')
        .and_then(|t| t.strip_suffix(']'))
        .ok_or_else(|| Error::InvalidProblem("`Q` must be bracketed, like [1,1,1]".into()))?;
    let mut rows: Vec<Vec<i64>> = Vec::new();
    for row_text in inner.split(';') {
        let row: Vec<i64> = row_text
            .split(',')
            .map(|s| s.trim().parse::<i64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| Error::InvalidProblem("`Q` entries must be integers".into()))?;
        if row.len() != n {
            return Err(Error::InvalidProblem(format!(
                "each `Q` row must have {n} entries"
            )));
        }
        rows.push(row);
    }
    IntegerMatrix::from_rows(&rows)
}
