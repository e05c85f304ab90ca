use std::fmt;
use std::path::Path;

use serde_json::{Map, Value};
use slopelab::{
    bound_difference, bound_gap, build_product_quotient, build_ruled_cover, compare_paths, conjecture_bound,
    lambda_bound, minus_one_count, n_from_indices, proof_coefficients, relative_invariants, slope,
    validate_profile, verify_sharpness, Error, ExampleReport, ProductQuotientParams, RuledCoverParams,
    SingularityForest, SingularityIndexVector, Strictness,
};

use crate::report::{r, value, Report};

#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    pub fn input(message: impl Into<String>) -> Self {
        CliError { code: 1, message: message.into() }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::CrossCheckFailure(_) => 2,
            _ => 1,
        };
        CliError { code, message: e.to_string() }
    }
}

pub type CliResult = Result<Report, CliError>;

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::input(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::input(format!("{}: {e}", path.display())))
}

pub fn bound(echo: &str, g: i64, q_f: i64) -> CliResult {
    let p = validate_profile(g, q_f)?;
    let mut rep = Report::new(echo).input("g", g).input("q_f", q_f);
    rep.output("lambda", r(&lambda_bound(&p)));
    rep.output("conjecture_bound", r(&conjecture_bound(&p)));
    rep.output("difference", r(&bound_difference(&p)));
    rep.output("gap", bound_gap(&p).map(|x| r(&x)).unwrap_or(Value::Null));
    if q_f >= 1 {
        let c = proof_coefficients(&p)?;
        rep.require(c.all_nonnegative());
        let mut m = Map::new();
        for (name, v) in c.entries() {
            m.insert(name, r(v));
        }
        rep.output("coefficients", m);
    }
    Ok(rep)
}

pub fn invariants(echo: &str, path: &Path, strict: bool) -> CliResult {
    let v: SingularityIndexVector = read_json(path)?;
    if strict {
        v.check_strict()?;
    }
    let inv = relative_invariants(&v);
    let s = slope(&v)?;
    let mut rep = Report::new(echo).input("path", path.display().to_string()).input("g", v.g());
    rep.output("k2", r(&inv.k2));
    rep.output("chi", r(&inv.chi));
    rep.output("e", r(&inv.e));
    rep.output("slope", r(&s));
    rep.output("n", r(&n_from_indices(&v)));
    rep.output("minus_one_curves", r(&minus_one_count(&v)));
    rep.output("integral", inv.is_integral());
    Ok(rep)
}

pub fn optimize(echo: &str, g: i64, q_f: i64, certificate: bool) -> CliResult {
    let p = validate_profile(g, q_f)?;
    if q_f == 0 {
        return Err(Error::ZeroIrregularity { what: "index cone" }.into());
    }
    let s = verify_sharpness(&p)?;
    let mut rep = Report::new(echo).input("g", g).input("q_f", q_f);
    rep.output("minimum", r(&s.lp_minimum));
    rep.output("lambda", r(&s.bound));
    rep.output("equal", s.equal);
    rep.output("optimal_vertex", value(&s.optimum.optimal_point)["indices"].clone());
    let tight: Vec<Value> = s.optimum.tight_constraints.iter().map(|c| Value::String(c.to_string())).collect();
    rep.output("tight_constraints", tight);
    rep.output("witness", value(&s.witness)["indices"].clone());
    rep.output("witness_slope", r(&s.witness_slope));
    rep.output("certificate_valid", s.certificate_valid);
    if certificate {
        rep.output("certificate", value(&s.optimum.certificate));
    }
    rep.require(s.passed());
    Ok(rep)
}

pub fn resolve(echo: &str, path: &Path, strict: bool) -> CliResult {
    let f: SingularityForest = read_json(path)?;
    let strictness = if strict { Strictness::Strict } else { Strictness::Lenient };
    let d = compare_paths(&f, strictness)?;
    let mut rep = Report::new(echo).input("path", path.display().to_string()).input("g", f.g);
    rep.output("n", r(&f.n));
    rep.output("indices", value(&d.index_vector)["indices"].clone());
    rep.output("s2", r(d.index_vector.get(2)));
    rep.output("direct", value(&d.direct));
    rep.output("from_indices", value(&d.from_indices));
    rep.output("agree", d.agree);
    rep.output("blowups", d.trace.blowup_count);
    rep.output("minus_one_curves", r(&d.trace.minus_one_curve_count));
    rep.require(d.agree);
    Ok(rep)
}

fn example_report(rep: &mut Report, e: &ExampleReport) {
    rep.output("g", e.g);
    rep.output("q_f", e.q_f);
    rep.output("k2", r(&e.invariants.k2));
    rep.output("chi", r(&e.invariants.chi));
    rep.output("e", r(&e.invariants.e));
    rep.output("slope", r(&e.slope));
    rep.output("lambda", r(&e.bound));
    rep.output("attains_bound", e.attains_bound);
    if let Some(v) = &e.index_vector {
        rep.output("indices", value(v)["indices"].clone());
    }
    if let Some(s) = &e.cone_slack {
        rep.output("cone_slack", r(s));
    }
    rep.require(e.attains_bound);
}

pub fn ruled(echo: &str, p: RuledCoverParams) -> CliResult {
    let e = build_ruled_cover(&p)?;
    let mut rep = Report::new(echo).input("m", p.m).input("e", p.e).input("b0", p.b0).input("q_f", p.q_f);
    example_report(&mut rep, &e);
    Ok(rep)
}

pub fn product(echo: &str, p: ProductQuotientParams) -> CliResult {
    let e = build_product_quotient(&p)?;
    let mut rep = Report::new(echo).input("g", p.g).input("branch", p.branch_count);
    example_report(&mut rep, &e);
    Ok(rep)
}
