//! Named self-check suites, run by `hodgecalc verify`.

use std::fmt;
use std::str::FromStr;

use crate::algebra::{series_exp, ExactRational, UniPoly};
use crate::error::{Error, Result};
use crate::hodge::LambdaMonomial;
use crate::psi::dimension;
use crate::series::{
    constant_term, dilaton_apply, lambda_product_expansion, string_apply, Calculator, IndexVector,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Theorem01,
    Prop12,
    Prop21,
    Prop22,
    Cor23,
    Mumford,
    All,
}

impl Suite {
    pub const EACH: [Suite; 6] =
        [Suite::Theorem01, Suite::Prop12, Suite::Prop21, Suite::Prop22, Suite::Cor23, Suite::Mumford];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Theorem01 => "theorem01",
            Suite::Prop12 => "prop12",
            Suite::Prop21 => "prop21",
            Suite::Prop22 => "prop22",
            Suite::Cor23 => "cor23",
            Suite::Mumford => "mumford",
            Suite::All => "all",
        }
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::EACH
            .into_iter()
            .chain([Suite::All])
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::InvalidInput(format!("unknown suite {s:?}")))
    }
}

#[derive(Clone, Copy, Debug)]
pub struct VerifyOptions {
    /// Largest `|a|` exercised.
    pub max_weight: u32,
    /// Largest number of entries in `a`.
    pub max_len: usize,
    pub guard: usize,
    /// Order of the `F(α, t)` check.
    pub order: usize,
    /// Largest genus (and marking count) for the Mumford relation.
    pub mumford_bound: u32,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self { max_weight: 4, max_len: 4, guard: 2, order: 10, mumford_bound: 3 }
    }
}

#[derive(Clone, Debug, Default)]
pub struct SuiteReport {
    pub name: String,
    pub checks: usize,
    pub failures: Vec<String>,
}

impl SuiteReport {
    fn new(name: &str) -> Self {
        Self { name: name.into(), ..Default::default() }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    /// Runs a fallible check, counting an error as a failure.
    fn attempt(&mut self, label: impl FnOnce() -> String, f: impl FnOnce() -> Result<Option<String>>) {
        self.checks += 1;
        match f() {
            Ok(None) => {}
            Ok(Some(why)) => self.failures.push(format!("{}: {why}", label())),
            Err(e) => self.failures.push(format!("{}: {e}", label())),
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        write!(
            f,
            "{status} {} ({} checks, {} failures)",
            self.name,
            self.checks,
            self.failures.len()
        )?;
        for failure in &self.failures {
            write!(f, "\n  - {failure}")?;
        }
        Ok(())
    }
}

/// Descending index vectors (zeros allowed) with `len <= max_len` and
/// `|a| <= max_weight`.
pub fn index_vectors(max_weight: u32, max_len: usize) -> Vec<IndexVector> {
    fn go(len: usize, max_entry: u32, budget: u32, prefix: &mut Vec<u32>, out: &mut Vec<IndexVector>) {
        if prefix.len() == len {
            out.push(IndexVector::new(prefix.clone()));
            return;
        }
        for v in (0..=max_entry.min(budget)).rev() {
            prefix.push(v);
            go(len, v, budget - v, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    for len in 0..=max_len {
        go(len, max_weight, max_weight, &mut Vec::new(), &mut out);
    }
    out.sort_by_key(|a| (a.weight(), a.len()));
    out
}

pub fn run(calc: &Calculator, suite: Suite, opts: &VerifyOptions) -> Vec<SuiteReport> {
    match suite {
        Suite::All => Suite::EACH.iter().map(|&s| run_one(calc, s, opts)).collect(),
        s => vec![run_one(calc, s, opts)],
    }
}

fn run_one(calc: &Calculator, suite: Suite, opts: &VerifyOptions) -> SuiteReport {
    match suite {
        Suite::Theorem01 => theorem01(calc, opts),
        Suite::Prop12 => prop12(calc, opts),
        Suite::Prop21 => prop21(calc, opts),
        Suite::Prop22 => prop22(calc, opts),
        Suite::Cor23 => cor23(calc, opts),
        Suite::Mumford => mumford(calc, opts),
        Suite::All => unreachable!("expanded by run"),
    }
}

/// Polynomiality and monicity: the guard coefficients past `t^{|a|}` vanish
/// identically and the top coefficient is 1.
fn theorem01(calc: &Calculator, opts: &VerifyOptions) -> SuiteReport {
    let mut report = SuiteReport::new("theorem01");
    for a in index_vectors(opts.max_weight, opts.max_len) {
        let degree = a.weight() as usize;
        report.attempt(
            || format!("a={a}"),
            || {
                let series = calc.assembled_series(&a, degree + opts.guard)?;
                for g in degree + 1..=degree + opts.guard {
                    if !series.coeff(g).is_zero() {
                        return Ok(Some(format!("t^{g} coefficient {:?} != 0", series.coeff(g))));
                    }
                }
                if *series.coeff(degree) != UniPoly::one() {
                    return Ok(Some(format!("t^{degree} coefficient {:?} != 1", series.coeff(degree))));
                }
                Ok(None)
            },
        );
    }
    report
}

/// `F(α, t) = exp(-t^2/24)` coefficient by coefficient.
fn prop12(calc: &Calculator, opts: &VerifyOptions) -> SuiteReport {
    let mut report = SuiteReport::new("prop12");
    let f = match calc.f_series(opts.order) {
        Ok(f) => f,
        Err(e) => {
            report.check(false, || e.to_string());
            return report;
        }
    };
    let half = opts.order / 2;
    let exp = series_exp(&ExactRational::frac(-1, 24), half);
    for k in 0..=opts.order {
        let expected = if k % 2 == 0 { exp.coeff(k / 2).clone() } else { UniPoly::zero() };
        report.check(*f.coeff(k) == expected, || {
            format!("t^{k}: got {:?}, expected {expected:?}", f.coeff(k))
        });
    }
    report
}

/// Closed-form constant term against the assembled polynomial.
fn prop21(calc: &Calculator, opts: &VerifyOptions) -> SuiteReport {
    let mut report = SuiteReport::new("prop21");
    for a in index_vectors(opts.max_weight, opts.max_len).into_iter().filter(|a| !a.is_empty()) {
        report.attempt(
            || format!("a={a}"),
            || {
                let p = calc.assemble_pa(&a, opts.guard)?;
                let assembled = p.poly.t_coeff(0);
                let closed = UniPoly::constant(constant_term(&a)?);
                Ok((assembled != closed).then(|| format!("constant {assembled:?} vs {closed:?}")))
            },
        );
    }
    report
}

/// String and dilaton rules against independently assembled polynomials.
fn prop22(calc: &Calculator, opts: &VerifyOptions) -> SuiteReport {
    let mut report = SuiteReport::new("prop22");
    let short = opts.max_len.saturating_sub(1);
    for a in index_vectors(opts.max_weight, short) {
        report.attempt(
            || format!("string a={a}"),
            || {
                let p = calc.assemble_pa(&a, opts.guard)?;
                let family = (0..a.len())
                    .filter_map(|i| a.decremented(i))
                    .map(|b| calc.assemble_pa(&b, opts.guard))
                    .collect::<Result<Vec<_>>>()?;
                let derived = string_apply(&p, &family)?;
                let direct = calc.assemble_pa(&a.with_appended(0), opts.guard)?;
                Ok((derived.poly != direct.poly).then(|| "string rule mismatch".to_string()))
            },
        );
        if a.weight() < opts.max_weight {
            report.attempt(
                || format!("dilaton a={a}"),
                || {
                    let p = calc.assemble_pa(&a, opts.guard)?;
                    let derived = dilaton_apply(&p, a.len() + 1)?;
                    let direct = calc.assemble_pa(&a.with_appended(1), opts.guard)?;
                    Ok((derived.poly != direct.poly).then(|| "dilaton rule mismatch".to_string()))
                },
            );
        }
    }
    report
}

/// `P_a(-1, t)` from pure ψ integrals against the assembled `P_a` at `α = -1`.
fn cor23(calc: &Calculator, opts: &VerifyOptions) -> SuiteReport {
    let mut report = SuiteReport::new("cor23");
    for a in index_vectors(opts.max_weight, opts.max_len) {
        report.attempt(
            || format!("a={a}"),
            || {
                let direct = calc.mumford_specialize(&a)?;
                let assembled = calc.assemble_pa(&a, opts.guard)?.poly.eval_alpha(&-ExactRational::one());
                Ok((direct != assembled).then(|| format!("{direct:?} vs {assembled:?}")))
            },
        );
    }
    report
}

/// `∫ ψ^a Λ^∨_g(1) Λ^∨_g(-1) = (-1)^g ∫ ψ^a` on every stable `(g, n)` in
/// range and every ψ-monomial of degree at most the dimension.
pub fn mumford_relation_holds(calc: &Calculator, g: u32, psi: &[u32]) -> Result<Option<String>> {
    let n = psi.len();
    let dim = dimension(g, n).ok_or(Error::Unstable { g, n })?;
    let degree: u32 = psi.iter().sum();
    let mut lhs = ExactRational::zero();
    for term in lambda_product_expansion(g) {
        if degree + term.k + term.j != dim {
            continue;
        }
        let v = calc.hodge().hodge_integral(g, n, psi, &LambdaMonomial::pair(term.k, term.j))?;
        // α = -1 contributes (-1)^{alpha_power}
        let sign = term.sign * if term.alpha_power % 2 == 0 { 1 } else { -1 };
        lhs += if sign > 0 { v } else { -v };
    }
    let rhs = if degree == dim {
        let v = calc.hodge().psi_engine().integral(g, psi)?;
        if g.is_multiple_of(2) { v } else { -v }
    } else {
        ExactRational::zero()
    };
    Ok((lhs != rhs).then(|| format!("lhs {lhs} != rhs {rhs}")))
}

fn mumford(calc: &Calculator, opts: &VerifyOptions) -> SuiteReport {
    let mut report = SuiteReport::new("mumford");
    let bound = opts.mumford_bound;
    for g in 0..=bound {
        for n in 1..=bound as usize {
            let Some(dim) = dimension(g, n) else {
                continue;
            };
            for a in index_vectors(dim, n).into_iter().filter(|a| a.len() == n) {
                report.attempt(|| format!("g={g} psi={a}"), || mumford_relation_holds(calc, g, a.entries()));
            }
        }
    }
    report
}
