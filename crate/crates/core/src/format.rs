//! Text, JSON and LaTeX renderings of `P_a`.
//!
//! All three list `t`-powers from highest to lowest and, inside a
//! coefficient, `α`-powers from highest to lowest, which is the layout of the
//! published table.

use serde_json::{json, Value};

use crate::algebra::{ExactRational, UniPoly};
use crate::series::PPolynomial;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Style {
    Text,
    Latex,
}

fn power(var: &str, k: usize, style: Style) -> String {
    match (k, style) {
        (0, _) => String::new(),
        (1, _) => var.to_string(),
        (k, Style::Text) => format!("{var}^{k}"),
        (k, Style::Latex) if k < 10 => format!("{var}^{k}"),
        (k, Style::Latex) => format!("{var}^{{{k}}}"),
    }
}

fn join_factors(parts: &[String], style: Style) -> String {
    let parts: Vec<&str> = parts.iter().map(String::as_str).filter(|s| !s.is_empty()).collect();
    match style {
        Style::Text => parts.join("*"),
        Style::Latex => parts.join(" "),
    }
}

/// `|c| * x^k` with the coefficient suppressed when it is 1 and something
/// else is printed.
fn magnitude_term(c: &ExactRational, vars: &[String], style: Style) -> String {
    let abs = c.abs();
    let has_vars = vars.iter().any(|v| !v.is_empty());
    let mut parts = Vec::new();
    if !(abs.is_one() && has_vars) {
        parts.push(abs.to_string());
    }
    parts.extend(vars.iter().cloned());
    join_factors(&parts, style)
}

fn alpha_name(style: Style) -> &'static str {
    match style {
        Style::Text => "alpha",
        Style::Latex => "\\alpha",
    }
}

/// Signed terms of a polynomial in α, highest power first, each multiplied
/// by `suffix`.
fn signed_alpha_terms(p: &UniPoly, suffix: &str, style: Style) -> Vec<(bool, String)> {
    p.terms()
        .rev()
        .map(|(k, c)| {
            let vars = vec![power(alpha_name(style), k, style), suffix.to_string()];
            (c.is_negative(), magnitude_term(c, &vars, style))
        })
        .collect()
}

fn join_signed(terms: &[(bool, String)]) -> String {
    let mut out = String::new();
    for (i, (neg, body)) in terms.iter().enumerate() {
        match (i, neg) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        out.push_str(body);
    }
    out
}

fn render(p: &PPolynomial, style: Style) -> String {
    let coeffs = p.poly.t_coeffs();
    if coeffs.is_empty() {
        return "0".into();
    }
    let mut terms: Vec<(bool, String)> = Vec::new();
    for (k, c) in coeffs.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let t = power("t", k, style);
        let nonzero = c.terms().count();
        if nonzero == 1 || k == 0 {
            terms.extend(signed_alpha_terms(c, &t, style));
        } else {
            let inner = join_signed(&signed_alpha_terms(c, "", style));
            let body = match style {
                Style::Text => format!("({inner})*{t}"),
                Style::Latex => format!("({inner}) {t}"),
            };
            terms.push((false, body));
        }
    }
    join_signed(&terms)
}

/// `t^2 - 10*alpha*t + 240`
pub fn to_text(p: &PPolynomial) -> String {
    render(p, Style::Text)
}

/// `t^2 - 10 \alpha t + 240`
pub fn to_latex(p: &PPolynomial) -> String {
    render(p, Style::Latex)
}

/// `P_{(2,1)}`
pub fn label(p: &PPolynomial) -> String {
    format!("P_{{{}}}", p.a)
}

/// `{"a": [...], "convention": "...", "coeffs": [[t_exp, alpha_exp, "p/q"], ...]}`
/// with coefficients ordered from the highest `(t_exp, alpha_exp)` down.
pub fn to_json(p: &PPolynomial) -> Value {
    let coeffs: Vec<Value> = p
        .poly
        .terms()
        .rev()
        .map(|(&(t, a), c)| json!([t, a, c.to_string()]))
        .collect();
    json!({
        "a": p.a.entries(),
        "convention": p.convention.as_str(),
        "coeffs": coeffs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::BiPoly;
    use crate::series::{Convention, IndexVector};

    fn shifted(a: &[u32], terms: &[(u32, u32, ExactRational)]) -> PPolynomial {
        let mut poly = BiPoly::zero();
        for (t, al, v) in terms {
            poly.add_term(*t, *al, v.clone());
        }
        PPolynomial { a: IndexVector::new(a.to_vec()), convention: Convention::AlphaShifted, poly }
    }

    fn z(v: i64) -> ExactRational {
        ExactRational::from(v)
    }

    #[test]
    fn text_layout() {
        let p2 = shifted(&[2], &[(2, 0, z(1)), (1, 1, z(-10)), (0, 0, z(240))]);
        assert_eq!(to_text(&p2), "t^2 - 10*alpha*t + 240");
        assert_eq!(to_latex(&p2), "t^2 - 10 \\alpha t + 240");
        let p3 = shifted(
            &[3],
            &[(3, 0, z(1)), (2, 1, ExactRational::frac(-77, 3)), (2, 0, z(-28)), (1, 0, z(280)), (0, 0, z(6720))],
        );
        assert_eq!(to_text(&p3), "t^3 + (-77/3*alpha - 28)*t^2 + 280*t + 6720");
        assert_eq!(to_latex(&p3), "t^3 + (-77/3 \\alpha - 28) t^2 + 280 t + 6720");
        assert_eq!(to_text(&shifted(&[], &[(0, 0, z(1))])), "1");
        assert_eq!(to_text(&shifted(&[], &[])), "0");
        assert_eq!(to_text(&shifted(&[], &[(0, 1, z(-1)), (0, 0, z(-3))])), "-alpha - 3");
        assert_eq!(label(&p3), "P_{(3)}");
    }

    #[test]
    fn json_schema() {
        let p = shifted(&[1, 1, 1], &[(3, 0, z(1)), (2, 0, z(-72)), (1, 0, z(432))]);
        assert_eq!(
            to_json(&p).to_string(),
            r#"{"a":[1,1,1],"convention":"alpha_shifted","coeffs":[[3,0,"1"],[2,0,"-72"],[1,0,"432"]]}"#
        );
    }
}
