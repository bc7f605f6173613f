use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};
use zipchow::chowpipeline::CycleReport;
use zipchow::coeffpoly::{MultiPoly, ParamPoly, VarSpace};

fn latex_var(name: &str) -> String {
    let body = name.trim_start_matches(|c: char| c.is_alphabetic());
    let letter = &name[..name.len() - body.len()];
    match body.split_once('_') {
        Some((j, c)) => format!("{letter}^{{({c})}}_{{{j}}}"),
        None if body.is_empty() => letter.to_string(),
        None => format!("{letter}_{{{body}}}"),
    }
}

fn latex_monomial(space: &VarSpace, exps: &[u16]) -> String {
    let mut out = String::new();
    for (i, &e) in exps.iter().enumerate() {
        match e {
            0 => {}
            1 => out.push_str(&latex_var(space.name(i))),
            _ => {
                let _ = write!(out, "{}^{{{e}}}", latex_var(space.name(i)));
            }
        }
    }
    out
}

fn latex_int_poly(terms: &[(u32, BigInt)]) -> String {
    let mut out = String::new();
    for (k, (e, c)) in terms.iter().rev().enumerate() {
        let neg = c.is_negative();
        let a = c.abs();
        if k == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { "-" } else { "+" });
        }
        let pw = match e {
            0 => String::new(),
            1 => "p".to_string(),
            _ => format!("p^{{{e}}}"),
        };
        if a.is_one() && *e > 0 {
            out.push_str(&pw);
        } else {
            let _ = write!(out, "{a}{pw}");
        }
    }
    out
}

fn latex_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("\\tfrac{{{}}}{{{}}}", q.numer(), q.denom())
    }
}

/// Coefficient with its sign pulled out.
fn latex_coeff(c: &ParamPoly, bare_monomial: bool) -> (bool, String) {
    if let Some(q) = c.as_constant() {
        let neg = q.is_negative();
        let a = q.abs();
        let s = if a.is_one() && !bare_monomial {
            String::new()
        } else {
            latex_rational(&a)
        };
        return (neg, s);
    }
    let neg = c.leading_is_negative();
    let c = if neg { -c.clone() } else { c.clone() };
    let d = c.common_denominator();
    let num: Vec<(u32, BigInt)> = c
        .terms()
        .iter()
        .map(|(e, q)| (*e, (q * BigRational::from_integer(d.clone())).to_integer()))
        .collect();
    let body = latex_int_poly(&num);
    let body = if num.len() > 1 && (!bare_monomial || !d.is_one()) {
        format!("({body})")
    } else {
        body
    };
    if d.is_one() {
        (neg, body)
    } else {
        (neg, format!("\\tfrac{{1}}{{{d}}}{body}"))
    }
}

pub fn latex_poly(f: &MultiPoly) -> String {
    if f.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (k, (m, c)) in f.terms().rev().enumerate() {
        let mono = latex_monomial(f.space(), m.exponents());
        let (neg, coeff) = latex_coeff(c, mono.is_empty());
        if k == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        out.push_str(&coeff);
        out.push_str(&mono);
    }
    out
}

pub fn latex_param(c: &ParamPoly) -> String {
    let (neg, s) = latex_coeff(c, true);
    if neg {
        format!("-{s}")
    } else {
        s
    }
}

fn latex_word(word: &str) -> String {
    if word == "e" {
        return "e".to_string();
    }
    word.split(',')
        .map(|s| format!("s_{{{}}}", &s[1..]))
        .collect::<Vec<_>>()
        .join("")
}

pub fn latex_table(title: &str, reports: &[CycleReport]) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "% {title}");
    out.push_str("\\begin{tabular}{lllll}\n");
    out.push_str("$w$ & $\\ell(w)$ & $\\gamma(w)$ & $[\\overline{Z}^{\\emptyset}_w]$ & $[\\overline{Z}_w]$ \\\\\n\\hline\n");
    for r in reports {
        let gamma = match &r.gamma {
            Ok(g) => format!("${}$", latex_param(g)),
            Err(_) => "unsupported".to_string(),
        };
        let zip = match &r.zip_class {
            Some(z) => format!("${}$", latex_poly(z)),
            None => "--".to_string(),
        };
        let _ = writeln!(
            out,
            "${}$ & {} & {} & ${}$ & {} \\\\",
            latex_word(&r.word),
            r.length,
            gamma,
            latex_poly(&r.flag_class),
            zip
        );
    }
    out.push_str("\\end{tabular}\n");
    out
}

pub fn text_table(title: &str, reports: &[CycleReport]) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "# {title}");
    for r in reports {
        let gamma = match &r.gamma {
            Ok(g) => g.to_string(),
            Err(e) => format!("unsupported ({e})"),
        };
        let _ = writeln!(out, "w = {}  (length {}, degree {})", r.word, r.length, r.degree);
        let _ = writeln!(out, "  gamma      = {gamma}");
        let _ = writeln!(out, "  flag class = {}", r.flag_class);
        match &r.zip_class {
            Some(z) => {
                let _ = writeln!(out, "  zip class  = {z}");
            }
            None => out.push_str("  zip class  = unavailable\n"),
        }
    }
    out
}
