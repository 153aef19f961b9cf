//! LaTeX rendering of the symbolic objects, for the construct subcommand
//! and for report details.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::affine::AffineForm;
use crate::covariant::Context;
use crate::delta::DeltaKernel;
use crate::gamma::GammaExpr;
use crate::poly::Polynomial;
use crate::ratfun::RatFun;
use crate::scalar::rat_string;
use crate::weyl::WeylElement;

/// LaTeX name of a ring variable: parameters become Greek letters with
/// subscripts, matrix entries keep their double index.
pub fn latex_name(name: &str) -> String {
    let (head, tail) = match name.char_indices().nth(1) {
        Some((i, _)) => name.split_at(i),
        None => (name, ""),
    };
    if tail.is_empty() || !tail.chars().all(|c| c.is_ascii_digit()) {
        return String::from(name);
    }
    match head {
        "l" => format!("\\lambda_{{{tail}}}"),
        "v" => format!("\\nu_{{{tail}}}"),
        "g" | "h" => format!("{head}_{{{tail}}}"),
        _ => String::from(name),
    }
}

fn power(base: &str, e: u32) -> String {
    if e == 1 {
        String::from(base)
    } else {
        format!("{base}^{{{e}}}")
    }
}

/// Render a polynomial as a signed sum of monomials in ring order.
pub fn latex_poly(p: &Polynomial) -> String {
    if p.is_zero() {
        return String::from("0");
    }
    let ring = p.ring();
    let mut out = String::new();
    for (exp, coeff) in p.terms() {
        let mut body = String::new();
        for (i, &e) in exp.iter().enumerate() {
            if e > 0 {
                body.push_str(&power(&latex_name(ring.name(i)), e));
            }
        }
        let mag = coeff.abs();
        let mut piece = String::new();
        if body.is_empty() || !mag.is_one() {
            piece.push_str(&rat_string(&mag));
        }
        if !body.is_empty() {
            if !piece.is_empty() {
                piece.push_str(" \\, ");
            }
            piece.push_str(&body);
        }
        if out.is_empty() {
            if coeff.is_negative() {
                out.push('-');
            }
        } else if coeff.is_negative() {
            out.push_str(" - ");
        } else {
            out.push_str(" + ");
        }
        out.push_str(&piece);
    }
    out
}

pub fn latex_ratfun(f: &RatFun) -> String {
    if f.den().is_one() {
        latex_poly(f.num())
    } else {
        format!("\\frac{{{}}}{{{}}}", latex_poly(f.num()), latex_poly(f.den()))
    }
}

pub fn latex_affine(a: &AffineForm) -> String {
    let mut out = String::new();
    for (name, coeff) in a.linear_part() {
        let mag = coeff.abs();
        if out.is_empty() {
            if coeff.is_negative() {
                out.push('-');
            }
        } else if coeff.is_negative() {
            out.push_str(" - ");
        } else {
            out.push_str(" + ");
        }
        if !mag.is_one() {
            out.push_str(&rat_string(&mag));
            out.push_str(" \\, ");
        }
        out.push_str(&latex_name(name));
    }
    let c = a.constant_part();
    if !c.is_zero() || out.is_empty() {
        if out.is_empty() {
            out.push_str(&rat_string(c));
        } else if c.is_negative() {
            out.push_str(" - ");
            out.push_str(&rat_string(&c.abs()));
        } else {
            out.push_str(" + ");
            out.push_str(&rat_string(c));
        }
    }
    out
}

/// Render a normal-ordered operator: multiplication entries first, then
/// partial derivatives, with parenthesized rational-function coefficients.
pub fn latex_weyl(ctx: &Context, w: &WeylElement) -> String {
    if w.is_zero() {
        return String::from("0");
    }
    let m = ctx.n + 1;
    let mut pieces: Vec<String> = Vec::new();
    for ((gexp, dexp), coeff) in w.terms() {
        let mut body = String::new();
        for i in 1..=m {
            for j in 1..=m {
                let e = gexp[ctx.g_flat(i, j)];
                if e > 0 {
                    body.push_str(&power(&format!("g_{{{i}{j}}}"), e));
                    body.push_str(" \\, ");
                }
            }
        }
        for i in 1..=m {
            for j in 1..=m {
                let e = dexp[ctx.g_flat(i, j)];
                if e > 0 {
                    body.push_str(&power(&format!("\\partial_{{{i}{j}}}"), e));
                    body.push_str(" \\, ");
                }
            }
        }
        let body = body.trim_end_matches(" \\, ");
        let piece = if coeff.is_one() {
            if body.is_empty() {
                String::from("1")
            } else {
                String::from(body)
            }
        } else if body.is_empty() {
            latex_ratfun(coeff)
        } else if coeff.den().is_one() && coeff.num().num_terms() == 1 {
            format!("{} \\, {}", latex_ratfun(coeff), body)
        } else {
            format!("\\left({}\\right) {}", latex_ratfun(coeff), body)
        };
        pieces.push(piece);
    }
    pieces.join(" + ")
}

/// Render a finite delta-derivative combination in classical notation.
pub fn latex_delta_kernel(k: &DeltaKernel) -> String {
    if k.is_zero() {
        return String::from("0");
    }
    let mut pieces: Vec<String> = Vec::new();
    for (orders, coeff) in k.terms() {
        let mut body = String::new();
        for (c, &o) in k.coords().iter().zip(orders.iter()) {
            body.push_str(&format!("\\delta^{{({o})}}({c})"));
        }
        let piece = if coeff.is_one() {
            body
        } else if coeff.den().is_one() && coeff.num().num_terms() == 1 {
            format!("{} \\, {}", latex_ratfun(coeff), body)
        } else {
            format!("\\left({}\\right) {}", latex_ratfun(coeff), body)
        };
        pieces.push(piece);
    }
    pieces.join(" + ")
}

/// Render a gamma-factor expression: prefactor, pi power, then the gamma
/// factors of half the stored (doubled) arguments.
pub fn latex_gamma(g: &GammaExpr) -> String {
    let mut out = String::new();
    let pref = g.prefactor();
    if !pref.is_one() || (g.pi_pow() == 0 && g.is_gamma_free()) {
        out.push_str(&latex_ratfun(pref));
    }
    if g.pi_pow() != 0 {
        if !out.is_empty() {
            out.push_str(" \\, ");
        }
        out.push_str(&format!("\\pi^{{{}}}", g.pi_pow()));
    }
    for (arg, &e) in g.factors() {
        if !out.is_empty() {
            out.push_str(" \\, ");
        }
        let inner = latex_affine(&arg.scale(&crate::scalar::ratq(1, 2)));
        if e == 1 {
            out.push_str(&format!("\\Gamma\\left({inner}\\right)"));
        } else {
            out.push_str(&format!("\\Gamma\\left({inner}\\right)^{{{e}}}"));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::ring;
    use crate::scalar::rat;

    #[test]
    fn names_and_polynomials() {
        assert_eq!(latex_name("l1"), "\\lambda_{1}");
        assert_eq!(latex_name("v2"), "\\nu_{2}");
        assert_eq!(latex_name("g12"), "g_{12}");
        assert_eq!(latex_name("x"), "x");

        let r = ring(&["l1", "x"]);
        let p = &(&Polynomial::var(&r, "x") * &Polynomial::var(&r, "x"))
            - &Polynomial::var(&r, "l1").scale(&rat(2));
        assert_eq!(latex_poly(&p), "x^{2} - 2 \\, \\lambda_{1}");
        assert_eq!(latex_affine(&AffineForm::var("l1").add_int(-1)), "\\lambda_{1} - 1");
    }

    #[test]
    fn operator_rendering_mentions_both_kinds() {
        let ctx = Context::new(2);
        let lam = ctx.lambda_vec();
        let d2 = crate::weyl::build_d(&ctx, 2, &lam);
        let s = latex_weyl(&ctx, &d2);
        assert!(s.contains("\\partial_{"));
        assert!(s.contains("g_{3"));
    }
}
