//! Text renderings of exact results.

use num_traits::{One, Signed, Zero};

use quotvol_core::scalars::format_rational;
use quotvol_core::{Rational, TPoly};

/// Ascending coefficients as `"num/den"` strings; the zero polynomial is `["0/1"]`.
pub fn coefficients(p: &TPoly) -> Vec<String> {
    if p.is_zero() {
        return vec![format_rational(&Rational::zero())];
    }
    p.coeffs().iter().map(format_rational).collect()
}

/// `"n"` for integers, `"n/d"` otherwise; for human-readable strings only.
pub fn short_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format_rational(q)
    }
}

fn latex_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("\\frac{{{}}}{{{}}}", q.numer(), q.denom())
    }
}

/// Descending powers of \mathfrak{t}, e.g. `\frac{1}{2}\mathfrak{t}^{2} - \mathfrak{t} + 3`.
pub fn latex(p: &TPoly) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (k, c) in p.coeffs().iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let mag = c.abs();
        if out.is_empty() {
            if c.is_negative() {
                out.push('-');
            }
        } else {
            out.push_str(if c.is_negative() { " - " } else { " + " });
        }
        let var = match k {
            0 => String::new(),
            1 => "\\mathfrak{t}".into(),
            _ => format!("\\mathfrak{{t}}^{{{k}}}"),
        };
        if k == 0 || !mag.is_one() {
            out.push_str(&latex_rational(&mag));
        }
        out.push_str(&var);
    }
    out
}

/// Unicode rendering, e.g. `1/2𝔱^2 - 𝔱 + 3`.
pub fn plain(p: &TPoly) -> String {
    p.to_string()
}
