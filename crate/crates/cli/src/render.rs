//! Text, JSON and LaTeX renderings of characters.

use demazure_core::{AffWeight, CharElement, FinWeight, GradedCharacter};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Json,
    Latex,
}

/// `q^0: dim 3, q^1: dim 1`
pub fn graded_dims(g: &GradedCharacter) -> String {
    let parts: Vec<String> = g
        .dims()
        .iter()
        .map(|(q, d)| format!("q^{q}: dim {d}"))
        .collect();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(", ")
    }
}

fn latex_fin(w: &FinWeight) -> String {
    let mut out = String::new();
    for (i, c) in w.0.iter().enumerate() {
        if c.numer() == &0 {
            continue;
        }
        let mag = if *c.numer() < 0 { -*c } else { *c };
        let sign = if *c.numer() < 0 {
            "-"
        } else if out.is_empty() {
            ""
        } else {
            "+"
        };
        let coeff = if mag == num_rational::Rational64::from_integer(1) {
            String::new()
        } else if mag.is_integer() {
            mag.to_string()
        } else {
            format!("\\tfrac{{{}}}{{{}}}", mag.numer(), mag.denom())
        };
        out.push_str(&format!("{sign}{coeff}\\omega_{{{}}}", i + 1));
    }
    out
}

fn latex_weight(w: &AffWeight) -> String {
    let mut out = latex_fin(&w.fin);
    let term = |c: &num_rational::Rational64, sym: &str, out: &mut String| {
        if c.numer() == &0 {
            return;
        }
        let sign = if *c.numer() < 0 {
            "-"
        } else if out.is_empty() {
            ""
        } else {
            "+"
        };
        let mag = if *c.numer() < 0 { -*c } else { *c };
        let coeff = if mag == num_rational::Rational64::from_integer(1) {
            String::new()
        } else {
            mag.to_string()
        };
        out.push_str(&format!("{sign}{coeff}{sym}"));
    };
    term(&w.level, "\\Lambda_0", &mut out);
    term(&w.degree, "\\delta", &mut out);
    if out.is_empty() {
        "0".into()
    } else {
        out
    }
}

pub fn latex_char(c: &CharElement) -> String {
    if c.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (k, (w, coeff)) in c.sorted_terms().into_iter().rev().enumerate() {
        let neg = coeff.sign() == num_bigint::Sign::Minus;
        if k > 0 {
            out.push_str(if neg { " - " } else { " + " });
        } else if neg {
            out.push('-');
        }
        let mag = coeff.magnitude();
        if *mag != 1u32.into() {
            out.push_str(&mag.to_string());
        }
        out.push_str(&format!("e^{{{}}}", latex_weight(w)));
    }
    out
}

pub fn latex_graded(g: &GradedCharacter) -> String {
    let parts: Vec<String> = g
        .pieces()
        .map(|(q, c)| format!("q^{{{q}}}\\left({}\\right)", latex_char(c)))
        .collect();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn latex_monomials() {
        let w = AffWeight::from_ints(&[2, -1], 1, -2);
        assert_eq!(
            latex_weight(&w),
            "2\\omega_{1}-\\omega_{2}+\\Lambda_0-2\\delta"
        );
        assert_eq!(latex_weight(&AffWeight::zero(2)), "0");
        let c = CharElement::from_terms([
            (AffWeight::from_ints(&[2], 0, 0), 1.into()),
            (AffWeight::from_ints(&[0], 0, 0), (-3).into()),
        ]);
        assert_eq!(latex_char(&c), "e^{2\\omega_{1}} - 3e^{0}");
    }
}
