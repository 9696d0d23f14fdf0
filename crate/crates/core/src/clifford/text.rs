//! Text encoding used on the command line.
//!
//! Multivectors are written as `coeff*e{indices}` terms joined by `+`/`-`,
//! e.g. `2 + 3*e1 + 1*e12`. For `n ≥ 10` the indices of a blade are joined
//! with `_` (`e3_11`). Paravectors are comma-separated `x0,x1,...,xn`.

use serde::{Deserialize, Serialize};

use super::{Multivector, Paravector};
use crate::coeffring::{format_rational, parse_rational, Rational, Ring};
use crate::error::{Error, Result};

/// Coefficients that have a text form.
pub trait TextCoeff: Ring {
    fn to_text(&self) -> String;
    fn parse_text(s: &str) -> Option<Self>;
    fn is_negative(&self) -> bool;
}

impl TextCoeff for Rational {
    fn to_text(&self) -> String {
        format_rational(self)
    }
    fn parse_text(s: &str) -> Option<Self> {
        parse_rational(s)
    }
    fn is_negative(&self) -> bool {
        num_traits::Signed::is_negative(self)
    }
}

impl TextCoeff for f64 {
    fn to_text(&self) -> String {
        format!("{self}")
    }
    fn parse_text(s: &str) -> Option<Self> {
        s.trim().parse().ok()
    }
    fn is_negative(&self) -> bool {
        *self < 0.0
    }
}

fn blade_label(mask: usize, n: usize) -> String {
    let idx: Vec<String> = (0..n)
        .filter(|i| mask & (1 << i) != 0)
        .map(|i| (i + 1).to_string())
        .collect();
    if n >= 10 {
        format!("e{}", idx.join("_"))
    } else {
        format!("e{}", idx.concat())
    }
}

fn parse_blade(label: &str, n: usize) -> Result<usize> {
    let body = label
        .strip_prefix('e')
        .ok_or_else(|| Error::Parse(format!("bad blade '{label}'")))?;
    let indices: Vec<usize> = if body.contains('_') || n >= 10 {
        body.split('_')
            .map(|t| {
                t.parse()
                    .map_err(|_| Error::Parse(format!("bad blade '{label}'")))
            })
            .collect::<Result<_>>()?
    } else {
        body.chars()
            .map(|c| {
                c.to_digit(10)
                    .map(|d| d as usize)
                    .ok_or_else(|| Error::Parse(format!("bad blade '{label}'")))
            })
            .collect::<Result<_>>()?
    };
    let mut mask = 0usize;
    let mut last = 0usize;
    for i in indices {
        if i == 0 || i > n || i <= last {
            return Err(Error::Parse(format!(
                "blade '{label}' must list increasing indices in 1..={n}"
            )));
        }
        last = i;
        mask |= 1 << (i - 1);
    }
    Ok(mask)
}

pub fn format_multivector<R: TextCoeff>(m: &Multivector<R>) -> String {
    let mut out = String::new();
    for (mask, c) in m.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let mag = if neg { c.neg() } else { c.clone() };
        let body = if mask == 0 {
            mag.to_text()
        } else {
            format!("{}*{}", mag.to_text(), blade_label(mask, m.dim()))
        };
        match (out.is_empty(), neg) {
            (true, false) => out.push_str(&body),
            (true, true) => {
                out.push('-');
                out.push_str(&body);
            }
            (false, false) => {
                out.push_str(" + ");
                out.push_str(&body);
            }
            (false, true) => {
                out.push_str(" - ");
                out.push_str(&body);
            }
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

fn split_terms(text: &str) -> Vec<String> {
    let chars: Vec<char> = text.chars().filter(|c| !c.is_whitespace()).collect();
    let mut terms = Vec::new();
    let mut cur = String::new();
    for (i, &c) in chars.iter().enumerate() {
        let exponent_sign = i >= 2
            && matches!(chars[i - 1], 'e' | 'E')
            && (chars[i - 2].is_ascii_digit() || chars[i - 2] == '.');
        if (c == '+' || c == '-') && !cur.is_empty() && !exponent_sign {
            terms.push(std::mem::take(&mut cur));
        }
        cur.push(c);
    }
    if !cur.is_empty() {
        terms.push(cur);
    }
    terms
}

pub fn parse_multivector<R: TextCoeff>(text: &str, n: usize) -> Result<Multivector<R>> {
    let mut m = Multivector::<R>::try_zero(n)?;
    for term in split_terms(text) {
        let (sign, body) = match term.strip_prefix('-') {
            Some(b) => (true, b),
            None => (false, term.strip_prefix('+').unwrap_or(&term)),
        };
        let (coeff_text, mask) = match body.split_once('*') {
            Some((c, b)) => (c, parse_blade(b, n)?),
            None if body.starts_with('e') => ("1", parse_blade(body, n)?),
            None => (body, 0),
        };
        let mut c = R::parse_text(coeff_text)
            .ok_or_else(|| Error::Parse(format!("bad coefficient '{coeff_text}'")))?;
        if sign {
            c = c.neg();
        }
        let updated = m.coeff(mask).add(&c);
        m.set(mask, updated);
    }
    Ok(m)
}

/// Parses `x0,x1,...,xn`.
pub fn parse_paravector<R: TextCoeff>(text: &str) -> Result<Paravector<R>> {
    let comps = text
        .split(',')
        .map(|t| R::parse_text(t).ok_or_else(|| Error::Parse(format!("bad component '{t}'"))))
        .collect::<Result<Vec<R>>>()?;
    Paravector::from_components(comps)
}

/// JSON form of a multivector: nonzero blades with text coefficients.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MultivectorJson {
    pub n: usize,
    pub text: String,
    pub terms: Vec<BladeTerm>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BladeTerm {
    pub blade: String,
    pub coeff: String,
}

impl MultivectorJson {
    pub fn from_multivector<R: TextCoeff>(m: &Multivector<R>) -> Self {
        let terms = m
            .coeffs()
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(mask, c)| BladeTerm {
                blade: if mask == 0 {
                    "1".into()
                } else {
                    blade_label(mask, m.dim())
                },
                coeff: c.to_text(),
            })
            .collect();
        MultivectorJson {
            n: m.dim(),
            text: format_multivector(m),
            terms,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(p: i64, d: i64) -> Rational {
        Rational::new(p.into(), d.into())
    }

    #[test]
    fn formats_mixed_signs() {
        let mut m = Multivector::<Rational>::zero(3);
        m.set(0, q(-8, 25));
        m.set(1, q(-4, 25));
        assert_eq!(format_multivector(&m), "-8/25 - 4/25*e1");
        let mut m = Multivector::<Rational>::zero(3);
        m.set(0, q(2, 1));
        m.set(1, q(3, 1));
        m.set(3, q(1, 1));
        assert_eq!(format_multivector(&m), "2 + 3*e1 + 1*e12");
        assert_eq!(format_multivector(&Multivector::<Rational>::zero(2)), "0");
    }

    #[test]
    fn parses_what_it_prints() {
        let text = "2 + 3*e1 + 1*e12 - 1/2*e123";
        let m: Multivector<Rational> = parse_multivector(text, 3).unwrap();
        assert_eq!(format_multivector(&m), text);
        let f: Multivector<f64> = parse_multivector("1e-3*e2 - e13 + 2.5", 3).unwrap();
        assert_eq!(*f.coeff(0b010), 1e-3);
        assert_eq!(*f.coeff(0b101), -1.0);
        assert_eq!(*f.coeff(0), 2.5);
    }

    #[test]
    fn wide_algebra_labels() {
        let m = Multivector::<Rational>::blade(11, (1 << 2) | (1 << 10), q(1, 1));
        let text = format_multivector(&m);
        assert_eq!(text, "1*e3_11");
        assert_eq!(parse_multivector::<Rational>(&text, 11).unwrap(), m);
        assert_eq!(
            parse_multivector::<Rational>("e10", 11).unwrap(),
            Multivector::generator(11, 10)
        );
    }

    #[test]
    fn rejects_bad_blades() {
        assert!(parse_multivector::<Rational>("e4", 3).is_err());
        assert!(parse_multivector::<Rational>("e21", 3).is_err());
        assert!(parse_multivector::<Rational>("2*x1", 3).is_err());
    }

    #[test]
    fn paravector_text() {
        let p: Paravector<Rational> = parse_paravector("2,0,1/2,-3").unwrap();
        assert_eq!(p.dim(), 3);
        assert_eq!(p.vector()[1], q(1, 2));
        assert!(parse_paravector::<Rational>("1").is_err());
    }
}
