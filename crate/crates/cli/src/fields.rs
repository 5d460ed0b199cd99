//! Field files for `subcritical`: one vector field on the line per row,
//! written as a sum of terms `coef*x^a*d/dx`.

use std::sync::Arc;

use superali_core::vectorfields::{DiffOp, SuperDomain};
use superali_core::superscalar::SuperScalar;
use superali_core::Rational;

pub const FORMAT_HELP: &str = "\
Field file: four non-empty lines X1, X2, X3, Y, each a vector field on the
line in the coordinate x. A field is a sum of terms `coef*x^a*d/dx` joined
by + or -; the coefficient (an integer or p/q) and the power may be omitted,
and `x` stands for `x^1`. A line holding just `0` is the zero field.
Text after `#` is a comment.

Example:
  d/dx            # X1
  x*d/dx          # X2
  x^2*d/dx        # X3
  -1/2*x^3*d/dx + 2*d/dx";

pub fn line_domain() -> Arc<SuperDomain> {
    SuperDomain::new(&[("x", vec![])], &[], []).expect("one even coordinate")
}

fn split_terms(s: &str) -> Vec<&str> {
    let bytes = s.as_bytes();
    let mut out = Vec::new();
    let mut start = 0;
    for i in 1..bytes.len() {
        if (bytes[i] == b'+' || bytes[i] == b'-') && !matches!(bytes[i - 1], b'*' | b'^' | b'+' | b'-') {
            out.push(&s[start..i]);
            start = i;
        }
    }
    out.push(&s[start..]);
    out
}

fn parse_term(term: &str) -> Result<(Rational, u32), String> {
    let (neg, body) = match term.as_bytes().first() {
        Some(b'-') => (true, &term[1..]),
        Some(b'+') => (false, &term[1..]),
        _ => (false, term),
    };
    let mut coef = Rational::ONE;
    let mut exp = 0u32;
    let mut derivs = 0;
    for factor in body.split('*') {
        if factor == "d/dx" {
            derivs += 1;
        } else if factor == "x" {
            exp += 1;
        } else if let Some(a) = factor.strip_prefix("x^") {
            exp += a.parse::<u32>().map_err(|_| format!("bad exponent in `{term}`"))?;
        } else {
            let c: Rational = factor.parse().map_err(|_| format!("bad factor `{factor}` in `{term}`"))?;
            coef = &coef * &c;
        }
    }
    if derivs != 1 {
        return Err(format!("term `{term}` needs exactly one d/dx"));
    }
    Ok((if neg { -&coef } else { coef }, exp))
}

pub fn parse_field(domain: &Arc<SuperDomain>, line: &str) -> Result<DiffOp, String> {
    let s: String = line.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err("empty field".into());
    }
    let mut coef = SuperScalar::zero(domain.table());
    if s != "0" {
        let x = domain.coord(0);
        for term in split_terms(&s) {
            let (c, a) = parse_term(term)?;
            coef = &coef + &x.pow(a).scale(&c);
        }
    }
    Ok(DiffOp::vector_field(domain, &[coef]))
}

/// The four fields `X1, X2, X3, Y` of a field file.
pub fn parse_file(domain: &Arc<SuperDomain>, text: &str) -> Result<([DiffOp; 3], DiffOp), String> {
    let mut fields = Vec::new();
    for (no, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        fields.push(parse_field(domain, line).map_err(|e| format!("line {}: {e}", no + 1))?);
    }
    if fields.len() != 4 {
        return Err(format!("expected 4 fields (X1 X2 X3 Y), found {}", fields.len()));
    }
    let y = fields.pop().expect("four");
    let xs: [DiffOp; 3] = fields.try_into().map_err(|_| "expected three fields".to_string())?;
    Ok((xs, y))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn terms_and_signs() {
        let dom = line_domain();
        let x = dom.coord(0);
        let f = parse_field(&dom, "-3/2*x^2*d/dx + d/dx - x*d/dx").unwrap();
        let want = &(&x.pow(2).scale(&Rational::new(-3, 2)) + &SuperScalar::one(dom.table())) - &x;
        assert_eq!(f, DiffOp::vector_field(&dom, &[want]));
        assert!(parse_field(&dom, "0").unwrap().is_zero());
    }

    #[test]
    fn rejects_bad_terms() {
        let dom = line_domain();
        assert!(parse_field(&dom, "x^2").is_err());
        assert!(parse_field(&dom, "y*d/dx").is_err());
        assert!(parse_field(&dom, "d/dx*d/dx").is_err());
    }

    #[test]
    fn file_with_comments() {
        let dom = line_domain();
        let (xs, y) = parse_file(&dom, "# sl2\nd/dx\nx*d/dx # Euler\n\nx^2*d/dx\nx^3*d/dx\n").unwrap();
        assert_eq!(xs[0], DiffOp::partial(&dom, 0));
        assert_eq!(y.field_coefficient(0), dom.coord(0).pow(3));
        assert!(parse_file(&dom, "d/dx\n").is_err());
    }
}
