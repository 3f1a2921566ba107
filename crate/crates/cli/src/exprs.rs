//! Parsers for the little input languages: rational-function expressions in
//! `x`, field-element literals `[c0,c1,...]`, and additive-polynomial
//! literals `[(i,[coeffs]),...]`.

use aslab_core::addpoly::AdditivePolynomial;
use aslab_core::ff::{Field, FieldElement, Poly, RationalFunction};

pub fn parse_element(field: &Field, s: &str) -> Result<FieldElement, String> {
    let t = s.trim();
    // bare integer shorthand
    if !t.starts_with('[') {
        let v: i64 = t.parse().map_err(|_| format!("bad element literal: {s}"))?;
        return Ok(field.from_int(v));
    }
    let inner = t
        .strip_prefix('[')
        .and_then(|r| r.strip_suffix(']'))
        .ok_or_else(|| format!("bad element literal: {s}"))?;
    let mut coeffs = vec![];
    for part in inner.split(',') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        let v: i64 = part.parse().map_err(|_| format!("bad coefficient: {part}"))?;
        let p = field.p() as i64;
        coeffs.push((((v % p) + p) % p) as u64);
    }
    field.elem(&coeffs).map_err(|e| e.to_string())
}

/// `[(exp_of_p, [coeffs]), ...]`, e.g. `[(0,[1]),(1,[1])]` for `x^p + x`.
pub fn parse_additive(field: &Field, s: &str) -> Result<AdditivePolynomial, String> {
    let t = s.trim();
    let inner = t
        .strip_prefix('[')
        .and_then(|r| r.strip_suffix(']'))
        .ok_or_else(|| format!("bad additive literal: {s}"))?;
    let mut pairs: Vec<(usize, FieldElement)> = vec![];
    let mut rest = inner.trim();
    while !rest.is_empty() {
        let rest2 = rest
            .strip_prefix('(')
            .ok_or_else(|| format!("expected '(' in additive literal near: {rest}"))?;
        let close = matching_paren(rest2).ok_or("unbalanced parentheses")?;
        let body = &rest2[..close];
        let comma = body.find(',').ok_or("expected (index, [coeffs])")?;
        let idx: usize =
            body[..comma].trim().parse().map_err(|_| "bad exponent index".to_string())?;
        let elem = parse_element(field, body[comma + 1..].trim())?;
        pairs.push((idx, elem));
        rest = rest2[close + 1..].trim().trim_start_matches(',').trim();
    }
    let nu = pairs.iter().map(|(i, _)| *i).max().ok_or("empty additive literal")?;
    let mut coeffs = vec![field.zero(); nu + 1];
    for (i, c) in pairs {
        coeffs[i] = c;
    }
    AdditivePolynomial::new(field, coeffs).map_err(|e| e.to_string())
}

fn matching_paren(s: &str) -> Option<usize> {
    let mut depth = 1usize;
    for (i, c) in s.char_indices() {
        match c {
            '(' | '[' => depth += 1,
            ')' | ']' => {
                depth -= 1;
                if depth == 0 {
                    return Some(i);
                }
            }
            _ => {}
        }
    }
    None
}

/// Recursive-descent parser for expressions in `x` over a finite field:
/// integers, `x`, `+ - * / ^`, parentheses.
pub struct ExprParser<'a> {
    field: &'a Field,
    chars: Vec<char>,
    pos: usize,
}

impl<'a> ExprParser<'a> {
    pub fn parse(field: &'a Field, src: &str) -> Result<RationalFunction, String> {
        let mut p = ExprParser { field, chars: src.chars().filter(|c| !c.is_whitespace()).collect(), pos: 0 };
        let e = p.expr()?;
        if p.pos != p.chars.len() {
            return Err(format!("unexpected input at position {}", p.pos));
        }
        Ok(e)
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek();
        if c.is_some() {
            self.pos += 1;
        }
        c
    }

    fn expr(&mut self) -> Result<RationalFunction, String> {
        let mut acc = if self.peek() == Some('-') {
            self.bump();
            self.term()?.neg()
        } else {
            self.term()?
        };
        while let Some(c) = self.peek() {
            match c {
                '+' => {
                    self.bump();
                    acc = acc.add(&self.term()?);
                }
                '-' => {
                    self.bump();
                    acc = acc.sub(&self.term()?);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<RationalFunction, String> {
        let mut acc = self.factor()?;
        while let Some(c) = self.peek() {
            match c {
                '*' => {
                    self.bump();
                    acc = acc.mul(&self.factor()?);
                }
                '/' => {
                    self.bump();
                    let rhs = self.factor()?;
                    acc = acc.div(&rhs).map_err(|e| e.to_string())?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<RationalFunction, String> {
        let base = self.atom()?;
        if self.peek() == Some('^') {
            self.bump();
            let mut digits = String::new();
            while let Some(c) = self.peek() {
                if c.is_ascii_digit() {
                    digits.push(c);
                    self.bump();
                } else {
                    break;
                }
            }
            let e: u32 = digits.parse().map_err(|_| "bad exponent".to_string())?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<RationalFunction, String> {
        match self.peek() {
            Some('(') => {
                self.bump();
                let e = self.expr()?;
                if self.bump() != Some(')') {
                    return Err("expected ')'".into());
                }
                Ok(e)
            }
            Some('x') | Some('u') => {
                self.bump();
                Ok(RationalFunction::from_poly(Poly::x(self.field)))
            }
            Some(c) if c.is_ascii_digit() => {
                let mut digits = String::new();
                while let Some(c) = self.peek() {
                    if c.is_ascii_digit() {
                        digits.push(c);
                        self.bump();
                    } else {
                        break;
                    }
                }
                let v: i64 = digits.parse().map_err(|_| "bad integer".to_string())?;
                Ok(RationalFunction::constant(self.field.from_int(v)))
            }
            other => Err(format!("unexpected token: {other:?}")),
        }
    }
}

/// `"p^n"` or a bare prime.
pub fn parse_field_literal(s: &str) -> Result<(u64, u32), String> {
    let t = s.trim();
    if let Some((p, n)) = t.split_once('^') {
        let p: u64 = p.trim().parse().map_err(|_| format!("bad field literal: {s}"))?;
        let n: u32 = n.trim().parse().map_err(|_| format!("bad field literal: {s}"))?;
        Ok((p, n))
    } else {
        let p: u64 = t.parse().map_err(|_| format!("bad field literal: {s}"))?;
        Ok((p, 1))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_exprs() {
        let f5 = Field::new(5, 1).unwrap();
        let f = ExprParser::parse(&f5, "x^2 + 1/x").unwrap();
        assert_eq!(f.pole_type(), vec![(1, 1), (2, 1)]);
        // three simple poles: two finite geometric points plus infinity
        let g = ExprParser::parse(&f5, "x + 1/x + 1/(x-1)").unwrap();
        assert_eq!(g.pole_type(), vec![(1, 1), (1, 2)]);
        let c = ExprParser::parse(&f5, "(x^2-1)/(x-1)").unwrap();
        assert!(c.is_polynomial());
        assert!(ExprParser::parse(&f5, "x +").is_err());
        assert!(ExprParser::parse(&f5, "1/0").is_err());
    }

    #[test]
    fn parse_literals() {
        let f9 = Field::new(3, 2).unwrap();
        let i = parse_element(&f9, "[0,1]").unwrap();
        assert_eq!(i.coeffs(), vec![0, 1]);
        assert_eq!(parse_element(&f9, "2").unwrap().coeffs(), vec![2, 0]);
        let a = parse_additive(&f9, "[(0,[1]),(1,[1])]").unwrap();
        assert_eq!(a.nu(), 1);
        assert_eq!(parse_field_literal("3^2"), Ok((3, 2)));
        assert_eq!(parse_field_literal("7"), Ok((7, 1)));
    }
}
