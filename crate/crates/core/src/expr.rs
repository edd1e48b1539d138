//! Linear forms written as text: `u1+2*u2-x`, and substitution maps
//! `u1->u1+u2,x->x`.

use crate::error::{Error, Result};
use crate::exactmath::{rat, Rational};
use crate::grobner::Polynomial;

/// Integer coefficient vector of a linear form over `vars`.
pub fn parse_linear_form(text: &str, vars: &[String]) -> Result<Vec<i64>> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(Error::parse("expression", "empty expression"));
    }
    let mut coeffs = vec![0i64; vars.len()];
    let bytes = s.as_bytes();
    let mut pos = 0;
    while pos < bytes.len() {
        let mut sign = 1i64;
        if bytes[pos] == b'+' || bytes[pos] == b'-' {
            if bytes[pos] == b'-' {
                sign = -1;
            }
            pos += 1;
        } else if pos > 0 {
            return Err(Error::parse(format!("column {}", pos + 1), "expected '+' or '-'"));
        }
        let start = pos;
        while pos < bytes.len() && bytes[pos] != b'+' && bytes[pos] != b'-' {
            pos += 1;
        }
        let term = &s[start..pos];
        let (coef, name) = match term.split_once('*') {
            Some((c, v)) => (
                c.parse::<i64>()
                    .map_err(|_| Error::parse(format!("column {}", start + 1), format!("bad coefficient '{c}'")))?,
                v,
            ),
            None => {
                let digits = term.chars().take_while(char::is_ascii_digit).count();
                if digits == term.len() && digits > 0 {
                    return Err(Error::parse(
                        format!("column {}", start + 1),
                        "constants are not allowed in a linear form",
                    ));
                }
                if digits > 0 {
                    (term[..digits].parse::<i64>().expect("digits"), &term[digits..])
                } else {
                    (1, term)
                }
            }
        };
        let k = vars.iter().position(|v| v == name).ok_or_else(|| {
            Error::parse(
                format!("column {}", start + 1),
                format!("unknown variable '{name}' (expected one of {})", vars.join(",")),
            )
        })?;
        coeffs[k] += sign * coef;
    }
    Ok(coeffs)
}

/// A map `var -> linear form`; variables not mentioned map to themselves.
pub fn parse_substitution(text: &str, vars: &[String]) -> Result<Vec<Vec<i64>>> {
    let n = vars.len();
    let mut images: Vec<Option<Vec<i64>>> = vec![None; n];
    for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (lhs, rhs) = part
            .split_once("->")
            .ok_or_else(|| Error::parse(part.to_string(), "expected 'var->expression'"))?;
        let lhs = lhs.trim();
        let k = vars
            .iter()
            .position(|v| v == lhs)
            .ok_or_else(|| Error::parse(part.to_string(), format!("unknown variable '{lhs}'")))?;
        if images[k].is_some() {
            return Err(Error::parse(part.to_string(), format!("'{lhs}' is mapped twice")));
        }
        images[k] = Some(parse_linear_form(rhs, vars)?);
    }
    Ok(images
        .into_iter()
        .enumerate()
        .map(|(k, im)| {
            im.unwrap_or_else(|| {
                let mut e = vec![0; n];
                e[k] = 1;
                e
            })
        })
        .collect())
}

/// A polynomial with integer coefficients: `+ - * ^`, parentheses,
/// integer constants and the names in `vars`. `3u1` means `3*u1`.
pub fn parse_polynomial(text: &str, vars: &[String]) -> Result<Polynomial<Rational>> {
    let chars: Vec<char> = text.chars().filter(|c| !c.is_whitespace()).collect();
    if chars.is_empty() {
        return Err(Error::parse("expression", "empty expression"));
    }
    let mut p = PolyParser {
        chars: &chars,
        pos: 0,
        vars,
    };
    let out = p.sum()?;
    if p.pos < chars.len() {
        return Err(p.error(format!("unexpected '{}'", chars[p.pos])));
    }
    Ok(out)
}

struct PolyParser<'a> {
    chars: &'a [char],
    pos: usize,
    vars: &'a [String],
}

impl PolyParser<'_> {
    fn error(&self, msg: impl Into<String>) -> Error {
        Error::parse(format!("column {}", self.pos + 1), msg)
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn sum(&mut self) -> Result<Polynomial<Rational>> {
        let n = self.vars.len();
        let mut acc = Polynomial::zero(n);
        let mut first = true;
        loop {
            let neg = match self.peek() {
                Some('+') => {
                    self.pos += 1;
                    false
                }
                Some('-') => {
                    self.pos += 1;
                    true
                }
                _ if first => false,
                _ => return Ok(acc),
            };
            let t = self.product()?;
            acc = if neg { acc.sub(&t) } else { acc.add(&t) };
            first = false;
        }
    }

    fn product(&mut self) -> Result<Polynomial<Rational>> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.pos += 1;
                    acc = acc.mul(&self.power()?);
                }
                // implicit product: 3u1, 2(x-u1), (x-u1)(x-u2)
                Some(c) if c == '(' || c.is_ascii_alphabetic() => acc = acc.mul(&self.power()?),
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<Polynomial<Rational>> {
        let base = self.atom()?;
        if self.peek() == Some('^') {
            self.pos += 1;
            let e = self.integer()?;
            let e = u32::try_from(e).map_err(|_| self.error("exponent out of range"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<i64> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected an integer"));
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse().map_err(|_| self.error(format!("integer '{s}' out of range")))
    }

    fn atom(&mut self) -> Result<Polynomial<Rational>> {
        let n = self.vars.len();
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let inner = self.sum()?;
                if self.peek() != Some(')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => Ok(Polynomial::constant(n, rat(self.integer()?))),
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.peek().is_some_and(|c| c.is_ascii_alphanumeric() || c == '_') {
                    self.pos += 1;
                }
                let name: String = self.chars[start..self.pos].iter().collect();
                let k = self.vars.iter().position(|v| *v == name).ok_or_else(|| {
                    Error::parse(
                        format!("column {}", start + 1),
                        format!("unknown variable '{name}' (expected one of {})", self.vars.join(",")),
                    )
                })?;
                Ok(Polynomial::var(n, k))
            }
            Some(c) => Err(self.error(format!("unexpected '{c}'"))),
            None => Err(self.error("unexpected end of expression")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vars() -> Vec<String> {
        ["u1", "u2", "u3", "x"].iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn linear_forms() {
        assert_eq!(parse_linear_form("u1+2*u2-x", &vars()).unwrap(), vec![1, 2, 0, -1]);
        assert_eq!(parse_linear_form(" -u3 + 3u1 ", &vars()).unwrap(), vec![3, 0, -1, 0]);
        assert_eq!(parse_linear_form("u2-u2", &vars()).unwrap(), vec![0, 0, 0, 0]);
        assert!(parse_linear_form("u9", &vars()).is_err());
        assert!(parse_linear_form("u1+3", &vars()).is_err());
        assert!(parse_linear_form("", &vars()).is_err());
    }

    #[test]
    fn polynomials() {
        let v = vars();
        let p = parse_polynomial("u1*(x-u2)*u3", &v).unwrap();
        let q = parse_polynomial("u1 x u3 - u1u2u3", &v);
        assert!(q.is_err());
        let q = parse_polynomial("x*u1*u3 - u1*u2*u3", &v).unwrap();
        assert_eq!(p, q);
        assert_eq!(
            parse_polynomial("(u3-u2)^2", &v).unwrap(),
            parse_polynomial("u3^2-2*u2*u3+u2^2", &v).unwrap()
        );
        assert_eq!(parse_polynomial("3u1", &v).unwrap(), parse_polynomial("u1+u1+u1", &v).unwrap());
        assert!(parse_polynomial("u1+", &v).is_err());
        assert!(parse_polynomial("(u1", &v).is_err());
        assert!(parse_polynomial("u7", &v).is_err());
    }

    #[test]
    fn substitution_maps() {
        let m = parse_substitution("u1->u1+u2, u2->u2+u3+x", &vars()).unwrap();
        assert_eq!(m[0], vec![1, 1, 0, 0]);
        assert_eq!(m[1], vec![0, 1, 1, 1]);
        assert_eq!(m[3], vec![0, 0, 0, 1]);
        assert!(parse_substitution("u1->u2,u1->u3", &vars()).is_err());
        assert!(parse_substitution("u1=u2", &vars()).is_err());
    }
}
