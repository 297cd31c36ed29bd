//! Class literals such as `x1^2*x3 + (2/3)t*x2` or `-t2 + 1/2*t`.

use num_traits::One;

use crate::basealg::{BaseElement, GradedBaseAlgebra};
use crate::error::{Error, Result};
use crate::exactnum::{parse_scalar, Scalar};
use crate::srbundle::{BundleElement, BundleRing};

type Term = (Scalar, Vec<(String, u32)>);

struct Lexer<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn take_while(&mut self, f: impl Fn(char) -> bool) -> &'a str {
        let start = self.pos;
        while let Some(c) = self.peek() {
            if !f(c) {
                break;
            }
            self.pos += c.len_utf8();
        }
        &self.src[start..self.pos]
    }

    fn err(&self, msg: &str) -> Error {
        Error::Parse(format!("{msg} at offset {} in {:?}", self.pos, self.src))
    }
}

fn is_ident(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '|'
}

fn number(lx: &mut Lexer) -> Result<Scalar> {
    let s = lx.take_while(|c| c.is_ascii_digit() || c == '/');
    parse_scalar(s).map_err(|_| lx.err("bad number"))
}

fn parse_terms(src: &str) -> Result<Vec<Term>> {
    let mut lx = Lexer { src, pos: 0 };
    let mut terms = Vec::new();
    let mut first = true;
    loop {
        lx.skip_ws();
        if lx.peek().is_none() {
            if first {
                return Err(lx.err("empty literal"));
            }
            break;
        }
        let mut sign = Scalar::one();
        if lx.eat('-') {
            sign = -sign;
        } else if !lx.eat('+') && !first {
            return Err(lx.err("expected '+' or '-'"));
        }
        first = false;
        let mut coeff = sign;
        let mut factors = Vec::new();
        let mut expect_factor = false;
        let mut seen = false;
        loop {
            lx.skip_ws();
            match lx.peek() {
                Some('(') => {
                    lx.pos += 1;
                    lx.skip_ws();
                    let neg = lx.eat('-');
                    lx.skip_ws();
                    let v = number(&mut lx)?;
                    if !lx.eat(')') {
                        return Err(lx.err("expected ')'"));
                    }
                    coeff *= if neg { -v } else { v };
                }
                Some(c) if c.is_ascii_digit() => {
                    coeff *= number(&mut lx)?;
                }
                Some(c) if is_ident(c) => {
                    let name = lx.take_while(is_ident).to_string();
                    let mut pow = 1;
                    if lx.eat('^') {
                        lx.skip_ws();
                        let p = lx.take_while(|c| c.is_ascii_digit());
                        pow = p.parse().map_err(|_| lx.err("bad exponent"))?;
                    }
                    factors.push((name, pow));
                }
                _ => {
                    if expect_factor {
                        return Err(lx.err("dangling '*'"));
                    }
                    if !seen {
                        return Err(lx.err("expected a term"));
                    }
                    break;
                }
            }
            seen = true;
            expect_factor = lx.eat('*');
            if !expect_factor {
                // juxtaposition such as `(2/3)t` is allowed
                lx.skip_ws();
                if !matches!(lx.peek(), Some(c) if is_ident(c) || c == '(') {
                    break;
                }
            }
        }
        terms.push((coeff, factors));
    }
    Ok(terms)
}

fn x_index(name: &str, s: usize) -> Option<usize> {
    let k: usize = name.strip_prefix('x')?.parse().ok()?;
    (1..=s).contains(&k).then(|| k - 1)
}

/// Parses a literal in the ring: `x<k>` are divisor classes (1-based),
/// other identifiers are base basis names.
pub fn parse_class(ring: &BundleRing, src: &str) -> Result<BundleElement> {
    let base = ring.base();
    let mut out = BundleElement::zero();
    for (coeff, factors) in parse_terms(src)? {
        let mut el = ring.from_base(&base.one()).scale(&coeff);
        for (name, pow) in factors {
            let f = if let Some(i) = x_index(&name, ring.s()) {
                ring.x(i)
            } else if let Some(b) = base.index_of(&name) {
                ring.from_base(&base.basis(b))
            } else {
                return Err(Error::Parse(format!("unknown symbol {name:?}")));
            };
            el = ring.mul(&el, &ring.pow(&f, pow));
        }
        out = out.add(&el);
    }
    Ok(out)
}

/// Parses a base-algebra literal; only basis names are allowed.
pub fn parse_base(base: &GradedBaseAlgebra, src: &str) -> Result<BaseElement> {
    let mut out = base.zero();
    for (coeff, factors) in parse_terms(src)? {
        let mut el: BaseElement = base.one().iter().map(|c| c * &coeff).collect();
        for (name, pow) in factors {
            let b = base
                .index_of(&name)
                .ok_or_else(|| Error::Parse(format!("unknown base element {name:?}")))?;
            for _ in 0..pow {
                el = base.mul(&el, &base.basis(b));
            }
        }
        for (o, e) in out.iter_mut().zip(el) {
            *o += e;
        }
    }
    Ok(out)
}

/// Parses `;`-separated class literals.
pub fn parse_class_list(ring: &BundleRing, src: &str) -> Result<Vec<BundleElement>> {
    src.split(';')
        .filter(|s| !s.trim().is_empty())
        .map(|s| parse_class(ring, s))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::exactnum::{int, rat};

    #[test]
    fn parses_mixed_literal() {
        let ring = catalog::lookup("hirzebruch?a=2").unwrap().ring().unwrap();
        let el = parse_class(&ring, "x1^2*x2 + (2/3)t*x2").unwrap();
        let expect = ring
            .mul(&ring.pow(&ring.x(0), 2), &ring.x(1))
            .add(&ring.mul(&ring.from_base(&[int(0), rat(2, 3)]), &ring.x(1)));
        assert_eq!(el, expect);
        let neg = parse_class(&ring, "-x1 - 1/2*x2").unwrap();
        assert_eq!(neg, ring.x(0).scale(&int(-1)).add(&ring.x(1).scale(&rat(-1, 2))));
        assert_eq!(parse_class(&ring, "3").unwrap(), ring.one().scale(&int(3)));
        assert_eq!(parse_class(&ring, "(-2)x1").unwrap(), ring.x(0).scale(&int(-2)));
    }

    #[test]
    fn base_literals() {
        let b = GradedBaseAlgebra::make_cp(2);
        assert_eq!(parse_base(&b, "t + t2").unwrap(), vec![int(0), int(1), int(1)]);
        assert_eq!(parse_base(&b, "t^2").unwrap(), b.basis(2));
        assert_eq!(parse_base(&b, "1").unwrap(), b.one());
        assert!(parse_base(&b, "x1").is_err());
    }

    #[test]
    fn rejects_garbage() {
        let ring = catalog::lookup("cp2").unwrap().ring().unwrap();
        for bad in ["", "x1 +", "x1 * ", "x9", "x1 x2 )", "(1/0)x1", "x1^"] {
            assert!(parse_class(&ring, bad).is_err(), "{bad:?}");
        }
        let list = parse_class_list(&ring, "x1; x2+x3").unwrap();
        assert_eq!(list.len(), 2);
    }
}
