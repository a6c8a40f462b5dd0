//! Text grammar for polynomials:
//!
//! ```text
//! poly   := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor (['*'] factor)*
//! factor := int ['/' int] | 'x' int ['^' int]
//! ```
//!
//! Whitespace is insignificant.

use alloc::string::ToString;
use alloc::vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use super::{Monomial, PolyError, Polynomial};
use crate::field::Field;

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn err(&self, msg: &str) -> PolyError {
        PolyError::Syntax {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn digits(&mut self) -> Result<&'a str, PolyError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected digits"));
        }
        // ascii digits are valid utf-8
        Ok(core::str::from_utf8(&self.src[start..self.pos]).unwrap_or("0"))
    }

    fn small_int(&mut self) -> Result<u64, PolyError> {
        let start = self.pos;
        let d = self.digits()?;
        d.parse().map_err(|_| PolyError::Syntax {
            pos: start,
            msg: "integer too large".to_string(),
        })
    }
}

pub fn parse<F: Field>(text: &str, num_vars: usize, field: F) -> Result<Polynomial<F>, PolyError> {
    let mut lx = Lexer {
        src: text.as_bytes(),
        pos: 0,
    };
    let mut out = Polynomial::zero(field, num_vars);
    let mut first = true;
    loop {
        let mut sign = BigRational::one();
        match lx.peek() {
            None if first => return Err(lx.err("empty polynomial")),
            None => break,
            Some(b'+') => {
                lx.pos += 1;
            }
            Some(b'-') => {
                lx.pos += 1;
                sign = -sign;
            }
            Some(_) if first => {}
            Some(_) => return Err(lx.err("expected '+' or '-'")),
        }
        first = false;
        let (coeff, mono) = parse_term(&mut lx, num_vars)?;
        let c = field.from_rational(&(coeff * sign))?;
        out.add_term(mono, c);
    }
    Ok(out)
}

fn parse_term(lx: &mut Lexer<'_>, num_vars: usize) -> Result<(BigRational, Monomial), PolyError> {
    let mut coeff = BigRational::one();
    let mut exps = vec![0u32; num_vars];
    let mut saw_factor = false;
    loop {
        match lx.peek() {
            Some(b'*') if saw_factor => {
                lx.pos += 1;
                // a '*' must be followed by another factor
                match lx.peek() {
                    Some(c) if c == b'x' || c.is_ascii_digit() => {}
                    _ => return Err(lx.err("expected factor after '*'")),
                }
            }
            Some(b'x') => {
                let var_pos = lx.pos;
                lx.pos += 1;
                if !lx.src.get(lx.pos).is_some_and(u8::is_ascii_digit) {
                    return Err(lx.err("expected variable index after 'x'"));
                }
                let idx = lx.small_int()? as usize;
                if idx >= num_vars {
                    return Err(PolyError::VariableOutOfRange {
                        index: idx,
                        num_vars,
                        pos: var_pos,
                    });
                }
                let mut e = 1u64;
                if lx.peek() == Some(b'^') {
                    lx.pos += 1;
                    e = lx.small_int()?;
                }
                let e: u32 = e.try_into().map_err(|_| lx.err("exponent too large"))?;
                exps[idx] += e;
                saw_factor = true;
            }
            Some(c) if c.is_ascii_digit() => {
                let num: BigInt = lx.digits()?.parse().map_err(|_| lx.err("bad integer"))?;
                let mut value = BigRational::from_integer(num);
                if lx.peek() == Some(b'/') {
                    lx.pos += 1;
                    let den: BigInt = lx.digits()?.parse().map_err(|_| lx.err("bad integer"))?;
                    if den == BigInt::from(0) {
                        return Err(lx.err("zero denominator"));
                    }
                    value /= BigRational::from_integer(den);
                }
                coeff *= value;
                saw_factor = true;
            }
            _ if saw_factor => break,
            _ => return Err(lx.err("expected a coefficient or variable")),
        }
        if matches!(lx.peek(), Some(b'+') | Some(b'-') | None) {
            break;
        }
    }
    Ok((coeff, Monomial::new(exps)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};

    #[test]
    fn parse_examples() {
        let p = parse("x0^3 + x1^3", 2, Rationals).unwrap();
        assert_eq!(p.num_terms(), 2);
        assert_eq!(p.homogeneous_degree(), Some(3));
        assert!(parse("0", 4, Rationals).unwrap().is_zero());
        let q = parse("3*x0*x1^2 - x2^3", 3, Rationals).unwrap();
        assert_eq!(q.num_terms(), 2);
        assert_eq!(q.homogeneous_degree(), Some(3));
    }

    #[test]
    fn optional_star_and_rationals() {
        let a = parse("3x0 x1^2 - 1/2 x2^3", 3, Rationals).unwrap();
        let b = parse("3*x0*x1^2 - 1/2*x2^3", 3, Rationals).unwrap();
        assert_eq!(a, b);
        let c = parse("x0^3 + x1^3 + x2^3 - 3*x0*x1*x2", 3, Rationals).unwrap();
        assert_eq!(c.num_terms(), 4);
    }

    #[test]
    fn errors_carry_positions() {
        match parse("x0 + x5", 3, Rationals) {
            Err(PolyError::VariableOutOfRange { index: 5, pos: 5, .. }) => {}
            other => panic!("unexpected {other:?}"),
        }
        match parse("x0 + + x1", 2, Rationals) {
            Err(PolyError::Syntax { pos, .. }) => assert_eq!(pos, 5),
            other => panic!("unexpected {other:?}"),
        }
        assert!(parse("", 2, Rationals).is_err());
        assert!(parse("x0 *", 2, Rationals).is_err());
        assert!(parse("x0^", 2, Rationals).is_err());
        assert!(parse("1/0 x0", 2, Rationals).is_err());
        assert!(parse("y0", 2, Rationals).is_err());
    }

    #[test]
    fn prime_mode_rejects_vanishing_denominators() {
        let f7 = PrimeField::new(7).unwrap();
        assert!(parse("1/7*x0", 1, f7).is_err());
        let p = parse("1/2*x0", 1, f7).unwrap();
        assert_eq!(p.render(), "4*x0");
    }
}
