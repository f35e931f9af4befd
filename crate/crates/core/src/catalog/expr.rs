//! Arithmetic expressions for table constants, evaluated at any precision.
//!
//! The grammar covers what the rule tables need: decimal literals, `pi`,
//! `sqrt(..)`, named constants, `+ - * /`, unary minus, and powers with
//! integer or half-integer exponents such as `pi^(5/2)` or `2^(11/2)`.

use num_bigint::BigInt;
use num_traits::One;

use crate::bigreal::parse_decimal_ratio;
use crate::real::Real;

pub(crate) struct Evaluator<'a, T: Real> {
    ctx: &'a T::Ctx,
    vars: &'a [(String, T)],
    src: &'a [u8],
    pos: usize,
}

pub(crate) fn eval<T: Real>(ctx: &T::Ctx, vars: &[(String, T)], src: &str) -> Result<T, String> {
    let mut e = Evaluator { ctx, vars, src: src.as_bytes(), pos: 0 };
    let v = e.expr()?;
    e.skip_ws();
    if e.pos != e.src.len() {
        return Err(format!("trailing input in `{src}` at {}", e.pos));
    }
    Ok(v)
}

impl<T: Real> Evaluator<'_, T> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<(), String> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(format!("expected `{}` at {}", c as char, self.pos))
        }
    }

    fn expr(&mut self) -> Result<T, String> {
        let mut acc = self.term()?;
        loop {
            if self.eat(b'+') {
                acc = acc + self.term()?;
            } else if self.eat(b'-') {
                acc = acc - self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<T, String> {
        let mut acc = self.unary()?;
        loop {
            if self.eat(b'*') {
                acc = acc * self.unary()?;
            } else if self.eat(b'/') {
                let d = self.unary()?;
                if d.is_zero() {
                    return Err("division by zero".into());
                }
                acc = acc / d;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<T, String> {
        if self.eat(b'-') {
            return Ok(-self.unary()?);
        }
        let base = self.atom()?;
        if self.eat(b'^') {
            let (p, q) = self.exponent()?;
            return power(base, p, q);
        }
        Ok(base)
    }

    /// `k`, `(k)` or `(p/q)` with integers.
    fn exponent(&mut self) -> Result<(i64, i64), String> {
        if self.eat(b'(') {
            let neg = self.eat(b'-');
            let p = self.integer()?;
            let q = if self.eat(b'/') { self.integer()? } else { 1 };
            self.expect(b')')?;
            Ok((if neg { -p } else { p }, q))
        } else {
            Ok((self.integer()?, 1))
        }
    }

    fn integer(&mut self) -> Result<i64, String> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| format!("expected integer at {start}"))
    }

    fn atom(&mut self) -> Result<T, String> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                self.expect(b')')?;
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() || c == b'.' => {
                let start = self.pos;
                while self.pos < self.src.len() && (self.src[self.pos].is_ascii_digit() || self.src[self.pos] == b'.') {
                    self.pos += 1;
                }
                let lit = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                let (num, den) = parse_decimal_ratio(lit).ok_or_else(|| format!("bad number `{lit}`"))?;
                Ok(T::from_big_ratio(self.ctx, &num, &den))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len() && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_') {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                match name {
                    "pi" => Ok(T::pi(self.ctx)),
                    "sqrt" => {
                        self.expect(b'(')?;
                        let v = self.expr()?;
                        self.expect(b')')?;
                        if v.is_negative() {
                            return Err("square root of a negative value".into());
                        }
                        Ok(v.sqrt())
                    }
                    _ => self
                        .vars
                        .iter()
                        .rev()
                        .find(|(n, _)| n == name)
                        .map(|(_, v)| v.clone())
                        .ok_or_else(|| format!("unknown name `{name}`")),
                }
            }
            other => Err(format!("unexpected {:?} at {}", other.map(char::from), self.pos)),
        }
    }
}

fn power<T: Real>(base: T, p: i64, q: i64) -> Result<T, String> {
    let root = match q {
        1 => base,
        2 => {
            if base.is_negative() {
                return Err("half-integer power of a negative value".into());
            }
            base.sqrt()
        }
        _ => return Err(format!("unsupported exponent denominator {q}")),
    };
    let mag = root.powu(p.unsigned_abs() as u32);
    if p < 0 {
        let ctx = mag.ctx();
        Ok(T::from_big_ratio(&ctx, &BigInt::one(), &BigInt::one()) / mag)
    } else {
        Ok(mag)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn ev(s: &str) -> f64 {
        eval::<f64>(&(), &[("t".to_string(), 2.0)], s).unwrap()
    }

    #[test]
    fn evaluates_table_style_constants() {
        assert!((ev("(sqrt(7)+1)/2") - (7f64.sqrt() + 1.0) / 2.0).abs() < 1e-15);
        assert!((ev("pi^(3/2)*(2*sqrt(7)+7)/42") - PI.powf(1.5) * (2.0 * 7f64.sqrt() + 7.0) / 42.0).abs() < 1e-15);
        assert!((ev("-pi^2/9") + PI * PI / 9.0).abs() < 1e-15);
        assert!((ev("sqrt(t*3/2)") - 3f64.sqrt()).abs() < 1e-15);
        assert!((ev("2^(11/2)") - 2f64.powf(5.5)).abs() < 1e-12);
        assert_eq!(ev("-0.25"), -0.25);
        assert_eq!(ev("2^(-1)"), 0.5);
    }

    #[test]
    fn reports_errors() {
        assert!(eval::<f64>(&(), &[], "sqrt(-1)").is_err());
        assert!(eval::<f64>(&(), &[], "x+1").is_err());
        assert!(eval::<f64>(&(), &[], "1+").is_err());
        assert!(eval::<f64>(&(), &[], "(1").is_err());
    }
}
