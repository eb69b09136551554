//! Expression parser for the CLI.
//!
//! Grammar: integers, the variables `q x y v w mu p`, the q-number macro
//! `[n]`, operators `+ - * / ^` and parentheses; whitespace-insensitive.
//! Exponents are integers (`q^-2`) or parenthesized rationals with
//! denominator 2 on the base `q` (`q^(1/2)`).

use super::{MFrac, QRat, Var};
use crate::error::{Error, Result};

pub type Expr = MFrac<QRat>;

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

pub fn parse_expr(src: &str) -> Result<Expr> {
    let mut p = Parser { src: src.as_bytes(), pos: 0 };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(Error::Parse(format!("unexpected input at byte {}: {:?}", p.pos, src)));
    }
    Ok(e)
}

/// Parse an expression that must be a pure function of q.
pub fn parse_qrat(src: &str) -> Result<QRat> {
    let e = parse_expr(src)?;
    e.to_coeff()
        .ok_or_else(|| Error::Parse(format!("expected a function of q only: {:?}", src)))
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let c = self.peek()?;
        self.pos += 1;
        Some(c)
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        match self.bump() {
            Some(x) if x == c => Ok(()),
            got => Err(Error::Parse(format!(
                "expected {:?}, got {:?}",
                c as char,
                got.map(|b| b as char)
            ))),
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.bump();
                    acc = acc.add(&self.term()?);
                }
                Some(b'-') => {
                    self.bump();
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.bump();
                    acc = acc.mul(&self.unary()?);
                }
                Some(b'/') => {
                    self.bump();
                    let rhs = self.unary()?;
                    acc = acc
                        .div(&rhs)
                        .ok_or_else(|| Error::Parse("division by zero".into()))?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.peek() == Some(b'-') {
            self.bump();
            Ok(self.unary()?.neg())
        } else {
            self.power()
        }
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if self.peek() != Some(b'^') {
            return Ok(base);
        }
        self.bump();
        let (n, d) = self.exponent()?;
        if d == 1 {
            if base.is_zero() && n < 0 {
                return Err(Error::Parse("zero to a negative power".into()));
            }
            Ok(base.pow(n))
        } else {
            // Half-integer exponents only on q itself.
            let is_q = base
                .to_coeff()
                .is_some_and(|c| c == QRat::q_pow(1));
            if !is_q {
                return Err(Error::Parse("half-integer exponents are only valid on q".into()));
            }
            Ok(Expr::constant(QRat::half_pow(n)))
        }
    }

    /// Exponent: signed integer, or `( +-int / 1|2 )`.
    fn exponent(&mut self) -> Result<(i64, i64)> {
        if self.peek() == Some(b'(') {
            self.bump();
            let n = self.signed_int()?;
            let d = if self.peek() == Some(b'/') {
                self.bump();
                let d = self.signed_int()?;
                if d != 1 && d != 2 {
                    return Err(Error::Parse("exponent denominator must be 1 or 2".into()));
                }
                d
            } else {
                1
            };
            self.expect(b')')?;
            Ok((n, d))
        } else {
            Ok((self.signed_int()?, 1))
        }
    }

    fn signed_int(&mut self) -> Result<i64> {
        let neg = if self.peek() == Some(b'-') {
            self.bump();
            true
        } else {
            false
        };
        let n = self.integer()?;
        Ok(if neg { -n } else { n })
    }

    fn integer(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(Error::Parse(format!("expected integer at byte {}", start)));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse::<i64>()
            .map_err(|e| Error::Parse(e.to_string()))
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.peek() {
            Some(b'(') => {
                self.bump();
                let e = self.expr()?;
                self.expect(b')')?;
                Ok(e)
            }
            Some(b'[') => {
                self.bump();
                let n = self.signed_int()?;
                self.expect(b']')?;
                Ok(Expr::constant(QRat::q_number(n)))
            }
            Some(c) if c.is_ascii_digit() => Ok(Expr::constant(QRat::from_int(self.integer()?))),
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphabetic() {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                match name {
                    "q" => Ok(Expr::constant(QRat::q_pow(1))),
                    "x" => Ok(Expr::var(Var::X)),
                    "y" => Ok(Expr::var(Var::Y)),
                    "v" => Ok(Expr::var(Var::V)),
                    "w" => Ok(Expr::var(Var::W)),
                    "mu" => Ok(Expr::var(Var::Mu)),
                    "p" => Ok(Expr::var(Var::P)),
                    _ => Err(Error::Parse(format!("unknown symbol {:?}", name))),
                }
            }
            got => Err(Error::Parse(format!("unexpected token {:?}", got.map(|b| b as char)))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Ring;

    #[test]
    fn parses_braid_value() {
        let v = parse_qrat("-(1+q^-2)").unwrap();
        let want = QRat::one().add(&QRat::q_pow(-2)).neg();
        assert_eq!(v, want);
    }

    #[test]
    fn parses_q_number_macro() {
        assert_eq!(parse_qrat("[2]").unwrap(), QRat::q_number(2));
        assert_eq!(parse_qrat("[2]^-2").unwrap(), QRat::q_number(2).pow(-2));
    }

    #[test]
    fn parses_half_powers() {
        assert_eq!(parse_qrat("q^(1/2) - q^(-1/2)").unwrap(),
                   QRat::half_pow(1).sub(&QRat::half_pow(-1)));
    }

    #[test]
    fn parses_symbolic() {
        let e = parse_expr("1 + v + [2]^-2 * v^2").unwrap();
        assert!(e.to_coeff().is_none());
        assert!(!e.is_zero());
    }

    #[test]
    fn round_trips_printer_output() {
        for src in ["(-1+q^2)/(1+q^2)", "q^(-3/2)", "-3/2", "1-2*q+q^2"] {
            let v = parse_qrat(src).unwrap();
            assert_eq!(parse_qrat(&v.to_string()).unwrap(), v, "{}", src);
        }
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_expr("1 +").is_err());
        assert!(parse_expr("zz").is_err());
        assert!(parse_expr("q^(1/3)").is_err());
        assert!(parse_expr("(1+v").is_err());
        assert!(parse_qrat("v+1").is_err());
    }
}
