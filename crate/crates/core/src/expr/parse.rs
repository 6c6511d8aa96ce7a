use super::ScalarExpr;
use crate::error::{Error, Result};

/// Parses an infix expression in the single variable `var`.
///
/// `^` takes an integer exponent and binds tighter than unary minus, so
/// `-u^2` is `-(u^2)`. `pi` is the only named constant.
pub fn parse_expr(src: &str, var: &str) -> Result<ScalarExpr> {
    let mut p = Parser {
        src,
        bytes: src.as_bytes(),
        pos: 0,
        var,
    };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos != p.bytes.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(e)
}

struct Parser<'a> {
    src: &'a str,
    bytes: &'a [u8],
    pos: usize,
    var: &'a str,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.err(&format!("expected `{}`", c as char)))
        }
    }

    fn expr(&mut self) -> Result<ScalarExpr> {
        let mut lhs = self.term()?;
        loop {
            if self.eat(b'+') {
                lhs = ScalarExpr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat(b'-') {
                lhs = ScalarExpr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<ScalarExpr> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat(b'*') {
                lhs = ScalarExpr::Mul(Box::new(lhs), Box::new(self.unary()?));
            } else if self.eat(b'/') {
                lhs = ScalarExpr::Div(Box::new(lhs), Box::new(self.unary()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<ScalarExpr> {
        if self.eat(b'-') {
            return Ok(ScalarExpr::Neg(Box::new(self.unary()?)));
        }
        if self.eat(b'+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<ScalarExpr> {
        let base = self.primary()?;
        if !self.eat(b'^') {
            return Ok(base);
        }
        let paren = self.eat(b'(');
        let n = self.integer()?;
        if paren {
            self.expect(b')')?;
        }
        Ok(ScalarExpr::Pow(Box::new(base), n))
    }

    fn integer(&mut self) -> Result<i32> {
        self.skip_ws();
        let start = self.pos;
        if matches!(self.bytes.get(self.pos), Some(b'-') | Some(b'+')) {
            self.pos += 1;
        }
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        self.src[start..self.pos]
            .parse::<i32>()
            .map_err(|_| Error::Parse {
                pos: start,
                msg: "exponent must be an integer".into(),
            })
    }

    fn number(&mut self) -> Result<f64> {
        let start = self.pos;
        let b = self.bytes;
        while self.pos < b.len() && (b[self.pos].is_ascii_digit() || b[self.pos] == b'.') {
            self.pos += 1;
        }
        if self.pos < b.len() && (b[self.pos] == b'e' || b[self.pos] == b'E') {
            let save = self.pos;
            self.pos += 1;
            if self.pos < b.len() && (b[self.pos] == b'-' || b[self.pos] == b'+') {
                self.pos += 1;
            }
            let digits = self.pos;
            while self.pos < b.len() && b[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            if self.pos == digits {
                // `2e` is not an exponent; leave it for the caller to reject
                self.pos = save;
            }
        }
        self.src[start..self.pos]
            .parse::<f64>()
            .map_err(|_| Error::Parse {
                pos: start,
                msg: "malformed number".into(),
            })
    }

    fn ident(&mut self) -> &str {
        let start = self.pos;
        while self.pos < self.bytes.len()
            && (self.bytes[self.pos].is_ascii_alphanumeric() || self.bytes[self.pos] == b'_')
        {
            self.pos += 1;
        }
        &self.src[start..self.pos]
    }

    fn primary(&mut self) -> Result<ScalarExpr> {
        match self.peek() {
            None => Err(self.err("unexpected end of input")),
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(b')')?;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() || c == b'.' => Ok(ScalarExpr::Const(self.number()?)),
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                let name = self.ident().to_string();
                if name == self.var {
                    return Ok(ScalarExpr::Var);
                }
                let wrap: fn(Box<ScalarExpr>) -> ScalarExpr = match name.as_str() {
                    "pi" => return Ok(ScalarExpr::Const(std::f64::consts::PI)),
                    "sin" => ScalarExpr::Sin,
                    "cos" => ScalarExpr::Cos,
                    "exp" => ScalarExpr::Exp,
                    _ => {
                        return Err(Error::Parse {
                            pos: start,
                            msg: format!(
                                "unknown identifier `{name}` (variable is `{}`)",
                                self.var
                            ),
                        })
                    }
                };
                self.expect(b'(')?;
                let arg = self.expr()?;
                self.expect(b')')?;
                Ok(wrap(Box::new(arg)))
            }
            Some(_) => Err(self.err("unexpected character")),
        }
    }
}
