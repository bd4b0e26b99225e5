//! Textual Lie expressions: `2*[a,[a,b]] - 1/2*[b,b] + (a)`.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{GradingView, LieElement, LieError, Presentation};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Zero,
    Gen(String),
    Bracket(Box<Expr>, Box<Expr>),
    Scale(BigRational, Box<Expr>),
    Sum(Vec<Expr>),
}

impl Expr {
    /// Evaluate with brackets read in `view`.
    pub fn eval(&self, pres: &Arc<Presentation>, view: GradingView) -> Result<LieElement, LieError> {
        match self {
            Expr::Zero => Ok(LieElement::zero(pres, view)),
            Expr::Gen(n) => LieElement::generator(pres, n, view),
            Expr::Bracket(a, b) => a.eval(pres, view)?.bracket(&b.eval(pres, view)?),
            Expr::Scale(c, e) => Ok(e.eval(pres, view)?.scale(c)),
            Expr::Sum(es) => {
                let mut acc = LieElement::zero(pres, view);
                for e in es {
                    acc = acc.add(&e.eval(pres, view)?)?;
                }
                Ok(acc)
            }
        }
    }
}

impl LieElement {
    pub fn parse(pres: &Arc<Presentation>, src: &str, view: GradingView) -> Result<LieElement, LieError> {
        parse_expr(src)?.eval(pres, view)
    }
}

pub fn parse_expr(src: &str) -> Result<Expr, LieError> {
    let mut p = Parser { s: src.as_bytes(), pos: 0 };
    let e = p.sum()?;
    p.ws();
    if p.pos != p.s.len() {
        return Err(p.err("trailing input"));
    }
    Ok(e)
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> LieError {
        LieError::Parse { pos: self.pos, msg: msg.to_string() }
    }

    fn ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.ws();
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn sum(&mut self) -> Result<Expr, LieError> {
        let mut terms = Vec::new();
        let mut neg = self.eat(b'-');
        loop {
            let t = self.term()?;
            terms.push(if neg { Expr::Scale(-BigRational::one(), Box::new(t)) } else { t });
            if self.eat(b'+') {
                neg = false;
            } else if self.eat(b'-') {
                neg = true;
            } else {
                break;
            }
        }
        Ok(if terms.len() == 1 { terms.pop().unwrap() } else { Expr::Sum(terms) })
    }

    fn term(&mut self) -> Result<Expr, LieError> {
        if matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            let c = self.rational()?;
            if self.eat(b'*') {
                let a = self.atom()?;
                return Ok(Expr::Scale(c, Box::new(a)));
            }
            if c.is_zero() {
                return Ok(Expr::Zero);
            }
            return Err(self.err("a bare nonzero number is not a Lie element"));
        }
        self.atom()
    }

    fn rational(&mut self) -> Result<BigRational, LieError> {
        let num = self.integer()?;
        if self.eat(b'/') {
            let den = self.integer()?;
            if den.is_zero() {
                return Err(self.err("zero denominator"));
            }
            return Ok(BigRational::new(num, den));
        }
        Ok(BigRational::from_integer(num))
    }

    fn integer(&mut self) -> Result<BigInt, LieError> {
        self.ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected integer"));
        }
        let txt = std::str::from_utf8(&self.s[start..self.pos]).expect("ascii digits");
        txt.parse().map_err(|_| self.err("bad integer"))
    }

    fn atom(&mut self) -> Result<Expr, LieError> {
        match self.peek() {
            Some(b'[') => {
                self.pos += 1;
                let a = self.sum()?;
                if !self.eat(b',') {
                    return Err(self.err("expected `,`"));
                }
                let b = self.sum()?;
                if !self.eat(b']') {
                    return Err(self.err("expected `]`"));
                }
                Ok(Expr::Bracket(Box::new(a), Box::new(b)))
            }
            Some(b'(') => {
                self.pos += 1;
                let e = self.sum()?;
                if !self.eat(b')') {
                    return Err(self.err("expected `)`"));
                }
                Ok(e)
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.s.len()
                    && (self.s[self.pos].is_ascii_alphanumeric() || self.s[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                Ok(Expr::Gen(String::from_utf8_lossy(&self.s[start..self.pos]).into_owned()))
            }
            _ => Err(self.err("expected generator, `[` or `(`")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::super::Generator;
    use super::*;

    #[test]
    fn parse_and_normalize() {
        let p = Presentation::new(vec![Generator::new("a", 1), Generator::new("b", 1)]).unwrap();
        let e = LieElement::parse(&p, "[b,a] + [a,b]", GradingView::Samelson).unwrap();
        // Both odd: [b,a] = [a,b].
        assert_eq!(e.render(), "2*[a,b]");
        let z = LieElement::parse(&p, "1/2*[a,a] - 1/2*[a,a]", GradingView::Samelson).unwrap();
        assert!(z.is_zero());
    }

    #[test]
    fn errors() {
        let p = Presentation::new(vec![Generator::new("a", 1)]).unwrap();
        assert!(matches!(LieElement::parse(&p, "[a,", GradingView::Samelson), Err(LieError::Parse { .. })));
        assert_eq!(
            LieElement::parse(&p, "c", GradingView::Samelson),
            Err(LieError::UnknownGenerator("c".into()))
        );
        assert_eq!(LieElement::parse(&p, "a + [a,a]", GradingView::Samelson), Err(LieError::MixedDegree(1, 2)));
    }
}
