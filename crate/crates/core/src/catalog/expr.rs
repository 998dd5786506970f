//! Expressions over `H` used by catalog templates, e.g. `-(s + t2)/(t1*t2)`.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::lie::LieAlgebra;
use crate::rational::{parse_rational, Rational};
use crate::uea::UEl;

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Num(String),
    Ident(String),
    Op(char),
}

fn tokenize(src: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let chars: Vec<char> = src.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() || c == '.' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '.') {
                i += 1;
            }
            out.push(Token::Num(chars[start..i].iter().collect()));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Token::Ident(chars[start..i].iter().collect()));
        } else if "+-*/^()".contains(c) {
            out.push(Token::Op(c));
            i += 1;
        } else {
            return Err(Error::Malformed(format!("unexpected `{c}` in expression `{src}`")));
        }
    }
    Ok(out)
}

/// Evaluates an expression whose identifiers are bound to elements of `H`.
pub struct Evaluator<'a> {
    alg: &'a Arc<LieAlgebra>,
    env: &'a BTreeMap<String, UEl>,
}

impl<'a> Evaluator<'a> {
    pub fn new(alg: &'a Arc<LieAlgebra>, env: &'a BTreeMap<String, UEl>) -> Self {
        Evaluator { alg, env }
    }

    pub fn eval(&self, src: &str) -> Result<UEl> {
        let tokens = tokenize(src)?;
        let mut p = Parser { tokens: &tokens, pos: 0, ev: self, src };
        let v = p.expr()?;
        if p.pos != tokens.len() {
            return Err(Error::Malformed(format!("trailing input in expression `{src}`")));
        }
        Ok(v)
    }

    pub fn eval_scalar(&self, src: &str) -> Result<Rational> {
        self.eval(src)?
            .as_scalar()
            .ok_or_else(|| Error::Malformed(format!("expression `{src}` is not a scalar")))
    }
}

struct Parser<'t, 'e> {
    tokens: &'t [Token],
    pos: usize,
    ev: &'e Evaluator<'e>,
    src: &'t str,
}

impl Parser<'_, '_> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(&Token::Op(op)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<UEl> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = acc.try_add(&self.term()?)?;
            } else if self.eat('-') {
                acc = acc.try_add(&-&self.term()?)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<UEl> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = acc.try_mul(&self.unary()?)?;
            } else if self.eat('/') {
                let d = self.unary()?;
                let c = d
                    .as_scalar()
                    .ok_or_else(|| Error::Malformed(format!("division by a non-scalar in `{}`", self.src)))?;
                if num_traits::Zero::is_zero(&c) {
                    return Err(Error::DivisionByZero(self.src.to_string()));
                }
                acc = acc.scale(&num_traits::Inv::inv(c));
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<UEl> {
        if self.eat('-') {
            return Ok(-&self.unary()?);
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<UEl> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let exp = match self.peek() {
            Some(Token::Num(n)) => n.parse::<u32>().ok(),
            _ => None,
        }
        .ok_or_else(|| Error::Malformed(format!("exponent must be a non-negative integer in `{}`", self.src)))?;
        self.pos += 1;
        let mut acc = UEl::one(self.ev.alg);
        for _ in 0..exp {
            acc = acc.try_mul(&base)?;
        }
        Ok(acc)
    }

    fn atom(&mut self) -> Result<UEl> {
        let tok = self
            .peek()
            .cloned()
            .ok_or_else(|| Error::Malformed(format!("unexpected end of expression `{}`", self.src)))?;
        self.pos += 1;
        match tok {
            Token::Num(n) => Ok(UEl::scalar(self.ev.alg, parse_rational(&n)?)),
            Token::Ident(name) => self.ev.env.get(&name).cloned().ok_or(Error::MissingParam(name)),
            Token::Op('(') => {
                let v = self.expr()?;
                if !self.eat(')') {
                    return Err(Error::Malformed(format!("missing `)` in `{}`", self.src)));
                }
                Ok(v)
            }
            Token::Op(c) => Err(Error::Malformed(format!("unexpected `{c}` in `{}`", self.src))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};
    use crate::uea::MultiIndex;

    #[test]
    fn evaluates_mixed_expressions() {
        let alg = LieAlgebra::abelian(2);
        let mut env = BTreeMap::new();
        let s = UEl::generator(&alg, 0);
        env.insert("s".to_string(), s.clone());
        env.insert("t1".to_string(), UEl::scalar(&alg, int(2)));
        env.insert("t2".to_string(), UEl::scalar(&alg, int(3)));
        let ev = Evaluator::new(&alg, &env);
        let v = ev.eval("-(s + t2)/(t1*t2)").unwrap();
        let expected = &s.scale(&frac(-1, 6)) - &UEl::scalar(&alg, frac(1, 2));
        assert_eq!(v, expected);
        assert_eq!(ev.eval_scalar("1/2 + 0.5").unwrap(), int(1));
        let sq = ev.eval("s*s").unwrap();
        assert_eq!(sq, UEl::monomial(&alg, MultiIndex::new(vec![2, 0]), int(2)));
        assert_eq!(ev.eval("-s^2").unwrap(), -&sq);
        assert_eq!(ev.eval("t1^0 + t2^2").unwrap(), UEl::scalar(&alg, int(10)));
        assert!(ev.eval("s^t1").is_err());
    }

    #[test]
    fn reports_errors() {
        let alg = LieAlgebra::abelian(1);
        let env = BTreeMap::new();
        let ev = Evaluator::new(&alg, &env);
        assert_eq!(ev.eval("x + 1").unwrap_err(), Error::MissingParam("x".into()));
        assert!(matches!(ev.eval("1/(1-1)"), Err(Error::DivisionByZero(_))));
        assert!(ev.eval("(1").is_err());
        assert!(ev.eval("1 $ 2").is_err());
    }
}
