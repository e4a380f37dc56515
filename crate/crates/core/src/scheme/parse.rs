use num::BigInt;

use super::expr::{Expr, FUNCTIONS};
use crate::error::{Error, Result};
use crate::gmap::{GMapSpec, OrbitType};
use crate::graph::ArcLabel;
use crate::value::{BinOp, Rational, Value};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Number(Rational),
    Hex(String),
    Sym(char),
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut k = 0;
    while k < chars.len() {
        let c = chars[k];
        let col = k + 1;
        if c.is_whitespace() {
            k += 1;
        } else if c.is_alphabetic() || c == '_' {
            let start = k;
            while k < chars.len() && (chars[k].is_alphanumeric() || chars[k] == '_') {
                k += 1;
            }
            out.push((col, Tok::Ident(chars[start..k].iter().collect())));
        } else if c.is_ascii_digit() {
            let start = k;
            while k < chars.len() && chars[k].is_ascii_digit() {
                k += 1;
            }
            let int: String = chars[start..k].iter().collect();
            let mut frac = String::new();
            if k + 1 < chars.len() && chars[k] == '.' && chars[k + 1].is_ascii_digit() {
                k += 1;
                while k < chars.len() && chars[k].is_ascii_digit() {
                    frac.push(chars[k]);
                    k += 1;
                }
            }
            out.push((col, Tok::Number(decimal(&int, &frac))));
        } else if c == '#' {
            let hex: String = chars[k + 1..].iter().take_while(|c| c.is_ascii_hexdigit()).collect();
            if hex.len() != 6 {
                return Err(Error::Syntax { column: col, message: "color literals are #RRGGBB".into() });
            }
            out.push((col, Tok::Hex(hex)));
            k += 7;
        } else if "+-*/(),.<>{}".contains(c) {
            out.push((col, Tok::Sym(c)));
            k += 1;
        } else if c == '⟨' || c == '⟩' {
            out.push((col, Tok::Sym(if c == '⟨' { '<' } else { '>' })));
            k += 1;
        } else {
            return Err(Error::Syntax { column: col, message: format!("unexpected `{c}`") });
        }
    }
    Ok(out)
}

fn decimal(int: &str, frac: &str) -> Rational {
    let digits: BigInt = format!("{int}{frac}").parse().expect("ascii digits");
    let scale = num::pow(BigInt::from(10), frac.len());
    Rational::new(digits, scale)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn column(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(c, _)| *c)
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Syntax { column: self.column(), message: message.into() })
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(format!("expected `{c}`"))
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            let op = if self.eat('+') {
                BinOp::Add
            } else if self.eat('-') {
                BinOp::Sub
            } else {
                return Ok(lhs);
            };
            let col = self.column();
            let rhs = self.term()?;
            lhs = fold_binary(op, lhs, rhs, col)?;
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        loop {
            let op = if self.eat('*') {
                BinOp::Mul
            } else if self.eat('/') {
                BinOp::Div
            } else {
                return Ok(lhs);
            };
            let col = self.column();
            let rhs = self.unary()?;
            lhs = fold_binary(op, lhs, rhs, col)?;
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.eat('-') {
            let col = self.column();
            let e = self.unary()?;
            return match e {
                Expr::Literal(v) => Value::binary(BinOp::Mul, &Value::Scalar(-Rational::from_integer(1.into())), &v)
                    .map(Expr::Literal)
                    .map_err(|e| Error::Syntax { column: col, message: e.to_string() }),
                e => Ok(Expr::Neg(Box::new(e))),
            };
        }
        self.postfix()
    }

    fn postfix(&mut self) -> Result<Expr> {
        let mut e = self.primary()?;
        while self.eat('.') {
            match self.peek().cloned() {
                Some(Tok::Ident(name)) => {
                    self.pos += 1;
                    e = match name.parse::<ArcLabel>() {
                        Ok(l) => Expr::Link(Box::new(e), l.0),
                        Err(_) => Expr::Access(Box::new(e), name),
                    };
                }
                _ => return self.err("expected an embedding or arc label after `.`"),
            }
        }
        Ok(e)
    }

    fn constant(&self, e: Expr, col: usize) -> Result<Rational> {
        match e {
            Expr::Literal(Value::Scalar(r)) => Ok(r),
            other => Err(Error::Syntax {
                column: col,
                message: format!("literal components must be constant scalars, got `{other}`"),
            }),
        }
    }

    fn primary(&mut self) -> Result<Expr> {
        let col = self.column();
        let Some(tok) = self.peek().cloned() else {
            return self.err("unexpected end of expression");
        };
        self.pos += 1;
        match tok {
            Tok::Number(r) => Ok(Expr::Literal(Value::Scalar(r))),
            Tok::Hex(h) => {
                let byte = |k: usize| u8::from_str_radix(&h[k..k + 2], 16).expect("hex digits");
                Ok(Expr::Literal(Value::rgb(byte(0), byte(2), byte(4))))
            }
            Tok::Sym('(') => {
                let first = self.expr()?;
                if self.eat(',') {
                    let c2 = self.column();
                    let second = self.expr()?;
                    self.expect(')')?;
                    let x = self.constant(first, col + 1)?;
                    let y = self.constant(second, c2)?;
                    return Ok(Expr::Literal(Value::Point(x, y)));
                }
                self.expect(')')?;
                Ok(first)
            }
            Tok::Sym('<') => {
                let first = self.expr()?;
                self.expect(',')?;
                let c2 = self.column();
                let second = self.expr()?;
                self.expect('>')?;
                let x = self.constant(first, col + 1)?;
                let y = self.constant(second, c2)?;
                Ok(Expr::Literal(Value::Vector(x, y)))
            }
            Tok::Ident(name) => {
                if self.eat('(') {
                    if !FUNCTIONS.contains(&name.as_str()) {
                        return Err(Error::Syntax { column: col, message: format!("unknown function `{name}`") });
                    }
                    let mut args = Vec::new();
                    if !self.eat(')') {
                        loop {
                            args.push(self.expr()?);
                            if self.eat(')') {
                                break;
                            }
                            self.expect(',')?;
                        }
                    }
                    return fold_call(name, args, col);
                }
                if self.eat('{') {
                    self.expect('<')?;
                    let mut labels = Vec::new();
                    while !self.eat('>') {
                        match self.peek().cloned() {
                            Some(Tok::Ident(l)) => {
                                self.pos += 1;
                                match l.parse::<ArcLabel>() {
                                    Ok(l) => labels.push(l.0),
                                    Err(_) => return self.err(format!("`{l}` is not an arc label")),
                                }
                            }
                            Some(Tok::Sym(',')) => self.pos += 1,
                            _ => return self.err("expected an arc label or `>`"),
                        }
                    }
                    let orbit = OrbitType::new(labels).map_err(|e| Error::Syntax { column: col, message: e.to_string() })?;
                    self.expect('(')?;
                    let node = self.expr()?;
                    self.expect(')')?;
                    self.expect('}')?;
                    return Ok(Expr::Collect { embedding: name, orbit, node: Box::new(node) });
                }
                Ok(Expr::Var(name))
            }
            Tok::Sym(c) => Err(Error::Syntax { column: col, message: format!("unexpected `{c}`") }),
        }
    }
}

fn fold_binary(op: BinOp, lhs: Expr, rhs: Expr, col: usize) -> Result<Expr> {
    match (&lhs, &rhs) {
        (Expr::Literal(a), Expr::Literal(b)) => Value::binary(op, a, b)
            .map(Expr::Literal)
            .map_err(|e| Error::Syntax { column: col, message: e.to_string() }),
        _ => Ok(Expr::binary(op, lhs, rhs)),
    }
}

fn fold_call(name: String, args: Vec<Expr>, col: usize) -> Result<Expr> {
    if name == "rgb" && args.len() == 3 {
        let consts: Vec<&Value> = args
            .iter()
            .filter_map(|a| match a {
                Expr::Literal(v @ Value::Scalar(_)) => Some(v),
                _ => None,
            })
            .collect();
        if let [Value::Scalar(r), Value::Scalar(g), Value::Scalar(b)] = consts.as_slice() {
            return Ok(Expr::Literal(Value::Color(r.clone(), g.clone(), b.clone())));
        }
    }
    if name == "mean" {
        if let [Expr::Literal(v)] = args.as_slice() {
            return v.mean().map(Expr::Literal).map_err(|e| Error::Syntax { column: col, message: e.to_string() });
        }
    }
    Ok(Expr::Call(name, args))
}

/// Parses a term without sort checking.
pub fn parse_term(text: &str) -> Result<Expr> {
    let toks = tokenize(text)?;
    let mut p = Parser { end: text.chars().count() + 1, toks, pos: 0 };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return p.err("trailing input");
    }
    Ok(e)
}

/// Parses and sort-checks an embedding term.
pub fn parse_expression(text: &str, spec: &GMapSpec) -> Result<Expr> {
    let e = parse_term(text)?;
    e.sort(spec)?;
    Ok(e)
}

/// Parses a constant: a scalar, `(x, y)`, `<x, y>`, `#RRGGBB` or
/// `rgb(r, g, b)`.
pub fn parse_value(text: &str) -> Result<Value> {
    match parse_term(text)? {
        Expr::Literal(v) => Ok(v),
        other => Err(Error::Syntax { column: 1, message: format!("`{other}` is not a constant") }),
    }
}
