//! Recursive-descent parser.
//!
//! ```text
//! expr    = term { ("+" | "-") term }
//! term    = unary { ("*" | "/") unary }
//! unary   = "-" unary | power
//! power   = primary [ "^" unary ]          (right-associative)
//! primary = number | ident | func "(" expr ")" | "(" expr ")"
//! func    = "exp" | "ln" | "sin" | "cos" | "sqrt"
//! ```
//!
//! Numbers are exact (`0.25` is 1/4). `x`, `y`, `t` are coordinates; `phi`,
//! `phi_xxt`, `psi_y`, `F_XY`, `G`, `G'`, `G_ll` are jets; every other
//! identifier is a parameter. Greek letters are accepted for θ, γ, τ, λ, ε,
//! φ, ψ, μ, α, κ.

use num_bigint::BigInt;

use super::atom::{Atom, Coord, JetVar};
use super::expr::Expr;
use super::{ExprError, Rational};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(Rational),
    Ident(String),
    Op(char),
}

fn greek(c: char) -> Option<&'static str> {
    Some(match c {
        'θ' => "theta",
        'γ' => "gamma",
        'τ' => "tau",
        'λ' => "lambda",
        'ε' => "eps",
        'φ' => "phi",
        'ψ' => "psi",
        'μ' => "mu",
        'α' => "alpha",
        'κ' => "kappa",
        _ => return None,
    })
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, ExprError> {
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let (pos, c) = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() || (c == '.' && chars.get(i + 1).is_some_and(|(_, d)| d.is_ascii_digit())) {
            let mut int = String::new();
            let mut frac = String::new();
            while i < chars.len() && chars[i].1.is_ascii_digit() {
                int.push(chars[i].1);
                i += 1;
            }
            if i < chars.len() && chars[i].1 == '.' {
                i += 1;
                while i < chars.len() && chars[i].1.is_ascii_digit() {
                    frac.push(chars[i].1);
                    i += 1;
                }
            }
            let digits = format!("{int}{frac}");
            let numer: BigInt = digits.parse().map_err(|_| ExprError::Syntax { pos, msg: "bad number".into() })?;
            let denom = num_traits::pow(BigInt::from(10), frac.len());
            out.push((pos, Tok::Num(Rational::new(numer, denom))));
        } else if c.is_alphabetic() || c == '_' {
            let mut name = String::new();
            while i < chars.len() {
                let ch = chars[i].1;
                if let Some(g) = greek(ch) {
                    name.push_str(g);
                } else if ch.is_alphanumeric() || ch == '_' || ch == '\'' {
                    name.push(ch);
                } else {
                    break;
                }
                i += 1;
            }
            out.push((pos, Tok::Ident(name)));
        } else if "+-*/^()".contains(c) {
            out.push((pos, Tok::Op(c)));
            i += 1;
        } else if c == '−' {
            out.push((pos, Tok::Op('-')));
            i += 1;
        } else {
            return Err(ExprError::Syntax { pos, msg: format!("unexpected character `{c}`") });
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    i: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.i).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.i).map_or(self.end, |(p, _)| *p)
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(&Tok::Op(op)) {
            self.i += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, op: char) -> Result<(), ExprError> {
        if self.eat(op) {
            Ok(())
        } else {
            Err(ExprError::Syntax { pos: self.pos(), msg: format!("expected `{op}`") })
        }
    }

    fn expr(&mut self) -> Result<Expr, ExprError> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = acc + self.term()?;
            } else if self.eat('-') {
                acc = acc - self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ExprError> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = acc * self.unary()?;
            } else if self.peek() == Some(&Tok::Op('/')) {
                let pos = self.pos();
                self.i += 1;
                let d = self.unary()?;
                if d.is_zero() {
                    return Err(ExprError::Syntax { pos, msg: "division by zero".into() });
                }
                acc = acc / d;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr, ExprError> {
        if self.eat('-') {
            return Ok(-self.unary()?);
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ExprError> {
        let base = self.primary()?;
        if self.peek() == Some(&Tok::Op('^')) {
            let pos = self.pos();
            self.i += 1;
            let e = self.unary()?;
            if base.is_zero() && e.as_int().is_none_or(|n| n <= 0) {
                return Err(ExprError::Syntax { pos, msg: "zero to a non-positive power".into() });
            }
            return Ok(base.pow(&e));
        }
        Ok(base)
    }

    fn primary(&mut self) -> Result<Expr, ExprError> {
        let pos = self.pos();
        let Some((_, tok)) = self.toks.get(self.i).cloned() else {
            return Err(ExprError::Syntax { pos, msg: "unexpected end of input".into() });
        };
        self.i += 1;
        match tok {
            Tok::Num(r) => Ok(Expr::constant(r)),
            Tok::Op('(') => {
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Tok::Op(c) => Err(ExprError::Syntax { pos, msg: format!("unexpected `{c}`") }),
            Tok::Ident(name) => {
                if self.peek() == Some(&Tok::Op('(')) {
                    self.i += 1;
                    let arg = self.expr()?;
                    self.expect(')')?;
                    return match name.as_str() {
                        "exp" => Ok(arg.exp()),
                        "ln" => Ok(arg.ln()),
                        "sin" => Ok(arg.sin()),
                        "cos" => Ok(arg.cos()),
                        "sqrt" => Ok(arg.pow(&Expr::rational(1, 2))),
                        _ => Err(ExprError::UnknownIdentifier(name)),
                    };
                }
                match name.as_str() {
                    "x" => Ok(Expr::var(Coord::X)),
                    "y" => Ok(Expr::var(Coord::Y)),
                    "t" => Ok(Expr::var(Coord::T)),
                    "exp" | "ln" | "sin" | "cos" | "sqrt" => {
                        Err(ExprError::Syntax { pos, msg: format!("`{name}` needs an argument") })
                    }
                    _ => match JetVar::parse(&name) {
                        Some(j) => Ok(Expr::atom(Atom::Jet(j?))),
                        None if name.contains('\'') => Err(ExprError::UnknownIdentifier(name)),
                        None => Ok(Expr::param(&name)),
                    },
                }
            }
        }
    }
}

/// Parses an expression into normal form.
pub fn parse(text: &str) -> Result<Expr, ExprError> {
    let toks = lex(text)?;
    let mut p = Parser { toks, i: 0, end: text.len() };
    let e = p.expr()?;
    if p.i < p.toks.len() {
        return Err(ExprError::Syntax { pos: p.pos(), msg: "trailing input".into() });
    }
    Ok(e)
}
