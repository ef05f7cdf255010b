//! Printer for the same grammar the parser reads.

use std::fmt;

use num_traits::{One, Signed};

use super::atom::Exponent;
use super::expr::Expr;
use super::Rational;

fn write_rational(f: &mut fmt::Formatter<'_>, c: &Rational) -> fmt::Result {
    if c.is_integer() {
        write!(f, "{}", c.numer())
    } else {
        write!(f, "{}/{}", c.numer(), c.denom())
    }
}

fn write_exponent(f: &mut fmt::Formatter<'_>, k: &Exponent) -> fmt::Result {
    match k.as_int() {
        Some(1) => Ok(()),
        Some(n) if n > 0 => write!(f, "^{n}"),
        _ => write!(f, "^({})", k.to_expr()),
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (mono, c)) in self.terms().iter().enumerate() {
            let neg = c.is_negative();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mag = c.abs();
            if mono.is_empty() {
                write_rational(f, &mag)?;
                continue;
            }
            if !mag.is_one() {
                write_rational(f, &mag)?;
                write!(f, "*")?;
            }
            for (j, (a, k)) in mono.iter().enumerate() {
                if j > 0 {
                    write!(f, "*")?;
                }
                write!(f, "{a}")?;
                write_exponent(f, k)?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_expr())
    }
}

