//! Hybrid zero test: randomized sampling plus a rewrite-to-zero pass.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::atom::{Atom, Coord, Dep, Exponent};
use super::eval::{eval_terms, PointAssignment};
use super::expr::{product_of, Expr};
use super::subst::{expand_defined, substitute_many};
use super::together::{clear_denominators, integer_offset, sum_denominators};
use super::{ExprError, Rational, THETA};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ZeroVerdict {
    Zero,
    NonZero,
    /// Sampling passed but no rewrite proof was found.
    Unknown,
}

impl ZeroVerdict {
    pub fn is_zero(self) -> bool {
        self == ZeroVerdict::Zero
    }

    pub fn as_str(self) -> &'static str {
        match self {
            ZeroVerdict::Zero => "Zero",
            ZeroVerdict::NonZero => "NonZero",
            ZeroVerdict::Unknown => "Unknown",
        }
    }
}

impl std::fmt::Display for ZeroVerdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Parameter constraints for zero testing and evaluation.
///
/// Fixed parameters are substituted exactly before anything else; the other
/// settings shape the random sample points.
#[derive(Clone, Debug)]
pub struct Constraints {
    fixed: Vec<(String, Expr)>,
    nonzero: BTreeSet<String>,
    ranges: BTreeMap<String, (f64, f64)>,
    pub seed: u64,
    pub samples: usize,
}

impl Default for Constraints {
    fn default() -> Self {
        Constraints { fixed: Vec::new(), nonzero: BTreeSet::new(), ranges: BTreeMap::new(), seed: 0x5eed_0001, samples: 20 }
    }
}

pub const SAMPLE_TOL: f64 = 1e-9;

impl Constraints {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn fix(mut self, name: &str, value: Expr) -> Self {
        self.fixed.retain(|(n, _)| n != name);
        self.fixed.push((name.to_string(), value));
        self
    }

    /// Shorthand for the common `h = 0` restriction.
    pub fn h_zero(self) -> Self {
        self.fix("h", Expr::zero())
    }

    pub fn nonzero(mut self, name: &str) -> Self {
        self.nonzero.insert(name.to_string());
        self
    }

    pub fn is_nonzero(&self, name: &str) -> bool {
        self.nonzero.contains(name)
    }

    pub fn range(mut self, name: &str, lo: f64, hi: f64) -> Self {
        self.ranges.insert(name.to_string(), (lo, hi));
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn fixed(&self) -> &[(String, Expr)] {
        &self.fixed
    }

    pub fn is_fixed(&self, name: &str) -> bool {
        self.fixed.iter().any(|(n, _)| n == name)
    }

    /// Substitutes fixed parameters and expands γ, τ.
    pub fn apply(&self, e: &Expr) -> Expr {
        let e = expand_defined(e);
        if self.fixed.is_empty() {
            return e;
        }
        let pairs: Vec<(Atom, Expr)> = self.fixed.iter().map(|(n, v)| (Atom::param(n), v.clone())).collect();
        expand_defined(&substitute_many(&e, &pairs))
    }

    fn range_of(&self, a: &Atom) -> (f64, f64) {
        let key = match a {
            Atom::Var(c) => c.name().to_string(),
            Atom::Param(p) => p.to_string(),
            Atom::Jet(j) => j.name(),
            _ => String::new(),
        };
        if let Some(r) = self.ranges.get(&key) {
            return *r;
        }
        match a {
            Atom::Var(Coord::T) => (0.5, 3.0),
            Atom::Param(p) if &**p == THETA => (0.05, 0.95),
            Atom::Param(p) if &**p == "h" => (0.5, 4.0),
            Atom::Param(p) if &**p == "lambda" => (0.25, 4.0),
            Atom::Jet(j) if j.order() == 0 && j.dep != Dep::Psi => (0.1, 3.0),
            _ => (-3.0, 3.0),
        }
    }

    /// Rejects assignments that violate the declared constraints.
    pub fn validate(&self, at: &PointAssignment) -> Result<(), ExprError> {
        if let Some(th) = at.get(&Atom::param(THETA)) {
            if !(th > 0.0 && th < 1.0) {
                return Err(ExprError::Constraint(format!("theta = {th} is outside (0, 1)")));
            }
        }
        for name in &self.nonzero {
            if at.get(&Atom::param(name)) == Some(0.0) {
                return Err(ExprError::Constraint(format!("{name} must be nonzero")));
            }
        }
        for (name, v) in &self.fixed {
            if let (Some(got), Some(want)) = (at.get(&Atom::param(name)), v.as_constant()) {
                let want = want.to_f64().unwrap_or(f64::NAN);
                if (got - want).abs() > 1e-12 * (1.0 + want.abs()) {
                    return Err(ExprError::Constraint(format!("{name} must equal {want}")));
                }
            }
        }
        Ok(())
    }

    /// Draws one admissible point for the given leaves.
    pub fn sample_point(&self, leaves: &BTreeSet<Atom>, rng: &mut ChaCha8Rng) -> PointAssignment {
        let mut at = PointAssignment::new();
        let has_x = leaves.contains(&Atom::Var(Coord::X));
        let has_y = leaves.contains(&Atom::Var(Coord::Y));
        if has_x || has_y {
            let (xl, xh) = self.range_of(&Atom::Var(Coord::X));
            let (yl, yh) = self.range_of(&Atom::Var(Coord::Y));
            let mut p = (0.0, 0.0);
            for _ in 0..200 {
                p = (rng.gen_range(xl..=xh), rng.gen_range(yl..=yh));
                if p.0 * p.0 + p.1 * p.1 >= 0.25 {
                    break;
                }
            }
            at.set(Atom::Var(Coord::X), p.0);
            at.set(Atom::Var(Coord::Y), p.1);
        }
        for a in leaves {
            if matches!(a, Atom::Var(Coord::X) | Atom::Var(Coord::Y)) {
                continue;
            }
            let (lo, hi) = self.range_of(a);
            let must_be_nonzero = a.param_name().is_some_and(|n| self.nonzero.contains(n));
            let mut v = rng.gen_range(lo..=hi);
            for _ in 0..200 {
                if !must_be_nonzero || v.abs() >= 0.1 {
                    break;
                }
                v = rng.gen_range(lo..=hi);
            }
            at.set(a.clone(), v);
        }
        at
    }
}

/// Classifies `e` as identically zero, nonzero, or unknown under `c`.
pub fn is_zero(e: &Expr, c: &Constraints) -> Result<ZeroVerdict, ExprError> {
    let e = c.apply(e);
    if e.is_zero() {
        return Ok(ZeroVerdict::Zero);
    }
    let leaves = e.leaves();
    let mut rng = ChaCha8Rng::seed_from_u64(c.seed);
    let mut valid = 0;
    let mut attempts = 0;
    while valid < c.samples && attempts < c.samples * 50 {
        attempts += 1;
        let at = c.sample_point(&leaves, &mut rng);
        match eval_terms(&e, &at) {
            Ok((v, big)) => {
                valid += 1;
                if v.abs() > SAMPLE_TOL * (1.0 + big) {
                    return Ok(ZeroVerdict::NonZero);
                }
            }
            Err(ExprError::Domain(_)) => continue,
            Err(err) => return Err(err),
        }
    }
    if valid == 0 {
        return Err(ExprError::NoSamples);
    }
    Ok(if rewrite_to_zero(&e) { ZeroVerdict::Zero } else { ZeroVerdict::Unknown })
}

/// Rewrites on the positive branch and checks for syntactic zero.
///
/// Powers of products are split (`(a·b)^p → a^p·b^p`, rational constants
/// into prime powers), powers of the same base whose exponents differ by
/// integers are tied to one fresh placeholder, and sum denominators are
/// cleared; sines and cosines of sums are expanded and `cos²` is traded for
/// `1 − sin²`. Sampling has already vouched for the branch choice.
pub fn rewrite_to_zero(e: &Expr) -> bool {
    let a = angle_addition(&split_powers(&expand_defined(e)));
    if a.is_zero() {
        return true;
    }
    let mut b = pythagoras(&group_power_classes(&a));
    for _ in 0..4 {
        if b.is_zero() || sum_denominators(&b).is_empty() {
            break;
        }
        b = pythagoras(&clear_denominators(&b));
    }
    b.is_zero()
}

/// Canonical form modulo sin² + cos² = 1, applied inside kernel arguments too.
fn trig_canon(e: &Expr) -> Expr {
    pythagoras(&angle_addition(e))
}

fn has_trig(e: &Expr) -> bool {
    e.terms().iter().any(|(m, _)| {
        m.iter().any(|(a, _)| match a {
            Atom::Sin(_) | Atom::Cos(_) => true,
            Atom::Base(u) | Atom::Exp(u) | Atom::Ln(u) => has_trig(u),
            _ => false,
        })
    })
}

/// sin(u + v) and cos(u + v) in terms of the summands, for integer powers
/// and arguments of at most four terms.
fn angle_addition(e: &Expr) -> Expr {
    if !has_trig(e) {
        return e.clone();
    }
    let mut parts = Vec::with_capacity(e.len());
    for (mono, c) in e.terms() {
        let mut kept = Vec::new();
        let mut extra = Vec::new();
        for (a, k) in mono {
            match a {
                Atom::Sin(u) | Atom::Cos(u) if (2..=4).contains(&u.len()) && k.as_int().is_some_and(|n| n >= 1) => {
                    let (head, rest) = u.terms().split_first().expect("non-empty sum");
                    let u1 = trig_canon(&product_of(head.1.clone(), head.0.clone()));
                    let u2 = trig_canon(&Expr::sum(rest.iter().map(|(m, r)| product_of(r.clone(), m.clone()))));
                    let f = if matches!(a, Atom::Sin(_)) {
                        u1.sin() * u2.cos() + u1.cos() * u2.sin()
                    } else {
                        u1.cos() * u2.cos() - u1.sin() * u2.sin()
                    };
                    extra.push(angle_addition(&f).powi(k.as_int().expect("integer power")));
                }
                Atom::Base(u) if has_trig(u) => extra.push(trig_canon(u).pow(&k.to_expr())),
                Atom::Exp(u) if has_trig(u) => extra.push(trig_canon(u).exp().pow(&k.to_expr())),
                Atom::Ln(u) if has_trig(u) => extra.push(trig_canon(u).ln().pow(&k.to_expr())),
                _ => kept.push((a.clone(), k.clone())),
            }
        }
        let mut term = product_of(c.clone(), kept);
        for x in extra {
            term = term.times(&x);
        }
        parts.push(term);
    }
    Expr::sum(parts)
}

/// `cos(u)^k → cos(u)^(k mod 2)·(1 − sin(u)²)^(k div 2)` for integer k ≥ 2.
fn pythagoras(e: &Expr) -> Expr {
    let has_square = e.terms().iter().any(|(m, _)| m.iter().any(|(a, k)| matches!(a, Atom::Cos(_)) && k.as_int().is_some_and(|n| n >= 2)));
    if !has_square {
        return e.clone();
    }
    let mut parts = Vec::with_capacity(e.len());
    for (mono, c) in e.terms() {
        let mut kept = Vec::new();
        let mut extra = Vec::new();
        for (a, k) in mono {
            match (a, k.as_int()) {
                (Atom::Cos(u), Some(n)) if n >= 2 => {
                    if n % 2 == 1 {
                        kept.push((a.clone(), Exponent::ONE));
                    }
                    extra.push((Expr::one() - (**u).clone().sin().powi(2)).powi(n / 2));
                }
                _ => kept.push((a.clone(), k.clone())),
            }
        }
        let mut term = product_of(c.clone(), kept);
        for x in extra {
            term = term.times(&x);
        }
        parts.push(term);
    }
    Expr::sum(parts)
}

fn split_powers(e: &Expr) -> Expr {
    let mut parts = Vec::with_capacity(e.len());
    for (mono, c) in e.terms() {
        let mut kept = Vec::new();
        let mut extra = Vec::new();
        for (a, k) in mono {
            match a {
                Atom::Var(_) | Atom::Param(_) | Atom::Jet(_) => kept.push((a.clone(), k.clone())),
                Atom::Base(b) => {
                    let b2 = split_powers(b);
                    extra.push(if k.is_fractional() { split_pow(&b2, k) } else { b2.pow(&k.to_expr()) });
                }
                Atom::Exp(u) => extra.push(split_powers(u).exp().pow(&k.to_expr())),
                Atom::Ln(u) => extra.push(split_ln(&split_powers(u)).pow(&k.to_expr())),
                Atom::Sin(u) => extra.push(split_powers(u).sin().pow(&k.to_expr())),
                Atom::Cos(u) => extra.push(split_powers(u).cos().pow(&k.to_expr())),
            }
        }
        let mut term = product_of(c.clone(), kept);
        for x in extra {
            term = term.times(&x);
        }
        parts.push(term);
    }
    Expr::sum(parts)
}

fn prime_factors(n: &BigInt) -> Vec<(BigInt, i64)> {
    let mut out = Vec::new();
    let mut n = n.abs();
    let mut p = BigInt::from(2);
    while &p * &p <= n && p < BigInt::from(100_000) {
        let mut v = 0;
        while (&n % &p).is_zero() {
            n /= &p;
            v += 1;
        }
        if v > 0 {
            out.push((p.clone(), v));
        }
        p += 1;
    }
    if n > BigInt::one() {
        out.push((n, 1));
    }
    out
}

fn const_pow(c: &Rational, k: &Exponent) -> Expr {
    let mut out = Expr::one();
    for (p, v) in prime_factors(c.numer()) {
        out = out.times(&product_of(Rational::one(), vec![(Atom::Base(Arc::new(Expr::constant(p.into()))), k.scale_int(v))]));
    }
    for (p, v) in prime_factors(c.denom()) {
        out = out.times(&product_of(Rational::one(), vec![(Atom::Base(Arc::new(Expr::constant(p.into()))), k.scale_int(-v))]));
    }
    out
}

fn split_pow(b: &Expr, k: &Exponent) -> Expr {
    let fallback = || product_of(Rational::one(), vec![(Atom::Base(Arc::new(b.clone())), k.clone())]);
    match b.terms() {
        [(mono, c)] => {
            if c.is_negative() {
                return fallback();
            }
            let mut out = const_pow(c, k);
            for (a, e) in mono {
                out = out.times(&product_of(Rational::one(), vec![(a.clone(), e.mul(k))]));
            }
            out
        }
        _ => {
            let (content, prim) = b.primitive_part();
            if content.is_one() || content.is_negative() {
                return fallback();
            }
            const_pow(&content, k).times(&product_of(Rational::one(), vec![(Atom::Base(Arc::new(prim)), k.clone())]))
        }
    }
}

fn split_ln(u: &Expr) -> Expr {
    match u.terms() {
        [(mono, c)] if c.is_positive() => {
            let mut parts = Vec::new();
            for (p, v) in prime_factors(c.numer()) {
                parts.push(Expr::int(v) * Expr::constant(p.into()).ln());
            }
            for (p, v) in prime_factors(c.denom()) {
                parts.push(Expr::int(-v) * Expr::constant(p.into()).ln());
            }
            for (a, e) in mono {
                let base = match a {
                    Atom::Base(b) => (**b).clone(),
                    Atom::Exp(w) => {
                        parts.push(e.to_expr() * (**w).clone());
                        continue;
                    }
                    _ => Expr::atom(a.clone()),
                };
                parts.push(e.to_expr() * base.ln());
            }
            Expr::sum(parts)
        }
        _ => u.ln(),
    }
}

/// Replaces `B^(E0+k)` by `P·B^k` with a fresh placeholder `P` per class of
/// exponents that differ by integers.
fn group_power_classes(e: &Expr) -> Expr {
    let mut seen: BTreeMap<Arc<Expr>, Vec<Exponent>> = BTreeMap::new();
    for (mono, _) in e.terms() {
        for (a, k) in mono {
            if let Atom::Base(b) = a {
                if k.is_fractional() {
                    let list = seen.entry(b.clone()).or_default();
                    if !list.contains(k) {
                        list.push(k.clone());
                    }
                }
            }
        }
    }
    if seen.is_empty() {
        return e.clone();
    }
    // (base, exponent) -> (placeholder, integer offset)
    let mut table: BTreeMap<(Arc<Expr>, Exponent), (String, i64)> = BTreeMap::new();
    let mut counter = 0usize;
    for (b, exps) in seen {
        let mut classes: Vec<(Exponent, Vec<Exponent>)> = Vec::new();
        for k in exps {
            match classes.iter_mut().find(|(rep, _)| integer_offset(&k, rep).is_some()) {
                Some((rep, members)) => {
                    if integer_offset(&k, rep).is_some_and(|d| d < 0) {
                        *rep = k.clone();
                    }
                    members.push(k);
                }
                None => classes.push((k.clone(), vec![k])),
            }
        }
        for (rep, members) in classes {
            let name = format!("#pw{counter}");
            counter += 1;
            for m in members {
                let d = integer_offset(&m, &rep).expect("same class");
                table.insert((b.clone(), m), (name.clone(), d));
            }
        }
    }
    let mut parts = Vec::with_capacity(e.len());
    for (mono, c) in e.terms() {
        let mut kept = Vec::new();
        let mut extra = Vec::new();
        for (a, k) in mono {
            if let Atom::Base(b) = a {
                if let Some((name, d)) = table.get(&(b.clone(), k.clone())) {
                    kept.push((Atom::param(name), Exponent::ONE));
                    extra.push(b.powi(*d));
                    continue;
                }
            }
            kept.push((a.clone(), k.clone()));
        }
        let mut term = product_of(c.clone(), kept);
        for x in extra {
            term = term.times(&x);
        }
        parts.push(term);
    }
    Expr::sum(parts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symexpr::parse;

    #[test]
    fn prime_split() {
        let f = prime_factors(&BigInt::from(360));
        assert_eq!(f, vec![(BigInt::from(2), 3), (BigInt::from(3), 2), (BigInt::from(5), 1)]);
    }

    #[test]
    fn offset_classes_merge() {
        // (2φ)^(θ+1) − 2φ·(2φ)^θ
        let e = parse("(2*phi)^(theta + 1) - 2*phi*(2*phi)^theta").unwrap();
        assert!(rewrite_to_zero(&e));
    }

    #[test]
    fn pythagorean_identity() {
        let e = parse("x^2*cos(t)^2 + x^2*sin(t)^2 - x^2").unwrap();
        assert!(rewrite_to_zero(&e));
        let e = parse("cos(t)^3 + cos(t)*sin(t)^2 - cos(t)").unwrap();
        assert!(rewrite_to_zero(&e));
    }
}
