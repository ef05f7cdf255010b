use std::collections::BTreeMap;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::atom::{Atom, Coord, Dep, Exponent, JetVar};
use super::{Rational, THETA};

/// Ordered factor list with unique atoms and nonzero exponents.
pub type Monomial = Vec<(Atom, Exponent)>;

/// A canonical sum of `coefficient × monomial` terms.
///
/// Every constructor returns the normal form, so structural equality is
/// equality of normal forms. The zero expression has no terms.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Expr {
    terms: Vec<(Monomial, Rational)>,
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rint(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

impl Expr {
    pub fn zero() -> Expr {
        Expr { terms: Vec::new() }
    }

    pub fn one() -> Expr {
        Expr::constant(Rational::one())
    }

    pub fn int(n: i64) -> Expr {
        Expr::constant(rint(n))
    }

    pub fn rational(n: i64, d: i64) -> Expr {
        Expr::constant(rat(n, d))
    }

    pub fn constant(c: Rational) -> Expr {
        if c.is_zero() {
            Expr::zero()
        } else {
            Expr { terms: vec![(Vec::new(), c)] }
        }
    }

    pub fn var(c: Coord) -> Expr {
        Expr::atom(Atom::Var(c))
    }

    pub fn x() -> Expr {
        Expr::var(Coord::X)
    }

    pub fn y() -> Expr {
        Expr::var(Coord::Y)
    }

    pub fn t() -> Expr {
        Expr::var(Coord::T)
    }

    pub fn param(name: &str) -> Expr {
        Expr::atom(Atom::param(name))
    }

    pub fn theta() -> Expr {
        Expr::param(THETA)
    }

    pub fn jet(dep: Dep, idx: [u8; 3]) -> Expr {
        Expr::atom(Atom::jet(dep, idx))
    }

    pub fn phi() -> Expr {
        Expr::atom(Atom::phi())
    }

    /// φ with derivative counts (x, y, t).
    pub fn phi_d(nx: u8, ny: u8, nt: u8) -> Expr {
        Expr::jet(Dep::Phi, [nx, ny, nt])
    }

    pub fn atom(a: Atom) -> Expr {
        Expr { terms: vec![(vec![(a, Exponent::ONE)], Rational::one())] }
    }

    /// A single term built from already-canonical parts.
    pub(crate) fn from_canonical_term(mono: Monomial, c: Rational) -> Expr {
        if c.is_zero() {
            Expr::zero()
        } else {
            Expr { terms: vec![(mono, c)] }
        }
    }

    pub(crate) fn from_map(map: BTreeMap<Monomial, Rational>) -> Expr {
        Expr { terms: map.into_iter().filter(|(_, c)| !c.is_zero()).collect() }
    }

    pub fn terms(&self) -> &[(Monomial, Rational)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Syntactic zero test on the canonical form.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.as_slice() {
            [] => Some(Rational::zero()),
            [(m, c)] if m.is_empty() => Some(c.clone()),
            _ => None,
        }
    }

    pub fn as_int(&self) -> Option<i64> {
        self.as_constant().filter(|c| c.is_integer()).and_then(|c| c.to_integer().to_i64())
    }

    pub fn as_atom(&self) -> Option<&Atom> {
        match self.terms.as_slice() {
            [(m, c)] if c.is_one() && m.len() == 1 && m[0].1 == Exponent::ONE => Some(&m[0].0),
            _ => None,
        }
    }

    /// `m + n·θ` with integer m, n.
    pub fn as_lattice(&self) -> Option<(i64, i64)> {
        let mut m = 0i64;
        let mut n = 0i64;
        for (mono, c) in &self.terms {
            if !c.is_integer() {
                return None;
            }
            let ci = c.to_integer().to_i64()?;
            match mono.as_slice() {
                [] => m = ci,
                [(Atom::Param(p), Exponent::Lat(1, 0))] if &**p == THETA => n = ci,
                _ => return None,
            }
        }
        Some((m, n))
    }

    pub fn constant_term(&self) -> Rational {
        self.terms
            .iter()
            .find(|(m, _)| m.is_empty())
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Rational::zero)
    }

    /// Sum of a list.
    pub fn sum<I: IntoIterator<Item = Expr>>(items: I) -> Expr {
        let mut acc: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for e in items {
            for (m, c) in e.terms {
                add_into(&mut acc, m, c);
            }
        }
        Expr::from_map(acc)
    }

    pub fn plus(&self, other: &Expr) -> Expr {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            let (ma, ca) = &self.terms[i];
            let (mb, cb) = &other.terms[j];
            match ma.cmp(mb) {
                std::cmp::Ordering::Less => {
                    out.push((ma.clone(), ca.clone()));
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push((mb.clone(), cb.clone()));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = ca + cb;
                    if !c.is_zero() {
                        out.push((ma.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(self.terms[i..].iter().cloned());
        out.extend(other.terms[j..].iter().cloned());
        Expr { terms: out }
    }

    pub fn scale(&self, k: &Rational) -> Expr {
        if k.is_zero() {
            return Expr::zero();
        }
        Expr { terms: self.terms.iter().map(|(m, c)| (m.clone(), c * k)).collect() }
    }

    pub fn negate(&self) -> Expr {
        self.scale(&-Rational::one())
    }

    pub fn minus(&self, other: &Expr) -> Expr {
        self.plus(&other.negate())
    }

    pub fn times(&self, other: &Expr) -> Expr {
        if self.is_zero() || other.is_zero() {
            return Expr::zero();
        }
        if let Some(c) = self.as_constant() {
            return other.scale(&c);
        }
        if let Some(c) = other.as_constant() {
            return self.scale(&c);
        }
        let mut acc: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let p = product_of(ca * cb, merge_lists(ma, mb));
                for (m, c) in p.terms {
                    add_into(&mut acc, m, c);
                }
            }
        }
        Expr::from_map(acc)
    }

    /// Multiplies every term by `atom^exp` before normalizing, so that the
    /// factor merges with existing powers of the same atom.
    pub fn mul_factor(&self, atom: &Atom, exp: &Exponent) -> Expr {
        let mut acc: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (m, c) in &self.terms {
            let p = product_of(c.clone(), merge_lists(m, &[(atom.clone(), exp.clone())]));
            for (m, c) in p.terms {
                add_into(&mut acc, m, c);
            }
        }
        Expr::from_map(acc)
    }

    /// Integer power.
    pub fn powi(&self, n: i64) -> Expr {
        if n == 0 {
            return Expr::one();
        }
        if n == 1 {
            return self.clone();
        }
        if self.is_zero() {
            assert!(n > 0, "division by zero in symbolic power");
            return Expr::zero();
        }
        if self.terms.len() == 1 {
            let (m, c) = &self.terms[0];
            let coeff = rational_powi(c, n);
            let factors: Monomial = m.iter().map(|(a, e)| (a.clone(), e.scale_int(n))).collect();
            return product_of(coeff, factors);
        }
        if n > 0 {
            let mut result = Expr::one();
            let mut base = self.clone();
            let mut k = n;
            while k > 0 {
                if k & 1 == 1 {
                    result = result.times(&base);
                }
                k >>= 1;
                if k > 0 {
                    base = base.times(&base);
                }
            }
            return result;
        }
        let (content, prim) = self.primitive_part();
        let factor = product_of(Rational::one(), vec![(Atom::Base(Arc::new(prim)), Exponent::int(n))]);
        factor.scale(&rational_powi(&content, n))
    }

    /// General power with canonical exponent handling.
    pub fn pow(&self, e: &Expr) -> Expr {
        let e = super::together::canon_exponent(e);
        if let Some(n) = e.as_int() {
            return self.powi(n);
        }
        if self.is_zero() {
            return Expr::zero();
        }
        if let Some(c) = self.as_constant() {
            if c.is_one() {
                return Expr::one();
            }
        }
        let exp = Exponent::from_expr(&e);
        if self.terms.len() == 1 {
            let (m, c) = &self.terms[0];
            if c.is_one() && m.len() == 1 {
                let (a, k) = &m[0];
                let combinable = *k == Exponent::ONE || matches!(a, Atom::Exp(_)) || k.is_fractional();
                if combinable {
                    return product_of(Rational::one(), vec![(a.clone(), k.mul(&exp))]);
                }
            }
        }
        product_of(Rational::one(), vec![(Atom::Base(Arc::new(self.clone())), exp)])
    }

    pub fn recip(&self) -> Expr {
        self.powi(-1)
    }

    pub fn exp(&self) -> Expr {
        make_exp(self)
    }

    pub fn ln(&self) -> Expr {
        if let Some(c) = self.as_constant() {
            if c.is_one() {
                return Expr::zero();
            }
        }
        if let Some(Atom::Exp(u)) = self.as_atom() {
            return (**u).clone();
        }
        Expr::atom(Atom::Ln(Arc::new(self.clone())))
    }

    pub fn sin(&self) -> Expr {
        if self.is_zero() {
            return Expr::zero();
        }
        Expr::atom(Atom::Sin(Arc::new(self.clone())))
    }

    pub fn cos(&self) -> Expr {
        if self.is_zero() {
            return Expr::one();
        }
        Expr::atom(Atom::Cos(Arc::new(self.clone())))
    }

    /// Rational content and primitive part; the primitive part has
    /// coprime integer coefficients and a canonical sign.
    pub fn primitive_part(&self) -> (Rational, Expr) {
        if self.is_zero() {
            return (Rational::one(), Expr::zero());
        }
        let mut g = BigInt::zero();
        let mut l = BigInt::one();
        for (_, c) in &self.terms {
            g = g.gcd(c.numer());
            l = l.lcm(c.denom());
        }
        let mut content = Rational::new(g, l);
        let pos = self.terms.iter().filter(|(_, c)| c.is_positive()).count();
        let neg = self.terms.len() - pos;
        let flip = neg > pos || (neg == pos && self.terms[0].1.is_negative());
        if flip {
            content = -content;
        }
        let inv = content.recip();
        (content, self.scale(&inv))
    }

    /// Rebuilds the expression from scratch through the public constructors.
    /// On canonical input this is the identity.
    pub fn normalize(&self) -> Expr {
        let mut parts = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let mut term = Expr::constant(c.clone());
            for (a, k) in m {
                let base = match a {
                    Atom::Var(_) | Atom::Param(_) | Atom::Jet(_) => Expr::atom(a.clone()),
                    Atom::Base(b) => b.normalize(),
                    Atom::Exp(u) => u.normalize().exp(),
                    Atom::Ln(u) => u.normalize().ln(),
                    Atom::Sin(u) => u.normalize().sin(),
                    Atom::Cos(u) => u.normalize().cos(),
                };
                term = term.times(&base.pow(&k.to_expr().normalize()));
            }
            parts.push(term);
        }
        Expr::sum(parts)
    }

    /// Collects leaf atoms (variables, parameters, jets), recursing into kernels.
    pub fn leaves(&self) -> std::collections::BTreeSet<Atom> {
        let mut out = std::collections::BTreeSet::new();
        self.collect_leaves(&mut out);
        out
    }

    fn collect_leaves(&self, out: &mut std::collections::BTreeSet<Atom>) {
        for (m, _) in &self.terms {
            for (a, e) in m {
                if a.is_leaf() {
                    out.insert(a.clone());
                } else if let Some(inner) = a.inner() {
                    inner.collect_leaves(out);
                }
                match e {
                    Exponent::Lat(_, n) if *n != 0 => {
                        out.insert(Atom::param(THETA));
                    }
                    Exponent::Sym(s) => s.collect_leaves(out),
                    _ => {}
                }
            }
        }
    }

    pub fn contains_atom(&self, target: &Atom) -> bool {
        self.terms.iter().any(|(m, _)| {
            m.iter().any(|(a, e)| {
                a == target
                    || a.inner().is_some_and(|i| i.contains_atom(target))
                    || match e {
                        Exponent::Sym(s) => s.contains_atom(target),
                        Exponent::Lat(_, n) => *n != 0 && *target == Atom::param(THETA),
                    }
            })
        })
    }

    /// Jet variables occurring anywhere in the expression.
    pub fn jets(&self) -> Vec<JetVar> {
        self.leaves()
            .into_iter()
            .filter_map(|a| match a {
                Atom::Jet(j) => Some(j),
                _ => None,
            })
            .collect()
    }

    /// Coefficient of `atom^k` viewing the expression as a polynomial in that
    /// atom (other occurrences, e.g. inside kernels, are left alone).
    pub fn coefficient(&self, atom: &Atom, k: i64) -> Expr {
        let mut acc = BTreeMap::new();
        for (m, c) in &self.terms {
            let pos = m.iter().position(|(a, _)| a == atom);
            let power = pos.map(|p| m[p].1.as_int()).unwrap_or(Some(0));
            if power == Some(k) {
                let mut rest = m.clone();
                if let Some(p) = pos {
                    rest.remove(p);
                }
                add_into(&mut acc, rest, c.clone());
            }
        }
        Expr::from_map(acc)
    }
}

pub(crate) fn add_into(acc: &mut BTreeMap<Monomial, Rational>, m: Monomial, c: Rational) {
    use std::collections::btree_map::Entry;
    match acc.entry(m) {
        Entry::Vacant(v) => {
            v.insert(c);
        }
        Entry::Occupied(mut o) => {
            *o.get_mut() += c;
            if o.get().is_zero() {
                o.remove();
            }
        }
    }
}

fn merge_lists(a: &[(Atom, Exponent)], b: &[(Atom, Exponent)]) -> Monomial {
    let mut out = Vec::with_capacity(a.len() + b.len());
    out.extend_from_slice(a);
    out.extend_from_slice(b);
    out
}

pub(crate) fn rational_powi(c: &Rational, n: i64) -> Rational {
    if n >= 0 {
        num_traits::pow(c.clone(), n as usize)
    } else {
        assert!(!c.is_zero(), "division by zero in symbolic power");
        num_traits::pow(c.recip(), (-n) as usize)
    }
}

/// Normalizes `coeff × Π factors` where the factor list may contain repeated
/// atoms and reducible powers.
pub(crate) fn product_of(mut coeff: Rational, mut factors: Monomial) -> Expr {
    if coeff.is_zero() {
        return Expr::zero();
    }
    factors.sort_by(|a, b| a.0.cmp(&b.0));
    let mut merged: Monomial = Vec::with_capacity(factors.len());
    for (a, e) in factors {
        match merged.last_mut() {
            Some((la, le)) if *la == a => *le = le.add(&e),
            _ => merged.push((a, e)),
        }
    }

    let mut clean: Monomial = Vec::with_capacity(merged.len());
    let mut extra: Vec<Expr> = Vec::new();
    let mut exps: Vec<(Arc<Expr>, Exponent)> = Vec::new();
    for (a, e) in merged {
        if e.is_zero() {
            continue;
        }
        match (&a, e.as_int()) {
            (Atom::Exp(u), _) => exps.push((u.clone(), e)),
            (Atom::Base(b), Some(n)) => {
                if let Some(c) = b.as_constant() {
                    coeff *= rational_powi(&c, n);
                } else if n > 0 || b.len() == 1 {
                    extra.push(b.powi(n));
                } else {
                    let (content, prim) = b.primitive_part();
                    if content.is_one() {
                        clean.push((a, e));
                    } else {
                        // re-enter with the primitive base so it can merge
                        coeff *= rational_powi(&content, n);
                        extra.push(product_of(Rational::one(), vec![(Atom::Base(Arc::new(prim)), e)]));
                    }
                }
            }
            (Atom::Cos(u), Some(n)) if n >= 2 => {
                if n % 2 == 1 {
                    clean.push((a.clone(), Exponent::ONE));
                }
                let s2 = Expr::one().minus(&Expr::atom(Atom::Sin(u.clone())).powi(2));
                extra.push(s2.powi(n / 2));
            }
            _ => clean.push((a, e)),
        }
    }
    match exps.len() {
        0 => {}
        1 if exps[0].1 == Exponent::ONE => {
            let (u, e) = exps.pop().unwrap();
            clean.push((Atom::Exp(u), e));
            clean.sort_by(|a, b| a.0.cmp(&b.0));
        }
        _ => {
            let total = Expr::sum(exps.iter().map(|(u, e)| (**u).clone().times(&e.to_expr())));
            extra.push(make_exp(&total));
        }
    }
    let mut result = Expr::from_canonical_term(clean, coeff);
    for x in extra {
        result = result.times(&x);
    }
    result
}

/// exp(u) with `exp(c·ln B) → B^c` extraction and canonical argument.
fn make_exp(u: &Expr) -> Expr {
    let u = super::together::canon_exponent(u);
    let mut out = Expr::one();
    let mut rest: BTreeMap<Monomial, Rational> = BTreeMap::new();
    for (m, c) in u.terms() {
        let lns: Vec<usize> = m
            .iter()
            .enumerate()
            .filter(|(_, (a, _))| matches!(a, Atom::Ln(_)))
            .map(|(i, _)| i)
            .collect();
        if lns.len() == 1 && m[lns[0]].1 == Exponent::ONE {
            let Atom::Ln(b) = &m[lns[0]].0 else { unreachable!() };
            let mut others = m.clone();
            others.remove(lns[0]);
            let power = Expr::from_canonical_term(others, c.clone());
            out = out.times(&b.pow(&power));
        } else {
            add_into(&mut rest, m.clone(), c.clone());
        }
    }
    let rest = super::together::canon_exponent(&Expr::from_map(rest));
    if !rest.is_zero() {
        out = out.times(&Expr::from_canonical_term(vec![(Atom::Exp(Arc::new(rest)), Exponent::ONE)], Rational::one()));
    }
    out
}

impl Add for Expr {
    type Output = Expr;
    fn add(self, rhs: Expr) -> Expr {
        Expr::plus(&self, &rhs)
    }
}

impl<'a> Add<&'a Expr> for &'a Expr {
    type Output = Expr;
    fn add(self, rhs: &Expr) -> Expr {
        Expr::plus(self, rhs)
    }
}

impl Sub for Expr {
    type Output = Expr;
    fn sub(self, rhs: Expr) -> Expr {
        Expr::minus(&self, &rhs)
    }
}

impl<'a> Sub<&'a Expr> for &'a Expr {
    type Output = Expr;
    fn sub(self, rhs: &Expr) -> Expr {
        Expr::minus(self, rhs)
    }
}

impl Mul for Expr {
    type Output = Expr;
    fn mul(self, rhs: Expr) -> Expr {
        Expr::times(&self, &rhs)
    }
}

impl<'a> Mul<&'a Expr> for &'a Expr {
    type Output = Expr;
    fn mul(self, rhs: &Expr) -> Expr {
        Expr::times(self, rhs)
    }
}

impl Div for Expr {
    type Output = Expr;
    fn div(self, rhs: Expr) -> Expr {
        Expr::times(&self, &rhs.recip())
    }
}

impl<'a> Div<&'a Expr> for &'a Expr {
    type Output = Expr;
    fn div(self, rhs: &Expr) -> Expr {
        Expr::times(self, &rhs.recip())
    }
}

impl Neg for Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        Expr::negate(&self)
    }
}

impl<'a> Neg for &'a Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        Expr::negate(self)
    }
}

impl From<i64> for Expr {
    fn from(n: i64) -> Expr {
        Expr::int(n)
    }
}

impl From<Rational> for Expr {
    fn from(c: Rational) -> Expr {
        Expr::constant(c)
    }
}
