//! Common-denominator forms for exponents and exp arguments.

use std::collections::BTreeMap;
use std::sync::Arc;

use super::atom::{Atom, Exponent};
use super::expr::Expr;

/// Negative integer powers of sum atoms, with the largest multiplicity seen.
pub fn sum_denominators(e: &Expr) -> BTreeMap<Arc<Expr>, i64> {
    let mut den: BTreeMap<Arc<Expr>, i64> = BTreeMap::new();
    for (m, _) in e.terms() {
        for (a, k) in m {
            if let (Atom::Base(s), Some(n)) = (a, k.as_int()) {
                if n < 0 && s.len() > 1 {
                    let slot = den.entry(s.clone()).or_insert(0);
                    *slot = (*slot).max(-n);
                }
            }
        }
    }
    den
}

/// Multiplies through by all sum denominators (no cancellation).
pub fn clear_denominators(e: &Expr) -> Expr {
    let mut out = e.clone();
    for (s, m) in sum_denominators(e) {
        out = out.mul_factor(&Atom::Base(s), &Exponent::int(m));
    }
    out
}

/// Canonical rational form `N · Π sᵢ^(−mᵢ)` with common sum factors cancelled.
///
/// Two exponents that are equal as rational functions of their atoms map to
/// the same expression, which is what lets `a^p · a^q` merge reliably.
pub fn canon_exponent(e: &Expr) -> Expr {
    let den = sum_denominators(e);
    if den.is_empty() {
        return e.clone();
    }
    let mut numer = e.clone();
    for (s, m) in &den {
        numer = numer.mul_factor(&Atom::Base(s.clone()), &Exponent::int(*m));
    }
    let mut out = numer;
    let mut remaining = Vec::new();
    for (s, mut m) in den {
        while m > 0 {
            match exact_div(&out, &s) {
                Some(q) => {
                    out = q;
                    m -= 1;
                }
                None => break,
            }
        }
        if m > 0 {
            remaining.push((s, m));
        }
    }
    for (s, m) in remaining {
        out = out.mul_factor(&Atom::Base(s), &Exponent::int(-m));
    }
    out
}

/// Exact multivariate division `n / d` when `d` is a polynomial in plain
/// atoms with nonnegative integer exponents; `None` if it does not divide.
pub fn exact_div(n: &Expr, d: &Expr) -> Option<Expr> {
    if d.is_zero() {
        return None;
    }
    if n.is_zero() {
        return Some(Expr::zero());
    }
    let mut vars: Vec<Atom> = Vec::new();
    for (m, _) in d.terms() {
        for (a, k) in m {
            match k.as_int() {
                Some(p) if p > 0 => {
                    if !vars.contains(a) {
                        vars.push(a.clone());
                    }
                }
                _ => return None,
            }
        }
    }
    vars.sort();
    let key = |m: &[(Atom, Exponent)]| -> Option<Vec<i64>> {
        vars.iter()
            .map(|v| match m.iter().find(|(a, _)| a == v) {
                None => Some(0),
                Some((_, k)) => k.as_int().filter(|p| *p >= 0),
            })
            .collect()
    };
    let (lead_m, lead_c) = d
        .terms()
        .iter()
        .max_by(|a, b| key(&a.0).cmp(&key(&b.0)))
        .cloned()?;
    let lead_key = key(&lead_m)?;
    let mut p = n.clone();
    let mut q = Expr::zero();
    let limit = 64 * (n.len() + 8);
    for _ in 0..limit {
        if p.is_zero() {
            return Some(q);
        }
        let mut best: Option<(Vec<i64>, usize)> = None;
        for (i, (m, _)) in p.terms().iter().enumerate() {
            let k = key(m)?;
            if best.as_ref().is_none_or(|(bk, _)| k > *bk) {
                best = Some((k, i));
            }
        }
        let (bk, bi) = best?;
        if bk.iter().zip(&lead_key).any(|(a, b)| a < b) {
            return None;
        }
        let (pm, pc) = &p.terms()[bi];
        let mut qm: Vec<(Atom, Exponent)> = Vec::new();
        for (a, k) in pm {
            match vars.iter().position(|v| v == a) {
                Some(vi) => {
                    let r = bk[vi] - lead_key[vi];
                    if r != 0 {
                        qm.push((a.clone(), Exponent::int(r)));
                    }
                }
                None => qm.push((a.clone(), k.clone())),
            }
        }
        let coeff = pc / &lead_c;
        let factor = Expr::from_canonical_term(qm, coeff);
        q = q.plus(&factor);
        p = p.minus(&factor.times(d));
    }
    None
}

/// True when the two exponents differ by an integer; returns the difference.
pub fn integer_offset(a: &Exponent, b: &Exponent) -> Option<i64> {
    let d = Exponent::from_expr(&(a.to_expr() - b.to_expr()));
    d.as_int()
}
