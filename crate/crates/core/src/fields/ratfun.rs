//! Iterated rational function fields `K(t1)(t2)...(tr)`.
//!
//! A value at level `k >= 1` is a reduced fraction of polynomials in `t_k`
//! whose coefficients live at level `k - 1`; the denominator is monic. Since
//! `K(t1..t_{k-1})[t_k]` is a principal ideal domain this form is canonical,
//! so structural equality is field equality.

use std::sync::Arc;

use num_traits::One;

use super::base::{rat, BElem, BaseField};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) enum Val {
    Base(BElem),
    Frac(Arc<Frac>),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) struct Frac {
    /// Numerator coefficients, low degree first; empty for zero.
    pub num: Vec<Val>,
    /// Monic denominator, low degree first.
    pub den: Vec<Val>,
}

pub(crate) type Poly = Vec<Val>;

pub(crate) fn zero(level: usize) -> Val {
    if level == 0 {
        Val::Base(Vec::new())
    } else {
        Val::Frac(Arc::new(Frac {
            num: Vec::new(),
            den: vec![one(level - 1)],
        }))
    }
}

pub(crate) fn one(level: usize) -> Val {
    constant(level, 0, Val::Base(vec![rat(1)]))
}

/// Embed a value from level `from` into level `to >= from` as a constant.
pub(crate) fn constant(to: usize, from: usize, v: Val) -> Val {
    let mut v = v;
    for level in from + 1..=to {
        let zero_v = is_zero(&v);
        v = Val::Frac(Arc::new(Frac {
            num: if zero_v { Vec::new() } else { vec![v] },
            den: vec![one(level - 1)],
        }));
    }
    v
}

/// The variable `t_level` as a value at level `level`.
pub(crate) fn variable(level: usize) -> Val {
    assert!(level >= 1);
    Val::Frac(Arc::new(Frac {
        num: vec![zero(level - 1), one(level - 1)],
        den: vec![one(level - 1)],
    }))
}

pub(crate) fn is_zero(v: &Val) -> bool {
    match v {
        Val::Base(b) => b.is_empty(),
        Val::Frac(f) => f.num.is_empty(),
    }
}

pub(crate) fn is_one(v: &Val) -> bool {
    match v {
        Val::Base(b) => b.len() == 1 && b[0].is_one(),
        Val::Frac(f) => f.num.len() == 1 && f.den.len() == 1 && is_one(&f.num[0]),
    }
}

pub(crate) fn as_frac(v: &Val) -> &Frac {
    match v {
        Val::Frac(f) => f,
        Val::Base(_) => panic!("expected a rational function value"),
    }
}

pub(crate) fn as_base(v: &Val) -> &BElem {
    match v {
        Val::Base(b) => b,
        Val::Frac(_) => panic!("expected a base value"),
    }
}

fn is_one_poly(p: &Poly, _level: usize) -> bool {
    p.len() == 1 && is_one(&p[0])
}

// ---------------------------------------------------------------------------
// polynomials with coefficients at `level`
// ---------------------------------------------------------------------------

pub(crate) fn ptrim(mut p: Poly) -> Poly {
    while p.last().is_some_and(is_zero) {
        p.pop();
    }
    p
}

pub(crate) fn padd(k: &BaseField, level: usize, a: &Poly, b: &Poly) -> Poly {
    let n = a.len().max(b.len());
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        out.push(match (a.get(i), b.get(i)) {
            (Some(x), Some(y)) => add(k, level, x, y),
            (Some(x), None) => x.clone(),
            (None, Some(y)) => y.clone(),
            (None, None) => unreachable!(),
        });
    }
    ptrim(out)
}

pub(crate) fn pneg(k: &BaseField, level: usize, a: &Poly) -> Poly {
    a.iter().map(|x| neg(k, level, x)).collect()
}

pub(crate) fn pmul(k: &BaseField, level: usize, a: &Poly, b: &Poly) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    if is_one_poly(a, level) {
        return b.clone();
    }
    if is_one_poly(b, level) {
        return a.clone();
    }
    let mut out = vec![zero(level); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if is_zero(x) {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if is_zero(y) {
                continue;
            }
            let prod = mul(k, level, x, y);
            out[i + j] = add(k, level, &out[i + j], &prod);
        }
    }
    ptrim(out)
}

pub(crate) fn pscale(k: &BaseField, level: usize, a: &Poly, c: &Val) -> Poly {
    if is_zero(c) {
        return Vec::new();
    }
    a.iter().map(|x| mul(k, level, x, c)).collect()
}

pub(crate) fn pdivrem(k: &BaseField, level: usize, a: &Poly, d: &Poly) -> (Poly, Poly) {
    assert!(!d.is_empty(), "polynomial division by zero");
    let mut r = a.clone();
    if r.len() < d.len() {
        return (Vec::new(), r);
    }
    if is_one_poly(d, level) {
        return (r, Vec::new());
    }
    let lc = d.last().unwrap();
    let lc_inv = inv(k, level, lc);
    let lc_is_one = is_one(lc);
    let mut q = vec![zero(level); r.len() - d.len() + 1];
    while r.len() >= d.len() {
        let shift = r.len() - d.len();
        let top = r.last().unwrap();
        let c = if lc_is_one {
            top.clone()
        } else {
            mul(k, level, top, &lc_inv)
        };
        for (i, di) in d.iter().enumerate() {
            if is_zero(di) {
                continue;
            }
            let t = mul(k, level, &c, di);
            r[shift + i] = sub(k, level, &r[shift + i], &t);
        }
        q[shift] = c;
        // The leading coefficient cancels exactly.
        r.pop();
        r = ptrim(r);
        if r.is_empty() {
            break;
        }
    }
    (ptrim(q), r)
}

pub(crate) fn pmonic(k: &BaseField, level: usize, a: &Poly) -> Poly {
    match a.last() {
        None => Vec::new(),
        Some(lc) if is_one(lc) => a.clone(),
        Some(lc) => pscale(k, level, a, &inv(k, level, lc)),
    }
}

/// Monic gcd.
pub(crate) fn pgcd(k: &BaseField, level: usize, a: &Poly, b: &Poly) -> Poly {
    let (mut x, mut y) = (a.clone(), b.clone());
    while !y.is_empty() {
        if y.len() == 1 {
            return vec![one(level)];
        }
        let (_, r) = pdivrem(k, level, &x, &y);
        x = y;
        y = r;
    }
    pmonic(k, level, &x)
}

// ---------------------------------------------------------------------------
// field operations
// ---------------------------------------------------------------------------

fn make_frac(k: &BaseField, level: usize, num: Poly, den: Poly) -> Val {
    // level >= 1; coefficients at level - 1
    let cl = level - 1;
    if num.is_empty() {
        return zero(level);
    }
    let (num, den) = if den.len() == 1 {
        (num, den)
    } else {
        let g = pgcd(k, cl, &num, &den);
        if g.len() == 1 {
            (num, den)
        } else {
            (pdivrem(k, cl, &num, &g).0, pdivrem(k, cl, &den, &g).0)
        }
    };
    let lc = den.last().unwrap();
    if is_one(lc) {
        Val::Frac(Arc::new(Frac { num, den }))
    } else {
        let c = inv(k, cl, lc);
        Val::Frac(Arc::new(Frac {
            num: pscale(k, cl, &num, &c),
            den: pscale(k, cl, &den, &c),
        }))
    }
}

pub(crate) fn add(k: &BaseField, level: usize, a: &Val, b: &Val) -> Val {
    if level == 0 {
        return Val::Base(k.add(as_base(a), as_base(b)));
    }
    if is_zero(a) {
        return b.clone();
    }
    if is_zero(b) {
        return a.clone();
    }
    let (fa, fb) = (as_frac(a), as_frac(b));
    let cl = level - 1;
    if fa.den == fb.den {
        let num = padd(k, cl, &fa.num, &fb.num);
        if is_one_poly(&fa.den, cl) {
            return if num.is_empty() {
                zero(level)
            } else {
                Val::Frac(Arc::new(Frac {
                    num,
                    den: fa.den.clone(),
                }))
            };
        }
        return make_frac(k, level, num, fa.den.clone());
    }
    let num = padd(
        k,
        cl,
        &pmul(k, cl, &fa.num, &fb.den),
        &pmul(k, cl, &fb.num, &fa.den),
    );
    let den = pmul(k, cl, &fa.den, &fb.den);
    make_frac(k, level, num, den)
}

pub(crate) fn neg(k: &BaseField, level: usize, a: &Val) -> Val {
    if level == 0 {
        return Val::Base(k.neg(as_base(a)));
    }
    let f = as_frac(a);
    Val::Frac(Arc::new(Frac {
        num: pneg(k, level - 1, &f.num),
        den: f.den.clone(),
    }))
}

pub(crate) fn sub(k: &BaseField, level: usize, a: &Val, b: &Val) -> Val {
    add(k, level, a, &neg(k, level, b))
}

pub(crate) fn mul(k: &BaseField, level: usize, a: &Val, b: &Val) -> Val {
    if level == 0 {
        return Val::Base(k.mul(as_base(a), as_base(b)));
    }
    if is_zero(a) || is_zero(b) {
        return zero(level);
    }
    let (fa, fb) = (as_frac(a), as_frac(b));
    let cl = level - 1;
    if is_one_poly(&fa.den, cl) && is_one_poly(&fb.den, cl) {
        return Val::Frac(Arc::new(Frac {
            num: pmul(k, cl, &fa.num, &fb.num),
            den: fa.den.clone(),
        }));
    }
    // Cross cancellation keeps the result reduced; denominators stay monic.
    let g1 = pgcd(k, cl, &fa.num, &fb.den);
    let g2 = pgcd(k, cl, &fb.num, &fa.den);
    let an = pdivrem(k, cl, &fa.num, &g1).0;
    let bd = pdivrem(k, cl, &fb.den, &g1).0;
    let bn = pdivrem(k, cl, &fb.num, &g2).0;
    let ad = pdivrem(k, cl, &fa.den, &g2).0;
    Val::Frac(Arc::new(Frac {
        num: pmul(k, cl, &an, &bn),
        den: pmul(k, cl, &ad, &bd),
    }))
}

pub(crate) fn inv(k: &BaseField, level: usize, a: &Val) -> Val {
    if level == 0 {
        return Val::Base(k.inv(as_base(a)));
    }
    let f = as_frac(a);
    assert!(!f.num.is_empty(), "inverse of zero");
    let cl = level - 1;
    let lc = f.num.last().unwrap();
    if is_one(lc) {
        return Val::Frac(Arc::new(Frac {
            num: f.den.clone(),
            den: f.num.clone(),
        }));
    }
    let c = inv(k, cl, lc);
    Val::Frac(Arc::new(Frac {
        num: pscale(k, cl, &f.den, &c),
        den: pscale(k, cl, &f.num, &c),
    }))
}

/// If `v` does not depend on the top `depth` variables, return it at level
/// `level - depth`.
pub(crate) fn descend(v: &Val, level: usize, depth: usize) -> Option<Val> {
    let mut cur = v.clone();
    for l in (level - depth + 1..=level).rev() {
        let f = as_frac(&cur);
        if f.num.is_empty() {
            cur = zero(l - 1);
            continue;
        }
        if f.num.len() != 1 || !is_one_poly(&f.den, l - 1) {
            return None;
        }
        cur = f.num[0].clone();
    }
    Some(cur)
}
