//! Exact `n`-th roots in a tower.
//!
//! Over `K(t)` a reduced fraction `c * N / D` (monic `N`, `D`) is an `n`-th
//! power exactly when `c` is one in `K` and `N`, `D` are `n`-th powers of monic
//! polynomials. Over a cyclotomic field of degree > 1 candidates are found
//! from complex embeddings and confirmed exactly.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};

use super::base::{BElem, BaseField};
use super::ratfun::{self, Poly, Val};
use super::Scalar;
use crate::error::{Error, Result};

pub(super) fn nth_root(x: &Scalar, n: u64) -> Result<Option<Scalar>> {
    if n == 0 {
        return Err(Error::Undecided("zeroth root".into()));
    }
    let t = x.tower();
    if t.characteristic() != 0 && n % t.characteristic() == 0 {
        return Err(Error::Undecided(format!(
            "{n}-th roots in characteristic {}",
            t.characteristic()
        )));
    }
    if x.is_zero() {
        return Ok(Some(x.clone()));
    }
    Ok(val_root(t.base(), t.level(), x.val(), n)?.map(|v| t.from_val(v)))
}

fn val_root(k: &BaseField, level: usize, v: &Val, n: u64) -> Result<Option<Val>> {
    if level == 0 {
        return Ok(base_root(k, ratfun::as_base(v), n)?.map(Val::Base));
    }
    let f = ratfun::as_frac(v);
    let cl = level - 1;
    let lc = f.num.last().unwrap();
    let c_root = match val_root(k, cl, lc, n)? {
        Some(r) => r,
        None => return Ok(None),
    };
    let monic = ratfun::pmonic(k, cl, &f.num);
    let (rn, rd) = match (
        poly_root(k, cl, &monic, n)?,
        poly_root(k, cl, &f.den, n)?,
    ) {
        (Some(a), Some(b)) => (a, b),
        _ => return Ok(None),
    };
    let num = ratfun::pscale(k, cl, &rn, &c_root);
    Ok(Some(Val::Frac(std::sync::Arc::new(ratfun::Frac {
        num,
        den: rd,
    }))))
}

fn ppow(k: &BaseField, level: usize, p: &Poly, n: u64) -> Poly {
    let mut acc = vec![ratfun::one(level)];
    for _ in 0..n {
        acc = ratfun::pmul(k, level, &acc, p);
    }
    acc
}

/// Monic `n`-th root of a monic polynomial, if any.
fn poly_root(k: &BaseField, level: usize, p: &Poly, n: u64) -> Result<Option<Poly>> {
    let d = p.len() - 1;
    if d % n as usize != 0 {
        return Ok(None);
    }
    let m = d / n as usize;
    let n_inv = ratfun::inv(k, level, &ratfun::constant(level, 0, Val::Base(k.from_int(n as i64))));
    let mut r: Poly = vec![ratfun::zero(level); m + 1];
    r[m] = ratfun::one(level);
    for j in 1..=m {
        // Coefficient of x^{d-j} in r^n is n * r_{m-j} + (terms in higher r).
        let cur = ppow(k, level, &ratfun::ptrim(r.clone()), n);
        let have = cur.get(d - j).cloned().unwrap_or_else(|| ratfun::zero(level));
        let diff = ratfun::sub(k, level, &p[d - j], &have);
        r[m - j] = ratfun::mul(k, level, &diff, &n_inv);
    }
    let r = ratfun::ptrim(r);
    if ppow(k, level, &r, n) == *p {
        Ok(Some(r))
    } else {
        Ok(None)
    }
}

fn base_root(k: &BaseField, a: &BElem, n: u64) -> Result<Option<BElem>> {
    if a.is_empty() {
        return Ok(Some(Vec::new()));
    }
    if n == 1 {
        return Ok(Some(a.clone()));
    }
    if let Some(q) = k.size() {
        if q > 1 << 22 {
            return Err(Error::Undecided(format!("root search in a field of size {q}")));
        }
        let target = a.clone();
        for idx in 1..q {
            let c = k.enumerate(idx);
            if k.pow(&c, n as u128) == target {
                return Ok(Some(c));
            }
        }
        return Ok(None);
    }
    if k.degree() == 1 {
        return Ok(rational_root(&a[0], n).map(|r| vec![r]));
    }
    cyclotomic_root(k, a, n)
}

fn int_root(x: &BigInt, n: u64) -> Option<BigInt> {
    if x.is_negative() && n % 2 == 0 {
        return None;
    }
    let r = x.nth_root(n as u32);
    if num_traits::pow(r.clone(), n as usize) == *x {
        Some(r)
    } else {
        None
    }
}

fn rational_root(r: &BigRational, n: u64) -> Option<BigRational> {
    let a = int_root(r.numer(), n)?;
    let b = int_root(r.denom(), n)?;
    Some(BigRational::new(a, b))
}

#[derive(Clone, Copy, Debug)]
struct C(f64, f64);

impl C {
    fn mul(self, o: C) -> C {
        C(self.0 * o.0 - self.1 * o.1, self.0 * o.1 + self.1 * o.0)
    }
    fn add(self, o: C) -> C {
        C(self.0 + o.0, self.1 + o.1)
    }
    fn sub(self, o: C) -> C {
        C(self.0 - o.0, self.1 - o.1)
    }
    fn div(self, o: C) -> C {
        let d = o.0 * o.0 + o.1 * o.1;
        C((self.0 * o.0 + self.1 * o.1) / d, (self.1 * o.0 - self.0 * o.1) / d)
    }
    fn polar(r: f64, th: f64) -> C {
        C(r * th.cos(), r * th.sin())
    }
}

/// Solve the complex linear system `m x = b` by Gaussian elimination.
fn csolve(mut m: Vec<Vec<C>>, mut b: Vec<C>) -> Vec<C> {
    let n = b.len();
    for col in 0..n {
        let piv = (col..n)
            .max_by(|&i, &j| {
                let ni = m[i][col].0.hypot(m[i][col].1);
                let nj = m[j][col].0.hypot(m[j][col].1);
                ni.partial_cmp(&nj).unwrap()
            })
            .unwrap();
        m.swap(col, piv);
        b.swap(col, piv);
        for row in 0..n {
            if row != col {
                let f = m[row][col].div(m[col][col]);
                for c in col..n {
                    let s = f.mul(m[col][c]);
                    m[row][c] = m[row][c].sub(s);
                }
                b[row] = b[row].sub(f.mul(b[col]));
            }
        }
    }
    (0..n).map(|i| b[i].div(m[i][i])).collect()
}

/// Roots in `Q(z)` of degree > 1: clear denominators so the root is an
/// algebraic integer, then try each choice of complex roots across the
/// embeddings and round the recovered coordinates.
fn cyclotomic_root(k: &BaseField, a: &BElem, n: u64) -> Result<Option<BElem>> {
    let d = k.degree();
    let m = k.zeta_order;
    let mut den = BigInt::one();
    for c in a {
        den = num_integer::Integer::lcm(&den, c.denom());
    }
    let scale = BigRational::from_integer(num_traits::pow(den.clone(), n as usize));
    let a_int: Vec<BigRational> = a.iter().map(|c| c * &scale).collect();
    let coords: Vec<f64> = a_int
        .iter()
        .map(|c| c.to_f64().unwrap_or(f64::INFINITY))
        .collect();
    if coords.iter().any(|c| !c.is_finite() || c.abs() > 1e12) {
        return Err(Error::Undecided("coefficients too large for root search".into()));
    }
    let exps: Vec<u64> = (1..=m).filter(|e| num_integer::gcd(*e, m) == 1).collect();
    assert_eq!(exps.len(), d);
    let two_pi = std::f64::consts::PI * 2.0;
    let embed_z: Vec<C> = exps
        .iter()
        .map(|&e| C::polar(1.0, two_pi * e as f64 / m as f64))
        .collect();
    let eval = |coef: &[f64], z: C| {
        let mut acc = C(0.0, 0.0);
        let mut pw = C(1.0, 0.0);
        for &c in coef {
            acc = acc.add(C(c * pw.0, c * pw.1));
            pw = pw.mul(z);
        }
        acc
    };
    let images: Vec<C> = embed_z.iter().map(|&z| eval(&coords, z)).collect();
    let vander: Vec<Vec<C>> = embed_z
        .iter()
        .map(|&z| {
            let mut row = Vec::with_capacity(d);
            let mut pw = C(1.0, 0.0);
            for _ in 0..d {
                row.push(pw);
                pw = pw.mul(z);
            }
            row
        })
        .collect();
    let combos = (n as u128).pow(d as u32);
    if combos > 1 << 16 {
        return Err(Error::Undecided("too many embedding combinations".into()));
    }
    let roots: Vec<Vec<C>> = images
        .iter()
        .map(|w| {
            let r = w.0.hypot(w.1).powf(1.0 / n as f64);
            let th = w.1.atan2(w.0);
            (0..n)
                .map(|j| C::polar(r, (th + two_pi * j as f64) / n as f64))
                .collect()
        })
        .collect();
    let target = k.trim(a_int.clone());
    for idx in 0..combos {
        let mut rest = idx;
        let rhs: Vec<C> = roots
            .iter()
            .map(|rs| {
                let j = (rest % n as u128) as usize;
                rest /= n as u128;
                rs[j]
            })
            .collect();
        let sol = csolve(vander.clone(), rhs);
        if sol.iter().any(|c| c.1.abs() > 1e-4) {
            continue;
        }
        let cand: BElem = k.trim(
            sol.iter()
                .map(|c| BigRational::from_integer(BigInt::from(c.0.round() as i64)))
                .collect(),
        );
        if k.pow(&cand, n as u128) == target {
            let inv_den = BigRational::new(BigInt::one(), den.clone());
            return Ok(Some(cand.iter().map(|c| c * &inv_den).collect()));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use crate::fields::FieldTower;

    #[test]
    fn rational_powers() {
        let q = FieldTower::rationals();
        assert_eq!(q.parse("9/4").unwrap().nth_root(2).unwrap(), Some(q.parse("3/2").unwrap()));
        assert_eq!(q.int(2).nth_root(2).unwrap(), None);
        assert_eq!(q.int(-8).nth_root(3).unwrap(), Some(q.int(-2)));
        assert_eq!(q.int(-4).nth_root(2).unwrap(), None);
    }

    #[test]
    fn gaussian_square_roots() {
        let k = FieldTower::rationals().adjoin_zeta(4).unwrap();
        // 2i = (1 + i)^2
        let r = k.parse("2*z").unwrap().nth_root(2).unwrap().unwrap();
        assert_eq!(r.pow(2), k.parse("2*z").unwrap());
        assert!(k.int(-1).is_nth_power(2).unwrap());
        assert!(!k.int(2).is_nth_power(2).unwrap());
        assert!(!k.int(3).is_nth_power(2).unwrap());
        // -4 = (1 + i)^4
        assert!(k.int(-4).is_nth_power(4).unwrap());
    }

    #[test]
    fn function_field_powers() {
        let f = FieldTower::finite(5).unwrap().adjoin_var("t").unwrap();
        assert!(!f.var("t").unwrap().is_nth_power(2).unwrap());
        let x = f.parse("(t + 1)^2 / (3*t^2 + 3)").unwrap();
        // 3 is not a square mod 5, so this is not a square
        assert!(!x.is_nth_power(2).unwrap());
        let y = f.parse("4*(t + 1)^2 / (t^2 + 1)^2").unwrap();
        assert_eq!(y.nth_root(2).unwrap().unwrap().pow(2), y);
    }
}
