use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::{Deserialize, Serialize};

use super::ratfun;
use super::Scalar;
use crate::error::{Error, Result};

/// A point of `(1/n_1)Z x ... x (1/n_r)Z`, stored as numerators over declared
/// denominators and ordered right-to-left lexicographically.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ExponentVector {
    pub num: Vec<i64>,
    pub den: Vec<u64>,
}

impl ExponentVector {
    pub fn integral(num: Vec<i64>) -> Self {
        let den = vec![1; num.len()];
        ExponentVector { num, den }
    }

    pub fn zero(r: usize) -> Self {
        Self::integral(vec![0; r])
    }

    pub fn new(num: Vec<i64>, den: Vec<u64>) -> Self {
        assert_eq!(num.len(), den.len());
        assert!(den.iter().all(|&d| d > 0));
        ExponentVector { num, den }
    }

    pub fn len(&self) -> usize {
        self.num.len()
    }

    pub fn is_empty(&self) -> bool {
        self.num.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(|&n| n == 0)
    }

    /// Whether every coordinate is an integer.
    pub fn is_integral(&self) -> bool {
        self.num
            .iter()
            .zip(&self.den)
            .all(|(&n, &d)| n.rem_euclid(d as i64) == 0)
    }

    /// Class in `prod Z/n_i` of the fractional parts, against denominators `n`.
    pub fn fractional_class(&self, n: &[u64]) -> Vec<u64> {
        self.num
            .iter()
            .zip(&self.den)
            .zip(n)
            .map(|((&a, &d), &ni)| {
                // a/d = k/ni + integer
                let scaled = a as i128 * ni as i128;
                assert!(scaled % d as i128 == 0, "coordinate not in (1/n)Z");
                (scaled / d as i128).rem_euclid(ni as i128) as u64
            })
            .collect()
    }

    fn coord_cmp(&self, other: &Self, i: usize) -> Ordering {
        let a = self.num[i] as i128 * other.den[i] as i128;
        let b = other.num[i] as i128 * self.den[i] as i128;
        a.cmp(&b)
    }
}

impl PartialEq for ExponentVector {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl Eq for ExponentVector {}

impl PartialOrd for ExponentVector {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExponentVector {
    fn cmp(&self, other: &Self) -> Ordering {
        assert_eq!(self.len(), other.len(), "exponent vectors of different length");
        for i in (0..self.len()).rev() {
            match self.coord_cmp(other, i) {
                Ordering::Equal => continue,
                o => return o,
            }
        }
        Ordering::Equal
    }
}

fn lcm(a: u64, b: u64) -> u64 {
    a / num_integer::gcd(a, b) * b
}

impl Add for &ExponentVector {
    type Output = ExponentVector;
    fn add(self, rhs: &ExponentVector) -> ExponentVector {
        assert_eq!(self.len(), rhs.len());
        let mut num = Vec::with_capacity(self.len());
        let mut den = Vec::with_capacity(self.len());
        for i in 0..self.len() {
            let d = lcm(self.den[i], rhs.den[i]);
            num.push(self.num[i] * (d / self.den[i]) as i64 + rhs.num[i] * (d / rhs.den[i]) as i64);
            den.push(d);
        }
        ExponentVector { num, den }
    }
}

impl Neg for &ExponentVector {
    type Output = ExponentVector;
    fn neg(self) -> ExponentVector {
        ExponentVector {
            num: self.num.iter().map(|n| -n).collect(),
            den: self.den.clone(),
        }
    }
}

impl Sub for &ExponentVector {
    type Output = ExponentVector;
    fn sub(self, rhs: &ExponentVector) -> ExponentVector {
        self + &(-rhs)
    }
}

impl fmt::Display for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for i in 0..self.len() {
            if i > 0 {
                write!(f, ", ")?;
            }
            let g = num_integer::gcd(self.num[i].unsigned_abs(), self.den[i]).max(1);
            let (n, d) = (self.num[i] / g as i64, self.den[i] / g);
            if d == 1 {
                write!(f, "{n}")?;
            } else {
                write!(f, "{n}/{d}")?;
            }
        }
        write!(f, ")")
    }
}

/// Valuation of `x` over its top `depth` variables and the leading
/// coefficient, an element of the tower with those variables removed.
pub(super) fn valuation(x: &Scalar, depth: usize) -> Result<(ExponentVector, Scalar)> {
    if x.is_zero() {
        return Err(Error::ZeroInput);
    }
    let tower = x.tower();
    let level = tower.level();
    assert!(depth <= level);
    let k = tower.base();
    let mut exps = vec![0i64; depth];
    let mut cur = x.val().clone();
    for l in (level - depth + 1..=level).rev() {
        let f = ratfun::as_frac(&cur);
        let on = f.num.iter().position(|c| !ratfun::is_zero(c)).unwrap();
        let od = f.den.iter().position(|c| !ratfun::is_zero(c)).unwrap();
        exps[l - (level - depth) - 1] = on as i64 - od as i64;
        cur = ratfun::mul(k, l - 1, &f.num[on], &ratfun::inv(k, l - 1, &f.den[od]));
    }
    let sub = tower.prefix(level - depth);
    Ok((ExponentVector::integral(exps), sub.from_val(cur)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::FieldTower;

    #[test]
    fn right_to_left_order() {
        let a = ExponentVector::integral(vec![5, 0]);
        let b = ExponentVector::integral(vec![0, 1]);
        assert!(a < b);
        let h = ExponentVector::new(vec![1, 0], vec![2, 1]);
        assert!(h < ExponentVector::integral(vec![1, 0]));
        assert_eq!(&h + &h, ExponentVector::integral(vec![1, 0]));
        assert_eq!(h.to_string(), "(1/2, 0)");
    }

    #[test]
    fn polynomial_valuations() {
        let l = FieldTower::rationals().adjoin_vars(&["t1", "t2"]).unwrap();
        let x = l.parse("t1 + t1*t2").unwrap();
        assert_eq!(x.valuation().unwrap(), ExponentVector::integral(vec![1, 0]));
        let y = l.parse("1/t2").unwrap();
        assert_eq!(y.valuation().unwrap(), ExponentVector::integral(vec![0, -1]));
        assert!(l.int(5).valuation().unwrap().is_zero());
    }

    #[test]
    fn residues() {
        let l = FieldTower::rationals().adjoin_vars(&["t1", "t2"]).unwrap();
        let x = l.parse("(2 + t1)/(1 + t2)").unwrap();
        assert_eq!(x.residue_at_zero().unwrap(), l.int(2));
        assert!(matches!(
            l.var("t1").unwrap().residue_at_zero(),
            Err(Error::NonzeroValuation(_))
        ));
        assert_eq!(l.zero().valuation().unwrap_err(), Error::ZeroInput);
    }

    #[test]
    fn trailing_variables_only() {
        let l = FieldTower::rationals().adjoin_vars(&["t", "t1"]).unwrap();
        let x = l.parse("t*t1^2").unwrap();
        assert_eq!(
            x.monomial_valuation(&["t1"]).unwrap(),
            ExponentVector::integral(vec![2])
        );
        assert!(x.monomial_valuation(&["t"]).is_err());
    }
}
