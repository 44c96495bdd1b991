//! The algebraic part of a tower: a prime field (Q or F_p) extended by a
//! primitive root of unity, stored as a quotient `prime[x] / (f)` where `f`
//! is the minimal polynomial of the chosen root.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Element of the algebraic base: coefficients of a polynomial in the root
/// of unity, low degree first, trailing zeros trimmed. Zero is the empty vector.
pub(crate) type BElem = Vec<BigRational>;

#[derive(Clone, Debug)]
pub(crate) struct BaseField {
    /// Characteristic; 0 for Q.
    pub p: u64,
    /// Monic minimal polynomial of the adjoined root, low degree first.
    pub modulus: Vec<BigRational>,
    /// Order `m` of the adjoined primitive root of unity (1 when none).
    pub zeta_order: u64,
    /// The adjoined primitive `m`-th root as an element.
    pub zeta: BElem,
}

pub(crate) fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl BaseField {
    pub fn new(p: u64, zeta_order: u64) -> Result<Self> {
        if p != 0 && !is_prime(p) {
            return Err(Error::InvalidTower(format!("{p} is not prime")));
        }
        if zeta_order == 0 {
            return Err(Error::InvalidTower("root of unity of order 0".into()));
        }
        if p != 0 && zeta_order % p == 0 {
            return Err(Error::CharDividesOrder { p, n: zeta_order });
        }
        // Start from the prime field and find the minimal polynomial of zeta.
        let mut field = BaseField {
            p,
            modulus: vec![rat(0), rat(1)],
            zeta_order: 1,
            zeta: vec![rat(1)],
        };
        let phi: Vec<BigRational> = cyclotomic_poly(zeta_order)
            .into_iter()
            .map(|c| field.pnorm(c))
            .collect();
        if p == 0 {
            // Cyclotomic polynomials are irreducible over Q.
            field.modulus = phi;
        } else {
            let d = multiplicative_order(p % zeta_order, zeta_order);
            field.modulus = field.find_factor(&phi, d as usize);
        }
        field.zeta_order = zeta_order;
        field.zeta = if field.degree() == 1 {
            // x - r: the root lies in the prime field.
            field.trim(vec![field.pneg(&field.modulus[0])])
        } else {
            vec![rat(0), rat(1)]
        };
        Ok(field)
    }

    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    /// Cardinality for finite bases, `None` for number fields.
    pub fn size(&self) -> Option<u128> {
        if self.p == 0 {
            None
        } else {
            Some((self.p as u128).pow(self.degree() as u32))
        }
    }

    // ---- prime field ----

    pub fn pnorm(&self, x: BigRational) -> BigRational {
        if self.p == 0 {
            return x;
        }
        let p = BigInt::from(self.p);
        let n = x.numer().mod_floor(&p);
        let d = x.denom().mod_floor(&p);
        let dinv = mod_inverse(&d, &p).expect("denominator divisible by the characteristic");
        BigRational::from_integer((n * dinv).mod_floor(&p))
    }

    pub fn psub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        self.pnorm(a - b)
    }

    pub fn pmul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        self.pnorm(a * b)
    }

    pub fn pneg(&self, a: &BigRational) -> BigRational {
        self.pnorm(-a)
    }

    pub fn pinv(&self, a: &BigRational) -> BigRational {
        assert!(!a.is_zero(), "inverse of zero");
        if self.p == 0 {
            a.recip()
        } else {
            let p = BigInt::from(self.p);
            BigRational::from_integer(mod_inverse(a.numer(), &p).expect("nonzero mod p"))
        }
    }

    pub fn from_int(&self, n: i64) -> BElem {
        self.trim(vec![self.pnorm(rat(n))])
    }

    pub fn from_rational(&self, r: BigRational) -> Result<BElem> {
        if self.p != 0 && (r.denom() % BigInt::from(self.p)).is_zero() {
            return Err(Error::Parse(format!(
                "denominator of {r} vanishes in characteristic {}",
                self.p
            )));
        }
        Ok(self.trim(vec![self.pnorm(r)]))
    }

    // ---- polynomials over the prime field ----

    pub fn trim(&self, mut v: Vec<BigRational>) -> Vec<BigRational> {
        while v.last().is_some_and(|c| c.is_zero()) {
            v.pop();
        }
        v
    }

    fn ppoly_mul(&self, a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        let out = out.into_iter().map(|c| self.pnorm(c)).collect();
        self.trim(out)
    }

    /// Division with remainder in prime[x].
    fn ppoly_divrem(
        &self,
        a: &[BigRational],
        d: &[BigRational],
    ) -> (Vec<BigRational>, Vec<BigRational>) {
        let d = self.trim(d.to_vec());
        assert!(!d.is_empty(), "polynomial division by zero");
        let mut r = self.trim(a.to_vec());
        if r.len() < d.len() {
            return (Vec::new(), r);
        }
        let lc_inv = self.pinv(d.last().unwrap());
        let mut q = vec![BigRational::zero(); r.len() - d.len() + 1];
        while r.len() >= d.len() && !r.is_empty() {
            let shift = r.len() - d.len();
            let c = self.pmul(r.last().unwrap(), &lc_inv);
            for (k, dk) in d.iter().enumerate() {
                r[shift + k] = self.psub(&r[shift + k], &self.pmul(&c, dk));
            }
            q[shift] = c;
            r = self.trim(r);
        }
        (self.trim(q), r)
    }

    fn reduce(&self, v: Vec<BigRational>) -> BElem {
        let v = self.trim(v);
        if v.len() <= self.degree() {
            return v;
        }
        self.ppoly_divrem(&v, &self.modulus).1
    }

    /// First monic degree-`d` divisor of `phi` in enumeration order.
    fn find_factor(&self, phi: &[BigRational], d: usize) -> Vec<BigRational> {
        let p = self.p;
        let total = (p as u128).pow(d as u32);
        for idx in 0..total {
            let mut coeffs = Vec::with_capacity(d + 1);
            let mut k = idx;
            for _ in 0..d {
                coeffs.push(rat((k % p as u128) as i64));
                k /= p as u128;
            }
            coeffs.push(rat(1));
            let (_, r) = self.ppoly_divrem(phi, &coeffs);
            if r.is_empty() {
                return coeffs;
            }
        }
        unreachable!("cyclotomic polynomial has a factor of degree ord_m(p)")
    }

    // ---- element arithmetic ----

    pub fn add(&self, a: &BElem, b: &BElem) -> BElem {
        let n = a.len().max(b.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            let x = a.get(k).cloned().unwrap_or_else(BigRational::zero);
            let y = b.get(k).cloned().unwrap_or_else(BigRational::zero);
            out.push(self.pnorm(x + y));
        }
        self.trim(out)
    }

    pub fn neg(&self, a: &BElem) -> BElem {
        a.iter().map(|c| self.pneg(c)).collect()
    }

    pub fn mul(&self, a: &BElem, b: &BElem) -> BElem {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        if a.len() == 1 && b.len() == 1 {
            return self.trim(vec![self.pmul(&a[0], &b[0])]);
        }
        self.reduce(self.ppoly_mul(a, b))
    }

    pub fn inv(&self, a: &BElem) -> BElem {
        assert!(!a.is_empty(), "inverse of zero");
        if a.len() == 1 {
            return vec![self.pinv(&a[0])];
        }
        // Extended Euclid: s*a + t*f = g with g a nonzero constant.
        let (mut r0, mut r1) = (self.modulus.clone(), a.clone());
        let (mut s0, mut s1): (Vec<BigRational>, Vec<BigRational>) = (Vec::new(), vec![rat(1)]);
        while r1.len() > 1 {
            let (q, r) = self.ppoly_divrem(&r0, &r1);
            let qs = self.ppoly_mul(&q, &s1);
            let s2 = self.add(&s0, &self.neg(&qs));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s2;
        }
        assert!(!r1.is_empty(), "element is not invertible modulo the minimal polynomial");
        let c = self.pinv(&r1[0]);
        self.reduce(s1.iter().map(|x| self.pmul(x, &c)).collect())
    }

    pub fn pow(&self, a: &BElem, mut e: u128) -> BElem {
        let mut base = a.clone();
        let mut acc = self.from_int(1);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// The `idx`-th element in base-p enumeration of a finite base.
    pub fn enumerate(&self, idx: u128) -> BElem {
        let p = self.p as u128;
        let mut k = idx;
        let mut v = Vec::with_capacity(self.degree());
        for _ in 0..self.degree() {
            v.push(rat((k % p) as i64));
            k /= p;
        }
        self.trim(v)
    }

    /// Generator of the cyclic group of roots of unity that the base holds
    /// together with its order: `(M, root)` where every root of unity in the
    /// base is a power of `root`. Finite bases return a primitive element.
    pub fn unit_root_group(&self) -> (u128, BElem) {
        match self.size() {
            None => {
                let m = self.zeta_order as u128;
                if m % 2 == 0 {
                    (m, self.zeta.clone())
                } else {
                    (2 * m, self.neg(&self.zeta))
                }
            }
            Some(q) => {
                let order = q - 1;
                let primes = prime_factors(order);
                for idx in 1..q {
                    let g = self.enumerate(idx);
                    if primes
                        .iter()
                        .all(|&l| self.pow(&g, order / l) != self.from_int(1))
                    {
                        return (order, g);
                    }
                }
                unreachable!("finite field multiplicative group is cyclic")
            }
        }
    }

}

pub(crate) fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.mod_floor(m).extended_gcd(m);
    if !e.gcd.is_one() {
        return None;
    }
    Some(e.x.mod_floor(m))
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) fn prime_factors(mut n: u128) -> Vec<u128> {
    let mut out = Vec::new();
    let mut d = 2u128;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub(crate) fn multiplicative_order(a: u64, m: u64) -> u64 {
    if m == 1 {
        return 1;
    }
    let mut k = 1;
    let mut x = a % m;
    while x != 1 {
        x = (x as u128 * a as u128 % m as u128) as u64;
        k += 1;
    }
    k
}

/// n-th cyclotomic polynomial over Q, low degree first.
pub(crate) fn cyclotomic_poly(n: u64) -> Vec<BigRational> {
    let q = BaseField {
        p: 0,
        modulus: vec![rat(0), rat(1)],
        zeta_order: 1,
        zeta: vec![rat(1)],
    };
    let mut num = vec![BigRational::zero(); n as usize + 1];
    num[0] = rat(-1);
    num[n as usize] = rat(1);
    for d in 1..n {
        if n % d == 0 {
            let phi_d = cyclotomic_poly(d);
            num = q.ppoly_divrem(&num, &phi_d).0;
        }
    }
    num
}
