//! `D' = D (x) (t_1, t_2)` over `L = F((t_1))((t_2))`, with `i^2 = t_1`,
//! `j^2 = t_2`, `ij = -ji` and `D` central. Elements are finite sums
//! `sum d_{a,b} i^a j^b` with `d_{a,b}` in `D`.

use std::collections::BTreeMap;
use std::fmt;

use crate::algebra::{Algebra, Element};
use crate::error::{Error, Result};
use crate::fields::{ExponentVector, Scalar};

#[derive(Clone, Debug)]
pub struct LaurentAlgebra {
    d: Algebra,
}

/// Terms are keyed by `(b, a)` so that the first key is the leading one for
/// the right-to-left order.
#[derive(Clone, Debug, PartialEq)]
pub struct LaurentElement {
    d: Algebra,
    terms: BTreeMap<(i64, i64), Element>,
}

impl LaurentAlgebra {
    pub fn new(d: &Algebra) -> Self {
        LaurentAlgebra { d: d.clone() }
    }

    pub fn coefficients(&self) -> &Algebra {
        &self.d
    }

    pub fn zero(&self) -> LaurentElement {
        LaurentElement {
            d: self.d.clone(),
            terms: BTreeMap::new(),
        }
    }

    /// `d i^a j^b`.
    pub fn monomial(&self, d: &Element, a: i64, b: i64) -> LaurentElement {
        let mut z = self.zero();
        if !d.is_zero() {
            z.terms.insert((b, a), d.clone());
        }
        z
    }

    pub fn constant(&self, d: &Element) -> LaurentElement {
        self.monomial(d, 0, 0)
    }

    pub fn one(&self) -> LaurentElement {
        self.constant(&self.d.one())
    }

    pub fn i(&self) -> LaurentElement {
        self.monomial(&self.d.one(), 1, 0)
    }

    pub fn j(&self) -> LaurentElement {
        self.monomial(&self.d.one(), 0, 1)
    }

    /// `c t_1^p t_2^q` for `c` in `F`.
    pub fn scalar(&self, c: &Scalar, p: i64, q: i64) -> LaurentElement {
        self.monomial(&self.d.scalar(c), 2 * p, 2 * q)
    }

    pub fn from_terms(&self, terms: impl IntoIterator<Item = (i64, i64, Element)>) -> LaurentElement {
        let mut z = self.zero();
        for (a, b, d) in terms {
            z = &z + &self.monomial(&d, a, b);
        }
        z
    }
}

impl LaurentElement {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `(a, b, d_{a,b})` in increasing order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, i64, &Element)> {
        self.terms.iter().map(|(&(b, a), d)| (a, b, d))
    }

    pub fn coefficient(&self, a: i64, b: i64) -> Option<&Element> {
        self.terms.get(&(b, a))
    }

    /// `v(f) = min (a/2, b/2)`.
    pub fn valuation(&self) -> Result<ExponentVector> {
        let (a, b, _) = self.leading()?;
        Ok(ExponentVector::new(vec![a, b], vec![2, 2]))
    }

    /// `l(f) = d i^a j^b` as `(a, b, d)`.
    pub fn leading(&self) -> Result<(i64, i64, Element)> {
        let (&(b, a), d) = self.terms.iter().next().ok_or(Error::ZeroElement)?;
        Ok((a, b, d.clone()))
    }

    pub fn leading_term(&self) -> Result<LaurentElement> {
        let (a, b, d) = self.leading()?;
        Ok(LaurentAlgebra::new(&self.d).monomial(&d, a, b))
    }

    pub fn scale(&self, c: &Scalar) -> LaurentElement {
        let mut z = LaurentAlgebra::new(&self.d).zero();
        for (k, d) in &self.terms {
            let e = d.scale(c);
            if !e.is_zero() {
                z.terms.insert(*k, e);
            }
        }
        z
    }

    /// Coefficients in `F` with all exponents even, i.e. an element of `L`.
    pub fn is_central(&self) -> bool {
        self.terms
            .iter()
            .all(|(&(b, a), d)| a % 2 == 0 && b % 2 == 0 && d.is_scalar())
    }

    pub fn commutes_with_sign(&self, other: &LaurentElement, sign: i64) -> bool {
        let lhs = self * other;
        let rhs = other * self;
        if sign == 1 {
            lhs == rhs
        } else {
            (&lhs + &rhs).is_zero()
        }
    }
}

impl fmt::Display for LaurentElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (a, b, d)) in self.terms().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({d})*i^{a}*j^{b}")?;
        }
        Ok(())
    }
}

impl<'a> std::ops::Add<&'a LaurentElement> for &'a LaurentElement {
    type Output = LaurentElement;
    fn add(self, rhs: &LaurentElement) -> LaurentElement {
        let mut terms = self.terms.clone();
        for (k, d) in &rhs.terms {
            let s = match terms.get(k) {
                Some(e) => e + d,
                None => d.clone(),
            };
            if s.is_zero() {
                terms.remove(k);
            } else {
                terms.insert(*k, s);
            }
        }
        LaurentElement {
            d: self.d.clone(),
            terms,
        }
    }
}

impl std::ops::Neg for &LaurentElement {
    type Output = LaurentElement;
    fn neg(self) -> LaurentElement {
        self.scale(&self.d.tower().int(-1))
    }
}

impl<'a> std::ops::Sub<&'a LaurentElement> for &'a LaurentElement {
    type Output = LaurentElement;
    fn sub(self, rhs: &LaurentElement) -> LaurentElement {
        self + &-rhs
    }
}

impl<'a> std::ops::Mul<&'a LaurentElement> for &'a LaurentElement {
    type Output = LaurentElement;
    /// `(d i^a j^b)(e i^c j^d) = (-1)^{bc} de i^{a+c} j^{b+d}`.
    fn mul(self, rhs: &LaurentElement) -> LaurentElement {
        let t = self.d.tower();
        let mut acc: BTreeMap<(i64, i64), Element> = BTreeMap::new();
        for (&(b, a), x) in &self.terms {
            for (&(d, c), y) in &rhs.terms {
                let mut p = x * y;
                if (b * c).rem_euclid(2) == 1 {
                    p = p.scale(&t.int(-1));
                }
                let k = (b + d, a + c);
                let s = match acc.remove(&k) {
                    Some(e) => &e + &p,
                    None => p,
                };
                if !s.is_zero() {
                    acc.insert(k, s);
                }
            }
        }
        LaurentElement {
            d: self.d.clone(),
            terms: acc,
        }
    }
}

/// The element `d` of `D` extracted from an upstairs witness.
#[derive(Clone, Debug)]
pub struct ReducedWitness {
    pub d: Element,
    pub d2: Scalar,
    pub alpha: i64,
    pub beta: i64,
}

/// Given `x` in `D` square-central and `y` in `D'` with `y^2` in `L^x` and
/// `xy = -yx`, read `l(y) = d i^a j^b` and return `d`, which satisfies
/// `d^2` in `F^x` and `xd = -dx`.
pub fn laurent_obstruction_reduce(x: &Element, y: &LaurentElement) -> Result<ReducedWitness> {
    let dalg = x.parent();
    if &y.d != dalg {
        return Err(Error::ParentMismatch);
    }
    if x.is_scalar() || !(x * x).is_scalar() || (x * x).is_zero() {
        return Err(Error::NotSquareCentral);
    }
    if y.is_zero() {
        return Err(Error::NotAWitness("y = 0".into()));
    }
    let y2 = y * y;
    if y2.is_zero() || !y2.is_central() {
        return Err(Error::NotAWitness(format!("y^2 = {y2} is not in L")));
    }
    let lx = LaurentAlgebra::new(dalg).constant(x);
    if !lx.commutes_with_sign(y, -1) {
        return Err(Error::NotAWitness("x and y do not anticommute".into()));
    }
    let (alpha, beta, d) = y.leading()?;
    let d2 = (&d * &d)
        .as_scalar()
        .filter(|s| !s.is_zero())
        .ok_or_else(|| Error::NotAWitness(format!("leading coefficient {d} is not square-central")))?;
    if !(&(x * &d) + &(&d * x)).is_zero() {
        return Err(Error::NotAWitness("leading coefficient does not anticommute with x".into()));
    }
    Ok(ReducedWitness { d, d2, alpha, beta })
}
