use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use super::{Algebra, Terms};
use crate::error::{Error, Result};
use crate::fields::Scalar;

/// Element of an [`Algebra`] as a dense coordinate vector on its basis.
#[derive(Clone)]
pub struct Element {
    alg: Algebra,
    c: Vec<Scalar>,
}

impl PartialEq for Element {
    fn eq(&self, other: &Self) -> bool {
        self.alg == other.alg && self.c == other.c
    }
}
impl Eq for Element {}

impl Element {
    pub(crate) fn new(alg: &Algebra, c: Vec<Scalar>) -> Self {
        debug_assert_eq!(c.len(), alg.dim());
        Element { alg: alg.clone(), c }
    }

    pub(crate) fn from_terms(alg: &Algebra, terms: &Terms) -> Self {
        let mut c = vec![alg.tower().zero(); alg.dim()];
        for (k, s) in terms {
            c[*k] = &c[*k] + s;
        }
        Element::new(alg, c)
    }

    pub fn parent(&self) -> &Algebra {
        &self.alg
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.c
    }

    pub fn coord(&self, i: usize) -> &Scalar {
        &self.c[i]
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|x| x.is_zero())
    }

    /// Indices of nonzero coordinates.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.c.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, _)| i)
    }

    pub fn scale(&self, s: &Scalar) -> Element {
        if s.is_zero() {
            return self.alg.zero();
        }
        Element::new(
            &self.alg,
            self.c
                .iter()
                .map(|x| if x.is_zero() { x.clone() } else { x * s })
                .collect(),
        )
    }

    pub fn try_add(&self, other: &Element) -> Result<Element> {
        self.check(other)?;
        Ok(Element::new(
            &self.alg,
            self.c.iter().zip(&other.c).map(|(a, b)| a + b).collect(),
        ))
    }

    pub fn try_sub(&self, other: &Element) -> Result<Element> {
        self.check(other)?;
        Ok(Element::new(
            &self.alg,
            self.c.iter().zip(&other.c).map(|(a, b)| a - b).collect(),
        ))
    }

    pub fn try_mul(&self, other: &Element) -> Result<Element> {
        self.check(other)?;
        let mut out = vec![self.alg.tower().zero(); self.alg.dim()];
        let right: Vec<usize> = other.support().collect();
        for i in self.support() {
            for &j in &right {
                let ab = &self.c[i] * &other.c[j];
                for (k, s) in self.alg.basis_product(i, j) {
                    let t = if s.is_one() { ab.clone() } else { &ab * &s };
                    out[k] = &out[k] + &t;
                }
            }
        }
        Ok(Element::new(&self.alg, out))
    }

    fn check(&self, other: &Element) -> Result<()> {
        if self.alg == other.alg {
            Ok(())
        } else {
            Err(Error::ParentMismatch)
        }
    }

    /// `x^e` for `e >= 0`; negative powers go through the inverse.
    pub fn pow(&self, e: i64) -> Result<Element> {
        let base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut acc = self.alg.one();
        let mut b = base;
        let mut e = e.unsigned_abs();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &b;
            }
            e >>= 1;
            if e > 0 {
                b = &b * &b;
            }
        }
        Ok(acc)
    }

    /// The scalar `s` with `self = s * 1`, if any.
    pub fn as_scalar(&self) -> Option<Scalar> {
        let one = self.alg.one();
        let k = one.support().next()?;
        let s = &self.c[k] / &one.c[k];
        if one.scale(&s) == *self {
            Some(s)
        } else {
            None
        }
    }

    pub fn is_scalar(&self) -> bool {
        self.as_scalar().is_some()
    }

    /// `x y - y x`.
    pub fn commutator(&self, other: &Element) -> Element {
        &(self * other) - &(other * self)
    }

    /// Multiplicative commutator `x y x^-1 y^-1`.
    pub fn group_commutator(&self, other: &Element) -> Result<Element> {
        Ok(&(&(self * other) * &self.inverse()?) * &other.inverse()?)
    }

    /// Same coordinates read in another algebra of the same dimension.
    pub fn transport(&self, target: &Algebra) -> Result<Element> {
        if target.dim() != self.alg.dim() {
            return Err(Error::DimensionMismatch(self.alg.dim(), target.dim()));
        }
        let c: Result<Vec<Scalar>> = self.c.iter().map(|x| target.tower().embed(x)).collect();
        Ok(Element::new(target, c?))
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $f:ident) => {
        impl<'a> $tr<&'a Element> for &'a Element {
            type Output = Element;
            fn $m(self, rhs: &'a Element) -> Element {
                self.$f(rhs).expect("elements of different algebras")
            }
        }
        impl $tr<Element> for Element {
            type Output = Element;
            fn $m(self, rhs: Element) -> Element {
                (&self).$m(&rhs)
            }
        }
    };
}

binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);

impl Neg for &Element {
    type Output = Element;
    fn neg(self) -> Element {
        Element::new(&self.alg, self.c.iter().map(|x| -x).collect())
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for i in self.support() {
            let c = self.c[i].to_string();
            let label = self.alg.label(i);
            let compound = c.trim_start_matches('-').contains([' ', '/']);
            let coef = if compound { format!("({c})") } else { c.clone() };
            let term = if label == "1" {
                coef
            } else if c == "1" {
                label.to_string()
            } else if c == "-1" {
                format!("-{label}")
            } else {
                format!("{coef}*{label}")
            };
            if first {
                write!(f, "{term}")?;
            } else if let Some(rest) = term.strip_prefix('-') {
                write!(f, " - {rest}")?;
            } else {
                write!(f, " + {term}")?;
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Serialized as `{"idx": "scalar"}` over the nonzero coordinates.
impl Serialize for Element {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(None)?;
        for i in self.support() {
            m.serialize_entry(&i.to_string(), &self.c[i].to_string())?;
        }
        m.end()
    }
}
