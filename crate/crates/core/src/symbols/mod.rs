//! Symbol and cyclic algebras, Kummer extensions, Kum-groups and
//! separability idempotents.

mod kummer;

use crate::algebra::{verify_isomorphism, Algebra, Element, IsoReport, Presentation, Terms};
use crate::armature::Armature;
use crate::error::{Error, Result};
use crate::fields::{FieldTower, Scalar};

pub use kummer::{kummer_extension, GroupIndex, KummerField, SeparabilityIdempotents};

fn monomial_label(parts: &[(&str, u64)]) -> String {
    let s: Vec<String> = parts
        .iter()
        .filter(|(_, e)| *e > 0)
        .map(|(v, e)| if *e == 1 { v.to_string() } else { format!("{v}^{e}") })
        .collect();
    if s.is_empty() {
        "1".into()
    } else {
        s.join("*")
    }
}

/// Whether `zeta` has multiplicative order exactly `n`.
pub fn is_primitive_root(zeta: &Scalar, n: u64) -> bool {
    if zeta.is_zero() || !zeta.pow(n as i64).is_one() {
        return false;
    }
    (1..n).filter(|k| n % k == 0).all(|k| !zeta.pow(k as i64).is_one())
}

/// `(a, b)_zeta` with the tower's canonical primitive `n`-th root of unity.
pub fn symbol_algebra(tower: &FieldTower, a: &Scalar, b: &Scalar, n: u64) -> Result<Algebra> {
    let zeta = tower.root_of_unity(n)?;
    symbol_algebra_with(tower, a, b, &zeta, n)
}

/// `(a, b)_zeta` on the basis `i^x j^y` (index `x * n + y`) with
/// `i^n = a`, `j^n = b`, `i j = zeta j i`.
pub fn symbol_algebra_with(
    tower: &FieldTower,
    a: &Scalar,
    b: &Scalar,
    zeta: &Scalar,
    n: u64,
) -> Result<Algebra> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::ZeroInput);
    }
    if n == 0 || !is_primitive_root(zeta, n) {
        return Err(Error::MissingRootOfUnity(n));
    }
    let (a, b, zeta) = (tower.embed(a)?, tower.embed(b)?, tower.embed(zeta)?);
    let nn = n as usize;
    let dim = nn * nn;
    let zpow: Vec<Scalar> = (0..n).map(|k| zeta.pow(k as i64)).collect();
    let labels = (0..dim)
        .map(|idx| monomial_label(&[("i", (idx / nn) as u64), ("j", (idx % nn) as u64)]))
        .collect();
    let mut table: Vec<Vec<Terms>> = vec![vec![Vec::new(); dim]; dim];
    for (p, row) in table.iter_mut().enumerate() {
        let (x, y) = (p / nn, p % nn);
        for (q, cell) in row.iter_mut().enumerate() {
            let (u, v) = (q / nn, q % nn);
            // j^y i^u = zeta^{-y u} i^u j^y
            let e = (nn - (y * u) % nn) % nn;
            let mut c = zpow[e].clone();
            let mut xi = x + u;
            let mut yj = y + v;
            if xi >= nn {
                xi -= nn;
                c = &c * &a;
            }
            if yj >= nn {
                yj -= nn;
                c = &c * &b;
            }
            *cell = vec![(xi * nn + yj, c)];
        }
    }
    let mut one = vec![tower.zero(); dim];
    one[0] = tower.one();
    Algebra::from_table(
        tower,
        labels,
        table,
        one,
        Presentation::Symbol { n, a, b, zeta },
        Some(nn),
        false,
    )
}

/// Generators `(i, j)` of a symbol algebra.
pub fn symbol_generators(alg: &Algebra) -> Result<(Element, Element)> {
    match alg.presentation() {
        Presentation::Symbol { n, .. } => Ok((alg.basis(*n as usize), alg.basis(1))),
        _ => Err(Error::InvalidAlgebra("not a symbol algebra".into())),
    }
}

/// Verdict of a division test; `Unknown` is never upgraded to a guess.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub enum DivisionVerdict {
    Division,
    Split { zero_divisor: String },
    Unknown,
}

/// Division test for quaternion algebras `(a, b)_{-1}`.
///
/// Split if `a` or `b` is a square, over finite fields, or when a point of
/// the conic `a x^2 + b y^2 = w^2` with small integer `x, y` turns up; the
/// witness is the zero divisor `w + x i + y j`. Over `Q` with `a, b < 0` the
/// norm form is definite, hence division.
pub fn quaternion_division(alg: &Algebra, bound: i64) -> Result<DivisionVerdict> {
    let (n, a, b) = match alg.presentation() {
        Presentation::Symbol { n, a, b, .. } => (*n, a.clone(), b.clone()),
        _ => return Err(Error::InvalidAlgebra("not a symbol algebra".into())),
    };
    if n != 2 {
        return Ok(DivisionVerdict::Unknown);
    }
    let t = alg.tower();
    let (i, j) = symbol_generators(alg)?;
    let one = alg.one();
    let split_by = |x: Element| -> Result<DivisionVerdict> {
        debug_assert!(x.inverse().is_err());
        Ok(DivisionVerdict::Split {
            zero_divisor: x.to_string(),
        })
    };
    if let Some(r) = a.nth_root(2)? {
        return split_by(&i - &one.scale(&r));
    }
    if let Some(r) = b.nth_root(2)? {
        return split_by(&j - &one.scale(&r));
    }
    if t.vars().is_empty() && t.characteristic() != 0 {
        // conic a x^2 + b y^2 = 1 has a point over a finite field
        let q = t.size().unwrap();
        for idx in 0..q.min(1 << 16) {
            let x = t.enumerate_base(idx);
            let rest = &t.one() - &(&a * &x.pow(2));
            if let Some(y) = (&rest / &b).nth_root(2)? {
                // (1 + x i + y j) is a zero divisor: its norm 1 - a x^2 - b y^2 vanishes
                return split_by(&(&one + &i.scale(&x)) + &j.scale(&y));
            }
        }
        return Ok(DivisionVerdict::Unknown);
    }
    if let (Some(ra), Some(rb)) = (a.as_rational(), b.as_rational()) {
        use num_traits::Signed;
        if ra.is_negative() && rb.is_negative() {
            return Ok(DivisionVerdict::Division);
        }
        for x in -bound..=bound {
            for y in -bound..=bound {
                let w2 = &(&a * &t.int(x * x)) + &(&b * &t.int(y * y));
                if w2.is_zero() {
                    continue;
                }
                if let Some(w) = w2.nth_root(2)? {
                    // w + x i + y j has norm w^2 - a x^2 - b y^2 = 0
                    return split_by(&(&one.scale(&w) + &i.scale(&t.int(x))) + &j.scale(&t.int(y)));
                }
            }
        }
    }
    Ok(DivisionVerdict::Unknown)
}

/// A cyclic algebra `(k, sigma, a)` over a single Kummer step, with its
/// isomorphism from the symbol algebra `(a, b)_zeta`.
#[derive(Clone, Debug)]
pub struct CyclicAlgebra {
    pub alg: Algebra,
    pub symbol: Algebra,
    /// Images of the symbol basis `i^x j^y` under `i -> y`, `j -> x`.
    pub images: Vec<Element>,
    pub report: IsoReport,
}

impl CyclicAlgebra {
    /// The generator `x` of the subfield `k`.
    pub fn x(&self) -> Element {
        self.alg.basis(self.alg.degree().unwrap())
    }

    /// The element `y` with `y c y^-1 = sigma(c)` and `y^n = a`.
    pub fn y(&self) -> Element {
        self.alg.basis(1)
    }
}

/// `(k, sigma, a) = sum_m k y^m` with `y c = sigma(c) y` and `y^n = a`, where
/// `k = F(x)`, `x^n = b`, `sigma(x) = zeta x`. Basis `x^e y^m` at `e * n + m`.
pub fn cyclic_algebra(k: &KummerField, a: &Scalar) -> Result<CyclicAlgebra> {
    if k.radicands().len() != 1 {
        return Err(Error::NotCyclic(format!(
            "Kummer extension with {} radicands",
            k.radicands().len()
        )));
    }
    if a.is_zero() {
        return Err(Error::ZeroInput);
    }
    let tower = k.tower();
    let a = tower.embed(a)?;
    let n = k.degrees()[0];
    let nn = n as usize;
    let b = k.radicands()[0].clone();
    let zeta = k.zetas()[0].clone();
    let dim = nn * nn;
    let labels = (0..dim)
        .map(|idx| monomial_label(&[("x", (idx / nn) as u64), ("y", (idx % nn) as u64)]))
        .collect();
    let mut table: Vec<Vec<Terms>> = vec![vec![Vec::new(); dim]; dim];
    for (p, row) in table.iter_mut().enumerate() {
        let (e, m) = (p / nn, p % nn);
        for (q, cell) in row.iter_mut().enumerate() {
            let (f, l) = (q / nn, q % nn);
            // y^m x^f = sigma^m(x^f) y^m = zeta^{m f} x^f y^m
            let mut c = zeta.pow(((m * f) % nn) as i64);
            let (mut xe, mut ye) = (e + f, m + l);
            if xe >= nn {
                xe -= nn;
                c = &c * &b;
            }
            if ye >= nn {
                ye -= nn;
                c = &c * &a;
            }
            *cell = vec![(xe * nn + ye, c)];
        }
    }
    let mut one = vec![tower.zero(); dim];
    one[0] = tower.one();
    let alg = Algebra::from_table(tower, labels, table, one, Presentation::General, Some(nn), false)?;
    let symbol = symbol_algebra_with(tower, &a, &b, &zeta, n)?;
    let x = alg.basis(nn);
    let y = alg.basis(1);
    let mut images = Vec::with_capacity(dim);
    for idx in 0..dim {
        images.push(&y.pow((idx / nn) as i64)? * &x.pow((idx % nn) as i64)?);
    }
    let report = verify_isomorphism(&symbol, &alg, &images)?;
    Ok(CyclicAlgebra {
        alg,
        symbol,
        images,
        report,
    })
}

/// Armature generated by the classes of `i_k` and `j_k` of a symbol algebra
/// or a tensor product of symbol algebras.
pub fn standard_armature(alg: &Algebra) -> Result<Armature> {
    let mut gens = Vec::new();
    match alg.factors() {
        Some(factors) => {
            for (k, f) in factors.iter().enumerate() {
                let (i, j) = symbol_generators(f)?;
                let n = f.degree()? as u64;
                gens.push((alg.embed_factor(k, &i), n));
                gens.push((alg.embed_factor(k, &j), n));
            }
        }
        None => {
            let (i, j) = symbol_generators(alg)?;
            let n = alg.degree()? as u64;
            gens.push((i, n));
            gens.push((j, n));
        }
    }
    Armature::new(alg, gens)
}
