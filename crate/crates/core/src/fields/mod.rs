//! Exact ground fields: `Q` or `F_p`, extended by roots of unity and by
//! transcendental variables, together with the monomial valuation on the
//! rational function part.

pub(crate) mod base;
mod parse;
mod power;
pub(crate) mod ratfun;
mod valuation;

use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use base::{BElem, BaseField};
use ratfun::Val;

pub use valuation::ExponentVector;

/// Distinct prime divisors of `n` in increasing order.
pub fn prime_divisors(n: u64) -> Vec<u64> {
    base::prime_factors(n as u128).into_iter().map(|p| p as u64).collect()
}

pub fn is_prime(n: u64) -> bool {
    base::is_prime(n)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum BaseSpec {
    Q,
    Fp(u64),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Step {
    #[serde(rename = "zeta")]
    Zeta(u64),
    #[serde(rename = "var")]
    Var(String),
}

/// JSON description of a tower: `{"base": "Q" | {"Fp": p}, "steps": [...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TowerSpec {
    pub base: BaseSpec,
    #[serde(default)]
    pub steps: Vec<Step>,
}

#[derive(Debug)]
struct TowerInner {
    spec: TowerSpec,
    base: BaseField,
    vars: Vec<String>,
    prefixes: OnceLock<Vec<FieldTower>>,
}

/// A ground field. Cyclotomic steps are merged into a single root of unity
/// of order the lcm of the requested orders; variables keep their order.
#[derive(Clone)]
pub struct FieldTower(Arc<TowerInner>);

impl fmt::Debug for FieldTower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldTower({})", self.describe())
    }
}

impl PartialEq for FieldTower {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.base.p == other.0.base.p
                && self.0.base.zeta_order == other.0.base.zeta_order
                && self.0.vars == other.0.vars)
    }
}
impl Eq for FieldTower {}

fn lcm(a: u64, b: u64) -> u64 {
    a / num_integer::gcd(a, b) * b
}

impl FieldTower {
    pub fn new(spec: TowerSpec) -> Result<Self> {
        let p = match spec.base {
            BaseSpec::Q => 0,
            BaseSpec::Fp(p) => p,
        };
        let mut order = 1u64;
        let mut vars: Vec<String> = Vec::new();
        for step in &spec.steps {
            match step {
                Step::Zeta(n) => {
                    if *n == 0 {
                        return Err(Error::InvalidTower("root of unity of order 0".into()));
                    }
                    if p != 0 && n % p == 0 {
                        return Err(Error::CharDividesOrder { p, n: *n });
                    }
                    order = lcm(order, *n);
                }
                Step::Var(name) => {
                    if vars.contains(name) {
                        return Err(Error::DuplicateVariable(name.clone()));
                    }
                    if !valid_name(name) {
                        return Err(Error::InvalidTower(format!("bad variable name `{name}`")));
                    }
                    vars.push(name.clone());
                }
            }
        }
        let base = BaseField::new(p, order)?;
        Ok(FieldTower(Arc::new(TowerInner {
            spec,
            base,
            vars,
            prefixes: OnceLock::new(),
        })))
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Self::new(serde_json::from_str(s)?)
    }

    pub fn rationals() -> Self {
        Self::new(TowerSpec {
            base: BaseSpec::Q,
            steps: vec![],
        })
        .unwrap()
    }

    pub fn finite(p: u64) -> Result<Self> {
        Self::new(TowerSpec {
            base: BaseSpec::Fp(p),
            steps: vec![],
        })
    }

    pub fn adjoin_zeta(&self, n: u64) -> Result<Self> {
        let mut spec = self.0.spec.clone();
        spec.steps.push(Step::Zeta(n));
        Self::new(spec)
    }

    pub fn adjoin_var(&self, name: &str) -> Result<Self> {
        let mut spec = self.0.spec.clone();
        spec.steps.push(Step::Var(name.to_string()));
        Self::new(spec)
    }

    pub fn adjoin_vars(&self, names: &[&str]) -> Result<Self> {
        let mut t = self.clone();
        for n in names {
            t = t.adjoin_var(n)?;
        }
        Ok(t)
    }

    pub fn spec(&self) -> &TowerSpec {
        &self.0.spec
    }

    pub fn characteristic(&self) -> u64 {
        self.0.base.p
    }

    pub fn vars(&self) -> &[String] {
        &self.0.vars
    }

    pub(crate) fn level(&self) -> usize {
        self.0.vars.len()
    }

    pub(crate) fn base(&self) -> &BaseField {
        &self.0.base
    }

    /// Order of the adjoined root of unity `z`.
    pub fn zeta_order(&self) -> u64 {
        self.0.base.zeta_order
    }

    /// Number of elements when the tower is a finite field.
    pub fn size(&self) -> Option<u128> {
        if self.level() == 0 {
            self.0.base.size()
        } else {
            None
        }
    }

    /// Degree of the algebraic part over the prime field.
    pub fn algebraic_degree(&self) -> usize {
        self.0.base.degree()
    }

    pub fn describe(&self) -> String {
        let mut s = match self.0.base.p {
            0 => "Q".to_string(),
            p => format!("F_{p}"),
        };
        if self.0.base.zeta_order > 1 {
            s.push_str(&format!("(z{})", self.0.base.zeta_order));
        }
        for v in &self.0.vars {
            s.push_str(&format!("({v})"));
        }
        s
    }

    /// The tower keeping only the first `level` variables.
    pub fn prefix(&self, level: usize) -> FieldTower {
        assert!(level <= self.level());
        if level == self.level() {
            return self.clone();
        }
        let all = self.0.prefixes.get_or_init(|| {
            (0..self.level())
                .map(|l| {
                    let mut seen = 0;
                    let steps = self
                        .0
                        .spec
                        .steps
                        .iter()
                        .filter(|s| match s {
                            Step::Var(_) => {
                                seen += 1;
                                seen <= l
                            }
                            Step::Zeta(_) => true,
                        })
                        .cloned()
                        .collect();
                    let base = self.0.base.clone();
                    FieldTower(Arc::new(TowerInner {
                        spec: TowerSpec {
                            base: self.0.spec.base.clone(),
                            steps,
                        },
                        base,
                        vars: self.0.vars[..l].to_vec(),
                        prefixes: OnceLock::new(),
                    }))
                })
                .collect()
        });
        all[level].clone()
    }

    fn wrap(&self, v: Val) -> Scalar {
        Scalar {
            tower: self.clone(),
            v,
        }
    }

    pub fn zero(&self) -> Scalar {
        self.wrap(ratfun::zero(self.level()))
    }

    pub fn one(&self) -> Scalar {
        self.wrap(ratfun::one(self.level()))
    }

    pub fn int(&self, n: i64) -> Scalar {
        self.from_base(self.0.base.from_int(n))
    }

    pub fn rational(&self, num: i64, den: i64) -> Result<Scalar> {
        if den == 0 {
            return Err(Error::Parse("zero denominator".into()));
        }
        let r = BigRational::new(BigInt::from(num), BigInt::from(den));
        Ok(self.from_base(self.0.base.from_rational(r)?))
    }

    pub(crate) fn from_base(&self, b: BElem) -> Scalar {
        self.wrap(ratfun::constant(self.level(), 0, Val::Base(b)))
    }

    pub(crate) fn from_val(&self, v: Val) -> Scalar {
        self.wrap(v)
    }

    /// The variable with the given name.
    pub fn var(&self, name: &str) -> Result<Scalar> {
        let idx = self
            .0
            .vars
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| Error::Parse(format!("unknown variable `{name}`")))?;
        Ok(self.var_at(idx))
    }

    /// The variable `t_{idx+1}` (0-based index).
    pub fn var_at(&self, idx: usize) -> Scalar {
        let level = idx + 1;
        self.wrap(ratfun::constant(self.level(), level, ratfun::variable(level)))
    }

    /// The adjoined root of unity `z` of order `zeta_order()`.
    pub fn z(&self) -> Scalar {
        self.from_base(self.0.base.zeta.clone())
    }

    /// Generator of the cyclic group of roots of unity in the algebraic part,
    /// with its order.
    pub fn unit_roots(&self) -> (u64, Scalar) {
        let (m, g) = self.0.base.unit_root_group();
        (m as u64, self.from_base(g))
    }

    /// A primitive `n`-th root of unity, canonical for the tower.
    pub fn root_of_unity(&self, n: u64) -> Result<Scalar> {
        let (m, g) = self.unit_roots();
        if n == 0 || m % n != 0 {
            return Err(Error::MissingRootOfUnity(n));
        }
        Ok(g.pow(m as i64 / n as i64))
    }

    /// `k` with `g^k = x` for the generator `g` of `unit_roots()`.
    pub fn root_log(&self, x: &Scalar) -> Option<u64> {
        let (m, g) = self.unit_roots();
        let mut acc = self.one();
        for k in 0..m {
            if &acc == x {
                return Some(k);
            }
            acc = &acc * &g;
        }
        None
    }

    /// Lift a scalar from a tower with the same algebraic part whose variables
    /// form a prefix of this tower's variables.
    pub fn embed(&self, x: &Scalar) -> Result<Scalar> {
        let src = &x.tower;
        if src == self {
            return Ok(self.wrap(x.v.clone()));
        }
        let same_base =
            src.0.base.p == self.0.base.p && src.0.base.zeta_order == self.0.base.zeta_order;
        let prefix = src.level() <= self.level() && self.0.vars[..src.level()] == src.0.vars[..];
        if !same_base || !prefix {
            return Err(Error::FieldMismatch);
        }
        Ok(self.wrap(ratfun::constant(self.level(), src.level(), x.v.clone())))
    }

    /// Parse a scalar such as `(2 + t1)/(1 + t2)`, `3/2*z^2 - 1` or `t^-1`.
    pub fn parse(&self, s: &str) -> Result<Scalar> {
        parse::parse_scalar(self, s)
    }

    /// Enumerate the `idx`-th element of a finite algebraic part.
    pub fn enumerate_base(&self, idx: u128) -> Scalar {
        self.from_base(self.0.base.enumerate(idx))
    }
}

fn valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
        && name != "z"
}

/// An element of a [`FieldTower`] in canonical form.
#[derive(Clone)]
pub struct Scalar {
    tower: FieldTower,
    v: Val,
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        self.v == other.v
    }
}
impl Eq for Scalar {}

impl Hash for Scalar {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.v.hash(state)
    }
}

impl Scalar {
    pub fn tower(&self) -> &FieldTower {
        &self.tower
    }

    pub(crate) fn val(&self) -> &Val {
        &self.v
    }

    fn k(&self) -> &BaseField {
        &self.tower.0.base
    }

    fn lvl(&self) -> usize {
        self.tower.level()
    }

    fn same(&self, v: Val) -> Scalar {
        Scalar {
            tower: self.tower.clone(),
            v,
        }
    }

    pub fn is_zero(&self) -> bool {
        ratfun::is_zero(&self.v)
    }

    pub fn is_one(&self) -> bool {
        ratfun::is_one(&self.v)
    }

    pub fn inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::ZeroInput);
        }
        Ok(self.same(ratfun::inv(self.k(), self.lvl(), &self.v)))
    }

    pub fn pow(&self, e: i64) -> Scalar {
        let base = if e < 0 {
            self.inv().expect("negative power of zero")
        } else {
            self.clone()
        };
        let mut e = e.unsigned_abs();
        let mut acc = self.tower.one();
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &b;
            }
            e >>= 1;
            if e > 0 {
                b = &b * &b;
            }
        }
        acc
    }

    /// Element of the algebraic part when the scalar does not involve any
    /// variable.
    pub(crate) fn base_value(&self) -> Option<BElem> {
        let l = self.lvl();
        let v = if l == 0 {
            self.v.clone()
        } else {
            ratfun::descend(&self.v, l, l)?
        };
        Some(ratfun::as_base(&v).clone())
    }

    pub fn is_constant(&self) -> bool {
        self.base_value().is_some()
    }

    /// The value as a rational number when it lies in the prime field.
    pub fn as_rational(&self) -> Option<BigRational> {
        let b = self.base_value()?;
        match b.len() {
            0 => Some(BigRational::zero()),
            1 => Some(b[0].clone()),
            _ => None,
        }
    }

    /// Size used to order search candidates and to bound heights.
    pub fn height(&self) -> u64 {
        match self.base_value() {
            Some(b) => b
                .iter()
                .map(|c| {
                    let n = c.numer().abs().max(c.denom().abs());
                    u64::try_from(n).unwrap_or(u64::MAX)
                })
                .max()
                .unwrap_or(0),
            None => u64::MAX,
        }
    }

    /// Exact `n`-th root if one exists in the tower.
    pub fn nth_root(&self, n: u64) -> Result<Option<Scalar>> {
        power::nth_root(self, n)
    }

    pub fn is_nth_power(&self, n: u64) -> Result<bool> {
        Ok(self.nth_root(n)?.is_some())
    }

    /// Monomial valuation with respect to all tower variables.
    pub fn valuation(&self) -> Result<ExponentVector> {
        Ok(valuation::valuation(self, self.lvl())?.0)
    }

    /// Monomial valuation with respect to the named variables, which must be
    /// the trailing variables of the tower in order. Earlier variables are
    /// treated as part of the coefficient field.
    pub fn monomial_valuation(&self, vars: &[&str]) -> Result<ExponentVector> {
        let depth = self.trailing_depth(vars)?;
        Ok(valuation::valuation(self, depth)?.0)
    }

    pub(crate) fn trailing_depth(&self, vars: &[&str]) -> Result<usize> {
        let tv = self.tower.vars();
        if vars.len() > tv.len() || tv[tv.len() - vars.len()..].iter().zip(vars).any(|(a, b)| a != b)
        {
            return Err(Error::InvalidTower(format!(
                "valuation variables {vars:?} are not the trailing variables of {}",
                self.tower.describe()
            )));
        }
        Ok(vars.len())
    }

    /// Valuation over the top `depth` variables together with the leading
    /// coefficient, which lies in the field below those variables.
    pub fn leading(&self, depth: usize) -> Result<(ExponentVector, Scalar)> {
        valuation::valuation(self, depth)
    }

    /// Residue of a valuation-zero scalar over all variables.
    pub fn residue_at_zero(&self) -> Result<Scalar> {
        let (v, c) = valuation::valuation(self, self.lvl())?;
        if !v.is_zero() {
            return Err(Error::NonzeroValuation(v.to_string()));
        }
        self.tower.embed(&c)
    }

    /// The monomial `t_1^{e_1} ... t_r^{e_r}` over the top `e.len()` variables.
    pub fn monomial(tower: &FieldTower, e: &[i64]) -> Scalar {
        let l = tower.level();
        let mut acc = tower.one();
        for (i, &k) in e.iter().enumerate() {
            if k != 0 {
                acc = &acc * &tower.var_at(l - e.len() + i).pow(k);
            }
        }
        acc
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&parse::format_scalar(self))
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Scalar({self})")
    }
}

impl Serialize for Scalar {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $f:path) => {
        impl<'a> $tr<&'a Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &'a Scalar) -> Scalar {
                self.same($f(self.k(), self.lvl(), &self.v, &rhs.v))
            }
        }
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
    };
}

binop!(Add, add, ratfun::add);
binop!(Sub, sub, ratfun::sub);
binop!(Mul, mul, ratfun::mul);

impl<'a> Div<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn div(self, rhs: &'a Scalar) -> Scalar {
        self * &rhs.inv().expect("division by zero")
    }
}

impl Div<Scalar> for Scalar {
    type Output = Scalar;
    fn div(self, rhs: Scalar) -> Scalar {
        &self / &rhs
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.same(ratfun::neg(self.k(), self.lvl(), &self.v))
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}
