//! Armatures: abelian subgroups of `A^x / F^x` of order `dim A` whose
//! representatives span `A`, with the commutator pairing.

mod decompose;
mod symplectic;

use serde::Serialize;

use crate::algebra::{Algebra, Element};
use crate::error::{Error, Result};
use crate::fields::{prime_divisors, Scalar};
use crate::linalg;

pub use decompose::{decompose_by_armature, decompose_with_base, Decomposition, SymbolFactor};
pub use symplectic::{
    gram_is_standard, symplectic_base, symplectic_base_extending, symplectic_extend, SymplecticBase,
    SymplecticPair,
};

/// Element of an armature as exponents on its generators.
pub type ArmIndex = Vec<u64>;

fn gcd(a: u64, b: u64) -> u64 {
    num_integer::gcd(a, b)
}

fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

/// `s` with `x = s * y`, if the two are proportional.
pub fn proportional(x: &Element, y: &Element) -> Option<Scalar> {
    let k = y.support().next()?;
    let s = x.coord(k) / y.coord(k);
    if y.scale(&s) == *x {
        Some(s)
    } else {
        None
    }
}

/// Commutator pairing `x y x^-1 y^-1` of two elements, which must be a scalar.
pub fn pairing_of(x: &Element, y: &Element) -> Result<Scalar> {
    x.group_commutator(y)
        .map_err(|_| Error::InvalidArmature("representative not invertible".into()))?
        .as_scalar()
        .ok_or(Error::NotScalar)
}

/// A finite abelian subgroup of `A^x / F^x` given by generator classes and
/// their orders, with the generator pairing table stored as exponents of the
/// tower's root-of-unity generator.
#[derive(Clone, Debug)]
pub struct Armature {
    alg: Algebra,
    gens: Vec<Element>,
    orders: Vec<u64>,
    roots: u64,
    root: Scalar,
    table: Vec<Vec<u64>>,
}

impl Armature {
    /// Collect generators and compute their pairing table. Fails when some
    /// commutator is not a root of unity in `F`.
    pub fn new(alg: &Algebra, gens: Vec<(Element, u64)>) -> Result<Self> {
        let (roots, root) = alg.tower().unit_roots();
        let k = gens.len();
        let mut table = vec![vec![0; k]; k];
        for a in 0..k {
            if gens[a].0.parent() != alg {
                return Err(Error::ParentMismatch);
            }
            if gens[a].1 == 0 {
                return Err(Error::InvalidArmature("generator of order 0".into()));
            }
            for b in a + 1..k {
                let c = pairing_of(&gens[a].0, &gens[b].0)?;
                let e = alg.tower().root_log(&c).ok_or_else(|| {
                    Error::InvalidArmature(format!("commutator {c} is not a root of unity"))
                })?;
                table[a][b] = e;
                table[b][a] = (roots - e) % roots;
            }
        }
        let (gens, orders) = gens.into_iter().unzip();
        Ok(Armature {
            alg: alg.clone(),
            gens,
            orders,
            roots,
            root,
            table,
        })
    }

    pub fn algebra(&self) -> &Algebra {
        &self.alg
    }

    pub fn generators(&self) -> &[Element] {
        &self.gens
    }

    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    pub fn rank(&self) -> usize {
        self.gens.len()
    }

    pub fn order(&self) -> usize {
        self.orders.iter().map(|&n| n as usize).product()
    }

    /// Order `N` of the root-of-unity group in which pairings are logged.
    pub fn roots(&self) -> u64 {
        self.roots
    }

    /// `g^k` for the root-of-unity generator `g`.
    pub fn root_value(&self, k: u64) -> Scalar {
        self.root.pow((k % self.roots) as i64)
    }

    /// Generator pairing table as exponents mod [`Self::roots`].
    pub fn table(&self) -> &[Vec<u64>] {
        &self.table
    }

    pub fn identity(&self) -> ArmIndex {
        vec![0; self.rank()]
    }

    pub fn unit(&self, i: usize) -> ArmIndex {
        let mut e = self.identity();
        e[i] = 1 % self.orders[i];
        e
    }

    pub fn normalize(&self, e: &[i64]) -> ArmIndex {
        e.iter()
            .zip(&self.orders)
            .map(|(&x, &n)| x.rem_euclid(n as i64) as u64)
            .collect()
    }

    pub fn add(&self, a: &[u64], b: &[u64]) -> ArmIndex {
        a.iter()
            .zip(b)
            .zip(&self.orders)
            .map(|((&x, &y), &n)| (x + y) % n)
            .collect()
    }

    pub fn neg(&self, a: &[u64]) -> ArmIndex {
        a.iter().zip(&self.orders).map(|(&x, &n)| (n - x) % n).collect()
    }

    pub fn times(&self, k: u64, a: &[u64]) -> ArmIndex {
        a.iter()
            .zip(&self.orders)
            .map(|(&x, &n)| ((x as u128 * k as u128) % n as u128) as u64)
            .collect()
    }

    pub fn element_order(&self, a: &[u64]) -> u64 {
        a.iter()
            .zip(&self.orders)
            .fold(1, |acc, (&x, &n)| lcm(acc, n / gcd(x, n)))
    }

    /// All elements in mixed-radix order, first generator most significant.
    pub fn elements(&self) -> Vec<ArmIndex> {
        let mut out = vec![Vec::new()];
        for &n in &self.orders {
            let mut next = Vec::with_capacity(out.len() * n as usize);
            for e in &out {
                for k in 0..n {
                    let mut f = e.clone();
                    f.push(k);
                    next.push(f);
                }
            }
            out = next;
        }
        out
    }

    /// Representative `x_1^{e_1} ... x_k^{e_k}`.
    pub fn rep(&self, e: &[u64]) -> Element {
        let mut acc = self.alg.one();
        for (g, &k) in self.gens.iter().zip(e) {
            for _ in 0..k {
                acc = &acc * g;
            }
        }
        acc
    }

    /// Pairing exponent: `<a, b> = g^k`.
    pub fn pairing_exp(&self, a: &[u64], b: &[u64]) -> u64 {
        let n = self.roots as u128;
        let mut acc: u128 = 0;
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                if y != 0 {
                    acc = (acc + x as u128 * y as u128 * self.table[i][j] as u128) % n;
                }
            }
        }
        acc as u64
    }

    pub fn pairing(&self, a: &[u64], b: &[u64]) -> Scalar {
        self.root_value(self.pairing_exp(a, b))
    }

    /// `H^perp` for the subgroup generated by `h`.
    pub fn orthogonal(&self, h: &[ArmIndex]) -> Vec<ArmIndex> {
        self.elements()
            .into_iter()
            .filter(|a| h.iter().all(|x| self.pairing_exp(a, x) == 0))
            .collect()
    }

    pub fn radical(&self) -> Vec<ArmIndex> {
        let units: Vec<ArmIndex> = (0..self.rank()).map(|i| self.unit(i)).collect();
        self.orthogonal(&units)
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.radical().len() == 1
    }

    /// Subgroup generated by `gens`, sorted.
    pub fn subgroup(&self, gens: &[ArmIndex]) -> Vec<ArmIndex> {
        let mut set = std::collections::BTreeSet::new();
        set.insert(self.identity());
        let mut frontier = vec![self.identity()];
        while let Some(x) = frontier.pop() {
            for g in gens {
                let y = self.add(&x, g);
                if set.insert(y.clone()) {
                    frontier.push(y);
                }
            }
        }
        set.into_iter().collect()
    }

    /// Class of `x` in the armature, if `x` is proportional to a representative.
    pub fn class_of(&self, x: &Element) -> Option<(ArmIndex, Scalar)> {
        self.elements()
            .into_iter()
            .find_map(|e| proportional(x, &self.rep(&e)).map(|s| (e, s)))
    }

    /// Check the armature axioms.
    pub fn verify(&self) -> ArmatureReport {
        verify_generators(&self.alg, &self.gens, &self.orders)
    }

    /// Same subgroup with every representative rescaled.
    pub fn rescaled(&self, scalars: &[Scalar]) -> Result<Armature> {
        let gens = self
            .gens
            .iter()
            .zip(scalars)
            .zip(&self.orders)
            .map(|((g, s), &n)| (g.scale(s), n))
            .collect();
        Armature::new(&self.alg, gens)
    }

    /// Pairing table over all elements, as exponents.
    pub fn full_table(&self) -> Vec<Vec<u64>> {
        let els = self.elements();
        els.iter()
            .map(|a| els.iter().map(|b| self.pairing_exp(a, b)).collect())
            .collect()
    }
}

/// Outcome of checking the armature axioms; `failure` names the first one
/// that fails.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct ArmatureReport {
    pub pass: bool,
    pub abelian: bool,
    pub orders_exact: bool,
    pub order: usize,
    pub dim: usize,
    pub independent: bool,
    pub failure: Option<String>,
}

/// Check that the generators span an armature of `alg`: commutators are
/// scalars, each generator has the stated order modulo scalars, the group
/// order equals `dim A`, and the representatives are linearly independent.
pub fn verify_generators(alg: &Algebra, gens: &[Element], orders: &[u64]) -> ArmatureReport {
    let order: usize = orders.iter().map(|&n| n as usize).product();
    let mut r = ArmatureReport {
        pass: false,
        abelian: true,
        orders_exact: true,
        order,
        dim: alg.dim(),
        independent: false,
        failure: None,
    };
    for (a, x) in gens.iter().enumerate() {
        for y in &gens[a + 1..] {
            if pairing_of(x, y).is_err() {
                r.abelian = false;
            }
        }
    }
    if !r.abelian {
        r.failure = Some("abelian: a commutator of generators is not a scalar".into());
        return r;
    }
    for (x, &n) in gens.iter().zip(orders) {
        let exact = x.pow(n as i64).map(|p| p.is_scalar()).unwrap_or(false)
            && prime_divisors(n)
                .into_iter()
                .all(|p| !x.pow((n / p) as i64).map(|q| q.is_scalar()).unwrap_or(true));
        if !exact {
            r.orders_exact = false;
            r.failure = Some(format!("order: {x} does not have order {n} modulo scalars"));
            return r;
        }
    }
    if order != alg.dim() {
        r.failure = Some(format!("order: |A| = {order} but dim = {}", alg.dim()));
        return r;
    }
    let arm = Armature {
        alg: alg.clone(),
        gens: gens.to_vec(),
        orders: orders.to_vec(),
        roots: 1,
        root: alg.tower().one(),
        table: vec![vec![0; gens.len()]; gens.len()],
    };
    let reps: Vec<Vec<Scalar>> = arm
        .elements()
        .iter()
        .map(|e| arm.rep(e).coords().to_vec())
        .collect();
    r.independent = linalg::rank(reps, alg.dim()) == order;
    if !r.independent {
        r.failure = Some("span: representatives are linearly dependent".into());
        return r;
    }
    r.pass = true;
    r
}

/// [`verify_generators`] on `(representative, order)` pairs.
pub fn verify_armature(alg: &Algebra, gens: &[(Element, u64)]) -> ArmatureReport {
    let (g, o): (Vec<Element>, Vec<u64>) = gens.iter().cloned().unzip();
    verify_generators(alg, &g, &o)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::FieldTower;
    use crate::symbols::{standard_armature, symbol_algebra, symbol_generators};

    #[test]
    fn quaternion_pairings() {
        let q = FieldTower::rationals();
        let h = symbol_algebra(&q, &q.int(-1), &q.int(-1), 2).unwrap();
        let arm = standard_armature(&h).unwrap();
        assert!(arm.verify().pass);
        // <ij, i> = -1
        assert_eq!(arm.pairing(&[1, 1], &[1, 0]), q.int(-1));
        assert_eq!(arm.pairing(&[1, 1], &[1, 1]), q.one());
        assert_eq!(arm.orthogonal(&[vec![1, 0]]), vec![vec![0, 0], vec![1, 0]]);
        assert_eq!(arm.radical(), vec![vec![0, 0]]);
        let (i, _) = symbol_generators(&h).unwrap();
        let r = verify_armature(&h, &[(i, 2)]);
        assert!(!r.pass && r.failure.unwrap().starts_with("order"));
    }

    #[test]
    fn non_abelian_rejected() {
        let q = FieldTower::rationals();
        let m = crate::algebra::matrix_algebra(&q, 2);
        let x = &m.one() + &m.basis(1);
        let y = &m.one() + &m.basis(2);
        assert_eq!(pairing_of(&x, &y), Err(Error::NotScalar));
        assert!(!verify_armature(&m, &[(x, 2), (y, 2)]).abelian);
    }
}
