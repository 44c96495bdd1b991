use super::monomial_label;
use crate::algebra::{Algebra, Element, Presentation, Terms};
use crate::armature::Armature;
use crate::error::{Error, Result};
use crate::fields::{FieldTower, Scalar};

/// Exponent tuple `(m_1, ..., m_r)` naming `sigma_1^{m_1} ... sigma_r^{m_r}`.
pub type GroupIndex = Vec<u64>;

/// `M = F[x_1, ..., x_r] / (x_i^{n_i} - b_i)`, checked to be a field, with
/// `sigma_i(x_i) = zeta_{n_i} x_i` and `sigma_i(x_j) = x_j` otherwise.
/// Basis monomials are indexed in mixed radix with `x_1` most significant.
#[derive(Clone, Debug)]
pub struct KummerField {
    tower: FieldTower,
    radicands: Vec<Scalar>,
    degrees: Vec<u64>,
    zetas: Vec<Scalar>,
    alg: Algebra,
}

fn lcm(a: u64, b: u64) -> u64 {
    a / num_integer::gcd(a, b) * b
}

/// Build the Kummer extension, rejecting it when `M` is not a field.
///
/// `M` is a field exactly when `k -> prod b_i^{k_i l / n_i}` is injective
/// from `prod Z/n_i` to `F^x / F^x^l` (`l = lcm n_i`); it suffices to test
/// the elements of prime order.
pub fn kummer_extension(tower: &FieldTower, radicands: &[Scalar], degrees: &[u64]) -> Result<KummerField> {
    if radicands.len() != degrees.len() || radicands.is_empty() {
        return Err(Error::NotAField("radicands and degrees must be nonempty and match".into()));
    }
    if radicands.iter().any(|b| b.is_zero()) || degrees.iter().any(|&n| n == 0) {
        return Err(Error::ZeroInput);
    }
    let ell = degrees.iter().fold(1, |a, &b| lcm(a, b));
    tower.root_of_unity(ell)?;
    let radicands: Vec<Scalar> = radicands.iter().map(|b| tower.embed(b)).collect::<Result<_>>()?;
    let mut primes: Vec<u64> = crate::fields::prime_divisors(ell);
    primes.sort();
    for p in primes {
        let slots: Vec<usize> = (0..degrees.len()).filter(|&i| degrees[i] % p == 0).collect();
        let count = p.pow(slots.len() as u32);
        for code in 1..count {
            let mut prod = tower.one();
            let mut c = code;
            for &i in &slots {
                let m = c % p;
                c /= p;
                if m > 0 {
                    prod = &prod * &radicands[i].pow((m * (ell / p)) as i64);
                }
            }
            if prod.is_nth_power(ell)? {
                return Err(Error::NotAField(format!(
                    "radicands {} are dependent modulo {ell}-th powers",
                    radicands.iter().map(|b| b.to_string()).collect::<Vec<_>>().join(", ")
                )));
            }
        }
    }
    let zetas: Vec<Scalar> = degrees.iter().map(|&n| tower.root_of_unity(n)).collect::<Result<_>>()?;
    let alg = kummer_algebra(tower, &radicands, degrees)?;
    Ok(KummerField {
        tower: tower.clone(),
        radicands,
        degrees: degrees.to_vec(),
        zetas,
        alg,
    })
}

fn kummer_algebra(tower: &FieldTower, radicands: &[Scalar], degrees: &[u64]) -> Result<Algebra> {
    let dim: usize = degrees.iter().map(|&n| n as usize).product();
    let split = |mut idx: usize| -> Vec<u64> {
        let mut e = vec![0; degrees.len()];
        for k in (0..degrees.len()).rev() {
            e[k] = (idx % degrees[k] as usize) as u64;
            idx /= degrees[k] as usize;
        }
        e
    };
    let names: Vec<String> = (1..=degrees.len()).map(|i| format!("x{i}")).collect();
    let labels = (0..dim)
        .map(|idx| {
            let e = split(idx);
            let parts: Vec<(&str, u64)> = names.iter().map(|s| s.as_str()).zip(e).collect();
            monomial_label(&parts)
        })
        .collect();
    let mut table: Vec<Vec<Terms>> = vec![vec![Vec::new(); dim]; dim];
    for (p, row) in table.iter_mut().enumerate() {
        let ep = split(p);
        for (q, cell) in row.iter_mut().enumerate() {
            let eq = split(q);
            let mut c = tower.one();
            let mut idx = 0usize;
            for k in 0..degrees.len() {
                let mut s = ep[k] + eq[k];
                if s >= degrees[k] {
                    s -= degrees[k];
                    c = &c * &radicands[k];
                }
                idx = idx * degrees[k] as usize + s as usize;
            }
            *cell = vec![(idx, c)];
        }
    }
    let mut one = vec![tower.zero(); dim];
    one[0] = tower.one();
    Algebra::from_table(tower, labels, table, one, Presentation::Commutative, None, false)
}

impl KummerField {
    pub fn tower(&self) -> &FieldTower {
        &self.tower
    }

    pub fn radicands(&self) -> &[Scalar] {
        &self.radicands
    }

    pub fn degrees(&self) -> &[u64] {
        &self.degrees
    }

    /// `zeta_{n_i}` for each step.
    pub fn zetas(&self) -> &[Scalar] {
        &self.zetas
    }

    pub fn algebra(&self) -> &Algebra {
        &self.alg
    }

    pub fn dim(&self) -> usize {
        self.alg.dim()
    }

    pub fn rank(&self) -> usize {
        self.degrees.len()
    }

    /// Exponent `l = lcm n_i`.
    pub fn exponent(&self) -> u64 {
        self.degrees.iter().fold(1, |a, &b| lcm(a, b))
    }

    pub fn exponents(&self, mut idx: usize) -> GroupIndex {
        let mut e = vec![0; self.rank()];
        for k in (0..self.rank()).rev() {
            e[k] = (idx % self.degrees[k] as usize) as u64;
            idx /= self.degrees[k] as usize;
        }
        e
    }

    pub fn index(&self, e: &[u64]) -> usize {
        e.iter()
            .zip(&self.degrees)
            .fold(0, |acc, (&x, &n)| acc * n as usize + (x % n) as usize)
    }

    pub fn generator(&self, i: usize) -> Element {
        let mut e = vec![0; self.rank()];
        e[i] = 1;
        self.monomial(&e)
    }

    /// `x_1^{e_1} ... x_r^{e_r}` with exponents reduced mod `n_i`.
    pub fn monomial(&self, e: &[u64]) -> Element {
        self.alg.basis(self.index(e))
    }

    /// All group elements in index order.
    pub fn group(&self) -> Vec<GroupIndex> {
        (0..self.dim()).map(|i| self.exponents(i)).collect()
    }

    /// `sigma(x^e) / x^e = prod zeta_{n_i}^{m_i e_i}`.
    pub fn kummer_pairing(&self, sigma: &[u64], e: &[u64]) -> Scalar {
        let mut acc = self.tower.one();
        for k in 0..self.rank() {
            let p = (sigma[k] * e[k]) % self.degrees[k];
            if p > 0 {
                acc = &acc * &self.zetas[k].pow(p as i64);
            }
        }
        acc
    }

    /// Action of `sigma` on an element of `M`.
    pub fn sigma(&self, sigma: &[u64], x: &Element) -> Element {
        let coords = (0..self.dim())
            .map(|i| {
                let c = x.coord(i);
                if c.is_zero() {
                    c.clone()
                } else {
                    c * &self.kummer_pairing(sigma, &self.exponents(i))
                }
            })
            .collect();
        self.alg.element(coords).unwrap()
    }

    /// `Kum(M/F)`: the classes of the monomials `x^e`, generated by `x_i F^x`.
    pub fn kum_group(&self) -> Result<Armature> {
        let gens = (0..self.rank())
            .map(|i| (self.generator(i), self.degrees[i]))
            .collect();
        Armature::new(&self.alg, gens)
    }

    /// The idempotent `e = prod_i (1/n_i) sum_k x_i^k (x) x_i^{-k}` of
    /// `M (x) M` and its translates `e_sigma = (id (x) sigma)(e)`.
    pub fn separability_idempotents(&self) -> Result<SeparabilityIdempotents> {
        let mm = Algebra::tensor(&self.alg, &self.alg)?;
        let mut e = mm.one();
        for i in 0..self.rank() {
            let n = self.degrees[i];
            let x = self.generator(i);
            let xinv = x.inverse()?;
            let mut s = mm.zero();
            for k in 0..n {
                s = &s + &mm.pure_tensor(&[x.pow(k as i64)?, xinv.pow(k as i64)?]);
            }
            e = &e * &s.scale(&self.tower.int(n as i64).inv()?);
        }
        let family = self
            .group()
            .into_iter()
            .map(|g| {
                let img = self.apply_second(&mm, &g, &e);
                (g, img)
            })
            .collect();
        Ok(SeparabilityIdempotents {
            field: self.clone(),
            mm,
            e,
            family,
        })
    }

    fn apply_second(&self, mm: &Algebra, sigma: &[u64], x: &Element) -> Element {
        let d = self.dim();
        let coords = (0..mm.dim())
            .map(|idx| {
                let c = x.coord(idx);
                if c.is_zero() {
                    c.clone()
                } else {
                    c * &self.kummer_pairing(sigma, &self.exponents(idx % d))
                }
            })
            .collect();
        mm.element(coords).unwrap()
    }
}

/// Separability idempotent of a Kummer field and its Galois translates.
#[derive(Clone, Debug)]
pub struct SeparabilityIdempotents {
    pub field: KummerField,
    pub mm: Algebra,
    pub e: Element,
    pub family: Vec<(GroupIndex, Element)>,
}

impl SeparabilityIdempotents {
    /// Multiplication map `M (x) M -> M`.
    pub fn multiply_out(&self, x: &Element) -> Element {
        let m = self.field.algebra();
        let d = m.dim();
        let mut acc = m.zero();
        for idx in x.support() {
            acc = &acc + &(&m.basis(idx / d) * &m.basis(idx % d)).scale(x.coord(idx));
        }
        acc
    }

    /// `e_sigma (x (x) 1) = e_sigma (1 (x) sigma(x))` for every basis `x`.
    pub fn check_equivariance(&self) -> bool {
        let m = self.field.algebra();
        self.family.iter().all(|(g, e)| {
            (0..m.dim()).all(|i| {
                let x = m.basis(i);
                let left = e * &self.mm.pure_tensor(&[x.clone(), m.one()]);
                let right = e * &self.mm.pure_tensor(&[m.one(), self.field.sigma(g, &x)]);
                left == right
            })
        })
    }

    /// Idempotent, pairwise orthogonal, summing to one, and `mult(e) = 1`.
    pub fn check_family(&self) -> bool {
        let mut sum = self.mm.zero();
        for (a, (_, ea)) in self.family.iter().enumerate() {
            sum = &sum + ea;
            for (b, (_, eb)) in self.family.iter().enumerate() {
                let p = ea * eb;
                let ok = if a == b { &p == ea } else { p.is_zero() };
                if !ok {
                    return false;
                }
            }
        }
        sum == self.mm.one() && self.multiply_out(&self.e) == self.field.algebra().one()
    }
}
