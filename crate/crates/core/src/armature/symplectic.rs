use serde::Serialize;

use super::{ArmIndex, Armature};
use crate::error::{Error, Result};
use crate::fields::{is_prime, prime_divisors};

fn pinv(a: u64, p: u64) -> u64 {
    let mut r = 1u64;
    let mut b = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

fn rref_mod(mut rows: Vec<Vec<u64>>, ncols: usize, p: u64) -> (Vec<Vec<u64>>, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        let Some(i) = (r..rows.len()).find(|&i| rows[i][col] % p != 0) else {
            continue;
        };
        rows.swap(r, i);
        let inv = pinv(rows[r][col], p);
        for x in rows[r].iter_mut() {
            *x = *x * inv % p;
        }
        let piv = rows[r].clone();
        for (k, row) in rows.iter_mut().enumerate() {
            if k != r && row[col] != 0 {
                let f = row[col];
                for (x, y) in row.iter_mut().zip(&piv) {
                    *x = (*x + p * p - f * y % p) % p;
                }
            }
        }
        pivots.push(col);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    (rows, pivots)
}

fn rank_mod(rows: Vec<Vec<u64>>, ncols: usize, p: u64) -> usize {
    rref_mod(rows, ncols, p).1.len()
}

fn kernel_mod(rows: Vec<Vec<u64>>, ncols: usize, p: u64) -> Vec<Vec<u64>> {
    let (red, pivots) = rref_mod(rows, ncols, p);
    let mut out = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![0; ncols];
        v[free] = 1;
        for (i, &pc) in pivots.iter().enumerate() {
            v[pc] = (p - red[i][free]) % p;
        }
        out.push(v);
    }
    out
}

fn form(p: u64, g: &[Vec<u64>], u: &[u64], v: &[u64]) -> u64 {
    let mut acc = 0u64;
    for (i, &a) in u.iter().enumerate() {
        if a == 0 {
            continue;
        }
        for (j, &b) in v.iter().enumerate() {
            acc = (acc + a * b % p * g[i][j]) % p;
        }
    }
    acc
}

fn combine(p: u64, coeffs: &[u64], basis: &[Vec<u64>], d: usize) -> Vec<u64> {
    let mut v = vec![0; d];
    for (c, b) in coeffs.iter().zip(basis) {
        for (x, y) in v.iter_mut().zip(b) {
            *x = (*x + c * y) % p;
        }
    }
    v
}

/// Extend a totally isotropic independent list `e` in `F_p^d` with the
/// alternating form `gram` to a symplectic base `(e_1, f_1), ..., (e_n, f_n)`
/// with `<e_i, f_i> = 1` and all other pairings zero, whose first members
/// start with `e` in order.
///
/// Follows the induction: find `f_1` orthogonal to `e_2, ..., e_r` with
/// `<e_1, f_1> != 0` (first such vector in the enumeration of the current
/// space), split off `span(e_1, f_1)`, and continue in its orthogonal.
pub fn symplectic_extend(p: u64, gram: &[Vec<u64>], e: &[Vec<u64>]) -> Result<Vec<(Vec<u64>, Vec<u64>)>> {
    if !is_prime(p) {
        return Err(Error::InvalidArmature(format!("{p} is not prime")));
    }
    let d = gram.len();
    let g: Vec<Vec<u64>> = gram.iter().map(|r| r.iter().map(|x| x % p).collect()).collect();
    for i in 0..d {
        if g[i].len() != d || g[i][i] != 0 || (0..d).any(|j| (g[i][j] + g[j][i]) % p != 0) {
            return Err(Error::DegenerateForm);
        }
    }
    if rank_mod(g.clone(), d, p) != d {
        return Err(Error::DegenerateForm);
    }
    let e: Vec<Vec<u64>> = e.iter().map(|v| v.iter().map(|x| x % p).collect()).collect();
    if e.iter().any(|v| v.len() != d) {
        return Err(Error::InvalidArmature("vector of wrong length".into()));
    }
    for a in &e {
        for b in &e {
            if form(p, &g, a, b) != 0 {
                return Err(Error::NotIsotropic);
            }
        }
    }
    if rank_mod(e.clone(), d, p) != e.len() {
        return Err(Error::InvalidArmature("input list is linearly dependent".into()));
    }
    let mut space: Vec<Vec<u64>> = (0..d)
        .map(|i| {
            let mut v = vec![0; d];
            v[i] = 1;
            v
        })
        .collect();
    let mut pending = e;
    let mut pairs = Vec::new();
    while !space.is_empty() {
        let e1 = if pending.is_empty() {
            space[0].clone()
        } else {
            pending.remove(0)
        };
        let k = space.len();
        let ok = |c: &[u64]| {
            let f = combine(p, c, &space, d);
            form(p, &g, &e1, &f) != 0 && pending.iter().all(|x| form(p, &g, x, &f) == 0)
        };
        let mut found = None;
        if (p as f64).powi(k as i32) <= 1e6 {
            let mut c = vec![0u64; k];
            'scan: loop {
                let mut i = 0;
                loop {
                    if i == k {
                        break 'scan;
                    }
                    c[i] += 1;
                    if c[i] < p {
                        break;
                    }
                    c[i] = 0;
                    i += 1;
                }
                if ok(&c) {
                    found = Some(c.clone());
                    break;
                }
            }
        } else {
            // <e_1, f> = 1, <e_i, f> = 0 as linear conditions on coefficients
            let mut rows = Vec::new();
            for (idx, x) in std::iter::once(&e1).chain(&pending).enumerate() {
                let mut row: Vec<u64> = space.iter().map(|s| form(p, &g, x, s)).collect();
                row.push(if idx == 0 { p - 1 } else { 0 });
                rows.push(row);
            }
            for v in kernel_mod(rows, k + 1, p) {
                if v[k] != 0 {
                    let s = pinv(v[k], p);
                    let c: Vec<u64> = v[..k].iter().map(|x| x * s % p).collect();
                    if ok(&c) {
                        found = Some(c);
                        break;
                    }
                }
            }
        }
        let c = found.ok_or(Error::DegenerateForm)?;
        let mut f = combine(p, &c, &space, d);
        let s = pinv(form(p, &g, &e1, &f), p);
        f.iter_mut().for_each(|x| *x = *x * s % p);
        // orthogonal complement of span(e1, f) inside the current space
        let rows = vec![
            space.iter().map(|s| form(p, &g, &e1, s)).collect(),
            space.iter().map(|s| form(p, &g, &f, s)).collect(),
        ];
        let ker = kernel_mod(rows, k, p);
        let next: Vec<Vec<u64>> = ker.iter().map(|c| combine(p, c, &space, d)).collect();
        let (next, _) = rref_mod(next, d, p);
        space = next;
        pairs.push((e1, f));
    }
    if !pending.is_empty() {
        return Err(Error::DegenerateForm);
    }
    Ok(pairs)
}

/// Whether the pairs have Gram matrix `diag((0 1; -1 0), ...)`.
pub fn gram_is_standard(p: u64, gram: &[Vec<u64>], pairs: &[(Vec<u64>, Vec<u64>)]) -> bool {
    let flat: Vec<&Vec<u64>> = pairs.iter().flat_map(|(a, b)| [a, b]).collect();
    if flat.len() != gram.len() {
        return false;
    }
    for (i, u) in flat.iter().enumerate() {
        for (j, v) in flat.iter().enumerate() {
            let want = if i % 2 == 0 && j == i + 1 {
                1
            } else if i % 2 == 1 && j + 1 == i {
                p - 1
            } else {
                0
            };
            if form(p, gram, u, v) != want {
                return false;
            }
        }
    }
    true
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct SymplecticPair {
    pub g: ArmIndex,
    pub h: ArmIndex,
    pub order: u64,
    /// `<g, h>` as an exponent of the root-of-unity generator.
    pub value: u64,
}

/// Pairs `(g_i, h_i)` with `<g_i, h_i>` of order `ord g_i = ord h_i` and all
/// other pairings among them trivial.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct SymplecticBase {
    pub pairs: Vec<SymplecticPair>,
}

impl SymplecticBase {
    /// Check the defining properties against the armature.
    pub fn check(&self, arm: &Armature) -> bool {
        let mut flat = Vec::new();
        for pr in &self.pairs {
            let v = arm.pairing_exp(&pr.g, &pr.h);
            let ord_v = arm.roots() / num_integer::gcd(v, arm.roots());
            if v != pr.value
                || arm.element_order(&pr.g) != pr.order
                || arm.element_order(&pr.h) != pr.order
                || ord_v != pr.order
            {
                return false;
            }
            flat.push((&pr.g, &pr.h));
        }
        for (a, (g1, h1)) in flat.iter().enumerate() {
            for (b, (g2, h2)) in flat.iter().enumerate() {
                if a != b
                    && [(g1, g2), (g1, h2), (h1, g2), (h1, h2)]
                        .iter()
                        .any(|(x, y)| arm.pairing_exp(x, y) != 0)
                {
                    return false;
                }
            }
        }
        let product: u64 = self.pairs.iter().map(|p| p.order * p.order).product();
        product as usize == arm.order()
    }
}

/// `p`-primary part: multiples of `m * a` where `m` is the prime-to-`p` part
/// of the group exponent.
fn primary_part(arm: &Armature, p: u64) -> (u64, Vec<ArmIndex>) {
    let exp = arm.orders().iter().fold(1, |a, &b| a / num_integer::gcd(a, b) * b);
    let mut m = exp;
    while m % p == 0 {
        m /= p;
    }
    let mut set: Vec<ArmIndex> = arm.elements().iter().map(|e| arm.times(m, e)).collect();
    set.sort();
    set.dedup();
    (m, set)
}

/// Basis over `F_p` of an elementary abelian subgroup, starting with
/// `prefix`, with the Gram matrix of the pairing read in `F_p` through the
/// canonical `zeta_p`.
fn elementary_basis(
    arm: &Armature,
    p: u64,
    prefix: &[ArmIndex],
    candidates: &[ArmIndex],
) -> Result<(Vec<ArmIndex>, Vec<Vec<u64>>)> {
    let mut basis: Vec<ArmIndex> = Vec::new();
    let mut span = arm.subgroup(&[]);
    for (k, c) in prefix.iter().chain(candidates).enumerate() {
        if !span.contains(c) {
            basis.push(c.clone());
            span = arm.subgroup(&basis);
        } else if k < prefix.len() {
            return Err(Error::InvalidArmature("prefix is not independent".into()));
        }
    }
    let step = arm.roots() / p;
    let mut gram = vec![vec![0; basis.len()]; basis.len()];
    for (i, a) in basis.iter().enumerate() {
        for (j, b) in basis.iter().enumerate() {
            let v = arm.pairing_exp(a, b);
            if v % step != 0 {
                return Err(Error::InvalidArmature("pairing value outside mu_p".into()));
            }
            gram[i][j] = v / step;
        }
    }
    Ok((basis, gram))
}

fn lin(arm: &Armature, coeffs: &[u64], basis: &[ArmIndex]) -> ArmIndex {
    coeffs
        .iter()
        .zip(basis)
        .fold(arm.identity(), |acc, (&c, b)| arm.add(&acc, &arm.times(c, b)))
}

/// Symplectic base of an exponent-`p` armature whose first `g`-members are
/// the given totally isotropic elements, via [`symplectic_extend`].
pub fn symplectic_base_extending(arm: &Armature, p: u64, prefix: &[ArmIndex]) -> Result<SymplecticBase> {
    if arm.elements().iter().any(|e| arm.element_order(e) > p) {
        return Err(Error::InvalidArmature(format!("armature is not of exponent {p}")));
    }
    let rad = arm.radical().len();
    if rad > 1 {
        return Err(Error::DegenerateRadical(rad));
    }
    let units: Vec<ArmIndex> = (0..arm.rank()).map(|i| arm.unit(i)).collect();
    let (basis, gram) = elementary_basis(arm, p, prefix, &units)?;
    let d = basis.len();
    let e: Vec<Vec<u64>> = (0..prefix.len())
        .map(|i| {
            let mut v = vec![0; d];
            v[i] = 1;
            v
        })
        .collect();
    let pairs = symplectic_extend(p, &gram, &e)?;
    let step = arm.roots() / p;
    Ok(SymplecticBase {
        pairs: pairs
            .iter()
            .map(|(a, b)| SymplecticPair {
                g: lin(arm, a, &basis),
                h: lin(arm, b, &basis),
                order: p,
                value: step,
            })
            .collect(),
    })
}

/// Symplectic base of an armature with trivial radical. Each `p`-primary
/// part is split separately (through [`symplectic_extend`] when it is
/// elementary, by peeling off a pair of maximal pairing order otherwise) and
/// pairs of different primes are multiplied together.
pub fn symplectic_base(arm: &Armature) -> Result<SymplecticBase> {
    let rad = arm.radical().len();
    if rad > 1 {
        return Err(Error::DegenerateRadical(rad));
    }
    let order = arm.order() as u64;
    let mut per_prime: Vec<Vec<SymplecticPair>> = Vec::new();
    for p in prime_divisors(order) {
        let (m, part) = primary_part(arm, p);
        let elementary = part.iter().all(|e| arm.element_order(e) <= p);
        let mut pairs = Vec::new();
        if elementary {
            let cands: Vec<ArmIndex> = (0..arm.rank()).map(|i| arm.times(m, &arm.unit(i))).collect();
            let (basis, gram) = elementary_basis(arm, p, &[], &cands)?;
            let step = arm.roots() / p;
            for (a, b) in symplectic_extend(p, &gram, &[])? {
                pairs.push(SymplecticPair {
                    g: lin(arm, &a, &basis),
                    h: lin(arm, &b, &basis),
                    order: p,
                    value: step,
                });
            }
        } else {
            let mut rest = part;
            while rest.len() > 1 {
                let mut best: Option<(u64, ArmIndex, ArmIndex)> = None;
                for a in &rest {
                    for b in &rest {
                        let v = arm.pairing_exp(a, b);
                        let ord = arm.roots() / num_integer::gcd(v, arm.roots());
                        if best.as_ref().map_or(true, |(o, _, _)| ord > *o) {
                            best = Some((ord, a.clone(), b.clone()));
                        }
                    }
                }
                let (ord, a, b) = best.unwrap();
                if ord == 1 {
                    return Err(Error::DegenerateRadical(rest.len()));
                }
                rest.retain(|x| arm.pairing_exp(x, &a) == 0 && arm.pairing_exp(x, &b) == 0);
                pairs.push(SymplecticPair {
                    value: arm.pairing_exp(&a, &b),
                    g: a,
                    h: b,
                    order: ord,
                });
            }
        }
        pairs.sort_by(|x, y| y.order.cmp(&x.order));
        per_prime.push(pairs);
    }
    let count = per_prime.iter().map(|v| v.len()).max().unwrap_or(0);
    let mut out = Vec::new();
    for k in 0..count {
        let mut g = arm.identity();
        let mut h = arm.identity();
        let mut ord = 1;
        for pairs in &per_prime {
            if let Some(pr) = pairs.get(k) {
                g = arm.add(&g, &pr.g);
                h = arm.add(&h, &pr.h);
                ord *= pr.order;
            }
        }
        out.push(SymplecticPair {
            value: arm.pairing_exp(&g, &h),
            g,
            h,
            order: ord,
        });
    }
    Ok(SymplecticBase { pairs: out })
}
