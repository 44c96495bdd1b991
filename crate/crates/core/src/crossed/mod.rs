//! Generalized crossed products attached to a Kummer subfield `M` of a
//! central simple algebra `A`: the Skolem–Noether lift of the Galois group,
//! the algebra `E' = sum C_{L'} z_s (x) y_s`, its valuation, and the transfer
//! of armatures between `A` and `E'`.

mod brauer;
mod laws;
mod product;
mod transfer;

use serde::Serialize;

use crate::algebra::{centralizer, Algebra, Element, Subalgebra};
use crate::error::{Error, Result};
use crate::fields::Scalar;
use crate::linalg;
use crate::symbols::{kummer_extension, GroupIndex, KummerField};

pub use brauer::{brauer_witness_smallscale, BrauerReport};
pub use laws::{valuation_laws, LawReport};
pub use product::{build_crossed, CrossedProduct, LeadingTerm};
pub use transfer::{
    decompose_with_subfields, lift_armature, nu_map, residue_armature, subgroup_basis, CyclicFactor,
    LiftedArmature, NuImage, ResidueArmature, SubfieldDecomposition,
};

/// Default number of candidates tried when looking for an invertible
/// Skolem–Noether solution.
pub const LIFT_BUDGET: usize = 4096;

/// A Kummer field `M` together with commuting images `x_i` in `A`.
#[derive(Clone, Debug)]
pub struct EmbeddedKummer {
    alg: Algebra,
    field: KummerField,
    images: Vec<Element>,
}

impl EmbeddedKummer {
    /// Reads `b_i = x_i^{n_i}` off the given elements and checks that they
    /// commute and generate a field.
    pub fn new(alg: &Algebra, gens: Vec<(Element, u64)>) -> Result<Self> {
        let mut radicands = Vec::new();
        let mut degrees = Vec::new();
        for (x, n) in &gens {
            if x.parent() != alg {
                return Err(Error::ParentMismatch);
            }
            let b = x.pow(*n as i64)?.as_scalar().ok_or_else(|| {
                Error::NotAField(format!("{x} to the {n} is not a scalar"))
            })?;
            radicands.push(b);
            degrees.push(*n);
        }
        for a in 0..gens.len() {
            for b in a + 1..gens.len() {
                if gens[a].0.commutator(&gens[b].0) != alg.zero() {
                    return Err(Error::NotAField(format!(
                        "{} and {} do not commute",
                        gens[a].0, gens[b].0
                    )));
                }
            }
        }
        let field = kummer_extension(alg.tower(), &radicands, &degrees)?;
        Ok(EmbeddedKummer {
            alg: alg.clone(),
            field,
            images: gens.into_iter().map(|(x, _)| x).collect(),
        })
    }

    pub fn algebra(&self) -> &Algebra {
        &self.alg
    }

    pub fn field(&self) -> &KummerField {
        &self.field
    }

    pub fn images(&self) -> &[Element] {
        &self.images
    }

    pub fn rank(&self) -> usize {
        self.images.len()
    }

    pub fn degrees(&self) -> &[u64] {
        self.field.degrees()
    }

    /// `x_1^{e_1} ... x_r^{e_r}` in `A`.
    pub fn monomial(&self, e: &[u64]) -> Element {
        let mut acc = self.alg.one();
        for (x, &k) in self.images.iter().zip(e) {
            for _ in 0..k {
                acc = &acc * x;
            }
        }
        acc
    }

    /// Image in `A` of an element of `M`.
    pub fn embed(&self, m: &Element) -> Element {
        let mut acc = self.alg.zero();
        for i in m.support() {
            acc = &acc + &self.monomial(&self.field.exponents(i)).scale(m.coord(i));
        }
        acc
    }

    /// Product `s t` in `G = prod Z/n_i`.
    pub fn compose(&self, s: &[u64], t: &[u64]) -> GroupIndex {
        s.iter()
            .zip(t)
            .zip(self.degrees())
            .map(|((a, b), n)| (a + b) % n)
            .collect()
    }

    /// `m` with `<x, x_i> = zeta_{n_i}^{m_i}` for all `i`, if `x` normalizes
    /// `M` in that way.
    pub fn sigma_of(&self, x: &Element) -> Option<GroupIndex> {
        let xinv = x.inverse().ok()?;
        let mut m = Vec::new();
        for (i, xi) in self.images.iter().enumerate() {
            let c = (&(&(x * xi) * &xinv) * &xi.inverse().ok()?).as_scalar()?;
            let z = &self.field.zetas()[i];
            let n = self.degrees()[i];
            m.push((0..n).find(|&k| z.pow(k as i64) == c)?);
        }
        Some(m)
    }
}

/// Elements `z_i` with `z_i b z_i^-1 = sigma_i(b)` on `M`, the products
/// `z_s = z_1^{m_1} ... z_r^{m_r}`, and the centralizer `C` of `M`.
#[derive(Clone, Debug)]
pub struct SkolemNoetherLift {
    emb: EmbeddedKummer,
    c: Subalgebra,
    z: Vec<Element>,
    group: Vec<GroupIndex>,
    z_sigma: Vec<Element>,
    z_sigma_inv: Vec<Element>,
    searched: usize,
}

/// Invariants of a lift; all must hold for the lift to be used.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct LiftReport {
    pub pass: bool,
    pub conjugation: bool,
    pub centralizer_dim: usize,
    pub expected_centralizer_dim: usize,
    pub powers_in_centralizer: bool,
    pub commutators_in_centralizer: bool,
    pub cocycle_in_centralizer: bool,
    pub candidates_searched: usize,
}

/// Cocycle data of a lift, as strings for reports.
#[derive(Clone, Debug, Serialize)]
pub struct LiftSummary {
    pub z: Vec<String>,
    pub c: Vec<String>,
    pub u: Vec<Vec<String>>,
    pub cocycle: Vec<Vec<String>>,
    pub group: Vec<GroupIndex>,
    pub centralizer_basis: Vec<String>,
}

pub fn skolem_noether_lift(emb: &EmbeddedKummer) -> Result<SkolemNoetherLift> {
    skolem_noether_lift_with(emb, LIFT_BUDGET)
}

/// Solve `z x_j = sigma_i(x_j) z` for each `i` and take the first invertible
/// solution in a fixed enumeration of small combinations of the
/// solution-space basis.
pub fn skolem_noether_lift_with(emb: &EmbeddedKummer, budget: usize) -> Result<SkolemNoetherLift> {
    let alg = emb.algebra();
    let t = alg.tower();
    let n = alg.dim();
    let c = centralizer(alg, emb.images())?;
    let mut z = Vec::new();
    let mut searched = 0;
    for i in 0..emb.rank() {
        let mut rows: Vec<Vec<Scalar>> = Vec::new();
        for (j, xj) in emb.images().iter().enumerate() {
            let lam = if i == j {
                emb.field().zetas()[i].clone()
            } else {
                t.one()
            };
            let r = xj.right_matrix();
            let l = xj.left_matrix();
            for k in 0..n {
                rows.push(r[k].iter().zip(&l[k]).map(|(a, b)| a - &(&lam * b)).collect());
            }
        }
        let (rows, _) = linalg::rref(rows, n);
        let sols = linalg::nullspace(t, rows, n);
        let (zi, k) = first_invertible(alg, &sols, budget)?;
        searched += k;
        z.push(zi);
    }
    let group = emb.field().group();
    let mut z_sigma = Vec::with_capacity(group.len());
    let mut z_sigma_inv = Vec::with_capacity(group.len());
    for g in &group {
        let mut acc = alg.one();
        for (zi, &m) in z.iter().zip(g) {
            acc = &acc * &zi.pow(m as i64)?;
        }
        z_sigma_inv.push(acc.inverse()?);
        z_sigma.push(acc);
    }
    Ok(SkolemNoetherLift {
        emb: emb.clone(),
        c,
        z,
        group,
        z_sigma,
        z_sigma_inv,
        searched,
    })
}

/// Candidate `k` of the enumeration: single basis vectors, then `v_a + c v_b`
/// for `c` in `1, -1, 2, -2`, then sums of three basis vectors.
fn first_invertible(alg: &Algebra, sols: &[Vec<Scalar>], budget: usize) -> Result<(Element, usize)> {
    let t = alg.tower();
    let d = sols.len();
    let vecs: Vec<Element> = sols.iter().map(|v| alg.element(v.clone()).unwrap()).collect();
    let mut cands: Vec<Element> = vecs.clone();
    for a in 0..d {
        for b in a + 1..d {
            for c in [1, -1, 2, -2] {
                cands.push(&vecs[a] + &vecs[b].scale(&t.int(c)));
            }
        }
    }
    for a in 0..d {
        for b in a + 1..d {
            for c in b + 1..d {
                cands.push(&(&vecs[a] + &vecs[b]) + &vecs[c]);
            }
        }
    }
    let mut tried = 0;
    for x in cands.into_iter().take(budget) {
        tried += 1;
        if !x.is_zero() && x.is_invertible() {
            return Ok((x, tried));
        }
    }
    Err(Error::NoInvertibleSolution {
        searched: tried,
        basis: sols
            .iter()
            .map(|v| v.iter().map(|s| s.to_string()).collect())
            .collect(),
    })
}

impl SkolemNoetherLift {
    pub fn embedded(&self) -> &EmbeddedKummer {
        &self.emb
    }

    pub fn algebra(&self) -> &Algebra {
        self.emb.algebra()
    }

    pub fn centralizer(&self) -> &Subalgebra {
        &self.c
    }

    pub fn z(&self) -> &[Element] {
        &self.z
    }

    pub fn group(&self) -> &[GroupIndex] {
        &self.group
    }

    pub fn group_index(&self, s: &[u64]) -> usize {
        self.emb.field().index(s)
    }

    pub fn z_sigma(&self, s: &[u64]) -> &Element {
        &self.z_sigma[self.group_index(s)]
    }

    pub fn z_sigma_inv(&self, s: &[u64]) -> &Element {
        &self.z_sigma_inv[self.group_index(s)]
    }

    /// `c_i = z_i^{n_i}`.
    pub fn c(&self, i: usize) -> Element {
        self.z[i].pow(self.emb.degrees()[i] as i64).unwrap()
    }

    /// `u_ij = z_i z_j z_i^-1 z_j^-1`.
    pub fn u(&self, i: usize, j: usize) -> Element {
        self.z[i].group_commutator(&self.z[j]).unwrap()
    }

    /// `c(s, t) = z_s z_t z_{st}^-1`.
    pub fn cocycle(&self, s: &[u64], t: &[u64]) -> Element {
        let st = self.emb.compose(s, t);
        &(self.z_sigma(s) * self.z_sigma(t)) * self.z_sigma_inv(&st)
    }

    /// `z_s c z_s^-1`.
    pub fn act(&self, s: &[u64], x: &Element) -> Element {
        &(self.z_sigma(s) * x) * self.z_sigma_inv(s)
    }

    pub fn check(&self) -> LiftReport {
        let emb = &self.emb;
        let f = emb.field();
        let conjugation = self.group.iter().all(|g| {
            (0..f.dim()).all(|k| {
                let e = f.exponents(k);
                let b = emb.monomial(&e);
                self.act(g, &b) == b.scale(&f.kummer_pairing(g, &e))
            })
        });
        let r = emb.rank();
        let powers = (0..r).all(|i| self.c.contains(&self.c(i)));
        let comms = (0..r).all(|i| (0..r).all(|j| self.c.contains(&self.u(i, j))));
        let cocycle = self
            .group
            .iter()
            .all(|s| self.group.iter().all(|t| self.c.contains(&self.cocycle(s, t))));
        let expected = self.algebra().dim() / f.dim();
        LiftReport {
            pass: conjugation && powers && comms && cocycle && self.c.dim() == expected,
            conjugation,
            centralizer_dim: self.c.dim(),
            expected_centralizer_dim: expected,
            powers_in_centralizer: powers,
            commutators_in_centralizer: comms,
            cocycle_in_centralizer: cocycle,
            candidates_searched: self.searched,
        }
    }

    pub fn summary(&self) -> LiftSummary {
        let r = self.emb.rank();
        LiftSummary {
            z: self.z.iter().map(|x| x.to_string()).collect(),
            c: (0..r).map(|i| self.c(i).to_string()).collect(),
            u: (0..r)
                .map(|i| (0..r).map(|j| self.u(i, j).to_string()).collect())
                .collect(),
            cocycle: self
                .group
                .iter()
                .map(|s| self.group.iter().map(|t| self.cocycle(s, t).to_string()).collect())
                .collect(),
            group: self.group.clone(),
            centralizer_basis: self.c.basis().iter().map(|b| b.to_string()).collect(),
        }
    }
}

/// Sampled check that `C` is a division algebra: every basis element, every
/// sum of two basis elements and `samples` random small elements must be
/// invertible. Returns the first zero divisor met.
pub fn sample_division(c: &Algebra, samples: usize, seed: u64) -> std::result::Result<(), Element> {
    let t = c.tower();
    let d = c.dim();
    let mut rng = crate::random::rng(seed);
    let mut cands: Vec<Element> = (0..d).map(|i| c.basis(i)).collect();
    for a in 0..d {
        for b in a + 1..d {
            cands.push(&c.basis(a) + &c.basis(b));
        }
    }
    for _ in 0..samples {
        cands.push(crate::random::sparse_element(c, &mut rng, d, |r| {
            crate::random::small_constant(t, r, 3)
        }));
    }
    for x in cands {
        if !x.is_zero() && !x.is_invertible() {
            return Err(x);
        }
    }
    Ok(())
}
