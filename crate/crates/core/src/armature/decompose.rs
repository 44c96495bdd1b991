use serde::Serialize;

use super::{symplectic_base, Armature, SymplecticBase};
use crate::algebra::{verify_isomorphism, Algebra, Element, IsoReport};
use crate::error::{Error, Result};
use crate::fields::Scalar;
use crate::symbols::symbol_algebra_with;

/// The symbol subalgebra `F[(g) x (h)]` of one symplectic pair: `I = x_g`,
/// `J = x_h`, `I^n = a`, `J^n = b`, `I J = zeta J I`.
#[derive(Clone, Debug)]
pub struct SymbolFactor {
    pub a: Scalar,
    pub b: Scalar,
    pub n: u64,
    pub zeta: Scalar,
    pub i: Element,
    pub j: Element,
    pub algebra: Algebra,
}

#[derive(Clone, Debug, Serialize)]
pub struct FactorSummary {
    pub a: String,
    pub b: String,
    pub n: u64,
    pub zeta: String,
    pub i: String,
    pub j: String,
}

impl SymbolFactor {
    pub fn summary(&self) -> FactorSummary {
        FactorSummary {
            a: self.a.to_string(),
            b: self.b.to_string(),
            n: self.n,
            zeta: self.zeta.to_string(),
            i: self.i.to_string(),
            j: self.j.to_string(),
        }
    }
}

/// `A` as a tensor product of symbol algebras, with the map from the tensor
/// product to `A` checked on every basis pair.
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub base: SymplecticBase,
    pub factors: Vec<SymbolFactor>,
    pub tensor: Algebra,
    pub images: Vec<Element>,
    pub report: IsoReport,
}

pub fn decompose_by_armature(arm: &Armature) -> Result<Decomposition> {
    let base = symplectic_base(arm)?;
    decompose_with_base(arm, base)
}

/// Decompose along a given symplectic base of the armature.
pub fn decompose_with_base(arm: &Armature, base: SymplecticBase) -> Result<Decomposition> {
    let alg = arm.algebra();
    let t = alg.tower();
    let mut factors = Vec::new();
    for pr in &base.pairs {
        let i = arm.rep(&pr.g);
        let j = arm.rep(&pr.h);
        let n = pr.order;
        let a = i
            .pow(n as i64)?
            .as_scalar()
            .ok_or_else(|| Error::InvalidArmature(format!("{i} to the {n} is not a scalar")))?;
        let b = j
            .pow(n as i64)?
            .as_scalar()
            .ok_or_else(|| Error::InvalidArmature(format!("{j} to the {n} is not a scalar")))?;
        let zeta = arm.root_value(pr.value);
        let algebra = symbol_algebra_with(t, &a, &b, &zeta, n)?;
        factors.push(SymbolFactor {
            a,
            b,
            n,
            zeta,
            i,
            j,
            algebra,
        });
    }
    if factors.is_empty() {
        return Err(Error::InvalidArmature("trivial armature has no symbol factors".into()));
    }
    let parts: Vec<Algebra> = factors.iter().map(|f| f.algebra.clone()).collect();
    let tensor = Algebra::tensor_all(&parts)?;
    // local images I^x J^y per factor, then products across factors
    let locals: Vec<Vec<Element>> = factors
        .iter()
        .map(|f| {
            let n = f.n as i64;
            let mut v = Vec::new();
            for x in 0..n {
                for y in 0..n {
                    v.push(&f.i.pow(x).unwrap() * &f.j.pow(y).unwrap());
                }
            }
            v
        })
        .collect();
    let mut images = vec![alg.one()];
    for local in &locals {
        let mut next = Vec::with_capacity(images.len() * local.len());
        for x in &images {
            for y in local {
                next.push(x * y);
            }
        }
        images = next;
    }
    let report = verify_isomorphism(&tensor, alg, &images)?;
    Ok(Decomposition {
        base,
        factors,
        tensor,
        images,
        report,
    })
}
