use std::collections::BTreeSet;

use serde::Serialize;

use super::CrossedProduct;
use crate::algebra::{verify_isomorphism, Algebra, Element, IsoReport};
use crate::armature::{
    symplectic_base_extending, ArmIndex, Armature, ArmatureReport, SymbolFactor, SymplecticBase,
};
use crate::error::{Error, Result};
use crate::fields::{is_prime, Scalar};
use crate::symbols::{cyclic_algebra, kummer_extension, symbol_algebra_with, CyclicAlgebra, GroupIndex};

/// Independent generators with orders for a subgroup `h` of the armature:
/// repeatedly adjoin an element of exact order equal to the largest order
/// met in the quotient by the span so far.
pub fn subgroup_basis(arm: &Armature, h: &[ArmIndex]) -> Result<Vec<(ArmIndex, u64)>> {
    let target: BTreeSet<ArmIndex> = h.iter().cloned().collect();
    let mut gens: Vec<ArmIndex> = Vec::new();
    let mut out = Vec::new();
    let mut span: BTreeSet<ArmIndex> = arm.subgroup(&[]).into_iter().collect();
    while span.len() < target.len() {
        let coset_order = |x: &ArmIndex| {
            let mut k = 1;
            let mut y = x.clone();
            while !span.contains(&y) {
                y = arm.add(&y, x);
                k += 1;
            }
            k
        };
        let m = target.iter().map(coset_order).max().unwrap_or(1);
        let pick = target
            .iter()
            .find(|x| coset_order(x) == m && arm.element_order(x) == m)
            .ok_or_else(|| Error::InvalidArmature("subgroup has no adapted basis".into()))?
            .clone();
        gens.push(pick.clone());
        out.push((pick, m));
        span = arm.subgroup(&gens).into_iter().collect();
        if !span.is_subset(&target) {
            return Err(Error::InvalidArmature("elements do not form a subgroup".into()));
        }
    }
    Ok(out)
}

/// Both towers share the root-of-unity generator, so pairings compare as
/// fractions `k / N`.
fn tables_agree(a: &Armature, b: &Armature) -> bool {
    let k = a.rank();
    let (na, nb) = (a.roots() as u128, b.roots() as u128);
    k == b.rank()
        && (0..k).all(|i| {
            (0..k).all(|j| a.table()[i][j] as u128 * nb == b.table()[i][j] as u128 * na)
        })
}

/// `nu(armE)` in `A^x / F^x` with the checks made along the way.
#[derive(Clone, Debug)]
pub struct NuImage {
    pub armature: Armature,
    pub report: ArmatureReport,
    pub isometric: bool,
    pub injective: bool,
    pub kum_contained: bool,
}

/// `x L'^x -> c_r z_r F^x` where `c_r z_r (x) y_r` is the leading term of `x`.
pub fn nu_map(cp: &CrossedProduct, arm_e: &Armature) -> Result<NuImage> {
    if arm_e.algebra() != cp.algebra() {
        return Err(Error::ParentMismatch);
    }
    let a = cp.lift().algebra();
    let mut gens = Vec::new();
    for (g, &n) in arm_e.generators().iter().zip(arm_e.orders()) {
        gens.push((cp.leading_term(g)?.rep, n));
    }
    let armature =
        Armature::new(a, gens).map_err(|e| Error::NotIsometric(format!("image is not an armature: {e}")))?;
    if !tables_agree(arm_e, &armature) {
        return Err(Error::NotIsometric("pairing tables differ".into()));
    }
    let report = armature.verify();
    let emb = cp.lift().embedded();
    let kum_contained = emb.images().iter().all(|x| armature.class_of(x).is_some());
    Ok(NuImage {
        injective: report.independent && armature.order() == arm_e.order(),
        armature,
        report,
        isometric: true,
        kum_contained,
    })
}

/// `B'` together with the Galois component of each generator.
#[derive(Clone, Debug)]
pub struct LiftedArmature {
    pub armature: Armature,
    pub sigmas: Vec<GroupIndex>,
    pub report: ArmatureReport,
    pub isometric: bool,
}

fn kum_classes(cp: &CrossedProduct, arm_a: &Armature) -> Result<Vec<ArmIndex>> {
    let emb = cp.lift().embedded();
    let mut classes = Vec::new();
    for x in emb.images() {
        classes.push(arm_a.class_of(x).ok_or(Error::KumNotContained)?.0);
    }
    for a in &classes {
        for b in &classes {
            if arm_a.pairing_exp(a, b) != 0 {
                return Err(Error::KumNotIsotropic);
            }
        }
    }
    Ok(classes)
}

/// `x_a F^x -> (x_a (x) y_s) L'^x` for `a` in `B_s`, where `B_s` is the set
/// of `a` with `<a, x_b> = s(x_b) x_b^-1` on `Kum(M/F)`.
pub fn lift_armature(cp: &CrossedProduct, arm_a: &Armature) -> Result<LiftedArmature> {
    if arm_a.algebra() != cp.lift().algebra() {
        return Err(Error::ParentMismatch);
    }
    kum_classes(cp, arm_a)?;
    let emb = cp.lift().embedded();
    let mut gens = Vec::new();
    let mut sigmas = Vec::new();
    for (g, &n) in arm_a.generators().iter().zip(arm_a.orders()) {
        let s = emb.sigma_of(g).ok_or(Error::KumNotContained)?;
        gens.push((cp.pure(g, &s)?, n));
        sigmas.push(s);
    }
    let armature = Armature::new(cp.algebra(), gens)?;
    let isometric = tables_agree(arm_a, &armature);
    if !isometric {
        return Err(Error::NotIsometric("lifted pairing differs".into()));
    }
    let report = armature.verify();
    Ok(LiftedArmature {
        armature,
        sigmas,
        report,
        isometric,
    })
}

/// Image of `A_0 = ker w'` under the residue map, as an armature of `C`.
#[derive(Clone, Debug)]
pub struct ResidueArmature {
    pub armature: Armature,
    pub report: ArmatureReport,
    /// `|w'(armE)|`.
    pub value_classes: usize,
    pub kernel_order: usize,
    pub radical_order: usize,
    pub radical_is_kum: bool,
}

pub fn residue_armature(cp: &CrossedProduct, arm_e: &Armature) -> Result<ResidueArmature> {
    if arm_e.algebra() != cp.algebra() {
        return Err(Error::ParentMismatch);
    }
    let lift = cp.lift();
    let emb = lift.embedded();
    let n = emb.degrees();
    let mut classes = Vec::new();
    for g in arm_e.generators() {
        classes.push(cp.valuation_w(g)?.fractional_class(n));
    }
    let wprime = |e: &ArmIndex| -> Vec<u64> {
        (0..n.len())
            .map(|i| {
                e.iter()
                    .zip(&classes)
                    .map(|(&k, c)| k * c[i])
                    .sum::<u64>()
                    % n[i]
            })
            .collect()
    };
    let elements = arm_e.elements();
    let image: BTreeSet<Vec<u64>> = elements.iter().map(wprime).collect();
    let kernel: Vec<ArmIndex> = elements
        .iter()
        .filter(|e| wprime(e).iter().all(|&v| v == 0))
        .cloned()
        .collect();
    let csub = lift.centralizer();
    let calg = csub.as_algebra();
    let mut gens = Vec::new();
    for (b, o) in subgroup_basis(arm_e, &kernel)? {
        let lt = cp.leading_term(&arm_e.rep(&b))?;
        if lt.sigma.iter().any(|&m| m != 0) {
            return Err(Error::InvalidArmature("kernel element with nontrivial component".into()));
        }
        let res = csub
            .restrict(&lt.coeff)
            .ok_or_else(|| Error::InvalidAlgebra("residue outside the centralizer".into()))?;
        gens.push((res, o));
    }
    let armature = Armature::new(calg, gens)?;
    let report = armature.verify();
    let radical = armature.radical();
    let monomials: Vec<Element> = emb.field().group().iter().map(|e| emb.monomial(e)).collect();
    let in_kum = radical.iter().all(|r| {
        let x = csub.lift(&armature.rep(r));
        monomials.iter().any(|m| crate::armature::proportional(&x, m).is_some())
    });
    let radical_is_kum = in_kum && radical.len() == emb.field().dim();
    Ok(ResidueArmature {
        armature,
        report,
        value_classes: image.len(),
        kernel_order: kernel.len(),
        radical_order: radical.len(),
        radical_is_kum,
    })
}

/// `(k_i, sigma_i, delta_i)` realized inside `A` by `x_i` and `y_i`.
#[derive(Clone, Debug)]
pub struct CyclicFactor {
    pub radicand: Scalar,
    pub degree: u64,
    pub delta: Scalar,
    pub x: Element,
    pub y: Element,
    pub algebra: CyclicAlgebra,
    /// `delta_i t_i`, the parameter of the matching factor of `E'`.
    pub e_parameter: Scalar,
}

#[derive(Clone, Debug, Serialize)]
pub struct CyclicSummary {
    pub radicand: String,
    pub degree: u64,
    pub delta: String,
    pub x: String,
    pub y: String,
    pub e_parameter: String,
}

impl CyclicFactor {
    pub fn summary(&self) -> CyclicSummary {
        CyclicSummary {
            radicand: self.radicand.to_string(),
            degree: self.degree,
            delta: self.delta.to_string(),
            x: self.x.to_string(),
            y: self.y.to_string(),
            e_parameter: self.e_parameter.to_string(),
        }
    }
}

/// `A = (k_1, s_1, d_1) (x) ... (x) (k_r, s_r, d_r) (x) A_{r+1} (x) ...` and
/// the matching decomposition of `E'` with parameters `d_i t_i`.
#[derive(Clone, Debug)]
pub struct SubfieldDecomposition {
    pub base: SymplecticBase,
    pub cyclic: Vec<CyclicFactor>,
    pub symbols: Vec<SymbolFactor>,
    pub report: IsoReport,
    pub e_report: IsoReport,
}

fn local_images(x: &Element, y: &Element, n: u64) -> Result<Vec<Element>> {
    let mut v = Vec::new();
    for a in 0..n as i64 {
        for b in 0..n as i64 {
            v.push(&x.pow(a)? * &y.pow(b)?);
        }
    }
    Ok(v)
}

fn tensor_images(alg: &Algebra, locals: &[Vec<Element>]) -> Vec<Element> {
    let mut images = vec![alg.one()];
    for local in locals {
        let mut next = Vec::with_capacity(images.len() * local.len());
        for x in &images {
            for y in local {
                next.push(x * y);
            }
        }
        images = next;
    }
    images
}

/// Complete `x_1 F^x, ..., x_r F^x` to a symplectic base of the exponent-`p`
/// armature `arm_a` and read off the cyclic and symbol factors of `A`.
pub fn decompose_with_subfields(cp: &CrossedProduct, arm_a: &Armature) -> Result<SubfieldDecomposition> {
    let lift = cp.lift();
    let emb = lift.embedded();
    let a = lift.algebra();
    let f = a.tower();
    let p = emb.degrees()[0];
    if !is_prime(p) || emb.degrees().iter().any(|&n| n != p) {
        return Err(Error::InvalidArmature(format!(
            "subfields must all have the same prime degree, got {:?}",
            emb.degrees()
        )));
    }
    let prefix = kum_classes(cp, arm_a)?;
    let base = symplectic_base_extending(arm_a, p, &prefix)?;
    let r = emb.rank();
    let lp = cp.field();
    let mut cyclic = Vec::new();
    let mut parts = Vec::new();
    let mut e_parts = Vec::new();
    let mut locals = Vec::new();
    let mut e_locals = Vec::new();
    for (i, pr) in base.pairs.iter().enumerate().take(r) {
        if pr.g != prefix[i] {
            return Err(Error::InvalidArmature("symplectic base moved a subfield generator".into()));
        }
        // y with y x_i y^-1 = zeta x_i: a power of h
        let h = arm_a.rep(&pr.h);
        let s = emb
            .sigma_of(&h)
            .ok_or_else(|| Error::InvalidArmature("partner does not normalize M".into()))?;
        let k = (1..p)
            .find(|k| (k * s[i]) % p == 1)
            .ok_or_else(|| Error::InvalidArmature("partner pairs trivially".into()))?;
        let y = h.pow(k as i64)?;
        let x = emb.images()[i].clone();
        let delta = y.pow(p as i64)?.as_scalar().ok_or(Error::NotScalar)?;
        let b = emb.field().radicands()[i].clone();
        let ki = kummer_extension(f, &[b.clone()], &[p])?;
        let algebra = cyclic_algebra(&ki, &delta)?;
        locals.push(local_images(&x, &y, p)?);
        parts.push(algebra.alg.clone());

        let mut unit = vec![0; r];
        unit[i] = 1;
        let e_parameter = &lp.embed(&delta)? * &cp.t(i);
        let ki_l = kummer_extension(lp, &[b.clone()], &[p])?;
        e_parts.push(cyclic_algebra(&ki_l, &e_parameter)?.alg);
        let xe = cp.term(&x, &vec![0; r], &lp.one())?;
        let ye = cp.pure(&y, &unit)?;
        e_locals.push(local_images(&xe, &ye, p)?);

        cyclic.push(CyclicFactor {
            radicand: b,
            degree: p,
            delta,
            x,
            y,
            algebra,
            e_parameter,
        });
    }
    let mut symbols = Vec::new();
    for pr in base.pairs.iter().skip(r) {
        let i = arm_a.rep(&pr.g);
        let j = arm_a.rep(&pr.h);
        let sa = i.pow(p as i64)?.as_scalar().ok_or(Error::NotScalar)?;
        let sb = j.pow(p as i64)?.as_scalar().ok_or(Error::NotScalar)?;
        let zeta = arm_a.root_value(pr.value);
        let algebra = symbol_algebra_with(f, &sa, &sb, &zeta, p)?;
        locals.push(local_images(&i, &j, p)?);
        parts.push(algebra.clone());
        e_parts.push(algebra.base_change(lp)?);
        let id = vec![0; r];
        e_locals.push(local_images(&cp.pure(&i, &id)?, &cp.pure(&j, &id)?, p)?);
        symbols.push(SymbolFactor {
            a: sa,
            b: sb,
            n: p,
            zeta,
            i,
            j,
            algebra,
        });
    }
    let tensor = Algebra::tensor_all(&parts)?;
    let report = verify_isomorphism(&tensor, a, &tensor_images(a, &locals))?;
    let e_tensor = Algebra::tensor_all(&e_parts)?;
    let e_report = verify_isomorphism(&e_tensor, cp.algebra(), &tensor_images(cp.algebra(), &e_locals))?;
    Ok(SubfieldDecomposition {
        base,
        cyclic,
        symbols,
        report,
        e_report,
    })
}

#[cfg(test)]
mod tests {
    use super::super::{build_crossed, skolem_noether_lift, EmbeddedKummer};
    use super::*;
    use crate::fields::FieldTower;
    use crate::symbols::{standard_armature, symbol_algebra, symbol_generators};

    #[test]
    fn quaternion_round_trip() {
        let q = FieldTower::rationals();
        let h = symbol_algebra(&q, &q.int(2), &q.int(5), 2).unwrap();
        let (i, j) = symbol_generators(&h).unwrap();
        let emb = EmbeddedKummer::new(&h, vec![(i, 2)]).unwrap();
        let lift = skolem_noether_lift(&emb).unwrap();
        let cp = build_crossed(&lift, &["t1"]).unwrap();
        let arm = standard_armature(&h).unwrap();
        let lifted = lift_armature(&cp, &arm).unwrap();
        assert!(lifted.report.pass);
        let back = nu_map(&cp, &lifted.armature).unwrap();
        assert!(back.injective && back.kum_contained);
        for (g, b) in arm.generators().iter().zip(back.armature.generators()) {
            assert!(crate::armature::proportional(b, g).is_some());
        }
        let jy = cp.pure(&j, &[1]).unwrap();
        assert_eq!(cp.leading_term(&jy).unwrap().rep, j);
        let res = residue_armature(&cp, &lifted.armature).unwrap();
        assert_eq!((res.value_classes, res.kernel_order), (2, 2));
        assert!(res.report.pass && res.radical_is_kum);
        let d = decompose_with_subfields(&cp, &arm).unwrap();
        assert!(d.report.pass && d.e_report.pass);
        assert_eq!(d.cyclic[0].delta, q.int(5));
    }

    #[test]
    fn adapted_basis_of_cyclic_group() {
        let q = FieldTower::rationals();
        let h = symbol_algebra(&q, &q.int(2), &q.int(5), 2).unwrap();
        let arm = standard_armature(&h).unwrap();
        let all = arm.elements();
        let b = subgroup_basis(&arm, &all).unwrap();
        assert_eq!(b.iter().map(|(_, o)| o).product::<u64>(), 4);
    }
}
