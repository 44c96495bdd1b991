//! Armature of a biquaternion algebra, its pairing, a symplectic base and the
//! resulting decomposition into symbol algebras.

use csa::algebra::Algebra;
use csa::armature::{decompose_by_armature, symplectic_base};
use csa::fields::FieldTower;
use csa::symbols::{standard_armature, symbol_algebra};

fn main() -> csa::Result<()> {
    let f = FieldTower::rationals().adjoin_var("t")?;
    let t = f.var("t")?;
    let a = Algebra::tensor(
        &symbol_algebra(&f, &f.int(-1), &f.int(-1), 2)?,
        &symbol_algebra(&f, &f.int(-1), &t, 2)?,
    )?;
    let arm = standard_armature(&a)?;
    println!("armature of order {} in an algebra of dimension {}", arm.order(), a.dim());
    println!("pairing exponents of the generators: {:?}", arm.table());
    println!("verified: {}", arm.verify().pass);

    let base = symplectic_base(&arm)?;
    for p in &base.pairs {
        println!("pair g = {:?}, h = {:?}", p.g, p.h);
    }
    let d = decompose_by_armature(&arm)?;
    for f in &d.factors {
        println!("factor ({}, {})_{}: I = {}, J = {}", f.a, f.b, f.n, f.i, f.j);
    }
    println!("isomorphism checked on {} basis pairs: {}", d.report.pairs_checked, d.report.pass);
    Ok(())
}
