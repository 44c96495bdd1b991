//! The crossed product E' of a biquaternion algebra over F(t1), and the maps
//! between armatures of A and of E'.

use csa::algebra::Algebra;
use csa::crossed::{
    brauer_witness_smallscale, build_crossed, decompose_with_subfields, lift_armature, nu_map, residue_armature,
    skolem_noether_lift, EmbeddedKummer,
};
use csa::fields::FieldTower;
use csa::symbols::{standard_armature, symbol_algebra, symbol_generators};

fn main() -> csa::Result<()> {
    let f = FieldTower::rationals().adjoin_var("t")?;
    let t = f.var("t")?;
    let h1 = symbol_algebra(&f, &f.int(-1), &f.int(-1), 2)?;
    let h2 = symbol_algebra(&f, &f.int(-1), &t, 2)?;
    let a = Algebra::tensor(&h1, &h2)?;
    let (i1, _) = symbol_generators(&h1)?;

    // M = F(i (x) 1), a maximal Kummer subfield of degree 2
    let emb = EmbeddedKummer::new(&a, vec![(a.pure_tensor(&[i1, h2.one()]), 2)])?;
    let lift = skolem_noether_lift(&emb)?;
    println!("Skolem-Noether lift z = {}", lift.z()[0]);
    let cp = build_crossed(&lift, &["t1"])?;
    println!("E' has dimension {} over {}", cp.algebra().dim(), cp.field().describe());
    for e in cp.cocycle_table() {
        println!("  f({:?}, {:?}) = {}, c = {}", e.sigma, e.tau, e.f, e.c);
    }

    let arm = standard_armature(&a)?;
    let lifted = lift_armature(&cp, &arm)?;
    println!("lifted armature verified on E': {}", lifted.report.pass);
    let back = nu_map(&cp, &lifted.armature)?;
    println!("nu image is isometric: {}, contains Kum: {}", back.isometric, back.kum_contained);
    let res = residue_armature(&cp, &lifted.armature)?;
    println!("residue armature of order {}, radical is Kum: {}", res.armature.order(), res.radical_is_kum);

    let d = decompose_with_subfields(&cp, &arm)?;
    for c in &d.cyclic {
        println!("cyclic factor: radicand {}, delta {}, E' parameter {}", c.radicand, c.delta, c.e_parameter);
    }
    let b = brauer_witness_smallscale(&cp)?;
    println!("Brauer witness in R' of dimension {}: {}", b.dim_r, b.pass);
    Ok(())
}
