//! Leading terms in D' = D (x) (t1, t2) for D = (-1, -1), and the reduction
//! of an anticommuting square-central element of D' to one of D.

use csa::fields::FieldTower;
use csa::sqcentral::{laurent_obstruction_reduce, LaurentAlgebra};
use csa::symbols::{symbol_algebra, symbol_generators};

fn main() -> csa::Result<()> {
    let q = FieldTower::rationals();
    let d = symbol_algebra(&q, &q.int(-1), &q.int(-1), 2)?;
    let (i, j) = symbol_generators(&d)?;
    let l = LaurentAlgebra::new(&d);

    let f = &l.monomial(&j, 1, 0) + &l.monomial(&i, 0, 1);
    let h = &l.monomial(&d.one(), -1, 0) + &l.constant(&(&i * &j));
    println!("f = {f}\nh = {h}");
    println!("l(f) = {}, l(h) = {}, l(fh) = {}", f.leading_term()?, h.leading_term()?, (&f * &h).leading_term()?);

    // y = j + ij t1^2 t2^2 anticommutes with i and squares into L
    let y = &l.constant(&j) + &l.monomial(&(&i * &j), 2, 2);
    let r = laurent_obstruction_reduce(&i, &y)?;
    println!("y = {y} reduces to d = {} with d^2 = {}", r.d, r.d2);

    let bad = &l.constant(&j) + &l.i();
    println!("j + i is rejected: {}", laurent_obstruction_reduce(&i, &bad).unwrap_err());
    Ok(())
}
