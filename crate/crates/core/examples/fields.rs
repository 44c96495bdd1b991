//! Exact arithmetic in a few field towers.

use csa::fields::{FieldTower, Scalar};

fn main() -> csa::Result<()> {
    let q = FieldTower::rationals();
    let x = &q.rational(3, 4)? + &q.int(2);
    println!("Q: 3/4 + 2 = {x}, inverse {}", x.inv()?);

    let k = FieldTower::rationals().adjoin_zeta(3)?;
    let w = k.z();
    println!("{}: z^2 + z + 1 = {}", k.describe(), &(&w * &w) + &(&w + &k.one()));

    let f = FieldTower::finite(5)?.adjoin_vars(&["t1", "t2"])?;
    let t1 = f.var("t1")?;
    let t2 = f.var("t2")?;
    let y = &(&t1 * &t2) / &(&f.one() + &t1);
    println!("{}: y = {y}", f.describe());
    println!("  valuation of y (right-to-left order): {}", y.valuation()?);
    println!("  t2 is a square: {}", t2.is_nth_power(2)?);
    let m = Scalar::monomial(&f, &[-1, 2]);
    println!("  t1^-1 t2^2 = {m}, parsed back: {}", f.parse(&m.to_string())?);
    Ok(())
}
