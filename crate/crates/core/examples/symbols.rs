//! Symbol algebras, the quaternion division test and Kummer extensions.

use csa::fields::FieldTower;
use csa::symbols::{cyclic_algebra, kummer_extension, quaternion_division, symbol_algebra, symbol_generators};

fn main() -> csa::Result<()> {
    let q = FieldTower::rationals();
    for (a, b) in [(-1, -1), (2, -1), (3, 7)] {
        let h = symbol_algebra(&q, &q.int(a), &q.int(b), 2)?;
        println!("({a}, {b}) over Q: {:?}", quaternion_division(&h, 20)?);
    }

    let f = FieldTower::rationals().adjoin_zeta(3)?;
    let a = symbol_algebra(&f, &f.int(2), &f.int(5), 3)?;
    let (x, y) = symbol_generators(&a)?;
    println!("(2, 5)_3: x^3 = {}, y^3 = {}, x y x^-1 y^-1 = {}", x.pow(3)?, y.pow(3)?, x.group_commutator(&y)?);

    let k = kummer_extension(&q, &[q.int(2), q.int(3)], &[2, 2])?;
    println!("Q(sqrt 2, sqrt 3) has dimension {}", k.dim());
    let idem = k.separability_idempotents()?;
    println!("  separability idempotents: family {}, equivariant {}", idem.check_family(), idem.check_equivariance());

    let f13 = FieldTower::finite(13)?;
    let k3 = kummer_extension(&f13, &[f13.int(2)], &[3])?;
    let c = cyclic_algebra(&k3, &f13.int(5))?;
    println!("(F13(2^(1/3)), s, 5) matches its symbol presentation: {}", c.report.pass);
    Ok(())
}
