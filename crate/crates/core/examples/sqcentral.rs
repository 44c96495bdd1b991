//! Square-central elements: the characteristic 3 counterexample to the trace
//! criterion, a block-swap witness over Q and a non-square case over F3.

use csa::algebra::{matrix_algebra, matrix_element};
use csa::fields::FieldTower;
use csa::sqcentral::{analyze, counterexample_instance, diagonal_sign_matrix, Verdict};

fn show(label: &str, rep: &csa::sqcentral::SquareCentralReport) {
    println!("{label}: case {:?}, dims {:?}, trace {:?}", rep.case, rep.dims, rep.trace.as_ref().map(|t| t.to_string()));
    match &rep.verdict {
        Verdict::InQuaternion { witness, note } => {
            if let Some(w) = witness {
                println!("  in a quaternion subalgebra, f = {}, f^2 = {}", w.f, w.f2);
            }
            if let Some(n) = note {
                println!("  {n}");
            }
        }
        Verdict::NotInQuaternion(r) => println!("  not in a quaternion subalgebra: {r}"),
        Verdict::Unknown(r) => println!("  unknown: {r}"),
    }
}

fn main() -> csa::Result<()> {
    let (_, g) = counterexample_instance()?;
    show("diag(1,...,1,-1) in M8(F3)", &analyze(&g, 1000)?);

    let q = FieldTower::rationals();
    let m4 = matrix_algebra(&q, 4);
    show("diag(1,1,-1,-1) in M4(Q)", &analyze(&diagonal_sign_matrix(&m4, &[1, 1, -1, -1])?, 1000)?);

    let f3 = FieldTower::finite(3)?;
    let m2 = matrix_algebra(&f3, 2);
    let g = matrix_element(&m2, &[vec![f3.int(0), f3.int(1)], vec![f3.int(2), f3.int(0)]])?;
    show("(0 1; 2 0) in M2(F3)", &analyze(&g, 1000)?);
    Ok(())
}
