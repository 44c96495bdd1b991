use csa::fields::{ExponentVector, FieldTower, Scalar};
use proptest::prelude::*;

fn towers() -> Vec<FieldTower> {
    let q = FieldTower::rationals();
    vec![
        q.clone(),
        q.adjoin_zeta(3).unwrap(),
        q.adjoin_var("t").unwrap(),
        q.adjoin_zeta(4).unwrap().adjoin_vars(&["t1", "t2"]).unwrap(),
        FieldTower::finite(7).unwrap().adjoin_zeta(3).unwrap(),
        FieldTower::finite(5).unwrap().adjoin_var("t").unwrap(),
    ]
}

/// Small element built from integer data: `(c0 + c1 z) t^e / (1 + d t)`.
fn build(t: &FieldTower, c: (i64, i64, i64, i64)) -> Scalar {
    let mut x = t.int(c.0);
    if t.algebraic_degree() > 1 {
        x = &x + &(&t.int(c.1) * &t.z());
    }
    if let Some(v) = t.vars().first() {
        let v = t.var(v).unwrap();
        x = &x * &v.pow(c.2);
        let den = &t.one() + &(&t.int(c.3) * &v);
        if !den.is_zero() {
            x = &x / &den;
        }
    }
    x
}

fn coeffs() -> impl Strategy<Value = (i64, i64, i64, i64)> {
    (-5i64..=5, -5i64..=5, -2i64..=2, -3i64..=3)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms(k in 0usize..6, a in coeffs(), b in coeffs(), c in coeffs()) {
        let t = &towers()[k];
        let (x, y, z) = (build(t, a), build(t, b), build(t, c));
        prop_assert_eq!(&(&x + &y) * &z, &(&x * &z) + &(&y * &z));
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &y, &y * &x);
        prop_assert_eq!(&(&x - &y) + &y, x.clone());
        if !x.is_zero() {
            prop_assert!((&x * &x.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn display_parses_back(k in 0usize..6, a in coeffs()) {
        let t = &towers()[k];
        let x = build(t, a);
        prop_assert_eq!(t.parse(&x.to_string()).unwrap(), x);
    }

    #[test]
    fn valuation_is_additive(a in coeffs(), b in coeffs()) {
        let t = FieldTower::rationals().adjoin_vars(&["t1", "t2"]).unwrap();
        let (x, y) = (build(&t, a), build(&t, b));
        prop_assume!(!x.is_zero() && !y.is_zero());
        let s = &Scalar::monomial(&t, &[a.2, b.2]) * &x;
        let vx = s.valuation().unwrap();
        let vy = y.valuation().unwrap();
        prop_assert_eq!((&s * &y).valuation().unwrap(), &vx + &vy);
        let sum = &s + &y;
        if !sum.is_zero() {
            prop_assert!(sum.valuation().unwrap() >= vx.min(vy));
        }
    }
}

#[test]
fn roots_of_unity() {
    let f = FieldTower::finite(13).unwrap();
    // F13^x is cyclic of order 12, so a primitive 12th root already exists
    assert_eq!(f.unit_roots().0, 12);
    let z = f.root_of_unity(4).unwrap();
    assert_eq!(z.pow(2), f.int(-1));
    let q3 = FieldTower::rationals().adjoin_zeta(3).unwrap();
    let w = q3.root_of_unity(3).unwrap();
    assert!(!w.is_one());
    assert!(w.pow(3).is_one());
    let m = q3.unit_roots().0;
    assert_eq!(m, 6);
    assert_eq!(q3.root_log(&w.pow(2)), q3.root_log(&w).map(|k| 2 * k % m));
}

#[test]
fn tower_from_json() {
    let t = FieldTower::from_json(r#"{"base":{"Fp":7},"steps":[{"zeta":3},{"var":"t1"}]}"#).unwrap();
    assert_eq!(t.characteristic(), 7);
    assert_eq!(t.vars(), ["t1"]);
    assert!(FieldTower::from_json(r#"{"base":{"Fp":8},"steps":[]}"#).is_err());
    assert!(FieldTower::from_json(r#"{"base":"Q","steps":[{"var":"t"},{"var":"t"}]}"#).is_err());
}

#[test]
fn nth_powers() {
    let q = FieldTower::rationals();
    assert_eq!(q.int(49).nth_root(2).unwrap(), Some(q.int(7)));
    assert_eq!(q.int(-8).nth_root(3).unwrap(), Some(q.int(-2)));
    assert!(!q.int(2).is_nth_power(2).unwrap());
    let qt = q.adjoin_var("t").unwrap();
    let t = qt.var("t").unwrap();
    let sq = &(&t + &qt.one()) * &(&t + &qt.one());
    assert!(sq.is_nth_power(2).unwrap());
    assert!(!t.is_nth_power(2).unwrap());
}

#[test]
fn exponent_order_is_right_to_left() {
    let a = ExponentVector::integral(vec![5, 0]);
    let b = ExponentVector::integral(vec![-5, 1]);
    assert!(a < b);
    let h = ExponentVector::new(vec![1, 0], vec![2, 1]);
    assert!(h < ExponentVector::integral(vec![1, 0]));
    assert_eq!(h.fractional_class(&[2, 2]), vec![1, 0]);
}
