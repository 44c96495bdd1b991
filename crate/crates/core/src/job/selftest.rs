//! In-process run of the acceptance criteria, used by `csa selftest`.

use std::time::Instant;

use rand::Rng;
use serde::Serialize;

use crate::algebra::{matrix_algebra, matrix_element, verify_isomorphism, Algebra, Element};
use crate::armature::{
    decompose_by_armature, gram_is_standard, pairing_of, proportional, symplectic_extend, Armature,
};
use crate::crossed::{
    brauer_witness_smallscale, build_crossed, decompose_with_subfields, lift_armature, nu_map,
    residue_armature, skolem_noether_lift, valuation_laws, CrossedProduct, EmbeddedKummer,
};
use crate::error::Result;
use crate::fields::FieldTower;
use crate::random::{rng, Rng64};
use crate::sqcentral::{
    counterexample_instance, diagonal_sign_matrix, laurent_obstruction_reduce, membership_square_case,
    trace_criterion_char0, LaurentAlgebra, LaurentElement, Verdict,
};
use crate::symbols::{standard_armature, symbol_algebra, symbol_generators};

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub id: usize,
    pub title: &'static str,
    pub pass: bool,
    pub detail: String,
    pub millis: u128,
}

type Outcome = Result<(bool, String)>;

fn timed(id: usize, title: &'static str, f: impl FnOnce() -> Outcome) -> Check {
    let start = Instant::now();
    let r = f();
    let millis = start.elapsed().as_millis();
    let (pass, detail) = match r {
        Ok(x) => x,
        Err(e) => (false, format!("error: {e}")),
    };
    Check {
        id,
        title,
        pass,
        detail,
        millis,
    }
}

/// All eleven checks in order.
pub fn run(seed: u64) -> Vec<Check> {
    vec![
        timed(1, "counterexample in M8(F3)", counterexample),
        timed(2, "symplectic extension over F2, F3", symplectic_exhaustive),
        timed(3, "pairing laws on biquaternion armatures", || pairing_laws(seed)),
        timed(4, "decomposition of (-1,-1)x(-1,t)", biquaternion_decomposition),
        timed(5, "crossed product valuation laws", || crossed_laws(seed)),
        timed(6, "nu of lifted armature round trip", nu_round_trip),
        timed(7, "subfield decomposition witness", subfield_witness),
        timed(8, "residue armature", residue),
        timed(9, "Brauer witness at dim 4", brauer),
        timed(10, "leading terms and obstruction reducer", || laurent_laws(seed)),
        timed(11, "ideal dimensions versus trace in char 0", || trace_agreement(seed)),
    ]
}

fn counterexample() -> Outcome {
    let (a, g) = counterexample_instance()?;
    let one = a.one();
    let plus = (&g + &one).left_ideal_dim();
    let minus = (&g - &one).left_ideal_dim();
    let trd = g.reduced_trace()?;
    let rep = membership_square_case(&g, &a.tower().one())?;
    let pass = trd.is_zero()
        && (plus, minus) == (56, 8)
        && rep.dims == Some((8, 56))
        && matches!(rep.verdict, Verdict::NotInQuaternion(_));
    Ok((pass, format!("Trd = {trd}, dim(g+1)A = {plus}, dim(g-1)A = {minus}")))
}

fn all_vectors(p: u64, d: usize) -> Vec<Vec<u64>> {
    let total = p.pow(d as u32);
    (0..total)
        .map(|mut k| {
            (0..d)
                .map(|_| {
                    let x = k % p;
                    k /= p;
                    x
                })
                .collect()
        })
        .collect()
}

fn form(p: u64, g: &[Vec<u64>], u: &[u64], v: &[u64]) -> u64 {
    let mut acc = 0;
    for i in 0..u.len() {
        for j in 0..v.len() {
            acc = (acc + u[i] * v[j] % p * g[i][j]) % p;
        }
    }
    acc
}

fn rank_mod(mut m: Vec<Vec<u64>>, p: u64) -> usize {
    let cols = m.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        let Some(i) = (r..m.len()).find(|&i| m[i][c] % p != 0) else {
            continue;
        };
        m.swap(r, i);
        let inv = (1..p).find(|x| x * m[r][c] % p == 1).unwrap();
        let piv: Vec<u64> = m[r].iter().map(|x| x * inv % p).collect();
        for (k, row) in m.iter_mut().enumerate() {
            if k != r {
                let f = row[c];
                for (x, y) in row.iter_mut().zip(&piv) {
                    *x = (*x + p * p - f * y % p) % p;
                }
            }
        }
        m[r] = piv;
        r += 1;
    }
    r
}

fn alternating_forms(p: u64, d: usize) -> Vec<Vec<Vec<u64>>> {
    let slots: Vec<(usize, usize)> = (0..d).flat_map(|i| (i + 1..d).map(move |j| (i, j))).collect();
    all_vectors(p, slots.len())
        .into_iter()
        .map(|vals| {
            let mut g = vec![vec![0; d]; d];
            for (&(i, j), &v) in slots.iter().zip(&vals) {
                g[i][j] = v;
                g[j][i] = (p - v) % p;
            }
            g
        })
        .filter(|g| rank_mod(g.clone(), p) == d)
        .collect()
}

fn symplectic_exhaustive() -> Outcome {
    let mut cases = 0usize;
    for p in [2u64, 3] {
        for d in [2usize, 4] {
            let vecs = all_vectors(p, d);
            for g in alternating_forms(p, d) {
                let mut lists: Vec<Vec<Vec<u64>>> = vec![vec![]];
                let mut frontier = lists.clone();
                for _ in 0..d / 2 {
                    let mut next = Vec::new();
                    for l in &frontier {
                        for v in &vecs {
                            let mut cand = l.clone();
                            cand.push(v.clone());
                            let iso = l.iter().chain([v]).all(|u| form(p, &g, u, v) == 0);
                            if iso && rank_mod(cand.clone(), p) == cand.len() {
                                next.push(cand);
                            }
                        }
                    }
                    lists.extend(next.iter().cloned());
                    frontier = next;
                }
                for l in &lists {
                    cases += 1;
                    let pairs = symplectic_extend(p, &g, l)?;
                    let prefix_ok = l.iter().zip(&pairs).all(|(e, (a, _))| e == a);
                    if !prefix_ok || !gram_is_standard(p, &g, &pairs) {
                        return Ok((false, format!("p = {p}, gram {g:?}, list {l:?}")));
                    }
                }
            }
        }
    }
    Ok((true, format!("{cases} (form, isotropic list) cases")))
}

fn pairing_instance(t: &FieldTower, a: &str, b: &str, c: &str, d: &str) -> Result<Armature> {
    let h1 = symbol_algebra(t, &t.parse(a)?, &t.parse(b)?, 2)?;
    let h2 = symbol_algebra(t, &t.parse(c)?, &t.parse(d)?, 2)?;
    standard_armature(&Algebra::tensor(&h1, &h2)?)
}

fn pairing_laws(seed: u64) -> Outcome {
    let mut g = rng(seed);
    let q = FieldTower::rationals();
    let f5t = FieldTower::finite(5)?.adjoin_var("t")?;
    let arms = [
        pairing_instance(&q, "-1", "3", "2", "5")?,
        pairing_instance(&f5t, "2", "t", "t + 1", "3")?,
    ];
    for arm in &arms {
        let els = arm.elements();
        let reps: Vec<Element> = els.iter().map(|e| arm.rep(e)).collect();
        let n = arm.roots();
        let logs: Vec<Vec<u64>> = reps
            .iter()
            .map(|x| {
                reps.iter()
                    .map(|y| {
                        let v = pairing_of(x, y)?;
                        arm.algebra().tower().root_log(&v).map(|k| k % n).ok_or(crate::Error::NotScalar)
                    })
                    .collect::<Result<_>>()
            })
            .collect::<Result<_>>()?;
        for (i, a) in els.iter().enumerate() {
            if logs[i][i] != 0 {
                return Ok((false, format!("<x,x> != 1 at {a:?}")));
            }
            for (j, b) in els.iter().enumerate() {
                if (logs[i][j] + logs[j][i]) % n != 0 {
                    return Ok((false, "not alternating".into()));
                }
                for (k, c) in els.iter().enumerate() {
                    let ab = els.iter().position(|e| *e == arm.add(a, b)).unwrap();
                    if logs[ab][k] != (logs[i][k] + logs[j][k]) % n {
                        return Ok((false, format!("not multiplicative at {a:?}, {b:?}, {c:?}")));
                    }
                }
            }
            if i > 0 && logs[i].iter().all(|&v| v == 0) {
                return Ok((false, format!("{a:?} is in the radical")));
            }
        }
        for _ in 0..100 {
            let s: Vec<_> = (0..arm.rank())
                .map(|_| crate::random::laurent_scalar(arm.algebra().tower(), &mut g, arm.algebra().tower().vars().len()))
                .collect();
            let r = arm.rescaled(&s)?;
            if r.full_table() != arm.full_table() {
                return Ok((false, "rescaled representatives change the pairing".into()));
            }
            let x = r.rep(&els[1]);
            let y = r.rep(&els[els.len() - 1]);
            if pairing_of(&x, &y)? != arm.pairing(&els[1], &els[els.len() - 1]) {
                return Ok((false, "rescaled commutator differs".into()));
            }
        }
    }
    Ok((true, "Q and F5(t), 16 classes each, 100 rescalings".into()))
}

pub(crate) fn biquaternion() -> Result<(Algebra, [Element; 4])> {
    let qt = FieldTower::rationals().adjoin_var("t")?;
    let t = qt.var("t")?;
    let h1 = symbol_algebra(&qt, &qt.int(-1), &qt.int(-1), 2)?;
    let h2 = symbol_algebra(&qt, &qt.int(-1), &t, 2)?;
    let a = Algebra::tensor(&h1, &h2)?;
    let (i1, j1) = symbol_generators(&h1)?;
    let (i2, j2) = symbol_generators(&h2)?;
    let g = [
        a.pure_tensor(&[i1, h2.one()]),
        a.pure_tensor(&[j1, h2.one()]),
        a.pure_tensor(&[h1.one(), i2]),
        a.pure_tensor(&[h1.one(), j2]),
    ];
    Ok((a, g))
}

fn biquaternion_decomposition() -> Outcome {
    let (a, _) = biquaternion()?;
    let d = decompose_by_armature(&standard_armature(&a)?)?;
    let degrees: Vec<u64> = d.factors.iter().map(|f| f.n).collect();
    let pass = degrees == [2, 2] && d.report.pass && d.report.pairs_checked == 256;
    Ok((pass, format!("factor degrees {degrees:?}, {} pairs checked", d.report.pairs_checked)))
}

fn crossed(a: &Algebra, gens: Vec<(Element, u64)>, vars: &[&str]) -> Result<CrossedProduct> {
    let emb = EmbeddedKummer::new(a, gens)?;
    let lift = skolem_noether_lift(&emb)?;
    build_crossed(&lift, vars)
}

/// The crossed products used by several checks: `(3, 7)` with `r = 1`, the
/// biquaternion with `r = 1, 2`, and `(3, 5)_8` over `F17` with `r = 1`.
pub(crate) fn crossed_instances() -> Result<Vec<(String, CrossedProduct)>> {
    let q = FieldTower::rationals();
    let h = symbol_algebra(&q, &q.int(3), &q.int(7), 2)?;
    let (i, _) = symbol_generators(&h)?;
    let (b, g) = biquaternion()?;
    let f = FieldTower::finite(17)?.adjoin_zeta(8)?;
    let e8 = symbol_algebra(&f, &f.int(3), &f.int(5), 8)?;
    let (x8, _) = symbol_generators(&e8)?;
    Ok(vec![
        ("deg 2, r = 1".into(), crossed(&h, vec![(i, 2)], &["t1"])?),
        ("deg 4, r = 1".into(), crossed(&b, vec![(g[0].clone(), 2)], &["t1"])?),
        (
            "deg 4, r = 2".into(),
            crossed(&b, vec![(g[0].clone(), 2), (g[3].clone(), 2)], &["t1", "t2"])?,
        ),
        ("deg 8, r = 1".into(), crossed(&e8, vec![(x8, 8)], &["t1"])?),
    ])
}

fn crossed_laws(seed: u64) -> Outcome {
    let mut g = rng(seed);
    let mut notes = Vec::new();
    for (name, cp) in crossed_instances()? {
        let e = cp.algebra();
        let deg = cp.lift().algebra().degree()?;
        let blocks_ok = e.dim() == cp.group().len() * cp.centralizer_dim() && e.dim() == deg * deg;
        if !blocks_ok || e.associativity_failure().is_some() {
            return Ok((false, format!("{name}: structure check failed")));
        }
        let l = valuation_laws(&cp, 1000, &mut g)?;
        if !l.pass {
            return Ok((false, format!("{name}: {:?}", l.first_failure)));
        }
        notes.push(name);
    }
    Ok((true, format!("1000 pairs each on {}", notes.join("; "))))
}

fn quaternion_and_biquaternion() -> Result<Vec<(CrossedProduct, Armature)>> {
    let inst = crossed_instances()?;
    let mut out = Vec::new();
    for (_, cp) in inst.into_iter().take(3) {
        let arm = standard_armature(cp.lift().algebra())?;
        out.push((cp, arm));
    }
    Ok(out)
}

fn nu_round_trip() -> Outcome {
    for (cp, arm) in quaternion_and_biquaternion()? {
        let lifted = lift_armature(&cp, &arm)?;
        let back = nu_map(&cp, &lifted.armature)?;
        let same_gens = arm
            .generators()
            .iter()
            .zip(back.armature.generators())
            .all(|(x, y)| proportional(y, x).is_some());
        if !(lifted.report.pass && back.isometric && same_gens && back.armature.full_table() == arm.full_table()) {
            return Ok((false, format!("round trip failed for dim {}", cp.algebra().dim())));
        }
    }
    Ok((true, "(3,7) with r = 1; biquaternion with r = 1, 2".into()))
}

fn subfield_witness() -> Outcome {
    let inst = quaternion_and_biquaternion()?;
    let (cp0, _) = &inst[0];
    let lp = cp0.field();
    let a = cp0.lift().algebra();
    let (i, j) = symbol_generators(a)?;
    let target = symbol_algebra(lp, &lp.int(3), &(&lp.int(7) * &cp0.t(0)), 2)?;
    let ii = cp0.pure(&i, &[0])?;
    let jy = cp0.pure(&j, &[1])?;
    let images = vec![cp0.algebra().one(), jy.clone(), ii.clone(), &ii * &jy];
    let base_case = verify_isomorphism(&target, cp0.algebra(), &images)?.pass;
    let mut params = Vec::new();
    for (cp, arm) in &inst[1..] {
        let d = decompose_with_subfields(cp, arm)?;
        if !(d.report.pass && d.e_report.pass) {
            return Ok((false, "decomposition witness failed".into()));
        }
        for (k, c) in d.cyclic.iter().enumerate() {
            if c.e_parameter != &cp.field().embed(&c.delta)? * &cp.t(k) {
                return Ok((false, format!("E' parameter {} is not delta*t", c.e_parameter)));
            }
            params.push(c.e_parameter.to_string());
        }
    }
    Ok((base_case, format!("E' parameters {}", params.join(", "))))
}

fn residue() -> Outcome {
    for (cp, arm) in quaternion_and_biquaternion()?.into_iter().skip(1) {
        let lifted = lift_armature(&cp, &arm)?;
        let res = residue_armature(&cp, &lifted.armature)?;
        if !(res.armature.order() == cp.centralizer_dim() && res.report.pass && res.radical_is_kum) {
            return Ok((false, format!("r = {}", cp.vars().len())));
        }
    }
    Ok((true, "biquaternion with r = 1, 2".into()))
}

fn brauer() -> Outcome {
    let q = FieldTower::rationals();
    let h = symbol_algebra(&q, &q.int(2), &q.int(5), 2)?;
    let (i, _) = symbol_generators(&h)?;
    let rep = brauer_witness_smallscale(&crossed(&h, vec![(i, 2)], &["t1"])?)?;
    let pass = rep.pass && rep.idempotents_centralize && rep.conjugation_invariant;
    Ok((pass, format!("dim R' = {}, centralizer {}", rep.dim_r, rep.centralizer_dim)))
}

pub(crate) fn random_laurent(l: &LaurentAlgebra, g: &mut Rng64, terms: usize) -> LaurentElement {
    let d = l.coefficients();
    let t = d.tower();
    loop {
        let mut acc = l.zero();
        for _ in 0..terms {
            let c: Vec<_> = (0..d.dim()).map(|_| t.int(g.gen_range(-2..=2))).collect();
            let x = d.element(c).unwrap();
            acc = &acc + &l.monomial(&x, g.gen_range(-2..=2), g.gen_range(-2..=2));
        }
        if !acc.is_zero() {
            return acc;
        }
    }
}

fn laurent_laws(seed: u64) -> Outcome {
    let mut g = rng(seed);
    let q = FieldTower::rationals();
    let d = symbol_algebra(&q, &q.int(-1), &q.int(-1), 2)?;
    let (i, j) = symbol_generators(&d)?;
    let ij = &i * &j;
    let l = LaurentAlgebra::new(&d);
    for _ in 0..1000 {
        let f = random_laurent(&l, &mut g, 3);
        let h = random_laurent(&l, &mut g, 3);
        if (&f * &h).leading_term()? != &f.leading_term()? * &h.leading_term()? {
            return Ok((false, format!("l(fh) != l(f)l(h) for {f} and {h}")));
        }
        let c: Vec<_> = (0..4).map(|_| q.int(g.gen_range(-3..=3))).collect();
        let x = d.element(c)?;
        if !x.is_zero() && l.constant(&x).leading_term()? != l.constant(&x) {
            return Ok((false, "l(d) != d".into()));
        }
        let z = &l.scalar(&q.int(g.gen_range(1..=3)), g.gen_range(-2..=2), g.gen_range(-2..=2))
            + &l.scalar(&q.int(g.gen_range(1..=3)), 3, 3);
        if !z.leading_term()?.is_central() {
            return Ok((false, "l(z) not in L".into()));
        }
        // y = (z1 j + z2 ij) i^a j^b with z1, z2 in L is a witness for x = i
        let z1 = &l.scalar(&q.int(g.gen_range(-2..=2)), g.gen_range(-1..=1), 0) + &l.scalar(&q.int(1), 2, 1);
        let z2 = l.scalar(&q.int(g.gen_range(1..=2)), g.gen_range(-1..=1), g.gen_range(-1..=1));
        let w = &(&z1 * &l.constant(&j)) + &(&z2 * &l.constant(&ij));
        let y = &w * &l.monomial(&d.one(), g.gen_range(-2..=2), g.gen_range(-2..=2));
        let r = laurent_obstruction_reduce(&i, &y)?;
        if !(&(&i * &r.d) + &(&r.d * &i)).is_zero() || !(&r.d * &r.d).is_scalar() {
            return Ok((false, format!("reduced element {} is not a witness", r.d)));
        }
        let bad = &y + &l.constant(&d.one());
        if laurent_obstruction_reduce(&i, &bad).is_ok() {
            return Ok((false, format!("accepted non-witness {bad}")));
        }
    }
    let spec_non_witness = &l.constant(&j) + &l.i();
    let rejected = laurent_obstruction_reduce(&i, &spec_non_witness).is_err();
    Ok((rejected, "1000 pairs in (-1,-1)x(t1,t2)".into()))
}

fn agree(a: &Verdict, b: &Verdict) -> bool {
    matches!(
        (a, b),
        (Verdict::InQuaternion { .. }, Verdict::InQuaternion { .. })
            | (Verdict::NotInQuaternion(_), Verdict::NotInQuaternion(_))
    )
}

fn trace_agreement(seed: u64) -> Outcome {
    let q = FieldTower::rationals();
    let mut patterns = 0;
    let algs: Vec<Algebra> = (0..=8).map(|n| matrix_algebra(&q, n.max(1))).collect();
    for n in 2..=8usize {
        let a = &algs[n];
        for mask in 1..(1u32 << n) - 1 {
            let signs: Vec<i64> = (0..n).map(|k| if mask >> k & 1 == 1 { -1 } else { 1 }).collect();
            let g = diagonal_sign_matrix(a, &signs)?;
            let rep = membership_square_case(&g, &q.one())?;
            let tr = trace_criterion_char0(&g, &q.one())?;
            if !agree(&rep.verdict, &tr) {
                return Ok((false, format!("disagreement at {signs:?}")));
            }
            patterns += 1;
        }
    }
    let mut rg = rng(seed);
    for _ in 0..100 {
        let n = rg.gen_range(2..=6usize);
        let a = &algs[n];
        let signs: Vec<i64> = loop {
            let s: Vec<i64> = (0..n).map(|_| if rg.gen_bool(0.5) { 1 } else { -1 }).collect();
            if s.iter().any(|&x| x == 1) && s.iter().any(|&x| x == -1) {
                break s;
            }
        };
        let d = diagonal_sign_matrix(a, &signs)?;
        let p = loop {
            let rows: Vec<Vec<_>> = (0..n)
                .map(|_| (0..n).map(|_| q.int(rg.gen_range(-2..=2))).collect())
                .collect();
            let p = matrix_element(a, &rows)?;
            if p.is_invertible() {
                break p;
            }
        };
        let g = &(&p * &d) * &p.inverse()?;
        let rep = membership_square_case(&g, &q.one())?;
        let tr = trace_criterion_char0(&g, &q.one())?;
        if !agree(&rep.verdict, &tr) {
            return Ok((false, format!("disagreement for conjugate {g}")));
        }
    }
    Ok((true, format!("{patterns} sign patterns and 100 conjugates")))
}
