use serde::Serialize;

use super::CrossedProduct;
use crate::algebra::{centralizer, Algebra, Element};
use crate::error::{Error, Result};
use crate::linalg;
use crate::symbols::{cyclic_algebra, kummer_extension};

/// Checks made on `E' -> R' = A_{L'} (x) N'`.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct BrauerReport {
    pub pass: bool,
    pub dim_r: usize,
    pub dim_e: usize,
    pub embedding_injective: bool,
    pub embedding_multiplicative: bool,
    pub idempotents_sum_to_one: bool,
    pub idempotents_orthogonal: bool,
    pub idempotents_centralize: bool,
    pub conjugation_invariant: bool,
    pub centralizer_dim: usize,
    pub expected_centralizer_dim: usize,
    pub family_in_centralizer: bool,
}

/// Largest `dim A` and rank accepted by [`brauer_witness_smallscale`].
pub const MAX_DIM: usize = 16;
pub const MAX_RANK: usize = 2;

/// Materialize `R' = A_{L'} (x) N'` with `N' = (x)_i (k_i (x) L', s_i, t_i)`,
/// embed `E'` by `c z_s (x) y_s -> c z_s (x) y_s`, and check the separability
/// idempotents `e_t` of `M (x) M` against it.
pub fn brauer_witness_smallscale(cp: &CrossedProduct) -> Result<BrauerReport> {
    let lift = cp.lift();
    let emb = lift.embedded();
    let a = lift.algebra();
    let r = emb.rank();
    if a.dim() > MAX_DIM || r > MAX_RANK {
        return Err(Error::ScaleExceeded(format!(
            "dim A = {} and r = {r}; at most {MAX_DIM} and {MAX_RANK}",
            a.dim()
        )));
    }
    let lp = cp.field();
    let al = a.base_change(lp)?;
    let al = if al.is_factored() { al.densify()? } else { al };
    let mut parts = vec![al.clone()];
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for i in 0..r {
        let b = &emb.field().radicands()[i];
        let n = emb.degrees()[i];
        let k = kummer_extension(lp, std::slice::from_ref(b), &[n])?;
        let ca = cyclic_algebra(&k, &cp.t(i))?;
        xs.push(ca.x());
        ys.push(ca.y());
        parts.push(ca.alg);
    }
    let rr = Algebra::tensor_all(&parts)?;
    let to_al = |x: &Element| -> Result<Element> {
        al.element(x.coords().iter().map(|c| lp.embed(c)).collect::<Result<_>>()?)
    };
    let one_parts: Vec<Element> = parts.iter().map(|p| p.one()).collect();

    let e = cp.algebra();
    let dimc = cp.centralizer_dim();
    let cbasis = lift.centralizer().basis();
    let mut images = Vec::with_capacity(e.dim());
    for idx in 0..e.dim() {
        let s = &cp.group()[idx / dimc];
        let mut pt = vec![to_al(&(&cbasis[idx % dimc] * lift.z_sigma(s)))?];
        for i in 0..r {
            pt.push(ys[i].pow(s[i] as i64)?);
        }
        images.push(rr.pure_tensor(&pt));
    }
    let phi = |x: &Element| -> Element {
        let mut acc = rr.zero();
        for k in x.support() {
            acc = &acc + &images[k].scale(x.coord(k));
        }
        acc
    };
    let embedding_injective =
        linalg::rank(images.iter().map(|x| x.coords().to_vec()).collect(), rr.dim()) == e.dim();
    let mut embedding_multiplicative = phi(&e.one()) == rr.one();
    'outer: for p in 0..e.dim() {
        for q in 0..e.dim() {
            if phi(&(&e.basis(p) * &e.basis(q))) != &images[p] * &images[q] {
                embedding_multiplicative = false;
                break 'outer;
            }
        }
    }

    // e_t = prod_i (1/n_i) sum_k x_i^k (x) t(x_i^-k)
    let mut family = Vec::new();
    for t in cp.group() {
        let mut et = rr.one();
        for i in 0..r {
            let n = emb.degrees()[i];
            let zeta = &emb.field().zetas()[i];
            let xa = to_al(&emb.images()[i])?;
            let xinv = xs[i].inverse()?;
            let mut s = rr.zero();
            for k in 0..n as i64 {
                let mut pt = one_parts.clone();
                pt[0] = xa.pow(k)?;
                let tw = lp.embed(&zeta.pow(-(k * t[i] as i64)))?;
                pt[i + 1] = xinv.pow(k)?.scale(&tw);
                s = &s + &rr.pure_tensor(&pt);
            }
            et = &et * &s.scale(&lp.int(n as i64).inv()?);
        }
        family.push(et);
    }
    let mut sum = rr.zero();
    let mut idempotents_orthogonal = true;
    for (u, eu) in family.iter().enumerate() {
        sum = &sum + eu;
        for (v, ev) in family.iter().enumerate() {
            let p = eu * ev;
            if (u == v && &p != eu) || (u != v && !p.is_zero()) {
                idempotents_orthogonal = false;
            }
        }
    }
    let idempotents_sum_to_one = sum == rr.one();

    let mut gens: Vec<Element> = (0..dimc).map(|k| images[k].clone()).collect();
    for i in 0..r {
        let mut unit = vec![0; r];
        unit[i] = 1;
        gens.push(phi(&cp.zy(&unit)));
    }
    let idempotents_centralize = family
        .iter()
        .all(|et| gens.iter().all(|g| (et * g) == (g * et)));
    let conjugation_invariant = cp.group().iter().all(|s| {
        let g = phi(&cp.zy(s));
        let ginv = g.inverse();
        ginv.is_ok_and(|gi| family.iter().all(|et| &(&g * et) * &gi == *et))
    });
    let cent = centralizer(&rr, &gens)?;
    let expected = emb.field().dim() * emb.field().dim();
    let family_in_centralizer = family.iter().all(|et| cent.contains(et));
    let pass = embedding_injective
        && embedding_multiplicative
        && idempotents_sum_to_one
        && idempotents_orthogonal
        && idempotents_centralize
        && conjugation_invariant
        && cent.dim() == expected
        && family_in_centralizer;
    Ok(BrauerReport {
        pass,
        dim_r: rr.dim(),
        dim_e: e.dim(),
        embedding_injective,
        embedding_multiplicative,
        idempotents_sum_to_one,
        idempotents_orthogonal,
        idempotents_centralize,
        conjugation_invariant,
        centralizer_dim: cent.dim(),
        expected_centralizer_dim: expected,
        family_in_centralizer,
    })
}

#[cfg(test)]
mod tests {
    use super::super::{build_crossed, skolem_noether_lift, EmbeddedKummer};
    use super::*;
    use crate::fields::FieldTower;
    use crate::symbols::{symbol_algebra, symbol_generators};

    #[test]
    fn quaternion_witness() {
        let q = FieldTower::rationals();
        let h = symbol_algebra(&q, &q.int(2), &q.int(5), 2).unwrap();
        let (i, _) = symbol_generators(&h).unwrap();
        let emb = EmbeddedKummer::new(&h, vec![(i, 2)]).unwrap();
        let lift = skolem_noether_lift(&emb).unwrap();
        let cp = build_crossed(&lift, &["t1"]).unwrap();
        let rep = brauer_witness_smallscale(&cp).unwrap();
        assert_eq!(rep.dim_r, 16);
        assert!(rep.pass, "{rep:?}");
    }
}
