use serde::Serialize;

use super::CrossedProduct;
use crate::error::Result;
use crate::random::{laurent_scalar, sparse_element, Rng64};

/// Counts of random pairs on which the valuation laws held.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct LawReport {
    pub pass: bool,
    pub pairs: usize,
    pub multiplicative: usize,
    pub ultrametric: usize,
    pub distinct_components: usize,
    pub first_failure: Option<String>,
}

/// Check `w(st) = w(s) + w(t)`, `w(s + t) >= min(w(s), w(t))` and that the
/// nonzero components of `s` have pairwise distinct values, on `pairs`
/// random pairs of sparse elements with Laurent coefficients.
pub fn valuation_laws(cp: &CrossedProduct, pairs: usize, rng: &mut Rng64) -> Result<LawReport> {
    let e = cp.algebra();
    let lp = cp.field();
    let r = cp.vars().len();
    let mut rep = LawReport {
        pass: false,
        pairs,
        multiplicative: 0,
        ultrametric: 0,
        distinct_components: 0,
        first_failure: None,
    };
    let fail = |rep: &mut LawReport, msg: String| {
        if rep.first_failure.is_none() {
            rep.first_failure = Some(msg);
        }
    };
    for n in 0..pairs {
        let s = sparse_element(e, rng, 1 + n % 3, |g| laurent_scalar(lp, g, r));
        let t = sparse_element(e, rng, 1 + (n / 3) % 3, |g| laurent_scalar(lp, g, r));
        let ws = cp.valuation_w(&s)?;
        let wt = cp.valuation_w(&t)?;
        let st = &s * &t;
        if !st.is_zero() && cp.valuation_w(&st)? == &ws + &wt {
            rep.multiplicative += 1;
        } else {
            fail(&mut rep, format!("w(st) != w(s) + w(t) for s = {s}, t = {t}"));
        }
        let sum = &s + &t;
        if sum.is_zero() || cp.valuation_w(&sum)? >= ws.clone().min(wt.clone()) {
            rep.ultrametric += 1;
        } else {
            fail(&mut rep, format!("w(s + t) < min for s = {s}, t = {t}"));
        }
        let vals = cp.component_values(&s)?;
        let distinct = vals
            .iter()
            .enumerate()
            .all(|(i, (_, a))| vals[i + 1..].iter().all(|(_, b)| a != b));
        if distinct {
            rep.distinct_components += 1;
        } else {
            fail(&mut rep, format!("two components of {s} share a value"));
        }
    }
    rep.pass = rep.multiplicative == pairs && rep.ultrametric == pairs && rep.distinct_components == pairs;
    Ok(rep)
}
