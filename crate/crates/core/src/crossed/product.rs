use serde::Serialize;

use super::SkolemNoetherLift;
use crate::algebra::{Algebra, Element, Presentation, Terms};
use crate::error::{Error, Result};
use crate::fields::{ExponentVector, FieldTower, Scalar};
use crate::symbols::GroupIndex;

/// `E' = sum_s C_{L'} z_s (x) y_s` over `L' = F(t_1, ..., t_r)`, stored as an
/// algebra whose basis element `(s, k)` is `c_k z_s (x) y_s` for the echelon
/// basis `c_k` of `C`, at index `s * dim C + k`. An element is thus its map
/// `s -> C_{L'}` laid out block by block.
#[derive(Clone, Debug)]
pub struct CrossedProduct {
    lift: SkolemNoetherLift,
    vars: Vec<String>,
    lp: FieldTower,
    alg: Algebra,
    dimc: usize,
}

/// The component of an element realizing its valuation: `coeff * t^monomial
/// * z_s (x) y_s` plus terms of larger value, with `coeff` in `C`.
#[derive(Clone, Debug)]
pub struct LeadingTerm {
    pub sigma: GroupIndex,
    pub monomial: ExponentVector,
    pub value: ExponentVector,
    /// Residue coefficient in `C`, as an element of `A`.
    pub coeff: Element,
    /// `coeff * z_s` in `A`.
    pub rep: Element,
}

/// One row of the monomial cocycle table.
#[derive(Clone, Debug, Serialize)]
pub struct CocycleEntry {
    pub sigma: GroupIndex,
    pub tau: GroupIndex,
    pub f: String,
    pub c: String,
}

fn epsilon(n: &[u64], s: &[u64], t: &[u64]) -> Vec<i64> {
    s.iter()
        .zip(t)
        .zip(n)
        .map(|((a, b), &n)| i64::from(a + b >= n))
        .collect()
}

/// Assemble the multiplication
/// `(c z_s y_s)(d z_t y_t) = c (z_s d z_s^-1) c(s,t) f(s,t) z_{st} y_{st}`.
pub fn build_crossed(lift: &SkolemNoetherLift, vars: &[&str]) -> Result<CrossedProduct> {
    let emb = lift.embedded();
    let r = emb.rank();
    if vars.len() != r {
        return Err(Error::InvalidTower(format!(
            "{} variables given for a Kummer field of rank {r}",
            vars.len()
        )));
    }
    let report = lift.check();
    if !report.pass {
        return Err(Error::InvalidAlgebra(format!("lift fails its invariants: {report:?}")));
    }
    let f = lift.algebra().tower();
    let lp = f.adjoin_vars(vars)?;
    let csub = lift.centralizer();
    let calg = csub.as_algebra();
    let dimc = csub.dim();
    let group = lift.group();
    let gsz = group.len();
    let n = emb.degrees();

    let restrict = |x: &Element| -> Result<Element> {
        csub.restrict(x)
            .ok_or_else(|| Error::InvalidAlgebra(format!("{x} is not in the centralizer")))
    };
    let mut phi = Vec::with_capacity(gsz);
    for s in group {
        let row: Result<Vec<Element>> = csub.basis().iter().map(|b| restrict(&lift.act(s, b))).collect();
        phi.push(row?);
    }
    let mut coc = Vec::with_capacity(gsz);
    for s in group {
        let row: Result<Vec<Element>> = group.iter().map(|t| restrict(&lift.cocycle(s, t))).collect();
        coc.push(row?);
    }

    let dim = gsz * dimc;
    let mut table: Vec<Vec<Terms>> = vec![vec![Vec::new(); dim]; dim];
    for (a, s) in group.iter().enumerate() {
        for (b, t) in group.iter().enumerate() {
            let st = emb.compose(s, t);
            let base = lift.group_index(&st) * dimc;
            let mono = Scalar::monomial(&lp, &epsilon(n, s, t));
            for k in 0..dimc {
                for l in 0..dimc {
                    let p = &(&calg.basis(k) * &phi[a][l]) * &coc[a][b];
                    let terms = p
                        .support()
                        .map(|m| Ok((base + m, &lp.embed(p.coord(m))? * &mono)))
                        .collect::<Result<Terms>>()?;
                    table[a * dimc + k][b * dimc + l] = terms;
                }
            }
        }
    }
    let mut one = vec![lp.zero(); dim];
    for (k, c) in calg.one().coords().iter().enumerate() {
        one[k] = lp.embed(c)?;
    }
    let labels = (0..dim)
        .map(|idx| {
            let s = &group[idx / dimc];
            let c = calg.label(idx % dimc);
            if s.iter().all(|&m| m == 0) {
                c.to_string()
            } else {
                let c = if c.contains(' ') { format!("({c})") } else { c.to_string() };
                let s: Vec<String> = s.iter().map(|m| m.to_string()).collect();
                format!("{c}*Z({})", s.join(","))
            }
        })
        .collect();
    let deg = lift.algebra().degree()?;
    let alg = Algebra::from_table(&lp, labels, table, one, Presentation::General, Some(deg), false)?;
    Ok(CrossedProduct {
        lift: lift.clone(),
        vars: vars.iter().map(|s| s.to_string()).collect(),
        lp,
        alg,
        dimc,
    })
}

impl CrossedProduct {
    pub fn algebra(&self) -> &Algebra {
        &self.alg
    }

    pub fn lift(&self) -> &SkolemNoetherLift {
        &self.lift
    }

    pub fn field(&self) -> &FieldTower {
        &self.lp
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn group(&self) -> &[GroupIndex] {
        self.lift.group()
    }

    pub fn centralizer_dim(&self) -> usize {
        self.dimc
    }

    /// `t_i` in `L'`.
    pub fn t(&self, i: usize) -> Scalar {
        let mut e = vec![0; self.vars.len()];
        e[i] = 1;
        Scalar::monomial(&self.lp, &e)
    }

    /// `f(s, t)` as a monomial of `L'`.
    pub fn f(&self, s: &[u64], t: &[u64]) -> Scalar {
        Scalar::monomial(&self.lp, &epsilon(self.lift.embedded().degrees(), s, t))
    }

    /// Table of `f(s, t)` and `c(s, t)` over the group.
    pub fn cocycle_table(&self) -> Vec<CocycleEntry> {
        let mut out = Vec::new();
        for s in self.group() {
            for t in self.group() {
                out.push(CocycleEntry {
                    sigma: s.clone(),
                    tau: t.clone(),
                    f: self.f(s, t).to_string(),
                    c: self.lift.cocycle(s, t).to_string(),
                });
            }
        }
        out
    }

    /// `c z_s (x) y_s` for `c` in `C` (given in `A`) scaled by `k` in `L'`.
    pub fn term(&self, c: &Element, s: &[u64], k: &Scalar) -> Result<Element> {
        let cc = self
            .lift
            .centralizer()
            .restrict(c)
            .ok_or_else(|| Error::InvalidAlgebra(format!("{c} is not in the centralizer")))?;
        let base = self.lift.group_index(s) * self.dimc;
        let k = self.lp.embed(k)?;
        let mut coords = vec![self.lp.zero(); self.alg.dim()];
        for m in cc.support() {
            coords[base + m] = &self.lp.embed(cc.coord(m))? * &k;
        }
        self.alg.element(coords)
    }

    /// `x (x) y_s` for `x` in `C z_s`.
    pub fn pure(&self, x: &Element, s: &[u64]) -> Result<Element> {
        let c = x * self.lift.z_sigma_inv(s);
        self.term(&c, s, &self.lp.one())
    }

    /// `z_s (x) y_s`.
    pub fn zy(&self, s: &[u64]) -> Element {
        let one = self.lift.algebra().one();
        self.term(&one, s, &self.lp.one()).unwrap()
    }

    /// Coefficients of the `s`-component over the basis of `C`.
    pub fn component<'a>(&self, x: &'a Element, s: &[u64]) -> &'a [Scalar] {
        let base = self.lift.group_index(s) * self.dimc;
        &x.coords()[base..base + self.dimc]
    }

    /// `v(c)` and the residue coefficient for a nonzero `c` in `C_{L'}`.
    fn coefficient_valuation(&self, c: &[Scalar]) -> Result<Option<(ExponentVector, Element)>> {
        let f = self.lift.algebra().tower();
        let r = self.vars.len();
        let mut best: Option<(ExponentVector, Element)> = None;
        for (k, a) in c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let (v, lead) = a.leading(r)?;
            let term = self.lift.centralizer().basis()[k].scale(&f.embed(&lead)?);
            best = match best {
                None => Some((v, term)),
                Some((bv, bt)) => match v.cmp(&bv) {
                    std::cmp::Ordering::Less => Some((v, term)),
                    std::cmp::Ordering::Equal => Some((bv, &bt + &term)),
                    std::cmp::Ordering::Greater => Some((bv, bt)),
                },
            };
        }
        Ok(best)
    }

    /// The unique component of minimal value `v(c_s) + (m_1/n_1, ..., m_r/n_r)`.
    pub fn leading_term(&self, x: &Element) -> Result<LeadingTerm> {
        if x.parent() != &self.alg {
            return Err(Error::ParentMismatch);
        }
        let n = self.lift.embedded().degrees();
        let mut best: Option<LeadingTerm> = None;
        for s in self.group() {
            let Some((v, coeff)) = self.coefficient_valuation(self.component(x, s))? else {
                continue;
            };
            let value = &v + &ExponentVector::new(
                s.iter().map(|&m| m as i64).collect(),
                n.to_vec(),
            );
            if best.as_ref().is_some_and(|b| b.value <= value) {
                continue;
            }
            let rep = &coeff * self.lift.z_sigma(s);
            best = Some(LeadingTerm {
                sigma: s.clone(),
                monomial: v,
                value,
                coeff,
                rep,
            });
        }
        best.ok_or(Error::ZeroElement)
    }

    /// `w(x) = min_s w(c_s z_s (x) y_s)`.
    pub fn valuation_w(&self, x: &Element) -> Result<ExponentVector> {
        Ok(self.leading_term(x)?.value)
    }

    /// Values of the nonzero components; they are pairwise distinct modulo `Z^r`.
    pub fn component_values(&self, x: &Element) -> Result<Vec<(GroupIndex, ExponentVector)>> {
        let n = self.lift.embedded().degrees();
        let mut out = Vec::new();
        for s in self.group() {
            if let Some((v, _)) = self.coefficient_valuation(self.component(x, s))? {
                let y = ExponentVector::new(s.iter().map(|&m| m as i64).collect(), n.to_vec());
                out.push((s.clone(), &v + &y));
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::super::{skolem_noether_lift, EmbeddedKummer};
    use super::*;
    use crate::algebra::verify_isomorphism;
    use crate::symbols::{symbol_algebra, symbol_generators};

    fn quaternion_case() -> (CrossedProduct, Element, Element) {
        let q = FieldTower::rationals();
        let h = symbol_algebra(&q, &q.int(2), &q.int(5), 2).unwrap();
        let (i, j) = symbol_generators(&h).unwrap();
        let emb = EmbeddedKummer::new(&h, vec![(i.clone(), 2)]).unwrap();
        let lift = skolem_noether_lift(&emb).unwrap();
        (build_crossed(&lift, &["t1"]).unwrap(), i, j)
    }

    #[test]
    fn quaternion_crossed_product_is_symbol() {
        let (cp, i, _) = quaternion_case();
        let e = cp.algebra();
        assert_eq!(e.dim(), 4);
        assert!(e.associativity_failure().is_none());
        let ii = cp.term(&i, &[0], &cp.field().one()).unwrap();
        let jy = cp.zy(&[1]);
        let lp = cp.field();
        let bt = &lp.int(5) * &cp.t(0);
        let target = symbol_algebra(lp, &lp.int(2), &bt, 2).unwrap();
        let images = vec![e.one(), jy.clone(), ii.clone(), &ii * &jy];
        assert!(verify_isomorphism(&target, e, &images).unwrap().pass);
    }

    #[test]
    fn valuations_of_generators() {
        let (cp, _, _) = quaternion_case();
        let w = cp.valuation_w(&cp.zy(&[1])).unwrap();
        assert_eq!(w, ExponentVector::new(vec![1], vec![2]));
        let t = cp.algebra().scalar(&cp.t(0));
        assert_eq!(cp.valuation_w(&t).unwrap(), ExponentVector::integral(vec![1]));
        let s = &cp.zy(&[1]) + &t;
        assert_eq!(cp.leading_term(&s).unwrap().sigma, vec![1]);
        assert_eq!(cp.valuation_w(&cp.algebra().zero()), Err(Error::ZeroElement));
    }
}
