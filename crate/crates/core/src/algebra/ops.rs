use serde::Serialize;

use super::{Algebra, Element, Kind, Presentation, Subspace};
use crate::error::{Error, Result};
use crate::fields::Scalar;
use crate::linalg;

impl Element {
    /// Matrix of left multiplication by `self`: row `k`, column `j` is the
    /// `e_k` coordinate of `self * e_j`.
    pub fn left_matrix(&self) -> Vec<Vec<Scalar>> {
        let a = self.parent();
        let n = a.dim();
        let mut m = vec![vec![a.tower().zero(); n]; n];
        for i in self.support() {
            let c = self.coord(i);
            for j in 0..n {
                for (k, s) in a.basis_product(i, j) {
                    m[k][j] = &m[k][j] + &(c * &s);
                }
            }
        }
        m
    }

    /// Matrix of right multiplication by `self`.
    pub fn right_matrix(&self) -> Vec<Vec<Scalar>> {
        let a = self.parent();
        let n = a.dim();
        let mut m = vec![vec![a.tower().zero(); n]; n];
        for i in self.support() {
            let c = self.coord(i);
            for j in 0..n {
                for (k, s) in a.basis_product(j, i) {
                    m[k][j] = &m[k][j] + &(c * &s);
                }
            }
        }
        m
    }

    /// Two-sided inverse, found by solving `x y = 1` and checking `y x = 1`.
    pub fn inverse(&self) -> Result<Element> {
        if self.is_zero() {
            return Err(Error::NotInvertible);
        }
        let a = self.parent();
        let one = a.one();
        let y = linalg::solve(a.tower(), &self.left_matrix(), one.coords())
            .ok_or(Error::NotInvertible)?;
        let y = Element::new(a, y);
        if &y * self == one {
            Ok(y)
        } else {
            Err(Error::NotInvertible)
        }
    }

    pub fn is_invertible(&self) -> bool {
        self.inverse().is_ok()
    }

    /// `dim_F (x A)`.
    pub fn left_ideal_dim(&self) -> usize {
        linalg::rank(self.left_matrix(), self.parent().dim())
    }

    pub fn reduced_trace(&self) -> Result<Scalar> {
        let trd = self.parent().basis_trd()?;
        let mut acc = self.parent().tower().zero();
        for i in self.support() {
            if !trd[i].is_zero() {
                acc = &acc + &(self.coord(i) * &trd[i]);
            }
        }
        Ok(acc)
    }
}

pub(super) fn compute_basis_trd(a: &Algebra) -> Result<Vec<Scalar>> {
    let t = a.tower();
    let n = a.dim();
    if let Kind::Tensor { factors } = &a.0.kind {
        let parts: Vec<Vec<Scalar>> = factors
            .iter()
            .map(|f| f.basis_trd().cloned())
            .collect::<Result<_>>()?;
        return Ok((0..n)
            .map(|idx| {
                let ix = Algebra::split_index(factors, idx);
                ix.iter()
                    .zip(&parts)
                    .fold(t.one(), |acc, (&k, p)| &acc * &p[k])
            })
            .collect());
    }
    match a.presentation() {
        Presentation::Matrix { n: m } => Ok((0..n)
            .map(|i| if i / m == i % m { t.one() } else { t.zero() })
            .collect()),
        Presentation::Symbol { n: deg, .. } => Ok((0..n)
            .map(|i| if i == 0 { t.int(*deg as i64) } else { t.zero() })
            .collect()),
        Presentation::Commutative if n > 1 => {
            Err(Error::NotCentralSimple("commutative algebra of dimension > 1".into()))
        }
        _ => {
            let deg = a.degree()?;
            let p = t.characteristic();
            if p != 0 && deg as u64 % p == 0 {
                return Err(Error::NotCentralSimple(format!(
                    "no reduced trace from left multiplication: characteristic {p} divides degree {deg}"
                )));
            }
            let inv = t.int(deg as i64).inv()?;
            Ok((0..n)
                .map(|i| {
                    let mut tr = t.zero();
                    for k in 0..n {
                        for (idx, s) in a.basis_product(i, k) {
                            if idx == k {
                                tr = &tr + &s;
                            }
                        }
                    }
                    &tr * &inv
                })
                .collect())
        }
    }
}

/// A subalgebra with its echelon basis and the products of basis elements
/// expressed in that basis.
#[derive(Clone, Debug)]
pub struct Subalgebra {
    parent: Algebra,
    space: Subspace,
    basis: Vec<Element>,
    alg: Algebra,
}

impl Subalgebra {
    /// Subalgebra spanned by the given vectors; fails if the span is not
    /// closed under multiplication or misses the unity.
    pub fn from_span(parent: &Algebra, vectors: Vec<Vec<Scalar>>) -> Result<Self> {
        let t = parent.tower();
        let space = Subspace::span(t, parent.dim(), vectors);
        let basis: Vec<Element> = space
            .basis()
            .iter()
            .map(|r| Element::new(parent, r.clone()))
            .collect();
        let one = space
            .coordinates(parent.one().coords())
            .ok_or_else(|| Error::InvalidAlgebra("subspace misses the unity".into()))?;
        let d = basis.len();
        let mut table = vec![vec![Vec::new(); d]; d];
        for i in 0..d {
            for j in 0..d {
                let p = &basis[i] * &basis[j];
                let c = space.coordinates(p.coords()).ok_or_else(|| {
                    Error::InvalidAlgebra(format!("subspace not closed: product of basis {i} and {j}"))
                })?;
                table[i][j] = c
                    .into_iter()
                    .enumerate()
                    .filter(|(_, s)| !s.is_zero())
                    .collect();
            }
        }
        let labels = basis.iter().map(|b| b.to_string()).collect();
        let alg = Algebra::from_table(t, labels, table, one, Presentation::General, None, false)?;
        Ok(Subalgebra {
            parent: parent.clone(),
            space,
            basis,
            alg,
        })
    }

    /// Smallest subalgebra containing the generators.
    pub fn generated_by(parent: &Algebra, gens: &[Element]) -> Result<Self> {
        let t = parent.tower();
        let n = parent.dim();
        let mut span = Subspace::span(t, n, vec![parent.one().coords().to_vec()]);
        let mut frontier: Vec<Element> = vec![parent.one()];
        loop {
            let mut added = Vec::new();
            for f in &frontier {
                for g in gens {
                    let p = f * g;
                    if !span.contains(p.coords()) {
                        let mut rows = span.basis().to_vec();
                        rows.push(p.coords().to_vec());
                        span = Subspace::span(t, n, rows);
                        added.push(p);
                    }
                }
            }
            if added.is_empty() {
                break;
            }
            frontier = added;
        }
        Subalgebra::from_span(parent, span.basis().to_vec())
    }

    pub fn parent(&self) -> &Algebra {
        &self.parent
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Element] {
        &self.basis
    }

    pub fn space(&self) -> &Subspace {
        &self.space
    }

    /// The subalgebra as an algebra in its own right, on the echelon basis.
    pub fn as_algebra(&self) -> &Algebra {
        &self.alg
    }

    pub fn contains(&self, x: &Element) -> bool {
        self.space.contains(x.coords())
    }

    /// Element of [`Self::as_algebra`] corresponding to `x`.
    pub fn restrict(&self, x: &Element) -> Option<Element> {
        let c = self.space.coordinates(x.coords())?;
        Some(Element::new(&self.alg, c))
    }

    /// Image in the parent of an element of [`Self::as_algebra`].
    pub fn lift(&self, y: &Element) -> Element {
        let mut acc = self.parent.zero();
        for i in y.support() {
            acc = &acc + &self.basis[i].scale(y.coord(i));
        }
        acc
    }
}

/// `{x in A : x s = s x for all s}`.
pub fn centralizer(a: &Algebra, set: &[Element]) -> Result<Subalgebra> {
    let n = a.dim();
    let mut rows = Vec::new();
    for s in set {
        if s.parent() != a {
            return Err(Error::ParentMismatch);
        }
        let l = s.left_matrix();
        let r = s.right_matrix();
        for k in 0..n {
            rows.push(l[k].iter().zip(&r[k]).map(|(x, y)| x - y).collect());
        }
    }
    let (rows, _) = linalg::rref(rows, n);
    let kernel = linalg::nullspace(a.tower(), rows, n);
    Subalgebra::from_span(a, kernel)
}

impl Algebra {
    pub fn centralizer(&self, set: &[Element]) -> Result<Subalgebra> {
        centralizer(self, set)
    }

    /// Dimension of the center, computed as the centralizer of the basis.
    pub fn center_dim(&self) -> Result<usize> {
        let basis: Vec<Element> = (0..self.dim()).map(|i| self.basis(i)).collect();
        Ok(centralizer(self, &basis)?.dim())
    }
}

/// Outcome of checking that a linear map on bases is an algebra isomorphism.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct IsoReport {
    pub pass: bool,
    pub bijective: bool,
    pub unity: bool,
    pub pairs_checked: usize,
    /// First basis pair `(i, j)` with `phi(e_i e_j) != phi(e_i) phi(e_j)`.
    pub first_failure: Option<(usize, usize)>,
}

/// Check the map sending basis element `i` of `src` to `images[i]`.
pub fn verify_isomorphism(src: &Algebra, dst: &Algebra, images: &[Element]) -> Result<IsoReport> {
    if src.dim() != dst.dim() {
        return Err(Error::DimensionMismatch(src.dim(), dst.dim()));
    }
    if images.len() != src.dim() {
        return Err(Error::DimensionMismatch(images.len(), src.dim()));
    }
    if images.iter().any(|x| x.parent() != dst) {
        return Err(Error::ParentMismatch);
    }
    let apply = |x: &Element| -> Result<Element> {
        let mut acc = dst.zero();
        for i in x.support() {
            let c = dst.tower().embed(x.coord(i))?;
            acc = &acc + &images[i].scale(&c);
        }
        Ok(acc)
    };
    let n = src.dim();
    let bijective =
        linalg::rank(images.iter().map(|x| x.coords().to_vec()).collect(), n) == n;
    let unity = apply(&src.one())? == dst.one();
    let mut report = IsoReport {
        pass: false,
        bijective,
        unity,
        pairs_checked: 0,
        first_failure: None,
    };
    if !bijective || !unity {
        return Ok(report);
    }
    for i in 0..n {
        for j in 0..n {
            let lhs = apply(&Element::from_terms(src, &src.basis_product(i, j)))?;
            let rhs = &images[i] * &images[j];
            report.pairs_checked += 1;
            if lhs != rhs {
                report.first_failure = Some((i, j));
                return Ok(report);
            }
        }
    }
    report.pass = true;
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{matrix_algebra, matrix_element};
    use crate::fields::FieldTower;

    fn mat(m: &Algebra, rows: &[&[i64]]) -> Element {
        let t = m.tower();
        let rows: Vec<Vec<Scalar>> = rows.iter().map(|r| r.iter().map(|&x| t.int(x)).collect()).collect();
        matrix_element(m, &rows).unwrap()
    }

    #[test]
    fn unipotent_inverse() {
        let q = FieldTower::rationals();
        let m = matrix_algebra(&q, 2);
        let x = mat(&m, &[&[1, 1], &[0, 1]]);
        assert_eq!(x.inverse().unwrap(), mat(&m, &[&[1, -1], &[0, 1]]));
        let d = mat(&m, &[&[1, 0], &[0, -1]]);
        assert_eq!(d.inverse().unwrap(), d);
        assert_eq!(mat(&m, &[&[1, 0], &[0, 0]]).inverse(), Err(Error::NotInvertible));
    }

    #[test]
    fn ideal_dims_in_matrices() {
        let q = FieldTower::rationals();
        let m = matrix_algebra(&q, 2);
        let g = mat(&m, &[&[1, 0], &[0, -1]]);
        let one = m.one();
        assert_eq!((&g - &one).left_ideal_dim(), 2);
        assert_eq!((&g + &one).left_ideal_dim(), 2);
        assert_eq!(g.left_ideal_dim(), 4);
        assert_eq!(g.reduced_trace().unwrap(), q.zero());
        assert_eq!(one.reduced_trace().unwrap(), q.int(2));
    }

    #[test]
    fn centralizer_of_diagonal() {
        let q = FieldTower::rationals();
        let m = matrix_algebra(&q, 3);
        let g = mat(&m, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 2]]);
        let c = centralizer(&m, &[g]).unwrap();
        assert_eq!(c.dim(), 5);
        assert_eq!(m.center_dim().unwrap(), 1);
        assert_eq!(centralizer(&m, &[m.one()]).unwrap().dim(), 9);
    }

    #[test]
    fn iso_checks() {
        let q = FieldTower::rationals();
        let m = matrix_algebra(&q, 2);
        let id: Vec<Element> = (0..4).map(|i| m.basis(i)).collect();
        assert!(verify_isomorphism(&m, &m, &id).unwrap().pass);
        let mut bad = id.clone();
        bad[0] = m.zero();
        let r = verify_isomorphism(&m, &m, &bad).unwrap();
        assert!(!r.pass && !r.unity);
        // transpose is an anti-automorphism, not an automorphism
        let tr: Vec<Element> = vec![m.basis(0), m.basis(2), m.basis(1), m.basis(3)];
        let r = verify_isomorphism(&m, &m, &tr).unwrap();
        assert!(r.bijective && r.unity && !r.pass);
    }

    #[test]
    fn generated_subalgebra() {
        let q = FieldTower::rationals();
        let m = matrix_algebra(&q, 2);
        let x = mat(&m, &[&[0, 1], &[0, 0]]);
        let s = Subalgebra::generated_by(&m, &[x.clone()]).unwrap();
        assert_eq!(s.dim(), 2);
        let y = s.restrict(&x).unwrap();
        assert_eq!(s.lift(&y), x);
        assert!(s.as_algebra().associativity_failure().is_none());
    }
}
