//! Finite-dimensional associative algebras given by structure constants on a
//! distinguished basis, optionally kept as an unexpanded tensor product.

mod element;
mod ops;
mod subspace;

use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::fields::{FieldTower, Scalar};

pub use element::Element;
pub use ops::{centralizer, verify_isomorphism, IsoReport, Subalgebra};
pub use subspace::Subspace;

/// Sparse product of two basis elements.
pub type Terms = Vec<(usize, Scalar)>;

/// How the algebra was presented; used by the reduced trace and by
/// constructions that need a split or symbol form.
#[derive(Clone, Debug)]
pub enum Presentation {
    General,
    /// `M_n(F)` on matrix units `e_{rc}` at index `r * n + c`.
    Matrix { n: usize },
    /// `(a, b)_zeta` on `i^x j^y` at index `x * n + y`.
    Symbol {
        n: u64,
        a: Scalar,
        b: Scalar,
        zeta: Scalar,
    },
    Commutative,
}

enum Kind {
    Dense {
        table: Vec<Vec<Terms>>,
        one: Vec<Scalar>,
    },
    Tensor {
        factors: Vec<Algebra>,
    },
}

struct Inner {
    tower: FieldTower,
    dim: usize,
    labels: Vec<String>,
    kind: Kind,
    presentation: Presentation,
    degree: Option<usize>,
    /// Basis products for small tensor products, built on first use.
    cache: OnceLock<Vec<Vec<Terms>>>,
    trd: OnceLock<std::result::Result<Vec<Scalar>, Error>>,
}

/// Shared handle to an algebra; clones are cheap and compare by identity.
#[derive(Clone)]
pub struct Algebra(Arc<Inner>);

impl PartialEq for Algebra {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }
}

impl fmt::Debug for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Algebra(dim {} over {})", self.dim(), self.tower().describe())
    }
}

const DENSE_CACHE_LIMIT: usize = 64;

impl Algebra {
    /// Dense algebra from a full table of basis products and the coordinates
    /// of the unity. Associativity is checked on every basis triple when
    /// `check` is set.
    pub fn from_table(
        tower: &FieldTower,
        labels: Vec<String>,
        table: Vec<Vec<Terms>>,
        one: Vec<Scalar>,
        presentation: Presentation,
        degree: Option<usize>,
        check: bool,
    ) -> Result<Self> {
        let dim = labels.len();
        if table.len() != dim || table.iter().any(|r| r.len() != dim) || one.len() != dim {
            return Err(Error::InvalidAlgebra("table shape does not match basis".into()));
        }
        let alg = Algebra(Arc::new(Inner {
            tower: tower.clone(),
            dim,
            labels,
            kind: Kind::Dense { table, one },
            presentation,
            degree,
            cache: OnceLock::new(),
            trd: OnceLock::new(),
        }));
        if check {
            if let Some((i, j, k)) = alg.associativity_failure() {
                return Err(Error::InvalidAlgebra(format!(
                    "not associative on ({}, {}, {})",
                    alg.label(i),
                    alg.label(j),
                    alg.label(k)
                )));
            }
            let one = alg.one();
            for i in 0..dim {
                let e = alg.basis(i);
                if &one * &e != e || &e * &one != e {
                    return Err(Error::InvalidAlgebra("declared unity is not a unity".into()));
                }
            }
        }
        Ok(alg)
    }

    /// Algebra from structure constants `e_i e_j = sum_k c_ijk e_k`; the unity
    /// is found by solving a linear system.
    pub fn from_structure_constants(
        tower: &FieldTower,
        labels: Vec<String>,
        sc: &[(usize, usize, usize, Scalar)],
    ) -> Result<Self> {
        let dim = labels.len();
        let mut table: Vec<Vec<Terms>> = vec![vec![Vec::new(); dim]; dim];
        for (i, j, k, c) in sc {
            if *i >= dim || *j >= dim || *k >= dim {
                return Err(Error::InvalidAlgebra(format!("index out of range in ({i},{j},{k})")));
            }
            if !c.is_zero() {
                let t = &mut table[*i][*j];
                match t.iter_mut().find(|(idx, _)| idx == k) {
                    Some(entry) => entry.1 = &entry.1 + c,
                    None => t.push((*k, c.clone())),
                }
            }
        }
        for row in table.iter_mut() {
            for t in row.iter_mut() {
                t.retain(|(_, c)| !c.is_zero());
                t.sort_by_key(|(k, _)| *k);
            }
        }
        let zero = vec![tower.zero(); dim];
        let probe = Algebra::from_table(
            tower,
            labels.clone(),
            table.clone(),
            zero,
            Presentation::General,
            None,
            false,
        )?;
        let one = probe.find_unity()?;
        Algebra::from_table(tower, labels, table, one, Presentation::General, None, true)
    }

    /// Unity of the algebra: `u` with `u e_j = e_j u = e_j` for all `j`.
    fn find_unity(&self) -> Result<Vec<Scalar>> {
        let t = self.tower();
        let n = self.dim();
        let mut rows = Vec::new();
        let mut rhs = Vec::new();
        for j in 0..n {
            let ej = self.basis(j);
            // columns: e_i e_j and e_j e_i
            let left: Vec<Vec<Scalar>> = (0..n).map(|i| (&self.basis(i) * &ej).coords().to_vec()).collect();
            let right: Vec<Vec<Scalar>> = (0..n).map(|i| (&ej * &self.basis(i)).coords().to_vec()).collect();
            for k in 0..n {
                rows.push((0..n).map(|i| left[i][k].clone()).collect());
                rhs.push(if k == j { t.one() } else { t.zero() });
                rows.push((0..n).map(|i| right[i][k].clone()).collect());
                rhs.push(if k == j { t.one() } else { t.zero() });
            }
        }
        crate::linalg::solve(t, &rows, &rhs)
            .ok_or_else(|| Error::InvalidAlgebra("no unity element".into()))
    }

    /// Tensor product in factored form; nested tensor products are flattened.
    pub fn tensor(a: &Algebra, b: &Algebra) -> Result<Algebra> {
        Algebra::tensor_all(&[a.clone(), b.clone()])
    }

    pub fn tensor_all(parts: &[Algebra]) -> Result<Algebra> {
        if parts.is_empty() {
            return Err(Error::InvalidAlgebra("empty tensor product".into()));
        }
        let tower = parts[0].tower().clone();
        let mut factors = Vec::new();
        for p in parts {
            if p.tower() != &tower {
                return Err(Error::FieldMismatch);
            }
            match &p.0.kind {
                Kind::Tensor { factors: fs } => factors.extend(fs.iter().cloned()),
                Kind::Dense { .. } => factors.push(p.clone()),
            }
        }
        let dim = factors.iter().map(|f| f.dim()).product();
        let mut labels = vec![String::new()];
        for f in &factors {
            let mut next = Vec::with_capacity(labels.len() * f.dim());
            for l in &labels {
                for fl in &f.0.labels {
                    next.push(if l.is_empty() {
                        fl.clone()
                    } else {
                        format!("{l}⊗{fl}")
                    });
                }
            }
            labels = next;
        }
        let degree = factors
            .iter()
            .map(|f| f.declared_degree())
            .try_fold(1usize, |acc, d| d.map(|d| acc * d));
        Ok(Algebra(Arc::new(Inner {
            tower,
            dim,
            labels,
            kind: Kind::Tensor { factors },
            presentation: Presentation::General,
            degree,
            cache: OnceLock::new(),
            trd: OnceLock::new(),
        })))
    }

    pub fn tower(&self) -> &FieldTower {
        &self.0.tower
    }

    pub fn dim(&self) -> usize {
        self.0.dim
    }

    pub fn label(&self, i: usize) -> &str {
        &self.0.labels[i]
    }

    pub fn labels(&self) -> &[String] {
        &self.0.labels
    }

    pub fn presentation(&self) -> &Presentation {
        &self.0.presentation
    }

    pub fn factors(&self) -> Option<&[Algebra]> {
        match &self.0.kind {
            Kind::Tensor { factors } => Some(factors),
            Kind::Dense { .. } => None,
        }
    }

    pub fn is_factored(&self) -> bool {
        self.factors().is_some()
    }

    /// Degree declared at construction (matrix size, symbol degree, or the
    /// product over tensor factors).
    pub fn declared_degree(&self) -> Option<usize> {
        self.0.degree
    }

    /// Declared degree, or the square root of the dimension.
    pub fn degree(&self) -> Result<usize> {
        if let Some(d) = self.0.degree {
            return Ok(d);
        }
        let r = (self.dim() as f64).sqrt().round() as usize;
        if r * r == self.dim() {
            Ok(r)
        } else {
            Err(Error::NotCentralSimple(format!("dimension {} is not a square", self.dim())))
        }
    }

    /// Same algebra with a declared degree attached.
    pub fn with_degree(&self, degree: usize) -> Algebra {
        self.rebuild(|inner| inner.degree = Some(degree))
    }

    fn rebuild(&self, f: impl FnOnce(&mut InnerParts)) -> Algebra {
        let mut parts = InnerParts {
            degree: self.0.degree,
            presentation: self.0.presentation.clone(),
        };
        f(&mut parts);
        let kind = match &self.0.kind {
            Kind::Dense { table, one } => Kind::Dense {
                table: table.clone(),
                one: one.clone(),
            },
            Kind::Tensor { factors } => Kind::Tensor {
                factors: factors.clone(),
            },
        };
        Algebra(Arc::new(Inner {
            tower: self.0.tower.clone(),
            dim: self.0.dim,
            labels: self.0.labels.clone(),
            kind,
            presentation: parts.presentation,
            degree: parts.degree,
            cache: OnceLock::new(),
            trd: OnceLock::new(),
        }))
    }

    /// Copy of the algebra over a larger tower (same structure constants).
    pub fn base_change(&self, tower: &FieldTower) -> Result<Algebra> {
        let emb = |s: &Scalar| tower.embed(s);
        match &self.0.kind {
            Kind::Tensor { factors } => {
                let fs: Result<Vec<Algebra>> = factors.iter().map(|f| f.base_change(tower)).collect();
                Algebra::tensor_all(&fs?)
            }
            Kind::Dense { table, one } => {
                let mut t2 = Vec::with_capacity(table.len());
                for row in table {
                    let mut r2 = Vec::with_capacity(row.len());
                    for terms in row {
                        let mut ts = Vec::with_capacity(terms.len());
                        for (k, c) in terms {
                            ts.push((*k, emb(c)?));
                        }
                        r2.push(ts);
                    }
                    t2.push(r2);
                }
                let one2: Result<Vec<Scalar>> = one.iter().map(emb).collect();
                let pres = match &self.0.presentation {
                    Presentation::Symbol { n, a, b, zeta } => Presentation::Symbol {
                        n: *n,
                        a: emb(a)?,
                        b: emb(b)?,
                        zeta: emb(zeta)?,
                    },
                    p => p.clone(),
                };
                Algebra::from_table(
                    tower,
                    self.0.labels.clone(),
                    t2,
                    one2?,
                    pres,
                    self.0.degree,
                    false,
                )
            }
        }
    }

    /// Product of basis elements `e_i e_j`.
    pub fn basis_product(&self, i: usize, j: usize) -> Terms {
        match &self.0.kind {
            Kind::Dense { table, .. } => table[i][j].clone(),
            Kind::Tensor { factors } => {
                if self.dim() <= DENSE_CACHE_LIMIT {
                    let cache = self.0.cache.get_or_init(|| {
                        (0..self.dim())
                            .map(|a| (0..self.dim()).map(|b| self.tensor_product(factors, a, b)).collect())
                            .collect()
                    });
                    cache[i][j].clone()
                } else {
                    self.tensor_product(factors, i, j)
                }
            }
        }
    }

    fn split_index(factors: &[Algebra], mut idx: usize) -> Vec<usize> {
        let mut out = vec![0; factors.len()];
        for (f, slot) in factors.iter().zip(out.iter_mut()).rev() {
            *slot = idx % f.dim();
            idx /= f.dim();
        }
        out
    }

    /// Index of a tensor basis element from factor indices.
    pub fn join_index(&self, parts: &[usize]) -> usize {
        let factors = self.factors().expect("not a tensor product");
        let mut idx = 0;
        for (f, &p) in factors.iter().zip(parts) {
            idx = idx * f.dim() + p;
        }
        idx
    }

    fn tensor_product(&self, factors: &[Algebra], i: usize, j: usize) -> Terms {
        let a = Self::split_index(factors, i);
        let b = Self::split_index(factors, j);
        let mut acc: Terms = vec![(0, self.tower().one())];
        for (fi, f) in factors.iter().enumerate() {
            let p = f.basis_product(a[fi], b[fi]);
            let mut next = Vec::with_capacity(acc.len() * p.len());
            for (idx, c) in &acc {
                for (k, d) in &p {
                    let coef = if d.is_one() {
                        c.clone()
                    } else if c.is_one() {
                        d.clone()
                    } else {
                        c * d
                    };
                    next.push((idx * f.dim() + k, coef));
                }
            }
            acc = next;
        }
        acc
    }

    pub fn zero(&self) -> Element {
        Element::new(self, vec![self.tower().zero(); self.dim()])
    }

    pub fn one(&self) -> Element {
        match &self.0.kind {
            Kind::Dense { one, .. } => Element::new(self, one.clone()),
            Kind::Tensor { factors } => {
                let parts: Vec<Element> = factors.iter().map(|f| f.one()).collect();
                self.pure_tensor(&parts)
            }
        }
    }

    pub fn basis(&self, i: usize) -> Element {
        let mut c = vec![self.tower().zero(); self.dim()];
        c[i] = self.tower().one();
        Element::new(self, c)
    }

    pub fn scalar(&self, s: &Scalar) -> Element {
        self.one().scale(s)
    }

    pub fn element(&self, coords: Vec<Scalar>) -> Result<Element> {
        if coords.len() != self.dim() {
            return Err(Error::DimensionMismatch(coords.len(), self.dim()));
        }
        Ok(Element::new(self, coords))
    }

    /// `x_1 ⊗ ... ⊗ x_k` for elements of the tensor factors.
    pub fn pure_tensor(&self, parts: &[Element]) -> Element {
        let factors = self.factors().expect("not a tensor product");
        assert_eq!(parts.len(), factors.len());
        let mut acc: Vec<(usize, Scalar)> = vec![(0, self.tower().one())];
        for (f, x) in factors.iter().zip(parts) {
            assert!(x.parent() == f, "tensor factor mismatch");
            let mut next = Vec::new();
            for (idx, c) in &acc {
                for (k, d) in x.coords().iter().enumerate() {
                    if !d.is_zero() {
                        next.push((idx * f.dim() + k, c * d));
                    }
                }
            }
            acc = next;
        }
        let mut coords = vec![self.tower().zero(); self.dim()];
        for (i, c) in acc {
            coords[i] = &coords[i] + &c;
        }
        Element::new(self, coords)
    }

    /// Embedding of factor `k` of a tensor product.
    pub fn embed_factor(&self, k: usize, x: &Element) -> Element {
        let factors = self.factors().expect("not a tensor product");
        let parts: Vec<Element> = factors
            .iter()
            .enumerate()
            .map(|(i, f)| if i == k { x.clone() } else { f.one() })
            .collect();
        self.pure_tensor(&parts)
    }

    /// Expand a factored algebra into a dense table.
    pub fn densify(&self) -> Result<Algebra> {
        let table: Vec<Vec<Terms>> = (0..self.dim())
            .map(|i| (0..self.dim()).map(|j| self.basis_product(i, j)).collect())
            .collect();
        Algebra::from_table(
            self.tower(),
            self.0.labels.clone(),
            table,
            self.one().coords().to_vec(),
            self.0.presentation.clone(),
            self.0.degree,
            false,
        )
    }

    /// First basis triple on which associativity fails.
    pub fn associativity_failure(&self) -> Option<(usize, usize, usize)> {
        let n = self.dim();
        for i in 0..n {
            for j in 0..n {
                let ij = Element::from_terms(self, &self.basis_product(i, j));
                for k in 0..n {
                    let left = &ij * &self.basis(k);
                    let jk = Element::from_terms(self, &self.basis_product(j, k));
                    let right = &self.basis(i) * &jk;
                    if left != right {
                        return Some((i, j, k));
                    }
                }
            }
        }
        None
    }

    /// Reduced traces of the basis elements.
    pub(crate) fn basis_trd(&self) -> Result<&Vec<Scalar>> {
        self.0
            .trd
            .get_or_init(|| ops::compute_basis_trd(self))
            .as_ref()
            .map_err(|e| e.clone())
    }
}

struct InnerParts {
    degree: Option<usize>,
    presentation: Presentation,
}

/// `M_n(F)` on matrix units.
pub fn matrix_algebra(tower: &FieldTower, n: usize) -> Algebra {
    let dim = n * n;
    let labels: Vec<String> = (0..n)
        .flat_map(|r| (0..n).map(move |c| format!("e{}_{}", r + 1, c + 1)))
        .collect();
    let mut table = vec![vec![Vec::new(); dim]; dim];
    for a in 0..n {
        for b in 0..n {
            for d in 0..n {
                table[a * n + b][b * n + d] = vec![(a * n + d, tower.one())];
            }
        }
    }
    let mut one = vec![tower.zero(); dim];
    for r in 0..n {
        one[r * n + r] = tower.one();
    }
    Algebra::from_table(
        tower,
        labels,
        table,
        one,
        Presentation::Matrix { n },
        Some(n),
        false,
    )
    .expect("matrix units form an algebra")
}

/// Element of `M_n(F)` from its rows.
pub fn matrix_element(alg: &Algebra, rows: &[Vec<Scalar>]) -> Result<Element> {
    let n = match alg.presentation() {
        Presentation::Matrix { n } => *n,
        _ => return Err(Error::NotSplitPresentation),
    };
    if rows.len() != n || rows.iter().any(|r| r.len() != n) {
        return Err(Error::DimensionMismatch(rows.len(), n));
    }
    let mut coords = Vec::with_capacity(n * n);
    for r in rows {
        coords.extend(r.iter().cloned());
    }
    alg.element(coords)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matrix_units_multiply() {
        let q = FieldTower::rationals();
        let m = matrix_algebra(&q, 2);
        let e12 = m.basis(1);
        let e21 = m.basis(2);
        assert_eq!(&e12 * &e21, m.basis(0));
        assert!((&e12 * &e12).is_zero());
        assert!(m.associativity_failure().is_none());
    }

    #[test]
    fn structure_constants_find_unity() {
        let q = FieldTower::rationals();
        // F x F with idempotents u, v
        let sc = vec![(0, 0, 0, q.one()), (1, 1, 1, q.one())];
        let a = Algebra::from_structure_constants(&q, vec!["u".into(), "v".into()], &sc).unwrap();
        assert_eq!(a.one().coords(), &[q.one(), q.one()]);
    }

    #[test]
    fn non_associative_rejected() {
        let q = FieldTower::rationals();
        // e0 unity, e1*e1 = e0 + e1 fine; break with e1 e2 = e1, e2 e1 = e2 ...
        let sc = vec![
            (0, 0, 0, q.one()),
            (0, 1, 1, q.one()),
            (1, 0, 1, q.one()),
            (0, 2, 2, q.one()),
            (2, 0, 2, q.one()),
            (1, 1, 2, q.one()),
            (1, 2, 0, q.one()),
            (2, 1, 1, q.one()),
        ];
        let labels = vec!["1".into(), "a".into(), "b".into()];
        assert!(Algebra::from_structure_constants(&q, labels, &sc).is_err());
    }

    #[test]
    fn tensor_matches_densified() {
        let q = FieldTower::rationals();
        let m = matrix_algebra(&q, 2);
        let t = Algebra::tensor(&m, &m).unwrap();
        assert_eq!(t.dim(), 16);
        let d = t.densify().unwrap();
        assert!(d.associativity_failure().is_none());
        let x = t.embed_factor(0, &m.basis(1));
        let y = t.embed_factor(1, &m.basis(2));
        assert_eq!(&x * &y, &y * &x);
    }
}
