//! Square-central elements `g` (`g^2` in `F^x`, `g` not in `F`) and whether
//! they lie in a split quaternion subalgebra. When `g^2` is a square every
//! quaternion subalgebra containing `g` is split, since `g - lambda` is a zero
//! divisor; when it is not, a verdict only speaks about split ones.

mod laurent;

use serde::Serialize;

use crate::algebra::{matrix_algebra, matrix_element, Algebra, Element, Presentation, Subspace};
use crate::error::{Error, Result};
use crate::fields::Scalar;
use crate::linalg;
use crate::symbols::{quaternion_division, symbol_algebra, DivisionVerdict};

pub use laurent::{laurent_obstruction_reduce, LaurentAlgebra, LaurentElement, ReducedWitness};

/// Default candidate budget for witness searches.
pub const DEFAULT_BUDGET: usize = 100_000;
/// Coefficient height searched over fields of characteristic 0.
pub const RATIONAL_HEIGHT: i64 = 3;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Case {
    /// `g^2 = lambda^2`.
    InSquare(Scalar),
    /// `g^2 = a` with `a` not a square.
    NonSquare(Scalar),
}

/// `g, f` with `g^2, f^2` in `F^x`, `g f = -f g`, spanning a quaternion
/// subalgebra.
#[derive(Clone, Debug)]
pub struct QuaternionWitness {
    pub g: Element,
    pub f: Element,
    pub g2: Scalar,
    pub f2: Scalar,
    pub span_dim: usize,
}

#[derive(Clone, Debug)]
pub enum Verdict {
    InQuaternion {
        witness: Option<QuaternionWitness>,
        note: Option<String>,
    },
    NotInQuaternion(String),
    Unknown(String),
}

#[derive(Clone, Debug)]
pub struct SquareCentralReport {
    pub g: Element,
    pub case: Case,
    /// `(dim (g - lambda) A, dim (g + lambda) A)`.
    pub dims: Option<(usize, usize)>,
    pub trace: Option<Scalar>,
    pub verdict: Verdict,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct WitnessSummary {
    pub g: String,
    pub f: String,
    pub g2: String,
    pub f2: String,
    pub span_dim: usize,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct ReportSummary {
    pub g: String,
    pub case: String,
    pub square: String,
    pub dims: Option<(usize, usize)>,
    pub trace: Option<String>,
    pub verdict: String,
    pub reason: Option<String>,
    pub witness: Option<WitnessSummary>,
}

impl QuaternionWitness {
    /// Check the relations and the dimension of the span of `1, g, f, gf`.
    pub fn verify(g: &Element, f: &Element) -> Result<QuaternionWitness> {
        let g2 = square_scalar(g).ok_or_else(|| Error::NotAWitness(format!("{g} is not square-central")))?;
        let f2 = square_scalar(f).ok_or_else(|| Error::NotAWitness(format!("{f} is not square-central")))?;
        if &(g * f) + &(f * g) != g.parent().zero() {
            return Err(Error::NotAWitness("elements do not anticommute".into()));
        }
        let a = g.parent();
        let vecs = [a.one(), g.clone(), f.clone(), g * f]
            .iter()
            .map(|x| x.coords().to_vec())
            .collect();
        let span_dim = linalg::rank(vecs, a.dim());
        if span_dim != 4 {
            return Err(Error::NotAWitness(format!("span has dimension {span_dim}")));
        }
        Ok(QuaternionWitness {
            g: g.clone(),
            f: f.clone(),
            g2,
            f2,
            span_dim,
        })
    }

    pub fn summary(&self) -> WitnessSummary {
        WitnessSummary {
            g: self.g.to_string(),
            f: self.f.to_string(),
            g2: self.g2.to_string(),
            f2: self.f2.to_string(),
            span_dim: self.span_dim,
        }
    }
}

impl SquareCentralReport {
    pub fn summary(&self) -> ReportSummary {
        let (case, square) = match &self.case {
            Case::InSquare(l) => ("InSquare", l.to_string()),
            Case::NonSquare(a) => ("NonSquare", a.to_string()),
        };
        let (verdict, reason, witness) = match &self.verdict {
            Verdict::InQuaternion { witness, note } => {
                ("InQuaternion", note.clone(), witness.as_ref().map(|w| w.summary()))
            }
            Verdict::NotInQuaternion(r) => ("NotInQuaternion", Some(r.clone()), None),
            Verdict::Unknown(r) => ("Unknown", Some(r.clone()), None),
        };
        ReportSummary {
            g: self.g.to_string(),
            case: case.into(),
            square,
            dims: self.dims,
            trace: self.trace.as_ref().map(|t| t.to_string()),
            verdict: verdict.into(),
            reason,
            witness,
        }
    }
}

fn square_scalar(x: &Element) -> Option<Scalar> {
    (x * x).as_scalar().filter(|s| !s.is_zero())
}

/// Decide whether `g^2` is a square in `F^x`.
pub fn classify_square_central(g: &Element) -> Result<Case> {
    if g.is_scalar() {
        return Err(Error::NotSquareCentral);
    }
    let s = square_scalar(g).ok_or(Error::NotSquareCentral)?;
    Ok(match s.nth_root(2)? {
        Some(l) => Case::InSquare(l),
        None => Case::NonSquare(s),
    })
}

/// Full analysis: the square case through ideal dimensions, the non-square
/// case through the index when it is known and a bounded search otherwise.
pub fn analyze(g: &Element, budget: usize) -> Result<SquareCentralReport> {
    if g.parent().tower().characteristic() == 2 {
        return Err(Error::WrongCharacteristic(2));
    }
    match classify_square_central(g)? {
        Case::InSquare(l) => membership_square_case(g, &l),
        Case::NonSquare(_) => membership_nonsquare_case(g, None, budget),
    }
}

/// `g` lies in a quaternion subalgebra iff `dim (g - l) A = dim (g + l) A`.
/// When it does and `A` is a matrix algebra, the witness is the block swap
/// between the two eigenspaces.
pub fn membership_square_case(g: &Element, lambda: &Scalar) -> Result<SquareCentralReport> {
    let a = g.parent();
    let t = a.tower();
    if t.characteristic() == 2 {
        return Err(Error::WrongCharacteristic(2));
    }
    if g.is_scalar() || square_scalar(g) != Some(lambda * lambda) {
        return Err(Error::NotSquareCentral);
    }
    let l1 = a.scalar(lambda);
    let dm = (g - &l1).left_ideal_dim();
    let dp = (g + &l1).left_ideal_dim();
    let trace = g.reduced_trace().ok();
    let verdict = if dm != dp {
        Verdict::NotInQuaternion(format!("dim (g - l)A = {dm} but dim (g + l)A = {dp}"))
    } else {
        match block_swap(g, lambda) {
            Ok(w) => Verdict::InQuaternion {
                witness: Some(w),
                note: None,
            },
            Err(Error::NotSplitPresentation) => match search_anticommuting(g, DEFAULT_BUDGET, &|_| true) {
                Ok(Some(w)) => Verdict::InQuaternion {
                    witness: Some(w),
                    note: Some("no matrix presentation; witness found by search".into()),
                },
                _ => Verdict::InQuaternion {
                    witness: None,
                    note: Some("no matrix presentation and no witness within budget".into()),
                },
            },
            Err(e) => return Err(e),
        }
    };
    Ok(SquareCentralReport {
        g: g.clone(),
        case: Case::InSquare(lambda.clone()),
        dims: Some((dm, dp)),
        trace,
        verdict,
    })
}

fn matrix_size(a: &Algebra) -> Option<usize> {
    match a.presentation() {
        Presentation::Matrix { n } => Some(*n),
        _ => None,
    }
}

/// `f = S J S^-1` with `S` an eigenbasis `(V_+ | V_-)` and `J` the block swap.
fn block_swap(g: &Element, lambda: &Scalar) -> Result<QuaternionWitness> {
    let a = g.parent();
    let n = matrix_size(a).ok_or(Error::NotSplitPresentation)?;
    let t = a.tower();
    let half = t.int(2).inv()?;
    let linv = lambda.inv()?;
    let gl = g.scale(&linv);
    let cols = |p: &Element| -> Vec<Vec<Scalar>> {
        let cs = (0..n)
            .map(|c| (0..n).map(|r| p.coord(r * n + c).clone()).collect())
            .collect();
        Subspace::span(t, n, cs).basis().to_vec()
    };
    let vp = cols(&(&a.one() + &gl).scale(&half));
    let vm = cols(&(&a.one() - &gl).scale(&half));
    if vp.len() != vm.len() || vp.len() + vm.len() != n {
        return Err(Error::NotAWitness("eigenspaces of unequal dimension".into()));
    }
    let r = vp.len();
    let mut srows = vec![vec![t.zero(); n]; n];
    for (c, v) in vp.iter().chain(&vm).enumerate() {
        for (row, x) in v.iter().enumerate() {
            srows[row][c] = x.clone();
        }
    }
    let s = matrix_element(a, &srows)?;
    let mut jrows = vec![vec![t.zero(); n]; n];
    for k in 0..r {
        jrows[k][r + k] = t.one();
        jrows[r + k][k] = t.one();
    }
    let j = matrix_element(a, &jrows)?;
    let f = &(&s * &j) * &s.inverse()?;
    QuaternionWitness::verify(g, &f)
}

/// The reduced-trace form of the criterion, valid in characteristic 0 only.
pub fn trace_criterion_char0(g: &Element, lambda: &Scalar) -> Result<Verdict> {
    let p = g.parent().tower().characteristic();
    if p != 0 {
        return Err(Error::WrongCharacteristic(p));
    }
    if g.is_scalar() || square_scalar(g) != Some(lambda * lambda) {
        return Err(Error::NotSquareCentral);
    }
    let trd = g.reduced_trace()?;
    Ok(if trd.is_zero() {
        Verdict::InQuaternion {
            witness: None,
            note: Some("Trd(g) = 0".into()),
        }
    } else {
        Verdict::NotInQuaternion(format!("Trd(g) = {trd}"))
    })
}

/// Index read off the presentation: 1 for matrix algebras, the verdict of
/// the division test for a quaternion symbol, and the same for a tensor
/// product of matrix factors with at most one quaternion factor.
pub fn derive_index(a: &Algebra) -> Option<usize> {
    fn one(a: &Algebra) -> Option<usize> {
        match a.presentation() {
            Presentation::Matrix { .. } => Some(1),
            Presentation::Symbol { n: 2, .. } => match quaternion_division(a, 20).ok()? {
                DivisionVerdict::Division => Some(2),
                DivisionVerdict::Split { .. } => Some(1),
                DivisionVerdict::Unknown => None,
            },
            _ => None,
        }
    }
    match a.factors() {
        None => one(a),
        Some(fs) => {
            let nonmatrix: Vec<&Algebra> = fs
                .iter()
                .filter(|f| !matches!(f.presentation(), Presentation::Matrix { .. }))
                .collect();
            match nonmatrix.as_slice() {
                [] => Some(1),
                [q] => one(q),
                _ => None,
            }
        }
    }
}

/// `g` with `g^2 = a` non-square lies in a split quaternion subalgebra iff
/// `deg A / ind A` is even. With the index unknown, fall back to a bounded
/// search for an anticommuting square-central element.
pub fn membership_nonsquare_case(g: &Element, index: Option<usize>, budget: usize) -> Result<SquareCentralReport> {
    let a = g.parent();
    let sq = square_scalar(g).ok_or(Error::NotSquareCentral)?;
    if g.is_scalar() || sq.nth_root(2)?.is_some() {
        return Err(Error::NotSquareCentral);
    }
    let deg = a.degree()?;
    let trace = g.reduced_trace().ok();
    let verdict = match index.or_else(|| derive_index(a)) {
        Some(ind) if (deg / ind) % 2 == 0 => {
            let note = split_model(a, &sq)
                .map(|(gp, fp)| {
                    format!("g is conjugate to g' = {gp}, which anticommutes with {fp} in a split factor")
                })
                .unwrap_or_else(|| "deg/ind even; g is conjugate into a split quaternion factor".into());
            let witness = search_anticommuting(g, budget, &split_witness).ok().flatten();
            Verdict::InQuaternion {
                witness,
                note: Some(note),
            }
        }
        Some(ind) => Verdict::NotInQuaternion(format!(
            "no split quaternion subalgebra contains g: deg/ind = {} is odd",
            deg / ind
        )),
        None => match search_anticommuting(g, budget, &split_witness) {
            Ok(Some(w)) => Verdict::InQuaternion {
                witness: Some(w),
                note: Some("index unknown; split witness found by search".into()),
            },
            Ok(None) => Verdict::NotInQuaternion("exhaustive search found no anticommuting element".into()),
            Err(e) => Verdict::Unknown(format!("index unknown; {e}")),
        },
    };
    Ok(SquareCentralReport {
        g: g.clone(),
        case: Case::NonSquare(sq),
        dims: None,
        trace,
        verdict,
    })
}

/// `g' = (0 1; a 0) (x) 1` and `f' = diag(1, -1) (x) 1` in an even matrix
/// presentation.
fn split_model(a: &Algebra, sq: &Scalar) -> Option<(Element, Element)> {
    let t = a.tower();
    let build = |m: &Algebra, n: usize| -> Option<(Element, Element)> {
        if n % 2 != 0 {
            return None;
        }
        let h = n / 2;
        let mut gr = vec![vec![t.zero(); n]; n];
        let mut fr = vec![vec![t.zero(); n]; n];
        for k in 0..h {
            gr[k][h + k] = t.one();
            gr[h + k][k] = sq.clone();
            fr[k][k] = t.one();
            fr[h + k][h + k] = t.int(-1);
        }
        Some((matrix_element(m, &gr).ok()?, matrix_element(m, &fr).ok()?))
    };
    if let Some(n) = matrix_size(a) {
        return build(a, n);
    }
    let fs = a.factors()?;
    for (k, f) in fs.iter().enumerate() {
        if let Some(n) = matrix_size(f) {
            if let Some((gp, fp)) = build(f, n) {
                return Some((a.embed_factor(k, &gp), a.embed_factor(k, &fp)));
            }
        }
    }
    None
}

/// Visit integer vectors of length `d` with entries in `[-h, h]`, by
/// increasing height, then support size, then lexicographically. Stops when
/// `visit` returns true; returns whether it stopped.
fn small_vectors(d: usize, hmax: i64, mut visit: impl FnMut(&[i64]) -> bool) -> bool {
    fn subsets(d: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        if cur.len() == k {
            return out(cur);
        }
        for i in start..d {
            cur.push(i);
            if subsets(d, k, i + 1, cur, out) {
                return true;
            }
            cur.pop();
        }
        false
    }
    for h in 1..=hmax {
        let vals: Vec<i64> = (1..=h).flat_map(|v| [v, -v]).collect();
        for k in 1..=d {
            let stop = subsets(d, k, 0, &mut Vec::new(), &mut |sup: &[usize]| {
                let mut idx = vec![0usize; k];
                loop {
                    if idx.iter().any(|&i| vals[i].abs() == h) {
                        let mut v = vec![0; d];
                        for (p, &s) in sup.iter().enumerate() {
                            v[s] = vals[idx[p]];
                        }
                        if visit(&v) {
                            return true;
                        }
                    }
                    let mut p = 0;
                    loop {
                        if p == k {
                            return false;
                        }
                        idx[p] += 1;
                        if idx[p] < vals.len() {
                            break;
                        }
                        idx[p] = 0;
                        p += 1;
                    }
                }
            });
            if stop {
                return true;
            }
        }
    }
    false
}

/// Search `W = {y : x y + y x = 0}` for `y` with `y^2` in `F^x`. Over a
/// prime field the coordinates run over all residues, so finishing the
/// enumeration proves that no such `y` exists (`Ok(None)`); elsewhere the
/// search is bounded by height and running out is `BudgetExhausted`.
pub fn find_anticommuting_square_central(x: &Element, budget: usize) -> Result<Option<QuaternionWitness>> {
    if x.is_scalar() || square_scalar(x).is_none() {
        return Err(Error::NotSquareCentral);
    }
    search_anticommuting(x, budget, &|_| true)
}

/// Whether `(g^2, f^2)` is verified split.
fn split_witness(w: &QuaternionWitness) -> bool {
    symbol_algebra(w.g.parent().tower(), &w.g2, &w.f2, 2)
        .and_then(|q| quaternion_division(&q, 20))
        .is_ok_and(|v| matches!(v, DivisionVerdict::Split { .. }))
}

fn search_anticommuting(
    x: &Element,
    budget: usize,
    accept: &dyn Fn(&QuaternionWitness) -> bool,
) -> Result<Option<QuaternionWitness>> {
    let a = x.parent();
    let t = a.tower();
    let n = a.dim();
    let l = x.left_matrix();
    let r = x.right_matrix();
    let rows: Vec<Vec<Scalar>> = (0..n)
        .map(|k| l[k].iter().zip(&r[k]).map(|(p, q)| p + q).collect())
        .collect();
    let (rows, _) = linalg::rref(rows, n);
    let w: Vec<Element> = linalg::nullspace(t, rows, n)
        .into_iter()
        .map(|v| a.element(v).unwrap())
        .collect();
    let p = t.characteristic();
    let exhaustive = p != 0 && t.vars().is_empty() && t.algebraic_degree() == 1;
    let hmax = if p != 0 { ((p - 1) / 2).max(1) as i64 } else { RATIONAL_HEIGHT };
    let mut tried = 0usize;
    let mut found = None;
    let mut over = false;
    small_vectors(w.len(), hmax, |c| {
        if tried >= budget {
            over = true;
            return true;
        }
        tried += 1;
        let mut y = a.zero();
        for (k, &ck) in c.iter().enumerate() {
            if ck != 0 {
                y = &y + &w[k].scale(&t.int(ck));
            }
        }
        if square_scalar(&y).is_some() {
            if let Ok(q) = QuaternionWitness::verify(x, &y) {
                if accept(&q) {
                    found = Some(q);
                    return true;
                }
            }
        }
        false
    });
    match found {
        Some(q) => Ok(Some(q)),
        None if exhaustive && !over => Ok(None),
        None => Err(Error::BudgetExhausted(tried)),
    }
}

/// `diag(s_1, ..., s_n)` in `M_n(F)` for a sign pattern.
pub fn diagonal_sign_matrix(a: &Algebra, signs: &[i64]) -> Result<Element> {
    let t = a.tower();
    let n = signs.len();
    let rows: Vec<Vec<Scalar>> = (0..n)
        .map(|r| (0..n).map(|c| if r == c { t.int(signs[r]) } else { t.zero() }).collect())
        .collect();
    matrix_element(a, &rows)
}

/// `M_8(F_3)` with `g = diag(1, ..., 1, -1)`.
pub fn counterexample_instance() -> Result<(Algebra, Element)> {
    let f3 = crate::fields::FieldTower::finite(3)?;
    let a = matrix_algebra(&f3, 8);
    let mut signs = vec![1; 8];
    signs[7] = -1;
    let g = diagonal_sign_matrix(&a, &signs)?;
    Ok((a, g))
}
