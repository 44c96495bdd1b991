//! Text form of scalars: sparse polynomial fractions over the tower
//! variables, with `z` standing for the adjoined root of unity.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::base::{BElem, BaseField};
use super::ratfun::{self, Val};
use super::{FieldTower, Scalar};
use crate::error::{Error, Result};

// ---------------------------------------------------------------------------
// formatting
// ---------------------------------------------------------------------------

/// Multivariate polynomial: exponent vector -> base coefficient.
type MPoly = BTreeMap<Vec<u32>, BElem>;

fn mp_const(c: BElem, nvars: usize) -> MPoly {
    let mut m = MPoly::new();
    if !c.is_empty() {
        m.insert(vec![0; nvars], c);
    }
    m
}

fn mp_mul(k: &BaseField, a: &MPoly, b: &MPoly) -> MPoly {
    let mut out = MPoly::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            let prod = k.mul(ca, cb);
            let entry = out.entry(e).or_default();
            *entry = k.add(entry, &prod);
        }
    }
    out.retain(|_, c| !c.is_empty());
    out
}

fn mp_add_into(k: &BaseField, acc: &mut MPoly, b: &MPoly) {
    for (e, c) in b {
        let entry = acc.entry(e.clone()).or_default();
        *entry = k.add(entry, c);
    }
    acc.retain(|_, c| !c.is_empty());
}

fn mp_extend(a: &MPoly, power: u32) -> MPoly {
    a.iter()
        .map(|(e, c)| {
            let mut e = e.clone();
            e.push(power);
            (e, c.clone())
        })
        .collect()
}

fn mp_is_one(a: &MPoly) -> bool {
    a.len() == 1 && {
        let (e, c) = a.iter().next().unwrap();
        e.iter().all(|&x| x == 0) && c.len() == 1 && c[0].is_one()
    }
}

/// Write `v` (at `level`) as a ratio of polynomials in `t_1..t_level`.
fn to_ratio(k: &BaseField, v: &Val, level: usize) -> (MPoly, MPoly) {
    if level == 0 {
        let b = ratfun::as_base(v).clone();
        return (mp_const(b, 0), mp_const(vec![super::base::rat(1)], 0));
    }
    let f = ratfun::as_frac(v);
    let num: Vec<(MPoly, MPoly)> = f.num.iter().map(|c| to_ratio(k, c, level - 1)).collect();
    let den: Vec<(MPoly, MPoly)> = f.den.iter().map(|c| to_ratio(k, c, level - 1)).collect();
    // Distinct nontrivial lower denominators; multiplying through by their
    // product clears every inner fraction.
    let mut dens: Vec<MPoly> = Vec::new();
    for (_, q) in num.iter().chain(den.iter()) {
        if !q.is_empty() && !mp_is_one(q) && !dens.contains(q) {
            dens.push(q.clone());
        }
    }
    let cofactor = |q: &MPoly| -> MPoly {
        let mut acc = mp_const(vec![super::base::rat(1)], level - 1);
        let mut skipped = false;
        for d in &dens {
            if !skipped && d == q {
                skipped = true;
                continue;
            }
            acc = mp_mul(k, &acc, d);
        }
        acc
    };
    let assemble = |terms: &[(MPoly, MPoly)]| -> MPoly {
        let mut out = MPoly::new();
        for (i, (p, q)) in terms.iter().enumerate() {
            if p.is_empty() {
                continue;
            }
            let t = mp_mul(k, p, &cofactor(q));
            mp_add_into(k, &mut out, &mp_extend(&t, i as u32));
        }
        out
    };
    (assemble(&num), assemble(&den))
}

fn fmt_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Coefficient text and sign; `None` text for a unit coefficient.
fn fmt_coeff(c: &BElem) -> (bool, Option<String>) {
    let nonzero: Vec<(usize, &BigRational)> =
        c.iter().enumerate().filter(|(_, x)| !x.is_zero()).collect();
    if nonzero.len() == 1 && nonzero[0].0 == 0 {
        let r = nonzero[0].1;
        let neg = r.is_negative();
        let a = r.abs();
        return (neg, if a.is_one() { None } else { Some(fmt_rational(&a)) });
    }
    if nonzero.len() == 1 {
        let (i, r) = nonzero[0];
        let neg = r.is_negative();
        let a = r.abs();
        let zp = if i == 1 { "z".to_string() } else { format!("z^{i}") };
        return (
            neg,
            Some(if a.is_one() {
                zp
            } else {
                format!("{}*{zp}", fmt_rational(&a))
            }),
        );
    }
    let mut parts = String::new();
    for (n, (i, r)) in nonzero.iter().enumerate() {
        let neg = r.is_negative();
        let a = r.abs();
        if n == 0 {
            if neg {
                parts.push('-');
            }
        } else {
            parts.push_str(if neg { " - " } else { " + " });
        }
        let zp = match i {
            0 => String::new(),
            1 => "z".to_string(),
            _ => format!("z^{i}"),
        };
        if zp.is_empty() {
            parts.push_str(&fmt_rational(&a));
        } else if a.is_one() {
            parts.push_str(&zp);
        } else {
            parts.push_str(&format!("{}*{zp}", fmt_rational(&a)));
        }
    }
    (false, Some(format!("({parts})")))
}

fn fmt_mpoly(p: &MPoly, vars: &[String]) -> String {
    if p.is_empty() {
        return "0".into();
    }
    // Descending total degree, ties broken right-to-left.
    let mut terms: Vec<(&Vec<u32>, &BElem)> = p.iter().collect();
    terms.sort_by(|(a, _), (b, _)| {
        let da: u32 = a.iter().sum();
        let db: u32 = b.iter().sum();
        db.cmp(&da)
            .then_with(|| b.iter().rev().cmp(a.iter().rev()))
    });
    let mut out = String::new();
    for (n, (e, c)) in terms.iter().enumerate() {
        let (neg, ctext) = fmt_coeff(c);
        let mono: Vec<String> = e
            .iter()
            .enumerate()
            .filter(|(_, &x)| x > 0)
            .map(|(i, &x)| {
                if x == 1 {
                    vars[i].clone()
                } else {
                    format!("{}^{x}", vars[i])
                }
            })
            .collect();
        let body = match (ctext, mono.is_empty()) {
            (None, true) => "1".to_string(),
            (None, false) => mono.join("*"),
            (Some(c), true) => c,
            (Some(c), false) => format!("{c}*{}", mono.join("*")),
        };
        if n == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        out.push_str(&body);
    }
    out
}

pub(super) fn format_scalar(x: &Scalar) -> String {
    let t = x.tower();
    let (num, den) = to_ratio(t.base(), x.val(), t.level());
    let ns = fmt_mpoly(&num, t.vars());
    if mp_is_one(&den) {
        return ns;
    }
    let ds = fmt_mpoly(&den, t.vars());
    let wrap = |s: String, p: &MPoly| {
        if p.len() > 1 || s.starts_with('-') {
            format!("({s})")
        } else {
            s
        }
    };
    format!("{}/{}", wrap(ns, &num), wrap(ds, &den))
}

// ---------------------------------------------------------------------------
// parsing
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Op(char),
}

fn tokenize(s: &str) -> Result<Vec<(usize, Tok)>> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let text: String = chars[start..i].iter().collect();
            out.push((start, Tok::Num(text.parse().unwrap())));
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push((start, Tok::Ident(chars[start..i].iter().collect())));
        } else if "+-*/^()".contains(c) {
            out.push((i, Tok::Op(c)));
            i += 1;
        } else {
            return Err(Error::Parse(format!("unexpected character `{c}` at {i}")));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    tower: &'a FieldTower,
    toks: Vec<(usize, Tok)>,
    pos: usize,
    src: &'a str,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn err(&self, msg: &str) -> Error {
        let at = self.toks.get(self.pos).map(|(p, _)| *p).unwrap_or(self.src.len());
        Error::Parse(format!("{msg} at position {at} in `{}`", self.src))
    }

    fn expr(&mut self) -> Result<Scalar> {
        let mut acc = self.term()?;
        while let Some(Tok::Op(c @ ('+' | '-'))) = self.peek().cloned() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if c == '+' { &acc + &rhs } else { &acc - &rhs };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Scalar> {
        let mut acc = self.unary()?;
        while let Some(Tok::Op(c @ ('*' | '/'))) = self.peek().cloned() {
            self.pos += 1;
            let rhs = self.unary()?;
            if c == '*' {
                acc = &acc * &rhs;
            } else {
                if rhs.is_zero() {
                    return Err(self.err("division by zero"));
                }
                acc = &acc / &rhs;
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Scalar> {
        match self.peek() {
            Some(Tok::Op('-')) => {
                self.pos += 1;
                Ok(-&self.unary()?)
            }
            Some(Tok::Op('+')) => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn exponent(&mut self) -> Result<i64> {
        let mut sign = 1i64;
        let mut paren = false;
        if let Some(Tok::Op('(')) = self.peek() {
            paren = true;
            self.pos += 1;
        }
        if let Some(Tok::Op('-')) = self.peek() {
            sign = -1;
            self.pos += 1;
        }
        let e = match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                i64::try_from(n).map_err(|_| self.err("exponent too large"))?
            }
            _ => return Err(self.err("expected integer exponent")),
        };
        if paren {
            if self.peek() != Some(&Tok::Op(')')) {
                return Err(self.err("expected `)`"));
            }
            self.pos += 1;
        }
        Ok(sign * e)
    }

    fn power(&mut self) -> Result<Scalar> {
        let b = self.atom()?;
        if let Some(Tok::Op('^')) = self.peek() {
            self.pos += 1;
            let e = self.exponent()?;
            if e < 0 && b.is_zero() {
                return Err(self.err("negative power of zero"));
            }
            return Ok(b.pow(e));
        }
        Ok(b)
    }

    fn atom(&mut self) -> Result<Scalar> {
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                let b = self
                    .tower
                    .base()
                    .from_rational(BigRational::from_integer(n))?;
                Ok(self.tower.from_base(b))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                if name == "z" {
                    Ok(self.tower.z())
                } else {
                    self.tower.var(&name).map_err(|_| self.err(&format!("unknown symbol `{name}`")))
                }
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(&Tok::Op(')')) {
                    return Err(self.err("expected `)`"));
                }
                self.pos += 1;
                Ok(e)
            }
            _ => Err(self.err("unexpected token")),
        }
    }
}

pub(super) fn parse_scalar(tower: &FieldTower, s: &str) -> Result<Scalar> {
    let toks = tokenize(s)?;
    if toks.is_empty() {
        return Err(Error::Parse("empty scalar".into()));
    }
    let mut p = Parser {
        tower,
        toks,
        pos: 0,
        src: s,
    };
    let v = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(p.err("trailing input"));
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_strings() {
        let l = FieldTower::rationals()
            .adjoin_zeta(3)
            .unwrap()
            .adjoin_vars(&["t1", "t2"])
            .unwrap();
        for s in [
            "0",
            "1",
            "-3/2",
            "z",
            "2*z + 1",
            "t1 + t1*t2",
            "(2 + t1)/(1 + t2)",
            "1/t2",
            "(z*t1^2 - 1)/(t1*t2 + 3)",
            "t1/(t1 + 1) + 1/t2",
        ] {
            let x = l.parse(s).unwrap();
            let back = l.parse(&x.to_string()).unwrap();
            assert_eq!(x, back, "{s} -> {x}");
        }
    }

    #[test]
    fn canonical_text() {
        let l = FieldTower::rationals().adjoin_vars(&["t1", "t2"]).unwrap();
        assert_eq!(l.parse("t1*t2 + t1").unwrap().to_string(), "t1*t2 + t1");
        assert_eq!(l.parse("(t1^2-1)/(t1-1)").unwrap().to_string(), "t1 + 1");
        assert_eq!(l.parse("-1/2").unwrap().to_string(), "-1/2");
    }

    #[test]
    fn parse_errors() {
        let l = FieldTower::rationals().adjoin_var("t").unwrap();
        assert!(l.parse("1/(t-t)").is_err());
        assert!(l.parse("s + 1").is_err());
        assert!(l.parse("(1 + t").is_err());
        let f3 = FieldTower::finite(3).unwrap();
        assert!(f3.parse("1/3").is_err());
        assert_eq!(f3.parse("5").unwrap(), f3.int(2));
    }
}
