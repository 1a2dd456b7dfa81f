//! Sparse multivariate polynomials over Q, plus the graded linear algebra used
//! for ideal membership at bounded degree.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::arith::{self, rat, Rat};

pub type Monomial = Vec<u32>;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Poly {
    pub nvars: usize,
    pub terms: BTreeMap<Monomial, Rat>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Poly {
        Poly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Rat) -> Poly {
        let mut p = Poly::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn one(nvars: usize) -> Poly {
        Poly::constant(nvars, Rat::one())
    }

    pub fn var(nvars: usize, i: usize) -> Poly {
        let mut m = vec![0; nvars];
        m[i] = 1;
        Poly::monomial(m, Rat::one())
    }

    pub fn monomial(m: Monomial, c: Rat) -> Poly {
        let mut p = Poly::zero(m.len());
        p.add_term(m, c);
        p
    }

    /// `x^a - x^b`
    pub fn binomial(a: Monomial, b: Monomial) -> Poly {
        Poly::monomial(a, Rat::one()) - Poly::monomial(b, Rat::one())
    }

    /// Linear form `sum c_i x_i`.
    pub fn linear(coeffs: &[Rat]) -> Poly {
        let n = coeffs.len();
        let mut p = Poly::zero(n);
        for (i, c) in coeffs.iter().enumerate() {
            let mut m = vec![0; n];
            m[i] = 1;
            p.add_term(m, c.clone());
        }
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: Rat) {
        debug_assert_eq!(m.len(), self.nvars);
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(m.clone()).or_insert_with(Rat::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.iter().sum()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let degs: BTreeSet<u32> = self.terms.keys().map(|m| m.iter().sum()).collect();
        degs.len() <= 1
    }

    pub fn homogeneous_part(&self, d: u32) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.iter().sum::<u32>() == d)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &Rat) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly { nvars: self.nvars, terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect() }
    }

    pub fn mul_monomial(&self, m: &[u32]) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(k, v)| (k.iter().zip(m).map(|(a, b)| a + b).collect(), v.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut out = Poly::one(self.nvars);
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    /// Substitute `x_i -> images[i]`; all images live in a common ring.
    pub fn substitute(&self, images: &[Poly]) -> Poly {
        assert_eq!(images.len(), self.nvars);
        let target = images.first().map_or(0, |p| p.nvars);
        let mut out = Poly::zero(target);
        let mut cache: BTreeMap<(usize, u32), Poly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut term = Poly::constant(target, c.clone());
            for (i, &e) in m.iter().enumerate() {
                if e > 0 {
                    let p = cache.entry((i, e)).or_insert_with(|| images[i].pow(e)).clone();
                    term = &term * &p;
                }
            }
            out = out + term;
        }
        out
    }

    /// Rename variables into a larger ring: variable `i` becomes `map[i]`.
    pub fn embed(&self, nvars: usize, map: &[usize]) -> Poly {
        let mut out = Poly::zero(nvars);
        for (m, c) in &self.terms {
            let mut k = vec![0; nvars];
            for (i, &e) in m.iter().enumerate() {
                k[map[i]] += e;
            }
            out.add_term(k, c.clone());
        }
        out
    }

    /// Drop every term divisible by one of the given monomials.
    pub fn kill_monomials(&self, killed: &[Monomial]) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| !killed.iter().any(|k| divides(k, m)))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Content 1 over Z, positive leading coefficient (leading = largest monomial
    /// in graded lex order).
    pub fn normalized(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let coeffs: Vec<Rat> = self.terms.values().cloned().collect();
        let ints = arith::integral_ray(&coeffs);
        let mut p = Poly::zero(self.nvars);
        for (m, c) in self.terms.keys().zip(ints) {
            p.add_term(m.clone(), rat(c));
        }
        let lead = p.leading().map(|(_, c)| c.is_negative()).unwrap_or(false);
        if lead {
            -p
        } else {
            p
        }
    }

    /// Leading term in graded lex order (higher degree first, then lex on exponents).
    pub fn leading(&self) -> Option<(&Monomial, &Rat)> {
        self.terms.iter().max_by(|a, b| grlex(a.0, b.0))
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn render(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut terms: Vec<(&Monomial, &Rat)> = self.terms.iter().collect();
        terms.sort_by(|a, b| grlex(b.0, a.0));
        let mut s = String::new();
        for (i, (m, c)) in terms.iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if i == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let mono = render_monomial(m, names);
            if mono.is_empty() {
                s.push_str(&a.to_string());
            } else if a.is_one() {
                s.push_str(&mono);
            } else {
                s.push_str(&format!("{}*{}", a, mono));
            }
        }
        s
    }
}

pub fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

pub fn grlex(a: &Monomial, b: &Monomial) -> std::cmp::Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    da.cmp(&db).then_with(|| a.cmp(b))
}

pub fn render_monomial(m: &[u32], names: &[String]) -> String {
    let parts: Vec<String> = m
        .iter()
        .enumerate()
        .filter(|(_, e)| **e > 0)
        .map(|(i, &e)| if e == 1 { names[i].clone() } else { format!("{}^{}", names[i], e) })
        .collect();
    parts.join("*")
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (1..=self.nvars).map(|i| format!("x{}", i)).collect();
        write!(f, "{}", self.render(&names))
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(self, rhs: Poly) -> Poly {
        &self + &rhs
    }
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            let e = out.terms.entry(m.clone()).or_insert_with(Rat::zero);
            *e += c;
            if e.is_zero() {
                out.terms.remove(m);
            }
        }
        out
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, rhs: Poly) -> Poly {
        &self - &rhs
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self + &(-rhs)
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly { nvars: self.nvars, terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out: BTreeMap<Monomial, Rat> = BTreeMap::new();
        for (a, x) in &self.terms {
            for (b, y) in &rhs.terms {
                let m: Monomial = a.iter().zip(b).map(|(p, q)| p + q).collect();
                *out.entry(m).or_insert_with(Rat::zero) += x * y;
            }
        }
        out.retain(|_, v| !v.is_zero());
        Poly { nvars: self.nvars, terms: out }
    }
}

/// All monomials of total degree `d` in `n` variables, in lex order.
pub fn monomials_of_degree(n: usize, d: u32) -> Vec<Monomial> {
    let mut out = vec![];
    let mut cur = vec![0u32; n];
    fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        let n = cur.len();
        if i + 1 == n {
            cur[i] = left;
            out.push(cur.clone());
            cur[i] = 0;
            return;
        }
        for e in (0..=left).rev() {
            cur[i] = e;
            rec(i + 1, left - e, cur, out);
        }
        cur[i] = 0;
    }
    if n == 0 {
        if d == 0 {
            out.push(vec![]);
        }
        return out;
    }
    rec(0, d, &mut cur, &mut out);
    out
}

/// Degree `d` part of the ideal generated by homogeneous `gens`, as a list of
/// spanning polynomials.
pub fn graded_piece(gens: &[Poly], d: u32) -> Vec<Poly> {
    let mut out = vec![];
    for g in gens {
        let Some(dg) = g.degree() else { continue };
        if dg > d {
            continue;
        }
        for m in monomials_of_degree(g.nvars, d - dg) {
            out.push(g.mul_monomial(&m));
        }
    }
    out
}

/// Coordinates of polynomials on their joint monomial support.
pub fn coefficient_matrix(polys: &[Poly]) -> (Vec<Monomial>, Vec<Vec<Rat>>) {
    let support: BTreeSet<Monomial> = polys.iter().flat_map(|p| p.terms.keys().cloned()).collect();
    let support: Vec<Monomial> = support.into_iter().collect();
    let rows = polys
        .iter()
        .map(|p| support.iter().map(|m| p.terms.get(m).cloned().unwrap_or_else(Rat::zero)).collect())
        .collect();
    (support, rows)
}

pub fn span_rank(polys: &[Poly]) -> usize {
    let (_, rows) = coefficient_matrix(polys);
    arith::rank(&rows)
}

pub fn in_linear_span(polys: &[Poly], p: &Poly) -> bool {
    if p.is_zero() {
        return true;
    }
    let mut all = polys.to_vec();
    all.push(p.clone());
    span_rank(&all) == span_rank(polys)
}

/// Membership of `p` in the ideal generated by homogeneous `gens`, tested one
/// homogeneous component at a time.
pub fn in_homogeneous_ideal(gens: &[Poly], p: &Poly) -> bool {
    let Some(top) = p.degree() else { return true };
    (0..=top).all(|d| {
        let part = p.homogeneous_part(d);
        part.is_zero() || in_linear_span(&graded_piece(gens, d), &part)
    })
}

/// Reduced row echelon basis of a span of polynomials, each normalized.
pub fn echelon_basis(polys: &[Poly]) -> Vec<Poly> {
    if polys.is_empty() {
        return vec![];
    }
    let nvars = polys[0].nvars;
    let (mut support, _) = coefficient_matrix(polys);
    // leading monomials first
    support.sort_by(|a, b| grlex(b, a));
    let mut rows: Vec<Vec<Rat>> = polys
        .iter()
        .map(|p| support.iter().map(|m| p.terms.get(m).cloned().unwrap_or_else(Rat::zero)).collect())
        .collect();
    arith::rref(&mut rows);
    rows.iter()
        .map(|r| {
            let mut p = Poly::zero(nvars);
            for (m, c) in support.iter().zip(r) {
                p.add_term(m.clone(), c.clone());
            }
            p.normalized()
        })
        .filter(|p| !p.is_zero())
        .collect()
}

/// A span of polynomials in reduced echelon form with respect to graded lex
/// order, used to compute canonical normal forms modulo the span.
pub struct EchelonSpan {
    rows: Vec<(Monomial, Poly)>,
}

impl EchelonSpan {
    pub fn new(polys: &[Poly]) -> EchelonSpan {
        if polys.is_empty() {
            return EchelonSpan { rows: vec![] };
        }
        let nvars = polys[0].nvars;
        let (mut support, _) = coefficient_matrix(polys);
        support.sort_by(|a, b| grlex(b, a));
        let mut m: Vec<Vec<Rat>> = polys
            .iter()
            .map(|p| support.iter().map(|x| p.terms.get(x).cloned().unwrap_or_else(Rat::zero)).collect())
            .collect();
        let pivots = arith::rref(&mut m);
        let rows = pivots
            .iter()
            .zip(&m)
            .map(|(&c, r)| {
                let mut p = Poly::zero(nvars);
                for (x, v) in support.iter().zip(r) {
                    p.add_term(x.clone(), v.clone());
                }
                (support[c].clone(), p)
            })
            .collect();
        EchelonSpan { rows }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Canonical representative of `p` modulo the span.
    pub fn reduce(&self, p: &Poly) -> Poly {
        let mut q = p.clone();
        for (piv, row) in &self.rows {
            if let Some(c) = q.terms.get(piv).cloned() {
                q = &q - &row.scale(&c);
            }
        }
        q
    }
}

/// Membership in a lattice ideal `I_L = (x^u - x^v : u - v in L)`: a polynomial
/// lies in `I_L` iff its coefficients sum to zero on every class of monomials
/// modulo `L`. `class` maps a monomial to its class label.
pub fn in_lattice_ideal<K: Ord>(p: &Poly, class: impl Fn(&Monomial) -> K) -> bool {
    let mut sums: BTreeMap<K, Rat> = BTreeMap::new();
    for (m, c) in &p.terms {
        *sums.entry(class(m)).or_insert_with(Rat::zero) += c;
    }
    sums.values().all(|v| v.is_zero())
}

/// Parse a polynomial written with `+`, `-`, `*`, `^`, parentheses, integer
/// coefficients and juxtaposition as product, e.g. `t(t-2e) - z4z8`. Variable
/// names are a letter followed by digits and must occur in `names`.
pub fn parse(s: &str, names: &[&str]) -> std::result::Result<Poly, String> {
    let toks = tokenize(s)?;
    let mut pos = 0;
    let p = parse_expr(&toks, &mut pos, names)?;
    if pos != toks.len() {
        return Err(format!("unexpected token {:?}", toks[pos]));
    }
    Ok(p)
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(i64),
    Var(String),
    Op(char),
}

fn tokenize(s: &str) -> std::result::Result<Vec<Tok>, String> {
    let cs: Vec<char> = s.chars().collect();
    let mut out = vec![];
    let mut i = 0;
    while i < cs.len() {
        let c = cs[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let j = (i..cs.len()).find(|&j| !cs[j].is_ascii_digit()).unwrap_or(cs.len());
            let v: String = cs[i..j].iter().collect();
            out.push(Tok::Num(v.parse().map_err(|e| format!("{e}"))?));
            i = j;
        } else if c.is_alphabetic() {
            let j = (i + 1..cs.len()).find(|&j| !cs[j].is_ascii_digit()).unwrap_or(cs.len());
            out.push(Tok::Var(cs[i..j].iter().collect()));
            i = j;
        } else if "+-*^()".contains(c) {
            out.push(Tok::Op(c));
            i += 1;
        } else {
            return Err(format!("unexpected character {c:?}"));
        }
    }
    Ok(out)
}

fn parse_expr(t: &[Tok], pos: &mut usize, names: &[&str]) -> std::result::Result<Poly, String> {
    let mut sign = 1;
    if t.get(*pos) == Some(&Tok::Op('-')) {
        sign = -1;
        *pos += 1;
    }
    let mut acc = parse_term(t, pos, names)?.scale(&rat(sign));
    while let Some(Tok::Op(op @ ('+' | '-'))) = t.get(*pos) {
        let op = *op;
        *pos += 1;
        let rhs = parse_term(t, pos, names)?;
        acc = if op == '+' { acc + rhs } else { acc - rhs };
    }
    Ok(acc)
}

fn parse_term(t: &[Tok], pos: &mut usize, names: &[&str]) -> std::result::Result<Poly, String> {
    let mut acc = parse_factor(t, pos, names)?;
    loop {
        match t.get(*pos) {
            Some(Tok::Op('*')) => {
                *pos += 1;
                acc = acc * parse_factor(t, pos, names)?;
            }
            Some(Tok::Num(_)) | Some(Tok::Var(_)) | Some(Tok::Op('(')) => {
                acc = acc * parse_factor(t, pos, names)?;
            }
            _ => return Ok(acc),
        }
    }
}

fn parse_factor(t: &[Tok], pos: &mut usize, names: &[&str]) -> std::result::Result<Poly, String> {
    let n = names.len();
    let base = match t.get(*pos) {
        Some(Tok::Num(v)) => {
            *pos += 1;
            Poly::constant(n, rat(*v))
        }
        Some(Tok::Var(name)) => {
            *pos += 1;
            let i = names.iter().position(|x| x == name).ok_or_else(|| format!("unknown variable {name}"))?;
            Poly::var(n, i)
        }
        Some(Tok::Op('(')) => {
            *pos += 1;
            let e = parse_expr(t, pos, names)?;
            if t.get(*pos) != Some(&Tok::Op(')')) {
                return Err("missing )".into());
            }
            *pos += 1;
            e
        }
        other => return Err(format!("unexpected {other:?}")),
    };
    if t.get(*pos) == Some(&Tok::Op('^')) {
        *pos += 1;
        let Some(Tok::Num(k)) = t.get(*pos) else { return Err("exponent expected".into()) };
        *pos += 1;
        return Ok(base.pow(*k as u32));
    }
    Ok(base)
}

#[cfg(test)]
mod tests {

    #[test]
    fn parse_products_and_powers() {
        let names = ["t", "e", "z4", "z8"];
        let p = parse("t(t-2e) - z4z8", &names).unwrap();
        let t = Poly::var(4, 0);
        let e = Poly::var(4, 1);
        let expect = &(&t * &(&t - &e.scale(&rat(2)))) - &(&Poly::var(4, 2) * &Poly::var(4, 3));
        assert_eq!(p, expect);
        assert_eq!(parse("-t^2 + 3*e", &names).unwrap(), &e.scale(&rat(3)) - &t.pow(2));
        assert!(parse("q1", &names).is_err());
    }
    use super::*;

    fn x(i: usize) -> Poly {
        Poly::var(3, i)
    }

    #[test]
    fn arithmetic() {
        let p = &x(0) + &x(1);
        let q = &p * &p;
        assert_eq!(q.terms.len(), 3);
        assert_eq!((&q - &q).terms.len(), 0);
        assert_eq!(p.pow(3).degree(), Some(3));
    }

    #[test]
    fn substitution() {
        // x0 -> x1 + x2, x1 -> x1, x2 -> 0
        let p = &x(0) * &x(0) - x(1);
        let imgs = vec![&x(1) + &x(2), x(1), Poly::zero(3)];
        let r = p.substitute(&imgs);
        let expect = &(&x(1) + &x(2)).pow(2) - &x(1);
        assert_eq!(r, expect);
    }

    #[test]
    fn ideal_membership() {
        let g = vec![&x(0) * &x(1)];
        assert!(in_homogeneous_ideal(&g, &(&(&x(0) * &x(1)) * &x(2))));
        assert!(!in_homogeneous_ideal(&g, &(&x(0) * &x(0))));
    }

    #[test]
    fn lattice_membership() {
        // L spanned by (1,-1,0): classes labelled by (a+b, c)
        let p = &(&x(0) * &x(2)) - &(&x(1) * &x(2));
        assert!(in_lattice_ideal(&p, |m| (m[0] + m[1], m[2])));
        assert!(!in_lattice_ideal(&x(0), |m| (m[0] + m[1], m[2])));
    }

    #[test]
    fn echelon_normalizes() {
        let p = (&(&x(0) * &x(1)) * &Poly::constant(3, rat(-2))).clone();
        let b = echelon_basis(&[p]);
        assert_eq!(b, vec![&x(0) * &x(1)]);
    }

    #[test]
    fn monomial_count() {
        assert_eq!(monomials_of_degree(3, 2).len(), 6);
        assert_eq!(monomials_of_degree(7, 3).len(), 84);
    }
}
