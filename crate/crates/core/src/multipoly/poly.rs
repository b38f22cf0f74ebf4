use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::{Monomial, MonomialOrder, Ring};
use crate::arith::{fmt_rat, rat_int, Rat, RatMatrix, UniPoly};
use crate::error::{Error, Result};

/// Sparse polynomial: map from exponent vector to nonzero coefficient.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MultiPoly {
    ring: Ring,
    terms: BTreeMap<Monomial, Rat>,
}

impl MultiPoly {
    pub fn zero(ring: &Ring) -> Self {
        MultiPoly { ring: ring.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(ring: &Ring, c: Rat) -> Self {
        let mut p = Self::zero(ring);
        p.add_term(Monomial::one(ring.arity()), c);
        p
    }

    pub fn one(ring: &Ring) -> Self {
        Self::constant(ring, Rat::one())
    }

    pub fn var(ring: &Ring, i: usize) -> Self {
        Self::monomial(ring, Monomial::var(ring.arity(), i, 1), Rat::one())
    }

    pub fn var_named(ring: &Ring, name: &str) -> Result<Self> {
        Ok(Self::var(ring, ring.index(name)?))
    }

    pub fn monomial(ring: &Ring, m: Monomial, c: Rat) -> Self {
        assert_eq!(m.arity(), ring.arity());
        let mut p = Self::zero(ring);
        p.add_term(m, c);
        p
    }

    pub fn from_terms(ring: &Ring, terms: impl IntoIterator<Item = (Monomial, Rat)>) -> Self {
        let mut p = Self::zero(ring);
        for (m, c) in terms {
            assert_eq!(m.arity(), ring.arity());
            p.add_term(m, c);
        }
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rat)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Rat {
        self.terms.get(m).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn constant_coeff(&self) -> Rat {
        self.coeff(&Monomial::one(self.ring.arity()))
    }

    /// Total degree; `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::deg).max()
    }

    /// Least total degree of a term; `None` for zero.
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::deg).min()
    }

    pub fn degree_in(&self, var: usize) -> Option<u32> {
        self.terms.keys().map(|m| m.exps()[var]).max()
    }

    /// Terms sorted descending under `ord`.
    pub fn sorted_terms(&self, ord: &MonomialOrder) -> Vec<(Monomial, Rat)> {
        let mut v: Vec<(Monomial, Rat)> = self.terms.iter().map(|(m, c)| (m.clone(), c.clone())).collect();
        v.sort_by(|a, b| ord.cmp(&b.0, &a.0));
        v
    }

    pub fn leading_term(&self, ord: &MonomialOrder) -> Option<(Monomial, Rat)> {
        self.terms
            .iter()
            .max_by(|a, b| ord.cmp(a.0, b.0))
            .map(|(m, c)| (m.clone(), c.clone()))
    }

    fn check_ring(&self, other: &MultiPoly) {
        assert!(self.ring == other.ring, "ring mismatch: {} vs {}", self.ring, other.ring);
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero(&self.ring);
        }
        MultiPoly { ring: self.ring.clone(), terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect() }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero(&self.ring);
        }
        MultiPoly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(k, a)| (k.mul(m), a * c)).collect(),
        }
    }

    /// Makes the leading coefficient under `ord` equal to 1.
    pub fn monic(&self, ord: &MonomialOrder) -> Self {
        match self.leading_term(ord) {
            Some((_, c)) => self.scale(&(Rat::one() / c)),
            None => self.clone(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(&self.ring);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn derivative(&self, var: usize) -> Self {
        let mut out = Self::zero(&self.ring);
        for (m, c) in &self.terms {
            let e = m.exps()[var];
            if e == 0 {
                continue;
            }
            let mut d = m.clone();
            d.0[var] -= 1;
            out.add_term(d, c * rat_int(e as i64));
        }
        out
    }

    pub fn derivative_named(&self, var: &str) -> Result<Self> {
        Ok(self.derivative(self.ring.index(var)?))
    }

    /// Partial derivatives in the germ coordinates.
    pub fn jacobian(&self) -> Vec<MultiPoly> {
        self.ring.x_vars().map(|i| self.derivative(i)).collect()
    }

    pub fn hessian(&self) -> Vec<Vec<MultiPoly>> {
        let jac = self.jacobian();
        jac.iter().map(|d| self.ring.x_vars().map(|j| d.derivative(j)).collect()).collect()
    }

    /// Determinant of the Hessian in the germ coordinates (Laplace expansion).
    pub fn hessian_det(&self) -> MultiPoly {
        det_poly(&self.hessian(), &self.ring)
    }

    /// Replaces variable `var` by `value`.
    pub fn substitute(&self, var: usize, value: &MultiPoly) -> Self {
        self.check_ring(value);
        let mut powers: Vec<MultiPoly> = vec![Self::one(&self.ring)];
        let mut out = Self::zero(&self.ring);
        for (m, c) in &self.terms {
            let e = m.exps()[var] as usize;
            while powers.len() <= e {
                let next = &powers[powers.len() - 1] * value;
                powers.push(next);
            }
            let mut rest = m.clone();
            rest.0[var] = 0;
            out = &out + &powers[e].mul_monomial(&rest, c);
        }
        out
    }

    pub fn substitute_value(&self, var: usize, value: &Rat) -> Self {
        self.substitute(var, &Self::constant(&self.ring, value.clone()))
    }

    pub fn substitute_named(&self, var: &str, value: &MultiPoly) -> Result<Self> {
        Ok(self.substitute(self.ring.index(var)?, value))
    }

    pub fn eval(&self, point: &[Rat]) -> Rat {
        assert_eq!(point.len(), self.ring.arity());
        let mut acc = Rat::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(m.exps()) {
                for _ in 0..e {
                    t *= x;
                }
            }
            acc += t;
        }
        acc
    }

    /// Least I-degree of a term, where I is generated by all germ
    /// coordinates except the line variable. This is the maximal p with
    /// f ∈ I^p since I^p is a monomial ideal.
    pub fn i_order(&self) -> Result<u32> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let iv = self.ring.i_vars();
        Ok(self.terms.keys().map(|m| m.partial_deg(iv.clone())).min().expect("nonzero"))
    }

    /// Sum of the terms with I-degree exactly `d`.
    pub fn i_homogeneous_part(&self, d: u32) -> Self {
        let iv = self.ring.i_vars();
        MultiPoly {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.partial_deg(iv.clone()) == d)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Terms with total degree below `d`.
    pub fn truncate_degree(&self, d: u32) -> Self {
        MultiPoly {
            ring: self.ring.clone(),
            terms: self.terms.iter().filter(|(m, _)| m.deg() < d).map(|(m, c)| (m.clone(), c.clone())).collect(),
        }
    }

    /// Re-expresses the polynomial in `target`, whose first variables are
    /// this ring's variables; extra variables get exponent 0.
    pub fn embed(&self, target: &Ring) -> Self {
        assert!(target.arity() >= self.ring.arity());
        assert!(target.names()[..self.ring.arity()] == *self.ring.names());
        let a = target.arity();
        MultiPoly {
            ring: target.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let mut e = m.0.clone();
                    e.resize(a, 0);
                    (Monomial(e), c.clone())
                })
                .collect(),
        }
    }

    /// Inverse of [`embed`](Self::embed); fails if a dropped variable occurs.
    pub fn restrict(&self, target: &Ring) -> Result<Self> {
        let a = target.arity();
        assert!(a <= self.ring.arity());
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            if m.exps()[a..].iter().any(|&e| e > 0) {
                return Err(Error::Inconsistent(format!("cannot restrict {self} to {target}")));
            }
            terms.insert(Monomial::from_slice(&m.exps()[..a]), c.clone());
        }
        Ok(MultiPoly { ring: target.clone(), terms })
    }

    /// Maps every variable through `map` (index in this ring to index in
    /// `target`).
    pub fn rename(&self, target: &Ring, map: &[usize]) -> Self {
        let mut out = Self::zero(target);
        for (m, c) in &self.terms {
            let mut e = Monomial::one(target.arity());
            for (i, &x) in m.exps().iter().enumerate() {
                e.0[map[i]] += x;
            }
            out.add_term(e, c.clone());
        }
        out
    }

    /// Exact division by a monomial; `None` if some term is not divisible.
    pub fn div_monomial(&self, m: &Monomial) -> Option<Self> {
        let mut terms = BTreeMap::new();
        for (k, c) in &self.terms {
            if !m.divides(k) {
                return None;
            }
            terms.insert(m.quotient_of(k), c.clone());
        }
        Some(MultiPoly { ring: self.ring.clone(), terms })
    }

    /// Exact division by a nonzero polynomial (global reduction); `None` on a
    /// nonzero remainder.
    pub fn div_exact(&self, d: &MultiPoly) -> Option<Self> {
        self.check_ring(d);
        let ord = MonomialOrder::global(&self.ring);
        let (lm, lc) = d.leading_term(&ord)?;
        let mut rem = self.clone();
        let mut q = Self::zero(&self.ring);
        while let Some((m, c)) = rem.leading_term(&ord) {
            if !lm.divides(&m) {
                return None;
            }
            let qm = lm.quotient_of(&m);
            let qc = c / &lc;
            rem = &rem - &d.mul_monomial(&qm, &qc);
            q.add_term(qm, qc);
        }
        Some(q)
    }

    /// Converts a polynomial in the single variable `var` to dense form.
    pub fn to_unipoly(&self, var: usize) -> Result<UniPoly> {
        let mut coeffs = vec![Rat::zero(); self.degree_in(var).unwrap_or(0) as usize + 1];
        for (m, c) in &self.terms {
            if m.exps().iter().enumerate().any(|(i, &e)| i != var && e > 0) {
                return Err(Error::Invalid(format!("{self} is not univariate in {}", self.ring.name(var))));
            }
            coeffs[m.exps()[var] as usize] = c.clone();
        }
        Ok(UniPoly::new(self.ring.name(var), coeffs))
    }

    pub fn from_unipoly(ring: &Ring, var: usize, p: &UniPoly) -> Self {
        Self::from_terms(
            ring,
            p.coeffs().iter().enumerate().map(|(e, c)| (Monomial::var(ring.arity(), var, e as u32), c.clone())),
        )
    }

    /// Groups terms by their exponents outside `var`: returns pairs
    /// (monomial with `var` exponent zeroed, coefficient polynomial in `var`).
    pub fn coefficients_in(&self, var: usize) -> Vec<(Monomial, UniPoly)> {
        let mut groups: BTreeMap<Monomial, Vec<(u32, Rat)>> = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut k = m.clone();
            let e = k.0[var];
            k.0[var] = 0;
            groups.entry(k).or_default().push((e, c.clone()));
        }
        groups
            .into_iter()
            .map(|(k, v)| {
                let deg = v.iter().map(|(e, _)| *e).max().unwrap_or(0) as usize;
                let mut coeffs = vec![Rat::zero(); deg + 1];
                for (e, c) in v {
                    coeffs[e as usize] = c;
                }
                (k, UniPoly::new(self.ring.name(var), coeffs))
            })
            .collect()
    }

    /// Hessian evaluated at a rational point.
    pub fn hessian_at(&self, point: &[Rat]) -> RatMatrix {
        let h = self.hessian();
        RatMatrix::from_rows(h.iter().map(|row| row.iter().map(|e| e.eval(point)).collect()).collect())
    }
}

fn det_poly(m: &[Vec<MultiPoly>], ring: &Ring) -> MultiPoly {
    let n = m.len();
    match n {
        0 => MultiPoly::one(ring),
        1 => m[0][0].clone(),
        2 => &(&m[0][0] * &m[1][1]) - &(&m[0][1] * &m[1][0]),
        _ => {
            let mut acc = MultiPoly::zero(ring);
            for j in 0..n {
                if m[0][j].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<MultiPoly>> = m[1..]
                    .iter()
                    .map(|row| row.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, e)| e.clone()).collect())
                    .collect();
                let t = &m[0][j] * &det_poly(&minor, ring);
                acc = if j % 2 == 0 { &acc + &t } else { &acc - &t };
            }
            acc
        }
    }
}

/// Printing order: descending degree reverse lexicographic over all
/// variables, independent of any active ordering.
fn print_cmp(a: &Monomial, b: &Monomial) -> Ordering {
    a.deg().cmp(&b.deg()).then_with(|| {
        for (x, y) in a.exps().iter().zip(b.exps()).rev() {
            if x != y {
                return y.cmp(x);
            }
        }
        Ordering::Equal
    })
}

impl MultiPoly {
    /// Writes the terms in the given order (coefficients `a` or `a/b`).
    pub fn fmt_with(&self, ord: Option<&MonomialOrder>) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut terms: Vec<(&Monomial, &Rat)> = self.terms.iter().collect();
        match ord {
            Some(o) => terms.sort_by(|a, b| o.cmp(b.0, a.0)),
            None => terms.sort_by(|a, b| print_cmp(b.0, a.0)),
        }
        let mut s = String::new();
        for (i, (m, c)) in terms.into_iter().enumerate() {
            if c.is_negative() {
                s.push('-');
            } else if i > 0 {
                s.push('+');
            }
            let a = c.abs();
            let mono: Vec<String> = m
                .exps()
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(v, &e)| {
                    if e == 1 {
                        self.ring.name(v).to_string()
                    } else {
                        format!("{}^{e}", self.ring.name(v))
                    }
                })
                .collect();
            if mono.is_empty() {
                s.push_str(&fmt_rat(&a));
            } else {
                if !a.is_one() {
                    s.push_str(&fmt_rat(&a));
                    s.push('*');
                }
                s.push_str(&mono.join("*"));
            }
        }
        s
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_with(None))
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        self.check_ring(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        self.check_ring(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        self.check_ring(rhs);
        let mut out = MultiPoly::zero(&self.ring);
        for (a, ca) in &self.terms {
            for (b, cb) in &rhs.terms {
                out.add_term(a.mul(b), ca * cb);
            }
        }
        out
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        self.scale(&-Rat::one())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use crate::multipoly::parse;

    fn ring() -> Ring {
        Ring::parse_spec("x,y,z;t").unwrap()
    }

    fn p(s: &str) -> MultiPoly {
        parse(s, &ring()).unwrap()
    }

    #[test]
    fn i_order_examples() {
        assert_eq!(p("x^3+y^3*z").i_order().unwrap(), 3);
        assert_eq!(p("x^2+y^2*z").i_order().unwrap(), 2);
        assert_eq!(p("z^5").i_order().unwrap(), 0);
        assert!(p("0").i_order().is_err());
    }

    #[test]
    fn jacobian_example() {
        let j = p("x^3+y^3*z").jacobian();
        assert_eq!(j, vec![p("3*x^2"), p("3*y^2*z"), p("y^3")]);
    }

    #[test]
    fn hessian_examples() {
        assert_eq!(p("x^2+y^2+z^2").hessian_det(), p("8"));
        // t is not a germ coordinate and stays out of the Hessian
        assert_eq!(p("x*y+z^2+t*x^2").hessian_det(), p("-2"));
    }

    #[test]
    fn substitution_is_linear_in_t() {
        let f = p("x^3+y^3*z");
        let g = p("x^2*y+x*y^2");
        let ft = &f + &(&p("t") * &g);
        let half = ft.substitute_value(3, &rat(1, 2));
        assert_eq!(half, &f + &g.scale(&rat(1, 2)));
    }

    #[test]
    fn printing() {
        assert_eq!(p("2/3*x*y^2 - z").to_string(), "2/3*x*y^2-z");
        assert_eq!(p("-1 + -x").to_string(), "-x-1");
        assert_eq!(p("0").to_string(), "0");
        assert_eq!(p("z^2+4/27").to_string(), "z^2+4/27");
    }

    #[test]
    fn exact_division() {
        let a = p("x^2-y^2");
        assert_eq!(a.div_exact(&p("x+y")).unwrap(), p("x-y"));
        assert!(a.div_exact(&p("x+2*y")).is_none());
        assert_eq!(p("x^2*z+x*y").div_monomial(&Monomial::from_slice(&[1, 0, 0, 0])).unwrap(), p("x*z+y"));
    }

    #[test]
    fn coefficients_in_line_variable() {
        let f = p("x^3*z+x^3*z^2+y^3");
        let c = f.coefficients_in(2);
        assert_eq!(c.len(), 2);
        for (m, u) in c {
            if m.exps()[0] == 3 {
                assert_eq!(u, UniPoly::from_ints("z", &[0, 1, 1]));
            } else {
                assert_eq!(u, UniPoly::from_ints("z", &[1]));
            }
        }
    }
}
