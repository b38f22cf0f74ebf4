use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::{fmt_rat, rat_int, Rat, RatMatrix};
use crate::error::{Error, Result};

/// Dense univariate polynomial with rational coefficients, ascending degree.
///
/// The coefficient vector never has a trailing zero, so the zero polynomial
/// is the empty vector.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct UniPoly {
    var: String,
    coeffs: Vec<Rat>,
}

impl UniPoly {
    pub fn new(var: impl Into<String>, coeffs: Vec<Rat>) -> Self {
        let mut p = UniPoly { var: var.into(), coeffs };
        p.trim();
        p
    }

    pub fn from_ints(var: impl Into<String>, coeffs: &[i64]) -> Self {
        Self::new(var, coeffs.iter().map(|&c| rat_int(c)).collect())
    }

    pub fn zero(var: impl Into<String>) -> Self {
        UniPoly { var: var.into(), coeffs: Vec::new() }
    }

    pub fn one(var: impl Into<String>) -> Self {
        Self::constant(var, Rat::one())
    }

    pub fn constant(var: impl Into<String>, c: Rat) -> Self {
        Self::new(var, vec![c])
    }

    /// The polynomial `var`.
    pub fn x(var: impl Into<String>) -> Self {
        Self::new(var, vec![Rat::zero(), Rat::one()])
    }

    /// `(var - root)`.
    pub fn linear(var: impl Into<String>, root: Rat) -> Self {
        Self::new(var, vec![-root, Rat::one()])
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn var(&self) -> &str {
        &self.var
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rat {
        self.coeffs.get(i).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading_coeff(&self) -> Rat {
        self.coeffs.last().cloned().unwrap_or_else(Rat::zero)
    }

    pub fn with_var(mut self, var: impl Into<String>) -> Self {
        self.var = var.into();
        self
    }

    pub fn scale(&self, c: &Rat) -> Self {
        Self::new(self.var.clone(), self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Divides by the leading coefficient; the zero polynomial stays zero.
    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let lc = self.leading_coeff();
        self.scale(&(Rat::one() / lc))
    }

    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * rat_int(i as i64))
            .collect();
        Self::new(self.var.clone(), coeffs)
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Multiplicity of 0 as a root; `None` for the zero polynomial.
    pub fn order_at_zero(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.var.clone());
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, d: &UniPoly) -> (UniPoly, UniPoly) {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let dd = d.coeffs.len() - 1;
        let lc = d.leading_coeff();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::zero(self.var.clone()), self.clone());
        }
        let mut quot = vec![Rat::zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = &rem[i + dd] / &lc;
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    rem[i + j] -= &c * dc;
                }
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        (Self::new(self.var.clone(), quot), Self::new(self.var.clone(), rem))
    }

    /// Exact quotient, or `None` when the division leaves a remainder.
    pub fn div_exact(&self, d: &UniPoly) -> Option<UniPoly> {
        let (q, r) = self.div_rem(d);
        r.is_zero().then_some(q)
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// True iff `gcd(p, p')` is constant. The zero polynomial is not squarefree.
    pub fn is_squarefree(&self) -> bool {
        !self.is_zero() && self.gcd(&self.derivative()).is_constant()
    }

    /// Companion-style structure check used in tests: substitutes a square
    /// matrix into the polynomial.
    pub fn eval_matrix(&self, m: &RatMatrix) -> RatMatrix {
        let n = m.rows();
        let mut acc = RatMatrix::zeros(n, n);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(m);
            for i in 0..n {
                let v = acc.get(i, i) + c;
                acc.set(i, i, v);
            }
        }
        acc
    }

    fn check_var(&self, other: &UniPoly) -> Result<()> {
        if self.var != other.var && !self.is_constant() && !other.is_constant() {
            return Err(Error::VariableMismatch(self.var.clone(), other.var.clone()));
        }
        Ok(())
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if neg {
                write!(f, "-")?;
            } else if !first {
                write!(f, "+")?;
            }
            first = false;
            let mono = match i {
                0 => String::new(),
                1 => self.var.clone(),
                _ => format!("{}^{}", self.var, i),
            };
            if mono.is_empty() {
                write!(f, "{}", fmt_rat(&a))?;
            } else if a.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{}*{mono}", fmt_rat(&a))?;
            }
        }
        Ok(())
    }
}

impl Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect();
        UniPoly::new(pick_var(self, rhs), coeffs)
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect();
        UniPoly::new(pick_var(self, rhs), coeffs)
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero(pick_var(self, rhs));
        }
        let mut coeffs = vec![Rat::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        UniPoly::new(pick_var(self, rhs), coeffs)
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly::new(self.var.clone(), self.coeffs.iter().map(|c| -c).collect())
    }
}

fn pick_var(a: &UniPoly, b: &UniPoly) -> String {
    if a.is_constant() && !b.is_constant() {
        b.var.clone()
    } else {
        a.var.clone()
    }
}

/// Sylvester matrix of `p` (degree m) and `q` (degree k), size (m+k)².
fn sylvester(p: &UniPoly, q: &UniPoly) -> RatMatrix {
    let m = p.degree().unwrap_or(0);
    let k = q.degree().unwrap_or(0);
    let n = m + k;
    let mut s = RatMatrix::zeros(n, n);
    // rows 0..k carry p's coefficients, rows k..n carry q's, highest degree first
    for r in 0..k {
        for (j, c) in p.coeffs.iter().rev().enumerate() {
            s.set(r, r + j, c.clone());
        }
    }
    for r in 0..m {
        for (j, c) in q.coeffs.iter().rev().enumerate() {
            s.set(k + r, r + j, c.clone());
        }
    }
    s
}

/// Resultant as the Sylvester determinant.
///
/// With a zero argument the result is 0, except `Res(0, c) = 1` for a nonzero
/// constant `c` (the empty Sylvester matrix).
pub fn resultant(p: &UniPoly, q: &UniPoly) -> Result<Rat> {
    p.check_var(q)?;
    if p.is_zero() && q.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if p.is_zero() || q.is_zero() {
        let other = if p.is_zero() { q } else { p };
        return Ok(if other.is_constant() { Rat::one() } else { Rat::zero() });
    }
    Ok(sylvester(p, q).det().expect("Sylvester matrix is square"))
}

/// `(-1)^{n(n-1)/2} / a_n * Res(p, p')`. Degree-1 input gives 1.
pub fn discriminant(p: &UniPoly) -> Result<Rat> {
    let n = match p.degree() {
        None => return Err(Error::ZeroPolynomial),
        Some(0) => return Err(Error::ConstantPolynomial),
        Some(n) => n,
    };
    let res = resultant(p, &p.derivative())?;
    let sign = if (n * (n - 1) / 2) % 2 == 0 { Rat::one() } else { -Rat::one() };
    Ok(sign * res / p.leading_coeff())
}

/// `p / gcd(p, p')`, monic.
pub fn squarefree_part(p: &UniPoly) -> Result<UniPoly> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let g = p.gcd(&p.derivative());
    Ok(p.div_exact(&g).expect("gcd divides p").monic())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    fn z(c: &[i64]) -> UniPoly {
        UniPoly::from_ints("z", c)
    }

    #[test]
    fn resultant_examples() {
        assert_eq!(resultant(&z(&[1, 0, 1]), &z(&[0, 2])).unwrap(), rat(4, 1));
        assert_eq!(resultant(&z(&[1, 0, 1]), &z(&[1])).unwrap(), rat(1, 1));
        assert_eq!(resultant(&z(&[0, 0, 1]), &z(&[0, 1])).unwrap(), rat(0, 1));
    }

    #[test]
    fn resultant_variable_mismatch() {
        let w = UniPoly::from_ints("w", &[0, 1]);
        assert!(matches!(resultant(&z(&[0, 1]), &w), Err(Error::VariableMismatch(..))));
        assert!(resultant(&z(&[]), &z(&[])).is_err());
    }

    #[test]
    fn discriminant_examples() {
        assert_eq!(discriminant(&z(&[0, 0, 1])).unwrap(), rat(0, 1));
        assert_eq!(discriminant(&z(&[1, 0, 1])).unwrap(), rat(-4, 1));
        assert_eq!(discriminant(&z(&[-5, 1])).unwrap(), rat(1, 1));
        assert_eq!(discriminant(&z(&[3])), Err(Error::ConstantPolynomial));
    }

    #[test]
    fn discriminant_matches_root_formula_for_quadratics() {
        // a z^2 + b z + c has discriminant b^2 - 4ac
        for (a, b, c) in [(2, 3, -5), (1, -4, 4), (-3, 1, 7)] {
            let d = discriminant(&z(&[c, b, a])).unwrap();
            assert_eq!(d, rat(b * b - 4 * a * c, 1));
        }
    }

    #[test]
    fn squarefree_examples() {
        assert_eq!(squarefree_part(&z(&[0, 0, 1])).unwrap(), z(&[0, 1]));
        let p = UniPoly::new("z", vec![rat(4, 27), rat(0, 1), rat(1, 1)]);
        assert_eq!(squarefree_part(&p).unwrap(), p);
        let l1 = UniPoly::linear("z", rat(1, 1));
        let l2 = UniPoly::linear("z", rat(-2, 1));
        let p = &(&l1 * &l1) * &l2;
        assert_eq!(squarefree_part(&p).unwrap(), &l1 * &l2);
        assert!(squarefree_part(&z(&[])).is_err());
    }

    #[test]
    fn display_format() {
        let p = UniPoly::new("z", vec![rat(4, 27), rat(0, 1), rat(1, 1)]);
        assert_eq!(p.to_string(), "z^2+4/27");
        assert_eq!(z(&[-1, -2, 3]).to_string(), "3*z^2-2*z-1");
        assert_eq!(z(&[]).to_string(), "0");
    }
}
