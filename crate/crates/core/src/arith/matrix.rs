use std::fmt;

use num_traits::{One, Zero};

use super::{fmt_rat, Rat, UniPoly};
use crate::error::{Error, Result};

/// Dense row-major rational matrix.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix { rows, cols, data: vec![Rat::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rat::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        RatMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn diagonal(entries: &[Rat]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, e) in entries.iter().enumerate() {
            m.set(i, i, e.clone());
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rat {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rat) {
        self.data[r * self.cols + c] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn mul(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = RatMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn sub(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn commutes_with(&self, other: &RatMatrix) -> bool {
        self.mul(other) == other.mul(self)
    }

    /// Determinant by Bareiss elimination.
    pub fn det(&self) -> Result<Rat> {
        if !self.is_square() {
            return Err(Error::NotSquare { rows: self.rows, cols: self.cols });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(Rat::one());
        }
        let mut a: Vec<Vec<Rat>> = (0..n).map(|i| self.data[i * n..(i + 1) * n].to_vec()).collect();
        let mut sign = Rat::one();
        let mut prev = Rat::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                    Some(r) => {
                        a.swap(k, r);
                        sign = -sign;
                    }
                    None => return Ok(Rat::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                    a[i][j] = v;
                }
            }
            prev = a[k][k].clone();
        }
        Ok(sign * &a[n - 1][n - 1])
    }

    /// Rank over the rationals.
    pub fn rank(&self) -> usize {
        let mut a: Vec<Vec<Rat>> =
            (0..self.rows).map(|i| self.data[i * self.cols..(i + 1) * self.cols].to_vec()).collect();
        let mut rank = 0;
        for c in 0..self.cols {
            let Some(p) = (rank..self.rows).find(|&r| !a[r][c].is_zero()) else { continue };
            a.swap(rank, p);
            let inv = Rat::one() / &a[rank][c];
            for j in c..self.cols {
                a[rank][j] = &a[rank][j] * &inv;
            }
            for r in 0..self.rows {
                if r != rank && !a[r][c].is_zero() {
                    let f = a[r][c].clone();
                    for j in c..self.cols {
                        let v = &a[rank][j] * &f;
                        a[r][j] -= v;
                    }
                }
            }
            rank += 1;
            if rank == self.rows {
                break;
            }
        }
        rank
    }

    /// Monic characteristic polynomial `det(λI − M)` via the division-free
    /// Berkowitz recurrence.
    pub fn char_poly(&self, var: &str) -> Result<UniPoly> {
        if !self.is_square() {
            return Err(Error::NotSquare { rows: self.rows, cols: self.cols });
        }
        let n = self.rows;
        // coefficients highest degree first: [1, c1, ..., c_r]
        let mut c: Vec<Rat> = vec![Rat::one()];
        for r in 0..n {
            // leading (r+1)x(r+1) block: A = top-left r×r, S = column, R = row
            let mut col = Vec::with_capacity(r + 2);
            col.push(Rat::one());
            col.push(-self.get(r, r).clone());
            // v = S, then A·S, A²·S, ...
            let mut v: Vec<Rat> = (0..r).map(|i| self.get(i, r).clone()).collect();
            for _ in 0..r {
                let rs: Rat = (0..r).map(|j| self.get(r, j) * &v[j]).sum();
                col.push(-rs);
                v = (0..r).map(|i| (0..r).map(|j| self.get(i, j) * &v[j]).sum()).collect();
            }
            let mut next = vec![Rat::zero(); r + 2];
            for (i, slot) in next.iter_mut().enumerate() {
                for (j, cj) in c.iter().enumerate() {
                    if i >= j && i - j < col.len() {
                        *slot += &col[i - j] * cj;
                    }
                }
            }
            c = next;
        }
        c.reverse();
        Ok(UniPoly::new(var, c))
    }
}

impl fmt::Display for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| fmt_rat(self.get(r, c))).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Determinant of a square matrix of univariate polynomials (Bareiss with
/// exact polynomial division).
pub fn det_unipoly_matrix(m: &[Vec<UniPoly>], var: &str) -> Result<UniPoly> {
    let n = m.len();
    if m.iter().any(|row| row.len() != n) {
        return Err(Error::NotSquare { rows: n, cols: m.first().map_or(0, Vec::len) });
    }
    if n == 0 {
        return Ok(UniPoly::one(var));
    }
    let mut a: Vec<Vec<UniPoly>> = m.to_vec();
    let mut negate = false;
    let mut prev = UniPoly::one(var);
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    negate = !negate;
                }
                None => return Ok(UniPoly::zero(var)),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = num
                    .div_exact(&prev)
                    .ok_or_else(|| Error::Inconsistent("Bareiss division not exact".into()))?;
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone().with_var(var);
    Ok(if negate { -&d } else { d })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, rat_int};

    #[test]
    fn char_poly_examples() {
        let id = RatMatrix::identity(2);
        let l1 = UniPoly::linear("l", rat(1, 1));
        assert_eq!(id.char_poly("l").unwrap(), &l1 * &l1);

        let c = RatMatrix::from_rows(vec![vec![rat(7, 3)]]);
        assert_eq!(c.char_poly("l").unwrap(), UniPoly::linear("l", rat(7, 3)));

        let d = RatMatrix::diagonal(&[rat_int(0), rat_int(0), rat_int(3)]);
        let expect = &UniPoly::from_ints("l", &[0, 0, 1]) * &UniPoly::linear("l", rat_int(3));
        assert_eq!(d.char_poly("l").unwrap(), expect);

        assert!(RatMatrix::zeros(2, 3).char_poly("l").is_err());
    }

    #[test]
    fn det_small() {
        let m = RatMatrix::from_rows(vec![
            vec![rat_int(0), rat_int(2), rat_int(1)],
            vec![rat_int(1), rat_int(0), rat_int(0)],
            vec![rat_int(3), rat_int(1), rat_int(5)],
        ]);
        // cofactor expansion along the second row: -1 * (2*5 - 1*1) = -9
        assert_eq!(m.det().unwrap(), rat_int(-9));
        assert_eq!(RatMatrix::identity(4).det().unwrap(), rat_int(1));
    }

    #[test]
    fn rank_small() {
        let m = RatMatrix::from_rows(vec![
            vec![rat_int(1), rat_int(2)],
            vec![rat_int(2), rat_int(4)],
        ]);
        assert_eq!(m.rank(), 1);
        assert_eq!(RatMatrix::zeros(3, 3).rank(), 0);
        assert_eq!(RatMatrix::identity(3).rank(), 3);
    }

    #[test]
    fn poly_matrix_det() {
        let z = UniPoly::x("z");
        let one = UniPoly::one("z");
        let zero = UniPoly::zero("z");
        let m = vec![vec![one.clone(), zero.clone()], vec![zero.clone(), z.clone()]];
        assert_eq!(det_unipoly_matrix(&m, "z").unwrap(), z);
        let m = vec![vec![zero.clone(), one.clone()], vec![z.clone(), zero.clone()]];
        assert_eq!(det_unipoly_matrix(&m, "z").unwrap(), -&z);
    }
}
