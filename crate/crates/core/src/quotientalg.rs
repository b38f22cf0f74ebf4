//! Finite-dimensional quotient algebras with monomial bases and
//! multiplication matrices.

use std::collections::HashMap;
use std::sync::Arc;

use num_traits::Zero;

use crate::arith::{RatMatrix, UniPoly};
use crate::error::{Error, Result};
use crate::idealcalc::IdealHandle;
use crate::multipoly::{Monomial, MonomialOrder, MultiPoly, Ring};
use crate::stdbasis::{std_in, StdBasis};

/// `R/J` for a zero-dimensional `J`, in the given ordering.
///
/// The basis is the set of standard monomials; column `j` of a
/// multiplication matrix holds the coordinates of `x·b_j`.
#[derive(Clone, Debug)]
pub struct QuotientAlgebra {
    ideal: IdealHandle,
    order: MonomialOrder,
    std: Arc<StdBasis>,
    basis: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
    mult: Vec<RatMatrix>,
}

impl QuotientAlgebra {
    pub fn build(ideal: &IdealHandle, ord: &MonomialOrder) -> Result<Self> {
        let std = ideal.std(ord)?;
        let basis = std.standard_monomials().ok_or(Error::InfiniteDimensional)?;
        let index: HashMap<Monomial, usize> = basis.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        let ring = ideal.ring().clone();
        let mut alg = QuotientAlgebra { ideal: ideal.clone(), order: ord.clone(), std, basis, index, mult: Vec::new() };
        let mult = (0..ring.arity())
            .map(|v| alg.matrix_of(&MultiPoly::var(&ring, v)))
            .collect::<Result<Vec<_>>>()?;
        alg.mult = mult;
        Ok(alg)
    }

    pub fn ring(&self) -> &Ring {
        self.ideal.ring()
    }

    pub fn ideal(&self) -> &IdealHandle {
        &self.ideal
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Monomial] {
        &self.basis
    }

    pub fn mult_matrix(&self, var: usize) -> &RatMatrix {
        &self.mult[var]
    }

    /// Coordinates of the class of `f` in the monomial basis.
    pub fn coords(&self, f: &MultiPoly) -> Result<Vec<crate::arith::Rat>> {
        let nf = self.std.reduced_form(f)?;
        let mut v = vec![crate::arith::Rat::zero(); self.dim()];
        for (m, c) in nf.terms() {
            let i = *self
                .index
                .get(m)
                .ok_or_else(|| Error::Inconsistent(format!("reduced form has nonstandard term in {nf}")))?;
            v[i] = c.clone();
        }
        Ok(v)
    }

    /// Matrix of multiplication by `g`.
    pub fn matrix_of(&self, g: &MultiPoly) -> Result<RatMatrix> {
        let n = self.dim();
        let mut m = RatMatrix::zeros(n, n);
        let g = self.std.reduced_form(g)?;
        for (j, b) in self.basis.iter().enumerate() {
            let prod = g.mul_monomial(b, &crate::arith::rat_int(1));
            let col = self.coords(&prod)?;
            for (i, c) in col.into_iter().enumerate() {
                m.set(i, j, c);
            }
        }
        Ok(m)
    }

    /// Rank of multiplication by `g`.
    pub fn mult_operator_rank(&self, g: &MultiPoly) -> Result<usize> {
        Ok(self.matrix_of(g)?.rank())
    }

    /// Characteristic polynomial of multiplication by a variable, in that
    /// variable's name.
    pub fn char_poly_of_mult(&self, var: usize) -> Result<UniPoly> {
        self.mult[var].char_poly(self.ring().name(var))
    }

    pub fn matrices_commute(&self) -> bool {
        for (i, a) in self.mult.iter().enumerate() {
            for b in &self.mult[i + 1..] {
                if !a.commutes_with(b) {
                    return false;
                }
            }
        }
        true
    }
}

/// `dim R_m / J R_m` at the origin, computed globally as the stable value of
/// `dim R/(J + m^N)`. Independent of Mora's algorithm except for the cap,
/// which is 4·(local vdim + 1) when that is finite.
pub fn local_multiplicity_at_origin(j: &IdealHandle) -> Result<usize> {
    let ring = j.ring().clone();
    let cap = match j.local_std()?.vdim() {
        Some(d) => 4 * (d + 1),
        None => 64,
    };
    let ord = MonomialOrder::global(&ring);
    let mut prev: Option<usize> = None;
    let mut streak = 0;
    for n in 1..=cap as u32 {
        let mut gens = j.gens().to_vec();
        gens.extend(monomials_of_degree(&ring, n).into_iter().map(|m| MultiPoly::monomial(&ring, m, crate::arith::rat_int(1))));
        let v = std_in(&ring, &gens, &ord)?
            .vdim()
            .ok_or_else(|| Error::Inconsistent("J + m^N not zero-dimensional".into()))?;
        if prev == Some(v) {
            streak += 1;
            if streak >= 2 {
                return Ok(v);
            }
        } else {
            streak = 0;
        }
        prev = Some(v);
    }
    Err(Error::NoStabilization { cap, what: "dim R/(J + m^N)".into() })
}

/// All monomials of total degree `d` in the germ coordinates.
pub fn monomials_of_degree(ring: &Ring, d: u32) -> Vec<Monomial> {
    let n = ring.n();
    let mut out = Vec::new();
    let mut e = vec![0u32; ring.arity()];
    fn rec(e: &mut Vec<u32>, i: usize, n: usize, left: u32, out: &mut Vec<Monomial>) {
        if i == n - 1 {
            e[i] = left;
            out.push(Monomial::from_slice(e));
            e[i] = 0;
            return;
        }
        for a in (0..=left).rev() {
            e[i] = a;
            rec(e, i + 1, n, left - a, out);
        }
        e[i] = 0;
    }
    rec(&mut e, 0, n, d, &mut out);
    out
}
