//! Division and standard bases for global, local and mixed orderings.
//!
//! Global orderings use Buchberger's algorithm with full reduction and end
//! with the reduced Gröbner basis. Orderings with a local block use Mora's
//! ecart-driven normal form, which returns a remainder whose leading term is
//! irreducible (a weak normal form).

use std::cmp::Ordering;
use std::collections::HashSet;

use num_traits::{One, Zero};

use crate::arith::Rat;
use crate::error::{Error, Result};
use crate::multipoly::{BlockKind, Monomial, MonomialOrder, MultiPoly, Ring};

/// Polynomial as terms sorted ascending under a fixed ordering; the leading
/// term is last.
#[derive(Clone, Debug)]
pub(crate) struct Pol {
    terms: Vec<(Monomial, Rat)>,
}

impl Pol {
    fn from_multi(p: &MultiPoly, ord: &MonomialOrder) -> Pol {
        let mut terms: Vec<(Monomial, Rat)> = p.terms().map(|(m, c)| (m.clone(), c.clone())).collect();
        terms.sort_by(|a, b| ord.cmp(&a.0, &b.0));
        Pol { terms }
    }

    fn to_multi(&self, ring: &Ring) -> MultiPoly {
        MultiPoly::from_terms(ring, self.terms.iter().cloned())
    }

    fn zero() -> Pol {
        Pol { terms: Vec::new() }
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn lm(&self) -> &Monomial {
        &self.terms.last().expect("nonzero").0
    }

    fn lc(&self) -> &Rat {
        &self.terms.last().expect("nonzero").1
    }

    fn ecart(&self) -> u32 {
        let top = self.terms.iter().map(|(m, _)| m.deg()).max().unwrap_or(0);
        top - self.lm().deg()
    }

    fn monic(mut self) -> Pol {
        if let Some((_, c)) = self.terms.last() {
            if !c.is_one() {
                let inv = Rat::one() / c;
                for t in &mut self.terms {
                    t.1 *= &inv;
                }
            }
        }
        self
    }

    /// `self - c * m * g` by merging.
    fn sub_mul(&self, c: &Rat, m: &Monomial, g: &Pol, ord: &MonomialOrder) -> Pol {
        let mut out = Vec::with_capacity(self.terms.len() + g.terms.len());
        let mut a = self.terms.iter().peekable();
        let mut b = g.terms.iter().map(|(k, v)| (k.mul(m), v * c)).peekable();
        loop {
            let step = match (a.peek(), b.peek()) {
                (None, None) => break,
                (Some(_), None) => Ordering::Less,
                (None, Some(_)) => Ordering::Greater,
                (Some(x), Some(y)) => ord.cmp(&x.0, &y.0),
            };
            match step {
                Ordering::Less => out.push(a.next().expect("peeked").clone()),
                Ordering::Greater => {
                    let (k, v) = b.next().expect("peeked");
                    out.push((k, -v));
                }
                Ordering::Equal => {
                    let (k, x) = a.next().expect("peeked");
                    let (_, y) = b.next().expect("peeked");
                    let v = x - y;
                    if !v.is_zero() {
                        out.push((k.clone(), v));
                    }
                }
            }
        }
        Pol { terms: out }
    }

    fn add_term(&mut self, m: Monomial, c: Rat, ord: &MonomialOrder) {
        match self.terms.binary_search_by(|t| ord.cmp(&t.0, &m)) {
            Ok(i) => {
                self.terms[i].1 += c;
                if self.terms[i].1.is_zero() {
                    self.terms.remove(i);
                }
            }
            Err(i) => self.terms.insert(i, (m, c)),
        }
    }

    fn mul_term(&self, c: &Rat, m: &Monomial) -> Pol {
        Pol { terms: self.terms.iter().map(|(k, v)| (k.mul(m), v * c)).collect() }
    }
}

fn spoly(f: &Pol, g: &Pol, ord: &MonomialOrder) -> Pol {
    let l = f.lm().lcm(g.lm());
    let mf = f.lm().quotient_of(&l);
    let mg = g.lm().quotient_of(&l);
    let a = f.mul_term(&g.lc().clone(), &mf);
    a.sub_mul(f.lc(), &mg, g, ord)
}

/// Weak normal form after Mora: repeatedly cancels the leading term using
/// the divisor of least ecart, remembering intermediate remainders of
/// smaller ecart as additional divisors.
fn nf_mora(f: Pol, basis: &[Pol], ecarts: &[u32], ord: &MonomialOrder) -> Pol {
    let mut h = f;
    let mut extra: Vec<(Pol, u32)> = Vec::new();
    while !h.is_zero() {
        let lm = h.lm().clone();
        let mut best: Option<(u32, usize)> = None;
        for (i, g) in basis.iter().enumerate() {
            if g.lm().divides(&lm) && best.is_none_or(|(e, _)| ecarts[i] < e) {
                best = Some((ecarts[i], i));
            }
        }
        for (j, (g, e)) in extra.iter().enumerate() {
            if g.lm().divides(&lm) && best.is_none_or(|(b, _)| *e < b) {
                best = Some((*e, basis.len() + j));
            }
        }
        let Some((eg, idx)) = best else { break };
        let eh = h.ecart();
        let g = if idx < basis.len() { basis[idx].clone() } else { extra[idx - basis.len()].0.clone() };
        if eg > eh {
            extra.push((h.clone(), eh));
        }
        let c = h.lc() / g.lc();
        let m = g.lm().quotient_of(&lm);
        h = h.sub_mul(&c, &m, &g, ord);
    }
    h
}

/// Full reduction for global orderings: every term of the result is
/// standard. With `trunc = Some(d)`, terms of total degree ≥ d are dropped
/// (sound when m^d lies in the ideal).
fn reduce_full(f: Pol, basis: &[Pol], ord: &MonomialOrder, trunc: Option<u32>) -> Pol {
    let keep = |m: &Monomial| trunc.is_none_or(|d| m.deg() < d);
    let mut h = Pol { terms: f.terms.into_iter().filter(|(m, _)| keep(m)).collect() };
    let mut rem_desc: Vec<(Monomial, Rat)> = Vec::new();
    while let Some((m, c)) = h.terms.pop() {
        match basis.iter().find(|g| g.lm().divides(&m)) {
            Some(g) => {
                let q = g.lm().quotient_of(&m);
                let k = &c / g.lc();
                let mut tail = g.clone();
                tail.terms.pop();
                if trunc.is_some() {
                    tail.terms.retain(|(t, _)| keep(&t.mul(&q)));
                }
                h = h.sub_mul(&k, &q, &tail, ord);
            }
            None => rem_desc.push((m, c)),
        }
    }
    rem_desc.reverse();
    Pol { terms: rem_desc }
}

/// A standard basis together with its ordering.
#[derive(Clone, Debug)]
pub struct StdBasis {
    ring: Ring,
    order: MonomialOrder,
    polys: Vec<Pol>,
    ecarts: Vec<u32>,
}

/// Computes a standard basis of the ideal generated by `gens`.
///
/// For global orderings the result is the reduced Gröbner basis. For local
/// and mixed orderings it is a minimal monic standard basis.
pub fn std(gens: &[MultiPoly], ord: &MonomialOrder) -> Result<StdBasis> {
    let ring = match gens.first() {
        Some(g) => g.ring().clone(),
        None => return Err(Error::Invalid("std of an empty generator list needs a ring; use std_in".into())),
    };
    std_in(&ring, gens, ord)
}

/// [`std`] with an explicit ring, allowing an empty generator list.
pub fn std_in(ring: &Ring, gens: &[MultiPoly], ord: &MonomialOrder) -> Result<StdBasis> {
    if gens.iter().any(|g| g.ring() != ring) {
        return Err(Error::RingMismatch);
    }
    if ord.arity() != ring.arity() {
        return Err(Error::OrderMismatch);
    }
    let global = ord.is_global();
    let mut basis: Vec<Pol> = Vec::new();
    let mut ecarts: Vec<u32> = Vec::new();
    let mut sugar: Vec<u32> = Vec::new();
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    let mut pending: HashSet<(usize, usize)> = HashSet::new();

    let mut input: Vec<Pol> = gens.iter().filter(|g| !g.is_zero()).map(|g| Pol::from_multi(g, ord).monic()).collect();
    // smaller leading monomials first keeps early reductions cheap
    input.sort_by(|a, b| ord.cmp(a.lm(), b.lm()).then(a.terms.len().cmp(&b.terms.len())));

    let reduce = |p: Pol, basis: &[Pol], ecarts: &[u32]| -> Pol {
        if global {
            reduce_full(p, basis, ord, None)
        } else {
            nf_mora(p, basis, ecarts, ord)
        }
    };

    let add = |p: Pol, s: u32, basis: &mut Vec<Pol>, ecarts: &mut Vec<u32>, sugar: &mut Vec<u32>, pairs: &mut Vec<(usize, usize)>, pending: &mut HashSet<(usize, usize)>| {
        let p = p.monic();
        sugar.push(s.max(p.terms.iter().map(|(m, _)| m.deg()).max().unwrap_or(0)));
        let k = basis.len();
        for i in 0..k {
            if basis[i].lm().coprime(p.lm()) {
                continue;
            }
            pairs.push((i, k));
            pending.insert((i, k));
        }
        ecarts.push(p.ecart());
        basis.push(p);
    };

    for g in input {
        let r = reduce(g, &basis, &ecarts);
        if !r.is_zero() {
            if r.lm().is_one() {
                return Ok(unit_basis(ring, ord));
            }
            let s = r.terms.iter().map(|(m, _)| m.deg()).max().unwrap_or(0);
            add(r, s, &mut basis, &mut ecarts, &mut sugar, &mut pairs, &mut pending);
        }
    }

    let pair_sugar = |i: usize, j: usize, l: &Monomial, basis: &[Pol], sugar: &[u32]| -> u32 {
        (sugar[i] + l.deg() - basis[i].lm().deg()).max(sugar[j] + l.deg() - basis[j].lm().deg())
    };

    while !pairs.is_empty() {
        // sugar strategy for global orderings, normal strategy otherwise;
        // ties go to the smallest lcm in the order
        let key = |i: usize, j: usize, l: &Monomial| if global { pair_sugar(i, j, l, &basis, &sugar) } else { l.deg() };
        let mut best = 0;
        let mut best_l = basis[pairs[0].0].lm().lcm(basis[pairs[0].1].lm());
        let mut best_k = key(pairs[0].0, pairs[0].1, &best_l);
        for (idx, &(i, j)) in pairs.iter().enumerate().skip(1) {
            let l = basis[i].lm().lcm(basis[j].lm());
            let k = key(i, j, &l);
            if k < best_k || (k == best_k && ord.cmp(&l, &best_l) == Ordering::Less) {
                best = idx;
                best_l = l;
                best_k = k;
            }
        }
        let (i, j) = pairs.swap_remove(best);
        pending.remove(&(i, j));
        let l = best_l;
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && basis[k].lm().divides(&l)
                && !pending.contains(&(i.min(k), i.max(k)))
                && !pending.contains(&(j.min(k), j.max(k)))
        });
        if chain {
            continue;
        }
        let s = spoly(&basis[i], &basis[j], ord);
        let r = reduce(s, &basis, &ecarts);
        if !r.is_zero() {
            if r.lm().is_one() {
                return Ok(unit_basis(ring, ord));
            }
            add(r, best_k, &mut basis, &mut ecarts, &mut sugar, &mut pairs, &mut pending);
        }
    }

    // minimize: drop elements whose leading monomial is a multiple of another
    let n = basis.len();
    let mut keep = vec![true; n];
    for i in 0..n {
        for j in 0..n {
            if i == j || !keep[j] || !keep[i] {
                continue;
            }
            let (a, b) = (basis[j].lm(), basis[i].lm());
            if a.divides(b) && (a != b || (ecarts[j], j) < (ecarts[i], i)) {
                keep[i] = false;
            }
        }
    }
    let mut polys: Vec<Pol> = basis.into_iter().zip(keep).filter(|(_, k)| *k).map(|(p, _)| p).collect();
    polys.sort_by(|a, b| ord.cmp(a.lm(), b.lm()));
    if global {
        for i in 0..polys.len() {
            let mut p = polys[i].clone();
            let lead = p.terms.pop().expect("nonzero");
            let others: Vec<Pol> = polys.iter().enumerate().filter(|(k, _)| *k != i).map(|(_, q)| q.clone()).collect();
            let mut tail = reduce_full(p, &others, ord, None);
            tail.terms.push(lead);
            polys[i] = tail;
        }
    }
    let ecarts = polys.iter().map(Pol::ecart).collect();
    Ok(StdBasis { ring: ring.clone(), order: ord.clone(), polys, ecarts })
}

// A leading monomial 1 forces every other term below 1, so no global
// variable occurs and the element is a unit.
fn unit_basis(ring: &Ring, ord: &MonomialOrder) -> StdBasis {
    let one = Pol { terms: vec![(Monomial::one(ring.arity()), Rat::one())] };
    StdBasis { ring: ring.clone(), order: ord.clone(), polys: vec![one], ecarts: vec![0] }
}

impl StdBasis {
    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    pub fn elements(&self) -> Vec<MultiPoly> {
        self.polys.iter().map(|p| p.to_multi(&self.ring)).collect()
    }

    /// Minimal leading monomials.
    pub fn staircase(&self) -> Vec<Monomial> {
        self.polys.iter().map(|p| p.lm().clone()).collect()
    }

    pub fn is_unit(&self) -> bool {
        self.polys.iter().any(|p| p.lm().is_one())
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.polys.is_empty()
    }

    fn is_standard(&self, m: &Monomial) -> bool {
        !self.polys.iter().any(|p| p.lm().divides(m))
    }

    /// Normal form: fully reduced for global orderings, a weak normal form
    /// (irreducible leading term, up to a unit factor) otherwise.
    pub fn normal_form(&self, f: &MultiPoly) -> Result<MultiPoly> {
        if f.ring() != &self.ring {
            return Err(Error::RingMismatch);
        }
        let p = Pol::from_multi(f, &self.order);
        let r = if self.order.is_global() {
            reduce_full(p, &self.polys, &self.order, None)
        } else {
            nf_mora(p, &self.polys, &self.ecarts, &self.order)
        };
        Ok(r.to_multi(&self.ring))
    }

    pub fn contains(&self, f: &MultiPoly) -> Result<bool> {
        Ok(self.normal_form(f)?.is_zero())
    }

    /// Degree bound `d` with m^d inside the local ideal, valid for purely
    /// local degree orderings with finite quotient.
    pub fn corner_degree(&self) -> Option<u32> {
        let std = self.standard_monomials()?;
        let top = std.iter().map(Monomial::deg).max().map_or(0, |d| d + 1);
        if self.is_degree_local() {
            Some(top)
        } else {
            Some(std.len() as u32)
        }
    }

    fn is_degree_local(&self) -> bool {
        let b = self.order.blocks();
        b.len() == 1 && b[0].kind == BlockKind::NegDegRevLex
    }

    /// Complete reduction for a zero-dimensional local ideal: the result is a
    /// combination of standard monomials, computed modulo m^d for a `d`
    /// with m^d inside the ideal. For global orderings this is the ordinary
    /// normal form.
    pub fn reduced_form(&self, f: &MultiPoly) -> Result<MultiPoly> {
        if f.ring() != &self.ring {
            return Err(Error::RingMismatch);
        }
        let p = Pol::from_multi(f, &self.order);
        if self.order.is_global() {
            return Ok(reduce_full(p, &self.polys, &self.order, None).to_multi(&self.ring));
        }
        if !self.order.global_vars().is_empty() {
            return Err(Error::Invalid("complete local reduction needs a purely local ordering".into()));
        }
        let d = self.corner_degree().ok_or(Error::InfiniteDimensional)?;
        Ok(reduce_full(p, &self.polys, &self.order, Some(d)).to_multi(&self.ring))
    }

    /// Per variable, the least exponent `a` with `x_i^a` a leading monomial.
    fn pure_powers(&self) -> Option<Vec<u32>> {
        let n = self.ring.arity();
        let mut bounds = vec![None; n];
        for p in &self.polys {
            let m = p.lm();
            let support: Vec<usize> = (0..n).filter(|&i| m.exps()[i] > 0).collect();
            match support.as_slice() {
                [] => return Some(vec![0; n]),
                [i] => {
                    let e = m.exps()[*i];
                    bounds[*i] = Some(bounds[*i].map_or(e, |b: u32| b.min(e)));
                }
                _ => {}
            }
        }
        bounds.into_iter().collect()
    }

    /// Standard monomials, or `None` if there are infinitely many.
    pub fn standard_monomials(&self) -> Option<Vec<Monomial>> {
        if self.is_unit() {
            return Some(Vec::new());
        }
        let bounds = self.pure_powers()?;
        let n = bounds.len();
        let mut out = Vec::new();
        let mut e = vec![0u32; n];
        loop {
            let m = Monomial::from_slice(&e);
            if self.is_standard(&m) {
                out.push(m);
            }
            // odometer over the box
            let mut i = 0;
            loop {
                if i == n {
                    out.sort_by(|a, b| self.order.cmp(b, a));
                    return Some(out);
                }
                e[i] += 1;
                if e[i] < bounds[i] {
                    break;
                }
                e[i] = 0;
                i += 1;
            }
        }
    }

    /// Dimension of the quotient, `None` when infinite.
    pub fn vdim(&self) -> Option<usize> {
        if self.is_unit() {
            return Some(0);
        }
        self.standard_monomials().map(|v| v.len())
    }

    /// Combinatorial dimension of the staircase: the largest set of
    /// variables containing the support of no leading monomial.
    pub fn krull_dim(&self) -> usize {
        if self.is_unit() {
            return 0;
        }
        let n = self.ring.arity();
        let lms = self.staircase();
        let mut best = 0;
        for mask in 0u32..(1 << n) {
            let k = mask.count_ones() as usize;
            if k <= best {
                continue;
            }
            let free = lms.iter().all(|m| (0..n).any(|i| m.exps()[i] > 0 && mask & (1 << i) == 0));
            if free {
                best = k;
            }
        }
        best
    }

    /// Number of standard monomials of total degree below `d`.
    pub fn count_below_degree(&self, d: u32) -> usize {
        if self.is_unit() {
            return 0;
        }
        let n = self.ring.arity();
        let mut count = 0usize;
        let mut e = vec![0u32; n];
        fn rec(s: &StdBasis, e: &mut Vec<u32>, i: usize, left: u32, count: &mut usize) {
            if i == e.len() {
                if s.is_standard(&Monomial::from_slice(e)) {
                    *count += 1;
                }
                return;
            }
            for a in 0..left {
                e[i] = a;
                rec(s, e, i + 1, left - a, count);
            }
            e[i] = 0;
        }
        if d == 0 {
            return 0;
        }
        rec(self, &mut e, 0, d, &mut count);
        count
    }

    /// True iff every S-polynomial of the basis reduces to zero.
    pub fn verify(&self) -> bool {
        for i in 0..self.polys.len() {
            for j in i + 1..self.polys.len() {
                let s = spoly(&self.polys[i], &self.polys[j], &self.order);
                let r = if self.order.is_global() {
                    reduce_full(s, &self.polys, &self.order, None)
                } else {
                    nf_mora(s, &self.polys, &self.ecarts, &self.order)
                };
                if !r.is_zero() {
                    return false;
                }
            }
        }
        true
    }
}

/// Division with remainder tracking quotients and a unit:
/// `unit * f = Σ quotients[i] * divisors[i] + remainder`, where `unit` has
/// leading monomial 1 (it is 1 for global orderings).
pub struct Lift {
    pub unit: MultiPoly,
    pub quotients: Vec<MultiPoly>,
    pub remainder: MultiPoly,
}

/// Mora division of `f` by `divisors` with cofactor tracking.
pub fn lift(f: &MultiPoly, divisors: &[MultiPoly], ord: &MonomialOrder) -> Result<Lift> {
    let ring = f.ring().clone();
    if divisors.iter().any(|d| d.ring() != &ring) {
        return Err(Error::RingMismatch);
    }
    let k = divisors.len();
    let zero = || Pol::zero();
    let one = Pol { terms: vec![(Monomial::one(ring.arity()), Rat::one())] };
    let divs: Vec<Pol> = divisors.iter().map(|d| Pol::from_multi(d, ord)).collect();
    let dec: Vec<u32> = divs.iter().map(|d| if d.is_zero() { 0 } else { d.ecart() }).collect();
    // representation of the current remainder: u*f = Σ q_i d_i + h
    let mut h = Pol::from_multi(f, ord);
    let mut u = one;
    let mut q: Vec<Pol> = vec![zero(); k];
    let mut extra: Vec<(Pol, u32, Pol, Vec<Pol>)> = Vec::new();
    let global = ord.is_global();
    let mut rem_desc: Vec<(Monomial, Rat)> = Vec::new();
    while !h.is_zero() {
        let lm = h.lm().clone();
        let mut best: Option<(u32, usize)> = None;
        for (i, g) in divs.iter().enumerate() {
            if !g.is_zero() && g.lm().divides(&lm) && best.is_none_or(|(e, _)| dec[i] < e) {
                best = Some((dec[i], i));
            }
        }
        for (j, (g, e, _, _)) in extra.iter().enumerate() {
            if g.lm().divides(&lm) && best.is_none_or(|(b, _)| *e < b) {
                best = Some((*e, k + j));
            }
        }
        let Some((eg, idx)) = best else {
            if global {
                // move the irreducible leading term to the remainder
                let t = h.terms.pop().expect("nonzero");
                rem_desc.push(t);
                continue;
            }
            break;
        };
        let eh = h.ecart();
        if !global && eg > eh {
            extra.push((h.clone(), eh, u.clone(), q.clone()));
        }
        if idx < k {
            let g = &divs[idx];
            let c = h.lc() / g.lc();
            let m = g.lm().quotient_of(&lm);
            h = h.sub_mul(&c, &m, g, ord);
            q[idx].add_term(m, c, ord);
        } else {
            let (g, _, gu, gq) = &extra[idx - k];
            let c = h.lc() / g.lc();
            let m = g.lm().quotient_of(&lm);
            h = h.sub_mul(&c, &m, g, ord);
            u = u.sub_mul(&c, &m, gu, ord);
            for i in 0..k {
                q[i] = q[i].sub_mul(&c, &m, &gq[i], ord);
            }
        }
    }
    let remainder = if global {
        rem_desc.reverse();
        Pol { terms: rem_desc }
    } else {
        h
    };
    Ok(Lift {
        unit: u.to_multi(&ring),
        quotients: q.iter().map(|p| p.to_multi(&ring)).collect(),
        remainder: remainder.to_multi(&ring),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat_int;
    use crate::multipoly::parse;

    fn ring() -> Ring {
        Ring::parse_spec("x,y,z").unwrap()
    }

    fn ps(src: &[&str]) -> Vec<MultiPoly> {
        src.iter().map(|s| parse(s, &ring()).unwrap()).collect()
    }

    fn p(s: &str) -> MultiPoly {
        parse(s, &ring()).unwrap()
    }

    #[test]
    fn normal_form_examples() {
        let r = ring();
        let g = std(&ps(&["x"]), &MonomialOrder::global(&r)).unwrap();
        assert!(g.normal_form(&p("x^2")).unwrap().is_zero());
        let l = std(&ps(&["y^3+4*z^3"]), &MonomialOrder::local(&r)).unwrap();
        assert_eq!(l.normal_form(&p("y^3")).unwrap(), p("-4*z^3"));
        let m = std(&ps(&["x", "y", "z"]), &MonomialOrder::local(&r)).unwrap();
        assert_eq!(m.normal_form(&p("1")).unwrap(), p("1"));
    }

    #[test]
    fn std_examples() {
        let r = ring();
        let b = std(&ps(&["x"]), &MonomialOrder::global(&r)).unwrap();
        assert_eq!(b.elements(), ps(&["x"]));
        let b = std(&ps(&["y^2*z", "y^3+4*z^3"]), &MonomialOrder::local(&r)).unwrap();
        assert!(b.staircase().contains(&Monomial::from_slice(&[0, 0, 4])));
        let b = std(&ps(&["x^2", "y^2*z", "y^3"]), &MonomialOrder::local(&r)).unwrap();
        let mut st = b.staircase();
        st.sort();
        let mut expect: Vec<Monomial> = ps(&["x^2", "y^2*z", "y^3"]).iter().map(|q| q.terms().next().unwrap().0.clone()).collect();
        expect.sort();
        assert_eq!(st, expect);
    }

    #[test]
    fn vdim_and_dimension() {
        let r = ring();
        let loc = MonomialOrder::local(&r);
        assert_eq!(std(&ps(&["x", "y", "z"]), &loc).unwrap().vdim(), Some(1));
        assert_eq!(std(&ps(&["x^2", "y^2", "z"]), &loc).unwrap().vdim(), Some(4));
        let b = std(&ps(&["x^2", "y^2*z", "y^3"]), &loc).unwrap();
        assert_eq!(b.vdim(), None);
        assert_eq!(b.krull_dim(), 1);
        let g = MonomialOrder::global(&r);
        assert_eq!(std(&ps(&["x^2", "y^2", "z"]), &g).unwrap().krull_dim(), 0);
        assert_eq!(std_in(&r, &[], &g).unwrap().krull_dim(), 3);
    }

    #[test]
    fn milnor_number_of_running_example() {
        let r = ring();
        let f = p("x^3+y^3*z+z^4");
        let b = std(&f.jacobian(), &MonomialOrder::local(&r)).unwrap();
        assert_eq!(b.vdim(), Some(18));
        assert!(b.verify());
    }

    #[test]
    fn unit_detection() {
        let r = ring();
        let b = std(&ps(&["x", "x+1"]), &MonomialOrder::global(&r)).unwrap();
        assert!(b.is_unit());
        let l = std(&ps(&["x-x^2", "1+y"]), &MonomialOrder::local(&r)).unwrap();
        assert!(l.is_unit());
        // x - 1 is a unit locally but generates a proper ideal globally
        let l = std(&ps(&["x-1"]), &MonomialOrder::local(&r)).unwrap();
        assert!(l.is_unit());
        assert!(!std(&ps(&["x-1"]), &MonomialOrder::global(&r)).unwrap().is_unit());
    }

    #[test]
    fn reduced_form_truncates() {
        let r = ring();
        let f = p("x^3+y^3*z+z^4");
        let b = std(&f.jacobian(), &MonomialOrder::local(&r)).unwrap();
        let nf = b.reduced_form(&p("y^3")).unwrap();
        assert_eq!(nf, p("-4*z^3"));
        let std_m = b.standard_monomials().unwrap();
        for (m, _) in b.reduced_form(&p("y^2*z^2+x*y*z+y^4")).unwrap().terms() {
            assert!(std_m.contains(m));
        }
    }

    #[test]
    fn lift_identity_local() {
        let r = ring();
        let ord = MonomialOrder::local(&r);
        let divs = ps(&["x-x^2"]);
        let l = lift(&p("x"), &divs, &ord).unwrap();
        assert!(l.remainder.is_zero());
        assert_eq!(l.unit.constant_coeff(), rat_int(1));
        let lhs = &l.unit * &p("x");
        let rhs = &l.quotients[0] * &divs[0];
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn lift_identity_global() {
        let r = ring();
        let ord = MonomialOrder::global(&r);
        let divs = ps(&["x^2+y", "y*z-1"]);
        let f = p("x^3*z+x*y*z+z^2+3");
        let l = lift(&f, &divs, &ord).unwrap();
        assert_eq!(l.unit, p("1"));
        let sum = &(&(&l.quotients[0] * &divs[0]) + &(&l.quotients[1] * &divs[1])) + &l.remainder;
        assert_eq!(sum, f);
    }
}
