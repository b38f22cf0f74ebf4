//! Ideal calculus on top of standard bases: sums, products, elimination,
//! intersections, colon ideals, saturation and radical membership.
//!
//! Every operation takes the ordering it should work in. With a local
//! ordering the results describe ideals of the local ring at the origin.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use crate::error::{Error, Result};
use crate::multipoly::{MonomialOrder, MultiPoly, Ring};
use crate::stdbasis::{lift, std_in, StdBasis};

/// Saturation gives up after this many colon steps.
pub const SATURATION_CAP: usize = 64;

/// Generators of an ideal plus a per-ordering cache of standard bases.
///
/// Clones share the cache. Each entry is computed at most once per ordering
/// and published atomically.
#[derive(Clone)]
pub struct IdealHandle {
    ring: Ring,
    gens: Vec<MultiPoly>,
    cache: Arc<Mutex<HashMap<MonomialOrder, Arc<StdBasis>>>>,
}

impl fmt::Debug for IdealHandle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for IdealHandle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g: Vec<String> = self.gens.iter().map(ToString::to_string).collect();
        write!(f, "<{}>", g.join(", "))
    }
}

impl IdealHandle {
    pub fn new(ring: &Ring, gens: Vec<MultiPoly>) -> Result<Self> {
        if gens.iter().any(|g| g.ring() != ring) {
            return Err(Error::RingMismatch);
        }
        let gens = gens.into_iter().filter(|g| !g.is_zero()).collect();
        Ok(IdealHandle { ring: ring.clone(), gens, cache: Arc::default() })
    }

    pub fn parse(ring: &Ring, gens: &[&str]) -> Result<Self> {
        let g = gens.iter().map(|s| crate::multipoly::parse(s, ring)).collect::<Result<Vec<_>>>()?;
        Self::new(ring, g)
    }

    pub fn unit(ring: &Ring) -> Self {
        Self::new(ring, vec![MultiPoly::one(ring)]).expect("same ring")
    }

    pub fn zero(ring: &Ring) -> Self {
        Self::new(ring, Vec::new()).expect("same ring")
    }

    pub fn principal(g: &MultiPoly) -> Self {
        Self::new(g.ring(), vec![g.clone()]).expect("same ring")
    }

    /// The ideal generated by the given variables.
    pub fn of_vars(ring: &Ring, vars: impl IntoIterator<Item = usize>) -> Self {
        Self::new(ring, vars.into_iter().map(|i| MultiPoly::var(ring, i)).collect()).expect("same ring")
    }

    /// The maximal ideal of the origin in the germ coordinates.
    pub fn maximal(ring: &Ring) -> Self {
        Self::of_vars(ring, ring.x_vars())
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn gens(&self) -> &[MultiPoly] {
        &self.gens
    }

    pub fn is_zero_gens(&self) -> bool {
        self.gens.is_empty()
    }

    /// Standard basis in `ord`, cached.
    pub fn std(&self, ord: &MonomialOrder) -> Result<Arc<StdBasis>> {
        if let Some(b) = self.cache.lock().expect("cache lock").get(ord) {
            return Ok(b.clone());
        }
        let b = Arc::new(std_in(&self.ring, &self.gens, ord)?);
        let mut cache = self.cache.lock().expect("cache lock");
        Ok(cache.entry(ord.clone()).or_insert(b).clone())
    }

    pub fn local_std(&self) -> Result<Arc<StdBasis>> {
        self.std(&MonomialOrder::local(&self.ring))
    }

    pub fn global_std(&self) -> Result<Arc<StdBasis>> {
        self.std(&MonomialOrder::global(&self.ring))
    }

    /// Replaces the generators by the standard basis in `ord` (same ideal
    /// in that ring), keeping that basis cached.
    pub fn minimized(&self, ord: &MonomialOrder) -> Result<Self> {
        let b = self.std(ord)?;
        let out = Self::new(&self.ring, b.elements())?;
        out.cache.lock().expect("cache lock").insert(ord.clone(), b);
        Ok(out)
    }

    pub fn vdim(&self, ord: &MonomialOrder) -> Result<Option<usize>> {
        Ok(self.std(ord)?.vdim())
    }

    pub fn krull_dim(&self, ord: &MonomialOrder) -> Result<usize> {
        Ok(self.std(ord)?.krull_dim())
    }

    pub fn is_unit(&self, ord: &MonomialOrder) -> Result<bool> {
        Ok(self.std(ord)?.is_unit())
    }

    /// Finite quotient (the unit ideal included).
    pub fn is_zero_dim(&self, ord: &MonomialOrder) -> Result<bool> {
        Ok(self.std(ord)?.vdim().is_some())
    }

    pub fn contains(&self, f: &MultiPoly, ord: &MonomialOrder) -> Result<bool> {
        self.std(ord)?.contains(f)
    }

    pub fn contains_ideal(&self, other: &IdealHandle, ord: &MonomialOrder) -> Result<bool> {
        let b = self.std(ord)?;
        for g in &other.gens {
            if !b.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn equals(&self, other: &IdealHandle, ord: &MonomialOrder) -> Result<bool> {
        Ok(self.contains_ideal(other, ord)? && other.contains_ideal(self, ord)?)
    }

    fn same_ring(&self, other: &IdealHandle) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch);
        }
        Ok(())
    }

    pub fn sum(&self, other: &IdealHandle) -> Result<Self> {
        self.same_ring(other)?;
        let mut g = self.gens.clone();
        g.extend(other.gens.iter().cloned());
        Self::new(&self.ring, g)
    }

    pub fn with_gens(&self, extra: &[MultiPoly]) -> Result<Self> {
        let mut g = self.gens.clone();
        g.extend(extra.iter().cloned());
        Self::new(&self.ring, g)
    }

    pub fn product(&self, other: &IdealHandle) -> Result<Self> {
        self.same_ring(other)?;
        let mut g = Vec::new();
        for a in &self.gens {
            for b in &other.gens {
                g.push(a * b);
            }
        }
        Self::new(&self.ring, g)
    }

    pub fn power(&self, k: u32) -> Result<Self> {
        let mut acc = Self::unit(&self.ring);
        for _ in 0..k {
            acc = acc.product(self)?.minimized(&MonomialOrder::global(&self.ring))?;
        }
        Ok(acc)
    }

    /// Intersection with the subring free of `vars`. The variables may not
    /// sit in a local block of `ord`.
    pub fn eliminate(&self, vars: &[usize], ord: &MonomialOrder) -> Result<Self> {
        let local = ord.global_vars();
        if ord.is_local() {
            if let Some(&v) = vars.iter().find(|v| !local.contains(v)) {
                return Err(Error::UnsoundElimination(self.ring.name(v).to_string()));
            }
        }
        let eord = if ord.can_eliminate(vars) { ord.clone() } else { ord.eliminating(vars) };
        let b = self.std(&eord)?;
        let kept = b
            .elements()
            .into_iter()
            .filter(|p| p.terms().all(|(m, _)| vars.iter().all(|&v| m.exps()[v] == 0)))
            .collect();
        Self::new(&self.ring, kept)
    }

    /// `self ∩ other` via an auxiliary global variable `u`:
    /// ⟨u·J, (1−u)·K⟩ with `u` eliminated.
    pub fn intersect(&self, other: &IdealHandle, ord: &MonomialOrder) -> Result<Self> {
        self.same_ring(other)?;
        if self.gens.is_empty() || other.gens.is_empty() {
            return Ok(Self::zero(&self.ring));
        }
        let big = self.ring.extend("u");
        let u_idx = big.arity() - 1;
        let u = MultiPoly::var(&big, u_idx);
        let one_minus_u = &MultiPoly::one(&big) - &u;
        let mut g: Vec<MultiPoly> = self.gens.iter().map(|p| &u * &p.embed(&big)).collect();
        g.extend(other.gens.iter().map(|p| &one_minus_u * &p.embed(&big)));
        let bord = ord.extended(big.arity());
        let b = std_in(&big, &g, &bord)?;
        let kept = b
            .elements()
            .into_iter()
            .filter(|p| p.degree_in(u_idx).unwrap_or(0) == 0)
            .map(|p| p.restrict(&self.ring))
            .collect::<Result<Vec<_>>>()?;
        Self::new(&self.ring, kept)
    }

    /// `J : g = {h : h·g ∈ J}`, as (J ∩ ⟨g⟩)/g.
    pub fn quotient_by_element(&self, g: &MultiPoly, ord: &MonomialOrder) -> Result<Self> {
        if g.is_zero() {
            return Err(Error::ZeroDivisor);
        }
        if g.ring() != &self.ring {
            return Err(Error::RingMismatch);
        }
        if g.is_constant() {
            return Ok(self.clone());
        }
        if !ord.is_global() {
            // locally J = J + m^N, which is m-primary, so the colon can be
            // taken globally
            let std = self.std(ord)?;
            if let (Some(_), Some(d)) = (std.vdim(), std.corner_degree()) {
                let mut gens = self.gens.clone();
                gens.extend(
                    crate::quotientalg::monomials_of_degree(&self.ring, d)
                        .into_iter()
                        .map(|m| MultiPoly::monomial(&self.ring, m, crate::arith::rat_int(1))),
                );
                return Self::new(&self.ring, gens)?.quotient_by_element(g, &MonomialOrder::global(&self.ring));
            }
        }
        let inter = self.intersect(&Self::principal(g), ord)?;
        let mut out = Vec::with_capacity(inter.gens.len());
        for h in &inter.gens {
            if let Some(q) = h.div_exact(g) {
                out.push(q);
                continue;
            }
            let l = lift(h, std::slice::from_ref(g), ord)?;
            if !l.remainder.is_zero() {
                return Err(Error::InexactDivision(format!("{h} by {g}")));
            }
            out.push(l.quotients.into_iter().next().expect("one divisor"));
        }
        Self::new(&self.ring, out)
    }

    /// `J : K`, the intersection of the element quotients over K's generators.
    pub fn quotient_by_ideal(&self, k: &IdealHandle, ord: &MonomialOrder) -> Result<Self> {
        self.same_ring(k)?;
        if k.gens.is_empty() {
            return Err(Error::ZeroDivisor);
        }
        let mut acc: Option<IdealHandle> = None;
        for g in &k.gens {
            let q = self.quotient_by_element(g, ord)?;
            acc = Some(match acc {
                None => q,
                Some(a) => a.intersect(&q, ord)?.minimized(ord)?,
            });
        }
        Ok(acc.expect("nonempty"))
    }

    /// `J : K^∞`, iterating colon steps to a fixpoint. Returns the fixpoint
    /// and the number of steps that enlarged the ideal.
    pub fn saturate(&self, k: &IdealHandle, ord: &MonomialOrder) -> Result<(Self, usize)> {
        let mut cur = self.minimized(ord)?;
        for step in 0..SATURATION_CAP {
            let next = cur.quotient_by_ideal(k, ord)?.minimized(ord)?;
            if cur.contains_ideal(&next, ord)? {
                return Ok((cur, step));
            }
            cur = next;
        }
        Err(Error::NoStabilization { cap: SATURATION_CAP, what: "saturation".into() })
    }

    /// `J : h^∞` in one step, as (J + ⟨1 − u·h⟩) ∩ Q[x]. Only for global
    /// orderings.
    pub fn saturate_by_element(&self, h: &MultiPoly, ord: &MonomialOrder) -> Result<Self> {
        if !ord.is_global() {
            return Err(Error::InvalidOrder("saturation by an element needs a global ordering".into()));
        }
        if h.is_zero() {
            return Err(Error::ZeroDivisor);
        }
        let big = self.ring.extend("u");
        let u_idx = big.arity() - 1;
        let u = MultiPoly::var(&big, u_idx);
        let mut g: Vec<MultiPoly> = self.gens.iter().map(|p| p.embed(&big)).collect();
        g.push(&MultiPoly::one(&big) - &(&u * &h.embed(&big)));
        let b = std_in(&big, &g, &ord.extended(big.arity()))?;
        let kept = b
            .elements()
            .into_iter()
            .filter(|p| p.degree_in(u_idx).unwrap_or(0) == 0)
            .map(|p| p.restrict(&self.ring))
            .collect::<Result<Vec<_>>>()?;
        Self::new(&self.ring, kept)
    }

    /// `g ∈ √J` via the Rabinowitsch trick with an auxiliary global variable.
    pub fn radical_member(&self, g: &MultiPoly, ord: &MonomialOrder) -> Result<bool> {
        if g.is_zero() {
            return Ok(true);
        }
        let big = self.ring.extend("v");
        let v = MultiPoly::var(&big, big.arity() - 1);
        let mut gens: Vec<MultiPoly> = self.gens.iter().map(|p| p.embed(&big)).collect();
        gens.push(&MultiPoly::one(&big) - &(&v * &g.embed(&big)));
        let b = std_in(&big, &gens, &ord.extended(big.arity()))?;
        Ok(b.is_unit())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multipoly::parse;

    fn ring() -> Ring {
        Ring::parse_spec("x,y,z").unwrap()
    }

    fn id(g: &[&str]) -> IdealHandle {
        IdealHandle::parse(&ring(), g).unwrap()
    }

    fn p(s: &str) -> MultiPoly {
        parse(s, &ring()).unwrap()
    }

    fn glob() -> MonomialOrder {
        MonomialOrder::global(&ring())
    }

    fn loc() -> MonomialOrder {
        MonomialOrder::local(&ring())
    }

    #[test]
    fn element_quotients() {
        let j = id(&["x*(3*x+2)", "y"]);
        let q = j.quotient_by_element(&p("x"), &glob()).unwrap();
        assert!(q.equals(&id(&["3*x+2", "y"]), &glob()).unwrap());
        assert!(j.quotient_by_element(&p("1"), &glob()).unwrap().equals(&j, &glob()).unwrap());
        let q = id(&["x^2"]).quotient_by_element(&p("x"), &loc()).unwrap();
        assert!(q.equals(&id(&["x"]), &loc()).unwrap());
        assert_eq!(j.quotient_by_element(&p("0"), &glob()).unwrap_err(), Error::ZeroDivisor);
    }

    #[test]
    fn ideal_quotients() {
        let j = id(&["x^2", "y^2*z", "y^3"]);
        let q = j.quotient_by_ideal(&id(&["x", "y"]), &loc()).unwrap();
        // monomial colon: (J:x) ∩ (J:y) = ⟨x, y²z, y³⟩ ∩ ⟨x², yz, y²⟩
        let expect = id(&["x^2", "x*y*z", "x*y^2", "y^2*z", "y^3"]);
        assert!(q.equals(&expect, &loc()).unwrap());
        assert!(!q.contains(&p("y^2"), &loc()).unwrap());
        let q = id(&["x*y", "x*z"]).quotient_by_ideal(&id(&["y", "z"]), &glob()).unwrap();
        assert!(q.equals(&id(&["x"]), &glob()).unwrap());
        assert!(j.quotient_by_ideal(&id(&["1"]), &glob()).unwrap().equals(&j, &glob()).unwrap());
    }

    #[test]
    fn saturations() {
        let (s, _) = id(&["x^2", "y^2*z", "y^3"]).saturate(&id(&["z"]), &loc()).unwrap();
        assert!(s.equals(&id(&["x^2", "y^2"]), &loc()).unwrap());
        let (s, _) = id(&["x"]).saturate(&id(&["y"]), &glob()).unwrap();
        assert!(s.equals(&id(&["x"]), &glob()).unwrap());
        let (s, steps) = id(&["3*x^2+2*x", "2*y"]).saturate(&id(&["x", "y"]), &glob()).unwrap();
        assert!(s.equals(&id(&["3*x+2", "y"]), &glob()).unwrap());
        assert!(steps >= 1);
    }

    #[test]
    fn eliminations() {
        let j = id(&["x-z^2", "y-z^3"]);
        let e = j.eliminate(&[2], &glob()).unwrap();
        assert!(e.contains(&p("y^2-x^3"), &glob()).unwrap());
        assert!(id(&["x"]).eliminate(&[1], &glob()).unwrap().equals(&id(&["x"]), &glob()).unwrap());
        // eliminating a germ coordinate under a local ordering is refused
        assert!(matches!(j.eliminate(&[2], &loc()), Err(Error::UnsoundElimination(_))));

        let r = Ring::parse_spec("s,z").unwrap();
        let j = IdealHandle::parse(&r, &["s^2+3", "3*s*z+2"]).unwrap();
        let e = j.eliminate(&[0], &MonomialOrder::global(&r)).unwrap();
        let expect = IdealHandle::parse(&r, &["z^2+4/27"]).unwrap();
        assert!(e.equals(&expect, &MonomialOrder::global(&r)).unwrap());
    }

    #[test]
    fn unit_and_radical() {
        assert!(id(&["x", "x+1"]).is_unit(&glob()).unwrap());
        assert!(id(&["x^2"]).radical_member(&p("x"), &glob()).unwrap());
        let j = id(&["x^2", "y^2*z", "y^3"]);
        assert!(!j.radical_member(&p("z"), &loc()).unwrap());
        assert!(j.radical_member(&p("y"), &loc()).unwrap());
    }

    #[test]
    fn intersection_local() {
        let a = id(&["x^2", "y"]);
        let b = id(&["x", "y^2"]);
        let i = a.intersect(&b, &loc()).unwrap();
        assert!(i.equals(&id(&["x^2", "x*y", "y^2"]), &loc()).unwrap());
    }

    #[test]
    fn colon_in_local_ring_needs_units() {
        // globally ⟨x*(1+x)⟩ : x = ⟨1+x⟩ is proper, locally it is the unit ideal
        let j = id(&["x+x^2"]);
        assert!(j.quotient_by_element(&p("x"), &loc()).unwrap().is_unit(&loc()).unwrap());
        assert!(!j.quotient_by_element(&p("x"), &glob()).unwrap().is_unit(&glob()).unwrap());
        // ⟨x^2*(1-y), y^3⟩ : x = contains x locally
        let j = id(&["x^2-x^2*y", "y^3"]);
        let q = j.quotient_by_element(&p("x*(1+z)"), &loc()).unwrap();
        assert!(q.contains(&p("x"), &loc()).unwrap());
    }
}
