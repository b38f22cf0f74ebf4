//! Relative morsifications: candidate deformations f_t = f + t·g, Morse
//! point counts off the singular line, and verification at sampled t0.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::arith::{fmt_rat, rat, rat_int, Rat};
use crate::blowup::{self, DivisorSummary};
use crate::error::{Error, Result};
use crate::idealcalc::IdealHandle;
use crate::invariants::{check_singular_locus, yomdin_stabilize, MorsEvidence};
use crate::multipoly::{parse, Monomial, MonomialOrder, MultiPoly, Ring};
use crate::quotientalg::QuotientAlgebra;

pub const CAVEAT_SAMPLING: &str =
    "a true verdict means no violation was found at the sampled t0; it does not certify a whole neighborhood of 0";
pub const CAVEAT_GLOBAL_COUNT: &str =
    "a1_count counts Morse points of the polynomial f_t0, including any that do not tend to the origin as t -> 0; a1_germ counts only those that do";

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Provenance {
    Preset { row: String },
    Random { seed: u64, trial: u64 },
    Given,
}

/// A deformation f_t = f + t·g with g ∈ I^p.
#[derive(Clone, Debug)]
pub struct MorsCandidate {
    pub f: MultiPoly,
    pub g: MultiPoly,
    pub provenance: Provenance,
    /// Drawn family coefficients, by name.
    pub coefficients: Vec<(String, Rat)>,
}

impl MorsCandidate {
    pub fn new(f: &MultiPoly, g: &MultiPoly, provenance: Provenance) -> Result<Self> {
        let f = blowup::specialized(f)?;
        let g = blowup::specialized(g)?;
        if f.ring() != g.ring() {
            return Err(Error::RingMismatch);
        }
        let p = f.i_order()?;
        if !g.is_zero() && g.i_order()? < p {
            return Err(Error::Hypothesis(format!("g = {g} is not in I^{p}")));
        }
        Ok(MorsCandidate { f, g, provenance, coefficients: Vec::new() })
    }

    /// f + t0·g.
    pub fn at(&self, t0: &Rat) -> MultiPoly {
        &self.f + &self.g.scale(t0)
    }

    /// f + t·g in the ring with the deformation parameter `t`.
    pub fn family(&self) -> Result<MultiPoly> {
        let ring = self.f.ring().with_param("t")?;
        let t = MultiPoly::var(&ring, ring.arity() - 1);
        Ok(&self.f.embed(&ring) + &(&t * &self.g.embed(&ring)))
    }
}

fn table_ring() -> Ring {
    Ring::parse_spec("x,y,z").expect("fixed ring")
}

fn mixed(p: u32) -> String {
    format!("x^2*y^{}+y^2*x^{}", p - 2, p - 2)
}

/// Table rows of explicit relative morsifications in x, y, z, as (f, g).
pub fn preset_row1(p: u32) -> (MultiPoly, MultiPoly) {
    let r = table_ring();
    let f = parse(&format!("x^{p}+y^{p}*z"), &r).expect("valid");
    (f, parse(&mixed(p), &r).expect("valid"))
}

pub fn preset_row2(p: u32, q: u32) -> (MultiPoly, MultiPoly) {
    let r = table_ring();
    let f = parse(&format!("x^{p}+y^{p}*z^{q}+y^{}", p + 1), &r).expect("valid");
    let g = parse(&format!("{}-y^{p}*z", mixed(p)), &r).expect("valid");
    (f, g)
}

pub fn preset_row3(p: u32, q1: u32, q2: u32) -> (MultiPoly, MultiPoly) {
    let r = table_ring();
    let f = parse(&format!("x^{p}*z^{q1}+y^{p}*z^{q2}+y^{}+x^{}", p + 1, p + 1), &r).expect("valid");
    let g = parse(&format!("{}-x^{p}*z-y^{p}*z", mixed(p)), &r).expect("valid");
    (f, g)
}

/// The table preset whose f equals the given polynomial, searching small
/// parameters.
pub fn preset_for(f: &MultiPoly) -> Option<MorsCandidate> {
    let f = blowup::specialized(f).ok()?;
    if f.ring().names() != table_ring().names() {
        return None;
    }
    let f = f.rename(&table_ring(), &[0, 1, 2]);
    let mut rows: Vec<(String, (MultiPoly, MultiPoly))> = Vec::new();
    for p in 2..=6 {
        rows.push((format!("x^p+y^p*z (p={p})"), preset_row1(p)));
        for q in 1..=4 {
            rows.push((format!("x^p+y^p*z^q+y^(p+1) (p={p}, q={q})"), preset_row2(p, q)));
            for q2 in 1..=4 {
                rows.push((format!("x^p*z^q1+y^p*z^q2+y^(p+1)+x^(p+1) (p={p}, q1={q}, q2={q2})"), preset_row3(p, q, q2)));
            }
        }
    }
    rows.into_iter()
        .find(|(_, (pf, _))| *pf == f)
        .map(|(row, (pf, g))| MorsCandidate::new(&pf, &g, Provenance::Preset { row }).expect("table presets lie in I^p"))
}

fn draw(rng: &mut ChaCha8Rng) -> Rat {
    let mut num = 0i64;
    while num == 0 {
        num = rng.gen_range(-8..=8);
    }
    rat(num, rng.gen_range(1..=32))
}

/// One member of g = −(Σ a_ij x_j^{p−2} x_i² + Σ b_kl x_k x_l^p), with
/// i, j, l ranging over the I-variables, k over all variables, k ≠ l, and
/// coefficients drawn from the stream (seed, trial).
pub fn candidate_family_trial(f: &MultiPoly, seed: u64, trial: u64) -> Result<MorsCandidate> {
    let f = blowup::specialized(f)?;
    check_singular_locus(&f)?.require()?;
    let ring = f.ring().clone();
    let p = f.i_order()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    let arity = ring.arity();
    let mut g = MultiPoly::zero(&ring);
    let mut coefficients = Vec::new();
    for i in ring.i_vars() {
        for j in ring.i_vars() {
            let c = draw(&mut rng);
            let mut m = Monomial::var(arity, j, p - 2);
            m.0[i] += 2;
            g = &g - &MultiPoly::monomial(&ring, m, c.clone());
            coefficients.push((format!("a_{},{}", ring.name(i), ring.name(j)), c));
        }
    }
    for k in ring.x_vars() {
        for l in ring.i_vars() {
            if k == l {
                continue;
            }
            let c = draw(&mut rng);
            let mut m = Monomial::var(arity, l, p);
            m.0[k] += 1;
            g = &g - &MultiPoly::monomial(&ring, m, c.clone());
            coefficients.push((format!("b_{},{}", ring.name(k), ring.name(l)), c));
        }
    }
    let mut cand = MorsCandidate::new(&f, &g, Provenance::Random { seed, trial })?;
    cand.coefficients = coefficients;
    Ok(cand)
}

pub fn candidate_family(f: &MultiPoly, seed: u64) -> Result<MorsCandidate> {
    candidate_family_trial(f, seed, 0)
}

/// Saturation of Jac(g) by I in the polynomial ring: the critical scheme
/// off the singular line.
pub fn critical_off_line(g: &MultiPoly) -> Result<IdealHandle> {
    let g = blowup::specialized(g)?;
    let ring = g.ring();
    let ord = MonomialOrder::global(ring);
    let jac = IdealHandle::new(ring, g.jacobian())?;
    let i = IdealHandle::of_vars(ring, ring.i_vars());
    Ok(jac.saturate(&i, &ord)?.0)
}

/// Number of Morse points of `g` off V(I); fails if the critical set off
/// the line is not finite or has a degenerate point.
pub fn count_a1(g: &MultiPoly) -> Result<usize> {
    let g = blowup::specialized(g)?;
    let ring = g.ring();
    let ord = MonomialOrder::global(ring);
    let a = critical_off_line(&g)?;
    if !a.is_zero_dim(&ord)? {
        return Err(Error::NotZeroDimensional);
    }
    if !a.with_gens(&[g.hessian_det()])?.is_unit(&ord)? {
        return Err(Error::NonMorse);
    }
    Ok(a.vdim(&ord)?.expect("zero-dimensional"))
}

/// The polynomial in x_n vanishing at the line coordinates of the critical
/// points off V(I), with multiplicity.
pub fn critical_eliminant(g: &MultiPoly) -> Result<String> {
    let a = critical_off_line(g)?;
    let ring = a.ring().clone();
    let alg = QuotientAlgebra::build(&a, &MonomialOrder::global(&ring))?;
    Ok(alg.char_poly_of_mult(ring.line_var())?.to_string())
}

/// Number of Morse points of f_t off V(I) that tend to the origin as
/// t → 0: the closure of the critical locus over t ≠ 0, cut at t = 0 and
/// localized at the origin. Each such point is simple for generic t.
pub fn count_a1_germ(cand: &MorsCandidate) -> Result<usize> {
    let fam = cand.family()?;
    let ring = fam.ring().clone();
    let base = cand.f.ring().clone();
    let tv = ring.arity() - 1;
    let ord = MonomialOrder::global(&ring);
    let jac = IdealHandle::new(&ring, fam.jacobian())?;
    // J : (I·t)^∞ = ∩_i (J : t^∞) : x_i^∞
    let jt = jac.saturate_by_element(&MultiPoly::var(&ring, tv), &ord)?;
    let mut a: Option<IdealHandle> = None;
    for i in ring.i_vars() {
        let s = jt.saturate_by_element(&MultiPoly::var(&ring, i), &ord)?;
        a = Some(match a {
            None => s,
            Some(prev) => prev.intersect(&s, &ord)?,
        });
    }
    let a = a.expect("at least one I-variable");
    let limit = a
        .std(&ord)?
        .elements()
        .iter()
        .map(|g| g.substitute_value(tv, &rat_int(0)).restrict(&base))
        .collect::<Result<Vec<_>>>()?;
    let limit = IdealHandle::new(&base, limit)?;
    if limit.local_std()?.vdim().is_none() {
        return Err(Error::NotZeroDimensional);
    }
    crate::quotientalg::local_multiplicity_at_origin(&limit)
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct SampleReport {
    pub t0: String,
    pub cond_a: bool,
    pub cond_b: bool,
    pub cond_c: bool,
    pub a1_count: Option<usize>,
    pub eliminant: Option<String>,
    pub transversal: Option<DivisorSummary>,
    pub diagnostics: Vec<String>,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct MorsReport {
    pub f: String,
    pub g: String,
    pub provenance: Provenance,
    pub samples: Vec<SampleReport>,
    /// Morse counts agree across samples.
    pub stable: bool,
    pub verdict: bool,
    pub a1_count: Option<usize>,
    /// Morse points tending to the origin; this is the germ count.
    pub a1_germ: Option<usize>,
    pub caveats: Vec<String>,
}

fn sample(cand: &MorsCandidate, t0: &Rat) -> Result<SampleReport> {
    let ft = cand.at(t0);
    let p = cand.f.i_order()?;
    let mut rep = SampleReport {
        t0: fmt_rat(t0),
        cond_a: false,
        cond_b: false,
        cond_c: false,
        a1_count: None,
        eliminant: None,
        transversal: None,
        diagnostics: Vec::new(),
    };
    let prof = check_singular_locus(&ft)?;
    rep.cond_a = prof.sing_locus_is_line && prof.p == p;
    if !rep.cond_a {
        rep.diagnostics.push(format!("singular locus is the line: {}, I-order {} (expected {p})", prof.sing_locus_is_line, prof.p));
    }
    match count_a1(&ft) {
        Ok(c) => {
            rep.cond_b = true;
            rep.a1_count = Some(c);
            rep.eliminant = Some(critical_eliminant(&ft)?);
        }
        Err(Error::NotZeroDimensional) => rep
            .diagnostics
            .push("Jac(f_t0) : I^inf is positive-dimensional: critical points off the line are not isolated".into()),
        Err(Error::NonMorse) => rep.diagnostics.push("a critical point off the line has a degenerate Hessian".into()),
        Err(e) => return Err(e),
    }
    match blowup::transversal_divisor(&ft) {
        Ok(d) => {
            rep.cond_c = d.squarefree;
            if !d.squarefree {
                rep.diagnostics.push(format!("transversal discriminant {} is not reduced", d.h));
            }
            rep.transversal = Some(d.summary());
        }
        Err(Error::PositiveDimensionalCell(j)) => {
            rep.diagnostics.push(format!("critical cell of chart {j} is positive-dimensional"))
        }
        Err(Error::Hypothesis(m)) => rep.diagnostics.push(m),
        Err(e) => return Err(e),
    }
    Ok(rep)
}

/// Conditions of a relative morsification checked at each sample.
pub fn verify_relative_morsification(cand: &MorsCandidate, t_samples: &[Rat]) -> Result<MorsReport> {
    if t_samples.len() < 2 {
        return Err(Error::Invalid("need at least two samples".into()));
    }
    if t_samples.iter().any(|t| *t == rat_int(0)) {
        return Err(Error::Invalid("samples must be nonzero".into()));
    }
    let samples = t_samples.iter().map(|t| sample(cand, t)).collect::<Result<Vec<_>>>()?;
    let counts: Vec<Option<usize>> = samples.iter().map(|s| s.a1_count).collect();
    let stable = counts.iter().all(|c| c.is_some() && *c == counts[0]);
    let verdict = stable && samples.iter().all(|s| s.cond_a && s.cond_b && s.cond_c);
    Ok(MorsReport {
        f: cand.f.to_string(),
        g: cand.g.to_string(),
        provenance: cand.provenance.clone(),
        samples,
        stable,
        verdict,
        a1_count: if stable { counts[0] } else { None },
        a1_germ: if verdict { Some(count_a1_germ(cand)?) } else { None },
        caveats: vec![CAVEAT_SAMPLING.into(), CAVEAT_GLOBAL_COUNT.into()],
    })
}

pub fn default_samples() -> Vec<Rat> {
    vec![rat(1, 2), rat(1, 3)]
}

/// First candidate of the random family passing verification.
pub fn search_morsification(f: &MultiPoly, seed: u64, max_trials: u64) -> Result<(MorsCandidate, MorsReport)> {
    let f = blowup::specialized(f)?;
    check_singular_locus(&f)?.require()?;
    let mut stats: BTreeMap<&str, usize> = BTreeMap::new();
    for trial in 0..max_trials {
        let cand = candidate_family_trial(&f, seed, trial)?;
        let rep = verify_relative_morsification(&cand, &default_samples())?;
        if rep.verdict {
            return Ok((cand, rep));
        }
        for s in &rep.samples {
            for (flag, name) in [(s.cond_a, "cond_a"), (s.cond_b, "cond_b"), (s.cond_c, "cond_c")] {
                if !flag {
                    *stats.entry(name).or_default() += 1;
                }
            }
        }
        if !rep.stable {
            *stats.entry("unstable").or_default() += 1;
        }
    }
    let stats = stats.iter().map(|(k, v)| format!("{k}: {v}")).collect::<Vec<_>>().join(", ");
    Err(Error::SearchExhausted { trials: max_trials as usize, stats })
}

/// μ(f_t0 + x_n^k) over all critical points, less the Morse points of f_t0.
/// Meaningful when every critical point tends to the origin as t -> 0.
pub fn deformed_milnor(cand: &MorsCandidate, t0: &Rat, k: u32) -> Result<usize> {
    let ft = cand.at(t0);
    let ring = ft.ring().clone();
    let xn = MultiPoly::var(&ring, ring.n() - 1);
    let fk = &ft + &xn.pow(k);
    let total = IdealHandle::new(&ring, fk.jacobian())?
        .vdim(&MonomialOrder::global(&ring))?
        .ok_or(Error::NonIsolated)?;
    let a1 = count_a1(&ft)?;
    total.checked_sub(a1).ok_or_else(|| Error::Inconsistent(format!("{a1} Morse points but total Milnor number {total}")))
}

/// Evidence for the inequality checks from a verified candidate: the germ
/// Morse count, plus the deformed Milnor numbers at the stabilized k when
/// every Morse point tends to the origin.
pub fn mors_evidence(cand: &MorsCandidate, rep: &MorsReport, t_samples: &[Rat]) -> Result<Option<MorsEvidence>> {
    let Some(a1) = rep.a1_germ.filter(|_| rep.verdict) else { return Ok(None) };
    let (k, _) = yomdin_stabilize(&cand.f)?;
    let mut mu_deformed = BTreeMap::new();
    if rep.a1_count == Some(a1) {
        for t0 in t_samples {
            mu_deformed.insert(fmt_rat(t0), deformed_milnor(cand, t0, k)?);
        }
    }
    Ok(Some(MorsEvidence { a1_count: a1, k, mu_deformed }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> MultiPoly {
        parse(s, &table_ring()).unwrap()
    }

    #[test]
    fn family_lies_in_i_power() {
        let f = p("x^3+y^3*z");
        let c = candidate_family(&f, 1).unwrap();
        assert!(c.g.terms().all(|(m, _)| m.exps()[0] + m.exps()[1] >= 3));
        assert_eq!(c.coefficients.len(), 4 + 4);
        let again = candidate_family(&f, 1).unwrap();
        assert_eq!(c.g, again.g);
        assert_ne!(c.g, candidate_family_trial(&f, 1, 1).unwrap().g);
    }

    #[test]
    fn presets() {
        let c = preset_for(&p("x^3+y^3*z")).unwrap();
        assert_eq!(c.g, p("x^2*y+y^2*x"));
        let c = preset_for(&p("x^3+y^3*z^2+y^4")).unwrap();
        assert_eq!(c.at(&rat(1, 2)), p("x^3+y^3*z^2-1/2*y^3*z+y^4+1/2*x^2*y+1/2*x*y^2"));
        assert!(preset_for(&p("x^3+y^3")).is_none());
    }

    #[test]
    fn morse_counts() {
        let c = preset_for(&p("x^3+y^3*z")).unwrap();
        assert_eq!(count_a1(&c.at(&rat(1, 2))).unwrap(), 0);
        let c = preset_for(&p("x^3+y^3*z^2+y^4")).unwrap();
        assert_eq!(count_a1(&c.at(&rat(1, 2))).unwrap(), 2);
        assert_eq!(count_a1(&p("x^3+y^2+x^2")).unwrap_err(), Error::NotZeroDimensional);
    }

    #[test]
    fn verification() {
        let c = preset_for(&p("x^3+y^3*z")).unwrap();
        let r = verify_relative_morsification(&c, &default_samples()).unwrap();
        assert!(r.verdict && r.stable);
        assert_eq!(r.a1_count, Some(0));
        assert_eq!(r.a1_germ, Some(0));
        let c = preset_for(&p("x^3+y^3*z^2+y^4")).unwrap();
        let r = verify_relative_morsification(&c, &default_samples()).unwrap();
        assert_eq!((r.a1_count, r.a1_germ), (Some(2), Some(2)));

        let bad = MorsCandidate::new(&p("x^3+y^2"), &p("x^2"), Provenance::Given).unwrap();
        let r = verify_relative_morsification(&bad, &default_samples()).unwrap();
        assert!(!r.verdict);
        assert!(r.samples.iter().all(|s| !s.cond_b));

        let triv = MorsCandidate::new(&p("x^2+y^2"), &MultiPoly::zero(&table_ring()), Provenance::Given).unwrap();
        let r = verify_relative_morsification(&triv, &default_samples()).unwrap();
        assert!(r.verdict);
        assert_eq!(r.a1_count, Some(0));
        assert!(r.samples[0].transversal.as_ref().unwrap().empty);
    }

    #[test]
    fn conservation_on_presets() {
        for (src, a1, mu) in [("x^3+y^3*z", 0, 10), ("x^3+y^3*z^2+y^4", 2, 42)] {
            let c = preset_for(&p(src)).unwrap();
            let r = verify_relative_morsification(&c, &default_samples()).unwrap();
            let ev = mors_evidence(&c, &r, &default_samples()).unwrap().unwrap();
            assert_eq!(ev.a1_count, a1);
            assert_eq!(ev.mu_deformed.len(), 2);
            assert!(ev.mu_deformed.values().all(|&m| m + a1 == mu), "{src}: {ev:?}");
        }
    }

    #[test]
    fn searches() {
        let (_, r) = search_morsification(&p("x^3+y^3*z"), 7, 20).unwrap();
        assert!(r.verdict);
        assert_eq!(r.a1_germ, Some(0));
        let (_, r) = search_morsification(&p("x^2+y^2*z"), 7, 20).unwrap();
        assert_eq!(r.a1_germ, Some(0));
        assert!(r.samples[0].transversal.as_ref().unwrap().reduced);
        assert!(matches!(search_morsification(&p("x^3"), 7, 20).unwrap_err(), Error::Hypothesis(_)));
    }
}
