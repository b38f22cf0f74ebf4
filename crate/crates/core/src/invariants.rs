//! Invariants of a germ with singular locus the line V(x_1, …, x_{n−1}):
//! singular-locus check, Milnor numbers, the generic Jacobian ideal, the
//! Jacobi number j(f), δ(f), the Yomdin series μ(f + x_n^k), the p = 2
//! determinant divisor, and the inequality checks tying them together.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::Serialize;

use crate::arith::{det_unipoly_matrix, rat_int, Rat, UniPoly};
use crate::blowup::{self, specialized, DivisorOnLine, DivisorSummary};
use crate::error::{Error, Result};
use crate::idealcalc::IdealHandle;
use crate::multipoly::{Monomial, MonomialOrder, MultiPoly};
use crate::quotientalg::{local_multiplicity_at_origin, QuotientAlgebra};

/// Largest k tried when looking for the stable range of the Yomdin series.
pub const YOMDIN_CAP: u32 = 40;

/// Extra degrees tried past the starting truncation in the j(f) route A.
pub const TRUNCATION_WINDOW: u32 = 64;

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct GermProfile {
    #[serde(skip)]
    pub f: MultiPoly,
    pub n: usize,
    /// I-order; 0 when f has a term outside I.
    pub p: u32,
    pub sing_locus_is_line: bool,
    pub generic_ordinary: bool,
}

impl GermProfile {
    pub fn passes(&self) -> bool {
        self.p >= 2 && self.sing_locus_is_line && self.generic_ordinary
    }

    pub fn require(&self) -> Result<()> {
        if self.passes() {
            return Ok(());
        }
        Err(Error::Hypothesis(format!(
            "germ {} fails the standing hypotheses (p = {}, singular locus is the line: {}, generic ordinary: {})",
            self.f, self.p, self.sing_locus_is_line, self.generic_ordinary
        )))
    }
}

fn ideal_i(f: &MultiPoly) -> IdealHandle {
    IdealHandle::of_vars(f.ring(), f.ring().i_vars())
}

fn jac(f: &MultiPoly) -> Result<IdealHandle> {
    IdealHandle::new(f.ring(), f.jacobian())
}

/// Singular-locus and transversal-type flags for `f`.
pub fn check_singular_locus(f: &MultiPoly) -> Result<GermProfile> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let f = specialized(f)?;
    let n = f.ring().n();
    let p = f.i_order()?;
    let mut profile = GermProfile { f: f.clone(), n, p, sing_locus_is_line: false, generic_ordinary: false };
    if p < 2 || n < 2 {
        return Ok(profile);
    }
    // saturation commutes with localization: saturate globally, then ask
    // whether the result still vanishes at the origin
    let global = MonomialOrder::global(f.ring());
    let k = jac(&f)?.with_gens(std::slice::from_ref(&f))?;
    let (sat, _) = k.saturate(&ideal_i(&f), &global)?;
    let basis = sat.std(&global)?;
    profile.sing_locus_is_line = basis.elements().iter().any(|g| !g.constant_coeff().is_zero());
    profile.generic_ordinary = blowup::is_generic_ordinary(&f)?;
    Ok(profile)
}

/// Milnor number of an isolated singularity at the origin (Mora), checked
/// against the global Hilbert-Samuel count.
pub fn milnor_local(g: &MultiPoly) -> Result<usize> {
    let mu = milnor_mora(g)?;
    let check = local_multiplicity_at_origin(&jac(g)?)?;
    if check != mu {
        return Err(Error::Inconsistent(format!("Milnor number of {g}: Mora {mu}, truncation {check}")));
    }
    Ok(mu)
}

/// Milnor number from the local standard basis alone.
pub fn milnor_mora(g: &MultiPoly) -> Result<usize> {
    let g = specialized(g)?;
    jac(&g)?.local_std()?.vdim().ok_or(Error::NonIsolated)
}

/// `Jac(f) : x_n^∞` in the local ring, with its defining properties checked.
pub fn jac_gen(f: &MultiPoly) -> Result<IdealHandle> {
    let f = specialized(f)?;
    check_singular_locus(&f)?.require()?;
    let ring = f.ring();
    let local = MonomialOrder::local(ring);
    let xn = IdealHandle::of_vars(ring, [ring.line_var()]);
    let (g, _) = jac(&f)?.saturate(&xn, &local)?;
    let g = g.minimized(&local)?;
    let back = g.quotient_by_element(&MultiPoly::var(ring, ring.line_var()), &local)?;
    if !g.contains_ideal(&back, &local)? {
        return Err(Error::Inconsistent("x_n is a zero divisor modulo Jac_gen".into()));
    }
    if g.krull_dim(&local)? != 1 {
        return Err(Error::Inconsistent("Jac_gen is not one-dimensional".into()));
    }
    Ok(g)
}

fn xn_power(f: &MultiPoly, k: u32) -> MultiPoly {
    let ring = f.ring();
    MultiPoly::monomial(ring, Monomial::var(ring.arity(), ring.line_var(), k), rat_int(1))
}

/// μ(f + x_n^k), or `None` when the origin is not isolated.
pub fn yomdin_mu(f: &MultiPoly, k: u32) -> Result<Option<usize>> {
    let f = specialized(f)?;
    match milnor_mora(&(&f + &xn_power(&f, k))) {
        Ok(m) => Ok(Some(m)),
        Err(Error::NonIsolated) => Ok(None),
        Err(e) => Err(e),
    }
}

/// (p−1)^{n−1}, the stable growth of the Yomdin series.
pub fn yomdin_step(p: u32, n: usize) -> usize {
    (p as usize - 1).pow(n as u32 - 1)
}

/// Least k with μ(k+1) − μ(k) = μ(k+2) − μ(k+1) = (p−1)^{n−1}, and the
/// series from k = 2 up to k + 2.
pub fn yomdin_stabilize(f: &MultiPoly) -> Result<(u32, BTreeMap<u32, usize>)> {
    let f = specialized(f)?;
    let p = f.i_order()?;
    if p < 2 {
        return Err(Error::Hypothesis(format!("I-order {p} < 2")));
    }
    let step = yomdin_step(p, f.ring().n());
    let mut series = BTreeMap::new();
    for k in 2..=YOMDIN_CAP {
        if let Some(m) = yomdin_mu(&f, k)? {
            series.insert(k, m);
        }
        if k >= 4 {
            let (a, b, c) = (series.get(&(k - 2)), series.get(&(k - 1)), series.get(&k));
            if let (Some(&a), Some(&b), Some(&c)) = (a, b, c) {
                if b >= a && c >= b && b - a == step && c - b == step {
                    return Ok((k - 2, series));
                }
            }
        }
    }
    Err(Error::NoStabilization { cap: YOMDIN_CAP as usize, what: "Yomdin series".into() })
}

/// Both δ routes at one k: rank of multiplication by ∂_n f, and the
/// dimension of the colon ideal.
pub fn delta_routes_at(f: &MultiPoly, k: u32) -> Result<(usize, usize)> {
    let f = specialized(f)?;
    let ring = f.ring();
    let dn = f.derivative(ring.line_var());
    if dn.is_zero() {
        return Ok((0, 0));
    }
    let local = MonomialOrder::local(ring);
    let jk = jac(&(&f + &xn_power(&f, k)))?;
    let alg = QuotientAlgebra::build(&jk, &local)?;
    let a = alg.mult_operator_rank(&dn)?;
    let colon = jk.quotient_by_element(&dn, &local)?;
    let b = colon.vdim(&local)?.ok_or(Error::InfiniteDimensional)?;
    Ok((a, b))
}

/// Number of consecutive k, starting at k*, on which δ is evaluated.
pub const DELTA_WINDOW: u32 = 3;

/// δ(k) on the window k*, k*+1, …; both routes agree at every k.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct DeltaProfile {
    pub k_star: u32,
    pub by_k: BTreeMap<u32, usize>,
}

impl DeltaProfile {
    /// The common value, if δ does not depend on k on the window.
    pub fn stable(&self) -> Option<usize> {
        let mut it = self.by_k.values();
        let first = *it.next()?;
        it.all(|&v| v == first).then_some(first)
    }

    pub fn min(&self) -> usize {
        self.by_k.values().copied().min().unwrap_or(0)
    }
}

pub fn delta_profile(f: &MultiPoly, k_star: u32) -> Result<DeltaProfile> {
    let mut by_k = BTreeMap::new();
    for k in k_star..k_star + DELTA_WINDOW {
        let (a, b) = delta_routes_at(f, k)?;
        if a != b {
            return Err(Error::Inconsistent(format!("delta routes disagree at k = {k}: rank {a}, colon {b}")));
        }
        by_k.insert(k, a);
    }
    Ok(DeltaProfile { k_star, by_k })
}

/// δ(f), with route agreement and k-independence enforced.
pub fn delta(f: &MultiPoly) -> Result<usize> {
    let f = specialized(f)?;
    check_singular_locus(&f)?.require()?;
    let (k, _) = yomdin_stabilize(&f)?;
    let d = delta_profile(&f, k)?;
    d.stable().ok_or_else(|| Error::Inconsistent(format!("delta depends on k: {:?}", d.by_k)))
}

/// dim R/(Jac_gen + ⟨x_n⟩), the multiplicity of Jac_gen along the line.
pub fn jac_gen_multiplicity(f: &MultiPoly) -> Result<usize> {
    let f = specialized(f)?;
    let ring = f.ring();
    jac_gen(&f)?
        .with_gens(&[MultiPoly::var(ring, ring.line_var())])?
        .vdim(&MonomialOrder::local(ring))?
        .ok_or(Error::InfiniteDimensional)
}

/// j(f) as dim Jac_gen/Jac through truncations J + m^N, stabilized.
pub fn jacobi_truncation(f: &MultiPoly) -> Result<usize> {
    let f = specialized(f)?;
    let ring = f.ring();
    let local = MonomialOrder::local(ring);
    let j = jac(&f)?;
    let g = jac_gen(&f)?;
    let start = j
        .with_gens(&[MultiPoly::var(ring, ring.line_var())])?
        .vdim(&local)?
        .ok_or(Error::NonIsolated)?
        .max(1) as u32;
    let sj = j.local_std()?;
    let sg = g.local_std()?;
    let diff = |d: u32| sj.count_below_degree(d) - sg.count_below_degree(d);
    let mut prev = diff(start);
    for d in start + 1..=start + TRUNCATION_WINDOW {
        let cur = diff(d);
        if cur == prev {
            return Ok(cur);
        }
        prev = cur;
    }
    Err(Error::NoStabilization { cap: TRUNCATION_WINDOW as usize, what: "dim Jac_gen/(Jac + m^N)".into() })
}

/// j(f) as μ(f + x_n^k) − (k−1)·e − δ(k) on the δ window, where `e` is
/// the multiplicity of Jac_gen along the line; all values must agree.
pub fn jacobi_yomdin(f: &MultiPoly) -> Result<usize> {
    let f = specialized(f)?;
    check_singular_locus(&f)?.require()?;
    let (k, series) = yomdin_stabilize(&f)?;
    let d = delta_profile(&f, k)?;
    jacobi_from(&series, &d, jac_gen_multiplicity(&f)?)
}

fn jacobi_from(series: &BTreeMap<u32, usize>, delta: &DeltaProfile, e: usize) -> Result<usize> {
    let mut value = None;
    for (&k, &d) in &delta.by_k {
        let mu = series[&k];
        let sub = (k as usize - 1) * e + d;
        let j = mu
            .checked_sub(sub)
            .ok_or_else(|| Error::Inconsistent(format!("mu(f + x_n^{k}) = {mu} is below (k-1)e + delta = {sub}")))?;
        if value.is_some_and(|v| v != j) {
            return Err(Error::Inconsistent(format!("Yomdin route gives j = {} and {j}", value.unwrap())));
        }
        value = Some(j);
    }
    value.ok_or_else(|| Error::Inconsistent("empty delta window".into()))
}

/// j(f), with both routes required to agree.
pub fn jacobi_number(f: &MultiPoly) -> Result<usize> {
    let a = jacobi_truncation(f)?;
    let b = jacobi_yomdin(f)?;
    if a != b {
        return Err(Error::Inconsistent(format!("j routes disagree: truncation {a}, Yomdin {b}")));
    }
    Ok(a)
}

/// Symmetric matrix (a_ij) with f = Σ a_ij x_i x_j over the I-variables.
/// Each monomial is split off at its two lexicographically least
/// I-variables; off-diagonal parts are halved.
pub fn quadratic_matrix(f: &MultiPoly) -> Result<Vec<Vec<MultiPoly>>> {
    let ring = f.ring();
    let m = ring.n() - 1;
    let mut a = vec![vec![MultiPoly::zero(ring); m]; m];
    let half = Rat::new(1.into(), 2.into());
    for (mono, c) in f.terms() {
        let mut e = mono.clone();
        let mut picked = Vec::with_capacity(2);
        for i in ring.i_vars() {
            while picked.len() < 2 && e.0[i] > 0 {
                e.0[i] -= 1;
                picked.push(i);
            }
        }
        let [i, j] = picked[..] else {
            return Err(Error::NotReducedCase(f.i_order()?));
        };
        if i == j {
            a[i][i].add_term(e, c.clone());
        } else {
            let h = c * &half;
            a[i][j].add_term(e.clone(), h.clone());
            a[j][i].add_term(e, h);
        }
    }
    Ok(a)
}

/// For p = 2: the determinant of (a_ij) restricted to the line.
pub fn reduced_case_divisor(f: &MultiPoly) -> Result<DivisorOnLine> {
    let f = specialized(f)?;
    let p = f.i_order()?;
    if p != 2 {
        return Err(Error::NotReducedCase(p));
    }
    let ring = f.ring();
    let xn = ring.line_var();
    let a = quadratic_matrix(&f)?;
    let restricted = a
        .iter()
        .map(|row| {
            row.iter()
                .map(|e| {
                    let mut r = e.clone();
                    for i in ring.i_vars() {
                        r = r.substitute_value(i, &rat_int(0));
                    }
                    r.to_unipoly(xn)
                })
                .collect::<Result<Vec<UniPoly>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let det = det_unipoly_matrix(&restricted, ring.name(xn))?;
    if det.is_zero() {
        return Err(Error::Hypothesis("degenerate quadratic part along the line".into()));
    }
    DivisorOnLine::new(&det)
}

/// Morsification data feeding the inequality checks.
#[derive(Clone, Debug, Default, Serialize, PartialEq, Eq)]
pub struct MorsEvidence {
    /// Germ count of Morse points.
    pub a1_count: usize,
    /// The stabilized k at which `mu_deformed` was taken.
    pub k: u32,
    /// μ(f_{t0} + x_n^k) by t0, summed over the critical points that are
    /// not continuations of Morse points of f_{t0}.
    pub mu_deformed: BTreeMap<String, usize>,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Verdict {
    pub name: String,
    pub holds: bool,
    pub lhs: String,
    pub rhs: String,
}

impl Verdict {
    fn new(name: &str, holds: bool, lhs: impl ToString, rhs: impl ToString) -> Self {
        Verdict { name: name.into(), holds, lhs: lhs.to_string(), rhs: rhs.to_string() }
    }
}

pub const CAVEAT_N4: &str = "n = 4: the j-inequality is an unproven regime; it is evaluated but no conclusion is drawn";
pub const CAVEAT_DIVISOR: &str =
    "the transversal divisor is computed for the polynomial and may include points of the line away from 0; verdicts use its order at 0";

pub const CAVEAT_DELTA_K: &str = "delta depends on k on the stable window; the per-k values are reported and inequalities use the smallest";
pub const CAVEAT_MULTIPLICITY: &str =
    "the multiplicity of Jac_gen along the line differs from (p-1)^(n-1); the Yomdin route for j uses the measured multiplicity";

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct InvariantReport {
    pub n: usize,
    pub p: u32,
    pub j: usize,
    /// δ(f) when it is independent of k on the window.
    pub delta: Option<usize>,
    pub delta_by_k: BTreeMap<u32, usize>,
    pub jac_gen_multiplicity: usize,
    /// Degree of the polynomial divisor on the whole line.
    pub deg_transversal: usize,
    /// Its order at the origin; the germ degree used by the verdicts.
    pub deg_at_origin: usize,
    pub transversal: DivisorSummary,
    pub mu_series: BTreeMap<u32, usize>,
    pub stabilization_k: u32,
    pub inequality_verdicts: Vec<Verdict>,
    pub caveats: Vec<String>,
}

impl InvariantReport {
    pub fn all_hold(&self) -> bool {
        self.inequality_verdicts.iter().all(|v| v.holds)
    }
}

/// All invariants of `f` and the verdicts of the inequalities among them.
pub fn check_inequalities(f: &MultiPoly, evidence: Option<&MorsEvidence>) -> Result<InvariantReport> {
    let f = specialized(f)?;
    let profile = check_singular_locus(&f)?;
    profile.require()?;
    let (n, p) = (profile.n, profile.p);
    let (k, series) = yomdin_stabilize(&f)?;
    let dp = delta_profile(&f, k)?;
    let e = jac_gen_multiplicity(&f)?;
    let jb = jacobi_from(&series, &dp, e)?;
    let ja = jacobi_truncation(&f)?;
    if ja != jb {
        return Err(Error::Inconsistent(format!("j routes disagree: truncation {ja}, Yomdin {jb}")));
    }
    let div = blowup::transversal_divisor(&f)?;
    let deg = div.order_at_origin;
    let mu = series[&k];
    let step = yomdin_step(p, n);
    let d = dp.min();

    let mut verdicts = Vec::new();
    let mut caveats = vec![CAVEAT_DIVISOR.to_string()];
    if dp.stable().is_none() {
        caveats.push(CAVEAT_DELTA_K.to_string());
    }
    if e != step {
        caveats.push(CAVEAT_MULTIPLICITY.to_string());
    }
    if let Some(ev) = evidence {
        let a1 = ev.a1_count;
        verdicts.push(Verdict::new("j >= #A1 + deg", ja >= a1 + deg, ja, a1 + deg));
        let rhs = a1 + (k as usize - 1) * step + 2 * deg;
        verdicts.push(Verdict::new("mu(f+x_n^k) >= #A1 + (k-1)(p-1)^(n-1) + 2 deg", mu >= rhs, mu, rhs));
        if let Some(&m) = series.get(&ev.k) {
            for (t0, &mt) in &ev.mu_deformed {
                let name = format!("mu(f+x_n^{}) = #A1 + mu(f_t0+x_n^{}) at t0 = {t0}", ev.k, ev.k);
                verdicts.push(Verdict::new(&name, m == a1 + mt, m, a1 + mt));
            }
        }
        if n == 4 {
            caveats.push(CAVEAT_N4.to_string());
        }
    } else {
        verdicts.push(Verdict::new("j >= deg", ja >= deg, ja, deg));
    }
    verdicts.push(Verdict::new("delta >= deg", d >= deg, d, deg));
    let rhs = (k as usize - 1) * step + 2 * deg;
    verdicts.push(Verdict::new("mu(f+x_n^k) >= (k-1)(p-1)^(n-1) + 2 deg", mu >= rhs, mu, rhs));
    let lin = delta_zero_iff_membership(&f)?;
    let zero = dp.stable() == Some(0);
    verdicts.push(Verdict::new("delta = 0 iff d_n f in J_(n-1)", zero == lin, zero, lin));

    Ok(InvariantReport {
        n,
        p,
        j: ja,
        delta: dp.stable(),
        delta_by_k: dp.by_k,
        jac_gen_multiplicity: e,
        deg_transversal: div.degree,
        deg_at_origin: deg,
        transversal: div.summary(),
        mu_series: series,
        stabilization_k: k,
        inequality_verdicts: verdicts,
        caveats,
    })
}

/// Whether ∂_n f lies in ⟨∂_1 f, …, ∂_{n−1} f⟩ locally.
pub fn delta_zero_iff_membership(f: &MultiPoly) -> Result<bool> {
    let ring = f.ring();
    let partials: Vec<MultiPoly> = ring.i_vars().map(|i| f.derivative(i)).collect();
    let j = IdealHandle::new(ring, partials)?;
    j.contains(&f.derivative(ring.line_var()), &MonomialOrder::local(ring))
}
