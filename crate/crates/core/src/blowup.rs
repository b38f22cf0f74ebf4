//! Blow-up along the singular line, critical cells of the exceptional
//! projection, and the transversal discriminant as a divisor on the line.
//!
//! Chart `j` (one per I-variable) substitutes `x_i = σ_i·x_j` for the other
//! I-variables. On the exceptional divisor `x_j = 0` the strict transform
//! only sees the lowest I-degree part `F` of `f`, so the critical cells are
//! built from `F`. When the coefficients of `F` (as polynomials in the line
//! variable) share a factor `c`, the fibers over `c = 0` are entirely
//! critical; the divisor then carries `c` to the power of the degree of the
//! discriminant of a form of degree `p` in `n−1` variables, and the cells
//! are computed from `F / c`.

use std::fmt;

use num_traits::One;
use serde::Serialize;

use crate::arith::{fmt_rat, UniPoly};
use crate::error::{Error, Result};
use crate::idealcalc::IdealHandle;
use crate::multipoly::{Monomial, MonomialOrder, MultiPoly, Ring};
use crate::quotientalg::QuotientAlgebra;

/// Monic polynomial in the line variable, read as a divisor.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DivisorOnLine {
    pub h: UniPoly,
    pub degree: usize,
    pub squarefree: bool,
    pub empty: bool,
    /// Multiplicity of the point 0 of the line.
    pub order_at_origin: usize,
}

impl DivisorOnLine {
    pub fn new(h: &UniPoly) -> Result<Self> {
        if h.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let h = h.monic();
        Ok(DivisorOnLine {
            degree: h.degree().unwrap_or(0),
            squarefree: h.is_squarefree(),
            empty: h.is_constant(),
            order_at_origin: h.order_at_zero().unwrap_or(0),
            h,
        })
    }

    pub fn empty(var: &str) -> Self {
        Self::new(&UniPoly::one(var)).expect("nonzero")
    }

    pub fn summary(&self) -> DivisorSummary {
        DivisorSummary {
            h: self.h.to_string(),
            degree: self.degree,
            reduced: self.squarefree,
            empty: self.empty,
            order_at_origin: self.order_at_origin,
            coefficients: self.h.coeffs().iter().map(fmt_rat).collect(),
        }
    }
}

impl fmt::Display for DivisorOnLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "V({}) [degree {}, {}]", self.h, self.degree, if self.squarefree { "reduced" } else { "non-reduced" })
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct DivisorSummary {
    pub h: String,
    pub degree: usize,
    pub reduced: bool,
    pub empty: bool,
    pub order_at_origin: usize,
    /// Ascending coefficients of `h`.
    pub coefficients: Vec<String>,
}

/// One affine chart of the blow-up.
#[derive(Clone, Debug)]
pub struct ChartModel {
    /// Index of the I-variable `x_j` kept in this chart.
    pub j: usize,
    /// Variables `σ_i` (i ≠ j, i < n), then `x_j`, then `x_n`.
    pub ring: Ring,
    /// For each original I-variable other than `x_j`, its σ index in `ring`.
    pub sigma_of: Vec<Option<usize>>,
}

fn sigma_names(ring: &Ring, j: usize) -> Vec<String> {
    let taken: Vec<&str> = ring.names().iter().map(String::as_str).collect();
    ring.i_vars()
        .filter(|&i| i != j)
        .map(|i| {
            let mut name = format!("s_{}", ring.name(i));
            while taken.contains(&name.as_str()) {
                name.push('_');
            }
            name
        })
        .collect()
}

impl ChartModel {
    pub fn new(ring: &Ring, j: usize) -> Result<Self> {
        if !ring.i_vars().contains(&j) {
            return Err(Error::Invalid(format!("chart index {j} is not an I-variable")));
        }
        let mut names = sigma_names(ring, j);
        names.push(ring.name(j).to_string());
        names.push(ring.name(ring.line_var()).to_string());
        let cring = Ring::new(&names, None)?;
        let mut sigma_of = vec![None; ring.n() - 1];
        let mut k = 0;
        for (i, slot) in sigma_of.iter_mut().enumerate() {
            if i != j {
                *slot = Some(k);
                k += 1;
            }
        }
        Ok(ChartModel { j, ring: cring, sigma_of })
    }

    fn xj(&self) -> usize {
        self.ring.arity() - 2
    }

    fn xn(&self) -> usize {
        self.ring.arity() - 1
    }

    /// `f(σ·x_j, x_j, x_n)` as a polynomial in the chart ring.
    pub fn pullback(&self, f: &MultiPoly) -> MultiPoly {
        let src = f.ring();
        let mut out = MultiPoly::zero(&self.ring);
        for (m, c) in f.terms() {
            let mut e = Monomial::one(self.ring.arity());
            for i in src.i_vars() {
                let a = m.exps()[i];
                e.0[self.xj()] += a;
                if let Some(s) = self.sigma_of[i] {
                    e.0[s] += a;
                }
            }
            e.0[self.xn()] = m.exps()[src.line_var()];
            out.add_term(e, c.clone());
        }
        out
    }

    /// Strict transform `f(σ·x_j, x_j, x_n) / x_j^p`.
    pub fn strict_transform(&self, f: &MultiPoly, p: u32) -> Result<MultiPoly> {
        let pulled = self.pullback(f);
        pulled
            .div_monomial(&Monomial::var(self.ring.arity(), self.xj(), p))
            .ok_or_else(|| Error::InexactDivision(format!("strict transform of {f} by x_j^{p}")))
    }
}

/// Critical cell of one chart, in the ring of σ's and the line variable.
#[derive(Clone, Debug)]
pub struct CritCell {
    pub chart: usize,
    pub ideal: IdealHandle,
    pub vdim: Option<usize>,
}

/// The data defining the transversal discriminant.
#[derive(Clone, Debug)]
pub struct CellDecomposition {
    pub p: u32,
    /// Common factor of the coefficients of the lowest I-degree part.
    pub content: UniPoly,
    /// Power of the content entering the divisor.
    pub content_exponent: u32,
    pub cells: Vec<CritCell>,
}

/// The same coordinates with any deformation parameter dropped; fails if the
/// parameter occurs.
pub fn specialized(f: &MultiPoly) -> Result<MultiPoly> {
    let ring = f.ring();
    if ring.arity() == ring.n() {
        return Ok(f.clone());
    }
    f.restrict(&ring.base()).map_err(|_| Error::UnspecializedParameter)
}

/// Lowest I-degree part of `f` and its content in the line variable.
fn form_and_content(f: &MultiPoly, p: u32) -> Result<(MultiPoly, UniPoly, MultiPoly)> {
    let ring = f.ring();
    let xn = ring.line_var();
    let form = f.i_homogeneous_part(p);
    let groups = form.coefficients_in(xn);
    let mut c = UniPoly::zero(ring.name(xn));
    for (_, u) in &groups {
        c = c.gcd(u);
    }
    let c = c.monic();
    let mut g = MultiPoly::zero(ring);
    for (m, u) in groups {
        let q = u.div_exact(&c).expect("content divides every coefficient");
        let qp = MultiPoly::from_unipoly(ring, xn, &q);
        g = &g + &qp.mul_monomial(&m, &crate::arith::rat_int(1));
    }
    Ok((form, c, g))
}

/// Critical cells of the exceptional projection, charts in the order given.
///
/// Cell `k` is the chart-`k` ideal ⟨F̃, ∂F̃/∂σ_i⟩ localized at σ_i = 0 for
/// the I-variables of the earlier charts. The localization is realized by
/// adding σ_i^N with N the chart ideal's dimension, which keeps the full
/// multiplicity of every point with those σ_i zero and removes all others.
pub fn crit_cells_ordered(f: &MultiPoly, chart_order: &[usize]) -> Result<CellDecomposition> {
    let f = specialized(f)?;
    let ring = f.ring().clone();
    let n = ring.n();
    if n < 2 {
        return Err(Error::Hypothesis("need at least two variables".into()));
    }
    let p = f.i_order()?;
    if p < 2 {
        return Err(Error::Hypothesis(format!("I-order {p} < 2")));
    }
    let (_, content, g) = form_and_content(&f, p)?;
    let content_exponent = (n as u32 - 1) * (p - 1).pow(n as u32 - 2);
    let mut cells = Vec::new();
    for (pos, &j) in chart_order.iter().enumerate() {
        let chart = ChartModel::new(&ring, j)?;
        let gt = chart.strict_transform(&g, p)?;
        // restrict to the exceptional divisor x_j = 0
        let xj = chart.xj();
        let on_e = gt.substitute_value(xj, &crate::arith::rat_int(0));
        let mut names = sigma_names(&ring, j);
        names.push(ring.name(ring.line_var()).to_string());
        let cring = Ring::new(&names, None)?;
        let map: Vec<usize> = (0..chart.ring.arity())
            .map(|v| if v < xj { v } else if v == xj { 0 } else { v - 1 })
            .collect();
        let e = on_e.rename(&cring, &map);
        let mut gens = vec![e.clone()];
        for s in 0..cring.arity() - 1 {
            gens.push(e.derivative(s));
        }
        let base = IdealHandle::new(&cring, gens)?;
        let gord = MonomialOrder::global(&cring);
        let earlier: Vec<usize> = chart_order[..pos].iter().filter_map(|&i| chart.sigma_of[i]).collect();
        let ideal = if earlier.is_empty() || base.is_unit(&gord)? {
            base
        } else {
            let Some(nv) = base.vdim(&gord)? else {
                return Err(Error::PositiveDimensionalCell(j));
            };
            let powers: Vec<MultiPoly> = earlier
                .iter()
                .map(|&s| MultiPoly::monomial(&cring, Monomial::var(cring.arity(), s, nv.max(1) as u32), crate::arith::rat_int(1)))
                .collect();
            base.with_gens(&powers)?
        };
        let vdim = ideal.vdim(&gord)?;
        cells.push(CritCell { chart: j, ideal, vdim });
    }
    Ok(CellDecomposition { p, content, content_exponent, cells })
}

/// Critical cells in the natural chart order x_1, …, x_{n−1}.
pub fn crit_cells(f: &MultiPoly) -> Result<CellDecomposition> {
    let order: Vec<usize> = f.ring().i_vars().collect();
    crit_cells_ordered(f, &order)
}

/// True iff every critical cell is zero-dimensional (or empty).
pub fn is_generic_ordinary(f: &MultiPoly) -> Result<bool> {
    match crit_cells(f) {
        Ok(d) => Ok(d.cells.iter().all(|c| c.vdim.is_some())),
        Err(Error::PositiveDimensionalCell(_)) => Ok(false),
        Err(e) => Err(e),
    }
}

fn divisor_from(d: &CellDecomposition, var: &str) -> Result<DivisorOnLine> {
    let mut h = d.content.pow(d.content_exponent).with_var(var);
    for cell in &d.cells {
        if cell.vdim.is_none() {
            return Err(Error::PositiveDimensionalCell(cell.chart));
        }
        let ord = MonomialOrder::global(cell.ideal.ring());
        let alg = QuotientAlgebra::build(&cell.ideal, &ord)?;
        if alg.dim() == 0 {
            continue;
        }
        let xn = cell.ideal.ring().line_var();
        h = &h * &alg.char_poly_of_mult(xn)?.with_var(var);
    }
    DivisorOnLine::new(&h)
}

/// Transversal discriminant of `f` as a monic polynomial in the line variable.
pub fn transversal_divisor(f: &MultiPoly) -> Result<DivisorOnLine> {
    let var = f.ring().name(f.ring().line_var()).to_string();
    divisor_from(&crit_cells(f)?, &var)
}

/// [`transversal_divisor`] with a permuted chart order (for cross-checks).
pub fn transversal_divisor_ordered(f: &MultiPoly, chart_order: &[usize]) -> Result<DivisorOnLine> {
    let var = f.ring().name(f.ring().line_var()).to_string();
    divisor_from(&crit_cells_ordered(f, chart_order)?, &var)
}

/// Sum of the cell dimensions plus the content contribution.
pub fn degree_from_cells(d: &CellDecomposition) -> Option<usize> {
    let mut deg = d.content.degree().unwrap_or(0) * d.content_exponent as usize;
    for c in &d.cells {
        deg += c.vdim?;
    }
    Some(deg)
}

impl CellDecomposition {
    pub fn content_is_trivial(&self) -> bool {
        self.content.is_constant() && self.content.leading_coeff().is_one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use crate::multipoly::parse;

    fn ring() -> Ring {
        Ring::parse_spec("x,y,z").unwrap()
    }

    fn p(s: &str) -> MultiPoly {
        parse(s, &ring()).unwrap()
    }

    #[test]
    fn strict_transforms() {
        let r = ring();
        let chart_y = ChartModel::new(&r, 1).unwrap();
        let t = chart_y.strict_transform(&p("z*y^3+x^3"), 3).unwrap();
        assert_eq!(t, parse("z+s_x^3", &chart_y.ring).unwrap());
        let chart_x = ChartModel::new(&r, 0).unwrap();
        assert_eq!(chart_x.strict_transform(&p("x^2"), 2).unwrap(), MultiPoly::one(&chart_x.ring));
        assert!(chart_x.strict_transform(&p("x^2"), 3).is_err());
    }

    #[test]
    fn cells_of_the_cubic_example() {
        let d = crit_cells(&p("z*y^3+x^3")).unwrap();
        assert_eq!(d.cells.len(), 2);
        assert_eq!(d.cells[0].vdim, Some(0));
        let c = &d.cells[1];
        let expect = IdealHandle::parse(c.ideal.ring(), &["s_x^2", "z"]).unwrap();
        assert!(c.ideal.equals(&expect, &MonomialOrder::global(c.ideal.ring())).unwrap());
    }

    #[test]
    fn divisors() {
        let h = transversal_divisor(&p("z*y^3+x^3")).unwrap();
        assert_eq!(h.h, UniPoly::from_ints("z", &[0, 0, 1]));
        assert_eq!(h.degree, 2);
        assert!(!h.squarefree);
        assert_eq!(h.order_at_origin, 2);

        let h = transversal_divisor(&p("x^3+y^3*z+x*y^2")).unwrap();
        assert_eq!(h.h, UniPoly::new("z", vec![rat(4, 27), rat(0, 1), rat(1, 1)]));
        assert!(h.squarefree);

        assert!(transversal_divisor(&p("x^3+y^3")).unwrap().empty);
        assert!(transversal_divisor(&p("x^2+y^2")).unwrap().empty);
    }

    #[test]
    fn generic_ordinary_flags() {
        assert!(is_generic_ordinary(&p("x^3+y^3*z")).unwrap());
        assert!(!is_generic_ordinary(&p("x^3")).unwrap());
        assert!(is_generic_ordinary(&p("x^2+y^2")).unwrap());
    }

    #[test]
    fn content_of_the_form() {
        let f = p("x^3*z+y^3*z+y^4+x^4");
        let d = crit_cells(&f).unwrap();
        assert_eq!(d.content, UniPoly::x("z"));
        assert_eq!(d.content_exponent, 4);
        let h = transversal_divisor(&f).unwrap();
        assert_eq!(h.degree, 4);
        assert_eq!(h.h, UniPoly::from_ints("z", &[0, 0, 0, 0, 1]));
    }

    #[test]
    fn chart_order_invariance() {
        for s in ["x^3+y^3*z+x*y^2", "z*y^3+x^3", "x^3+y^3*z^2+y^4"] {
            let a = transversal_divisor_ordered(&p(s), &[0, 1]).unwrap();
            let b = transversal_divisor_ordered(&p(s), &[1, 0]).unwrap();
            assert_eq!(a, b, "{s}");
        }
    }
}
