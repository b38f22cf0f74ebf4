#![allow(dead_code)]

use std::path::{Path, PathBuf};

use linesing::arith::{rat, Rat, RatMatrix, UniPoly};
use linesing::idealcalc::IdealHandle;
use linesing::invariants;
use linesing::multipoly::{parse, Monomial, MonomialOrder, MultiPoly, Ring};
use linesing::quotientalg::{local_multiplicity_at_origin, QuotientAlgebra};
use linesing::{blowup, stdbasis};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestCaseError, TestRng, TestRunner};

pub struct Entry {
    pub name: String,
    pub ring: Ring,
    pub f: MultiPoly,
    pub path: PathBuf,
}

pub fn corpus_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus")
}

pub fn corpus() -> Vec<Entry> {
    let mut paths: Vec<PathBuf> = std::fs::read_dir(corpus_dir())
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "poly"))
        .collect();
    paths.sort();
    paths.into_iter().map(|p| load(&p)).collect()
}

pub fn entry(name: &str) -> Entry {
    load(&corpus_dir().join(format!("{name}.poly")))
}

fn load(path: &Path) -> Entry {
    let text = std::fs::read_to_string(path).unwrap();
    let field = |key: &str| {
        text.lines()
            .find_map(|l| l.strip_prefix(key).map(str::trim))
            .unwrap_or_else(|| panic!("{}: missing `{key}`", path.display()))
            .to_string()
    };
    let ring = Ring::parse_spec(&field("ring:")).unwrap();
    let f = parse(&field("f:"), &ring).unwrap();
    let name = path.file_stem().unwrap().to_string_lossy().into_owned();
    Entry { name, ring, f, path: path.to_path_buf() }
}

/// A runner whose randomness depends only on `seed`.
pub fn runner(cases: u32, seed: u8) -> TestRunner {
    let config = Config { cases, failure_persistence: None, ..Config::default() };
    TestRunner::new_with_rng(config, TestRng::from_seed(RngAlgorithm::ChaCha, &[seed; 32]))
}

pub fn xyz() -> Ring {
    Ring::parse_spec("x,y,z").unwrap()
}

fn small_rat() -> impl Strategy<Value = Rat> {
    (-6i64..=6, 1i64..=4).prop_filter("nonzero", |(a, _)| *a != 0).prop_map(|(a, b)| rat(a, b))
}

fn term(max_deg: u32) -> impl Strategy<Value = (Vec<u32>, Rat)> {
    (proptest::collection::vec(0..=max_deg, 3), small_rat()).prop_filter("degree bound", move |(e, _)| e.iter().sum::<u32>() <= max_deg)
}

/// Sparse polynomials in x, y, z of degree at most `max_deg`.
pub fn poly(max_deg: u32, max_terms: usize) -> impl Strategy<Value = MultiPoly> {
    proptest::collection::vec(term(max_deg), 1..=max_terms).prop_map(|ts| {
        let r = xyz();
        MultiPoly::from_terms(&r, ts.into_iter().map(|(e, c)| (Monomial::from_slice(&e), c)))
    })
}

/// Zero-dimensional ideals ⟨x^a + h1, y^b + h2, z^c + h3⟩ with each h_i made
/// of terms strictly above the pure power in degree, so the ideal is
/// zero-dimensional at the origin.
pub fn zero_dim_ideal() -> impl Strategy<Value = Vec<MultiPoly>> {
    let r = xyz();
    (proptest::collection::vec(1u32..=3, 3), proptest::collection::vec(poly(4, 2), 3)).prop_map(move |(pw, hs)| {
        (0..3)
            .map(|i| {
                let lead = MultiPoly::var(&r, i).pow(pw[i]);
                let tail = MultiPoly::from_terms(&r, hs[i].terms().filter(|(m, _)| m.deg() > pw[i]).map(|(m, c)| (m.clone(), c.clone())));
                &lead + &tail
            })
            .collect()
    })
}

pub type PropResult = Result<(), String>;

fn check(name: &str, mut run: TestRunner, f: impl Fn(&mut TestRunner) -> Result<(), proptest::test_runner::TestError<String>>) -> PropResult {
    f(&mut run).map_err(|e| format!("{name}: {e}"))
}

fn fail(msg: String) -> TestCaseError {
    TestCaseError::fail(msg)
}

pub fn spair_closure(cases: u32, seed: u8) -> PropResult {
    check("S-pair closure", runner(cases, seed), |run| {
        run.run(&proptest::collection::vec(poly(2, 3), 2..=3), |gens| {
            let r = xyz();
            for ord in [MonomialOrder::global(&r), MonomialOrder::local(&r), MonomialOrder::lex(&r)] {
                let b = stdbasis::std_in(&r, &gens, &ord).map_err(|e| fail(e.to_string()))?;
                prop_assert!(b.verify(), "S-pairs do not reduce to zero for {:?} under {}", gens.iter().map(|g| g.to_string()).collect::<Vec<_>>(), ord);
                for g in &gens {
                    prop_assert!(b.contains(g).map_err(|e| fail(e.to_string()))?);
                }
            }
            Ok(())
        })
        .map(|_| ())
        .map_err(|e| e.map_reason_string())
    })
}

trait ReasonString {
    fn map_reason_string(self) -> proptest::test_runner::TestError<String>;
}

impl<T: std::fmt::Debug> ReasonString for proptest::test_runner::TestError<T> {
    fn map_reason_string(self) -> proptest::test_runner::TestError<String> {
        match self {
            proptest::test_runner::TestError::Abort(r) => proptest::test_runner::TestError::Abort(r),
            proptest::test_runner::TestError::Fail(r, v) => proptest::test_runner::TestError::Fail(r, format!("{v:?}")),
        }
    }
}

pub fn nf_idempotent(cases: u32, seed: u8) -> PropResult {
    check("normal form idempotence", runner(cases, seed), |run| {
        run.run(&(proptest::collection::vec(poly(2, 3), 2..=3), poly(4, 4), zero_dim_ideal()), |(gens, f, zd)| {
            let r = xyz();
            let b = stdbasis::std_in(&r, &gens, &MonomialOrder::global(&r)).map_err(|e| fail(e.to_string()))?;
            let once = b.normal_form(&f).map_err(|e| fail(e.to_string()))?;
            prop_assert_eq!(b.normal_form(&once).map_err(|e| fail(e.to_string()))?, once.clone());
            prop_assert!(b.contains(&(&f - &once)).map_err(|e| fail(e.to_string()))?);
            let l = stdbasis::std_in(&r, &zd, &MonomialOrder::local(&r)).map_err(|e| fail(e.to_string()))?;
            let once = l.reduced_form(&f).map_err(|e| fail(e.to_string()))?;
            prop_assert_eq!(l.reduced_form(&once).map_err(|e| fail(e.to_string()))?, once.clone());
            prop_assert!(l.contains(&(&f - &once)).map_err(|e| fail(e.to_string()))?);
            Ok(())
        })
        .map(|_| ())
        .map_err(|e| e.map_reason_string())
    })
}

pub fn vdim_order_invariance(cases: u32, seed: u8) -> PropResult {
    check("vdim ordering invariance", runner(cases, seed), |run| {
        run.run(&zero_dim_ideal(), |gens| {
            let r = xyz();
            let j = IdealHandle::new(&r, gens).map_err(|e| fail(e.to_string()))?;
            let dp = j.vdim(&MonomialOrder::global(&r)).map_err(|e| fail(e.to_string()))?;
            let lp = j.vdim(&MonomialOrder::lex(&r)).map_err(|e| fail(e.to_string()))?;
            prop_assert_eq!(dp, lp);
            let ds = j.vdim(&MonomialOrder::local(&r)).map_err(|e| fail(e.to_string()))?;
            let ls = j.vdim(&MonomialOrder::by_name(&r, "ls").unwrap()).map_err(|e| fail(e.to_string()))?;
            prop_assert_eq!(ds, ls);
            let hs = local_multiplicity_at_origin(&j).map_err(|e| fail(e.to_string()))?;
            prop_assert_eq!(ds, Some(hs));
            prop_assert!(ds <= dp);
            Ok(())
        })
        .map(|_| ())
        .map_err(|e| e.map_reason_string())
    })
}

pub fn saturation_fixpoint(cases: u32, seed: u8) -> PropResult {
    check("saturation fixpoint", runner(cases, seed), |run| {
        run.run(&proptest::collection::vec(poly(3, 3), 2..=3), |gens| {
            let r = xyz();
            let ord = MonomialOrder::global(&r);
            let j = IdealHandle::new(&r, gens).map_err(|e| fail(e.to_string()))?;
            let i = IdealHandle::of_vars(&r, [0, 1]);
            let (s, _) = j.saturate(&i, &ord).map_err(|e| fail(e.to_string()))?;
            let again = s.quotient_by_ideal(&i, &ord).map_err(|e| fail(e.to_string()))?;
            prop_assert!(again.equals(&s, &ord).map_err(|e| fail(e.to_string()))?);
            prop_assert!(s.contains_ideal(&j, &ord).map_err(|e| fail(e.to_string()))?);
            let by_x = j.saturate_by_element(&MultiPoly::var(&r, 0), &ord).map_err(|e| fail(e.to_string()))?;
            let (it, _) = j.saturate(&IdealHandle::of_vars(&r, [0]), &ord).map_err(|e| fail(e.to_string()))?;
            prop_assert!(by_x.equals(&it, &ord).map_err(|e| fail(e.to_string()))?);
            Ok(())
        })
        .map(|_| ())
        .map_err(|e| e.map_reason_string())
    })
}

pub fn commuting_matrices(cases: u32, seed: u8) -> PropResult {
    check("commuting multiplication matrices", runner(cases, seed), |run| {
        run.run(&(zero_dim_ideal(), any::<bool>()), |(gens, local)| {
            let r = xyz();
            let ord = if local { MonomialOrder::local(&r) } else { MonomialOrder::global(&r) };
            let j = IdealHandle::new(&r, gens).map_err(|e| fail(e.to_string()))?;
            let a = QuotientAlgebra::build(&j, &ord).map_err(|e| fail(e.to_string()))?;
            prop_assert!(a.matrices_commute());
            for v in 0..3 {
                let cp = a.char_poly_of_mult(v).map_err(|e| fail(e.to_string()))?;
                prop_assert!(cp.eval_matrix(a.mult_matrix(v)).is_zero());
            }
            Ok(())
        })
        .map(|_| ())
        .map_err(|e| e.map_reason_string())
    })
}

pub fn cayley_hamilton(cases: u32, seed: u8) -> PropResult {
    check("Cayley-Hamilton", runner(cases, seed), |run| {
        let m = (1usize..=5).prop_flat_map(|n| proptest::collection::vec(proptest::collection::vec(-5i64..=5, n), n));
        run.run(&m, |rows| {
            let m = RatMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| rat(v, 1)).collect()).collect());
            let cp = m.char_poly("t").map_err(|e| fail(e.to_string()))?;
            prop_assert!(cp.eval_matrix(&m).is_zero());
            let n = rows.len();
            prop_assert_eq!(cp.degree(), Some(n));
            let sign = if n % 2 == 0 { rat(1, 1) } else { rat(-1, 1) };
            prop_assert_eq!(cp.coeff(0), sign * m.det().map_err(|e| fail(e.to_string()))?);
            Ok(())
        })
        .map(|_| ())
        .map_err(|e| e.map_reason_string())
    })
}

/// Invariants that must not change under the symmetries below.
#[derive(Debug, PartialEq, Eq)]
pub struct Fingerprint {
    pub p: u32,
    pub j: usize,
    pub delta_by_k: Vec<usize>,
    pub degree: usize,
    pub mu: Vec<usize>,
}

pub fn fingerprint(f: &MultiPoly) -> linesing::Result<Fingerprint> {
    let (k, series) = invariants::yomdin_stabilize(f)?;
    Ok(Fingerprint {
        p: f.i_order()?,
        j: invariants::jacobi_number(f)?,
        delta_by_k: invariants::delta_profile(f, k)?.by_k.into_values().collect(),
        degree: blowup::transversal_divisor(f)?.degree,
        mu: series.into_values().collect(),
    })
}

const SYMMETRY_BASE: [&str; 4] = ["x^3+y^3*z", "x^2+y^2*z", "x^3+y^3*z^2+y^4", "x^3+y^3*z+x*y^2"];

/// Scaling f, scaling each coordinate, and swapping the transversal
/// coordinates leave p, j, δ(k), deg Δ⊥ and the μ series unchanged.
pub fn scaling_permutation_invariance(cases: u32, seed: u8) -> PropResult {
    let base: Vec<Fingerprint> = SYMMETRY_BASE.iter().map(|s| fingerprint(&parse(s, &xyz()).unwrap()).unwrap()).collect();
    check("scaling and permutation invariance", runner(cases, seed), |run| {
        run.run(&(0..SYMMETRY_BASE.len(), small_rat(), proptest::collection::vec(small_rat(), 3), any::<bool>()), |(i, c, s, swap)| {
            let r = xyz();
            let mut f = parse(SYMMETRY_BASE[i], &r).unwrap().scale(&c);
            for (v, a) in s.iter().enumerate() {
                f = f.substitute(v, &MultiPoly::var(&r, v).scale(a));
            }
            if swap {
                f = f.rename(&r, &[1, 0, 2]);
            }
            let fp = fingerprint(&f).map_err(|e| fail(format!("{f}: {e}")))?;
            prop_assert_eq!(&fp, &base[i], "for {}", f);
            Ok(())
        })
        .map(|_| ())
        .map_err(|e| e.map_reason_string())
    })
}

/// All kernel suites with their names.
pub fn kernel_suites(cases: u32) -> Vec<(&'static str, PropResult)> {
    vec![
        ("S-pair closure", spair_closure(cases, 1)),
        ("normal form idempotence", nf_idempotent(cases, 2)),
        ("vdim ordering invariance", vdim_order_invariance(cases, 3)),
        ("saturation fixpoint", saturation_fixpoint(cases, 4)),
        ("commuting multiplication matrices", commuting_matrices(cases, 5)),
        ("Cayley-Hamilton", cayley_hamilton(cases, 6)),
        ("scaling and permutation invariance", scaling_permutation_invariance(cases.min(12), 7)),
    ]
}

pub fn unipoly_eq(a: &UniPoly, b: &UniPoly) -> bool {
    a.coeffs() == b.coeffs()
}
