//! A germ with empty transversal discriminant but positive j(f).

use linesing::blowup::transversal_divisor;
use linesing::cli::COUNTEREXAMPLE;
use linesing::invariants::{delta_profile, jac_gen_multiplicity, jacobi_number, yomdin_stabilize};
use linesing::multipoly::{parse, MultiPoly, Ring};
use linesing::morsify::{default_samples, verify_relative_morsification, MorsCandidate, Provenance};

fn main() -> linesing::Result<()> {
    let r = Ring::parse_spec("x,y,z")?;
    let f = parse(COUNTEREXAMPLE, &r)?;
    println!("f = {f}");
    println!("transversal discriminant: {}", transversal_divisor(&f)?);
    println!("j = {}", jacobi_number(&f)?);
    println!("multiplicity of Jac_gen along the line: {}", jac_gen_multiplicity(&f)?);
    let (k, series) = yomdin_stabilize(&f)?;
    println!("mu(f + z^k): {series:?}");
    println!("delta by k: {:?}", delta_profile(&f, k)?.by_k);
    let triv = MorsCandidate::new(&f, &MultiPoly::zero(&r), Provenance::Given)?;
    let rep = verify_relative_morsification(&triv, &default_samples())?;
    println!("trivial deformation: verdict {}, #A1 {:?}", rep.verdict, rep.a1_germ);
    Ok(())
}
