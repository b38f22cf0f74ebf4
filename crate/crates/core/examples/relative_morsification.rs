//! Verifying table deformations and a random search for a relative
//! morsification.

use linesing::morsify::{default_samples, mors_evidence, preset_row2, search_morsification, verify_relative_morsification, MorsCandidate, Provenance};
use linesing::multipoly::{parse, Ring};

fn main() -> linesing::Result<()> {
    let (f, g) = preset_row2(2, 2);
    let cand = MorsCandidate::new(&f, &g, Provenance::Given)?;
    let rep = verify_relative_morsification(&cand, &default_samples())?;
    println!("{} + t({}): verdict {}, #A1 germ {:?}", rep.f, rep.g, rep.verdict, rep.a1_germ);
    for s in &rep.samples {
        println!("  t0 = {}: a {} b {} c {}, Morse points {:?}", s.t0, s.cond_a, s.cond_b, s.cond_c, s.a1_count);
    }
    if let Some(ev) = mors_evidence(&cand, &rep, &default_samples())? {
        println!("  at k = {}: deformed Milnor numbers {:?}", ev.k, ev.mu_deformed);
    }

    let r = Ring::parse_spec("x,y,z")?;
    let (found, rep) = search_morsification(&parse("x^2+y^2*z", &r)?, 7, 20)?;
    println!("search found g = {} ({:?}), #A1 germ {:?}", found.g, found.provenance, rep.a1_germ);

    let non = MorsCandidate::new(&parse("x^3+y^2", &r)?, &parse("x^2", &r)?, Provenance::Given)?;
    let rep = verify_relative_morsification(&non, &default_samples())?;
    println!("x^3+y^2+t*x^2: verdict {}; {}", rep.verdict, rep.samples[0].diagnostics.join("; "));
    Ok(())
}
