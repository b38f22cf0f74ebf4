//! The transversal discriminant through the blow-up of the line, and its
//! behaviour in a flat family.

use linesing::arith::rat;
use linesing::blowup::transversal_divisor;
use linesing::invariants::reduced_case_divisor;
use linesing::multipoly::{parse, Ring};

fn main() -> linesing::Result<()> {
    let r = Ring::parse_spec("x,y,z")?;
    for src in ["z*y^3+x^3", "x^2+y^2*z", "x^2*z+y^2*z+y^3+x^3", "x^2+y^2"] {
        println!("{src}: {}", transversal_divisor(&parse(src, &r)?)?);
    }
    let base = parse("x^3+y^3*z", &r)?;
    let xy2 = parse("x*y^2", &r)?;
    for t in [rat(0, 1), rat(1, 4), rat(1, 2), rat(1, 1)] {
        let d = transversal_divisor(&(&base + &xy2.scale(&t)))?;
        println!("t = {t}: {d}");
    }
    // for p = 2 the quadratic form gives the same divisor
    let f = parse("x^2+y^2*z^2+y^3", &r)?;
    println!("determinant {} vs blow-up {}", reduced_case_divisor(&f)?.h, transversal_divisor(&f)?.h);
    Ok(())
}
