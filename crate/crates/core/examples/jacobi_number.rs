//! The Jacobi number j(f) and δ(f), each by two independent routes.

use linesing::invariants::{check_inequalities, delta_routes_at, jacobi_truncation, jacobi_yomdin, yomdin_stabilize};
use linesing::multipoly::{parse, Ring};

fn main() -> linesing::Result<()> {
    let r = Ring::parse_spec("x,y,z")?;
    for src in ["x^2+y^2*z", "x^3+y^3*z", "x^3+y^3*z^2+y^4", "x^3*z+y^3*z+y^4+x^4"] {
        let f = parse(src, &r)?;
        let (k, _) = yomdin_stabilize(&f)?;
        let (rank, colon) = delta_routes_at(&f, k)?;
        println!("{src}: j = {} / {}, delta = {rank} / {colon}", jacobi_truncation(&f)?, jacobi_yomdin(&f)?);
        let rep = check_inequalities(&f, None)?;
        for v in &rep.inequality_verdicts {
            println!("  {}: {} vs {} ({})", v.name, v.lhs, v.rhs, if v.holds { "holds" } else { "violated" });
        }
    }
    Ok(())
}
