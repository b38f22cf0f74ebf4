//! Milnor numbers of f + z^k for a line singularity, and how they grow.

use linesing::invariants::{milnor_local, yomdin_stabilize, yomdin_step};
use linesing::multipoly::{parse, Ring};

fn main() -> linesing::Result<()> {
    let r = Ring::parse_spec("x,y,z")?;
    for src in ["x^2+y^2*z", "x^3+y^3*z", "x^3+y^3*z^2+y^4"] {
        let f = parse(src, &r)?;
        let p = f.i_order()?;
        let (k, series) = yomdin_stabilize(&f)?;
        println!("{src}: stable from k = {k}, step {}", yomdin_step(p, 3));
        for (k, mu) in &series {
            println!("  mu(f + z^{k}) = {mu}");
        }
    }
    let g = parse("x^3+y^3*z+z^5", &r)?;
    println!("mu({g}) = {}", milnor_local(&g)?);
    Ok(())
}
