//! Standard bases for global and local orderings, and the staircases they
//! give.

use linesing::multipoly::{parse, MonomialOrder, Ring};
use linesing::stdbasis::std;

fn main() -> linesing::Result<()> {
    let r = Ring::parse_spec("x,y")?;
    // the Milnor algebra of x^3 + y^3 + x^2 y^2: μ = 4 at 0, 7 globally
    let f = parse("x^3+y^3+x^2*y^2", &r)?;
    let gens = f.jacobian();
    for (name, ord) in [("dp", MonomialOrder::global(&r)), ("ds", MonomialOrder::local(&r))] {
        let sb = std(&gens, &ord)?;
        println!("{name}: {} elements, vdim {:?}", sb.len(), sb.vdim());
        for g in sb.elements() {
            println!("  {g}");
        }
        let stairs: Vec<String> = sb.staircase().iter().map(|m| format!("{:?}", m.exps())).collect();
        println!("  staircase {}", stairs.join(" "));
        println!("  S-pairs reduce to zero: {}", sb.verify());
    }
    Ok(())
}
