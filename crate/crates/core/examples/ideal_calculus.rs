//! Quotients, saturation, intersection and elimination.

use linesing::idealcalc::IdealHandle;
use linesing::multipoly::{parse, MonomialOrder, Ring};

fn main() -> linesing::Result<()> {
    let r = Ring::parse_spec("x,y,z")?;
    let dp = MonomialOrder::global(&r);
    let j = IdealHandle::parse(&r, &["x^2*z", "y*z^2", "x*y*z"])?;
    let z = parse("z", &r)?;
    let sat = j.saturate_by_element(&z, &dp)?;
    println!("J : z^inf = {:?}", sat.minimized(&dp)?.gens().iter().map(|g| g.to_string()).collect::<Vec<_>>());
    let col = j.quotient_by_element(&parse("x", &r)?, &dp)?;
    println!("J : x = {:?}", col.minimized(&dp)?.gens().iter().map(|g| g.to_string()).collect::<Vec<_>>());

    let a = IdealHandle::parse(&r, &["x", "y"])?;
    let b = IdealHandle::parse(&r, &["y", "z"])?;
    let cap = a.intersect(&b, &dp)?;
    println!("<x,y> cap <y,z> = {:?}", cap.minimized(&dp)?.gens().iter().map(|g| g.to_string()).collect::<Vec<_>>());

    let twisted = IdealHandle::parse(&r, &["y-x^2", "z-x^3"])?;
    let elim = twisted.eliminate(&[0], &MonomialOrder::lex(&r))?;
    println!("eliminating x: {:?}", elim.gens().iter().map(|g| g.to_string()).collect::<Vec<_>>());
    Ok(())
}
