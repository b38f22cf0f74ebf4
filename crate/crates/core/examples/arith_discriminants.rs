//! Exact discriminants, resultants and characteristic polynomials.

use linesing::arith::{discriminant, fmt_rat, rat, resultant, RatMatrix, UniPoly};

fn main() -> linesing::Result<()> {
    // s^3 + s + 1
    let cubic = UniPoly::from_ints("s", &[1, 1, 0, 1]);
    println!("disc({cubic}) = {}", fmt_rat(&discriminant(&cubic)?));
    let q = UniPoly::from_ints("s", &[-1, 0, 1]);
    println!("res({cubic}, {q}) = {}", fmt_rat(&resultant(&cubic, &q)?));

    let m = RatMatrix::from_rows(vec![vec![rat(2, 1), rat(1, 2)], vec![rat(-1, 3), rat(1, 1)]]);
    let chi = m.char_poly("l")?;
    println!("char poly {chi}, det {}", fmt_rat(&m.det()?));
    println!("Cayley-Hamilton holds: {}", chi.eval_matrix(&m).is_zero());
    Ok(())
}
