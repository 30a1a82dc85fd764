//! Center of the skew polynomial ring and membership tests.

use ore_ext::commutant::{center_closed_form, center_membership};
use ore_ext::{FuncElem, OreContext, OrePoly, Permutation};

fn main() -> ore_ext::Result<()> {
    // two disjoint swaps on four points
    let sigma = Permutation::from_cycles(4, &[vec![0, 1], vec![2, 3]])?;
    let ctx = OreContext::skew(sigma);

    let center = center_closed_form(&ctx, 4)?;
    println!("center up to degree 4, dimension {}:", center.dimension());
    for z in center.elements() {
        println!("  {z:?}");
    }

    // constant on cycles, only even powers
    let z = OrePoly::new(&ctx, vec![FuncElem::from_ints(&[1, 1, 2, 2]), FuncElem::zero(4), FuncElem::from_ints(&[3, 3, 0, 0])])?;
    println!("{z:?} central: {}", center_membership(&z)?);

    let not_constant = OrePoly::constant(&ctx, FuncElem::from_ints(&[1, 2, 0, 0]));
    println!("{not_constant:?} central: {}", center_membership(&not_constant)?);

    let odd = OrePoly::x(&ctx);
    println!("{odd:?} central: {}", center_membership(&odd)?);

    // x^2 commutes with x and with every coefficient
    let x2 = OrePoly::monomial(&ctx, FuncElem::one(4), 2);
    println!("x^2 commutes with x: {}", x2.commutes_with(&OrePoly::x(&ctx))?);
    Ok(())
}
