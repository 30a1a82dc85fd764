//! Truncated skew power series and skew Laurent polynomials.

use std::collections::BTreeMap;

use ore_ext::rational::rat;
use ore_ext::{FuncElem, LaurentElem, OreContext, Permutation, SeriesElem};

fn main() -> ore_ext::Result<()> {
    let ctx = OreContext::skew(Permutation::swap(2, 0, 1));

    let a = SeriesElem::new(&ctx, 4, vec![FuncElem::from_ints(&[1, 0]), FuncElem::from_ints(&[1, 1])])?;
    let b = SeriesElem::new(&ctx, 4, vec![FuncElem::from_ints(&[0, 1]), FuncElem::zero(2), FuncElem::from_ints(&[2, 0])])?;
    println!("a b = {:?}", a.multiply(&b)?);
    println!("b a = {:?}", b.multiply(&a)?);
    println!("(a b) mod x^3 = {:?}", a.multiply(&b)?.truncate(2)?);

    let even = SeriesElem::new(&ctx, 4, vec![FuncElem::one(2), FuncElem::zero(2), FuncElem::from_ints(&[5, 5])])?;
    println!("centralizer {}, center {}", even.centralizer_membership(), even.center_membership());

    let x = LaurentElem::x(&ctx)?;
    let x_inv = LaurentElem::x_inv(&ctx)?;
    println!("x x^-1 = {:?}", x.multiply(&x_inv)?);

    // x^-1 e0 = e1 x^-1
    let e0 = LaurentElem::monomial(&ctx, FuncElem::basis(2, 0), 0)?;
    println!("x^-1 e0 = {:?}", x_inv.multiply(&e0)?);

    let coeffs: BTreeMap<i64, FuncElem> = [(-2, FuncElem::from_ints(&[1, 3])), (0, FuncElem::from_ints(&[2, 2]))].into();
    let l = LaurentElem::new(&ctx, coeffs)?;
    println!("{l:?}: centralizer {}, center {}", l.centralizer_membership(), l.center_membership());

    // a derivation is refused
    let delta = OreContext::from_diag(Permutation::swap(2, 0, 1), vec![rat(1, 1), rat(0, 1)])?;
    println!("series with derivation: {:?}", SeriesElem::zero(&delta, 2).err().map(|e| e.to_string()));
    Ok(())
}
