//! Multiplying in the Ore extension A[x; σ̃, Δ].

use ore_ext::rational::rat;
use ore_ext::{FuncElem, OreContext, OrePoly, Permutation};

fn main() -> ore_ext::Result<()> {
    let ctx = OreContext::from_diag(Permutation::swap(2, 0, 1), vec![rat(1, 1), rat(2, 1)])?;
    let e0 = OrePoly::constant(&ctx, FuncElem::basis(2, 0));
    let x = OrePoly::x(&ctx);

    // x e0 = σ̃(e0) x + Δ(e0)
    println!("x * e0 = {:?}", x.multiply(&e0)?);
    println!("e0 * x = {:?}", e0.multiply(&x)?);

    let p = OrePoly::new(&ctx, vec![FuncElem::from_ints(&[1, 2]), FuncElem::from_ints(&[0, 3])])?;
    let q = OrePoly::new(&ctx, vec![FuncElem::from_ints(&[4, 0]), FuncElem::zero(2), FuncElem::from_ints(&[1, 1])])?;
    let pq = p.multiply(&q)?;
    let qp = q.multiply(&p)?;
    println!("p = {p:?}");
    println!("q = {q:?}");
    println!("p q = {pq:?} (degree {})", pq.degree());
    println!("q p = {qp:?}");
    println!("p q - q p = {:?}", pq.sub(&qp)?);

    // without a derivation the rule is just the twist
    let skew = OreContext::skew(Permutation::rotation(3));
    let g = OrePoly::constant(&skew, FuncElem::from_ints(&[1, 2, 3]));
    let x3 = OrePoly::monomial(&skew, FuncElem::one(3), 1);
    println!("skew: x g = {:?}", x3.multiply(&g)?);

    // scalars slide through x
    let half = p.scale(&rat(1, 2));
    println!("p / 2 = {half:?}");

    // mixing contexts is refused
    let other = OrePoly::x(&OreContext::skew(Permutation::swap(2, 0, 1)));
    println!("cross-context product: {:?}", p.multiply(&other).err().map(|e| e.to_string()));
    Ok(())
}
