//! Building and checking σ-derivations on the functions of a finite set.

use ore_ext::derivation::leibniz_space;
use ore_ext::rational::rat;
use ore_ext::{DerivationMatrix, FuncElem, Permutation, RatMatrix};

fn main() -> ore_ext::Result<()> {
    // σ = (1 2 3), written 0-based
    let sigma = Permutation::rotation(3);
    println!("sigma = {sigma}, order {}", sigma.automorphism_order());

    let d = DerivationMatrix::build(sigma.clone(), vec![rat(1, 1), rat(2, 1), rat(3, 1)])?;
    println!("matrix:\n{:?}", d.entries());
    println!("valid: {}", d.is_valid());

    let f = FuncElem::from_ints(&[1, 0, 5]);
    println!("delta(f) = {:?}", d.apply(&f)?);

    let a = d.inner_witness()?.expect("every derivation here is inner");
    println!("inner witness a = {a:?}");

    // perturb one entry and look at the reported violation
    let mut broken = d.entries().clone();
    broken[(0, 1)] = rat(7, 1);
    let bad = DerivationMatrix::from_entries(sigma.clone(), broken)?;
    match bad.validate() {
        Ok(()) => println!("unexpectedly valid"),
        Err(v) => println!("violation: {v}"),
    }

    // the solution space of the Leibniz system has one dimension per moved point
    for p in [Permutation::identity(3), Permutation::swap(3, 0, 1), sigma] {
        let space: Vec<RatMatrix> = leibniz_space(&p);
        println!("{p}: {} independent derivations", space.len());
    }

    // a nonzero value at a fixed point is rejected
    let fixed = DerivationMatrix::build(Permutation::swap(3, 0, 1), vec![rat(1, 1), rat(1, 1), rat(1, 1)]);
    println!("fixed point diagonal: {:?}", fixed.err().map(|e| e.to_string()));
    Ok(())
}
