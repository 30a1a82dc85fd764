//! Finitely supported functions on the integers, with a shift or finitely many cycles.

use std::collections::BTreeMap;

use ore_ext::rational::rat;
use ore_ext::sparse_mode::{self, sparse_centralizer, sparse_commutation_search};
use ore_ext::{CountableBijection, SparseContext, SparseDerivation, SparseFunc, SparsePoly};

fn main() -> ore_ext::Result<()> {
    let swap = CountableBijection::cycles(vec![vec![1, 2]])?;
    let diag: BTreeMap<_, _> = [(1, rat(1, 1)), (2, rat(2, 1))].into();
    let delta = SparseDerivation::from_diagonal(swap, diag)?;
    for (i, (own, next)) in delta.assignments() {
        println!("k[{i}][{i}] = {own}, k[{}][{i}] = {next}", delta.bijection().apply(i));
    }

    let ctx = SparseContext::new(delta);
    let f = SparseFunc::from_pairs([(1, rat(1, 1)), (5, rat(3, 1))]);
    println!("delta(f) = {:?}", ctx.derivation().apply(&f));

    let x = SparsePoly::monomial(&ctx, SparseFunc::basis(0).add(&SparseFunc::basis(1)), 1);
    let e1 = SparsePoly::monomial(&ctx, SparseFunc::basis(1), 0);
    println!("(e0 + e1) x * e1 = {:?}", x.multiply(&e1)?);

    // leading coefficient condition, usable when the derivation is not zero
    let p = SparsePoly::new(&ctx, vec![SparseFunc::zero(), SparseFunc::basis(7)]);
    println!("{p:?} passes leading check: {}", sparse_mode::sparse_leading_coefficient_check(&p));

    // shift: only degree 0 survives
    let shift = SparseContext::skew(CountableBijection::shift(1)?);
    let window = sparse_centralizer(&shift, 3)?;
    println!("shift window allows x: {}", window.allows(shift.bijection(), 1, 0));
    let found = sparse_commutation_search(&shift, &[-1, 0, 1], 3);
    println!("shift search on {{-1, 0, 1}}: {} elements, all constant: {}", found.len(), found.iter().all(|q| q.degree() == Some(0)));

    // a 3-cycle: x^3 on its members is allowed, x is not
    let cyc = SparseContext::skew(CountableBijection::cycles(vec![vec![4, 5, 6]])?);
    let window = sparse_centralizer(&cyc, 3)?;
    println!("3-cycle: e4 x allowed {}, e4 x^3 allowed {}", window.allows(cyc.bijection(), 1, 4), window.allows(cyc.bijection(), 3, 4));
    let z = SparsePoly::monomial(&cyc, SparseFunc::from_pairs([(4, rat(1, 1)), (5, rat(1, 1)), (6, rat(1, 1))]), 3);
    println!("{z:?} central: {}", sparse_mode::sparse_center_membership(&z)?);
    Ok(())
}
