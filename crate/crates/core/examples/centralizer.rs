//! Centralizer of the coefficient algebra, by closed form and by linear algebra.

use ore_ext::commutant::{self, centralizer_closed_form, centralizer_solver};
use ore_ext::rational::rat;
use ore_ext::{OreContext, Permutation};

fn main() -> ore_ext::Result<()> {
    let max_degree = 3;
    let ctx = OreContext::skew(Permutation::rotation(3));

    let closed = centralizer_closed_form(&ctx, max_degree)?;
    let solved = centralizer_solver(&ctx, max_degree);
    println!("3-cycle, degree <= {max_degree}: dimension {}", closed.dimension());
    for p in closed.elements() {
        println!("  {p:?}");
    }
    println!("same span: {}", closed.same_span(&solved));
    println!("maximal commutative: {}", commutant::maximal_commutativity_check(&closed));

    // a nonzero derivation: the solver still works, the closed form does not apply
    let ctx = OreContext::from_diag(Permutation::swap(2, 0, 1), vec![rat(1, 1), rat(2, 1)])?;
    let basis = centralizer_solver(&ctx, 2);
    println!("swap with derivation, degree <= 2: dimension {}", basis.dimension());
    for p in basis.elements() {
        println!("  {p:?}  commutes: {}", p.commutes_with_coefficient_algebra());
    }
    println!("leading coefficients vanish off Per: {}", commutant::leading_coefficient_check(&basis));
    println!("closed form: {:?}", centralizer_closed_form(&ctx, 2).err().map(|e| e.to_string()));

    // identity permutation: the coefficient algebra is central, everything commutes
    let ctx = OreContext::skew(Permutation::identity(2));
    println!("identity, degree <= 2: dimension {}", centralizer_solver(&ctx, 2).dimension());
    Ok(())
}
