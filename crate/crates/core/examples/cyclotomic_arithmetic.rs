//! Exact arithmetic in Q(ζ_7): Gauss periods, conjugation and Galois action.

use fp2_uncertainty::CycNum;

fn main() -> fp2_uncertainty::Result<()> {
    let p = 7;
    // quadratic residues mod 7 are 1, 2, 4
    let eta0 = CycNum::parse(p, "z + z^2 + z^4")?;
    let eta1 = CycNum::parse(p, "z^3 + z^5 + z^6")?;
    println!("eta0 + eta1 = {}", &eta0 + &eta1);
    println!("eta0 * eta1 = {}", &eta0 * &eta1);

    let g = &eta0 - &eta1;
    println!("(eta0 - eta1)^2 = {}", g.pow(2));
    println!("conj(eta0) = {}", eta0.conjugate());
    println!("sigma_3(eta0) = {}", eta0.galois_apply(3)?);

    let (re, im) = eta0.approx();
    println!("eta0 ≈ {re:.6} + {im:.6}i");

    let total = (0..p).fold(CycNum::zero(p), |acc, k| &acc + &CycNum::zeta_pow(p, k));
    println!("sum of all 7th roots = {total}");
    Ok(())
}
