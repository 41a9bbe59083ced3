//! Transform, inversion and the convolution theorem on F_5².

use fp2_uncertainty::fourier::{convolution, fourier_transform, inverse_transform, GFunc};
use fp2_uncertainty::plane::{LineSubgroup, Side};
use fp2_uncertainty::search::gallery;

fn main() -> fp2_uncertainty::Result<()> {
    let p = 5;
    let f = gallery::coset_indicator(p, 2, &fp2_uncertainty::plane::Point::primal(1, 0))?;
    let fhat = fourier_transform(&f)?;
    println!("f    = {}", f.to_literal());
    println!("fhat = {}", fhat.to_literal());
    println!("|supp f| = {}, |supp fhat| = {}", f.support_size(), fhat.support_size());

    let h = LineSubgroup::new(5, 2, Side::Primal)?;
    println!("supp fhat lies in H^perp: {}", fhat
        .support()
        .points()
        .iter()
        .all(|chi| h.orthogonal().contains(chi)));

    assert_eq!(inverse_transform(&fhat)?, f);
    println!("inverse transform recovers f");

    let g = GFunc::from_ints(p, 2, Side::Primal, &(0..25).map(|i| (i % 3) - 1).collect::<Vec<_>>())?;
    let lhs = fourier_transform(&convolution(&f, &g)?)?;
    let rhs = fhat.pointwise_mul(&fourier_transform(&g)?)?;
    println!("(f*g)^ = fhat·ghat: {}", lhs == rhs);
    Ok(())
}
