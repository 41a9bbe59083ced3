//! Line-count lemmas, the sumset helper and the proof-trace identities.

use fp2_uncertainty::bounds::{lemma_aq_check, lemma_sxmn_check, profile, sumset_bound};
use fp2_uncertainty::fourier::{delta_transform_formula, fourier_transform, proof_trace_delta, GFunc};
use fp2_uncertainty::plane::{LineSubgroup, Point, Side};
use fp2_uncertainty::search::gallery;
use fp2_uncertainty::CycNum;

fn main() -> fp2_uncertainty::Result<()> {
    let p = 7;
    let f = gallery::triple_subgroups(p, 0, 1, 2)?;
    let prof = profile(&f)?;
    for d in 0..=p as u32 {
        let h = LineSubgroup::new(p as u32, d, Side::Primal)?;
        let s = prof.stats(&h);
        let r = lemma_sxmn_check(&f, &h)?;
        println!(
            "direction {d}: n_S={} n_X={} k_S={} k_X={} isolated={} -> {}",
            s.n_s, s.n_x, s.k_s, s.k_x, prof.isolated_count(&h), r.verdict.name()
        );
    }

    let h = LineSubgroup::new(p as u32, 0, Side::Primal)?;
    let (g, g0) = (Point::primal(1, 2), Point::primal(3, 5));
    let direct = fourier_transform(&proof_trace_delta(&f, &h, &g, &g0)?)?;
    let formula = delta_transform_formula(&fourier_transform(&f)?, &h, &g, &g0)?;
    println!("difference-function transform matches its formula: {}", direct == formula);

    println!("|{{0,1,2}} + {{0,3}}| in F_7 = {}", sumset_bound(&[0, 1, 2], &[0, 3], 7)?);

    // a character on A = {0..7}, anything off A
    let values = (0..11u32)
        .map(|x| if x < 8 { CycNum::zeta_pow(11, 2 * x % 11) } else { CycNum::from_int(11, 5) })
        .collect();
    let h = GFunc::from_values(11, 1, Side::Primal, values)?;
    let r = lemma_aq_check(&h, &[0, 1, 2, 3, 4, 5, 6, 7])?;
    println!("aq: |supp ĥ| = {} against |A| = 8 -> {}", r.x_size, r.verdict.name());
    Ok(())
}
