//! Every inequality evaluated on the gallery functions at p = 7.

use fp2_uncertainty::bounds::{evaluate, Analyzed, Check};
use fp2_uncertainty::search::gallery;

fn main() -> fp2_uncertainty::Result<()> {
    let p = 7;
    let mut checks = vec![
        Check::Basic,
        Check::MeshulamAlt,
        Check::Roots,
        Check::Rational,
        Check::Kp1,
        Check::Kp2,
        Check::UpperGray,
    ];
    checks.extend((1..=p as u32).map(Check::Conjecture));
    for family in ["subgroup", "diff-of-subgroups", "pm-two-cosets", "triple-subgroups", "yellow-dot"] {
        let f = gallery::by_name(family, p)?;
        let a = Analyzed::new(&f)?;
        println!("{family}: |S| = {}, |X| = {}", a.s_size, a.x_size);
        for c in &checks {
            match evaluate(c, &a) {
                Ok(r) => println!("  {:<16} {:<20} {} vs {}", r.theorem, r.verdict.name(), r.lhs, r.rhs),
                Err(e) => println!("  {:<16} n/a ({e})", c.label()),
            }
        }
    }
    Ok(())
}
