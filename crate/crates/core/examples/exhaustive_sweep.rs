//! All {-1,0,1}-valued functions on F_3², every check, verdict histograms.

use fp2_uncertainty::bounds::Check;
use fp2_uncertainty::search::{sweep, SearchSpace};

fn main() -> fp2_uncertainty::Result<()> {
    let alphabet = SearchSpace::int_alphabet(3, &[-1, 0, 1])?;
    let space = SearchSpace::exhaustive(3, 2, alphabet)?;
    let checks = [
        Check::Basic,
        Check::MeshulamAlt,
        Check::Rational,
        Check::Kp1,
        Check::Kp2,
        Check::UpperGray,
        Check::Roots,
    ];
    let summary = sweep(&space, &checks)?;
    println!("{} candidates ({} zero)", summary.candidates, summary.zero_functions);
    for (label, cs) in &summary.checks {
        println!("{label}: {:?}", cs.histogram);
        if !cs.exception_kinds.is_empty() {
            println!("  exceptions: {:?}", cs.exception_kinds);
        }
        if let Some(w) = &cs.first_equality {
            println!("  first equality: {}", w.function);
        }
    }
    println!("violations: {}", summary.total_violations());
    Ok(())
}
