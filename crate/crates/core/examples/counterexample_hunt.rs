//! Random search for violations of the square-root bound at p = 5.

use fp2_uncertainty::bounds::Check;
use fp2_uncertainty::search::{hunt, SearchSpace};

fn main() -> fp2_uncertainty::Result<()> {
    let alphabet = SearchSpace::int_alphabet(5, &[-1, 0, 1])?;
    for check in [Check::Roots, Check::Conjecture(2), Check::Kp2] {
        let space = SearchSpace::random(5, 2, alphabet.clone(), 7, 20_000)?;
        let r = hunt(&check, &space)?;
        match &r.violation {
            Some(w) => println!("{}: violation at #{}: {}", r.theorem, w.index, w.function),
            None => println!("{}: none in {} samples, {} excused", r.theorem, r.candidates, r.excused),
        }
        if let Some(w) = &r.first_excused {
            println!("  first excused: |S|={} |X|={} {}", w.s_size, w.x_size, w.function);
        }
    }
    Ok(())
}
