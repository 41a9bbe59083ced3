//! Attained (|S|, |X|) pairs at p = 3 against the tensor-product dots.

use fp2_uncertainty::search::{frontier, yellow_dots, SearchSpace};

fn main() -> fp2_uncertainty::Result<()> {
    let p = 3;
    let base = SearchSpace::int_alphabet(p, &[0, 1])?;
    let twisted = SearchSpace::exhaustive(p, 2, base)?.with_twist(true)?;
    let map = frontier(&twisted)?;
    print!("{}", map.to_csv());
    println!("pareto staircase: {:?}", map.pareto());
    let dots = yellow_dots(p);
    let missing: Vec<_> = dots
        .iter()
        .filter(|&&(s, x)| !map.attained.contains_key(&(s as usize, x as usize)))
        .collect();
    println!("dots not reached by this alphabet: {missing:?}");
    Ok(())
}
