//! Build structured functions from descriptors and recover the descriptors.

use fp2_uncertainty::bounds::classify_exception;
use fp2_uncertainty::plane::{LineSubgroup, Point, Side};
use fp2_uncertainty::search::gallery;
use fp2_uncertainty::CycNum;

fn main() -> fp2_uncertainty::Result<()> {
    let p = 5;
    let h = LineSubgroup::new(p, 1, Side::Primal)?;
    let one = CycNum::one(p);
    let two = CycNum::from_int(p, 2);

    let examples = vec![
        ("character on a coset", gallery::character_on_coset(&h, &Point::primal(0, 2), &Point::dual(1, 3), &one)?),
        (
            "two characters on a coset",
            gallery::characters_on_coset(&h, &Point::primal(1, 0), &[Point::dual(0, 0), Point::dual(1, 0)], &[one.clone(), two.clone()])?,
        ),
        (
            "one character on two cosets",
            gallery::character_on_two_cosets(&h, &Point::primal(0, 0), &Point::primal(0, 3), &Point::dual(2, 1), &one, &two)?,
        ),
        ("difference of two subgroups", gallery::diff_of_subgroups(p as u64, 0, 1)?),
    ];
    for (name, f) in examples {
        println!("{name}: |supp| = {}", f.support_size());
        match classify_exception(&f)? {
            Some(d) => {
                println!("  kind {} (dual: {})", d.kind.name(), d.dual);
                println!("  reconstructs f: {}", d.reconstruct()? == f);
                if let Some(s) = &d.sandwich {
                    let upper = s.upper.as_ref().map_or("-".to_string(), |u| u.to_string());
                    println!("  sandwich {} <= {} <= {upper}: {}", s.lower, s.value, s.holds);
                }
            }
            None => println!("  no structural form"),
        }
    }
    Ok(())
}
