//! Boundary curves of all bounds at p = 11, as printed by `fp2u emit-curves`.

use fp2_uncertainty::arith::rat_int;
use fp2_uncertainty::cli::{curve_value, emit_curves};

fn main() -> fp2_uncertainty::Result<()> {
    let rows = emit_curves(11)?;
    println!("curve,param,min,max,exact");
    for r in rows.iter().filter(|r| r.min <= 12) {
        println!("{},{},{},{},{}", r.curve, r.param, r.min, r.max, r.exact);
    }
    let on_hyperbola = rows
        .iter()
        .filter(|r| r.curve == "theorem-a")
        .all(|r| curve_value(r).is_some_and(|max| max * rat_int(r.min as i64) == rat_int(121)));
    println!("every theorem-a sample has S·X = 121: {on_hyperbola}");
    Ok(())
}
