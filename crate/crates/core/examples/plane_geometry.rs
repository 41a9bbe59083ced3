//! Lines, directions and blocking sets in the affine plane F_p².

use fp2_uncertainty::plane::{
    directions_determined, is_blocking_set, min_blocking_size, pencil_stability_check,
    rich_direction_search, PointSet, Side,
};

fn main() -> fp2_uncertainty::Result<()> {
    for p in [2, 3, 5] {
        let (size, witness) = min_blocking_size(p)?;
        println!("p={p}: smallest blocking set has {size} points, e.g. {}", witness.to_literal());
    }

    let cross = PointSet::parse("5; (0,0),(0,1),(0,2),(0,3),(0,4),(1,0),(2,0),(3,0),(4,0)", Side::Primal)?;
    println!("two crossing lines block: {}", is_blocking_set(&cross));

    let arc = PointSet::parse("5; (0,0),(1,1),(2,4),(3,4),(4,1)", Side::Primal)?;
    let dirs = directions_determined(&arc)?;
    println!("{} determines {} directions: {:?}", arc.to_literal(), dirs.len(), dirs);

    let line = PointSet::parse("3; (0,0),(0,1),(0,2)", Side::Primal)?;
    println!("pencil report for a line: {:?}", pencil_stability_check(&line));

    let big = PointSet::parse("5; (0,0),(0,1),(0,2),(1,0),(1,3),(2,1),(2,4),(3,2),(3,3),(4,0),(4,4)", Side::Primal)?;
    println!("rich direction: {:?}", rich_direction_search(&big)?);
    Ok(())
}
