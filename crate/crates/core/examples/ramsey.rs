//! R(3,3) by exhaustive search, and the pentagon coloring that shows 5 is too few.

use largeset::ramsey::{find_homogeneous, ramsey_bound_search, PairColoring, RamseySearch};

fn main() -> largeset::Result<()> {
    match ramsey_bound_search(2, 3, 8, u64::MAX)? {
        RamseySearch::Exact { n, below } => {
            println!("R(3,3) = {n}");
            if let Some(c) = below {
                println!("{}", c.to_json()?);
            }
        }
        other => println!("undecided: {other:?}"),
    }
    let c = PairColoring::pentagon();
    println!(
        "3-homogeneous set in the pentagon: {:?}",
        find_homogeneous(&c, 3, u64::MAX)?
    );
    println!(
        "2-homogeneous set: {:?}",
        find_homogeneous(&c, 2, u64::MAX)?
    );
    Ok(())
}
