//! The Boolean set missing every word {m, m + k^3} is 3-fat but not 2-fat.

use largeset::largeness::{fatness, kappa_fat_check};
use largeset::set::make_cube_gap_complement;
use largeset::{Limits, Window};

fn main() -> largeset::Result<()> {
    let limits = Limits::default();
    let a = make_cube_gap_complement();
    let w = Window::boolean(2, -12, 12);
    let f = fatness(&a, &w, &limits)?;
    println!("fatness on {w}: {:?}", f.value);
    for k in 2..=3 {
        let r = kappa_fat_check(&a, &w, k, &limits)?;
        match (r.decided, &r.counterexample) {
            (Some(false), Some(c)) => println!("{k}-fat: no, {c} has no good pair"),
            (d, _) => println!("{k}-fat: {d:?}"),
        }
    }
    Ok(())
}
