//! Upper Banach density estimates and cube differences in dense sets.

use largeset::analysis::{banach_density_estimate, sarkozy_witness};
use largeset::set::{enumerate, make_coset, make_geometric_union, make_interval_union, union};
use largeset::{Limits, Window};

fn main() -> largeset::Result<()> {
    let w = Window::int(0, 2000);
    let sets = [
        make_coset(3, 1)?,
        make_geometric_union(),
        union(&make_coset(10, 0)?, &make_interval_union(&[(500, 700)]))?,
    ];
    for s in &sets {
        let r = banach_density_estimate(s, &w, &[10, 100, 1000])?;
        println!("{}: density {} on {:?}", r.set, r.density, r.best_interval);
        let members = enumerate(s, &Window::int(0, 400), &Limits::default())?;
        println!("  x - y = z^3: {:?}", sarkozy_witness(&members)?);
    }
    Ok(())
}
