//! A discrete set assembled from quotients inside shrinking sets.

use largeset::analysis::discrete_set_construct;
use largeset::set::{complement, intersect, make_coset, make_interval_union};
use largeset::{FiniteSet, Limits, Window};

fn main() -> largeset::Result<()> {
    let w = Window::int(-40, 40);
    let mut fs = Vec::new();
    let mut as_ = Vec::new();
    // level n keeps the multiples of 4 of absolute value at least t
    for (n, t) in [(1, 4), (2, 8), (3, 12), (4, 40)] {
        let f = if n < 4 {
            FiniteSet::ints((0..4).map(|i| i * 4 * n))
        } else {
            FiniteSet::ints([0])
        };
        fs.push(f);
        as_.push(intersect(
            &make_coset(4, 0)?,
            &complement(&make_interval_union(&[(1 - t, t - 1)])),
        )?);
    }
    let r = discrete_set_construct(&fs, &as_, &w, &Limits::default())?;
    println!("D = {}", r.set);
    for s in &r.separations {
        println!("  {} isolated at level {:?}", s.point, s.level);
    }
    println!(
        "identity excluded: {}, all separated: {}",
        r.identity_excluded, r.all_separated
    );
    Ok(())
}
