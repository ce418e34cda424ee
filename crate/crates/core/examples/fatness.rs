//! Fatness of cosets dZ, with the independent set that certifies it.

use largeset::largeness::fatness;
use largeset::set::make_coset;
use largeset::{Limits, Window};

fn main() -> largeset::Result<()> {
    let limits = Limits::default();
    let w = Window::int(-50, 50);
    for d in 1..=6 {
        let a = make_coset(d, 0)?;
        let r = fatness(&a, &w, &limits)?;
        let cert = r.counterexample.map(|c| c.to_string()).unwrap_or_default();
        println!(
            "{:>4}: fatness {:?}, no good pair in {cert}",
            a.name, r.value
        );
    }
    Ok(())
}
