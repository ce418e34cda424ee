//! Sequences whose quotient sets lie in a thick set, and subgroups inside one.

use largeset::analysis::{subgroup_in_thick, thick_delta_representation};
use largeset::set::{make_length_filtered, LengthSet};
use largeset::verify::delta_fixtures;
use largeset::{Limits, Window};

fn main() -> largeset::Result<()> {
    let limits = Limits::default();
    for (t, w, len) in delta_fixtures() {
        let r = thick_delta_representation(&t, &w, len, &limits)?;
        let seq: Vec<String> = r.sequence.iter().map(ToString::to_string).collect();
        println!("{} on {w}: {}", t.name, seq.join(" "));
        println!(
            "  covers {}/{} of the set on the window",
            r.covered, r.target
        );
    }
    let even = make_length_filtered(LengthSet::Even);
    let h = subgroup_in_thick(&even, &Window::boolean(4, 1, 6), 8, &limits)?;
    println!("subgroup of order 8 in {}: {h:?}", even.name);
    Ok(())
}
