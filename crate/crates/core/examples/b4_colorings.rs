//! The 36- and 6-color colorings of pairs of four-letter words.

use largeset::boolean_topo::{b4_arrangement_coloring, b4_quadruple_coloring};
use largeset::Element;

fn main() -> largeset::Result<()> {
    let pairs = [
        ([1, 2, 3, 4], [1, 2, 5, 6]),
        ([1, 3, 5, 7], [3, 4, 7, 8]),
        ([2, 4, 6, 8], [1, 2, 3, 6]),
    ];
    for (a, b) in pairs {
        let (wi, wj) = (Element::word(a), Element::word(b));
        let q = b4_quadruple_coloring(&wi, &wj)?;
        let r = b4_arrangement_coloring(&wi, &wj)?;
        println!(
            "{wi} {wj}: quadruple {q} (color {}), arrangement {r} (color {})",
            q.index(),
            r.index()
        );
    }
    Ok(())
}
