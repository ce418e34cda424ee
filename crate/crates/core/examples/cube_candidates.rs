//! Syndetic Boolean sets whose sums leave the cube-gap set.

use largeset::analysis::{cube_candidate_family, cube_noncontainment_search, CubeSearch};
use largeset::{Limits, Window};

fn main() -> largeset::Result<()> {
    let reports = cube_noncontainment_search(
        &cube_candidate_family(),
        &Window::boolean(3, 0, 12),
        &CubeSearch::default(),
        &Limits::default(),
    )?;
    for r in reports {
        let v = r
            .violation
            .map(|v| {
                format!(
                    "{} + {} = {} (gap {}^3)",
                    v.first, v.second, v.sum, v.gap_root
                )
            })
            .unwrap_or_else(|| "none on the window".into());
        println!("{}: syndetic {:?}, {v}", r.set, r.syndeticity.decided);
    }
    Ok(())
}
