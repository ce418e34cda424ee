//! A finite S with S ∩ (SS ∪ S^-1 S^-1) = ∅ has a 3-fat complement.

use largeset::largeness::check_3fat_cover;
use largeset::set::from_finite;
use largeset::{FiniteSet, Limits, Window};

fn main() -> largeset::Result<()> {
    let w = Window::int(-30, 30);
    for s in [vec![1, 4], vec![5, -7, 12], vec![2, 4]] {
        let s = FiniteSet::ints(s);
        let r = check_3fat_cover(&from_finite(&s, w), &w, &Limits::default())?;
        println!("S = {s}: {:?}; {}", r.decided, r.notes.join("; "));
    }
    Ok(())
}
