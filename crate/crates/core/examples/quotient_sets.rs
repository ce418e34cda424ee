//! Quotient sets of a syndetic and a thick set, and a thick set whose
//! quotient set is not fat.

use largeset::largeness::fatness;
use largeset::set::{
    enumerate, from_finite, left_quotient, make_coset, make_geometric_union, right_quotient,
};
use largeset::verify::ends_with_a_scene;
use largeset::{Limits, Window};

fn main() -> largeset::Result<()> {
    let limits = Limits::default();
    let a = make_coset(3, 1)?;
    let q = left_quotient(&enumerate(&a, &Window::int(-60, 60), &limits)?);
    let fw = Window::int(-24, 24);
    let f = fatness(&from_finite(&q, fw), &fw, &limits)?;
    println!("A^-1 A for {}: fatness {:?}", a.name, f.value);

    let t = make_geometric_union();
    let q = right_quotient(&enumerate(&t, &Window::int(0, 1024), &limits)?);
    let inner = Window::int(-255, 255);
    let covered = (-255..=255).all(|n| q.contains(&largeset::Element::Int(n)));
    println!("T T^-1 for {} covers {inner}: {covered}", t.name);

    let (ok, detail) = ends_with_a_scene(&limits)?;
    println!("words ending in a: {detail} ({ok})");
    Ok(())
}
