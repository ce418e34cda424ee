//! Reduced words in F(a, b): the set of words ending in a is thick, yet its
//! quotient set misses every good pair of {b, b^2, b^3, b^4}.

use largeset::largeness::{fatness, is_thick_on};
use largeset::set::{enumerate, left_quotient, make_ends_with_a};
use largeset::{Element, FiniteSet, Limits, Window};

fn main() -> largeset::Result<()> {
    let limits = Limits::default();
    let a = make_ends_with_a();
    let w = Window::free(6);
    let f = FiniteSet::new(a.ctx, (1..=4).map(|k| Element::free(vec![2; k])))?;
    println!(
        "translate of {f} inside A: {:?}",
        is_thick_on(&a, &f, &w, &limits)?
    );
    let aa = left_quotient(&enumerate(&a, &w, &limits)?);
    let meet: Vec<String> = left_quotient(&f)
        .iter()
        .filter(|g| aa.contains(g))
        .map(ToString::to_string)
        .collect();
    println!("F^-1 F ∩ A^-1 A = {{{}}}", meet.join(", "));
    println!("fatness of A: {:?}", fatness(&a, &w, &limits)?.decided);
    Ok(())
}
