//! Syndeticity index, thickness and piecewise syndeticity on integer windows.

use largeset::largeness::{
    is_piecewise_syndetic, syndeticity_index, thick_report, thickness_index, ThicknessSearch,
};
use largeset::set::{make_coset, make_geometric_union, make_interval_union, union};
use largeset::{FiniteSet, Limits, Window};

fn main() -> largeset::Result<()> {
    let limits = Limits::default();
    let w = Window::int(0, 128);
    let sets = [
        make_coset(5, 0)?,
        make_geometric_union(),
        union(&make_coset(7, 3)?, &make_interval_union(&[(40, 80)]))?,
    ];
    let search = ThicknessSearch::standard(&w, 3);
    for a in &sets {
        let syn = syndeticity_index(a, &w, 4, 7, &limits)?;
        let thick = thick_report(a, &FiniteSet::ints(0..8), &w, &limits)?;
        let ti = thickness_index(a, &w, &search, &limits)?;
        let ps = is_piecewise_syndetic(a, &w, &search, &limits)?;
        println!("{}", a.name);
        println!("  syndetic: {:?} index {:?}", syn.decided, syn.value);
        println!("  contains a translate of 0..8: {:?}", thick.decided);
        println!("  thickness index: {:?} ({:?})", ti.value, ti.decided);
        println!("  piecewise syndetic: {:?}", ps.decided);
    }
    Ok(())
}
