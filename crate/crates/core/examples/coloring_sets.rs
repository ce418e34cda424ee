//! Sets built from pair colorings of letters: sphere traces, the dichotomy
//! for C(c), and the largest letter set whose pairs stay in C(c).

use largeset::boolean_topo::{b2_dichotomy, c_set_from_coloring, trace_containment_check};
use largeset::ramsey::{max_homogeneous_letter_set, FilterBase, PairColoring};
use largeset::Limits;

fn main() -> largeset::Result<()> {
    let limits = Limits::default();
    // color 0 inside {0,1,2,3} and inside {4,5,6,7}, color 1 across
    let c = PairColoring::partition(0..8, &[0, 1, 2, 3])?;
    let a = c_set_from_coloring(&c);
    let base = FilterBase::new(0..8, vec![vec![0, 1, 4, 5], vec![4, 5, 6, 7]])?;
    let t = trace_containment_check(&a, &base, 2, &limits)?;
    println!("trace contained: {} via {:?}", t.contained, t.base_set);
    println!("dichotomy: {:?}", b2_dichotomy(&c, &base, 3, &limits)?);
    let best = max_homogeneous_letter_set(&a, &(0..8).collect::<Vec<_>>(), limits.node_budget)?;
    println!("largest letter set with pairs in C(c): {:?}", best.letters);
    Ok(())
}
