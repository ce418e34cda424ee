//! Word systems whose pairwise sums all have two letters.

use largeset::boolean_topo::{two_words_decompose, WordSystem};

fn main() -> largeset::Result<()> {
    let systems = [
        vec![vec![1, 5], vec![2, 5], vec![3, 5], vec![4, 5]],
        vec![vec![], vec![1, 2], vec![1, 3], vec![2, 3]],
        vec![vec![1], vec![2, 3]],
    ];
    for s in systems {
        let ws = WordSystem::from_letter_lists(s)?;
        println!("{} -> {:?}", ws.to_json()?, two_words_decompose(&ws));
    }
    Ok(())
}
