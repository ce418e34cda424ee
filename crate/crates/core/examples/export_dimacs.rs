//! Quotient graph of the even integers in DIMACS format.

use largeset::cli::export_graph;
use largeset::set::make_coset;
use largeset::{Limits, Window};

fn main() -> largeset::Result<()> {
    print!(
        "{}",
        export_graph(&make_coset(2, 0)?, &Window::int(-3, 3), &Limits::default())?
    );
    Ok(())
}
