//! Prints the small fixture tables found by exhaustive search.

use sdmod_core::zoo::{search_figure1_like, search_no_canonical};

fn main() {
    println!("figure1_like: {:?}", search_figure1_like());
    println!("no_canonical: {:?}", search_no_canonical());
}
