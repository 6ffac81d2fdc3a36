//! Labeled trees by Prüfer code and the tree chains built from them.

use smallsol::scheme::{enumerate_trees, Tree, TreeChain};

fn main() -> smallsol::Result<()> {
    for n in 2..=6 {
        println!("n = {n}: {} trees", enumerate_trees(n)?.len());
    }
    let t = Tree::from_prufer(5, &[2, 2, 4])?;
    println!("edges {:?}, multiple vertices {:?}", t.edges(), t.multiple_vertices());
    println!("chains for n = 4: {}", TreeChain::all(4)?.len());
    println!("first chain for n = 4: {:?}", TreeChain::first(4)?.codes());
    Ok(())
}
