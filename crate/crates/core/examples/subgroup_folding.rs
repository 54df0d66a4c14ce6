//! Stallings folding: membership, conjugacy into, and the saturated core.

use subconj::subgroup_graph::SubgroupGraph;
use subconj::words::{parse_word_list, Alphabet, ReducedWord};

fn main() -> subconj::error::Result<()> {
    let ab = Alphabet::new(2)?;
    let h1 = SubgroupGraph::fold_generators(ab, &parse_word_list("a b A, b b", ab)?)?;
    println!("H1 = <aba^-1, b^2>: {} vertices, rank {}", h1.num_vertices(), h1.betti_number());
    println!("basis: {:?}", h1.basis().iter().map(|w| w.to_string()).collect::<Vec<_>>());

    for w in ["abbA", "abA", "bbabbA", "b"] {
        let w = ReducedWord::parse(w, ab)?;
        println!("  {w:<8} in H1: {}", h1.contains(&w));
    }

    let h2 = SubgroupGraph::fold_generators(ab, &parse_word_list("b", ab)?)?;
    match SubgroupGraph::conj_into(&h2, &h1) {
        Some(g) => println!("<b>^g <= H1 for g = `{g}`"),
        None => println!("<b> is not conjugate into H1"),
    }

    let sat = h1.saturate();
    println!("saturated: {} vertices, every vertex of valency 4: {}", sat.num_vertices(), sat.is_saturated());
    println!("{}", serde_json::to_string(&h1.to_json()).expect("graph serializes"));
    Ok(())
}
