//! Finite regular covers of the rose with no short cycles, checked twice:
//! by breadth-first search and by enumerating short cyclic words.

use subconj::config::Limits;
use subconj::kcover::{build_k, excludes_short_words, KStrategy};
use subconj::words::Alphabet;

fn main() -> subconj::error::Result<()> {
    let ab = Alphabet::new(2)?;
    let limits = Limits::default();
    for c in 1..=6 {
        let cert = build_k(ab, c, KStrategy::Exact, &limits)?;
        let bfs = cert.check().is_ok();
        let words = excludes_short_words(&cert.cover, c);
        println!(
            "C = {c}: {:>5} sheets via {:<18} girth {:<6} bfs ok {bfs}, words ok {words}",
            cert.cover.degree(),
            cert.construction,
            cert.shortest_cycle.to_string(),
        );
        assert_eq!(bfs, words);
    }

    let random = build_k(ab, 4, KStrategy::Random { seed: 7, degree: 6 }, &limits)?;
    println!("random:7:6, C = 4: {} sheets, girth {}", random.cover.degree(), random.shortest_cycle);
    Ok(())
}
