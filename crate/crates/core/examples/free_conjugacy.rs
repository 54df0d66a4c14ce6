//! Deciding conjugacy of finitely generated subgroups of F(a, b): either a
//! conjugator or a certificate separating them.

use subconj::config::Limits;
use subconj::free_witness::{scs_witness, ScsOutcome};
use subconj::kcover::KStrategy;
use subconj::words::{parse_word_list, Alphabet};

fn main() -> subconj::error::Result<()> {
    let ab = Alphabet::new(2)?;
    let limits = Limits::default();
    for (h1, h2) in [("a, b", "b, a b"), ("a b", "b a"), ("a", "a a"), ("a, b b", "b, a a")] {
        let g1 = parse_word_list(h1, ab)?;
        let g2 = parse_word_list(h2, ab)?;
        match scs_witness(ab, &g1, &g2, KStrategy::Exact, &limits)? {
            ScsOutcome::Conjugate { conjugator } => {
                let g = if conjugator.is_empty() { "1".to_string() } else { conjugator.to_string() };
                println!("<{h1}> and <{h2}> are conjugate by {g}")
            }
            ScsOutcome::Witness { direction, certificate } => println!(
                "<{h1}> and <{h2}> are not conjugate ({direction:?}, index {})",
                certificate.index
            ),
        }
    }
    Ok(())
}
