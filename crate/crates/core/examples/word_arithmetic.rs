//! Free reduction, cyclic reduction and conjugation of words in F(a, b).

use subconj::words::{Alphabet, ReducedWord};

fn main() -> subconj::error::Result<()> {
    let ab = Alphabet::new(2)?;
    let w = ReducedWord::parse("a b a A B a b A", ab)?;
    println!("reduced:        {w}  (length {})", w.len());

    let (core, conjugator) = w.cyclic_reduce();
    println!("cyclic core:    {core}");
    println!("conjugator:     {conjugator}");
    assert_eq!(conjugator.concat(&core).concat(&conjugator.inverse()), w);

    let g = ReducedWord::parse("ab", ab)?;
    // h^g = g^-1 h g
    println!("a^(ab):         {}", ReducedWord::parse("a", ab)?.conjugate_by(&g));
    println!("inverse of w:   {}", w.inverse());
    Ok(())
}
