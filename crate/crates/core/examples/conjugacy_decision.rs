//! Deciding whether one subgroup of PSL(2, Z) is conjugate into another.

use subconj::config::Limits;
use subconj::gog::{standard, GPath};
use subconj::vf::{vf_conj_into_decide, VfDecision, VfOptions};

fn main() -> subconj::error::Result<()> {
    let g = standard::psl2z();
    let limits = Limits::default();
    let a = "1@0";
    let b = "0@0 : 0 : 1@1 : 0 : 0@0";
    let a_conj = "0@0 : 0 : 2@1 : 0 : 1@0 : 0 : 1@1 : 0 : 0@0";
    for (h1, h2) in [(a, b), (a, a_conj), (b, a), (b, b)] {
        let p1 = GPath::parse_list(h1, &g)?;
        let p2 = GPath::parse_list(h2, &g)?;
        match vf_conj_into_decide(&g, &p1, &p2, 0, VfOptions::default(), &limits)? {
            VfDecision::ConjInto { conjugator } => println!("<{h2}> is conjugate into <{h1}> by {conjugator}"),
            VfDecision::NotConjInto { certificate } => {
                println!("<{h2}> is not conjugate into <{h1}> ({} sheets)", certificate.sheets)
            }
        }
    }
    Ok(())
}
