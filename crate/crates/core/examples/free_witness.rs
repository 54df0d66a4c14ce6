//! A certificate that one subgroup of F(a, b) is not conjugate into another,
//! checked from its JSON form and turned into a finite quotient.

use subconj::config::Limits;
use subconj::free_witness::{quotient_witness, sics_witness, verify_certificate_json};
use subconj::kcover::KStrategy;
use subconj::words::{parse_word_list, Alphabet};

fn main() -> subconj::error::Result<()> {
    let ab = Alphabet::new(2)?;
    let limits = Limits::default();
    let h1 = parse_word_list("a, b b a b A B", ab)?;
    let h2 = parse_word_list("a b", ab)?;

    let cert = sics_witness(ab, &h1, &h2, KStrategy::Exact, &limits)?;
    println!("C = {}, D has index {}", cert.c, cert.index);

    let json = serde_json::to_string(&cert)?;
    println!("certificate: {} bytes, verifies: {:?}", json.len(), verify_certificate_json(&json));

    let q = quotient_witness(&cert, &limits)?;
    println!("H1 fixes the base sheet: {}", q.h1_fix_base);
    println!("sheets fixed by all of H2: {:?}", q.h2_common_fixed);
    println!("exhaustive check: {:?}", q.exhaustive);

    // Tampering is caught.
    let bad = json.replacen("\"h1_contained\":true", "\"h1_contained\":false", 1);
    println!("tampered: {:?}", verify_certificate_json(&bad).unwrap_err().code);
    Ok(())
}
