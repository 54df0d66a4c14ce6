//! In PSL(2, Z) = <a> * <b>, the subgroup <b> is not conjugate into <a>.
//! Build a finite-index overgroup of <a> that still excludes every
//! conjugate of <b>, and check it.

use subconj::config::Limits;
use subconj::gog::{standard, GPath};
use subconj::vf::{verify_vf_certificate_json, vf_quotient_witness, vf_sics_witness, VfOptions};

fn main() -> subconj::error::Result<()> {
    let g = standard::psl2z();
    let limits = Limits::default();
    let h1 = GPath::parse_list("1@0", &g)?;
    let h2 = GPath::parse_list("0@0 : 0 : 1@1 : 0 : 0@0", &g)?;

    let cert = vf_sics_witness(&g, &h1, &h2, 1, VfOptions::default(), &limits)?;
    println!("C = {}, {} sheets per vertex, base sheet {}", cert.c, cert.sheets, cert.base_sheet);
    for round in &cert.build_log {
        println!(
            "  round {}: edge {:?} r={} s={} -> {} copies, {} universal pieces",
            round.round, round.dedge, round.r, round.s, round.num_r, round.num_s
        );
    }
    let json = serde_json::to_string(&cert)?;
    println!("verifies: {:?}", verify_vf_certificate_json(&json));

    let q = vf_quotient_witness(&cert, &limits)?;
    println!("fixed-point pattern: {}, exhaustive: {:?}", q.pattern_holds(), q.exhaustive);
    Ok(())
}
