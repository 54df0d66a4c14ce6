//! S3 *_C2 S3 with the base at the left vertex: the left S3 does not contain
//! a conjugate of the order-3 subgroup of the right S3.

use std::time::Instant;

use subconj::config::Limits;
use subconj::gog::{standard, GPath};
use subconj::vf::{verify_vf_certificate, vf_quotient_witness, vf_sics_witness, VfOptions};

fn main() -> subconj::error::Result<()> {
    let g = standard::s3_c2_s3(0);
    let limits = Limits::default();
    let right = g.vertex_group(1);
    let r = (0..right.order()).find(|&x| right.element_order(x) == 3).expect("S3 has a 3-cycle");
    let h1 = GPath::parse_list("1@0, 2@0", &g)?;
    let h2 = vec![GPath::parse(&format!("0@0 : 0 : {r}@1 : 0 : 0@0"), &g)?];

    let start = Instant::now();
    let cert = vf_sics_witness(&g, &h1, &h2, 3, VfOptions::default(), &limits)?;
    println!("built in {:?}: C = {}, {} sheets per vertex", start.elapsed(), cert.c, cert.sheets);
    println!("decomposition: {:?}", cert.decomposition);
    println!("verifies: {:?}", verify_vf_certificate(&cert));

    let q = vf_quotient_witness(&cert, &limits)?;
    println!("{} generator images, pattern holds: {}", q.generators.len(), q.pattern_holds());
    println!("exhaustive: {:?}", q.exhaustive);
    Ok(())
}
