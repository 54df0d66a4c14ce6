//! Paths in a finite tree of finite groups: reduction, normal forms and
//! length in the fundamental group.

use subconj::gog::{standard, GPath};

fn main() -> subconj::error::Result<()> {
    // PSL(2, Z) = C2 * C3: vertex 0 carries C2 = <a>, vertex 1 carries C3 = <b>.
    let g = standard::psl2z();
    let ab = GPath::parse("1@0 : 0 : 1@1 : 0 : 0@0", &g)?;
    let ba_inv = GPath::parse("0@0 : 0 : 2@1 : 0 : 1@0", &g)?;
    let p = ab.concat(&g, &ba_inv)?;
    println!("{}  ->  {}", p.display(&g), p.reduce(&g).display(&g));
    println!("trivial: {}", p.is_trivial(&g));

    let w = GPath::parse("1@0 : 0 : 1@1 : 0 : 1@0 : 0 : 2@1 : 0 : 0@0", &g)?;
    println!("normal form of {}: {}", w.display(&g), w.normal_form(&g).display(&g));
    println!("length: {}", w.length(&g)?);

    // A backtracking path collapses into the base vertex group.
    let s3 = standard::s3_c2_s3(0);
    let x = GPath::parse("1@0 : 0 : 0@1 : 0 : 0@0", &s3)?;
    println!("in S3 *_C2 S3: {} has length {}", x.display(&s3), x.length(&s3)?);
    Ok(())
}
