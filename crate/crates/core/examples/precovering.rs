//! Folding a subgroup of a tree of groups into a pre-covering, then closing
//! its nontrivial faces and thickening it.

use subconj::config::Limits;
use subconj::covering::{close_nontrivial_faces, fold_subgroup, thicken, PreCoveringDoc};
use subconj::gog::{standard, GPath};

fn main() -> subconj::error::Result<()> {
    let g = standard::s3_c2_s3(1);
    let limits = Limits::default();
    let gens = GPath::parse_list("1@1, 0@1 : 0 : 3@0 : 0 : 0@1", &g)?;
    let folded = fold_subgroup(&g, &gens)?;
    let real = folded.realize(&g).expect("fold output is valid");
    println!("folded: {} pieces, {} sheets, {} free handles", folded.pieces.len(), real.num_sheets(), real.free_handles().len());
    for h in &gens {
        let lift = real.lift(real.base_sheet(), h).expect("generators lift");
        println!("  {} lifts to a loop: {}", h.display(&g), lift.end == real.base_sheet());
    }

    let closed = close_nontrivial_faces(&g, &folded, &limits)?;
    let thick = thicken(&g, &closed, 3, &limits)?;
    let real = thick.realize(&g).expect("valid");
    println!("closed: {} pieces; thickened by 3: {} pieces, {} sheets", closed.pieces.len(), thick.pieces.len(), real.num_sheets());

    let doc = PreCoveringDoc { gog: g.clone(), precovering: folded };
    println!("{}", serde_json::to_string(&doc.precovering)?);
    Ok(())
}
