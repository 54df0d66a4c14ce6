//! Small trees of groups used in examples and tests.

use super::graph::{Edge, GraphOfGroups};
use super::group::FiniteGroupTable;

/// `A *_C B` on one edge from vertex 0 (`A`) to vertex 1 (`B`).
pub fn amalgam(
    a: FiniteGroupTable,
    b: FiniteGroupTable,
    c: FiniteGroupTable,
    rho_a: Vec<usize>,
    rho_b: Vec<usize>,
    base: usize,
) -> crate::error::Result<GraphOfGroups> {
    GraphOfGroups::new(vec![a, b], vec![Edge { src: 0, dst: 1, group: c, rho_src: rho_a, rho_dst: rho_b }], base)
}

/// `PSL(2, Z) = C2 * C3`, based at the `C2` vertex.
pub fn psl2z() -> GraphOfGroups {
    amalgam(FiniteGroupTable::cyclic(2), FiniteGroupTable::cyclic(3), FiniteGroupTable::trivial(), vec![0], vec![0], 0)
        .expect("valid")
}

/// `C4 *_{C2} C6` with central edge group; fails the normalizer condition.
pub fn c4_c2_c6() -> GraphOfGroups {
    amalgam(
        FiniteGroupTable::cyclic(4),
        FiniteGroupTable::cyclic(6),
        FiniteGroupTable::cyclic(2),
        vec![0, 2],
        vec![0, 3],
        0,
    )
    .expect("valid")
}

/// `S3 *_{C2} S3` amalgamated along the transposition `1 = (0 1)`.
pub fn s3_c2_s3(base: usize) -> GraphOfGroups {
    amalgam(
        FiniteGroupTable::symmetric3(),
        FiniteGroupTable::symmetric3(),
        FiniteGroupTable::cyclic(2),
        vec![0, 1],
        vec![0, 1],
        base,
    )
    .expect("valid")
}

/// A three-vertex path `C2 -1- S3 -C3- C6`, based at the `S3` vertex.
pub fn three_vertex_path() -> GraphOfGroups {
    let s3 = FiniteGroupTable::symmetric3();
    let rot = (1..6).find(|&g| s3.element_order(g) == 3).expect("S3 has a 3-cycle");
    let rot2 = s3.mul(rot, rot);
    GraphOfGroups::new(
        vec![FiniteGroupTable::cyclic(2), s3, FiniteGroupTable::cyclic(6)],
        vec![
            Edge { src: 0, dst: 1, group: FiniteGroupTable::trivial(), rho_src: vec![0], rho_dst: vec![0] },
            Edge { src: 1, dst: 2, group: FiniteGroupTable::cyclic(3), rho_src: vec![0, rot, rot2], rho_dst: vec![0, 2, 4] },
        ],
        1,
    )
    .expect("valid")
}

/// All named examples, for exhaustive tests.
pub fn catalog() -> Vec<(&'static str, GraphOfGroups)> {
    vec![
        ("psl2z", psl2z()),
        ("c4_c2_c6", c4_c2_c6()),
        ("s3_c2_s3", s3_c2_s3(0)),
        ("three_vertex_path", three_vertex_path()),
    ]
}
