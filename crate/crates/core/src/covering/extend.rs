//! Growing a pre-covering into a finite covering: forced extension through
//! nontrivial faces, thickening by universal pieces, and completion by
//! star gluings along the largest free handles.

use serde::{Deserialize, Serialize};

use super::body::{BodyCatalog, BodyType};
use super::precover::{FreeHandle, Gluing, Piece, PreCovering, Realization};
use crate::config::Limits;
use crate::error::{Error, Result};
use crate::gluing::glue_stars;
use crate::gog::{DirEdge, EdgeOrder, GraphOfGroups, Subgroup};

fn realize<'g>(gog: &'g GraphOfGroups, pre: &PreCovering, catalog: &mut BodyCatalog) -> Result<Realization<'g>> {
    pre.realize_with(gog, catalog).map_err(|r| Error::InvalidInput(format!("invalid pre-covering: {r}")))
}

fn total_sheets(gog: &GraphOfGroups, pieces: &[Piece]) -> usize {
    pieces.iter().map(|p| gog.vertex_group(p.vertex).order() / p.subgroup.order()).sum()
}

fn check_size(gog: &GraphOfGroups, pieces: &[Piece], limits: &Limits) -> Result<()> {
    let n = total_sheets(gog, pieces);
    if n > limits.max_sheets {
        return Err(Error::Resource(format!("pre-covering reached {n} sheets (limit {})", limits.max_sheets)));
    }
    Ok(())
}

/// Depth allowed for chains of nontrivial faces: vertices times the largest
/// vertex group times the number of (directed edge, nontrivial edge
/// subgroup) states.
pub fn face_chain_cap(gog: &GraphOfGroups) -> usize {
    let max_order = (0..gog.num_vertices()).map(|v| gog.vertex_group(v).order()).max().unwrap_or(1);
    let states: usize = gog.dir_edges().map(|d| gog.edge_group(d).subgroups().len() - 1).sum();
    gog.num_vertices() * max_order * states.max(1)
}

/// Attaches, at every free handle with nontrivial face `E` over `d`, the
/// piece at `target(d)` with body `rho^t(E)`, until all free faces are
/// trivial.
pub fn close_nontrivial_faces(gog: &GraphOfGroups, pre: &PreCovering, limits: &Limits) -> Result<PreCovering> {
    let mut catalog = BodyCatalog::default();
    let mut out = pre.clone();
    let cap = face_chain_cap(gog);
    // (parent piece, directed edge, face) for each attached piece
    let mut origin: Vec<Option<(usize, DirEdge, Subgroup)>> = vec![None; out.pieces.len()];
    let mut depth = vec![0usize; out.pieces.len()];
    loop {
        let real = realize(gog, &out, &mut catalog)?;
        let open: Vec<FreeHandle> = real.free_handles().into_iter().filter(|h| !h.face.is_trivial()).collect();
        drop(real);
        if open.is_empty() {
            return Ok(out);
        }
        for h in open {
            let w = gog.target(h.dedge);
            let mut image: Vec<usize> = h.face.elements().iter().map(|&x| gog.rho_t(h.dedge, x)).collect();
            image.sort_unstable();
            let q = out.pieces.len();
            out.pieces.push(Piece { vertex: w, subgroup: Subgroup::from_sorted(image) });
            out.gluings.push(Gluing { a: h.piece, a_sheet: h.rep, edge: h.dedge.edge(), b: q, b_sheet: 0, element: 0 });
            origin.push(Some((h.piece, h.dedge, h.face.clone())));
            depth.push(depth[h.piece] + 1);
            if depth[q] > cap {
                let mut chain = Vec::new();
                let mut cur = q;
                while let Some((p, d, e)) = &origin[cur] {
                    chain.push(format!("{d}:{:?}", e.elements()));
                    cur = *p;
                }
                chain.reverse();
                return Err(Error::NormalizerConditionFails(format!(
                    "nontrivial faces persist past depth {cap}; face chain {}",
                    chain.join(" -> ")
                )));
            }
        }
        check_size(gog, &out.pieces, limits)?;
    }
}

/// Attaches `depth` layers of universal pieces through the free handles.
/// All free faces must be trivial.
pub fn thicken(gog: &GraphOfGroups, pre: &PreCovering, depth: usize, limits: &Limits) -> Result<PreCovering> {
    let mut catalog = BodyCatalog::default();
    let mut out = pre.clone();
    for layer in 0..depth {
        let real = realize(gog, &out, &mut catalog)?;
        let free = real.free_handles();
        drop(real);
        if let Some(h) = free.iter().find(|h| !h.face.is_trivial()) {
            return Err(Error::InvalidInput(format!("free handle of piece {} over {} has a nontrivial face", h.piece, h.dedge)));
        }
        if free.is_empty() {
            break;
        }
        for h in free {
            let q = out.pieces.len();
            out.pieces.push(Piece { vertex: gog.target(h.dedge), subgroup: Subgroup::trivial() });
            out.gluings.push(Gluing { a: h.piece, a_sheet: h.rep, edge: h.dedge.edge(), b: q, b_sheet: 0, element: 0 });
        }
        check_size(gog, &out.pieces, limits).map_err(|e| match e {
            Error::Resource(m) => Error::Resource(format!("{m} at thickening layer {}", layer + 1)),
            other => other,
        })?;
    }
    Ok(out)
}

/// The universal piece `N` at `target(d)` and the representatives of its
/// handles over the reverse of `d`.
#[derive(Clone, Debug)]
pub struct AssociatedTuple {
    pub dedge: DirEdge,
    pub universal: BodyType,
    pub lifts: Vec<usize>,
}

pub fn associated_tuple(gog: &GraphOfGroups, handle: &FreeHandle) -> Result<AssociatedTuple> {
    if !handle.face.is_trivial() {
        return Err(Error::InvalidInput(format!("handle over {} is not trivial", handle.dedge)));
    }
    let d = handle.dedge;
    let universal = BodyType::new(gog, gog.target(d), Subgroup::trivial());
    let lifts = universal.handles_along(gog, d.reverse()).iter().map(|h| h.rep).collect();
    Ok(AssociatedTuple { dedge: d, universal, lifts })
}

/// Every handle of the universal piece at `target(d)` that is not over the
/// reverse of `d` lies over a directed edge strictly below `d`.
pub fn edge_order_holds(gog: &GraphOfGroups, order: &EdgeOrder, d: DirEdge) -> bool {
    gog.incident(gog.target(d)).iter().all(|&f| f == d.reverse() || order.precedes(f, d))
}

/// One completion round.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RoundLog {
    pub round: usize,
    pub dedge: DirEdge,
    pub rank: usize,
    pub r: usize,
    pub s: usize,
    pub num_r: usize,
    pub num_s: usize,
    pub seed: u64,
    pub pieces: usize,
    pub sheets: usize,
}

#[derive(Clone, Debug)]
pub struct Completion {
    pub cover: PreCovering,
    pub log: Vec<RoundLog>,
}

/// Repeatedly glues copies of the current space to universal pieces along
/// the `≺`-largest free handles, following a star gluing with girth `c`,
/// until no free handle is left. The base stays in copy 0.
pub fn complete_cover(gog: &GraphOfGroups, y1: &PreCovering, c: usize, seed: u64, limits: &Limits) -> Result<Completion> {
    let order = EdgeOrder::new(gog);
    let mut catalog = BodyCatalog::default();
    let mut cur = y1.clone();
    let mut log = Vec::new();
    let mut previous: Option<usize> = None;
    loop {
        let real = realize(gog, &cur, &mut catalog)?;
        let free = real.free_handles();
        drop(real);
        let Some(top) = free.iter().map(|h| order.rank(h.dedge)).max() else {
            break;
        };
        if let Some(p) = previous {
            if top >= p {
                return Err(Error::InternalInconsistency(format!("largest free handle rank {top} did not drop below {p}")));
            }
        }
        let maximal: Vec<&FreeHandle> = free.iter().filter(|h| order.rank(h.dedge) == top).collect();
        let d = maximal[0].dedge;
        if maximal.iter().any(|h| h.dedge != d) {
            return Err(Error::InternalInconsistency("maximal free handles lie over different edges".into()));
        }
        if let Some(h) = maximal.iter().find(|h| !h.face.is_trivial()) {
            return Err(Error::InvalidInput(format!("free handle of piece {} over {d} is not trivial", h.piece)));
        }
        if !edge_order_holds(gog, &order, d) {
            return Err(Error::InternalInconsistency(format!("edge order violated at {d}")));
        }
        let tuple = associated_tuple(gog, maximal[0])?;
        let (r, s) = (maximal.len(), tuple.lifts.len());
        let round_seed = seed.wrapping_add(log.len() as u64);
        let schema = glue_stars(r, s, c, round_seed, limits)?;
        let n = cur.pieces.len();
        let projected = total_sheets(gog, &cur.pieces) * schema.num_r + schema.num_s * tuple.universal.degree();
        if projected > limits.max_sheets {
            return Err(Error::Resource(format!(
                "completion round {} needs {projected} sheets (limit {})",
                log.len() + 1,
                limits.max_sheets
            )));
        }
        let mut pieces = Vec::with_capacity(n * schema.num_r + schema.num_s);
        let mut gluings = Vec::with_capacity(cur.gluings.len() * schema.num_r + schema.matching.len());
        for copy in 0..schema.num_r {
            pieces.extend(cur.pieces.iter().cloned());
            let off = copy * n;
            gluings.extend(cur.gluings.iter().map(|g| Gluing { a: g.a + off, b: g.b + off, ..*g }));
        }
        let first_universal = pieces.len();
        let w = gog.target(d);
        pieces.extend((0..schema.num_s).map(|_| Piece { vertex: w, subgroup: Subgroup::trivial() }));
        for &[i, j] in &schema.matching {
            let a = maximal[i % r];
            gluings.push(Gluing {
                a: (i / r) * n + a.piece,
                a_sheet: a.rep,
                edge: d.edge(),
                b: first_universal + j / s,
                b_sheet: tuple.lifts[j % s],
                element: 0,
            });
        }
        cur = PreCovering { pieces, gluings, base: cur.base };
        log.push(RoundLog {
            round: log.len() + 1,
            dedge: d,
            rank: top,
            r,
            s,
            num_r: schema.num_r,
            num_s: schema.num_s,
            seed: round_seed,
            pieces: cur.pieces.len(),
            sheets: projected,
        });
        previous = Some(top);
    }
    let real = realize(gog, &cur, &mut catalog)?;
    let counts = real.sheet_counts();
    if counts.iter().any(|&k| k != counts[0]) {
        return Err(Error::InternalInconsistency(format!("sheet counts differ across vertices: {counts:?}")));
    }
    Ok(Completion { cover: cur, log })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::covering::fold_subgroup;
    use crate::gog::{standard, GPath};

    #[test]
    fn s3_face_closes_in_one_step() {
        let g = standard::s3_c2_s3(0);
        let y = PreCovering::single(0, g.vertex_group(0).whole());
        let closed = close_nontrivial_faces(&g, &y, &Limits::default()).unwrap();
        assert_eq!(closed.pieces.len(), 2);
        assert_eq!(closed.pieces[1].subgroup.order(), 2);
        let real = closed.realize(&g).unwrap();
        assert!(real.free_handles().iter().all(|h| h.face.is_trivial()));
    }

    #[test]
    fn central_amalgam_hits_the_cap() {
        let g = standard::c4_c2_c6();
        let y = PreCovering::single(0, g.vertex_group(0).whole());
        let err = close_nontrivial_faces(&g, &y, &Limits::default()).unwrap_err();
        assert!(matches!(err, Error::NormalizerConditionFails(_)), "{err}");
    }

    #[test]
    fn thicken_one_layer() {
        let g = standard::psl2z();
        let y = PreCovering::single(1, Subgroup::trivial());
        assert_eq!(thicken(&g, &y, 0, &Limits::default()).unwrap(), y);
        let t = thicken(&g, &y, 1, &Limits::default()).unwrap();
        assert_eq!(t.pieces.len(), 4);
    }

    #[test]
    fn associated_tuples() {
        let g = standard::psl2z();
        let y = PreCovering::single(0, g.vertex_group(0).whole());
        let h = y.realize(&g).unwrap().free_handles()[0].clone();
        assert_eq!(associated_tuple(&g, &h).unwrap().lifts.len(), 3);
        let y = PreCovering::single(1, g.vertex_group(1).whole());
        let h = y.realize(&g).unwrap().free_handles()[0].clone();
        assert_eq!(associated_tuple(&g, &h).unwrap().lifts.len(), 2);
        for (_, g) in standard::catalog() {
            let order = EdgeOrder::new(&g);
            assert!(g.dir_edges().all(|d| edge_order_holds(&g, &order, d)));
        }
    }

    #[test]
    fn psl2z_first_round() {
        let g = standard::psl2z();
        let a = GPath::parse("1@0", &g).unwrap();
        let y0 = fold_subgroup(&g, std::slice::from_ref(&a)).unwrap();
        let done = complete_cover(&g, &y0, 7, 3, &Limits::default()).unwrap();
        assert_eq!(done.log.len(), 1);
        assert_eq!((done.log[0].r, done.log[0].s), (1, 3));
        let real = done.cover.realize(&g).unwrap();
        assert!(real.is_complete());
        assert_eq!(real.lift(real.base_sheet(), &a).unwrap().end, real.base_sheet());
    }

    #[test]
    fn complete_cover_is_identity_on_covers() {
        let g = standard::psl2z();
        let y = PreCovering::single(0, g.vertex_group(0).whole());
        let once = complete_cover(&g, &y, 3, 0, &Limits::default()).unwrap().cover;
        let twice = complete_cover(&g, &once, 3, 0, &Limits::default()).unwrap();
        assert!(twice.log.is_empty());
        assert_eq!(twice.cover, once);
    }

    #[test]
    fn three_vertex_completion() {
        let g = standard::three_vertex_path();
        let y0 = fold_subgroup(&g, &[]).unwrap();
        let y1 = thicken(&g, &close_nontrivial_faces(&g, &y0, &Limits::default()).unwrap(), 3, &Limits::default()).unwrap();
        let done = complete_cover(&g, &y1, 3, 1, &Limits::default()).unwrap();
        let ranks: Vec<usize> = done.log.iter().map(|l| l.rank).collect();
        assert!(ranks.windows(2).all(|w| w[0] > w[1]));
        assert!(done.cover.realize(&g).unwrap().is_complete());
    }
}
