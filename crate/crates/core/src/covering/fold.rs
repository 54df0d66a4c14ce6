//! Folding a finitely generated subgroup into a pre-covering.
//!
//! Each generator is traced through fresh universal pieces, one per vertex
//! visit. Points `(node, g)` of these pieces are then identified by a union
//! find that respects the right action of the vertex groups: merging two
//! points identifies their whole nodes up to left multiplication, and a
//! self-identification grows the node's body subgroup. Edge crossings that
//! start in the same handle force their targets together.

use std::collections::{BTreeMap, HashMap, VecDeque};

use super::body::BodyCatalog;
use super::precover::{Basepoint, Gluing, Piece, PreCovering};
use crate::error::{Error, Result};
use crate::gog::{DirEdge, GPath, GraphOfGroups, Subgroup};

/// Crossing `d` from `(owner, from)` reaches `(node, to)`, and more
/// generally `from . rho^i(x)` reaches `to . rho^t(x)`.
#[derive(Clone, Copy, Debug)]
struct Link {
    d: DirEdge,
    from: usize,
    node: usize,
    to: usize,
}

struct Folder<'g> {
    gog: &'g GraphOfGroups,
    vertex: Vec<usize>,
    /// `(node, x) ~ (parent, label . x)`.
    parent: Vec<usize>,
    label: Vec<usize>,
    /// Left stabilizer of a root.
    body: Vec<Subgroup>,
    links: Vec<Vec<Link>>,
    dirty: VecDeque<usize>,
}

impl<'g> Folder<'g> {
    fn new(gog: &'g GraphOfGroups) -> Self {
        let mut f = Folder { gog, vertex: Vec::new(), parent: Vec::new(), label: Vec::new(), body: Vec::new(), links: Vec::new(), dirty: VecDeque::new() };
        f.add_node(gog.base());
        f
    }

    fn add_node(&mut self, v: usize) -> usize {
        let n = self.vertex.len();
        self.vertex.push(v);
        self.parent.push(n);
        self.label.push(0);
        self.body.push(Subgroup::trivial());
        self.links.push(Vec::new());
        n
    }

    /// Root of `n` and the label `l` with `(n, x) ~ (root, l . x)`.
    fn find(&mut self, n: usize) -> (usize, usize) {
        let p = self.parent[n];
        if p == n {
            return (n, 0);
        }
        let (root, l) = self.find(p);
        let group = self.gog.vertex_group(self.vertex[n]);
        let composed = group.mul(l, self.label[n]);
        self.parent[n] = root;
        self.label[n] = composed;
        (root, composed)
    }

    /// Identifies `(m, a)` with `(n, b)`. Returns true if anything changed.
    fn merge(&mut self, m: usize, a: usize, n: usize, b: usize) -> bool {
        let (r1, l1) = self.find(m);
        let (r2, l2) = self.find(n);
        let group = self.gog.vertex_group(self.vertex[r1]);
        let u = group.mul(l1, a);
        let w = group.mul(l2, b);
        if r1 == r2 {
            // (r, x) ~ (r, w u^-1 x)
            let g = group.mul(w, group.inv(u));
            if self.body[r1].contains(g) {
                return false;
            }
            let mut gens = self.body[r1].elements().to_vec();
            gens.push(g);
            self.body[r1] = group.generate(&gens);
            self.dirty.push_back(r1);
            return true;
        }
        // (r2, x) ~ (r1, u w^-1 x)
        let lambda = group.mul(u, group.inv(w));
        let moved: Vec<usize> = self.body[r2].elements().iter().map(|&p| group.mul(group.mul(lambda, p), group.inv(lambda))).collect();
        let mut gens = self.body[r1].elements().to_vec();
        gens.extend(moved);
        self.body[r1] = group.generate(&gens);
        self.parent[r2] = r1;
        self.label[r2] = lambda;
        let links = std::mem::take(&mut self.links[r2]);
        for mut l in links {
            l.from = group.mul(lambda, l.from);
            self.links[r1].push(l);
        }
        self.dirty.push_back(r1);
        true
    }

    fn add_link(&mut self, m: usize, from: usize, d: DirEdge, n: usize, to: usize) {
        let (r, l) = self.find(m);
        let from = self.gog.vertex_group(self.vertex[r]).mul(l, from);
        self.links[r].push(Link { d, from, node: n, to });
        self.dirty.push_back(r);
    }

    /// Smallest element of the double coset `P g rho^i(G_e)`.
    fn handle_key(&self, r: usize, d: DirEdge, g: usize) -> usize {
        let group = self.gog.vertex_group(self.vertex[r]);
        let img = self.gog.image_i(d);
        self.body[r]
            .elements()
            .iter()
            .flat_map(|&p| img.elements().iter().map(move |&y| group.mul(group.mul(p, g), y)))
            .min()
            .unwrap()
    }

    /// Applies all forced identifications at root `r`; true if `r` is
    /// still a root with deduplicated links afterwards.
    fn normalize(&mut self, r: usize) -> bool {
        if self.parent[r] != r {
            return false;
        }
        let gog = self.gog;
        let group = gog.vertex_group(self.vertex[r]);
        let mut groups: BTreeMap<(DirEdge, usize), Vec<Link>> = BTreeMap::new();
        for &l in &self.links[r] {
            groups.entry((l.d, self.handle_key(r, l.d, l.from))).or_default().push(l);
        }
        let body = self.body[r].clone();
        let mut merges = Vec::new();
        let mut kept = Vec::new();
        for ((d, _), list) in groups {
            let first = list[0];
            let eg = gog.edge_group(d);
            let w = gog.target(d);
            let wg = gog.vertex_group(w);
            for other in &list {
                // other.from = p . first.from . rho^i(x) for some p in P
                for x in 0..eg.order() {
                    let moved = group.mul(first.from, gog.rho_i(d, x));
                    if body.contains(group.mul(other.from, group.inv(moved))) {
                        merges.push((first.node, wg.mul(first.to, gog.rho_t(d, x)), other.node, other.to));
                    }
                }
            }
            kept.push(first);
        }
        self.links[r] = kept;
        let mut changed = false;
        for (m, a, n, b) in merges {
            changed |= self.merge(m, a, n, b);
        }
        !changed
    }

    fn run(&mut self) {
        while let Some(r) = self.dirty.pop_front() {
            if !self.normalize(r) && self.parent[r] == r {
                self.dirty.push_back(r);
            }
        }
    }

    fn trace(&mut self, path: &GPath) {
        let gog = self.gog;
        let mut node = 0;
        let mut at = 0;
        for (s, &g) in path.elements().iter().enumerate() {
            at = gog.vertex_group(self.vertex[node]).mul(at, g);
            if let Some(&d) = path.edges().get(s) {
                let next = self.add_node(gog.target(d));
                self.add_link(node, at, d, next, 0);
                self.add_link(next, 0, d.reverse(), node, at);
                node = next;
                at = 0;
            }
        }
        self.merge(node, at, 0, 0);
    }

    /// Smallest point `p . f . rho^i(y)` of the handle through `f`, in piece
    /// coordinates where the body subgroup is `body`, with its `y`.
    fn canonical_point(&self, v: usize, body: &Subgroup, d: DirEdge, f: usize) -> (usize, usize) {
        let group = self.gog.vertex_group(v);
        let eg = self.gog.edge_group(d);
        let mut best = (usize::MAX, 0);
        for &p in body.elements() {
            for y in 0..eg.order() {
                let c = group.mul(group.mul(p, f), self.gog.rho_i(d, y));
                best = best.min((c, y));
            }
        }
        best
    }

    /// Reads off the quotient: pieces in BFS order from the base. Each piece
    /// is given coordinates in which the canonical point of the handle it is
    /// first reached through is the identity, so the output depends only on
    /// the subgroup, not on the generators.
    fn extract(&mut self, catalog: &mut BodyCatalog) -> PreCovering {
        let gog = self.gog;
        let (base_root, base_label) = self.find(0);
        let n = self.vertex.len();
        // piece coordinate of (root, x) is mu . x
        let mut mu = vec![0; n];
        mu[base_root] = gog.vertex_group(self.vertex[base_root]).inv(base_label);
        let mut index: HashMap<usize, usize> = HashMap::from([(base_root, 0)]);
        let mut order = vec![base_root];
        let mut i = 0;
        while i < order.len() {
            let r = order[i];
            let v = self.vertex[r];
            let group = gog.vertex_group(v);
            let body = group.conjugate(&self.body[r], group.inv(mu[r]));
            let mut keyed: Vec<(DirEdge, usize, usize, Link)> = self.links[r]
                .iter()
                .map(|&l| {
                    let (c, y) = self.canonical_point(v, &body, l.d, group.mul(mu[r], l.from));
                    (l.d, c, y, l)
                })
                .collect();
            keyed.sort_by_key(|&(d, c, _, _)| (d, c));
            for (d, _, y, l) in keyed {
                let (t, lt) = self.find(l.node);
                if let std::collections::hash_map::Entry::Vacant(e) = index.entry(t) {
                    e.insert(order.len());
                    order.push(t);
                    let wg = gog.vertex_group(self.vertex[t]);
                    let z = wg.mul(wg.mul(lt, l.to), gog.rho_t(d, y));
                    mu[t] = wg.inv(z);
                }
            }
            i += 1;
        }
        let pieces: Vec<Piece> = order
            .iter()
            .map(|&r| {
                let group = gog.vertex_group(self.vertex[r]);
                Piece { vertex: self.vertex[r], subgroup: group.conjugate(&self.body[r], group.inv(mu[r])) }
            })
            .collect();
        let types: Vec<_> = pieces.iter().map(|p| catalog.get(gog, p.vertex, &p.subgroup)).collect();
        let mut gluings = Vec::new();
        for (a, &r) in order.iter().enumerate() {
            for l in self.links[r].clone() {
                if !l.d.is_forward() {
                    continue;
                }
                let (t, lt) = self.find(l.node);
                let b = index[&t];
                let (ga, gb) = (gog.vertex_group(self.vertex[r]), gog.vertex_group(self.vertex[t]));
                let ta = &types[a];
                let tb = &types[b];
                let sheet_a = ta.act(gog, 0, ga.mul(mu[r], l.from));
                let sheet_b = tb.act(gog, 0, gb.mul(mu[t], gb.mul(lt, l.to)));
                let pa = gog.incident_position(l.d);
                let (ha, x) = ta.handle_of(pa, sheet_a);
                let eg = gog.edge_group(l.d);
                let j0 = tb.act(gog, sheet_b, gog.rho_t(l.d, eg.inv(x)));
                let pb = gog.incident_position(l.d.reverse());
                let (hb, y) = tb.handle_of(pb, j0);
                gluings.push(Gluing {
                    a,
                    a_sheet: ta.handles(pa)[ha].rep,
                    edge: l.d.edge(),
                    b,
                    b_sheet: tb.handles(pb)[hb].rep,
                    element: y,
                });
            }
        }
        // Backward links describe the same gluings; only add ones whose
        // forward copy was dropped during deduplication.
        for (b, &t) in order.iter().enumerate() {
            for l in self.links[t].clone() {
                if l.d.is_forward() {
                    continue;
                }
                let (r, lr) = self.find(l.node);
                let a = index[&r];
                let f = l.d.reverse();
                let ta = &types[a];
                let pa = gog.incident_position(f);
                let ga = gog.vertex_group(self.vertex[r]);
                let sheet_a = ta.act(gog, 0, ga.mul(mu[r], ga.mul(lr, l.to)));
                let (ha, _) = ta.handle_of(pa, sheet_a);
                let rep = ta.handles(pa)[ha].rep;
                if gluings.iter().any(|g| g.a == a && g.edge == f.edge() && g.a_sheet == rep) {
                    continue;
                }
                let gb = gog.vertex_group(self.vertex[t]);
                let tb = &types[b];
                let sheet_b = tb.act(gog, 0, gb.mul(mu[t], l.from));
                let (_, x) = ta.handle_of(pa, sheet_a);
                let eg = gog.edge_group(f);
                let j0 = tb.act(gog, sheet_b, gog.rho_t(f, eg.inv(x)));
                let pb = gog.incident_position(l.d);
                let (hb, y) = tb.handle_of(pb, j0);
                gluings.push(Gluing { a, a_sheet: rep, edge: f.edge(), b, b_sheet: tb.handles(pb)[hb].rep, element: y });
            }
        }
        gluings.sort_by_key(|g| (g.a, g.edge, g.a_sheet));
        PreCovering { pieces, gluings, base: Basepoint { piece: 0, sheet: 0 } }
    }
}

/// Folds closed paths at the base vertex into a pre-covering whose
/// fundamental group at the base sheet is the subgroup they generate.
pub fn fold_subgroup(gog: &GraphOfGroups, gens: &[GPath]) -> Result<PreCovering> {
    for g in gens {
        if !g.is_closed_at(gog, gog.base()) {
            return Err(Error::InvalidInput(format!("generator `{}` is not closed at the base vertex", g.display(gog))));
        }
    }
    let mut folder = Folder::new(gog);
    for g in gens {
        folder.trace(&g.reduce(gog));
        folder.run();
    }
    folder.dirty.push_back(0);
    folder.run();
    let mut catalog = BodyCatalog::default();
    let pre = folder.extract(&mut catalog);
    let real = pre
        .realize_with(gog, &mut catalog)
        .map_err(|r| Error::InternalInconsistency(format!("folded pre-covering is invalid: {r}")))?;
    // Unreduced paths may backtrack through handles the fold leaves free.
    for g in gens {
        match real.lift(real.base_sheet(), &g.reduce(gog)) {
            Some(l) if l.end == real.base_sheet() => {}
            _ => {
                return Err(Error::InternalInconsistency(format!("generator `{}` does not lift to a loop", g.display(gog))));
            }
        }
    }
    Ok(pre)
}
