//! Finite-index witnesses for finite trees of finite groups.
//!
//! The covering of `H1` is folded, closed through its nontrivial faces,
//! thickened by `C = 2 max |h| + 3` layers of universal pieces and completed
//! by star gluings of girth `C`. Its base sheet has stabilizer `H3 >= H1` of
//! finite index, and `H2` is conjugate into `H3` exactly when the `H2`
//! generators fix a common sheet, so the certificate is the list of sheet
//! permutations.

use std::collections::{HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::config::Limits;
use crate::covering::{
    close_nontrivial_faces, complete_cover, fold_subgroup, thicken, PreCovering, Realization, RoundLog,
};
use crate::error::{Error, Result};
use crate::free_witness::SCHEMA_VERSION;
use crate::gog::{check_normalizer_condition, DirEdge, GPath, GraphOfGroups, NormalizerVerdict};
use crate::perm::{common_fixed_points, Perm};
use crate::permgroup::{exhaustive_nonconjugacy, ExhaustiveCheck};
use crate::verify::{ensure, Rejection, Verdict};

/// `2 max |h| + 3`. Errors when every generator has length zero.
pub fn vf_constant(gog: &GraphOfGroups, h2: &[GPath]) -> Result<usize> {
    let max = max_length(gog, h2)?;
    if max == 0 {
        return Err(Error::InvalidInput("every H2 generator has length 0".into()));
    }
    Ok(2 * max + 3)
}

fn max_length(gog: &GraphOfGroups, gens: &[GPath]) -> Result<usize> {
    gens.iter().map(|h| h.length(gog)).try_fold(0, |m, l| l.map(|l| m.max(l)))
}

/// The constant used by the pipeline: the same formula, also for generators
/// inside the base vertex group (giving 3). Only a trivial `H2` is refused.
pub fn pipeline_constant(gog: &GraphOfGroups, h2: &[GPath]) -> Result<usize> {
    let max = max_length(gog, h2)?;
    if h2.iter().all(|h| h.is_trivial(gog)) {
        return Err(Error::InvalidInput("H2 is trivial, so it is conjugate into every subgroup".into()));
    }
    Ok(2 * max + 3)
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct VfOptions {
    /// Proceed even if the normalizer condition is not verified.
    pub assume_normalizer_condition: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormalizerRecord {
    #[serde(flatten)]
    pub verdict: NormalizerVerdict,
    pub assumed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CosetTables {
    pub h1: Vec<Perm>,
    pub h2: Vec<Perm>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VfChecks {
    pub h1_fixes_base: bool,
    pub h2_no_common_fixed_point: bool,
}

/// Shape of `H3`: the completed cover consists of `y1_copies` copies of the
/// thickened core (`y1_pieces` pieces each) and `universal_pieces` extra
/// universal pieces. Recorded, not verified.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Decomposition {
    pub core_pieces: usize,
    pub y1_pieces: usize,
    pub y1_copies: usize,
    pub universal_pieces: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VfWitnessCertificate {
    pub v: u32,
    pub gog: GraphOfGroups,
    pub h1: Vec<String>,
    pub h2: Vec<String>,
    pub c: usize,
    pub seed: u64,
    pub normalizer: NormalizerRecord,
    pub cover: PreCovering,
    /// Number of sheets over each vertex.
    pub sheets: usize,
    /// Index of the base sheet among the sheets over the base vertex.
    pub base_sheet: usize,
    pub coset_tables: CosetTables,
    pub checks: VfChecks,
    pub build_log: Vec<RoundLog>,
    pub decomposition: Decomposition,
}

impl VfWitnessCertificate {
    pub fn h1_paths(&self) -> Result<Vec<GPath>> {
        parse_paths(&self.h1, &self.gog)
    }

    pub fn h2_paths(&self) -> Result<Vec<GPath>> {
        parse_paths(&self.h2, &self.gog)
    }
}

fn parse_paths(list: &[String], gog: &GraphOfGroups) -> Result<Vec<GPath>> {
    list.iter()
        .map(|s| {
            let p = GPath::parse(s, gog)?;
            if !p.is_closed_at(gog, gog.base()) {
                return Err(Error::InvalidInput(format!("`{s}` is not closed at the base vertex")));
            }
            Ok(p)
        })
        .collect()
}

fn texts(gog: &GraphOfGroups, paths: &[GPath]) -> Vec<String> {
    paths.iter().map(|p| p.display(gog).to_string()).collect()
}

fn coset_tables(real: &Realization<'_>, paths: &[GPath]) -> Result<Vec<Perm>> {
    paths
        .iter()
        .map(|p| {
            real.coset_action(p)
                .and_then(Perm::from_images)
                .ok_or_else(|| Error::InternalInconsistency(format!("`{p}` does not act on the completed cover")))
        })
        .collect()
}

fn normalizer_gate(gog: &GraphOfGroups, options: VfOptions) -> Result<NormalizerRecord> {
    let verdict = check_normalizer_condition(gog);
    if !verdict.holds() && !options.assume_normalizer_condition {
        let detail = match &verdict {
            NormalizerVerdict::Fails { edge, subgroup, .. } => {
                format!("it fails: edge group subgroup {:?} of edge {edge} fixes an infinite subtree", subgroup.elements())
            }
            NormalizerVerdict::Unknown { reason } => reason.clone(),
            NormalizerVerdict::Holds => unreachable!(),
        };
        return Err(Error::NormalizerConditionUnverified(detail));
    }
    Ok(NormalizerRecord { verdict, assumed: options.assume_normalizer_condition })
}

/// A path from the base sheet to `target`, found by breadth-first search
/// over sheets.
fn path_to_sheet(real: &Realization<'_>, target: usize) -> GPath {
    let gog = real.gog();
    let start = real.base_sheet();
    // parent[s] = (previous sheet, element applied there, edge crossed)
    let mut parent: HashMap<usize, (usize, usize, DirEdge)> = HashMap::new();
    let mut seen = vec![false; real.num_sheets()];
    seen[start] = true;
    let mut queue = VecDeque::from([start]);
    let mut found = None;
    'bfs: while let Some(s) = queue.pop_front() {
        let v = real.vertex_of(s);
        for g in 0..gog.vertex_group(v).order() {
            let t = real.act(s, g);
            if t == target {
                found = Some((s, g));
                break 'bfs;
            }
            for &d in gog.incident(v) {
                if let Some(u) = real.cross(t, d) {
                    if !seen[u] {
                        seen[u] = true;
                        parent.insert(u, (s, g, d));
                        queue.push_back(u);
                    }
                }
            }
        }
    }
    let (mut s, last) = found.expect("the cover is connected");
    let mut elements = vec![last];
    let mut edges = Vec::new();
    while let Some(&(p, g, d)) = parent.get(&s) {
        elements.push(g);
        edges.push(d);
        s = p;
    }
    elements.reverse();
    edges.reverse();
    GPath::new(gog, gog.base(), elements, edges).expect("sheet walk is a path")
}

/// Builds and self-checks a witness that `<h2>` is not conjugate into any
/// finite-index subgroup containing `<h1>` built here, hence not into `<h1>`.
pub fn vf_sics_witness(
    gog: &GraphOfGroups,
    h1: &[GPath],
    h2: &[GPath],
    seed: u64,
    options: VfOptions,
    limits: &Limits,
) -> Result<VfWitnessCertificate> {
    for p in h1.iter().chain(h2) {
        if !p.is_closed_at(gog, gog.base()) {
            return Err(Error::InvalidInput(format!("`{}` is not closed at the base vertex", p.display(gog))));
        }
    }
    let c = pipeline_constant(gog, h2)?;
    let normalizer = normalizer_gate(gog, options)?;
    let y0 = close_nontrivial_faces(gog, &fold_subgroup(gog, h1)?, limits)?;
    let y1 = thicken(gog, &y0, c, limits)?;
    let done = complete_cover(gog, &y1, c, seed, limits)?;
    let real = done.cover.realize(gog).map_err(|r| Error::InternalInconsistency(format!("completed cover is invalid: {r}")))?;
    let sheets = real.sheet_counts()[0];
    let base_sheet = real.base_index();
    let t1 = coset_tables(&real, h1)?;
    let t2 = coset_tables(&real, h2)?;
    if let Some(p) = t1.iter().position(|p| !p.fixes(base_sheet)) {
        return Err(Error::InternalInconsistency(format!("H1 generator {p} moves the base sheet")));
    }
    let fixed = common_fixed_points(sheets, &t2);
    if let Some(&f) = fixed.first() {
        let sheet = real.sheets_over(gog.base())[f];
        let g = path_to_sheet(&real, sheet);
        return Err(Error::ConjugateIntoDetected { sheet: f, conjugator: g.inverse(gog).reduce(gog) });
    }
    let y1_copies = done.log.iter().map(|l| l.num_r).product();
    let universal_pieces = done.log.iter().rev().fold(0, |acc, l| acc * l.num_r + l.num_s);
    drop(real);
    Ok(VfWitnessCertificate {
        v: SCHEMA_VERSION,
        gog: gog.clone(),
        h1: texts(gog, h1),
        h2: texts(gog, h2),
        c,
        seed,
        normalizer,
        cover: done.cover,
        sheets,
        base_sheet,
        coset_tables: CosetTables { h1: t1, h2: t2 },
        checks: VfChecks { h1_fixes_base: true, h2_no_common_fixed_point: true },
        build_log: done.log,
        decomposition: Decomposition { core_pieces: y0.pieces.len(), y1_pieces: y1.pieces.len(), y1_copies, universal_pieces },
    })
}

/// Re-derives everything checkable from the certificate alone.
pub fn verify_vf_certificate(cert: &VfWitnessCertificate) -> Verdict {
    ensure(cert.v == SCHEMA_VERSION, "schema_version", || format!("unsupported version {}", cert.v))?;
    let gog = &cert.gog;
    let h1 = cert.h1_paths().map_err(|e| Rejection::new("bad_h1", e.to_string()))?;
    let h2 = cert.h2_paths().map_err(|e| Rejection::new("bad_h2", e.to_string()))?;
    let c = pipeline_constant(gog, &h2).map_err(|e| Rejection::new("trivial_h2", e.to_string()))?;
    ensure(cert.c == c, "bound_mismatch", || format!("C recorded as {} but 2 max|h| + 3 = {c}", cert.c))?;
    let verdict = check_normalizer_condition(gog);
    ensure(verdict == cert.normalizer.verdict, "normalizer_mismatch", || {
        format!("recorded verdict {} but the check gives {}", cert.normalizer.verdict.label(), verdict.label())
    })?;
    ensure(verdict.holds() || cert.normalizer.assumed, "normalizer_unverified", || {
        format!("normalizer condition {} and not assumed", verdict.label())
    })?;
    let real = cert.cover.realize(gog).map_err(|r| Rejection::new("cover_invalid", r.to_string()))?;
    ensure(real.is_complete(), "free_handles", || format!("{} free handles remain", real.free_handles().len()))?;
    let counts = real.sheet_counts();
    ensure(counts.iter().all(|&k| k == cert.sheets), "sheet_count", || {
        format!("sheet counts {counts:?}, recorded {}", cert.sheets)
    })?;
    ensure(real.vertex_of(real.base_sheet()) == gog.base(), "base_mismatch", || "base sheet is not over the base vertex".into())?;
    ensure(real.base_index() == cert.base_sheet, "base_mismatch", || {
        format!("base sheet is {} but {} was recorded", real.base_index(), cert.base_sheet)
    })?;
    let t1 = coset_tables(&real, &h1).map_err(|e| Rejection::new("coset_table_mismatch", e.to_string()))?;
    let t2 = coset_tables(&real, &h2).map_err(|e| Rejection::new("coset_table_mismatch", e.to_string()))?;
    ensure(t1 == cert.coset_tables.h1 && t2 == cert.coset_tables.h2, "coset_table_mismatch", || {
        "recorded coset tables differ from the cover".into()
    })?;
    if let Some(i) = t1.iter().position(|p| !p.fixes(cert.base_sheet)) {
        return Err(Rejection::new("h1_not_contained", format!("`{}` moves the base sheet", cert.h1[i])));
    }
    let fixed = common_fixed_points(cert.sheets, &t2);
    ensure(fixed.is_empty(), "h2_fixed_point", || format!("H2 fixes sheet {}", fixed[0]))?;
    ensure(cert.checks.h1_fixes_base && cert.checks.h2_no_common_fixed_point, "recorded_checks", || {
        "recorded checks are not all true".into()
    })?;
    Ok(())
}

pub fn verify_vf_certificate_json(text: &str) -> Verdict {
    let cert: VfWitnessCertificate = serde_json::from_str(text).map_err(|e| Rejection::new("malformed", e.to_string()))?;
    verify_vf_certificate(&cert)
}

/// One generator of `G` and its sheet permutation.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GeneratorImage {
    pub path: String,
    pub perm: Perm,
}

/// The action of `G` on the sheets over the base vertex.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VfQuotient {
    pub degree: usize,
    pub base_sheet: usize,
    /// Every nontrivial vertex-group element, conjugated to the base along
    /// the tree.
    pub generators: Vec<GeneratorImage>,
    pub h1_images: Vec<Perm>,
    pub h2_images: Vec<Perm>,
    pub h1_fix_base: bool,
    pub h2_common_fixed: Vec<usize>,
    pub exhaustive: ExhaustiveCheck,
}

impl VfQuotient {
    pub fn pattern_holds(&self) -> bool {
        self.h1_fix_base && self.h2_common_fixed.is_empty()
    }
}

pub fn vf_quotient_witness(cert: &VfWitnessCertificate, limits: &Limits) -> Result<VfQuotient> {
    verify_vf_certificate(cert).map_err(|r| Error::VerificationFailed(r.to_string()))?;
    let gog = &cert.gog;
    let real = cert.cover.realize(gog).map_err(|r| Error::VerificationFailed(r.to_string()))?;
    let mut generators = Vec::new();
    for v in 0..gog.num_vertices() {
        for g in 1..gog.vertex_group(v).order() {
            let path = GPath::conjugated_vertex_element(gog, v, g)?;
            let perm = coset_tables(&real, std::slice::from_ref(&path))?.remove(0);
            generators.push(GeneratorImage { path: path.display(gog).to_string(), perm });
        }
    }
    let h1_images = cert.coset_tables.h1.clone();
    let h2_images = cert.coset_tables.h2.clone();
    let h1_fix_base = h1_images.iter().all(|p| p.fixes(cert.base_sheet));
    let h2_common_fixed = common_fixed_points(cert.sheets, &h2_images);
    let gens: Vec<Perm> = generators.iter().map(|g| g.perm.clone()).collect();
    let exhaustive = exhaustive_nonconjugacy(&gens, &h1_images, &h2_images, cert.sheets, limits.exhaustive_order);
    Ok(VfQuotient { degree: cert.sheets, base_sheet: cert.base_sheet, generators, h1_images, h2_images, h1_fix_base, h2_common_fixed, exhaustive })
}

/// Membership in `<h1>` by lifting reduced paths into a pre-covering that
/// contains the core of `<h1>`.
pub struct MembershipOracle<'g> {
    gog: &'g GraphOfGroups,
    real: Realization<'g>,
}

impl<'g> MembershipOracle<'g> {
    pub fn new(gog: &'g GraphOfGroups, h1: &[GPath], limits: &Limits) -> Result<(Self, PreCovering)> {
        let pre = close_nontrivial_faces(gog, &fold_subgroup(gog, h1)?, limits)?;
        let real = pre.realize(gog).map_err(|r| Error::InternalInconsistency(r.to_string()))?;
        Ok((MembershipOracle { gog, real }, pre))
    }

    pub fn contains(&self, g: &GPath) -> bool {
        let r = g.reduce(self.gog);
        matches!(self.real.lift(self.real.base_sheet(), &r), Some(l) if l.end == self.real.base_sheet())
    }

    /// True iff `g^-1 h g` lies in `<h1>` for every `h` in `h2`.
    pub fn conjugates_into(&self, h2: &[GPath], g: &GPath) -> bool {
        let gi = g.inverse(self.gog);
        h2.iter().all(|h| {
            let c = gi.concat(self.gog, h).and_then(|x| x.concat(self.gog, g));
            c.map(|c| self.contains(&c)).unwrap_or(false)
        })
    }
}

/// Reduced closed paths at the base with exactly `len` edges, one per
/// element, in normal form.
pub fn closed_paths_of_length(gog: &GraphOfGroups, len: usize) -> Vec<GPath> {
    let base = gog.base();
    let mut out = Vec::new();
    let mut elements = Vec::new();
    let mut edges = Vec::new();
    walk(gog, base, len, &mut elements, &mut edges, &mut out);
    out
}

fn walk(gog: &GraphOfGroups, v: usize, remaining: usize, elements: &mut Vec<usize>, edges: &mut Vec<DirEdge>, out: &mut Vec<GPath>) {
    let base = gog.base();
    let group = gog.vertex_group(v);
    if remaining == 0 {
        if v == base {
            for g in 0..group.order() {
                elements.push(g);
                out.push(GPath::new(gog, base, elements.clone(), edges.clone()).expect("walk is a path"));
                elements.pop();
            }
        }
        return;
    }
    if gog.tree_path(v, base).len() > remaining {
        return;
    }
    for &d in gog.incident(v) {
        let img = gog.image_i(d);
        for g in 0..group.order() {
            // smallest element of g rho^i(G_e) only
            if img.elements().iter().any(|&y| group.mul(g, y) < g) {
                continue;
            }
            if let Some(&f) = edges.last() {
                if d == f.reverse() && img.contains(g) {
                    continue;
                }
            }
            elements.push(g);
            edges.push(d);
            walk(gog, gog.target(d), remaining - 1, elements, edges, out);
            edges.pop();
            elements.pop();
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum VfDecision {
    /// `g^-1 H2 g <= H1`.
    ConjInto { conjugator: String },
    NotConjInto { certificate: Box<VfWitnessCertificate> },
}

/// Conjugators of length at most `max(2, max |h|)` are searched before a
/// witness is built.
const SHORT_SEARCH: usize = 2;

/// Decides whether `<h2>` is conjugate into `<h1>`: a short conjugator
/// search, then a witness, then a longer search if the witness detects
/// conjugacy into its finite-index overgroup.
pub fn vf_conj_into_decide(
    gog: &GraphOfGroups,
    h1: &[GPath],
    h2: &[GPath],
    seed: u64,
    options: VfOptions,
    limits: &Limits,
) -> Result<VfDecision> {
    normalizer_gate(gog, options)?;
    let (oracle, _) = MembershipOracle::new(gog, h1, limits)?;
    let found = |len: usize| closed_paths_of_length(gog, len).into_iter().find(|g| oracle.conjugates_into(h2, g));
    let conj = |g: GPath| VfDecision::ConjInto { conjugator: g.display(gog).to_string() };
    if h2.iter().all(|h| h.is_trivial(gog)) {
        return Ok(conj(GPath::identity(gog.base())));
    }
    let short = SHORT_SEARCH.max(max_length(gog, h2)?).min(limits.max_conjugator_length);
    for len in 0..=short {
        if let Some(g) = found(len) {
            return Ok(conj(g));
        }
    }
    match vf_sics_witness(gog, h1, h2, seed, options, limits) {
        Ok(certificate) => return Ok(VfDecision::NotConjInto { certificate: Box::new(certificate) }),
        Err(Error::ConjugateIntoDetected { conjugator, .. }) => {
            if oracle.conjugates_into(h2, &conjugator) {
                return Ok(conj(conjugator));
            }
        }
        Err(e) => return Err(e),
    }
    for len in short + 1..=limits.max_conjugator_length {
        if let Some(g) = found(len) {
            return Ok(conj(g));
        }
    }
    Err(Error::Resource(format!(
        "no conjugator of length at most {} and the witness detected conjugacy into its overgroup",
        limits.max_conjugator_length
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gog::standard;

    fn paths(gog: &GraphOfGroups, list: &[&str]) -> Vec<GPath> {
        list.iter().map(|s| GPath::parse(s, gog).unwrap()).collect()
    }

    #[test]
    fn constants() {
        let g = standard::psl2z();
        assert_eq!(vf_constant(&g, &paths(&g, &["0@0 : 0 : 1@1 : 0 : 0@0"])).unwrap(), 7);
        assert!(vf_constant(&g, &paths(&g, &["1@0"])).is_err());
        assert_eq!(pipeline_constant(&g, &paths(&g, &["1@0"])).unwrap(), 3);
        assert!(pipeline_constant(&g, &paths(&g, &["0@0"])).is_err());
        let long = "0@0 : 0 : 1@1 : 0 : 1@0 : 0 : 1@1 : 0 : 1@0 : 0 : 1@1 : 0 : 0@0";
        assert_eq!(vf_constant(&g, &paths(&g, &["0@0 : 0 : 1@1 : 0 : 0@0", long])).unwrap(), 15);
    }

    #[test]
    fn psl2z_witness() {
        let g = standard::psl2z();
        let h1 = paths(&g, &["1@0"]);
        let h2 = paths(&g, &["0@0 : 0 : 1@1 : 0 : 0@0"]);
        let cert = vf_sics_witness(&g, &h1, &h2, 1, VfOptions::default(), &Limits::default()).unwrap();
        assert_eq!(cert.c, 7);
        assert_eq!(verify_vf_certificate(&cert), Ok(()));
        let back: VfWitnessCertificate = serde_json::from_str(&serde_json::to_string(&cert).unwrap()).unwrap();
        assert_eq!(back, cert);
        let q = vf_quotient_witness(&cert, &Limits::default()).unwrap();
        assert!(q.pattern_holds());
    }

    #[test]
    fn same_subgroup_is_detected() {
        let g = standard::psl2z();
        let h1 = paths(&g, &["1@0"]);
        let err = vf_sics_witness(&g, &h1, &h1, 1, VfOptions::default(), &Limits::default()).unwrap_err();
        match err {
            Error::ConjugateIntoDetected { conjugator, .. } => assert!(conjugator.is_trivial(&g) || conjugator.is_empty()),
            other => panic!("{other}"),
        }
    }

    #[test]
    fn normalizer_gate_blocks() {
        let g = standard::c4_c2_c6();
        let h1 = paths(&g, &["1@0"]);
        let h2 = paths(&g, &["0@0 : 0 : 1@1 : 0 : 0@0"]);
        let err = vf_sics_witness(&g, &h1, &h2, 1, VfOptions::default(), &Limits::default()).unwrap_err();
        assert!(matches!(err, Error::NormalizerConditionUnverified(_)));
        let forced = VfOptions { assume_normalizer_condition: true };
        let err = vf_sics_witness(&g, &h1, &h2, 1, forced, &Limits::default()).unwrap_err();
        assert!(matches!(err, Error::NormalizerConditionFails(_)), "{err}");
    }

    #[test]
    fn decide_examples() {
        let g = standard::psl2z();
        let a = paths(&g, &["1@0"]);
        let b = paths(&g, &["0@0 : 0 : 1@1 : 0 : 0@0"]);
        let l = Limits::default();
        assert!(matches!(vf_conj_into_decide(&g, &a, &b, 0, VfOptions::default(), &l).unwrap(), VfDecision::NotConjInto { .. }));
        assert!(matches!(vf_conj_into_decide(&g, &a, &a, 0, VfOptions::default(), &l).unwrap(), VfDecision::ConjInto { .. }));
        // a conjugated by b a b
        let bab = GPath::parse("0@0 : 0 : 1@1 : 0 : 1@0 : 0 : 1@1 : 0 : 0@0", &g).unwrap();
        let h2 = vec![bab.inverse(&g).concat(&g, &a[0]).unwrap().concat(&g, &bab).unwrap()];
        match vf_conj_into_decide(&g, &a, &h2, 0, VfOptions::default(), &l).unwrap() {
            VfDecision::ConjInto { conjugator } => {
                let c = GPath::parse(&conjugator, &g).unwrap();
                let (oracle, _) = MembershipOracle::new(&g, &a, &l).unwrap();
                assert!(oracle.conjugates_into(&h2, &c));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn closed_path_counts() {
        let g = standard::psl2z();
        // length 0: C2; length 2: 2 * 2 (rep at 0, nontrivial at 1) * ... one edge each way
        assert_eq!(closed_paths_of_length(&g, 0).len(), 2);
        assert_eq!(closed_paths_of_length(&g, 2).len(), 2 * 2 * 2);
    }
}
