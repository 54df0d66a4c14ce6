//! Finite-index witnesses that one subgroup of a free group is not conjugate
//! into another.
//!
//! Given `H1` and `H2` with `H2` not conjugate into `H1`, a regular cover `K`
//! of girth above `C = 2 max |h|` is glued onto the saturated core of `H1`,
//! one copy of `K` minus an edge per pair of outer edges. The result is a
//! finite cover `D` containing `H1` in which the `H2` generators share no
//! fixed sheet.

use serde::{Deserialize, Serialize};

use crate::config::Limits;
use crate::cover::PermCover;
use crate::error::{Error, Result};
use crate::kcover::{bound_for, build_k, GirthCertificate, KStrategy};
use crate::perm::{common_fixed_points, Perm};
use crate::permgroup::{exhaustive_nonconjugacy, ExhaustiveCheck};
use crate::subgroup_graph::{LabeledGraph, SubgroupGraph};
use crate::verify::{ensure, Rejection, Verdict};
use crate::words::{Alphabet, ReducedWord, WordText};

/// Certificate schema version.
pub const SCHEMA_VERSION: u32 = 1;

/// Glues copies of `K` minus one edge onto the saturated core of `h1`, one
/// copy per orbit of the star pairing. The basepoint stays at sheet 0.
pub fn build_delta(h1: &SubgroupGraph, k: &PermCover) -> Result<PermCover> {
    if !h1.is_saturated() {
        return Err(Error::InvalidInput("build_delta needs a saturated core".into()));
    }
    if k.alphabet() != h1.alphabet() {
        return Err(Error::InvalidInput("K and H1 use different alphabets".into()));
    }
    let alphabet = h1.alphabet();
    let star = h1.star_involution()?;
    let mut g: LabeledGraph = h1.graph().clone();
    for idx in star.orbit_representatives() {
        let line = &star.lines[idx];
        let (u, w, l) = (line.start, line.end(), line.letter);
        let p = (0..k.degree())
            .find(|&p| k.step(p, l) != p)
            .ok_or_else(|| Error::InvalidInput(format!("K has no non-loop edge labeled {}", alphabet.format_letter(l))))?;
        let q = k.step(p, l);
        // The removed edge in positive orientation.
        let (skip_src, skip_gen) = if l > 0 { (p, l as usize - 1) } else { (q, (-l) as usize - 1) };
        let mut map = vec![usize::MAX; k.degree()];
        map[p] = u;
        map[q] = w;
        for x in 0..k.degree() {
            if map[x] == usize::MAX {
                map[x] = g.add_vertex();
            }
        }
        for x in 0..k.degree() {
            for (i, perm) in k.perms().iter().enumerate() {
                if x == skip_src && i == skip_gen {
                    continue;
                }
                g.add_edge(map[x], i as i32 + 1, map[perm.apply(x)])?;
            }
        }
    }
    graph_to_cover(&g)
}

/// Converts a complete folded labeled graph into a permutation cover.
fn graph_to_cover(g: &LabeledGraph) -> Result<PermCover> {
    let alphabet = g.alphabet();
    let n = g.num_vertices();
    let mut perms = Vec::with_capacity(alphabet.rank());
    for i in 1..=alphabet.rank() as i32 {
        let mut images = Vec::with_capacity(n);
        for v in 0..n {
            let t = g.target(v, i).ok_or_else(|| {
                Error::InternalInconsistency(format!("vertex {v} lacks an outgoing {} edge", alphabet.format_letter(i)))
            })?;
            images.push(t as u32);
        }
        perms.push(
            Perm::from_images(images)
                .ok_or_else(|| Error::InternalInconsistency("glued graph is not folded".into()))?,
        );
    }
    PermCover::new(alphabet, perms).map_err(|e| Error::InternalInconsistency(format!("glued graph invalid: {e}")))
}

/// Outcomes recorded in a certificate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FreeChecks {
    pub h1_contained: bool,
    pub h2_no_fixed_point: bool,
}

/// Self-contained evidence that `H2` is not conjugate into `H1`: a finite
/// cover `d` containing `H1` whose `H2` permutations have no common fixed
/// sheet.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessCertificate {
    pub v: u32,
    pub rank: usize,
    pub h1: Vec<WordText>,
    pub h2: Vec<WordText>,
    /// `2 max |h|` over the H2 generators.
    pub c: usize,
    pub d: PermCover,
    pub index: usize,
    pub girth_part: GirthCertificate,
    pub checks: FreeChecks,
}

impl WitnessCertificate {
    pub fn h1_words(&self) -> Result<Vec<ReducedWord>> {
        let a = Alphabet::new(self.rank)?;
        self.h1.iter().map(|w| w.parse(a)).collect()
    }

    pub fn h2_words(&self) -> Result<Vec<ReducedWord>> {
        let a = Alphabet::new(self.rank)?;
        self.h2.iter().map(|w| w.parse(a)).collect()
    }
}

/// Builds and self-checks a certificate that `<h2>` is not conjugate into
/// `<h1>`.
pub fn sics_witness(
    alphabet: Alphabet,
    h1: &[ReducedWord],
    h2: &[ReducedWord],
    strategy: KStrategy,
    limits: &Limits,
) -> Result<WitnessCertificate> {
    let c = bound_for(h2)?;
    let g1 = SubgroupGraph::fold_generators(alphabet, h1)?;
    let g2 = SubgroupGraph::fold_generators(alphabet, h2)?;
    if let Some(conjugator) = SubgroupGraph::conj_into(&g2, &g1) {
        return Err(Error::ConjugateInto { conjugator });
    }
    let girth_part = build_k(alphabet, c, strategy, limits)?;
    let d = build_delta(&g1.saturate(), &girth_part.cover)?;
    if d.degree() > limits.max_sheets {
        return Err(Error::Resource(format!("D has {} sheets, cap {}", d.degree(), limits.max_sheets)));
    }
    let h1_contained = h1.iter().all(|w| d.contains(w));
    let images: Vec<Perm> = h2.iter().map(|w| d.coset_action(w)).collect();
    let h2_no_fixed_point = common_fixed_points(d.degree(), &images).is_empty();
    if !h1_contained {
        return Err(Error::VerificationFailed("an H1 generator is not a loop at the basepoint of D".into()));
    }
    if !h2_no_fixed_point {
        return Err(Error::VerificationFailed("the H2 generators share a fixed sheet of D".into()));
    }
    Ok(WitnessCertificate {
        v: SCHEMA_VERSION,
        rank: alphabet.rank(),
        h1: h1.iter().map(WordText::from).collect(),
        h2: h2.iter().map(WordText::from).collect(),
        c,
        index: d.degree(),
        d,
        girth_part,
        checks: FreeChecks { h1_contained, h2_no_fixed_point },
    })
}

/// Re-checks a certificate from its contents alone.
pub fn verify_certificate(cert: &WitnessCertificate) -> Verdict {
    ensure(cert.v == SCHEMA_VERSION, "schema_version", || format!("unsupported version {}", cert.v))?;
    let alphabet = Alphabet::new(cert.rank).map_err(|e| Rejection::new("bad_rank", e.to_string()))?;
    let h1 = cert.h1_words().map_err(|e| Rejection::new("bad_h1", e.to_string()))?;
    let h2 = cert.h2_words().map_err(|e| Rejection::new("bad_h2", e.to_string()))?;
    ensure(cert.d.alphabet() == alphabet, "rank_mismatch", || "D has a different rank".into())?;
    ensure(cert.girth_part.cover.alphabet() == alphabet, "rank_mismatch", || "K has a different rank".into())?;
    ensure(cert.index == cert.d.degree(), "index_mismatch", || {
        format!("index {} but D has {} sheets", cert.index, cert.d.degree())
    })?;
    ensure(cert.d.is_connected(), "disconnected", || "D is not connected".into())?;
    let c = bound_for(&h2).map_err(|e| Rejection::new("trivial_h2", e.to_string()))?;
    ensure(cert.c == c, "bound_mismatch", || format!("C recorded as {} but 2 max|h| = {c}", cert.c))?;
    ensure(cert.girth_part.bound == c, "bound_mismatch", || {
        format!("girth certificate bound {} differs from C = {c}", cert.girth_part.bound)
    })?;
    cert.girth_part.check().map_err(|d| Rejection::new("girth", d))?;
    ensure(cert.girth_part.cover.is_connected(), "disconnected", || "K is not connected".into())?;
    let core = SubgroupGraph::fold_generators(alphabet, &h1).map_err(|e| Rejection::new("bad_h1", e.to_string()))?;
    let rebuilt = build_delta(&core.saturate(), &cert.girth_part.cover)
        .map_err(|e| Rejection::new("construction_mismatch", e.to_string()))?;
    ensure(rebuilt == cert.d, "construction_mismatch", || "D is not the cover built from H1 and K".into())?;
    if let Some(w) = h1.iter().find(|w| !cert.d.contains(w)) {
        return Err(Rejection::new("h1_not_contained", format!("`{w}` is not a loop at sheet 0")));
    }
    let images: Vec<Perm> = h2.iter().map(|w| cert.d.coset_action(w)).collect();
    let fixed = common_fixed_points(cert.d.degree(), &images);
    ensure(fixed.is_empty(), "h2_fixed_point", || format!("H2 fixes sheet {}", fixed[0]))?;
    ensure(cert.checks.h1_contained && cert.checks.h2_no_fixed_point, "recorded_checks", || {
        "recorded checks are not all true".into()
    })?;
    Ok(())
}

/// Parses and verifies a certificate; malformed input is a rejection.
pub fn verify_certificate_json(text: &str) -> Verdict {
    let cert: WitnessCertificate =
        serde_json::from_str(text).map_err(|e| Rejection::new("malformed", e.to_string()))?;
    verify_certificate(&cert)
}

/// The finite quotient `F -> Sym(index)` read off a certificate.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FreeQuotient {
    pub degree: usize,
    /// Images of the free generators.
    pub generators: Vec<Perm>,
    pub h1_images: Vec<Perm>,
    pub h2_images: Vec<Perm>,
    pub h1_fix_base: bool,
    pub h2_common_fixed: Vec<usize>,
    pub exhaustive: ExhaustiveCheck,
}

impl FreeQuotient {
    /// The fixed-point pattern that certifies non-conjugacy into.
    pub fn pattern_holds(&self) -> bool {
        self.h1_fix_base && self.h2_common_fixed.is_empty()
    }
}

/// Extracts the permutation quotient; runs the exhaustive check when the
/// image group has order at most `limits.exhaustive_order`.
pub fn quotient_witness(cert: &WitnessCertificate, limits: &Limits) -> Result<FreeQuotient> {
    verify_certificate(cert).map_err(|r| Error::VerificationFailed(r.to_string()))?;
    let h1 = cert.h1_words()?;
    let h2 = cert.h2_words()?;
    let d = &cert.d;
    let h1_images: Vec<Perm> = h1.iter().map(|w| d.coset_action(w)).collect();
    let h2_images: Vec<Perm> = h2.iter().map(|w| d.coset_action(w)).collect();
    let h1_fix_base = h1_images.iter().all(|p| p.fixes(0));
    let h2_common_fixed = common_fixed_points(d.degree(), &h2_images);
    let exhaustive =
        exhaustive_nonconjugacy(d.perms(), &h1_images, &h2_images, d.degree(), limits.exhaustive_order);
    Ok(FreeQuotient {
        degree: d.degree(),
        generators: d.perms().to_vec(),
        h1_images,
        h2_images,
        h1_fix_base,
        h2_common_fixed,
        exhaustive,
    })
}

/// Which containment a witness refutes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    /// `H2` is not conjugate into `H1`.
    H2NotIntoH1,
    /// `H1` is not conjugate into `H2`; the certificate has the roles swapped.
    H1NotIntoH2,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum ScsOutcome {
    /// `g^-1 H1 g = H2`.
    Conjugate { conjugator: ReducedWord },
    Witness { direction: Direction, certificate: Box<WitnessCertificate> },
}

/// Decides conjugacy of `<h1>` and `<h2>`, with a conjugator or a
/// separating certificate as evidence.
pub fn scs_witness(
    alphabet: Alphabet,
    h1: &[ReducedWord],
    h2: &[ReducedWord],
    strategy: KStrategy,
    limits: &Limits,
) -> Result<ScsOutcome> {
    let g1 = SubgroupGraph::fold_generators(alphabet, h1)?;
    let g2 = SubgroupGraph::fold_generators(alphabet, h2)?;
    if let Some(conjugator) = SubgroupGraph::conjugate_witness(&g1, &g2)? {
        return Ok(ScsOutcome::Conjugate { conjugator });
    }
    // Use the folded bases so trivial generators never set the bound.
    let (b1, b2) = (g1.basis(), g2.basis());
    if SubgroupGraph::conj_into(&g2, &g1).is_none() {
        let certificate = Box::new(sics_witness(alphabet, &b1, &b2, strategy, limits)?);
        Ok(ScsOutcome::Witness { direction: Direction::H2NotIntoH1, certificate })
    } else {
        let certificate = Box::new(sics_witness(alphabet, &b2, &b1, strategy, limits)?);
        Ok(ScsOutcome::Witness { direction: Direction::H1NotIntoH2, certificate })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kcover::build_k;

    fn ab() -> Alphabet {
        Alphabet::new(2).unwrap()
    }

    fn words(list: &[&str]) -> Vec<ReducedWord> {
        list.iter().map(|s| ReducedWord::parse(s, ab()).unwrap()).collect()
    }

    fn fold(list: &[&str]) -> SubgroupGraph {
        SubgroupGraph::fold_generators(ab(), &words(list)).unwrap()
    }

    #[test]
    fn delta_of_the_rose_is_the_rose() {
        let k = build_k(ab(), 2, KStrategy::Exact, &Limits::default()).unwrap().cover;
        let d = build_delta(&fold(&["a", "b"]).saturate(), &k).unwrap();
        assert_eq!(d.degree(), 1);
    }

    #[test]
    fn delta_vertex_count() {
        let k = build_k(ab(), 2, KStrategy::Exact, &Limits::default()).unwrap().cover;
        let core = fold(&["aa"]).saturate();
        let orbits = core.star_involution().unwrap().orbit_representatives().len();
        assert_eq!(orbits, 2);
        let d = build_delta(&core, &k).unwrap();
        assert_eq!(d.degree(), core.num_vertices() + orbits * (k.degree() - 2));
        assert!(d.contains(&words(&["aa"])[0]));
    }

    #[test]
    fn witness_a_vs_b() {
        let cert = sics_witness(ab(), &words(&["a"]), &words(&["b"]), KStrategy::Exact, &Limits::default()).unwrap();
        assert!(cert.checks.h1_contained && cert.checks.h2_no_fixed_point);
        assert_eq!(verify_certificate(&cert), Ok(()));
        let text = serde_json::to_string(&cert).unwrap();
        assert_eq!(verify_certificate_json(&text), Ok(()));
        let q = quotient_witness(&cert, &Limits::default()).unwrap();
        assert!(q.pattern_holds());
    }

    #[test]
    fn containment_is_reported() {
        match sics_witness(ab(), &words(&["a"]), &words(&["aa"]), KStrategy::Exact, &Limits::default()) {
            Err(Error::ConjugateInto { conjugator }) => assert!(conjugator.is_empty()),
            other => panic!("{other:?}"),
        }
        assert!(sics_witness(ab(), &words(&["a"]), &[], KStrategy::Exact, &Limits::default()).is_err());
    }

    #[test]
    fn tampering_is_detected() {
        let cert = sics_witness(ab(), &words(&["ab"]), &words(&["a"]), KStrategy::Exact, &Limits::default()).unwrap();
        let mut bad = cert.clone();
        bad.index += 1;
        assert_eq!(verify_certificate(&bad).unwrap_err().code, "index_mismatch");
        let mut bad = cert.clone();
        bad.girth_part.shortest_cycle = crate::girth::Girth::AtLeast(9);
        assert_eq!(verify_certificate(&bad).unwrap_err().code, "girth");
        let mut bad = cert;
        bad.h2 = vec![WordText("ba".into())];
        assert!(verify_certificate(&bad).is_err());
    }

    #[test]
    fn scs_outcomes() {
        let limits = Limits::default();
        match scs_witness(ab(), &words(&["a"]), &words(&["baB"]), KStrategy::Exact, &limits).unwrap() {
            ScsOutcome::Conjugate { conjugator } => {
                assert_eq!(words(&["a"])[0].conjugate_by(&conjugator), words(&["baB"])[0])
            }
            other => panic!("{other:?}"),
        }
        match scs_witness(ab(), &words(&["a"]), &words(&["b"]), KStrategy::Exact, &limits).unwrap() {
            ScsOutcome::Witness { direction, .. } => assert_eq!(direction, Direction::H2NotIntoH1),
            other => panic!("{other:?}"),
        }
        match scs_witness(ab(), &words(&["aa"]), &words(&["a"]), KStrategy::Exact, &limits).unwrap() {
            ScsOutcome::Witness { direction, certificate } => {
                assert_eq!(direction, Direction::H2NotIntoH1);
                assert!(verify_certificate(&certificate).is_ok());
            }
            other => panic!("{other:?}"),
        }
    }
}
