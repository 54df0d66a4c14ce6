//! Regular covers of the rose without short cycles.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::config::Limits;
use crate::cover::{exclude_word_cover, product_kernel, PermCover};
use crate::error::{Error, Result};
use crate::girth::Girth;
use crate::perm::Perm;
use crate::words::{canonical_cyclic_words, Alphabet, ReducedWord};

/// How `build_k` searches for a cover.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KStrategy {
    /// Deterministic: exclude short words one cover at a time, falling back
    /// to congruence quotients of a free subgroup of SL(2, Z).
    Exact,
    /// Random generator permutations of the given degree, doubled per retry.
    Random { seed: u64, degree: usize },
}

impl fmt::Display for KStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KStrategy::Exact => write!(f, "exact"),
            KStrategy::Random { seed, degree } => write!(f, "random:{seed}:{degree}"),
        }
    }
}

impl FromStr for KStrategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.trim().split(':').collect();
        match parts.as_slice() {
            ["exact"] => Ok(KStrategy::Exact),
            ["random", seed, degree] => {
                let seed = seed.parse().map_err(|_| Error::Parse(format!("bad seed `{seed}`")))?;
                let degree: usize =
                    degree.parse().map_err(|_| Error::Parse(format!("bad degree `{degree}`")))?;
                if degree == 0 {
                    return Err(Error::Parse("random degree must be positive".into()));
                }
                Ok(KStrategy::Random { seed, degree })
            }
            _ => Err(Error::Parse(format!("unknown K strategy `{s}` (use exact or random:SEED:DEG)"))),
        }
    }
}

/// A cover together with a claimed lower bound on its girth.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GirthCertificate {
    pub cover: PermCover,
    /// Every cycle is claimed to have length at least `bound + 1`.
    pub bound: usize,
    /// Girth computed with cap `bound + 1`.
    pub shortest_cycle: Girth,
    /// Informational: how the cover was found.
    pub construction: String,
}

impl GirthCertificate {
    pub fn new(cover: PermCover, bound: usize, construction: String) -> Self {
        let shortest_cycle = cover.girth(bound + 1);
        GirthCertificate { cover, bound, shortest_cycle, construction }
    }

    /// Recomputes the girth by BFS; returns a reason on failure.
    pub fn check(&self) -> std::result::Result<(), String> {
        let g = self.cover.girth(self.bound + 1);
        if g != self.shortest_cycle {
            return Err(format!("recorded girth {} but BFS finds {g}", self.shortest_cycle));
        }
        if !g.at_least(self.bound + 1) {
            return Err(format!("girth {g} below claimed bound {}", self.bound + 1));
        }
        Ok(())
    }
}

/// True iff no nontrivial cyclically reduced word of length at most `c` is a
/// loop at sheet 0.
pub fn excludes_short_words(cover: &PermCover, c: usize) -> bool {
    canonical_cyclic_words(cover.alphabet(), c).iter().all(|w| !cover.contains(w))
}

/// Builds a regular cover whose girth is at least `c + 1`.
pub fn build_k(alphabet: Alphabet, c: usize, strategy: KStrategy, limits: &Limits) -> Result<GirthCertificate> {
    if c == 0 {
        return Err(Error::InvalidInput("girth bound C must be at least 1".into()));
    }
    let (cover, construction) = match strategy {
        KStrategy::Exact => exact_cover(alphabet, c, limits)?,
        KStrategy::Random { seed, degree } => random_cover(alphabet, c, seed, degree, limits)?,
    };
    let cert = GirthCertificate::new(cover, c, construction);
    cert.check().map_err(Error::VerificationFailed)?;
    Ok(cert)
}

fn exact_cover(alphabet: Alphabet, c: usize, limits: &Limits) -> Result<(PermCover, String)> {
    let budget = limits.tower_budget.min(limits.max_sheets);
    if let Some((cover, steps)) = exclusion_tower(alphabet, c, budget)? {
        return Ok((cover, format!("exclusion-tower:{steps}")));
    }
    for p in primes_from(3) {
        let order = match alphabet.rank() {
            1 => p,
            _ => p * (p * p - 1),
        };
        if order > limits.max_sheets {
            return Err(Error::Resource(format!(
                "no congruence cover of girth > {c} within {} sheets (next order {order})",
                limits.max_sheets
            )));
        }
        let cover = congruence_cover(alphabet, p as u64, limits.max_sheets)?;
        if cover.girth(c + 1).at_least(c + 1) {
            return Ok((cover, format!("sl2:{p}")));
        }
    }
    unreachable!("prime iterator is infinite")
}

/// Greedily excludes each short word still present, intersecting normal
/// cores. Returns `None` when the budget is exceeded.
fn exclusion_tower(alphabet: Alphabet, c: usize, budget: usize) -> Result<Option<(PermCover, usize)>> {
    let mut covers = Vec::new();
    let mut current = PermCover::trivial(alphabet);
    for w in canonical_cyclic_words(alphabet, c) {
        if current.contains(&w) {
            covers.push(exclude_word_cover(&w)?);
            match product_kernel(&covers, budget) {
                Ok(k) => current = k,
                Err(Error::Resource(_)) => return Ok(None),
                Err(e) => return Err(e),
            }
        }
    }
    Ok(Some((current, covers.len())))
}

fn primes_from(start: usize) -> impl Iterator<Item = usize> {
    (start..).filter(|&n| n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0))
}

type Mat = [u64; 4];

fn mat_mul(x: &Mat, y: &Mat, p: u64) -> Mat {
    [
        (x[0] * y[0] + x[1] * y[2]) % p,
        (x[0] * y[1] + x[1] * y[3]) % p,
        (x[2] * y[0] + x[3] * y[2]) % p,
        (x[2] * y[1] + x[3] * y[3]) % p,
    ]
}

fn mat_pow(x: &Mat, e: u64, p: u64) -> Mat {
    (0..e).fold([1, 0, 0, 1], |acc, _| mat_mul(&acc, x, p))
}

/// Generator images in SL(2, Z) forming a free basis: `A`, `B` and, for
/// larger rank, the conjugates `B^i A B^-i`.
fn sanov_images(rank: usize, p: u64) -> Vec<Mat> {
    let a: Mat = [1, 2 % p, 0, 1];
    let b: Mat = [1, 0, 2 % p, 1];
    match rank {
        1 => vec![a],
        2 => vec![a, b],
        _ => {
            let b_inv: Mat = [1, 0, (p - 2 % p) % p, 1];
            (0..rank as u64)
                .map(|i| mat_mul(&mat_mul(&mat_pow(&b, i, p), &a, p), &mat_pow(&b_inv, i, p), p))
                .collect()
        }
    }
}

/// Cayley graph of the image of the free group in SL(2, p).
pub fn congruence_cover(alphabet: Alphabet, p: u64, max_sheets: usize) -> Result<PermCover> {
    let gens = sanov_images(alphabet.rank(), p);
    let mut index: HashMap<Mat, u32> = HashMap::new();
    let mut elements: Vec<Mat> = vec![[1, 0, 0, 1]];
    index.insert(elements[0], 0);
    let mut images: Vec<Vec<u32>> = vec![Vec::new(); gens.len()];
    let mut next = 0;
    while next < elements.len() {
        for (i, g) in gens.iter().enumerate() {
            let y = mat_mul(&elements[next], g, p);
            let id = match index.get(&y) {
                Some(&id) => id,
                None => {
                    if elements.len() >= max_sheets {
                        return Err(Error::Resource(format!("SL(2,{p}) cover exceeds {max_sheets} sheets")));
                    }
                    let id = elements.len() as u32;
                    index.insert(y, id);
                    elements.push(y);
                    id
                }
            };
            images[i].push(id);
        }
        next += 1;
    }
    let perms = images.into_iter().map(Perm::from_images_unchecked).collect();
    Ok(PermCover::new_unchecked(alphabet, perms))
}

fn random_cover(alphabet: Alphabet, c: usize, seed: u64, degree: usize, limits: &Limits) -> Result<(PermCover, String)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut degree = degree;
    for attempt in 0..limits.retry_limit {
        let sample: Vec<PermCover> = vec![PermCover::new_unchecked(
            alphabet,
            (0..alphabet.rank())
                .map(|_| {
                    let mut images: Vec<u32> = (0..degree as u32).collect();
                    images.shuffle(&mut rng);
                    Perm::from_images_unchecked(images)
                })
                .collect(),
        )];
        let kernel = product_kernel(&sample, limits.max_sheets)?;
        if kernel.girth(c + 1).at_least(c + 1) {
            return Ok((kernel, format!("random:{seed}:{degree}:attempt{attempt}")));
        }
        degree *= 2;
    }
    Err(Error::RetryLimit(format!(
        "no random cover of girth > {c} after {} attempts (last degree {})",
        limits.retry_limit,
        degree / 2
    )))
}

/// Convenience: the K-cover used by the free pipeline for a set of H2
/// generators (`C = 2 max |h|`).
pub fn bound_for(h2: &[ReducedWord]) -> Result<usize> {
    let max = h2.iter().map(ReducedWord::len).max().unwrap_or(0);
    if max == 0 {
        return Err(Error::InvalidInput("H2 must have a nontrivial generator".into()));
    }
    Ok(2 * max)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ab() -> Alphabet {
        Alphabet::new(2).unwrap()
    }

    #[test]
    fn exact_small_bounds() {
        let limits = Limits::default();
        let expected = [(1, 4), (2, 36), (3, 36), (4, 180), (5, 180)];
        for (c, degree) in expected {
            let cert = build_k(ab(), c, KStrategy::Exact, &limits).unwrap();
            assert_eq!(cert.cover.degree(), degree, "C = {c}");
            assert!(cert.cover.is_regular());
            assert!(excludes_short_words(&cert.cover, c));
            assert!(cert.check().is_ok());
        }
    }

    #[test]
    fn congruence_girths() {
        // p -> (order, girth) of the Cayley graph on A, B.
        for (p, order, girth) in [(3, 24, 3), (5, 120, 5), (7, 336, 6), (11, 1320, 9)] {
            let c = congruence_cover(ab(), p, 1 << 20).unwrap();
            assert_eq!(c.degree(), order);
            assert_eq!(c.girth(20), Girth::Exact(girth));
        }
    }

    #[test]
    fn falls_back_past_the_tower_budget() {
        let cert = build_k(ab(), 6, KStrategy::Exact, &Limits::default()).unwrap();
        assert_eq!(cert.construction, "sl2:11");
        assert!(excludes_short_words(&cert.cover, 6));
    }

    #[test]
    fn rank_one_and_three() {
        let limits = Limits::default();
        let a1 = Alphabet::new(1).unwrap();
        let cert = build_k(a1, 4, KStrategy::Exact, &limits).unwrap();
        assert!(cert.cover.girth(10).at_least(5));
        let a3 = Alphabet::new(3).unwrap();
        let cert = build_k(a3, 3, KStrategy::Exact, &limits).unwrap();
        assert!(excludes_short_words(&cert.cover, 3));
    }

    #[test]
    fn random_strategy_is_deterministic() {
        let limits = Limits::default();
        let s = KStrategy::Random { seed: 7, degree: 4 };
        let x = build_k(ab(), 3, s, &limits).unwrap();
        let y = build_k(ab(), 3, s, &limits).unwrap();
        assert_eq!(x, y);
        assert!(x.cover.girth(4).at_least(4));
    }

    #[test]
    fn degree_one_fails_certificate() {
        let cert = GirthCertificate::new(PermCover::trivial(ab()), 1, "rose".into());
        assert!(cert.check().is_err());
    }

    #[test]
    fn strategy_parsing() {
        assert_eq!("exact".parse::<KStrategy>().unwrap(), KStrategy::Exact);
        assert_eq!(
            "random:3:8".parse::<KStrategy>().unwrap(),
            KStrategy::Random { seed: 3, degree: 8 }
        );
        assert!("random:3".parse::<KStrategy>().is_err());
    }
}
