//! Finite covers of the rose given by generator permutations.

use std::collections::{BTreeMap, HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::girth::{Girth, Multigraph};
use crate::perm::Perm;
use crate::words::{Alphabet, Letter, ReducedWord};

/// A connected finite cover of the rose: one permutation of the sheets per
/// generator. Sheet 0 is the basepoint.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PermCover {
    alphabet: Alphabet,
    perms: Vec<Perm>,
    inverses: Vec<Perm>,
}

impl PermCover {
    /// Validates that each permutation is a bijection of a common degree and
    /// that the action graph is connected.
    pub fn new(alphabet: Alphabet, perms: Vec<Perm>) -> Result<Self> {
        if perms.len() != alphabet.rank() {
            return Err(Error::InvalidInput(format!(
                "expected {} permutations, got {}",
                alphabet.rank(),
                perms.len()
            )));
        }
        let degree = perms[0].degree();
        if degree == 0 {
            return Err(Error::InvalidInput("cover degree must be positive".into()));
        }
        if perms.iter().any(|p| p.degree() != degree) {
            return Err(Error::InvalidInput("permutations have different degrees".into()));
        }
        let cover = Self::new_unchecked(alphabet, perms);
        if !cover.is_connected() {
            return Err(Error::InvalidInput("cover is not connected".into()));
        }
        Ok(cover)
    }

    pub(crate) fn new_unchecked(alphabet: Alphabet, perms: Vec<Perm>) -> Self {
        let inverses = perms.iter().map(Perm::inverse).collect();
        PermCover { alphabet, perms, inverses }
    }

    /// The one-sheet cover (the rose itself).
    pub fn trivial(alphabet: Alphabet) -> Self {
        Self::new_unchecked(alphabet, vec![Perm::identity(1); alphabet.rank()])
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn degree(&self) -> usize {
        self.perms[0].degree()
    }

    pub fn perms(&self) -> &[Perm] {
        &self.perms
    }

    /// Sheet reached from `sheet` along one letter.
    pub fn step(&self, sheet: usize, letter: Letter) -> usize {
        let i = letter.unsigned_abs() as usize - 1;
        if letter > 0 {
            self.perms[i].apply(sheet)
        } else {
            self.inverses[i].apply(sheet)
        }
    }

    pub fn trace(&self, sheet: usize, word: &ReducedWord) -> usize {
        word.letters().iter().fold(sheet, |s, &l| self.step(s, l))
    }

    /// True iff `word` lifts to a loop at sheet 0, i.e. lies in the subgroup
    /// of the cover.
    pub fn contains(&self, word: &ReducedWord) -> bool {
        self.trace(0, word) == 0
    }

    /// The permutation of sheets induced by `word` (the image of the word
    /// under the coset action).
    pub fn coset_action(&self, word: &ReducedWord) -> Perm {
        let images = (0..self.degree()).map(|s| self.trace(s, word) as u32).collect();
        Perm::from_images_unchecked(images)
    }

    pub fn is_connected(&self) -> bool {
        self.multigraph().is_connected()
    }

    /// The action graph as an undirected multigraph; edge `s * rank + i` joins
    /// `s` to `s * x_i`.
    pub fn multigraph(&self) -> Multigraph {
        let n = self.alphabet.rank();
        let mut g = Multigraph::new(self.degree());
        for s in 0..self.degree() {
            for (i, p) in self.perms.iter().enumerate() {
                g.add_edge(s, p.apply(s), s * n + i);
            }
        }
        g
    }

    /// Shortest reduced cycle of the action graph, exact up to `cap`.
    pub fn girth(&self, cap: usize) -> Girth {
        self.multigraph().girth(cap)
    }

    /// True iff every sheet has the same stabilizer as sheet 0, checked on
    /// a generating set of the stabilizer of sheet 0.
    pub fn is_regular(&self) -> bool {
        let gens = self.schreier_generators();
        (0..self.degree()).all(|s| gens.iter().all(|w| self.trace(s, w) == s))
    }

    /// A free basis of the subgroup at sheet 0, read off a BFS spanning tree.
    pub fn schreier_generators(&self) -> Vec<ReducedWord> {
        let m = self.degree();
        let mut path: Vec<Option<Vec<Letter>>> = vec![None; m];
        path[0] = Some(Vec::new());
        let mut tree_edge = vec![vec![false; self.alphabet.rank()]; m];
        let mut queue = VecDeque::from([0usize]);
        while let Some(s) = queue.pop_front() {
            for l in self.alphabet.letters() {
                let t = self.step(s, l);
                if path[t].is_none() {
                    let mut p = path[s].clone().unwrap();
                    p.push(l);
                    path[t] = Some(p);
                    if l > 0 {
                        tree_edge[s][(l - 1) as usize] = true;
                    } else {
                        tree_edge[t][(-l - 1) as usize] = true;
                    }
                    queue.push_back(t);
                }
            }
        }
        let mut gens = Vec::new();
        for s in 0..m {
            for i in 0..self.alphabet.rank() {
                if tree_edge[s][i] {
                    continue;
                }
                let t = self.perms[i].apply(s);
                let mut raw = path[s].clone().unwrap();
                raw.push(i as Letter + 1);
                raw.extend(path[t].as_ref().unwrap().iter().rev().map(|l| -l));
                gens.push(ReducedWord::reduce(&raw, self.alphabet).expect("letters in range"));
            }
        }
        gens
    }

    /// Rank of the fundamental group of the action graph.
    pub fn betti_number(&self) -> usize {
        self.degree() * (self.alphabet.rank() - 1) + 1
    }

    /// Returns the same cover with sheets renamed by `relabel` (old -> new).
    pub fn relabeled(&self, relabel: &Perm) -> PermCover {
        let inv = relabel.inverse();
        let perms = self.perms.iter().map(|p| inv.then(p).then(relabel)).collect();
        PermCover::new_unchecked(self.alphabet, perms)
    }
}

#[derive(Serialize, Deserialize)]
struct PermCoverJson {
    rank: usize,
    degree: usize,
    perms: BTreeMap<String, Vec<u32>>,
}

impl Serialize for PermCover {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let perms = self
            .perms
            .iter()
            .enumerate()
            .map(|(i, p)| (self.alphabet.format_letter(i as Letter + 1), p.images().to_vec()))
            .collect();
        PermCoverJson { rank: self.alphabet.rank(), degree: self.degree(), perms }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for PermCover {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = PermCoverJson::deserialize(d)?;
        let alphabet = Alphabet::new(raw.rank).map_err(D::Error::custom)?;
        if raw.perms.len() != raw.rank {
            return Err(D::Error::custom("one permutation per generator required"));
        }
        let mut perms = Vec::with_capacity(raw.rank);
        for i in 0..raw.rank {
            let name = alphabet.format_letter(i as Letter + 1);
            let images = raw
                .perms
                .get(&name)
                .ok_or_else(|| D::Error::custom(format!("missing permutation `{name}`")))?;
            if images.len() != raw.degree {
                return Err(D::Error::custom(format!("permutation `{name}` has wrong length")));
            }
            let p = Perm::from_images(images.clone())
                .ok_or_else(|| D::Error::custom(format!("permutation `{name}` is not a bijection")))?;
            perms.push(p);
        }
        PermCover::new(alphabet, perms).map_err(D::Error::custom)
    }
}

/// A cover of degree at most `|w| + 1` in which `w` does not lift to a loop
/// at sheet 0.
///
/// The path `0 -w_1-> 1 -> ... -> |w|` is a folded graph; each partial
/// permutation is completed by pairing its free domain and range points in
/// sorted order.
pub fn exclude_word_cover(w: &ReducedWord) -> Result<PermCover> {
    if w.is_empty() {
        return Err(Error::InvalidInput("cannot exclude the identity word".into()));
    }
    let alphabet = w.alphabet();
    let m = w.len() + 1;
    let mut forward: Vec<Vec<Option<u32>>> = vec![vec![None; m]; alphabet.rank()];
    for (k, &l) in w.letters().iter().enumerate() {
        let (src, dst) = if l > 0 { (k, k + 1) } else { (k + 1, k) };
        forward[l.unsigned_abs() as usize - 1][src] = Some(dst as u32);
    }
    let perms = forward
        .into_iter()
        .map(|partial| {
            let mut used = vec![false; m];
            for &t in partial.iter().flatten() {
                used[t as usize] = true;
            }
            let mut free_range = (0..m).filter(|&t| !used[t]);
            let images = partial
                .iter()
                .map(|t| t.unwrap_or_else(|| free_range.next().unwrap() as u32))
                .collect();
            Perm::from_images_unchecked(images)
        })
        .collect();
    let cover = PermCover::new_unchecked(alphabet, perms);
    debug_assert!(cover.is_connected());
    debug_assert_eq!(cover.trace(0, w), w.len());
    Ok(cover)
}

/// Cayley graph of the permutation group generated by the tuples of
/// generator permutations of `covers`. It is the regular cover belonging to
/// the intersection of the normal cores of the given subgroups.
pub fn product_kernel(covers: &[PermCover], max_sheets: usize) -> Result<PermCover> {
    let first = covers
        .first()
        .ok_or_else(|| Error::InvalidInput("product kernel of an empty list".into()))?;
    let alphabet = first.alphabet;
    if covers.iter().any(|c| c.alphabet != alphabet) {
        return Err(Error::InvalidInput("covers over different alphabets".into()));
    }
    let rank = alphabet.rank();
    let width: usize = covers.iter().map(PermCover::degree).sum();
    let gens: Vec<Vec<u32>> = (0..rank)
        .map(|i| covers.iter().flat_map(|c| c.perms[i].images().iter().copied()).collect())
        .collect();
    let offsets: Vec<u32> = covers
        .iter()
        .scan(0u32, |acc, c| {
            let o = *acc;
            *acc += c.degree() as u32;
            Some(o)
        })
        .collect();
    let block_of: Vec<u32> = covers
        .iter()
        .enumerate()
        .flat_map(|(b, c)| std::iter::repeat_n(offsets[b], c.degree()))
        .collect();

    let identity: Vec<u32> = covers.iter().flat_map(|c| 0..c.degree() as u32).collect();
    let mut index: HashMap<Vec<u32>, u32> = HashMap::new();
    let mut elements = vec![identity.clone()];
    index.insert(identity, 0);
    let mut images: Vec<Vec<u32>> = vec![Vec::new(); rank];
    let mut next = 0;
    while next < elements.len() {
        for i in 0..rank {
            let x = &elements[next];
            // x then g: position p maps to g[x[p]] within its block.
            let y: Vec<u32> =
                (0..width).map(|p| gens[i][(block_of[p] + x[p]) as usize]).collect();
            let id = match index.get(&y) {
                Some(&id) => id,
                None => {
                    if elements.len() >= max_sheets {
                        return Err(Error::Resource(format!(
                            "product kernel exceeds {max_sheets} sheets"
                        )));
                    }
                    let id = elements.len() as u32;
                    index.insert(y.clone(), id);
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
