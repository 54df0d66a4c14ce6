//! Finite groups given by multiplication tables.

use std::collections::BTreeSet;
use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A finite group on elements `0..order` with identity `0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroupTable {
    order: usize,
    mul: Vec<usize>,
    inv: Vec<usize>,
}

/// A subgroup as a sorted list of element ids.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Subgroup(Vec<usize>);

impl Subgroup {
    pub fn trivial() -> Self {
        Subgroup(vec![0])
    }

    pub fn elements(&self) -> &[usize] {
        &self.0
    }

    pub fn order(&self) -> usize {
        self.0.len()
    }

    pub fn contains(&self, g: usize) -> bool {
        self.0.binary_search(&g).is_ok()
    }

    pub fn is_trivial(&self) -> bool {
        self.0.len() == 1
    }

    pub fn is_subset(&self, other: &Subgroup) -> bool {
        self.0.iter().all(|&g| other.contains(g))
    }

    pub(crate) fn from_sorted(v: Vec<usize>) -> Self {
        debug_assert!(v.windows(2).all(|w| w[0] < w[1]));
        Subgroup(v)
    }
}

impl FiniteGroupTable {
    /// Validates identity, closure, inverses and associativity.
    pub fn new(rows: Vec<Vec<usize>>) -> Result<Self> {
        let order = rows.len();
        if order == 0 {
            return Err(Error::InvalidInput("group must have at least one element".into()));
        }
        if rows.iter().any(|r| r.len() != order) {
            return Err(Error::InvalidInput("multiplication table is not square".into()));
        }
        let mul: Vec<usize> = rows.into_iter().flatten().collect();
        if mul.iter().any(|&x| x >= order) {
            return Err(Error::InvalidInput("multiplication table entry out of range".into()));
        }
        for a in 0..order {
            if mul[a] != a || mul[a * order] != a {
                return Err(Error::InvalidInput("element 0 is not the identity".into()));
            }
        }
        let mut inv = vec![usize::MAX; order];
        for a in 0..order {
            for b in 0..order {
                if mul[a * order + b] == 0 {
                    inv[a] = b;
                }
            }
            if inv[a] == usize::MAX || mul[inv[a] * order + a] != 0 {
                return Err(Error::InvalidInput(format!("element {a} has no inverse")));
            }
        }
        for a in 0..order {
            for b in 0..order {
                let ab = mul[a * order + b];
                for c in 0..order {
                    if mul[ab * order + c] != mul[a * order + mul[b * order + c]] {
                        return Err(Error::InvalidInput(format!("not associative at ({a}, {b}, {c})")));
                    }
                }
            }
        }
        Ok(FiniteGroupTable { order, mul, inv })
    }

    pub fn trivial() -> Self {
        Self::cyclic(1)
    }

    pub fn cyclic(n: usize) -> Self {
        let rows = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        Self::new(rows).expect("cyclic group table is valid")
    }

    /// The group generated by permutations (as image lists), elements
    /// numbered in BFS order from the identity.
    pub fn from_permutations(gens: &[Vec<usize>]) -> Result<Self> {
        let degree = gens.first().map_or(0, Vec::len);
        let id: Vec<usize> = (0..degree).collect();
        let mut index = HashMap::from([(id.clone(), 0usize)]);
        let mut elements = vec![id];
        let mut i = 0;
        while i < elements.len() {
            for g in gens {
                let y: Vec<usize> = elements[i].iter().map(|&x| g[x]).collect();
                if !index.contains_key(&y) {
                    index.insert(y.clone(), elements.len());
                    elements.push(y);
                }
            }
            i += 1;
        }
        // a * b = apply a, then b
        let rows = elements
            .iter()
            .map(|a| elements.iter().map(|b| index[&a.iter().map(|&x| b[x]).collect::<Vec<_>>()]).collect())
            .collect();
        Self::new(rows)
    }

    /// The symmetric group on three points; `1` and `2` are the
    /// transpositions `(0 1)` and `(1 2)`, and `(0 1 2)` has order three.
    pub fn symmetric3() -> Self {
        Self::from_permutations(&[vec![1, 0, 2], vec![0, 2, 1]]).expect("valid")
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    /// `g^-1 x g`.
    pub fn conj(&self, x: usize, g: usize) -> usize {
        self.mul(self.mul(self.inv(g), x), g)
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.mul.chunks(self.order).map(<[usize]>::to_vec).collect()
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup((0..self.order).collect())
    }

    pub fn generate(&self, gens: &[usize]) -> Subgroup {
        let mut set = BTreeSet::from([0]);
        let mut frontier = vec![0];
        while let Some(x) = frontier.pop() {
            for &g in gens {
                let y = self.mul(x, g);
                if set.insert(y) {
                    frontier.push(y);
                }
            }
        }
        Subgroup(set.into_iter().collect())
    }

    /// True iff `set` (sorted, deduplicated) is closed under multiplication.
    pub fn is_subgroup(&self, set: &[usize]) -> bool {
        let s = Subgroup(set.to_vec());
        !set.is_empty()
            && set.windows(2).all(|w| w[0] < w[1])
            && set.iter().all(|&x| x < self.order)
            && set.iter().all(|&a| set.iter().all(|&b| s.contains(self.mul(a, b))))
    }

    /// All subgroups, sorted by order then elements.
    pub fn subgroups(&self) -> Vec<Subgroup> {
        let mut found: BTreeSet<Subgroup> = BTreeSet::from([Subgroup::trivial()]);
        let mut frontier = vec![Subgroup::trivial()];
        while let Some(h) = frontier.pop() {
            for g in 0..self.order {
                if h.contains(g) {
                    continue;
                }
                let mut gens = h.0.clone();
                gens.push(g);
                let k = self.generate(&gens);
                if found.insert(k.clone()) {
                    frontier.push(k);
                }
            }
        }
        let mut all: Vec<Subgroup> = found.into_iter().collect();
        all.sort_by(|a, b| a.order().cmp(&b.order()).then_with(|| a.cmp(b)));
        all
    }

    /// `g^-1 H g`.
    pub fn conjugate(&self, h: &Subgroup, g: usize) -> Subgroup {
        let mut v: Vec<usize> = h.0.iter().map(|&x| self.conj(x, g)).collect();
        v.sort_unstable();
        Subgroup(v)
    }

    pub fn intersect(&self, a: &Subgroup, b: &Subgroup) -> Subgroup {
        Subgroup(a.0.iter().copied().filter(|&x| b.contains(x)).collect())
    }

    /// Right cosets `P g`, each given by its smallest element, sorted; the
    /// coset of the identity comes first.
    pub fn right_cosets(&self, p: &Subgroup) -> RightCosets {
        let mut index_of = vec![usize::MAX; self.order];
        let mut reps = Vec::new();
        for g in 0..self.order {
            if index_of[g] != usize::MAX {
                continue;
            }
            let idx = reps.len();
            reps.push(g);
            for &x in p.elements() {
                index_of[self.mul(x, g)] = idx;
            }
        }
        RightCosets { reps, index_of }
    }
}

/// Right cosets of a subgroup.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RightCosets {
    /// Smallest element of each coset.
    pub reps: Vec<usize>,
    /// Coset index of each element.
    pub index_of: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct GroupJson {
    order: usize,
    mul: Vec<Vec<usize>>,
}

impl Serialize for FiniteGroupTable {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        GroupJson { order: self.order, mul: self.rows() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for FiniteGroupTable {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = GroupJson::deserialize(d)?;
        if raw.mul.len() != raw.order {
            return Err(D::Error::custom("group order does not match table size"));
        }
        FiniteGroupTable::new(raw.mul).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn s3_structure() {
        let s3 = FiniteGroupTable::symmetric3();
        assert_eq!(s3.order(), 6);
        assert_eq!(s3.subgroups().len(), 6);
        assert_eq!(s3.element_order(1), 2);
        let c3 = s3.subgroups().into_iter().find(|h| h.order() == 3).unwrap();
        assert_eq!(s3.right_cosets(&c3).reps.len(), 2);
    }

    #[test]
    fn cyclic_subgroups() {
        assert_eq!(FiniteGroupTable::cyclic(6).subgroups().len(), 4);
        assert_eq!(FiniteGroupTable::cyclic(4).subgroups().len(), 3);
    }

    #[test]
    fn rejects_bad_tables() {
        assert!(FiniteGroupTable::new(vec![vec![0, 1], vec![1, 1]]).is_err());
        assert!(FiniteGroupTable::new(vec![vec![1, 0], vec![0, 1]]).is_err());
    }

    #[test]
    fn json_round_trip() {
        let g = FiniteGroupTable::symmetric3();
        let back: FiniteGroupTable = serde_json::from_str(&serde_json::to_string(&g).unwrap()).unwrap();
        assert_eq!(back, g);
    }
}
