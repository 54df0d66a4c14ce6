//! A check of the normalizer condition by propagating edge subgroups
//! through the Bass-Serre tree.
//!
//! A state `(f, E)` says that the subgroup `E <= G_f` fixes the tree edge of
//! type `f` reached so far. From `(f, E)` at `w = target(f)`, `E` fixes the
//! edge `g rho(G_f')` leaving the vertex iff `g^-1 E g <= rho^i_f'(G_f')`,
//! which gives the state `(f', rho^-1(g^-1 E g))`; backtracking along `f`
//! itself is excluded. States are exact, so the fixed subtree of `E` is
//! infinite iff a cycle is reachable, and a cycle transports a conjugate of
//! `E` onto itself along a hyperbolic element.

use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use super::graph::{DirEdge, GraphOfGroups};
use super::group::Subgroup;

/// State budget; exceeding it yields `Unknown`.
const MAX_STATES: usize = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum NormalizerVerdict {
    Holds,
    /// `subgroup <= G_edge` fixes an infinite subtree; `cycle` lists the
    /// states of a reachable propagation cycle.
    Fails { edge: usize, subgroup: Subgroup, cycle: Vec<(DirEdge, Subgroup)> },
    Unknown { reason: String },
}

impl NormalizerVerdict {
    pub fn holds(&self) -> bool {
        matches!(self, NormalizerVerdict::Holds)
    }

    pub fn label(&self) -> &'static str {
        match self {
            NormalizerVerdict::Holds => "holds",
            NormalizerVerdict::Fails { .. } => "fails",
            NormalizerVerdict::Unknown { .. } => "unknown",
        }
    }
}

type State = (DirEdge, Subgroup);

/// Successor states of `(f, e)`.
pub(crate) fn successors(gog: &GraphOfGroups, f: DirEdge, e: &Subgroup) -> Vec<State> {
    let w = gog.target(f);
    let group = gog.vertex_group(w);
    let at_w: Vec<usize> = e.elements().iter().map(|&x| gog.rho_t(f, x)).collect();
    let back = gog.image_t(f);
    let mut out = BTreeSet::new();
    for &f2 in gog.incident(w) {
        let img = gog.image_i(f2);
        for g in 0..group.order() {
            if f2 == f.reverse() && back.contains(g) {
                continue;
            }
            let conj: Option<Vec<usize>> = at_w
                .iter()
                .map(|&x| gog.preimage_i(f2, group.conj(x, g)))
                .collect();
            if let Some(mut pre) = conj {
                if pre.iter().all(|&y| img.contains(gog.rho_i(f2, y))) {
                    pre.sort_unstable();
                    out.insert((f2, Subgroup::from_sorted(pre)));
                }
            }
        }
    }
    out.into_iter().collect()
}

/// Decides whether every nontrivial subgroup of every edge group has finite
/// index in its normalizer.
pub fn check_normalizer_condition(gog: &GraphOfGroups) -> NormalizerVerdict {
    let mut budget = MAX_STATES;
    for id in 0..gog.num_edges() {
        let group = &gog.edge(id).group;
        for e in group.subgroups().into_iter().filter(|s| !s.is_trivial()) {
            for start in [DirEdge::new(id, true), DirEdge::new(id, false)] {
                match find_cycle(gog, (start, e.clone()), &mut budget) {
                    Ok(None) => {}
                    Ok(Some(cycle)) => return NormalizerVerdict::Fails { edge: id, subgroup: e, cycle },
                    Err(reason) => return NormalizerVerdict::Unknown { reason },
                }
            }
        }
    }
    NormalizerVerdict::Holds
}

/// Iterative DFS for a cycle reachable from `start`.
fn find_cycle(gog: &GraphOfGroups, start: State, budget: &mut usize) -> Result<Option<Vec<State>>, String> {
    // 1 = on stack, 2 = finished
    let mut color: HashMap<State, u8> = HashMap::new();
    let mut stack: Vec<(State, Vec<State>, usize)> = Vec::new();
    let succ = successors(gog, start.0, &start.1);
    color.insert(start.clone(), 1);
    stack.push((start, succ, 0));
    while let Some((_, succ, i)) = stack.last_mut() {
        if *i == succ.len() {
            let (s, _, _) = stack.pop().unwrap();
            color.insert(s, 2);
            continue;
        }
        let next = succ[*i].clone();
        *i += 1;
        match color.get(&next) {
            Some(1) => {
                let pos = stack.iter().position(|(s, _, _)| *s == next).unwrap();
                return Ok(Some(stack[pos..].iter().map(|(s, _, _)| s.clone()).collect()));
            }
            Some(_) => {}
            None => {
                if *budget == 0 {
                    return Err(format!("propagation exceeded {MAX_STATES} states"));
                }
                *budget -= 1;
                let succ = successors(gog, next.0, &next.1);
                color.insert(next.clone(), 1);
                stack.push((next, succ, 0));
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gog::standard;

    #[test]
    fn pinned_verdicts() {
        assert_eq!(check_normalizer_condition(&standard::psl2z()), NormalizerVerdict::Holds);
        assert_eq!(check_normalizer_condition(&standard::s3_c2_s3(0)), NormalizerVerdict::Holds);
        assert_eq!(check_normalizer_condition(&standard::c4_c2_c6()).label(), "fails");
    }
}
