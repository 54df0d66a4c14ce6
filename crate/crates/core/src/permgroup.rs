//! Small permutation-group computations for exhaustive quotient checks.

use std::collections::{HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::perm::Perm;

/// Cap on stored permutation entries (elements times degree).
const MAX_STORED_ENTRIES: usize = 50_000_000;
/// Schreier generators inspected when bounding the order from below.
const SCHREIER_SAMPLE: usize = 64;

/// Outcome of trying to list a permutation group.
#[derive(Clone, Debug)]
pub enum Enumeration {
    Complete(Vec<Perm>),
    /// The order provably exceeds the cap.
    TooLarge { lower_bound: usize },
    /// The order could not be bounded within the memory budget.
    Inconclusive(String),
}

/// Outcome of the exhaustive "no conjugate of the H2-image lies in the
/// H1-image" check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum ExhaustiveCheck {
    Confirmed { group_order: usize },
    /// Some conjugate of the H2-image lies in the H1-image.
    Refuted { group_order: usize },
    Skipped { reason: String },
}

fn orbit(gens: &[Perm], start: usize) -> Vec<usize> {
    let mut seen = HashSet::from([start]);
    let mut out = vec![start];
    let mut i = 0;
    while i < out.len() {
        for g in gens {
            let y = g.apply(out[i]);
            if seen.insert(y) {
                out.push(y);
            }
        }
        i += 1;
    }
    out
}

fn largest_orbit(gens: &[Perm], degree: usize) -> Vec<usize> {
    let mut seen = vec![false; degree];
    let mut best = Vec::new();
    for s in 0..degree {
        if seen[s] {
            continue;
        }
        let o = orbit(gens, s);
        for &x in &o {
            seen[x] = true;
        }
        if o.len() > best.len() {
            best = o;
        }
    }
    best
}

/// A lower bound on the group order: the largest orbit length times the
/// largest orbit length of a sample of point-stabilizer elements.
pub fn order_lower_bound(gens: &[Perm]) -> usize {
    let Some(first) = gens.first() else { return 1 };
    let degree = first.degree();
    let orb = largest_orbit(gens, degree);
    let x = orb[0];
    // Schreier tree: parent generator index for each orbit point.
    let mut via: Vec<Option<(usize, usize)>> = vec![None; degree];
    let mut in_orbit = vec![false; degree];
    in_orbit[x] = true;
    let mut queue = VecDeque::from([x]);
    let mut order = vec![x];
    while let Some(b) = queue.pop_front() {
        for (i, g) in gens.iter().enumerate() {
            let c = g.apply(b);
            if !in_orbit[c] {
                in_orbit[c] = true;
                via[c] = Some((b, i));
                queue.push_back(c);
                order.push(c);
            }
        }
    }
    let transversal = |mut b: usize| -> Perm {
        let mut word = Vec::new();
        while let Some((p, i)) = via[b] {
            word.push(i);
            b = p;
        }
        word.iter().rev().fold(Perm::identity(degree), |acc, &i| acc.then(&gens[i]))
    };
    let mut stab = Vec::new();
    'outer: for &b in &order {
        let ub = transversal(b);
        for g in gens {
            let c = g.apply(b);
            let s = ub.then(g).then(&transversal(c).inverse());
            if !s.is_identity() {
                stab.push(s);
                if stab.len() >= SCHREIER_SAMPLE {
                    break 'outer;
                }
            }
        }
    }
    let stab_orbit = if stab.is_empty() { 1 } else { largest_orbit(&stab, degree).len() };
    orb.len().saturating_mul(stab_orbit)
}

/// Lists the group generated by `gens` if its order is at most `max_order`.
pub fn enumerate_group(gens: &[Perm], degree: usize, max_order: usize) -> Enumeration {
    let lower = order_lower_bound(gens);
    if lower > max_order {
        return Enumeration::TooLarge { lower_bound: lower };
    }
    let max_elements = (MAX_STORED_ENTRIES / degree.max(1)).min(max_order + 1);
    let id = Perm::identity(degree);
    let mut seen = HashSet::from([id.clone()]);
    let mut elements = vec![id];
    let mut i = 0;
    while i < elements.len() {
        for g in gens {
            let y = elements[i].then(g);
            if seen.insert(y.clone()) {
                elements.push(y);
                if elements.len() > max_order {
                    return Enumeration::TooLarge { lower_bound: elements.len() };
                }
                if elements.len() >= max_elements {
                    return Enumeration::Inconclusive(format!(
                        "order at least {} but degree {degree} exceeds the enumeration memory budget",
                        elements.len()
                    ));
                }
            }
        }
        i += 1;
    }
    Enumeration::Complete(elements)
}

/// Checks exhaustively that no conjugate of `<h2>` lies in `<h1>` inside the
/// group generated by `gens`, when that group has order at most `max_order`.
pub fn exhaustive_nonconjugacy(gens: &[Perm], h1: &[Perm], h2: &[Perm], degree: usize, max_order: usize) -> ExhaustiveCheck {
    let elements = match enumerate_group(gens, degree, max_order) {
        Enumeration::Complete(e) => e,
        Enumeration::TooLarge { lower_bound } => {
            return ExhaustiveCheck::Skipped { reason: format!("group order at least {lower_bound} exceeds {max_order}") }
        }
        Enumeration::Inconclusive(reason) => return ExhaustiveCheck::Skipped { reason },
    };
    let group_order = elements.len();
    let id = Perm::identity(degree);
    let mut sub: HashSet<Perm> = HashSet::from([id.clone()]);
    let mut list = vec![id];
    let mut i = 0;
    while i < list.len() {
        for g in h1 {
            let y = list[i].then(g);
            if sub.insert(y.clone()) {
                list.push(y);
            }
        }
        i += 1;
    }
    let conjugate_inside = elements.iter().any(|p| {
        let p_inv = p.inverse();
        h2.iter().all(|q| sub.contains(&p_inv.then(q).then(p)))
    });
    if conjugate_inside {
        ExhaustiveCheck::Refuted { group_order }
    } else {
        ExhaustiveCheck::Confirmed { group_order }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[u32]) -> Perm {
        Perm::from_images(v.to_vec()).unwrap()
    }

    #[test]
    fn symmetric_group_orders() {
        let gens = [p(&[1, 0, 2, 3]), p(&[1, 2, 3, 0])];
        match enumerate_group(&gens, 4, 1000) {
            Enumeration::Complete(e) => assert_eq!(e.len(), 24),
            other => panic!("{other:?}"),
        }
        assert!(matches!(enumerate_group(&gens, 4, 10), Enumeration::TooLarge { .. }));
        assert!(order_lower_bound(&gens) <= 24);
    }

    #[test]
    fn conjugacy_in_s3() {
        let s = [p(&[1, 0, 2]), p(&[1, 2, 0])];
        let t1 = [p(&[1, 0, 2])];
        let t2 = [p(&[0, 2, 1])];
        let c3 = [p(&[1, 2, 0])];
        assert_eq!(exhaustive_nonconjugacy(&s, &t1, &t2, 3, 100), ExhaustiveCheck::Refuted { group_order: 6 });
        assert_eq!(exhaustive_nonconjugacy(&s, &t1, &c3, 3, 100), ExhaustiveCheck::Confirmed { group_order: 6 });
    }
}
