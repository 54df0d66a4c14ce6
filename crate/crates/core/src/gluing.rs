//! Gluing `r`-stars to `s`-stars along their peripheral vertices so that
//! the result is connected and has no short cycles.
//!
//! The center graph is bipartite: `num_r` centers of degree `r` on one side,
//! `num_s` centers of degree `s` on the other, one edge per identified
//! peripheral pair. Each center-graph edge is a path of length two in the
//! glued graph, so glued girth is twice the center-graph girth, and glued
//! girth at least `t` means center-graph girth at least `ceil(t / 2)`.

use std::collections::VecDeque;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::config::Limits;
use crate::error::{Error, Result};
use crate::girth::{Girth, Multigraph};
use crate::verify::{ensure, Verdict};

/// A gluing schema. `matching[k] = [i, j]` identifies peripheral slot `i`
/// of the `r`-stars (star `i / r`) with slot `j` of the `s`-stars (star
/// `j / s`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StarGluing {
    pub r: usize,
    pub s: usize,
    pub t: usize,
    pub num_r: usize,
    pub num_s: usize,
    pub matching: Vec<[usize; 2]>,
}

impl StarGluing {
    /// The `s`-star glued to each `r`-slot, in slot order.
    pub fn partner_star(&self, r_slot: usize) -> usize {
        self.matching[r_slot][1] / self.s
    }

    /// Center graph: `r`-centers first, then `s`-centers; edge id = `r`-slot.
    pub fn center_graph(&self) -> Multigraph {
        let mut g = Multigraph::new(self.num_r + self.num_s);
        for (k, &[i, j]) in self.matching.iter().enumerate() {
            g.add_edge(i / self.r, self.num_r + j / self.s, k);
        }
        g
    }

    /// Checks the degree contract, the bijection, connectivity and girth.
    pub fn validate(&self) -> Verdict {
        ensure(self.r >= 1 && self.s >= 1 && self.t >= 1, "bad_parameters", || "r, s, t must be positive".into())?;
        let slots = self.num_r * self.r;
        ensure(slots == self.num_s * self.s && slots > 0, "slot_count", || {
            format!("{} r-slots vs {} s-slots", slots, self.num_s * self.s)
        })?;
        ensure(self.matching.len() == slots, "matching_size", || format!("{} pairs for {slots} slots", self.matching.len()))?;
        let mut seen_s = vec![false; slots];
        for (k, &[i, j]) in self.matching.iter().enumerate() {
            ensure(i == k, "matching_order", || format!("pair {k} starts with slot {i}"))?;
            ensure(j < slots && !seen_s[j], "not_bijective", || format!("s-slot {j} repeated or out of range"))?;
            seen_s[j] = true;
        }
        let g = self.center_graph();
        ensure(g.is_connected(), "disconnected", || "glued graph is not connected".into())?;
        let girth = glued_girth(self, self.t);
        ensure(girth.at_least(self.t), "girth", || format!("glued girth {girth} below {}", self.t))
    }
}

/// Shortest cycle of the glued graph: exact when at most `cap`.
pub fn glued_girth(g: &StarGluing, cap: usize) -> Girth {
    match g.center_graph().girth(cap / 2) {
        Girth::Exact(b) => Girth::Exact(2 * b),
        Girth::AtLeast(_) => Girth::AtLeast(cap + 1),
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Builds a schema whose glued graph has girth at least `t`.
///
/// Counts start at `(lcm/r, lcm/s)` and double after `limits.retry_limit`
/// failed attempts. Each attempt visits the `r`-centers in random order and
/// joins each to `s`-centers with spare capacity that close no center-graph
/// cycle shorter than `ceil(t / 2)`, preferring the farthest, then the
/// emptiest.
pub fn glue_stars(r: usize, s: usize, t: usize, seed: u64, limits: &Limits) -> Result<StarGluing> {
    if r == 0 || s == 0 || t == 0 {
        return Err(Error::InvalidInput("glue_stars needs r, s, t >= 1".into()));
    }
    let lcm = r / gcd(r, s) * s;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (min_r, min_s) = moore_bound(r, s, t.div_ceil(2));
    let mut scale = 1usize;
    while lcm / r * scale < min_r || lcm / s * scale < min_s {
        scale = scale.saturating_mul(2);
        if lcm.saturating_mul(scale) > limits.max_glue_slots {
            break;
        }
    }
    loop {
        let (num_r, num_s) = (lcm / r * scale, lcm / s * scale);
        let slots = num_r * r;
        if slots > limits.max_glue_slots {
            return Err(Error::Resource(format!(
                "star gluing for r={r}, s={s}, t={t} needs more than {} slots (last tried {})",
                limits.max_glue_slots,
                slots / 2
            )));
        }
        for _ in 0..limits.retry_limit.max(1) {
            if let Some(g) = attempt(r, s, t, num_r, num_s, &mut rng) {
                debug_assert!(g.validate().is_ok());
                return Ok(g);
            }
        }
        scale *= 2;
    }
}

/// Lower bounds on the numbers of r-centers and s-centers of a bipartite
/// center graph whose cycles all have length at least `need`: the ball of
/// radius `k - 1` around any center, for girth `2k`, is a tree.
fn moore_bound(r: usize, s: usize, need: usize) -> (usize, usize) {
    let k = need.div_ceil(2).max(1);
    let mut from_r = [0usize; 2];
    let mut from_s = [0usize; 2];
    for (counts, first, second) in [(&mut from_r, r, s), (&mut from_s, s, r)] {
        let mut level = 1usize;
        for depth in 0..k {
            counts[depth % 2] = counts[depth % 2].saturating_add(level);
            let degree = if depth % 2 == 0 { first } else { second };
            let branching = if depth == 0 { degree } else { degree - 1 };
            level = level.saturating_mul(branching);
        }
    }
    (from_r[0].max(from_s[1]), from_r[1].max(from_s[0]))
}

fn attempt(r: usize, s: usize, t: usize, num_r: usize, num_s: usize, rng: &mut ChaCha8Rng) -> Option<StarGluing> {
    let n = num_r + num_s;
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut spare = vec![s; num_s];
    let mut dist = vec![usize::MAX; n];
    let mut touched = Vec::new();
    // A new edge i-j closes a center-graph cycle of length dist(i, j) + 1.
    let need = t.div_ceil(2);
    let too_close = need.saturating_sub(2);
    let mut order: Vec<usize> = (0..num_r).collect();
    let mut r_edges: Vec<Vec<usize>> = vec![Vec::new(); num_r];
    order.shuffle(rng);
    for &i in &order {
        for _ in 0..r {
            for &x in &touched {
                dist[x] = usize::MAX;
            }
            touched.clear();
            dist[i] = 0;
            touched.push(i);
            let mut queue = VecDeque::from([i]);
            while let Some(x) = queue.pop_front() {
                if dist[x] >= too_close {
                    continue;
                }
                for &y in &adj[x] {
                    if dist[y] == usize::MAX {
                        dist[y] = dist[x] + 1;
                        touched.push(y);
                        queue.push_back(y);
                    }
                }
            }
            let mut best: Vec<usize> = Vec::new();
            let mut best_key = (0, 0);
            for j in 0..num_s {
                let d = dist[num_r + j];
                if spare[j] == 0 || (d != usize::MAX && d + 1 < need) {
                    continue;
                }
                let key = (d.min(n), spare[j]);
                if key > best_key {
                    best_key = key;
                    best.clear();
                }
                if key == best_key {
                    best.push(j);
                }
            }
            let j = *best.get(rng.gen_range(0..best.len().max(1)))?;
            spare[j] -= 1;
            adj[i].push(num_r + j);
            adj[num_r + j].push(i);
            r_edges[i].push(j);
        }
    }
    // Assign slot numbers: r-slot i*r + k, s-slots in order of arrival.
    let mut next_s = vec![0; num_s];
    let mut matching = Vec::with_capacity(num_r * r);
    for (i, list) in r_edges.iter().enumerate() {
        for (k, &j) in list.iter().enumerate() {
            matching.push([i * r + k, j * s + next_s[j]]);
            next_s[j] += 1;
        }
    }
    let g = StarGluing { r, s, t, num_r, num_s, matching };
    g.validate().is_ok().then_some(g)
}
