//! Edge rankability: the minimum number of single-entry edits `k` that turn
//! a graph into a complete dominance graph, and the number `p` of dominance
//! graphs reachable with exactly `k` edits.
//!
//! `p` is counted over vertex orderings. For `n >= 2` two different
//! orderings always give different dominance edge sets (the first position
//! where they differ fixes the direction of one pair), so counting orderings
//! and counting dominance graphs agree.
//!
//! The exact search is a depth-first branch and bound over ordering
//! prefixes. Placing a vertex directly below the current prefix fixes the
//! cost of every pair it forms with the still-unplaced vertices, so the
//! committed cost of a prefix is exact. The remaining pairs are bounded
//! below by the number of draws and contradictions among them, since such a
//! pair costs one edit under either orientation.

use std::sync::atomic::{AtomicBool, AtomicUsize, Ordering};
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{Digraph, VertexOrdering};

/// Largest `n` accepted by [`compute_kp_bruteforce`].
pub const BRUTEFORCE_MAX_N: usize = 9;

/// Result of the `(k, p)` search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KPResult {
    pub k: usize,
    pub p: u64,
    /// Every optimal ordering, sorted, when requested.
    pub minimizers: Option<Vec<VertexOrdering>>,
}

#[derive(Clone, Debug)]
pub struct SearchOptions {
    /// Refuse graphs larger than this.
    pub max_n: usize,
    /// Abort with [`Error::Timeout`] after this long.
    pub time_budget: Option<Duration>,
    pub collect_minimizers: bool,
    /// Split the search over the first-position vertex on the rayon pool.
    pub parallel: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self { max_n: 12, time_budget: None, collect_minimizers: false, parallel: true }
    }
}

/// Edits needed so that `g`, with rows and columns permuted by `order`, is
/// strictly upper-triangular ones.
pub fn ordering_cost(g: &Digraph, order: &VertexOrdering) -> Result<usize> {
    order.check_len(g.n())?;
    Ok(cost_of(g, order.as_slice()))
}

fn cost_of(g: &Digraph, order: &[usize]) -> usize {
    let mut cost = 0;
    for (p, &u) in order.iter().enumerate() {
        for &v in &order[p + 1..] {
            cost += (1 - g.entry(u, v) as usize) + g.entry(v, u) as usize;
        }
    }
    cost
}

/// Exhaustive `(k, p)` over all `n!` orderings. Kept as a test oracle.
pub fn compute_kp_bruteforce(g: &Digraph) -> Result<KPResult> {
    let n = g.n();
    if n > BRUTEFORCE_MAX_N {
        return Err(Error::TooLarge { what: "brute-force (k, p)", n, max: BRUTEFORCE_MAX_N });
    }
    let mut order: Vec<usize> = (0..n).collect();
    let mut best = usize::MAX;
    let mut count = 0u64;
    let mut visit = |o: &[usize]| {
        let c = cost_of(g, o);
        if c < best {
            best = c;
            count = 1;
        } else if c == best {
            count += 1;
        }
    };
    // Heap's algorithm, iterative form.
    let mut stack = vec![0usize; n];
    visit(&order);
    let mut i = 1;
    while i < n {
        if stack[i] < i {
            if i % 2 == 0 {
                order.swap(0, i);
            } else {
                order.swap(stack[i], i);
            }
            visit(&order);
            stack[i] += 1;
            i = 1;
        } else {
            stack[i] = 0;
            i += 1;
        }
    }
    Ok(KPResult { k: best, p: count, minimizers: None })
}

/// Per-pair costs shared by all search workers.
struct CostTable {
    n: usize,
    /// `excess[u * n + v] = above[u][v] - min(above[u][v], above[v][u])`.
    excess: Vec<u8>,
    /// `floor[u * n + v] = min(above[u][v], above[v][u])`.
    floor: Vec<u8>,
}

impl CostTable {
    fn new(g: &Digraph) -> Self {
        let n = g.n();
        // edits on pair {u, v} if u is ranked above v
        let mut above = vec![0u8; n * n];
        for u in 0..n {
            for v in 0..n {
                if u != v {
                    above[u * n + v] = (1 - g.entry(u, v)) + g.entry(v, u);
                }
            }
        }
        let mut excess = vec![0u8; n * n];
        let mut floor = vec![0u8; n * n];
        for u in 0..n {
            for v in 0..n {
                let m = above[u * n + v].min(above[v * n + u]);
                floor[u * n + v] = m;
                excess[u * n + v] = above[u * n + v] - m;
            }
        }
        Self { n, excess, floor }
    }

    /// Lower bound on the cost among the vertices in `mask`.
    fn bound(&self, mask: u64) -> usize {
        let mut total = 0;
        let mut rest = mask;
        while rest != 0 {
            let u = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let mut others = rest;
            while others != 0 {
                let v = others.trailing_zeros() as usize;
                others &= others - 1;
                total += self.floor[u * self.n + v] as usize;
            }
        }
        total
    }

    /// Increase of `committed + bound` when `v` is placed above everything in `mask`.
    fn step(&self, v: usize, mask: u64) -> usize {
        let row = &self.excess[v * self.n..(v + 1) * self.n];
        let mut total = 0;
        let mut rest = mask;
        while rest != 0 {
            let u = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            total += row[u] as usize;
        }
        total
    }
}

struct Shared {
    incumbent: AtomicUsize,
    abort: AtomicBool,
    deadline: Option<Instant>,
}

struct Worker<'a> {
    table: &'a CostTable,
    shared: &'a Shared,
    collect: bool,
    best: usize,
    count: u64,
    minimizers: Vec<Vec<usize>>,
    prefix: Vec<usize>,
    nodes: u64,
}

impl Worker<'_> {
    /// `value` is committed cost plus the lower bound for `mask`.
    fn search(&mut self, mask: u64, value: usize) {
        self.nodes += 1;
        if self.nodes & 0x3ff == 0 {
            if let Some(deadline) = self.shared.deadline {
                if Instant::now() >= deadline {
                    self.shared.abort.store(true, Ordering::Relaxed);
                }
            }
        }
        if self.shared.abort.load(Ordering::Relaxed) {
            return;
        }
        if mask == 0 {
            // bound is zero, so `value` is the exact cost of the ordering
            if value < self.best {
                self.best = value;
                self.count = 1;
                self.minimizers.clear();
            } else if value == self.best {
                self.count += 1;
            } else {
                return;
            }
            if self.collect {
                self.minimizers.push(self.prefix.clone());
            }
            self.shared.incumbent.fetch_min(value, Ordering::Relaxed);
            return;
        }

        let mut children: Vec<(usize, usize)> = Vec::with_capacity(mask.count_ones() as usize);
        let mut rest = mask;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let child_mask = mask & !(1u64 << v);
            children.push((value + self.table.step(v, child_mask), v));
        }
        children.sort_unstable();
        for (child_value, v) in children {
            // stale incumbent reads only weaken pruning
            let incumbent = self.shared.incumbent.load(Ordering::Relaxed).min(self.best);
            if child_value > incumbent {
                break;
            }
            self.prefix.push(v);
            self.search(mask & !(1u64 << v), child_value);
            self.prefix.pop();
        }
    }
}

/// Greedy ordering by out-degree minus in-degree; seeds the incumbent.
fn greedy_cost(g: &Digraph) -> usize {
    let n = g.n();
    let mut score: Vec<(i64, usize)> = (0..n)
        .map(|v| {
            let out: i64 = (0..n).map(|u| g.entry(v, u) as i64).sum();
            let inn: i64 = (0..n).map(|u| g.entry(u, v) as i64).sum();
            (inn - out, v)
        })
        .collect();
    score.sort_unstable();
    let order: Vec<usize> = score.into_iter().map(|(_, v)| v).collect();
    cost_of(g, &order)
}

/// Exact `(k, p)` by branch and bound.
pub fn compute_kp(g: &Digraph, opts: &SearchOptions) -> Result<KPResult> {
    let n = g.n();
    if n > opts.max_n || n > 63 {
        return Err(Error::TooLarge { what: "(k, p) search", n, max: opts.max_n.min(63) });
    }
    let table = CostTable::new(g);
    let shared = Shared {
        incumbent: AtomicUsize::new(greedy_cost(g)),
        abort: AtomicBool::new(false),
        deadline: opts.time_budget.map(|b| Instant::now() + b),
    };
    let full: u64 = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let root_value = table.bound(full);

    let run_first = |first: usize| {
        let mut w = Worker {
            table: &table,
            shared: &shared,
            collect: opts.collect_minimizers,
            best: usize::MAX,
            count: 0,
            minimizers: Vec::new(),
            prefix: vec![first],
            nodes: 0,
        };
        let mask = full & !(1u64 << first);
        let value = root_value + table.step(first, mask);
        if value <= shared.incumbent.load(Ordering::Relaxed) {
            w.search(mask, value);
        }
        (w.best, w.count, w.minimizers)
    };

    let parts: Vec<(usize, u64, Vec<Vec<usize>>)> = if opts.parallel {
        (0..n).into_par_iter().map(run_first).collect()
    } else {
        (0..n).map(run_first).collect()
    };

    if shared.abort.load(Ordering::Relaxed) {
        return Err(Error::Timeout(opts.time_budget.unwrap_or_default()));
    }

    let k = parts.iter().map(|p| p.0).min().expect("n >= 2");
    let mut p = 0u64;
    let mut minimizers = Vec::new();
    for (best, count, mins) in parts {
        if best == k {
            p += count;
            minimizers.extend(mins);
        }
    }
    let minimizers = opts.collect_minimizers.then(|| {
        minimizers.sort_unstable();
        minimizers
            .into_iter()
            .map(|o| VertexOrdering::new(o).expect("search yields permutations"))
            .collect()
    });
    Ok(KPResult { k, p, minimizers })
}

/// `n(n-1)/2`, the largest possible `k`.
pub fn k_max(n: usize) -> f64 {
    (n * (n - 1) / 2) as f64
}

/// `n!` as a float, the largest possible `p`.
pub fn p_max(n: usize) -> f64 {
    (2..=n).map(|i| i as f64).product()
}

/// `1 - k p / (k_max p_max)`.
pub fn edge_rankability_from_kp(n: usize, k: usize, p: u64) -> f64 {
    1.0 - (k as f64 * p as f64) / (k_max(n) * p_max(n))
}

pub fn edge_rankability(g: &Digraph) -> Result<f64> {
    edge_rankability_with(g, &SearchOptions::default()).map(|(_, r)| r)
}

/// Edge rankability together with the `(k, p)` it came from.
pub fn edge_rankability_with(g: &Digraph, opts: &SearchOptions) -> Result<(KPResult, f64)> {
    let kp = compute_kp(g, opts)?;
    let r = edge_rankability_from_kp(g.n(), kp.k, kp.p);
    Ok((kp, r))
}

/// Closed form for a directed `n`-cycle: `1 - (2 + (n-1)(n-2)) / (n! (n-1))`.
pub fn edge_rankability_cycle(n: usize) -> Result<f64> {
    if n < 3 {
        return Err(Error::TooSmall { min: 3, got: n });
    }
    let nf = n as f64;
    Ok(1.0 - (2.0 + (nf - 1.0) * (nf - 2.0)) / (p_max(n) * (nf - 1.0)))
}
