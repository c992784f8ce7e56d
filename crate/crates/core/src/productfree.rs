//! Product-free subsets: verification, exact maximum by branch and bound,
//! coset constructions and a greedy heuristic.
//!
//! `A` is product-free when `x y` is never in `A` for `x, y` in `A`,
//! including `x = y`.

use std::sync::atomic::{AtomicU64, AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{q, serialize_rational, Q};
use crate::exec::Exec;
use crate::groups::{build_abelian, GroupTable};
use crate::quasirandom::{green_ruzsa_pf, verify_bound, BoundReport, Relation};

pub const DEFAULT_NODE_BUDGET: u64 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SearchResult {
    pub group: String,
    pub size: usize,
    #[serde(serialize_with = "serialize_rational")]
    pub density: Q,
    pub optimal: bool,
    pub witness: Vec<usize>,
    pub nodes: u64,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl SearchResult {
    fn new(g: &GroupTable, mut witness: Vec<usize>, optimal: bool, nodes: u64, elapsed: Duration) -> Self {
        witness.sort_unstable();
        SearchResult {
            group: g.descriptor().label(),
            size: witness.len(),
            density: q(witness.len() as i64, g.order() as i64),
            optimal,
            witness,
            nodes,
            elapsed,
        }
    }
}

pub fn verify_product_free(g: &GroupTable, set: &[usize]) -> bool {
    let mut member = vec![false; g.order()];
    for &x in set {
        member[x] = true;
    }
    set.iter().all(|&x| set.iter().all(|&y| !member[g.mul(x, y)]))
}

#[derive(Clone)]
struct Bits(Vec<u64>);

impl Bits {
    fn new(n: usize) -> Self {
        Bits(vec![0; n.div_ceil(64)])
    }
    #[inline]
    fn get(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }
    #[inline]
    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }
    #[inline]
    fn clear(&mut self, i: usize) {
        self.0[i / 64] &= !(1 << (i % 64));
    }
}

struct Shared {
    best_size: AtomicUsize,
    best: Mutex<Vec<usize>>,
    nodes: AtomicU64,
    budget: u64,
}

struct Ctx<'a> {
    g: &'a GroupTable,
    n: usize,
    inv: Vec<usize>,
    shared: &'a Shared,
}

impl Ctx<'_> {
    /// Whether `c` may still join `set` once `g` has been added to it
    /// (`set` already contains `g`). Every new product involves both.
    #[inline]
    fn compatible(&self, set: &Bits, g: usize, c: usize) -> bool {
        let t = self.g;
        let ci = self.inv[c];
        let gi = self.inv[g];
        !(set.get(t.mul(g, c))
            || set.get(t.mul(c, g))
            || t.mul(c, c) == g
            || set.get(t.mul(ci, g))
            || set.get(t.mul(g, ci))
            || set.get(t.mul(gi, c))
            || set.get(t.mul(c, gi)))
    }

    /// `max_a |U ∪ aU| / 2` over `a` in the current set: a product-free `S`
    /// inside `U` containing `a` is disjoint from `aS`.
    fn pair_bound(&self, chosen: &[usize], union: &[usize]) -> usize {
        let mut best = usize::MAX;
        let mut mark = vec![false; self.n];
        for &a in chosen.iter().take(4) {
            mark.iter_mut().for_each(|m| *m = false);
            let mut count = 0;
            for &u in union {
                if !mark[u] {
                    mark[u] = true;
                    count += 1;
                }
                let au = self.g.mul(a, u);
                if !mark[au] {
                    mark[au] = true;
                    count += 1;
                }
            }
            best = best.min(count / 2);
        }
        best
    }

    fn search(&self, set: &mut Bits, chosen: &mut Vec<usize>, candidates: &[usize]) -> bool {
        let nodes = self.shared.nodes.fetch_add(1, Ordering::Relaxed) + 1;
        if nodes > self.shared.budget {
            return false;
        }
        if chosen.len() > self.shared.best_size.load(Ordering::Relaxed) {
            let mut best = self.shared.best.lock().unwrap();
            if chosen.len() > self.shared.best_size.load(Ordering::Relaxed) {
                *best = chosen.clone();
                self.shared.best_size.store(chosen.len(), Ordering::Relaxed);
            }
        }
        if !chosen.is_empty() && !candidates.is_empty() {
            let union: Vec<usize> = chosen.iter().chain(candidates).copied().collect();
            if self.pair_bound(chosen, &union) <= self.shared.best_size.load(Ordering::Relaxed) {
                return true;
            }
        }
        for (i, &c) in candidates.iter().enumerate() {
            if chosen.len() + candidates.len() - i <= self.shared.best_size.load(Ordering::Relaxed) {
                break;
            }
            if !self.branch(set, chosen, c, &candidates[i + 1..]) {
                return false;
            }
        }
        true
    }

    fn branch(&self, set: &mut Bits, chosen: &mut Vec<usize>, c: usize, rest: &[usize]) -> bool {
        set.set(c);
        chosen.push(c);
        let next: Vec<usize> = rest.iter().copied().filter(|&d| self.compatible(set, c, d)).collect();
        let ok = self.search(set, chosen, &next);
        chosen.pop();
        set.clear(c);
        ok
    }
}

/// Number of distinct triples `(a, b, a b)` involving each element.
fn constraint_counts(g: &GroupTable) -> Vec<u64> {
    let n = g.order();
    let mut counts = vec![0u64; n];
    for a in 0..n {
        for b in 0..n {
            let c = g.mul(a, b);
            counts[a] += 1;
            if b != a {
                counts[b] += 1;
            }
            if c != a && c != b {
                counts[c] += 1;
            }
        }
    }
    counts
}

/// Exact maximum product-free subset by branch and bound.
///
/// Elements are tried in descending order of constraint count (ties by
/// ordinal). A node keeps the chosen set `A` and the candidates `C` that can
/// still be added; it is pruned when `|A| + |C|`, or the disjointness bound
/// `|U ∪ aU| / 2` with `U = A ∪ C`, cannot beat the incumbent. The greedy
/// result seeds the incumbent. Exhausting `node_budget` returns the best set
/// found with `optimal = false`.
pub fn exact_max_product_free(g: &GroupTable, node_budget: u64, exec: Exec) -> Result<SearchResult> {
    let start = Instant::now();
    let n = g.order();
    let e = g.identity();
    let counts = constraint_counts(g);
    let mut order: Vec<usize> = (0..n).filter(|&x| x != e).collect();
    order.sort_by(|&a, &b| counts[b].cmp(&counts[a]).then(a.cmp(&b)));
    let greedy = greedy_in_order(g, &order, &[]);
    let shared = Shared {
        best_size: AtomicUsize::new(greedy.len()),
        best: Mutex::new(greedy),
        nodes: AtomicU64::new(0),
        budget: node_budget,
    };
    let ctx = Ctx { g, n, inv: (0..n).map(|x| g.inv(x)).collect(), shared: &shared };

    let completed = exec.map(order.len(), |i| {
        if 1 + order.len() - i <= shared.best_size.load(Ordering::Relaxed) {
            return true;
        }
        let mut set = Bits::new(n);
        let mut chosen = Vec::new();
        ctx.branch(&mut set, &mut chosen, order[i], &order[i + 1..])
    });
    let optimal = completed.iter().all(|&ok| ok);
    let nodes = shared.nodes.load(Ordering::Relaxed).min(node_budget.saturating_add(1));
    let witness = shared.best.into_inner().unwrap();
    Ok(SearchResult::new(g, witness, optimal, nodes, start.elapsed()))
}

fn greedy_in_order(g: &GroupTable, order: &[usize], initial: &[usize]) -> Vec<usize> {
    let n = g.order();
    let mut set = Bits::new(n);
    let mut chosen: Vec<usize> = initial.to_vec();
    for &x in initial {
        set.set(x);
    }
    let inv: Vec<usize> = (0..n).map(|x| g.inv(x)).collect();
    for &c in order {
        if set.get(c) {
            continue;
        }
        // with c tentatively added, every new product involves c
        set.set(c);
        let ok = !set.get(g.mul(c, c))
            && chosen.iter().all(|&a| {
                !set.get(g.mul(a, c)) && !set.get(g.mul(c, a)) && !set.get(g.mul(inv[a], c))
            });
        if ok {
            chosen.push(c);
        } else {
            set.clear(c);
        }
    }
    chosen
}

/// A maximal product-free set grown from `initial` (which must itself be
/// product-free) by scanning the elements in a seeded random order.
pub fn greedy_product_free(g: &GroupTable, seed: u64, initial: Option<&[usize]>) -> Result<SearchResult> {
    let start = Instant::now();
    let initial = initial.unwrap_or(&[]);
    if initial.iter().any(|&x| x >= g.order()) || !verify_product_free(g, initial) {
        return Err(Error::InvalidParameters("initial set is not product-free".into()));
    }
    let mut order: Vec<usize> = (0..g.order()).collect();
    order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    let chosen = greedy_in_order(g, &order, initial);
    Ok(SearchResult::new(g, chosen, false, 0, start.elapsed()))
}

/// The left coset `x H` for the first `x` outside `H`: product-free of
/// density `1/[G:H]`.
pub fn coset_product_free(g: &GroupTable, subgroup: &[usize]) -> Result<SearchResult> {
    let start = Instant::now();
    let mut member = vec![false; g.order()];
    for &h in subgroup {
        member[h] = true;
    }
    let x = (0..g.order()).find(|&x| !member[x]).ok_or(Error::NotProper)?;
    let witness: Vec<usize> = subgroup.iter().map(|&h| g.mul(x, h)).collect();
    let result = SearchResult::new(g, witness, false, 0, start.elapsed());
    debug_assert!(verify_product_free(g, &result.witness));
    Ok(result)
}

/// Exact search against the closed-form density for a finite abelian group.
pub fn formula_vs_search(factors: &[u64], node_budget: u64, exec: Exec) -> Result<BoundReport> {
    let small: Vec<u32> = factors
        .iter()
        .map(|&f| u32::try_from(f).map_err(|_| Error::InvalidParameters(format!("factor {f} too large"))))
        .collect::<Result<_>>()?;
    let g = build_abelian(&small, crate::groups::DEFAULT_ELEMENT_BUDGET)?;
    let found = exact_max_product_free(&g, node_budget, exec)?;
    if !found.optimal {
        return Err(Error::BudgetExceeded(node_budget));
    }
    let formula = green_ruzsa_pf(factors)?;
    Ok(verify_bound(
        &format!("pf({})", g.descriptor().label()),
        found.density,
        formula,
        Relation::Equal,
        &["exact search", "abelian product-free density formula"],
    ))
}
