//! Exhaustive generation of all unital rings of a given small order up to
//! isomorphism — the brute-force census that grounds every property sweep.
//!
//! Strategy: fix an additive group as a list of prime-power cyclic
//! components, then enumerate multiplications through their structure
//! constants on the component generators; bilinearity induces the full
//! table. Cross-prime generator products are forced to zero (a product is
//! killed by two coprime numbers), so the search factorizes per prime.
//!
//! The optimized search anchors the identity: the multiplicative identity
//! always has maximal additive order, and an additive automorphism moves
//! any such element onto the sum of the leading component generators, so
//! every isomorphism class is reached with the identity in a normalized
//! position and every product involving a leading generator is forced.
//! The unoptimized reference path leaves all same-prime products free and
//! post-filters tables that happen to possess a two-sided identity; it
//! exists to validate the anchored search.

use std::collections::BTreeMap;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

use rayon::prelude::*;

use crate::error::Error;
use crate::iso::{self, Fingerprint};
use crate::ring::{checked_pow, factorize, FiniteRing};

/// Default ceiling on the order a single task may enumerate.
pub const DEFAULT_ENUMERATION_CAP: usize = 16;
/// Absolute ceiling, regardless of the configured cap.
pub const MAX_ENUMERATION_ORDER: usize = 32;

/// Search nodes are counted into the shared total (and the budget is
/// consulted) once per this many local steps.
const NODE_FLUSH_BATCH: u64 = 64;

const UNSET: u32 = u32::MAX;

/// All abelian groups of order n as multisets of prime-power cycle
/// orders: primes ascending, powers of one prime descending.
///
/// n=4 -> [[4],[2,2]]; n=8 -> [[8],[4,2],[2,2,2]]; n=12 -> [[4,3],[2,2,3]].
pub fn abelian_groups_of_order(n: usize) -> Vec<Vec<usize>> {
    assert!(n >= 1, "group order must be positive");
    let mut out: Vec<Vec<usize>> = vec![vec![]];
    for (p, e) in factorize(n) {
        let choices: Vec<Vec<usize>> = partitions_desc(e)
            .into_iter()
            .map(|part| {
                part.into_iter()
                    .map(|k| checked_pow(p, k).expect("component fits in usize"))
                    .collect()
            })
            .collect();
        let mut next = Vec::with_capacity(out.len() * choices.len());
        for base in &out {
            for choice in &choices {
                let mut c = base.clone();
                c.extend_from_slice(choice);
                next.push(c);
            }
        }
        out = next;
    }
    out
}

/// Partitions of n into positive parts sorted descending, largest-first
/// order: [n] first, [1,1,...,1] last.
fn partitions_desc(n: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if n == 0 {
            out.push(prefix.clone());
            return;
        }
        let mut part = n.min(max);
        while part >= 1 {
            prefix.push(part);
            rec(n - part, part, prefix, out);
            prefix.pop();
            part -= 1;
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// A census request: which order, optionally which additive group, how
/// hard to try, and whether to reduce modulo isomorphism.
#[derive(Debug, Clone)]
pub struct EnumerationTask {
    order: usize,
    additive_group: Option<Vec<usize>>,
    cap: usize,
    budget: Option<u64>,
    dedupe: bool,
}

impl EnumerationTask {
    pub fn new(order: usize) -> EnumerationTask {
        EnumerationTask {
            order,
            additive_group: None,
            cap: DEFAULT_ENUMERATION_CAP,
            budget: None,
            dedupe: true,
        }
    }

    /// Restricts the census to a single additive group, given as
    /// prime-power component orders in any order (normalized internally).
    pub fn with_additive_group(mut self, components: Vec<usize>) -> EnumerationTask {
        self.additive_group = Some(components);
        self
    }

    /// Raises or lowers the per-task order ceiling; clamped to the hard
    /// maximum of 32.
    pub fn with_cap(mut self, cap: usize) -> EnumerationTask {
        self.cap = cap.min(MAX_ENUMERATION_ORDER);
        self
    }

    /// Bounds the search by an approximate node count; an exhausted
    /// budget aborts with a partial census.
    pub fn with_budget(mut self, nodes: u64) -> EnumerationTask {
        self.budget = Some(nodes);
        self
    }

    pub fn with_dedupe(mut self, dedupe: bool) -> EnumerationTask {
        self.dedupe = dedupe;
        self
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn dedupe(&self) -> bool {
        self.dedupe
    }
}

/// Result of an enumeration run.
#[derive(Debug, Clone)]
pub struct Census {
    pub order: usize,
    /// Whether the ring list was reduced modulo isomorphism.
    pub deduped: bool,
    /// False when a budget abort truncated the search.
    pub complete: bool,
    pub rings: Vec<FiniteRing>,
    /// Ring count per additive group, in `abelian_groups_of_order` order.
    pub by_group: Vec<(Vec<usize>, usize)>,
    /// Approximate number of search nodes visited.
    pub nodes: u64,
}

impl Census {
    pub fn total(&self) -> usize {
        self.rings.len()
    }

    pub fn noncommutative_count(&self) -> usize {
        self.rings.iter().filter(|r| !r.is_commutative()).count()
    }
}

/// Enumeration failure: invalid request, or exhausted budget carrying
/// whatever was found before the abort.
#[derive(Debug)]
pub enum CensusError {
    Invalid(Error),
    Budget { partial: Box<Census> },
}

impl From<Error> for CensusError {
    fn from(e: Error) -> CensusError {
        CensusError::Invalid(e)
    }
}

impl std::fmt::Display for CensusError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CensusError::Invalid(e) => write!(f, "invalid enumeration request: {e}"),
            CensusError::Budget { partial } => write!(
                f,
                "search budget exhausted after {} nodes with {} rings found",
                partial.nodes,
                partial.rings.len()
            ),
        }
    }
}

impl std::error::Error for CensusError {
    fn source(&self) -> Option<&(dyn std::error::Error + 'static)> {
        match self {
            CensusError::Invalid(e) => Some(e),
            CensusError::Budget { .. } => None,
        }
    }
}

// ----------------------------------------------------------------------
// search context for one additive group
// ----------------------------------------------------------------------

/// Precomputed data for one additive group: mixed-radix indexing with the
/// first component as the lowest digit (matching direct-sum indexing),
/// the full addition table, and the per-component generator bookkeeping.
struct GroupContext {
    components: Vec<usize>,
    n: usize,
    r: usize,
    /// coords[x] = per-component digits of element x.
    coords: Vec<Vec<u32>>,
    add: Vec<u32>,
    /// prime of each component.
    primes: Vec<usize>,
    /// element index of the i-th component generator.
    gen_index: Vec<usize>,
    /// whether component i is the leading (largest-power) component of
    /// its prime.
    leader: Vec<bool>,
    /// sum of the leading generators — the anchored identity.
    u0: usize,
}

impl GroupContext {
    fn new(components: Vec<usize>) -> GroupContext {
        let r = components.len();
        let n: usize = components.iter().product();
        let mut strides = vec![1usize; r];
        for i in 1..r {
            strides[i] = strides[i - 1] * components[i - 1];
        }
        let mut coords = Vec::with_capacity(n);
        for x in 0..n {
            let mut rem = x;
            let mut cs = Vec::with_capacity(r);
            for &q in &components {
                cs.push((rem % q) as u32);
                rem /= q;
            }
            coords.push(cs);
        }
        let recompose = |cs: &[u32]| -> usize {
            cs.iter()
                .zip(&strides)
                .map(|(&c, &s)| c as usize * s)
                .sum()
        };
        let mut add = vec![0u32; n * n];
        for x in 0..n {
            for y in 0..n {
                let cs: Vec<u32> = (0..r)
                    .map(|i| {
                        (coords[x][i] as usize + coords[y][i] as usize) as u32
                            % components[i] as u32
                    })
                    .collect();
                add[x * n + y] = recompose(&cs) as u32;
            }
        }
        let primes: Vec<usize> = components.iter().map(|&q| factorize(q)[0].0).collect();
        let gen_index: Vec<usize> = (0..r).map(|i| strides[i]).collect();
        let mut seen = std::collections::BTreeSet::new();
        let leader: Vec<bool> = primes.iter().map(|&p| seen.insert(p)).collect();
        let mut u0 = 0usize;
        for i in 0..r {
            if leader[i] {
                u0 += gen_index[i];
            }
        }
        GroupContext {
            components,
            n,
            r,
            coords,
            add,
            primes,
            gen_index,
            leader,
            u0,
        }
    }

    fn add_elems(&self, x: usize, y: usize) -> usize {
        self.add[x * self.n + y] as usize
    }

    /// k-fold additive multiple of x, componentwise.
    fn scalar(&self, k: usize, x: usize) -> usize {
        let mut idx = 0usize;
        let mut stride = 1usize;
        for i in 0..self.r {
            let q = self.components[i];
            idx += (self.coords[x][i] as usize * k % q) * stride;
            stride *= q;
        }
        idx
    }

    /// Elements x with p^m · x = 0, ascending.
    fn killed_by(&self, p: usize, m: usize) -> Vec<u32> {
        let pm = checked_pow(p, m).expect("kill bound fits");
        (0..self.n)
            .filter(|&x| {
                (0..self.r).all(|i| self.coords[x][i] as usize * pm % self.components[i] == 0)
            })
            .map(|x| x as u32)
            .collect()
    }

    fn exponent_of(&self, i: usize) -> usize {
        factorize(self.components[i])[0].1
    }
}

// ----------------------------------------------------------------------
// structure-constant search
// ----------------------------------------------------------------------

struct SearchShared<'a> {
    ctx: &'a GroupContext,
    free: Vec<(usize, usize)>,
    candidates: Vec<Vec<u32>>,
    /// same-prime generator triples to verify, per mode.
    triples: Vec<(usize, usize, usize)>,
    anchored: bool,
    nodes: &'a AtomicU64,
    abort: &'a AtomicBool,
    budget: Option<u64>,
}

struct SearchState {
    /// r x r structure constants, UNSET where still free.
    c: Vec<u32>,
    local_nodes: u64,
    /// accepted leaves: (mul table, identity index).
    out: Vec<(Vec<u32>, usize)>,
}

impl SearchShared<'_> {
    /// v · e_k expanded by bilinearity; None if a needed constant is
    /// still unset.
    fn mul_elem_gen(&self, c: &[u32], v: usize, k: usize) -> Option<usize> {
        let ctx = self.ctx;
        let mut acc = 0usize;
        for m in 0..ctx.r {
            let coef = ctx.coords[v][m] as usize;
            if coef == 0 {
                continue;
            }
            let cv = c[m * ctx.r + k];
            if cv == UNSET {
                return None;
            }
            acc = ctx.add_elems(acc, ctx.scalar(coef, cv as usize));
        }
        Some(acc)
    }

    /// e_i · v, symmetric to `mul_elem_gen`.
    fn mul_gen_elem(&self, c: &[u32], i: usize, v: usize) -> Option<usize> {
        let ctx = self.ctx;
        let mut acc = 0usize;
        for m in 0..ctx.r {
            let coef = ctx.coords[v][m] as usize;
            if coef == 0 {
                continue;
            }
            let cv = c[i * ctx.r + m];
            if cv == UNSET {
                return None;
            }
            acc = ctx.add_elems(acc, ctx.scalar(coef, cv as usize));
        }
        Some(acc)
    }

    /// (e_i e_j) e_k == e_i (e_j e_k) when both sides are evaluable.
    fn triple_ok(&self, c: &[u32], i: usize, j: usize, k: usize) -> Option<bool> {
        let r = self.ctx.r;
        let v = c[i * r + j];
        if v == UNSET {
            return None;
        }
        let lhs = self.mul_elem_gen(c, v as usize, k)?;
        let w = c[j * r + k];
        if w == UNSET {
            return None;
        }
        let rhs = self.mul_gen_elem(c, i, w as usize)?;
        Some(lhs == rhs)
    }

    /// Evaluates the triples that involve the just-assigned pair directly;
    /// deeper dependencies are caught at the leaf.
    fn prune_ok(&self, c: &[u32], i: usize, j: usize) -> bool {
        for &(a, b, k) in &self.triples {
            if (a == i && b == j) || (b == i && k == j) || (a == i && k == j) {
                if let Some(false) = self.triple_ok(c, a, b, k) {
                    return false;
                }
            }
        }
        true
    }

    fn leaf_ok(&self, c: &[u32]) -> bool {
        self.triples
            .iter()
            .all(|&(i, j, k)| self.triple_ok(c, i, j, k) == Some(true))
    }

    /// Expands the structure constants into the full n x n table.
    fn materialize(&self, c: &[u32]) -> Vec<u32> {
        let ctx = self.ctx;
        let n = ctx.n;
        let r = ctx.r;
        let mut mul = vec![0u32; n * n];
        for x in 0..n {
            for y in 0..n {
                let mut acc = 0usize;
                for i in 0..r {
                    let xi = ctx.coords[x][i] as usize;
                    if xi == 0 {
                        continue;
                    }
                    for j in 0..r {
                        let yj = ctx.coords[y][j] as usize;
                        if yj == 0 {
                            continue;
                        }
                        let cv = c[i * r + j] as usize;
                        if cv == 0 {
                            continue;
                        }
                        acc = ctx.add_elems(acc, ctx.scalar(xi * yj, cv));
                    }
                }
                mul[x * n + y] = acc as u32;
            }
        }
        mul
    }

    fn run(&self, state: &mut SearchState, depth: usize) {
        if depth == self.free.len() {
            if self.leaf_ok(&state.c) {
                let mul = self.materialize(&state.c);
                let one = if self.anchored {
                    Some(self.ctx.u0)
                } else {
                    find_identity(&mul, self.ctx.n)
                };
                if let Some(one) = one {
                    state.out.push((mul, one));
                }
            }
            return;
        }
        let (i, j) = self.free[depth];
        let slot = i * self.ctx.r + j;
        for &v in &self.candidates[depth] {
            state.local_nodes += 1;
            if state.local_nodes % NODE_FLUSH_BATCH == 0 {
                let total = self.nodes.fetch_add(NODE_FLUSH_BATCH, Ordering::Relaxed)
                    + NODE_FLUSH_BATCH;
                if let Some(b) = self.budget {
                    if total > b {
                        self.abort.store(true, Ordering::Relaxed);
                    }
                }
                if self.abort.load(Ordering::Relaxed) {
                    return;
                }
            }
            state.c[slot] = v;
            if self.prune_ok(&state.c, i, j) {
                self.run(state, depth + 1);
            }
            state.c[slot] = UNSET;
        }
    }
}

fn find_identity(mul: &[u32], n: usize) -> Option<usize> {
    (0..n).find(|&e| (0..n).all(|x| mul[e * n + x] == x as u32 && mul[x * n + e] == x as u32))
}

/// Runs the structure-constant search on one additive group and returns
/// accepted (mul table, identity) leaves in deterministic order.
fn search_group(
    ctx: &GroupContext,
    anchored: bool,
    nodes: &AtomicU64,
    abort: &AtomicBool,
    budget: Option<u64>,
) -> Vec<(Vec<u32>, usize)> {
    let r = ctx.r;
    let mut c = vec![UNSET; r * r];
    for i in 0..r {
        for j in 0..r {
            if ctx.primes[i] != ctx.primes[j] {
                c[i * r + j] = 0;
            } else if anchored {
                if ctx.leader[i] {
                    c[i * r + j] = ctx.gen_index[j] as u32;
                } else if ctx.leader[j] {
                    c[i * r + j] = ctx.gen_index[i] as u32;
                }
            }
        }
    }

    // free pairs grouped by prime, growing-square order within each prime
    let mut free: Vec<(usize, usize)> = Vec::new();
    let mut prime_list: Vec<usize> = ctx.primes.clone();
    prime_list.sort_unstable();
    prime_list.dedup();
    let mut triples = Vec::new();
    for &p in &prime_list {
        let gens: Vec<usize> = (0..r)
            .filter(|&i| ctx.primes[i] == p && !(anchored && ctx.leader[i]))
            .collect();
        for (s, &gs) in gens.iter().enumerate() {
            for &gt in &gens[..s] {
                free.push((gt, gs));
                free.push((gs, gt));
            }
            free.push((gs, gs));
        }
        for &a in &gens {
            for &b in &gens {
                for &k in &gens {
                    triples.push((a, b, k));
                }
            }
        }
    }
    free.retain(|&(i, j)| c[i * r + j] == UNSET);

    let candidates: Vec<Vec<u32>> = free
        .iter()
        .map(|&(i, j)| {
            let m = ctx.exponent_of(i).min(ctx.exponent_of(j));
            ctx.killed_by(ctx.primes[i], m)
        })
        .collect();

    let shared = SearchShared {
        ctx,
        free,
        candidates,
        triples,
        anchored,
        nodes,
        abort,
        budget,
    };

    // split the first two levels into parallel subtree tasks when the
    // search is deep enough to be worth it
    if shared.free.len() >= 5 {
        let (i0, j0) = shared.free[0];
        let (i1, j1) = shared.free[1];
        let mut prefixes = Vec::new();
        for &v0 in &shared.candidates[0] {
            for &v1 in &shared.candidates[1] {
                prefixes.push((v0, v1));
            }
        }
        let results: Vec<Vec<(Vec<u32>, usize)>> = prefixes
            .par_iter()
            .map(|&(v0, v1)| {
                let mut state = SearchState {
                    c: c.clone(),
                    local_nodes: 2,
                    out: Vec::new(),
                };
                state.c[i0 * r + j0] = v0;
                if !shared.prune_ok(&state.c, i0, j0) {
                    return state.out;
                }
                state.c[i1 * r + j1] = v1;
                if !shared.prune_ok(&state.c, i1, j1) {
                    return state.out;
                }
                if !shared.abort.load(Ordering::Relaxed) {
                    shared.run(&mut state, 2);
                }
                shared.nodes.fetch_add(state.local_nodes % NODE_FLUSH_BATCH, Ordering::Relaxed);
                state.out
            })
            .collect();
        results.into_iter().flatten().collect()
    } else {
        let mut state = SearchState {
            c,
            local_nodes: 0,
            out: Vec::new(),
        };
        shared.run(&mut state, 0);
        shared
            .nodes
            .fetch_add(state.local_nodes % NODE_FLUSH_BATCH, Ordering::Relaxed);
        state.out
    }
}

// ----------------------------------------------------------------------
// public enumeration entry points
// ----------------------------------------------------------------------

/// Normalizes a component list to canonical order: primes ascending,
/// powers of one prime descending.
fn normalize_components(mut components: Vec<usize>) -> Result<Vec<usize>, Error> {
    for &q in &components {
        let f = factorize(q);
        if q < 2 || f.len() != 1 {
            return Err(Error::InvalidParameter(format!(
                "additive component {q} is not a prime power"
            )));
        }
    }
    components.sort_by_key(|&q| {
        let (p, e) = factorize(q)[0];
        (p, std::cmp::Reverse(e))
    });
    Ok(components)
}

/// Exhaustively enumerates unital rings per the task: every additive
/// group of the order (or the one requested), structure-constant search,
/// optional isomorphism dedupe, deterministic output order.
pub fn enumerate_unital_rings(task: &EnumerationTask) -> Result<Census, CensusError> {
    if task.order == 0 {
        return Err(Error::InvalidParameter("order must be positive".into()).into());
    }
    if task.order > task.cap {
        return Err(Error::CapExceeded {
            requested: task.order,
            cap: task.cap,
        }
        .into());
    }
    let groups = match &task.additive_group {
        None => abelian_groups_of_order(task.order),
        Some(g) => {
            let g = normalize_components(g.clone())?;
            if g.iter().product::<usize>() != task.order {
                return Err(Error::InvalidParameter(format!(
                    "additive group {g:?} has the wrong order (expected {})",
                    task.order
                ))
                .into());
            }
            vec![g]
        }
    };
    run_enumeration(task.order, &groups, true, task.budget, task.dedupe, "census")
}

/// The unoptimized validation path: no identity anchoring — every
/// same-prime generator product is free and tables are post-filtered for
/// the existence of a two-sided identity. Always deduped. Bounded to
/// order 16 because the search space is exponentially larger.
pub fn reference_census(order: usize) -> Result<Census, CensusError> {
    if order == 0 {
        return Err(Error::InvalidParameter("order must be positive".into()).into());
    }
    if order > DEFAULT_ENUMERATION_CAP {
        return Err(Error::CapExceeded {
            requested: order,
            cap: DEFAULT_ENUMERATION_CAP,
        }
        .into());
    }
    let groups = abelian_groups_of_order(order);
    run_enumeration(order, &groups, false, None, true, "reference")
}

fn run_enumeration(
    order: usize,
    groups: &[Vec<usize>],
    anchored: bool,
    budget: Option<u64>,
    dedupe: bool,
    label_kind: &str,
) -> Result<Census, CensusError> {
    let nodes = AtomicU64::new(0);
    let abort = AtomicBool::new(false);
    let mut per_group: Vec<(Vec<usize>, Vec<FiniteRing>)> = Vec::new();

    for components in groups {
        if components.is_empty() {
            // the trivial group: no ring with 1 distinct from 0
            per_group.push((components.clone(), Vec::new()));
            continue;
        }
        let ctx = GroupContext::new(components.clone());
        let mut leaves = search_group(&ctx, anchored, &nodes, &abort, budget);
        leaves.sort_unstable();
        leaves.dedup();
        let mut rings = Vec::with_capacity(leaves.len());
        for (mul, one) in leaves {
            let ring = FiniteRing::from_parts(
                ctx.n,
                ctx.add.clone(),
                mul,
                0,
                one,
                components.clone(),
                String::new(),
            )
            .map_err(CensusError::Invalid)?;
            rings.push(ring);
        }
        if dedupe {
            rings = dedupe_rings(rings);
        }
        per_group.push((components.clone(), rings));
        if abort.load(Ordering::Relaxed) {
            break;
        }
    }

    let mut by_group = Vec::with_capacity(per_group.len());
    let mut rings = Vec::new();
    let mut idx = 0usize;
    for (components, group_rings) in per_group {
        by_group.push((components.clone(), group_rings.len()));
        let comp_label = components
            .iter()
            .map(|q| q.to_string())
            .collect::<Vec<_>>()
            .join(",");
        for ring in group_rings {
            rings.push(ring.with_label(format!(
                "{label_kind}[order={order}, add=({comp_label}), idx={idx}]"
            )));
            idx += 1;
        }
    }

    let census = Census {
        order,
        deduped: dedupe,
        complete: !abort.load(Ordering::Relaxed),
        rings,
        by_group,
        nodes: nodes.load(Ordering::Relaxed),
    };
    if census.complete {
        Ok(census)
    } else {
        Err(CensusError::Budget {
            partial: Box::new(census),
        })
    }
}

/// Keeps the first representative of each isomorphism class, bucketing by
/// fingerprint so the quadratic isomorphism tests stay tiny.
fn dedupe_rings(rings: Vec<FiniteRing>) -> Vec<FiniteRing> {
    let mut buckets: BTreeMap<Fingerprint, Vec<usize>> = BTreeMap::new();
    let mut kept: Vec<FiniteRing> = Vec::new();
    for ring in rings {
        let fp = iso::fingerprint(&ring);
        let bucket = buckets.entry(fp).or_default();
        let duplicate = bucket
            .iter()
            .any(|&k| iso::is_isomorphic(&ring, &kept[k]).is_some());
        if !duplicate {
            bucket.push(kept.len());
            kept.push(ring);
        }
    }
    kept
}
