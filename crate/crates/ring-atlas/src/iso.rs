//! Ring isomorphism testing.
//!
//! Two stages: a cheap invariant fingerprint rejects most non-isomorphic
//! pairs outright, and a backtracking search over images of an additive
//! generating set decides the rest. Any map returned has been verified
//! exhaustively as a unital ring isomorphism, so a `Some` answer is
//! correct by construction; completeness comes from the search trying
//! every invariant-compatible image assignment.

use std::collections::BTreeMap;

use crate::ring::FiniteRing;
use crate::structure::{center, jacobson_radical};
use crate::units::units;

/// Per-element invariants preserved by any ring isomorphism. Elements can
/// only map to elements with an identical tuple.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
struct ElementInvariant {
    add_order: u32,
    unit_order: u32, // 0 for non-units
    idempotent: bool,
    /// least k >= 1 with x^k = 0, or 0 if x is not nilpotent
    nilpotency_index: u32,
    central: bool,
    in_radical: bool,
    left_ann_size: u32,
    right_ann_size: u32,
}

/// Whole-ring invariants; equality is necessary for isomorphism.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub(crate) struct Fingerprint {
    order: usize,
    characteristic: usize,
    components: Vec<usize>, // sorted additive components
    unit_count: usize,
    radical_size: usize,
    center_size: usize,
    idempotent_count: usize,
    commutative: bool,
    additive_profile: BTreeMap<u32, u32>,
    unit_order_profile: BTreeMap<u32, u32>,
    element_invariants: Vec<ElementInvariant>, // sorted multiset
}

fn element_invariants(r: &FiniteRing) -> Vec<ElementInvariant> {
    let n = r.order();
    let unit_view = units(r);
    let radical = jacobson_radical(r);
    let central: Vec<bool> = (0..n)
        .map(|x| (0..n).all(|y| r.mul(x, y) == r.mul(y, x)))
        .collect();
    (0..n)
        .map(|x| {
            let nilpotency_index = {
                let mut acc = x;
                let mut k = 1u32;
                let mut found = 0u32;
                for _ in 0..=n {
                    if acc == r.zero() {
                        found = k;
                        break;
                    }
                    acc = r.mul(acc, x);
                    k += 1;
                }
                found
            };
            ElementInvariant {
                add_order: r.additive_order(x) as u32,
                unit_order: unit_view.element_order(x).unwrap_or(0) as u32,
                idempotent: r.mul(x, x) == x,
                nilpotency_index,
                central: central[x],
                in_radical: radical.contains(x),
                left_ann_size: (0..n).filter(|&y| r.mul(y, x) == r.zero()).count() as u32,
                right_ann_size: (0..n).filter(|&y| r.mul(x, y) == r.zero()).count() as u32,
            }
        })
        .collect()
}

pub(crate) fn fingerprint(r: &FiniteRing) -> Fingerprint {
    let invariants = element_invariants(r);
    let mut sorted = invariants.clone();
    sorted.sort_unstable();
    let mut components = r.additive_components().to_vec();
    components.sort_unstable();
    let mut additive_profile: BTreeMap<u32, u32> = BTreeMap::new();
    for inv in &invariants {
        *additive_profile.entry(inv.add_order).or_insert(0) += 1;
    }
    let mut unit_order_profile: BTreeMap<u32, u32> = BTreeMap::new();
    for inv in &invariants {
        if inv.unit_order > 0 {
            *unit_order_profile.entry(inv.unit_order).or_insert(0) += 1;
        }
    }
    Fingerprint {
        order: r.order(),
        characteristic: r.characteristic(),
        components,
        unit_count: invariants.iter().filter(|i| i.unit_order > 0).count(),
        radical_size: invariants.iter().filter(|i| i.in_radical).count(),
        center_size: center(r).len(),
        idempotent_count: invariants.iter().filter(|i| i.idempotent).count(),
        commutative: r.is_commutative(),
        additive_profile,
        unit_order_profile,
        element_invariants: sorted,
    }
}

/// Additive generating sequence: `1` first (its image is forced), then
/// greedily the least-index element of maximal additive order outside the
/// current additive span.
fn generator_sequence(r: &FiniteRing) -> Vec<usize> {
    let mut gens = vec![r.one()];
    let mut span = crate::structure::additive_closure(r, &gens);
    while span.len() < r.order() {
        let next = (0..r.order())
            .filter(|x| span.binary_search(x).is_err())
            .max_by_key(|&x| (r.additive_order(x), std::cmp::Reverse(x)))
            .expect("span is proper");
        gens.push(next);
        span = crate::structure::additive_closure(r, &gens);
    }
    gens
}

struct SearchState<'a> {
    a: &'a FiniteRing,
    b: &'a FiniteRing,
    inv_a: Vec<ElementInvariant>,
    inv_b: Vec<ElementInvariant>,
    /// a-index -> b-index (u32::MAX = unset)
    phi: Vec<u32>,
    /// b-index -> a-index (u32::MAX = unset)
    psi: Vec<u32>,
    /// a-indices currently mapped, in insertion order
    mapped: Vec<usize>,
}

const UNSET: u32 = u32::MAX;

impl SearchState<'_> {
    /// Extends the map by `a_elt -> b_elt` plus the whole additive span of
    /// the previously mapped set with the new element. Returns the number
    /// of entries added (for rollback), or `None` on contradiction.
    fn extend_span(&mut self, a_elt: usize, b_elt: usize) -> Option<usize> {
        let start = self.mapped.len();
        let push = |s: &mut Self, x: usize, y: usize| -> bool {
            if s.phi[x] != UNSET {
                return s.phi[x] as usize == y;
            }
            if s.psi[y] != UNSET {
                return false; // injectivity
            }
            if s.inv_a[x] != s.inv_b[y] {
                return false; // invariants must match element-wise
            }
            s.phi[x] = y as u32;
            s.psi[y] = x as u32;
            s.mapped.push(x);
            true
        };
        if !push(self, a_elt, b_elt) {
            self.rollback(start);
            return None;
        }
        // close under addition: new = old + k * gen covers the whole new span
        let mut i = 0;
        while i < self.mapped.len() {
            let x = self.mapped[i];
            let fx = self.phi[x] as usize;
            let mut j = 0;
            while j < self.mapped.len() {
                let y = self.mapped[j];
                let fy = self.phi[y] as usize;
                if !push(self, self.a.add(x, y), self.b.add(fx, fy)) {
                    self.rollback(start);
                    return None;
                }
                j += 1;
            }
            i += 1;
        }
        // multiplicative consistency on every pair whose product is mapped
        for &x in &self.mapped {
            let fx = self.phi[x] as usize;
            for &y in &self.mapped {
                let product = self.a.mul(x, y);
                if self.phi[product] != UNSET
                    && self.phi[product] as usize != self.b.mul(fx, self.phi[y] as usize)
                {
                    self.rollback(start);
                    return None;
                }
            }
        }
        Some(self.mapped.len() - start)
    }

    fn rollback(&mut self, to_len: usize) {
        while self.mapped.len() > to_len {
            let x = self.mapped.pop().unwrap();
            let y = self.phi[x];
            self.phi[x] = UNSET;
            self.psi[y as usize] = UNSET;
        }
    }
}

fn search(state: &mut SearchState<'_>, gens: &[usize], depth: usize) -> bool {
    if depth == gens.len() {
        debug_assert_eq!(state.mapped.len(), state.a.order());
        // full verification: unital + additive + multiplicative
        let (a, b) = (state.a, state.b);
        if state.phi[a.one()] as usize != b.one() {
            return false;
        }
        for x in 0..a.order() {
            let fx = state.phi[x] as usize;
            for y in 0..a.order() {
                let fy = state.phi[y] as usize;
                if state.phi[a.add(x, y)] as usize != b.add(fx, fy)
                    || state.phi[a.mul(x, y)] as usize != b.mul(fx, fy)
                {
                    return false;
                }
            }
        }
        return true;
    }
    let gen = gens[depth];
    if state.phi[gen] != UNSET {
        return search(state, gens, depth + 1);
    }
    for y in 0..state.b.order() {
        if state.psi[y] != UNSET || state.inv_a[gen] != state.inv_b[y] {
            continue;
        }
        if let Some(added) = state.extend_span(gen, y) {
            if search(state, gens, depth + 1) {
                return true;
            }
            state.rollback(state.mapped.len() - added);
        }
    }
    false
}

/// Decides whether two rings are isomorphic; on success returns the
/// element map `phi` with `phi[x]` the image of `x`, verified to satisfy
/// `phi(x+y) = phi(x)+phi(y)`, `phi(xy) = phi(x)phi(y)`, and
/// `phi(1) = 1` over all pairs.
pub fn is_isomorphic(a: &FiniteRing, b: &FiniteRing) -> Option<Vec<usize>> {
    if a.order() != b.order() {
        return None;
    }
    if fingerprint(a) != fingerprint(b) {
        return None;
    }
    let inv_a = element_invariants(a);
    let inv_b = element_invariants(b);
    let gens = generator_sequence(a);
    let mut state = SearchState {
        a,
        b,
        inv_a,
        inv_b,
        phi: vec![UNSET; a.order()],
        psi: vec![UNSET; b.order()],
        mapped: Vec::new(),
    };
    // anchor zero and one: both are forced for any unital isomorphism
    state.extend_span(a.zero(), b.zero())?;
    state.extend_span(a.one(), b.one())?;
    if search(&mut state, &gens, 0) {
        Some(state.phi.iter().map(|&v| v as usize).collect())
    } else {
        None
    }
}
