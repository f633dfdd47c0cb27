//! Abstract finite groups as explicit multiplication tables, plus a
//! table-to-table isomorphism test.
//!
//! The ring modules mostly work with unit groups in place (multiplying
//! ring indices); this module exists for the cases where a group has to be
//! compared against something that is not a unit group, such as a
//! hand-written symmetric-group table.

use crate::error::{Error, Result};

/// A finite group given by its full multiplication table.
#[derive(Debug, Clone)]
pub struct GroupTable {
    order: usize,
    mul: Vec<u32>,
    identity: usize,
    inverse: Vec<u32>,
    elem_order: Vec<u32>,
}

impl GroupTable {
    /// Builds and fully verifies a group from a row-major table: Latin
    /// square, two-sided identity, inverses, associativity. Intended for
    /// test fixtures and external tables, so the `O(n^3)` associativity
    /// scan is acceptable.
    pub fn from_mul_table(order: usize, mul: Vec<u32>) -> Result<GroupTable> {
        if order == 0 {
            return Err(Error::InvalidParameter("group order must be positive".into()));
        }
        if mul.len() != order * order {
            return Err(Error::InvalidParameter(format!(
                "table must be {order} x {order}"
            )));
        }
        if mul.iter().any(|&v| v as usize >= order) {
            return Err(Error::InvalidParameter("table entry out of range".into()));
        }
        for a in 0..order {
            let mut row = vec![false; order];
            let mut col = vec![false; order];
            for b in 0..order {
                row[mul[a * order + b] as usize] = true;
                col[mul[b * order + a] as usize] = true;
            }
            if row.iter().any(|&v| !v) || col.iter().any(|&v| !v) {
                return Err(Error::InvalidParameter(format!(
                    "row/column {a} is not a permutation"
                )));
            }
        }
        let identity = (0..order)
            .find(|&e| {
                (0..order).all(|x| mul[e * order + x] as usize == x && mul[x * order + e] as usize == x)
            })
            .ok_or_else(|| Error::InvalidParameter("no two-sided identity".into()))?;
        for a in 0..order {
            for b in 0..order {
                for c in 0..order {
                    let ab_c = mul[mul[a * order + b] as usize * order + c];
                    let a_bc = mul[a * order + mul[b * order + c] as usize];
                    if ab_c != a_bc {
                        return Err(Error::InvalidParameter(format!(
                            "associativity fails at ({a}, {b}, {c})"
                        )));
                    }
                }
            }
        }
        Ok(Self::from_parts(order, mul, identity))
    }

    /// Trusted constructor for tables already known to be groups (e.g. the
    /// units of a ring under ring multiplication).
    pub(crate) fn from_parts(order: usize, mul: Vec<u32>, identity: usize) -> GroupTable {
        let mut inverse = vec![0u32; order];
        for a in 0..order {
            for b in 0..order {
                if mul[a * order + b] as usize == identity {
                    inverse[a] = b as u32;
                    break;
                }
            }
        }
        let mut elem_order = vec![0u32; order];
        for a in 0..order {
            let mut x = a;
            let mut k = 1u32;
            while x != identity {
                x = mul[x * order + a] as usize;
                k += 1;
            }
            elem_order[a] = k;
        }
        GroupTable {
            order,
            mul,
            identity,
            inverse,
            elem_order,
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b] as usize
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverse[a] as usize
    }

    pub fn order_of(&self, a: usize) -> usize {
        self.elem_order[a] as usize
    }

    /// Map from element order to how many elements have that order.
    pub fn order_profile(&self) -> std::collections::BTreeMap<usize, usize> {
        let mut profile = std::collections::BTreeMap::new();
        for &o in &self.elem_order {
            *profile.entry(o as usize).or_insert(0) += 1;
        }
        profile
    }

    /// Subgroup generated by `gens`, as a sorted element list.
    pub fn closure(&self, gens: &[usize]) -> Vec<usize> {
        let mut in_set = vec![false; self.order];
        in_set[self.identity] = true;
        let mut frontier = vec![self.identity];
        for &g in gens {
            if !in_set[g] {
                in_set[g] = true;
                frontier.push(g);
            }
        }
        let mut i = 0;
        while i < frontier.len() {
            let a = frontier[i];
            i += 1;
            let mut j = 0;
            while j < frontier.len() {
                for p in [self.mul(a, frontier[j]), self.mul(frontier[j], a)] {
                    if !in_set[p] {
                        in_set[p] = true;
                        frontier.push(p);
                    }
                }
                j += 1;
            }
        }
        frontier.sort_unstable();
        frontier
    }

    pub fn is_cyclic(&self) -> bool {
        self.elem_order.iter().any(|&o| o as usize == self.order)
    }

    /// Greedy generating sequence: repeatedly adjoin the least-index
    /// element of maximal order outside the current closure.
    fn generating_sequence(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span = self.closure(&[]);
        while span.len() < self.order {
            let next = (0..self.order)
                .filter(|x| span.binary_search(x).is_err())
                .max_by_key(|&x| (self.elem_order[x], std::cmp::Reverse(x)))
                .expect("span is proper");
            gens.push(next);
            span = self.closure(&gens);
        }
        gens
    }
}

/// Backtracking isomorphism test between two explicit group tables.
///
/// Generators of `g` are assigned images in `h` of equal element order;
/// each partial assignment is propagated through the generated subgroup,
/// rejecting on any product mismatch or injectivity failure. A complete
/// candidate map is verified pair-exhaustively before `true` is returned.
pub fn abstract_isomorphic_groups(g: &GroupTable, h: &GroupTable) -> bool {
    if g.order != h.order {
        return false;
    }
    if g.order_profile() != h.order_profile() {
        return false;
    }
    let gens = g.generating_sequence();
    let mut state = MapState::new(g, h);
    extend(g, h, &gens, 0, &mut state)
}

struct MapState {
    forward: Vec<Option<u32>>,
    backward: Vec<Option<u32>>,
    mapped: Vec<usize>, // g-elements with images, in assignment order
}

impl MapState {
    fn new(g: &GroupTable, h: &GroupTable) -> MapState {
        let mut s = MapState {
            forward: vec![None; g.order()],
            backward: vec![None; h.order()],
            mapped: Vec::new(),
        };
        s.bind(g.identity(), h.identity());
        s
    }

    fn bind(&mut self, a: usize, x: usize) -> bool {
        match (self.forward[a], self.backward[x]) {
            (Some(y), _) if y as usize != x => false,
            (_, Some(b)) if b as usize != a => false,
            (Some(_), Some(_)) => true, // identical existing pair
            _ => {
                self.forward[a] = Some(x as u32);
                self.backward[x] = Some(a as u32);
                self.mapped.push(a);
                true
            }
        }
    }
}

/// Propagates the partial map over all products of mapped elements until
/// stable; false on contradiction.
fn propagate(g: &GroupTable, h: &GroupTable, state: &mut MapState) -> bool {
    let mut i = 0;
    while i < state.mapped.len() {
        let a = state.mapped[i];
        let x = state.forward[a].unwrap() as usize;
        let mut j = 0;
        while j < state.mapped.len() {
            let b = state.mapped[j];
            let z = state.forward[b].unwrap() as usize;
            if !state.bind(g.mul(a, b), h.mul(x, z)) {
                return false;
            }
            if !state.bind(g.mul(b, a), h.mul(z, x)) {
                return false;
            }
            j += 1;
        }
        i += 1;
    }
    true
}

fn extend(g: &GroupTable, h: &GroupTable, gens: &[usize], depth: usize, state: &mut MapState) -> bool {
    if depth == gens.len() {
        // generators mapped and propagation closed over products, so the
        // map covers <gens> = G; confirm totality and homomorphism
        if state.mapped.len() != g.order() {
            return false;
        }
        for a in 0..g.order() {
            let x = state.forward[a].unwrap() as usize;
            for b in 0..g.order() {
                let z = state.forward[b].unwrap() as usize;
                if state.forward[g.mul(a, b)].unwrap() as usize != h.mul(x, z) {
                    return false;
                }
            }
        }
        return true;
    }
    let gen = gens[depth];
    if state.forward[gen].is_some() {
        // already forced by propagation; nothing to choose
        return extend(g, h, gens, depth + 1, state);
    }
    for y in 0..h.order() {
        if state.backward[y].is_some() || h.order_of(y) != g.order_of(gen) {
            continue;
        }
        let mut next = MapState {
            forward: state.forward.clone(),
            backward: state.backward.clone(),
            mapped: state.mapped.clone(),
        };
        if next.bind(gen, y) && propagate(g, h, &mut next) && extend(g, h, gens, depth + 1, &mut next)
        {
            return true;
        }
    }
    false
}
