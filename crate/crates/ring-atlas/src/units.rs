//! The unit group of a ring and its group-theoretic profile: element
//! orders, subgroup-of-order-p counts, involutions, Sylow subgroups, and
//! generalized-quaternion recognition.
//!
//! All operations act on ring element indices directly (multiplication is
//! the ring's table); no separate Cayley table is materialized except on
//! request via [`UnitGroupView::to_group_table`].

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::group::GroupTable;
use crate::ring::{factorize, is_prime, FiniteRing};

/// The units of a ring with cached inverses and the element-order census.
#[derive(Debug, Clone)]
pub struct UnitGroupView<'r> {
    ring: &'r FiniteRing,
    /// Ascending ring indices of all two-sided-invertible elements.
    units: Vec<usize>,
    /// ring index -> inverse ring index (units only)
    inverse: BTreeMap<usize, usize>,
    /// ring index -> multiplicative order (units only)
    orders: BTreeMap<usize, usize>,
    /// multiplicative order -> element count
    profile: BTreeMap<usize, usize>,
}

/// Computes the unit group: every element is tested for a two-sided
/// inverse (one-sided would suffice in a finite ring, but both sides are
/// verified anyway).
pub fn units(ring: &FiniteRing) -> UnitGroupView<'_> {
    let n = ring.order();
    let mut units = Vec::new();
    let mut inverse = BTreeMap::new();
    for a in 0..n {
        if let Some(b) = (0..n).find(|&b| ring.mul(a, b) == ring.one() && ring.mul(b, a) == ring.one())
        {
            units.push(a);
            inverse.insert(a, b);
        }
    }
    let mut orders = BTreeMap::new();
    let mut profile: BTreeMap<usize, usize> = BTreeMap::new();
    for &u in &units {
        let mut x = u;
        let mut k = 1usize;
        while x != ring.one() {
            x = ring.mul(x, u);
            k += 1;
        }
        orders.insert(u, k);
        *profile.entry(k).or_insert(0) += 1;
    }
    UnitGroupView {
        ring,
        units,
        inverse,
        orders,
        profile,
    }
}

impl<'r> UnitGroupView<'r> {
    pub fn ring(&self) -> &'r FiniteRing {
        self.ring
    }

    /// Ascending ring indices of the units.
    pub fn units(&self) -> &[usize] {
        &self.units
    }

    /// |R*|.
    pub fn order(&self) -> usize {
        self.units.len()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.units.binary_search(&x).is_ok()
    }

    pub fn inverse_of(&self, g: usize) -> Result<usize> {
        self.inverse
            .get(&g)
            .copied()
            .ok_or_else(|| Error::InvalidParameter(format!("{g} is not a unit")))
    }

    /// Least k >= 1 with g^k = 1.
    pub fn element_order(&self, g: usize) -> Result<usize> {
        self.orders
            .get(&g)
            .copied()
            .ok_or_else(|| Error::InvalidParameter(format!("{g} is not a unit")))
    }

    /// Multiplicative order -> count of units with that order.
    pub fn order_profile(&self) -> &BTreeMap<usize, usize> {
        &self.profile
    }

    /// Number of subgroups of prime order p, computed as
    /// |{g : o(g) = p}| / (p - 1); zero when p does not divide the group
    /// order (no element of order p exists then).
    pub fn count_subgroups_of_order_p(&self, p: usize) -> Result<usize> {
        if !is_prime(p) {
            return Err(Error::InvalidParameter(format!("{p} is not prime")));
        }
        let elements_of_order_p = self.profile.get(&p).copied().unwrap_or(0);
        debug_assert_eq!(elements_of_order_p % (p - 1), 0);
        Ok(elements_of_order_p / (p - 1))
    }

    /// Number of elements of multiplicative order exactly 2.
    pub fn involution_count(&self) -> usize {
        self.profile.get(&2).copied().unwrap_or(0)
    }

    /// Exact p-part of |R*| (p^v with p^v | |R*|, p^(v+1) not).
    pub fn p_part(&self, p: usize) -> usize {
        let mut part = 1usize;
        let mut rest = self.order();
        while rest % p == 0 {
            part *= p;
            rest /= p;
        }
        part
    }

    /// True iff the Sylow p-subgroups are cyclic, decided without building
    /// one: a cyclic Sylow p-subgroup exists iff some element's order is
    /// the full p-part of |R*|.
    pub fn sylow_cyclic(&self, p: usize) -> Result<bool> {
        if !is_prime(p) {
            return Err(Error::InvalidParameter(format!("{p} is not prime")));
        }
        let part = self.p_part(p);
        Ok(self.profile.contains_key(&part) || part == 1)
    }

    /// Multiplicative closure of a unit subset (sorted ring indices).
    fn closure(&self, gens: &[usize]) -> Vec<usize> {
        let mut set: Vec<usize> = vec![self.ring.one()];
        let mut frontier: Vec<usize> = vec![self.ring.one()];
        for &g in gens {
            if !set.contains(&g) {
                set.push(g);
                frontier.push(g);
            }
        }
        let mut i = 0;
        while i < frontier.len() {
            let a = frontier[i];
            i += 1;
            let mut j = 0;
            while j < frontier.len() {
                for p in [self.ring.mul(a, frontier[j]), self.ring.mul(frontier[j], a)] {
                    if !frontier.contains(&p) {
                        frontier.push(p);
                    }
                }
                j += 1;
            }
        }
        frontier.sort_unstable();
        frontier
    }

    /// A Sylow p-subgroup, grown deterministically: start from the least
    /// element of order p, and while the subgroup is smaller than the full
    /// p-part, adjoin the least p-element of its normalizer lying outside
    /// it (such an element always exists for a proper p-subgroup).
    pub fn sylow_subgroup(&self, p: usize) -> Result<PSubgroup<'r>> {
        if !is_prime(p) {
            return Err(Error::InvalidParameter(format!("{p} is not prime")));
        }
        if self.order() % p != 0 {
            return Err(Error::InvalidParameter(format!(
                "{p} does not divide the unit group order {}",
                self.order()
            )));
        }
        let target = self.p_part(p);
        let seed = *self
            .units
            .iter()
            .find(|&&u| self.orders[&u] == p)
            .expect("Cauchy: an element of order p exists when p divides |G|");
        let mut generators = vec![seed];
        let mut members = self.closure(&generators);
        let mut safety = 0usize;
        while members.len() < target {
            let next = self
                .units
                .iter()
                .copied()
                .find(|&x| {
                    members.binary_search(&x).is_err()
                        && is_p_power(self.orders[&x], p)
                        && self.normalizes(x, &members)
                })
                .ok_or_else(|| {
                    Error::Internal(
                        "proper p-subgroup has no external p-element in its normalizer".into(),
                    )
                })?;
            generators.push(next);
            members = self.closure(&generators);
            safety += 1;
            if safety > self.order() {
                return Err(Error::Internal("Sylow growth failed to terminate".into()));
            }
        }
        Ok(PSubgroup {
            ring: self.ring,
            members,
            p,
            generators,
        })
    }

    /// Does x P x^{-1} = P?
    fn normalizes(&self, x: usize, members: &[usize]) -> bool {
        let xi = self.inverse[&x];
        members
            .iter()
            .all(|&h| members.binary_search(&self.ring.mul(self.ring.mul(x, h), xi)).is_ok())
    }

    /// Explicit Cayley table of the unit group (element i of the table is
    /// `units()[i]`).
    pub fn to_group_table(&self) -> GroupTable {
        let n = self.units.len();
        let pos = |x: usize| self.units.binary_search(&x).expect("product of units is a unit");
        let mut mul = vec![0u32; n * n];
        for (i, &a) in self.units.iter().enumerate() {
            for (j, &b) in self.units.iter().enumerate() {
                mul[i * n + j] = pos(self.ring.mul(a, b)) as u32;
            }
        }
        GroupTable::from_parts(n, mul, pos(self.ring.one()))
    }
}

fn is_p_power(mut n: usize, p: usize) -> bool {
    while n % p == 0 {
        n /= p;
    }
    n == 1
}

/// A p-subgroup of a unit group, with the generators that grew it.
#[derive(Debug, Clone)]
pub struct PSubgroup<'r> {
    ring: &'r FiniteRing,
    /// Sorted ring indices; closed under ring multiplication.
    pub members: Vec<usize>,
    pub p: usize,
    pub generators: Vec<usize>,
}

impl PSubgroup<'_> {
    pub fn order(&self) -> usize {
        self.members.len()
    }

    /// Least k with g^k = 1, inside the subgroup.
    pub fn order_of(&self, g: usize) -> usize {
        let one = self.ring.one();
        let mut x = g;
        let mut k = 1;
        while x != one {
            x = self.ring.mul(x, g);
            k += 1;
        }
        k
    }

    pub fn is_cyclic(&self) -> bool {
        self.members.iter().any(|&g| self.order_of(g) == self.order())
    }

    pub fn involution_count(&self) -> usize {
        self.members.iter().filter(|&&g| self.order_of(g) == 2).count()
    }

    /// Generalized-quaternion test for 2-groups: order at least 8,
    /// non-cyclic, and a unique involution (the Burnside
    /// characterization); a positive verdict is then confirmed by locating
    /// a presentation witness — u of order |P|/2 and l outside <u> with
    /// l^2 = u^(|P|/4) and l^(-1) u l = u^(-1).
    pub fn is_generalized_quaternion(&self) -> Result<bool> {
        if !is_p_power(self.order(), 2) || self.p != 2 {
            return Err(Error::InvalidParameter(format!(
                "not a 2-group (order {}, p={})",
                self.order(),
                self.p
            )));
        }
        let size = self.order();
        if size < 8 || self.is_cyclic() || self.involution_count() != 1 {
            return Ok(false);
        }
        // confirm with an explicit presentation witness
        let half = size / 2;
        let r = self.ring;
        for &u in &self.members {
            if self.order_of(u) != half {
                continue;
            }
            // <u> and the involution u^(half/2) in it
            let mut cyc = vec![r.one()];
            let mut x = u;
            while x != r.one() {
                cyc.push(x);
                x = r.mul(x, u);
            }
            cyc.sort_unstable();
            let u_n = {
                let mut acc = r.one();
                for _ in 0..half / 2 {
                    acc = r.mul(acc, u);
                }
                acc
            };
            let u_inv = {
                let mut acc = r.one();
                for _ in 0..half - 1 {
                    acc = r.mul(acc, u);
                }
                acc
            };
            for &l in &self.members {
                if cyc.binary_search(&l).is_ok() {
                    continue;
                }
                let l_inv = {
                    let mut acc = r.one();
                    let mut k = self.order_of(l) - 1;
                    while k > 0 {
                        acc = r.mul(acc, l);
                        k -= 1;
                    }
                    acc
                };
                if r.mul(l, l) == u_n && r.mul(r.mul(l_inv, u), l) == u_inv {
                    return Ok(true);
                }
            }
        }
        Err(Error::Internal(
            "unique-involution non-cyclic 2-group without a quaternion presentation".into(),
        ))
    }
}

/// Convenience: primes dividing the unit-group order.
pub fn unit_group_primes(view: &UnitGroupView<'_>) -> Vec<usize> {
    factorize(view.order()).into_iter().map(|(p, _)| p).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::abstract_isomorphic_groups;

    fn z(m: usize) -> FiniteRing {
        FiniteRing::zmod(m).unwrap()
    }

    fn gf(p: usize, n: usize) -> FiniteRing {
        FiniteRing::galois_field(p, n).unwrap()
    }

    #[test]
    fn unit_sets_and_profiles() {
        let r8 = z(8);
        let u = units(&r8);
        assert_eq!(u.units(), &[1, 3, 5, 7]);
        assert_eq!(u.order_profile().get(&1), Some(&1));
        assert_eq!(u.order_profile().get(&2), Some(&3));

        let f4 = gf(2, 2);
        let u = units(&f4);
        assert_eq!(u.order(), 3);
        assert!(u.to_group_table().is_cyclic());

        let m2 = FiniteRing::matrix_ring(&gf(2, 1), 2).unwrap();
        let u = units(&m2);
        assert_eq!(u.order(), 6);
        let profile = u.order_profile();
        assert_eq!(profile.get(&2), Some(&3));
        assert_eq!(profile.get(&3), Some(&2));
    }

    #[test]
    fn element_orders() {
        let r8 = z(8);
        let u = units(&r8);
        assert_eq!(u.element_order(1).unwrap(), 1);
        assert_eq!(u.element_order(3).unwrap(), 2);
        assert!(u.element_order(2).is_err());

        let f9 = gf(3, 2);
        let u = units(&f9);
        assert_eq!(u.order_profile().get(&8), Some(&4)); // phi(8) generators
    }

    #[test]
    fn subgroup_counting() {
        let z8 = z(8);
        let u8 = units(&z8);
        assert_eq!(u8.count_subgroups_of_order_p(2).unwrap(), 3);

        let f4 = gf(2, 2);
        let u4 = units(&f4);
        assert_eq!(u4.count_subgroups_of_order_p(2).unwrap(), 0);

        let m3 = FiniteRing::matrix_ring(&gf(3, 1), 2).unwrap();
        let u = units(&m3);
        assert_eq!(u.order(), 48);
        assert_eq!(u.count_subgroups_of_order_p(3).unwrap(), 4);
        assert!(u.count_subgroups_of_order_p(4).is_err());
    }

    #[test]
    fn involutions() {
        assert_eq!(units(&z(4)).involution_count(), 1);
        assert_eq!(units(&z(8)).involution_count(), 3);
        let t2 = FiniteRing::upper_triangular(&gf(2, 1), 2).unwrap();
        assert_eq!(units(&t2).involution_count(), 1);
        assert_eq!(units(&t2).order(), 2);
    }

    #[test]
    fn sylow_cyclicity() {
        assert!(units(&z(9)).sylow_cyclic(3).unwrap());
        assert!(!units(&z(8)).sylow_cyclic(2).unwrap());
        let m2 = FiniteRing::matrix_ring(&gf(2, 1), 2).unwrap();
        assert!(units(&m2).sylow_cyclic(2).unwrap());
        // p not dividing |G|: trivially cyclic
        assert!(units(&z(8)).sylow_cyclic(7).unwrap());
    }

    #[test]
    fn sylow_subgroup_of_z8_units_is_whole_group() {
        let z8 = z(8);
        let u = units(&z8);
        let p = u.sylow_subgroup(2).unwrap();
        assert_eq!(p.members, vec![1, 3, 5, 7]);
        assert!(!p.is_cyclic());
        assert_eq!(p.involution_count(), 3);
        assert!(u.sylow_subgroup(3).is_err());
    }

    #[test]
    fn sylow_subgroup_abelian_case() {
        // units(GF(4) + GF(4)) is C3 x C3: the Sylow 3-subgroup is everything
        let f4 = gf(2, 2);
        let r = f4.direct_sum(&f4).unwrap();
        let u = units(&r);
        assert_eq!(u.order(), 9);
        let p = u.sylow_subgroup(3).unwrap();
        assert_eq!(p.order(), 9);
        assert!(!p.is_cyclic());
    }

    #[test]
    fn sylow_order_equals_p_part() {
        for r in [z(15), z(16), z(20), FiniteRing::matrix_ring(&gf(2, 1), 2).unwrap()] {
            let u = units(&r);
            for p in unit_group_primes(&u) {
                let s = u.sylow_subgroup(p).unwrap();
                assert_eq!(s.order(), u.p_part(p), "ring {}, prime {p}", r.label());
            }
        }
    }

    #[test]
    fn quaternion_detection_negative_cases() {
        // cyclic C8 = units(GF(9)) as its own Sylow 2-subgroup
        let f9 = gf(3, 2);
        let u = units(&f9);
        let p = u.sylow_subgroup(2).unwrap();
        assert_eq!(p.order(), 8);
        assert!(p.is_cyclic());
        assert!(!p.is_generalized_quaternion().unwrap());

        // Klein four-group: three involutions
        let z8 = z(8);
        let u = units(&z8);
        let p = u.sylow_subgroup(2).unwrap();
        assert!(!p.is_generalized_quaternion().unwrap());

        // not a 2-group: rejected
        let f4 = gf(2, 2);
        let f4f4 = f4.direct_sum(&f4).unwrap();
        let u9 = units(&f4f4);
        let p3 = u9.sylow_subgroup(3).unwrap();
        assert!(p3.is_generalized_quaternion().is_err());
    }

    #[test]
    fn quaternion_q8_inside_gl2_f3() {
        // i = [[0,2],[1,0]], j = [[1,1],[1,2]] generate Q8 in GL2(F3):
        // i^2 = j^2 = -I and ji = -(ij).
        let f3 = gf(3, 1);
        let m = FiniteRing::matrix_ring(&f3, 2).unwrap();
        // slot encoding (row-major, base 3): [[a,b],[c,d]] -> a + 3b + 9c + 27d
        let enc = |a: usize, b: usize, c: usize, d: usize| a + 3 * b + 9 * c + 27 * d;
        let i = enc(0, 2, 1, 0);
        let j = enc(1, 1, 1, 2);
        let u = units(&m);
        assert_eq!(u.element_order(i).unwrap(), 4);
        assert_eq!(u.element_order(j).unwrap(), 4);
        let minus_one = enc(2, 0, 0, 2);
        assert_eq!(m.mul(i, i), minus_one);
        assert_eq!(m.mul(j, j), minus_one);
        assert_eq!(m.mul(j, i), m.mul(minus_one, m.mul(i, j)));
        // the subgroup they generate is Q8: order 8, one involution
        let q8 = PSubgroup {
            ring: &m,
            members: u.closure(&[i, j]),
            p: 2,
            generators: vec![i, j],
        };
        assert_eq!(q8.order(), 8);
        assert_eq!(q8.involution_count(), 1);
        assert!(q8.is_generalized_quaternion().unwrap());
    }

    #[test]
    fn unit_group_multiplicativity_over_sums() {
        let a = z(4);
        let b = gf(3, 1);
        let s = a.direct_sum(&b).unwrap();
        assert_eq!(units(&s).order(), units(&a).order() * units(&b).order());

        let m2 = FiniteRing::matrix_ring(&gf(2, 1), 2).unwrap();
        let f4 = gf(2, 2);
        let big = m2.direct_sum(&f4).unwrap();
        assert_eq!(big.order(), 64);
        assert_eq!(units(&big).order(), 18);
    }

    #[test]
    fn gl2_f2_is_s3() {
        let m2 = FiniteRing::matrix_ring(&gf(2, 1), 2).unwrap();
        let u = units(&m2);
        // S3: permutations of 3 letters under composition
        let perms: [[usize; 3]; 6] = [
            [0, 1, 2],
            [0, 2, 1],
            [1, 0, 2],
            [1, 2, 0],
            [2, 0, 1],
            [2, 1, 0],
        ];
        let compose = |p: [usize; 3], q: [usize; 3]| [p[q[0]], p[q[1]], p[q[2]]];
        let index = |p: [usize; 3]| perms.iter().position(|&x| x == p).unwrap();
        let mut mul = vec![0u32; 36];
        for (x, &p) in perms.iter().enumerate() {
            for (y, &q) in perms.iter().enumerate() {
                mul[x * 6 + y] = index(compose(p, q)) as u32;
            }
        }
        let s3 = GroupTable::from_mul_table(6, mul).unwrap();
        assert!(abstract_isomorphic_groups(&u.to_group_table(), &s3));
    }
}
