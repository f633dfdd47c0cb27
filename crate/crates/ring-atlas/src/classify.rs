//! The classification engine: the six-family catalogue of canonical
//! rings, the Γ(p)-style membership predicate, the unit-group hypothesis
//! check, and the end-to-end verdict.
//!
//! A classification verdict never weakens the check to force a match: if
//! the p-power block is isomorphic to no catalogue member, the report says
//! so explicitly and carries the reason, because the whole point of the
//! machinery is to find out whether that ever happens.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::iso;
pub use crate::iso::is_isomorphic;
use crate::ring::{checked_pow, factorize, is_prime, FiniteRing};
use crate::structure::central_idempotent_split;
use crate::units::units;

/// The six families of canonical p-power rings.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum Family {
    Zpa,
    M2,
    T2,
    #[serde(rename = "Zpa_plus_fields")]
    ZpaPlusFields,
    #[serde(rename = "M2_plus_fields")]
    M2PlusFields,
    #[serde(rename = "T2_plus_fields")]
    T2PlusFields,
}

/// A parameterized member of the six families:
///
/// - `Zpa`: the integers mod p^alpha;
/// - `M2`: the 2x2 matrices over GF(p);
/// - `T2`: the 2x2 upper-triangular matrices over GF(2);
/// - each `..PlusFields` variant: the base ring direct-summed with fields
///   GF(p^{n_i}) for the listed degrees.
///
/// Validated invariants: alpha >= 1 exactly for the `Zpa` families (at
/// most 2 when p = 2), degrees nonempty exactly for the `..PlusFields`
/// families, and the `T2` families force p = 2.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CanonicalTypeDescriptor {
    pub family: Family,
    pub p: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha: Option<usize>,
    /// Field summand degrees, kept sorted ascending.
    pub degrees: Vec<usize>,
}

impl CanonicalTypeDescriptor {
    pub fn new(
        family: Family,
        p: usize,
        alpha: Option<usize>,
        mut degrees: Vec<usize>,
    ) -> Result<CanonicalTypeDescriptor> {
        if !is_prime(p) {
            return Err(Error::InvalidParameter(format!("{p} is not prime")));
        }
        let zpa_family = matches!(family, Family::Zpa | Family::ZpaPlusFields);
        match (zpa_family, alpha) {
            (true, Some(a)) if a >= 1 => {
                if p == 2 && a > 2 {
                    return Err(Error::InvalidParameter(format!(
                        "alpha = {a} > 2 is not allowed when p = 2"
                    )));
                }
            }
            (true, _) => {
                return Err(Error::InvalidParameter(
                    "the Zpa families require alpha >= 1".into(),
                ))
            }
            (false, None) => {}
            (false, Some(_)) => {
                return Err(Error::InvalidParameter(
                    "alpha is only meaningful for the Zpa families".into(),
                ))
            }
        }
        if matches!(family, Family::T2 | Family::T2PlusFields) && p != 2 {
            return Err(Error::InvalidParameter(
                "the T2 families are defined over GF(2) only".into(),
            ));
        }
        let plus_fields = matches!(
            family,
            Family::ZpaPlusFields | Family::M2PlusFields | Family::T2PlusFields
        );
        if plus_fields && degrees.is_empty() {
            return Err(Error::InvalidParameter(
                "the ..PlusFields families require at least one field degree".into(),
            ));
        }
        if !plus_fields && !degrees.is_empty() {
            return Err(Error::InvalidParameter(
                "base families carry no field degrees".into(),
            ));
        }
        if degrees.iter().any(|&d| d == 0) {
            return Err(Error::InvalidParameter("field degrees must be positive".into()));
        }
        degrees.sort_unstable();
        Ok(CanonicalTypeDescriptor {
            family,
            p,
            alpha,
            degrees,
        })
    }

    /// p^alpha, p^4, or 8 for the base part, times p^{n_i} per field.
    pub fn realized_order(&self) -> usize {
        let base_exp = match self.family {
            Family::Zpa | Family::ZpaPlusFields => self.alpha.expect("validated"),
            Family::M2 | Family::M2PlusFields => 4,
            Family::T2 | Family::T2PlusFields => 3,
        };
        let exp: usize = base_exp + self.degrees.iter().sum::<usize>();
        checked_pow(self.p, exp).expect("descriptor order fits in usize")
    }
}

impl std::fmt::Display for CanonicalTypeDescriptor {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let name = match self.family {
            Family::Zpa => "Zpa",
            Family::M2 => "M2",
            Family::T2 => "T2",
            Family::ZpaPlusFields => "Zpa_plus_fields",
            Family::M2PlusFields => "M2_plus_fields",
            Family::T2PlusFields => "T2_plus_fields",
        };
        write!(f, "{name}(p={}", self.p)?;
        if let Some(a) = self.alpha {
            write!(f, ", alpha={a}")?;
        }
        if !self.degrees.is_empty() {
            write!(f, ", degrees={:?}", self.degrees)?;
        }
        write!(f, ")")
    }
}

/// Builds the concrete ring a descriptor denotes, labeled by the
/// descriptor itself.
pub fn canonical_ring(d: &CanonicalTypeDescriptor) -> Result<FiniteRing> {
    let base = match d.family {
        Family::Zpa | Family::ZpaPlusFields => {
            FiniteRing::zmod(checked_pow(d.p, d.alpha.expect("validated")).ok_or_else(
                || Error::InvalidParameter("descriptor order overflows".into()),
            )?)?
        }
        Family::M2 | Family::M2PlusFields => {
            let f = FiniteRing::galois_field(d.p, 1)?;
            FiniteRing::matrix_ring(&f, 2)?
        }
        Family::T2 | Family::T2PlusFields => {
            let f = FiniteRing::galois_field(2, 1)?;
            FiniteRing::upper_triangular(&f, 2)?
        }
    };
    let mut ring = base;
    for &n in &d.degrees {
        let field = FiniteRing::galois_field(d.p, n)?;
        ring = ring.direct_sum(&field)?;
    }
    Ok(ring.with_label(d.to_string()))
}

/// All partitions of n into positive parts, each sorted ascending, in
/// lexicographic order: [1,1,..,1] first, [n] last.
fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, min: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if n == 0 {
            out.push(prefix.clone());
            return;
        }
        for part in min..=n {
            prefix.push(part);
            rec(n - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, 1, &mut Vec::new(), &mut out);
    out
}

/// Every descriptor whose realized order is exactly p^beta, in matching
/// order: Zpa first, then Zpa-plus-fields, the T2 families, and the M2
/// families last. Degrees are kept sorted, so the list is duplicate-free.
pub fn enumerate_descriptors(p: usize, beta: usize) -> Vec<CanonicalTypeDescriptor> {
    let mut out = Vec::new();
    if beta >= 1 && !(p == 2 && beta > 2) {
        out.push(CanonicalTypeDescriptor::new(Family::Zpa, p, Some(beta), vec![]).unwrap());
    }
    let alpha_cap = if p == 2 { 2 } else { beta };
    for alpha in 1..=alpha_cap.min(beta.saturating_sub(1)) {
        for degs in partitions(beta - alpha) {
            out.push(
                CanonicalTypeDescriptor::new(Family::ZpaPlusFields, p, Some(alpha), degs).unwrap(),
            );
        }
    }
    if p == 2 && beta == 3 {
        out.push(CanonicalTypeDescriptor::new(Family::T2, 2, None, vec![]).unwrap());
    }
    if p == 2 && beta > 3 {
        for degs in partitions(beta - 3) {
            out.push(CanonicalTypeDescriptor::new(Family::T2PlusFields, 2, None, degs).unwrap());
        }
    }
    if beta == 4 {
        out.push(CanonicalTypeDescriptor::new(Family::M2, p, None, vec![]).unwrap());
    }
    if beta > 4 {
        for degs in partitions(beta - 4) {
            out.push(CanonicalTypeDescriptor::new(Family::M2PlusFields, p, None, degs).unwrap());
        }
    }
    out
}

/// Membership in the auxiliary family of p-power rings built from fields
/// of order exactly p plus at most one special block: integers mod p^m
/// (mod 4 only, when p = 2) or the 2x2 matrices over GF(p). Degenerate
/// shapes count: a lone special block, or field blocks alone.
///
/// This family is deliberately narrower than the six-family catalogue,
/// whose field summands may have any degree (GF(p^n) for n >= 1); the
/// two predicates are kept distinct on purpose, so e.g. GF(4) is outside
/// the family here while M2(GF(2)) + GF(4) still matches the catalogue.
pub fn gamma_p_member(ring: &FiniteRing, p: usize) -> Result<bool> {
    if !is_prime(p) {
        return Err(Error::InvalidParameter(format!("{p} is not prime")));
    }
    let factors = factorize(ring.order());
    if factors.len() != 1 || factors[0].0 != p {
        return Err(Error::InvalidParameter(format!(
            "ring order {} is not a power of {p}",
            ring.order()
        )));
    }
    let blocks = central_idempotent_split(ring);
    let mut special_blocks = 0usize;
    for (_, block) in &blocks {
        if block.order() == p {
            continue; // necessarily the field of order p
        }
        let m = factorize(block.order())[0].1;
        let is_zpm = if p == 2 {
            block.order() == 4 && iso::is_isomorphic(block, &FiniteRing::zmod(4)?).is_some()
        } else {
            iso::is_isomorphic(block, &FiniteRing::zmod(checked_pow(p, m).unwrap())?).is_some()
        };
        let is_m2 = block.order() == checked_pow(p, 4).unwrap_or(0) && {
            let f = FiniteRing::galois_field(p, 1)?;
            iso::is_isomorphic(block, &FiniteRing::matrix_ring(&f, 2)?).is_some()
        };
        if is_zpm || is_m2 {
            special_blocks += 1;
        } else {
            return Ok(false);
        }
    }
    Ok(special_blocks <= 1)
}

/// `(count, holds)` for "the unit group has at most one subgroup of order
/// p". Errors when p is not a prime divisor of the ring order.
pub fn check_hypothesis(ring: &FiniteRing, p: usize) -> Result<(usize, bool)> {
    if !is_prime(p) {
        return Err(Error::InvalidParameter(format!("{p} is not prime")));
    }
    if ring.order() % p != 0 {
        return Err(Error::InvalidParameter(format!(
            "{p} does not divide the ring order {}",
            ring.order()
        )));
    }
    let count = units(ring).count_subgroups_of_order_p(p)?;
    Ok((count, count <= 1))
}

/// Everything the classifier decided for one ring and one prime.
#[derive(Debug, Clone, Serialize)]
pub struct ClassificationReport {
    pub ring_label: String,
    pub p: usize,
    pub hypothesis_subgroup_count: usize,
    pub hypothesis_holds: bool,
    pub sylow_cyclic: bool,
    pub p_block_order: usize,
    pub coprime_block_order: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub matched: Option<CanonicalTypeDescriptor>,
    /// Verified isomorphism from the p-block onto the matched canonical
    /// ring (p-block element index -> canonical element index).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failure_reason: Option<String>,
}

/// Splits the ring into its p-power-order part and the complementary part
/// (both assembled from the primitive central idempotent blocks), checks
/// the subgroup-count hypothesis on the full unit group, and — when the
/// hypothesis holds — matches the p-part against every six-family
/// descriptor of that order.
///
/// A report with `hypothesis_holds = true` and `matched = None` is a
/// counterexample to the classification statement and carries a
/// `failure_reason`.
pub fn classify(ring: &FiniteRing, p: usize) -> Result<ClassificationReport> {
    let (count, holds) = check_hypothesis(ring, p)?;
    let blocks = central_idempotent_split(ring);
    let mut p_part: Option<FiniteRing> = None;
    let mut coprime_order = 1usize;
    for (_, block) in blocks {
        if block.order() % p == 0 {
            p_part = Some(match p_part {
                None => block,
                Some(acc) => acc.direct_sum(&block)?,
            });
        } else {
            coprime_order *= block.order();
        }
    }
    let p_block = p_part.ok_or_else(|| {
        Error::Internal(format!(
            "no block of {} has order divisible by {p}, yet {p} divides the ring order",
            ring.label()
        ))
    })?;
    let beta = factorize(p_block.order())
        .first()
        .map(|&(_, e)| e)
        .unwrap_or(0);
    if checked_pow(p, beta) != Some(p_block.order()) {
        return Err(Error::Internal(format!(
            "p-part of {} has order {}, not a power of {p}",
            ring.label(),
            p_block.order()
        )));
    }
    let unit_view = units(ring);
    let sylow_cyclic = unit_view.sylow_cyclic(p)?;

    let mut matched = None;
    let mut witness = None;
    let mut failure_reason = None;
    if holds {
        let descriptors = enumerate_descriptors(p, beta);
        let total = descriptors.len();
        for d in descriptors {
            let candidate = canonical_ring(&d)?;
            if let Some(phi) = iso::is_isomorphic(&p_block, &candidate) {
                matched = Some(d);
                witness = Some(phi);
                break;
            }
        }
        if matched.is_none() {
            failure_reason = Some(format!(
                "hypothesis holds (subgroup count {count}) but the p-power block of order {} \
                 is isomorphic to none of the {total} catalogue members for p={p}, beta={beta}",
                p_block.order()
            ));
        }
    }
    Ok(ClassificationReport {
        ring_label: ring.label().to_string(),
        p,
        hypothesis_subgroup_count: count,
        hypothesis_holds: holds,
        sylow_cyclic,
        p_block_order: p_block.order(),
        coprime_block_order: coprime_order,
        matched,
        witness,
        failure_reason,
    })
}

/// One classification report per prime divisor of the ring order.
pub fn classify_all(ring: &FiniteRing) -> Result<Vec<ClassificationReport>> {
    factorize(ring.order())
        .into_iter()
        .map(|(p, _)| classify(ring, p))
        .collect()
}

/// Outcome of checking the classification statement on one ring.
#[derive(Debug, Clone, Serialize)]
pub struct TheoremVerdict {
    pub ring_label: String,
    pub passed: bool,
    pub reports: Vec<ClassificationReport>,
    /// Human-readable notes: converse Sylow-cyclicity confirmations and
    /// any failure summaries.
    pub notes: Vec<String>,
}

/// For each prime dividing the ring order: when the at-most-one-subgroup
/// hypothesis holds, a catalogue match must exist; additionally, each
/// matched descriptor's canonical ring is checked to have cyclic Sylow
/// p-subgroups of its unit group (the converse structural condition).
pub fn verify_theorem_on(ring: &FiniteRing) -> Result<TheoremVerdict> {
    let reports = classify_all(ring)?;
    let mut passed = true;
    let mut notes = Vec::new();
    for report in &reports {
        if report.hypothesis_holds && report.matched.is_none() {
            passed = false;
            notes.push(format!(
                "counterexample at p={}: {}",
                report.p,
                report
                    .failure_reason
                    .clone()
                    .unwrap_or_else(|| "no match".into())
            ));
        }
        if let Some(d) = &report.matched {
            let canonical = canonical_ring(d)?;
            let cyclic = units(&canonical).sylow_cyclic(report.p)?;
            if cyclic {
                notes.push(format!(
                    "matched {d}; canonical ring has cyclic Sylow {}-subgroups",
                    report.p
                ));
            } else {
                passed = false;
                notes.push(format!(
                    "matched {d}, but the canonical ring fails Sylow {}-cyclicity",
                    report.p
                ));
            }
        }
    }
    Ok(TheoremVerdict {
        ring_label: ring.label().to_string(),
        passed,
        reports,
        notes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(m: usize) -> FiniteRing {
        FiniteRing::zmod(m).unwrap()
    }

    fn gf(p: usize, n: usize) -> FiniteRing {
        FiniteRing::galois_field(p, n).unwrap()
    }

    fn descriptor(
        family: Family,
        p: usize,
        alpha: Option<usize>,
        degrees: Vec<usize>,
    ) -> CanonicalTypeDescriptor {
        CanonicalTypeDescriptor::new(family, p, alpha, degrees).unwrap()
    }

    #[test]
    fn descriptor_validation() {
        assert!(CanonicalTypeDescriptor::new(Family::T2, 3, None, vec![]).is_err());
        assert!(CanonicalTypeDescriptor::new(Family::Zpa, 2, Some(3), vec![]).is_err());
        assert!(CanonicalTypeDescriptor::new(Family::Zpa, 3, Some(0), vec![]).is_err());
        assert!(CanonicalTypeDescriptor::new(Family::Zpa, 3, None, vec![]).is_err());
        assert!(CanonicalTypeDescriptor::new(Family::ZpaPlusFields, 3, Some(1), vec![]).is_err());
        assert!(CanonicalTypeDescriptor::new(Family::M2, 4, None, vec![]).is_err());
        assert!(CanonicalTypeDescriptor::new(Family::M2, 3, Some(1), vec![]).is_err());
        // degrees come back sorted
        let d = descriptor(Family::ZpaPlusFields, 3, Some(2), vec![3, 1, 2]);
        assert_eq!(d.degrees, vec![1, 2, 3]);
        assert_eq!(d.realized_order(), 3usize.pow(8));
    }

    #[test]
    fn canonical_ring_construction() {
        let z9 = canonical_ring(&descriptor(Family::Zpa, 3, Some(2), vec![])).unwrap();
        assert_eq!(z9.order(), 9);
        assert_eq!(z9.characteristic(), 9);

        let m2f4 = canonical_ring(&descriptor(Family::M2PlusFields, 2, None, vec![2])).unwrap();
        assert_eq!(m2f4.order(), 64);

        let t2ff = canonical_ring(&descriptor(Family::T2PlusFields, 2, None, vec![1, 1])).unwrap();
        assert_eq!(t2ff.order(), 32);
        assert!(!t2ff.is_commutative());
    }

    #[test]
    fn descriptor_enumeration_small_cases() {
        let d31 = enumerate_descriptors(3, 1);
        assert_eq!(d31.len(), 1);
        assert_eq!(d31[0].family, Family::Zpa);
        assert_eq!(d31[0].alpha, Some(1));

        let d23 = enumerate_descriptors(2, 3);
        // Zpa alpha=3 excluded; Zpa+fields (1,[1,1]), (1,[2]), (2,[1]); T2
        assert_eq!(d23.len(), 4);
        assert!(d23.iter().all(|d| d.realized_order() == 8));
        assert!(d23.iter().any(|d| d.family == Family::T2));
        assert!(!d23.iter().any(|d| d.family == Family::Zpa));

        let d24 = enumerate_descriptors(2, 4);
        assert!(d24.iter().any(|d| d.family == Family::M2));
        // matching order puts the M2 families last
        assert_eq!(d24.last().unwrap().family, Family::M2);

        let d35 = enumerate_descriptors(3, 5);
        assert!(d35.iter().any(|d| d.family == Family::M2PlusFields));
        assert!(!d35.iter().any(|d| d.family == Family::T2PlusFields));
        for d in &d35 {
            assert_eq!(d.realized_order(), 243);
        }
    }

    #[test]
    fn gamma_membership() {
        let f3 = gf(3, 1);
        assert!(gamma_p_member(&f3.direct_sum(&f3).unwrap(), 3).unwrap());
        assert!(gamma_p_member(&z(4).direct_sum(&gf(2, 1)).unwrap(), 2).unwrap());
        assert!(!gamma_p_member(&gf(2, 2), 2).unwrap());
        // Z8 is not allowed as the special block when p = 2 (only Z4 is)
        assert!(!gamma_p_member(&z(8), 2).unwrap());
        // but Z27 is fine for p = 3
        assert!(gamma_p_member(&z(27), 3).unwrap());
        // at most one special block
        assert!(!gamma_p_member(&z(9).direct_sum(&z(9)).unwrap(), 3).unwrap());
        // M2(GF(p)) alone is a member
        let m2 = FiniteRing::matrix_ring(&gf(2, 1), 2).unwrap();
        assert!(gamma_p_member(&m2, 2).unwrap());
        // wrong prime or mixed order is a parameter error
        assert!(gamma_p_member(&z(6), 2).is_err());
        assert!(gamma_p_member(&z(9), 2).is_err());
    }

    #[test]
    fn hypothesis_checks() {
        assert_eq!(check_hypothesis(&z(8), 2).unwrap(), (3, false));
        assert_eq!(check_hypothesis(&z(9), 3).unwrap(), (1, true));
        let m3 = FiniteRing::matrix_ring(&gf(3, 1), 2).unwrap();
        assert_eq!(check_hypothesis(&m3, 3).unwrap(), (4, false));
        assert!(check_hypothesis(&z(9), 5).is_err());
        assert!(check_hypothesis(&z(9), 4).is_err());
    }

    #[test]
    fn classify_z9_matches_zpa() {
        let report = classify(&z(9), 3).unwrap();
        assert!(report.hypothesis_holds);
        assert_eq!(report.p_block_order, 9);
        assert_eq!(report.coprime_block_order, 1);
        let d = report.matched.unwrap();
        assert_eq!(d.family, Family::Zpa);
        assert_eq!(d.alpha, Some(2));
        assert!(report.witness.is_some());
    }

    #[test]
    fn classify_mixed_order_ring() {
        let r = z(4).direct_sum(&gf(3, 1)).unwrap();
        let report = classify(&r, 2).unwrap();
        // units C2 x C2: three involutions
        assert_eq!(report.hypothesis_subgroup_count, 3);
        assert!(!report.hypothesis_holds);
        assert!(report.matched.is_none());
        assert!(report.failure_reason.is_none());
        assert_eq!(report.p_block_order, 4);
        assert_eq!(report.coprime_block_order, 3);
    }

    #[test]
    fn classify_t2_plus_gf3_counts_involutions_exactly() {
        // units(T2(GF(2))) = C2 and units(GF(3)) = C2, so the full unit
        // group is C2 x C2 with three involutions: the hypothesis fails
        // at p = 2 and no matching is attempted.
        let t2 = FiniteRing::upper_triangular(&gf(2, 1), 2).unwrap();
        let r = t2.direct_sum(&gf(3, 1)).unwrap();
        let report = classify(&r, 2).unwrap();
        assert_eq!(report.hypothesis_subgroup_count, 3);
        assert!(!report.hypothesis_holds);
        assert!(report.matched.is_none());
        // at p = 3: C2 x C2 has no order-3 element, so the count is 0,
        // the hypothesis holds, and matching runs on the 3-block.
        let report3 = classify(&r, 3).unwrap();
        assert_eq!(report3.hypothesis_subgroup_count, 0);
        assert!(report3.hypothesis_holds);
        let d = report3.matched.unwrap();
        assert_eq!(d.family, Family::Zpa);
        assert_eq!(d.alpha, Some(1));
        assert_eq!(report3.p_block_order, 3);
        assert_eq!(report3.coprime_block_order, 8);
    }

    #[test]
    fn dual_numbers_are_a_genuine_counterexample() {
        // F2[x]/(x^2): 1 + x is the only nontrivial unit, so the unit
        // group is C2 with a single involution and the hypothesis holds.
        // The ring is local with a nonzero radical and characteristic 2,
        // so it is isomorphic to neither Z4 nor Z2+GF(2) — the only
        // catalogue members of order 4 — and classification must report
        // the mismatch rather than force one.
        let mut mul = vec![0u32; 16];
        let n = 4usize;
        // elements: 0, 1, x, 1+x with index = a0 + 2*a1 for a0 + a1 x
        let add: Vec<u32> = (0..n * n).map(|i| ((i / n) ^ (i % n)) as u32).collect();
        for a in 0..n {
            for b in 0..n {
                let (a0, a1) = (a & 1, a >> 1);
                let (b0, b1) = (b & 1, b >> 1);
                // (a0 + a1 x)(b0 + b1 x) = a0 b0 + (a0 b1 + a1 b0) x
                mul[a * n + b] = ((a0 * b0) | (((a0 * b1 + a1 * b0) % 2) << 1)) as u32;
            }
        }
        let r = FiniteRing::from_tables(n, add, mul, 1, "F2[x]/(x^2)".into()).unwrap();
        assert!(r.validate().is_ok());
        let report = classify(&r, 2).unwrap();
        assert_eq!(report.hypothesis_subgroup_count, 1);
        assert!(report.hypothesis_holds);
        assert!(report.matched.is_none());
        assert!(report.failure_reason.is_some());
        let verdict = verify_theorem_on(&r).unwrap();
        assert!(!verdict.passed);
    }

    #[test]
    fn verify_theorem_vacuous_and_positive_cases() {
        // Z8: three involutions, hypothesis fails, nothing to match
        let v = verify_theorem_on(&z(8)).unwrap();
        assert!(v.passed);
        assert!(v.reports[0].matched.is_none());

        // M2(GF(2)): |R| = 16, only p = 2 applies; the unit group S3 has
        // three involutions, so the hypothesis fails and the verdict is
        // vacuously positive; Sylow 2-subgroups are cyclic (order 2).
        let m2 = FiniteRing::matrix_ring(&gf(2, 1), 2).unwrap();
        let v = verify_theorem_on(&m2).unwrap();
        assert!(v.passed);
        assert_eq!(v.reports[0].hypothesis_subgroup_count, 3);
        assert!(v.reports[0].sylow_cyclic);

        // Z12: units {1,5,7,11} form C2 x C2. At p=2 there are three
        // involutions so the hypothesis fails; at p=3 the count is zero,
        // the hypothesis holds, and the 3-block Z3 must match.
        let v = verify_theorem_on(&z(12)).unwrap();
        assert!(v.passed, "notes: {:?}", v.notes);
        let by_p: std::collections::BTreeMap<usize, &ClassificationReport> =
            v.reports.iter().map(|r| (r.p, r)).collect();
        assert!(!by_p[&2].hypothesis_holds);
        assert!(by_p[&3].hypothesis_holds);
        assert_eq!(by_p[&3].matched.as_ref().unwrap().family, Family::Zpa);
    }

    #[test]
    fn classify_canonical_rings_matches_their_own_descriptor() {
        // The cyclic and triangular families satisfy the unit-group
        // hypothesis themselves, so classification must recover the
        // descriptor they were built from.
        let catalogue = [
            descriptor(Family::Zpa, 3, Some(2), vec![]),
            descriptor(Family::Zpa, 2, Some(2), vec![]),
            descriptor(Family::ZpaPlusFields, 2, Some(2), vec![1]),
            descriptor(Family::ZpaPlusFields, 3, Some(1), vec![1]),
            descriptor(Family::T2, 2, None, vec![]),
            descriptor(Family::T2PlusFields, 2, None, vec![1]),
        ];
        for d in catalogue {
            let ring = canonical_ring(&d).unwrap();
            let report = classify(&ring, d.p).unwrap();
            assert!(
                report.hypothesis_holds,
                "{d} violates its own hypothesis"
            );
            assert_eq!(report.matched.as_ref(), Some(&d), "{d} matched wrongly");
        }

        // The matrix families never satisfy the hypothesis at their own
        // prime: the full linear group over GF(p) contains p+1 distinct
        // subgroups of order p (one per Sylow p-subgroup), so the
        // classification statement is vacuous there — but their Sylow
        // p-subgroups are still cyclic of order p.
        let matrix_catalogue = [
            descriptor(Family::M2, 2, None, vec![]),
            descriptor(Family::M2, 3, None, vec![]),
            descriptor(Family::M2PlusFields, 2, None, vec![2]),
        ];
        for d in matrix_catalogue {
            let ring = canonical_ring(&d).unwrap();
            let report = classify(&ring, d.p).unwrap();
            assert_eq!(
                report.hypothesis_subgroup_count,
                d.p + 1,
                "{d} subgroup count"
            );
            assert!(!report.hypothesis_holds, "{d} hypothesis should fail");
            assert!(report.matched.is_none());
            assert!(report.sylow_cyclic, "{d} Sylow p-subgroup is C_p");
        }
    }

    #[test]
    fn gamma_members_match_when_hypothesis_holds() {
        let f3 = gf(3, 1);
        let candidates = vec![
            f3.direct_sum(&f3).unwrap(),
            z(4).direct_sum(&gf(2, 1)).unwrap(),
            z(27),
            z(9).direct_sum(&f3).unwrap(),
        ];
        for r in candidates {
            let p = factorize(r.order())[0].0;
            assert!(gamma_p_member(&r, p).unwrap());
            let report = classify(&r, p).unwrap();
            if report.hypothesis_holds {
                assert!(
                    report.matched.is_some(),
                    "gamma member {} unmatched",
                    r.label()
                );
            }
        }
    }
}
