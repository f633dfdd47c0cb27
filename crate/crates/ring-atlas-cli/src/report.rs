//! JSON report documents and their human-readable rendering.
//!
//! Every document carries `schema_version` and uses exact integers only.

use std::collections::BTreeMap;

use serde::Serialize;

use ring_atlas::classify::ClassificationReport;
use ring_atlas::enumerate::Census;
use ring_atlas::structure;
use ring_atlas::sweep::SweepReport;
use ring_atlas::units::{unit_group_primes, units};
use ring_atlas::FiniteRing;

pub const SCHEMA_VERSION: &str = "1";

#[derive(Serialize)]
pub struct ReportDocument {
    pub schema_version: &'static str,
    pub input: InputEcho,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub structure: Option<StructureSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub unit_group: Option<UnitGroupSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub classification: Option<ClassificationReport>,
}

#[derive(Serialize)]
pub struct InputEcho {
    pub source: String,
    pub label: String,
    pub order: usize,
}

#[derive(Serialize)]
pub struct StructureSection {
    pub characteristic: usize,
    pub commutative: bool,
    pub radical_size: usize,
    pub radical_members: Vec<usize>,
    pub minimal_ideal_count: usize,
    pub maximal_ideal_count: usize,
    pub two_sided_ideal_count: usize,
    pub center_size: usize,
    pub simple_block_count: usize,
}

#[derive(Serialize)]
pub struct UnitGroupSection {
    pub order: usize,
    /// element order -> how many units have it
    pub order_profile: BTreeMap<usize, usize>,
    pub involution_count: usize,
    pub sylow: Vec<SylowEntry>,
}

#[derive(Serialize)]
pub struct SylowEntry {
    pub p: usize,
    pub p_part: usize,
    pub cyclic: bool,
    pub subgroups_of_order_p: usize,
}

pub fn input_echo(source: &str, ring: &FiniteRing) -> InputEcho {
    InputEcho {
        source: source.trim().to_string(),
        label: ring.label().to_string(),
        order: ring.order(),
    }
}

pub fn structure_section(ring: &FiniteRing) -> StructureSection {
    let radical = structure::jacobson_radical(ring);
    StructureSection {
        characteristic: ring.characteristic(),
        commutative: ring.is_commutative(),
        radical_size: radical.len(),
        radical_members: radical.members().to_vec(),
        minimal_ideal_count: structure::minimal_ideals(ring).len(),
        maximal_ideal_count: structure::maximal_ideals(ring).len(),
        two_sided_ideal_count: structure::two_sided_ideals(ring).len(),
        center_size: structure::center(ring).len(),
        simple_block_count: structure::central_idempotent_split(ring).len(),
    }
}

pub fn unit_group_section(ring: &FiniteRing) -> Result<UnitGroupSection, ring_atlas::Error> {
    let view = units(ring);
    let mut sylow = Vec::new();
    for p in unit_group_primes(&view) {
        sylow.push(SylowEntry {
            p,
            p_part: view.p_part(p),
            cyclic: view.sylow_cyclic(p)?,
            subgroups_of_order_p: view.count_subgroups_of_order_p(p)?,
        });
    }
    Ok(UnitGroupSection {
        order: view.order(),
        order_profile: view.order_profile().clone(),
        involution_count: view.involution_count(),
        sylow,
    })
}

pub fn print_human(doc: &ReportDocument) {
    println!("ring: {} (order {})", doc.input.label, doc.input.order);
    if let Some(s) = &doc.structure {
        println!("  characteristic:    {}", s.characteristic);
        println!("  commutative:       {}", s.commutative);
        println!(
            "  radical:           {} element(s) {:?}",
            s.radical_size, s.radical_members
        );
        println!(
            "  ideals:            {} two-sided, {} minimal, {} maximal",
            s.two_sided_ideal_count, s.minimal_ideal_count, s.maximal_ideal_count
        );
        println!("  center size:       {}", s.center_size);
        println!("  simple blocks:     {}", s.simple_block_count);
    }
    if let Some(u) = &doc.unit_group {
        println!("  unit group order:  {}", u.order);
        println!("  involutions:       {}", u.involution_count);
        let profile: Vec<String> = u
            .order_profile
            .iter()
            .map(|(o, c)| format!("{o}:{c}"))
            .collect();
        println!("  order profile:     {{{}}}", profile.join(", "));
        for s in &u.sylow {
            println!(
                "  Sylow {:<2}           order {} ({}), {} subgroup(s) of order {}",
                s.p,
                s.p_part,
                if s.cyclic { "cyclic" } else { "non-cyclic" },
                s.subgroups_of_order_p,
                s.p
            );
        }
    }
    if let Some(c) = &doc.classification {
        println!("  classification at p = {}:", c.p);
        println!(
            "    subgroups of order p: {} (hypothesis {})",
            c.hypothesis_subgroup_count,
            if c.hypothesis_holds { "holds" } else { "fails" }
        );
        println!("    Sylow p cyclic:      {}", c.sylow_cyclic);
        println!(
            "    block orders:        p-part {}, coprime part {}",
            c.p_block_order, c.coprime_block_order
        );
        match (&c.matched, &c.failure_reason) {
            (Some(d), _) => println!("    matched type:        {d}"),
            (None, Some(reason)) => println!("    NO MATCH:            {reason}"),
            (None, None) => {
                println!("    matched type:        (not applicable — hypothesis fails)")
            }
        }
    }
}

#[derive(Serialize)]
pub struct CensusDocument {
    pub schema_version: &'static str,
    pub order: usize,
    pub deduped: bool,
    pub complete: bool,
    pub total: usize,
    pub noncommutative: usize,
    /// (additive component orders, class count) per group
    pub by_group: Vec<(Vec<usize>, usize)>,
    pub labels: Vec<String>,
}

pub fn census_document(census: &Census) -> CensusDocument {
    CensusDocument {
        schema_version: SCHEMA_VERSION,
        order: census.order,
        deduped: census.deduped,
        complete: census.complete,
        total: census.total(),
        noncommutative: census.noncommutative_count(),
        by_group: census.by_group.clone(),
        labels: census.rings.iter().map(|r| r.label().to_string()).collect(),
    }
}

pub fn print_census_human(doc: &CensusDocument) {
    let what = if doc.deduped {
        "isomorphism classes"
    } else {
        "distinct tables"
    };
    println!("order {}: {} {}", doc.order, doc.total, what);
    for (group, count) in &doc.by_group {
        let parts: Vec<String> = group.iter().map(|c| format!("Z{c}")).collect();
        println!("  additive {} -> {}", parts.join(" x "), count);
    }
    println!("  noncommutative: {}", doc.noncommutative);
    if !doc.complete {
        println!("  WARNING: budget exhausted, listing is partial");
    }
}

#[derive(Serialize)]
pub struct SweepDocument {
    pub schema_version: &'static str,
    pub max_order: usize,
    pub rings_swept: usize,
    pub census_rings: usize,
    pub composite_rings: usize,
    pub total_violations: usize,
    pub report: SweepReport,
}

pub fn sweep_document(max_order: usize, report: SweepReport) -> SweepDocument {
    SweepDocument {
        schema_version: SCHEMA_VERSION,
        max_order,
        rings_swept: report.rings_swept(),
        census_rings: report.census_rings,
        composite_rings: report.composite_rings,
        total_violations: report.total_violations(),
        report,
    }
}

pub fn print_sweep_human(doc: &SweepDocument) {
    println!(
        "swept {} ring(s) through order {} ({} from censuses, {} composite block sums)",
        doc.rings_swept, doc.max_order, doc.census_rings, doc.composite_rings
    );
    for check in &doc.report.checks {
        println!(
            "  {:<32} checked {:>5}, skipped {:>5}, violations {}",
            check.check.name(),
            check.rings_checked,
            check.rings_skipped,
            check.violations.len()
        );
    }
    if doc.total_violations == 0 {
        println!("all checks passed");
    } else {
        println!(
            "{} violation(s); counterexamples follow as JSON",
            doc.total_violations
        );
    }
}
