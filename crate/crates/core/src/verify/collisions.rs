use std::collections::BTreeMap;

use serde::Serialize;

use crate::catalog::{enumerate_domains, DomainSpec};
use crate::entropy::entropy_hyperbolic;

/// Catalog domains sharing one value of `Ent^2 / 4`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CollisionGroup {
    pub squared_quarter: u64,
    pub entropy: f64,
    pub members: Vec<DomainSpec>,
    /// Whether every member has the same complex dimension.
    pub same_dimension: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CollisionReport {
    pub max_dim: u64,
    pub domains_scanned: usize,
    pub groups: Vec<CollisionGroup>,
}

impl CollisionReport {
    pub fn same_dimension_groups(&self) -> impl Iterator<Item = &CollisionGroup> {
        self.groups.iter().filter(|g| g.same_dimension)
    }
}

/// Groups the irreducible domains of dimension at most `max_dim` by exact
/// entropy, keeping the groups with two or more members.
pub fn scan_collisions(max_dim: u64) -> CollisionReport {
    let domains = enumerate_domains(max_dim);
    let mut by_value: BTreeMap<u64, Vec<DomainSpec>> = BTreeMap::new();
    for d in &domains {
        by_value.entry(entropy_hyperbolic(d).squared_quarter).or_default().push(*d);
    }
    let groups = by_value
        .into_iter()
        .filter(|(_, m)| m.len() >= 2)
        .map(|(sq, members)| CollisionGroup {
            squared_quarter: sq,
            entropy: 2.0 * (sq as f64).sqrt(),
            same_dimension: members.windows(2).all(|w| w[0].dim() == w[1].dim()),
            members,
        })
        .collect();
    CollisionReport { max_dim, domains_scanned: domains.len(), groups }
}
