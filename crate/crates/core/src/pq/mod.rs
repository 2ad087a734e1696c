//! Combinatorial layer: (p,q)-property checks, exact piercing numbers,
//! intersection hypergraphs and their transversals, and bound catalogues.

mod catalog;
mod hypergraph;
mod oracle;
mod piercing;
pub(crate) mod property;
mod subsets;

pub use catalog::{
    catalog_lookup, eta_tuza_bound, verify_eg_equivalence, BoundCatalog, BoundKind, CatalogEntry,
    EgCheck,
};
pub use hypergraph::{build_gf, build_gf_with, transversal_number, Hypergraph, Transversal};
pub use oracle::{Budget, FamilyOracle, IntersectionOracle, Memo, ShadowOracle};
pub use piercing::{
    min_intersecting_partition, piercing_number, piercing_number_with, Partition, PiercingSolution,
};
pub use property::{
    find_intersecting, has_pq_property, has_pq_property_with, is_m_free, m_free_violation,
    FreeViolation, PqReport,
};
pub use subsets::{binomial, Combinations};
