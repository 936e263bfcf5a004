//! Exhaustive searches over small bipartite and split graphs, the
//! complete-bipartite side-ratio scan, and sharpness tables for the
//! extremal constructions.

pub mod enumerate;
pub mod gap;
pub mod report;

pub use enumerate::{
    bipartite_from_rows, enumerate_bipartite, enumerate_bipartite_raw, enumerate_split,
    fold_bipartite, fold_split, split_from_rows, CAPACITY_BITS,
};
pub use gap::{conjecture19_scan, sharpness_gap, Conjecture19Row, Conjecture19Scan, GapFamily, GapRow, GapTable, KPolicy};
pub use report::{
    max_mostar_bipartite, max_mostar_split, search_bipartite_sides, search_split_k, BipartiteSideReport,
    EdgeListRecord, SearchReport, SplitKReport,
};
