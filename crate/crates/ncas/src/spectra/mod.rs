//! Adjacency algebras, Wedderburn systems, eigenmatrices and character tables.

mod algebra;
mod eigen;
mod families;
mod fused;
mod rank;

pub use algebra::{AdjacencyAlgebra, AlgElem};
pub use eigen::{exact_rank, Block, BlockSpec, DualityReport, Eigensystem};
pub use families::{
    bgw_block_labels, bgw_index, bgw_stated_units, check_f_identities_bgw, check_f_identities_gh, f_matrices_bgw,
    f_matrices_gh, gh_index, gh_stated_f_failures, stated_character_table_bgw, stated_character_table_gh, stated_q_bgw,
    stated_q_gh, wedderburn_bgw, wedderburn_gh, FMatrices,
};
pub use fused::fused_eigensystem;
pub use rank::{certified_ranks, RankJob};
