//! Synthesis back ends.

pub mod brute;
pub mod depth;
pub mod qaoa;
pub mod size;

pub use brute::{synth_brute_force, synth_brute_force_list};
pub use depth::{
    generate_stage, gray_path_stage, reset_stage, synth_diag_depth, synth_kdiag_depth,
    synth_rucg_diag_depth, synth_rucg_rz_depth,
};
pub use qaoa::{baseline_rzz_ladder, qaoa_target_vector, round_robin, synth_qaoa};
pub use size::{assemble, synth_krucg, synth_rucg, synth_rucg_sparse, SizeOptions};
