//! Mixer generators, strict mixer synthesis and the checks that certify it.

mod design;
mod gdpm;
mod generators;
mod pmg;
mod ppm;

pub use design::{verify_criteria, Check, CriteriaKind, CriteriaReport, DesignKind, MixerDesign};
pub use gdpm::{gdpm, gdpm_search, GateTemplate, Library, BEAM_WIDTH};
pub use generators::{mixer_generator, trotter_mixer, GeneratorKind};
pub use pmg::{
    leakage, leakage_circuit, pmg_columns, pmg_of, pmg_of_unitary, structural_partners, structural_pmg, PartialMixerGraph, EDGE_TOL,
    GENERIC_ANGLES, PMG_MAX_QUBITS,
};
pub use ppm::ppm_construct;
