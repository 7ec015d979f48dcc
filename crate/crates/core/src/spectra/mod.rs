//! One-centre Auger rates, Gaussian broadening, XAS oscillator strengths
//! and spectrum output.

pub mod broaden;
pub mod mbs;
pub mod oca;
pub mod output;
pub mod table;
pub mod xas;

pub use broaden::{broaden, Spectrum};
pub use mbs::{mbs_project, MbsProjection};
pub use oca::{
    assemble_auger, auger_spectrum, eom_final_states, multiplicity_symbol, AugerChannel, AugerOptions, AugerSpectrum,
    FinalState, OcaModel, AUGER_HWHM_EV, REPORTING_FLOOR,
};
pub use output::{auger_sticks_csv, channel_table_json, curve_csv, svg_plot, xas_sticks_csv};
pub use table::{load_atomic_integrals, parse_atomic_integrals, AtomicIntegralTable};
pub use xas::{oscillator_strength, transition_dipole, transition_one_rdm, xas_spectrum, XasSpectrum, XasTransition, XAS_HWHM_EV};
