/// Bohr radii per angstrom.
pub const BOHR_PER_ANGSTROM: f64 = 1.8897259886;

/// Electron-volts per hartree.
pub const HARTREE_TO_EV: f64 = 27.211386245988;

pub fn angstrom_to_bohr(x: f64) -> f64 {
    x * BOHR_PER_ANGSTROM
}

pub fn hartree_to_ev(e: f64) -> f64 {
    e * HARTREE_TO_EV
}
