use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Grid points per HWHM.
pub const POINTS_PER_HWHM: f64 = 10.0;
/// Grid padding in units of HWHM on either side of the stick range.
pub const PADDING_HWHM: f64 = 5.0;

/// Stick spectrum with its Gaussian-broadened curve.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Spectrum {
    /// (energy eV, intensity)
    pub sticks: Vec<(f64, f64)>,
    pub energies: Vec<f64>,
    pub intensities: Vec<f64>,
    pub hwhm: f64,
}

impl Spectrum {
    pub fn step(&self) -> f64 {
        if self.energies.len() < 2 {
            0.0
        } else {
            self.energies[1] - self.energies[0]
        }
    }

    /// Local maxima of the curve at or above `min_fraction` of the global
    /// maximum, as (energy, height), tallest first.
    pub fn maxima(&self, min_fraction: f64) -> Vec<(f64, f64)> {
        let y = &self.intensities;
        let top = y.iter().copied().fold(0.0, f64::max);
        let mut out: Vec<(f64, f64)> = (1..y.len().saturating_sub(1))
            .filter(|&i| y[i] > y[i - 1] && y[i] >= y[i + 1] && y[i] >= min_fraction * top && y[i] > 0.0)
            .map(|i| (self.energies[i], y[i]))
            .collect();
        out.sort_by(|a, b| b.1.total_cmp(&a.1));
        out
    }
}

/// G(E) = Σ_i I_i exp(−ln2 ((E − E_i)/HWHM)²) on a uniform grid with step
/// ≤ HWHM/10 covering [min − 5·HWHM, max + 5·HWHM].
pub fn broaden(sticks: &[(f64, f64)], hwhm: f64) -> Result<Spectrum> {
    if !(hwhm > 0.0 && hwhm.is_finite()) {
        return Err(Error::invalid(format!("HWHM must be positive, got {hwhm}")));
    }
    let mut sticks = sticks.to_vec();
    sticks.sort_by(|a, b| a.0.total_cmp(&b.0));
    if sticks.is_empty() {
        return Ok(Spectrum { sticks, energies: Vec::new(), intensities: Vec::new(), hwhm });
    }
    let lo = sticks[0].0 - PADDING_HWHM * hwhm;
    let hi = sticks[sticks.len() - 1].0 + PADDING_HWHM * hwhm;
    let n = ((hi - lo) / (hwhm / POINTS_PER_HWHM)).ceil().max(1.0) as usize;
    let step = (hi - lo) / n as f64;
    let energies: Vec<f64> = (0..=n).map(|i| lo + step * i as f64).collect();
    let ln2 = std::f64::consts::LN_2;
    let intensities = energies
        .iter()
        .map(|&e| sticks.iter().map(|&(ei, a)| a * (-ln2 * ((e - ei) / hwhm).powi(2)).exp()).sum())
        .collect();
    Ok(Spectrum { sticks, energies, intensities, hwhm })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_stick_peaks_at_its_height() {
        let s = broaden(&[(500.0, 3.0)], 1.0).unwrap();
        let (i, &m) = s.intensities.iter().enumerate().max_by(|a, b| a.1.total_cmp(b.1)).unwrap();
        assert!((s.energies[i] - 500.0).abs() < 1e-9);
        assert!((m - 3.0).abs() < 1e-12);
        assert!(s.step() <= 0.1 + 1e-12);
        assert!((s.energies[0] - 495.0).abs() < 1e-9);
        assert!((s.energies.last().unwrap() - 505.0).abs() < 1e-9);
    }

    #[test]
    fn half_maximum_at_hwhm() {
        let s = broaden(&[(10.0, 1.0)], 0.4).unwrap();
        let i = s.energies.iter().position(|&e| (e - 10.4).abs() < 1e-9).unwrap();
        assert!((s.intensities[i] - 0.5).abs() < 1e-12);
    }

    #[test]
    fn area_matches_gaussian_integral() {
        let sticks = [(480.0, 1.0), (490.0, 0.3), (505.0, 2.0)];
        let s = broaden(&sticks, 1.0).unwrap();
        let area: f64 = s.intensities.iter().sum::<f64>() * s.step();
        let expected = (std::f64::consts::PI / std::f64::consts::LN_2).sqrt() * 3.3;
        assert!((area / expected - 1.0).abs() < 0.01);
    }

    #[test]
    fn empty_and_invalid() {
        assert!(broaden(&[], 1.0).unwrap().energies.is_empty());
        assert!(broaden(&[(1.0, 1.0)], 0.0).is_err());
    }

    #[test]
    fn maxima_sorted_by_height() {
        let s = broaden(&[(0.0, 1.0), (20.0, 2.0)], 1.0).unwrap();
        let m = s.maxima(0.01);
        assert_eq!(m.len(), 2);
        assert!((m[0].0 - 20.0).abs() < 1e-9);
    }
}
