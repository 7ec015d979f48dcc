use std::fmt::Write as _;

use serde::Serialize;

use crate::error::Result;

use super::broaden::Spectrum;
use super::oca::{multiplicity_symbol, AugerSpectrum};
use super::xas::XasSpectrum;

fn to_csv<R: Serialize>(rows: impl IntoIterator<Item = R>) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r)?;
    }
    let bytes = w.into_inner().map_err(|e| e.into_error())?;
    Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
}

#[derive(Serialize)]
struct AugerStickRow<'a> {
    #[serde(rename = "E_kin_eV")]
    e_kin_ev: f64,
    gamma_au: f64,
    gamma_rel: f64,
    multiplicity: String,
    configuration: &'a str,
}

/// Reported channels (Γ_rel at or above the floor), highest energy first.
pub fn auger_sticks_csv(s: &AugerSpectrum) -> Result<String> {
    to_csv(s.channels.iter().filter(|c| c.reported).map(|c| AugerStickRow {
        e_kin_ev: c.e_kin_ev,
        gamma_au: c.gamma_au,
        gamma_rel: c.gamma_rel,
        multiplicity: c.multiplicity_symbol(),
        configuration: &c.configuration,
    }))
}

#[derive(Serialize)]
struct CurveRow {
    #[serde(rename = "E_eV")]
    e_ev: f64,
    intensity: f64,
}

pub fn curve_csv(s: &Spectrum) -> Result<String> {
    to_csv(s.energies.iter().zip(&s.intensities).map(|(&e_ev, &intensity)| CurveRow { e_ev, intensity }))
}

#[derive(Serialize)]
struct XasRow<'a> {
    #[serde(rename = "E_eV")]
    e_ev: f64,
    oscillator_strength: f64,
    irrep: String,
    multiplicity: String,
    configuration: &'a str,
}

pub fn xas_sticks_csv(s: &XasSpectrum) -> Result<String> {
    to_csv(s.transitions.iter().map(|t| XasRow {
        e_ev: t.excitation_ev,
        oscillator_strength: t.oscillator_strength,
        irrep: t.irrep.to_string(),
        multiplicity: multiplicity_symbol(t.multiplicity),
        configuration: &t.configuration,
    }))
}

#[derive(Serialize)]
struct ChannelRow<'a> {
    energy_ev: f64,
    configuration: &'a str,
    multiplicity: String,
    gamma_rel: f64,
    gamma_au: f64,
    irrep: String,
    reported: bool,
}

#[derive(Serialize)]
struct ChannelTable<'a> {
    initial_energy_hartree: f64,
    reporting_floor: f64,
    channels: Vec<ChannelRow<'a>>,
}

/// Every open channel, in the column layout of a channel-analysis table.
pub fn channel_table_json(s: &AugerSpectrum) -> Result<String> {
    let t = ChannelTable {
        initial_energy_hartree: s.initial_energy,
        reporting_floor: s.floor,
        channels: s
            .channels
            .iter()
            .map(|c| ChannelRow {
                energy_ev: c.e_kin_ev,
                configuration: &c.configuration,
                multiplicity: c.multiplicity_symbol(),
                gamma_rel: c.gamma_rel,
                gamma_au: c.gamma_au,
                irrep: c.irrep.to_string(),
                reported: c.reported,
            })
            .collect(),
    };
    Ok(serde_json::to_string_pretty(&t)?)
}

/// Line plot of the broadened curve with sticks scaled to its maximum.
pub fn svg_plot(s: &Spectrum, title: &str, x_label: &str) -> String {
    let (w, h, pad) = (800.0, 400.0, 50.0);
    let mut out = String::new();
    let _ = writeln!(out, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#);
    let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(out, r#"<text x="{}" y="25" text-anchor="middle" font-family="sans-serif" font-size="16">{title}</text>"#, w / 2.0);
    let _ = writeln!(
        out,
        r#"<text x="{}" y="{}" text-anchor="middle" font-family="sans-serif" font-size="13">{x_label}</text>"#,
        w / 2.0,
        h - 10.0
    );
    if s.energies.len() < 2 {
        out.push_str("</svg>\n");
        return out;
    }
    let (x0, x1) = (s.energies[0], s.energies[s.energies.len() - 1]);
    let top = s.intensities.iter().copied().fold(0.0, f64::max).max(f64::MIN_POSITIVE);
    let stick_top = s.sticks.iter().map(|x| x.1).fold(0.0, f64::max).max(f64::MIN_POSITIVE);
    let px = |e: f64| pad + (e - x0) / (x1 - x0) * (w - 2.0 * pad);
    let py = |y: f64| h - pad - y * (h - 2.0 * pad);
    let _ = writeln!(
        out,
        r#"<line x1="{pad}" y1="{0}" x2="{1}" y2="{0}" stroke="black"/>"#,
        h - pad,
        w - pad
    );
    for k in 0..=5 {
        let e = x0 + (x1 - x0) * k as f64 / 5.0;
        let _ = writeln!(
            out,
            r#"<text x="{:.1}" y="{}" text-anchor="middle" font-family="sans-serif" font-size="11">{e:.1}</text>"#,
            px(e),
            h - pad + 16.0
        );
    }
    for &(e, y) in &s.sticks {
        let _ = writeln!(
            out,
            r#"<line x1="{0:.2}" y1="{1:.2}" x2="{0:.2}" y2="{2:.2}" stroke="gray"/>"#,
            px(e),
            py(0.0),
            py(y / stick_top)
        );
    }
    let points: Vec<String> =
        s.energies.iter().zip(&s.intensities).map(|(&e, &y)| format!("{:.2},{:.2}", px(e), py(y / top))).collect();
    let _ = writeln!(out, r#"<polyline fill="none" stroke="navy" stroke-width="1.5" points="{}"/>"#, points.join(" "));
    out.push_str("</svg>\n");
    out
}
