//! FCIDUMP reader/writer (1-based indices, 8-fold symmetry, Molpro C2v
//! ORBSYM numbering A1=1, B1=2, B2=3, A2=4).

use std::fmt::Write;

use crate::error::{Error, Result};
use crate::hamiltonian::{Irrep, SpinOrbitalHamiltonian};

fn orbsym_code(i: Irrep) -> usize {
    match i {
        Irrep::A1 => 1,
        Irrep::B1 => 2,
        Irrep::B2 => 3,
        _ => 4,
    }
}

fn orbsym_irrep(code: usize) -> Result<Irrep> {
    match code {
        1 => Ok(Irrep::A1),
        2 => Ok(Irrep::B1),
        3 => Ok(Irrep::B2),
        4 => Ok(Irrep::A2),
        _ => Err(Error::invalid(format!("ORBSYM code {code} is not a C2v irrep"))),
    }
}

pub fn write_fcidump(h: &SpinOrbitalHamiltonian) -> String {
    let n = h.n_spatial;
    let mut out = String::new();
    let orbsym: Vec<String> = h.orbital_irreps.iter().map(|&i| orbsym_code(i).to_string()).collect();
    writeln!(out, " &FCI NORB={n},NELEC={},MS2=0,", h.n_electrons).unwrap();
    writeln!(out, "  ORBSYM={},", orbsym.join(",")).unwrap();
    writeln!(out, "  ISYM=1,").unwrap();
    writeln!(out, " &END").unwrap();
    for p in 0..n {
        for q in 0..=p {
            for r in 0..n {
                for s in 0..=r {
                    if r * (r + 1) / 2 + s > p * (p + 1) / 2 + q {
                        continue;
                    }
                    let v = h.g(p, q, r, s);
                    if v != 0.0 {
                        writeln!(out, "{v:.17e} {} {} {} {}", p + 1, q + 1, r + 1, s + 1).unwrap();
                    }
                }
            }
        }
    }
    for p in 0..n {
        for q in 0..=p {
            let v = h.h(p, q);
            if v != 0.0 {
                writeln!(out, "{v:.17e} {} {} 0 0", p + 1, q + 1).unwrap();
            }
        }
    }
    writeln!(out, "{:.17e} 0 0 0 0", h.e_core).unwrap();
    out
}

fn header_value(header: &str, key: &str) -> Option<String> {
    let tokens: Vec<&str> = header.split(|c: char| c == ',' || c.is_whitespace()).filter(|t| !t.is_empty()).collect();
    let pos = tokens.iter().position(|t| {
        t.split_once('=').is_some_and(|(k, _)| k.eq_ignore_ascii_case(key))
    })?;
    let mut vals: Vec<&str> = Vec::new();
    let first = tokens[pos].split_once('=').unwrap().1;
    if !first.is_empty() {
        vals.push(first);
    }
    for t in &tokens[pos + 1..] {
        if t.contains('=') || t.starts_with('&') || t.starts_with('/') {
            break;
        }
        vals.push(t);
    }
    Some(vals.join(","))
}

pub fn read_fcidump(text: &str) -> Result<SpinOrbitalHamiltonian> {
    let mut lines = text.lines().enumerate();
    let mut header = String::new();
    let mut header_end = None;
    for (i, line) in lines.by_ref() {
        header.push_str(line);
        header.push(' ');
        let t = line.trim().to_ascii_uppercase();
        if t.ends_with("&END") || t == "/" || t.ends_with("/") {
            header_end = Some(i);
            break;
        }
    }
    header_end.ok_or_else(|| Error::parse(1, "FCIDUMP header not terminated by &END"))?;
    if !header.to_ascii_uppercase().contains("&FCI") {
        return Err(Error::parse(1, "missing &FCI namelist"));
    }
    let int_of = |key: &str| -> Result<usize> {
        header_value(&header, key)
            .ok_or_else(|| Error::parse(1, format!("header lacks {key}")))?
            .parse()
            .map_err(|_| Error::parse(1, format!("bad {key} value")))
    };
    let n = int_of("NORB")?;
    let nelec = int_of("NELEC")?;
    let mut ham = SpinOrbitalHamiltonian::zeros(n, nelec, 0.0);
    if let Some(sym) = header_value(&header, "ORBSYM") {
        let codes: Vec<&str> = sym.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
        if codes.len() == n {
            ham.orbital_irreps = codes
                .iter()
                .map(|c| c.parse::<usize>().map_err(|_| Error::parse(1, "bad ORBSYM")).and_then(orbsym_irrep))
                .collect::<Result<_>>()?;
        }
    }
    for (i, line) in lines {
        let lineno = i + 1;
        let t = line.trim();
        if t.is_empty() {
            continue;
        }
        let f: Vec<&str> = t.split_whitespace().collect();
        if f.len() != 5 {
            return Err(Error::parse(lineno, "expected `value i j k l`"));
        }
        let v: f64 = f[0].replace(['D', 'd'], "e").parse().map_err(|_| Error::parse(lineno, "bad value"))?;
        let mut idx = [0usize; 4];
        for k in 0..4 {
            idx[k] = f[k + 1].parse().map_err(|_| Error::parse(lineno, "bad index"))?;
            if idx[k] > n {
                return Err(Error::parse(lineno, format!("index {} exceeds NORB={n}", idx[k])));
            }
        }
        match idx {
            [0, 0, 0, 0] => ham.e_core = v,
            [p, q, 0, 0] if p > 0 && q > 0 => ham.set_h(p - 1, q - 1, v),
            [p, q, r, s] if p > 0 && q > 0 && r > 0 && s > 0 => ham.set_g(p - 1, q - 1, r - 1, s - 1, v),
            _ => return Err(Error::parse(lineno, "unsupported index pattern")),
        }
    }
    Ok(ham)
}
