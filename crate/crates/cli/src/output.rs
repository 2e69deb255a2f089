//! CSV serialization. Floats carry 17 significant digits so every value
//! round-trips exactly; zero is written as `0`.

use std::io::{self, Write};

use xxz_core::{Measures, Spectrum};

pub const SWEEP_HEADER: &str = "n,j,delta,t,ln_z,u,gzz,concurrence,linear_entropy,engine";
pub const SPECTRUM_HEADER: &str = "energy,multiplicity,d_energy_d_delta,reversed,momentum";

pub fn num(x: f64) -> String {
    if x == 0.0 {
        "0".into()
    } else {
        format!("{x:.16e}")
    }
}

fn opt_num(x: Option<f64>) -> String {
    x.map(num).unwrap_or_default()
}

pub fn sweep_row(m: &Measures) -> String {
    format!(
        "{},{},{},{},{},{},{},{},{},{}",
        m.n_sites,
        num(m.exchange),
        num(m.delta),
        num(m.temperature),
        opt_num(m.ln_z),
        num(m.internal_energy),
        num(m.gzz),
        num(m.concurrence),
        num(m.linear_entropy),
        m.engine
    )
}

pub fn write_sweep<W: Write>(mut w: W, rows: &[Measures]) -> io::Result<()> {
    writeln!(w, "{SWEEP_HEADER}")?;
    for m in rows {
        writeln!(w, "{}", sweep_row(m))?;
    }
    w.flush()
}

pub fn write_spectrum<W: Write>(mut w: W, s: &Spectrum) -> io::Result<()> {
    writeln!(w, "{SPECTRUM_HEADER}")?;
    for l in s.levels() {
        let (r, k) = l
            .sector
            .map(|s| (s.reversed.to_string(), s.momentum.to_string()))
            .unwrap_or_default();
        writeln!(
            w,
            "{},{},{},{r},{k}",
            num(l.energy),
            l.multiplicity,
            opt_num(l.d_energy_d_delta)
        )?;
    }
    w.flush()
}
