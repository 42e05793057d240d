//! CSV and JSON forms of particles and trajectories.
//!
//! Floats are written in shortest round-trip decimal form, so reading a file
//! back reproduces every sample bit for bit. CSV follows RFC 4180 with a
//! header row.

use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::particles::Particles;
use crate::pendulum::SummaryRow;

#[derive(Serialize, Deserialize)]
struct SampleRow {
    index: usize,
    value: f64,
}

/// One `index,value` row per sample.
pub fn write_particles_csv<W: Write>(w: W, p: &Particles) -> Result<()> {
    let mut out = csv::Writer::from_writer(w);
    for (index, &value) in p.samples().iter().enumerate() {
        out.serialize(SampleRow { index, value })?;
    }
    out.flush()?;
    Ok(())
}

/// Reads the `index,value` form. Rows must be numbered `0..N` in order.
pub fn read_particles_csv<R: Read>(r: R) -> Result<Particles> {
    let mut rdr = csv::Reader::from_reader(r);
    let mut samples = Vec::new();
    for (i, row) in rdr.deserialize::<SampleRow>().enumerate() {
        let row = row?;
        if row.index != i {
            return Err(Error::Parse(format!(
                "expected index {i}, found {}",
                row.index
            )));
        }
        samples.push(row.value);
    }
    Particles::from_samples(samples)
}

/// A JSON array of samples. NaN and infinities are not representable and
/// produce an error.
pub fn particles_to_json(p: &Particles) -> Result<String> {
    if !p.is_finite() {
        return Err(Error::Domain(
            "JSON cannot represent non-finite samples".into(),
        ));
    }
    Ok(serde_json::to_string(p)?)
}

pub fn particles_from_json(s: &str) -> Result<Particles> {
    Ok(serde_json::from_str(s)?)
}

/// Columns `t,mean,std,q05,q95`.
pub fn write_summary_csv<W: Write>(w: W, rows: &[SummaryRow]) -> Result<()> {
    let mut out = csv::Writer::from_writer(w);
    for row in rows {
        out.serialize(row)?;
    }
    out.flush()?;
    Ok(())
}

pub fn read_summary_csv<R: Read>(r: R) -> Result<Vec<SummaryRow>> {
    let mut rdr = csv::Reader::from_reader(r);
    rdr.deserialize()
        .map(|row| row.map_err(Error::from))
        .collect()
}

/// Columns `t,value,std`, the linearized view of a trajectory.
pub fn write_linear_csv<W: Write>(w: W, rows: &[SummaryRow]) -> Result<()> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(["t", "value", "std"])?;
    for r in rows {
        out.write_record([r.t.to_string(), r.mean.to_string(), r.std.to_string()])?;
    }
    out.flush()?;
    Ok(())
}

/// Per-sample trajectories, columns `t,s1,…,sN`.
pub fn write_wide_csv<W: Write>(w: W, rows: &[(f64, &[f64])]) -> Result<()> {
    let mut out = csv::Writer::from_writer(w);
    let n = rows.first().map_or(0, |r| r.1.len());
    let header = std::iter::once("t".to_string()).chain((1..=n).map(|i| format!("s{i}")));
    out.write_record(header)?;
    for (t, xs) in rows {
        if xs.len() != n {
            return Err(Error::CountMismatch {
                left: n,
                right: xs.len(),
            });
        }
        out.write_record(std::iter::once(t.to_string()).chain(xs.iter().map(f64::to_string)))?;
    }
    out.flush()?;
    Ok(())
}

/// Inverse of [`write_wide_csv`].
pub fn read_wide_csv<R: Read>(r: R) -> Result<Vec<(f64, Vec<f64>)>> {
    let mut rdr = csv::Reader::from_reader(r);
    let parse = |s: &str| {
        s.parse::<f64>()
            .map_err(|e| Error::Parse(format!("'{s}': {e}")))
    };
    let mut rows = Vec::new();
    for rec in rdr.records() {
        let rec = rec?;
        let mut it = rec.iter();
        let t = parse(it.next().ok_or_else(|| Error::Parse("empty row".into()))?)?;
        rows.push((t, it.map(parse).collect::<Result<_>>()?));
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn awkward() -> Particles {
        Particles::from_samples(vec![
            0.1 + 0.2,
            -1e-300,
            1.0 / 3.0,
            6.02214076e23,
            -0.0,
            5e-324,
        ])
        .unwrap()
    }

    #[test]
    fn csv_round_trip_is_bitwise() {
        let p = awkward();
        let mut buf = Vec::new();
        write_particles_csv(&mut buf, &p).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with("index,value\n0,0.30000000000000004\n"));
        let q = read_particles_csv(buf.as_slice()).unwrap();
        for (a, b) in p.samples().iter().zip(q.samples()) {
            assert_eq!(a.to_bits(), b.to_bits());
        }
    }

    #[test]
    fn csv_keeps_non_finite() {
        let p = Particles::from_samples(vec![f64::NAN, f64::INFINITY, 1.0]).unwrap();
        let mut buf = Vec::new();
        write_particles_csv(&mut buf, &p).unwrap();
        let q = read_particles_csv(buf.as_slice()).unwrap();
        assert!(q.samples()[0].is_nan());
        assert_eq!(q.samples()[1], f64::INFINITY);
        assert!(particles_to_json(&p).is_err());
    }

    #[test]
    fn csv_rejects_bad_input() {
        assert!(read_particles_csv("index,value\n0,1.0\n2,3.0\n".as_bytes()).is_err());
        assert!(read_particles_csv("index,value\n0,abc\n".as_bytes()).is_err());
        assert!(matches!(
            read_particles_csv("index,value\n".as_bytes()),
            Err(Error::Empty)
        ));
    }

    #[test]
    fn json_round_trip() {
        let p = awkward();
        let s = particles_to_json(&p).unwrap();
        assert!(s.starts_with('['));
        let q = particles_from_json(&s).unwrap();
        assert_eq!(p.samples().len(), q.samples().len());
        for (a, b) in p.samples().iter().zip(q.samples()) {
            assert_eq!(a.to_bits(), b.to_bits());
        }
        assert!(particles_from_json("[]").is_err());
    }

    #[test]
    fn summary_and_wide_round_trip() {
        let rows = vec![
            SummaryRow {
                t: 0.0,
                mean: 1.0471975511965976,
                std: 0.02,
                q05: 1.0,
                q95: 1.1,
            },
            SummaryRow {
                t: 0.001,
                mean: 1.04,
                std: 0.0201,
                q05: 0.99,
                q95: 1.09,
            },
        ];
        let mut buf = Vec::new();
        write_summary_csv(&mut buf, &rows).unwrap();
        assert!(buf.starts_with(b"t,mean,std,q05,q95\n"));
        assert_eq!(read_summary_csv(buf.as_slice()).unwrap(), rows);

        let a = [1.0, 2.0, 0.1 + 0.2];
        let b = [4.0, 5.0, 6.0];
        let wide = [(0.0, &a[..]), (0.5, &b[..])];
        let mut buf = Vec::new();
        write_wide_csv(&mut buf, &wide).unwrap();
        assert!(buf.starts_with(b"t,s1,s2,s3\n"));
        let back = read_wide_csv(buf.as_slice()).unwrap();
        assert_eq!(back[0].1, a.to_vec());
        assert_eq!(back[1].0, 0.5);

        let mut buf = Vec::new();
        write_linear_csv(&mut buf, &rows).unwrap();
        assert!(String::from_utf8(buf)
            .unwrap()
            .starts_with("t,value,std\n0,1.0471975511965976,0.02\n"));
    }
}
