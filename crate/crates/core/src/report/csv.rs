//! Snapshot CSV.
//!
//! 1D header `step,index,Ez,Hy`; 3D header `step,i,j,k,Ex,Ey,Ez,Hx,Hy,Hz`.
//! One row per cell per snapshot, ordered by step then cell. Values use 17
//! significant digits (`%.17g`), which round-trips every `f64` exactly.

use std::fs::File;
use std::io::{BufWriter, Read, Write};
use std::path::Path;

use crate::engine::SnapshotSeries;
use crate::error::{Error, Result};
use crate::field::{FieldState, Fields1d, Fields3d};
use crate::real::Real;

const HEADER_1D: [&str; 4] = ["step", "index", "Ez", "Hy"];
const HEADER_3D: [&str; 10] = ["step", "i", "j", "k", "Ex", "Ey", "Ez", "Hx", "Hy", "Hz"];

/// C's `%.17g`.
pub fn format_g17(v: f64) -> String {
    const DIGITS: i32 = 17;
    if v.is_nan() {
        return "nan".into();
    }
    if v.is_infinite() {
        return if v > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if v == 0.0 {
        return if v.is_sign_negative() { "-0".into() } else { "0".into() };
    }
    let sci = format!("{:.*e}", (DIGITS - 1) as usize, v);
    let (mantissa, exp) = sci.split_once('e').expect("exponent in {:e} output");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-4..DIGITS).contains(&exp) {
        let decimals = (DIGITS - 1 - exp).max(0) as usize;
        trim_zeros(format!("{v:.decimals$}"))
    } else {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{sign}{:02}", trim_zeros(mantissa.to_string()), exp.abs())
    }
}

fn trim_zeros(s: String) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

pub fn write_snapshot_csv<T: Real, W: Write>(series: &SnapshotSeries<T>, out: W) -> Result<()> {
    let csv_err = |e: ::csv::Error| Error::Parse {
        format: "csv",
        message: e.to_string(),
    };
    let mut w = ::csv::Writer::from_writer(out);
    let Some(first) = series.entries.first() else {
        return Err(Error::InvalidConfig("snapshot series is empty".into()));
    };
    match first {
        FieldState::One(_) => w.write_record(HEADER_1D).map_err(csv_err)?,
        FieldState::Three(_) => w.write_record(HEADER_3D).map_err(csv_err)?,
    }
    let g = |v: T| format_g17(v.widen());
    for state in &series.entries {
        let step = state.step().to_string();
        match state {
            FieldState::One(f) => {
                for i in 0..f.len() {
                    w.write_record([step.clone(), i.to_string(), g(f.ez[i]), g(f.hy[i])])
                        .map_err(csv_err)?;
                }
            }
            FieldState::Three(f) => {
                let [nx, ny, nz] = f.shape();
                for i in 0..nx {
                    for j in 0..ny {
                        for k in 0..nz {
                            let c = f.idx(i, j, k);
                            let mut row = vec![step.clone(), i.to_string(), j.to_string(), k.to_string()];
                            row.extend(f.components().iter().map(|a| g(a[c])));
                            w.write_record(&row).map_err(csv_err)?;
                        }
                    }
                }
            }
        }
    }
    w.flush().map_err(|e| Error::Parse {
        format: "csv",
        message: e.to_string(),
    })
}

pub fn emit_snapshot_csv<T: Real>(series: &SnapshotSeries<T>, path: &Path) -> Result<()> {
    let file = File::create(path).map_err(|e| Error::io(path, e))?;
    let mut buf = BufWriter::new(file);
    write_snapshot_csv(series, &mut buf).map_err(|e| match e {
        Error::Parse { message, .. } => Error::io(path, std::io::Error::other(message)),
        other => other,
    })?;
    buf.flush().map_err(|e| Error::io(path, e))
}

fn parse_err(message: impl Into<String>) -> Error {
    Error::Parse {
        format: "csv",
        message: message.into(),
    }
}

/// Reads snapshot CSV back into `f64` field states, one per distinct step.
pub fn read_snapshot_csv<R: Read>(input: R) -> Result<Vec<FieldState<f64>>> {
    let mut rdr = ::csv::Reader::from_reader(input);
    let header: Vec<String> = rdr
        .headers()
        .map_err(|e| parse_err(e.to_string()))?
        .iter()
        .map(str::to_string)
        .collect();
    let three = if header == HEADER_1D {
        false
    } else if header == HEADER_3D {
        true
    } else {
        return Err(parse_err(format!("unrecognized header {header:?}")));
    };
    let index_cols = if three { 4 } else { 2 };

    // (step, index triple, values)
    let mut rows: Vec<(u64, [usize; 3], Vec<f64>)> = Vec::new();
    for rec in rdr.records() {
        let rec = rec.map_err(|e| parse_err(e.to_string()))?;
        let int = |k: usize| -> Result<u64> {
            rec.get(k)
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| parse_err(format!("bad integer in column {k}")))
        };
        let step = int(0)?;
        let mut idx = [0usize; 3];
        for (slot, col) in idx.iter_mut().zip(1..index_cols) {
            *slot = int(col)? as usize;
        }
        let values = (index_cols..rec.len())
            .map(|k| rec[k].parse::<f64>().map_err(|e| parse_err(e.to_string())))
            .collect::<Result<Vec<_>>>()?;
        rows.push((step, idx, values));
    }

    let mut states = Vec::new();
    let mut start = 0;
    while start < rows.len() {
        let step = rows[start].0;
        let end = start + rows[start..].iter().take_while(|r| r.0 == step).count();
        let block = &rows[start..end];
        states.push(if three {
            let shape = [0, 1, 2].map(|a| block.iter().map(|r| r.1[a]).max().unwrap_or(0) + 1);
            let mut f = Fields3d::zeros(shape)?;
            if block.len() != shape.iter().product::<usize>() {
                return Err(parse_err(format!("step {step} is not a full grid")));
            }
            for (_, [i, j, k], v) in block {
                let c = f.idx(*i, *j, *k);
                f.ex[c] = v[0];
                f.ey[c] = v[1];
                f.ez[c] = v[2];
                f.hx[c] = v[3];
                f.hy[c] = v[4];
                f.hz[c] = v[5];
            }
            f.step = step;
            FieldState::Three(f)
        } else {
            let mut f = Fields1d::zeros(block.len())?;
            for (_, [i, ..], v) in block {
                if *i >= block.len() {
                    return Err(parse_err(format!("index {i} out of range at step {step}")));
                }
                f.ez[*i] = v[0];
                f.hy[*i] = v[1];
            }
            f.step = step;
            FieldState::One(f)
        });
        start = end;
    }
    Ok(states)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::backend::Backend;
    use crate::config::{Extent, SimulationConfig, Units};
    use crate::engine::run;
    use crate::material::make_vacuum_materials;
    use proptest::prelude::*;

    #[test]
    fn g17_matches_printf() {
        // Reference strings from C printf("%.17g").
        let cases = [
            (0.0, "0"),
            (1.0, "1"),
            (-2.5, "-2.5"),
            (0.1, "0.10000000000000001"),
            (1e-5, "1.0000000000000001e-05"),
            (123456789.0, "123456789"),
            (1e17, "1e+17"),
            (1.5e300, "1.5000000000000001e+300"),
            (0.0001, "0.0001"),
            (1.0 / 3.0, "0.33333333333333331"),
        ];
        for (v, s) in cases {
            assert_eq!(format_g17(v), s, "{v:e}");
        }
    }

    proptest! {
        #[test]
        fn g17_round_trips(bits in any::<u64>()) {
            let v = f64::from_bits(bits);
            prop_assume!(v.is_finite());
            let back: f64 = format_g17(v).parse().unwrap();
            prop_assert_eq!(back.to_bits(), v.to_bits());
        }
    }

    #[test]
    fn zero_snapshot_rows() {
        let mut c = SimulationConfig::one_d(3, 1);
        c.source.location = crate::config::GridIndex::One(1);
        c.source.amplitude = 0.0;
        let m = make_vacuum_materials::<f64>(Extent::One(3), Units::Normalized).unwrap();
        let s = run(&c, &m, Backend::Serial).unwrap();
        let mut buf = Vec::new();
        write_snapshot_csv(&s, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text, "step,index,Ez,Hy\n1,0,0,0\n1,1,0,0\n1,2,0,0\n");
    }

    #[test]
    fn round_trip_1d_and_3d() {
        let mut c = SimulationConfig::one_d(40, 30);
        c.courant = 0.7;
        c.snapshot_every = 7;
        let m = make_vacuum_materials::<f64>(c.extent, Units::Normalized).unwrap();
        let s = run(&c, &m, Backend::Serial).unwrap();
        let mut buf = Vec::new();
        write_snapshot_csv(&s, &mut buf).unwrap();
        let back = read_snapshot_csv(buf.as_slice()).unwrap();
        assert_eq!(back.len(), s.entries.len());
        assert!(back.iter().zip(&s.entries).all(|(a, b)| a.bitwise_eq(b) && a.step() == b.step()));

        let mut c = SimulationConfig::three_d([5, 4, 3], 4);
        c.source.location = crate::config::GridIndex::Three([2, 2, 1]);
        let m = make_vacuum_materials::<f64>(c.extent, Units::Normalized).unwrap();
        let s = run(&c, &m, Backend::Serial).unwrap();
        let mut buf = Vec::new();
        write_snapshot_csv(&s, &mut buf).unwrap();
        let text = std::str::from_utf8(&buf).unwrap();
        assert!(text.starts_with("step,i,j,k,Ex,Ey,Ez,Hx,Hy,Hz\n4,0,0,0,"));
        let back = read_snapshot_csv(buf.as_slice()).unwrap();
        assert!(back[0].bitwise_eq(&s.entries[0]));
    }

    #[test]
    fn rejects_foreign_header() {
        assert!(read_snapshot_csv("a,b\n1,2\n".as_bytes()).is_err());
    }

    #[test]
    fn unwritable_path_is_io_error() {
        let c = SimulationConfig::one_d(8, 1);
        let m = make_vacuum_materials::<f64>(c.extent, Units::Normalized).unwrap();
        let s = run(&c, &m, Backend::Serial).unwrap();
        let err = emit_snapshot_csv(&s, Path::new("/nonexistent-dir/x/out.csv")).unwrap_err();
        assert!(matches!(err, Error::Io { .. }));
    }
}
