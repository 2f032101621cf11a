//! Plain CSV persistence for point sets: one point per row, comma separated,
//! optional leading header line starting with `#`.

use std::fs;
use std::io::Write;
use std::path::Path;

use crate::error::{HullError, Result};
use crate::hull::PointSet;

pub fn parse_csv(text: &str) -> Result<PointSet> {
    let mut rows: Vec<Vec<f64>> = Vec::new();
    let mut width = None;
    for (idx, line) in text.lines().enumerate() {
        let row = idx + 1;
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        if idx == 0 && line.starts_with('#') {
            continue;
        }
        let mut coords = Vec::new();
        for cell in line.split(',') {
            let cell = cell.trim();
            let value: f64 = cell.parse().map_err(|_| HullError::Parse {
                row,
                message: format!("not a number: {cell:?}"),
            })?;
            if !value.is_finite() {
                return Err(HullError::Parse {
                    row,
                    message: format!("non-finite value: {cell:?}"),
                });
            }
            coords.push(value);
        }
        match width {
            None => width = Some(coords.len()),
            Some(w) if w != coords.len() => {
                return Err(HullError::Parse {
                    row,
                    message: format!("expected {w} columns, found {}", coords.len()),
                })
            }
            _ => {}
        }
        rows.push(coords);
    }
    if rows.is_empty() {
        return Err(HullError::NoPoints);
    }
    PointSet::new(rows)
}

pub fn load_csv(path: impl AsRef<Path>) -> Result<PointSet> {
    parse_csv(&fs::read_to_string(path)?)
}

/// Shortest round-trip formatting, so reloading reproduces every bit.
pub fn write_csv<W: Write>(set: &PointSet, mut out: W) -> Result<()> {
    writeln!(out, "# dim={} n={}", set.dim(), set.len())?;
    for v in set.iter() {
        let line = v.iter().map(|x| format!("{x:?}")).collect::<Vec<_>>().join(",");
        writeln!(out, "{line}")?;
    }
    Ok(())
}

pub fn save_csv(set: &PointSet, path: impl AsRef<Path>) -> Result<()> {
    let file = fs::File::create(path)?;
    let mut buf = std::io::BufWriter::new(file);
    write_csv(set, &mut buf)?;
    buf.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::{generate_two_balls, InstanceSpec};

    #[test]
    fn round_trip_is_exact() {
        let inst = generate_two_balls(&InstanceSpec::new(4, 10, 1, 0.0, 3)).unwrap();
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("a.csv");
        save_csv(&inst.a, &path).unwrap();
        assert_eq!(load_csv(&path).unwrap(), inst.a);
    }

    #[test]
    fn empty_input_has_no_points() {
        assert!(matches!(parse_csv(""), Err(HullError::NoPoints)));
        assert!(matches!(parse_csv("# header only\n"), Err(HullError::NoPoints)));
    }

    #[test]
    fn bad_cell_names_row() {
        let err = parse_csv("1,2\n3,abc\n").unwrap_err();
        assert!(matches!(err, HullError::Parse { row: 2, .. }));
        assert!(err.to_string().contains("row 2"));
    }

    #[test]
    fn ragged_rows_rejected() {
        let err = parse_csv("# x,y\n1,2\n3\n").unwrap_err();
        assert!(matches!(err, HullError::Parse { row: 3, .. }));
    }
}
