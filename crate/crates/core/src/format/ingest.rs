use std::io::Read;

use super::ParseError;
use crate::dynamics::Trajectory;
use crate::error::{Error, Result};
use crate::regions::Exemplar;
use crate::space::ConceptualSpace;

fn csv_error(line: u64, message: impl Into<String>) -> Error {
    Error::Parse(ParseError {
        line: line as usize,
        column: 1,
        message: message.into(),
    })
}

/// Reads rows after checking the header starts with `leading` and has one
/// further column per dimension.
fn rows<R: Read>(
    reader: R,
    space: &ConceptualSpace,
    leading: &[&str],
) -> Result<Vec<(u64, csv::StringRecord)>> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_reader(reader);
    let header = rdr.headers().map_err(|e| csv_error(1, e.to_string()))?.clone();
    let expected = leading.len() + space.dims();
    let names_ok = leading
        .iter()
        .zip(header.iter())
        .all(|(want, got)| got.eq_ignore_ascii_case(want));
    if header.len() != expected || !names_ok {
        return Err(csv_error(
            1,
            format!(
                "header must be `{}` followed by {} coordinate columns",
                leading.join(","),
                space.dims()
            ),
        ));
    }
    let mut out = Vec::new();
    for record in rdr.records() {
        let record = record.map_err(|e| {
            let line = e.position().map_or(0, |p| p.line());
            csv_error(line, e.to_string())
        })?;
        let line = record.position().map_or(0, |p| p.line());
        out.push((line, record));
    }
    Ok(out)
}

fn numbers(line: u64, fields: &csv::StringRecord, from: usize) -> Result<Vec<f64>> {
    fields
        .iter()
        .skip(from)
        .map(|f| {
            f.parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| csv_error(line, format!("expected a number, found `{f}`")))
        })
        .collect()
}

/// Exemplars from CSV with header `label,c1,...`.
pub fn read_exemplars_csv<R: Read>(reader: R, space: &ConceptualSpace) -> Result<Vec<Exemplar>> {
    rows(reader, space, &["label"])?
        .into_iter()
        .map(|(line, rec)| {
            let coords = numbers(line, &rec, 1)?;
            let point = space.point(coords).map_err(|e| csv_error(line, e.to_string()))?;
            Ok(Exemplar::new(&rec[0], point))
        })
        .collect()
}

/// Trajectories from CSV with header `object_id,t,c1,...`, grouped by
/// object in order of first appearance.
pub fn read_trajectories_csv<R: Read>(reader: R, space: &ConceptualSpace) -> Result<Vec<Trajectory>> {
    let mut out: Vec<Trajectory> = Vec::new();
    for (line, rec) in rows(reader, space, &["object_id", "t"])? {
        let values = numbers(line, &rec, 1)?;
        let point = space
            .point(values[1..].to_vec())
            .map_err(|e| csv_error(line, e.to_string()))?;
        let id = &rec[0];
        let result = match out.iter_mut().find(|t| t.object_id() == id) {
            Some(traj) => traj.push(space, values[0], point),
            None => Trajectory::new(space, id, vec![(values[0], point)]).map(|t| out.push(t)),
        };
        result.map_err(|e| csv_error(line, e.to_string()))?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::{Dimension, Domain};

    fn plane() -> ConceptualSpace {
        ConceptualSpace::new(vec![Domain::new(
            "p",
            vec![Dimension::linear("x", 0.0, 10.0), Dimension::linear("y", 0.0, 10.0)],
        )])
        .unwrap()
    }

    #[test]
    fn exemplars() {
        let s = plane();
        let ex = read_exemplars_csv("label,x,y\ncat,1,2\ndog, 3 ,4\n".as_bytes(), &s).unwrap();
        assert_eq!(ex.len(), 2);
        assert_eq!(ex[1].label, "dog");
        assert_eq!(ex[1].point.coords(), &[3.0, 4.0]);
        assert!(read_exemplars_csv("cat,1,2\n".as_bytes(), &s).is_err());
        let e = read_exemplars_csv("label,x,y\ncat,1,2\ncat,1,zz\n".as_bytes(), &s).unwrap_err();
        assert!(matches!(e, Error::Parse(ParseError { line: 3, .. })), "{e:?}");
    }

    #[test]
    fn trajectories() {
        let s = plane();
        let t = read_trajectories_csv("object_id,t,x,y\na,0,1,1\nb,0,5,5\na,1,2,2\n".as_bytes(), &s).unwrap();
        assert_eq!(t.len(), 2);
        assert_eq!(t[0].len(), 2);
        assert!(read_trajectories_csv("object_id,t,x,y\na,1,1,1\na,0,2,2\n".as_bytes(), &s).is_err());
    }
}
