use std::fmt::Write as _;

use super::{GazeError, Label, RawSample, ScanPath};

const HEADER: [&str; 4] = ["n", "x", "y", "label"];

/// Parses a track CSV.
///
/// The header row is mandatory and must name the columns `n`, `x`, `y` and
/// `label` (`lab` is accepted too); any further columns are ignored. `x`/`y` are empty (or `NaN`) for
/// lost samples, `label` is `0` fixation, `1` saccade, `2` blink, or empty.
/// Both `\n` and `\r\n` line endings are accepted.
pub fn parse_track(track_id: &str, text: &str) -> Result<ScanPath, GazeError> {
    let mut lines = text.split('\n').enumerate().map(|(i, l)| (i + 1, l.strip_suffix('\r').unwrap_or(l)));

    let (_, header) = lines
        .next()
        .filter(|(_, h)| !h.trim().is_empty())
        .ok_or_else(|| GazeError::Parse { line: 1, message: "missing header row".into() })?;
    let names: Vec<&str> = header.split(',').map(str::trim).collect();
    let mut cols = [0usize; 4];
    for (slot, want) in cols.iter_mut().zip(HEADER) {
        // GazeBase exports call the label column `lab`.
        let alias = if want == "label" { "lab" } else { want };
        *slot = names.iter().position(|n| *n == want).or_else(|| names.iter().position(|n| *n == alias)).ok_or_else(|| GazeError::Parse {
            line: 1,
            message: format!("header lacks column `{want}`"),
        })?;
    }
    let [cn, cx, cy, cl] = cols;

    let mut samples: Vec<RawSample> = Vec::new();
    for (line, row) in lines {
        if row.is_empty() {
            continue;
        }
        let fields: Vec<&str> = row.split(',').map(str::trim).collect();
        if fields.len() != names.len() {
            return Err(GazeError::Parse {
                line,
                message: format!("expected {} fields, found {}", names.len(), fields.len()),
            });
        }
        let err = |message: String| GazeError::Parse { line, message };

        let t: i64 = fields[cn]
            .parse()
            .map_err(|_| err(format!("timestamp `{}` is not an integer", fields[cn])))?;
        let x = parse_coord(fields[cx]).map_err(|_| err(format!("x `{}` is not a number", fields[cx])))?;
        let y = parse_coord(fields[cy]).map_err(|_| err(format!("y `{}` is not a number", fields[cy])))?;
        let pos = match (x, y) {
            (Some(x), Some(y)) => Some([x, y]),
            (None, None) => None,
            _ => return Err(err("x and y must be both present or both missing".into())),
        };
        let label = match fields[cl] {
            "" => Label::Unknown,
            s => s
                .parse::<i64>()
                .map(Label::from_code)
                .map_err(|_| err(format!("label `{s}` is not an integer")))?,
        };
        if let Some(prev) = samples.last() {
            if t <= prev.t {
                return Err(GazeError::NonIncreasingTimestamp { line, t });
            }
        }
        samples.push(RawSample { t, pos, label });
    }

    Ok(ScanPath::new(track_id, samples))
}

fn parse_coord(s: &str) -> Result<Option<f64>, std::num::ParseFloatError> {
    if s.is_empty() {
        return Ok(None);
    }
    let v: f64 = s.parse()?;
    Ok(v.is_finite().then_some(v))
}

/// Serializes a path in the format read by [`parse_track`].
pub fn write_track(path: &ScanPath) -> String {
    let mut out = String::from("n,x,y,label\n");
    for s in &path.samples {
        let _ = write!(out, "{},", s.t);
        if let Some([x, y]) = s.pos {
            let _ = write!(out, "{x},{y},");
        } else {
            out.push_str(",,");
        }
        if let Some(c) = s.label.code() {
            let _ = write!(out, "{c}");
        }
        out.push('\n');
    }
    out
}
