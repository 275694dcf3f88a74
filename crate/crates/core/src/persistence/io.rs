use std::fmt::Write as _;

use serde::Serialize;

use super::{FiltrationKind, PersistenceDiagram, PersistenceError, PersistencePair};

/// Provenance recorded in the JSON diagram form.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct DiagramSource {
    pub track_id: String,
    pub representation: String,
}

/// `dim,birth,death` rows, `inf` for essential deaths. Values use Rust's
/// shortest round-trip float formatting, so output is byte-stable.
pub fn diagrams_to_csv(diagrams: &[PersistenceDiagram]) -> String {
    let mut out = String::from("dim,birth,death\n");
    for d in diagrams {
        for p in &d.pairs {
            if p.is_essential() {
                let _ = writeln!(out, "{},{},inf", d.dimension, p.birth);
            } else {
                let _ = writeln!(out, "{},{},{}", d.dimension, p.birth, p.death);
            }
        }
    }
    out
}

/// Reads the CSV form back, one diagram per dimension present (ascending).
pub fn diagrams_from_csv(text: &str, kind: FiltrationKind) -> Result<Vec<PersistenceDiagram>, PersistenceError> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim_end_matches('\r')));
    match lines.next() {
        Some((_, h)) if h.trim() == "dim,birth,death" => {}
        _ => return Err(PersistenceError::Parse { line: 1, message: "expected header `dim,birth,death`".into() }),
    }
    let mut diagrams: Vec<PersistenceDiagram> = Vec::new();
    for (line, row) in lines {
        if row.trim().is_empty() {
            continue;
        }
        let err = |message: String| PersistenceError::Parse { line, message };
        let f: Vec<&str> = row.split(',').map(str::trim).collect();
        if f.len() != 3 {
            return Err(err(format!("expected 3 fields, found {}", f.len())));
        }
        let dim: usize = f[0].parse().map_err(|_| err(format!("bad dimension `{}`", f[0])))?;
        let birth: f64 = f[1].parse().map_err(|_| err(format!("bad birth `{}`", f[1])))?;
        let death: f64 = match f[2] {
            "inf" => f64::INFINITY,
            s => s.parse().map_err(|_| err(format!("bad death `{s}`")))?,
        };
        if !birth.is_finite() || death < birth {
            return Err(err(format!("invalid pair ({birth}, {death})")));
        }
        match diagrams.iter_mut().find(|d| d.dimension == dim) {
            Some(d) => d.pairs.push(PersistencePair::new(birth, death)),
            None => diagrams.push(PersistenceDiagram::new(dim, kind, vec![PersistencePair::new(birth, death)])),
        }
    }
    diagrams.sort_by_key(|d| d.dimension);
    Ok(diagrams)
}

#[derive(Serialize)]
struct JsonDiagram {
    dimension: usize,
    pairs: Vec<(f64, Option<f64>)>,
}

#[derive(Serialize)]
struct JsonDiagrams<'a> {
    filtration_kind: Option<FiltrationKind>,
    source: &'a DiagramSource,
    diagrams: Vec<JsonDiagram>,
}

/// JSON form with filtration kind and source metadata; essential deaths are
/// `null`.
pub fn diagrams_to_json(diagrams: &[PersistenceDiagram], source: &DiagramSource) -> String {
    let doc = JsonDiagrams {
        filtration_kind: diagrams.first().map(|d| d.kind),
        source,
        diagrams: diagrams
            .iter()
            .map(|d| JsonDiagram {
                dimension: d.dimension,
                pairs: d.pairs.iter().map(|p| (p.birth, (!p.is_essential()).then_some(p.death))).collect(),
            })
            .collect(),
    };
    let mut s = serde_json::to_string_pretty(&doc).expect("diagram JSON is always serializable");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::persistence::PersistencePair as P;

    fn sample() -> Vec<PersistenceDiagram> {
        vec![
            PersistenceDiagram::new(0, FiltrationKind::VietorisRips, vec![P::new(0.0, 0.5), P::essential(0.0)]),
            PersistenceDiagram::new(1, FiltrationKind::VietorisRips, vec![P::new(1.0, std::f64::consts::SQRT_2)]),
        ]
    }

    #[test]
    fn csv_layout() {
        let csv = diagrams_to_csv(&sample());
        assert_eq!(csv, "dim,birth,death\n0,0,0.5\n0,0,inf\n1,1,1.4142135623730951\n");
        assert_eq!(diagrams_from_csv(&csv, FiltrationKind::VietorisRips).unwrap(), sample());
    }

    #[test]
    fn csv_errors() {
        assert!(diagrams_from_csv("a,b\n", FiltrationKind::LowerStar).is_err());
        let e = diagrams_from_csv("dim,birth,death\n0,1,0\n", FiltrationKind::LowerStar).unwrap_err();
        assert!(matches!(e, PersistenceError::Parse { line: 2, .. }));
    }

    #[test]
    fn json_layout() {
        let src = DiagramSource { track_id: "t1".into(), representation: "cloud".into() };
        let json = diagrams_to_json(&sample(), &src);
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(v["filtration_kind"], "vietoris_rips");
        assert_eq!(v["source"]["track_id"], "t1");
        assert_eq!(v["diagrams"][0]["pairs"][1], serde_json::json!([0.0, null]));
        assert_eq!(json, diagrams_to_json(&sample(), &src));
    }
}
