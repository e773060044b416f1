//! Truncated Auslander-Reiten quivers of the stable categories, shape only.

use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{MfError, Result};
use crate::ring::{Ctx, Family};

use super::build_catalog;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum QuiverShape {
    #[serde(rename = "A-odd")]
    AOdd,
    #[serde(rename = "D-odd")]
    DOdd,
    #[serde(rename = "A-even")]
    AEven,
    #[serde(rename = "D-even")]
    DEven,
}

impl fmt::Display for QuiverShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            QuiverShape::AOdd => "A-odd",
            QuiverShape::DOdd => "D-odd",
            QuiverShape::AEven => "A-even",
            QuiverShape::DEven => "D-even",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuiverDesc {
    pub shape: QuiverShape,
    pub vertices: Vec<String>,
    pub arrows: Vec<(String, String)>,
    /// Translate ties; `(v, v)` is a loop.
    pub dotted: Vec<(String, String)>,
    pub bound: u32,
}

impl QuiverDesc {
    pub fn to_dot(&self) -> String {
        let mut out = format!("digraph \"{}\" {{\n", self.shape);
        for v in &self.vertices {
            out.push_str(&format!("  \"{v}\";\n"));
        }
        for (a, b) in &self.arrows {
            out.push_str(&format!("  \"{a}\" -> \"{b}\";\n"));
        }
        for (a, b) in &self.dotted {
            out.push_str(&format!("  \"{a}\" -> \"{b}\" [style=dotted];\n"));
        }
        out.push_str("}\n");
        out
    }

    /// `{shape, bound, vertices, arrows: {v: [successors]}, dotted: [[a, b]]}`.
    pub fn to_adjacency_json(&self) -> Value {
        let adj: serde_json::Map<String, Value> = self
            .vertices
            .iter()
            .map(|v| {
                let succ: Vec<&str> = self.arrows.iter().filter(|(a, _)| a == v).map(|(_, b)| b.as_str()).collect();
                (v.clone(), json!(succ))
            })
            .collect();
        json!({
            "shape": self.shape.to_string(),
            "bound": self.bound,
            "vertices": self.vertices,
            "arrows": adj,
            "dotted": self.dotted,
        })
    }
}

fn chain(vs: &[String], arrows: &mut Vec<(String, String)>, dotted: &mut Vec<(String, String)>) {
    for w in vs.windows(2) {
        arrows.push((w[0].clone(), w[1].clone()));
        arrows.push((w[1].clone(), w[0].clone()));
    }
    dotted.extend(vs.iter().map(|v| (v.clone(), v.clone())));
}

pub fn ar_quiver(ctx: &Ctx, n_max: u32) -> Result<QuiverDesc> {
    if n_max < 2 {
        return Err(MfError::NMax { min: 2, got: n_max as usize });
    }
    let cat = build_catalog(ctx, n_max)?;
    let d = ctx.dim();
    let lifts = ((d - 1) / 2) as usize;
    let wrap = |l: String| format!("{}{l}{}", "F(".repeat(lifts), ")".repeat(lifts));
    let family = |prefix: &'static str| (1..=n_max).map(move |n| format!("{prefix}:{n}"));
    let mut arrows = Vec::new();
    let mut dotted = Vec::new();
    let odd = d % 2 == 1;
    let (shape, vertices) = match (ctx.family(), odd) {
        (Family::A, true) => {
            let vs: Vec<String> = family("phi").map(wrap).collect();
            chain(&vs, &mut arrows, &mut dotted);
            (QuiverShape::AOdd, vs)
        }
        (Family::D, false) => {
            let mut vs = vec![wrap("beta+".into())];
            for n in 1..=n_max {
                vs.push(wrap(format!("phi+:{n}")));
                vs.push(wrap(format!("psi+:{n}")));
            }
            chain(&vs, &mut arrows, &mut dotted);
            (QuiverShape::DEven, vs)
        }
        (Family::A, false) => {
            let left: Vec<String> = family("phi-").map(wrap).rev().collect();
            let right: Vec<String> = family("phi+").map(wrap).collect();
            chain(&left, &mut arrows, &mut dotted);
            chain(&right, &mut arrows, &mut dotted);
            (QuiverShape::AEven, left.into_iter().chain(right).collect())
        }
        (Family::D, true) => {
            let mut top = vec![wrap("R/(x0^2)".into())];
            let mut bottom = vec![wrap("R/(x1)".into())];
            for n in 1..=n_max {
                top.extend([wrap(format!("phi+:{n}")), wrap(format!("psi+:{n}"))]);
                bottom.extend([wrap(format!("phi-:{n}")), wrap(format!("psi-:{n}"))]);
            }
            for j in 0..top.len() {
                if j + 1 < top.len() {
                    arrows.push((top[j].clone(), top[j + 1].clone()));
                    arrows.push((bottom[j].clone(), bottom[j + 1].clone()));
                }
                if j > 0 {
                    arrows.push((top[j].clone(), bottom[j - 1].clone()));
                    arrows.push((bottom[j].clone(), top[j - 1].clone()));
                }
                dotted.push((top[j].clone(), bottom[j].clone()));
            }
            (QuiverShape::DOdd, top.into_iter().chain(bottom).collect())
        }
    };
    if let Some(v) = vertices.iter().find(|v| cat.entry(v).is_none()) {
        return Err(MfError::UnknownModule(v.clone()));
    }
    Ok(QuiverDesc { shape, vertices, arrows, dotted, bound: n_max })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{make_ring, Form};

    #[test]
    fn shapes() {
        let a1 = ar_quiver(&make_ring(Family::A, 1, Form::X).unwrap(), 3).unwrap();
        assert_eq!(a1.shape, QuiverShape::AOdd);
        assert_eq!(a1.vertices.len(), 3);
        assert_eq!(a1.dotted.len(), 3);
        assert_eq!(a1.arrows.len(), 4);
        let d3 = ar_quiver(&make_ring(Family::D, 3, Form::X).unwrap(), 2).unwrap();
        assert_eq!(d3.shape, QuiverShape::DOdd);
        assert!(d3.vertices.iter().all(|v| v.starts_with("F(")));
        let d2 = ar_quiver(&make_ring(Family::D, 2, Form::X).unwrap(), 2).unwrap();
        assert_eq!(d2.shape, QuiverShape::DEven);
        assert!(d2.to_dot().contains("[style=dotted]"));
        assert!(ar_quiver(&make_ring(Family::A, 2, Form::X).unwrap(), 1).is_err());
    }
}
