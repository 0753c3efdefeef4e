//! JSON values, DOT graphs and report text for command output.

use std::fmt::Write;

use serde_json::{json, Value};

use crate::dimension::{DimensionReport, GDimReport, Upper};
use crate::gorenstein::CompleteResolution;
use crate::linalg::Matrix;
use crate::modcat::{Module, Morphism, Sequence, ShortExactSeq};
use crate::resolve::{AugmentedResolution, Construction};

pub fn matrix(m: &Matrix) -> Value {
    json!(m.to_rows())
}

pub fn morphism(f: &Morphism) -> Value {
    json!({
        "source_dim": f.source().dim(),
        "target_dim": f.target().dim(),
        "matrix": matrix(f.matrix()),
    })
}

pub fn module(m: &Module) -> Value {
    json!({
        "dim": m.dim(),
        "action": m.actions().iter().map(matrix).collect::<Vec<_>>(),
    })
}

pub fn sequence(s: &Sequence) -> Value {
    json!({
        "dims": s.objects().iter().map(Module::dim).collect::<Vec<_>>(),
        "maps": s.maps().iter().map(|f| matrix(f.matrix())).collect::<Vec<_>>(),
        "exact": s.is_exact().is_ok(),
    })
}

pub fn ses(s: &ShortExactSeq) -> Value {
    sequence(&s.as_sequence())
}

pub fn resolution(r: &AugmentedResolution) -> Value {
    json!({
        "direction": r.direction(),
        "target_dim": r.target().dim(),
        "terms": r.terms().iter().map(Module::dim).collect::<Vec<_>>(),
        "truncated": r.is_truncated(),
        "flags": r.flags(),
        "maps": r.maps().iter().map(|f| matrix(f.matrix())).collect::<Vec<_>>(),
    })
}

pub fn construction(c: &Construction) -> Value {
    json!({
        "output": resolution(&c.output),
        "predicted": c.predicted,
        "bridge": c.bridge.as_ref().map(ses),
        "shapes": status(c.check_shapes()),
        "predictions": status(c.check_predictions()),
    })
}

pub fn complete(w: &CompleteResolution) -> Value {
    json!({
        "window": sequence(w.window()),
        "center": w.center(),
        "pivot_dim": w.pivot().dim(),
        "depth": w.depth(),
        "bounded": w.is_bounded(),
    })
}

pub fn status(r: crate::Result<()>) -> Value {
    match r {
        Ok(()) => json!("ok"),
        Err(e) => json!(e.to_string()),
    }
}

fn upper_text(u: &Upper) -> String {
    match u {
        Upper::Finite { value, .. } => value.to_string(),
        Upper::Infinite => "infinite".into(),
        Upper::Obstructed { step } => format!("unknown (approximation not surjective at step {step})"),
        Upper::UnknownBeyond(n) => format!("unknown beyond {n}"),
    }
}

pub fn upper(u: &Upper) -> Value {
    match u {
        Upper::Finite { value, witness } => json!({"value": value, "witness": resolution(witness)}),
        other => json!({ "value": Value::Null, "reason": upper_text(other) }),
    }
}

pub fn dimension_report(r: &DimensionReport) -> Value {
    json!({
        "module_dim": r.module.dim(),
        "subcategory": r.subcategory,
        "bound": r.bound,
        "lower": r.lower.map(|l| json!({"value": l.value, "ext": l.witness})),
        "upper": upper(&r.upper),
        "gap": r.has_gap(),
    })
}

pub fn gdim_report(r: &GDimReport) -> Value {
    json!({
        "module_dim": r.module.dim(),
        "bound": r.bound,
        "self_orthogonal": r.orthogonality.is_certified(),
        "finiteness_asserted": r.finiteness_asserted,
        "ext_sup": r.ext_sup,
        "left_witness": r.left_witness.as_ref().map(resolution),
        "right_witness": r.right_witness.as_ref().map(resolution),
        "gdim": r.gdim,
        "disagreement": r.disagreement,
    })
}

/// The text block of the `report` command.
pub fn report_text(
    module: &str,
    subcategory: &str,
    dim: &DimensionReport,
    codim: &DimensionReport,
    gdim: Option<&GDimReport>,
) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "module: {module} (dim {})", dim.module.dim());
    let _ = writeln!(s, "subcategory: {subcategory}");
    let _ = writeln!(s, "bound: {}", dim.bound);
    for (title, r) in [("dimension", dim), ("codimension", codim)] {
        let _ = writeln!(s, "{title}");
        match r.lower {
            Some(l) => match l.witness {
                Some((deg, d)) => {
                    let _ = writeln!(s, "  lower: {} (Ext^{deg} has dim {d})", l.value);
                }
                None => {
                    let _ = writeln!(s, "  lower: {}", l.value);
                }
            },
            None => {
                let _ = writeln!(s, "  lower: none (not self-orthogonal)");
            }
        }
        let _ = writeln!(s, "  upper: {}", upper_text(&r.upper));
        if let Upper::Finite { witness, .. } = &r.upper {
            let dims: Vec<String> = witness.terms().iter().map(|t| t.dim().to_string()).collect();
            let _ = writeln!(s, "  witness terms: {}", dims.join(" "));
        }
    }
    if let Some(g) = gdim {
        let _ = writeln!(s, "gorenstein dimension");
        let show = |v: Option<usize>| v.map_or("none".to_string(), |v| v.to_string());
        let _ = writeln!(s, "  ext sup: {}", g.ext_sup);
        let _ = writeln!(s, "  left witness: {}", show(g.left_value()));
        let _ = writeln!(s, "  right witness: {}", show(g.right_value()));
        match (&g.gdim, &g.disagreement) {
            (Some(v), _) => {
                let _ = writeln!(s, "  gdim: {v}");
            }
            (None, Some(d)) => {
                let _ = writeln!(s, "  gdim: unknown ({d})");
            }
            (None, None) => {
                let _ = writeln!(s, "  gdim: unknown");
            }
        }
    }
    s
}

/// One row per sequence; nodes carry dimensions and exactness, edges
/// carry ranks.
pub fn dot(title: &str, rows: &[(String, Sequence)]) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "digraph \"{title}\" {{");
    let _ = writeln!(s, "  node [shape=box];");
    for (r, (name, seq)) in rows.iter().enumerate() {
        let objs = seq.objects();
        let _ = writeln!(s, "  subgraph cluster_{r} {{");
        let _ = writeln!(s, "    label=\"{name}\";");
        for (i, o) in objs.iter().enumerate() {
            let mark = if i == 0 || i + 1 == objs.len() {
                ""
            } else if seq.is_exact_at(&[i]).is_ok() {
                "\\nexact"
            } else {
                "\\nnot exact"
            };
            let _ = writeln!(s, "    r{r}_{i} [label=\"dim {}{mark}\"];", o.dim());
        }
        for (i, f) in seq.maps().iter().enumerate() {
            let _ = writeln!(s, "    r{r}_{i} -> r{r}_{} [label=\"rank {}\"];", i + 1, f.rank());
        }
        let _ = writeln!(s, "  }}");
    }
    s.push_str("}\n");
    s
}
