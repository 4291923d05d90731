use std::fmt::Write as _;

use super::{DimKindSpec, RegionSpec, SpaceSpec};

fn coords(c: &[f64]) -> String {
    c.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")
}

/// Canonical text for a spec: one section per line kind, source order
/// within each section. Floats use the shortest round-tripping form, so
/// parsing the output reproduces an equal `SpaceSpec`.
pub fn serialize(spec: &SpaceSpec) -> String {
    let mut out = String::new();
    // writing into a String cannot fail
    let mut line = |s: String| {
        out.push_str(&s);
        out.push('\n');
    };
    if let Some(q) = &spec.inter_exponent {
        line(format!("space inter {}", q.value));
    }
    for d in &spec.domains {
        let mut s = format!("domain {}", d.name);
        if let Some(p) = d.exponent {
            let _ = write!(s, " p {p}");
        }
        if let Some(w) = d.weight {
            let _ = write!(s, " weight {w}");
        }
        line(s);
    }
    for d in &spec.dims {
        let mut s = format!("dim {}.{} ", d.domain, d.name);
        match d.kind {
            DimKindSpec::Linear { min, max } => {
                let _ = write!(s, "linear {min} {max}");
            }
            DimKindSpec::Circular { period } => {
                let _ = write!(s, "circular {period}");
            }
        }
        if let Some(w) = d.weight {
            let _ = write!(s, " weight {w}");
        }
        line(s);
    }
    for c in &spec.concepts {
        let mut s = format!("concept {} ", c.label);
        match &c.region {
            RegionSpec::Box(iv) => {
                s.push_str("box");
                for (lo, hi) in iv {
                    let _ = write!(s, " {lo}..{hi}");
                }
            }
            RegionSpec::Hull(points) => {
                s.push_str("hull");
                for p in points {
                    let _ = write!(s, " {}", coords(p));
                }
            }
            RegionSpec::Ball { center, radius } => {
                let _ = write!(s, "ball {} {radius}", coords(center));
            }
            RegionSpec::Exemplars => s.push_str("exemplars"),
        }
        if let Some(sigma) = c.sigma {
            let _ = write!(s, " sigma {sigma}");
        }
        line(s);
    }
    for p in &spec.prototypes {
        line(format!("prototype {} {}", p.label, coords(&p.coords)));
    }
    for e in &spec.exemplars {
        line(format!("exemplar {} {}", e.label, coords(&e.coords)));
    }
    for u in &spec.rbf_units {
        line(format!("rbf {} {} {}", u.label, coords(&u.center), u.width));
    }
    for e in &spec.isa {
        line(format!("isa {} {}", e.child, e.parent));
    }
    for t in &spec.tracks {
        line(format!("track {} {} {} {}", t.phase.as_str(), t.object_id, t.t, coords(&t.coords)));
    }
    for f in &spec.fuzzy {
        line(format!("fuzzy {} {} {}", f.predicate, f.individual, f.truth));
    }
    for c in &spec.conjunctions {
        line(format!("conjunction {} {}", c.predicate, c.conjuncts.join(" ")));
    }
    out
}
