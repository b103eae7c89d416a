//! File formats: instance JSON, mechanism JSON, curve CSV/JSON, SVG plots.
//!
//! Everything machine-readable uses exact rational strings (`"p"` or
//! `"p/q"`) and round-trips losslessly.  The only floating point lives in
//! the SVG renderer, which is a pure presentation layer over the exact
//! curve data (decimal rendering at 12 significant digits).

use std::fs;
use std::path::Path;

use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::mechanisms::RandomizedMechanism;
use crate::model::{
    validate_instance, Instance, InstanceSpec, Mechanism, ObjectivePoint, Rat,
};
use crate::rational::format_rat;
use crate::Result;

// ---------------------------------------------------------------------------
// Instances
// ---------------------------------------------------------------------------

/// Parses and validates an instance from its JSON text.
pub fn read_instance_str(text: &str) -> Result<Instance> {
    let spec: InstanceSpec = serde_json::from_str(text)?;
    validate_instance(&spec)
}

/// Pretty-printed canonical JSON for an instance.
pub fn instance_json(inst: &Instance) -> String {
    serde_json::to_string_pretty(&inst.to_spec()).expect("instance spec serializes")
}

// ---------------------------------------------------------------------------
// Mechanisms
// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct MechanismJson {
    shape: Vec<usize>,
    winners: Vec<u8>,
    payments: Vec<String>,
    welfare: String,
    revenue: String,
}

fn mechanism_value(m: &Mechanism) -> MechanismJson {
    MechanismJson {
        shape: m.allocation.shape().to_vec(),
        winners: m.allocation.winners().to_vec(),
        payments: m.payments.iter().map(format_rat).collect(),
        welfare: format_rat(&m.objectives.welfare),
        revenue: format_rat(&m.objectives.revenue),
    }
}

/// JSON for one deterministic mechanism: row-major winner table, per-tuple
/// threshold payments, and the exact objective values.
pub fn mechanism_json(m: &Mechanism) -> String {
    serde_json::to_string_pretty(&mechanism_value(m)).expect("mechanism serializes")
}

#[derive(Serialize)]
struct MixtureComponentJson {
    weight: String,
    #[serde(flatten)]
    mechanism: MechanismJson,
}

#[derive(Serialize)]
struct MixtureJson {
    kind: &'static str,
    components: Vec<MixtureComponentJson>,
    welfare: String,
    revenue: String,
}

/// JSON for a convex combination of deterministic mechanisms.
pub fn mixture_json(m: &RandomizedMechanism) -> String {
    let obj = m.objectives();
    let doc = MixtureJson {
        kind: "mixture",
        components: m
            .components
            .iter()
            .map(|(mech, w)| MixtureComponentJson {
                weight: format_rat(w),
                mechanism: mechanism_value(mech),
            })
            .collect(),
        welfare: format_rat(&obj.welfare),
        revenue: format_rat(&obj.revenue),
    };
    serde_json::to_string_pretty(&doc).expect("mixture serializes")
}

// ---------------------------------------------------------------------------
// Curves
// ---------------------------------------------------------------------------

/// One row of a curve output.
#[derive(Debug, Clone)]
pub struct CurveRow {
    pub welfare: Rat,
    pub revenue: Rat,
    pub mechanism_id: String,
}

/// A sorted list of objective points with stable mechanism ids.
#[derive(Debug, Clone, Default)]
pub struct Curve {
    /// Sorted by welfare ascending, then revenue descending.
    pub rows: Vec<CurveRow>,
    /// The mechanisms behind the ids, where available.
    pub mechanisms: Vec<(String, Mechanism)>,
}

/// Sorts the entries (welfare ascending, then revenue descending) and
/// assigns ids `m0, m1, …` in row order.
pub fn build_curve(entries: Vec<(ObjectivePoint, Option<Mechanism>)>) -> Curve {
    let mut entries = entries;
    entries.sort_by(|a, b| {
        a.0.welfare
            .cmp(&b.0.welfare)
            .then_with(|| b.0.revenue.cmp(&a.0.revenue))
    });
    let mut curve = Curve::default();
    for (i, (point, mech)) in entries.into_iter().enumerate() {
        let id = format!("m{i}");
        curve.rows.push(CurveRow {
            welfare: point.welfare,
            revenue: point.revenue,
            mechanism_id: id.clone(),
        });
        if let Some(m) = mech {
            curve.mechanisms.push((id, m));
        }
    }
    curve
}

/// CSV with header `welfare,revenue,mechanism_id`, rationals as `p/q`.
pub fn curve_csv(curve: &Curve) -> String {
    let mut s = String::from("welfare,revenue,mechanism_id\n");
    for row in &curve.rows {
        s.push_str(&format!(
            "{},{},{}\n",
            format_rat(&row.welfare),
            format_rat(&row.revenue),
            row.mechanism_id
        ));
    }
    s
}

#[derive(Serialize)]
struct CurveRowJson {
    welfare: String,
    revenue: String,
    mechanism_id: String,
}

/// The same rows as [`curve_csv`], as a JSON array.
pub fn curve_json(curve: &Curve) -> String {
    let rows: Vec<CurveRowJson> = curve
        .rows
        .iter()
        .map(|r| CurveRowJson {
            welfare: format_rat(&r.welfare),
            revenue: format_rat(&r.revenue),
            mechanism_id: r.mechanism_id.clone(),
        })
        .collect();
    serde_json::to_string_pretty(&rows).expect("curve serializes")
}

/// JSON array of full mechanism objects (enumeration output).
pub fn mechanism_list_json(mechanisms: &[Mechanism]) -> String {
    let items: Vec<MechanismJson> = mechanisms.iter().map(mechanism_value).collect();
    serde_json::to_string_pretty(&items).expect("mechanism list serializes")
}

/// Writes `<id>.json` per mechanism into `dir` (created if missing).
pub fn emit_mechanisms(dir: &Path, mechanisms: &[(String, Mechanism)]) -> Result<()> {
    fs::create_dir_all(dir)?;
    for (id, mech) in mechanisms {
        fs::write(dir.join(format!("{id}.json")), mechanism_json(mech))?;
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// SVG rendering
// ---------------------------------------------------------------------------

const SVG_W: f64 = 640.0;
const SVG_H: f64 = 480.0;
const MARGIN_L: f64 = 70.0;
const MARGIN_R: f64 = 20.0;
const MARGIN_T: f64 = 20.0;
const MARGIN_B: f64 = 50.0;

/// Decimal with at most 12 significant digits, trailing zeros trimmed.
fn fmt_sig(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return "0".into();
    }
    let exp = x.abs().log10().floor() as i32;
    let decimals = (11 - exp).max(0) as usize;
    let s = format!("{x:.decimals$}");
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

fn rat_f64(x: &Rat) -> f64 {
    x.to_f64().unwrap_or(0.0)
}

/// Upper concave envelope of the rows (assumed sorted welfare ascending,
/// revenue descending within ties), computed exactly before rendering.
fn upper_hull(rows: &[CurveRow]) -> Vec<(Rat, Rat)> {
    // One candidate per distinct welfare: its highest revenue.
    let mut pts: Vec<(Rat, Rat)> = Vec::new();
    for r in rows {
        match pts.last() {
            Some((w, _)) if *w == r.welfare => {}
            _ => pts.push((r.welfare.clone(), r.revenue.clone())),
        }
    }
    let mut hull: Vec<(Rat, Rat)> = Vec::new();
    for p in pts {
        while hull.len() >= 2 {
            let o = &hull[hull.len() - 2];
            let a = &hull[hull.len() - 1];
            // Pop while o→a→p does not turn strictly downward-right
            // (cross ≥ 0 means a is on or below the chord o→p).
            let cross = (&a.0 - &o.0) * (&p.1 - &o.1) - (&a.1 - &o.1) * (&p.0 - &o.0);
            if cross >= Rat::zero() {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(p);
    }
    hull
}

/// Static scatter plot of the curve with its upper hull overlaid.
///
/// Presentation only: numbers are decimals at 12 significant digits; the
/// exact data lives in the CSV/JSON outputs.
pub fn curve_svg(curve: &Curve) -> String {
    let rows = &curve.rows;
    let (mut wmin, mut wmax, mut rmin, mut rmax) = (f64::MAX, f64::MIN, f64::MAX, f64::MIN);
    for row in rows {
        let (w, r) = (rat_f64(&row.welfare), rat_f64(&row.revenue));
        wmin = wmin.min(w);
        wmax = wmax.max(w);
        rmin = rmin.min(r);
        rmax = rmax.max(r);
    }
    if rows.is_empty() {
        (wmin, wmax, rmin, rmax) = (0.0, 1.0, 0.0, 1.0);
    }
    if wmax - wmin < 1e-12 {
        wmin -= 0.5;
        wmax += 0.5;
    }
    if rmax - rmin < 1e-12 {
        rmin -= 0.5;
        rmax += 0.5;
    }
    let sx = |w: f64| MARGIN_L + (w - wmin) / (wmax - wmin) * (SVG_W - MARGIN_L - MARGIN_R);
    let sy = |r: f64| SVG_H - MARGIN_B - (r - rmin) / (rmax - rmin) * (SVG_H - MARGIN_T - MARGIN_B);

    let mut s = String::new();
    s.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{SVG_W}\" height=\"{SVG_H}\" \
         viewBox=\"0 0 {SVG_W} {SVG_H}\">\n"
    ));
    s.push_str(&format!(
        "  <rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"white\" stroke=\"black\"/>\n",
        fmt_sig(MARGIN_L),
        fmt_sig(MARGIN_T),
        fmt_sig(SVG_W - MARGIN_L - MARGIN_R),
        fmt_sig(SVG_H - MARGIN_T - MARGIN_B)
    ));
    // Axis extent labels and titles.
    s.push_str(&format!(
        "  <text x=\"{}\" y=\"{}\" font-size=\"12\">{}</text>\n",
        fmt_sig(MARGIN_L),
        fmt_sig(SVG_H - MARGIN_B + 16.0),
        fmt_sig(wmin)
    ));
    s.push_str(&format!(
        "  <text x=\"{}\" y=\"{}\" font-size=\"12\" text-anchor=\"end\">{}</text>\n",
        fmt_sig(SVG_W - MARGIN_R),
        fmt_sig(SVG_H - MARGIN_B + 16.0),
        fmt_sig(wmax)
    ));
    s.push_str(&format!(
        "  <text x=\"{}\" y=\"{}\" font-size=\"12\" text-anchor=\"end\">{}</text>\n",
        fmt_sig(MARGIN_L - 6.0),
        fmt_sig(SVG_H - MARGIN_B),
        fmt_sig(rmin)
    ));
    s.push_str(&format!(
        "  <text x=\"{}\" y=\"{}\" font-size=\"12\" text-anchor=\"end\">{}</text>\n",
        fmt_sig(MARGIN_L - 6.0),
        fmt_sig(MARGIN_T + 12.0),
        fmt_sig(rmax)
    ));
    s.push_str(&format!(
        "  <text x=\"{}\" y=\"{}\" font-size=\"13\" text-anchor=\"middle\">welfare</text>\n",
        fmt_sig((MARGIN_L + SVG_W - MARGIN_R) / 2.0),
        fmt_sig(SVG_H - 12.0)
    ));
    s.push_str(&format!(
        "  <text x=\"16\" y=\"{}\" font-size=\"13\" text-anchor=\"middle\" \
         transform=\"rotate(-90 16 {})\">revenue</text>\n",
        fmt_sig((MARGIN_T + SVG_H - MARGIN_B) / 2.0),
        fmt_sig((MARGIN_T + SVG_H - MARGIN_B) / 2.0)
    ));
    // Hull overlay beneath the points.
    let hull = upper_hull(rows);
    if hull.len() >= 2 {
        let pts: Vec<String> = hull
            .iter()
            .map(|(w, r)| format!("{},{}", fmt_sig(sx(rat_f64(w))), fmt_sig(sy(rat_f64(r)))))
            .collect();
        s.push_str(&format!(
            "  <polyline points=\"{}\" fill=\"none\" stroke=\"#4682b4\" stroke-width=\"1.5\"/>\n",
            pts.join(" ")
        ));
    }
    for row in rows {
        s.push_str(&format!(
            "  <circle cx=\"{}\" cy=\"{}\" r=\"3\" fill=\"#222\"/>\n",
            fmt_sig(sx(rat_f64(&row.welfare))),
            fmt_sig(sy(rat_f64(&row.revenue)))
        ));
    }
    s.push_str("</svg>\n");
    s
}
