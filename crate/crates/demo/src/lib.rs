//! WebAssembly bindings for the static page in `www/`.
//!
//! Every export takes and returns JSON strings so the page needs no glue
//! beyond `JSON.parse`. Point sets travel as `[[x, y], ...]`.

use hullsep_core::smo::{smo_separate, SmoOptions};
use hullsep_core::triangle::{solve, TaOptions};
use hullsep_core::{generate_two_balls, Hyperplane, InstanceSpec, PointSet, SolveReport};
use serde::Serialize;
use wasm_bindgen::prelude::*;

/// Iterate pairs beyond this are thinned out of the trace.
const MAX_TRACE: usize = 2000;

#[derive(Serialize)]
struct InstanceJson {
    a: Vec<Vec<f64>>,
    b: Vec<Vec<f64>>,
    shift: f64,
}

#[derive(Serialize)]
struct Plane {
    normal: Vec<f64>,
    offset: f64,
}

impl From<&Hyperplane> for Plane {
    fn from(h: &Hyperplane) -> Self {
        Plane {
            normal: h.normal.clone(),
            offset: h.offset,
        }
    }
}

#[derive(Serialize)]
struct TriangleJson {
    status: String,
    iterations: usize,
    time_s: f64,
    sparsity: usize,
    /// `d(p, p')` at exit.
    delta: f64,
    /// Lower bound from the supporting planes (0 unless separated).
    delta_lower: f64,
    p: Vec<f64>,
    q: Vec<f64>,
    trace: Vec<(Vec<f64>, Vec<f64>)>,
    planes: Option<(Plane, Plane)>,
    bisector: Option<Plane>,
}

#[derive(Serialize)]
struct SmoJson {
    status: String,
    sweeps: usize,
    time_s: f64,
    sparsity: usize,
    distance: f64,
    w: Vec<f64>,
    b: f64,
    /// Indices into A followed by B.
    support: Vec<usize>,
    planes: Option<(Plane, Plane)>,
}

fn parse_points(json: &str, name: &str) -> Result<PointSet, String> {
    let rows: Vec<Vec<f64>> = serde_json::from_str(json).map_err(|e| format!("{name}: {e}"))?;
    PointSet::new(rows).map_err(|e| format!("{name}: {e}"))
}

fn parse_pair(a: &str, b: &str) -> Result<(PointSet, PointSet), String> {
    let a = parse_points(a, "set A")?;
    let b = parse_points(b, "set B")?;
    a.check_same_dim(&b).map_err(|e| e.to_string())?;
    Ok((a, b))
}

fn planes(r: &SolveReport) -> Option<(Plane, Plane)> {
    r.support_planes.as_ref().map(|(h, h2)| (h.into(), h2.into()))
}

fn to_json<T: Serialize>(v: &T) -> Result<String, String> {
    serde_json::to_string(v).map_err(|e| e.to_string())
}

fn thin<T: Clone>(v: Vec<T>, max: usize) -> Vec<T> {
    if v.len() <= max {
        return v;
    }
    let stride = v.len().div_ceil(max);
    let last = v.last().cloned();
    let mut out: Vec<T> = v.into_iter().step_by(stride).collect();
    out.extend(last);
    out
}

/// Two random planar balls, the second translated by `factor` times the
/// larger diameter.
#[wasm_bindgen]
pub fn generate_instance(na: u32, nb: u32, factor: f64, seed: u32) -> Result<String, String> {
    let spec = InstanceSpec::new(2, na as usize, nb as usize, factor, seed as u64);
    let inst = generate_two_balls(&spec).map_err(|e| e.to_string())?;
    to_json(&InstanceJson {
        a: inst.a.to_rows(),
        b: inst.b.to_rows(),
        shift: inst.shift,
    })
}

/// Triangle Algorithm with the iterate trace recorded.
#[wasm_bindgen]
pub fn run_triangle(a: &str, b: &str, epsilon: f64, max_iters: u32) -> Result<String, String> {
    let (a, b) = parse_pair(a, b)?;
    let opts = TaOptions {
        epsilon,
        max_iters: max_iters as usize,
        record_trace: true,
        ..TaOptions::default()
    };
    let out = solve(&a, &b, &opts).map_err(|e| e.to_string())?;
    let r = &out.report;
    to_json(&TriangleJson {
        status: r.status.to_string(),
        iterations: r.iterations,
        time_s: r.wall_seconds(),
        sparsity: r.sparsity,
        delta: r.distance_upper,
        delta_lower: out.reported_distance().unwrap_or(0.0),
        p: out.p.point().to_vec(),
        q: out.q.point().to_vec(),
        trace: thin(out.diagnostics.trace, MAX_TRACE),
        planes: planes(r),
        bisector: out.witness.as_ref().map(|w| (&w.bisector).into()),
    })
}

/// SMO baseline; `c` of zero or below means hard margin.
#[wasm_bindgen]
pub fn run_smo(a: &str, b: &str, c: f64, max_sweeps: u32) -> Result<String, String> {
    let (a, b) = parse_pair(a, b)?;
    let c = if c > 0.0 { c } else { f64::INFINITY };
    let opts = SmoOptions {
        max_sweeps: max_sweeps as usize,
        ..SmoOptions::default()
    };
    let sol = smo_separate(&a, &b, c, &opts).map_err(|e| e.to_string())?;
    let r = &sol.report;
    let top = sol.alphas.iter().copied().fold(0.0, f64::max);
    to_json(&SmoJson {
        status: r.status.to_string(),
        sweeps: r.iterations,
        time_s: r.wall_seconds(),
        sparsity: r.sparsity,
        distance: r.distance_upper,
        w: sol.w.clone(),
        b: sol.b,
        support: (0..sol.alphas.len())
            .filter(|&i| sol.alphas[i] > 1e-8 * top)
            .collect(),
        planes: planes(r),
    })
}
