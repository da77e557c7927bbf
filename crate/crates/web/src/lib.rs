//! Browser demo: dual/single-layer functions on H(2,q) as heatmaps, the
//! exhaustive minimum-support search, and the support lower bound per
//! eigenvalue. Every export takes plain numbers and returns a JSON string.

use hamming_eigen::function_space::{parse_rational, BoundBranch};
use hamming_eigen::{
    classify_additive, construct_dual_layer, construct_single_layer, grid_min_support, is_additive, minimum_support,
    spectrum, vorobev_lower_bound, CanonicalForm, CoefficientSet, Error, GraphParams, Rational, SearchConfig,
    VertexFunction,
};
use num_traits::ToPrimitive;
use serde::Serialize;
use wasm_bindgen::prelude::*;

/// Grid points the browser is allowed to enumerate in one call.
pub const BROWSER_GRID_CAP: u64 = 2_000_000;

#[derive(Debug, Serialize)]
pub struct Heatmap {
    pub q: usize,
    /// `cells[row][col]` is `f(col, row)`: first coordinate across, second down.
    pub cells: Vec<Vec<f64>>,
    pub labels: Vec<Vec<String>>,
}

fn heatmap(f: &VertexFunction) -> Heatmap {
    let q = f.params().q();
    let cell = |x: usize, y: usize| f.value(x + q * y);
    Heatmap {
        q,
        cells: (0..q)
            .map(|y| (0..q).map(|x| cell(x, y).to_f64().unwrap_or(f64::NAN)).collect())
            .collect(),
        labels: (0..q)
            .map(|y| (0..q).map(|x| cell(x, y).to_string()).collect())
            .collect(),
    }
}

#[derive(Debug, Serialize)]
pub struct FunctionView {
    pub heatmap: Heatmap,
    pub support: usize,
    pub minimum_support: usize,
    pub spectrum: Vec<i64>,
    /// Index `m` with `Af = λ_m f`, if any.
    pub eigen_index: Option<usize>,
    pub additive: bool,
    pub form: Option<CanonicalForm>,
}

fn describe(f: &VertexFunction) -> Result<FunctionView, Error> {
    let params = *f.params();
    let spectrum = spectrum(&params);
    let eigen_index = spectrum.iter().position(|&l| f.is_eigenfunction(l));
    Ok(FunctionView {
        heatmap: heatmap(f),
        support: f.support_size(),
        minimum_support: minimum_support(&params),
        spectrum,
        eigen_index,
        additive: is_additive(f)?,
        form: classify_additive(f).ok(),
    })
}

/// `kind` is `"dual"` or `"single"`; `j` and `m` are ignored for `"single"`.
pub fn layer_view(
    kind: &str,
    q: usize,
    i: usize,
    k: usize,
    j: usize,
    m: usize,
    c: &str,
) -> Result<FunctionView, Error> {
    let params = GraphParams::new(2, q)?;
    let c: Rational = parse_rational(c)?;
    let f = match kind {
        "dual" => construct_dual_layer(&params, i, k, j, m, c)?,
        "single" => construct_single_layer(&params, i, k, c)?,
        other => return Err(Error::InvalidArgument(format!("unknown family {other:?}"))),
    };
    describe(&f)
}

#[derive(Debug, Serialize)]
pub struct SearchView {
    pub n: usize,
    pub q: usize,
    pub enumerated: u64,
    pub theoretical_min: usize,
    pub observed_min: usize,
    pub lower_bound: String,
    pub verdict: bool,
    pub achievers: Vec<AchieverView>,
}

#[derive(Debug, Serialize)]
pub struct AchieverView {
    pub coefficients: Vec<i64>,
    pub form: Option<CanonicalForm>,
    /// Present for n = 2 only.
    pub heatmap: Option<Heatmap>,
}

pub fn search_view(n: usize, q: usize, lo: i64, hi: i64) -> Result<SearchView, Error> {
    let params = GraphParams::new(n, q)?;
    let set = CoefficientSet::range(lo, hi)?;
    let config = SearchConfig {
        grid_cap: BROWSER_GRID_CAP,
        ..SearchConfig::default()
    };
    let report = grid_min_support(&params, &set, &config)?;
    let achievers = report
        .achievers
        .iter()
        .map(|a| {
            let heatmap = match (&a.form, n) {
                (Some(form), 2) => Some(heatmap(&form.to_function(&params)?)),
                _ => None,
            };
            Ok(AchieverView {
                coefficients: a.coefficients.clone(),
                form: a.form.clone(),
                heatmap,
            })
        })
        .collect::<Result<Vec<_>, Error>>()?;
    Ok(SearchView {
        n,
        q,
        enumerated: report.enumerated_count,
        theoretical_min: report.theoretical_min,
        observed_min: report.observed_min,
        lower_bound: report.lower_bound,
        verdict: report.verdict,
        achievers,
    })
}

#[derive(Debug, Serialize)]
pub struct BoundPoint {
    pub m: usize,
    pub eigenvalue: i64,
    pub bound: Option<f64>,
    pub label: String,
    pub branch: Option<BoundBranch>,
}

#[derive(Debug, Serialize)]
pub struct BoundCurve {
    pub n: usize,
    pub q: usize,
    pub vertex_count: usize,
    pub points: Vec<BoundPoint>,
    /// `2(q−1)q^{n−2}` at `m = 1`, when `q > 2` and `n ≥ 2`.
    pub lambda1_minimum: Option<usize>,
}

pub fn bound_curve_view(n: usize, q: usize) -> Result<BoundCurve, Error> {
    let params = GraphParams::new(n, q)?;
    let points = spectrum(&params)
        .into_iter()
        .enumerate()
        .map(|(m, eigenvalue)| match vorobev_lower_bound(n, q, m) {
            Ok(b) => BoundPoint {
                m,
                eigenvalue,
                bound: Some(b.to_f64()),
                label: b.to_string(),
                branch: Some(b.branch()),
            },
            Err(e) => BoundPoint {
                m,
                eigenvalue,
                bound: None,
                label: e.to_string(),
                branch: None,
            },
        })
        .collect();
    Ok(BoundCurve {
        n,
        q,
        vertex_count: params.vertex_count(),
        points,
        lambda1_minimum: (q > 2 && n >= 2).then(|| minimum_support(&params)),
    })
}

fn to_json<T: Serialize>(r: Result<T, Error>) -> Result<String, String> {
    r.map(|v| serde_json::to_string(&v).expect("view serializes"))
        .map_err(|e| e.to_string())
}

#[wasm_bindgen(js_name = layerFunction)]
pub fn layer_function(kind: &str, q: usize, i: usize, k: usize, j: usize, m: usize, c: &str) -> Result<String, String> {
    to_json(layer_view(kind, q, i, k, j, m, c))
}

#[wasm_bindgen(js_name = minSupportSearch)]
pub fn min_support_search(n: usize, q: usize, lo: i32, hi: i32) -> Result<String, String> {
    to_json(search_view(n, q, lo as i64, hi as i64))
}

#[wasm_bindgen(js_name = boundCurve)]
pub fn bound_curve(n: usize, q: usize) -> Result<String, String> {
    to_json(bound_curve_view(n, q))
}
