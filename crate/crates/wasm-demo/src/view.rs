use harmonic_zeros::asymptotics::{critical_radius, density_asymptotic};
use harmonic_zeros::kac_rice::{expected_zero_count, kr_density};
use harmonic_zeros::lemniscate::{component_report, full_disk_window, omega_minus_mask};
use harmonic_zeros::quadrature::QuadratureConfig;
use harmonic_zeros::zeros::{find_zeros, Orientation, SolverConfig};
use harmonic_zeros::{sample, EnsembleSpec, Error, Model, Result};
use num_complex::Complex64;
use wasm_bindgen::prelude::*;

/// Largest grid the page may ask for; 1024^2 cells is about a second.
pub const MAX_RESOLUTION: usize = 1024;

#[wasm_bindgen]
#[derive(Debug, Clone)]
pub struct DensityProfile {
    r: Vec<f64>,
    density: Vec<f64>,
    leading: Vec<f64>,
    critical_radius: f64,
    expected: f64,
}

#[wasm_bindgen]
impl DensityProfile {
    #[wasm_bindgen(getter)]
    pub fn r(&self) -> Vec<f64> {
        self.r.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn density(&self) -> Vec<f64> {
        self.density.clone()
    }

    /// Leading-order density, NaN where it is undefined.
    #[wasm_bindgen(getter)]
    pub fn leading(&self) -> Vec<f64> {
        self.leading.clone()
    }

    /// NaN for `m = 0` and `m = n`.
    #[wasm_bindgen(getter, js_name = criticalRadius)]
    pub fn critical_radius(&self) -> f64 {
        self.critical_radius
    }

    #[wasm_bindgen(getter)]
    pub fn expected(&self) -> f64 {
        self.expected
    }
}

pub fn density_profile(n: usize, m: usize, r_max: f64, points: usize) -> Result<DensityProfile> {
    if !(r_max > 0.0 && r_max.is_finite()) || points < 2 {
        return Err(Error::Domain("need r_max > 0 and at least 2 points".into()));
    }
    let alpha = m as f64 / n.max(1) as f64;
    let step = r_max / (points - 1) as f64;
    let r: Vec<f64> = (0..points).map(|i| step * i as f64).collect();
    let density = r
        .iter()
        .map(|&x| kr_density(Complex64::new(x, 0.0), n, m))
        .collect::<Result<Vec<_>>>()?;
    let leading = r
        .iter()
        .map(|&x| density_asymptotic(Complex64::new(x, 0.0), n, alpha).unwrap_or(f64::NAN))
        .collect();
    Ok(DensityProfile {
        r,
        density,
        leading,
        critical_radius: critical_radius(alpha).unwrap_or(f64::NAN),
        expected: expected_zero_count(n, m, &QuadratureConfig::default())?,
    })
}

#[wasm_bindgen]
#[derive(Debug, Clone)]
pub struct LemniscateView {
    resolution: usize,
    half_width: f64,
    cells: Vec<u8>,
    components: usize,
    touching_boundary: usize,
}

#[wasm_bindgen]
impl LemniscateView {
    #[wasm_bindgen(getter)]
    pub fn resolution(&self) -> usize {
        self.resolution
    }

    #[wasm_bindgen(getter, js_name = halfWidth)]
    pub fn half_width(&self) -> f64 {
        self.half_width
    }

    /// Row-major, row 0 at the top (largest imaginary part); 1 where reversing.
    #[wasm_bindgen(getter)]
    pub fn cells(&self) -> Vec<u8> {
        self.cells.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn components(&self) -> usize {
        self.components
    }

    #[wasm_bindgen(getter, js_name = touchingBoundary)]
    pub fn touching_boundary(&self) -> usize {
        self.touching_boundary
    }
}

pub fn lemniscate(
    n: usize,
    m: usize,
    seed: u64,
    trial: u64,
    resolution: usize,
) -> Result<LemniscateView> {
    if resolution > MAX_RESOLUTION {
        return Err(Error::Domain(format!("resolution above {MAX_RESOLUTION}")));
    }
    let f = sample(&EnsembleSpec::new(Model::Truncated, n, m, seed)?, trial)?;
    let window = full_disk_window(&f, resolution)?;
    let mask = omega_minus_mask(&f, &window)?;
    let report = component_report(&mask);
    let cells = (0..resolution)
        .flat_map(|i| (0..resolution).map(move |j| (i, j)))
        .map(|(i, j)| u8::from(mask.get(i, j)))
        .collect();
    Ok(LemniscateView {
        resolution,
        half_width: window.half_width,
        cells,
        components: report.count,
        touching_boundary: report.touching_boundary,
    })
}

#[wasm_bindgen]
#[derive(Debug, Clone)]
pub struct ZeroView {
    re: Vec<f64>,
    im: Vec<f64>,
    preserving: Vec<u8>,
    n_plus: usize,
    n_minus: usize,
    certified: bool,
    radius: f64,
}

#[wasm_bindgen]
impl ZeroView {
    #[wasm_bindgen(getter)]
    pub fn re(&self) -> Vec<f64> {
        self.re.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn im(&self) -> Vec<f64> {
        self.im.clone()
    }

    /// 1 for sense-preserving zeros, 0 for reversing ones.
    #[wasm_bindgen(getter)]
    pub fn preserving(&self) -> Vec<u8> {
        self.preserving.clone()
    }

    #[wasm_bindgen(getter, js_name = nPlus)]
    pub fn n_plus(&self) -> usize {
        self.n_plus
    }

    #[wasm_bindgen(getter, js_name = nMinus)]
    pub fn n_minus(&self) -> usize {
        self.n_minus
    }

    #[wasm_bindgen(getter)]
    pub fn certified(&self) -> bool {
        self.certified
    }

    #[wasm_bindgen(getter)]
    pub fn radius(&self) -> f64 {
        self.radius
    }
}

pub fn sample_zeros(n: usize, m: usize, seed: u64, trial: u64) -> Result<ZeroView> {
    let f = sample(&EnsembleSpec::new(Model::Truncated, n, m, seed)?, trial)?;
    let res = find_zeros(&f, &SolverConfig::default())?;
    Ok(ZeroView {
        re: res.zeros.iter().map(|z| z.z.re).collect(),
        im: res.zeros.iter().map(|z| z.z.im).collect(),
        preserving: res
            .zeros
            .iter()
            .map(|z| u8::from(z.orientation == Orientation::Preserving))
            .collect(),
        n_plus: res.n_plus,
        n_minus: res.n_minus,
        certified: res.certified,
        radius: res.radius,
    })
}
