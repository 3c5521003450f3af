//! Parameter sweeps for three model processes: symmetric gain and noise,
//! damping into a thermal bath, and a diagonal amplifier/attenuator with
//! reciprocal asymmetry.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

#[allow(unused_imports)] // shadowed by inherent methods when std is linked
use num_traits::Float;

use crate::fidelity::{fidelity_asymmetric_diagonal, fidelity_symmetric, noiseless_amplifier_fidelity};
use crate::gaussian::{CovarianceMatrix, GainMatrix, GaussianChannel, Quadratures};
use crate::roots::{bisect, newton};
use crate::{Error, Result, CLASSICAL_BENCHMARK};

/// Root tolerance on `|Fq − 2/3|`.
pub const BENCHMARK_FTOL: f64 = 1e-10;

/// Default range of both axes of [`symmetric_contour_grid`].
pub const SYMMETRIC_GRID_RANGE: (f64, f64) = (0.0, 1.0);
pub const SYMMETRIC_GRID_POINTS: usize = 201;
/// Default `γt` range of [`heat_bath_curve`].
pub const HEAT_BATH_RANGE: (f64, f64) = (0.0, 5.0);
/// Default `ε` range of [`amplifier_sweep`].
pub const AMPLIFIER_RANGE: (f64, f64) = (1.0, 3.0);
pub const CURVE_POINTS: usize = 400;

/// One parameter axis of a sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct Axis {
    pub label: String,
    pub values: Vec<f64>,
}

impl Axis {
    pub fn new(label: &str, values: Vec<f64>) -> Self {
        Self { label: label.to_string(), values }
    }
}

/// A straight piece of an iso-fidelity curve, in axis coordinates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContourSegment {
    pub start: (f64, f64),
    pub end: (f64, f64),
}

/// Fidelity on a 1-D series or a 2-D grid.
///
/// For two axes `fq` is row-major with the first axis as the slow index.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub scenario: String,
    pub axes: Vec<Axis>,
    pub fq: Vec<f64>,
    pub metadata: BTreeMap<String, f64>,
    /// Segments of the `Fq = 2/3` curve (2-D sweeps only).
    pub contour: Vec<ContourSegment>,
}

impl SweepResult {
    fn new(scenario: &str, axes: Vec<Axis>, fq: Vec<f64>) -> Self {
        Self { scenario: scenario.to_string(), axes, fq, metadata: BTreeMap::new(), contour: Vec::new() }
    }

    /// Grid shape, one entry per axis.
    pub fn shape(&self) -> Vec<usize> {
        self.axes.iter().map(|a| a.values.len()).collect()
    }

    /// Fidelity at a grid index (one coordinate per axis).
    pub fn get(&self, index: &[usize]) -> Option<f64> {
        if index.len() != self.axes.len() {
            return None;
        }
        let mut flat = 0;
        for (i, axis) in index.iter().zip(&self.axes) {
            if *i >= axis.values.len() {
                return None;
            }
            flat = flat * axis.values.len() + i;
        }
        self.fq.get(flat).copied()
    }
}

/// `n` evenly spaced points from `lo` to `hi` inclusive.
pub fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => alloc::vec![lo],
        _ => (0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect(),
    }
}

fn check_grid(values: &[f64]) -> Result<()> {
    if values.is_empty() || values.iter().any(|v| !v.is_finite()) {
        return Err(Error::InvalidArgument("grid must be non-empty and finite"));
    }
    Ok(())
}

fn check_bath(gamma_t: f64, nbar: f64) -> Result<()> {
    if !(gamma_t >= 0.0) || !(nbar >= 0.0) || !nbar.is_finite() {
        return Err(Error::InvalidArgument("decay time and bath occupation must be nonnegative"));
    }
    Ok(())
}

/// Damping at rate `γ` for time `t` into a bath of mean occupation `nbar`.
pub fn heat_bath_channel(gamma_t: f64, nbar: f64) -> Result<GaussianChannel> {
    check_bath(gamma_t, nbar)?;
    let g = (-0.5 * gamma_t).exp();
    let loss = -(-gamma_t).exp_m1();
    let var = (nbar + 0.5) * loss;
    Ok(GaussianChannel::new(GainMatrix::diagonal(g, g), Quadratures::ZERO, CovarianceMatrix::isotropic(var)))
}

/// Symmetric-formula fidelity of [`heat_bath_channel`].
pub fn heat_bath_fidelity(gamma_t: f64, nbar: f64) -> Result<f64> {
    check_bath(gamma_t, nbar)?;
    let g = (-0.5 * gamma_t).exp();
    let sigma_sq = 0.5 - nbar * (-gamma_t).exp_m1();
    fidelity_symmetric(g, sigma_sq)
}

/// `lim_{t→∞} Fq = (N̄ + ½)/(N̄ + 1)²`.
pub fn heat_bath_asymptote(nbar: f64) -> f64 {
    (nbar + 0.5) / ((nbar + 1.0) * (nbar + 1.0))
}

pub fn heat_bath_curve(nbar: f64, gamma_t: &[f64]) -> Result<SweepResult> {
    check_grid(gamma_t)?;
    if gamma_t.windows(2).any(|w| w[1] < w[0]) {
        return Err(Error::InvalidArgument("decay-time grid must be sorted ascending"));
    }
    let fq = gamma_t.iter().map(|&t| heat_bath_fidelity(t, nbar)).collect::<Result<Vec<_>>>()?;
    let mut out = SweepResult::new("heat-bath", alloc::vec![Axis::new("gamma_t", gamma_t.to_vec())], fq);
    out.metadata.insert("nbar".to_string(), nbar);
    out.metadata.insert("asymptote".to_string(), heat_bath_asymptote(nbar));
    if let Ok(t) = time_to_benchmark(nbar) {
        out.metadata.insert("benchmark_gamma_t".to_string(), t.gamma_t);
    }
    Ok(out)
}

/// Time at which the heat-bath fidelity falls to the classical benchmark.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BenchmarkTime {
    /// `γT` with `T` in units of the energy decay time `1/γ`.
    pub gamma_t: f64,
    /// `T` in units of the amplitude coherence time `2/γ`.
    pub coherence_fraction: f64,
}

impl BenchmarkTime {
    fn from_gamma_t(gamma_t: f64) -> Self {
        Self { gamma_t, coherence_fraction: 0.5 * gamma_t }
    }
}

fn benchmark_gap(nbar: f64) -> impl Fn(f64) -> Result<f64> {
    move |t| Ok(heat_bath_fidelity(t, nbar)? - CLASSICAL_BENCHMARK)
}

fn check_reachable(nbar: f64) -> Result<()> {
    check_bath(0.0, nbar)?;
    let asymptote = heat_bath_asymptote(nbar);
    if asymptote >= CLASSICAL_BENCHMARK {
        return Err(Error::BenchmarkUnreachable { asymptote });
    }
    Ok(())
}

/// Bisection on the monotone decay curve.
pub fn time_to_benchmark(nbar: f64) -> Result<BenchmarkTime> {
    check_reachable(nbar)?;
    let gap = benchmark_gap(nbar);
    let mut hi = 1.0;
    while gap(hi)? > 0.0 {
        hi *= 2.0;
        if hi > 1e6 {
            return Err(Error::InvalidArgument("benchmark time not bracketed"));
        }
    }
    bisect(&gap, 0.0, hi, BENCHMARK_FTOL, 1e-15).map(BenchmarkTime::from_gamma_t)
}

/// Newton iteration on the same equation, started from the linearized decay.
pub fn time_to_benchmark_newton(nbar: f64) -> Result<BenchmarkTime> {
    check_reachable(nbar)?;
    let start = 1.0 / (1.0 + 5.0 * nbar);
    newton(benchmark_gap(nbar), start, 1e-13, 100).map(BenchmarkTime::from_gamma_t)
}

/// Excess variance `2σ² − 1` at which the symmetric fidelity with gain `g`
/// reaches the classical benchmark, by bisection in `σ²`.
pub fn symmetric_benchmark_excess_variance(g: f64) -> Result<f64> {
    let floor = 0.5 + 0.5 * (g * g - 1.0).max(0.0);
    let gap = |s: f64| Ok(fidelity_symmetric(g, s)? - CLASSICAL_BENCHMARK);
    if gap(floor)? < 0.0 {
        return Err(Error::BenchmarkUnreachable { asymptote: gap(floor)? + CLASSICAL_BENCHMARK });
    }
    let mut hi = floor + 1.0;
    while gap(hi)? > 0.0 {
        hi = floor + 2.0 * (hi - floor);
    }
    Ok(2.0 * bisect(gap, floor, hi, 1e-14, 1e-15)? - 1.0)
}

/// Symmetric-case fidelity over gain imperfection `1 − g` and excess
/// variance `2σ² − 1`, with the `Fq = 2/3` contour.
pub fn symmetric_contour_grid(one_minus_g: &[f64], excess_var: &[f64]) -> Result<SweepResult> {
    check_grid(one_minus_g)?;
    check_grid(excess_var)?;
    let mut fq = Vec::with_capacity(one_minus_g.len() * excess_var.len());
    for &x in one_minus_g {
        for &y in excess_var {
            fq.push(fidelity_symmetric(1.0 - x, 0.5 * (1.0 + y))?);
        }
    }
    let mut out = SweepResult::new(
        "symmetric-grid",
        alloc::vec![Axis::new("one_minus_g", one_minus_g.to_vec()), Axis::new("excess_variance", excess_var.to_vec())],
        fq,
    );
    out.contour = iso_contour(one_minus_g, excess_var, &out.fq, CLASSICAL_BENCHMARK);
    Ok(out)
}

/// Marching squares with linear interpolation along cell edges.
pub fn iso_contour(xs: &[f64], ys: &[f64], values: &[f64], level: f64) -> Vec<ContourSegment> {
    let ny = ys.len();
    let at = |i: usize, j: usize| values[i * ny + j] - level;
    let mut segments = Vec::new();
    if xs.len() < 2 || ny < 2 {
        return segments;
    }
    for i in 0..xs.len() - 1 {
        for j in 0..ny - 1 {
            // corners counter-clockwise from (i, j)
            let corners = [(i, j), (i + 1, j), (i + 1, j + 1), (i, j + 1)];
            let v: Vec<f64> = corners.iter().map(|&(a, b)| at(a, b)).collect();
            let mut points = Vec::with_capacity(4);
            for e in 0..4 {
                let (a, b) = (e, (e + 1) % 4);
                if (v[a] > 0.0) != (v[b] > 0.0) {
                    let t = v[a] / (v[a] - v[b]);
                    let (pa, pb) = (corners[a], corners[b]);
                    let x = xs[pa.0] + t * (xs[pb.0] - xs[pa.0]);
                    let y = ys[pa.1] + t * (ys[pb.1] - ys[pa.1]);
                    points.push((x, y));
                }
            }
            match points.len() {
                2 => segments.push(ContourSegment { start: points[0], end: points[1] }),
                4 => {
                    // saddle: connect according to the sign of the cell average
                    let center = 0.25 * v.iter().sum::<f64>();
                    let (first, second) = if (center > 0.0) == (v[0] > 0.0) { ((0, 1), (2, 3)) } else { ((0, 3), (1, 2)) };
                    segments.push(ContourSegment { start: points[first.0], end: points[first.1] });
                    segments.push(ContourSegment { start: points[second.0], end: points[second.1] });
                }
                _ => {}
            }
        }
    }
    segments
}

/// Gains and output variances `(gx, gp, σx², σp²)` at asymmetry `eps`.
pub fn amplifier_parameters(g0: f64, sigma0_sq: f64, eps: f64) -> (f64, f64, f64, f64) {
    (g0 * eps, g0 / eps, sigma0_sq * eps * eps, sigma0_sq / (eps * eps))
}

pub fn amplifier_fidelity(g0: f64, sigma0_sq: f64, eps: f64) -> Result<f64> {
    if !(eps > 0.0) || !eps.is_finite() {
        return Err(Error::UnphysicalParameters("asymmetry parameter must be positive"));
    }
    let (gx, gp, sx, sp) = amplifier_parameters(g0, sigma0_sq, eps);
    fidelity_asymmetric_diagonal(gx, gp, sx, sp)
}

/// Diagonal channel realizing [`amplifier_parameters`].
pub fn amplifier_channel(g0: f64, sigma0_sq: f64, eps: f64) -> GaussianChannel {
    let (gx, gp, sx, sp) = amplifier_parameters(g0, sigma0_sq, eps);
    let noise = CovarianceMatrix::new(sx - 0.5 * gx * gx, sp - 0.5 * gp * gp, 0.0);
    GaussianChannel::new(GainMatrix::diagonal(gx, gp), Quadratures::ZERO, noise)
}

/// Fidelity along the asymmetry axis. The first benchmark crossing between
/// grid points, refined by bisection, is stored as `benchmark_crossing`.
pub fn amplifier_sweep(g0: f64, sigma0_sq: f64, eps: &[f64]) -> Result<SweepResult> {
    check_grid(eps)?;
    let fq = eps.iter().map(|&e| amplifier_fidelity(g0, sigma0_sq, e)).collect::<Result<Vec<_>>>()?;
    let gap = |e: f64| Ok(amplifier_fidelity(g0, sigma0_sq, e)? - CLASSICAL_BENCHMARK);
    let crossing = (0..eps.len().saturating_sub(1))
        .find(|&k| (fq[k] > CLASSICAL_BENCHMARK) != (fq[k + 1] > CLASSICAL_BENCHMARK))
        .map(|k| bisect(gap, eps[k], eps[k + 1], 1e-13, 1e-15))
        .transpose()?;
    let mut out = SweepResult::new("amplifier-sweep", alloc::vec![Axis::new("epsilon", eps.to_vec())], fq);
    out.metadata.insert("g0".to_string(), g0);
    out.metadata.insert("sigma0_sq".to_string(), sigma0_sq);
    if let Some(c) = crossing {
        out.metadata.insert("benchmark_crossing".to_string(), c);
    }
    Ok(out)
}

/// Gain `ε* > 1` beyond which the noiseless amplifier falls below the benchmark.
pub fn amplifier_benchmark_threshold() -> Result<f64> {
    let gap = |e: f64| Ok(noiseless_amplifier_fidelity(e.ln()) - CLASSICAL_BENCHMARK);
    bisect(gap, 1.0, 10.0, 1e-14, 1e-15)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gaussian::check_physical;

    #[test]
    fn heat_bath_limits() {
        assert_eq!(heat_bath_channel(0.0, 2.0).unwrap(), GaussianChannel::identity());
        let late = heat_bath_channel(2000.0, 0.0).unwrap();
        assert_eq!(late.gain.a11, 0.0);
        assert!((late.output_covariance().sxx - 0.5).abs() < 1e-15);
        let ch = heat_bath_channel(1.0, 1.0).unwrap();
        let expected = 0.5 + (1.0 - (-1.0_f64).exp());
        assert!((ch.output_covariance().sxx - expected).abs() < 1e-15);
        assert!(check_physical(&ch).physical);
        assert!(heat_bath_channel(-1.0, 0.0).is_err());
    }

    #[test]
    fn heat_bath_curve_shape() {
        let grid = linspace(0.0, 60.0, 301);
        let curve = heat_bath_curve(0.0, &grid).unwrap();
        assert!((curve.fq[0] - 1.0).abs() < 1e-15);
        assert!(curve.fq.windows(2).all(|w| w[1] <= w[0]));
        assert!((curve.fq[300] - 0.5).abs() < 1e-9);
    }

    #[test]
    fn benchmark_time_root() {
        let t = time_to_benchmark(0.0).unwrap();
        assert!((heat_bath_fidelity(t.gamma_t, 0.0).unwrap() - 2.0 / 3.0).abs() < BENCHMARK_FTOL);
        let exact = -2.0 * (2f64.sqrt() - 1.0).ln();
        assert!((t.gamma_t - exact).abs() < 1e-9);
        assert!(time_to_benchmark(10.0).unwrap().gamma_t < t.gamma_t);
    }

    #[test]
    fn marching_squares_on_a_plane() {
        let xs = linspace(0.0, 1.0, 3);
        let ys = linspace(0.0, 1.0, 3);
        let values: Vec<f64> = xs.iter().flat_map(|&x| ys.iter().map(move |&y| x + y)).collect();
        let segs = iso_contour(&xs, &ys, &values, 0.75);
        assert!(!segs.is_empty());
        for s in segs {
            assert!((s.start.0 + s.start.1 - 0.75).abs() < 1e-12);
            assert!((s.end.0 + s.end.1 - 0.75).abs() < 1e-12);
        }
    }

    #[test]
    fn identity_corner() {
        let grid = symmetric_contour_grid(&[0.0, 0.5], &[0.0, 0.5]).unwrap();
        assert_eq!(grid.get(&[0, 0]), Some(1.0));
        assert_eq!(grid.shape(), alloc::vec![2, 2]);
    }

    #[test]
    fn threshold_brackets() {
        let e = amplifier_benchmark_threshold().unwrap();
        assert!(e > 1.95 && e < 1.97);
        assert!(noiseless_amplifier_fidelity(1.5f64.ln()) > 2.0 / 3.0);
        assert!(noiseless_amplifier_fidelity(2.5f64.ln()) < 2.0 / 3.0);
    }
}
