use rand::Rng;

use crate::error::{Error, Result};

/// Location `a` and scale `b` of the Laplace draw.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LaplaceParams {
    pub location: f64,
    pub scale: f64,
}

impl Default for LaplaceParams {
    fn default() -> Self {
        Self { location: 0.0, scale: 0.5 }
    }
}

/// One Laplace-distributed coefficient.
pub fn laplace_draw<R: Rng + ?Sized>(params: LaplaceParams, rng: &mut R) -> f64 {
    let u: f64 = 1.0 - rng.gen::<f64>(); // (0, 1]
    let r: f64 = rng.gen();
    if r <= 0.5 {
        params.location - params.scale * u.ln()
    } else {
        params.location + params.scale * u.ln()
    }
}

fn check_bounds(x: &[f64], bounds: &[(f64, f64)]) -> Result<()> {
    if x.len() != bounds.len() {
        return Err(Error::invalid("vector length does not match bounds"));
    }
    for &(lo, hi) in bounds {
        if !(lo.is_finite() && hi.is_finite() && lo <= hi) {
            return Err(Error::invalid(format!("invalid bound [{lo}, {hi}]")));
        }
    }
    Ok(())
}

pub fn clip_to_bounds(x: &mut [f64], bounds: &[(f64, f64)]) {
    for (v, &(lo, hi)) in x.iter_mut().zip(bounds) {
        *v = v.clamp(lo, hi);
    }
}

/// Laplace crossover with explicit per-gene coefficients:
/// `c1 = x1 + β|x1 - x2|`, `c2 = x2 - β|x1 - x2|`, clipped to the bounds.
pub fn laplace_crossover_with_draws(
    x1: &[f64],
    x2: &[f64],
    betas: &[f64],
    bounds: &[(f64, f64)],
) -> Result<(Vec<f64>, Vec<f64>)> {
    check_bounds(x1, bounds)?;
    check_bounds(x2, bounds)?;
    if betas.len() != x1.len() {
        return Err(Error::invalid("one coefficient per gene is required"));
    }
    let mut c1 = Vec::with_capacity(x1.len());
    let mut c2 = Vec::with_capacity(x1.len());
    for k in 0..x1.len() {
        let d = (x1[k] - x2[k]).abs();
        c1.push(x1[k] + betas[k] * d);
        c2.push(x2[k] - betas[k] * d);
    }
    clip_to_bounds(&mut c1, bounds);
    clip_to_bounds(&mut c2, bounds);
    Ok((c1, c2))
}

pub fn laplace_crossover<R: Rng + ?Sized>(
    x1: &[f64],
    x2: &[f64],
    bounds: &[(f64, f64)],
    params: LaplaceParams,
    rng: &mut R,
) -> Result<(Vec<f64>, Vec<f64>)> {
    let betas: Vec<f64> = (0..x1.len()).map(|_| laplace_draw(params, rng)).collect();
    laplace_crossover_with_draws(x1, x2, &betas, bounds)
}

/// Power mutation of a single gene. `index` is the power index `p`;
/// `p = 0` leaves the gene unchanged.
pub fn power_mutate_gene<R: Rng + ?Sized>(x: f64, lo: f64, hi: f64, index: f64, rng: &mut R) -> f64 {
    if index <= 0.0 || hi <= lo {
        return x.clamp(lo, hi);
    }
    let s = rng.gen::<f64>().powf(1.0 / index);
    let t = (x - lo) / (hi - lo);
    let r: f64 = rng.gen();
    let y = if t < r { x - s * (x - lo) } else { x + s * (hi - x) };
    y.clamp(lo, hi)
}

/// Power mutation applied to every gene.
pub fn power_mutation<R: Rng + ?Sized>(
    x: &[f64],
    bounds: &[(f64, f64)],
    index: f64,
    rng: &mut R,
) -> Result<Vec<f64>> {
    check_bounds(x, bounds)?;
    if !(index >= 0.0 && index.is_finite()) {
        return Err(Error::invalid(format!("power index must be >= 0, got {index}")));
    }
    Ok(x.iter()
        .zip(bounds)
        .map(|(&v, &(lo, hi))| power_mutate_gene(v, lo, hi, index, rng))
        .collect())
}
