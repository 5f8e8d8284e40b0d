use crate::error::{Error, Result};

/// Equality constraints with `|h| ≤ EQ_TOLERANCE` count as satisfied.
pub const EQ_TOLERANCE: f64 = 1e-4;

/// A bounded continuous minimisation problem.
pub trait ContinuousProblem: Sync {
    fn name(&self) -> &str;

    fn bounds(&self) -> &[(f64, f64)];

    fn dimension(&self) -> usize {
        self.bounds().len()
    }

    /// Value to minimise at `x` (penalised for constrained problems).
    fn evaluate(&self, x: &[f64]) -> f64;

    /// Maps a user-facing value to the strictly positive value the colony
    /// minimises. Defaults to adding [`ContinuousProblem::positivity_shift`].
    fn to_internal(&self, value: f64) -> f64 {
        value + self.positivity_shift()
    }

    /// Inverse of [`ContinuousProblem::to_internal`].
    fn to_reported(&self, internal: f64) -> f64 {
        internal - self.positivity_shift()
    }

    fn positivity_shift(&self) -> f64 {
        0.0
    }

    fn optimum_known(&self) -> Option<f64> {
        None
    }
}

pub fn check_bounds(bounds: &[(f64, f64)]) -> Result<()> {
    if bounds.is_empty() {
        return Err(Error::invalid("at least one dimension is required"));
    }
    for (k, &(lo, hi)) in bounds.iter().enumerate() {
        if !(lo.is_finite() && hi.is_finite() && lo < hi) {
            return Err(Error::invalid(format!("bound {k} [{lo}, {hi}] is not a finite interval")));
        }
    }
    Ok(())
}

/// Quadratic penalty `scale · (Σ max(0, g)² + Σ h²)`; equalities within
/// [`EQ_TOLERANCE`] contribute nothing.
pub fn penalty(inequalities: &[f64], equalities: &[f64], pen_scale: f64) -> f64 {
    let g: f64 = inequalities.iter().map(|&g| g.max(0.0).powi(2)).sum();
    let h: f64 = equalities.iter().filter(|h| h.abs() > EQ_TOLERANCE).map(|&h| h * h).sum();
    pen_scale * (g + h)
}

type Objective = fn(&[f64]) -> f64;
type Constraints = fn(&[f64]) -> Vec<f64>;

fn none(_: &[f64]) -> Vec<f64> {
    Vec::new()
}

/// One of the registered constrained benchmarks.
#[derive(Debug, Clone)]
pub struct ConstrainedProblem {
    pub id: u8,
    name: String,
    bounds: Vec<(f64, f64)>,
    objective: Objective,
    inequalities: Constraints,
    equalities: Constraints,
    /// Best value reported for the problem in the comparison tables.
    pub reported_optimum: f64,
    /// Best value known from the literature.
    pub literature_optimum: f64,
    pub optimum_point: Option<Vec<f64>>,
    shift: f64,
    /// Static factor bringing squared violations to the scale of `|f|`.
    magnitude: f64,
    /// Penalty factor PEN.
    pub pen: f64,
}

impl ConstrainedProblem {
    pub fn with_pen(mut self, pen: f64) -> Self {
        self.pen = pen;
        self
    }

    pub fn pen_scale(&self, pen: f64) -> f64 {
        pen * 1e3 * self.magnitude
    }

    pub fn objective(&self, x: &[f64]) -> f64 {
        (self.objective)(x)
    }

    pub fn inequalities(&self, x: &[f64]) -> Vec<f64> {
        (self.inequalities)(x)
    }

    pub fn equalities(&self, x: &[f64]) -> Vec<f64> {
        (self.equalities)(x)
    }

    pub fn is_feasible(&self, x: &[f64]) -> bool {
        self.inequalities(x).iter().all(|&g| g <= 0.0)
            && self.equalities(x).iter().all(|h| h.abs() <= EQ_TOLERANCE)
    }

    fn check_dimension(&self, x: &[f64]) -> Result<()> {
        if x.len() != self.bounds.len() {
            return Err(Error::invalid(format!(
                "{} expects {} variables, got {}",
                self.name,
                self.bounds.len(),
                x.len()
            )));
        }
        Ok(())
    }
}

impl ContinuousProblem for ConstrainedProblem {
    fn name(&self) -> &str {
        &self.name
    }

    fn bounds(&self) -> &[(f64, f64)] {
        &self.bounds
    }

    fn evaluate(&self, x: &[f64]) -> f64 {
        let f = self.objective(x);
        f + penalty(&self.inequalities(x), &self.equalities(x), self.pen_scale(self.pen))
    }

    fn positivity_shift(&self) -> f64 {
        self.shift
    }

    fn optimum_known(&self) -> Option<f64> {
        Some(self.literature_optimum)
    }
}

/// `f(x)` plus the quadratic constraint penalty; equals `f(x)` on feasible
/// points.
pub fn penalized_objective(x: &[f64], problem: &ConstrainedProblem, pen: f64) -> Result<f64> {
    problem.check_dimension(x)?;
    for (k, (&v, &(lo, hi))) in x.iter().zip(&problem.bounds).enumerate() {
        if !(lo..=hi).contains(&v) {
            return Err(Error::invalid(format!("x[{k}] = {v} outside [{lo}, {hi}]")));
        }
    }
    let f = problem.objective(x);
    Ok(f + penalty(&problem.inequalities(x), &problem.equalities(x), problem.pen_scale(pen)))
}

/// Objective and constraint values (inequalities, then equalities) of
/// benchmark `id`.
pub fn g_function(id: u8, x: &[f64]) -> Result<(f64, Vec<f64>)> {
    let p = constrained_problem(id)?;
    p.check_dimension(x)?;
    let mut c = p.inequalities(x);
    c.extend(p.equalities(x));
    Ok((p.objective(x), c))
}

/// Looks up a registered benchmark. Id 4 is reserved but has no function
/// behind it yet.
pub fn constrained_problem(id: u8) -> Result<ConstrainedProblem> {
    match id {
        1 => Ok(g1()),
        2 => Ok(g2()),
        3 => Ok(g3()),
        4 => Err(Error::Unidentified(4)),
        _ => Err(Error::invalid(format!("unknown benchmark g{id}"))),
    }
}

fn g1() -> ConstrainedProblem {
    fn f(x: &[f64]) -> f64 {
        let a: f64 = x[..4].iter().sum();
        let b: f64 = x[..4].iter().map(|v| v * v).sum();
        let c: f64 = x[4..13].iter().sum();
        5.0 * a - 5.0 * b - c
    }
    fn g(x: &[f64]) -> Vec<f64> {
        vec![
            2.0 * x[0] + 2.0 * x[1] + x[9] + x[10] - 10.0,
            2.0 * x[0] + 2.0 * x[2] + x[9] + x[11] - 10.0,
            2.0 * x[1] + 2.0 * x[2] + x[10] + x[11] - 10.0,
            -8.0 * x[0] + x[9],
            -8.0 * x[1] + x[10],
            -8.0 * x[2] + x[11],
            -2.0 * x[3] - x[4] + x[9],
            -2.0 * x[5] - x[6] + x[10],
            -2.0 * x[7] - x[8] + x[11],
        ]
    }
    let mut bounds = vec![(0.0, 1.0); 13];
    for b in &mut bounds[9..12] {
        *b = (0.0, 100.0);
    }
    let mut opt = vec![1.0; 13];
    opt[9..12].copy_from_slice(&[3.0, 3.0, 3.0]);
    ConstrainedProblem {
        id: 1,
        name: "g1".into(),
        bounds,
        objective: f,
        inequalities: g,
        equalities: none,
        reported_optimum: -15.012,
        literature_optimum: -15.0,
        optimum_point: Some(opt),
        shift: 20.0,
        magnitude: 1.0,
        pen: 0.3,
    }
}

fn g2() -> ConstrainedProblem {
    fn f(x: &[f64]) -> f64 {
        x[0] + x[1] + x[2]
    }
    fn g(x: &[f64]) -> Vec<f64> {
        vec![
            -1.0 + 0.0025 * (x[3] + x[5]),
            -1.0 + 0.0025 * (x[4] + x[6] - x[3]),
            -1.0 + 0.01 * (x[7] - x[4]),
            -x[0] * x[5] + 833.33252 * x[3] + 100.0 * x[0] - 83333.333,
            -x[1] * x[6] + 1250.0 * x[4] + x[1] * x[3] - 1250.0 * x[3],
            -x[2] * x[7] + 1_250_000.0 + x[2] * x[4] - 2500.0 * x[4],
        ]
    }
    ConstrainedProblem {
        id: 2,
        name: "g2".into(),
        bounds: vec![
            (100.0, 10000.0),
            (1000.0, 10000.0),
            (1000.0, 10000.0),
            (10.0, 1000.0),
            (10.0, 1000.0),
            (10.0, 1000.0),
            (10.0, 1000.0),
            (10.0, 1000.0),
        ],
        objective: f,
        inequalities: g,
        equalities: none,
        reported_optimum: 7050.331,
        literature_optimum: 7_049.248_020_528_7,
        optimum_point: Some(vec![
            579.306_685_017_979,
            1_359.970_678_070_8,
            5_109.970_657_929_8,
            182.017_699_642_96,
            295.601_173_702_46,
            217.982_300_357_04,
            286.416_525_940_51,
            395.601_173_702_46,
        ]),
        shift: 0.0,
        magnitude: 1e-3,
        pen: 0.3,
    }
}

fn g3() -> ConstrainedProblem {
    fn f(x: &[f64]) -> f64 {
        (x[0] - 10.0).powi(2)
            + 5.0 * (x[1] - 12.0).powi(2)
            + x[2].powi(4)
            + 3.0 * (x[3] - 11.0).powi(2)
            + 10.0 * x[4].powi(6)
            + 7.0 * x[5].powi(2)
            + x[6].powi(4)
            - 4.0 * x[5] * x[6]
            - 10.0 * x[5]
            - 8.0 * x[6]
    }
    fn g(x: &[f64]) -> Vec<f64> {
        vec![
            -127.0 + 2.0 * x[0].powi(2) + 3.0 * x[1].powi(4) + x[2] + 4.0 * x[3].powi(2) + 5.0 * x[4],
            -282.0 + 7.0 * x[0] + 3.0 * x[1] + 10.0 * x[2].powi(2) + x[3] - x[4],
            -196.0 + 23.0 * x[0] + x[1].powi(2) + 6.0 * x[5].powi(2) - 8.0 * x[6],
            4.0 * x[0].powi(2) + x[1].powi(2) - 3.0 * x[0] * x[1] + 2.0 * x[2].powi(2) + 5.0 * x[5]
                - 11.0 * x[6],
        ]
    }
    ConstrainedProblem {
        id: 3,
        name: "g3".into(),
        bounds: vec![(-10.0, 10.0); 7],
        objective: f,
        inequalities: g,
        equalities: none,
        reported_optimum: 680.538,
        literature_optimum: 680.630_057_374_402,
        optimum_point: Some(vec![
            2.330_499_351_06,
            1.951_372_367_44,
            -0.477_541_399_51,
            4.365_726_248_09,
            -0.624_486_959_10,
            1.038_130_994_19,
            1.594_226_781_94,
        ]),
        shift: 50.0,
        magnitude: 1.0,
        pen: 0.3,
    }
}

/// `Σ x²`, the unconstrained sanity problem.
#[derive(Debug, Clone)]
pub struct Sphere {
    bounds: Vec<(f64, f64)>,
}

impl Sphere {
    pub fn new(dimension: usize, half_width: f64) -> Self {
        Sphere { bounds: vec![(-half_width, half_width); dimension] }
    }
}

impl ContinuousProblem for Sphere {
    fn name(&self) -> &str {
        "sphere"
    }

    fn bounds(&self) -> &[(f64, f64)] {
        &self.bounds
    }

    fn evaluate(&self, x: &[f64]) -> f64 {
        x.iter().map(|v| v * v).sum()
    }

    fn positivity_shift(&self) -> f64 {
        1.0
    }

    fn optimum_known(&self) -> Option<f64> {
        Some(0.0)
    }
}
