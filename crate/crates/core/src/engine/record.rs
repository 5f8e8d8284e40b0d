use serde::{Deserialize, Serialize};

/// One row per iteration (or generation / temperature stage for the
/// baselines). Objectives are in reported units.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RecordRow {
    pub t: usize,
    pub best: f64,
    pub iteration_best: f64,
    pub mean: f64,
    pub diversity: f64,
    pub tau_min: Option<f64>,
    pub tau_max: Option<f64>,
    pub tau_mean: Option<f64>,
    pub p_crossover: Option<f64>,
    pub p_mutation: Option<f64>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceRecord {
    pub rows: Vec<RecordRow>,
}

pub const CSV_HEADER: &str =
    "t,best,iteration_best,mean,diversity,tau_min,tau_max,tau_mean,p_crossover,p_mutation";

impl ConvergenceRecord {
    pub fn push(&mut self, row: RecordRow) {
        self.rows.push(row);
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn final_best(&self) -> Option<f64> {
        self.rows.last().map(|r| r.best)
    }

    /// First iteration whose best-so-far is at or below `threshold`.
    pub fn iterations_to(&self, threshold: f64) -> Option<usize> {
        self.rows.iter().find(|r| r.best <= threshold).map(|r| r.t)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from(CSV_HEADER);
        out.push('\n');
        let opt = |v: Option<f64>| v.map(|x| format_sig(x, 6)).unwrap_or_default();
        for r in &self.rows {
            out.push_str(&format!(
                "{},{},{},{},{},{},{},{},{},{}\n",
                r.t,
                format_sig(r.best, 6),
                format_sig(r.iteration_best, 6),
                format_sig(r.mean, 6),
                format_sig(r.diversity, 6),
                opt(r.tau_min),
                opt(r.tau_max),
                opt(r.tau_mean),
                opt(r.p_crossover),
                opt(r.p_mutation),
            ));
        }
        out
    }
}

/// `%g`-style formatting with `sig` significant digits.
pub fn format_sig(v: f64, sig: usize) -> String {
    if v.is_nan() {
        return "nan".into();
    }
    if v.is_infinite() {
        return if v > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if v == 0.0 {
        return "0".into();
    }
    let sig = sig.max(1);
    let sci = format!("{:.*e}", sig - 1, v);
    let (mantissa, exp) = sci.split_once('e').expect("scientific format has an exponent");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -4 || exp >= sig as i32 {
        let m = trim_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{m}e{sign}{:02}", exp.abs())
    } else {
        let decimals = (sig as i32 - 1 - exp).max(0) as usize;
        trim_zeros(&format!("{v:.decimals$}")).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn format_matches_printf_g() {
        let cases = [
            (0.0, "0"),
            (1.0, "1"),
            (-14.957, "-14.957"),
            (123456.0, "123456"),
            (1234567.0, "1.23457e+06"),
            (0.0001, "0.0001"),
            (0.00001234, "1.234e-05"),
            (9.9999996, "10"),
            (2.0f64.sqrt(), "1.41421"),
            (7050.331, "7050.33"),
        ];
        for (v, want) in cases {
            assert_eq!(format_sig(v, 6), want, "{v}");
        }
    }

    #[test]
    fn iterations_to_threshold() {
        let row = |t, best| RecordRow {
            t,
            best,
            iteration_best: best,
            mean: best,
            diversity: 0.0,
            tau_min: None,
            tau_max: None,
            tau_mean: None,
            p_crossover: None,
            p_mutation: None,
        };
        let rec = ConvergenceRecord {
            rows: vec![row(1, -3.0), row(2, -10.0), row(3, -14.2)],
        };
        assert_eq!(rec.iterations_to(-14.0), Some(3));
        assert_eq!(rec.iterations_to(-20.0), None);
        assert!(rec.to_csv().starts_with(CSV_HEADER));
        assert!(rec.to_csv().contains("\n3,-14.2,-14.2,-14.2,0,,,,,\n"));
    }
}
