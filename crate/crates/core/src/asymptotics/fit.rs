//! Slope sequences (1/n²)·log|x_n| and their extrapolated limits.

use serde::Serialize;

/// One sampled point of a slope sequence.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SlopePoint {
    pub n: u32,
    pub value: f64,
    pub target: f64,
    pub gap: f64,
}

/// A slope sequence with raw and fitted limits compared against a target.
#[derive(Clone, Debug, Serialize)]
pub struct SlopeEstimate {
    pub kind: String,
    pub points: Vec<SlopePoint>,
    pub target: f64,
    pub raw_last: f64,
    pub fitted: f64,
    pub gap_raw: f64,
    pub gap_fitted: f64,
    pub notes: Vec<String>,
}

/// |x − target| / |target|, or |x| when the target is zero.
pub fn relative_gap(x: f64, target: f64) -> f64 {
    if target == 0.0 {
        x.abs()
    } else {
        ((x - target) / target).abs()
    }
}

impl SlopeEstimate {
    /// Builds the estimate from (n, value) pairs sorted by n.
    pub fn new(kind: &str, samples: Vec<(u32, f64)>, target: f64) -> Self {
        assert!(samples.windows(2).all(|w| w[0].0 < w[1].0), "samples must be strictly increasing in n");
        assert!(!samples.is_empty(), "at least one sample");
        let points: Vec<SlopePoint> = samples
            .iter()
            .map(|&(n, value)| SlopePoint { n, value, target, gap: relative_gap(value, target) })
            .collect();
        let raw_last = points.last().map(|p| p.value).unwrap_or(f64::NAN);
        let fitted = fit_limit(&samples);
        SlopeEstimate {
            kind: kind.to_string(),
            target,
            raw_last,
            fitted,
            gap_raw: relative_gap(raw_last, target),
            gap_fitted: relative_gap(fitted, target),
            points,
            notes: Vec::new(),
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.notes.push(note.into());
        self
    }
}

/// Limit L of value(n) ≈ L + a/n + b·log(n)/n², least squares on the largest third of the samples.
///
/// Falls back to fewer basis functions when there are too few points.
pub fn fit_limit(samples: &[(u32, f64)]) -> f64 {
    let k = samples.len();
    if k == 0 {
        return f64::NAN;
    }
    let take = (k.div_ceil(3)).max(3).min(k);
    let tail = &samples[k - take..];
    let basis: Vec<Vec<f64>> = tail
        .iter()
        .map(|&(n, _)| {
            let n = n as f64;
            vec![1.0, 1.0 / n, n.ln() / (n * n)]
        })
        .collect();
    let ys: Vec<f64> = tail.iter().map(|p| p.1).collect();
    let dim = take.min(3);
    least_squares(&basis, &ys, dim).map(|c| c[0]).unwrap_or(ys[ys.len() - 1])
}

/// Solves the normal equations for the first `dim` basis columns.
fn least_squares(rows: &[Vec<f64>], ys: &[f64], dim: usize) -> Option<Vec<f64>> {
    let mut m = vec![vec![0.0; dim + 1]; dim];
    for (row, y) in rows.iter().zip(ys) {
        for i in 0..dim {
            for j in 0..dim {
                m[i][j] += row[i] * row[j];
            }
            m[i][dim] += row[i] * y;
        }
    }
    for c in 0..dim {
        let piv = (c..dim).max_by(|&a, &b| m[a][c].abs().total_cmp(&m[b][c].abs()))?;
        if m[piv][c].abs() < 1e-300 {
            return None;
        }
        m.swap(c, piv);
        for r in 0..dim {
            if r != c {
                let f = m[r][c] / m[c][c];
                for j in c..=dim {
                    m[r][j] -= f * m[c][j];
                }
            }
        }
    }
    Some((0..dim).map(|i| m[i][dim] / m[i][i]).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_exact_model() {
        let samples: Vec<(u32, f64)> = (5..=40)
            .map(|n| {
                let x = n as f64;
                (n, -0.7 + 2.0 / x + 3.0 * x.ln() / (x * x))
            })
            .collect();
        assert!((fit_limit(&samples) + 0.7).abs() < 1e-9);
    }

    #[test]
    fn short_sequences() {
        assert_eq!(fit_limit(&[(3, 1.5)]), 1.5);
        let two = fit_limit(&[(2, 1.0 + 0.5), (4, 1.0 + 0.25)]);
        assert!((two - 1.0).abs() < 1e-12);
    }

    #[test]
    fn gaps() {
        let e = SlopeEstimate::new("t", vec![(1, 0.9), (2, 0.95)], 1.0);
        assert!((e.gap_raw - 0.05).abs() < 1e-12);
        assert_eq!(relative_gap(0.1, 0.0), 0.1);
    }
}
