//! Post-processing of sweep columns.

use std::f64::consts::PI;

/// Interior local maxima of y(x), refined by a parabola through the three
/// neighbouring samples.
pub fn local_maxima(x: &[f64], y: &[f64]) -> Vec<(f64, f64)> {
    (1..y.len().saturating_sub(1))
        .filter(|&k| y[k] > y[k - 1] && y[k] >= y[k + 1])
        .map(|k| parabolic_vertex(&x[k - 1..=k + 1], &y[k - 1..=k + 1]))
        .collect()
}

/// Interior local minima, refined as in [`local_maxima`].
pub fn local_minima(x: &[f64], y: &[f64]) -> Vec<(f64, f64)> {
    let neg: Vec<f64> = y.iter().map(|v| -v).collect();
    local_maxima(x, &neg).into_iter().map(|(a, b)| (a, -b)).collect()
}

fn parabolic_vertex(x: &[f64], y: &[f64]) -> (f64, f64) {
    let (x0, x1, x2) = (x[0], x[1], x[2]);
    let (y0, y1, y2) = (y[0], y[1], y[2]);
    let denom = (x0 - x1) * (x0 - x2) * (x1 - x2);
    let a = (x2 * (y1 - y0) + x1 * (y0 - y2) + x0 * (y2 - y1)) / denom;
    let b = (x2 * x2 * (y0 - y1) + x1 * x1 * (y2 - y0) + x0 * x0 * (y1 - y2)) / denom;
    if a >= 0.0 || !a.is_finite() {
        return (x1, y1);
    }
    let c = y1 - a * x1 * x1 - b * x1;
    let xv = (-b / (2.0 * a)).clamp(x0, x2);
    (xv, a * xv * xv + b * xv + c)
}

/// Points where y crosses `level`, by linear interpolation, with the
/// direction of the crossing (+1 upward).
pub fn crossings(x: &[f64], y: &[f64], level: f64) -> Vec<(f64, i8)> {
    let mut out = Vec::new();
    for k in 0..y.len().saturating_sub(1) {
        let (a, b) = (y[k] - level, y[k + 1] - level);
        if a < 0.0 && b >= 0.0 || a >= 0.0 && b < 0.0 {
            let t = a / (a - b);
            out.push((x[k] + t * (x[k + 1] - x[k]), if b > a { 1 } else { -1 }));
        }
    }
    out
}

/// Mean spacing of same-direction crossings of the sample mean.
pub fn mean_crossing_period(x: &[f64], y: &[f64]) -> Option<f64> {
    let mean = y.iter().sum::<f64>() / y.len() as f64;
    let up: Vec<f64> = crossings(x, y, mean)
        .into_iter()
        .filter(|c| c.1 > 0)
        .map(|c| c.0)
        .collect();
    let down: Vec<f64> = crossings(x, y, mean)
        .into_iter()
        .filter(|c| c.1 < 0)
        .map(|c| c.0)
        .collect();
    let spans: Vec<f64> = [up, down]
        .iter()
        .filter(|v| v.len() >= 2)
        .map(|v| (v[v.len() - 1] - v[0]) / (v.len() - 1) as f64)
        .collect();
    (!spans.is_empty()).then(|| spans.iter().sum::<f64>() / spans.len() as f64)
}

pub fn rms_difference(a: &[f64], b: &[f64]) -> f64 {
    let n = a.len().min(b.len());
    if n == 0 {
        return 0.0;
    }
    (a.iter().zip(b).map(|(x, y)| (x - y).powi(2)).sum::<f64>() / n as f64).sqrt()
}

/// Largest rise between any sample and a later one, i.e. how far y is
/// from being non-increasing.
pub fn max_rise(y: &[f64]) -> f64 {
    let mut running_min = f64::INFINITY;
    let mut worst: f64 = 0.0;
    for &v in y {
        worst = worst.max(v - running_min);
        running_min = running_min.min(v);
    }
    worst
}

/// Location where the real ground amplitude √p₀ cosϑ₀ changes sign.
pub fn ground_phase_flip(x: &[f64], p0: &[f64], phase0: &[f64]) -> Option<f64> {
    let s: Vec<f64> = p0.iter().zip(phase0).map(|(p, f)| p.sqrt() * f.cos()).collect();
    crossings(x, &s, 0.0).first().map(|c| c.0)
}

/// Removes 2π jumps between consecutive samples.
pub fn unwrap(phases: &[f64]) -> Vec<f64> {
    let mut out = Vec::with_capacity(phases.len());
    let mut offset = 0.0;
    for (k, &p) in phases.iter().enumerate() {
        if k > 0 {
            let d = p - phases[k - 1];
            if d > PI {
                offset -= 2.0 * PI;
            } else if d < -PI {
                offset += 2.0 * PI;
            }
        }
        out.push(p + offset);
    }
    out
}

/// Least-squares slope of y(x).
pub fn slope(x: &[f64], y: &[f64]) -> f64 {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = x.iter().map(|a| (a - mx).powi(2)).sum();
    sxy / sxx
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid(n: usize, a: f64, b: f64) -> Vec<f64> {
        (0..n).map(|k| a + (b - a) * k as f64 / (n - 1) as f64).collect()
    }

    #[test]
    fn maxima_of_sine() {
        let x = grid(401, 0.0, 4.0 * PI);
        let y: Vec<f64> = x.iter().map(|t| t.sin()).collect();
        let m = local_maxima(&x, &y);
        assert_eq!(m.len(), 2);
        assert!((m[0].0 - PI / 2.0).abs() < 1e-5);
        assert!((m[1].1 - 1.0).abs() < 1e-6);
        let lo = local_minima(&x, &y);
        assert!((lo[0].0 - 1.5 * PI).abs() < 1e-5);
    }

    #[test]
    fn period_from_crossings() {
        let x = grid(500, 0.0, 3.0);
        let y: Vec<f64> = x.iter().map(|t| 0.3 + (2.0 * PI * t / 0.9 + 0.4).cos()).collect();
        let p = mean_crossing_period(&x, &y).unwrap();
        assert!((p - 0.9).abs() < 2e-3, "{p}");
    }

    #[test]
    fn rise_measures_monotonicity() {
        assert_eq!(max_rise(&[3.0, 2.0, 2.0, 1.0]), 0.0);
        assert_eq!(max_rise(&[3.0, 1.0, 1.5, 0.5]), 0.5);
    }

    #[test]
    fn unwrap_and_slope() {
        let x = grid(200, 0.0, 20.0);
        let wrapped: Vec<f64> = x.iter().map(|t| crate::wrap_phase(1.1 * t + 0.2)).collect();
        let s = slope(&x, &unwrap(&wrapped));
        assert!((s - 1.1).abs() < 1e-12);
    }

    #[test]
    fn flip_location() {
        let x = grid(101, 0.0, 2.0);
        let p0: Vec<f64> = x.iter().map(|t| (t * 1.3_f64).cos().powi(2)).collect();
        let ph: Vec<f64> = x.iter().map(|t| if (t * 1.3_f64).cos() >= 0.0 { 0.0 } else { PI }).collect();
        let f = ground_phase_flip(&x, &p0, &ph).unwrap();
        assert!((f - PI / 2.6).abs() < 1e-3);
    }
}
