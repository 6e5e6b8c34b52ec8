use num_integer::Integer;

use crate::error::{invalid, Result};

/// Points of `[0, 1)` with minimum circular distance `delta`.
///
/// Farey points keep their fractions so exponentials can be reduced exactly.
#[derive(Clone, Debug, PartialEq)]
pub struct SeparatedPoints {
    pub points: Vec<f64>,
    pub delta: f64,
    /// `(a, q)` for each point when it is a fraction `a / q`.
    pub fractions: Option<Vec<(u64, u64)>>,
}

impl SeparatedPoints {
    /// Arbitrary points; `delta` is the measured minimum circular distance.
    ///
    /// A single point is given `delta = 1`.
    pub fn new(points: Vec<f64>) -> Result<Self> {
        if points.is_empty() {
            return Err(invalid("empty point set"));
        }
        if points.iter().any(|t| !(0.0..1.0).contains(t)) {
            return Err(invalid("points must lie in [0, 1)"));
        }
        let delta = min_circular_distance(&points);
        if delta <= 0.0 {
            return Err(invalid("points are not separated"));
        }
        Ok(SeparatedPoints {
            points,
            delta,
            fractions: None,
        })
    }

    /// Fractions `a / q` with `0 <= a < q`; `delta` computed exactly.
    pub fn from_fractions(fractions: Vec<(u64, u64)>) -> Result<Self> {
        if fractions.is_empty() {
            return Err(invalid("empty point set"));
        }
        let mut sorted = fractions.clone();
        sorted.sort_by(|x, y| (x.0 * y.1).cmp(&(y.0 * x.1)));
        let mut best = (1u64, 1u64);
        if sorted.len() > 1 {
            for i in 0..sorted.len() {
                let (a, q) = sorted[i];
                // The successor of the last point is the first one shifted by 1.
                let (b, r) = match sorted.get(i + 1) {
                    Some(&next) => next,
                    None => (sorted[0].0 + sorted[0].1, sorted[0].1),
                };
                let num = b * q - a * r;
                let den = q * r;
                if num == 0 {
                    return Err(invalid("repeated fraction"));
                }
                if num * best.1 < best.0 * den {
                    best = (num, den);
                }
            }
        }
        let g = best.0.gcd(&best.1);
        let delta = (best.0 / g) as f64 / (best.1 / g) as f64;
        Ok(SeparatedPoints {
            points: fractions.iter().map(|&(a, q)| a as f64 / q as f64).collect(),
            delta,
            fractions: Some(fractions),
        })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// `delta^{-1}`, exact for Farey points.
    pub fn inverse_delta(&self) -> f64 {
        1.0 / self.delta
    }
}

fn min_circular_distance(points: &[f64]) -> f64 {
    if points.len() == 1 {
        return 1.0;
    }
    let mut s = points.to_vec();
    s.sort_by(f64::total_cmp);
    let mut best = 1.0 + s[0] - s[s.len() - 1];
    for w in s.windows(2) {
        best = f64::min(best, w[1] - w[0]);
    }
    best
}

/// `a / q` for `1 <= q <= Q`, `(a, q) = 1`, `0 <= a < q`, ordered by `q` then `a`.
pub fn farey_fractions(big_q: u64) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    for q in 1..=big_q {
        for a in 0..q {
            if a.gcd(&q) == 1 {
                out.push((a, q));
            }
        }
    }
    out
}

/// Farey points of order `Q`, with `delta = 1 / (Q (Q - 1))`.
pub fn farey_points(big_q: u64) -> Result<SeparatedPoints> {
    if big_q < 2 {
        return Err(invalid(format!("Farey order must be at least 2, got {big_q}")));
    }
    let fractions = farey_fractions(big_q);
    Ok(SeparatedPoints {
        points: fractions.iter().map(|&(a, q)| a as f64 / q as f64).collect(),
        delta: 1.0 / (big_q * (big_q - 1)) as f64,
        fractions: Some(fractions),
    })
}

/// Minimum circular distance over all pairs, as an exact fraction `(num, den)`.
pub fn exhaustive_min_distance(fractions: &[(u64, u64)]) -> (u64, u64) {
    let mut best = (1u64, 1u64);
    for (i, &(a, q)) in fractions.iter().enumerate() {
        for &(b, r) in &fractions[i + 1..] {
            let (x, y) = ((a * r) as i64, (b * q) as i64);
            let den = q * r;
            let diff = (x - y).unsigned_abs();
            let circ = diff.min(den - diff);
            if circ * best.1 < best.0 * den {
                best = (circ, den);
            }
        }
    }
    let g = best.0.gcd(&best.1);
    (best.0 / g, best.1 / g)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_orders() {
        let two = farey_points(2).unwrap();
        assert_eq!(two.fractions.as_ref().unwrap(), &vec![(0, 1), (1, 2)]);
        assert_eq!(two.delta, 0.5);
        let three = farey_points(3).unwrap();
        assert_eq!(three.len(), 4);
        assert_eq!(three.delta, 1.0 / 6.0);
        assert!(farey_points(1).is_err());
    }

    #[test]
    fn measured_delta_matches_formula() {
        for q in 2..=12u64 {
            let f = farey_fractions(q);
            assert_eq!(exhaustive_min_distance(&f), (1, q * (q - 1)));
            let s = SeparatedPoints::from_fractions(f).unwrap();
            assert!((s.delta - 1.0 / (q * (q - 1)) as f64).abs() < 1e-15);
        }
    }

    #[test]
    fn arbitrary_points() {
        let s = SeparatedPoints::new(vec![0.1, 0.5, 0.95]).unwrap();
        assert!((s.delta - 0.15).abs() < 1e-12);
        assert!(SeparatedPoints::new(vec![0.2, 0.2]).is_err());
        assert_eq!(SeparatedPoints::new(vec![0.3]).unwrap().delta, 1.0);
    }
}
