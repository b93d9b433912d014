//! One-dimensional root bracketing, bisection and golden-section search.

/// Outcome of [`bisect`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Root {
    pub x: f64,
    pub iterations: usize,
    /// Final bracket width.
    pub width: f64,
}

/// Bisection on a sign change of `f` in `[lo, hi]`.
///
/// Runs until the bracket is narrower than `xtol` or can no longer be split
/// in floating point. Returns `None` when the endpoints do not bracket a root.
pub fn bisect<F>(mut f: F, mut lo: f64, mut hi: f64, xtol: f64, max_iter: usize) -> Option<Root>
where
    F: FnMut(f64) -> f64,
{
    let mut flo = f(lo);
    let fhi = f(hi);
    if !(flo.is_finite() && fhi.is_finite()) || flo.signum() == fhi.signum() {
        if flo == 0.0 {
            return Some(Root { x: lo, iterations: 0, width: 0.0 });
        }
        if fhi == 0.0 {
            return Some(Root { x: hi, iterations: 0, width: 0.0 });
        }
        return None;
    }
    let mut iterations = 0;
    while iterations < max_iter && (hi - lo) > xtol {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        iterations += 1;
        let fm = f(mid);
        if fm == 0.0 {
            return Some(Root { x: mid, iterations, width: 0.0 });
        }
        if fm.signum() == flo.signum() {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    Some(Root { x: 0.5 * (lo + hi), iterations, width: hi - lo })
}

/// Samples `f` on `n + 1` evenly spaced points of `[lo, hi]` and returns
/// every sub-interval whose endpoints differ in sign.
pub fn sign_changes<F>(mut f: F, lo: f64, hi: f64, n: usize) -> Vec<(f64, f64)>
where
    F: FnMut(f64) -> f64,
{
    let n = n.max(1);
    let step = (hi - lo) / n as f64;
    let mut out = Vec::new();
    let mut x_prev = lo;
    let mut f_prev = f(lo);
    for i in 1..=n {
        let x = if i == n { hi } else { lo + step * i as f64 };
        let fx = f(x);
        if f_prev == 0.0 || (f_prev.signum() != fx.signum() && fx != 0.0) {
            out.push((x_prev, x));
        }
        x_prev = x;
        f_prev = fx;
    }
    out
}

/// Result of [`golden_max`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Extremum {
    pub x: f64,
    pub value: f64,
    pub iterations: usize,
}

/// Golden-section search for the maximum of a unimodal `f` on `[lo, hi]`.
pub fn golden_max<F>(mut f: F, mut lo: f64, mut hi: f64, xtol: f64, max_iter: usize) -> Extremum
where
    F: FnMut(f64) -> f64,
{
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    let mut iterations = 0;
    while iterations < max_iter && (hi - lo) > xtol {
        iterations += 1;
        if f1 >= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = f(x2);
        }
    }
    if f1 >= f2 {
        Extremum { x: x1, value: f1, iterations }
    } else {
        Extremum { x: x2, value: f2, iterations }
    }
}

/// `n` evenly spaced points from `start` to `stop` inclusive.
pub fn linspace(start: f64, stop: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![start],
        _ => {
            let step = (stop - start) / (n - 1) as f64;
            (0..n)
                .map(|i| if i == n - 1 { stop } else { start + step * i as f64 })
                .collect()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bisect_finds_sqrt_two() {
        let r = bisect(|x| x * x - 2.0, 0.0, 2.0, 0.0, 200).unwrap();
        assert!((r.x - 2f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn bisect_rejects_non_bracket() {
        assert!(bisect(|x| x * x + 1.0, -1.0, 1.0, 0.0, 100).is_none());
    }

    #[test]
    fn sign_changes_of_sine() {
        let b = sign_changes(f64::sin, 0.5, 10.0, 100);
        assert_eq!(b.len(), 3);
        for (lo, hi) in b {
            let k = ((lo + hi) / 2.0 / std::f64::consts::PI).round();
            assert!(lo <= k * std::f64::consts::PI && k * std::f64::consts::PI <= hi);
        }
    }

    #[test]
    fn golden_finds_parabola_peak() {
        let e = golden_max(|x| -(x - 0.3) * (x - 0.3), -1.0, 2.0, 1e-10, 200);
        assert!((e.x - 0.3).abs() < 1e-8);
    }

    #[test]
    fn linspace_endpoints() {
        let v = linspace(-0.5, 0.5, 201);
        assert_eq!(v.len(), 201);
        assert_eq!(v[0], -0.5);
        assert_eq!(v[200], 0.5);
        assert_eq!(v[100], 0.0);
    }
}
