//! Reference values computed without the library's quadrature.
//!
//! Profile heights are integrals of `φ/√(1-φ²)`, which blows up like
//! `1/√(s - a)` where `φ = ±1`. Substituting `s = a + τ²` near such an end
//! turns the integrand into a smooth function of `τ`, and an adaptive
//! five-point Gauss–Legendre rule (which never samples the endpoints) takes
//! care of the rest.
#![allow(dead_code)]

const GL_X: [f64; 5] = [
    0.0,
    -0.538_469_310_105_683_1,
    0.538_469_310_105_683_1,
    -0.906_179_845_938_664,
    0.906_179_845_938_664,
];
const GL_W: [f64; 5] = [
    0.568_888_888_888_888_9,
    0.478_628_670_499_366_5,
    0.478_628_670_499_366_5,
    0.236_926_885_056_189_1,
    0.236_926_885_056_189_1,
];

fn gauss5(f: &dyn Fn(f64) -> f64, a: f64, b: f64) -> f64 {
    let (m, h) = (0.5 * (a + b), 0.5 * (b - a));
    GL_X.iter().zip(GL_W).map(|(x, w)| w * f(m + h * x)).sum::<f64>() * h
}

fn adapt(f: &dyn Fn(f64) -> f64, a: f64, b: f64, whole: f64, tol: f64, depth: u32) -> f64 {
    let m = 0.5 * (a + b);
    let (left, right) = (gauss5(f, a, m), gauss5(f, m, b));
    let err = (left + right - whole).abs();
    if depth == 0 || err <= tol || !err.is_finite() {
        return left + right;
    }
    adapt(f, a, m, left, 0.5 * tol, depth - 1) + adapt(f, m, b, right, 0.5 * tol, depth - 1)
}

/// Adaptive Gauss–Legendre integral of `f` over `[a, b]`.
pub fn integrate(f: &dyn Fn(f64) -> f64, a: f64, b: f64) -> f64 {
    if a == b {
        return 0.0;
    }
    adapt(f, a, b, gauss5(f, a, b), 1e-13, 40)
}

/// A rotational profile described by its `1 - φ` and `1 + φ` (computed
/// without cancellation) and the ends where `φ = ±1`. `one_plus` takes both
/// `s` and the exact distance `T_H - s` to the far end.
pub struct Profile {
    pub one_minus: Box<dyn Fn(f64) -> f64>,
    pub one_plus: Box<dyn Fn(f64, f64) -> f64>,
    /// `φ(0) = 1`: the integrand is singular at 0.
    pub vertical_start: bool,
    /// Where `φ = -1`, if finite.
    pub end: f64,
}

impl Profile {
    pub fn phi(&self, s: f64) -> f64 {
        0.5 * ((self.one_plus)(s, self.end - s) - (self.one_minus)(s))
    }

    fn integrand(&self, s: f64, to_end: f64) -> f64 {
        let (m, p) = ((self.one_minus)(s), (self.one_plus)(s, to_end));
        0.5 * (p - m) / (m * p).sqrt()
    }

    /// `∫₀ˢ φ/√(1-φ²)`.
    pub fn height(&self, s: f64) -> f64 {
        // The split point keeps each substitution away from the other end.
        let mid = if self.end.is_finite() { 0.5 * self.end } else { f64::INFINITY };
        let mut total = 0.0;
        let lower_end = s.min(mid);
        if self.vertical_start {
            let f = |t: f64| 2.0 * t * self.integrand(t * t, self.end - t * t);
            total += integrate(&f, 0.0, lower_end.sqrt());
        } else {
            let f = |t: f64| self.integrand(t, self.end - t);
            total += integrate(&f, 0.0, lower_end);
        }
        if s > mid {
            let end = self.end;
            let f = |t: f64| 2.0 * t * self.integrand(end - t * t, t * t);
            total += integrate(&f, (end - s).max(0.0).sqrt(), (end - mid).sqrt());
        }
        total
    }
}

/// `T_H = ln((2H+1)/(2H-1))`, infinite for `H ≤ 1/2`. Written as
/// `ln(1 + 2/(2H-1))` to keep the last bit: heights behave like `√(T_H - s)`
/// at the far end, so an ulp in `T_H` costs about `1e-8` in height.
pub fn cutoff(h: f64) -> f64 {
    if h > 0.5 {
        (2.0 / (2.0 * h - 1.0)).ln_1p()
    } else {
        f64::INFINITY
    }
}

/// Profile with neck radius `r`: `sinh(r+s)·φ + 2H·cosh(r+s) = sinh r + 2H·cosh r`.
pub fn nodoid(h: f64, r: f64) -> Profile {
    Profile {
        // 1 - φ = 2 sinh(s/2)·(cosh(r+s/2) + 2H sinh(r+s/2)) / sinh(r+s)
        one_minus: Box::new(move |s: f64| {
            2.0 * (0.5 * s).sinh() * ((r + 0.5 * s).cosh() + 2.0 * h * (r + 0.5 * s).sinh()) / (r + s).sinh()
        }),
        one_plus: Box::new(move |s: f64, e: f64| {
            let t = cutoff(h);
            if t.is_finite() {
                // the numerator vanishes at T_H; factor out sinh((T_H - s)/2)
                let x = r + 0.5 * (s + t);
                2.0 * (0.5 * e).sinh() * (2.0 * h * x.sinh() - x.cosh()) / (r + s).sinh()
            } else {
                ((r + s).sinh() + r.sinh() + 2.0 * h * (r.cosh() - (r + s).cosh())) / (r + s).sinh()
            }
        }),
        vertical_start: true,
        end: cutoff(h),
    }
}

/// Profile about an ideal point: `φ = (1+2H)e^{-s} - 2H`.
pub fn horonodoid(h: f64) -> Profile {
    Profile {
        one_minus: Box::new(move |s: f64| -(1.0 + 2.0 * h) * (-s).exp_m1()),
        one_plus: Box::new(move |s: f64, e: f64| {
            let t = cutoff(h);
            if t.is_finite() {
                (1.0 + 2.0 * h) * (-t).exp() * e.exp_m1()
            } else {
                (1.0 + 2.0 * h) * (-s).exp() + 1.0 - 2.0 * h
            }
        }),
        vertical_start: true,
        end: cutoff(h),
    }
}

/// Cap profile for `H ≥ 1/2`: `φ = -2H·tanh(s/2)`.
pub fn cap(h: f64) -> Profile {
    Profile {
        one_minus: Box::new(move |s: f64| 1.0 + 2.0 * h * (0.5 * s).tanh()),
        one_plus: Box::new(move |s: f64, e: f64| {
            let t = cutoff(h);
            2.0 * h * (0.5 * e).sinh() / ((0.5 * t).cosh() * (0.5 * s).cosh())
        }),
        vertical_start: false,
        end: cutoff(h),
    }
}

/// Sorted `n` points spread over `(0, end]`.
pub fn samples(end: f64, n: usize) -> Vec<f64> {
    (1..=n).map(|k| end * k as f64 / n as f64).collect()
}
