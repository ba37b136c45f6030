use super::success::{AssignTRandomParams, GeneralRandomParams};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Scheme {
    General,
    AssignT,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Optimum {
    /// Optimal transmit probability.
    pub p: f64,
    /// Success probability at `p`.
    pub value: f64,
}

const GRID: usize = 10_000;
const P_TOL: f64 = 1e-12;

/// Golden-section search for the maximum of a unimodal `f` on `[a, b]`.
pub fn golden_section_max<F: Fn(f64) -> f64>(f: F, mut a: f64, mut b: f64, tol: f64) -> (f64, f64) {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    while (b - a).abs() > tol {
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    let x = 0.5 * (a + b);
    (x, f(x))
}

struct Objective {
    scheme: Scheme,
    employed: f64,
    nodes: f64,
}

impl Objective {
    fn upper(&self) -> f64 {
        match self.scheme {
            Scheme::General => 1.0 / self.employed,
            Scheme::AssignT => 1.0,
        }
    }

    fn value(&self, p: f64) -> f64 {
        let (w, k) = (self.employed, self.nodes);
        if !(p > 0.0 && p < self.upper()) {
            return f64::NEG_INFINITY;
        }
        match self.scheme {
            Scheme::General => p * (1.0 - w * p) * (1.0 - p).powf(k - 2.0),
            Scheme::AssignT => p * (1.0 - p).powf(k / w) / (w - p),
        }
    }

    /// Derivative of the log objective; its sign change locates the maximum
    /// more finely than value comparisons near a flat top.
    fn log_slope(&self, p: f64) -> f64 {
        let (w, k) = (self.employed, self.nodes);
        match self.scheme {
            Scheme::General => 1.0 / p - w / (1.0 - w * p) - (k - 2.0) / (1.0 - p),
            Scheme::AssignT => 1.0 / p - (k / w) / (1.0 - p) + 1.0 / (w - p),
        }
    }
}

/// Maximises the scheme's per-slot success probability over its open domain:
/// a grid scan brackets the peak, golden-section search narrows it, and a
/// bisection on the log-derivative sign polishes the result.
pub fn optimize_random(employed: usize, nodes: usize, scheme: Scheme) -> Optimum {
    assert!(employed >= 1 && nodes >= 2, "need W >= 1 and K >= 2");
    let obj = Objective { scheme, employed: employed as f64, nodes: nodes as f64 };
    let hi = obj.upper();
    let step = hi / GRID as f64;
    let best = (1..GRID)
        .map(|i| i as f64 * step)
        .fold((0.0, f64::NEG_INFINITY), |acc, p| {
            let v = obj.value(p);
            if v > acc.1 {
                (p, v)
            } else {
                acc
            }
        })
        .0;
    let (lo, up) = ((best - step).max(step * 1e-6), (best + step).min(hi - step * 1e-6));
    let (mut x, _) = golden_section_max(|p| obj.value(p), lo, up, P_TOL);

    let (mut a, mut b) = (lo, up);
    if obj.log_slope(a) > 0.0 && obj.log_slope(b) < 0.0 {
        while b - a > f64::EPSILON * b.max(1e-300) * 4.0 {
            let mid = 0.5 * (a + b);
            if mid <= a || mid >= b {
                break;
            }
            if obj.log_slope(mid) > 0.0 {
                a = mid;
            } else {
                b = mid;
            }
        }
        let polished = 0.5 * (a + b);
        if (polished - x).abs() < 1e-6 {
            x = polished;
        }
    }
    let value = match scheme {
        Scheme::General => GeneralRandomParams::new(employed, nodes, x).map(|g| g.success()),
        Scheme::AssignT => AssignTRandomParams::balanced(employed, nodes, x).map(|a| a.success()),
    }
    .expect("optimum lies inside the domain");
    Optimum { p: x, value }
}
