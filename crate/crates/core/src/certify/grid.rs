use std::thread;

use rug::float::Constant;
use rug::ops::Pow;
use rug::{Float, Integer, Rational};
use serde::Serialize;

use crate::certify::ball::{Ball, ComplexHorner, RealHorner};
use crate::error::{Error, Result};
use crate::momentseries::RationalSeq;
use crate::numeric::serialize_rational;

/// Degree of the polynomial part `U_1`.
pub const U1_DEGREE: usize = 100;

pub const FULL_G_POINTS: usize = 1_000_000;
pub const FULL_S_STEPS: usize = 1000;
pub const DEFAULT_GRID_PRECISION: u32 = 256;
pub const MAX_GRID_PRECISION: u32 = 2048;

/// Dyadic approximation `1101127027820569 / 2^51` of the root of `U_1`.
pub fn beta_tilde() -> Rational {
    Rational::from((Integer::from(1_101_127_027_820_569u64), Integer::from(1) << 51))
}

/// `355/113 > pi`, used where the closure inequalities need an upper bound.
fn pi_upper() -> Rational {
    Rational::from((355, 113))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GridConfig {
    /// `G` is sampled at `t = k pi / g_points`, `k = 0..=g_points`.
    pub g_points: usize,
    /// `S` is sampled at `r = k / (2 s_r_steps)`, `k = 0..=s_r_steps`.
    pub s_r_steps: usize,
    /// and `theta = j pi / s_theta_steps`, `j = 0..=s_theta_steps`.
    pub s_theta_steps: usize,
    pub precision: u32,
    pub threads: usize,
}

impl Default for GridConfig {
    fn default() -> Self {
        GridConfig::scaled(1.0)
    }
}

impl GridConfig {
    /// Grids with every density multiplied by `scale` (at most 1).
    pub fn scaled(scale: f64) -> GridConfig {
        let scale = scale.clamp(1e-6, 1.0);
        let steps = |full: usize| ((full as f64 * scale).round() as usize).max(1);
        GridConfig {
            g_points: steps(FULL_G_POINTS),
            s_r_steps: steps(FULL_S_STEPS),
            s_theta_steps: steps(FULL_S_STEPS),
            precision: DEFAULT_GRID_PRECISION,
            threads: thread::available_parallelism().map_or(1, |n| n.get()),
        }
    }

    pub fn is_reduced(&self) -> bool {
        self.g_points < FULL_G_POINTS
            || self.s_r_steps < FULL_S_STEPS
            || self.s_theta_steps < FULL_S_STEPS
    }
}

/// Constants of the boundary and interior arguments, exact.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundConstants {
    /// `4 (sum_{k<=100} (9/10)^k)(sum_{k<=100} k (9/10)^k)`, bounding `|G'|`.
    #[serde(serialize_with = "serialize_rational")]
    pub derivative_bound: Rational,
    /// `sum_l l |a_l| (1/2)^(l-1)`, bounding `|grad S|`.
    #[serde(serialize_with = "serialize_rational")]
    pub gradient_bound: Rational,
    /// Bound on `|R(z)|` over the disk.
    #[serde(serialize_with = "serialize_rational")]
    pub r_bound: Rational,
    pub derivative_bound_decimal: f64,
    pub gradient_bound_decimal: f64,
    pub r_bound_decimal: f64,
}

/// `a_l = sum_{k=l+1}^{100} u_k beta~^(k-1-l)`, coefficients of
/// `(U_1(z) - U_1(beta~)) / (z - beta~)`.
pub fn quotient_coefficients(u: &RationalSeq) -> Vec<Rational> {
    let beta = beta_tilde();
    let mut a = vec![Rational::new(); U1_DEGREE];
    a[U1_DEGREE - 1] = u.at(U1_DEGREE).clone();
    for l in (0..U1_DEGREE - 1).rev() {
        a[l] = Rational::from(&a[l + 1] * &beta) + u.at(l + 1);
    }
    a
}

pub fn bound_constants(u: &RationalSeq) -> BoundConstants {
    let nine_tenths = Rational::from((9, 10));
    let mut s0 = Rational::new();
    let mut s1 = Rational::new();
    for k in 0..=U1_DEGREE {
        let p = Rational::from((&nine_tenths).pow(k as u32));
        s1 += Rational::from(&p * k as u32);
        s0 += p;
    }
    let derivative_bound = s0 * s1 * 4u32;

    let half = Rational::from((1, 2));
    let mut gradient_bound = Rational::new();
    for (l, a) in quotient_coefficients(u).iter().enumerate().skip(1) {
        let w = Rational::from((&half).pow(l as u32 - 1));
        gradient_bound += Rational::from(a.abs_ref()) * w * l as u32;
    }

    // sum_l sum_{k=l+2}^{100} (k-1-l) (9/5)^k (1/2)^(k-2)
    let mut r_bound = Rational::new();
    for l in 0..U1_DEGREE {
        for k in l + 2..=U1_DEGREE {
            let term = Rational::from((9, 10)).pow(k as u32) * 4u32 * (k - 1 - l) as u32;
            r_bound += term;
        }
    }
    BoundConstants {
        derivative_bound_decimal: derivative_bound.to_f64(),
        gradient_bound_decimal: gradient_bound.to_f64(),
        r_bound_decimal: r_bound.to_f64(),
        derivative_bound,
        gradient_bound,
        r_bound,
    }
}

/// Minimum over one grid: the midpoint value at the argmin and a certified
/// lower bound for the minimum over all grid points.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GridMin {
    pub value: f64,
    pub radius: f64,
    pub lower: f64,
    pub upper: f64,
    pub argmin: (usize, usize),
}

impl GridMin {
    fn merge(self, other: GridMin) -> GridMin {
        let lower = self.lower.min(other.lower);
        let best = if other.value < self.value || (other.value == self.value && other.argmin < self.argmin) {
            other
        } else {
            self
        };
        GridMin { lower, ..best }
    }
}

fn min_candidate(b: &Ball, argmin: (usize, usize)) -> GridMin {
    GridMin {
        value: b.mid.to_f64(),
        radius: b.rad,
        lower: b.lower(),
        upper: b.upper(),
        argmin,
    }
}

/// Angle `num * pi / den` as a ball.
fn angle(num: usize, den: usize, prec: u32) -> Ball {
    let pi = Float::with_val(prec, Constant::Pi);
    let mid = pi * num as u64 / den as u64;
    let rad = mid.to_f64().abs() * 4.0 * (-(prec as f64)).exp2();
    Ball { mid, rad }
}

fn chunks(len: usize, parts: usize) -> Vec<(usize, usize)> {
    let parts = parts.clamp(1, len.max(1));
    let size = len.div_ceil(parts);
    (0..parts)
        .map(|i| (i * size, ((i + 1) * size).min(len)))
        .filter(|(a, b)| a < b)
        .collect()
}

/// `min G(t)` over `t = k pi / N`, `G(t) = |U_1(e^{it}/2)|^2`.
pub fn scan_g(u: &RationalSeq, points: usize, prec: u32, threads: usize) -> GridMin {
    let half = Rational::from((1, 2));
    let coeffs: Vec<Ball> = (0..=U1_DEGREE)
        .map(|k| {
            let c = u.at(k) * Rational::from((&half).pow(k as u32));
            Ball::from_rational(&c, prec)
        })
        .collect();
    let parts = chunks(points + 1, threads);
    thread::scope(|scope| {
        let handles: Vec<_> = parts
            .iter()
            .map(|&(a, b)| {
                let coeffs = &coeffs;
                scope.spawn(move || {
                    let mut horner = ComplexHorner::new(prec);
                    let mut best: Option<GridMin> = None;
                    for k in a..b {
                        let (x, y) = angle(k, points, prec).cos_sin();
                        let (re, im) = horner.eval(coeffs, &x, &y);
                        let g = re.square().add(&im.square());
                        let cand = min_candidate(&g, (k, 0));
                        best = Some(match best {
                            None => cand,
                            Some(b) => b.merge(cand),
                        });
                    }
                    best.expect("non-empty chunk")
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("grid worker"))
            .reduce(GridMin::merge)
            .expect("non-empty grid")
    })
}

/// `min |S(r, theta)|` over `r = k / (2 R)`, `theta = j pi / T`, with
/// `S(r, theta) = sum_l a_l r^l cos(l theta)`.
pub fn scan_s(a: &[Rational], r_steps: usize, theta_steps: usize, prec: u32, threads: usize) -> GridMin {
    let coeffs: Vec<Ball> = a.iter().map(|x| Ball::from_rational(x, prec)).collect();
    let radii: Vec<Ball> = (0..=r_steps)
        .map(|k| Ball::from_rational(&Rational::from((k as u64, 2 * r_steps as u64)), prec))
        .collect();
    let parts = chunks(theta_steps + 1, threads);
    thread::scope(|scope| {
        let handles: Vec<_> = parts
            .iter()
            .map(|&(lo, hi)| {
                let coeffs = &coeffs;
                let radii = &radii;
                scope.spawn(move || {
                    let mut horner = RealHorner::new(prec);
                    let mut best: Option<GridMin> = None;
                    for j in lo..hi {
                        let theta = angle(j, theta_steps, prec);
                        let b: Vec<Ball> = coeffs
                            .iter()
                            .enumerate()
                            .map(|(l, c)| {
                                let lt = Ball {
                                    mid: Float::with_val(prec, &theta.mid * l as u32),
                                    rad: theta.rad * l as f64 + theta.mid.to_f64() * l as f64 * 2.0 * (-(prec as f64)).exp2(),
                                };
                                c.mul(&lt.cos_sin().0)
                            })
                            .collect();
                        for (k, r) in radii.iter().enumerate() {
                            let s = horner.eval(&b, r).abs();
                            let cand = min_candidate(&s, (k, j));
                            let cand = GridMin {
                                lower: cand.lower.max(0.0),
                                ..cand
                            };
                            best = Some(match best {
                                None => cand,
                                Some(b) => b.merge(cand),
                            });
                        }
                    }
                    best.expect("non-empty chunk")
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("grid worker"))
            .reduce(GridMin::merge)
            .expect("non-empty grid")
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GridReport {
    pub config: GridConfig,
    pub reduced_confidence: bool,
    pub precision_used: u32,
    pub g: GridMin,
    pub s: GridMin,
    pub constants: BoundConstants,
    /// `G >= 1/100` on the grid and `|G'| h / 2 < 1/100 - 9/10^6`, hence
    /// `|U_1| >= 3/1000` on the boundary circle.
    pub boundary_closed: bool,
    /// `|S| >= 9/10` on the grid and `|grad S| d < 9/10 - 3235/2^50`, hence
    /// `|Re Q| >= 3235/2^50` on the disk.
    pub interior_closed: bool,
}

/// Outcome of one threshold comparison under ball arithmetic.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Verdict {
    Above,
    Below,
    Ambiguous,
}

fn compare(m: &GridMin, threshold: f64) -> Verdict {
    if m.lower >= threshold {
        Verdict::Above
    } else if m.upper < threshold {
        Verdict::Below
    } else {
        Verdict::Ambiguous
    }
}

/// Scans both grids, doubling the precision until the minima compare
/// unambiguously against the thresholds `1/100` and `9/10`.
pub fn grid_minima(u: &RationalSeq, config: &GridConfig) -> Result<GridReport> {
    let constants = bound_constants(u);
    let a = quotient_coefficients(u);
    let mut prec = config.precision;
    let (g, s, g_ok, s_ok) = loop {
        let g = scan_g(u, config.g_points, prec, config.threads);
        let s = scan_s(&a, config.s_r_steps, config.s_theta_steps, prec, config.threads);
        let (gv, sv) = (compare(&g, 0.01), compare(&s, 0.9));
        if gv != Verdict::Ambiguous && sv != Verdict::Ambiguous {
            break (g, s, gv == Verdict::Above, sv == Verdict::Above);
        }
        if prec >= MAX_GRID_PRECISION {
            return Err(Error::Certification(format!(
                "grid minima remain ambiguous at {prec} bits"
            )));
        }
        prec *= 2;
    };

    // h/2 = pi / (2N) for the boundary grid.
    let g_step = pi_upper() / (2 * config.g_points as u64);
    let boundary_gap = Rational::from((1, 100)) - Rational::from((9, 1_000_000));
    let boundary_closed = g_ok && Rational::from(&constants.derivative_bound * &g_step) < boundary_gap;

    // Distance to the nearest grid point is at most half the cell diagonal.
    let hr = Rational::from((1, 2 * config.s_r_steps as u64));
    let ht = pi_upper() / config.s_theta_steps as u64;
    let dist2 = (Rational::from(hr.square_ref()) + Rational::from(ht.square_ref())) / 4u32;
    let q_floor = Rational::from((Integer::from(3235), Integer::from(1) << 50));
    let interior_gap = Rational::from((9, 10)) - &q_floor;
    let lhs = Rational::from(constants.gradient_bound.square_ref()) * dist2;
    let interior_closed = s_ok && lhs < Rational::from(interior_gap.square_ref());

    Ok(GridReport {
        config: config.clone(),
        reduced_confidence: config.is_reduced(),
        precision_used: prec,
        g,
        s,
        constants,
        boundary_closed,
        interior_closed,
    })
}
