use rug::{Assign, Float, Rational};

/// Inflation applied to every radius computed in `f64`, covering the
/// rounding of the radius arithmetic itself.
const INFLATE: f64 = 1.0 + 1e-12;

/// Real ball `mid ± rad`: the exact value lies in `[mid - rad, mid + rad]`.
#[derive(Clone, Debug, PartialEq)]
pub struct Ball {
    pub mid: Float,
    pub rad: f64,
}

fn unit(prec: u32) -> f64 {
    (-(prec as f64)).exp2()
}

fn mag(x: &Float) -> f64 {
    x.to_f64().abs() * (1.0 + 1e-15)
}

impl Ball {
    pub fn exact(mid: Float) -> Ball {
        Ball { mid, rad: 0.0 }
    }

    /// Rounds an exact rational to the working precision.
    pub fn from_rational(x: &Rational, prec: u32) -> Ball {
        let mid = Float::with_val(prec, x);
        let rad = mag(&mid) * unit(prec) * 2.0;
        Ball { mid, rad }
    }

    pub fn prec(&self) -> u32 {
        self.mid.prec()
    }

    pub fn lower(&self) -> f64 {
        // Rounding the midpoint to f64 loses up to half an ulp.
        let m = self.mid.to_f64();
        m - self.rad - m.abs() * 2.0 * f64::EPSILON
    }

    pub fn upper(&self) -> f64 {
        let m = self.mid.to_f64();
        m + self.rad + m.abs() * 2.0 * f64::EPSILON
    }

    /// `|x|` as a ball.
    pub fn abs(&self) -> Ball {
        let mid = Float::with_val(self.prec(), self.mid.abs_ref());
        Ball { mid, rad: self.rad }
    }

    pub fn mul(&self, other: &Ball) -> Ball {
        let prec = self.prec().max(other.prec());
        let mid = Float::with_val(prec, &self.mid * &other.mid);
        let rad = (mag(&self.mid) + self.rad) * other.rad
            + mag(&other.mid) * self.rad
            + mag(&mid) * unit(prec);
        Ball {
            mid,
            rad: rad * INFLATE,
        }
    }

    pub fn add(&self, other: &Ball) -> Ball {
        let prec = self.prec().max(other.prec());
        let mid = Float::with_val(prec, &self.mid + &other.mid);
        let rad = self.rad + other.rad + mag(&mid) * unit(prec);
        Ball {
            mid,
            rad: rad * INFLATE,
        }
    }

    pub fn square(&self) -> Ball {
        let prec = self.prec();
        let mid = Float::with_val(prec, self.mid.square_ref());
        let m = mag(&self.mid);
        let rad = (2.0 * m + self.rad) * self.rad + mag(&mid) * unit(prec);
        Ball {
            mid,
            rad: rad * INFLATE,
        }
    }

    /// `cos` and `sin` of `x = mid ± rad` (both functions are 1-Lipschitz).
    pub fn cos_sin(&self) -> (Ball, Ball) {
        let prec = self.prec();
        let (s, c) = self.mid.clone().sin_cos(Float::new(prec));
        let rad = (self.rad + unit(prec)) * INFLATE;
        (Ball { mid: c, rad }, Ball { mid: s, rad })
    }
}

/// Horner evaluation of a polynomial with ball coefficients at a complex
/// ball point `x + iy`, reusing scratch storage between calls.
pub struct ComplexHorner {
    prec: u32,
    re: Float,
    im: Float,
    t1: Float,
    t2: Float,
    t3: Float,
}

impl ComplexHorner {
    pub fn new(prec: u32) -> Self {
        ComplexHorner {
            prec,
            re: Float::new(prec),
            im: Float::new(prec),
            t1: Float::new(prec),
            t2: Float::new(prec),
            t3: Float::new(prec),
        }
    }

    /// Returns `(Re p(z), Im p(z))` with `coeffs[k]` the coefficient of `z^k`.
    pub fn eval(&mut self, coeffs: &[Ball], x: &Ball, y: &Ball) -> (Ball, Ball) {
        let u = unit(self.prec);
        let top = coeffs.last().expect("non-empty polynomial");
        self.re.assign(&top.mid);
        self.im.assign(0);
        let (mut rr, mut ri) = (top.rad, 0.0);
        let (mx, my) = (mag(&x.mid), mag(&y.mid));
        for c in coeffs.iter().rev().skip(1) {
            let (ar, ai) = (mag(&self.re), mag(&self.im));
            // re' = re*x - im*y + c
            self.t1.assign(&self.re * &x.mid);
            self.t2.assign(&self.im * &y.mid);
            self.t1 -= &self.t2;
            self.t1 += &c.mid;
            // im' = re*y + im*x
            self.t3.assign(&self.re * &y.mid);
            self.t2.assign(&self.im * &x.mid);
            self.t3 += &self.t2;
            let new_rr = (ar + rr) * x.rad
                + mx * rr
                + (ai + ri) * y.rad
                + my * ri
                + c.rad
                + 4.0 * u * (ar * mx + ai * my + mag(&c.mid));
            let new_ri = (ar + rr) * y.rad
                + my * rr
                + (ai + ri) * x.rad
                + mx * ri
                + 4.0 * u * (ar * my + ai * mx);
            rr = new_rr * INFLATE;
            ri = new_ri * INFLATE;
            std::mem::swap(&mut self.re, &mut self.t1);
            std::mem::swap(&mut self.im, &mut self.t3);
        }
        (
            Ball {
                mid: self.re.clone(),
                rad: rr,
            },
            Ball {
                mid: self.im.clone(),
                rad: ri,
            },
        )
    }
}

/// Horner evaluation of a real polynomial at a real ball point.
pub struct RealHorner {
    prec: u32,
    acc: Float,
    tmp: Float,
}

impl RealHorner {
    pub fn new(prec: u32) -> Self {
        RealHorner {
            prec,
            acc: Float::new(prec),
            tmp: Float::new(prec),
        }
    }

    pub fn eval(&mut self, coeffs: &[Ball], x: &Ball) -> Ball {
        let u = unit(self.prec);
        let top = coeffs.last().expect("non-empty polynomial");
        self.acc.assign(&top.mid);
        let mut rad = top.rad;
        let mx = mag(&x.mid);
        for c in coeffs.iter().rev().skip(1) {
            let a = mag(&self.acc);
            self.tmp.assign(&self.acc * &x.mid);
            self.tmp += &c.mid;
            rad = ((a + rad) * x.rad + mx * rad + c.rad + 2.0 * u * (a * mx + mag(&c.mid))) * INFLATE;
            std::mem::swap(&mut self.acc, &mut self.tmp);
        }
        Ball {
            mid: self.acc.clone(),
            rad,
        }
    }
}
