//! Certified isolation of the dominant singularity `alpha` of the
//! second-moment generating function `S(z)`, as the unique root of
//! `U(z) = exp(-int_0^z S(x)/x dx)` in the disk `|z| <= 1/2`.
//!
//! The steps: the recurrence for `u_n`, geometric bounds on `e_n` and
//! `u_n`, tail bounds for truncations of `U`, grid minima under ball
//! arithmetic for the Rouché and quotient arguments, and an exact dyadic
//! bisection that gives `alpha` and `k_v = 1/alpha`.

mod ball;
mod bounds;
mod grid;
mod root;
mod useq;

use rug::Rational;
use serde::Serialize;

use crate::error::Result;
use crate::model::Model;
use crate::momentseries::mean_seq;
use crate::numeric::serialize_rational;

pub use ball::{Ball, ComplexHorner, RealHorner};
pub use bounds::{
    check_geometric_bound, mean_bound, tail_bound, u_bound, BoundCertificate, EXTENDED_RANGE,
    MEAN_BOUND_BASE, MEAN_BOUND_LEMMA, U_BOUND_BASE, U_BOUND_LEMMA,
};
pub use grid::{
    beta_tilde, bound_constants, grid_minima, quotient_coefficients, scan_g, scan_s,
    BoundConstants, GridConfig, GridMin, GridReport, DEFAULT_GRID_PRECISION, FULL_G_POINTS,
    FULL_S_STEPS, MAX_GRID_PRECISION, U1_DEGREE,
};
pub use root::{
    certify_alpha, polynomial_root_checks, CertifiedRoot, ExactPoly, PolynomialRootChecks,
    BISECTION_STEPS, TILDE_DEGREE,
};
pub use useq::{u_seq, U_SEQ_CAP};

/// Base ranges of both bounds plus the extended regression ranges.
pub fn verify_bounds() -> Result<Vec<BoundCertificate>> {
    let e = mean_seq(Model::YuleHarding, EXTENDED_RANGE)?;
    let u = u_seq(EXTENDED_RANGE)?;
    verify_bounds_with(&e, &u)
}

pub fn verify_bounds_with(
    e: &crate::momentseries::RationalSeq,
    u: &crate::momentseries::RationalSeq,
) -> Result<Vec<BoundCertificate>> {
    let extended = e.last_index().min(u.last_index());
    Ok(vec![
        mean_bound(e, MEAN_BOUND_BASE)?,
        u_bound(u, U_BOUND_BASE)?,
        mean_bound(e, extended)?,
        u_bound(u, extended)?,
    ])
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TailCertificate {
    pub k: usize,
    #[serde(serialize_with = "serialize_rational")]
    pub bound: Rational,
    pub decimal: f64,
}

impl TailCertificate {
    pub fn new(k: usize) -> Self {
        let bound = tail_bound(k);
        TailCertificate {
            k,
            decimal: bound.to_f64(),
            bound,
        }
    }
}

/// The boundary comparison `|U_1| >= 3/1000 > |U_2|` on `|z| = 1/2`, and
/// the inputs of the uniqueness argument for the root of `U_1`. Rouché's
/// theorem itself is taken as given.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RoucheCertificate {
    #[serde(serialize_with = "serialize_rational")]
    pub u1_boundary_lower: Rational,
    #[serde(serialize_with = "serialize_rational")]
    pub tail: Rational,
    pub boundary_dominates: bool,
    pub quotient_nonvanishing: bool,
    pub polynomial: PolynomialRootChecks,
    pub r_bound_below_3235: bool,
    pub reduced_confidence: bool,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CertificationReport {
    pub bounds: Vec<BoundCertificate>,
    pub tails: Vec<TailCertificate>,
    pub grid: GridReport,
    pub rouche: RoucheCertificate,
    pub root: CertifiedRoot,
    /// All checks closed on full-density grids.
    pub certified: bool,
}

pub fn run_certification(config: &GridConfig) -> Result<CertificationReport> {
    run_certification_with_tail(config, 100)
}

/// The full pipeline; `extra_tail` adds one more tail bound to the report.
pub fn run_certification_with_tail(config: &GridConfig, extra_tail: usize) -> Result<CertificationReport> {
    let e = mean_seq(Model::YuleHarding, EXTENDED_RANGE)?;
    let u = u_seq(EXTENDED_RANGE)?;
    let bounds = verify_bounds_with(&e, &u)?;
    let mut ks = vec![U1_DEGREE, TILDE_DEGREE, extra_tail];
    ks.sort_unstable();
    ks.dedup();
    let tails: Vec<TailCertificate> = ks.into_iter().map(TailCertificate::new).collect();
    let grid = grid_minima(&u, config)?;
    let polynomial = polynomial_root_checks(&u);
    let u1_boundary_lower = Rational::from((3, 1000));
    let tail = tail_bound(U1_DEGREE);
    let boundary_dominates = grid.boundary_closed && u1_boundary_lower > tail;
    let r_bound_below_3235 = grid.constants.r_bound < 3235;
    let quotient_nonvanishing =
        grid.interior_closed && r_bound_below_3235 && polynomial.beta_enclosed;
    let holds = boundary_dominates && quotient_nonvanishing && polynomial.sign_change_on_half_disk_radius;
    let rouche = RoucheCertificate {
        u1_boundary_lower,
        tail,
        boundary_dominates,
        quotient_nonvanishing,
        polynomial,
        r_bound_below_3235,
        reduced_confidence: grid.reduced_confidence,
        holds,
    };
    let root = certify_alpha(&u)?;
    let certified = holds && !grid.reduced_confidence;
    Ok(CertificationReport {
        bounds,
        tails,
        grid,
        rouche,
        root,
        certified,
    })
}
