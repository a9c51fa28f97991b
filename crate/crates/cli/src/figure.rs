//! Data behind the figures: CDF tables, moment comparisons and the shape
//! census.

use confign_core::configcore::root_config_count;
use confign_core::distribution::{cdf_table, figure_grid, max_normal_deviation, CdfRow};
use confign_core::momentseries::{mean_seq, variance_seq};
use confign_core::numeric::{ln_integer_f64, normal_cdf, pearson};
use confign_core::treekit::{enumerate_shapes, labeled_history_count};
use confign_core::{Model, Result};
use rug::{Integer, Rational};

pub const CDF_FIGURE_N: usize = 15;
pub const SERIES_FIRST: usize = 2;
pub const SERIES_LAST: usize = 20;
pub const CENSUS_N: usize = 15;

pub struct CdfFigure {
    pub model: Model,
    pub n: usize,
    pub rows: Vec<CdfRow>,
}

impl CdfFigure {
    pub fn max_normal_deviation(&self) -> f64 {
        max_normal_deviation(&self.rows)
    }

    pub fn is_monotone(&self) -> bool {
        self.rows.windows(2).all(|w| w[0].cdf <= w[1].cdf)
    }
}

/// Standardized log-count CDF on `y = -3.0, -2.9, ..., 3.0`.
pub fn cdf_figure(model: Model, n: usize) -> Result<CdfFigure> {
    Ok(CdfFigure {
        model,
        n,
        rows: cdf_table(n, model, &figure_grid())?,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Moment {
    Mean,
    Variance,
}

pub struct SeriesRow {
    pub n: usize,
    pub uniform: Rational,
    pub yule: Rational,
}

pub struct SeriesFigure {
    pub moment: Moment,
    pub rows: Vec<SeriesRow>,
    /// Correlation between the uniform and Yule–Harding columns.
    pub pearson: f64,
}

/// Exact means or variances of `c_r` under both models for `n = 2..=20`.
pub fn series_figure(moment: Moment) -> Result<SeriesFigure> {
    let seq = |model| match moment {
        Moment::Mean => mean_seq(model, SERIES_LAST),
        Moment::Variance => variance_seq(model, SERIES_LAST),
    };
    let (uni, yh) = (seq(Model::Uniform)?, seq(Model::YuleHarding)?);
    let rows: Vec<SeriesRow> = (SERIES_FIRST..=SERIES_LAST)
        .map(|n| SeriesRow {
            n,
            uniform: uni.at(n).clone(),
            yule: yh.at(n).clone(),
        })
        .collect();
    let xs: Vec<f64> = rows.iter().map(|r| r.uniform.to_f64()).collect();
    let ys: Vec<f64> = rows.iter().map(|r| r.yule.to_f64()).collect();
    Ok(SeriesFigure {
        moment,
        pearson: pearson(&xs, &ys),
        rows,
    })
}

pub struct CensusRow {
    pub shape: String,
    pub c_r: Integer,
    /// Labeled histories of one labeling of the shape.
    pub histories: Integer,
}

pub struct Census {
    pub n: usize,
    pub rows: Vec<CensusRow>,
    pub pearson_log: f64,
    pub pearson_raw: f64,
}

impl Census {
    pub fn max_c_r(&self) -> &Integer {
        self.rows.iter().map(|r| &r.c_r).max().expect("non-empty census")
    }

    pub fn max_histories(&self) -> &Integer {
        self.rows.iter().map(|r| &r.histories).max().expect("non-empty census")
    }

    /// Mean root configuration count with every shape weighted equally.
    pub fn mean_c_r(&self) -> Rational {
        let total: Integer = self.rows.iter().map(|r| &r.c_r).sum();
        Rational::from((total, self.rows.len()))
    }
}

/// Root configurations against labeled histories for every shape of size `n`.
pub fn census(n: usize) -> Result<Census> {
    let rows: Vec<CensusRow> = enumerate_shapes(n)?
        .iter()
        .map(|s| CensusRow {
            shape: s.key(),
            c_r: root_config_count(s),
            histories: labeled_history_count(s),
        })
        .collect();
    let col = |f: &dyn Fn(&CensusRow) -> f64| rows.iter().map(f).collect::<Vec<f64>>();
    let pearson_log = pearson(
        &col(&|r| ln_integer_f64(&r.histories)),
        &col(&|r| ln_integer_f64(&r.c_r)),
    );
    let pearson_raw = pearson(&col(&|r| r.histories.to_f64()), &col(&|r| r.c_r.to_f64()));
    Ok(Census {
        n,
        rows,
        pearson_log,
        pearson_raw,
    })
}

pub(crate) fn normal_column(rows: &[CdfRow]) -> Vec<f64> {
    rows.iter().map(|r| normal_cdf(r.y)).collect()
}
