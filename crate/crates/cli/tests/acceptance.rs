//! Acceptance suite. Runs every criterion in order, prints one PASS/FAIL
//! line each and exits non-zero if any criterion fails.

use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use confign_cli::figure::{cdf_figure, census, series_figure, Moment, CENSUS_N};
use confign_core::certify::{
    certify_alpha, run_certification, tail_bound, u_seq, GridConfig, EXTENDED_RANGE,
    MEAN_BOUND_BASE, U_BOUND_BASE,
};
use confign_core::configcore::{
    antichain_count, balanced_family, config_profile, enumerate_root_configs, root_config_count,
    Configuration,
};
use confign_core::distribution::{pmf, pmf_oracle};
use confign_core::momentseries::{
    growth_report, k_e, mean_seq, moment_seqs, second_moment_seq, uniform_mean_base,
    uniform_mean_constant, variance_seq, wagner_constants,
};
use confign_core::numeric::fmt_sig;
use confign_core::sampler::{empirical_report, DEFAULT_DKW_ALPHA};
use confign_core::treekit::{enumerate_shapes, parse_newick};
use confign_core::{LabeledTopology, Model};
use rug::ops::Pow;
use rug::{Float, Rational};

/// Outcome of one criterion: pass flag and a one-line summary.
type Check = (bool, String);

fn within(x: f64, target: f64, tol: f64) -> bool {
    (x - target).abs() <= tol
}

fn rel_within(x: f64, target: f64, rel: f64) -> bool {
    ((x - target) / target).abs() <= rel
}

fn ratio(a: &Rational, b: &Rational) -> f64 {
    Rational::from(a / b).to_f64()
}

fn fig1_worked_example() -> Check {
    let start = Instant::now();
    let t = parse_newick("(((a,b),(c,d)),(e,f));").expect("valid tree");
    let profile = config_profile(t.shape());
    let configs = enumerate_root_configs(&t).expect("small tree");
    let elapsed = start.elapsed();

    // Internal lineages: g = (a,b), h = (c,d), i = (e,f), j = (g,h).
    fn rename(s: &str) -> &str {
        match s {
            "g" => "#0",
            "h" => "#1",
            "i" => "#2",
            "j" => "#3",
            leaf => leaf,
        }
    }
    let expected: &[&[&str]] = &[
        &["j", "i"],
        &["j", "e", "f"],
        &["g", "h", "i"],
        &["g", "h", "e", "f"],
        &["a", "b", "h", "i"],
        &["a", "b", "h", "e", "f"],
        &["g", "c", "d", "i"],
        &["g", "c", "d", "e", "f"],
        &["a", "b", "c", "d", "i"],
        &["a", "b", "c", "d", "e", "f"],
    ];
    let mut expected: Vec<Configuration> = expected
        .iter()
        .map(|set| set.iter().map(|s| rename(s).to_string()).collect())
        .collect();
    expected.sort();
    let internal: Vec<u32> = profile.internal.iter().map(|c| c.to_u32().unwrap()).collect();
    let ok = profile.root == 10
        && internal == [1, 1, 1, 4, 10]
        && configs == expected
        && elapsed < Duration::from_millis(1);
    (
        ok,
        format!(
            "c_r={} per-node={:?} configs match={} time={:?}",
            profile.root,
            internal,
            configs == expected,
            elapsed
        ),
    )
}

fn oracle_equivalence() -> Check {
    let start = Instant::now();
    let mut mismatches = Vec::new();
    for model in Model::ALL {
        for n in 2..=12 {
            if pmf(n, model).unwrap().entries != pmf_oracle(n, model).unwrap().entries {
                mismatches.push(format!("{model} n={n}"));
            }
        }
    }
    let elapsed = start.elapsed();
    (
        mismatches.is_empty() && elapsed < Duration::from_secs(120),
        format!("mismatches={mismatches:?} time={elapsed:?}"),
    )
}

fn antichain_bijection() -> Check {
    let start = Instant::now();
    let mut shapes = 0usize;
    let mut bad = Vec::new();
    for n in 2..=12 {
        for s in enumerate_shapes(n).unwrap() {
            shapes += 1;
            let c_r = root_config_count(&s);
            let listed = enumerate_root_configs(&LabeledTopology::representative(&s))
                .unwrap()
                .len();
            if antichain_count(&s).unwrap() != c_r || c_r != listed {
                bad.push(s.key());
            }
        }
    }
    let elapsed = start.elapsed();
    (
        bad.is_empty() && elapsed < Duration::from_secs(60),
        format!("shapes={shapes} disagreements={} time={elapsed:?}", bad.len()),
    )
}

fn series_coefficients() -> Check {
    let e = mean_seq(Model::YuleHarding, 5).unwrap();
    let s = second_moment_seq(Model::YuleHarding, 5).unwrap();
    let q = |a: i64, b: i64| Rational::from((a, b));
    let e_want = [q(1, 1), q(2, 1), q(10, 3), q(31, 6)];
    let s_want = [q(1, 1), q(4, 1), q(34, 3), q(55, 2)];
    let e_got: Vec<Rational> = (2..=5).map(|n| e.at(n).clone()).collect();
    let s_got: Vec<Rational> = (2..=5).map(|n| s.at(n).clone()).collect();
    let fmt = |v: &[Rational]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
    (
        e_got == e_want && s_got == s_want,
        format!("e_2..5=({}) s_2..5=({})", fmt(&e_got), fmt(&s_got)),
    )
}

fn growth_constants() -> Check {
    let start = Instant::now();
    let prec = 256;
    let (e_yh, _, var_yh) = moment_seqs(Model::YuleHarding, 2000).unwrap();
    let yh_mean = growth_report(&e_yh, &k_e(prec)).unwrap().last_ratio;

    let e_uni = mean_seq(Model::Uniform, 2000).unwrap();
    let uni_mean = growth_report(&e_uni, &uniform_mean_base(prec)).unwrap().last_ratio;
    let sqrt_three_halves = uniform_mean_constant(prec).to_f64();

    let var_uni = variance_seq(Model::Uniform, 1000).unwrap();
    let literal_base = Float::with_val(prec, Float::parse("1.8215").unwrap());
    let uni_var = growth_report(&var_uni, &literal_base).unwrap().last_ratio;

    let k_v_text = certify_alpha(&u_seq(EXTENDED_RANGE).unwrap()).unwrap().k_v;
    let k_v: f64 = k_v_text.parse().unwrap();
    let quotient = ratio(var_yh.at(2000), var_yh.at(1999));
    let four_digits = |x: f64| fmt_sig(x, 4);
    let elapsed = start.elapsed();

    let ok = rel_within(yh_mean, 1.0, 0.01)
        && rel_within(uni_mean, sqrt_three_halves, 0.01)
        && rel_within(uni_var, 1.405, 0.02)
        && four_digits(quotient) == four_digits(k_v)
        && elapsed < Duration::from_secs(600);
    (
        ok,
        format!(
            "yh_mean_ratio={yh_mean:.6} uni_mean_ratio={uni_mean:.6} uni_var_ratio={uni_var:.6} \
             yh_var_quotient={quotient:.10} k_v={k_v_text} time={elapsed:?}"
        ),
    )
}

fn wagner() -> Check {
    let w = wagner_constants(15, 12).unwrap();
    (
        within(w.mu, 0.351, 0.002) && within(w.sigma2, 0.008, 0.002),
        format!("mu={:.6} sigma2={:.7}", w.mu, w.sigma2),
    )
}

fn certification() -> Check {
    let start = Instant::now();
    let report = run_certification(&GridConfig::default()).unwrap();
    let elapsed = start.elapsed();

    let bounds_ok = report.bounds.iter().all(|b| b.margin > 0)
        && report.bounds.iter().any(|b| b.to == MEAN_BOUND_BASE)
        && report.bounds.iter().any(|b| b.to == U_BOUND_BASE);
    let expected_tail = Rational::from(10) * Rational::from((9, 10)).pow(101u32);
    let tails_ok = tail_bound(100) == expected_tail && tail_bound(500) <= Rational::from((1, rug::Integer::from(10).pow(21u32)));
    let six = |x: f64| fmt_sig(x, 6);
    let grid_ok = six(report.grid.g.value) == six(0.019_495_285_29)
        && six(report.grid.s.value) == six(0.951_889_421_8);
    let root = &report.root;
    let lower = Rational::from((550_563_513_910_285u64, 1u64 << 50));
    let upper = Rational::from((1_101_127_027_820_571u64, 1u64 << 51));
    let k_v = Float::with_val(128, Float::parse(&root.k_v).unwrap());
    let k_v_ref = Float::with_val(128, Float::parse("2.0449954971518340953").unwrap());
    let k_v_ok = Float::with_val(128, k_v - k_v_ref).abs() < 5e-14;
    let root_ok = root.lower == lower && root.upper == upper && root.alpha == "0.4889986317" && k_v_ok;
    let ok = bounds_ok
        && tails_ok
        && grid_ok
        && root_ok
        && report.certified
        && elapsed < Duration::from_secs(1800);
    let margins: Vec<String> = report
        .bounds
        .iter()
        .map(|b| format!("n<={}:{}", b.to, fmt_sig(b.margin_decimal, 4)))
        .collect();
    (
        ok,
        format!(
            "margins=[{}] tail100={} g_min={} s_min={} alpha={} k_v={} certified={} time={elapsed:?}",
            margins.join(" "),
            fmt_sig(tail_bound(100).to_f64(), 8),
            fmt_sig(report.grid.g.value, 10),
            fmt_sig(report.grid.s.value, 10),
            root.alpha,
            root.k_v,
            report.certified
        ),
    )
}

fn shape_census() -> Check {
    let start = Instant::now();
    let c = census(CENSUS_N).unwrap();
    let elapsed = start.elapsed();
    let mean = c.mean_c_r().to_f64();
    let ok = c.rows.len() == 4850
        && *c.max_c_r() == 416
        && root_config_count(&balanced_family(15)) == 416
        && *c.max_histories() == 2_745_600
        && within(mean, 135.0, 1.0)
        && within(c.pearson_log, 0.987, 0.003)
        && within(c.pearson_raw, 0.784, 0.01)
        && elapsed < Duration::from_secs(60);
    (
        ok,
        format!(
            "shapes={} max_c_r={} max_histories={} mean_c_r={mean:.4} r_log={:.5} r_raw={:.5} time={elapsed:?}",
            c.rows.len(),
            c.max_c_r(),
            c.max_histories(),
            c.pearson_log,
            c.pearson_raw
        ),
    )
}

fn figure_data() -> Check {
    let means = series_figure(Moment::Mean).unwrap();
    let vars = series_figure(Moment::Variance).unwrap();
    let mut ok = within(means.pearson, 0.995, 0.002) && within(vars.pearson, 0.997, 0.002);
    let mut detail = format!("fig6_r={:.5} fig7_r={:.5}", means.pearson, vars.pearson);
    for model in Model::ALL {
        let small = cdf_figure(model, 12).unwrap();
        let large = cdf_figure(model, 18).unwrap();
        let fig15 = cdf_figure(model, 15).unwrap();
        let (d12, d18) = (small.max_normal_deviation(), large.max_normal_deviation());
        ok &= fig15.is_monotone() && small.is_monotone() && large.is_monotone() && d18 < d12;
        detail.push_str(&format!(" {model}: dev12={d12:.5} dev18={d18:.5}"));
    }
    (ok, detail)
}

fn lognormality_at_scale() -> Check {
    let start = Instant::now();
    let n = 500;
    let grid: Vec<f64> = (-30..=30).map(|k| f64::from(k) / 10.0).collect();
    let mut ok = true;
    let mut detail = String::new();
    for (model, mu) in [(Model::YuleHarding, 0.351), (Model::Uniform, 0.272)] {
        let r = empirical_report(n, model, 100_000, &grid, 7).unwrap();
        assert_eq!(r.dkw_alpha, DEFAULT_DKW_ALPHA);
        let mean = r.mean_log_c_r / n as f64;
        let mean_ok = rel_within(mean, mu, 0.05);
        let band_ok = r.within_dkw_band();
        ok &= mean_ok && band_ok;
        detail.push_str(&format!(
            "{model}: mean/n={mean:.5} ({}) ks={:.5} dkw_eps={:.5} ({}); ",
            if mean_ok { "ok" } else { "off" },
            r.ks_statistic,
            r.dkw_epsilon,
            if band_ok { "inside" } else { "outside" }
        ));
    }
    let elapsed = start.elapsed();
    ok &= elapsed < Duration::from_secs(300);
    detail.push_str(&format!("time={elapsed:?}"));
    (ok, detail)
}

fn readme_documents_substitution() -> Check {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/../../README.md");
    let text = std::fs::read_to_string(path).unwrap_or_default();
    let section = text
        .split("\n## ")
        .find(|s| s.starts_with("Finite-size checks"))
        .unwrap_or("");
    let ok = ["criterion 5", "criterion 9", "criterion 10"]
        .iter()
        .all(|c| section.to_lowercase().contains(c));
    (ok, format!("finite-size section present={}", !section.is_empty()))
}

type Criterion = (&'static str, fn() -> Check);

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("worked example", fig1_worked_example),
        ("oracle equivalence", oracle_equivalence),
        ("antichain bijection", antichain_bijection),
        ("series coefficients", series_coefficients),
        ("growth constants", growth_constants),
        ("log-moment constants", wagner),
        ("certification", certification),
        ("n = 15 census", shape_census),
        ("figure data", figure_data),
        ("lognormality at scale", lognormality_at_scale),
        ("finite-size substitution documented", readme_documents_substitution),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let (ok, detail) = match panic::catch_unwind(AssertUnwindSafe(check)) {
            Ok(result) => result,
            Err(e) => {
                let msg = e
                    .downcast_ref::<String>()
                    .cloned()
                    .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                    .unwrap_or_default();
                (false, format!("panicked: {msg}"))
            }
        };
        if !ok {
            failed += 1;
        }
        println!(
            "criterion {:>2} {name}: {} [{detail}]",
            i + 1,
            if ok { "PASS" } else { "FAIL" }
        );
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
