use std::f64::consts::PI;
use std::path::PathBuf;

use clap::{Args, ValueEnum};
use hardy_dixmier::curve::{dyadic_p_grid, geometric_grid};
use hardy_dixmier::discquad::{besov_seminorm_integral, DiscGrid};
use hardy_dixmier::dixmier::{
    max_demo_k, nonmeasurability_demo, ppa_sandwich_check, ppb_identity_check, theorem1_equivalence_scan, CheckWindow,
    ScanInput,
};
use hardy_dixmier::dyadic::{
    block_lp_norm, blocks_needed, default_block_grid, dyadic_besov_norm, lacunary_dyadic_besov_norm, project_blocks,
};
use hardy_dixmier::hankel::{
    bergman_hankel_spectrum, dixmier_norm, hankel_matrix, schatten_lorentz, schatten_norm, singular_values,
    SingularSpectrum, DEFAULT_SVD_CAP,
};
use hardy_dixmier::rearrange::lacunary_rearrangement;
use hardy_dixmier::symbols::{
    derivative_series, eval_on_circle_grid, gap_example, lacunary_to_series, sigma_example, SymbolSeries,
};
use hardy_dixmier::Exponent;
use serde::Serialize;

use crate::grid::GridSpec;
use crate::input::{load_step, load_symbol, Symbol, SymbolFile};
use crate::output::{emit, sci, Cell, CurveOut, Format, Sci, Table};
use crate::CliError;

#[derive(Args, Debug)]
pub struct OutputArgs {
    /// Write the report here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct SymbolArgs {
    /// Symbol JSON, inline or as a file path.
    #[arg(long)]
    pub symbol: String,
    /// Truncate the symbol: Taylor series to this degree, lacunary series to
    /// frequencies up to it.
    #[arg(long)]
    pub deg: Option<usize>,
}

impl SymbolArgs {
    fn load(&self) -> Result<Symbol, CliError> {
        let s = load_symbol(&self.symbol)?;
        Ok(match (s, self.deg) {
            (s, None) => s,
            (Symbol::Taylor(t), Some(d)) => Symbol::Taylor(t.truncated(d)),
            (Symbol::Lacunary(l), Some(d)) => Symbol::Lacunary(
                l.up_to_frequency(d).ok_or_else(|| CliError::Config("--deg must be at least 1".into()))?,
            ),
        })
    }

    /// The symbol as a dense Taylor series.
    fn dense(&self) -> Result<(SymbolSeries, &'static str), CliError> {
        let s = self.load()?;
        let kind = s.kind();
        match s {
            Symbol::Taylor(t) => Ok((t, kind)),
            Symbol::Lacunary(l) => Ok((lacunary_to_series(&l)?, kind)),
        }
    }
}

fn p_grid_or(spec: &Option<GridSpec>, first: u32, last: u32) -> Result<Vec<f64>, CliError> {
    match spec {
        Some(g) => g.p_values(),
        None => Ok(dyadic_p_grid(first, last)),
    }
}

fn t_grid_or(spec: &Option<GridSpec>, stop: f64, count: usize) -> Result<Vec<f64>, CliError> {
    match spec {
        Some(g) => g.t_values(),
        None => Ok(geometric_grid(10.0, stop.max(100.0), count)?),
    }
}

fn grid_text(spec: &Option<GridSpec>, default: &str) -> String {
    spec.as_ref().map_or_else(|| default.to_string(), ToString::to_string)
}

/// `‖f‖_{(k),p}^p` for `f = a z^m`: the Beta integral behind the Gamma formulas.
fn monomial_golden(a: f64, m: usize, order: usize, p: f64) -> Option<f64> {
    if m < order {
        return Some(0.0);
    }
    let falling: f64 = (m - order + 1..=m).map(|j| j as f64).product();
    let lg = libm::lgamma;
    let e = (m - order) as f64 * p / 2.0;
    let beta = order as f64 * p - 1.0;
    let power = PI * (a * falling).powf(p) * (lg(e + 1.0) + lg(beta) - lg(e + 1.0 + beta)).exp();
    Some(power.powf(1.0 / p))
}

fn single_term(s: &SymbolSeries) -> Option<(usize, f64)> {
    let mut nonzero = s.coeffs().iter().enumerate().filter(|(_, c)| c.norm() > 0.0);
    let (m, c) = nonzero.next()?;
    nonzero.next().is_none().then(|| (m, c.norm()))
}

fn disc_grid(s: &SymbolSeries, radial: usize) -> Result<DiscGrid, CliError> {
    let m = (2 * (s.degree() + 1)).next_power_of_two().max(1024);
    Ok(DiscGrid::new(radial, m)?)
}

#[derive(Args, Debug)]
pub struct BesovArgs {
    #[command(flatten)]
    pub symbol: SymbolArgs,
    /// Exponent grid (default explicit:[2,1.5,1.25,1.1]).
    #[arg(long = "p-grid")]
    pub p_grid: Option<GridSpec>,
    /// Radial Gauss–Jacobi order.
    #[arg(long, default_value_t = 256)]
    pub radial: usize,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Serialize)]
struct BesovRow {
    p: Sci,
    integral_k1: Sci,
    integral_k2: Sci,
    dyadic: Sci,
    ratio_k2_dyadic: Sci,
    golden_k1: Option<Sci>,
    golden_k2: Option<Sci>,
}

#[derive(Serialize)]
struct BesovReport {
    symbol_kind: &'static str,
    degree: usize,
    p_grid: String,
    radial_order: usize,
    angular: usize,
    rows: Vec<BesovRow>,
}

pub fn besov(a: &BesovArgs) -> Result<(), CliError> {
    let (s, kind) = a.symbol.dense()?;
    let p_grid = match &a.p_grid {
        Some(g) => g.p_values()?,
        None => vec![2.0, 1.5, 1.25, 1.1],
    };
    let grid = disc_grid(&s, a.radial)?;
    let blocks = project_blocks(&s, blocks_needed(s.degree()))?;
    let mono = single_term(&s);
    let mut rows = Vec::new();
    let mut table = Table {
        headers: vec!["p", "integral_k1", "integral_k2", "dyadic", "ratio_k2_dyadic", "golden_k1", "golden_k2"],
        rows: Vec::new(),
    };
    for &p in &p_grid {
        let k1 = besov_seminorm_integral(&s, 1, p, &grid)?;
        let k2 = besov_seminorm_integral(&s, 2, p, &grid)?;
        let dy = dyadic_besov_norm(&blocks, 1.0 / p, p, Exponent::Finite(p))?;
        let ratio = if dy > 0.0 { k2 / dy } else { f64::NAN };
        let g1 = mono.and_then(|(m, c)| monomial_golden(c, m, 1, p));
        let g2 = mono.and_then(|(m, c)| monomial_golden(c, m, 2, p));
        table.rows.push(vec![
            Cell::Num(p),
            Cell::Num(k1),
            Cell::Num(k2),
            Cell::Num(dy),
            Cell::Num(ratio),
            g1.map_or(Cell::Text(String::new()), Cell::Num),
            g2.map_or(Cell::Text(String::new()), Cell::Num),
        ]);
        rows.push(BesovRow {
            p: Sci(p),
            integral_k1: Sci(k1),
            integral_k2: Sci(k2),
            dyadic: Sci(dy),
            ratio_k2_dyadic: Sci(ratio),
            golden_k1: g1.map(Sci),
            golden_k2: g2.map(Sci),
        });
    }
    let report = BesovReport {
        symbol_kind: kind,
        degree: s.degree(),
        p_grid: grid_text(&a.p_grid, "explicit:[2,1.5,1.25,1.1]"),
        radial_order: grid.radial_order(),
        angular: grid.angular(),
        rows,
    };
    emit("besov", report, &table, a.output.format, a.output.out.as_ref())
}

#[derive(Args, Debug)]
pub struct DyadicArgs {
    #[command(flatten)]
    pub symbol: SymbolArgs,
    /// Exponent grid (default p = 1 + 2^-m, m = 1..10).
    #[arg(long = "p-grid")]
    pub p_grid: Option<GridSpec>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Serialize)]
struct DyadicRow {
    p: Sci,
    besov_norm: Sci,
    scaled_sum: Sci,
}

#[derive(Serialize)]
struct DyadicReport {
    symbol_kind: &'static str,
    p_grid: String,
    /// `‖f * W_n‖_2` (Taylor) or `c_n` (lacunary) for each block.
    block_l2: Vec<Sci>,
    rows: Vec<DyadicRow>,
}

pub fn dyadic(a: &DyadicArgs) -> Result<(), CliError> {
    let symbol = a.symbol.load()?;
    let p_grid = p_grid_or(&a.p_grid, 1, 10)?;
    let (norms, block_l2): (Vec<f64>, Vec<f64>) = match &symbol {
        Symbol::Taylor(s) => {
            let blocks = project_blocks(s, blocks_needed(s.degree()))?;
            let mut norms = Vec::new();
            for &p in &p_grid {
                norms.push(dyadic_besov_norm(&blocks, 1.0 / p, p, Exponent::Finite(p))?);
            }
            let l2 = blocks
                .blocks()
                .iter()
                .map(|b| block_lp_norm(b, 2.0, default_block_grid(b)))
                .collect::<Result<_, _>>()?;
            (norms, l2)
        }
        Symbol::Lacunary(l) => {
            let mut norms = Vec::new();
            for &p in &p_grid {
                norms.push(lacunary_dyadic_besov_norm(l, 1.0 / p, Exponent::Finite(p))?);
            }
            (norms, l.coeffs().iter().map(|c| c.to_f64()).collect())
        }
    };
    let mut table = Table { headers: vec!["p", "besov_norm", "scaled_sum"], rows: Vec::new() };
    let mut rows = Vec::new();
    for (&p, &n) in p_grid.iter().zip(&norms) {
        let scaled = (p - 1.0) * n.powf(p);
        table.rows.push(vec![Cell::Num(p), Cell::Num(n), Cell::Num(scaled)]);
        rows.push(DyadicRow { p: Sci(p), besov_norm: Sci(n), scaled_sum: Sci(scaled) });
    }
    let report = DyadicReport {
        symbol_kind: symbol.kind(),
        p_grid: grid_text(&a.p_grid, "dyadic:1:10"),
        block_l2: sci(&block_l2),
        rows,
    };
    emit("dyadic", report, &table, a.output.format, a.output.out.as_ref())
}

fn svd_cap() -> Result<usize, CliError> {
    match std::env::var("HDL_SVD_CAP") {
        Ok(v) => v.trim().parse().map_err(|_| CliError::Config(format!("HDL_SVD_CAP={v:?} is not a size"))),
        Err(_) => Ok(DEFAULT_SVD_CAP),
    }
}

fn spectrum_table(sp: &SingularSpectrum) -> (Table, Vec<SpectrumRow>) {
    let mut table =
        Table { headers: vec!["j", "s_j", "cumulative", "cumulative_over_log", "sup_weighted"], rows: Vec::new() };
    let mut rows = Vec::new();
    let mut sup = 0.0f64;
    for ((j, &s), (&c, &d)) in sp.values().iter().enumerate().zip(sp.cumulative().iter().zip(&sp.dixmier_curve())) {
        sup = sup.max((j + 1) as f64 * s);
        table.rows.push(vec![Cell::Int(j as u64), Cell::Num(s), Cell::Num(c), Cell::Num(d), Cell::Num(sup)]);
        rows.push(SpectrumRow {
            j,
            s_j: Sci(s),
            cumulative: Sci(c),
            cumulative_over_log: Sci(d),
            sup_weighted: Sci(sup),
        });
    }
    (table, rows)
}

#[derive(Serialize)]
struct SpectrumRow {
    j: usize,
    s_j: Sci,
    cumulative: Sci,
    cumulative_over_log: Sci,
    /// `max_{i<=j} (i+1) s_i`
    sup_weighted: Sci,
}

#[derive(Args, Debug)]
pub struct HankelArgs {
    #[command(flatten)]
    pub symbol: SymbolArgs,
    /// Truncation size.
    #[arg(long = "N")]
    pub n: usize,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Serialize)]
struct HankelReport {
    symbol_kind: &'static str,
    n: usize,
    active_dim: usize,
    trace_norm: Sci,
    hilbert_schmidt_norm: Sci,
    weak_l1_norm: Sci,
    dixmier_norm: Sci,
    spectrum: Vec<SpectrumRow>,
}

pub fn hankel(a: &HankelArgs) -> Result<(), CliError> {
    let cap = svd_cap()?;
    if a.n == 0 || a.n > cap {
        return Err(CliError::Config(format!("--N must lie in 1..={cap}")));
    }
    let symbol = a.symbol.load()?;
    let s = match &symbol {
        Symbol::Taylor(t) => t.clone(),
        // H_N only sees frequencies up to 2N - 1
        Symbol::Lacunary(l) => lacunary_to_series(&l.up_to_frequency(2 * a.n - 1).expect("2N - 1 >= 1"))?,
    };
    let h = hankel_matrix(&s, a.n)?;
    let sp = singular_values(&h, cap)?;
    let (table, rows) = spectrum_table(&sp);
    let report = HankelReport {
        symbol_kind: symbol.kind(),
        n: a.n,
        active_dim: h.active_dim(),
        trace_norm: Sci(schatten_norm(&sp, 1.0)?),
        hilbert_schmidt_norm: Sci(schatten_norm(&sp, 2.0)?),
        weak_l1_norm: Sci(schatten_lorentz(&sp, 1.0, Exponent::Infinite)?),
        dixmier_norm: Sci(dixmier_norm(&sp)),
        spectrum: rows,
    };
    emit("hankel", report, &table, a.output.format, a.output.out.as_ref())
}

#[derive(Args, Debug)]
pub struct BergmanArgs {
    #[command(flatten)]
    pub symbol: SymbolArgs,
    /// Weight exponent of `(1-|z|²)^α dA`.
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub alpha: f64,
    /// Size of the compressed Gram matrix.
    #[arg(long = "N")]
    pub n: usize,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Serialize)]
struct BergmanReport {
    alpha: Sci,
    n: usize,
    /// `√(α+1) (1/2π) ∫_T |f'|`
    target: Sci,
    reliable: usize,
    curve_at_reliable: Sci,
    tail_coefficient: Sci,
    clipped: usize,
    dixmier_norm: Sci,
    spectrum: Vec<SpectrumRow>,
}

/// `(1/2π) ∫_T |f'|` by the trapezoid rule on a grid far above the degree.
fn boundary_mean_derivative(s: &SymbolSeries) -> Result<f64, CliError> {
    let d = derivative_series(s, 1)?;
    let m = (16 * (d.degree() + 1)).next_power_of_two().max(4096);
    let vals = eval_on_circle_grid(&d, m)?;
    Ok(vals.iter().map(|z| z.norm()).sum::<f64>() / m as f64)
}

pub fn bergman(a: &BergmanArgs) -> Result<(), CliError> {
    let cap = svd_cap()?;
    if a.n == 0 || a.n > cap {
        return Err(CliError::Config(format!("--N must lie in 1..={cap}")));
    }
    if !a.alpha.is_finite() || a.alpha <= -1.0 {
        return Err(CliError::Config("--alpha must exceed -1".into()));
    }
    let (s, _) = a.symbol.dense()?;
    let b = bergman_hankel_spectrum(&s, a.alpha, a.n, cap)?;
    let target = (a.alpha + 1.0).sqrt() * boundary_mean_derivative(&s)?;
    let (table, rows) = spectrum_table(&b.spectrum);
    let report = BergmanReport {
        alpha: Sci(a.alpha),
        n: a.n,
        target: Sci(target),
        reliable: b.reliable,
        curve_at_reliable: Sci(b.spectrum.dixmier_curve()[b.reliable]),
        tail_coefficient: Sci(b.tail_coefficient),
        clipped: b.spectrum.clipped(),
        dixmier_norm: Sci(dixmier_norm(&b.spectrum)),
        spectrum: rows,
    };
    emit("bergman", report, &table, a.output.format, a.output.out.as_ref())
}

#[derive(Args, Debug)]
pub struct DixmierArgs {
    /// Symbol for the four-way equivalence scan.
    #[arg(long)]
    pub symbol: Option<String>,
    #[arg(long)]
    pub deg: Option<usize>,
    /// Step function JSON for the limsup / log-average checks.
    #[arg(long)]
    pub step: Option<String>,
    /// Treat the step function as the truncation of an infinite object.
    #[arg(long)]
    pub truncated: bool,
    /// Exponent grid (default p = 1 + 2^-m, m = 1..10 for Taylor symbols and
    /// 1..20 otherwise).
    #[arg(long = "p-grid")]
    pub p_grid: Option<GridSpec>,
    /// Time grid (default 60 or 80 geometric points from 10 to the support end).
    #[arg(long = "t-grid")]
    pub t_grid: Option<GridSpec>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Serialize)]
struct RatioOut {
    numerator: u8,
    denominator: u8,
    ratio: Sci,
}

#[derive(Serialize)]
struct ScanOut {
    symbol_kind: &'static str,
    p_grid: String,
    t_grid: String,
    integral: Option<CurveOut>,
    f_log_average: Option<CurveOut>,
    dyadic: CurveOut,
    phi_log_average: CurveOut,
    estimates: Vec<Option<Sci>>,
    ratios: Vec<RatioOut>,
}

#[derive(Serialize)]
struct SandwichOut {
    limsup: CurveOut,
    limlog: CurveOut,
    ls: Sci,
    ll: Sci,
    lower_holds: bool,
    upper_holds: bool,
    tolerance: Sci,
    pass: bool,
}

#[derive(Serialize)]
struct IdentityOut {
    power: CurveOut,
    log: CurveOut,
    power_limit: Sci,
    log_limit: Sci,
    limits_match: bool,
    c_h: Sci,
    distribution_bound_holds: bool,
    worst_distribution_ratio: Sci,
    tolerance: Sci,
    pass: bool,
}

#[derive(Serialize)]
struct DixmierReport {
    scan: Option<ScanOut>,
    sandwich: Option<SandwichOut>,
    identity: Option<IdentityOut>,
}

fn curve_rows(table: &mut Table, name: &'static str, c: &CurveOut) {
    for (x, y) in c.abscissae.iter().zip(&c.values) {
        table.rows.push(vec![Cell::Text(name.into()), Cell::Num(x.0), Cell::Num(y.0)]);
    }
}

pub fn dixmier(a: &DixmierArgs) -> Result<(), CliError> {
    if a.symbol.is_none() && a.step.is_none() {
        return Err(CliError::Config("dixmier needs --symbol, --step or both".into()));
    }
    let mut table = Table { headers: vec!["quantity", "x", "value"], rows: Vec::new() };
    let mut report = DixmierReport { scan: None, sandwich: None, identity: None };

    if let Some(source) = &a.symbol {
        let symbol = SymbolArgs { symbol: source.clone(), deg: a.deg }.load()?;
        let (r, kind, p_default, t_default) = match &symbol {
            Symbol::Taylor(s) => {
                let grid = disc_grid(s, 256)?;
                let p = p_grid_or(&a.p_grid, 1, 10)?;
                let t = t_grid_or(&a.t_grid, 1e40, 60)?;
                (
                    theorem1_equivalence_scan(ScanInput::Polynomial(s, &grid), &p, &t)?,
                    "taylor",
                    "dyadic:1:10",
                    "geometric:10:1e40:60",
                )
            }
            Symbol::Lacunary(l) => {
                let end = lacunary_rearrangement(l)?.support_end();
                let p = p_grid_or(&a.p_grid, 1, 20)?;
                let t = t_grid_or(&a.t_grid, end, 80)?;
                (
                    theorem1_equivalence_scan(ScanInput::Lacunary(l), &p, &t)?,
                    "lacunary",
                    "dyadic:1:20",
                    "geometric:10:support:80",
                )
            }
        };
        let scan = ScanOut {
            symbol_kind: kind,
            p_grid: grid_text(&a.p_grid, p_default),
            t_grid: grid_text(&a.t_grid, t_default),
            integral: r.integral.as_ref().map(CurveOut::from),
            f_log_average: r.f_log_average.as_ref().map(CurveOut::from),
            dyadic: CurveOut::from(&r.dyadic),
            phi_log_average: CurveOut::from(&r.phi_log_average),
            estimates: r.estimates().iter().map(|e| e.map(Sci)).collect(),
            ratios: r
                .ratios
                .iter()
                .map(|&(i, j, v)| RatioOut { numerator: i, denominator: j, ratio: Sci(v) })
                .collect(),
        };
        if let Some(c) = &scan.integral {
            curve_rows(&mut table, "integral", c);
        }
        if let Some(c) = &scan.f_log_average {
            curve_rows(&mut table, "f_log_average", c);
        }
        curve_rows(&mut table, "dyadic", &scan.dyadic);
        curve_rows(&mut table, "phi_log_average", &scan.phi_log_average);
        report.scan = Some(scan);
    }

    if let Some(source) = &a.step {
        let h = load_step(source)?;
        let window = if a.truncated { CheckWindow::Truncated } else { CheckWindow::Full };
        let p = p_grid_or(&a.p_grid, 1, 20)?;
        let t = t_grid_or(&a.t_grid, h.support_end(), 80)?;
        let s = ppa_sandwich_check(&h, &p, &t, window)?;
        let r_grid: Vec<f64> = p.iter().map(|p| 1.0 / (p - 1.0)).collect();
        let i = ppb_identity_check(&h, &r_grid, &t, window)?;
        let sandwich = SandwichOut {
            limsup: CurveOut::from(&s.limsup_curve),
            limlog: CurveOut::from(&s.limlog_curve),
            ls: Sci(s.ls),
            ll: Sci(s.ll),
            lower_holds: s.lower_holds,
            upper_holds: s.upper_holds,
            tolerance: Sci(s.tolerance),
            pass: s.pass(),
        };
        let identity = IdentityOut {
            power: CurveOut::from(&i.power_curve),
            log: CurveOut::from(&i.log_curve),
            power_limit: Sci(i.power_limit),
            log_limit: Sci(i.log_limit),
            limits_match: i.limits_match,
            c_h: Sci(i.c_h),
            distribution_bound_holds: i.distribution_bound_holds,
            worst_distribution_ratio: Sci(i.worst_distribution_ratio),
            tolerance: Sci(i.tolerance),
            pass: i.pass(),
        };
        curve_rows(&mut table, "limsup", &sandwich.limsup);
        curve_rows(&mut table, "limlog", &sandwich.limlog);
        report.sandwich = Some(sandwich);
        report.identity = Some(identity);
    }
    emit("dixmier", report, &table, a.output.format, a.output.out.as_ref())
}

#[derive(Args, Debug)]
pub struct DemoArgs {
    /// `δ ∈ (0, 1)`: the predicted ratio of the two limits is `1/δ`.
    #[arg(long)]
    pub delta: f64,
    #[arg(long = "a-const", default_value_t = 2.0)]
    pub a_const: f64,
    #[arg(long = "k-min", default_value_t = 1)]
    pub k_min: u32,
    /// Last subsequence index (default: the largest that stays below 1e300).
    #[arg(long = "k-max")]
    pub k_max: Option<u32>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Serialize)]
struct DemoRowOut {
    k: u32,
    l1: Sci,
    l2: Sci,
    ratio: Sci,
}

#[derive(Serialize)]
struct DemoOut {
    delta: Sci,
    a_const: Sci,
    b_const: Sci,
    c_const: Sci,
    base: Sci,
    j0: usize,
    target: Sci,
    relative_error: Sci,
    tolerance: Sci,
    monotone: bool,
    pass: bool,
    rows: Vec<DemoRowOut>,
}

pub fn demo(a: &DemoArgs) -> Result<(), CliError> {
    if !(a.delta > 0.0 && a.delta < 1.0) {
        return Err(CliError::Config(format!("--delta must lie in (0, 1), got {}", a.delta)));
    }
    let k_max = match a.k_max {
        Some(k) => k,
        None => max_demo_k(a.delta)?,
    };
    let r = nonmeasurability_demo(a.delta, a.a_const, a.k_min, k_max)?;
    let mut table = Table { headers: vec!["k", "l1", "l2", "ratio"], rows: Vec::new() };
    for row in &r.rows {
        table.rows.push(vec![Cell::Int(row.k as u64), Cell::Num(row.l1), Cell::Num(row.l2), Cell::Num(row.ratio)]);
    }
    let pass = r.pass();
    let out = DemoOut {
        delta: Sci(a.delta),
        a_const: Sci(r.params.a_const()),
        b_const: Sci(r.params.b_const()),
        c_const: Sci(r.params.c_const()),
        base: Sci(r.params.base()),
        j0: r.j0,
        target: Sci(r.target),
        relative_error: Sci(r.relative_error),
        tolerance: Sci(r.tolerance),
        monotone: r.monotone,
        pass,
        rows: r.rows.iter().map(|w| DemoRowOut { k: w.k, l1: Sci(w.l1), l2: Sci(w.l2), ratio: Sci(w.ratio) }).collect(),
    };
    emit("demo-nonmeasurable", out, &table, a.output.format, a.output.out.as_ref())?;
    if pass {
        Ok(())
    } else {
        Err(CliError::Numeric(format!("ratio missed 1/delta by {:e} (relative)", r.relative_error)))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Family {
    /// Gap blocks `N_k = k²`: in the Dixmier class, not weak-`l¹`.
    Gap,
    /// Oscillating `σ` family with `B = (1-δ)A`, `a = e^{1/√δ}`.
    Sigma,
}

#[derive(Args, Debug)]
pub struct ExampleArgs {
    #[arg(long, value_enum)]
    pub family: Family,
    #[arg(long = "k-max", default_value_t = 30)]
    pub k_max: usize,
    #[arg(long, default_value_t = 0.25)]
    pub delta: f64,
    #[arg(long = "a-const", default_value_t = 2.0)]
    pub a_const: f64,
    /// Number of lacunary coefficients for the sigma family.
    #[arg(long = "j-max", default_value_t = 64)]
    pub j_max: usize,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Serialize)]
struct ExampleOut {
    #[serde(flatten)]
    symbol: SymbolFile,
    family: &'static str,
    parameters: Vec<(&'static str, Sci)>,
    j0: Option<usize>,
}

pub fn example(a: &ExampleArgs) -> Result<(), CliError> {
    let (spec, family, parameters, j0) = match a.family {
        Family::Gap => (gap_example(a.k_max)?, "gap", vec![("k_max", Sci(a.k_max as f64))], None),
        Family::Sigma => {
            if !(a.delta > 0.0 && a.delta < 1.0) {
                return Err(CliError::Config(format!("--delta must lie in (0, 1), got {}", a.delta)));
            }
            let b = (1.0 - a.delta) * a.a_const;
            let base = (1.0 / a.delta.sqrt()).exp();
            let ex = sigma_example(a.a_const, b, base, a.j_max)?;
            let params = vec![
                ("a_const", Sci(a.a_const)),
                ("b_const", Sci(b)),
                ("base", Sci(base)),
                ("c_const", Sci(ex.c_const)),
            ];
            (ex.spec, "sigma", params, Some(ex.j0))
        }
    };
    let mut table = Table { headers: vec!["j", "mantissa", "exp2", "c_j"], rows: Vec::new() };
    for (j, c) in spec.coeffs().iter().enumerate() {
        table.rows.push(vec![
            Cell::Int(j as u64),
            Cell::Num(c.mantissa()),
            Cell::Text(c.exponent().to_string()),
            Cell::Num(c.to_f64()),
        ]);
    }
    let out = ExampleOut { symbol: SymbolFile::from_lacunary(&spec), family, parameters, j0 };
    emit("example", out, &table, a.output.format, a.output.out.as_ref())
}
