//! One function per subcommand, each returning something [`Render`]able.

use std::collections::BTreeMap;

use generacci::enumerate::{closed_row, SummandCountTable};
use generacci::gaps::GapRow;
use generacci::stats::{asymptotic_moments, pmf_rows, variance_closed_form, PmfRow};
use generacci::{
    build_constructive, decompose, gap_histogram_bruteforce, gaps_of, gaussian_diagnostics,
    is_legal, rat_to_f64, run_experiment, term_closed_form, Decomposition, DistributionSummary,
    GapHistogram, Nat, Rat, SampleConfig, SampleReport, SequenceTable,
};
use serde_json::{json, Map, Value};

use crate::error::{ensure, CliError};
use crate::output::{bracketed, fields, joined, strings, Render, Table};
use crate::parse::parse_nat;

pub const MAX_SEQ_TERMS: usize = 100_000;
pub const MAX_N: usize = 20_000;
/// Formula gap tables cost `O(n^2)` big multiplications.
pub const MAX_GAPS_FORMULA_N: usize = 2_000;
/// `count` recomputes rows by the quadratic recurrence up to this `n`.
pub const RECURRENCE_CHECK_N: usize = 2_000;
pub const MAX_SAMPLES: u64 = 1_000_000_000;
pub const MAX_WORKERS: usize = 1024;

fn over(what: &str, requested: impl std::fmt::Display, limit: impl std::fmt::Display) -> CliError {
    CliError::Budget(format!("{what} {requested} exceeds the limit {limit}"))
}

fn check_n(n: usize) -> Result<(), CliError> {
    if n > MAX_N {
        return Err(over("n", n, MAX_N));
    }
    Ok(())
}

// ---- seq ----

pub struct SeqResult {
    s: usize,
    b: usize,
    constructive: bool,
    terms: Vec<Nat>,
}

pub fn seq(terms: usize, s: usize, b: usize, constructive: bool) -> Result<SeqResult, CliError> {
    if terms == 0 {
        return Err(CliError::Usage("--terms must be at least 1".into()));
    }
    let values = if constructive {
        build_constructive(s, b, terms)?.terms
    } else {
        if (s, b) != (1, 2) {
            return Err(CliError::Usage(format!(
                "only (s, b) = (1, 2) has a recurrence; pass --constructive for ({s}, {b})"
            )));
        }
        if terms > MAX_SEQ_TERMS {
            return Err(over("--terms", terms, MAX_SEQ_TERMS));
        }
        let table = SequenceTable::with_terms(terms);
        // Spot-check the last term against the closed form.
        ensure(table.term(terms) == Some(&term_closed_form(terms)), || {
            format!("a_{terms} disagrees with its closed form")
        })?;
        table.terms().to_vec()
    };
    Ok(SeqResult {
        s,
        b,
        constructive,
        terms: values,
    })
}

impl Render for SeqResult {
    fn command(&self) -> &'static str {
        "seq"
    }

    fn json_fields(&self) -> Map<String, Value> {
        fields(json!({
            "s": self.s,
            "b": self.b,
            "method": if self.constructive { "constructive" } else { "recurrence" },
            "terms": strings(&self.terms),
        }))
    }

    fn table(&self) -> Table {
        Table {
            header: vec!["index", "term"],
            rows: self
                .terms
                .iter()
                .enumerate()
                .map(|(i, t)| vec![(i + 1).to_string(), t.to_string()])
                .collect(),
        }
    }

    fn plain(&self) -> String {
        self.terms
            .iter()
            .map(Nat::to_string)
            .collect::<Vec<_>>()
            .join(" ")
    }
}

// ---- decompose ----

pub struct DecomposeRecord {
    m: Nat,
    indices: Vec<usize>,
    terms: Vec<Nat>,
    bins: Vec<usize>,
    gaps: Vec<usize>,
}

pub struct DecomposeResult {
    records: Vec<DecomposeRecord>,
}

pub fn decompose_all(inputs: &[String]) -> Result<DecomposeResult, CliError> {
    if inputs.is_empty() {
        return Err(CliError::Usage(
            "decompose needs at least one integer".into(),
        ));
    }
    let values = inputs
        .iter()
        .map(|s| parse_nat(s))
        .collect::<Result<Vec<_>, _>>()?;
    let largest = values.iter().max().expect("non-empty");
    let table = SequenceTable::covering(largest);
    let records = values
        .into_iter()
        .map(|m| {
            let d: Decomposition = decompose(&table, &m)?;
            let terms = d.terms(&table).expect("table covers every index used");
            ensure(terms.iter().sum::<Nat>() == m, || {
                format!("summands of {m} do not add back up")
            })?;
            ensure(is_legal(&d.indices)?, || {
                format!("decomposition of {m} is not legal")
            })?;
            Ok(DecomposeRecord {
                bins: d.bins(),
                gaps: gaps_of(&d).gaps,
                indices: d.indices,
                terms,
                m,
            })
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    Ok(DecomposeResult { records })
}

impl Render for DecomposeResult {
    fn command(&self) -> &'static str {
        "decompose"
    }

    fn json_fields(&self) -> Map<String, Value> {
        let records: Vec<Value> = self
            .records
            .iter()
            .map(|r| {
                json!({
                    "m": r.m.to_string(),
                    "indices": r.indices,
                    "terms": strings(&r.terms),
                    "bins": r.bins,
                    "gaps": r.gaps,
                })
            })
            .collect();
        Map::from_iter([("decompositions".to_string(), Value::Array(records))])
    }

    fn table(&self) -> Table {
        Table {
            header: vec!["m", "indices", "terms", "bins", "gaps"],
            rows: self
                .records
                .iter()
                .map(|r| {
                    vec![
                        r.m.to_string(),
                        joined(&r.indices),
                        joined(&r.terms),
                        joined(&r.bins),
                        joined(&r.gaps),
                    ]
                })
                .collect(),
        }
    }

    fn plain(&self) -> String {
        self.records
            .iter()
            .map(|r| {
                format!(
                    "{}: indices {} terms {} bins {} gaps {}",
                    r.m,
                    bracketed(&r.indices),
                    bracketed(&r.terms),
                    bracketed(&r.bins),
                    bracketed(&r.gaps),
                )
            })
            .collect::<Vec<_>>()
            .join("\n")
    }
}

// ---- count ----

pub struct CountResult {
    n: usize,
    row: Vec<Nat>,
    total: Nat,
}

pub fn count(n: usize) -> Result<CountResult, CliError> {
    check_n(n)?;
    let row = closed_row(n);
    let total: Nat = row.iter().sum();
    ensure(total == term_closed_form(2 * n + 1), || {
        format!("row {n} sums to {total}, not a_{{2n+1}}")
    })?;
    if n <= RECURRENCE_CHECK_N {
        let table = SummandCountTable::build(n);
        ensure(table.row(n) == row.as_slice(), || {
            format!("recurrence and closed form disagree on row {n}")
        })?;
    }
    Ok(CountResult { n, row, total })
}

impl Render for CountResult {
    fn command(&self) -> &'static str {
        "count"
    }

    fn json_fields(&self) -> Map<String, Value> {
        fields(json!({
            "n": self.n,
            "p": strings(&self.row),
            "row_sum": self.total.to_string(),
        }))
    }

    fn table(&self) -> Table {
        Table {
            header: vec!["n", "k", "p_nk"],
            rows: self
                .row
                .iter()
                .enumerate()
                .map(|(k, p)| vec![self.n.to_string(), k.to_string(), p.to_string()])
                .collect(),
        }
    }

    fn plain(&self) -> String {
        self.row
            .iter()
            .enumerate()
            .map(|(k, p)| format!("p({},{k}) = {p}", self.n))
            .collect::<Vec<_>>()
            .join("\n")
    }
}

// ---- stats ----

pub struct StatsResult {
    n: usize,
    mean: Rat,
    variance: Rat,
    asymptotic: (f64, f64),
    diagnostics: Option<DistributionSummary>,
    pmf: Option<Vec<PmfRow>>,
}

pub fn stats(
    n: usize,
    diagnostics: bool,
    pmf: bool,
    t_grid: &[f64],
) -> Result<StatsResult, CliError> {
    check_n(n)?;
    let mean = generacci::exact_mean(n);
    let variance = generacci::exact_variance(n);
    ensure(variance == variance_closed_form(n), || {
        format!("variance at n = {n} disagrees with its closed form")
    })?;
    let diagnostics = if diagnostics {
        let s = gaussian_diagnostics(n, t_grid)?;
        ensure(s.mean == mean && s.variance == variance, || {
            "diagnostics computed different moments".into()
        })?;
        Some(s)
    } else {
        None
    };
    Ok(StatsResult {
        n,
        mean,
        variance,
        asymptotic: asymptotic_moments(n),
        diagnostics,
        pmf: pmf.then(|| pmf_rows(n)),
    })
}

impl Render for StatsResult {
    fn command(&self) -> &'static str {
        "stats"
    }

    fn json_fields(&self) -> Map<String, Value> {
        let mut map = Map::new();
        map.insert("n".into(), self.n.into());
        map.insert("mean".into(), self.mean.to_string().into());
        map.insert("mean_float".into(), rat_to_f64(&self.mean).into());
        map.insert("variance".into(), self.variance.to_string().into());
        map.insert("variance_float".into(), rat_to_f64(&self.variance).into());
        map.insert("asymptotic_mean".into(), self.asymptotic.0.into());
        map.insert("asymptotic_variance".into(), self.asymptotic.1.into());
        if let Some(d) = &self.diagnostics {
            map.insert("ks_to_normal".into(), d.ks_to_normal.into());
            map.insert("mgf_log_residual".into(), d.mgf_log_residual.into());
            map.insert(
                "mgf_residuals".into(),
                serde_json::to_value(&d.mgf_residuals).expect("residuals serialize"),
            );
        }
        if let Some(rows) = &self.pmf {
            map.insert(
                "pmf".into(),
                serde_json::to_value(rows).expect("rows serialize"),
            );
        }
        map
    }

    fn table(&self) -> Table {
        if let Some(rows) = &self.pmf {
            return Table {
                header: vec!["k", "p_exact_num", "p_exact_den", "p_float", "normalized_k"],
                rows: rows
                    .iter()
                    .map(|r| {
                        vec![
                            r.k.to_string(),
                            r.p_exact_num.clone(),
                            r.p_exact_den.clone(),
                            r.p_float.to_string(),
                            r.normalized_k.to_string(),
                        ]
                    })
                    .collect(),
            };
        }
        let mut header = vec![
            "n",
            "mean",
            "mean_float",
            "variance",
            "variance_float",
            "asymptotic_mean",
            "asymptotic_variance",
        ];
        let mut row = vec![
            self.n.to_string(),
            self.mean.to_string(),
            rat_to_f64(&self.mean).to_string(),
            self.variance.to_string(),
            rat_to_f64(&self.variance).to_string(),
            self.asymptotic.0.to_string(),
            self.asymptotic.1.to_string(),
        ];
        if let Some(d) = &self.diagnostics {
            header.extend(["ks_to_normal", "mgf_log_residual"]);
            row.extend([d.ks_to_normal.to_string(), d.mgf_log_residual.to_string()]);
        }
        Table {
            header,
            rows: vec![row],
        }
    }

    fn plain(&self) -> String {
        let mut lines = vec![
            format!("n: {}", self.n),
            format!("mean: {} ({:.12})", self.mean, rat_to_f64(&self.mean)),
            format!(
                "variance: {} ({:.12})",
                self.variance,
                rat_to_f64(&self.variance)
            ),
            format!(
                "asymptotic mean, variance: {:.12}, {:.12}",
                self.asymptotic.0, self.asymptotic.1
            ),
        ];
        if let Some(d) = &self.diagnostics {
            lines.push(format!("ks_to_normal: {:.6e}", d.ks_to_normal));
            for r in &d.mgf_residuals {
                lines.push(format!("|log M({}) - t^2/2|: {:.6e}", r.t, r.residual));
            }
        }
        if let Some(rows) = &self.pmf {
            for r in rows {
                lines.push(format!(
                    "P(Y = {}) = {}/{}",
                    r.k, r.p_exact_num, r.p_exact_den
                ));
            }
        }
        lines.join("\n")
    }
}

// ---- gaps ----

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum GapMethod {
    Formula,
    Enumerate,
}

pub struct GapsResult {
    histogram: GapHistogram,
    rows: Vec<GapRow>,
}

pub fn gaps(n: usize, method: GapMethod) -> Result<GapsResult, CliError> {
    let histogram = match method {
        GapMethod::Formula => {
            if n > MAX_GAPS_FORMULA_N {
                return Err(over("n", n, MAX_GAPS_FORMULA_N));
            }
            GapHistogram::from_formula(n)
        }
        GapMethod::Enumerate => gap_histogram_bruteforce(n, false)?,
    };
    let expected = generacci::gaps::total_gaps(n);
    ensure(histogram.total_gaps == expected, || {
        format!(
            "gap counts at n = {n} sum to {}, expected {expected}",
            histogram.total_gaps
        )
    })?;
    Ok(GapsResult {
        rows: histogram.rows(),
        histogram,
    })
}

impl Render for GapsResult {
    fn command(&self) -> &'static str {
        "gaps"
    }

    fn json_fields(&self) -> Map<String, Value> {
        let counts: Map<String, Value> = self
            .histogram
            .counts
            .iter()
            .map(|(g, c)| (g.to_string(), Value::String(c.to_string())))
            .collect();
        fields(json!({
            "n": self.histogram.n,
            "total_gaps": self.histogram.total_gaps.to_string(),
            "counts": counts,
            "rows": self.rows,
        }))
    }

    fn table(&self) -> Table {
        Table {
            header: vec!["g", "count", "p_n_float", "p_limit_float"],
            rows: self
                .rows
                .iter()
                .map(|r| {
                    vec![
                        r.g.to_string(),
                        r.count.clone(),
                        r.p_n_float.to_string(),
                        r.p_limit_float.to_string(),
                    ]
                })
                .collect(),
        }
    }

    fn plain(&self) -> String {
        let entries: Vec<String> = self
            .histogram
            .counts
            .iter()
            .map(|(g, c)| format!("{g}:{c}"))
            .collect();
        format!("{{{}}}", entries.join(", "))
    }
}

// ---- sample ----

pub struct SampleResult {
    report: SampleReport,
}

pub fn sample(
    count: u64,
    bound: &str,
    seed: u64,
    workers: usize,
) -> Result<SampleResult, CliError> {
    if count > MAX_SAMPLES {
        return Err(over("--count", count, MAX_SAMPLES));
    }
    if workers > MAX_WORKERS {
        return Err(over("--workers", workers, MAX_WORKERS));
    }
    let cfg = SampleConfig::new(count, parse_nat(bound)?, seed, workers)?;
    let report = run_experiment(&cfg)?;
    ensure(report.histogram.values().sum::<u64>() == count, || {
        "histogram does not account for every sample".into()
    })?;
    Ok(SampleResult { report })
}

impl SampleResult {
    fn frequencies(&self) -> BTreeMap<usize, (u64, f64)> {
        let total = self.report.config.count as f64;
        self.report
            .histogram
            .iter()
            .map(|(&k, &c)| (k, (c, c as f64 / total)))
            .collect()
    }
}

impl Render for SampleResult {
    fn command(&self) -> &'static str {
        "sample"
    }

    fn json_fields(&self) -> Map<String, Value> {
        let r = &self.report;
        let histogram: Vec<Value> = self
            .frequencies()
            .into_iter()
            .map(|(k, (c, f))| json!({"k": k, "count": c, "frequency": f}))
            .collect();
        fields(json!({
            "count": r.config.count,
            "bound": r.config.bound.to_string(),
            "seed": r.config.seed,
            "workers": r.config.workers,
            "rng": "ChaCha8Rng seed_from_u64(seed), stream = worker index",
            "empirical_mean": r.empirical_mean,
            "empirical_std": r.empirical_std,
            "n_eff": r.n_eff,
            "predicted_mean": r.predicted_mean,
            "predicted_std": r.predicted_std,
            "exact_mean": r.exact_mean,
            "exact_std": r.exact_std,
            "histogram": histogram,
        }))
    }

    fn table(&self) -> Table {
        Table {
            header: vec!["k", "count", "frequency"],
            rows: self
                .frequencies()
                .into_iter()
                .map(|(k, (c, f))| vec![k.to_string(), c.to_string(), f.to_string()])
                .collect(),
        }
    }

    fn plain(&self) -> String {
        let r = &self.report;
        let mut lines = vec![
            format!(
                "samples: {} below {} (seed {}, {} workers)",
                r.config.count, r.config.bound, r.config.seed, r.config.workers
            ),
            format!(
                "empirical mean, std: {:.6}, {:.6}",
                r.empirical_mean, r.empirical_std
            ),
            format!(
                "predicted at n_eff = {}: {:.6}, {:.6}",
                r.n_eff, r.predicted_mean, r.predicted_std
            ),
            format!("exact below bound: {:.6}, {:.6}", r.exact_mean, r.exact_std),
            "k count frequency".to_string(),
        ];
        for (k, (c, f)) in self.frequencies() {
            lines.push(format!("{k} {c} {f:.6}"));
        }
        lines.join("\n")
    }
}
