//! Executes single runs, ensembles and figure recipes.

use std::f64::consts::{FRAC_PI_3, FRAC_PI_4, FRAC_PI_6};
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use qwalk_core::{
    classical_rw_distribution, localization_length, run_ensemble, symmetry_deviation, CoinParams,
    DisorderMode, DisorderSpec, EnsembleStats, InitialStateParams, PositionDistribution, Preset,
    SEED_MIXER_ID,
};
use serde_json::json;

use crate::config::{ExperimentConfig, Recipe, DEFAULT_STEPS};
use crate::error::CliError;
use crate::output::{
    sibling, write_all, Column, DataTable, LocalizationRecord, MetricsReport, PendingFile,
    RunRecord,
};

pub const FIG3_STEPS: [usize; 3] = [100, 200, 400];
pub const FIG4_REFERENCE_THETAS: [f64; 3] = [FRAC_PI_6, FRAC_PI_4, FRAC_PI_3];

/// Paths written by [`run_experiment`], in write order.
#[derive(Debug, Clone, PartialEq)]
pub struct RunOutcome {
    pub data_files: Vec<PathBuf>,
    pub metrics_file: PathBuf,
    pub meta_file: PathBuf,
}

/// A simulated regime: one run for ordered specs, an ensemble otherwise.
struct Simulation {
    stats: EnsembleStats,
    ensemble: bool,
}

impl Simulation {
    fn run(
        spec: &DisorderSpec,
        initial: InitialStateParams,
        steps: usize,
        realizations: usize,
        seed: u64,
    ) -> Result<Self, CliError> {
        // Every realization of an ordered spec is the same walk.
        let r = if spec.mode == DisorderMode::Ordered {
            1
        } else {
            realizations
        };
        let stats = run_ensemble(spec, initial, steps, r, seed)?;
        Ok(Self {
            stats,
            ensemble: r > 1,
        })
    }

    fn ordered(
        coin: CoinParams,
        initial: InitialStateParams,
        steps: usize,
    ) -> Result<Self, CliError> {
        Self::run(&DisorderSpec::ordered(coin), initial, steps, 1, 0)
    }

    fn distribution(&self) -> &PositionDistribution {
        &self.stats.mean_distribution
    }

    /// Ensemble-mean spread; the plain spread for a single run.
    fn sigma(&self) -> f64 {
        self.stats.mean_std_dev
    }

    fn probability_column(&self) -> &'static str {
        if self.ensemble {
            "p_mean"
        } else {
            "p"
        }
    }

    fn table(&self) -> DataTable {
        let d = self.distribution();
        DataTable::new(vec![
            Column::Int("x", d.iter().map(|(x, _)| x).collect()),
            Column::Real(self.probability_column(), d.p.clone()),
        ])
    }

    fn record(&self, label: &str, file: &Path, preset: &str) -> RunRecord {
        let d = self.distribution();
        let variance = d.variance();
        RunRecord {
            label: label.to_owned(),
            file: file
                .file_name()
                .map(|f| f.to_string_lossy().into_owned())
                .unwrap_or_default(),
            preset: preset.to_owned(),
            t: d.t,
            realizations: self.stats.realizations,
            mean: d.mean(),
            variance,
            std_dev: variance.sqrt(),
            symmetry_deviation: symmetry_deviation(d),
            mean_variance: self.ensemble.then_some(self.stats.mean_variance),
            variance_of_variance: self.ensemble.then_some(self.stats.variance_of_variance),
            mean_std_dev: self.ensemble.then_some(self.stats.mean_std_dev),
            classical_variance: None,
            reference_theta: None,
            loc_length_ratio: None,
            variance_ratio: None,
            max_norm_drift: self.stats.max_norm_drift,
        }
    }

    fn with_reference(
        &self,
        mut record: RunRecord,
        reference: &Simulation,
        reference_theta: f64,
    ) -> Result<RunRecord, CliError> {
        record.reference_theta = Some(reference_theta);
        record.loc_length_ratio = Some(localization_length(self.sigma(), reference.sigma())?);
        record.variance_ratio = Some(self.stats.mean_variance / reference.stats.mean_variance);
        Ok(record)
    }
}

fn spec_label(config: &ExperimentConfig) -> String {
    if config.spec == config.preset.spec() {
        config.preset.name().to_owned()
    } else {
        "custom".to_owned()
    }
}

struct Emitter<'a> {
    config: &'a ExperimentConfig,
    files: Vec<PendingFile>,
    data_files: Vec<PathBuf>,
}

impl<'a> Emitter<'a> {
    fn new(config: &'a ExperimentConfig) -> Self {
        Self {
            config,
            files: Vec::new(),
            data_files: Vec::new(),
        }
    }

    fn recipe_path(&self, name: &str) -> PathBuf {
        self.config
            .output_path
            .join(format!("{name}.{}", self.config.format.extension()))
    }

    fn data(&mut self, path: PathBuf, table: &DataTable) {
        self.data_files.push(path.clone());
        self.files.push(PendingFile {
            path,
            contents: table.render(self.config.format),
        });
    }

    fn finish(
        mut self,
        metrics_path: PathBuf,
        meta_path: PathBuf,
        report: &MetricsReport,
    ) -> Result<RunOutcome, CliError> {
        let mut metrics = serde_json::to_string_pretty(report).expect("metrics serialize");
        metrics.push('\n');
        self.files.push(PendingFile {
            path: metrics_path.clone(),
            contents: metrics,
        });
        self.files.push(PendingFile {
            path: meta_path.clone(),
            contents: metadata(self.config, &self.data_files),
        });
        write_all(&self.files)?;
        Ok(RunOutcome {
            data_files: self.data_files,
            metrics_file: metrics_path,
            meta_file: meta_path,
        })
    }
}

fn metadata(config: &ExperimentConfig, data_files: &[PathBuf]) -> String {
    let generated = SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0);
    let files: Vec<String> = data_files.iter().map(|p| p.display().to_string()).collect();
    let mut s = serde_json::to_string_pretty(&json!({
        "artifact": env!("CARGO_PKG_NAME"),
        "version": env!("CARGO_PKG_VERSION"),
        "seed_mixer": SEED_MIXER_ID,
        "generated_unix_time": generated,
        "config": config,
        "data_files": files,
    }))
    .expect("metadata serialize");
    s.push('\n');
    s
}

fn report(config: &ExperimentConfig, mode: &str, runs: Vec<RunRecord>) -> MetricsReport {
    MetricsReport {
        mode: mode.to_owned(),
        seed: config.master_seed,
        seed_mixer: SEED_MIXER_ID,
        realizations: config.realizations,
        runs,
        localization: Vec::new(),
    }
}

/// Validates `config`, computes everything, then writes the data files, the
/// metrics file and the metadata file. Nothing is written if validation or
/// computation fails.
pub fn run_experiment(config: &ExperimentConfig) -> Result<RunOutcome, CliError> {
    config.validate()?;
    match config.recipe {
        None => run_single(config),
        Some(Recipe::Fig1) => run_fig1(config),
        Some(Recipe::Fig2) => run_fig2(config),
        Some(Recipe::Fig3) => run_fig3(config),
        Some(Recipe::Fig4) => run_fig4(config),
    }
}

fn run_single(config: &ExperimentConfig) -> Result<RunOutcome, CliError> {
    let steps = config.steps_or(DEFAULT_STEPS);
    let sim = Simulation::run(
        &config.spec,
        config.initial,
        steps,
        config.realizations,
        config.master_seed,
    )?;
    let label = spec_label(config);
    let path = config.output_path.clone();
    let mut record = sim.record(&label, &path, &label);
    if let Some(theta) = config.reference_theta {
        let reference = Simulation::ordered(CoinParams::unbiased(theta), config.initial, steps)?;
        record = sim.with_reference(record, &reference, theta)?;
    }
    let mut out = Emitter::new(config);
    out.data(path.clone(), &sim.table());
    let mode = if sim.ensemble { "ensemble" } else { "single" };
    out.finish(
        sibling(&path, ".metrics.json"),
        sibling(&path, ".meta.json"),
        &report(config, mode, vec![record]),
    )
}

fn recipe_outputs(config: &ExperimentConfig) -> (PathBuf, PathBuf) {
    let dir = &config.output_path;
    (dir.join("metrics.json"), dir.join("meta.json"))
}

fn run_fig1(config: &ExperimentConfig) -> Result<RunOutcome, CliError> {
    let steps = config.steps_or(100);
    let preset = Preset::FullRange;
    let sim = Simulation::run(
        &preset.spec(),
        config.initial,
        steps,
        config.realizations,
        config.master_seed,
    )?;
    let crw = classical_rw_distribution(steps);
    let mut out = Emitter::new(config);
    let path = out.recipe_path(&format!("fig1_{preset}_t{steps}"));
    let d = sim.distribution();
    let table = DataTable::new(vec![
        Column::Int("x", d.iter().map(|(x, _)| x).collect()),
        Column::Real(sim.probability_column(), d.p.clone()),
        Column::Real("p_crw", crw.p.clone()),
    ]);
    out.data(path.clone(), &table);
    let mut record = sim.record(preset.name(), &path, preset.name());
    record.classical_variance = Some(crw.variance());
    let (m, meta) = recipe_outputs(config);
    out.finish(m, meta, &report(config, "fig1", vec![record]))
}

fn run_fig2(config: &ExperimentConfig) -> Result<RunOutcome, CliError> {
    let steps = config.steps_or(200);
    let reference = Simulation::ordered(CoinParams::hadamard(), config.initial, steps)?;
    let mut out = Emitter::new(config);
    let mut runs = Vec::new();
    for preset in Preset::ALL {
        let sim = Simulation::run(
            &preset.spec(),
            config.initial,
            steps,
            config.realizations,
            config.master_seed,
        )?;
        let path = out.recipe_path(&format!("fig2_{preset}_t{steps}"));
        out.data(path.clone(), &sim.table());
        let record = sim.record(preset.name(), &path, preset.name());
        runs.push(sim.with_reference(record, &reference, FRAC_PI_4)?);
    }
    let (m, meta) = recipe_outputs(config);
    out.finish(m, meta, &report(config, "fig2", runs))
}

fn run_fig3(config: &ExperimentConfig) -> Result<RunOutcome, CliError> {
    let mut out = Emitter::new(config);
    let mut runs = Vec::new();
    let mut references = Vec::new();
    for t in FIG3_STEPS {
        let reference = Simulation::ordered(CoinParams::hadamard(), config.initial, t)?;
        let sim = Simulation::run(
            &Preset::ThetaHigh.spec(),
            config.initial,
            t,
            config.realizations,
            config.master_seed,
        )?;
        let path = out.recipe_path(&format!("fig3_{}_t{t}", Preset::ThetaHigh));
        out.data(path.clone(), &sim.table());
        let record = sim.record(Preset::ThetaHigh.name(), &path, Preset::ThetaHigh.name());
        runs.push(sim.with_reference(record, &reference, FRAC_PI_4)?);
        references.push((t, reference));
    }
    for (t, reference) in &references {
        let name = Preset::HadamardOrdered.name();
        let path = out.recipe_path(&format!("fig3_{name}_t{t}"));
        out.data(path.clone(), &reference.table());
        runs.push(reference.record(name, &path, name));
    }
    let (m, meta) = recipe_outputs(config);
    out.finish(m, meta, &report(config, "fig3", runs))
}

fn run_fig4(config: &ExperimentConfig) -> Result<RunOutcome, CliError> {
    let steps = config.steps_or(400);
    let disordered = Simulation::run(
        &Preset::ThetaHigh.spec(),
        config.initial,
        steps,
        config.realizations,
        config.master_seed,
    )?;
    let mut t_col = Vec::new();
    let mut theta_col = Vec::new();
    let mut sigma_d = Vec::new();
    let mut sigma_o = Vec::new();
    let mut l_loc = Vec::new();
    let mut var_ratio = Vec::new();
    let mut finals = Vec::new();
    for theta in FIG4_REFERENCE_THETAS {
        let reference = Simulation::ordered(CoinParams::unbiased(theta), config.initial, steps)?;
        for t in 1..=steps {
            let sd = disordered.stats.std_dev_at(t).expect("t within series");
            let so = reference.stats.std_dev_at(t).expect("t within series");
            let ratio = localization_length(sd, so)?;
            let vr = disordered.stats.variance_at(t).expect("t within series")
                / reference.stats.variance_at(t).expect("t within series");
            t_col.push(t as i64);
            theta_col.push(theta);
            sigma_d.push(sd);
            sigma_o.push(so);
            l_loc.push(ratio);
            var_ratio.push(vr);
            if t == steps {
                finals.push(LocalizationRecord {
                    reference_theta: theta,
                    t,
                    loc_length_ratio: ratio,
                    variance_ratio: vr,
                });
            }
        }
    }
    let table = DataTable::new(vec![
        Column::Int("t", t_col),
        Column::Real("theta_ref", theta_col),
        Column::Real("sigma_disordered", sigma_d),
        Column::Real("sigma_ordered", sigma_o),
        Column::Real("l_loc", l_loc),
        Column::Real("variance_ratio", var_ratio),
    ]);
    let mut out = Emitter::new(config);
    let path = out.recipe_path(&format!("fig4_{}_loc_length_t{steps}", Preset::ThetaHigh));
    out.data(path.clone(), &table);
    let record = disordered.record(Preset::ThetaHigh.name(), &path, Preset::ThetaHigh.name());
    let mut rep = report(config, "fig4", vec![record]);
    rep.localization = finals;
    let (m, meta) = recipe_outputs(config);
    out.finish(m, meta, &rep)
}
