pub mod bound;
pub mod classical;
pub mod feasibility;
pub mod ldos;
pub mod specfun;

use crate::args::ScanArgs;
use crate::config::{load_layer, OutputConfig, OUTPUT_KEYS};
use crate::error::{config, CliResult};
use crate::presets::{scan_preset, ScanPreset, View};
use conecollapse::states::YMode;

pub const SCAN_KEYS: [&str; 12] = [
    "alpha",
    "r",
    "eps-min",
    "eps-max",
    "points-per-decade",
    "near-eps-min",
    "near-eps-max",
    "near-points-per-decade",
    "near-r",
    "lmax",
    "paper-y-cutoff",
    "n-max",
];

/// Fully resolved settings of `bound-spectrum`, `ldos` and `feasibility`.
#[derive(Debug, Clone, PartialEq)]
pub struct ScanConfig {
    pub command: &'static str,
    pub output: OutputConfig,
    pub alphas: Vec<f64>,
    /// Empty means "command default" (the observation radius for
    /// `feasibility`).
    pub rs: Vec<f64>,
    pub eps: (f64, f64),
    pub points_per_decade: usize,
    pub near: Option<(f64, f64)>,
    pub near_points_per_decade: usize,
    pub near_rs: Vec<f64>,
    pub l_max: u32,
    pub y_mode: YMode,
    pub n_max: i64,
    pub view: View,
}

struct Defaults {
    alphas: Vec<f64>,
    rs: Vec<f64>,
    eps: (f64, f64),
}

fn defaults(command: &str) -> Defaults {
    match command {
        "bound-spectrum" => Defaults {
            alphas: vec![1.0 / 6.0],
            rs: vec![],
            eps: (1e-4, 10.0),
        },
        "feasibility" => Defaults {
            alphas: vec![0.5],
            rs: vec![],
            eps: (1e-6, 1e-3),
        },
        _ => Defaults {
            alphas: vec![0.5],
            rs: vec![10.0],
            eps: (1e-4, 10.0),
        },
    }
}

impl ScanConfig {
    pub fn resolve(command: &'static str, args: &ScanArgs) -> CliResult<Self> {
        let mut known: Vec<&str> = SCAN_KEYS.to_vec();
        known.extend(OUTPUT_KEYS);
        let file = load_layer(args.output.config.as_deref(), command, &known)?;
        let output = OutputConfig::resolve(&args.output, &file)?;
        let preset = match &output.preset {
            Some(name) => scan_preset(command, name)
                .ok_or_else(|| config(format!("no preset '{name}' for {command}")))?,
            None => ScanPreset::default(),
        };
        let d = defaults(command);
        let list = |flag: &Vec<f64>, key: &str, p: &Option<Vec<f64>>, def: Vec<f64>| -> CliResult<Vec<f64>> {
            Ok(if !flag.is_empty() {
                flag.clone()
            } else if let Some(v) = file.numbers(key)? {
                v
            } else {
                p.clone().unwrap_or(def)
            })
        };
        let num = |flag: Option<f64>, key: &str, p: Option<f64>, def: f64| -> CliResult<f64> {
            Ok(flag.or(file.number(key)?).or(p).unwrap_or(def))
        };
        let alphas = list(&args.alpha, "alpha", &preset.alphas, d.alphas)?;
        let rs = list(&args.r, "r", &preset.rs, d.rs)?;
        let eps = (
            num(args.eps_min, "eps-min", preset.eps.map(|e| e.0), d.eps.0)?,
            num(args.eps_max, "eps-max", preset.eps.map(|e| e.1), d.eps.1)?,
        );
        let points_per_decade = args
            .points_per_decade
            .or(file.parsed("points-per-decade")?)
            .or(preset.points_per_decade)
            .unwrap_or(64);
        let near_lo = args.near_eps_min.or(file.number("near-eps-min")?).or(preset.near.map(|n| n.0));
        let near_hi = args.near_eps_max.or(file.number("near-eps-max")?).or(preset.near.map(|n| n.1));
        let near = match (near_lo, near_hi) {
            (Some(a), Some(b)) => Some((a, b)),
            (None, None) => None,
            _ => return Err(config("near-eps-min and near-eps-max must be given together")),
        };
        let near_points_per_decade = file
            .parsed("near-points-per-decade")?
            .or(preset.near_points_per_decade)
            .unwrap_or(16);
        let near_rs = list(&args.near_r, "near-r", &preset.near_rs, rs.clone())?;
        let l_max = args.lmax.or(file.parsed("lmax")?).unwrap_or(50);
        let cutoff = args.paper_y_cutoff || file.flag("paper-y-cutoff")?.unwrap_or(false);
        let n_max = args.n_max.or(file.parsed("n-max")?).or(preset.n_max).unwrap_or(7);
        let cfg = Self {
            command,
            output,
            alphas,
            rs,
            eps,
            points_per_decade,
            near,
            near_points_per_decade,
            near_rs,
            l_max,
            y_mode: if cutoff { YMode::Clipped } else { YMode::Stable },
            n_max,
            view: preset.view.unwrap_or(View::Ldos),
        };
        cfg.validate()?;
        Ok(cfg)
    }

    fn validate(&self) -> CliResult<()> {
        if self.alphas.is_empty() {
            return Err(config("at least one alpha is required"));
        }
        if let Some(a) = self.alphas.iter().find(|a| !(**a > 0.0 && **a < 1.0)) {
            return Err(config(format!("alpha must lie in (0, 1), got {a}")));
        }
        if let Some(r) = self.rs.iter().chain(&self.near_rs).find(|r| !(**r >= 1.0)) {
            return Err(config(format!("r must be >= 1, got {r}")));
        }
        let (lo, hi) = self.eps;
        if !(lo > 0.0 && hi >= lo) {
            return Err(config(format!("energy window must satisfy 0 < eps-min <= eps-max, got ({lo}, {hi})")));
        }
        if let Some((a, b)) = self.near {
            if !(a > 0.0 && b > a && b <= 1e-3) {
                return Err(config(format!("near-zero window must satisfy 0 < min < max <= 1e-3, got ({a}, {b})")));
            }
        }
        if self.points_per_decade == 0 || self.near_points_per_decade == 0 {
            return Err(config("points per decade must be at least 1"));
        }
        if self.l_max == 0 {
            return Err(config("lmax must be at least 1"));
        }
        if self.n_max < 1 {
            return Err(config("n-max must be at least 1"));
        }
        Ok(())
    }

    pub fn energies(&self) -> Vec<f64> {
        energies(self.eps, self.points_per_decade)
    }

    /// Settings echoed at the top of every output file.
    pub fn metadata(&self) -> Vec<(String, String)> {
        let join = |v: &[f64]| v.iter().map(|x| format!("{x:e}")).collect::<Vec<_>>().join(",");
        let mut m = header(self.command, self.output.preset.as_deref());
        m.push(("alpha".into(), join(&self.alphas)));
        if !self.rs.is_empty() {
            m.push(("r".into(), join(&self.rs)));
        }
        m.push(("eps-range".into(), format!("{:e},{:e}", self.eps.0, self.eps.1)));
        m.push(("points-per-decade".into(), self.points_per_decade.to_string()));
        if let Some((a, b)) = self.near {
            m.push(("near-eps-range".into(), format!("{a:e},{b:e}")));
            m.push(("near-points-per-decade".into(), self.near_points_per_decade.to_string()));
            m.push(("near-r".into(), join(&self.near_rs)));
        }
        m.push(("lmax".into(), self.l_max.to_string()));
        m.push((
            "y-mode".into(),
            match self.y_mode {
                YMode::Stable => "stable-ratio".into(),
                YMode::Clipped => format!("cutoff |Y| <= {}", conecollapse::states::Y_CLIP),
            },
        ));
        m.push(("n-max".into(), self.n_max.to_string()));
        m
    }
}

pub fn energies(window: (f64, f64), points_per_decade: usize) -> Vec<f64> {
    if window.0 == window.1 {
        vec![window.0]
    } else {
        conecollapse::ldos::log_space(window.0, window.1, points_per_decade)
    }
}

/// First metadata lines: tool, build and numerical settings.
pub fn header(command: &str, preset: Option<&str>) -> Vec<(String, String)> {
    let policy = conecollapse::specfun::SeriesPolicy::default();
    vec![
        ("conecollapse".into(), env!("CARGO_PKG_VERSION").into()),
        ("build".into(), env!("CONECOLLAPSE_GIT_DESCRIBE").into()),
        ("command".into(), command.into()),
        ("preset".into(), preset.unwrap_or("none").into()),
        ("series-policy".into(), format!("{policy:?}")),
    ]
}

/// Runs `f` on a pool of the configured size.
pub fn with_threads<T: Send>(threads: Option<usize>, f: impl FnOnce() -> T + Send) -> CliResult<T> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = threads {
        builder = builder.num_threads(n);
    }
    let pool = builder.build().map_err(|e| config(format!("thread pool: {e}")))?;
    Ok(pool.install(f))
}
