//! Run configuration: JSON domain specifications, matrix sources and the
//! knobs shared by the subcommands.

use std::fs;
use std::path::{Path, PathBuf};

use faberkit::ensembles::{self, Family};
use faberkit::geometry::{ConvexBase, DomainE};
use faberkit::linalg::Mat;
use faberkit::mmio;
use faberkit::{C64, Error};
use serde::Deserialize;

#[derive(Debug, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case", deny_unknown_fields)]
pub enum DomainSpec {
    Disk { center: [f64; 2], radius: f64 },
    Ellipse { center: [f64; 2], semi_major: f64, semi_minor: f64, rotation: f64 },
    Polygon { vertices: Vec<[f64; 2]> },
    DiskCut { base: Box<DomainSpec>, cut_center: [f64; 2], cut_radius: f64 },
    Lens { c0: f64, r0: f64, c1: f64, r1: f64 },
}

impl DomainSpec {
    pub fn build(&self) -> Result<DomainE<f64>, Error> {
        let base_of = |spec: &DomainSpec| -> Result<ConvexBase<f64>, Error> {
            match spec {
                DomainSpec::Disk { center, radius } => ConvexBase::disk(C64::new(center[0], center[1]), *radius),
                DomainSpec::Ellipse { center, semi_major, semi_minor, rotation } => {
                    ConvexBase::ellipse(C64::new(center[0], center[1]), *semi_major, *semi_minor, *rotation)
                }
                DomainSpec::Polygon { vertices } => {
                    ConvexBase::hull_polygon(vertices.iter().map(|v| C64::new(v[0], v[1])).collect())
                }
                _ => Err(Error::ConfigurationError("disk-cut base must be a convex set".into())),
            }
        };
        match self {
            DomainSpec::Lens { c0, r0, c1, r1 } => DomainE::lens(*c0, *r0, *c1, *r1),
            DomainSpec::DiskCut { base, cut_center, cut_radius } => {
                DomainE::disk_cut(base_of(base)?, C64::new(cut_center[0], cut_center[1]), *cut_radius)
            }
            other => Ok(DomainE::convex(base_of(other)?)),
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorSpec {
    pub family: String,
    pub size: usize,
    pub seed: u64,
    /// Optional affine placement A -> shift + scale * A.
    #[serde(default)]
    pub shift: Option<[f64; 2]>,
    #[serde(default)]
    pub scale: Option<f64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixSource {
    #[serde(default)]
    pub path: Option<PathBuf>,
    #[serde(default)]
    pub generator: Option<GeneratorSpec>,
}

impl MatrixSource {
    pub fn load(&self, base_dir: &Path, seed_override: Option<u64>) -> Result<Mat<f64>, Error> {
        match (&self.path, &self.generator) {
            (Some(path), None) => {
                let full = if path.is_absolute() { path.clone() } else { base_dir.join(path) };
                mmio::read_matrix_market(&full)
            }
            (None, Some(generator)) => {
                let family = Family::parse(&generator.family).ok_or_else(|| {
                    Error::ConfigurationError(format!("unknown generator family '{}'", generator.family))
                })?;
                let seed = seed_override.unwrap_or(generator.seed);
                let mut a = ensembles::generate::<f64>(family, generator.size, seed);
                if let Some(scale) = generator.scale {
                    a = a.scale(C64::new(scale, 0.0));
                }
                if let Some(shift) = generator.shift {
                    let s = C64::new(shift[0], shift[1]);
                    a = a.shift_diag(-s);
                }
                Ok(a)
            }
            _ => Err(Error::ConfigurationError("matrix source needs exactly one of 'path' or 'generator'".into())),
        }
    }
}

fn default_nodes() -> usize {
    1024
}

fn default_samples() -> usize {
    2048
}

fn default_angles() -> usize {
    360
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Tolerances {
    #[serde(default = "default_norm_tol")]
    pub norm_inequality: f64,
}

fn default_norm_tol() -> f64 {
    1e-6
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances { norm_inequality: default_norm_tol() }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(default)]
    pub domain: Option<DomainSpec>,
    #[serde(default)]
    pub matrix: Option<MatrixSource>,
    /// Inclusive degree range [lo, hi].
    #[serde(default)]
    pub n_range: Option<[usize; 2]>,
    #[serde(default = "default_nodes")]
    pub nodes: usize,
    #[serde(default = "default_samples")]
    pub samples: usize,
    #[serde(default = "default_angles")]
    pub n_angles: usize,
    #[serde(default)]
    pub tolerances: Tolerances,
    #[serde(default)]
    pub seed: Option<u64>,
    /// Theorem case for bound-suite: "a" or "b".
    #[serde(default)]
    pub case: Option<String>,
    /// Elman sweep parameters (lens-gamma).
    #[serde(default)]
    pub beta: Option<f64>,
    #[serde(default)]
    pub r1: Option<f64>,
    #[serde(default)]
    pub sweep_exponents: Option<Vec<u32>>,
    #[serde(default)]
    pub out_dir: Option<PathBuf>,
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<(Self, PathBuf), Error> {
        let text = fs::read_to_string(path)
            .map_err(|e| Error::ConfigurationError(format!("cannot read config {}: {e}", path.display())))?;
        let cfg: RunConfig = serde_json::from_str(&text)
            .map_err(|e| Error::ConfigurationError(format!("invalid config JSON: {e}")))?;
        cfg.validate()?;
        let base_dir = path.parent().unwrap_or_else(|| Path::new(".")).to_path_buf();
        Ok((cfg, base_dir))
    }

    fn validate(&self) -> Result<(), Error> {
        if let Some([lo, hi]) = self.n_range {
            if hi < lo {
                return Err(Error::ConfigurationError("n_range must be ascending and nonempty".into()));
            }
        }
        if !(self.tolerances.norm_inequality > 0.0) {
            return Err(Error::ConfigurationError("tolerances must be positive".into()));
        }
        if let Some(case) = &self.case {
            if case != "a" && case != "b" {
                return Err(Error::ConfigurationError("case must be \"a\" or \"b\"".into()));
            }
        }
        Ok(())
    }

    pub fn degrees(&self, nmax_override: Option<usize>) -> Vec<usize> {
        let [lo, hi] = match (nmax_override, self.n_range) {
            (Some(nmax), _) => [1, nmax],
            (None, Some(range)) => range,
            (None, None) => [1, 10],
        };
        (lo..=hi).collect()
    }

    pub fn require_domain(&self) -> Result<DomainE<f64>, Error> {
        self.domain
            .as_ref()
            .ok_or_else(|| Error::ConfigurationError("config needs a 'domain' object".into()))?
            .build()
    }

    pub fn require_matrix(&self, base_dir: &Path, seed_override: Option<u64>) -> Result<Mat<f64>, Error> {
        self.matrix
            .as_ref()
            .ok_or_else(|| Error::ConfigurationError("config needs a 'matrix' object".into()))?
            .load(base_dir, seed_override.or(self.seed))
    }
}
