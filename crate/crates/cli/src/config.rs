//! Run configuration: a TOML file with strictly checked sections.
//!
//! Complex numbers are written `"a+bi"`, `"a-bi"`, `"a"` or `"bi"` with no
//! spaces. A generator is two rows of two entries:
//!
//! ```toml
//! [group]
//! generators = [[["2+0i", "0+0i"], ["0+0i", "0.5+0i"]]]
//! ```
//!
//! or, for Schottky groups in the normalized chart, `schottky = ["μ₁", "μ₂", "b₂", …]`.

use oddzeta::words::{DEFAULT_DELTA_TOLERANCE, DEFAULT_MEMORY_BUDGET};
use oddzeta::zograf::{ScanOracle, SchottkyPoint, DEFAULT_STEP};
use oddzeta::{MoebiusMap, Variant, C64};
use serde::Deserialize;

use crate::CliError;

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawConfig {
    pub group: RawGroup,
    #[serde(default)]
    pub cutoffs: Cutoffs,
    #[serde(default)]
    pub grids: RawGrids,
    #[serde(default)]
    pub zeta: ZetaSection,
    #[serde(default)]
    pub scan: RawScan,
    #[serde(default)]
    pub tolerances: Tolerances,
    #[serde(default)]
    pub run: RunSection,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawGroup {
    pub generators: Option<Vec<Vec<Vec<String>>>>,
    pub schottky: Option<Vec<String>>,
    /// Sign of the SL(2,ℂ) lift of each generator.
    pub spin_signs: Option<Vec<i32>>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Cutoffs {
    pub word_length: usize,
    pub inner: usize,
    pub delta_word_length: usize,
}

impl Default for Cutoffs {
    fn default() -> Self {
        Self { word_length: 5, inner: 30, delta_word_length: 8 }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RawGrids {
    pub lambda: Vec<String>,
    pub t: Vec<f64>,
    pub r: Vec<f64>,
    /// `d` in ℍ^{d+1} for the resolvent kernels.
    pub kernel_dimension: u32,
    /// `n` in ℍ^{2n+1} for the spinor heat kernel.
    pub heat_n: u32,
}

impl Default for RawGrids {
    fn default() -> Self {
        Self { lambda: Vec::new(), t: Vec::new(), r: Vec::new(), kernel_dimension: 2, heat_n: 1 }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ZetaSection {
    pub variant: Variant,
    pub swap_characters: bool,
}

impl Default for ZetaSection {
    fn default() -> Self {
        Self { variant: Variant::Signature, swap_characters: false }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RawScan {
    /// Scan a single parameter; all of them when absent.
    pub param_index: Option<usize>,
    pub h: f64,
    pub oracle: ScanOracle,
}

impl Default for RawScan {
    fn default() -> Self {
        Self { param_index: None, h: DEFAULT_STEP, oracle: ScanOracle::Eta }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Tolerances {
    /// Largest accepted `|det - 1|` before renormalization.
    pub det: f64,
    pub delta_bracket: f64,
    pub memory_budget: u64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self { det: 1e-6, delta_bracket: DEFAULT_DELTA_TOLERANCE, memory_budget: DEFAULT_MEMORY_BUDGET }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RunSection {
    pub threads: usize,
}

impl Default for RunSection {
    fn default() -> Self {
        Self { threads: 1 }
    }
}

/// Validated configuration.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub generators: Vec<MoebiusMap>,
    pub schottky: Option<SchottkyPoint>,
    pub cutoffs: Cutoffs,
    pub lambda: Vec<C64>,
    pub t: Vec<f64>,
    pub r: Vec<f64>,
    pub kernel_dimension: u32,
    pub heat_n: u32,
    pub zeta: ZetaSection,
    pub scan: RawScan,
    pub tolerances: Tolerances,
    pub threads: usize,
}

fn config_error(msg: impl Into<String>) -> CliError {
    CliError::Config(msg.into())
}

/// Parses `"a+bi"`, `"a-bi"`, `"a"` and `"bi"`.
pub fn parse_complex(s: &str) -> Option<C64> {
    if s.is_empty() || s.contains(char::is_whitespace) {
        return None;
    }
    let Some(body) = s.strip_suffix('i') else {
        return s.parse::<f64>().ok().map(|re| C64::new(re, 0.0));
    };
    let bytes = body.as_bytes();
    let split = (1..bytes.len()).rev().find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let imag = |t: &str| match t {
        "" | "+" => Some(1.0),
        "-" => Some(-1.0),
        _ => t.parse::<f64>().ok(),
    };
    match split {
        Some(k) => Some(C64::new(body[..k].parse().ok()?, imag(&body[k..])?)),
        None => Some(C64::new(0.0, imag(body)?)),
    }
}

fn sorted_by<T, K: PartialOrd>(v: &[T], key: impl Fn(&T) -> K) -> bool {
    v.windows(2).all(|w| key(&w[0]) <= key(&w[1]))
}

impl RawConfig {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        toml::from_str(text).map_err(|e| config_error(e.to_string()))
    }

    pub fn validate(self) -> Result<RunConfig, CliError> {
        let (mut generators, schottky) = match (&self.group.generators, &self.group.schottky) {
            (Some(_), Some(_)) => return Err(config_error("[group]: give either generators or schottky, not both")),
            (None, None) => return Err(config_error("[group]: missing generators or schottky")),
            (Some(gens), None) => (parse_generators(gens, self.tolerances.det)?, None),
            (None, Some(params)) => {
                let values = params
                    .iter()
                    .enumerate()
                    .map(|(k, s)| {
                        parse_complex(s).ok_or_else(|| config_error(format!("[group] schottky parameter {}: cannot parse {s:?}", k + 1)))
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                let point = SchottkyPoint::new(values).map_err(|e| config_error(format!("[group] schottky: {e}")))?;
                (point.generators.clone(), Some(point))
            }
        };
        if let Some(signs) = &self.group.spin_signs {
            if signs.len() != generators.len() || signs.iter().any(|s| s.abs() != 1) {
                return Err(config_error("[group] spin_signs: need one entry of 1 or -1 per generator"));
            }
            for (g, &s) in generators.iter_mut().zip(signs) {
                if s < 0 {
                    *g = -*g;
                }
            }
        }
        let c = &self.cutoffs;
        if c.word_length < 1 || c.inner < 1 {
            return Err(config_error("[cutoffs]: word_length and inner must be at least 1"));
        }
        if c.delta_word_length < 4 {
            return Err(config_error("[cutoffs] delta_word_length: must be at least 4"));
        }
        let lambda = self
            .grids
            .lambda
            .iter()
            .enumerate()
            .map(|(k, s)| parse_complex(s).ok_or_else(|| config_error(format!("[grids] lambda entry {}: cannot parse {s:?}", k + 1))))
            .collect::<Result<Vec<_>, _>>()?;
        if !sorted_by(&lambda, |z| (z.re, z.im)) {
            return Err(config_error("[grids] lambda: entries must be sorted by real, then imaginary part"));
        }
        for (name, grid) in [("t", &self.grids.t), ("r", &self.grids.r)] {
            if grid.iter().any(|x| !x.is_finite() || *x <= 0.0) {
                return Err(config_error(format!("[grids] {name}: entries must be positive and finite")));
            }
            if !sorted_by(grid, |x| *x) {
                return Err(config_error(format!("[grids] {name}: entries must be sorted ascending")));
            }
        }
        if self.grids.kernel_dimension < 1 || self.grids.heat_n < 1 {
            return Err(config_error("[grids]: kernel_dimension and heat_n must be at least 1"));
        }
        let tol = &self.tolerances;
        if !(tol.det > 0.0 && tol.delta_bracket > 0.0) || tol.memory_budget == 0 {
            return Err(config_error("[tolerances]: all tolerances must be positive"));
        }
        if !(self.scan.h > 0.0) {
            return Err(config_error("[scan] h: must be positive"));
        }
        if self.run.threads < 1 {
            return Err(config_error("[run] threads: must be at least 1"));
        }
        Ok(RunConfig {
            generators,
            schottky,
            cutoffs: self.cutoffs,
            lambda,
            t: self.grids.t,
            r: self.grids.r,
            kernel_dimension: self.grids.kernel_dimension,
            heat_n: self.grids.heat_n,
            zeta: self.zeta,
            scan: self.scan,
            tolerances: self.tolerances,
            threads: self.run.threads,
        })
    }
}

fn parse_generators(raw: &[Vec<Vec<String>>], det_tol: f64) -> Result<Vec<MoebiusMap>, CliError> {
    if raw.is_empty() {
        return Err(config_error("[group] generators: at least one generator is required"));
    }
    raw.iter()
        .enumerate()
        .map(|(gi, rows)| {
            let g = gi + 1;
            if rows.len() != 2 || rows.iter().any(|r| r.len() != 2) {
                return Err(config_error(format!("[group] generator {g}: expected two rows of two entries")));
            }
            let mut e = [C64::new(0.0, 0.0); 4];
            for (ri, row) in rows.iter().enumerate() {
                for (ci, s) in row.iter().enumerate() {
                    e[2 * ri + ci] = parse_complex(s).ok_or_else(|| {
                        config_error(format!("[group] generator {g}, row {}, column {}: cannot parse {s:?}", ri + 1, ci + 1))
                    })?;
                }
            }
            let det = e[0] * e[3] - e[1] * e[2];
            if (det - 1.0).norm() > det_tol {
                return Err(config_error(format!("[group] generator {g}: determinant {det} differs from 1 by more than {det_tol}")));
            }
            MoebiusMap::from_unnormalized(e[0], e[1], e[2], e[3]).map_err(|err| config_error(format!("[group] generator {g}: {err}")))
        })
        .collect()
}
