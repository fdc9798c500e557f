use std::path::PathBuf;

use clap::ValueEnum;
use serde::{Deserialize, Serialize};

use ritz_lagrange::problems::{
    BasisVariant, ProblemId, ProblemSpec, QuadratureSettings, DEFAULT_NU,
};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Csv,
    Markdown,
    Json,
}

/// Per-field replacements of the default quadrature orders.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct QuadratureOverrides {
    pub order: Option<usize>,
    pub min_panels: Option<usize>,
    pub disk_radial: Option<usize>,
    pub disk_angular: Option<usize>,
    pub circle_segment_order: Option<usize>,
    pub edge_order: Option<usize>,
}

impl QuadratureOverrides {
    pub fn apply(&self, base: QuadratureSettings) -> QuadratureSettings {
        QuadratureSettings {
            order: self.order.unwrap_or(base.order),
            min_panels: self.min_panels.unwrap_or(base.min_panels),
            disk_radial: self.disk_radial.unwrap_or(base.disk_radial),
            disk_angular: self.disk_angular.unwrap_or(base.disk_angular),
            circle_segment_order: self
                .circle_segment_order
                .unwrap_or(base.circle_segment_order),
            edge_order: self.edge_order.unwrap_or(base.edge_order),
        }
    }
}

/// One solve as requested on the command line or in a config file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(with = "text")]
    pub problem: ProblemId,
    pub n: usize,
    #[serde(default)]
    pub s: Option<usize>,
    /// `None` selects the problem's default family.
    #[serde(default, with = "text_opt")]
    pub basis: Option<BasisVariant>,
    #[serde(default = "default_nu")]
    pub nu: f64,
    #[serde(default)]
    pub quadrature: QuadratureOverrides,
    #[serde(default)]
    pub format: OutputFormat,
    #[serde(default)]
    pub out: Option<PathBuf>,
    /// Accepted for compatibility; every computation is deterministic.
    #[serde(default)]
    pub seed: u64,
}

fn default_nu() -> f64 {
    DEFAULT_NU
}

impl RunConfig {
    pub fn new(problem: ProblemId, n: usize) -> Self {
        Self {
            problem,
            n,
            s: None,
            basis: None,
            nu: DEFAULT_NU,
            quadrature: QuadratureOverrides::default(),
            format: OutputFormat::default(),
            out: None,
            seed: 0,
        }
    }

    pub fn spec(&self) -> ProblemSpec {
        let mut spec = ProblemSpec::new(self.problem).with_nu(self.nu);
        if let Some(variant) = self.basis {
            spec = spec.with_variant(variant);
        }
        let quadrature = self.quadrature.apply(spec.quadrature);
        spec.with_quadrature(quadrature)
    }

    /// `s` for problems that take one, 0 otherwise.
    pub fn s_or_zero(&self) -> usize {
        self.s.unwrap_or(0)
    }
}

/// Serialize through `Display` and parse back through `FromStr`.
mod text {
    use std::fmt::Display;
    use std::str::FromStr;

    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<T: Display, S: Serializer>(value: &T, ser: S) -> Result<S::Ok, S::Error> {
        ser.collect_str(value)
    }

    pub fn deserialize<'de, T, D>(de: D) -> Result<T, D::Error>
    where
        T: FromStr,
        T::Err: Display,
        D: Deserializer<'de>,
    {
        String::deserialize(de)?.parse().map_err(D::Error::custom)
    }
}

mod text_opt {
    use std::fmt::Display;
    use std::str::FromStr;

    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<T: Display, S: Serializer>(
        value: &Option<T>,
        ser: S,
    ) -> Result<S::Ok, S::Error> {
        match value {
            Some(v) => ser.collect_str(v),
            None => ser.serialize_none(),
        }
    }

    pub fn deserialize<'de, T, D>(de: D) -> Result<Option<T>, D::Error>
    where
        T: FromStr,
        T::Err: Display,
        D: Deserializer<'de>,
    {
        Option::<String>::deserialize(de)?
            .map(|s| s.parse().map_err(D::Error::custom))
            .transpose()
    }
}
