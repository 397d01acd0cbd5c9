//! Job configuration: a JSON file, command-line flags on top, then defaults.

use std::path::PathBuf;

use clap::{Parser, ValueEnum};
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    /// Irreducibility and isomorphism verdicts.
    Classify,
    /// Bracket and module-axiom sweeps.
    VerifyAxioms,
    /// Generalized Vandermonde closed form against elimination.
    DetCheck,
    /// Degree-reduction trace of an element.
    Reduce,
    /// Cyclic closure of an element inside a window.
    Closure,
    /// The rank invariant R_g.
    Rg,
    /// W_l submodule check for coinciding lambdas.
    WlCheck,
    /// The omega operator applied to an element.
    Omega,
    /// Ranks of iterated d_i images.
    Locfin,
    /// Weight-space summary of the highest-weight quotient.
    HwQuotient,
}

impl Command {
    pub fn name(self) -> String {
        self.to_possible_value().expect("no skipped variants").get_name().to_string()
    }
}

/// Cutoffs shared by the analyses.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct WindowConfig {
    pub max_p: Option<u32>,
    pub max_q: Option<u32>,
    /// Highest-weight level cutoff `N`.
    pub level: Option<u32>,
    /// `f_0`-power cutoff `F`.
    pub f0: Option<u32>,
    pub mode_bound: Option<i64>,
    /// Number of sampled parameter tuples in sweeps.
    pub samples: Option<u32>,
    /// Largest closure dimension before giving up.
    pub max_dim: Option<usize>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct JobConfig {
    pub command: Option<Command>,
    pub family: Option<String>,
    /// One `"lambda,alpha,beta,gamma"` string per rank-one factor.
    pub params: Vec<String>,
    /// Parameters of the second module in isomorphism queries.
    pub against: Vec<String>,
    /// `"eta,eps,theta"`.
    pub hw: Option<String>,
    pub against_hw: Option<String>,
    pub m: Option<usize>,
    /// Tensor element in the text format of `affvir_core::tensor`.
    pub element: Option<String>,
    pub l: Option<i64>,
    pub j: Option<i64>,
    pub r: Option<u32>,
    pub i: Option<i64>,
    pub depth: Option<u32>,
    pub max_m: Option<usize>,
    pub max_size: Option<u32>,
    pub max_r: Option<u32>,
    /// Accept tensor factors from different families.
    pub allow_mixed: Option<bool>,
    pub window: WindowConfig,
    pub output: Option<PathBuf>,
    pub seed: Option<u64>,
}

#[derive(Parser, Debug)]
#[command(name = "affvir", version, about = "Exact computations with tensor product modules over the affine-Virasoro algebra")]
pub struct Cli {
    /// Subcommand; may instead come from the config file.
    pub command: Option<Command>,
    /// JSON config file, or a report whose embedded config is reused.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub family: Option<String>,
    /// Factor parameters "lambda,alpha,beta,gamma"; repeat once per factor.
    #[arg(long)]
    pub params: Vec<String>,
    /// Second module's factor parameters (classify).
    #[arg(long)]
    pub against: Vec<String>,
    /// Highest weight "eta,eps,theta".
    #[arg(long)]
    pub hw: Option<String>,
    /// Second module's highest weight (classify).
    #[arg(long)]
    pub against_hw: Option<String>,
    /// Number of rank-one factors when parameters are sampled.
    #[arg(long)]
    pub m: Option<usize>,
    /// Tensor element, terms separated by ';'.
    #[arg(long = "seed-element", alias = "element")]
    pub element: Option<String>,
    #[arg(long)]
    pub l: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    pub j: Option<i64>,
    #[arg(long)]
    pub r: Option<u32>,
    #[arg(long, allow_hyphen_values = true)]
    pub i: Option<i64>,
    #[arg(long)]
    pub depth: Option<u32>,
    #[arg(long)]
    pub max_m: Option<usize>,
    #[arg(long)]
    pub max_size: Option<u32>,
    #[arg(long)]
    pub max_r: Option<u32>,
    /// Accept tensor factors from different families (no classification guarantees).
    #[arg(long)]
    pub allow_mixed: bool,
    #[arg(long)]
    pub max_p: Option<u32>,
    #[arg(long)]
    pub max_q: Option<u32>,
    /// Highest-weight level cutoff N.
    #[arg(long)]
    pub level: Option<u32>,
    /// f_0-power cutoff F.
    #[arg(long)]
    pub f0: Option<u32>,
    #[arg(long)]
    pub mode_bound: Option<i64>,
    #[arg(long)]
    pub samples: Option<u32>,
    #[arg(long)]
    pub max_dim: Option<usize>,
    /// Report path; stdout when absent.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
    /// Seed of the parameter sampler.
    #[arg(long)]
    pub seed: Option<u64>,
}

macro_rules! overlay {
    ($dst:expr, $src:expr, $($f:ident),*) => {
        $( if $src.$f.is_some() { $dst.$f = $src.$f.clone(); } )*
    };
}

impl JobConfig {
    /// Reads a config, accepting a report and taking its `config` member.
    pub fn from_json(text: &str) -> Result<JobConfig, String> {
        let value: serde_json::Value = serde_json::from_str(text).map_err(|e| format!("config: {e}"))?;
        let value = match value.get("config") {
            Some(inner) if value.get("checks").is_some() => inner.clone(),
            _ => value,
        };
        serde_json::from_value(value).map_err(|e| format!("config: {e}"))
    }

    /// Flags take precedence over the file.
    pub fn overlay(mut self, cli: &Cli) -> JobConfig {
        overlay!(self, cli, command, family, hw, against_hw, m, element, l, j, r, i, depth, max_m, max_size, max_r, output, seed);
        overlay!(self.window, cli, max_p, max_q, level, f0, mode_bound, samples, max_dim);
        if cli.allow_mixed {
            self.allow_mixed = Some(true);
        }
        if !cli.params.is_empty() {
            self.params = cli.params.clone();
        }
        if !cli.against.is_empty() {
            self.against = cli.against.clone();
        }
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn report_config_is_unwrapped() {
        let text = r#"{"command":"rg","config":{"command":"rg","m":2},"checks":[],"summary":{}}"#;
        let cfg = JobConfig::from_json(text).unwrap();
        assert_eq!(cfg.command, Some(Command::Rg));
        assert_eq!(cfg.m, Some(2));
    }

    #[test]
    fn unknown_fields_are_rejected() {
        assert!(JobConfig::from_json(r#"{"comand":"rg"}"#).is_err());
    }

    #[test]
    fn flags_override_file() {
        let file = JobConfig::from_json(r#"{"command":"rg","m":2,"window":{"level":3,"f0":1}}"#).unwrap();
        let cli = Cli::try_parse_from(["affvir", "omega", "--level", "1", "--params", "1,1,0,0"]).unwrap();
        let cfg = file.overlay(&cli);
        assert_eq!(cfg.command, Some(Command::Omega));
        assert_eq!(cfg.m, Some(2));
        assert_eq!(cfg.window.level, Some(1));
        assert_eq!(cfg.window.f0, Some(1));
        assert_eq!(cfg.params, vec!["1,1,0,0".to_string()]);
    }

    #[test]
    fn command_names_are_kebab_case() {
        assert_eq!(Command::VerifyAxioms.name(), "verify-axioms");
        assert_eq!(serde_json::to_string(&Command::WlCheck).unwrap(), "\"wl-check\"");
    }
}
