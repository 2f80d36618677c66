use clap::ValueEnum;
use nilq::lie::{DecompositionSpec, RootSystem};
use nilq::quant::Normalization;
use nilq::{Error, Result};
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Text,
    Json,
}

/// Everything a subcommand needs, with user-facing (1-based) indices.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunConfig {
    pub command: String,
    #[serde(rename = "type", skip_serializing_if = "Option::is_none")]
    pub type_spec: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub order: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub subset: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub word: Option<Vec<usize>>,
    pub format: Format,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cutoff: Option<usize>,
    pub normalization: String,
}

impl RunConfig {
    pub fn root_system(&self) -> Result<RootSystem> {
        let t = self.type_spec.as_deref().ok_or_else(|| Error::Invalid(format!("{} needs --type", self.command)))?;
        RootSystem::build(t)
    }

    pub fn normalization(&self) -> Result<Normalization> {
        self.normalization.parse()
    }

    pub fn spec(&self, rs: &RootSystem) -> Result<DecompositionSpec> {
        match &self.order {
            None => Ok(DecompositionSpec::standard(rs.rank)),
            Some(o) => DecompositionSpec::new(rs, zero_based(o, rs.rank, "--order")?),
        }
    }

    pub fn subset(&self, rs: &RootSystem) -> Result<Vec<usize>> {
        match &self.subset {
            None => Ok((0..rs.rank).collect()),
            Some(s) => {
                let mut v = zero_based(s, rs.rank, "--subset")?;
                v.sort_unstable();
                v.dedup();
                Ok(v)
            }
        }
    }

    pub fn word(&self, rs: &RootSystem) -> Result<Option<Vec<usize>>> {
        self.word.as_ref().map(|w| zero_based(w, rs.rank, "--word")).transpose()
    }

    /// Rejects option combinations that cannot describe a valid run.
    pub fn validate(&self) -> Result<()> {
        let norm = self.normalization()?;
        if norm == Normalization::G2Table && self.type_spec.as_deref().is_some_and(|t| t != "G2") {
            return Err(Error::Invalid("--normalization paper-g2 only applies to --type G2".into()));
        }
        if let Some(t) = &self.type_spec {
            let rs = RootSystem::build(t)?;
            if self.order.is_some() {
                self.spec(&rs)?;
            }
            self.subset(&rs)?;
            self.word(&rs)?;
        }
        Ok(())
    }
}

fn zero_based(xs: &[usize], rank: usize, flag: &str) -> Result<Vec<usize>> {
    xs.iter()
        .map(|&i| {
            if (1..=rank).contains(&i) {
                Ok(i - 1)
            } else {
                Err(Error::Invalid(format!("{flag}: index {i} outside 1..={rank}")))
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trips_through_json() {
        let c = RunConfig {
            command: "quantize".into(),
            type_spec: Some("G2".into()),
            order: Some(vec![2, 1]),
            format: Format::Json,
            normalization: "paper-g2".into(),
            ..Default::default()
        };
        let s = serde_json::to_string(&c).unwrap();
        assert_eq!(serde_json::from_str::<RunConfig>(&s).unwrap(), c);
        c.validate().unwrap();
    }

    #[test]
    fn rejects_bad_combinations() {
        let mut c = RunConfig {
            command: "quantize".into(),
            type_spec: Some("A2".into()),
            normalization: "paper-g2".into(),
            ..Default::default()
        };
        assert!(c.validate().is_err());
        c.normalization = "canonical".into();
        c.order = Some(vec![1, 1]);
        assert!(c.validate().is_err());
        c.order = Some(vec![3, 1]);
        assert!(c.validate().is_err());
    }
}
