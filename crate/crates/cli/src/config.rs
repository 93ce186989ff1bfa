use std::path::{Path, PathBuf};

use serde::Deserialize;

use isocolloc::analysis::PerturbationSpec;
use isocolloc::study::{Method, StudySpec};

use crate::CliError;

/// Study description read from a JSON file. Every key is optional in the
/// file; command-line flags fill in or override values.
///
/// ```json
/// {
///   "problem": "p1-dirichlet",
///   "scheme": "csp",
///   "schemes": ["galerkin", "gp", "asp", "csp", "lssp"],
///   "degree": 3,
///   "meshes": [8, 16, 32, 64, 128],
///   "seed": 2024,
///   "perturb": false,
///   "out": "p1-csp-p3.csv"
/// }
/// ```
#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StudyConfig {
    pub problem: Option<String>,
    pub scheme: Option<String>,
    pub schemes: Option<Vec<String>>,
    pub degree: Option<usize>,
    pub meshes: Option<Vec<usize>>,
    pub seed: Option<u64>,
    #[serde(default)]
    pub perturb: bool,
    pub out: Option<PathBuf>,
}

/// Schemes of a comparison when none are given.
pub const DEFAULT_COMPARE: [Method; 5] = [Method::Galerkin, Method::Gp, Method::Asp, Method::Csp, Method::Lssp];

impl StudyConfig {
    pub fn from_file(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
    }

    fn required<'a, T>(value: &'a Option<T>, key: &str) -> Result<&'a T, CliError> {
        value.as_ref().ok_or_else(|| CliError::Config(format!("missing '{key}'")))
    }

    fn perturbation(&self) -> Result<Option<PerturbationSpec>, CliError> {
        if !self.perturb {
            return Ok(None);
        }
        let seed = Self::required(&self.seed, "seed")?;
        Ok(Some(PerturbationSpec::new(*seed)))
    }

    /// Study for one scheme; `method` overrides the configured scheme.
    pub fn study(&self, method: Option<Method>) -> Result<StudySpec, CliError> {
        let method = match method {
            Some(m) => m,
            None => Self::required(&self.scheme, "scheme")?.parse()?,
        };
        Ok(StudySpec {
            problem: Self::required(&self.problem, "problem")?.clone(),
            method,
            degree: *Self::required(&self.degree, "degree")?,
            meshes: Self::required(&self.meshes, "meshes")?.clone(),
            perturb: self.perturbation()?,
        })
    }

    /// Schemes to compare: `schemes`, else a comma list in `scheme`, else the
    /// default five.
    pub fn compare_methods(&self) -> Result<Vec<Method>, CliError> {
        let names: Vec<String> = match (&self.schemes, &self.scheme) {
            (Some(list), _) => list.clone(),
            (None, Some(s)) => s.split(',').map(|x| x.trim().to_string()).collect(),
            (None, None) => return Ok(DEFAULT_COMPARE.to_vec()),
        };
        if names.is_empty() {
            return Err(CliError::Config("empty scheme list".into()));
        }
        let methods = names.iter().map(|n| n.parse()).collect::<Result<Vec<Method>, _>>()?;
        if methods.iter().enumerate().any(|(i, m)| methods[..i].contains(m)) {
            return Err(CliError::Config("repeated scheme".into()));
        }
        Ok(methods)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_unknown_keys() {
        assert!(serde_json::from_str::<StudyConfig>(r#"{"problme": "p1-dirichlet"}"#).is_err());
    }

    #[test]
    fn builds_study() {
        let c: StudyConfig = serde_json::from_str(
            r#"{"problem": "p1-dirichlet", "scheme": "csp", "degree": 3, "meshes": [8, 16], "seed": 4, "perturb": true}"#,
        )
        .unwrap();
        let s = c.study(None).unwrap();
        assert_eq!(s.method, Method::Csp);
        assert_eq!(s.perturb, Some(PerturbationSpec::new(4)));
        assert_eq!(c.study(Some(Method::Gp)).unwrap().method, Method::Gp);
    }

    #[test]
    fn perturbation_needs_seed() {
        let c = StudyConfig {
            problem: Some("p1-dirichlet".into()),
            scheme: Some("csp".into()),
            degree: Some(3),
            meshes: Some(vec![8]),
            perturb: true,
            ..Default::default()
        };
        assert!(matches!(c.study(None), Err(CliError::Config(_))));
    }

    #[test]
    fn compare_lists() {
        let mut c = StudyConfig::default();
        assert_eq!(c.compare_methods().unwrap(), DEFAULT_COMPARE.to_vec());
        c.scheme = Some("gp, csp".into());
        assert_eq!(c.compare_methods().unwrap(), vec![Method::Gp, Method::Csp]);
        c.scheme = Some("gp,gp".into());
        assert!(c.compare_methods().is_err());
    }
}
