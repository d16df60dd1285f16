//! Grid specifications of the form `var=start:stop:count`.

use varsep_core::numeric::{linspace, SampleGrid, Strategy};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum GridSpecError {
    #[error("grid spec `{0}` must look like var=start:stop:count")]
    Shape(String),
    #[error("grid spec `{spec}`: {what} is not a valid number")]
    Number { spec: String, what: &'static str },
    #[error("grid spec `{0}`: count must be at least 2")]
    Count(String),
    #[error("grid spec `{0}`: start and stop must differ")]
    Degenerate(String),
    #[error("grid spec names `{0}`, which is not a variable of the expression")]
    UnknownVariable(String),
    #[error("variable `{0}` has more than one grid spec")]
    Duplicate(String),
    #[error(transparent)]
    Grid(#[from] varsep_core::NumericError),
}

#[derive(Debug, Clone, PartialEq)]
pub struct GridSpec {
    pub var: String,
    pub start: f64,
    pub stop: f64,
    pub count: usize,
}

impl GridSpec {
    pub fn coords(&self) -> Vec<f64> {
        linspace(self.start, self.stop, self.count)
    }
}

impl std::str::FromStr for GridSpec {
    type Err = GridSpecError;

    fn from_str(spec: &str) -> Result<Self, Self::Err> {
        let shape = || GridSpecError::Shape(spec.to_string());
        let (var, range) = spec.split_once('=').ok_or_else(shape)?;
        let var = var.trim();
        if var.is_empty() {
            return Err(shape());
        }
        let parts: Vec<&str> = range.split(':').collect();
        let [start, stop, count] = parts.as_slice() else {
            return Err(shape());
        };
        let number = |text: &str, what| {
            text.trim()
                .parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or(GridSpecError::Number { spec: spec.to_string(), what })
        };
        let start = number(start, "start")?;
        let stop = number(stop, "stop")?;
        let count: usize = count
            .trim()
            .parse()
            .map_err(|_| GridSpecError::Number { spec: spec.to_string(), what: "count" })?;
        if count < 2 {
            return Err(GridSpecError::Count(spec.to_string()));
        }
        if start == stop {
            return Err(GridSpecError::Degenerate(spec.to_string()));
        }
        Ok(GridSpec { var: var.to_string(), start, stop, count })
    }
}

/// Builds a grid over `vars`. Variables without a spec get nine points on
/// `[−1.2, 1.2]`.
pub fn build_grid(vars: &[String], specs: &[GridSpec], strategy: Strategy) -> Result<SampleGrid, GridSpecError> {
    for (k, spec) in specs.iter().enumerate() {
        if !vars.contains(&spec.var) {
            return Err(GridSpecError::UnknownVariable(spec.var.clone()));
        }
        if specs[..k].iter().any(|s| s.var == spec.var) {
            return Err(GridSpecError::Duplicate(spec.var.clone()));
        }
    }
    let coords = vars
        .iter()
        .map(|v| match specs.iter().find(|s| &s.var == v) {
            Some(spec) => spec.coords(),
            None => linspace(-1.2, 1.2, 9),
        })
        .collect();
    Ok(SampleGrid::new(coords, strategy)?)
}
