//! JSON documents emitted by the CLI (schema `varsep/1`) and the JSON form of
//! a polynomial.
//!
//! Field order is fixed by the struct declarations below.

use serde::{Deserialize, Serialize};

use varsep_core::exact::{CriterionVerdict, SepMatrixReport, SeparationResult, Verdict};
use varsep_core::expr::{lower_to_polynomial, parse, ExprError};
use varsep_core::numeric::{FactorTable, NumericVerdict, VerdictKind};
use varsep_core::{rational, Partition, PolyError, Polynomial};

pub const SCHEMA: &str = "varsep/1";

#[derive(Debug, thiserror::Error)]
pub enum JsonError {
    #[error("malformed JSON: {0}")]
    Syntax(#[from] serde_json::Error),
    #[error("coefficient `{0}` is not a rational number")]
    Coefficient(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Expr(#[from] ExprError),
}

/// `{"vars": [...], "terms": [{"exp": [...], "coef": "p/q"}]}`, terms in
/// descending graded-lex order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PolynomialDoc {
    pub vars: Vec<String>,
    pub terms: Vec<TermDoc>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TermDoc {
    pub exp: Vec<u32>,
    pub coef: String,
}

impl PolynomialDoc {
    pub fn from_polynomial(p: &Polynomial) -> Self {
        PolynomialDoc {
            vars: p.vars().to_vec(),
            terms: p
                .terms()
                .rev()
                .map(|(e, c)| TermDoc { exp: e.as_slice().to_vec(), coef: c.to_string() })
                .collect(),
        }
    }

    pub fn to_polynomial(&self) -> Result<Polynomial, JsonError> {
        let terms = self
            .terms
            .iter()
            .map(|t| {
                rational::parse(t.coef.trim())
                    .map(|c| (t.exp.clone(), c))
                    .ok_or_else(|| JsonError::Coefficient(t.coef.clone()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Polynomial::from_terms(self.vars.iter().cloned(), terms)?)
    }
}

pub fn polynomial_to_json(p: &Polynomial) -> String {
    serde_json::to_string(&PolynomialDoc::from_polynomial(p)).expect("serializable")
}

pub fn polynomial_from_json(text: &str) -> Result<Polynomial, JsonError> {
    serde_json::from_str::<PolynomialDoc>(text)?.to_polynomial()
}

fn block_names(vars: &[String], blocks: &[Vec<usize>]) -> Vec<Vec<String>> {
    blocks.iter().map(|b| b.iter().map(|&i| vars[i].clone()).collect()).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeparationDoc {
    pub schema: String,
    pub constant: String,
    pub blocks: Vec<Vec<String>>,
    pub factors: Vec<String>,
    pub verified: bool,
}

impl SeparationDoc {
    pub fn new(result: &SeparationResult, vars: &[String]) -> Self {
        SeparationDoc {
            schema: SCHEMA.into(),
            constant: result.constant.to_string(),
            blocks: result
                .factors
                .iter()
                .map(|f| f.block.iter().map(|&i| vars[i].clone()).collect())
                .collect(),
            factors: result.factors.iter().map(|f| f.factor.to_string()).collect(),
            verified: result.verified,
        }
    }

    /// Re-parses the factors over `vars` and multiplies them out.
    pub fn product(&self, vars: &[String]) -> Result<Polynomial, JsonError> {
        let constant = rational::parse(&self.constant).ok_or_else(|| JsonError::Coefficient(self.constant.clone()))?;
        let mut acc = Polynomial::zero(vars.iter().cloned())?.constant_like(constant);
        for text in &self.factors {
            let factor = lower_to_polynomial(&parse(text)?, vars)?;
            acc = acc.checked_mul(&factor)?;
        }
        Ok(acc)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PartitionDoc {
    pub schema: String,
    pub vars: Vec<String>,
    pub blocks: Vec<Vec<String>>,
    /// `vanishes[i][j]`: whether `F·F,ij − F,i·F,j` is identically zero.
    pub vanishes: Vec<Vec<bool>>,
}

impl PartitionDoc {
    pub fn new(report: &SepMatrixReport, vars: &[String]) -> Self {
        PartitionDoc {
            schema: SCHEMA.into(),
            vars: vars.to_vec(),
            blocks: block_names(vars, report.partition.blocks()),
            vanishes: report.vanishes.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckDoc {
    pub schema: String,
    pub vars: Vec<String>,
    pub separable: bool,
    /// `"not separable"` when the leading product monomial is absent,
    /// otherwise `"inconclusive"`.
    pub precheck: String,
    /// `"separable"`, `"violation"` or `"leading product absent"`.
    pub criterion: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub violation: Option<Vec<u32>>,
    pub blocks: Vec<Vec<String>>,
    pub routes_agree: bool,
}

impl CheckDoc {
    pub fn new(vars: &[String], precheck: Verdict, criterion: &CriterionVerdict, partition: &Partition) -> Self {
        let (name, violation) = match criterion {
            CriterionVerdict::Separable => ("separable", None),
            CriterionVerdict::Violation { index } => ("violation", Some(index.clone())),
            CriterionVerdict::LeadingProductAbsent => ("leading product absent", None),
        };
        let by_criterion = criterion.is_separable();
        let by_matrix = partition.is_singletons();
        CheckDoc {
            schema: SCHEMA.into(),
            vars: vars.to_vec(),
            separable: by_criterion && by_matrix,
            precheck: verdict_name(precheck).into(),
            criterion: name.into(),
            violation,
            blocks: block_names(vars, partition.blocks()),
            routes_agree: by_criterion == by_matrix,
        }
    }
}

pub fn verdict_name(v: Verdict) -> &'static str {
    match v {
        Verdict::Separable => "separable",
        Verdict::NotSeparable => "not separable",
        Verdict::Inconclusive => "inconclusive",
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FactorTableDoc {
    pub block: Vec<String>,
    pub points: Vec<Vec<f64>>,
    pub values: Vec<Option<f64>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NumericDoc {
    pub schema: String,
    pub vars: Vec<String>,
    /// `"separable"`, `"partition"` or `"not separable"`.
    pub verdict: String,
    pub blocks: Vec<Vec<String>>,
    pub residuals: Vec<Vec<f64>>,
    pub max_residual: f64,
    pub tolerance: f64,
    pub anchor: Vec<f64>,
    pub anchor_value: f64,
    pub evaluations: usize,
    pub skipped: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub factors: Option<Vec<FactorTableDoc>>,
}

impl NumericDoc {
    pub fn new(verdict: &NumericVerdict, vars: &[String], tables: Option<&[FactorTable]>) -> Self {
        NumericDoc {
            schema: SCHEMA.into(),
            vars: vars.to_vec(),
            verdict: numeric_kind_name(verdict.kind).into(),
            blocks: block_names(vars, verdict.partition.blocks()),
            residuals: verdict.residuals.clone(),
            max_residual: verdict.max_residual(),
            tolerance: verdict.tolerance,
            anchor: verdict.anchor.clone(),
            anchor_value: verdict.anchor_value,
            evaluations: verdict.evaluations,
            skipped: verdict.skipped,
            factors: tables.map(|ts| {
                ts.iter()
                    .map(|t| FactorTableDoc {
                        block: t.block.iter().map(|&i| vars[i].clone()).collect(),
                        points: t.coords.clone(),
                        values: t.values.clone(),
                    })
                    .collect()
            }),
        }
    }
}

pub fn numeric_kind_name(kind: VerdictKind) -> &'static str {
    match kind {
        VerdictKind::Separable => "separable",
        VerdictKind::Partition => "partition",
        VerdictKind::NotSeparable => "not separable",
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AdditiveDoc {
    pub schema: String,
    pub vars: Vec<String>,
    pub additive: bool,
}

pub fn emit_json<T: Serialize>(doc: &T) -> String {
    serde_json::to_string(doc).expect("documents serialize")
}
