//! Machine-readable run document for `invert --json`.

use std::time::Duration;

use polyaut_core::inverter::{
    degree_bound, CompositionWitness, Evidence, Identity, SolveConfig, Verdict,
};
use polyaut_core::linalg::jacobian;
use polyaut_core::series::{SeriesVec, TruncSeries};
use polyaut_core::{PolyMap, Polynomial, Rational};
use serde::{Deserialize, Serialize};

use crate::error::FormatError;
use crate::mapfile::ParsedMap;
use crate::parse::{parse_polynomial, VarTable};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VerdictKind {
    Invertible,
    NotInvertibleJacobian,
    NotInvertibleComposition,
    BoundExceeded,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum EvidenceDoc {
    Residual { leading_term: String },
    Point { point: Vec<String>, value: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessDoc {
    /// `map_of_candidate` is `F(A) = X`, `candidate_of_map` is `A(F) = X`.
    pub identity: String,
    /// 1-based component.
    pub component: usize,
    pub order: usize,
    pub evidence: EvidenceDoc,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Timings {
    pub total_ms: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub verdict: VerdictKind,
    pub variables: Vec<String>,
    pub map: Vec<String>,
    pub determinant: String,
    /// `deg(F)^(m-1)`; absent for constant maps.
    pub bound: Option<usize>,
    pub max_order: usize,
    pub eager: bool,
    /// `series[j][i]` is the `t^j` coefficient of component `i`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub series: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub inverse: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub required_order: Option<usize>,
    pub timings: Timings,
}

impl Report {
    pub fn new(input: &ParsedMap, verdict: &Verdict, cfg: &SolveConfig, elapsed: Duration) -> Self {
        let names = &input.variables;
        let show = |p: &Polynomial| p.display_with(names).to_string();
        let show_map = |m: &PolyMap| m.components().iter().map(show).collect::<Vec<_>>();
        let determinant = match verdict {
            Verdict::NotInvertibleJacobian { determinant } => determinant.clone(),
            _ => jacobian(&input.map).determinant().expect("Jacobian is square"),
        };
        let mut doc = Report {
            verdict: kind_of(verdict),
            variables: names.clone(),
            map: show_map(&input.map),
            determinant: show(&determinant),
            bound: degree_bound(&input.map).ok(),
            max_order: cfg.max_order.get(),
            eager: cfg.eager_check,
            series: None,
            inverse: None,
            witness: None,
            required_order: None,
            timings: Timings { total_ms: elapsed.as_secs_f64() * 1e3 },
        };
        match verdict {
            Verdict::Invertible { inverse, series } => {
                doc.inverse = Some(show_map(inverse));
                doc.series =
                    Some((0..=series.order()).map(|j| series.coeff_tuple(j).iter().map(show).collect()).collect());
            }
            Verdict::NotInvertibleJacobian { .. } => {}
            Verdict::NotInvertibleComposition { witness } => {
                let evidence = match &witness.evidence {
                    Evidence::Residual(p) => EvidenceDoc::Residual { leading_term: show(p) },
                    Evidence::Point { point, value } => EvidenceDoc::Point {
                        point: point.iter().map(ToString::to_string).collect(),
                        value: value.to_string(),
                    },
                };
                doc.witness = Some(WitnessDoc {
                    identity: identity_name(witness.identity).into(),
                    component: witness.index + 1,
                    order: witness.order,
                    evidence,
                });
            }
            Verdict::BoundExceeded { required, cap } => {
                doc.required_order = Some(*required);
                doc.max_order = *cap;
            }
        }
        doc
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, FormatError> {
        serde_json::from_str(text).map_err(|e| FormatError::Invalid(format!("bad report: {e}")))
    }

    /// Rebuilds the verdict the document describes.
    pub fn to_verdict(&self) -> Result<Verdict, FormatError> {
        let table = VarTable::new(&self.variables);
        let m = self.variables.len();
        let poly = |s: &str| {
            parse_polynomial(s, &table).map_err(|e| FormatError::Invalid(format!("'{s}': {e}")))
        };
        let missing = |what: &str| FormatError::Invalid(format!("report lacks {what}"));
        Ok(match self.verdict {
            VerdictKind::Invertible => {
                let inverse = self.inverse.as_ref().ok_or_else(|| missing("inverse"))?;
                let inverse = PolyMap::new(inverse.iter().map(|s| poly(s)).collect::<Result<_, _>>()?)?;
                let rows = self.series.as_ref().ok_or_else(|| missing("series"))?;
                let mut comps: Vec<Vec<Polynomial>> = vec![Vec::with_capacity(rows.len()); m];
                for row in rows {
                    if row.len() != m {
                        return Err(FormatError::Invalid("series row has wrong length".into()));
                    }
                    for (i, s) in row.iter().enumerate() {
                        comps[i].push(poly(s)?);
                    }
                }
                let series = SeriesVec::new(
                    comps.into_iter().map(TruncSeries::from_coeffs).collect::<Result<_, _>>()?,
                )?;
                Verdict::Invertible { inverse, series }
            }
            VerdictKind::NotInvertibleJacobian => {
                Verdict::NotInvertibleJacobian { determinant: poly(&self.determinant)? }
            }
            VerdictKind::NotInvertibleComposition => {
                let w = self.witness.as_ref().ok_or_else(|| missing("witness"))?;
                let identity = match w.identity.as_str() {
                    "map_of_candidate" => Identity::MapOfCandidate,
                    "candidate_of_map" => Identity::CandidateOfMap,
                    other => return Err(FormatError::Invalid(format!("unknown identity '{other}'"))),
                };
                let rational = |s: &str| {
                    s.parse::<Rational>().map_err(|_| FormatError::Invalid(format!("bad rational '{s}'")))
                };
                let evidence = match &w.evidence {
                    EvidenceDoc::Residual { leading_term } => Evidence::Residual(poly(leading_term)?),
                    EvidenceDoc::Point { point, value } => Evidence::Point {
                        point: point.iter().map(|s| rational(s)).collect::<Result<_, _>>()?,
                        value: rational(value)?,
                    },
                };
                if w.component == 0 || w.component > m {
                    return Err(FormatError::Invalid("witness component out of range".into()));
                }
                Verdict::NotInvertibleComposition {
                    witness: CompositionWitness { identity, index: w.component - 1, order: w.order, evidence },
                }
            }
            VerdictKind::BoundExceeded => Verdict::BoundExceeded {
                required: self.required_order.ok_or_else(|| missing("required_order"))?,
                cap: self.max_order,
            },
        })
    }
}

pub fn kind_of(v: &Verdict) -> VerdictKind {
    match v {
        Verdict::Invertible { .. } => VerdictKind::Invertible,
        Verdict::NotInvertibleJacobian { .. } => VerdictKind::NotInvertibleJacobian,
        Verdict::NotInvertibleComposition { .. } => VerdictKind::NotInvertibleComposition,
        Verdict::BoundExceeded { .. } => VerdictKind::BoundExceeded,
    }
}

pub fn identity_name(id: Identity) -> &'static str {
    match id {
        Identity::MapOfCandidate => "map_of_candidate",
        Identity::CandidateOfMap => "candidate_of_map",
    }
}
