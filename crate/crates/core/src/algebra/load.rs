use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{extend_embedding, AlgebraError, Embedding, Presentation};
use crate::arith::Field;
use crate::poly::{parse_expr, Poly};
use crate::zoo::{parse_field, FieldKind, ValuedField};

/// A polynomial as an expression string or as a map from comma-separated
/// exponent vectors to coefficients.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PolySpec {
    Expr(String),
    Terms(BTreeMap<String, Coeff>),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Coeff {
    Int(i64),
    Text(String),
}

impl PolySpec {
    pub fn to_poly<F: Field>(&self, vars: &[String]) -> Result<Poly<F>, AlgebraError> {
        match self {
            PolySpec::Expr(s) => Ok(parse_expr(s)?.to_poly(vars)?),
            PolySpec::Terms(map) => {
                let mut terms = Vec::with_capacity(map.len());
                for (key, c) in map {
                    let exps = key
                        .split(',')
                        .map(|k| k.trim().parse::<u32>())
                        .collect::<Result<Vec<_>, _>>()
                        .map_err(|_| AlgebraError::BadExponents(key.clone()))?;
                    if exps.len() != vars.len() {
                        return Err(AlgebraError::BadExponents(key.clone()));
                    }
                    let c = match c {
                        Coeff::Int(k) => F::from_rational((*k).into()),
                        Coeff::Text(s) => parse_expr(s)?.to_field()?,
                    };
                    terms.push((exps, c));
                }
                Ok(Poly::from_terms(vars.len(), terms))
            }
        }
    }
}

/// File form of a presentation and an embedding extending the canonical one.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EmbeddingSpec {
    pub field: String,
    pub variables: Vec<String>,
    #[serde(default)]
    pub generators: Vec<PolySpec>,
    #[serde(default)]
    pub extra_generators: Vec<PolySpec>,
}

impl EmbeddingSpec {
    pub fn from_json(text: &str) -> Result<Self, AlgebraError> {
        serde_json::from_str(text).map_err(|e| AlgebraError::Format(e.to_string()))
    }

    pub fn from_toml(text: &str) -> Result<Self, AlgebraError> {
        toml::from_str(text).map_err(|e| AlgebraError::Format(e.to_string()))
    }

    /// Reads `.toml` files as TOML and anything else as JSON.
    pub fn from_path(path: &Path) -> Result<Self, AlgebraError> {
        let text =
            std::fs::read_to_string(path).map_err(|e| AlgebraError::Format(format!("{}: {e}", path.display())))?;
        if path.extension().is_some_and(|e| e == "toml") {
            Self::from_toml(&text)
        } else {
            Self::from_json(&text)
        }
    }

    pub fn field_kind(&self) -> Result<FieldKind, AlgebraError> {
        parse_field(&self.field).map_err(|_| AlgebraError::UnknownField(self.field.clone()))
    }

    pub fn build<V: ValuedField>(&self, vf: V) -> Result<Embedding<V>, AlgebraError> {
        if vf.id() != self.field {
            return Err(AlgebraError::UnknownField(self.field.clone()));
        }
        let gens = self.generators.iter().map(|g| g.to_poly::<V::F>(&self.variables)).collect::<Result<Vec<_>, _>>()?;
        let pres = Presentation::new(vf, self.variables.clone(), gens)?;
        let extras =
            self.extra_generators.iter().map(|g| g.to_poly::<V::F>(&self.variables)).collect::<Result<Vec<_>, _>>()?;
        Ok(extend_embedding(&Embedding::canonical(&pres), &extras)?.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zoo::{TadicQt, TrivialQ};

    #[test]
    fn json_and_toml_agree() {
        let json = r#"{"field": "field:Q-trivial", "variables": ["x", "y"],
                       "generators": [{"1,0": 1, "0,1": "1", "0,0": "1"}],
                       "extra_generators": ["x*y"]}"#;
        let toml = r#"
            field = "field:Q-trivial"
            variables = ["x", "y"]
            generators = ["x + y + 1"]
            extra_generators = [{ "1,1" = 1 }]
        "#;
        let a = EmbeddingSpec::from_json(json).unwrap().build(TrivialQ).unwrap();
        let b = EmbeddingSpec::from_toml(toml).unwrap().build(TrivialQ).unwrap();
        assert_eq!(a.presentation(), b.presentation());
        assert_eq!(a.generators(), b.generators());
        assert_eq!(a.describe(), "(x, y, x*y)");
    }

    #[test]
    fn parameter_coefficients_and_errors() {
        let spec = EmbeddingSpec::from_json(
            r#"{"field": "field:Qt-tadic", "variables": ["x", "y"], "generators": [{"1,0": 1, "0,1": 1, "0,0": "t"}]}"#,
        )
        .unwrap();
        assert_eq!(spec.field_kind().unwrap(), FieldKind::Tadic);
        let e = spec.build(TadicQt).unwrap();
        assert_eq!(e.presentation().show(&e.presentation().generators()[0]), "x + y + t");
        assert!(spec.build(TrivialQ).is_err());
        let bad =
            EmbeddingSpec::from_json(r#"{"field": "field:Q-trivial", "variables": ["x"], "generators": [{"1,1": 1}]}"#)
                .unwrap();
        assert_eq!(bad.build(TrivialQ).unwrap_err(), AlgebraError::BadExponents("1,1".into()));
        assert!(EmbeddingSpec::from_json("{").is_err());
    }
}
