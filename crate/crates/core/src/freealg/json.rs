//! JSON schema for elements:
//! `{"terms":[{"coeff":"<scalar>","gammaexp":<int>,"word":[[i,k],...]}]}`.
//!
//! `gammaexp` is the exponent of `c = gamma^{1/2}`. Terms are ordered
//! lexicographically by word, then by `gammaexp`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{Element, Letter};
use crate::scalars::{Coefficient, ParseError, Scalar};

#[derive(Debug, Error)]
pub enum JsonError {
    #[error("malformed element JSON: {0}")]
    Syntax(#[from] serde_json::Error),
    #[error("bad coefficient {text:?}: {source}")]
    Coeff { text: String, source: ParseError },
}

#[derive(Serialize, Deserialize)]
struct JsonTerm {
    coeff: String,
    gammaexp: i64,
    word: Vec<(usize, i64)>,
}

#[derive(Serialize, Deserialize)]
struct JsonElement {
    terms: Vec<JsonTerm>,
}

impl Element {
    fn to_json_repr(&self) -> JsonElement {
        let mut terms = Vec::new();
        for (w, c) in self.iter() {
            for (e, s) in c.terms() {
                terms.push(JsonTerm {
                    coeff: s.to_string(),
                    gammaexp: *e,
                    word: w.iter().map(|l| (l.color, l.index)).collect(),
                });
            }
        }
        JsonElement { terms }
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(self.to_json_repr()).expect("element serializes")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_json_repr()).expect("element serializes")
    }

    pub fn from_json(text: &str) -> Result<Element, JsonError> {
        let repr: JsonElement = serde_json::from_str(text)?;
        Element::from_json_repr(repr)
    }

    pub fn from_json_value(v: serde_json::Value) -> Result<Element, JsonError> {
        Element::from_json_repr(serde_json::from_value(v)?)
    }

    fn from_json_repr(repr: JsonElement) -> Result<Element, JsonError> {
        let mut out = Element::zero();
        for t in repr.terms {
            let s: Scalar = t.coeff.parse().map_err(|source| JsonError::Coeff {
                text: t.coeff.clone(),
                source,
            })?;
            let w = t.word.iter().map(|&(c, k)| Letter::new(c, k)).collect();
            out.add_term(w, &Coefficient::monomial(t.gammaexp, s));
        }
        Ok(out)
    }
}
