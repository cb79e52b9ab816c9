//! JSON interchange for frames and models.
//!
//! ```json
//! { "worlds": ["s","t"], "relation": [["s","t"],["t","t"]], "valuation": {"p": ["s"]} }
//! ```
//!
//! Frame files omit `valuation`. Unknown keys are rejected. The order of
//! `worlds` fixes internal indexing.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{Frame, KripkeError, Model, PointedModel};
use crate::syntax::is_atom_name;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelFile {
    pub worlds: Vec<String>,
    pub relation: Vec<(String, String)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub valuation: Option<BTreeMap<String, Vec<String>>>,
}

/// A model file plus a designated world, as embedded in reports.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointedModelFile {
    pub model: ModelFile,
    pub world: String,
}

impl ModelFile {
    pub fn from_frame(frame: &Frame) -> ModelFile {
        let relation = frame
            .edges()
            .into_iter()
            .map(|(a, b)| (frame.name(a).to_string(), frame.name(b).to_string()))
            .collect();
        ModelFile {
            worlds: frame.names().to_vec(),
            relation,
            valuation: None,
        }
    }

    pub fn from_model(m: &Model) -> ModelFile {
        let mut file = ModelFile::from_frame(&m.frame);
        let valuation = m
            .valuation()
            .iter()
            .map(|(atom, set)| {
                let names = set.iter().map(|w| m.frame.name(w).to_string()).collect();
                (atom.clone(), names)
            })
            .collect();
        file.valuation = Some(valuation);
        file
    }

    pub fn to_frame(&self) -> Result<Frame, KripkeError> {
        Frame::new(&self.worlds, &self.relation)
    }

    /// A missing valuation denotes the empty one.
    pub fn to_model(&self) -> Result<Model, KripkeError> {
        let mut m = Model::new(self.to_frame()?);
        for (atom, worlds) in self.valuation.iter().flatten() {
            if !is_atom_name(atom) {
                return Err(KripkeError::BadAtom(atom.clone()));
            }
            m.set_atom_named(atom, worlds)?;
        }
        Ok(m)
    }
}

impl PointedModelFile {
    pub fn from_pointed(pm: &PointedModel) -> PointedModelFile {
        PointedModelFile {
            model: ModelFile::from_model(&pm.model),
            world: pm.point_name().to_string(),
        }
    }

    pub fn to_pointed(&self) -> Result<PointedModel, KripkeError> {
        PointedModel::named(self.model.to_model()?, &self.world)
    }
}

fn format_error(e: serde_json::Error) -> KripkeError {
    KripkeError::Format(e.to_string())
}

pub fn frame_from_json(text: &str) -> Result<Frame, KripkeError> {
    let file: ModelFile = serde_json::from_str(text).map_err(format_error)?;
    if file.valuation.is_some() {
        return Err(KripkeError::Format("frame files carry no valuation".into()));
    }
    file.to_frame()
}

pub fn model_from_json(text: &str) -> Result<Model, KripkeError> {
    let file: ModelFile = serde_json::from_str(text).map_err(format_error)?;
    file.to_model()
}

pub fn pointed_model_from_json(text: &str) -> Result<PointedModel, KripkeError> {
    let file: PointedModelFile = serde_json::from_str(text).map_err(format_error)?;
    file.to_pointed()
}

pub fn frame_to_json(frame: &Frame) -> String {
    serde_json::to_string(&ModelFile::from_frame(frame)).expect("serializable")
}

pub fn model_to_json(m: &Model) -> String {
    serde_json::to_string(&ModelFile::from_model(m)).expect("serializable")
}

pub fn pointed_model_to_json(pm: &PointedModel) -> String {
    serde_json::to_string(&PointedModelFile::from_pointed(pm)).expect("serializable")
}
