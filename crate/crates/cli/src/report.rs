use serde::{Deserialize, Serialize};
use serde_json::Value;

/// Machine-readable record of one command invocation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub command: String,
    pub inputs: Value,
    pub outputs: Value,
    pub warnings: Vec<String>,
}

impl RunReport {
    pub fn new(command: &str, inputs: impl Serialize, outputs: impl Serialize) -> serde_json::Result<Self> {
        Ok(Self {
            command: command.to_owned(),
            inputs: serde_json::to_value(inputs)?,
            outputs: serde_json::to_value(outputs)?,
            warnings: Vec::new(),
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report values are plain JSON")
    }
}
