use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::{Deserialize, Serialize};

/// What produced an artifact. Embedded in every JSON artifact and written
/// next to every CSV one; wall time is kept out so reruns are byte-identical.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunManifest {
    pub command: String,
    pub seed: u64,
    pub budget: Option<usize>,
    pub inputs: Vec<PathBuf>,
    pub outputs: Vec<PathBuf>,
    pub version: String,
}

impl RunManifest {
    pub fn new(command: &str, seed: u64, budget: Option<usize>) -> Self {
        Self {
            command: command.to_string(),
            seed,
            budget,
            inputs: Vec::new(),
            outputs: Vec::new(),
            version: env!("CARGO_PKG_VERSION").to_string(),
        }
    }

    pub fn input(mut self, p: &Path) -> Self {
        self.inputs.push(p.to_path_buf());
        self
    }

    pub fn output(mut self, p: Option<&Path>) -> Self {
        self.outputs.extend(p.map(Path::to_path_buf));
        self
    }
}

/// Artifact payload with its manifest.
#[derive(Serialize)]
pub struct Artifact<'a, T: Serialize> {
    pub manifest: &'a RunManifest,
    #[serde(flatten)]
    pub body: &'a T,
}

pub struct Timer(Instant);

impl Timer {
    pub fn start() -> Self {
        Self(Instant::now())
    }

    pub fn report(&self, command: &str) {
        log::info!("{command} finished in {:.3} s", self.0.elapsed().as_secs_f64());
    }
}
