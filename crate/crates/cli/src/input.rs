//! Input file formats.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use actdim_core::arrangement::{parse_rational, Rational};
use actdim_core::coxart::VertexData;
use actdim_core::{Arrangement, CoxeterSystem, Hyperplane, Simplex, SimplicialComplex};
use serde::{Deserialize, Serialize};

use crate::CliError;

/// Reads a file, remembering its bytes for the input digest.
pub struct Inputs {
    bytes: Vec<u8>,
}

impl Inputs {
    pub fn new() -> Self {
        Inputs { bytes: Vec::new() }
    }

    pub fn read(&mut self, path: &Path) -> Result<String, CliError> {
        let text = fs::read_to_string(path).map_err(|source| CliError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        self.bytes.extend_from_slice(text.as_bytes());
        self.bytes.push(0);
        Ok(text)
    }

    pub fn parse<T: for<'de> Deserialize<'de>>(&mut self, path: &Path) -> Result<T, CliError> {
        let text = self.read(path)?;
        serde_json::from_str(&text).map_err(|source| CliError::Json {
            path: path.to_path_buf(),
            source,
        })
    }

    pub fn digest(&self) -> String {
        use sha2::{Digest, Sha256};
        format!("sha256:{}", hex::encode(Sha256::digest(&self.bytes)))
    }
}

#[derive(Clone, Debug, Deserialize, Serialize)]
pub struct ComplexFile {
    pub vertices: Vec<String>,
    pub facets: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub octahedralization: Option<OctaSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vertex_data: Option<BTreeMap<String, VertexEntry>>,
}

/// Records that the complex is `O_m L` for the given base.
#[derive(Clone, Debug, Deserialize, Serialize)]
pub struct OctaSection {
    pub base: Box<ComplexFile>,
    pub m: usize,
}

#[derive(Clone, Copy, Debug, Deserialize, Serialize)]
pub struct VertexEntry {
    pub dim: usize,
    pub closed: bool,
}

impl ComplexFile {
    pub fn complex(&self) -> Result<SimplicialComplex, CliError> {
        Ok(SimplicialComplex::from_facets(&self.vertices, &self.facets)?)
    }

    pub fn from_complex(k: &SimplicialComplex) -> Self {
        ComplexFile {
            vertices: k.labels().to_vec(),
            facets: k.facets().iter().map(|f| k.simplex_labels(f)).collect(),
            octahedralization: None,
            vertex_data: None,
        }
    }

    pub fn vertex_data(&self, k: &SimplicialComplex) -> Result<Vec<VertexData>, CliError> {
        let map = self
            .vertex_data
            .as_ref()
            .ok_or_else(|| CliError::Invalid("graph product input needs a `vertex_data` map".into()))?;
        for key in map.keys() {
            k.index_of(key)?;
        }
        k.labels()
            .iter()
            .map(|v| {
                map.get(v)
                    .map(|e| VertexData {
                        dim: e.dim,
                        closed: e.closed,
                    })
                    .ok_or_else(|| CliError::Invalid(format!("vertex_data has no entry for vertex `{v}`")))
            })
            .collect()
    }
}

#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum RationalEntry {
    Int(i64),
    Text(String),
}

impl RationalEntry {
    fn value(&self) -> Result<Rational, CliError> {
        match self {
            RationalEntry::Int(i) => Ok(Rational::from_integer((*i).into())),
            RationalEntry::Text(s) => Ok(parse_rational(s)?),
        }
    }
}

#[derive(Clone, Debug, Deserialize)]
pub struct HyperplaneEntry {
    pub normal: Vec<RationalEntry>,
    pub offset: RationalEntry,
    #[serde(default)]
    pub name: Option<String>,
}

#[derive(Clone, Debug, Deserialize)]
pub struct ArrangementFile {
    pub dim: usize,
    pub hyperplanes: Vec<HyperplaneEntry>,
}

impl ArrangementFile {
    pub fn arrangement(&self) -> Result<Arrangement, CliError> {
        let mut hs = Vec::new();
        let mut names = Vec::new();
        for (i, h) in self.hyperplanes.iter().enumerate() {
            let normal = h.normal.iter().map(RationalEntry::value).collect::<Result<Vec<_>, _>>()?;
            hs.push(Hyperplane::new(normal, h.offset.value()?));
            names.push(h.name.clone().unwrap_or_else(|| format!("H{i}")));
        }
        let mut sorted = names.clone();
        sorted.sort();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(CliError::Invalid(format!("duplicate hyperplane name `{}`", w[0])));
        }
        Ok(Arrangement::with_names(self.dim, hs, names)?)
    }
}

#[derive(Clone, Debug, Deserialize)]
pub struct CoxeterFile {
    pub generators: Vec<String>,
    pub matrix: Vec<Vec<u32>>,
}

impl CoxeterFile {
    pub fn system(&self) -> Result<CoxeterSystem, CliError> {
        Ok(CoxeterSystem::new(self.generators.clone(), self.matrix.clone())?)
    }
}

/// Parses `"a,b;b,c"` into lists of names.
pub fn parse_lists(spec: &str) -> Vec<Vec<String>> {
    spec.split(';')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.split(',').map(|v| v.trim().to_string()).filter(|v| !v.is_empty()).collect())
        .collect()
}

pub fn parse_simplices(k: &SimplicialComplex, spec: &str) -> Result<Vec<Simplex>, CliError> {
    parse_lists(spec)
        .iter()
        .map(|l| Ok(k.simplex_from_labels(l)?))
        .collect()
}

/// The file given positionally or via `--complex`.
pub fn one_path(positional: &Option<PathBuf>, flag: &Option<PathBuf>) -> Result<PathBuf, CliError> {
    match (positional, flag) {
        (Some(p), None) | (None, Some(p)) => Ok(p.clone()),
        (Some(_), Some(_)) => Err(CliError::Usage("give the input file once".into())),
        (None, None) => Err(CliError::Usage("missing input file".into())),
    }
}
