//! Scene files and builtin scenes.
//!
//! A scene file is a single JSON document: named complex matrices (row-major
//! lists of [re, im] pairs), observables referencing them, and an optional
//! optical network. Builtins cover the analyses shipped with the crate:
//! `rangwala-roy`, `biprism`, `qubit-zx`, and `double-slit`.

use std::collections::BTreeMap;
use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hilbert::{CMatrix, CVector, Projector, QuantumState};
use crate::optics::{
    build_biprism, build_rangwala_roy, BiprismScene, Element, OpticalScene,
};
use crate::spectral::Observable;

pub const SCENE_FILE_VERSION: u32 = 1;

/// Complex matrix as a row-major list of [re, im] pairs.
pub type MatrixData = Vec<[f64; 2]>;

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct ObservableSpec {
    pub matrix: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cluster_tol: Option<f64>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ElementSpec {
    BeamSplitter { reflectivity: f64, modes: [usize; 2] },
    PhaseShifter { phase: f64, mode: usize },
    Mirror { mode: usize },
    CustomUnitary { matrix: String },
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct NetworkSpec {
    pub modes: Vec<String>,
    /// Input pure state amplitudes, [re, im] per mode.
    pub input: Vec<[f64; 2]>,
    pub elements: Vec<ElementSpec>,
    /// Detector name → matrix reference.
    pub detectors: BTreeMap<String, String>,
}

/// On-disk scene document.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct SceneFile {
    pub version: u32,
    pub dimension: usize,
    #[serde(default)]
    pub matrices: BTreeMap<String, MatrixData>,
    #[serde(default)]
    pub observables: BTreeMap<String, ObservableSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scene: Option<NetworkSpec>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub queries: Vec<serde_json::Value>,
}

/// Fully resolved scene: observables by name, optional optical network and
/// biprism structure, plus name aliases for CLI convenience.
#[derive(Debug, Clone)]
pub struct LoadedScene {
    pub name: String,
    pub dimension: usize,
    pub observables: BTreeMap<String, Observable>,
    pub aliases: BTreeMap<String, String>,
    pub optical: Option<OpticalScene>,
    pub biprism: Option<BiprismScene>,
}

impl LoadedScene {
    /// Look a named observable up, following aliases.
    pub fn observable(&self, name: &str) -> Result<&Observable> {
        let key = self.aliases.get(name).map(String::as_str).unwrap_or(name);
        self.observables
            .get(key)
            .ok_or_else(|| Error::UnknownName(name.to_string()))
    }
}

fn matrix_from_data(name: &str, data: &MatrixData, dim: usize) -> Result<CMatrix> {
    if data.len() != dim * dim {
        return Err(Error::InvalidScene(format!(
            "matrix {name}: expected {} entries for dimension {dim}, got {}",
            dim * dim,
            data.len()
        )));
    }
    let entries: Vec<Complex64> =
        data.iter().map(|&[re, im]| Complex64::new(re, im)).collect();
    Ok(CMatrix::from_row_slice(dim, dim, &entries))
}

fn matrix_to_data(m: &CMatrix) -> MatrixData {
    let dim = m.nrows();
    let mut out = Vec::with_capacity(dim * dim);
    for i in 0..dim {
        for j in 0..dim {
            out.push([m[(i, j)].re, m[(i, j)].im]);
        }
    }
    out
}

impl SceneFile {
    pub fn load(path: &Path) -> Result<SceneFile> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
        SceneFile::parse(&text)
    }

    pub fn parse(text: &str) -> Result<SceneFile> {
        let file: SceneFile =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        if file.version != SCENE_FILE_VERSION {
            return Err(Error::Parse(format!(
                "unsupported scene file version {}",
                file.version
            )));
        }
        if file.dimension == 0 {
            return Err(Error::Parse("dimension must be at least 1".into()));
        }
        Ok(file)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("scene file serializes")
    }

    /// Resolve references and validate into a usable scene.
    pub fn resolve(&self, name: &str) -> Result<LoadedScene> {
        let dim = self.dimension;
        let mut matrices = BTreeMap::new();
        for (mname, data) in &self.matrices {
            matrices.insert(mname.clone(), matrix_from_data(mname, data, dim)?);
        }
        let mut observables = BTreeMap::new();
        for (oname, spec) in &self.observables {
            let m = matrices
                .get(&spec.matrix)
                .ok_or_else(|| Error::UnknownName(spec.matrix.clone()))?;
            observables.insert(oname.clone(), Observable::decompose(m, spec.cluster_tol)?);
        }
        let optical = match &self.scene {
            None => None,
            Some(net) => {
                if net.modes.len() != dim {
                    return Err(Error::InvalidScene(format!(
                        "network has {} modes but dimension is {dim}",
                        net.modes.len()
                    )));
                }
                if net.input.len() != dim {
                    return Err(Error::InvalidScene(format!(
                        "input state has {} amplitudes but dimension is {dim}",
                        net.input.len()
                    )));
                }
                let psi = CVector::from_iterator(
                    dim,
                    net.input.iter().map(|&[re, im]| Complex64::new(re, im)),
                );
                let input_state = QuantumState::pure(psi)?;
                let mut elements = Vec::new();
                for e in &net.elements {
                    elements.push(match e {
                        ElementSpec::BeamSplitter { reflectivity, modes } => {
                            Element::BeamSplitter {
                                reflectivity: *reflectivity,
                                modes: (modes[0], modes[1]),
                            }
                        }
                        ElementSpec::PhaseShifter { phase, mode } => {
                            Element::PhaseShifter { phase: *phase, mode: *mode }
                        }
                        ElementSpec::Mirror { mode } => Element::Mirror { mode: *mode },
                        ElementSpec::CustomUnitary { matrix } => {
                            let m = matrices
                                .get(matrix)
                                .ok_or_else(|| Error::UnknownName(matrix.clone()))?;
                            Element::CustomUnitary(m.clone())
                        }
                    });
                }
                let mut detectors = BTreeMap::new();
                for (dname, mref) in &net.detectors {
                    let m = matrices
                        .get(mref)
                        .ok_or_else(|| Error::UnknownName(mref.clone()))?;
                    detectors.insert(dname.clone(), Projector::new(m.clone())?);
                }
                Some(OpticalScene {
                    mode_labels: net.modes.clone(),
                    elements,
                    input_state,
                    named_projectors: BTreeMap::new(),
                    detectors,
                })
            }
        };
        Ok(LoadedScene {
            name: name.to_string(),
            dimension: dim,
            observables,
            aliases: BTreeMap::new(),
            optical,
            biprism: None,
        })
    }

    /// Re-encode a loaded scene as a document (used by `--dump`).
    pub fn from_scene(scene: &LoadedScene) -> Result<SceneFile> {
        let mut matrices = BTreeMap::new();
        let mut observables = BTreeMap::new();
        for (name, obs) in &scene.observables {
            let mname = format!("m_{name}");
            matrices.insert(mname.clone(), matrix_to_data(obs.matrix()));
            observables.insert(name.clone(), ObservableSpec { matrix: mname, cluster_tol: None });
        }
        let net = match &scene.optical {
            None => None,
            Some(optical) => {
                let input = match &optical.input_state {
                    QuantumState::Pure(psi) => {
                        psi.iter().map(|z| [z.re, z.im]).collect()
                    }
                    QuantumState::Mixed(_) => {
                        return Err(Error::InvalidScene(
                            "mixed input states are not representable in scene files".into(),
                        ))
                    }
                };
                let mut detectors = BTreeMap::new();
                for (dname, p) in &optical.detectors {
                    let mname = format!("det_{dname}");
                    matrices.insert(mname.clone(), matrix_to_data(p.matrix()));
                    detectors.insert(dname.clone(), mname);
                }
                let mut elements = Vec::new();
                for (i, e) in optical.elements.iter().enumerate() {
                    elements.push(match e {
                        Element::BeamSplitter { reflectivity, modes } => {
                            ElementSpec::BeamSplitter {
                                reflectivity: *reflectivity,
                                modes: [modes.0, modes.1],
                            }
                        }
                        Element::PhaseShifter { phase, mode } => {
                            ElementSpec::PhaseShifter { phase: *phase, mode: *mode }
                        }
                        Element::Mirror { mode } => ElementSpec::Mirror { mode: *mode },
                        Element::CustomUnitary(m) => {
                            let mname = format!("u_{i}");
                            matrices.insert(mname.clone(), matrix_to_data(m));
                            ElementSpec::CustomUnitary { matrix: mname }
                        }
                    });
                }
                Some(NetworkSpec {
                    modes: optical.mode_labels.clone(),
                    input,
                    elements,
                    detectors,
                })
            }
        };
        Ok(SceneFile {
            version: SCENE_FILE_VERSION,
            dimension: scene.dimension,
            matrices,
            observables,
            scene: net,
            queries: vec![],
        })
    }
}

/// Parameters for builtin scenes.
#[derive(Debug, Clone, Copy)]
pub struct BuiltinParams {
    /// Interferometer phase (rangwala-roy, double-slit).
    pub phi: f64,
    /// |α|² of the biprism superposition.
    pub alpha2: f64,
    pub dim_r: usize,
    pub dim_t: usize,
    pub wave_rank: usize,
}

impl Default for BuiltinParams {
    fn default() -> Self {
        BuiltinParams { phi: 0.0, alpha2: 0.5, dim_r: 4, dim_t: 4, wave_rank: 2 }
    }
}

pub const BUILTIN_NAMES: &[&str] = &["rangwala-roy", "biprism", "qubit-zx", "double-slit"];

/// Construct a builtin scene by name.
pub fn builtin(name: &str, params: &BuiltinParams) -> Result<LoadedScene> {
    match name {
        "rangwala-roy" => Ok(rangwala_roy_scene(params.phi)),
        "biprism" => biprism_scene(params),
        "qubit-zx" => Ok(qubit_zx_scene()),
        "double-slit" => Ok(double_slit_scene(params.phi)),
        _ => Err(Error::UnknownName(format!(
            "unknown builtin {name}; available: {}",
            BUILTIN_NAMES.join(", ")
        ))),
    }
}

/// Two-point observable {0 on P⊥, 1 on P} from a projector.
fn projector_observable(p: &Projector) -> Observable {
    Observable::decompose(p.matrix(), None).expect("projector matrix is Hermitian")
}

fn rangwala_roy_scene(phi: f64) -> LoadedScene {
    let optical = build_rangwala_roy(phi);
    let mut observables = BTreeMap::new();
    for (name, p) in &optical.named_projectors {
        observables.insert(name.clone(), projector_observable(p));
    }
    let mut aliases = BTreeMap::new();
    aliases.insert("path".into(), "path_r".into());
    aliases.insert("interference".into(), "interf_plus".into());
    LoadedScene {
        name: "rangwala-roy".into(),
        dimension: 3,
        observables,
        aliases,
        optical: Some(optical),
        biprism: None,
    }
}

fn biprism_scene(params: &BuiltinParams) -> Result<LoadedScene> {
    if !(0.0..=1.0).contains(&params.alpha2) {
        return Err(Error::InvalidState {
            reason: format!("|α|² = {} outside [0, 1]", params.alpha2),
        });
    }
    let alpha = Complex64::new(params.alpha2.sqrt(), 0.0);
    let beta = Complex64::new((1.0 - params.alpha2).sqrt(), 0.0);
    let scene = build_biprism(params.dim_r, params.dim_t, params.wave_rank, alpha, beta)?;
    let mut observables = BTreeMap::new();
    observables.insert("path_r".into(), projector_observable(&scene.p_r));
    observables.insert("path_t".into(), projector_observable(&scene.p_t));
    observables.insert("wave".into(), projector_observable(&scene.p_wave));
    let mut aliases = BTreeMap::new();
    aliases.insert("path".into(), "path_t".into());
    let mut detectors = BTreeMap::new();
    detectors.insert("D_r".into(), scene.p_r.clone());
    detectors.insert("D_t".into(), scene.p_t.clone());
    let dim = scene.dim();
    let optical = OpticalScene {
        mode_labels: (0..params.dim_r)
            .map(|i| format!("r{i}"))
            .chain((0..params.dim_t).map(|i| format!("t{i}")))
            .collect(),
        elements: vec![],
        input_state: scene.state.clone(),
        named_projectors: BTreeMap::new(),
        detectors,
    };
    Ok(LoadedScene {
        name: "biprism".into(),
        dimension: dim,
        observables,
        aliases,
        optical: Some(optical),
        biprism: Some(scene),
    })
}

fn qubit_zx_scene() -> LoadedScene {
    let mut z = CMatrix::zeros(2, 2);
    z[(0, 0)] = Complex64::new(1.0, 0.0);
    z[(1, 1)] = Complex64::new(-1.0, 0.0);
    let mut x = CMatrix::zeros(2, 2);
    x[(0, 1)] = Complex64::new(1.0, 0.0);
    x[(1, 0)] = Complex64::new(1.0, 0.0);
    let mut observables = BTreeMap::new();
    observables.insert("Z".into(), Observable::decompose(&z, None).unwrap());
    observables.insert("X".into(), Observable::decompose(&x, None).unwrap());
    let mut aliases = BTreeMap::new();
    aliases.insert("z".into(), "Z".into());
    aliases.insert("x".into(), "X".into());
    LoadedScene {
        name: "qubit-zx".into(),
        dimension: 2,
        observables,
        aliases,
        optical: None,
        biprism: None,
    }
}

/// Two-dimensional two-path scene: a Mach–Zehnder style network standing in
/// for the double slit. Path observable distinguishes the two arms; the
/// interference observable is the balanced superposition line.
fn double_slit_scene(phi: f64) -> LoadedScene {
    let s = 1.0 / 2f64.sqrt();
    let c = |x: f64| Complex64::new(x, 0.0);
    let path0 = Projector::from_span(&[CVector::from_vec(vec![c(1.0), c(0.0)])]).unwrap();
    let interf =
        Projector::from_span(&[CVector::from_vec(vec![c(s), c(s)])]).unwrap();
    let mut observables = BTreeMap::new();
    observables.insert("path".into(), projector_observable(&path0));
    observables.insert("interference".into(), projector_observable(&interf));
    let mut detectors = BTreeMap::new();
    detectors.insert("D_0".into(), path0.clone());
    detectors.insert("D_1".into(), path0.orthocomplement());
    let optical = OpticalScene {
        mode_labels: vec!["slit_0".into(), "slit_1".into()],
        elements: vec![
            Element::BeamSplitter { reflectivity: 0.5, modes: (0, 1) },
            Element::PhaseShifter { phase: phi, mode: 1 },
            Element::BeamSplitter { reflectivity: 0.5, modes: (0, 1) },
        ],
        input_state: QuantumState::Pure(CVector::from_vec(vec![c(1.0), c(0.0)])),
        named_projectors: BTreeMap::new(),
        detectors,
    };
    LoadedScene {
        name: "double-slit".into(),
        dimension: 2,
        observables,
        aliases: BTreeMap::new(),
        optical: Some(optical),
        biprism: None,
    }
}
