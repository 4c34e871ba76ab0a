//! Command-line surface: load scenes and observable pairs from files or
//! builtins, run complementarity verdicts, detector sweeps, and duality
//! grids, and emit human tables or machine CSV.
//!
//! Exit codes are stable: 0 success, 2 input error, 3 parse error.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use complement_lab::complementarity::{classify, Evidence, Verdict};
use complement_lab::duality::{
    duality_measures, normalization_vs_duality, TwoPathState,
};
use complement_lab::error::Error;
use complement_lab::scene::{builtin, BuiltinParams, LoadedScene, SceneFile};

#[derive(Parser)]
#[command(name = "complement-lab", version, about = "Complementarity verdicts and single-photon interferometer sweeps")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
enum Format {
    Table,
    Csv,
}

#[derive(Args)]
struct SceneArgs {
    /// Builtin scene: rangwala-roy, biprism, qubit-zx, double-slit.
    #[arg(long, conflicts_with = "file")]
    builtin: Option<String>,
    /// Scene file (JSON).
    #[arg(long)]
    file: Option<PathBuf>,
    /// Interferometer phase in radians (builtins).
    #[arg(long, default_value_t = 0.0)]
    phi_value: f64,
    /// |α|² of the biprism superposition.
    #[arg(long = "alpha2", default_value_t = 0.5)]
    alpha2_value: f64,
    /// Reflected-block dimension of the biprism truncation.
    #[arg(long, default_value_t = 4)]
    dim_r: usize,
    /// Transmitted-block dimension of the biprism truncation.
    #[arg(long, default_value_t = 4)]
    dim_t: usize,
    /// Rank of the wave (tunneling) projector inside the transmitted block.
    #[arg(long, default_value_t = 2)]
    wave_rank: usize,
    /// Write the resolved scene back out as a scene file.
    #[arg(long)]
    dump: Option<PathBuf>,
}

impl SceneArgs {
    fn params(&self) -> BuiltinParams {
        BuiltinParams {
            phi: self.phi_value,
            alpha2: self.alpha2_value,
            dim_r: self.dim_r,
            dim_t: self.dim_t,
            wave_rank: self.wave_rank,
        }
    }

    fn load(&self) -> Result<LoadedScene, Error> {
        let scene = match (&self.builtin, &self.file) {
            (Some(name), None) => builtin(name, &self.params())?,
            (None, Some(path)) => {
                let file = SceneFile::load(path)?;
                file.resolve(&path.display().to_string())?
            }
            _ => {
                return Err(Error::InvalidScene(
                    "exactly one of --builtin or --file is required".into(),
                ))
            }
        };
        if let Some(path) = &self.dump {
            let doc = SceneFile::from_scene(&scene)?;
            std::fs::write(path, doc.to_json() + "\n")
                .map_err(|e| Error::InvalidScene(format!("cannot write dump: {e}")))?;
        }
        Ok(scene)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Classify an observable pair: relation, commutation, witnesses.
    Analyze {
        #[command(flatten)]
        scene: SceneArgs,
        /// Observable pair, comma separated, e.g. "path,interference".
        #[arg(long)]
        pair: String,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
    /// Propagate the scene network over a phase sweep and report detector
    /// probabilities and anticoincidence.
    Simulate {
        #[command(flatten)]
        scene: SceneArgs,
        /// Phase sweep start:end:count (end exclusive) or a single value.
        #[arg(long, default_value = "0")]
        phi: String,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
    /// Predictability/visibility grid over |α|² and coherence μ.
    Duality {
        /// |α|² grid: start:end:count (inclusive) or a single value.
        #[arg(long, default_value = "0:1:11")]
        alpha2: String,
        /// Coherence grid: start:end:count (inclusive) or a single value.
        #[arg(long, default_value = "1")]
        mu: String,
        /// Also print the biprism normalization report for these dimensions.
        #[arg(long)]
        biprism: bool,
        #[arg(long, default_value_t = 4)]
        dim_r: usize,
        #[arg(long, default_value_t = 4)]
        dim_t: usize,
        #[arg(long, default_value_t = 2)]
        wave_rank: usize,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
}

/// Grid spec "start:end:count"; `inclusive` controls whether `end` is the
/// last sample (duality grids) or excluded (phase sweeps over a period).
fn parse_grid(spec: &str, inclusive: bool) -> Result<Vec<f64>, Error> {
    let parts: Vec<&str> = spec.split(':').collect();
    let bad = |_| Error::InvalidScene(format!("malformed grid spec: {spec}"));
    match parts.as_slice() {
        [single] => Ok(vec![single.trim().parse::<f64>().map_err(bad)?]),
        [start, end, count] => {
            let start: f64 = start.trim().parse().map_err(bad)?;
            let end: f64 = end.trim().parse().map_err(bad)?;
            let count: usize = count
                .trim()
                .parse()
                .map_err(|_| Error::InvalidScene(format!("malformed grid spec: {spec}")))?;
            if count == 0 {
                return Err(Error::InvalidScene(format!("grid count must be positive: {spec}")));
            }
            if count == 1 {
                return Ok(vec![start]);
            }
            let step = if inclusive {
                (end - start) / (count - 1) as f64
            } else {
                (end - start) / count as f64
            };
            Ok((0..count).map(|i| start + step * i as f64).collect())
        }
        _ => Err(Error::InvalidScene(format!("malformed grid spec: {spec}"))),
    }
}

fn fmt6(x: f64) -> String {
    format!("{x:.6}")
}

fn print_verdict(scene: &LoadedScene, a: &str, b: &str, v: &Verdict, format: Format) {
    match format {
        Format::Csv => {
            println!("scene,pair,relation,commutation,pairs_total,pairs_zero_meet,pairs_nonzero_meet");
            println!(
                "{},{} vs {},{:?},{:?},{},{},{}",
                scene.name, a, b, v.relation, v.commutation, v.pairs_total,
                v.pairs_zero_meet, v.pairs_nonzero_meet
            );
        }
        Format::Table => {
            println!("scene:        {}", scene.name);
            println!("pair:         {a} vs {b}");
            println!("relation:     {:?}", v.relation);
            println!("commutation:  {:?}", v.commutation);
            println!(
                "pairs:        {} total, {} zero-meet, {} nonzero-meet",
                v.pairs_total, v.pairs_zero_meet, v.pairs_nonzero_meet
            );
            for w in &v.witnesses {
                println!(
                    "witness:      {:?}  X={}  Y={}  magnitude={}",
                    w.kind,
                    w.value_set_a,
                    w.value_set_b,
                    fmt6(w.magnitude)
                );
                match &w.evidence {
                    Evidence::Vector(vec) => {
                        let comps: Vec<String> = vec
                            .iter()
                            .map(|z| format!("{}{:+}i", fmt6(z.re), z.im))
                            .collect();
                        println!("  evidence:   [{}]", comps.join(", "));
                    }
                    Evidence::Projector(p) => {
                        println!("  evidence:   projector of rank {}", p.rank());
                    }
                }
                if let Some(note) = &w.note {
                    println!("  note:       {note}");
                }
            }
        }
    }
}

fn run_analyze(scene_args: &SceneArgs, pair: &str, format: Format) -> Result<(), Error> {
    let scene = scene_args.load()?;
    let (a, b) = pair
        .split_once(',')
        .ok_or_else(|| Error::InvalidScene(format!("--pair wants two names, got {pair}")))?;
    let (a, b) = (a.trim(), b.trim());
    let verdict = classify(scene.observable(a)?, scene.observable(b)?)?;
    print_verdict(&scene, a, b, &verdict, format);
    Ok(())
}

fn run_simulate(scene_args: &SceneArgs, phi_spec: &str, format: Format) -> Result<(), Error> {
    let phis = parse_grid(phi_spec, false)?;
    // file scenes carry fixed phases; only builtins are rebuilt per φ
    if scene_args.builtin.is_none() && phis.len() > 1 {
        return Err(Error::InvalidScene(
            "phase sweeps are only available for builtin scenes; file scenes have fixed elements"
                .into(),
        ));
    }
    let mut rows: Vec<(f64, Vec<(String, f64)>, f64)> = Vec::new();
    let mut detector_names: Vec<String> = Vec::new();
    for &phi in &phis {
        let args = SceneArgs { phi_value: phi, dump: None, ..clone_scene_args(scene_args) };
        let scene = args.load()?;
        let optical = scene
            .optical
            .as_ref()
            .ok_or_else(|| Error::InvalidScene("scene has no optical network".into()))?;
        if optical.detectors.is_empty() {
            return Err(Error::InvalidScene("scene has no detectors".into()));
        }
        let probs = optical.detection_probabilities()?;
        detector_names = probs.keys().cloned().collect();
        let joint = if detector_names.len() >= 2 {
            optical.anticoincidence(&detector_names[0], &detector_names[1])?
        } else {
            0.0
        };
        rows.push((phi, probs.into_iter().collect(), joint));
    }
    // dump once, at the first φ
    if scene_args.dump.is_some() {
        scene_args.load()?;
    }
    let header: Vec<String> = std::iter::once("phi".to_string())
        .chain(detector_names.iter().map(|d| format!("p_{d}")))
        .chain(std::iter::once("anticoincidence".to_string()))
        .collect();
    match format {
        Format::Csv => {
            println!("{}", header.join(","));
            for (phi, probs, joint) in &rows {
                let mut cells = vec![phi.to_string()];
                cells.extend(probs.iter().map(|(_, p)| p.to_string()));
                cells.push(joint.to_string());
                println!("{}", cells.join(","));
            }
        }
        Format::Table => {
            println!("{}", header.join("\t"));
            for (phi, probs, joint) in &rows {
                let mut cells = vec![fmt6(*phi)];
                cells.extend(probs.iter().map(|(_, p)| fmt6(*p)));
                cells.push(fmt6(*joint));
                println!("{}", cells.join("\t"));
            }
        }
    }
    Ok(())
}

fn clone_scene_args(a: &SceneArgs) -> SceneArgs {
    SceneArgs {
        builtin: a.builtin.clone(),
        file: a.file.clone(),
        phi_value: a.phi_value,
        alpha2_value: a.alpha2_value,
        dim_r: a.dim_r,
        dim_t: a.dim_t,
        wave_rank: a.wave_rank,
        dump: None,
    }
}

#[allow(clippy::too_many_arguments)]
fn run_duality(
    alpha2_spec: &str,
    mu_spec: &str,
    biprism: bool,
    dim_r: usize,
    dim_t: usize,
    wave_rank: usize,
    format: Format,
) -> Result<(), Error> {
    let alpha2s = parse_grid(alpha2_spec, true)?;
    let mus = parse_grid(mu_spec, true)?;
    let header = "alpha2,mu,P,V,P2plusV2,normalization,wave_exp,transmit_exp";
    let sep = match format {
        Format::Csv => ",",
        Format::Table => "\t",
    };
    println!("{}", header.replace(',', sep));
    let mut violations = 0usize;
    for &alpha2 in &alpha2s {
        for &mu in &mus {
            let state = TwoPathState::from_alpha2(alpha2, mu)?;
            let r = duality_measures(&state);
            if r.sum_of_squares > 1.0 + 1e-10 {
                violations += 1;
            }
            let cells = [
                alpha2,
                mu,
                r.predictability,
                r.visibility,
                r.sum_of_squares,
                r.normalization,
                r.wave_expectation,
                r.transmit_expectation,
            ];
            let line: Vec<String> = match format {
                Format::Csv => cells.iter().map(|x| x.to_string()).collect(),
                Format::Table => cells.iter().map(|x| fmt6(*x)).collect(),
            };
            println!("{}", line.join(sep));
        }
    }
    if violations > 0 {
        println!("WARNING: {violations} rows violate P² + V² ≤ 1");
    }
    if biprism {
        let alpha2 = alpha2s[0];
        let params = BuiltinParams { alpha2, dim_r, dim_t, wave_rank, phi: 0.0 };
        let scene = builtin("biprism", &params)?;
        let bp = scene.biprism.as_ref().expect("biprism builtin carries its scene");
        let r = normalization_vs_duality(bp)?;
        println!();
        println!("biprism report (dim_r={dim_r}, dim_t={dim_t}, wave_rank={wave_rank}, |α|²={alpha2}):");
        println!("  normalization = ⟨P_r⟩ + ⟨P_t⟩ = {}", fmt6(r.normalization));
        println!("  wave_exp      = ⟨P_wave⟩      = {}", fmt6(r.wave_expectation));
        println!("  transmit_exp  = ⟨P_t⟩         = {}", fmt6(r.transmit_expectation));
        println!("  label: normalization, not complementarity (P_wave ≤ P_t always)");
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Analyze { scene, pair, format } => run_analyze(scene, pair, *format),
        Command::Simulate { scene, phi, format } => run_simulate(scene, phi, *format),
        Command::Duality { alpha2, mu, biprism, dim_r, dim_t, wave_rank, format } => {
            run_duality(alpha2, mu, *biprism, *dim_r, *dim_t, *wave_rank, *format)
        }
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
