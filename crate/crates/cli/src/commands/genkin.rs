use std::path::Path;

use mscap::neuralnet::{synth_kinematics, NoiseLevel};

use crate::error::{CliError, CliResult};

pub fn gen_kin(n: usize, noise: &str, seed: u64, out: &Path) -> CliResult {
    if n == 0 {
        return Err(CliError::Validation("--n must be at least 1".into()));
    }
    let noise: NoiseLevel = noise.parse()?;
    let data = synth_kinematics(n, noise, seed)?;
    data.save(out)
        .map_err(|e| CliError::Runtime(format!("{}: {e}", out.display())))?;
    println!("wrote {n} rows ({noise} noise, seed {seed}) to {}", out.display());
    Ok(())
}
