//! Loads a JSON instance, resolves it, and runs the MC check as the CLI
//! does, printing the machine-readable report.

use lie_deform::cli::{load_instance, run_command, Command, RunOptions};

fn main() -> lie_deform::Result<()> {
    let arg = std::env::args().nth(1).unwrap_or_else(|| "preset:sl2-borel".into());
    let file = load_instance(&arg)?;
    let inst = file.resolve()?;
    let report = run_command(&Command::McCheck, &inst, &RunOptions::for_instance(&inst.file))?;
    println!("{}", report.to_json());
    Ok(())
}
