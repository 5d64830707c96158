// Driving the command line in-process: generate, verify and decompose.

use rainbow_trees::cli::run;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let dir = std::env::temp_dir().join(format!("rainbow-cli-example-{}", std::process::id()));
    std::fs::create_dir_all(&dir)?;
    let inst = dir.join("k8.json");
    let inst = inst.to_str().unwrap();
    let (mut out, mut err) = (Vec::new(), Vec::new());
    assert_eq!(run(["rainbow", "gen", "--n", "8", "--seed", "1", "--out", inst], &mut out, &mut err), 0);
    assert_eq!(run(["rainbow", "verify", inst], &mut out, &mut err), 0);
    let code = run(["rainbow", "decompose", "--instance", inst, "--budget", "10s"], &mut out, &mut err);
    println!("{}", String::from_utf8(out)?);
    println!("decompose exit code {code}");
    std::fs::remove_dir_all(&dir)?;
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
