use qwalk_cli::{parse_config, run_experiment, CliError};

fn main() {
    let result = parse_config(std::env::args_os()).and_then(|config| run_experiment(&config));
    match result {
        Ok(outcome) => {
            for path in &outcome.data_files {
                println!("wrote {}", path.display());
            }
            println!("wrote {}", outcome.metrics_file.display());
            println!("wrote {}", outcome.meta_file.display());
        }
        Err(CliError::Clap(e)) => e.exit(),
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(e.exit_code());
        }
    }
}
