use clap::Parser;
use tfchrom_cli::{run, PipelineConfig};

fn main() {
    let cfg = PipelineConfig::parse();
    if let Err(e) = run(&cfg) {
        eprintln!("tfchrom: {e}");
        std::process::exit(e.exit_code());
    }
}
