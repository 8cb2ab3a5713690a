use clap::Parser;
use spherenet::cli::{run, Cli};

fn main() {
    let cli = Cli::parse();
    if let Err(e) = run(&cli) {
        eprintln!("spherenet: {e}");
        std::process::exit(e.exit_code());
    }
}
