use clap::Parser;
use pareto_auctions::cli;

fn main() {
    let config = cli::RunConfig::parse();
    match cli::run(config) {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(1);
        }
    }
}
