use clap::Parser;

fn main() {
    let cli = tubular_lk::cli::Cli::parse();
    std::process::exit(tubular_lk::cli::run(&cli));
}
