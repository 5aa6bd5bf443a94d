use clap::Parser;

fn main() {
    let cli = ela::cli::Cli::parse();
    std::process::exit(ela::cli::run(cli));
}
