use clap::Parser;

fn main() {
    let cli = polysemi::cli::Cli::parse();
    std::process::exit(polysemi::cli::run(cli));
}
