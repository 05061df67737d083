use clap::Parser;

fn main() {
    std::process::exit(fujd::cli::run(fujd::cli::Cli::parse()));
}
