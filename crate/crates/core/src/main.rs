use clap::Parser;

fn main() {
    let cli = stripbound::cli::Cli::parse();
    std::process::exit(stripbound::cli::run(&cli));
}
