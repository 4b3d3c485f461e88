use clap::Parser;

fn main() {
    let cli = circuitkit::Cli::parse();
    std::process::exit(circuitkit::main_with(cli));
}
