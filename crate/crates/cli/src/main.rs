use clap::Parser;

fn main() {
    let cli = heisospec_cli::Cli::parse();
    std::process::exit(heisospec_cli::run(cli));
}
