use clap::Parser;

fn main() {
    let cli = ma_ee::cli::Cli::parse();
    if let Err(err) = ma_ee::cli::run(cli) {
        eprintln!("error: {err}");
        std::process::exit(1);
    }
}
