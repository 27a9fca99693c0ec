//! Command-line front end.

fn main() {
    let args: Vec<String> = std::env::args().collect();
    std::process::exit(vortex_atlas_cli::main_with(&args));
}
