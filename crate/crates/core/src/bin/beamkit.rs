fn main() {
    std::process::exit(beamkit::cli::run(std::env::args_os()));
}
