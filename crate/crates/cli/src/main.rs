fn main() {
    std::process::exit(intgeo_cli::run(std::env::args_os()));
}
