fn main() {
    std::process::exit(dynkin_orbits::cli::run(std::env::args_os()));
}
