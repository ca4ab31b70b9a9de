fn main() {
    std::process::exit(hallforge::cli::run(std::env::args_os()));
}
