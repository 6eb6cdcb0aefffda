fn main() {
    std::process::exit(fermi1d::cli::run(std::env::args_os()));
}
