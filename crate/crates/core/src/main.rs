fn main() {
    std::process::exit(threefield::cli::run(std::env::args_os()));
}
