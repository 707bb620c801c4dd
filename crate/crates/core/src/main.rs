fn main() {
    std::process::exit(fanspline::cli::run(std::env::args_os()));
}
