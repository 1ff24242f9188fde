fn main() {
    std::process::exit(wsuper::cli::run(std::env::args_os()));
}
