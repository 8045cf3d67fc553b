fn main() {
    std::process::exit(ffhyper::cli::run(std::env::args_os()));
}
