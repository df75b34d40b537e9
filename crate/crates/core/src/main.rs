fn main() {
    std::process::exit(iasphere::cli::run(std::env::args_os()));
}
