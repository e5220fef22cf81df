fn main() {
    std::process::exit(slabres::cli::run(std::env::args_os()));
}
