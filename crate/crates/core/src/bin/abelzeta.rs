fn main() {
    std::process::exit(abelzeta::cli::run(std::env::args_os()));
}
