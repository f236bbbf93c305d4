fn main() {
    std::process::exit(svir_cli::run(std::env::args_os()));
}
