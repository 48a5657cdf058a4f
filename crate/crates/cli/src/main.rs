fn main() {
    std::process::exit(biortho_cli::run(std::env::args_os()));
}
