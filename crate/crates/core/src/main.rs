fn main() {
    std::process::exit(nnc::cli::run(std::env::args_os(), &mut std::io::stdout()));
}
