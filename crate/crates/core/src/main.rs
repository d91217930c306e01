fn main() {
    std::process::exit(lca_pego::cli::main_with(std::env::args_os()));
}
