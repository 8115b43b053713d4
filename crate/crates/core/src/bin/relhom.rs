fn main() {
    std::process::exit(relhom::cli::main_with(std::env::args_os()));
}
