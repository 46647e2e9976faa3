fn main() {
    std::process::exit(qism_ladder::cli::main_with(std::env::args_os()));
}
