fn main() {
    std::process::exit(nullgrid_core::cli::run(std::env::args_os()));
}
