fn main() {
    std::process::exit(mcwave_bench::cli::main_with_args(std::env::args_os()));
}
