fn main() {
    std::process::exit(qsums_harness::cli::run(std::env::args_os()));
}
