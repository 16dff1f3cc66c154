fn main() {
    std::process::exit(metric_boundary::cli::main());
}
