fn main() {
    std::process::exit(twisted_bernoulli::cli::main_with_args(std::env::args_os()));
}
