fn main() {
    let result = shufflecraft_cli::run(std::env::args_os());
    print!("{}", result.output);
    std::process::exit(result.exit_code);
}
