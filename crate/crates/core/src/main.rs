fn main() {
    let code = cohnloc::cli::main_with(std::env::args_os(), &mut std::io::stdin(), &mut std::io::stdout());
    std::process::exit(code);
}
