// Licensed under the Apache-2.0 license

fn main() {
    let code = tzaudit::cli::run(std::env::args_os(), &mut std::io::stdout(), &mut std::io::stderr());
    std::process::exit(code);
}
