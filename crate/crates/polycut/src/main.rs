fn main() {
    let code = polycut::run(std::env::args_os(), &mut std::io::stdout(), &mut std::io::stderr());
    std::process::exit(code as i32);
}
