fn main() {
    let (code, out, err) = berkline::cli::execute(std::env::args_os());
    if !out.is_empty() {
        println!("{}", out);
    }
    if !err.is_empty() {
        eprintln!("{}", err.trim_end());
    }
    std::process::exit(code);
}
