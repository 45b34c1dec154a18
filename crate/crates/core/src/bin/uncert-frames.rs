use std::io;

fn main() {
    let code = uncert_frames::cli::main_from_args(
        std::env::args_os(),
        &mut io::stdout().lock(),
        &mut io::stderr().lock(),
    );
    std::process::exit(code);
}
