use std::io;

fn main() {
    let threads = std::env::var(derivsim_cli::THREADS_ENV).ok();
    let code = derivsim_cli::run(std::env::args_os(), threads.as_deref(), &mut io::stdout(), &mut io::stderr());
    std::process::exit(code);
}
