use std::io::{self, BufWriter};
use std::process::ExitCode;

fn main() -> ExitCode {
    let stdin = io::stdin();
    let mut input = stdin.lock();
    let mut output = BufWriter::new(io::stdout().lock());
    match bloom_mst::cli::run_from(std::env::args_os(), &mut input, &mut output) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("bloom-mst: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
