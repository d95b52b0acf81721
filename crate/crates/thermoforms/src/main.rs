use std::process::ExitCode;

use thermoforms::{parse_args, run, threads_from_env};

fn main() -> ExitCode {
    let mut config = match parse_args(std::env::args_os()) {
        Ok(c) => c,
        Err(e) => e.exit(),
    };
    let result = threads_from_env().and_then(|threads| {
        config.threads = threads;
        run(&config)
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
