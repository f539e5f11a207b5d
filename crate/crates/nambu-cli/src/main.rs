mod args;
mod exec;

use clap::Parser;

use nambu_core::error::Error;

fn main() {
    std::process::exit(run());
}

fn run() -> i32 {
    if let Ok(raw) = std::env::var("NAMBU_TERM_LIMIT") {
        match raw.parse::<usize>() {
            Ok(limit) => nambu_core::limits::set_term_limit(limit),
            Err(_) => {
                eprintln!("error: NAMBU_TERM_LIMIT must be a positive integer, got {raw:?}");
                return 2;
            }
        }
    }
    let cli = match args::Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let Some(ctx_spec) = cli.ctx.as_deref() else {
        eprintln!("error: --ctx is required");
        return 2;
    };
    let ctx = match exec::parse_context(ctx_spec) {
        Ok(ctx) => ctx,
        Err(e) => {
            eprintln!("error: {e}");
            return 2;
        }
    };
    match exec::execute(&cli.command, &ctx) {
        Ok(outcome) => {
            let (text, code) = exec::render(&outcome, cli.json);
            println!("{text}");
            code
        }
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::ResourceLimit { .. } => 3,
                _ => 2,
            }
        }
    }
}
