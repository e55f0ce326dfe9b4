use std::io::Write;
use std::process::ExitCode;
use std::time::Instant;

use clap::Parser;
use serde_json::Value;
use skewmdp_cli::{log_line, run, Cli, CliError};

fn main() -> ExitCode {
    let started = Instant::now();
    let argv: Vec<String> = std::env::args().collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            if code != 0 {
                let line = log_line(&argv, None, 2, &Value::Null, Some(&e.kind().to_string()), 0.0, 0);
                eprintln!("{line}");
            }
            return ExitCode::from(code);
        }
    };
    if let Some(t) = cli.threads {
        if t == 0 {
            eprintln!("usage: --threads must be at least 1");
            return ExitCode::from(2);
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
            .expect("thread pool is configured once");
    }
    let threads = rayon::current_num_threads();

    let (exit, verdict, error) = match run(&cli) {
        Ok(out) => {
            let written = match &cli.out {
                Some(path) => std::fs::write(path, &out.artifact).map_err(|e| format!("{}: {e}", path.display())),
                None => std::io::stdout()
                    .write_all(out.artifact.as_bytes())
                    .map_err(|e| e.to_string()),
            };
            match written {
                Ok(()) => (out.exit, out.verdict, None),
                Err(e) => (2, out.verdict, Some(e)),
            }
        }
        Err(e) => {
            let msg = e.to_string();
            if !matches!(e, CliError::Usage(_)) {
                eprintln!("error: {msg}");
            } else {
                eprintln!("{msg}");
            }
            (2, Value::Null, Some(msg))
        }
    };

    let wall = started.elapsed().as_secs_f64() * 1e3;
    let line = log_line(&argv, Some(cli.command.name()), exit, &verdict, error.as_deref(), wall, threads);
    eprintln!("{line}");
    if let Some(path) = &cli.log {
        let appended = std::fs::OpenOptions::new()
            .create(true)
            .append(true)
            .open(path)
            .and_then(|mut f| writeln!(f, "{line}"));
        if let Err(e) = appended {
            eprintln!("error: cannot append to {}: {e}", path.display());
            return ExitCode::from(2);
        }
    }
    ExitCode::from(exit as u8)
}
