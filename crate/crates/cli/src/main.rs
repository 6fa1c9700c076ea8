use std::io::Write;
use std::process::ExitCode;

use bangbox_cli::{default_corpus, load_theory, run, server, Cli, Command, LoadedTheory};
use clap::Parser;

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Command::Serve { common, port, host } = &cli.command {
        let corpus = cli.corpus.clone().unwrap_or_else(default_corpus);
        let app = match load_theory(&corpus, &common.theory) {
            Ok(LoadedTheory::Zx(t)) => server::router(t),
            Ok(LoadedTheory::Plain(t)) => server::router(t),
            Err(f) => {
                eprintln!("error: {}", f.message);
                return ExitCode::from(2);
            }
        };
        let addr = format!("{host}:{port}");
        let rt = tokio::runtime::Runtime::new().expect("tokio runtime");
        return rt.block_on(async move {
            let listener = match tokio::net::TcpListener::bind(&addr).await {
                Ok(l) => l,
                Err(e) => {
                    eprintln!("error: cannot bind {addr}: {e}");
                    return ExitCode::from(2);
                }
            };
            eprintln!("listening on {addr}");
            match axum::serve(listener, app).await {
                Ok(()) => ExitCode::SUCCESS,
                Err(e) => {
                    eprintln!("error: {e}");
                    ExitCode::from(2)
                }
            }
        });
    }
    let out = run(cli);
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    let _ = std::io::stdout().flush();
    ExitCode::from(out.code as u8)
}
