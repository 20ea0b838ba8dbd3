use std::io::Write;
use std::process::ExitCode;
use std::sync::Arc;

use clap::Parser;
use polydraw::commands::{exit_code, read, run, Cli, Cmd};
use polydraw::object::{load, Object};
use polydraw::server::{serve, AppState};
use polydraw_core::scene::{Command, SessionConfig, Source};
use polydraw_core::Result;

fn serve_command(cli: &Cli) -> Result<std::result::Result<(), std::io::Error>> {
    let Cmd::Serve { object, listen, facet, replay } = &cli.command else { unreachable!() };
    let source = match load(object)? {
        Object::Polytope(p) => Source::Polytope(Arc::new(p)),
        Object::Graph(g) => Source::Graph(g),
    };
    let commands: Vec<Command> = match replay {
        Some(path) => serde_json::from_str(&read(path)?)?,
        None => Vec::new(),
    };
    let config = SessionConfig { facet: *facet, spring: cli.global.spring_params()? };
    let state = AppState::new(source, config, &commands)?;
    let rt = tokio::runtime::Runtime::new().expect("tokio runtime");
    Ok(rt.block_on(serve(state, listen)))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if matches!(cli.command, Cmd::Serve { .. }) {
        return match serve_command(&cli) {
            Ok(Ok(())) => ExitCode::SUCCESS,
            Ok(Err(e)) => {
                eprintln!("error: {e}");
                ExitCode::from(1)
            }
            Err(e) => {
                eprintln!("error [{}]: {e}", e.code());
                ExitCode::from(exit_code(&e) as u8)
            }
        };
    }
    match run(&cli) {
        Ok(bytes) => {
            let written = match &cli.global.out {
                Some(path) => std::fs::write(path, &bytes),
                None => std::io::stdout().write_all(&bytes),
            };
            match written {
                Ok(()) => ExitCode::SUCCESS,
                Err(e) => {
                    eprintln!("error: {e}");
                    ExitCode::from(1)
                }
            }
        }
        Err(e) => {
            eprintln!("error [{}]: {e}", e.code());
            ExitCode::from(exit_code(&e) as u8)
        }
    }
}
