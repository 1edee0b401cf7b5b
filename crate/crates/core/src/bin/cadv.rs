use std::net::IpAddr;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::Context;
use cadv::app::DEFAULT_MODEL_FILE;
use cadv::{cmd_analyze, AnalyzeConfig, ServeConfig};
use clap::{Parser, Subcommand};

#[derive(Parser)]
#[command(name = "cadv", version, about = "Visualize how code annotations are distributed in a Java project")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Scan a source tree and write a model document
    Analyze {
        root: PathBuf,
        /// Glob, relative to the root, of files to leave out (repeatable)
        #[arg(long = "exclude", value_name = "GLOB")]
        excludes: Vec<String>,
        #[arg(long, default_value = DEFAULT_MODEL_FILE)]
        out: PathBuf,
        /// JSON file with `{ "colors": { "<schema>": "#RRGGBB" } }`
        #[arg(long)]
        colors: Option<PathBuf>,
    },
    /// Serve layouts and the legend for a model document over HTTP
    Serve {
        model: PathBuf,
        #[arg(long, default_value_t = 8080, value_parser = clap::value_parser!(u16).range(1..))]
        port: u16,
        #[arg(long, default_value = "127.0.0.1")]
        bind: IpAddr,
        /// Directory with the UI bundle to serve at `/`
        #[arg(long)]
        assets: Option<PathBuf>,
    },
}

fn serve(config: ServeConfig) -> anyhow::Result<()> {
    let addr = config.address()?;
    let explorer = config
        .explorer()
        .with_context(|| format!("loading {}", config.model.display()))?;
    if explorer.is_stale() {
        eprintln!("warning: {} was written by another version; API calls will answer 410", config.model.display());
    }
    let runtime = tokio::runtime::Runtime::new()?;
    runtime.block_on(async move {
        let listener = tokio::net::TcpListener::bind(addr)
            .await
            .with_context(|| format!("binding {addr}"))?;
        eprintln!("serving on http://{}", listener.local_addr()?);
        let shutdown = async {
            let _ = tokio::signal::ctrl_c().await;
        };
        cadv::server::http::serve(Arc::new(explorer), listener, shutdown).await?;
        Ok(())
    })
}

fn main() -> ExitCode {
    match Cli::parse().command {
        Command::Analyze { root, excludes, out, colors } => {
            let config = AnalyzeConfig { root, excludes, out, colors };
            let code = cmd_analyze(&config, &mut std::io::stdout(), &mut std::io::stderr());
            ExitCode::from(code as u8)
        }
        Command::Serve { model, port, bind, assets } => {
            match serve(ServeConfig { model, bind, port, assets }) {
                Ok(()) => ExitCode::SUCCESS,
                Err(e) => {
                    eprintln!("error: {e:#}");
                    ExitCode::FAILURE
                }
            }
        }
    }
}
