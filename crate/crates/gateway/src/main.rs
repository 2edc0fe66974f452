use std::path::PathBuf;

use anyhow::{Context, Result};
use atreya_core::chembl::ChemblClient;
use atreya_core::credential::Credential;
use atreya_gateway::config::{Config, Mode};
use atreya_gateway::{record, repl, runtime, server};
use clap::{Parser, Subcommand};
use tracing_subscriber::EnvFilter;

#[derive(Parser)]
#[command(name = "atreya", version, about = "Chat-driven retrieval over the ChEMBL database")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the HTTP/WebSocket gateway.
    Serve {
        #[arg(long)]
        config: Option<PathBuf>,
    },
    /// Chat in the terminal.
    Repl {
        /// Serve ChEMBL responses from this fixture directory.
        #[arg(long, value_name = "DIR", conflicts_with = "live")]
        replay: Option<PathBuf>,
        /// Talk to the live service instead of fixtures.
        #[arg(long)]
        live: bool,
        #[arg(long)]
        config: Option<PathBuf>,
        /// Where images and files are written.
        #[arg(long, default_value = "downloads")]
        downloads: PathBuf,
    },
    /// Replay a query script against the live service, writing fixtures.
    Record {
        #[arg(long)]
        script: PathBuf,
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long, value_name = "DIR")]
        fixture_dir: Option<PathBuf>,
        #[arg(long)]
        base_url: Option<String>,
    },
}

fn init_logging(level: &str) {
    let filter = EnvFilter::try_from_env("ATREYA_LOG").unwrap_or_else(|_| EnvFilter::new(level));
    let _ = tracing_subscriber::fmt()
        .with_env_filter(filter)
        .with_writer(std::io::stderr)
        .try_init();
}

fn main() -> Result<()> {
    let cli = Cli::parse();
    match cli.command {
        Command::Serve { config } => {
            let config = Config::load(config.as_deref())?;
            init_logging(&config.log_level);
            let credential = Credential::from_option(config.token.as_deref());
            let rt = runtime::build(&config, credential)?;
            let state = server::AppState::new(&rt, config.max_sessions);
            tokio::runtime::Runtime::new()?.block_on(server::serve(state, config.listen, config.static_dir.clone()))?;
            // `rt` outlives the async runtime so blocking clients drop outside it.
            drop(rt);
        }
        Command::Repl {
            replay,
            live,
            config,
            downloads,
        } => {
            let mut config = Config::load(config.as_deref())?;
            if let Some(dir) = replay {
                config.mode = Mode::Replay;
                config.fixture_dir = dir;
            } else if live {
                config.mode = Mode::Live;
            }
            init_logging(if config.log_level == "info" {
                "warn"
            } else {
                &config.log_level
            });
            let rt = runtime::build(&config, runtime::local_credential(&config))?;
            if let Err(e) = &rt.ready {
                eprintln!("warning: {e}");
            }
            let stdin = std::io::stdin();
            let outcome = repl::repl_loop(&rt.engine, stdin.lock(), std::io::stdout().lock(), &downloads)?;
            std::process::exit(outcome.exit_code);
        }
        Command::Record {
            script,
            config,
            fixture_dir,
            base_url,
        } => {
            let mut config = Config::load(config.as_deref())?;
            config.mode = Mode::Record;
            if let Some(dir) = fixture_dir {
                config.fixture_dir = dir;
            }
            if let Some(url) = base_url {
                config.base_url = url;
            }
            init_logging(&config.log_level);
            let text = std::fs::read_to_string(&script).with_context(|| format!("reading {}", script.display()))?;
            let steps = record::parse_script(&text)?;
            let rt = runtime::build(&config, runtime::local_credential(&config))?;
            let store = rt.fixtures.clone().expect("record mode opens a fixture store");
            let client = ChemblClient::new(rt.transport.clone(), runtime::client_settings(&config));
            record::run_script(&rt.engine, &client, &steps, std::io::stdout().lock())?;
            eprintln!("{} fixtures in {}", store.len(), store.dir().display());
        }
    }
    Ok(())
}
