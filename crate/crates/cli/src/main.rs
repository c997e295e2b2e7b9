use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::sync::Arc;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use ronar_core::episode_log::{self, load_episode, EpisodeLog, MultimodalFrame};
use ronar_core::eval::{self, SweepConfig};
use ronar_core::key_event::{self, KeyEvent, ModalitySet};
use ronar_core::narrator::{analyze_failure, AnalysisRequest, FailureTask, NarrationHistory, NarrationMode, Narrator};
use ronar_core::pipeline::{self, PipelineConfig};
use ronar_core::provider::{MockOptions, MockProvider, Provider, ProviderConfig, RequestIds};
use ronar_core::scene_graph::{environment_digest, LogDetector};
use ronar_core::summarizer::{ExperienceSummary, SummaryContext, TaskSpec};
use ronar_core::task_sim::{self, FailureSpec, SimConfig};
use ronar_core::vision::{self, FsImageSource};
use ronar_service::ServiceConfig;

#[derive(Parser)]
#[command(name = "ronar", version, about = "Narrate robot episode logs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check an episode file against the log schema.
    Validate { file: PathBuf },
    /// Align an episode's streams onto a fixed frame grid.
    Align {
        file: PathBuf,
        #[arg(long, default_value_t = episode_log::DEFAULT_INTERVAL)]
        interval: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the variance-of-Laplacian clarity score of an image.
    Clarity { image: PathBuf },
    /// Print the mean block-matching flow magnitude between two images.
    Flow {
        a: PathBuf,
        b: PathBuf,
        #[arg(long, default_value_t = vision::DEFAULT_BLOCK_SIZE)]
        block: u32,
        #[arg(long, default_value_t = vision::DEFAULT_SEARCH_RADIUS)]
        radius: u32,
    },
    /// Select key events and write them as JSONL.
    Keyframes {
        episode: PathBuf,
        #[command(flatten)]
        detect: DetectArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the environment digest at a key event.
    Scene {
        episode: PathBuf,
        #[arg(long)]
        event: usize,
        #[command(flatten)]
        detect: DetectArgs,
    },
    /// Print the experience summary of a key event.
    Summarize {
        episode: PathBuf,
        #[arg(long)]
        event: usize,
        #[command(flatten)]
        detect: DetectArgs,
        #[command(flatten)]
        provider: ProviderArgs,
        /// Print the summary record as JSON instead of text.
        #[arg(long)]
        json: bool,
    },
    /// Narrate every key event progressively and write JSONL.
    Narrate {
        episode: PathBuf,
        #[arg(long, default_value = "info", value_parser = parse_mode)]
        mode: NarrationMode,
        /// Key events from `ronar keyframes`; detected afresh when absent.
        #[arg(long)]
        events: Option<PathBuf>,
        #[command(flatten)]
        detect: DetectArgs,
        #[command(flatten)]
        provider: ProviderArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Ask a failure-analysis question over the narrated episode.
    Analyze {
        episode: PathBuf,
        #[arg(long, value_parser = parse_task)]
        task: FailureTask,
        /// Query time in seconds; defaults to the first failure label, else
        /// the episode end.
        #[arg(long)]
        at: Option<f64>,
        #[command(flatten)]
        detect: DetectArgs,
        #[command(flatten)]
        provider: ProviderArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the task simulator and write the episode, its images and ground truth.
    Simulate {
        #[arg(long)]
        task: String,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        /// JSON array of failure specs.
        #[arg(long)]
        failures: Option<PathBuf>,
        #[arg(long, default_value = "episodes")]
        out: PathBuf,
        #[arg(long)]
        episode_id: Option<String>,
        /// Print the synthesized state machine as JSON and exit.
        #[arg(long)]
        machine: bool,
    },
    /// Threshold and modality sweep over a directory of episodes.
    Sweep {
        dir: PathBuf,
        #[arg(long, value_delimiter = ',', default_values_t = eval::DEFAULT_THRESHOLDS.to_vec())]
        thresholds: Vec<f64>,
        /// Modality sets separated by `;`.
        #[arg(long, default_value = "E;I;TP;E,I;E,TP;I,TP;E,I,TP")]
        modalities: String,
        #[arg(long, default_value_t = key_event::DEFAULT_TOLERANCE)]
        tolerance: f64,
        #[arg(long, default_value_t = episode_log::DEFAULT_INTERVAL)]
        interval: f64,
        #[arg(long)]
        inclusive: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Serve the REST and WebSocket API.
    Serve {
        /// TOML config; `RONAR_*` variables override it and flags override both.
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        port: Option<u16>,
        #[arg(long)]
        host: Option<String>,
        #[arg(long)]
        episodes: Option<PathBuf>,
        #[arg(long)]
        ui: Option<PathBuf>,
        #[arg(long)]
        speed: Option<f64>,
    },
}

#[derive(Args, Clone)]
struct DetectArgs {
    #[arg(long, default_value_t = key_event::DEFAULT_THRESHOLD)]
    threshold: f64,
    #[arg(long, default_value = "E,I,TP")]
    modalities: ModalitySet,
    #[arg(long, default_value_t = episode_log::DEFAULT_INTERVAL)]
    interval: f64,
    /// Fire on accumulator >= threshold.
    #[arg(long)]
    inclusive: bool,
}

impl DetectArgs {
    fn pipeline(&self) -> PipelineConfig {
        let mut cfg = PipelineConfig {
            interval: self.interval,
            ..Default::default()
        };
        cfg.classifier.threshold = self.threshold;
        cfg.classifier.modalities = self.modalities;
        cfg.classifier.inclusive = self.inclusive;
        cfg
    }
}

#[derive(Args, Clone)]
struct ProviderArgs {
    /// `mock`, or a provider config JSON file.
    #[arg(long, default_value = "mock")]
    provider: String,
    /// Mock only: text appended to every answer.
    #[arg(long)]
    mock_echo: Vec<String>,
}

impl ProviderArgs {
    fn build(&self) -> Result<Arc<dyn Provider>> {
        if self.provider == "mock" {
            return Ok(Arc::new(MockProvider::with_options(MockOptions {
                echo: self.mock_echo.clone(),
                ..Default::default()
            })));
        }
        if !self.mock_echo.is_empty() {
            bail!("--mock-echo needs --provider mock");
        }
        let cfg = ProviderConfig::load(Path::new(&self.provider))?;
        Ok(cfg.build()?)
    }
}

fn parse_mode(s: &str) -> Result<NarrationMode, String> {
    serde_json::from_value(serde_json::Value::String(s.to_ascii_lowercase())).map_err(|_| format!("unknown mode `{s}` (alert, info, debug)"))
}

fn parse_task(s: &str) -> Result<FailureTask, String> {
    s.parse()
}

fn output(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => {
            if let Some(dir) = p.parent().filter(|d| !d.as_os_str().is_empty()) {
                std::fs::create_dir_all(dir)?;
            }
            Box::new(BufWriter::new(File::create(p).with_context(|| p.display().to_string())?))
        }
        None => Box::new(BufWriter::new(std::io::stdout())),
    })
}

fn write_jsonl<T: serde::Serialize>(path: Option<&Path>, items: &[T]) -> Result<()> {
    let mut w = output(path)?;
    for item in items {
        serde_json::to_writer(&mut w, item)?;
        w.write_all(b"\n")?;
    }
    w.flush()?;
    Ok(())
}

/// Episode, aligned frames and key events with sharpest images.
struct Detected {
    episode: EpisodeLog,
    frames: Vec<MultimodalFrame>,
    events: Vec<KeyEvent>,
    cfg: PipelineConfig,
}

fn detect(path: &Path, args: &DetectArgs) -> Result<Detected> {
    let episode = load_episode(path).with_context(|| path.display().to_string())?;
    let cfg = args.pipeline();
    let images = FsImageSource::new(&episode.base_dir);
    let frames = pipeline::prepare_frames(&episode, &images, &cfg)?;
    let stats = key_event::compute_stats(&frames)?;
    let events = pipeline::detect_key_events(&frames, &stats, &images, &cfg)?;
    Ok(Detected { episode, frames, events, cfg })
}

fn read_events(path: &Path) -> Result<Vec<KeyEvent>> {
    let file = File::open(path).with_context(|| path.display().to_string())?;
    BufReader::new(file)
        .lines()
        .filter(|l| l.as_ref().map_or(true, |l| !l.trim().is_empty()))
        .map(|l| Ok(serde_json::from_str(&l?)?))
        .collect()
}

fn summarize_all(d: &Detected, provider: &dyn Provider, ids: &RequestIds) -> Result<Vec<ExperienceSummary>> {
    Ok(pipeline::summarize_events(&d.episode, &d.frames, &d.events, provider, ids, &d.cfg)?)
}

fn narrate_all(d: &Detected, summaries: &[ExperienceSummary], provider: &dyn Provider, ids: &RequestIds, mode: NarrationMode) -> Result<NarrationHistory> {
    let narrator = Narrator::new(provider, ids, &d.episode.robot_config, TaskSpec::from_episode(&d.episode));
    let mut history = NarrationHistory::new();
    for s in summaries {
        narrator.narrate(&mut history, s, mode)?;
    }
    Ok(history)
}

fn event_at(d: &Detected, i: usize) -> Result<(&KeyEvent, Option<&KeyEvent>)> {
    let e = d
        .events
        .get(i)
        .ok_or_else(|| anyhow!("event {i} out of range: the episode has {} key events", d.events.len()))?;
    Ok((e, i.checked_sub(1).map(|p| &d.events[p])))
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Validate { file } => {
            let ep = load_episode(&file).with_context(|| file.display().to_string())?;
            let samples: usize = ep.streams.values().map(|s| s.samples.len()).sum();
            let (a, b) = ep.time_range().unwrap_or((0.0, 0.0));
            println!(
                "ok {} task={} streams={} samples={} planner={} detections={} failures={} t=[{a:.2}, {b:.2}]",
                ep.episode_id,
                ep.task_name,
                ep.streams.len(),
                samples,
                ep.planner_events.len(),
                ep.detections.len(),
                ep.failure_labels.len()
            );
        }
        Command::Align { file, interval, out } => {
            let ep = load_episode(&file).with_context(|| file.display().to_string())?;
            let frames = episode_log::align(&ep, interval)?;
            write_jsonl(out.as_deref(), &frames)?;
            eprintln!("{} frames", frames.len());
        }
        Command::Clarity { image } => {
            println!("{}", vision::clarity_score(&vision::load_gray(&image)?)?);
        }
        Command::Flow { a, b, block, radius } => {
            let flow = vision::dense_flow(&vision::load_gray(&a)?, &vision::load_gray(&b)?, block, radius)?;
            println!("{}", vision::mean_flow_magnitude(&flow)?);
        }
        Command::Keyframes { episode, detect: args, out } => {
            let d = detect(&episode, &args)?;
            write_jsonl(out.as_deref(), &d.events)?;
            eprintln!("{} key events from {} frames", d.events.len(), d.frames.len());
        }
        Command::Scene { episode, event, detect: args } => {
            let d = detect(&episode, &args)?;
            let (e, _) = event_at(&d, event)?;
            let detector = LogDetector::new(&d.episode);
            let mock = MockProvider::new();
            let ids = RequestIds::new("scene");
            let mut ctx = SummaryContext::new(&d.episode, &d.frames, &detector, &mock, &ids);
            ctx.max_distance = d.cfg.max_distance;
            ctx.margins = d.cfg.margins;
            println!("{}", environment_digest(&ctx.scene(e)?));
        }
        Command::Summarize {
            episode,
            event,
            detect: args,
            provider,
            json,
        } => {
            let d = detect(&episode, &args)?;
            let (e, prev) = event_at(&d, event)?;
            let provider = provider.build()?;
            let ids = RequestIds::new(d.episode.episode_id.clone());
            let detector = LogDetector::new(&d.episode);
            let mut ctx = SummaryContext::new(&d.episode, &d.frames, &detector, provider.as_ref(), &ids);
            ctx.max_distance = d.cfg.max_distance;
            ctx.margins = d.cfg.margins;
            let s = ctx.summarize_event(event, e, prev)?;
            if json {
                println!("{}", serde_json::to_string_pretty(&s)?);
            } else {
                println!("{}", s.render());
            }
        }
        Command::Narrate {
            episode,
            mode,
            events,
            detect: args,
            provider,
            out,
        } => {
            let mut d = detect(&episode, &args)?;
            if let Some(path) = events {
                d.events = read_events(&path)?;
            }
            let provider = provider.build()?;
            let ids = RequestIds::new(d.episode.episode_id.clone());
            let summaries = summarize_all(&d, provider.as_ref(), &ids)?;
            let history = narrate_all(&d, &summaries, provider.as_ref(), &ids, mode)?;
            write_jsonl(out.as_deref(), history.instances())?;
            eprintln!("{} narrations", history.len());
        }
        Command::Analyze {
            episode,
            task,
            at,
            detect: args,
            provider,
            out,
        } => {
            let d = detect(&episode, &args)?;
            let provider = provider.build()?;
            let ids = RequestIds::new(d.episode.episode_id.clone());
            let summaries = summarize_all(&d, provider.as_ref(), &ids)?;
            let history = narrate_all(&d, &summaries, provider.as_ref(), &ids, d.cfg.mode)?;
            let range = d.episode.time_range().ok_or_else(|| anyhow!("episode has no samples"))?;
            let query_time = at.or(d.episode.failure_labels.first().map(|f| f.t)).unwrap_or(range.1);
            let req = AnalysisRequest {
                task,
                summaries: &summaries,
                history: &history,
                query_time,
                time_range: range,
            };
            let analysis = analyze_failure(provider.as_ref(), &ids, &d.cfg.params, &req)?;
            write_jsonl(out.as_deref(), &[analysis])?;
        }
        Command::Simulate {
            task,
            seed,
            failures,
            out,
            episode_id,
            machine,
        } => {
            let def = task_sim::find_task(&task).ok_or_else(|| {
                let names: Vec<String> = task_sim::catalog().into_iter().map(|t| t.name).collect();
                anyhow!("unknown task `{task}` (one of {})", names.join(", "))
            })?;
            if machine {
                println!("{}", serde_json::to_string_pretty(&task_sim::synthesize_machine(&def.states)?)?);
                return Ok(());
            }
            let failures: Vec<FailureSpec> = match failures {
                Some(p) => serde_json::from_reader(BufReader::new(File::open(&p).with_context(|| p.display().to_string())?))
                    .with_context(|| format!("{}: expected a JSON array of failure specs", p.display()))?,
                None => Vec::new(),
            };
            let id = episode_id.unwrap_or_else(|| format!("{}_seed{seed}", def.short));
            let g = task_sim::generate_episode(&def, failures, SimConfig::new(id.clone(), seed))?;
            let path = g.write(&out)?;
            let truth = out.join(format!("{id}.truth.json"));
            std::fs::write(&truth, serde_json::to_string_pretty(&g.ground_truth)? + "\n")?;
            println!("{}", path.display());
            eprintln!("path: {}", g.path.join(" -> "));
            for f in &g.ground_truth {
                eprintln!("failure at {:.2} s in {}: {}", f.t, f.state, f.reason);
            }
        }
        Command::Sweep {
            dir,
            thresholds,
            modalities,
            tolerance,
            interval,
            inclusive,
            out,
        } => {
            let modality_sets = modalities
                .split(';')
                .filter(|s| !s.trim().is_empty())
                .map(|s| s.trim().parse::<ModalitySet>())
                .collect::<Result<Vec<_>, _>>()?;
            let mut files: Vec<PathBuf> = std::fs::read_dir(&dir)
                .with_context(|| dir.display().to_string())?
                .filter_map(|e| e.ok().map(|e| e.path()))
                .filter(|p| p.extension().is_some_and(|x| x == "jsonl"))
                .collect();
            files.sort();
            let episodes = files
                .iter()
                .map(|p| load_episode(p).with_context(|| p.display().to_string()))
                .collect::<Result<Vec<_>>>()?;
            let cfg = SweepConfig {
                thresholds,
                modality_sets,
                tolerance,
                interval,
                inclusive,
                ..Default::default()
            };
            let result = eval::sweep(&episodes, &cfg)?;
            eprintln!("{}", result.table());
            let mut w = output(out.as_deref())?;
            result.write_csv(&mut w)?;
            w.flush()?;
        }
        Command::Serve {
            config,
            port,
            host,
            episodes,
            ui,
            speed,
        } => {
            tracing_subscriber::fmt().with_writer(std::io::stderr).init();
            let mut cfg = ServiceConfig::load(config.as_deref())?;
            if let Some(p) = port {
                cfg.port = p;
            }
            if let Some(h) = host {
                cfg.host = h;
            }
            if let Some(e) = episodes {
                cfg.episodes_dir = e;
            }
            if let Some(u) = ui {
                cfg.ui_dir = u;
            }
            if let Some(s) = speed {
                cfg.replay_speed = s;
            }
            let rt = tokio::runtime::Runtime::new()?;
            rt.block_on(ronar_service::serve(cfg))?;
        }
    }
    Ok(())
}

fn main() {
    if let Err(e) = run(Cli::parse()) {
        eprintln!("error: {e:#}");
        std::process::exit(1);
    }
}
