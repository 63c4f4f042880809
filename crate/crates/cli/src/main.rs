//! `placement`: operator command line for the candidate registry and
//! selection ranking.
//!
//! Exit codes: 0 success, 1 validation or other error, 2 duplicate candidate,
//! 3 not found, 4 empty batch.

mod output;

use std::io::Write;
use std::net::{IpAddr, SocketAddr};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use chrono::NaiveDate;
use clap::{Args, Parser, Subcommand};
use placement_core::registry::{resolve_data_dir, ScopeFilter, DATA_DIR_ENV};
use placement_core::{
    default_criteria, explain, load_criteria, AttributeProfile, CandidateRecord, CriterionSpec, EducationLevel, Error,
    Gender, PsychResult, Registry, ReportFormat, Scope, SelectionBatch, SelectionReport,
};

#[derive(Parser, Debug)]
#[command(name = "placement", version, about = "Rank migrant-worker candidates for placement by weighted criteria")]
struct Cli {
    /// Data directory holding candidates.jsonl and batches/
    #[arg(long, global = true, env = DATA_DIR_ENV)]
    data_dir: Option<PathBuf>,

    /// Criteria config (JSON); the built-in four criteria when omitted
    #[arg(long, global = true)]
    criteria: Option<PathBuf>,

    /// Output format
    #[arg(long, global = true, default_value = "text")]
    format: ReportFormat,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Register a new candidate
    Add(CandidateArgs),
    /// Change fields of an existing candidate
    Update {
        #[arg(long)]
        id: u64,
        #[command(flatten)]
        fields: UpdateArgs,
    },
    /// Permanently delete a candidate
    Delete {
        #[arg(long)]
        id: u64,
    },
    /// List candidates, optionally filtered by scope
    List {
        #[command(flatten)]
        scope: FilterArgs,
    },
    /// Rank every candidate in a scope, store the batch and print the report
    Rank {
        #[command(flatten)]
        scope: ScopeArgs,
    },
    /// Show how one candidate's preference value was derived
    Explain {
        #[arg(long)]
        id: u64,
        /// Batch id; the latest batch when omitted
        #[arg(long)]
        batch: Option<u64>,
    },
    /// Print the report of a stored batch
    Report {
        /// Batch id; the latest batch when omitted
        #[arg(long)]
        batch: Option<u64>,
    },
    /// Serve the HTTP API
    Serve {
        #[arg(long, default_value_t = placement_service::DEFAULT_PORT)]
        port: u16,
        #[arg(long, default_value = "127.0.0.1")]
        bind: IpAddr,
        /// Allowed CORS origin; any origin when omitted
        #[arg(long)]
        cors_origin: Option<String>,
    },
}

#[derive(Args, Debug)]
struct CandidateArgs {
    #[arg(long)]
    name: String,
    #[arg(long)]
    gender: Gender,
    #[arg(long)]
    birth_date: NaiveDate,
    #[arg(long, default_value = "")]
    address: String,
    #[arg(long, default_value = "")]
    phone: String,
    #[arg(long)]
    email: Option<String>,
    /// Placement agency (PPTKIS)
    #[arg(long, default_value = "")]
    agency: String,
    #[arg(long)]
    country: String,
    /// Placement unit (kilang)
    #[arg(long)]
    placement: String,
    #[arg(long)]
    position: String,
    #[arg(long)]
    intake_date: NaiveDate,
    /// Age in years; derived from birth and intake dates when omitted
    #[arg(long)]
    age: Option<u32>,
    /// SMP, SMA, DI_DIII, DIV or S1
    #[arg(long)]
    education: EducationLevel,
    /// Recommended or NotYetRecommended
    #[arg(long)]
    psych: PsychResult,
    /// Years of work experience
    #[arg(long)]
    experience: u32,
}

#[derive(Args, Debug)]
struct UpdateArgs {
    #[arg(long)]
    name: Option<String>,
    #[arg(long)]
    gender: Option<Gender>,
    #[arg(long)]
    birth_date: Option<NaiveDate>,
    #[arg(long)]
    address: Option<String>,
    #[arg(long)]
    phone: Option<String>,
    #[arg(long)]
    email: Option<String>,
    #[arg(long)]
    agency: Option<String>,
    #[arg(long)]
    country: Option<String>,
    #[arg(long)]
    placement: Option<String>,
    #[arg(long)]
    position: Option<String>,
    #[arg(long)]
    intake_date: Option<NaiveDate>,
    #[arg(long, conflicts_with = "derive_age")]
    age: Option<u32>,
    /// Drop a stored age so it is derived from the dates again
    #[arg(long)]
    derive_age: bool,
    #[arg(long)]
    education: Option<EducationLevel>,
    #[arg(long)]
    psych: Option<PsychResult>,
    #[arg(long)]
    experience: Option<u32>,
}

#[derive(Args, Debug)]
struct FilterArgs {
    #[arg(long)]
    country: Option<String>,
    #[arg(long)]
    placement: Option<String>,
    #[arg(long)]
    position: Option<String>,
}

#[derive(Args, Debug)]
struct ScopeArgs {
    #[arg(long)]
    country: String,
    #[arg(long)]
    placement: String,
    #[arg(long)]
    position: String,
}

impl CandidateArgs {
    fn into_parts(self) -> (CandidateRecord, AttributeProfile) {
        (
            CandidateRecord {
                full_name: self.name,
                gender: self.gender,
                birth_date: self.birth_date,
                address: self.address,
                phone: self.phone,
                email: self.email.filter(|e| !e.is_empty()),
                agency_name: self.agency,
                destination_country: self.country,
                placement_unit: self.placement,
                position: self.position,
                intake_date: self.intake_date,
            },
            AttributeProfile {
                age_years: self.age,
                education_level: self.education,
                psych_result: self.psych,
                experience_years: self.experience,
            },
        )
    }
}

impl UpdateArgs {
    fn apply(self, record: &mut CandidateRecord, profile: &mut AttributeProfile) {
        fn set<T>(slot: &mut T, value: Option<T>) {
            if let Some(v) = value {
                *slot = v;
            }
        }
        set(&mut record.full_name, self.name);
        set(&mut record.gender, self.gender);
        set(&mut record.birth_date, self.birth_date);
        set(&mut record.address, self.address);
        set(&mut record.phone, self.phone);
        if let Some(e) = self.email {
            record.email = Some(e).filter(|e| !e.is_empty());
        }
        set(&mut record.agency_name, self.agency);
        set(&mut record.destination_country, self.country);
        set(&mut record.placement_unit, self.placement);
        set(&mut record.position, self.position);
        set(&mut record.intake_date, self.intake_date);
        if self.derive_age {
            profile.age_years = None;
        } else if self.age.is_some() {
            profile.age_years = self.age;
        }
        set(&mut profile.education_level, self.education);
        set(&mut profile.psych_result, self.psych);
        set(&mut profile.experience_years, self.experience);
    }
}

fn criteria(cli: &Cli) -> Result<Vec<CriterionSpec>> {
    match &cli.criteria {
        Some(path) => Ok(load_criteria(path)?),
        None => Ok(default_criteria()),
    }
}

fn pick_batch(reg: &Registry, id: Option<u64>) -> Result<SelectionBatch> {
    let id = match id {
        Some(id) => id,
        None => *reg
            .batch_ids()?
            .last()
            .ok_or(Error::NotFound { what: "batch (none stored)", id: 0 })?,
    };
    Ok(reg.load_batch(id)?)
}

fn print(bytes: &[u8]) -> Result<()> {
    let mut out = std::io::stdout().lock();
    out.write_all(bytes)?;
    out.flush()?;
    Ok(())
}

fn run(cli: Cli) -> Result<()> {
    let data_dir = resolve_data_dir(cli.data_dir.as_deref());
    let open = || Registry::open(&data_dir).with_context(|| format!("opening data directory {}", data_dir.display()));

    match cli.command {
        Command::Add(args) => {
            let mut reg = open()?;
            let (record, profile) = args.into_parts();
            let id = reg.add(record, profile)?;
            println!("id: {id}");
        }
        Command::Update { id, fields } => {
            let mut reg = open()?;
            let current = reg.get(id)?.clone();
            let (mut record, mut profile) = (current.record, current.profile);
            fields.apply(&mut record, &mut profile);
            reg.update(id, record, profile)?;
            println!("updated: {id}");
        }
        Command::Delete { id } => {
            let mut reg = open()?;
            reg.delete(id)?;
            println!("deleted: {id}");
        }
        Command::List { scope } => {
            let reg = open()?;
            let filter = ScopeFilter {
                destination_country: scope.country,
                placement_unit: scope.placement,
                position: scope.position,
            };
            print(&output::candidates(&reg.list(&filter), cli.format)?)?;
        }
        Command::Rank { ref scope } => {
            let criteria = criteria(&cli)?;
            let reg = open()?;
            let scope = Scope {
                destination_country: scope.country.clone(),
                placement_unit: scope.placement.clone(),
                position: scope.position.clone(),
            };
            let batch = reg.execute_batch(&reg.create_batch(&scope, &criteria)?)?;
            let report = SelectionReport::from_batch(&batch)?;
            for w in &report.warnings {
                eprintln!("warning: {w}");
            }
            eprintln!("batch: {}", batch.id);
            print(&report.render(cli.format)?)?;
        }
        Command::Explain { id, batch } => {
            let reg = open()?;
            let batch = pick_batch(&reg, batch)?;
            print(explain(&batch, id)?.as_bytes())?;
        }
        Command::Report { batch } => {
            let reg = open()?;
            let batch = pick_batch(&reg, batch)?;
            print(&placement_core::render_report(&batch, cli.format)?)?;
        }
        Command::Serve { port, bind, ref cors_origin } => {
            let criteria = criteria(&cli).map_err(|e| format!("{e:#}"));
            if let Err(e) = &criteria {
                eprintln!("warning: {e}; /criteria and /selections will report a configuration error");
            }
            let state = placement_service::AppState::new(open()?, criteria);
            let addr = SocketAddr::new(bind, port);
            eprintln!("listening on http://{addr}");
            tokio::runtime::Runtime::new()?
                .block_on(placement_service::serve(addr, state, cors_origin.as_deref()))
                .with_context(|| format!("serving on {addr}"))?;
        }
    }
    Ok(())
}

fn exit_code(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<Error>() {
        Some(Error::DuplicateCandidate { .. }) => 2,
        Some(Error::NotFound { .. }) => 3,
        Some(Error::EmptyBatch) => 4,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
