use std::fs::File;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use windcost_core::ingest::ColumnMapping;
use windcost_core::regression::BasisFunction;
use windcost_core::CostModel64;

use windcost_cli::commands::{self, OutputFormat};
use windcost_cli::{CliError, EXIT_OK, EXIT_USAGE};

#[derive(Debug, Parser)]
#[command(
    name = "windcost",
    version,
    about = "Evaluate a published wind turbine cost model, audit where it is plausible, and rebuild its model selection"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Specific and total cost of one turbine
    Eval {
        /// Hub height in meters
        #[arg(allow_negative_numbers = true)]
        hh_m: f64,
        /// Rated power in watts
        #[arg(allow_negative_numbers = true)]
        p_watts: f64,
        /// Rotor diameter in meters
        #[arg(allow_negative_numbers = true)]
        d_m: f64,
        /// Market age in years before the reference year
        #[arg(allow_negative_numbers = true)]
        age_yr: f64,
    },
    /// Total cost over a rated-power grid, each point labeled by regime
    Sweep {
        #[arg(allow_negative_numbers = true)]
        hh_m: f64,
        #[arg(allow_negative_numbers = true)]
        d_m: f64,
        #[arg(allow_negative_numbers = true)]
        age_yr: f64,
        #[arg(allow_negative_numbers = true)]
        p_min_watts: f64,
        #[arg(allow_negative_numbers = true)]
        p_max_watts: f64,
        steps: usize,
        #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
        format: OutputFormat,
        /// Write here instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Classify every distinct turbine type in a fleet CSV
    Audit {
        csv_path: PathBuf,
        /// Year market ages are counted back from
        #[arg(long, default_value_t = 2016)]
        ref_year: i32,
        #[arg(long, default_value = "t_model")]
        col_model: String,
        #[arg(long, default_value = "t_manu")]
        col_manufacturer: String,
        #[arg(long, default_value = "t_hh")]
        col_hh: String,
        #[arg(long, default_value = "t_rd")]
        col_rd: String,
        #[arg(long, default_value = "t_cap")]
        col_cap: String,
        #[arg(long, default_value = "p_year")]
        col_year: String,
        /// Write the JSON report here instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write the normalized fleet (label,hh_m,rotor_d_m,power_w,age_yr)
        #[arg(long)]
        normalized_out: Option<PathBuf>,
    },
    /// Fit every basis assignment to a numeric table, rank by training RMSE
    Fit {
        csv_path: PathBuf,
        /// Response column name
        #[arg(long)]
        response: String,
        /// Predictor column names, comma separated
        #[arg(long, value_delimiter = ',', required = true)]
        predictors: Vec<String>,
        /// Allowed basis functions
        #[arg(long, value_delimiter = ',', default_values_t = BasisFunction::ALL)]
        bases: Vec<BasisFunction>,
        /// Write the JSON ranking here instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check the built-in published cost rows against the model at their
    /// vintage ages and at age zero
    #[command(name = "reproduce-table3")]
    ReproduceTable3 {
        /// Also write the JSON report here
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn create_file(path: &Path) -> Result<File, CliError> {
    File::create(path).map_err(|err| CliError::Io(format!("{}: {err}", path.display())))
}

fn open_file(path: &Path) -> Result<File, CliError> {
    File::open(path).map_err(|err| CliError::Io(format!("{}: {err}", path.display())))
}

fn run(cli: Cli) -> Result<(), CliError> {
    let model = CostModel64::published();
    let stdout = std::io::stdout();
    match cli.command {
        Command::Eval {
            hh_m,
            p_watts,
            d_m,
            age_yr,
        } => {
            commands::eval(&mut stdout.lock(), &model, hh_m, p_watts, d_m, age_yr)?;
        }
        Command::Sweep {
            hh_m,
            d_m,
            age_yr,
            p_min_watts,
            p_max_watts,
            steps,
            format,
            out,
        } => {
            let mut writer: Box<dyn Write> = match &out {
                Some(path) => Box::new(create_file(path)?),
                None => Box::new(stdout.lock()),
            };
            commands::sweep(
                &mut writer,
                &model,
                hh_m,
                d_m,
                age_yr,
                p_min_watts,
                p_max_watts,
                steps,
                format,
            )?;
        }
        Command::Audit {
            csv_path,
            ref_year,
            col_model,
            col_manufacturer,
            col_hh,
            col_rd,
            col_cap,
            col_year,
            out,
            normalized_out,
        } => {
            let columns = ColumnMapping {
                model: col_model,
                manufacturer: col_manufacturer,
                hub_height: col_hh,
                rotor_diameter: col_rd,
                capacity_kw: col_cap,
                install_year: col_year,
            };
            let reader = open_file(&csv_path)?;
            let mut normalized_file = match &normalized_out {
                Some(path) => Some(create_file(path)?),
                None => None,
            };
            let mut writer: Box<dyn Write> = match &out {
                Some(path) => Box::new(create_file(path)?),
                None => Box::new(stdout.lock()),
            };
            let report = commands::audit(
                &mut writer,
                &model,
                reader,
                &columns,
                ref_year,
                env!("CARGO_PKG_VERSION"),
                normalized_file.as_mut().map(|f| f as &mut dyn Write),
            )?;
            eprintln!("{}", report.summary_line());
        }
        Command::Fit {
            csv_path,
            response,
            predictors,
            bases,
            out,
        } => {
            let reader = open_file(&csv_path)?;
            let mut writer: Box<dyn Write> = match &out {
                Some(path) => Box::new(create_file(path)?),
                None => Box::new(stdout.lock()),
            };
            let report = commands::fit(&mut writer, reader, &response, &predictors, &bases)?;
            eprintln!(
                "ranked {} candidates ({} skipped) over {} rows",
                report.selection.fits.len(),
                report.selection.skipped.len(),
                report.rows_read - report.rows_skipped
            );
        }
        Command::ReproduceTable3 { out } => {
            let mut json_file = match &out {
                Some(path) => Some(create_file(path)?),
                None => None,
            };
            commands::reproduce_table3(
                &mut stdout.lock(),
                &model,
                json_file.as_mut().map(|f| f as &mut dyn Write),
            )?;
        }
    }
    Ok(())
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
            let _ = err.print();
            process::exit(code);
        }
    };
    if let Err(err) = run(cli) {
        eprintln!("error: {err}");
        process::exit(err.exit_code());
    }
}
