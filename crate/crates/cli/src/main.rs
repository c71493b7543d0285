use std::fs;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use eves_core::configuration::Configuration;
use eves_core::format::{config_to_json, parse_config, parse_matrix};
use eves_core::invariant::{apply_morphism, eves_invariant, LinearMorphism};
use eves_core::linalg::{parse_rational, Rational};
use eves_core::oracle::{bounded_lambda_search, brute_invariant, SearchBound};
use eves_core::reconstruct::{
    check_corollary, compare, reconstruction_vector, restrict_pair, unit_weight_expansion,
};
use eves_core::wps::{
    images_equivalent, nonreconstructible_witness, product_map, wps_equivalent, Weight,
    WeightedPoint,
};
use eves_core::Error;

const OK: u8 = 0;
const NEGATIVE: u8 = 1;
const INPUT_ERROR: u8 = 2;
const FULLY_DISTINGUISHABLE: u8 = 3;
const ORACLE_MISMATCH: u8 = 4;

/// Exact weighted Eves invariants of colored point configurations.
#[derive(Parser)]
#[command(name = "eves", version)]
struct Cli {
    /// Rerun through the brute-force oracle and exit 4 on any mismatch.
    #[arg(long, global = true)]
    oracle: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the degree report; exit 1 unless it is an h-configuration.
    Validate {
        file: String,
        /// Take degree quotients against this weight instead, e.g. 1,1.
        #[arg(long)]
        weight: Option<String>,
    },
    /// Print E_p.
    Invariant { file: String },
    /// Print the pairwise E_(1,1) values and check them against E_p.
    Reconstruct { file: String },
    /// Compare two configurations by E_p and by their pairwise invariants.
    Compare { a: String, b: String },
    /// Apply a matrix and print the image configuration as JSON.
    Transform {
        file: String,
        #[arg(long)]
        matrix: String,
    },
    /// Decide weighted equivalence of two points.
    WpsEquiv {
        #[arg(long, allow_hyphen_values = true)]
        weight: String,
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
    },
    /// Print two inequivalent points with equal pairwise projections.
    Witness {
        #[arg(long)]
        weight: String,
    },
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Self {
            code: INPUT_ERROR,
            message: e.to_string(),
        }
    }
}

type Run = Result<(String, u8), Failure>;

fn mismatch(what: &str) -> Failure {
    Failure {
        code: ORACLE_MISMATCH,
        message: format!("oracle mismatch: {what}"),
    }
}

fn load(path: &str) -> Result<Configuration, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure {
        code: INPUT_ERROR,
        message: format!("{path}: {e}"),
    })?;
    Ok(parse_config(&text, path)?)
}

fn parse_weight(s: &str) -> Result<Weight, Failure> {
    let parts = s
        .split(',')
        .map(|p| {
            p.trim().parse::<u32>().map_err(|_| Failure {
                code: INPUT_ERROR,
                message: format!("--weight: invalid part '{p}'"),
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    Weight::real(&parts).map_err(|e| Failure {
        code: INPUT_ERROR,
        message: format!("--weight: {e}"),
    })
}

fn parse_point(flag: &str, s: &str, weight: &Weight) -> Result<WeightedPoint, Failure> {
    let coords = s
        .split(',')
        .enumerate()
        .map(|(k, c)| {
            parse_rational(c.trim()).map_err(|e| Failure {
                code: INPUT_ERROR,
                message: format!("{flag}[{k}]: {e}"),
            })
        })
        .collect::<Result<Vec<Rational>, _>>()?;
    WeightedPoint::new(coords, weight.clone()).map_err(|e| Failure {
        code: INPUT_ERROR,
        message: format!("{flag}: {e}"),
    })
}

fn same_class(a: &WeightedPoint, b: &WeightedPoint) -> Result<bool, Failure> {
    Ok(wps_equivalent(a, b)?)
}

fn validate(file: &str, weight: Option<&str>, oracle: bool) -> Run {
    let cfg = load(file)?;
    let report = match weight {
        Some(w) => cfg.validate_h_under(&parse_weight(w)?)?,
        None => cfg.validate_h(),
    };
    if oracle && report.h_valid && weight.is_none() {
        let main = eves_invariant(&cfg)?;
        let brute = brute_invariant(&cfg)?;
        if !same_class(main.point(), brute.point())? {
            return Err(mismatch("E_p"));
        }
    }
    let code = if report.h_valid { OK } else { NEGATIVE };
    Ok((report.to_string(), code))
}

fn invariant(file: &str, oracle: bool) -> Run {
    let cfg = load(file)?;
    let e = eves_invariant(&cfg)?;
    if oracle && !same_class(e.point(), brute_invariant(&cfg)?.point())? {
        return Err(mismatch("E_p"));
    }
    Ok((format!("E_p = {e}\n"), OK))
}

fn reconstruct(file: &str, oracle: bool) -> Run {
    let cfg = load(file)?;
    let rv = reconstruction_vector(&cfg)?;
    let verdict = check_corollary(&cfg)?;
    if oracle {
        for ((i, j), v) in &rv.entries {
            let expanded = unit_weight_expansion(&restrict_pair(&cfg, *i, *j)?)?;
            if !same_class(v, brute_invariant(&expanded)?.point())? {
                return Err(mismatch(&format!("h_{i}{j}")));
            }
        }
    }
    let e = eves_invariant(&cfg)?;
    let text = format!("{rv}E_p: {e}\ncorollary: {verdict}\n");
    Ok((text, if verdict { OK } else { NEGATIVE }))
}

fn compare_files(a: &str, b: &str, oracle: bool) -> Run {
    let (ca, cb) = (load(a)?, load(b)?);
    let report = compare(&ca, &cb)?;
    if oracle {
        let (ba, bb) = (brute_invariant(&ca)?, brute_invariant(&cb)?);
        if same_class(ba.point(), bb.point())? != report.ep_equivalent {
            return Err(mismatch("ep_equivalent"));
        }
    }
    let code = match (report.ep_equivalent, report.reconstruction_equal) {
        (true, _) => OK,
        (false, true) => NEGATIVE,
        (false, false) => FULLY_DISTINGUISHABLE,
    };
    Ok((report.to_string(), code))
}

fn transform(file: &str, matrix: &str, oracle: bool) -> Run {
    let cfg = load(file)?;
    let text = fs::read_to_string(matrix).map_err(|e| Failure {
        code: INPUT_ERROR,
        message: format!("{matrix}: {e}"),
    })?;
    let m = LinearMorphism::new(parse_matrix(&text, matrix)?)?;
    let image = apply_morphism(&cfg, &m)?;
    if oracle {
        let before = brute_invariant(&cfg)?;
        let after = brute_invariant(&image)?;
        if !same_class(before.point(), after.point())? {
            return Err(mismatch("E_p of the image"));
        }
    }
    Ok((config_to_json(&image), OK))
}

fn wps_equiv(weight: &str, a: &str, b: &str, oracle: bool) -> Run {
    let w = parse_weight(weight)?;
    let (za, zb) = (parse_point("--a", a, &w)?, parse_point("--b", b, &w)?);
    let verdict = same_class(&za, &zb)?;
    if oracle {
        let bound = SearchBound::default().lambda_height;
        let found = bounded_lambda_search(&za, &zb, bound)?;
        // A witness above the search bound is not a mismatch.
        if found && !verdict {
            return Err(mismatch("the search found a witness"));
        }
        if verdict && !found {
            eprintln!("oracle: no witness of height <= {bound}");
        }
    }
    Ok((format!("{verdict}\n"), if verdict { OK } else { NEGATIVE }))
}

fn witness(weight: &str, oracle: bool) -> Run {
    let w = parse_weight(weight)?;
    let (z, v) = nonreconstructible_witness(&w)?;
    if oracle {
        let same = images_equivalent(&product_map(&z)?, &product_map(&v)?)?;
        let related = bounded_lambda_search(&z, &v, SearchBound::default().lambda_height)?;
        if !same || related {
            return Err(mismatch("witness pair"));
        }
    }
    Ok((format!("z = {z}\nw = {v}\n"), OK))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let o = cli.oracle;
    let result = match &cli.command {
        Command::Validate { file, weight } => validate(file, weight.as_deref(), o),
        Command::Invariant { file } => invariant(file, o),
        Command::Reconstruct { file } => reconstruct(file, o),
        Command::Compare { a, b } => compare_files(a, b, o),
        Command::Transform { file, matrix } => transform(file, matrix, o),
        Command::WpsEquiv { weight, a, b } => wps_equiv(weight, a, b, o),
        Command::Witness { weight } => witness(weight, o),
    };
    match result {
        Ok((text, code)) => {
            print!("{text}");
            ExitCode::from(code)
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
