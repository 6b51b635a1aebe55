//! Command-line front end: file ingestion, one subcommand per analysis,
//! batch verification suites, and deterministic text reports.
//!
//! Exit codes: 0 success, 1 verification failure, 2 input error,
//! 3 resource limit.

use std::fmt::Display;
use std::io::Read;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use simplexkit::charsum::{b1_chi, characters, stickelberger_rank, u_perp_basis_check};
use simplexkit::quotsing::{classify_singularity, SingularityType};
use simplexkit::{
    cayley, verify, CayleyError, CharsumError, LatticeSimplex, QuotsingError, Segment,
    SimplexError, DEFAULT_ENUM_BUDGET,
};

/// Seed used by the randomized sweeps unless overridden.
const DEFAULT_SEED: u64 = 2024;

#[derive(Parser)]
#[command(name = "simplexkit", version, about = "Exact lattice-simplex analysis")]
struct Cli {
    /// Emit only machine-readable `key: value` lines.
    #[arg(long, global = true)]
    machine: bool,
    /// Candidate-point cap for exhaustive enumerations; overrides the
    /// SIMPLEXKIT_BUDGET environment variable.
    #[arg(long, global = true)]
    budget: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// h*-polynomial and group structure of a simplex file ("-" for stdin).
    Hstar { file: String },
    /// Evaluate the three equivalent lattice-freeness conditions.
    ClassifySimplex { file: String },
    /// Decompose into a Cayley polytope of lattice segments.
    Decompose { file: String },
    /// Print the canonical family simplex Delta(a_1, ..., a_{d-1}, n).
    DeltaFamily {
        /// Comma-separated parameters a_1, ..., a_{d-1}; omit for d = 1.
        /// Use the `-a=-1,3` form when the first value is negative.
        #[arg(short, long, value_delimiter = ',', num_args = 0.., allow_negative_numbers = true)]
        a: Vec<i64>,
        #[arg(short, long)]
        n: i64,
    },
    /// Print the 5-dimensional Cayley simplex with group Z/p x Z/q.
    Counterexample {
        #[arg(short)]
        p: i64,
        #[arg(short)]
        q: i64,
    },
    /// Rank of the span of the Stickelberger elements mod n.
    StickelbergerRank {
        #[arg(short)]
        n: u64,
    },
    /// Exhaustive zero-sum pairing check over d-tuples of units mod n.
    VerifyBernoulli {
        #[arg(short)]
        n: u64,
        #[arg(short)]
        d: usize,
    },
    /// Characters mod n with conductor, parity, and exact B_{1,chi}.
    B1chi {
        #[arg(short)]
        n: u64,
    },
    /// Minimal log-discrepancy of a type given as "n a1 a2 ... ad".
    Mld { line: String },
    /// Classify singularity types from a line or a file of lines.
    ClassifySing { input: String },
    /// Exhaustive discrepancy classification check mod n in dimension 2d.
    VerifyThm18 {
        #[arg(short)]
        n: u64,
        #[arg(short)]
        d: usize,
    },
    /// Apply a seeded random unimodular map and vertex shuffle.
    Scramble {
        file: String,
        #[arg(long)]
        seed: u64,
    },
    /// Run a named verification suite.
    BatchVerify {
        suite: Suite,
        /// Seed for randomized sweeps.
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Random draws for the prop24 suite.
        #[arg(long, default_value_t = 500)]
        count: u64,
        /// Box bound for the white3d suite.
        #[arg(long, default_value_t = 3)]
        box_bound: i64,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Suite {
    White3d,
    Prop24,
    Prop15,
    Thm31,
    Thm18,
}

enum CliError {
    Input(String),
    Verification(String),
    Resource(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Verification(_) => 1,
            CliError::Input(_) => 2,
            CliError::Resource(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Input(m) | CliError::Verification(m) | CliError::Resource(m) => m,
        }
    }
}

impl From<SimplexError> for CliError {
    fn from(e: SimplexError) -> Self {
        match e {
            SimplexError::ResourceLimit { .. } => CliError::Resource(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

impl From<CayleyError> for CliError {
    fn from(e: CayleyError) -> Self {
        match e {
            CayleyError::FacetNotBasic { .. }
            | CayleyError::NotLatticeFree
            | CayleyError::NonCyclicGroup { .. }
            | CayleyError::PairingNotFound => CliError::Verification(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

impl From<CharsumError> for CliError {
    fn from(e: CharsumError) -> Self {
        match e {
            CharsumError::ResourceLimit { .. } => CliError::Resource(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

impl From<QuotsingError> for CliError {
    fn from(e: QuotsingError) -> Self {
        match e {
            QuotsingError::ResourceLimit { .. } => CliError::Resource(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

/// Flat deterministic key/value report.
struct Report {
    header: String,
    pairs: Vec<(String, String)>,
}

impl Report {
    fn new(command: &str) -> Report {
        Report {
            header: format!("simplexkit {command}"),
            pairs: Vec::new(),
        }
    }

    fn push(&mut self, key: &str, value: impl Display) {
        self.pairs.push((key.to_string(), value.to_string()));
    }

    fn print(&self, machine: bool) {
        if !machine {
            println!("# {}", self.header);
        }
        for (k, v) in &self.pairs {
            println!("{k}: {v}");
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let budget = cli
        .budget
        .or_else(|| {
            std::env::var("SIMPLEXKIT_BUDGET")
                .ok()
                .and_then(|v| v.parse().ok())
        })
        .unwrap_or(DEFAULT_ENUM_BUDGET);
    match run(cli.command, cli.machine, budget) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.code())
        }
    }
}

fn read_input(path: &str) -> Result<String, CliError> {
    if path == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| CliError::Input(format!("cannot read stdin: {e}")))?;
        Ok(buf)
    } else {
        std::fs::read_to_string(path)
            .map_err(|e| CliError::Input(format!("cannot read {path}: {e}")))
    }
}

fn load(path: &str) -> Result<LatticeSimplex, CliError> {
    Ok(LatticeSimplex::parse(&read_input(path)?)?)
}

fn join<T: Display>(items: impl IntoIterator<Item = T>) -> String {
    let parts: Vec<String> = items.into_iter().map(|x| x.to_string()).collect();
    if parts.is_empty() {
        "-".to_string()
    } else {
        parts.join(" ")
    }
}

fn run(command: Command, machine: bool, budget: u64) -> Result<(), CliError> {
    match command {
        Command::Hstar { file } => {
            let s = load(&file)?;
            let h = s.h_star()?;
            let g = s.group_structure()?;
            let mut r = Report::new("hstar");
            r.push("dimension", s.dim());
            r.push("vertices", s.vertex_count());
            r.push("group", &g);
            r.push("group_order", &g.order);
            r.push("h_star", &h);
            r.push("coefficients", join(h.coefficients().iter()));
            r.print(machine);
            Ok(())
        }
        Command::ClassifySimplex { file } => {
            let s = load(&file)?;
            let rep = s.check_prop24(budget)?;
            let mut r = Report::new("classify-simplex");
            r.push("dimension", s.dim());
            r.push("d", s.dim().div_ceil(2));
            r.push("cond1_points_in_vertex_lattice", rep.cond1);
            r.push("cond2_interiors_empty_facets_basic", rep.cond2);
            r.push("cond3_h_star_form", rep.cond3);
            r.push("consistent", rep.consistent);
            r.push("h_star", &rep.h_star);
            if let Some(n) = &rep.family_n {
                r.push("family_n", n);
            }
            r.print(machine);
            if rep.consistent {
                Ok(())
            } else {
                Err(CliError::Verification(
                    "equivalence conditions disagree".into(),
                ))
            }
        }
        Command::Decompose { file } => {
            let s = load(&file)?;
            let mut r = Report::new("decompose");
            r.push("dimension", s.dim());
            match cayley::cayley_decompose(&s) {
                Err(e @ (CayleyError::FacetNotBasic { .. } | CayleyError::NotLatticeFree)) => {
                    r.push("decomposable", false);
                    r.push("reason", &e);
                    r.print(machine);
                    Err(e.into())
                }
                Err(e) => Err(e.into()),
                Ok(dec) => {
                    let verified = cayley::verify_decomposition(&s, &dec);
                    r.push("decomposable", true);
                    r.push("n", &dec.n);
                    r.push("params", join(dec.params.iter()));
                    if let Some(w) = &dec.weights {
                        r.push("weights", join(w.weights.iter()));
                    }
                    for (i, seg) in dec.segment_images.iter().enumerate() {
                        r.push(
                            &format!("segment_{i}"),
                            format!("({}) -> ({})", join(seg.start.iter()), join(seg.end.iter())),
                        );
                    }
                    let lin = dec.map.linear();
                    for i in 0..lin.rows() {
                        r.push(&format!("map_row_{i}"), join(lin.row(i).iter()));
                    }
                    r.push("translation", join(dec.map.translation().iter()));
                    r.push("verified", verified);
                    r.print(machine);
                    if verified {
                        Ok(())
                    } else {
                        Err(CliError::Verification(
                            "decomposition failed verification".into(),
                        ))
                    }
                }
            }
        }
        Command::DeltaFamily { a, n } => {
            let s = cayley::delta_family_i64(&a, n)?;
            print!("{}", s.serialize());
            Ok(())
        }
        Command::Counterexample { p, q } => {
            let s = cayley::cayley_build(&[
                Segment::from_i64(&[0, 0, 0], &[1, 0, 0]),
                Segment::from_i64(&[0, 0, 0], &[1, p, 0]),
                Segment::from_i64(&[0, 0, 0], &[1, 0, q]),
            ])
            .map_err(|e| CliError::Input(e.to_string()))?;
            print!("{}", s.serialize());
            Ok(())
        }
        Command::StickelbergerRank { n } => {
            if n < 3 {
                return Err(CliError::Input(format!("n must be at least 3, got {n}")));
            }
            let phi = simplexkit::charsum::units_of(n).len();
            let rank = stickelberger_rank(n);
            let basis_ok = u_perp_basis_check(n);
            let mut r = Report::new("stickelberger-rank");
            r.push("n", n);
            r.push("phi", phi);
            r.push("rank", rank);
            r.push("expected", phi / 2);
            r.push("u_perp_basis", basis_ok);
            r.print(machine);
            if 2 * rank == phi && basis_ok {
                Ok(())
            } else {
                Err(CliError::Verification(format!(
                    "rank {rank} differs from phi({n})/2 = {}",
                    phi / 2
                )))
            }
        }
        Command::VerifyBernoulli { n, d } => {
            let rep = simplexkit::charsum::verify_prop15(n, d, budget)?;
            let mut r = Report::new("verify-bernoulli");
            r.push("n", rep.n);
            r.push("d", rep.d);
            r.push("multisets", rep.multisets);
            r.push("hypothesis_satisfying", rep.hypothesis_satisfying);
            r.push("paired", rep.paired);
            r.push("violations", rep.violations.len());
            for (i, v) in rep.violations.iter().enumerate() {
                r.push(&format!("violation_{i}"), v);
            }
            r.print(machine);
            if rep.violations.is_empty() {
                Ok(())
            } else {
                Err(CliError::Verification(format!(
                    "{} violations",
                    rep.violations.len()
                )))
            }
        }
        Command::B1chi { n } => {
            let chars = characters(n);
            let mut r = Report::new("b1chi");
            r.push("n", n);
            r.push("characters", chars.len());
            r.push("odd", chars.iter().filter(|c| c.is_odd()).count());
            let mut vanished = 0;
            for (i, chi) in chars.iter().enumerate() {
                let v = b1_chi(chi);
                let parity = if chi.is_odd() { "odd" } else { "even" };
                if chi.is_odd() && v.is_zero() {
                    vanished += 1;
                }
                r.push(
                    &format!("char_{i}"),
                    format!(
                        "exponents=({}) order={} conductor={} parity={} b1chi={}",
                        join(chi.exponents().iter()),
                        chi.order(),
                        chi.conductor(),
                        parity,
                        v
                    ),
                );
            }
            r.push("odd_with_vanishing_b1chi", vanished);
            r.print(machine);
            if vanished == 0 {
                Ok(())
            } else {
                Err(CliError::Verification(format!(
                    "{vanished} odd characters have vanishing B1"
                )))
            }
        }
        Command::Mld { line } => {
            let s = SingularityType::parse(&line)?;
            let mld = s.mld()?;
            let mut r = Report::new("mld");
            r.push("n", s.n());
            r.push("weights", join(s.weights().iter()));
            r.push("dimension", s.dimension());
            r.push("isolated", s.is_isolated());
            r.push("gorenstein", s.is_gorenstein());
            r.push("mld", mld);
            r.print(machine);
            Ok(())
        }
        Command::ClassifySing { input } => {
            let lines: Vec<String> = match SingularityType::parse(&input) {
                Ok(_) => vec![input],
                Err(_) => read_input(&input)?
                    .lines()
                    .map(str::trim)
                    .filter(|l| !l.is_empty() && !l.starts_with('#'))
                    .map(String::from)
                    .collect(),
            };
            if lines.is_empty() {
                return Err(CliError::Input("no singularity lines found".into()));
            }
            let mut r = Report::new("classify-sing");
            let mut inconsistent = 0;
            for (i, line) in lines.iter().enumerate() {
                let s = SingularityType::parse(line)?;
                let v = classify_singularity(&s)?;
                if !v.satisfies_thm18 {
                    inconsistent += 1;
                }
                let pairing = match &v.pairing {
                    None => "(none)".to_string(),
                    Some(cert) => cert
                        .pairs
                        .iter()
                        .map(|(a, b)| format!("({a},{b})"))
                        .collect::<Vec<_>>()
                        .join(" "),
                };
                r.push(
                    &format!("type_{i}"),
                    format!(
                        "n={} weights=({}) mld={} gorenstein={} paired={} pairs={} consistent={}",
                        s.n(),
                        join(s.weights().iter()),
                        v.mld,
                        v.gorenstein,
                        v.pairing.is_some(),
                        pairing,
                        v.satisfies_thm18
                    ),
                );
            }
            r.push("types", lines.len());
            r.push("inconsistent", inconsistent);
            r.print(machine);
            if inconsistent == 0 {
                Ok(())
            } else {
                Err(CliError::Verification(format!(
                    "{inconsistent} types violate the discrepancy classification"
                )))
            }
        }
        Command::VerifyThm18 { n, d } => {
            let rep = simplexkit::quotsing::verify_thm18(n, d, budget)?;
            let mut r = Report::new("verify-thm18");
            r.push("n", rep.n);
            r.push("dimension", rep.dimension);
            r.push("isolated_types", rep.isolated_types);
            r.push("gorenstein_types", rep.gorenstein_types);
            r.push("paired_types", rep.paired_types);
            r.push("mld_at_least_d", rep.mld_at_least_d);
            r.push("violations", rep.violations.len());
            for (i, v) in rep.violations.iter().enumerate() {
                r.push(&format!("violation_{i}"), v);
            }
            r.print(machine);
            if rep.violations.is_empty() {
                Ok(())
            } else {
                Err(CliError::Verification(format!(
                    "{} violations",
                    rep.violations.len()
                )))
            }
        }
        Command::Scramble { file, seed } => {
            let s = load(&file)?;
            let (scrambled, _) = cayley::scramble(&s, seed);
            print!("# seed: {seed}\n{}", scrambled.serialize());
            Ok(())
        }
        Command::BatchVerify {
            suite,
            seed,
            count,
            box_bound,
        } => run_suite(suite, seed, count, box_bound, machine, budget),
    }
}

fn run_suite(
    suite: Suite,
    seed: u64,
    count: u64,
    box_bound: i64,
    machine: bool,
    budget: u64,
) -> Result<(), CliError> {
    let mut r = Report::new("batch-verify");
    let violations: Vec<String> = match suite {
        Suite::White3d => {
            let rep = verify::white3d(box_bound, budget)?;
            r.push("suite", "white3d");
            r.push("box_bound", rep.box_bound);
            r.push("tetrahedra", rep.tetrahedra);
            r.push("classes", rep.classes);
            r.push("empty_classes", rep.empty_classes);
            rep.violations
        }
        Suite::Prop24 => {
            let rep = verify::prop24_sweep(count, seed, 7, budget)?;
            r.push("suite", "prop24");
            r.push("seed", rep.seed);
            r.push("random_checked", rep.random_checked);
            r.push("family_checked", rep.family_checked);
            rep.violations
        }
        Suite::Prop15 => {
            let rep = verify::prop15_sweep(3, 20, &[2, 3, 4], budget)?;
            r.push("suite", "prop15");
            r.push("checked_pairs", rep.checked_pairs);
            r.push("multisets", rep.multisets);
            r.push("hypothesis_satisfying", rep.hypothesis_satisfying);
            rep.violations
        }
        Suite::Thm31 => {
            let rep = verify::thm31_sweep(3, 60);
            r.push("suite", "thm31");
            r.push("checked", rep.checked);
            rep.violations
        }
        Suite::Thm18 => {
            let rep = verify::thm18_sweep(2, 15, &[2, 3], budget)?;
            r.push("suite", "thm18");
            r.push("checked_pairs", rep.checked_pairs);
            r.push("isolated_types", rep.isolated_types);
            r.push("gorenstein_types", rep.gorenstein_types);
            rep.violations
        }
    };
    r.push("violations", violations.len());
    for (i, v) in violations.iter().enumerate() {
        r.push(&format!("violation_{i}"), v);
    }
    r.print(machine);
    if violations.is_empty() {
        Ok(())
    } else {
        Err(CliError::Verification(format!(
            "{} violations",
            violations.len()
        )))
    }
}
