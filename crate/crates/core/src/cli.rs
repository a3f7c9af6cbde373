//! The `zequiv` command line: argument parsing, report assembly and exit
//! codes. The binary is a thin wrapper around [`main_with_args`].
//!
//! Exit codes: `0` success, `1` a negative verdict (invalid certificate,
//! different spectra, non-commuting diagram), `2` bad input or another
//! error, `3` a budget ran out.

use crate::catalog;
use crate::cohomology::{compatible_diagram_check, shapiro_check, GModule, ModuleFile};
use crate::error::{Error, Result};
use crate::family::{
    build_family, hall_product, surjections_mod_aut, DEFAULT_ENUMERATION_BUDGET, DEFAULT_FAMILY_BUDGET,
};
use crate::gassman::format::{parse_generators, ActionCertificateFile, AnyCertificateFile, CertificateFile, GroupRef};
use crate::gassman::{find_unimodular_certificate, EquivalenceCertificate, SearchConfig, SubgroupPair};
use crate::permgroup::{io, Permutation, DEFAULT_ELEMENT_BUDGET};
use crate::sunada::{check_isospectral, random_generating_multiset, SunadaOptions};
use clap::{Args, Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};
use std::ffi::OsString;
use std::path::{Path, PathBuf};

#[derive(Parser, Debug)]
#[command(name = "zequiv", version, about = "Integral equivalence of permutation modules, Sunada graphs and cohomology checks")]
pub struct Cli {
    #[command(flatten)]
    pub run: RunFlags,
    #[command(subcommand)]
    pub command: Command,
}

/// Flags shared by every subcommand.
#[derive(Args, Debug, Clone, Serialize)]
pub struct RunFlags {
    /// Largest group that will be enumerated.
    #[arg(long, global = true, env = "BUDGET_ELEMENTS", default_value_t = DEFAULT_ELEMENT_BUDGET)]
    pub budget_elements: usize,
    /// Coefficient bound of the exhaustive certificate search.
    #[arg(long, global = true, env = "BOX_BOUND", default_value_t = 3)]
    pub box_bound: i64,
    /// Random combinations tried after the exhaustive stage.
    #[arg(long, global = true, env = "SAMPLES", default_value_t = 1_000_000)]
    pub samples: u64,
    #[arg(long, global = true, env = "SEED", default_value_t = 0)]
    pub seed: u64,
    /// Worker threads; results do not depend on this.
    #[arg(long, global = true, env = "JOBS", default_value_t = 1)]
    #[serde(skip)]
    pub jobs: usize,
    /// Human-readable output instead of JSON.
    #[arg(long, global = true, env = "TEXT")]
    #[serde(skip)]
    pub text: bool,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Rational and integral equivalence of a subgroup pair.
    #[command(subcommand)]
    Gassman(GassmanCommand),
    /// Compare spectra of the two Schreier graphs.
    Sunada(SunadaArgs),
    /// Check the restriction/corestriction diagram through a free group.
    Cohomology(CohomologyArgs),
    /// Families of equivalent subgroups of a free group.
    #[command(subcommand)]
    Family(FamilyCommand),
}

#[derive(Subcommand, Debug)]
pub enum GassmanCommand {
    /// Characters, Q-equivalence and conjugacy.
    Verify(PairArgs),
    /// Search for a unimodular certificate, or re-check a certificate file.
    Certify(CertifyArgs),
}

#[derive(Subcommand, Debug)]
pub enum FamilyCommand {
    Generate(FamilyArgs),
}

/// A group and two subgroups: a catalog pair, or a group with generators.
#[derive(Args, Debug, Clone)]
pub struct PairArgs {
    /// Catalog pair: s3-conj, a4-conj, a5-conj, psl2-7, psl2-29.
    #[arg(long, conflicts_with_all = ["group", "builtin"])]
    pub pair: Option<String>,
    /// Group file: `degree n`, then one generator per line.
    #[arg(long, conflicts_with = "builtin")]
    pub group: Option<PathBuf>,
    /// Catalog group: s3, a4, s4, a5, psl2-7, psl2-29.
    #[arg(long)]
    pub builtin: Option<String>,
    /// Generator of the first subgroup in cycle notation; repeat as needed.
    #[arg(long = "sub1", value_name = "PERM")]
    pub sub1: Vec<String>,
    #[arg(long = "sub2", value_name = "PERM")]
    pub sub2: Vec<String>,
}

#[derive(Args, Debug)]
pub struct CertifyArgs {
    #[command(flatten)]
    pub pair: PairArgs,
    /// Where to write the certificate.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Only re-verify this certificate file.
    #[arg(long, value_name = "FILE")]
    pub verify_only: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct SunadaArgs {
    #[command(flatten)]
    pub pair: PairArgs,
    /// Element of the multiset S; repeat as needed. Defaults to the group generators.
    #[arg(long = "element", value_name = "PERM")]
    pub elements: Vec<String>,
    /// Test seeded random generating multisets of this size instead.
    #[arg(long, value_name = "K", conflicts_with = "elements")]
    pub random: Option<usize>,
    /// Number of random multisets.
    #[arg(long, default_value_t = 20)]
    pub attempts: usize,
    #[arg(long)]
    pub walk_length: Option<usize>,
    /// Use S together with the inverses of its elements.
    #[arg(long)]
    pub symmetric: bool,
}

#[derive(Args, Debug)]
pub struct CohomologyArgs {
    #[command(flatten)]
    pub pair: PairArgs,
    /// Image of a free generator; defaults to the group generators.
    #[arg(long = "image", value_name = "PERM")]
    pub images: Vec<String>,
    /// Certificate file; searched for when absent.
    #[arg(long)]
    pub certificate: Option<PathBuf>,
    /// Module file; overrides --coefficients.
    #[arg(long)]
    pub module: Option<PathBuf>,
    /// Trivial coefficients `Z` or `Z/n`.
    #[arg(long, default_value = "Z")]
    pub coefficients: String,
    #[arg(long, default_value_t = 1)]
    pub degree: usize,
    /// Also compare both sides of Shapiro's lemma for each subgroup.
    #[arg(long)]
    pub shapiro: bool,
}

#[derive(Args, Debug)]
pub struct FamilyArgs {
    /// Catalog group Q.
    #[arg(long)]
    pub target: String,
    /// Rank r of the free group.
    #[arg(long, default_value_t = 2)]
    pub rank: usize,
    /// Number m of factors of the Hall product.
    #[arg(long, default_value_t = 2)]
    pub tuples: usize,
    /// Catalog pair in Q; defaults to the conjugate pair of Q.
    #[arg(long)]
    pub pair: Option<String>,
    /// Directory for the manifest and certificate files.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, default_value_t = DEFAULT_ENUMERATION_BUDGET)]
    pub enumeration_budget: usize,
    /// Largest index of a pulled-back subgroup.
    #[arg(long, default_value_t = DEFAULT_FAMILY_BUDGET)]
    pub max_index: usize,
}

/// Everything printed for one run.
#[derive(Debug, Serialize)]
pub struct Report {
    pub subcommand: String,
    pub inputs: Value,
    pub flags: RunFlags,
    /// Seed of the random streams actually used.
    pub derived_seed: u64,
    pub result: Value,
    pub budget_exhausted: bool,
}

/// Result of a run: the report, the exit code and the text for stdout.
#[derive(Debug)]
pub struct Outcome {
    pub report: Report,
    pub exit_code: i32,
}

impl Outcome {
    pub fn render(&self, text: bool) -> String {
        if text {
            render_text(&self.report)
        } else {
            serde_json::to_string_pretty(&self.report).expect("reports serialize") + "\n"
        }
    }
}

fn render_text(report: &Report) -> String {
    let mut out = format!("{}\n", report.subcommand);
    if let Value::Object(map) = &report.result {
        for (k, v) in map {
            let shown = match v {
                Value::String(s) => s.clone(),
                other => other.to_string(),
            };
            out.push_str(&format!("  {k}: {shown}\n"));
        }
    }
    if report.budget_exhausted {
        out.push_str("  budget exhausted\n");
    }
    out
}

/// Seed for the random streams of one run, from the user seed, the
/// subcommand and the inputs.
pub fn derive_seed(seed: u64, subcommand: &str, inputs: &Value) -> u64 {
    let mut h = Sha256::new();
    h.update(seed.to_le_bytes());
    h.update(subcommand.as_bytes());
    h.update([0]);
    h.update(inputs.to_string().as_bytes());
    let digest = h.finalize();
    u64::from_le_bytes(digest[..8].try_into().expect("eight bytes"))
}

struct ResolvedPair {
    pair: SubgroupPair,
    group_ref: GroupRef,
    echo: Value,
}

fn resolve_pair(args: &PairArgs, budget: usize) -> Result<ResolvedPair> {
    if let Some(name) = &args.pair {
        return Ok(ResolvedPair {
            pair: catalog::pair_by_name(name)?,
            group_ref: GroupRef::Builtin {
                builtin: catalog::pair_group_name(name)?.to_string(),
            },
            echo: json!({ "pair": name }),
        });
    }
    let (group, group_ref, group_echo) = match (&args.builtin, &args.group) {
        (Some(name), _) => (
            catalog::group_by_name(name)?,
            GroupRef::Builtin { builtin: name.clone() },
            json!({ "builtin": name }),
        ),
        (None, Some(path)) => {
            let g = io::load_group(path, budget)?;
            let r = GroupRef::inline(&g);
            let echo = serde_json::to_value(&r).expect("group reference serializes");
            (g, r, echo)
        }
        (None, None) => {
            return Err(Error::Parse {
                file: "<arguments>".into(),
                line: 0,
                message: "give --pair, or --group/--builtin with --sub1 and --sub2".into(),
            })
        }
    };
    let d = group.degree();
    let g1 = parse_generators(&args.sub1, d, "--sub1")?;
    let g2 = parse_generators(&args.sub2, d, "--sub2")?;
    let echo = json!({ "group": group_echo, "subgroup1": args.sub1, "subgroup2": args.sub2 });
    Ok(ResolvedPair {
        pair: SubgroupPair::from_generators(group, g1, g2)?,
        group_ref,
        echo,
    })
}

fn perm_strings(ps: &[Permutation]) -> Vec<String> {
    ps.iter().map(ToString::to_string).collect()
}

fn search_config(flags: &RunFlags, seed: u64) -> SearchConfig {
    SearchConfig {
        box_bound: flags.box_bound,
        samples: flags.samples,
        seed,
        ..SearchConfig::default()
    }
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir).map_err(|e| Error::Io {
            path: dir.display().to_string(),
            message: e.to_string(),
        })?;
    }
    std::fs::write(path, contents).map_err(|e| Error::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

fn report(subcommand: &str, inputs: Value, flags: &RunFlags, derived_seed: u64, result: Value, exit_code: i32) -> Outcome {
    Outcome {
        report: Report {
            subcommand: subcommand.to_string(),
            inputs,
            flags: flags.clone(),
            derived_seed,
            result,
            budget_exhausted: exit_code == 3,
        },
        exit_code,
    }
}

fn gassman_verify(flags: &RunFlags, args: &PairArgs) -> Result<Outcome> {
    let r = resolve_pair(args, flags.budget_elements)?;
    let pair = &r.pair;
    let (c1, c2) = pair.characters();
    let conj = pair.conjugating_element();
    let result = json!({
        "group_order": pair.group.order(),
        "orders": [pair.p1.order(), pair.p2.order()],
        "indices": [pair.t1.index(), pair.t2.index()],
        "q_equivalent": pair.is_q_equivalent(),
        "characters_identical": c1 == c2,
        "conjugate": conj.is_some(),
        "conjugating_element": conj.map(|g| g.to_string()),
        "class_sizes": c1.class_sizes,
        "characters": [c1.values, c2.values],
    });
    let seed = derive_seed(flags.seed, "gassman verify", &r.echo);
    Ok(report("gassman verify", r.echo, flags, seed, result, 0))
}

fn gassman_certify(flags: &RunFlags, args: &CertifyArgs) -> Result<Outcome> {
    if let Some(path) = &args.verify_only {
        let file = AnyCertificateFile::load(path)?;
        let base = path.parent().unwrap_or(Path::new("."));
        let v = file.verify(base, flags.budget_elements)?;
        let inputs = json!({ "verify_only": path.display().to_string() });
        let seed = derive_seed(flags.seed, "gassman certify", &inputs);
        let code = if v.valid { 0 } else { 1 };
        let result = serde_json::to_value(&v).expect("verification serializes");
        return Ok(report("gassman certify", inputs, flags, seed, result, code));
    }
    let r = resolve_pair(&args.pair, flags.budget_elements)?;
    let seed = derive_seed(flags.seed, "gassman certify", &r.echo);
    if !r.pair.is_q_equivalent() {
        return Err(Error::NotEquivalent);
    }
    match find_unimodular_certificate(&r.pair, &search_config(flags, seed)) {
        Ok(cert) => {
            let file = CertificateFile::new(r.group_ref.clone(), &r.pair, &cert);
            if let Some(out) = &args.out {
                write_file(out, &file.to_json())?;
            }
            let result = json!({
                "status": "found",
                "origin": cert.origin,
                "basis_coeffs": cert.coeffs,
                "det": cert.det,
                "dimension": cert.matrix.rows(),
                "file": args.out.as_ref().map(|p| p.display().to_string()),
            });
            Ok(report("gassman certify", r.echo, flags, seed, result, 0))
        }
        Err(Error::NotFoundWithinBudget { box_bound, samples }) => {
            let result = json!({
                "status": "not_found_within_budget",
                "box_bound": box_bound,
                "samples": samples,
            });
            Ok(report("gassman certify", r.echo, flags, seed, result, 3))
        }
        Err(e) => Err(e),
    }
}

fn sunada(flags: &RunFlags, args: &SunadaArgs) -> Result<Outcome> {
    let r = resolve_pair(&args.pair, flags.budget_elements)?;
    let mut inputs = r.echo.clone();
    inputs["elements"] = json!(args.elements);
    inputs["random"] = json!(args.random);
    inputs["attempts"] = json!(args.attempts);
    inputs["walk_length"] = json!(args.walk_length);
    inputs["symmetric"] = json!(args.symmetric);
    let seed = derive_seed(flags.seed, "sunada", &inputs);
    let g = &r.pair.group;
    let multisets: Vec<Vec<Permutation>> = match args.random {
        Some(k) => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..args.attempts).map(|_| random_generating_multiset(g, k, &mut rng)).collect()
        }
        None if args.elements.is_empty() => vec![g.generators().to_vec()],
        None => vec![parse_generators(&args.elements, g.degree(), "--element")?],
    };
    let opts = SunadaOptions {
        walk_length: args.walk_length,
        symmetric: args.symmetric,
    };
    let mut tests = Vec::new();
    let mut all_equal = true;
    for s in &multisets {
        let rep = check_isospectral(&r.pair, s, &opts)?;
        all_equal &= rep.equal;
        let mut v = serde_json::to_value(&rep).expect("report serializes");
        v["elements"] = json!(perm_strings(s));
        tests.push(v);
    }
    let result = json!({ "all_equal": all_equal, "tested": tests.len(), "tests": tests });
    Ok(report("sunada", inputs, flags, seed, result, if all_equal { 0 } else { 1 }))
}

fn parse_coefficients(spec: &str, generators: usize) -> Result<GModule> {
    let bad = || Error::Parse {
        file: "--coefficients".into(),
        line: 0,
        message: format!("expected Z or Z/n, got {spec:?}"),
    };
    let n = match spec.trim() {
        "Z" => 0,
        s => s
            .strip_prefix("Z/")
            .and_then(|n| n.parse::<i64>().ok())
            .filter(|&n| n >= 2)
            .ok_or_else(bad)?,
    };
    GModule::cyclic(n, generators)
}

fn cohomology(flags: &RunFlags, args: &CohomologyArgs) -> Result<Outcome> {
    let r = resolve_pair(&args.pair, flags.budget_elements)?;
    let pair = &r.pair;
    let images = if args.images.is_empty() {
        pair.group.generators().to_vec()
    } else {
        parse_generators(&args.images, pair.group.degree(), "--image")?
    };
    let mut inputs = r.echo.clone();
    inputs["images"] = json!(perm_strings(&images));
    inputs["certificate"] = json!(args.certificate.as_ref().map(|p| p.display().to_string()));
    inputs["module"] = json!(args.module.as_ref().map(|p| p.display().to_string()));
    inputs["coefficients"] = json!(args.coefficients);
    inputs["degree"] = json!(args.degree);
    let seed = derive_seed(flags.seed, "cohomology", &inputs);
    let module = match &args.module {
        Some(path) => ModuleFile::load(path)?.to_module()?,
        None => parse_coefficients(&args.coefficients, images.len())?,
    };
    let cert = match &args.certificate {
        Some(path) => {
            let file = CertificateFile::load(path)?;
            EquivalenceCertificate {
                matrix: file.matrix()?,
                coeffs: file.basis_coeffs.clone(),
                det: file.det,
                origin: crate::gassman::CertificateOrigin::Loaded,
            }
        }
        None => match find_unimodular_certificate(pair, &search_config(flags, seed)) {
            Ok(c) => c,
            Err(Error::NotFoundWithinBudget { box_bound, samples }) => {
                let result = json!({
                    "status": "no_certificate",
                    "box_bound": box_bound,
                    "samples": samples,
                });
                return Ok(report("cohomology", inputs, flags, seed, result, 3));
            }
            Err(e) => return Err(e),
        },
    };
    let d = compatible_diagram_check(pair, &images, &cert, &module, args.degree)?;
    let mut result = json!({
        "commutes": d.commutes,
        "degree": d.degree,
        "index": d.index,
        "negated": d.negated,
        "res_commutes": d.res_commutes,
        "cor_commutes": d.cor_commutes,
        "cor_res_is_index": d.cor_res_is_index,
        "base": d.base.to_string(),
        "first": d.first.to_string(),
        "second": d.second.to_string(),
        "base_divisors": d.base,
        "first_divisors": d.first,
        "second_divisors": d.second,
    });
    let mut ok = d.commutes;
    if args.shapiro {
        let mut checks = Vec::new();
        for p in [&pair.p1, &pair.p2] {
            let s = shapiro_check(&images, p, &module)?;
            ok &= s.agree;
            checks.push(json!({
                "agree": s.agree,
                "index": s.index,
                "subgroup_rank": s.subgroup_rank,
                "direct_h1": s.direct.h1,
                "coinduced_h1": s.coinduced.h1,
            }));
        }
        result["shapiro"] = json!(checks);
    }
    Ok(report("cohomology", inputs, flags, seed, result, if ok { 0 } else { 1 }))
}

fn default_pair_for(target: &str) -> Result<&'static str> {
    match target {
        "s3" => Ok("s3-conj"),
        "a4" => Ok("a4-conj"),
        "a5" => Ok("a5-conj"),
        other => Err(Error::Parse {
            file: "--target".into(),
            line: 0,
            message: format!("no default pair for {other:?}; pass --pair"),
        }),
    }
}

fn family(flags: &RunFlags, args: &FamilyArgs) -> Result<Outcome> {
    let pair_name = match &args.pair {
        Some(p) => p.clone(),
        None => default_pair_for(&args.target)?.to_string(),
    };
    if catalog::pair_group_name(&pair_name)? != args.target {
        return Err(Error::ActionMismatch(format!(
            "pair {pair_name} does not live in {}",
            args.target
        )));
    }
    let inputs = json!({
        "target": args.target,
        "rank": args.rank,
        "tuples": args.tuples,
        "pair": pair_name,
        "enumeration_budget": args.enumeration_budget,
        "max_index": args.max_index,
    });
    let seed = derive_seed(flags.seed, "family generate", &inputs);
    let q = catalog::group_by_name(&args.target)?;
    let pair = catalog::pair_by_name(&pair_name)?;
    let surj = surjections_mod_aut(args.rank, &q, args.enumeration_budget)?;
    let product = hall_product(&surj, &q, args.tuples, args.enumeration_budget)?;
    let cert = match find_unimodular_certificate(&pair, &search_config(flags, seed)) {
        Ok(c) => c,
        Err(Error::NotFoundWithinBudget { box_bound, samples }) => {
            let result = json!({ "status": "no_certificate", "box_bound": box_bound, "samples": samples });
            return Ok(report("family generate", inputs, flags, seed, result, 3));
        }
        Err(e) => return Err(e),
    };
    let fam = build_family(&product, &pair, &cert, args.max_index)?;
    let mut cert_entries = Vec::new();
    for c in &fam.certificates {
        let name = format!("certificates/delta_{}_{}.json", c.first, c.second);
        if let Some(dir) = &args.out {
            let file = ActionCertificateFile::new(
                fam.tables[c.first].actions(),
                fam.tables[c.second].actions(),
                &c.certificate,
            );
            write_file(&dir.join(&name), &(serde_json::to_string_pretty(&file).expect("serializes") + "\n"))?;
        }
        cert_entries.push(json!({
            "first": c.first,
            "second": c.second,
            "valid": c.valid,
            "det": c.det,
            "file": args.out.as_ref().map(|_| name),
        }));
    }
    let subgroups: Vec<Value> = fam
        .tuples
        .iter()
        .zip(&fam.tables)
        .map(|(z, t)| json!({ "tuple": z, "actions": perm_strings(t.actions()) }))
        .collect();
    let ok = fam.all_certificates_valid() && fam.verdicts_match;
    let result = json!({
        "status": if ok { "verified" } else { "failed" },
        "group_order": q.order(),
        "aut_order": surj.aut_order,
        "surjections": surj.count_total,
        "beta": surj.beta,
        "representatives": surj.representatives,
        "product_images": perm_strings(&product.images),
        "surjectivity": product.surjectivity,
        "base_certificate": { "origin": cert.origin, "det": cert.det },
        "tuples": fam.tuples,
        "index": fam.index,
        "subgroup_rank": fam.subgroup_rank,
        "subgroups": subgroups,
        "certificates": cert_entries,
        "factor_conjugate": fam.factor_conjugate,
        "conjugate": fam.conjugate,
        "expected_conjugate": fam.expected_conjugate,
        "verdicts_match": fam.verdicts_match,
        "classes": fam.classes,
        "expected_classes": fam.expected_classes,
    });
    let out = report("family generate", inputs, flags, seed, result, if ok { 0 } else { 1 });
    if let Some(dir) = &args.out {
        write_file(&dir.join("manifest.json"), &out.render(false))?;
    }
    Ok(out)
}

/// Runs a parsed command line.
pub fn run(cli: &Cli) -> Result<Outcome> {
    let flags = &cli.run;
    match &cli.command {
        Command::Gassman(GassmanCommand::Verify(a)) => gassman_verify(flags, a),
        Command::Gassman(GassmanCommand::Certify(a)) => gassman_certify(flags, a),
        Command::Sunada(a) => sunada(flags, a),
        Command::Cohomology(a) => cohomology(flags, a),
        Command::Family(FamilyCommand::Generate(a)) => family(flags, a),
    }
}

fn error_code(e: &Error) -> i32 {
    match e {
        Error::BudgetExceeded { .. } | Error::NotFoundWithinBudget { .. } => 3,
        _ => 2,
    }
}

/// Parses `args`, runs, and returns the exit code with stdout and stderr.
pub fn execute<I, T>(args: I) -> (i32, String, String)
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 { (0, text, String::new()) } else { (2, String::new(), text) };
        }
    };
    if cli.run.jobs > 1 {
        // only the first configuration in a process takes effect
        let _ = rayon::ThreadPoolBuilder::new().num_threads(cli.run.jobs).build_global();
    }
    match run(&cli) {
        Ok(out) => (out.exit_code, out.render(cli.run.text), String::new()),
        Err(e) => (error_code(&e), String::new(), format!("error: {e}\n")),
    }
}

/// Entry point of the binary.
pub fn main_with_args() -> i32 {
    let (code, out, err) = execute(std::env::args_os());
    print!("{out}");
    eprint!("{err}");
    code
}
