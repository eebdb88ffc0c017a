//! Command-line front end: argument parsing, report formatting, and the
//! `foldmv/1` JSON records.

use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use foldmv::characters::{mv_character, verify_twining};
use foldmv::folding::parse_sigma;
use foldmv::lusztig::transport;
use foldmv::polytope::{build_polytope, enumerate_data_capped, lies_in_weyl_hull, DEFAULT_ENUMERATION_CAP};
use foldmv::weyl::{DEFAULT_GROUP_CAP, DEFAULT_WORD_CAP};
use foldmv::{
    CartanType, Coweight, Error, ExactCharacters, FoldedSystem, FoldingData, LiftConvention,
    LusztigDatum, MVPolytope, Rational, ReducedWord, RootDatum, WeylGroup,
};
use serde::{Deserialize, Serialize};

pub const SCHEMA: &str = "foldmv/1";

#[derive(Parser, Debug)]
#[command(name = "foldmv", version, about = "MV polytopes, folding, and twining characters")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List the Lusztig data of a given coweight.
    Enumerate(EnumerateArgs),
    /// Show a folding, or fold a block-constant datum.
    Fold(FoldArgs),
    /// Unfold a folded datum onto the lifted word.
    Unfold(UnfoldArgs),
    /// Transport a datum to another reduced word of the longest element.
    Transport(TransportArgs),
    /// Print a shortest sequence of braid moves between two words.
    BraidPath(BraidPathArgs),
    /// Compare MV polytope counts with Freudenthal multiplicities.
    VerifyWeights(VerifyWeightsArgs),
    /// Compare the twining character with the folded Weyl character.
    VerifyTwining(VerifyTwiningArgs),
    /// Write polytope records as JSON, or check a written file.
    Export(ExportArgs),
}

#[derive(Args, Debug)]
struct TypeArgs {
    /// Cartan type, e.g. A3 or D4.
    #[arg(long = "type", value_name = "TYPE")]
    cartan: CartanType,
    /// Maximum size of the Weyl group.
    #[arg(long, default_value_t = DEFAULT_GROUP_CAP)]
    group_cap: usize,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum Convention {
    Ascending,
    Descending,
}

impl From<Convention> for LiftConvention {
    fn from(c: Convention) -> Self {
        match c {
            Convention::Ascending => LiftConvention::Ascending,
            Convention::Descending => LiftConvention::Descending,
        }
    }
}

#[derive(Args, Debug)]
struct EnumerateArgs {
    #[command(flatten)]
    ty: TypeArgs,
    /// Reduced word of the longest element (1-based, comma separated).
    #[arg(long, allow_hyphen_values = true)]
    word: Option<ReducedWord>,
    /// Target coweight in the simple coroot basis.
    #[arg(long, allow_hyphen_values = true)]
    coweight: Coweight,
    /// Enumerate folded data; the word and coweight are then folded.
    #[arg(long)]
    sigma: Option<String>,
    /// Keep only polytopes inside the Weyl polytope of this dominant coweight.
    #[arg(long, allow_hyphen_values = true)]
    lambda: Option<Coweight>,
    /// Maximum number of data.
    #[arg(long, default_value_t = DEFAULT_ENUMERATION_CAP)]
    cap: usize,
}

#[derive(Args, Debug)]
struct FoldArgs {
    #[command(flatten)]
    ty: TypeArgs,
    #[arg(long)]
    sigma: String,
    /// Lifted word carrying the datum.
    #[arg(long)]
    word: Option<ReducedWord>,
    #[arg(long)]
    datum: Option<Values>,
}

#[derive(Args, Debug)]
struct UnfoldArgs {
    #[command(flatten)]
    ty: TypeArgs,
    #[arg(long)]
    sigma: String,
    /// Folded word, in orbit labels.
    #[arg(long)]
    word: Option<ReducedWord>,
    #[arg(long)]
    datum: Values,
    #[arg(long, value_enum, default_value_t = Convention::Ascending)]
    convention: Convention,
}

#[derive(Args, Debug)]
struct TransportArgs {
    #[command(flatten)]
    ty: TypeArgs,
    #[arg(long)]
    from: ReducedWord,
    #[arg(long)]
    to: ReducedWord,
    #[arg(long)]
    datum: Values,
    /// Transport folded data; the words are then folded words.
    #[arg(long)]
    sigma: Option<String>,
    #[arg(long, value_enum, default_value_t = Convention::Ascending)]
    convention: Convention,
}

#[derive(Args, Debug)]
struct BraidPathArgs {
    #[command(flatten)]
    ty: TypeArgs,
    #[arg(long)]
    from: ReducedWord,
    #[arg(long)]
    to: ReducedWord,
}

#[derive(Args, Debug)]
struct VerifyWeightsArgs {
    #[command(flatten)]
    ty: TypeArgs,
    #[arg(long)]
    lambda: Coweight,
    #[arg(long)]
    word: Option<ReducedWord>,
}

#[derive(Args, Debug)]
struct VerifyTwiningArgs {
    #[command(flatten)]
    ty: TypeArgs,
    #[arg(long)]
    sigma: String,
    #[arg(long)]
    lambda: Coweight,
}

#[derive(Args, Debug)]
struct ExportArgs {
    /// Cartan type; required unless --check is given.
    #[arg(long = "type", value_name = "TYPE")]
    cartan: Option<CartanType>,
    #[arg(long)]
    word: Option<ReducedWord>,
    /// One or more data, separated by ';'.
    #[arg(long)]
    datum: Option<String>,
    #[arg(long)]
    sigma: Option<String>,
    #[arg(long)]
    lambda: Option<Coweight>,
    /// Write to this file instead of standard output.
    #[arg(long)]
    output: Option<PathBuf>,
    /// Re-import a record file and rebuild every polytope from its datum.
    #[arg(long, conflicts_with_all = ["word", "datum", "sigma", "lambda", "output"])]
    check: Option<PathBuf>,
}

/// Nonnegative datum values, comma separated.
#[derive(Clone, Debug)]
struct Values(Vec<u64>);

impl std::str::FromStr for Values {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.split(',')
            .map(|t| t.trim().parse::<u64>().map_err(|_| format!("bad datum entry {t:?}")))
            .collect::<Result<Vec<_>, _>>()
            .map(Values)
    }
}

/// Failure modes mapped to exit codes.
#[derive(Debug)]
enum Failure {
    Usage(String),
    Mismatch,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Usage(format!("i/o error: {e}"))
    }
}

type Outcome = Result<(), Failure>;

/// Parses `argv` (including the program name) and runs the command, writing
/// to the given streams. Returns the exit code: 0 on success, 1 when a
/// verification fails, 2 on usage or input errors.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let result = match cli.command {
        Command::Enumerate(a) => enumerate(a, out),
        Command::Fold(a) => fold(a, out),
        Command::Unfold(a) => unfold(a, out),
        Command::Transport(a) => transport_cmd(a, out),
        Command::BraidPath(a) => braid_path(a, out),
        Command::VerifyWeights(a) => verify_weights(a, out),
        Command::VerifyTwining(a) => verify_twining_cmd(a, out),
        Command::Export(a) => export(a, out),
    };
    match result {
        Ok(()) => 0,
        Err(Failure::Mismatch) => 1,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
    }
}

fn group_of(ty: &TypeArgs) -> Result<WeylGroup, Failure> {
    Ok(WeylGroup::with_caps(RootDatum::new(ty.cartan), ty.group_cap, DEFAULT_WORD_CAP)?)
}

fn folded_of(ty: &TypeArgs, sigma: &str) -> Result<FoldedSystem, Failure> {
    let datum = RootDatum::new(ty.cartan);
    let perm = parse_sigma(&datum, sigma)?;
    Ok(FoldedSystem::new(FoldingData::new(datum, perm)?)?)
}

fn values_line(d: &LusztigDatum) -> String {
    d.values().iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

fn enumerate(a: EnumerateArgs, out: &mut dyn Write) -> Outcome {
    let system = a.sigma.as_deref().map(|s| folded_of(&a.ty, s)).transpose()?;
    let unfolded = match &system {
        Some(_) => None,
        None => Some(group_of(&a.ty)?),
    };
    let group = match (&system, &unfolded) {
        (Some(sys), _) => sys.folded_group(),
        (None, Some(g)) => g,
        (None, None) => unreachable!("one of the two groups is built"),
    };
    let word = a.word.clone().unwrap_or_else(|| group.datum().longest_word());
    let data = enumerate_data_capped(group, &word, &a.coweight, a.cap)?;
    writeln!(out, "type {} word ({}) coweight {}", group.datum().label(), word, a.coweight)?;
    let mut count = 0usize;
    for d in &data {
        let (polytope_group, lifted) = match &system {
            Some(sys) => (sys.group(), sys.data().unfold_datum(d, LiftConvention::Ascending)?),
            None => (group, d.clone()),
        };
        if let Some(lambda) = &a.lambda {
            let p = build_polytope(polytope_group, &lifted)?;
            if !lies_in_weyl_hull(polytope_group, &p, lambda)? {
                continue;
            }
        }
        count += 1;
        match &system {
            Some(_) => writeln!(out, "{}  lift ({}) {}", values_line(d), lifted.word(), values_line(&lifted))?,
            None => writeln!(out, "{}", values_line(d))?,
        }
    }
    writeln!(out, "count {count}")?;
    Ok(())
}

fn fold(a: FoldArgs, out: &mut dyn Write) -> Outcome {
    let sys = folded_of(&a.ty, &a.sigma)?;
    let data = sys.data();
    match a.datum {
        None => {
            writeln!(out, "{data}")?;
            for (k, o) in data.orbits().iter().enumerate() {
                let nodes: Vec<String> = o.nodes().iter().map(|i| (i + 1).to_string()).collect();
                writeln!(out, "orbit {}: {{{}}} h={} r={}", k + 1, nodes.join(","), o.h(), o.r())?;
            }
            let rows: Vec<String> = data
                .folded()
                .cartan()
                .iter()
                .map(|r| format!("[{}]", r.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")))
                .collect();
            writeln!(out, "folded cartan [{}]", rows.join(","))?;
            writeln!(out, "lifted longest word ({})", sys.lifted_longest_word(LiftConvention::Ascending))?;
        }
        Some(values) => {
            let word = a
                .word
                .unwrap_or_else(|| sys.lifted_longest_word(LiftConvention::Ascending));
            let d = LusztigDatum::new(word.clone(), values.0)?;
            if !data.is_block_constant(&word, &d)? {
                writeln!(out, "not block-constant on ({word})")?;
                return Err(Failure::Mismatch);
            }
            let f = data.fold_datum(&d)?;
            writeln!(out, "folded type {} word ({}) datum {}", data.folded().label(), f.word(), values_line(&f))?;
            writeln!(out, "coweight {}", f.coweight(data.folded()))?;
        }
    }
    Ok(())
}

fn unfold(a: UnfoldArgs, out: &mut dyn Write) -> Outcome {
    let sys = folded_of(&a.ty, &a.sigma)?;
    let word = a.word.unwrap_or_else(|| sys.folded_longest_word());
    let f = LusztigDatum::new(word, a.datum.0)?;
    let d = sys.data().unfold_datum(&f, a.convention.into())?;
    writeln!(out, "type {} word ({}) datum {}", sys.data().datum().label(), d.word(), values_line(&d))?;
    writeln!(out, "coweight {}", d.coweight(sys.data().datum()))?;
    Ok(())
}

fn transport_cmd(a: TransportArgs, out: &mut dyn Write) -> Outcome {
    let result = match &a.sigma {
        Some(sigma) => {
            let sys = folded_of(&a.ty, sigma)?;
            let d = LusztigDatum::new(a.from.clone(), a.datum.0.clone())?;
            sys.folded_transport(&d, &a.to, a.convention.into())?
        }
        None => {
            let group = group_of(&a.ty)?;
            let d = LusztigDatum::new(a.from.clone(), a.datum.0.clone())?;
            transport(&group, &d, &a.to)?
        }
    };
    writeln!(out, "word ({}) datum {}", result.word(), values_line(&result))?;
    Ok(())
}

fn braid_path(a: BraidPathArgs, out: &mut dyn Write) -> Outcome {
    let group = group_of(&a.ty)?;
    let path = group.braid_path(&a.from, &a.to)?;
    let mut word = a.from.clone();
    writeln!(out, "({word})")?;
    for mv in path.iter() {
        word = mv.apply(&word)?;
        writeln!(out, "{mv} -> ({word})")?;
    }
    writeln!(out, "length {}", path.len())?;
    Ok(())
}

fn verify_weights(a: VerifyWeightsArgs, out: &mut dyn Write) -> Outcome {
    let group = group_of(&a.ty)?;
    let word = a.word.unwrap_or_else(|| group.datum().longest_word());
    group.check_longest_word(&word)?;
    let mv = mv_character(&group, &a.lambda, &word)?;
    let system = ExactCharacters::of_datum(group.datum());
    let freudenthal = system.weyl_character(&a.lambda)?;
    let dimension = system.weyl_dimension(&a.lambda)?;
    let mut weights: Vec<&Coweight> = mv.support().chain(freudenthal.support()).collect();
    weights.sort_by(|x, y| y.height().cmp(&x.height()).then_with(|| y.cmp(x)));
    weights.dedup();
    writeln!(out, "type {} lambda {} word ({})", group.datum().label(), a.lambda, word)?;
    writeln!(out, "{:<16}  {:>5}  {:>10}", "weight", "mv", "freudenthal")?;
    for mu in &weights {
        let (x, y) = (mv.coefficient(mu), freudenthal.coefficient(mu));
        let mark = if x == y { "" } else { "  *" };
        writeln!(out, "{:<16}  {:>5}  {:>10}{mark}", mu.to_string(), x, y)?;
    }
    let equal = mv == freudenthal && mv.total() == dimension;
    writeln!(out, "dimension {} (weyl {dimension})", mv.total())?;
    writeln!(out, "equal: {equal}")?;
    if equal {
        Ok(())
    } else {
        Err(Failure::Mismatch)
    }
}

fn verify_twining_cmd(a: VerifyTwiningArgs, out: &mut dyn Write) -> Outcome {
    let sys = folded_of(&a.ty, &a.sigma)?;
    let report = verify_twining::<Rational>(&sys, &a.lambda)?;
    writeln!(out, "{}", sys.data())?;
    writeln!(out, "{report}")?;
    if report.equal && report.alternating_sum_ok {
        Ok(())
    } else {
        Err(Failure::Mismatch)
    }
}

/// One MV polytope in the export format.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolytopeRecord {
    #[serde(rename = "type")]
    pub cartan_type: String,
    pub rank: usize,
    pub sigma: Option<String>,
    pub base_word: Vec<usize>,
    pub datum: Vec<u64>,
    pub coweight: Vec<i64>,
    pub vertices: Vec<VertexRecord>,
    pub flags: Flags,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexRecord {
    pub word: Vec<usize>,
    pub coweight: Vec<i64>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Flags {
    pub sigma_invariant: Option<bool>,
    pub lambda: Option<Vec<i64>>,
    pub in_vlambda: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecordFile {
    pub schema: String,
    pub records: Vec<PolytopeRecord>,
}

impl PolytopeRecord {
    /// Builds the record of `polytope`; vertices are listed in the group's
    /// element order, each labelled by its canonical reduced word.
    pub fn new(
        group: &WeylGroup,
        polytope: &MVPolytope,
        sigma: Option<&FoldedSystem>,
        lambda: Option<&Coweight>,
    ) -> foldmv::Result<Self> {
        let datum = group.datum();
        let vertices = (0..group.len())
            .map(|k| VertexRecord {
                word: group.word(k).labels(),
                coweight: polytope.vertex(k).0.clone(),
            })
            .collect();
        let in_vlambda = lambda
            .map(|l| lies_in_weyl_hull(group, polytope, l))
            .transpose()?;
        Ok(Self {
            cartan_type: datum.label().to_string(),
            rank: datum.rank(),
            sigma: sigma.map(|s| s.data().cycles()),
            base_word: polytope.base_word().labels(),
            datum: polytope.datum().values().to_vec(),
            coweight: polytope.coweight(group).0.clone(),
            vertices,
            flags: Flags {
                sigma_invariant: sigma.map(|s| s.is_sigma_invariant(polytope)),
                lambda: lambda.map(|l| l.0.clone()),
                in_vlambda,
            },
        })
    }

    /// Rebuilds the polytope from `(base_word, datum)` and checks that it
    /// reproduces every recorded field.
    pub fn verify(&self) -> foldmv::Result<bool> {
        let cartan: CartanType = self.cartan_type.parse()?;
        let group = WeylGroup::new(RootDatum::new(cartan))?;
        let sigma = match &self.sigma {
            Some(s) => Some(FoldedSystem::from_datum(
                group.datum().clone(),
                parse_sigma(group.datum(), s)?,
            )?),
            None => None,
        };
        let word = ReducedWord::one_based(&self.base_word);
        let datum = LusztigDatum::new(word, self.datum.clone())?;
        let polytope = build_polytope(&group, &datum)?;
        let lambda = self.flags.lambda.clone().map(Coweight);
        let rebuilt = PolytopeRecord::new(&group, &polytope, sigma.as_ref(), lambda.as_ref())?;
        Ok(rebuilt == *self)
    }
}

/// Serializes records with a trailing newline; keys appear in declaration
/// order.
pub fn export_json(records: Vec<PolytopeRecord>) -> String {
    let file = RecordFile {
        schema: SCHEMA.to_string(),
        records,
    };
    let mut text = serde_json::to_string_pretty(&file).expect("records serialize");
    text.push('\n');
    text
}

pub fn import_json(text: &str) -> foldmv::Result<Vec<PolytopeRecord>> {
    let file: RecordFile =
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("record file: {e}")))?;
    if file.schema != SCHEMA {
        return Err(Error::Parse(format!("unknown schema {:?}", file.schema)));
    }
    Ok(file.records)
}

fn export(a: ExportArgs, out: &mut dyn Write) -> Outcome {
    if let Some(path) = a.check {
        let records = import_json(&fs::read_to_string(&path)?)?;
        let mut ok = true;
        for (k, r) in records.iter().enumerate() {
            let good = r.verify()?;
            ok &= good;
            writeln!(out, "record {}: {}", k + 1, if good { "ok" } else { "MISMATCH" })?;
        }
        return if ok { Ok(()) } else { Err(Failure::Mismatch) };
    }
    let cartan = a
        .cartan
        .ok_or_else(|| Failure::Usage("--type is required unless --check is given".into()))?;
    let ty = TypeArgs {
        cartan,
        group_cap: DEFAULT_GROUP_CAP,
    };
    let group = group_of(&ty)?;
    let sigma = a.sigma.as_deref().map(|s| folded_of(&ty, s)).transpose()?;
    let word = a.word.unwrap_or_else(|| match &sigma {
        Some(sys) => sys.lifted_longest_word(LiftConvention::Ascending),
        None => group.datum().longest_word(),
    });
    let specs = a.datum.unwrap_or_else(|| vec!["0"; word.len()].join(","));
    let mut records = Vec::new();
    for spec in specs.split(';').filter(|s| !s.trim().is_empty()) {
        let values: Values = spec.parse().map_err(Failure::Usage)?;
        let d = LusztigDatum::new(word.clone(), values.0)?;
        let polytope = build_polytope(&group, &d)?;
        records.push(PolytopeRecord::new(&group, &polytope, sigma.as_ref(), a.lambda.as_ref())?);
    }
    let text = export_json(records);
    match a.output {
        Some(path) => fs::write(path, text)?,
        None => out.write_all(text.as_bytes())?,
    }
    Ok(())
}
