//! `mcqkit`: verify, build, extend, enumerate, reduce, certify, compare and
//! transport finite multiple conjugation quandle data stored as JSON.
//!
//! Exit status: 0 success, 1 a named condition failed, 2 malformed input,
//! 3 resource limit.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use mcq_core::affine_extension::{
    certify_reduction, enumerate_six_tuples, reduce_six_tuple, transport_six_tuple, verify_six_tuple, EquivalenceWitness, SixTuple,
};
use mcq_core::alexander_pairs::{
    build_extension_augmented, enumerate_cocycles, enumerate_pairs, pair_is_augmented_alexander, verify_pair, AugmentedPair,
};
use mcq_core::finite_algebra::{cyclic_group, module_power, ring_zn, symmetric_group, verify_group, verify_module, verify_ring, FiniteRing};
use mcq_core::format::{parse, parse_kind, to_json, CocycleListData, Document, MapData, ModuleFile, PairListData, TupleListData};
use mcq_core::mcq::{associated_mcq, g_family_alexander, mcq_from_group, mcq_iso_search, verify_mcq, z_family_from_quandle, FiniteMCQ};
use mcq_core::quandle::{alexander_quandle_zn, dihedral_quandle, verify_quandle};
use mcq_core::setting::Setting;
use mcq_core::{Error, Verdict};

const BUDGET_VAR: &str = "MCQKIT_BUDGET";
const DEFAULT_BUDGET: u64 = 1 << 32;

#[derive(Parser)]
#[command(name = "mcqkit", version, about = "Finite multiple conjugation quandles and their affine extensions")]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Subcommand)]
enum Verb {
    /// Check a file against the axioms or conditions of its kind
    Verify { kind: Kind, file: PathBuf },
    /// Write a standard object
    Build {
        #[command(subcommand)]
        what: Build,
        #[arg(short, long, global = true)]
        output: Option<PathBuf>,
    },
    /// Build the extension of a pair, cocycle or tuple file
    Extend {
        file: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// List every pair, cocycle or tuple
    Enumerate {
        what: Enumerable,
        #[command(flatten)]
        setting: SettingArgs,
        /// Pair file, for cocycles
        #[arg(long)]
        pair: Option<PathBuf>,
        #[arg(long)]
        budget: Option<u64>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Reduce a tuple to an equivalent augmented pair
    Reduce {
        file: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long)]
        witness_out: Option<PathBuf>,
    },
    /// Reduce a tuple and write a self-contained certificate
    Certify {
        file: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Search for an isomorphism between two MCQ files
    Iso {
        a: PathBuf,
        b: PathBuf,
        #[arg(long)]
        budget: Option<u64>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Apply a random equivalence to a tuple
    Transport {
        file: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long)]
        witness_out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Group,
    Ring,
    Module,
    Quandle,
    Mcq,
    Pair,
    Cocycle,
    Tuple,
    Certificate,
}

#[derive(Clone, Copy, ValueEnum)]
enum Enumerable {
    Pairs,
    Cocycles,
    Tuples,
}

#[derive(Subcommand)]
enum Build {
    GroupCyclic { n: usize },
    GroupSymmetric { n: usize },
    RingZn { n: usize },
    /// `Z_n^k` over `Z_n`
    ModulePower { n: usize, k: usize },
    QuandleDihedral { n: usize },
    QuandleAlexander { n: usize, t: usize },
    McqConjCyclic { n: usize },
    McqConjSymmetric { n: usize },
    /// Associated MCQ of the `Z_type`-family of a quandle file
    McqZFamily { quandle: PathBuf },
    /// Associated MCQ of the group-ring family of `Z_r[Z_n]`
    McqGroupRing { r: usize, n: usize },
    TupleTrivial {
        #[command(flatten)]
        setting: SettingArgs,
    },
}

#[derive(Args)]
struct SettingArgs {
    #[arg(long)]
    mcq: Option<PathBuf>,
    #[arg(long)]
    ring: Option<PathBuf>,
    /// Module file; defaults to the ring as a module over itself
    #[arg(long)]
    module: Option<PathBuf>,
}

/// A failure with its exit status.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Axiom(_) | Error::Precondition(_) | Error::InvalidWitness(_) | Error::Inconsistency(_) => 1,
            Error::Malformed(_) | Error::Json(_) | Error::Io(_) | Error::InvalidArgument(_) => 2,
            Error::ResourceLimit { .. } => 3,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

type Outcome = Result<String, Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure {
        code: 2,
        message: format!("{}: {e}", path.display()),
    })
}

fn load(path: &Path, kind: &str) -> Result<Document, Failure> {
    Ok(parse_kind(&read(path)?, kind)?)
}

fn emit(doc: &Document, output: &Option<PathBuf>) -> Result<(), Failure> {
    let text = to_json(doc);
    match output {
        Some(p) => std::fs::write(p, text).map_err(|e| Error::Io(e).into()),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn verdict(v: Verdict) -> Outcome {
    match v {
        Verdict::Pass => Ok("pass".into()),
        Verdict::Fail(v) => Err(Failure {
            code: 1,
            message: format!("fail: {v}"),
        }),
    }
}

fn budget(flag: Option<u64>) -> Result<u64, Failure> {
    if let Some(b) = flag {
        return Ok(b);
    }
    match std::env::var(BUDGET_VAR) {
        Ok(s) => s.trim().parse().map_err(|_| Failure {
            code: 2,
            message: format!("{BUDGET_VAR} is not an integer: {s}"),
        }),
        Err(_) => Ok(DEFAULT_BUDGET),
    }
}

fn mcq_file(path: &Path) -> Result<FiniteMCQ, Failure> {
    match load(path, "mcq")? {
        Document::Mcq(d) => Ok(d.load()?),
        _ => unreachable!(),
    }
}

fn ring_file(path: &Path) -> Result<FiniteRing, Failure> {
    match load(path, "ring")? {
        Document::Ring(d) => Ok(d.load()?),
        _ => unreachable!(),
    }
}

fn setting(args: &SettingArgs) -> Result<Arc<Setting>, Failure> {
    let missing = |flag: &str| Failure {
        code: 2,
        message: format!("--{flag} is required"),
    };
    let x = mcq_file(args.mcq.as_deref().ok_or_else(|| missing("mcq"))?)?;
    let r = ring_file(args.ring.as_deref().ok_or_else(|| missing("ring"))?)?;
    match &args.module {
        None => Ok(Setting::regular(x, r)),
        Some(p) => match load(p, "module")? {
            Document::Module(ModuleFile { ring, module }) => {
                if ring.load()? != r {
                    return Err(Error::InvalidArgument("module file is over a different ring".into()).into());
                }
                Ok(Setting::new(x, r.clone(), module.load(&r)?)?)
            }
            _ => unreachable!(),
        },
    }
}

fn tuple_file(path: &Path) -> Result<SixTuple, Failure> {
    match load(path, "tuple")? {
        Document::Tuple(d) => Ok(d.load()?),
        _ => unreachable!(),
    }
}

fn verify(kind: Kind, file: &Path) -> Outcome {
    let doc = parse(&read(file)?)?;
    let want = match kind {
        Kind::Group => "group",
        Kind::Ring => "ring",
        Kind::Module => "module",
        Kind::Quandle => "quandle",
        Kind::Mcq => "mcq",
        Kind::Pair => "pair",
        Kind::Cocycle => "cocycle",
        Kind::Tuple => "tuple",
        Kind::Certificate => "certificate",
    };
    if doc.kind() != want {
        return Err(Error::Malformed(format!("expected a {want} file, found {}", doc.kind())).into());
    }
    match doc {
        Document::Group(g) => verdict(verify_group(&g.table, g.identity)?),
        Document::Ring(r) => verdict(verify_ring(&r.add, &r.mul, r.zero, r.one)?),
        Document::Module(m) => {
            let ring = m.ring.load()?;
            let carrier = m.module.group.load()?;
            verdict(verify_module(&ring, &carrier, &m.module.action)?)
        }
        Document::Quandle(q) => verdict(verify_quandle(&q.op)?),
        Document::Mcq(x) => verdict(verify_mcq(&x.checked_raw()?)?),
        Document::Pair(p) => verdict(verify_pair(&p.load()?)),
        Document::Cocycle(c) => verdict(pair_is_augmented_alexander(&c.load()?)),
        Document::Tuple(t) => verdict(verify_six_tuple(&t.load()?)),
        Document::Certificate(c) => {
            let rep = c.load()?.recheck()?;
            if rep.is_pass() {
                Ok("pass".into())
            } else {
                Err(Failure {
                    code: 1,
                    message: format!("fail: {rep:?}"),
                })
            }
        }
        _ => unreachable!(),
    }
}

fn build(what: &Build) -> Result<Document, Failure> {
    let mcq = |x: FiniteMCQ| Document::Mcq((&x).into());
    Ok(match what {
        Build::GroupCyclic { n } => Document::Group((&cyclic_group(*n)?).into()),
        Build::GroupSymmetric { n } => Document::Group((&symmetric_group(*n)?).into()),
        Build::RingZn { n } => Document::Ring((&ring_zn(*n)?).into()),
        Build::ModulePower { n, k } => {
            let r = ring_zn(*n)?;
            let m = module_power(&r, *k)?;
            Document::Module(ModuleFile {
                ring: (&r).into(),
                module: (&m).into(),
            })
        }
        Build::QuandleDihedral { n } => Document::Quandle((&dihedral_quandle(*n)?).into()),
        Build::QuandleAlexander { n, t } => Document::Quandle((&alexander_quandle_zn(*n, *t)?).into()),
        Build::McqConjCyclic { n } => mcq(mcq_from_group(&cyclic_group(*n)?)),
        Build::McqConjSymmetric { n } => mcq(mcq_from_group(&symmetric_group(*n)?)),
        Build::McqZFamily { quandle } => match load(quandle, "quandle")? {
            Document::Quandle(q) => mcq(associated_mcq(&z_family_from_quandle(&q.load()?))?),
            _ => unreachable!(),
        },
        Build::McqGroupRing { r, n } => {
            let f = g_family_alexander(&ring_zn(*r)?, &cyclic_group(*n)?, budget(None)? as usize)?;
            mcq(associated_mcq(&f)?)
        }
        Build::TupleTrivial { setting: s } => Document::Tuple((&SixTuple::trivial(setting(s)?)).into()),
    })
}

fn extend(file: &Path) -> Result<Document, Failure> {
    let ext = match parse(&read(file)?)? {
        Document::Tuple(t) => mcq_core::affine_extension::build_affine_extension(&t.load()?)?,
        Document::Cocycle(c) => build_extension_augmented(&c.load()?)?,
        Document::Pair(p) => build_extension_augmented(&p.load()?.with_trivial_cocycle())?,
        other => return Err(Error::Malformed(format!("cannot extend a {} file", other.kind())).into()),
    };
    Ok(Document::Mcq((&ext.mcq).into()))
}

fn enumerate(what: Enumerable, s: &SettingArgs, pair: &Option<PathBuf>, b: u64) -> Result<(Document, usize), Failure> {
    match what {
        Enumerable::Pairs => {
            let st = setting(s)?;
            let pairs = enumerate_pairs(st.mcq(), st.ring(), b)?;
            Ok((Document::PairList(PairListData::new(st.mcq(), st.ring(), &pairs)), pairs.len()))
        }
        Enumerable::Cocycles => {
            let path = pair.as_deref().ok_or_else(|| Failure {
                code: 2,
                message: "--pair is required".into(),
            })?;
            let p = match load(path, "pair")? {
                Document::Pair(p) => p.load()?,
                _ => unreachable!(),
            };
            let list: Vec<AugmentedPair> = enumerate_cocycles(&p, b)?;
            let n = list.len();
            Ok((Document::CocycleList(CocycleListData {
                cocycles: list.iter().map(Into::into).collect(),
            }), n))
        }
        Enumerable::Tuples => {
            let list = enumerate_six_tuples(&setting(s)?, b)?;
            let n = list.len();
            Ok((Document::TupleList(TupleListData {
                tuples: list.iter().map(Into::into).collect(),
            }), n))
        }
    }
}

fn run(cli: Cli) -> Outcome {
    match cli.verb {
        Verb::Verify { kind, file } => verify(kind, &file),
        Verb::Build { what, output } => {
            emit(&build(&what)?, &output)?;
            Ok("built".into())
        }
        Verb::Extend { file, output } => {
            let doc = extend(&file)?;
            emit(&doc, &output)?;
            Ok("extension built".into())
        }
        Verb::Enumerate {
            what,
            setting,
            pair,
            budget: b,
            output,
        } => {
            let (doc, n) = enumerate(what, &setting, &pair, budget(b)?)?;
            emit(&doc, &output)?;
            Ok(format!("{n} found"))
        }
        Verb::Reduce {
            file,
            output,
            witness_out,
        } => {
            let red = reduce_six_tuple(&tuple_file(&file)?)?;
            emit(&Document::Cocycle((&red.pair).into()), &output)?;
            if witness_out.is_some() {
                emit(&Document::Witness((&red.witness).into()), &witness_out)?;
            }
            Ok("reduced".into())
        }
        Verb::Certify { file, output } => {
            let cert = certify_reduction(&tuple_file(&file)?)?;
            emit(&Document::Certificate((&cert).into()), &output)?;
            Ok("certified".into())
        }
        Verb::Iso { a, b, budget: nb, output } => {
            let (x, y) = (mcq_file(&a)?, mcq_file(&b)?);
            match mcq_iso_search(&x, &y, budget(nb)?)?.isomorphism {
                Some(f) => {
                    emit(
                        &Document::Map(MapData {
                            values: f.values().to_vec(),
                        }),
                        &output,
                    )?;
                    Ok("isomorphic".into())
                }
                None => Err(Failure {
                    code: 1,
                    message: "not isomorphic".into(),
                }),
            }
        }
        Verb::Transport {
            file,
            seed,
            output,
            witness_out,
        } => {
            let t = tuple_file(&file)?;
            let w = EquivalenceWitness::seeded(t.setting(), seed);
            emit(&Document::Tuple((&transport_six_tuple(&t, &w)?).into()), &output)?;
            if witness_out.is_some() {
                emit(&Document::Witness((&w).into()), &witness_out)?;
            }
            Ok(format!("transported with seed {seed}"))
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(msg) => {
            eprintln!("{msg}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("{}", f.message);
            ExitCode::from(f.code)
        }
    }
}
