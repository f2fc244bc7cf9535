//! JSON file format. Every file is one object with a `format_version`
//! field and a `kind` tag; all tables are row-major with 0-based indices.
//! Maps on component pairs (`f3`, `f4`, `phi2`) are lists of per-component
//! square tables.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::affine_extension::{Certificate, EquivalenceWitness, SixTuple};
use crate::alexander_pairs::{AlexanderPair, AugmentedPair};
use crate::conditions::{ConditionVerdict, Slot};
use crate::error::{malformed, Error, Result, Verdict};
use crate::finite_algebra::{Codomain, Domain, FiniteGroup, FiniteRing, LeftModule, MapTable, RawGroup};
use crate::mcq::{FiniteMCQ, RawMcq};
use crate::quandle::FiniteQuandle;
use crate::setting::Setting;

pub const FORMAT_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupData {
    pub order: usize,
    pub table: Vec<Vec<usize>>,
    pub identity: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingData {
    pub order: usize,
    pub add: Vec<Vec<usize>>,
    pub mul: Vec<Vec<usize>>,
    pub zero: usize,
    pub one: usize,
}

/// A module over a ring stored next to it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleData {
    pub group: GroupData,
    /// `action[r][u] = r·u`
    pub action: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleFile {
    pub ring: RingData,
    pub module: ModuleData,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuandleData {
    pub order: usize,
    pub op: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct McqData {
    pub components: Vec<GroupData>,
    pub triangle: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairData {
    pub mcq: McqData,
    pub ring: RingData,
    pub f1: Vec<Vec<usize>>,
    pub f2: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CocycleData {
    pub mcq: McqData,
    pub ring: RingData,
    pub module: ModuleData,
    pub f1: Vec<Vec<usize>>,
    pub f2: Vec<Vec<usize>>,
    pub phi1: Vec<Vec<usize>>,
    pub phi2: Vec<Vec<Vec<usize>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TupleData {
    pub mcq: McqData,
    pub ring: RingData,
    pub module: ModuleData,
    pub f1: Vec<Vec<usize>>,
    pub f2: Vec<Vec<usize>>,
    pub f3: Vec<Vec<Vec<usize>>>,
    pub f4: Vec<Vec<Vec<usize>>>,
    pub phi1: Vec<Vec<usize>>,
    pub phi2: Vec<Vec<Vec<usize>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessData {
    pub h: Vec<usize>,
    pub eta: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateData {
    pub tuple: TupleData,
    pub reduced: CocycleData,
    pub witness: WitnessData,
    pub tuple_conditions: Vec<ConditionVerdict>,
    pub reduced_conditions: Vec<ConditionVerdict>,
    pub equivalence: Verdict,
    pub isomorphism: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairTables {
    pub f1: Vec<Vec<usize>>,
    pub f2: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairListData {
    pub mcq: McqData,
    pub ring: RingData,
    pub pairs: Vec<PairTables>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CocycleListData {
    pub cocycles: Vec<CocycleData>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TupleListData {
    pub tuples: Vec<TupleData>,
}

/// A map between element sets, e.g. an isomorphism.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapData {
    pub values: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Document {
    Group(GroupData),
    Ring(RingData),
    Module(ModuleFile),
    Quandle(QuandleData),
    Mcq(McqData),
    Pair(PairData),
    Cocycle(CocycleData),
    Tuple(TupleData),
    Witness(WitnessData),
    Certificate(CertificateData),
    PairList(PairListData),
    CocycleList(CocycleListData),
    TupleList(TupleListData),
    Map(MapData),
}

impl Document {
    pub fn kind(&self) -> &'static str {
        match self {
            Document::Group(_) => "group",
            Document::Ring(_) => "ring",
            Document::Module(_) => "module",
            Document::Quandle(_) => "quandle",
            Document::Mcq(_) => "mcq",
            Document::Pair(_) => "pair",
            Document::Cocycle(_) => "cocycle",
            Document::Tuple(_) => "tuple",
            Document::Witness(_) => "witness",
            Document::Certificate(_) => "certificate",
            Document::PairList(_) => "pair_list",
            Document::CocycleList(_) => "cocycle_list",
            Document::TupleList(_) => "tuple_list",
            Document::Map(_) => "map",
        }
    }
}

#[derive(Serialize, Deserialize)]
struct Envelope {
    format_version: u32,
    #[serde(flatten)]
    document: Document,
}

/// Pretty JSON with a trailing newline.
pub fn to_json(doc: &Document) -> String {
    let env = Envelope {
        format_version: FORMAT_VERSION,
        document: doc.clone(),
    };
    let mut s = serde_json::to_string_pretty(&env).expect("documents serialize");
    s.push('\n');
    s
}

pub fn parse(text: &str) -> Result<Document> {
    let v: serde_json::Value = serde_json::from_str(text)?;
    match v.get("format_version").and_then(serde_json::Value::as_u64) {
        Some(n) if n == u64::from(FORMAT_VERSION) => {}
        Some(n) => return Err(malformed(format!("unsupported format_version {n}"))),
        None => return Err(malformed("missing format_version")),
    }
    Ok(serde_json::from_value::<Envelope>(v)?.document)
}

/// Parses and checks the kind.
pub fn parse_kind(text: &str, kind: &str) -> Result<Document> {
    let doc = parse(text)?;
    if doc.kind() != kind {
        return Err(malformed(format!("expected a {kind} file, found {}", doc.kind())));
    }
    Ok(doc)
}

fn check_order(what: &str, order: usize, rows: usize) -> Result<()> {
    if order != rows {
        return Err(malformed(format!("{what} declares order {order} but its table has {rows} rows")));
    }
    Ok(())
}

fn axiom_to_malformed(what: &str) -> impl Fn(Error) -> Error + '_ {
    move |e| match e {
        Error::Axiom(v) => malformed(format!("{what} fails {v}")),
        other => other,
    }
}

impl GroupData {
    pub fn raw(&self) -> RawGroup {
        RawGroup {
            table: self.table.clone(),
            identity: self.identity,
        }
    }

    pub fn load(&self) -> Result<FiniteGroup> {
        check_order("group", self.order, self.table.len())?;
        FiniteGroup::from_table(&self.table, self.identity).map_err(axiom_to_malformed("group"))
    }
}

impl From<&FiniteGroup> for GroupData {
    fn from(g: &FiniteGroup) -> Self {
        Self {
            order: g.order(),
            table: g.table(),
            identity: g.identity(),
        }
    }
}

impl RingData {
    pub fn load(&self) -> Result<FiniteRing> {
        check_order("ring", self.order, self.add.len())?;
        FiniteRing::from_tables(&self.add, &self.mul, self.zero, self.one).map_err(axiom_to_malformed("ring"))
    }
}

impl From<&FiniteRing> for RingData {
    fn from(r: &FiniteRing) -> Self {
        Self {
            order: r.order(),
            add: r.add_table(),
            mul: r.mul_table(),
            zero: r.zero(),
            one: r.one(),
        }
    }
}

impl ModuleData {
    pub fn load(&self, ring: &FiniteRing) -> Result<LeftModule> {
        LeftModule::new(ring, self.group.load()?, &self.action).map_err(axiom_to_malformed("module"))
    }
}

impl From<&LeftModule> for ModuleData {
    fn from(m: &LeftModule) -> Self {
        Self {
            group: m.carrier().into(),
            action: m.action_table(),
        }
    }
}

impl QuandleData {
    pub fn load(&self) -> Result<FiniteQuandle> {
        check_order("quandle", self.order, self.op.len())?;
        FiniteQuandle::from_table(&self.op).map_err(axiom_to_malformed("quandle"))
    }
}

impl From<&FiniteQuandle> for QuandleData {
    fn from(q: &FiniteQuandle) -> Self {
        Self {
            order: q.order(),
            op: q.table(),
        }
    }
}

impl McqData {
    pub fn raw(&self) -> RawMcq {
        RawMcq {
            components: self.components.iter().map(GroupData::raw).collect(),
            triangle: self.triangle.clone(),
        }
    }

    /// The raw tables after checking the declared component orders.
    pub fn checked_raw(&self) -> Result<RawMcq> {
        for g in &self.components {
            check_order("component", g.order, g.table.len())?;
        }
        Ok(self.raw())
    }

    pub fn load(&self) -> Result<FiniteMCQ> {
        FiniteMCQ::from_raw(&self.checked_raw()?).map_err(axiom_to_malformed("mcq"))
    }
}

impl From<&RawMcq> for McqData {
    fn from(r: &RawMcq) -> Self {
        Self {
            components: r
                .components
                .iter()
                .map(|g| GroupData {
                    order: g.table.len(),
                    table: g.table.clone(),
                    identity: g.identity,
                })
                .collect(),
            triangle: r.triangle.clone(),
        }
    }
}

impl From<&FiniteMCQ> for McqData {
    fn from(x: &FiniteMCQ) -> Self {
        (&x.to_raw()).into()
    }
}

fn setting(mcq: &McqData, ring: &RingData, module: Option<&ModuleData>) -> Result<Arc<Setting>> {
    let (x, r) = (mcq.load()?, ring.load()?);
    match module {
        None => Ok(Setting::regular(x, r)),
        Some(m) => {
            let m = m.load(&r)?;
            Setting::new(x, r, m)
        }
    }
}

fn pair_map(s: &Setting, slot: Slot, rows: &[Vec<usize>]) -> Result<MapTable> {
    s.map_from_rows(slot, rows)
}

fn block_map(s: &Setting, slot: Slot, blocks: &[Vec<Vec<usize>>]) -> Result<MapTable> {
    let sizes = s.mcq().layout().sizes();
    if blocks.len() != sizes.len() {
        return Err(malformed(format!(
            "{} needs {} component tables, found {}",
            slot.name(),
            sizes.len(),
            blocks.len()
        )));
    }
    s.map_from_rows(slot, &blocks.concat())
}

impl PairData {
    /// The pair over `M = R`; tables are checked for shape only.
    pub fn load(&self) -> Result<AlexanderPair> {
        let s = setting(&self.mcq, &self.ring, None)?;
        let (f1, f2) = (pair_map(&s, Slot::F1, &self.f1)?, pair_map(&s, Slot::F2, &self.f2)?);
        AlexanderPair::new(s, f1, f2)
    }
}

impl From<&AlexanderPair> for PairData {
    fn from(p: &AlexanderPair) -> Self {
        let s = p.setting();
        Self {
            mcq: s.mcq().into(),
            ring: s.ring().into(),
            f1: p.f1().rows(),
            f2: p.f2().rows(),
        }
    }
}

impl CocycleData {
    pub fn load(&self) -> Result<AugmentedPair> {
        let s = setting(&self.mcq, &self.ring, Some(&self.module))?;
        AugmentedPair::new(
            s.clone(),
            pair_map(&s, Slot::F1, &self.f1)?,
            pair_map(&s, Slot::F2, &self.f2)?,
            pair_map(&s, Slot::Phi1, &self.phi1)?,
            block_map(&s, Slot::Phi2, &self.phi2)?,
        )
    }
}

impl From<&AugmentedPair> for CocycleData {
    fn from(c: &AugmentedPair) -> Self {
        let s = c.setting();
        Self {
            mcq: s.mcq().into(),
            ring: s.ring().into(),
            module: s.module().into(),
            f1: c.f1().rows(),
            f2: c.f2().rows(),
            phi1: c.phi1().rows(),
            phi2: c.phi2().blocks(),
        }
    }
}

impl TupleData {
    pub fn load(&self) -> Result<SixTuple> {
        let s = setting(&self.mcq, &self.ring, Some(&self.module))?;
        let maps = [
            pair_map(&s, Slot::F1, &self.f1)?,
            pair_map(&s, Slot::F2, &self.f2)?,
            block_map(&s, Slot::F3, &self.f3)?,
            block_map(&s, Slot::F4, &self.f4)?,
            pair_map(&s, Slot::Phi1, &self.phi1)?,
            block_map(&s, Slot::Phi2, &self.phi2)?,
        ];
        SixTuple::new(s, maps)
    }
}

impl From<&SixTuple> for TupleData {
    fn from(t: &SixTuple) -> Self {
        let s = t.setting();
        Self {
            mcq: s.mcq().into(),
            ring: s.ring().into(),
            module: s.module().into(),
            f1: t.map(Slot::F1).rows(),
            f2: t.map(Slot::F2).rows(),
            f3: t.map(Slot::F3).blocks(),
            f4: t.map(Slot::F4).blocks(),
            phi1: t.map(Slot::Phi1).rows(),
            phi2: t.map(Slot::Phi2).blocks(),
        }
    }
}

impl WitnessData {
    pub fn load(&self, s: &Setting) -> Result<EquivalenceWitness> {
        let h = s.point_map(false, self.h.clone()).map_err(|e| Error::InvalidWitness(e.to_string()))?;
        let eta = s.point_map(true, self.eta.clone()).map_err(|e| Error::InvalidWitness(e.to_string()))?;
        EquivalenceWitness::new(s, h, eta)
    }
}

impl From<&EquivalenceWitness> for WitnessData {
    fn from(w: &EquivalenceWitness) -> Self {
        Self {
            h: w.h.values().to_vec(),
            eta: w.eta.values().to_vec(),
        }
    }
}

impl CertificateData {
    pub fn load(&self) -> Result<Certificate> {
        let tuple = self.tuple.load()?;
        let reduced = self.reduced.load()?;
        let witness = self.witness.load(tuple.setting())?;
        let n = tuple.setting().mcq().order() * tuple.setting().module().order();
        let isomorphism = MapTable::new(Domain::Points(n), Codomain::Carrier(n), self.isomorphism.clone())?;
        Ok(Certificate {
            tuple,
            reduced,
            witness,
            tuple_conditions: self.tuple_conditions.clone(),
            reduced_conditions: self.reduced_conditions.clone(),
            equivalence: self.equivalence.clone(),
            isomorphism,
        })
    }
}

impl From<&Certificate> for CertificateData {
    fn from(c: &Certificate) -> Self {
        Self {
            tuple: (&c.tuple).into(),
            reduced: (&c.reduced).into(),
            witness: (&c.witness).into(),
            tuple_conditions: c.tuple_conditions.clone(),
            reduced_conditions: c.reduced_conditions.clone(),
            equivalence: c.equivalence.clone(),
            isomorphism: c.isomorphism.values().to_vec(),
        }
    }
}

impl PairListData {
    pub fn new(x: &FiniteMCQ, r: &FiniteRing, pairs: &[AlexanderPair]) -> Self {
        Self {
            mcq: x.into(),
            ring: r.into(),
            pairs: pairs
                .iter()
                .map(|p| PairTables {
                    f1: p.f1().rows(),
                    f2: p.f2().rows(),
                })
                .collect(),
        }
    }
}
