//! Finite Kripke and neighborhood models.
//!
//! Models are loaded from JSON (see [`Model::from_json_str`]), validated on
//! load, and immutable afterwards. State ordering is fixed by file order and
//! every [`StateSet`] is a bitmask over that ordering. Serialization is
//! canonical: states in file order, relation pairs and set members sorted
//! lexicographically by name.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use serde::Deserialize;
use thiserror::Error;

/// Widest supported model; set algebra packs one state per bit of a `u64`,
/// and several operations enumerate all `2^width` subsets.
pub const MAX_STATES: usize = 24;

/// A subset of a model's states, as a bitmask over the state ordering.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StateSet {
    bits: u64,
    width: u8,
}

impl StateSet {
    pub fn empty(width: usize) -> Self {
        assert!(width <= MAX_STATES, "state set too wide: {width}");
        StateSet { bits: 0, width: width as u8 }
    }

    pub fn full(width: usize) -> Self {
        Self::empty(width).complement()
    }

    pub fn singleton(width: usize, i: usize) -> Self {
        Self::empty(width).with(i)
    }

    pub fn from_indices(width: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let mut s = Self::empty(width);
        for i in indices {
            s = s.with(i);
        }
        s
    }

    /// Rebuilds a set from a raw bit pattern, e.g. a subset-enumeration index.
    pub fn from_bits(width: usize, bits: u64) -> Self {
        assert!(width <= MAX_STATES);
        assert!(bits & !mask(width) == 0, "bits out of range for width {width}");
        StateSet { bits, width: width as u8 }
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn width(&self) -> usize {
        self.width as usize
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    pub fn contains(&self, i: usize) -> bool {
        assert!(i < self.width());
        self.bits & (1 << i) != 0
    }

    #[must_use]
    pub fn with(&self, i: usize) -> Self {
        assert!(i < self.width());
        StateSet { bits: self.bits | (1 << i), width: self.width }
    }

    #[must_use]
    pub fn without(&self, i: usize) -> Self {
        assert!(i < self.width());
        StateSet { bits: self.bits & !(1 << i), width: self.width }
    }

    #[must_use]
    pub fn union(&self, other: Self) -> Self {
        self.check_width(other);
        StateSet { bits: self.bits | other.bits, width: self.width }
    }

    #[must_use]
    pub fn intersect(&self, other: Self) -> Self {
        self.check_width(other);
        StateSet { bits: self.bits & other.bits, width: self.width }
    }

    #[must_use]
    pub fn minus(&self, other: Self) -> Self {
        self.check_width(other);
        StateSet { bits: self.bits & !other.bits, width: self.width }
    }

    #[must_use]
    pub fn complement(&self) -> Self {
        StateSet { bits: !self.bits & mask(self.width()), width: self.width }
    }

    pub fn is_subset_of(&self, other: Self) -> bool {
        self.check_width(other);
        self.bits & !other.bits == 0
    }

    pub fn intersects(&self, other: Self) -> bool {
        self.check_width(other);
        self.bits & other.bits != 0
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        let bits = self.bits;
        (0..self.width()).filter(move |i| bits & (1 << i) != 0)
    }

    /// All `2^width` subsets in ascending bit order.
    pub fn all_subsets(width: usize) -> impl Iterator<Item = StateSet> {
        assert!(width <= MAX_STATES);
        (0..=mask(width)).map(move |bits| StateSet { bits, width: width as u8 })
    }

    fn check_width(&self, other: Self) {
        assert_eq!(self.width, other.width, "state-set width mismatch");
    }
}

fn mask(width: usize) -> u64 {
    if width == 0 {
        0
    } else {
        u64::MAX >> (64 - width)
    }
}

impl fmt::Debug for StateSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (n, i) in self.iter().enumerate() {
            if n > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}")
    }
}

#[derive(Debug, Error)]
pub enum ModelError {
    #[error("model schema error: {0}")]
    Schema(String),
    #[error("invalid model: {}", .0.join("; "))]
    Invalid(Vec<String>),
    #[error("model kind mismatch: expected {expected} model, found {found}")]
    KindMismatch { expected: ModelKind, found: ModelKind },
    #[error("unknown state '{0}'")]
    UnknownState(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModelKind {
    Kripke,
    Neighborhood,
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModelKind::Kripke => write!(f, "kripke"),
            ModelKind::Neighborhood => write!(f, "nbhd"),
        }
    }
}

/// A finite Kripke model: states, a binary accessibility relation, and a
/// valuation mapping atoms to state sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KripkeModel {
    states: Vec<String>,
    index: HashMap<String, usize>,
    succ: Vec<StateSet>,
    val: BTreeMap<String, StateSet>,
}

/// A finite neighborhood model: states, a neighborhood family per state, and
/// a valuation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NeighborhoodModel {
    states: Vec<String>,
    index: HashMap<String, usize>,
    nbhd: NbhdMap,
    val: BTreeMap<String, StateSet>,
}

/// Neighborhood assignment. Disjoint unions keep the two component maps and
/// answer membership by projection ("X is a neighborhood of a left state s
/// iff X restricted to the left states is a neighborhood of s"), so the
/// lifted families are never materialized.
#[derive(Debug, Clone, PartialEq, Eq)]
enum NbhdMap {
    Explicit(Vec<BTreeSet<StateSet>>),
    Lifted { split: usize, left: Box<NbhdMap>, right: Box<NbhdMap> },
}

impl NbhdMap {
    fn contains(&self, s: usize, x: StateSet) -> bool {
        match self {
            NbhdMap::Explicit(fams) => fams[s].contains(&x),
            NbhdMap::Lifted { split, left, right } => {
                let lo = StateSet::from_bits(*split, x.bits() & mask(*split));
                let hi = StateSet::from_bits(x.width() - split, x.bits() >> split);
                if s < *split {
                    left.contains(s, lo)
                } else {
                    right.contains(s - split, hi)
                }
            }
        }
    }

    /// Materializes the family at `s`; exponential for lifted maps.
    fn family(&self, s: usize, width: usize) -> Vec<StateSet> {
        match self {
            NbhdMap::Explicit(fams) => fams[s].iter().copied().collect(),
            NbhdMap::Lifted { .. } => StateSet::all_subsets(width)
                .filter(|x| self.contains(s, *x))
                .collect(),
        }
    }
}

macro_rules! common_model_accessors {
    () => {
        pub fn states(&self) -> &[String] {
            &self.states
        }

        pub fn num_states(&self) -> usize {
            self.states.len()
        }

        pub fn state_index(&self, name: &str) -> Option<usize> {
            self.index.get(name).copied()
        }

        pub fn state_name(&self, i: usize) -> &str {
            &self.states[i]
        }

        pub fn atoms(&self) -> impl Iterator<Item = &str> {
            self.val.keys().map(|k| k.as_str())
        }

        /// Extension of an atom; atoms absent from the valuation are false
        /// everywhere.
        pub fn atom_extension(&self, atom: &str) -> StateSet {
            self.val
                .get(atom)
                .copied()
                .unwrap_or_else(|| StateSet::empty(self.states.len()))
        }

        pub fn valuation(&self) -> &BTreeMap<String, StateSet> {
            &self.val
        }
    };
}

impl KripkeModel {
    common_model_accessors!();

    pub fn new(
        states: Vec<String>,
        rel: impl IntoIterator<Item = (usize, usize)>,
        val: BTreeMap<String, StateSet>,
    ) -> Self {
        let n = states.len();
        assert!(n <= MAX_STATES, "too many states");
        let index = build_index(&states);
        let mut succ = vec![StateSet::empty(n); n];
        for (a, b) in rel {
            succ[a] = succ[a].with(b);
        }
        for ext in val.values() {
            assert_eq!(ext.width(), n, "valuation width mismatch");
        }
        KripkeModel { states, index, succ, val }
    }

    /// Test-friendly constructor over string slices and index pairs.
    pub fn build(states: &[&str], rel: &[(usize, usize)], val: &[(&str, &[usize])]) -> Self {
        let n = states.len();
        let val = val
            .iter()
            .map(|(a, ws)| (a.to_string(), StateSet::from_indices(n, ws.iter().copied())))
            .collect();
        Self::new(states.iter().map(|s| s.to_string()).collect(), rel.iter().copied(), val)
    }

    pub fn successors(&self, s: usize) -> StateSet {
        self.succ[s]
    }

    pub fn rel_pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.num_states()).flat_map(move |a| self.succ[a].iter().map(move |b| (a, b)))
    }
}

impl NeighborhoodModel {
    common_model_accessors!();

    pub fn new(
        states: Vec<String>,
        nbhd: Vec<BTreeSet<StateSet>>,
        val: BTreeMap<String, StateSet>,
    ) -> Self {
        let n = states.len();
        assert!(n <= MAX_STATES, "too many states");
        assert_eq!(nbhd.len(), n);
        let index = build_index(&states);
        for fam in &nbhd {
            for x in fam {
                assert_eq!(x.width(), n, "neighborhood width mismatch");
            }
        }
        for ext in val.values() {
            assert_eq!(ext.width(), n, "valuation width mismatch");
        }
        NeighborhoodModel { states, index, nbhd: NbhdMap::Explicit(nbhd), val }
    }

    /// Test-friendly constructor; each neighborhood given as member indices.
    pub fn build(states: &[&str], nbhd: &[&[&[usize]]], val: &[(&str, &[usize])]) -> Self {
        let n = states.len();
        assert_eq!(nbhd.len(), n);
        let families = nbhd
            .iter()
            .map(|fam| {
                fam.iter()
                    .map(|xs| StateSet::from_indices(n, xs.iter().copied()))
                    .collect()
            })
            .collect();
        let val = val
            .iter()
            .map(|(a, ws)| (a.to_string(), StateSet::from_indices(n, ws.iter().copied())))
            .collect();
        Self::new(states.iter().map(|s| s.to_string()).collect(), families, val)
    }

    /// Is `x` a neighborhood of state `s`? Constant-time for explicit maps,
    /// projection for lifted ones.
    pub fn neighborhood_contains(&self, s: usize, x: StateSet) -> bool {
        assert_eq!(x.width(), self.num_states(), "state-set width mismatch");
        self.nbhd.contains(s, x)
    }

    /// The neighborhood family of `s`, materialized.
    pub fn neighborhoods(&self, s: usize) -> Vec<StateSet> {
        self.nbhd.family(s, self.num_states())
    }

    pub fn is_lifted(&self) -> bool {
        matches!(self.nbhd, NbhdMap::Lifted { .. })
    }
}

fn build_index(states: &[String]) -> HashMap<String, usize> {
    states
        .iter()
        .enumerate()
        .map(|(i, s)| (s.clone(), i))
        .collect()
}

/// A model of either kind, for operations shared between them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Model {
    Kripke(KripkeModel),
    Neighborhood(NeighborhoodModel),
}

impl From<KripkeModel> for Model {
    fn from(m: KripkeModel) -> Self {
        Model::Kripke(m)
    }
}

impl From<NeighborhoodModel> for Model {
    fn from(m: NeighborhoodModel) -> Self {
        Model::Neighborhood(m)
    }
}

impl Model {
    pub fn kind(&self) -> ModelKind {
        match self {
            Model::Kripke(_) => ModelKind::Kripke,
            Model::Neighborhood(_) => ModelKind::Neighborhood,
        }
    }

    pub fn states(&self) -> &[String] {
        match self {
            Model::Kripke(m) => m.states(),
            Model::Neighborhood(m) => m.states(),
        }
    }

    pub fn num_states(&self) -> usize {
        self.states().len()
    }

    pub fn state_index(&self, name: &str) -> Option<usize> {
        match self {
            Model::Kripke(m) => m.state_index(name),
            Model::Neighborhood(m) => m.state_index(name),
        }
    }

    pub fn atom_extension(&self, atom: &str) -> StateSet {
        match self {
            Model::Kripke(m) => m.atom_extension(atom),
            Model::Neighborhood(m) => m.atom_extension(atom),
        }
    }

    pub fn valuation(&self) -> &BTreeMap<String, StateSet> {
        match self {
            Model::Kripke(m) => m.valuation(),
            Model::Neighborhood(m) => m.valuation(),
        }
    }

    pub fn as_kripke(&self) -> Option<&KripkeModel> {
        match self {
            Model::Kripke(m) => Some(m),
            _ => None,
        }
    }

    pub fn as_neighborhood(&self) -> Option<&NeighborhoodModel> {
        match self {
            Model::Neighborhood(m) => Some(m),
            _ => None,
        }
    }
}

// ---------------------------------------------------------------------------
// Loading and validation

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawKripke {
    states: Vec<String>,
    rel: Vec<(String, String)>,
    #[serde(default)]
    val: BTreeMap<String, Vec<String>>,
    #[serde(rename = "_ue_kind", default)]
    _ue_kind: Option<String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawNeighborhood {
    states: Vec<String>,
    nbhd: BTreeMap<String, Vec<Vec<String>>>,
    #[serde(default)]
    val: BTreeMap<String, Vec<String>>,
    #[serde(rename = "_ue_kind", default)]
    _ue_kind: Option<String>,
}

fn atom_name_ok(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some('a'..='z'))
        && chars.all(|c| matches!(c, 'a'..='z' | '0'..='9' | '_'))
}

fn check_states(states: &[String], violations: &mut Vec<String>) -> HashMap<String, usize> {
    let mut index = HashMap::new();
    for (i, s) in states.iter().enumerate() {
        if index.insert(s.clone(), i).is_some() {
            violations.push(format!("duplicate state name '{s}'"));
        }
    }
    if states.len() > MAX_STATES {
        violations.push(format!("too many states ({}, max {MAX_STATES})", states.len()));
    }
    index
}

fn check_val(
    val: &BTreeMap<String, Vec<String>>,
    index: &HashMap<String, usize>,
    violations: &mut Vec<String>,
) {
    for (atom, members) in val {
        if !atom_name_ok(atom) {
            violations.push(format!(
                "atom name '{atom}' is not a valid identifier ([a-z][a-z0-9_]*)"
            ));
        }
        for m in members {
            if !index.contains_key(m) {
                violations.push(format!("val for atom '{atom}' references unknown state '{m}'"));
            }
        }
    }
}

fn validate_raw_kripke(raw: &RawKripke) -> Vec<String> {
    let mut violations = Vec::new();
    let index = check_states(&raw.states, &mut violations);
    for (a, b) in &raw.rel {
        for s in [a, b] {
            if !index.contains_key(s) {
                violations.push(format!("rel references unknown state '{s}'"));
            }
        }
    }
    check_val(&raw.val, &index, &mut violations);
    violations
}

fn validate_raw_neighborhood(raw: &RawNeighborhood) -> Vec<String> {
    let mut violations = Vec::new();
    let index = check_states(&raw.states, &mut violations);
    for (s, fam) in &raw.nbhd {
        if !index.contains_key(s) {
            violations.push(format!("nbhd key references unknown state '{s}'"));
        }
        for set in fam {
            for m in set {
                if !index.contains_key(m) {
                    violations.push(format!("nbhd of state '{s}' references unknown state '{m}'"));
                }
            }
        }
    }
    check_val(&raw.val, &index, &mut violations);
    violations
}

fn names_to_set(
    width: usize,
    index: &HashMap<String, usize>,
    names: &[String],
) -> StateSet {
    StateSet::from_indices(width, names.iter().map(|n| index[n]))
}

impl Model {
    /// Loads a model from JSON, detecting the kind from the `rel`/`nbhd` key.
    pub fn from_json_str(text: &str) -> Result<Model, ModelError> {
        let probe: serde_json::Value =
            serde_json::from_str(text).map_err(|e| ModelError::Schema(e.to_string()))?;
        let obj = probe
            .as_object()
            .ok_or_else(|| ModelError::Schema("top level must be an object".into()))?;
        match (obj.contains_key("rel"), obj.contains_key("nbhd")) {
            (true, false) => load_kripke(text).map(Model::Kripke),
            (false, true) => load_neighborhood(text).map(Model::Neighborhood),
            (true, true) => Err(ModelError::Schema("both 'rel' and 'nbhd' present".into())),
            (false, false) => Err(ModelError::Schema("expected a 'rel' or 'nbhd' field".into())),
        }
    }

    /// Loads a model and insists on the given kind.
    pub fn from_json_str_of_kind(text: &str, kind: ModelKind) -> Result<Model, ModelError> {
        let m = Model::from_json_str(text)?;
        if m.kind() != kind {
            return Err(ModelError::KindMismatch { expected: kind, found: m.kind() });
        }
        Ok(m)
    }

    /// Violations in a JSON model without constructing it. Schema-level
    /// problems (malformed JSON, wrong field types) are still errors.
    pub fn validate_json_str(text: &str) -> Result<Vec<String>, ModelError> {
        let probe: serde_json::Value =
            serde_json::from_str(text).map_err(|e| ModelError::Schema(e.to_string()))?;
        let obj = probe
            .as_object()
            .ok_or_else(|| ModelError::Schema("top level must be an object".into()))?;
        if obj.contains_key("nbhd") {
            let raw: RawNeighborhood =
                serde_json::from_str(text).map_err(|e| ModelError::Schema(e.to_string()))?;
            Ok(validate_raw_neighborhood(&raw))
        } else {
            let raw: RawKripke =
                serde_json::from_str(text).map_err(|e| ModelError::Schema(e.to_string()))?;
            Ok(validate_raw_kripke(&raw))
        }
    }

    /// Re-checks the type invariants of an in-memory model. Empty for every
    /// model built through the public constructors.
    pub fn validate(&self) -> Vec<String> {
        let mut violations = Vec::new();
        let n = self.num_states();
        {
            let mut seen = std::collections::HashSet::new();
            for s in self.states() {
                if !seen.insert(s) {
                    violations.push(format!("duplicate state name '{s}'"));
                }
            }
        }
        for (atom, ext) in self.valuation() {
            if ext.width() != n {
                violations.push(format!("val for atom '{atom}' has wrong width"));
            }
        }
        match self {
            Model::Kripke(m) => {
                for s in 0..n {
                    if m.successors(s).width() != n {
                        violations.push(format!("rel row for state '{}' has wrong width", m.state_name(s)));
                    }
                }
            }
            Model::Neighborhood(m) => {
                if !m.is_lifted() {
                    for s in 0..n {
                        for x in m.neighborhoods(s) {
                            if x.width() != n {
                                violations.push(format!(
                                    "nbhd of state '{}' has a set of wrong width",
                                    m.state_name(s)
                                ));
                            }
                        }
                    }
                }
            }
        }
        violations
    }
}

fn load_kripke(text: &str) -> Result<KripkeModel, ModelError> {
    let raw: RawKripke =
        serde_json::from_str(text).map_err(|e| ModelError::Schema(e.to_string()))?;
    let violations = validate_raw_kripke(&raw);
    if !violations.is_empty() {
        return Err(ModelError::Invalid(violations));
    }
    let n = raw.states.len();
    let index = build_index(&raw.states);
    let rel = raw.rel.iter().map(|(a, b)| (index[a], index[b]));
    let rel: Vec<_> = rel.collect();
    let val = raw
        .val
        .iter()
        .map(|(a, ms)| (a.clone(), names_to_set(n, &index, ms)))
        .collect();
    Ok(KripkeModel::new(raw.states, rel, val))
}

fn load_neighborhood(text: &str) -> Result<NeighborhoodModel, ModelError> {
    let raw: RawNeighborhood =
        serde_json::from_str(text).map_err(|e| ModelError::Schema(e.to_string()))?;
    let violations = validate_raw_neighborhood(&raw);
    if !violations.is_empty() {
        return Err(ModelError::Invalid(violations));
    }
    let n = raw.states.len();
    let index = build_index(&raw.states);
    let mut families = vec![BTreeSet::new(); n];
    for (s, fam) in &raw.nbhd {
        let si = index[s];
        for set in fam {
            families[si].insert(names_to_set(n, &index, set));
        }
    }
    let val = raw
        .val
        .iter()
        .map(|(a, ms)| (a.clone(), names_to_set(n, &index, ms)))
        .collect();
    Ok(NeighborhoodModel::new(raw.states, families, val))
}

// ---------------------------------------------------------------------------
// Canonical serialization

fn set_to_sorted_names(states: &[String], x: StateSet) -> Vec<String> {
    let mut names: Vec<String> = x.iter().map(|i| states[i].clone()).collect();
    names.sort();
    names
}

fn val_to_json(states: &[String], val: &BTreeMap<String, StateSet>) -> serde_json::Value {
    let mut map = serde_json::Map::new();
    for (atom, ext) in val {
        map.insert(atom.clone(), serde_json::json!(set_to_sorted_names(states, *ext)));
    }
    serde_json::Value::Object(map)
}

impl Model {
    pub fn to_json_value(&self) -> serde_json::Value {
        match self {
            Model::Kripke(m) => {
                let mut pairs: Vec<(String, String)> = m
                    .rel_pairs()
                    .map(|(a, b)| (m.states[a].clone(), m.states[b].clone()))
                    .collect();
                pairs.sort();
                serde_json::json!({
                    "states": m.states,
                    "rel": pairs,
                    "val": val_to_json(&m.states, &m.val),
                })
            }
            Model::Neighborhood(m) => {
                let mut nbhd = serde_json::Map::new();
                for s in 0..m.num_states() {
                    let mut fams: Vec<Vec<String>> = m
                        .neighborhoods(s)
                        .into_iter()
                        .map(|x| set_to_sorted_names(&m.states, x))
                        .collect();
                    fams.sort();
                    nbhd.insert(m.states[s].clone(), serde_json::json!(fams));
                }
                serde_json::json!({
                    "states": m.states,
                    "nbhd": nbhd,
                    "val": val_to_json(&m.states, &m.val),
                })
            }
        }
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_json_value()).expect("model JSON")
    }
}

// ---------------------------------------------------------------------------
// Disjoint union

/// Renames states apart with `L:`/`R:` prefixes and unites the structure.
/// For neighborhood models the union family at a left state s is
/// `{ X : X ∩ S1 ∈ N1(s) }`, kept as a membership test rather than a set list
/// (symmetrically on the right).
pub fn disjoint_union(m1: &Model, m2: &Model) -> Result<Model, ModelError> {
    if m1.kind() != m2.kind() {
        return Err(ModelError::KindMismatch { expected: m1.kind(), found: m2.kind() });
    }
    let split = m1.num_states();
    let n = split + m2.num_states();
    assert!(n <= MAX_STATES, "union too large");
    let states: Vec<String> = m1
        .states()
        .iter()
        .map(|s| format!("L:{s}"))
        .chain(m2.states().iter().map(|s| format!("R:{s}")))
        .collect();

    let lift_left = |x: StateSet| StateSet::from_bits(n, x.bits());
    let lift_right = |x: StateSet| StateSet::from_bits(n, x.bits() << split);

    let mut val: BTreeMap<String, StateSet> = BTreeMap::new();
    let atoms: BTreeSet<&str> = m1
        .valuation()
        .keys()
        .chain(m2.valuation().keys())
        .map(|s| s.as_str())
        .collect();
    for atom in atoms {
        let ext = lift_left(m1.atom_extension(atom)).union(lift_right(m2.atom_extension(atom)));
        val.insert(atom.to_string(), ext);
    }

    match (m1, m2) {
        (Model::Kripke(k1), Model::Kripke(k2)) => {
            let rel = k1
                .rel_pairs()
                .chain(k2.rel_pairs().map(|(a, b)| (a + split, b + split)));
            let rel: Vec<_> = rel.collect();
            Ok(Model::Kripke(KripkeModel::new(states, rel, val)))
        }
        (Model::Neighborhood(n1), Model::Neighborhood(n2)) => {
            let index = build_index(&states);
            let nbhd = NbhdMap::Lifted {
                split,
                left: Box::new(n1.nbhd.clone()),
                right: Box::new(n2.nbhd.clone()),
            };
            Ok(Model::Neighborhood(NeighborhoodModel { states, index, nbhd, val }))
        }
        _ => unreachable!("kind checked above"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) const M0_JSON: &str =
        r#"{"states":["0","1","2"],"rel":[["0","1"],["0","2"]],"val":{"p":["1"]}}"#;

    #[test]
    fn state_set_basics() {
        let s = StateSet::from_indices(3, [0, 2]);
        assert!(s.contains(0) && !s.contains(1) && s.contains(2));
        assert_eq!(s.complement(), StateSet::singleton(3, 1));
        assert_eq!(s.len(), 2);
        assert_eq!(StateSet::all_subsets(3).count(), 8);
        assert_eq!(StateSet::full(0), StateSet::empty(0));
    }

    #[test]
    fn loads_m0() {
        let m = Model::from_json_str(M0_JSON).unwrap();
        assert_eq!(m.kind(), ModelKind::Kripke);
        assert_eq!(m.states(), ["0", "1", "2"]);
        let k = m.as_kripke().unwrap();
        assert_eq!(k.successors(0), StateSet::from_indices(3, [1, 2]));
        assert_eq!(k.successors(1), StateSet::empty(3));
        assert_eq!(m.atom_extension("p"), StateSet::singleton(3, 1));
        assert!(m.validate().is_empty());
    }

    #[test]
    fn loads_minimal_dead_end() {
        let m = Model::from_json_str(r#"{"states":["a"],"rel":[],"val":{}}"#).unwrap();
        assert_eq!(m.num_states(), 1);
        assert!(m.as_kripke().unwrap().successors(0).is_empty());
    }

    #[test]
    fn rejects_unknown_state_in_rel() {
        let err = Model::from_json_str(r#"{"states":["0"],"rel":[["0","9"]],"val":{}}"#)
            .unwrap_err();
        match err {
            ModelError::Invalid(v) => {
                assert_eq!(v, vec!["rel references unknown state '9'".to_string()]);
            }
            other => panic!("expected Invalid, got {other:?}"),
        }
    }

    #[test]
    fn rejects_unknown_state_in_val() {
        let err = Model::from_json_str(r#"{"states":["0"],"rel":[],"val":{"p":["7"]}}"#)
            .unwrap_err();
        match err {
            ModelError::Invalid(v) => {
                assert_eq!(v.len(), 1);
                assert!(v[0].contains("'p'") && v[0].contains("'7'"), "{v:?}");
            }
            other => panic!("expected Invalid, got {other:?}"),
        }
    }

    #[test]
    fn rejects_duplicate_state() {
        let err =
            Model::from_json_str(r#"{"states":["a","a"],"rel":[],"val":{}}"#).unwrap_err();
        assert!(matches!(err, ModelError::Invalid(_)));
    }

    #[test]
    fn validate_json_reports_without_failing() {
        let v = Model::validate_json_str(r#"{"states":["0"],"rel":[["0","9"]],"val":{}}"#)
            .unwrap();
        assert_eq!(v, vec!["rel references unknown state '9'".to_string()]);
        let ok = Model::validate_json_str(M0_JSON).unwrap();
        assert!(ok.is_empty());
    }

    #[test]
    fn union_of_singletons_has_empty_relation() {
        let a = Model::Kripke(KripkeModel::build(&["x"], &[], &[]));
        let b = Model::Kripke(KripkeModel::build(&["y"], &[], &[]));
        let u = disjoint_union(&a, &b).unwrap();
        assert_eq!(u.states(), ["L:x", "R:y"]);
        assert!(u.as_kripke().unwrap().rel_pairs().next().is_none());
    }

    #[test]
    fn union_kind_mismatch() {
        let a = Model::Kripke(KripkeModel::build(&["x"], &[], &[]));
        let b = Model::Neighborhood(NeighborhoodModel::build(&["y"], &[&[]], &[]));
        assert!(matches!(disjoint_union(&a, &b), Err(ModelError::KindMismatch { .. })));
    }

    #[test]
    fn lifted_union_membership_projects() {
        let n1 = NeighborhoodModel::build(&["0", "1"], &[&[&[1]], &[]], &[("p", &[1])]);
        let n2 = NeighborhoodModel::build(&["a"], &[&[&[0]]], &[]);
        let u = disjoint_union(&Model::Neighborhood(n1), &Model::Neighborhood(n2)).unwrap();
        let un = u.as_neighborhood().unwrap();
        // left state 0 has neighborhood {1}; any union set meeting S1 in {1} counts
        assert!(un.neighborhood_contains(0, StateSet::from_indices(3, [1])));
        assert!(un.neighborhood_contains(0, StateSet::from_indices(3, [1, 2])));
        assert!(!un.neighborhood_contains(0, StateSet::from_indices(3, [0, 1])));
        // right state a has neighborhood {a}
        assert!(un.neighborhood_contains(2, StateSet::from_indices(3, [2])));
        assert!(un.neighborhood_contains(2, StateSet::from_indices(3, [0, 2])));
        assert!(!un.neighborhood_contains(2, StateSet::from_indices(3, [0])));
        assert_eq!(un.neighborhoods(0).len(), 2);
    }

    #[test]
    fn canonical_serialization_round_trips() {
        let m = Model::from_json_str(M0_JSON).unwrap();
        let text = m.to_json_string();
        let again = Model::from_json_str(&text).unwrap();
        assert!(m == again);
        assert_eq!(text, again.to_json_string());
    }
}
