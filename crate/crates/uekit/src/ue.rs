//! Ultrafilter extensions of finite models.
//!
//! Over a finite base the ultrafilter universe is the principal list, one
//! point per state, named `pi_<state>`. Five constructions are provided:
//!
//! * `normal`           — Kripke; `R st` iff for all `X`, `m_box(X) ∈ s` implies `X ∈ t`
//! * `classical_nbhd`   — neighborhood; `N(s) = { hat(X) : m_n(X) ∈ s }`
//! * `contingency_ea`   — Kripke; `R st` iff some `X` has `m_nabla(X) ∈ s` and
//!   for all `Y`, `m_delta(Y) ∩ m_delta(X̄ ∪ Y) ∈ s` implies `Y ∈ t`
//! * `contingency_a`    — Kripke; `R st` iff for all `Y`, if `m_delta(X ∪ Y) ∈ s`
//!   for every `X`, then `Y ∈ t`
//! * `contingency_nbhd` — neighborhood; `N(s) = { hat(X) : m_c(X) ∈ s }`
//!
//! Quantifiers over subsets are evaluated by literal enumeration. The test
//! `m ∈ s` itself runs through one of two routes: the principal witness
//! shortcut (`w ∈ m`) or a lookup in the materialized member set. The routes
//! are cross-checked in the suite; the member-set route is the slower oracle.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::equivalence::{self, CheckReport, EquivError, Lang};
use crate::models::{disjoint_union, KripkeModel, Model, ModelKind, NeighborhoodModel, StateSet};
use crate::setops::{m_box, m_c, m_delta, m_n, m_nabla};
use crate::ultrafilters::{principal_list, Ultrafilter};

/// Largest base model; the constructions enumerate all `2^|S|` subsets.
pub const UE_CAP: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum UeKind {
    Normal,
    ClassicalNbhd,
    ContingencyEa,
    ContingencyA,
    ContingencyNbhd,
}

impl UeKind {
    pub const ALL: [UeKind; 5] = [
        UeKind::Normal,
        UeKind::ClassicalNbhd,
        UeKind::ContingencyEa,
        UeKind::ContingencyA,
        UeKind::ContingencyNbhd,
    ];

    /// The model kind this construction applies to.
    pub fn base_kind(&self) -> ModelKind {
        match self {
            UeKind::Normal | UeKind::ContingencyEa | UeKind::ContingencyA => ModelKind::Kripke,
            UeKind::ClassicalNbhd | UeKind::ContingencyNbhd => ModelKind::Neighborhood,
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            UeKind::Normal => "normal",
            UeKind::ClassicalNbhd => "classical_nbhd",
            UeKind::ContingencyEa => "contingency_ea",
            UeKind::ContingencyA => "contingency_a",
            UeKind::ContingencyNbhd => "contingency_nbhd",
        }
    }
}

impl fmt::Display for UeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for UeKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "normal" => Ok(UeKind::Normal),
            "classical_nbhd" => Ok(UeKind::ClassicalNbhd),
            "contingency_ea" => Ok(UeKind::ContingencyEa),
            "contingency_a" => Ok(UeKind::ContingencyA),
            "contingency_nbhd" => Ok(UeKind::ContingencyNbhd),
            other => Err(format!(
                "unknown ue kind '{other}' (expected normal, classical_nbhd, contingency_ea, contingency_a, or contingency_nbhd)"
            )),
        }
    }
}

/// How `m ∈ s` is decided during construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MembershipRoute {
    /// Principal shortcut: `m ∈ π_w` iff `w ∈ m`.
    Witness,
    /// Lookup in the materialized member set.
    MemberSet,
}

#[derive(Debug, Error)]
pub enum UeError {
    #[error("ue kind {kind} requires a {} model", kind.base_kind())]
    KindMismatch { kind: UeKind },
    #[error("model has {0} states; ultrafilter extensions are capped at {UE_CAP}")]
    TooLarge(usize),
    #[error("ultrafilter extension was not built from the given model")]
    ProvenanceMismatch,
    #[error(transparent)]
    Equivalence(#[from] EquivError),
}

/// An ultrafilter extension: the construction kind, the base model, and the
/// extension itself as an ordinary model over the `pi_*` points.
#[derive(Debug, Clone, PartialEq)]
pub struct UeModel {
    pub kind: UeKind,
    pub base: Model,
    pub model: Model,
}

impl UeModel {
    /// The ultrafilter universe, one principal point per base state.
    pub fn points(&self) -> Vec<Ultrafilter> {
        principal_list(self.base.states())
    }

    pub fn point_name(&self, w: usize) -> &str {
        &self.model.states()[w]
    }

    /// Same JSON schema as the underlying model kind, plus a `_ue_kind` tag.
    pub fn to_json_value(&self) -> serde_json::Value {
        let mut v = self.model.to_json_value();
        v.as_object_mut()
            .expect("model JSON is an object")
            .insert("_ue_kind".into(), serde_json::json!(self.kind.as_str()));
        v
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_json_value()).expect("ue JSON")
    }
}

fn member(route: MembershipRoute, point: &Ultrafilter, x: StateSet) -> bool {
    match route {
        MembershipRoute::Witness => point.contains(x),
        MembershipRoute::MemberSet => point
            .contains_via_members(x)
            .expect("member sets are materialized below the ue cap"),
    }
}

/// Builds the ultrafilter extension using the witness shortcut.
pub fn build_ue(m: &Model, kind: UeKind) -> Result<UeModel, UeError> {
    build_ue_via(m, kind, MembershipRoute::Witness)
}

/// Builds the ultrafilter extension deciding `m ∈ s` by the given route.
pub fn build_ue_via(m: &Model, kind: UeKind, route: MembershipRoute) -> Result<UeModel, UeError> {
    if m.kind() != kind.base_kind() {
        return Err(UeError::KindMismatch { kind });
    }
    let n = m.num_states();
    if n > UE_CAP {
        return Err(UeError::TooLarge(n));
    }
    let points = principal_list(m.states());
    let names: Vec<String> = m.states().iter().map(|s| format!("pi_{s}")).collect();
    let val_ue: BTreeMap<String, StateSet> = m
        .valuation()
        .iter()
        .map(|(atom, ext)| {
            let bits = StateSet::from_indices(
                n,
                (0..n).filter(|i| member(route, &points[*i], *ext)),
            );
            (atom.clone(), bits)
        })
        .collect();

    let model = match kind {
        UeKind::Normal | UeKind::ContingencyEa | UeKind::ContingencyA => {
            let k = m.as_kripke().expect("kind checked");
            let rel = match kind {
                UeKind::Normal => rel_normal(k, &points, route),
                UeKind::ContingencyEa => rel_contingency_ea(k, &points, route),
                UeKind::ContingencyA => rel_contingency_a(k, &points, route),
                _ => unreachable!(),
            };
            let pairs = rel
                .iter()
                .enumerate()
                .flat_map(|(s, row)| row.iter().map(move |t| (s, t)))
                .collect::<Vec<_>>();
            Model::Kripke(KripkeModel::new(names, pairs, val_ue))
        }
        UeKind::ClassicalNbhd | UeKind::ContingencyNbhd => {
            let nm = m.as_neighborhood().expect("kind checked");
            let families = nbhd_ue(nm, &points, route, kind);
            Model::Neighborhood(NeighborhoodModel::new(names, families, val_ue))
        }
    };

    Ok(UeModel { kind, base: m.clone(), model })
}

/// `R st` iff for all `X`, if `m_box(X) ∈ s` then `X ∈ t`.
fn rel_normal(m: &KripkeModel, points: &[Ultrafilter], route: MembershipRoute) -> Vec<StateSet> {
    let n = m.num_states();
    let box_tab: Vec<StateSet> = StateSet::all_subsets(n).map(|x| m_box(m, x)).collect();
    points
        .iter()
        .map(|s| {
            let mut row = StateSet::full(n);
            for x in StateSet::all_subsets(n) {
                if member(route, s, box_tab[x.bits() as usize]) {
                    // every t must contain X; principal t = π_v passes iff v ∈ X
                    row = row.intersect(restrict_to_members(points, route, x));
                }
            }
            row
        })
        .collect()
}

/// Points `π_v` with `X ∈ π_v`, decided by the route.
fn restrict_to_members(points: &[Ultrafilter], route: MembershipRoute, x: StateSet) -> StateSet {
    StateSet::from_indices(
        points.len(),
        (0..points.len()).filter(|v| member(route, &points[*v], x)),
    )
}

/// `R st` iff there is an `X` with `m_nabla(X) ∈ s` such that for all `Y`,
/// `m_delta(Y) ∩ m_delta(X̄ ∪ Y) ∈ s` implies `Y ∈ t`.
fn rel_contingency_ea(
    m: &KripkeModel,
    points: &[Ultrafilter],
    route: MembershipRoute,
) -> Vec<StateSet> {
    let n = m.num_states();
    let nabla_tab: Vec<StateSet> = StateSet::all_subsets(n).map(|x| m_nabla(m, x)).collect();
    let delta_tab: Vec<StateSet> = StateSet::all_subsets(n).map(|x| m_delta(m, x)).collect();
    points
        .iter()
        .map(|s| {
            let mut row = StateSet::empty(n);
            for x in StateSet::all_subsets(n) {
                if !member(route, s, nabla_tab[x.bits() as usize]) {
                    continue;
                }
                let xc = x.complement();
                let mut admitted = StateSet::full(n);
                for y in StateSet::all_subsets(n) {
                    let guard = delta_tab[y.bits() as usize]
                        .intersect(delta_tab[xc.union(y).bits() as usize]);
                    if member(route, s, guard) {
                        admitted = admitted.intersect(restrict_to_members(points, route, y));
                    }
                }
                row = row.union(admitted);
            }
            row
        })
        .collect()
}

/// `R st` iff for all `Y`, if `m_delta(X ∪ Y) ∈ s` for every `X`, then `Y ∈ t`.
fn rel_contingency_a(
    m: &KripkeModel,
    points: &[Ultrafilter],
    route: MembershipRoute,
) -> Vec<StateSet> {
    let n = m.num_states();
    let delta_tab: Vec<StateSet> = StateSet::all_subsets(n).map(|x| m_delta(m, x)).collect();
    points
        .iter()
        .map(|s| {
            let mut row = StateSet::full(n);
            for y in StateSet::all_subsets(n) {
                let forced = StateSet::all_subsets(n)
                    .all(|x| member(route, s, delta_tab[x.union(y).bits() as usize]));
                if forced {
                    row = row.intersect(restrict_to_members(points, route, y));
                }
            }
            row
        })
        .collect()
}

/// `N(s) = { hat(X) : m_op(X) ∈ s }` with `m_op` = `m_n` (classical) or
/// `m_c` (contingency).
fn nbhd_ue(
    m: &NeighborhoodModel,
    points: &[Ultrafilter],
    route: MembershipRoute,
    kind: UeKind,
) -> Vec<BTreeSet<StateSet>> {
    let n = m.num_states();
    points
        .iter()
        .map(|s| {
            let mut fam = BTreeSet::new();
            for x in StateSet::all_subsets(n) {
                let lifted = match kind {
                    UeKind::ClassicalNbhd => m_n(m, x),
                    UeKind::ContingencyNbhd => m_c(m, x),
                    _ => unreachable!(),
                };
                if member(route, s, lifted) {
                    fam.insert(crate::ultrafilters::hat(x, points));
                }
            }
            fam
        })
        .collect()
}

/// Per-state report of the canonical map `w ↦ π_w`: logical equivalence of
/// `(m, w)` and `(ue, π_w)` by the closure oracle, plus whether the map is a
/// structure isomorphism.
#[derive(Debug)]
pub struct CanonicalMapReport {
    pub equivalence: CheckReport,
    pub all_equivalent: bool,
    pub isomorphic: bool,
}

pub fn canonical_map_check(
    m: &Model,
    ue: &UeModel,
    lang: Lang,
) -> Result<CanonicalMapReport, UeError> {
    if *m != ue.base {
        return Err(UeError::ProvenanceMismatch);
    }
    let n = m.num_states();
    let union = disjoint_union(m, &ue.model).expect("same kind");
    let closure = equivalence::DefinableClosure::compute(&union, lang)?;
    let mut report = CheckReport::default();
    for w in 0..n {
        if let Some((_, witness)) = closure.separating(w, n + w) {
            report
                .violations
                .push(format!("state '{}' differs from its point", m.states()[w]));
            report
                .witness_formulas
                .insert(m.states()[w].clone(), witness.to_string());
        }
    }
    let all_equivalent = report.violations.is_empty();
    Ok(CanonicalMapReport { equivalence: report, all_equivalent, isomorphic: is_isomorphic(m, ue) })
}

/// Does `w ↦ π_w` carry the structure across exactly?
fn is_isomorphic(m: &Model, ue: &UeModel) -> bool {
    let n = m.num_states();
    let val_ok = m.valuation().iter().all(|(atom, ext)| {
        ue.model.atom_extension(atom).bits() == ext.bits()
    }) && ue.model.valuation().len() == m.valuation().len();
    if !val_ok {
        return false;
    }
    match (m, &ue.model) {
        (Model::Kripke(k), Model::Kripke(ku)) => {
            (0..n).all(|s| k.successors(s).bits() == ku.successors(s).bits())
        }
        (Model::Neighborhood(nm), Model::Neighborhood(nu)) => (0..n).all(|s| {
            let base: BTreeSet<u64> = nm.neighborhoods(s).iter().map(|x| x.bits()).collect();
            let ext: BTreeSet<u64> = nu.neighborhoods(s).iter().map(|x| x.bits()).collect();
            base == ext
        }),
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m0() -> Model {
        Model::Kripke(KripkeModel::build(&["0", "1", "2"], &[(0, 1), (0, 2)], &[("p", &[1])]))
    }

    fn m1() -> Model {
        Model::Kripke(KripkeModel::build(&["0", "1"], &[(0, 1)], &[("p", &[1])]))
    }

    fn n0() -> Model {
        Model::Neighborhood(NeighborhoodModel::build(
            &["0", "1"],
            &[&[&[1]], &[]],
            &[("p", &[1])],
        ))
    }

    fn rel_of(ue: &UeModel) -> Vec<(String, String)> {
        let k = ue.model.as_kripke().unwrap();
        k.rel_pairs()
            .map(|(a, b)| (k.state_name(a).to_string(), k.state_name(b).to_string()))
            .collect()
    }

    #[test]
    fn normal_ue_of_m0_is_isomorphic() {
        let ue = build_ue(&m0(), UeKind::Normal).unwrap();
        assert_eq!(
            rel_of(&ue),
            vec![
                ("pi_0".to_string(), "pi_1".to_string()),
                ("pi_0".to_string(), "pi_2".to_string())
            ]
        );
        assert!(is_isomorphic(&m0(), &ue));
        assert_eq!(ue.model.atom_extension("p").bits(), 0b010);
    }

    #[test]
    fn normal_ue_of_dead_end_has_empty_relation() {
        let m = Model::Kripke(KripkeModel::build(&["w"], &[], &[]));
        let ue = build_ue(&m, UeKind::Normal).unwrap();
        assert!(rel_of(&ue).is_empty());
    }

    #[test]
    fn contingency_ea_drops_m1_relation() {
        let ue = build_ue(&m1(), UeKind::ContingencyEa).unwrap();
        assert!(rel_of(&ue).is_empty());
        assert!(!is_isomorphic(&m1(), &ue));
    }

    #[test]
    fn contingency_ea_keeps_m0_fork() {
        let ue = build_ue(&m0(), UeKind::ContingencyEa).unwrap();
        assert!(rel_of(&ue).contains(&("pi_0".to_string(), "pi_1".to_string())));
    }

    #[test]
    fn contingency_a_on_dead_ends_is_empty() {
        let m = Model::Kripke(KripkeModel::build(&["a", "b"], &[], &[("p", &[0])]));
        let ue = build_ue(&m, UeKind::ContingencyA).unwrap();
        assert!(rel_of(&ue).is_empty());
    }

    #[test]
    fn classical_nbhd_ue_of_n0() {
        let ue = build_ue(&n0(), UeKind::ClassicalNbhd).unwrap();
        let nm = ue.model.as_neighborhood().unwrap();
        assert_eq!(nm.neighborhoods(0), vec![StateSet::singleton(2, 1)]);
        assert!(nm.neighborhoods(1).is_empty());
        assert!(is_isomorphic(&n0(), &ue));
    }

    #[test]
    fn classical_nbhd_ue_of_empty_neighborhoods() {
        let m = Model::Neighborhood(NeighborhoodModel::build(
            &["0", "1"],
            &[&[], &[]],
            &[("p", &[0])],
        ));
        let ue = build_ue(&m, UeKind::ClassicalNbhd).unwrap();
        let nm = ue.model.as_neighborhood().unwrap();
        assert!(nm.neighborhoods(0).is_empty() && nm.neighborhoods(1).is_empty());
    }

    #[test]
    fn contingency_nbhd_ue_of_n0_is_complement_closed() {
        let ue = build_ue(&n0(), UeKind::ContingencyNbhd).unwrap();
        let nm = ue.model.as_neighborhood().unwrap();
        let fam = nm.neighborhoods(0);
        assert!(fam.contains(&StateSet::singleton(2, 0)));
        assert!(fam.contains(&StateSet::singleton(2, 1)));
        for x in &fam {
            assert!(fam.contains(&x.complement()));
        }
    }

    #[test]
    fn kind_mismatch_is_rejected() {
        assert!(matches!(
            build_ue(&n0(), UeKind::Normal),
            Err(UeError::KindMismatch { .. })
        ));
        assert!(matches!(
            build_ue(&m0(), UeKind::ContingencyNbhd),
            Err(UeError::KindMismatch { .. })
        ));
    }

    #[test]
    fn routes_agree_on_small_models() {
        for kind in [UeKind::Normal, UeKind::ContingencyEa, UeKind::ContingencyA] {
            let a = build_ue_via(&m0(), kind, MembershipRoute::Witness).unwrap();
            let b = build_ue_via(&m0(), kind, MembershipRoute::MemberSet).unwrap();
            assert!(a.model == b.model, "route mismatch for {kind}");
        }
        for kind in [UeKind::ClassicalNbhd, UeKind::ContingencyNbhd] {
            let a = build_ue_via(&n0(), kind, MembershipRoute::Witness).unwrap();
            let b = build_ue_via(&n0(), kind, MembershipRoute::MemberSet).unwrap();
            assert!(a.model == b.model, "route mismatch for {kind}");
        }
    }

    #[test]
    fn ue_json_carries_kind_tag() {
        let ue = build_ue(&m1(), UeKind::ContingencyEa).unwrap();
        let v = ue.to_json_value();
        assert_eq!(v["_ue_kind"], "contingency_ea");
        assert_eq!(v["rel"].as_array().unwrap().len(), 0);
        // the tagged output loads back as an ordinary model
        let reloaded = Model::from_json_str(&ue.to_json_string()).unwrap();
        assert_eq!(reloaded.states(), ["pi_0", "pi_1"]);
    }

    #[test]
    fn provenance_mismatch_detected() {
        let ue = build_ue(&m0(), UeKind::Normal).unwrap();
        let err = canonical_map_check(&m1(), &ue, Lang::Box).unwrap_err();
        assert!(matches!(err, UeError::ProvenanceMismatch));
    }
}
