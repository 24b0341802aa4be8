//! Seeded property-law battery: random model/formula generators plus one
//! runner per law. The CLI `suite` command and the acceptance tests both run
//! these; everything is deterministic for a fixed seed.

use rand::{Rng, SeedableRng};
use serde::Serialize;

use crate::equivalence::{
    check_delta_saturation, check_nabla_saturation, enumerate_fragment, equivalence_transfer,
    kripke_bisimilar, logically_equivalent, Lang,
};
use crate::models::{disjoint_union, KripkeModel, Model, NeighborhoodModel, StateSet};
use crate::setops::{extension, m_c, m_nabla};
use crate::syntax::Formula;
use crate::ue::{build_ue, build_ue_via, canonical_map_check, MembershipRoute, UeKind};
use crate::ultrafilters::{
    all_ultrafilters, check_ultrafilter, extend_to_ultrafilter, has_fip, hat, principal_list,
    SetFamily,
};

/// The generators use a fixed-algorithm RNG so that a seed pins the whole
/// battery byte-for-byte across builds.
pub type SuiteRng = rand_chacha::ChaCha8Rng;

pub fn suite_rng(seed: u64) -> SuiteRng {
    SuiteRng::seed_from_u64(seed)
}

#[derive(Debug, Clone, Copy)]
pub struct SuiteConfig {
    pub seed: u64,
    pub count: usize,
    pub max_states: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig { seed: 0, count: 100, max_states: 5 }
    }
}

#[derive(Debug, Serialize)]
pub struct LawReport {
    pub law: String,
    pub cases: usize,
    pub failures: usize,
    pub first_counterexample: Option<String>,
}

impl LawReport {
    fn new(law: &str) -> Self {
        LawReport { law: law.to_string(), cases: 0, failures: 0, first_counterexample: None }
    }

    fn case(&mut self, ok: bool, counterexample: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures += 1;
            if self.first_counterexample.is_none() {
                self.first_counterexample = Some(counterexample());
            }
        }
    }

    pub fn ok(&self) -> bool {
        self.failures == 0
    }
}

#[derive(Debug, Serialize)]
pub struct SuiteReport {
    pub seed: u64,
    pub count: usize,
    pub max_states: usize,
    pub laws: Vec<LawReport>,
    /// How often the two Kripke contingency constructions produced different
    /// relations on the sampled corpus. Reported, not asserted.
    pub ea_vs_a_relation_differences: usize,
    pub passed: bool,
}

impl SuiteReport {
    pub fn first_failure(&self) -> Option<&LawReport> {
        self.laws.iter().find(|l| !l.ok())
    }
}

/// Fault injection for exercising the suite's failure path.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mutant {
    /// `m_delta` with the final complement dropped.
    MDeltaNoComplement,
}

#[derive(Clone, Copy)]
pub struct OpTable {
    pub m_delta: fn(&KripkeModel, StateSet) -> StateSet,
}

impl OpTable {
    pub fn correct() -> Self {
        OpTable { m_delta: crate::setops::m_delta }
    }

    pub fn with_mutant(mutant: Option<Mutant>) -> Self {
        match mutant {
            None => Self::correct(),
            Some(Mutant::MDeltaNoComplement) => OpTable { m_delta: |m, x| m_nabla(m, x) },
        }
    }
}

// ---------------------------------------------------------------------------
// Random generators

const ATOM_NAMES: [&str; 3] = ["p", "q", "r"];

pub fn random_subset(rng: &mut SuiteRng, width: usize) -> StateSet {
    let bits = if width == 0 { 0 } else { rng.random::<u64>() & (u64::MAX >> (64 - width)) };
    StateSet::from_bits(width, bits)
}

pub fn random_kripke(rng: &mut SuiteRng, max_states: usize, max_atoms: usize) -> KripkeModel {
    let n = rng.random_range(1..=max_states.max(1));
    let density = [0.15, 0.3, 0.5, 0.8][rng.random_range(0..4)];
    let states: Vec<String> = (0..n).map(|i| i.to_string()).collect();
    let mut rel = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if rng.random_bool(density) {
                rel.push((a, b));
            }
        }
    }
    let atoms = rng.random_range(1..=max_atoms.clamp(1, ATOM_NAMES.len()));
    let val = (0..atoms)
        .map(|i| (ATOM_NAMES[i].to_string(), random_subset(rng, n)))
        .collect();
    KripkeModel::new(states, rel, val)
}

pub fn random_neighborhood(
    rng: &mut SuiteRng,
    max_states: usize,
    max_atoms: usize,
) -> NeighborhoodModel {
    let n = rng.random_range(1..=max_states.max(1));
    let states: Vec<String> = (0..n).map(|i| i.to_string()).collect();
    let nbhd = (0..n)
        .map(|_| {
            let sets = rng.random_range(0..=3);
            (0..sets).map(|_| random_subset(rng, n)).collect()
        })
        .collect();
    let atoms = rng.random_range(1..=max_atoms.clamp(1, ATOM_NAMES.len()));
    let val = (0..atoms)
        .map(|i| (ATOM_NAMES[i].to_string(), random_subset(rng, n)))
        .collect();
    NeighborhoodModel::new(states, nbhd, val)
}

/// Random formula of modal depth at most `modal_budget`; `allow_diamond` is
/// off when the formula must evaluate on neighborhood models.
pub fn random_formula(
    rng: &mut SuiteRng,
    atoms: usize,
    modal_budget: usize,
    allow_diamond: bool,
) -> Formula {
    fn go(rng: &mut SuiteRng, atoms: usize, modal: usize, size: usize, diamond: bool) -> Formula {
        if size == 0 || rng.random_bool(0.25) {
            return match rng.random_range(0..5) {
                0 => Formula::Top,
                1 => Formula::Bot,
                _ => Formula::atom(ATOM_NAMES[rng.random_range(0..atoms)]),
            };
        }
        let modal_ops = if modal == 0 {
            0
        } else if diamond {
            4
        } else {
            3
        };
        match rng.random_range(0..4 + modal_ops) {
            0 => Formula::not(go(rng, atoms, modal, size - 1, diamond)),
            1 => Formula::and(
                go(rng, atoms, modal, size / 2, diamond),
                go(rng, atoms, modal, size / 2, diamond),
            ),
            2 => Formula::or(
                go(rng, atoms, modal, size / 2, diamond),
                go(rng, atoms, modal, size / 2, diamond),
            ),
            3 => Formula::implies(
                go(rng, atoms, modal, size / 2, diamond),
                go(rng, atoms, modal, size / 2, diamond),
            ),
            4 => Formula::nabla(go(rng, atoms, modal - 1, size - 1, diamond)),
            5 => Formula::delta(go(rng, atoms, modal - 1, size - 1, diamond)),
            6 => Formula::boxed(go(rng, atoms, modal - 1, size - 1, diamond)),
            _ => Formula::diamond(go(rng, atoms, modal - 1, size - 1, diamond)),
        }
    }
    let atoms = atoms.clamp(1, ATOM_NAMES.len());
    go(rng, atoms, modal_budget, 12, allow_diamond)
}

fn cx(parts: &[String]) -> String {
    parts.join(" ")
}

fn model_cx(m: &Model) -> String {
    m.to_json_value().to_string()
}

// ---------------------------------------------------------------------------
// Laws

/// For each base size 1..=4 the enumerated ultrafilters are exactly the
/// principal ones, one per state, in state order, and each passes the axiom
/// check.
pub fn law_ultrafilter_enumeration() -> LawReport {
    let mut report = LawReport::new("ultrafilter_enumeration");
    for n in 1..=4usize {
        let base: Vec<String> = (0..n).map(|i| i.to_string()).collect();
        let ok = match all_ultrafilters(&base) {
            Ok(all) => {
                all.len() == n
                    && all.iter().enumerate().all(|(w, uf)| {
                        uf.witness() == w && check_ultrafilter(&uf.family()).is_empty()
                    })
            }
            Err(_) => false,
        };
        report.case(ok, || format!("base size {n}"));
    }
    report
}

/// The set-operator algebra: the intersection and mixing laws, the complement
/// dualities, and the hat embedding.
pub fn law_m_operator_laws(
    rng: &mut SuiteRng,
    count: usize,
    max_states: usize,
    ops: &OpTable,
) -> LawReport {
    let mut report = LawReport::new("m_operator_laws");
    let cap = max_states.min(8);
    for _ in 0..count {
        let km = random_kripke(rng, cap, 2);
        let n = km.num_states();
        let (x, y, xp) = (
            random_subset(rng, n),
            random_subset(rng, n),
            random_subset(rng, n),
        );
        let delta = ops.m_delta;

        let delta_intersection = delta(&km, x)
            .intersect(delta(&km, y))
            .is_subset_of(delta(&km, x.intersect(y)));
        let nabla_mixing = m_nabla(&km, x.intersect(y))
            .intersect(m_nabla(&km, xp.intersect(y.complement())))
            .is_subset_of(m_nabla(&km, y));
        let delta_complements_nabla = delta(&km, x) == m_nabla(&km, x).complement();
        let nabla_self_dual = m_nabla(&km, x) == m_nabla(&km, x.complement());

        let universe = principal_list(km.states());
        let hat_meet =
            hat(x.intersect(y), &universe) == hat(x, &universe).intersect(hat(y, &universe));
        let hat_complement = hat(x.complement(), &universe) == hat(x, &universe).complement();

        let nm = random_neighborhood(rng, cap, 2);
        let z = random_subset(rng, nm.num_states());
        let c_self_dual = m_c(&nm, z) == m_c(&nm, z.complement());

        let ok = delta_intersection
            && nabla_mixing
            && delta_complements_nabla
            && nabla_self_dual
            && hat_meet
            && hat_complement
            && c_self_dual;
        report.case(ok, || {
            cx(&[
                format!("kripke={}", Model::Kripke(km.clone()).to_json_value()),
                format!("x={x:?} y={y:?} x'={xp:?}"),
                format!(
                    "delta_intersection={delta_intersection} nabla_mixing={nabla_mixing} \
                     delta_complements_nabla={delta_complements_nabla} \
                     nabla_self_dual={nabla_self_dual} hat_meet={hat_meet} \
                     hat_complement={hat_complement} c_self_dual={c_self_dual}"
                ),
            ])
        });
    }
    report
}

/// Contingency is definable through possibility on Kripke models: `?φ`
/// matches `<>φ & <>~φ` and `#φ` matches `~?φ`, extension for extension.
pub fn law_semantics_coherence(rng: &mut SuiteRng, count: usize, max_states: usize) -> LawReport {
    let mut report = LawReport::new("semantics_coherence");
    for _ in 0..count {
        let m = Model::Kripke(random_kripke(rng, max_states, 2));
        let phi = random_formula(rng, 2, 3, true);
        let nabla = Formula::nabla(phi.clone());
        let delta = Formula::delta(phi.clone());
        let ok = extension(&m, &nabla).unwrap() == extension(&m, &nabla.nabla_to_box()).unwrap()
            && extension(&m, &delta).unwrap()
                == extension(&m, &Formula::not(nabla.clone())).unwrap()
            && extension(&m, &phi).unwrap() == extension(&m, &phi.nabla_to_box()).unwrap();
        report.case(ok, || cx(&[model_cx(&m), format!("phi={phi}")]));
    }
    report
}

/// Satisfaction at a state is unchanged by embedding the model into a
/// disjoint union, for every depth-2 fragment formula.
pub fn law_disjoint_union_transfer(
    rng: &mut SuiteRng,
    count: usize,
    max_states: usize,
) -> LawReport {
    let mut report = LawReport::new("disjoint_union_transfer");
    // context is (m1, m2, union): widths add up to at most the closure cap
    let cap = max_states.min(4);
    for case in 0..count {
        let (m1, m2): (Model, Model) = if case % 2 == 0 {
            (
                Model::Kripke(random_kripke(rng, cap, 2)),
                Model::Kripke(random_kripke(rng, cap, 2)),
            )
        } else {
            (
                Model::Neighborhood(random_neighborhood(rng, cap, 2)),
                Model::Neighborhood(random_neighborhood(rng, cap, 2)),
            )
        };
        let union = disjoint_union(&m1, &m2).unwrap();
        let split = m1.num_states();
        let mut ok = true;
        for lang in [Lang::Box, Lang::Nabla] {
            let frag = enumerate_fragment(&[&m1, &m2, &union], lang, 2).unwrap();
            for f in &frag {
                for w in 0..m1.num_states() {
                    ok &= f.extensions[0].contains(w) == f.extensions[2].contains(w);
                }
                for w in 0..m2.num_states() {
                    ok &= f.extensions[1].contains(w) == f.extensions[2].contains(split + w);
                }
            }
        }
        report.case(ok, || cx(&[model_cx(&m1), model_cx(&m2)]));
    }
    report
}

/// Extending a family with the finite intersection property yields a genuine
/// ultrafilter containing it.
pub fn law_ultrafilter_theorem(rng: &mut SuiteRng, count: usize, max_states: usize) -> LawReport {
    let mut report = LawReport::new("ultrafilter_theorem");
    let cap = max_states.min(8);
    for _ in 0..count {
        let n = rng.random_range(1..=cap);
        let base: Vec<String> = (0..n).map(|i| i.to_string()).collect();
        let point = rng.random_range(0..n);
        let sets: Vec<StateSet> = (0..rng.random_range(0..=4))
            .map(|_| random_subset(rng, n).with(point))
            .collect();
        let fam = SetFamily::new(base, sets);
        let ok = has_fip(&fam)
            && match extend_to_ultrafilter(&fam) {
                Ok(uf) => {
                    fam.iter().all(|x| uf.contains(x))
                        && check_ultrafilter(&uf.family()).is_empty()
                }
                Err(_) => false,
            };
        report.case(ok, || format!("family around point {point}: {fam:?}"));
    }
    report
}

fn ue_lang(kind: UeKind) -> Lang {
    match kind {
        UeKind::Normal | UeKind::ClassicalNbhd => Lang::Box,
        _ => Lang::Nabla,
    }
}

fn random_model_for(rng: &mut SuiteRng, kind: UeKind, max_states: usize) -> Model {
    match kind.base_kind() {
        crate::models::ModelKind::Kripke => Model::Kripke(random_kripke(rng, max_states, 2)),
        crate::models::ModelKind::Neighborhood => {
            Model::Neighborhood(random_neighborhood(rng, max_states, 2))
        }
    }
}

/// Truth transfer along `w ↦ π_w` for one construction: every depth-3
/// fragment formula agrees between the model and its extension, and the
/// closure oracle confirms full equivalence.
pub fn law_truth_transfer(
    rng: &mut SuiteRng,
    kind: UeKind,
    count: usize,
    max_states: usize,
) -> LawReport {
    let mut report = LawReport::new(&format!("truth_transfer_{kind}"));
    let cap = max_states.min(6);
    let lang = ue_lang(kind);
    for _ in 0..count {
        let m = random_model_for(rng, kind, cap);
        let ue = build_ue(&m, kind).unwrap();
        let mut ok = true;
        let frag = enumerate_fragment(&[&m, &ue.model], lang, 3).unwrap();
        for f in &frag {
            for w in 0..m.num_states() {
                ok &= f.extensions[0].contains(w) == f.extensions[1].contains(w);
            }
        }
        let check = canonical_map_check(&m, &ue, lang).unwrap();
        ok &= check.all_equivalent;
        report.case(ok, || cx(&[format!("kind={kind}"), model_cx(&m)]));
    }
    report
}

/// On finite models the normal and classical constructions reproduce the
/// original structure exactly under `w ↦ π_w`.
pub fn law_finite_model_collapse(
    rng: &mut SuiteRng,
    count: usize,
    max_states: usize,
) -> LawReport {
    let mut report = LawReport::new("finite_model_collapse");
    let cap = max_states.min(6);
    for case in 0..count {
        let (m, kind) = if case % 2 == 0 {
            (Model::Kripke(random_kripke(rng, cap, 2)), UeKind::Normal)
        } else {
            (
                Model::Neighborhood(random_neighborhood(rng, cap, 2)),
                UeKind::ClassicalNbhd,
            )
        };
        let ue = build_ue(&m, kind).unwrap();
        let check = canonical_map_check(&m, &ue, ue_lang(kind)).unwrap();
        report.case(check.isomorphic && check.all_equivalent, || {
            cx(&[format!("kind={kind}"), model_cx(&m)])
        });
    }
    report
}

/// The two-state chain whose contingency extension drops its only edge while
/// keeping every state theory intact.
pub fn law_m1_regression() -> LawReport {
    let mut report = LawReport::new("m1_contingency_ea_regression");
    let m = Model::Kripke(KripkeModel::build(&["0", "1"], &[(0, 1)], &[("p", &[1])]));
    let ue = build_ue(&m, UeKind::ContingencyEa).unwrap();
    let relation_dropped = ue
        .model
        .as_kripke()
        .map(|k| k.rel_pairs().next().is_none())
        .unwrap_or(false);
    let check = canonical_map_check(&m, &ue, Lang::Nabla).unwrap();
    let frag = enumerate_fragment(&[&m, &ue.model], Lang::Nabla, 3).unwrap();
    let transfer = frag
        .iter()
        .all(|f| (0..2).all(|w| f.extensions[0].contains(w) == f.extensions[1].contains(w)));
    report.case(
        relation_dropped && check.all_equivalent && !check.isomorphic && transfer,
        || {
            format!(
                "rel_dropped={relation_dropped} equivalent={} transfer={transfer}",
                check.all_equivalent
            )
        },
    );
    report
}

/// The witness shortcut and the materialized member-set route build identical
/// extensions.
pub fn law_ue_route_crosscheck(rng: &mut SuiteRng, count: usize, max_states: usize) -> LawReport {
    let mut report = LawReport::new("ue_route_crosscheck");
    let cap = max_states.min(6);
    for case in 0..count {
        let kind = UeKind::ALL[case % UeKind::ALL.len()];
        let m = random_model_for(rng, kind, cap);
        let a = build_ue_via(&m, kind, MembershipRoute::Witness).unwrap();
        let b = build_ue_via(&m, kind, MembershipRoute::MemberSet).unwrap();
        report.case(a.model == b.model, || cx(&[format!("kind={kind}"), model_cx(&m)]));
    }
    report
}

const KRIPKE_TRANSFER_COMBOS: [(Lang, UeKind); 4] = [
    (Lang::Box, UeKind::Normal),
    (Lang::Nabla, UeKind::Normal),
    (Lang::Nabla, UeKind::ContingencyEa),
    (Lang::Nabla, UeKind::ContingencyA),
];

const NBHD_TRANSFER_COMBOS: [(Lang, UeKind); 3] = [
    (Lang::Box, UeKind::ClassicalNbhd),
    (Lang::Nabla, UeKind::ClassicalNbhd),
    (Lang::Nabla, UeKind::ContingencyNbhd),
];

/// Equivalence transfers to the extensions: the original points are
/// equivalent iff their images are, for every applicable language and
/// construction.
pub fn law_equivalence_transfer(
    rng: &mut SuiteRng,
    count: usize,
    max_states: usize,
) -> LawReport {
    let mut report = LawReport::new("equivalence_transfer");
    let cap = max_states.min(4);
    for case in 0..count {
        let kripke_side = case % 2 == 0;
        let (m1, m2): (Model, Model) = if kripke_side {
            (
                Model::Kripke(random_kripke(rng, cap, 2)),
                Model::Kripke(random_kripke(rng, cap, 2)),
            )
        } else {
            (
                Model::Neighborhood(random_neighborhood(rng, cap, 2)),
                Model::Neighborhood(random_neighborhood(rng, cap, 2)),
            )
        };
        let w1 = m1.states()[rng.random_range(0..m1.num_states())].clone();
        let w2 = m2.states()[rng.random_range(0..m2.num_states())].clone();
        let combos: &[(Lang, UeKind)] =
            if kripke_side { &KRIPKE_TRANSFER_COMBOS } else { &NBHD_TRANSFER_COMBOS };
        let mut ok = true;
        let mut detail = String::new();
        for (lang, kind) in combos {
            let (lhs, rhs) = equivalence_transfer(&m1, &w1, &m2, &w2, *lang, *kind).unwrap();
            if lhs != rhs {
                ok = false;
                detail = format!("lang={lang} kind={kind} lhs={lhs} rhs={rhs}");
                break;
            }
        }
        report.case(ok, || cx(&[detail.clone(), model_cx(&m1), model_cx(&m2)]));
    }
    report
}

/// Canonical single-atom Kripke models in a fixed enumeration order: sizes
/// one to three exhaustively, size four strided.
pub fn canonical_kripke_models(limit: usize) -> Vec<KripkeModel> {
    let mut out = Vec::new();
    'outer: for n in 1..=4usize {
        let rel_space = 1u64 << (n * n);
        let val_space = 1u64 << n;
        let stride = if n < 4 { 1 } else { 509 };
        let total = rel_space * val_space;
        let mut idx = 0u64;
        while idx < total {
            let rel_bits = idx / val_space;
            let val_bits = idx % val_space;
            let states: Vec<String> = (0..n).map(|i| i.to_string()).collect();
            let rel: Vec<(usize, usize)> = (0..n * n)
                .filter(|k| rel_bits & (1 << k) != 0)
                .map(|k| (k / n, k % n))
                .collect();
            let val =
                std::iter::once(("p".to_string(), StateSet::from_bits(n, val_bits))).collect();
            out.push(KripkeModel::new(states, rel, val));
            if out.len() >= limit {
                break 'outer;
            }
            idx += stride;
        }
    }
    out
}

/// The closure oracle and depth-2 formula enumeration agree on which state
/// pairs are equivalent, over the canonical single-atom corpus.
pub fn law_oracle_crosscheck(limit: usize) -> LawReport {
    let mut report = LawReport::new("oracle_crosscheck");
    for km in canonical_kripke_models(limit) {
        let m = Model::Kripke(km);
        let n = m.num_states();
        let mut ok = true;
        let mut detail = String::new();
        for lang in [Lang::Box, Lang::Nabla] {
            let frag = enumerate_fragment(&[&m], lang, 2).unwrap();
            for w1 in 0..n {
                for w2 in w1 + 1..n {
                    let by_enumeration = frag
                        .iter()
                        .all(|f| f.extensions[0].contains(w1) == f.extensions[0].contains(w2));
                    let by_closure = logically_equivalent(
                        &m,
                        m.states()[w1].as_str(),
                        &m,
                        m.states()[w2].as_str(),
                        lang,
                    )
                    .unwrap();
                    if by_enumeration != by_closure {
                        ok = false;
                        detail = format!(
                            "lang={lang} w1={w1} w2={w2} enumeration={by_enumeration} closure={by_closure}"
                        );
                    }
                }
            }
        }
        report.case(ok, || cx(&[detail.clone(), model_cx(&m)]));
    }
    report
}

/// Bisimilarity implies box-equivalence implies contingency-equivalence; on
/// finite Kripke models the first two coincide, which cross-checks partition
/// refinement against the closure oracle.
pub fn law_hennessy_milner(rng: &mut SuiteRng, count: usize, max_states: usize) -> LawReport {
    let mut report = LawReport::new("hennessy_milner");
    let cap = max_states.min(4);
    for _ in 0..count {
        let m1 = Model::Kripke(random_kripke(rng, cap, 2));
        let m2 = Model::Kripke(random_kripke(rng, cap, 2));
        let w1 = m1.states()[rng.random_range(0..m1.num_states())].clone();
        let w2 = m2.states()[rng.random_range(0..m2.num_states())].clone();
        let bisim = kripke_bisimilar(&m1, &w1, &m2, &w2).unwrap();
        let box_eq = logically_equivalent(&m1, &w1, &m2, &w2, Lang::Box).unwrap();
        let nabla_eq = logically_equivalent(&m1, &w1, &m2, &w2, Lang::Nabla).unwrap();
        let ok = (!bisim || box_eq) && (!box_eq || nabla_eq) && bisim == box_eq;
        report.case(ok, || {
            cx(&[
                format!("bisim={bisim} box_eq={box_eq} nabla_eq={nabla_eq} w1={w1} w2={w2}"),
                model_cx(&m1),
                model_cx(&m2),
            ])
        });
    }
    report
}

/// The named strictness pair: a reflexive point and a dead end agree on the
/// contingency language but differ on the box language and are not bisimilar.
pub fn law_hennessy_milner_named_pair() -> LawReport {
    let mut report = LawReport::new("hennessy_milner_named_pair");
    let r = Model::Kripke(KripkeModel::build(&["x"], &[(0, 0)], &[("p", &[0])]));
    let d = Model::Kripke(KripkeModel::build(&["x"], &[], &[("p", &[0])]));
    let nabla_eq = logically_equivalent(&r, "x", &d, "x", Lang::Nabla).unwrap();
    let box_eq = logically_equivalent(&r, "x", &d, "x", Lang::Box).unwrap();
    let bisim = kripke_bisimilar(&r, "x", &d, "x").unwrap();
    report.case(nabla_eq && !box_eq && !bisim, || {
        format!("nabla_eq={nabla_eq} box_eq={box_eq} bisim={bisim}")
    });
    report
}

/// Contingency extensions of Kripke models are saturated for depth-2
/// fragments.
pub fn law_nabla_saturation(rng: &mut SuiteRng, count: usize, max_states: usize) -> LawReport {
    let mut report = LawReport::new("nabla_saturation");
    let cap = max_states.min(5);
    for case in 0..count {
        let kind = if case % 2 == 0 { UeKind::ContingencyEa } else { UeKind::ContingencyA };
        let m = Model::Kripke(random_kripke(rng, cap, 2));
        let ue = build_ue(&m, kind).unwrap();
        let frag = enumerate_fragment(&[&ue.model], Lang::Nabla, 2).unwrap();
        let formulas: Vec<Formula> = frag.into_iter().map(|f| f.formula).collect();
        let check = check_nabla_saturation(ue.model.as_kripke().unwrap(), &formulas);
        report.case(check.is_clean(), || {
            cx(&[format!("kind={kind}"), model_cx(&m), check.violations.join("; ")])
        });
    }
    report
}

/// Contingency extensions of neighborhood models are saturated for depth-2
/// fragments.
pub fn law_delta_saturation(rng: &mut SuiteRng, count: usize, max_states: usize) -> LawReport {
    let mut report = LawReport::new("delta_saturation");
    let cap = max_states.min(5);
    for _ in 0..count {
        let m = Model::Neighborhood(random_neighborhood(rng, cap, 2));
        let ue = build_ue(&m, UeKind::ContingencyNbhd).unwrap();
        let frag = enumerate_fragment(&[&ue.model], Lang::Nabla, 2).unwrap();
        let formulas: Vec<Formula> = frag.into_iter().map(|f| f.formula).collect();
        let check = check_delta_saturation(ue.model.as_neighborhood().unwrap(), &formulas);
        report.case(check.is_clean(), || cx(&[model_cx(&m), check.violations.join("; ")]));
    }
    report
}

/// Every neighborhood row of a contingency extension is closed under
/// complements.
pub fn law_complement_closed(rng: &mut SuiteRng, count: usize, max_states: usize) -> LawReport {
    let mut report = LawReport::new("complement_closed_neighborhoods");
    let cap = max_states.min(6);
    for _ in 0..count {
        let m = Model::Neighborhood(random_neighborhood(rng, cap, 2));
        let ue = build_ue(&m, UeKind::ContingencyNbhd).unwrap();
        let nm = ue.model.as_neighborhood().unwrap();
        let ok = (0..nm.num_states()).all(|s| {
            let fam = nm.neighborhoods(s);
            fam.iter().all(|x| fam.contains(&x.complement()))
        });
        report.case(ok, || model_cx(&m));
    }
    report
}

/// Printing then parsing returns the identical tree.
pub fn law_parser_roundtrip(rng: &mut SuiteRng, count: usize) -> LawReport {
    let mut report = LawReport::new("parser_roundtrip");
    for _ in 0..count {
        let f = random_formula(rng, 3, 3, true);
        let printed = f.to_string();
        let ok = Formula::parse(&printed).map(|g| g == f).unwrap_or(false);
        report.case(ok, || printed.clone());
    }
    report
}

/// How many sampled Kripke models give the two contingency constructions
/// different relations. Informational only.
pub fn count_ea_vs_a_differences(rng: &mut SuiteRng, count: usize, max_states: usize) -> usize {
    let cap = max_states.min(6);
    (0..count)
        .filter(|_| {
            let m = Model::Kripke(random_kripke(rng, cap, 2));
            let ea = build_ue(&m, UeKind::ContingencyEa).unwrap();
            let a = build_ue(&m, UeKind::ContingencyA).unwrap();
            ea.model != a.model
        })
        .count()
}

// ---------------------------------------------------------------------------
// Assembly

pub fn run_suite(cfg: &SuiteConfig) -> SuiteReport {
    run_suite_with_mutant(cfg, None)
}

pub fn run_suite_with_mutant(cfg: &SuiteConfig, mutant: Option<Mutant>) -> SuiteReport {
    let mut rng = suite_rng(cfg.seed);
    let ops = OpTable::with_mutant(mutant);
    let count = cfg.count;
    let max_states = cfg.max_states;
    let mut laws = Vec::new();
    let mut differences = 0;

    if count > 0 {
        laws.push(law_ultrafilter_enumeration());
        laws.push(law_m_operator_laws(&mut rng, count, max_states, &ops));
        laws.push(law_semantics_coherence(&mut rng, count, max_states));
        laws.push(law_disjoint_union_transfer(&mut rng, count, max_states));
        laws.push(law_ultrafilter_theorem(&mut rng, count, max_states));
        for kind in UeKind::ALL {
            laws.push(law_truth_transfer(&mut rng, kind, count, max_states));
        }
        laws.push(law_finite_model_collapse(&mut rng, count, max_states));
        laws.push(law_m1_regression());
        laws.push(law_ue_route_crosscheck(&mut rng, count, max_states));
        laws.push(law_equivalence_transfer(&mut rng, count, max_states));
        laws.push(law_oracle_crosscheck(count));
        laws.push(law_hennessy_milner(&mut rng, count, max_states));
        laws.push(law_hennessy_milner_named_pair());
        laws.push(law_nabla_saturation(&mut rng, count, max_states));
        laws.push(law_delta_saturation(&mut rng, count, max_states));
        laws.push(law_complement_closed(&mut rng, count, max_states));
        laws.push(law_parser_roundtrip(&mut rng, count));
        differences = count_ea_vs_a_differences(&mut rng, count.min(50), max_states);
    }

    let passed = laws.iter().all(|l| l.ok());
    SuiteReport {
        seed: cfg.seed,
        count: cfg.count,
        max_states: cfg.max_states,
        laws,
        ea_vs_a_relation_differences: differences,
        passed,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_suite_passes() {
        let report = run_suite(&SuiteConfig { seed: 7, count: 12, max_states: 4 });
        for law in &report.laws {
            assert!(law.ok(), "{}: {:?}", law.law, law.first_counterexample);
        }
        assert!(report.passed);
    }

    #[test]
    fn suite_is_deterministic() {
        let cfg = SuiteConfig { seed: 42, count: 8, max_states: 4 };
        let a = serde_json::to_string(&run_suite(&cfg)).unwrap();
        let b = serde_json::to_string(&run_suite(&cfg)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn zero_count_is_empty_pass() {
        let report = run_suite(&SuiteConfig { seed: 0, count: 0, max_states: 4 });
        assert!(report.laws.is_empty());
        assert!(report.passed);
    }

    #[test]
    fn mutant_is_caught_with_counterexample() {
        let cfg = SuiteConfig { seed: 7, count: 25, max_states: 4 };
        let report = run_suite_with_mutant(&cfg, Some(Mutant::MDeltaNoComplement));
        assert!(!report.passed);
        let failing = report.first_failure().expect("mutant must fail a law");
        assert_eq!(failing.law, "m_operator_laws");
        assert!(failing.first_counterexample.is_some());
    }

    #[test]
    fn generators_respect_bounds() {
        let mut rng = suite_rng(1);
        for _ in 0..50 {
            let k = random_kripke(&mut rng, 5, 2);
            assert!((1..=5).contains(&k.num_states()));
            let n = random_neighborhood(&mut rng, 5, 2);
            assert!((1..=5).contains(&n.num_states()));
            let f = random_formula(&mut rng, 3, 3, false);
            assert!(f.modal_depth() <= 3);
        }
    }
}
