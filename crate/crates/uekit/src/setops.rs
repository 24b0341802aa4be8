//! Set-operator lifts of the modalities and the satisfaction semantics.
//!
//! Each modality has a set-valued operator satisfying
//! `op(V(φ)) = V(modality φ)`:
//!
//! * `m_box(X)`   = states whose successors all lie in `X`
//! * `m_nabla(X)` = states with a successor in `X` and one outside it
//! * `m_delta(X)` = complement of `m_nabla(X)`
//! * `m_n(X)`     = states with `X` among their neighborhoods
//! * `m_c(X)`     = states with `X` or its complement among their neighborhoods
//!
//! `extension` evaluates formulas bottom-up through these operators.
//! Possibility (`<>`) has no neighborhood clause and is rejected there.

use thiserror::Error;

use crate::models::{KripkeModel, Model, NeighborhoodModel, StateSet};
use crate::syntax::Formula;

pub fn m_box(m: &KripkeModel, x: StateSet) -> StateSet {
    assert_eq!(x.width(), m.num_states(), "state-set width mismatch");
    let mut out = StateSet::empty(m.num_states());
    for s in 0..m.num_states() {
        if m.successors(s).is_subset_of(x) {
            out = out.with(s);
        }
    }
    out
}

pub fn m_nabla(m: &KripkeModel, x: StateSet) -> StateSet {
    assert_eq!(x.width(), m.num_states(), "state-set width mismatch");
    let mut out = StateSet::empty(m.num_states());
    for s in 0..m.num_states() {
        let succ = m.successors(s);
        if succ.intersects(x) && succ.intersects(x.complement()) {
            out = out.with(s);
        }
    }
    out
}

pub fn m_delta(m: &KripkeModel, x: StateSet) -> StateSet {
    m_nabla(m, x).complement()
}

pub fn m_n(m: &NeighborhoodModel, x: StateSet) -> StateSet {
    assert_eq!(x.width(), m.num_states(), "state-set width mismatch");
    let mut out = StateSet::empty(m.num_states());
    for s in 0..m.num_states() {
        if m.neighborhood_contains(s, x) {
            out = out.with(s);
        }
    }
    out
}

pub fn m_c(m: &NeighborhoodModel, x: StateSet) -> StateSet {
    assert_eq!(x.width(), m.num_states(), "state-set width mismatch");
    let mut out = StateSet::empty(m.num_states());
    let xc = x.complement();
    for s in 0..m.num_states() {
        if m.neighborhood_contains(s, x) || m.neighborhood_contains(s, xc) {
            out = out.with(s);
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("operator {op} is not supported on {kind} models")]
    UnsupportedOperator { op: &'static str, kind: &'static str },
    #[error("unknown state '{0}'")]
    UnknownState(String),
}

/// The set of states where `f` holds.
pub fn extension(m: &Model, f: &Formula) -> Result<StateSet, EvalError> {
    let n = m.num_states();
    Ok(match f {
        Formula::Atom(a) => m.atom_extension(a),
        Formula::Top => StateSet::full(n),
        Formula::Bot => StateSet::empty(n),
        Formula::Not(g) => extension(m, g)?.complement(),
        Formula::And(l, r) => extension(m, l)?.intersect(extension(m, r)?),
        Formula::Or(l, r) => extension(m, l)?.union(extension(m, r)?),
        Formula::Implies(l, r) => extension(m, l)?.complement().union(extension(m, r)?),
        Formula::Box(g) => {
            let x = extension(m, g)?;
            match m {
                Model::Kripke(k) => m_box(k, x),
                Model::Neighborhood(nm) => m_n(nm, x),
            }
        }
        Formula::Diamond(g) => {
            let x = extension(m, g)?;
            match m {
                Model::Kripke(k) => m_box(k, x.complement()).complement(),
                Model::Neighborhood(_) => {
                    return Err(EvalError::UnsupportedOperator { op: "<>", kind: "neighborhood" })
                }
            }
        }
        Formula::Nabla(g) => {
            let x = extension(m, g)?;
            match m {
                Model::Kripke(k) => m_nabla(k, x),
                Model::Neighborhood(nm) => m_c(nm, x).complement(),
            }
        }
        Formula::Delta(g) => {
            let x = extension(m, g)?;
            match m {
                Model::Kripke(k) => m_delta(k, x),
                Model::Neighborhood(nm) => m_c(nm, x),
            }
        }
    })
}

/// Point query: does `f` hold at the state named `w`?
pub fn satisfies(m: &Model, w: &str, f: &Formula) -> Result<bool, EvalError> {
    let i = m
        .state_index(w)
        .ok_or_else(|| EvalError::UnknownState(w.to_string()))?;
    Ok(extension(m, f)?.contains(i))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::KripkeModel;

    fn m0() -> KripkeModel {
        KripkeModel::build(&["0", "1", "2"], &[(0, 1), (0, 2)], &[("p", &[1])])
    }

    fn n0() -> NeighborhoodModel {
        NeighborhoodModel::build(&["0", "1"], &[&[&[1]], &[]], &[("p", &[1])])
    }

    fn set(width: usize, xs: &[usize]) -> StateSet {
        StateSet::from_indices(width, xs.iter().copied())
    }

    #[test]
    fn m_box_on_m0() {
        let m = m0();
        assert_eq!(m_box(&m, StateSet::full(3)), StateSet::full(3));
        assert_eq!(m_box(&m, set(3, &[1])), set(3, &[1, 2]));
        let vp = m.atom_extension("p");
        let ext = extension(&Model::Kripke(m.clone()), &Formula::boxed(Formula::atom("p"))).unwrap();
        assert_eq!(m_box(&m, vp), ext);
    }

    #[test]
    fn m_nabla_on_m0() {
        let m = m0();
        assert_eq!(m_nabla(&m, set(3, &[1])), set(3, &[0]));
        assert_eq!(m_nabla(&m, StateSet::empty(3)), StateSet::empty(3));
        for x in StateSet::all_subsets(3) {
            assert_eq!(m_nabla(&m, x), m_nabla(&m, x.complement()));
        }
    }

    #[test]
    fn m_delta_on_m0() {
        let m = m0();
        assert_eq!(m_delta(&m, set(3, &[1])), set(3, &[1, 2]));
        assert_eq!(m_delta(&m, StateSet::full(3)), StateSet::full(3));
        for x in StateSet::all_subsets(3) {
            assert_eq!(m_delta(&m, x), m_nabla(&m, x).complement());
        }
    }

    #[test]
    fn m_n_and_m_c_on_n0() {
        let m = n0();
        assert_eq!(m_n(&m, set(2, &[1])), set(2, &[0]));
        assert_eq!(m_n(&m, StateSet::empty(2)), StateSet::empty(2));
        assert_eq!(m_c(&m, set(2, &[1])), set(2, &[0]));
        assert_eq!(m_c(&m, set(2, &[0])), set(2, &[0]));
        for x in StateSet::all_subsets(2) {
            assert_eq!(m_c(&m, x), m_c(&m, x.complement()));
        }
    }

    #[test]
    fn extension_examples() {
        let m = Model::Kripke(m0());
        assert_eq!(extension(&m, &Formula::nabla(Formula::atom("p"))).unwrap(), set(3, &[0]));
        assert_eq!(extension(&m, &Formula::Top).unwrap(), StateSet::full(3));

        let n = Model::Neighborhood(n0());
        assert_eq!(extension(&n, &Formula::delta(Formula::atom("p"))).unwrap(), set(2, &[0]));
    }

    #[test]
    fn satisfies_examples() {
        let m = Model::Kripke(m0());
        assert!(satisfies(&m, "0", &Formula::nabla(Formula::atom("p"))).unwrap());
        assert!(satisfies(&m, "1", &Formula::Top).unwrap());
        // dead end: box is vacuous
        assert!(satisfies(&m, "1", &Formula::boxed(Formula::atom("p"))).unwrap());
        assert!(matches!(
            satisfies(&m, "9", &Formula::Top),
            Err(EvalError::UnknownState(_))
        ));
    }

    #[test]
    fn diamond_rejected_on_neighborhood_models() {
        let n = Model::Neighborhood(n0());
        assert!(matches!(
            extension(&n, &Formula::diamond(Formula::atom("p"))),
            Err(EvalError::UnsupportedOperator { .. })
        ));
        // nabla and delta are fine there
        assert_eq!(
            extension(&n, &Formula::nabla(Formula::atom("p"))).unwrap(),
            extension(&n, &Formula::not(Formula::delta(Formula::atom("p")))).unwrap()
        );
    }

    #[test]
    fn diamond_is_box_dual_on_kripke() {
        let m = Model::Kripke(m0());
        let f = Formula::diamond(Formula::atom("p"));
        let dual = Formula::not(Formula::boxed(Formula::not(Formula::atom("p"))));
        assert_eq!(extension(&m, &f).unwrap(), extension(&m, &dual).unwrap());
        assert_eq!(extension(&m, &f).unwrap(), set(3, &[0]));
    }
}
