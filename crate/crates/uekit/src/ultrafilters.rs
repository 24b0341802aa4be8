//! Ultrafilters over finite base sets.
//!
//! Over a finite base every ultrafilter is principal, so an [`Ultrafilter`]
//! carries its generating state and answers membership by the test `w ∈ X`.
//! The member list is additionally materialized for small bases so that the
//! axioms can be checked against the literal family.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::models::StateSet;

/// Widest base for which member lists are materialized (`2^12` sets).
pub const MATERIALIZE_CAP: usize = 12;

/// Largest base accepted by [`all_ultrafilters`]; candidate families are
/// enumerated, which is exponential in `2^|base|`.
pub const ENUMERATION_CAP: usize = 4;

#[derive(Debug, Error)]
pub enum UltrafilterError {
    #[error("unknown state '{0}'")]
    UnknownState(String),
    #[error("base has {0} states; ultrafilter enumeration is capped at {ENUMERATION_CAP}")]
    BaseTooLarge(usize),
    #[error("family lacks the finite intersection property")]
    NoFip,
}

/// A family of subsets of a base set of states.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetFamily {
    base: Vec<String>,
    members: BTreeSet<StateSet>,
}

impl SetFamily {
    pub fn new(base: Vec<String>, members: impl IntoIterator<Item = StateSet>) -> Self {
        let width = base.len();
        let members: BTreeSet<StateSet> = members.into_iter().collect();
        for m in &members {
            assert_eq!(m.width(), width, "family member width mismatch");
        }
        SetFamily { base, members }
    }

    pub fn base(&self) -> &[String] {
        &self.base
    }

    pub fn width(&self) -> usize {
        self.base.len()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, x: &StateSet) -> bool {
        self.members.contains(x)
    }

    pub fn iter(&self) -> impl Iterator<Item = StateSet> + '_ {
        self.members.iter().copied()
    }

    pub fn insert(&mut self, x: StateSet) {
        assert_eq!(x.width(), self.width(), "family member width mismatch");
        self.members.insert(x);
    }
}

/// The five ultrafilter axioms.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UltrafilterAxiom {
    /// (i) contains the whole set
    ContainsWholeSet,
    /// (ii) closed under intersection
    ClosedUnderIntersection,
    /// (iii) closed under supersets
    ClosedUnderSupersets,
    /// (iv) does not contain the empty set
    ExcludesEmptySet,
    /// (v) contains exactly one of each set/complement pair
    ComplementDichotomy,
}

impl fmt::Display for UltrafilterAxiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            UltrafilterAxiom::ContainsWholeSet => write!(f, "(i) contains the whole set"),
            UltrafilterAxiom::ClosedUnderIntersection => write!(f, "(ii) closed under intersection"),
            UltrafilterAxiom::ClosedUnderSupersets => write!(f, "(iii) closed under supersets"),
            UltrafilterAxiom::ExcludesEmptySet => write!(f, "(iv) excludes the empty set"),
            UltrafilterAxiom::ComplementDichotomy => write!(f, "(v) complement dichotomy"),
        }
    }
}

/// A failed axiom together with the witnessing set(s), in canonical (bit
/// ascending) order. One violation is reported per failed clause.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomViolation {
    pub axiom: UltrafilterAxiom,
    pub witness: Vec<StateSet>,
}

impl fmt::Display for AxiomViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.axiom)?;
        if !self.witness.is_empty() {
            write!(f, " fails at")?;
            for w in &self.witness {
                write!(f, " {w:?}")?;
            }
        }
        Ok(())
    }
}

/// Checks the five axioms; empty result iff `fam` is an ultrafilter.
pub fn check_ultrafilter(fam: &SetFamily) -> Vec<AxiomViolation> {
    let width = fam.width();
    let mut violations = Vec::new();

    if !fam.contains(&StateSet::full(width)) {
        violations.push(AxiomViolation {
            axiom: UltrafilterAxiom::ContainsWholeSet,
            witness: vec![StateSet::full(width)],
        });
    }

    'intersection: for x in fam.iter() {
        for y in fam.iter() {
            if !fam.contains(&x.intersect(y)) {
                violations.push(AxiomViolation {
                    axiom: UltrafilterAxiom::ClosedUnderIntersection,
                    witness: vec![x, y],
                });
                break 'intersection;
            }
        }
    }

    'supersets: for x in fam.iter() {
        for z in StateSet::all_subsets(width) {
            if x.is_subset_of(z) && !fam.contains(&z) {
                violations.push(AxiomViolation {
                    axiom: UltrafilterAxiom::ClosedUnderSupersets,
                    witness: vec![x, z],
                });
                break 'supersets;
            }
        }
    }

    if fam.contains(&StateSet::empty(width)) {
        violations.push(AxiomViolation {
            axiom: UltrafilterAxiom::ExcludesEmptySet,
            witness: vec![StateSet::empty(width)],
        });
    }

    for x in StateSet::all_subsets(width) {
        if fam.contains(&x) == fam.contains(&x.complement()) {
            violations.push(AxiomViolation {
                axiom: UltrafilterAxiom::ComplementDichotomy,
                witness: vec![x],
            });
            break;
        }
    }

    violations
}

/// A validated ultrafilter over a finite base: the principal family of its
/// witness state. Membership is the test `witness ∈ X`; the member list is
/// kept alongside for bases of at most [`MATERIALIZE_CAP`] states.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ultrafilter {
    base: Vec<String>,
    witness: usize,
    members: Option<BTreeSet<StateSet>>,
}

impl Ultrafilter {
    pub fn base(&self) -> &[String] {
        &self.base
    }

    pub fn width(&self) -> usize {
        self.base.len()
    }

    /// Index of the generating state.
    pub fn witness(&self) -> usize {
        self.witness
    }

    pub fn witness_name(&self) -> &str {
        &self.base[self.witness]
    }

    /// Membership via the canonical principal test.
    pub fn contains(&self, x: StateSet) -> bool {
        assert_eq!(x.width(), self.width(), "state-set width mismatch");
        x.contains(self.witness)
    }

    /// Membership via the materialized member list, when available. Used to
    /// cross-check the principal shortcut.
    pub fn contains_via_members(&self, x: StateSet) -> Option<bool> {
        assert_eq!(x.width(), self.width(), "state-set width mismatch");
        self.members.as_ref().map(|m| m.contains(&x))
    }

    pub fn family(&self) -> SetFamily {
        match &self.members {
            Some(members) => SetFamily { base: self.base.clone(), members: members.clone() },
            None => SetFamily::new(
                self.base.clone(),
                StateSet::all_subsets(self.width()).filter(|x| x.contains(self.witness)),
            ),
        }
    }
}

/// The principal ultrafilter generated by the state named `w`.
pub fn principal(base: &[String], w: &str) -> Result<Ultrafilter, UltrafilterError> {
    let witness = base
        .iter()
        .position(|s| s == w)
        .ok_or_else(|| UltrafilterError::UnknownState(w.to_string()))?;
    Ok(principal_at(base, witness))
}

/// The principal ultrafilter generated by the state at index `witness`.
pub fn principal_at(base: &[String], witness: usize) -> Ultrafilter {
    assert!(witness < base.len(), "witness index out of range");
    let width = base.len();
    let members = (width <= MATERIALIZE_CAP).then(|| {
        StateSet::all_subsets(width)
            .filter(|x| x.contains(witness))
            .collect()
    });
    Ultrafilter { base: base.to_vec(), witness, members }
}

/// The principal ultrafilters of a base, one per state, in state order.
pub fn principal_list(base: &[String]) -> Vec<Ultrafilter> {
    (0..base.len()).map(|w| principal_at(base, w)).collect()
}

/// Enumerates every ultrafilter over the base: all candidate families are
/// generated and checked. Exhaustive over all `2^(2^|base|)` families up to
/// three states; for four states the complement-dichotomy axiom prunes the
/// candidates to one choice per set/complement pair. The result is exactly
/// the principal list, in state order.
pub fn all_ultrafilters(base: &[String]) -> Result<Vec<Ultrafilter>, UltrafilterError> {
    let n = base.len();
    if n > ENUMERATION_CAP {
        return Err(UltrafilterError::BaseTooLarge(n));
    }
    let subset_count = 1usize << n;
    let mut found: Vec<(usize, Ultrafilter)> = Vec::new();

    let mut consider = |family_bits: u64| {
        let members = (0..subset_count)
            .filter(|i| family_bits & (1 << i) != 0)
            .map(|i| StateSet::from_bits(n, i as u64));
        let fam = SetFamily::new(base.to_vec(), members);
        if check_ultrafilter(&fam).is_empty() {
            // a finite ultrafilter is the principal filter of the least
            // member's unique point: the intersection of all members
            let total = fam
                .iter()
                .fold(StateSet::full(n), |acc, x| acc.intersect(x));
            assert_eq!(total.len(), 1, "finite ultrafilter with non-singleton core");
            let w = total.iter().next().unwrap();
            let uf = principal_at(base, w);
            assert_eq!(uf.family(), fam, "finite ultrafilter that is not principal");
            found.push((w, uf));
        }
    };

    if n <= 3 {
        for family_bits in 0..(1u64 << subset_count) {
            consider(family_bits);
        }
    } else {
        // Axiom (v) admits exactly one of each set/complement pair, so a
        // candidate is a choice over the pairs; S and ∅ are forced.
        let pairs: Vec<(usize, usize)> = (0..subset_count)
            .filter_map(|i| {
                let c = (!(i as u64) & ((1u64 << n) - 1)) as usize;
                (i < c).then_some((i, c))
            })
            .collect();
        let free: Vec<(usize, usize)> = pairs
            .into_iter()
            .filter(|&(i, _)| i != 0) // (∅, S) is forced to S
            .collect();
        for choice in 0..(1u64 << free.len()) {
            let mut family_bits: u64 = 1 << (subset_count - 1); // S
            for (k, &(i, c)) in free.iter().enumerate() {
                if choice & (1 << k) != 0 {
                    family_bits |= 1 << i;
                } else {
                    family_bits |= 1 << c;
                }
            }
            consider(family_bits);
        }
    }

    found.sort_by_key(|(w, _)| *w);
    found.dedup_by_key(|(w, _)| *w);
    Ok(found.into_iter().map(|(_, uf)| uf).collect())
}

/// Finite intersection property. For a finite family this is nonemptiness of
/// the total intersection; the empty family has it vacuously.
pub fn has_fip(fam: &SetFamily) -> bool {
    let total = fam
        .iter()
        .fold(StateSet::full(fam.width()), |acc, x| acc.intersect(x));
    fam.is_empty() || !total.is_empty()
}

/// Extends a family with the finite intersection property to an ultrafilter
/// containing it: the principal ultrafilter of the least state (in base
/// order) of the total intersection.
pub fn extend_to_ultrafilter(fam: &SetFamily) -> Result<Ultrafilter, UltrafilterError> {
    let total = fam
        .iter()
        .fold(StateSet::full(fam.width()), |acc, x| acc.intersect(x));
    let w = total.iter().next().ok_or(UltrafilterError::NoFip)?;
    Ok(principal_at(fam.base(), w))
}

/// `hat(X)`: the members of the universe containing `X`, as a set over the
/// universe indices.
pub fn hat(x: StateSet, universe: &[Ultrafilter]) -> StateSet {
    let mut out = StateSet::empty(universe.len());
    for (i, u) in universe.iter().enumerate() {
        if u.contains(x) {
            out = out.with(i);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn base(names: &[&str]) -> Vec<String> {
        names.iter().map(|s| s.to_string()).collect()
    }

    fn set(width: usize, xs: &[usize]) -> StateSet {
        StateSet::from_indices(width, xs.iter().copied())
    }

    #[test]
    fn accepts_principal_family() {
        let b = base(&["a", "b"]);
        let fam = SetFamily::new(b, [set(2, &[0]), set(2, &[0, 1])]);
        assert!(check_ultrafilter(&fam).is_empty());
    }

    #[test]
    fn dichotomy_violation_with_witness() {
        let b = base(&["a", "b"]);
        let fam = SetFamily::new(b, [set(2, &[0, 1])]);
        let violations = check_ultrafilter(&fam);
        let dichotomy: Vec<_> = violations
            .iter()
            .filter(|v| v.axiom == UltrafilterAxiom::ComplementDichotomy)
            .collect();
        assert_eq!(dichotomy.len(), 1);
        // first witness in bit order: {a} (neither it nor its complement present)
        assert_eq!(dichotomy[0].witness, vec![set(2, &[0])]);
    }

    #[test]
    fn empty_family_violates_whole_set() {
        let fam = SetFamily::new(base(&["a", "b"]), []);
        let violations = check_ultrafilter(&fam);
        assert!(violations
            .iter()
            .any(|v| v.axiom == UltrafilterAxiom::ContainsWholeSet));
    }

    #[test]
    fn principal_members_over_three_states() {
        let b = base(&["0", "1", "2"]);
        let uf = principal(&b, "1").unwrap();
        let members: Vec<StateSet> = uf.family().iter().collect();
        assert_eq!(
            members,
            vec![set(3, &[1]), set(3, &[0, 1]), set(3, &[1, 2]), set(3, &[0, 1, 2])]
        );
        assert!(check_ultrafilter(&uf.family()).is_empty());
        assert!(matches!(
            principal(&b, "9"),
            Err(UltrafilterError::UnknownState(_))
        ));
    }

    #[test]
    fn principal_singleton_base() {
        let b = base(&["w"]);
        let uf = principal(&b, "w").unwrap();
        assert_eq!(uf.family().len(), 1);
        assert!(uf.contains(set(1, &[0])));
    }

    #[test]
    fn principal_membership_is_the_point_test() {
        let b = base(&["0", "1", "2", "3"]);
        let uf = principal(&b, "2").unwrap();
        for x in StateSet::all_subsets(4) {
            assert_eq!(uf.contains(x), x.contains(2));
            assert_eq!(uf.contains_via_members(x), Some(x.contains(2)));
        }
    }

    #[test]
    fn all_ultrafilters_are_principal() {
        for n in 1..=4 {
            let b: Vec<String> = (0..n).map(|i| i.to_string()).collect();
            let all = all_ultrafilters(&b).unwrap();
            assert_eq!(all.len(), n);
            for (w, uf) in all.iter().enumerate() {
                assert_eq!(uf.witness(), w);
                assert!(check_ultrafilter(&uf.family()).is_empty());
            }
        }
        assert!(matches!(
            all_ultrafilters(&base(&["0", "1", "2", "3", "4"])),
            Err(UltrafilterError::BaseTooLarge(5))
        ));
    }

    #[test]
    fn fip_examples() {
        let b = base(&["0", "1", "2"]);
        assert!(has_fip(&SetFamily::new(b.clone(), [set(3, &[0, 1]), set(3, &[1, 2])])));
        assert!(!has_fip(&SetFamily::new(b.clone(), [set(3, &[0]), set(3, &[1])])));
        assert!(has_fip(&SetFamily::new(b, [])));
    }

    #[test]
    fn extension_picks_least_state() {
        let b = base(&["0", "1", "2"]);
        let fam = SetFamily::new(b.clone(), [set(3, &[0, 1]), set(3, &[1, 2])]);
        let uf = extend_to_ultrafilter(&fam).unwrap();
        assert_eq!(uf.witness_name(), "1");
        for x in fam.iter() {
            assert!(uf.contains(x));
        }

        let whole = SetFamily::new(b.clone(), [StateSet::full(3)]);
        assert_eq!(extend_to_ultrafilter(&whole).unwrap().witness_name(), "0");

        let no_fip = SetFamily::new(b, [set(3, &[0]), set(3, &[1])]);
        assert!(matches!(extend_to_ultrafilter(&no_fip), Err(UltrafilterError::NoFip)));
    }

    #[test]
    fn extend_two_state_example() {
        let b = base(&["0", "1"]);
        let fam = SetFamily::new(b, [set(2, &[0, 1])]);
        let uf = extend_to_ultrafilter(&fam).unwrap();
        assert_eq!(uf.witness(), 0);
        assert!(check_ultrafilter(&uf.family()).is_empty());
    }

    #[test]
    fn hat_examples() {
        let b = base(&["0", "1", "2"]);
        let universe = principal_list(&b);
        assert_eq!(hat(set(3, &[1]), &universe), set(3, &[1]));
        assert_eq!(hat(StateSet::full(3), &universe), StateSet::full(3));
        for x in StateSet::all_subsets(3) {
            assert_eq!(hat(x.complement(), &universe), hat(x, &universe).complement());
            for y in StateSet::all_subsets(3) {
                assert_eq!(
                    hat(x.intersect(y), &universe),
                    hat(x, &universe).intersect(hat(y, &universe))
                );
            }
        }
    }
}
