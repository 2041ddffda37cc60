//! The telescoping impossibility certificate.
//!
//! Two chains of crossing pairs are summed as difference-form submodular
//! inequalities `g(A) + g(B) − g(A−B) − g(B−A) >= 0`. After cancellation
//! only `+g(V_1) .. +g(V_k)` and `−g({v_1}), −g({v_2}), −g(W_3) .. −g(W_k)`
//! survive. The family holds every positive term and none of the negative
//! ones, which no sublevel family of a symmetric submodular function can do.

use std::collections::BTreeMap;

use serde::{Serialize, Serializer};

use crate::checkers::{Property, Violation, ViolationReport};
use crate::error::CertificateError;
use crate::family::Family;
use crate::ground::{ESet, GroundSet, Mask};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct SignedTerm {
    /// `+1` or `-1`.
    pub sign: i8,
    pub set: ESet,
}

/// A signed multiset of `g(S)` terms, kept canceled: each set appears at
/// most once, with its net multiplicity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ledger {
    ground: GroundSet,
    coefficients: BTreeMap<Mask, i64>,
}

impl Ledger {
    pub fn new(ground: GroundSet) -> Self {
        Ledger {
            ground,
            coefficients: BTreeMap::new(),
        }
    }

    pub fn from_terms<I: IntoIterator<Item = SignedTerm>>(ground: GroundSet, terms: I) -> Self {
        let mut l = Ledger::new(ground);
        for t in terms {
            l.add(t.set, t.sign as i64);
        }
        l
    }

    pub fn add(&mut self, set: ESet, coefficient: i64) {
        assert_eq!(set.ground(), self.ground, "ledger term from another ground set");
        let c = self.coefficients.entry(set.mask()).or_insert(0);
        *c += coefficient;
        if *c == 0 {
            self.coefficients.remove(&set.mask());
        }
    }

    pub fn coefficient(&self, set: &ESet) -> i64 {
        self.coefficients.get(&set.mask()).copied().unwrap_or(0)
    }

    pub fn is_empty(&self) -> bool {
        self.coefficients.is_empty()
    }

    pub fn len(&self) -> usize {
        self.coefficients.len()
    }

    /// Surviving terms: positive before negative, then by mask.
    pub fn terms(&self) -> Vec<(i64, ESet)> {
        let mut out: Vec<(i64, ESet)> = self
            .coefficients
            .iter()
            .map(|(&m, &c)| (c, self.ground.set_from_mask(m).expect("subset of V")))
            .collect();
        out.sort_by_key(|(c, s)| (*c < 0, s.mask()));
        out
    }
}

impl Serialize for Ledger {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Term {
            coefficient: i64,
            set: ESet,
        }
        let terms: Vec<Term> = self
            .terms()
            .into_iter()
            .map(|(coefficient, set)| Term { coefficient, set })
            .collect();
        terms.serialize(s)
    }
}

/// The four raw terms `+A, +B, −(A−B), −(B−A)` of one crossing pair.
pub fn pair_terms(a: ESet, b: ESet) -> [SignedTerm; 4] {
    [
        SignedTerm { sign: 1, set: a },
        SignedTerm { sign: 1, set: b },
        SignedTerm { sign: -1, set: a - b },
        SignedTerm { sign: -1, set: b - a },
    ]
}

/// Sum the difference-form inequalities of crossing pairs and cancel.
pub fn ledger_sum(ground: GroundSet, pairs: &[(ESet, ESet)]) -> Result<Ledger, CertificateError> {
    let mut l = Ledger::new(ground);
    for &(a, b) in pairs {
        if !a.try_crosses(&b)? {
            return Err(CertificateError::NotCrossing(a.to_string(), b.to_string()));
        }
        for t in pair_terms(a, b) {
            l.add(t.set, t.sign as i64);
        }
    }
    Ok(l)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub k: u32,
    /// `(V_1 − ... − V_i, V_{i+1})` for `i = 1..k-1`.
    pub first_list: Vec<(ESet, ESet)>,
    /// `((V_2 − V_1) − V_3 − ... − V_{i+1}, U_{i+2})` for `i = 1..k-2`.
    pub second_list: Vec<(ESet, ESet)>,
    /// `U_3 .. U_k`.
    pub u_sets: Vec<ESet>,
    /// `W_3 .. W_k`.
    pub w_sets: Vec<ESet>,
    pub summed: Ledger,
}

impl Certificate {
    pub fn ground(&self) -> GroundSet {
        GroundSet::new(self.k).expect("validated at build time")
    }

    /// All `2k − 3` pairs, first list then second list.
    pub fn pairs(&self) -> Vec<(ESet, ESet)> {
        self.first_list.iter().chain(&self.second_list).copied().collect()
    }

    /// `U_i` for `i` in `3..=k`.
    pub fn u(&self, i: usize) -> ESet {
        self.u_sets[i - 3]
    }

    /// `W_i` for `i` in `3..=k`.
    pub fn w(&self, i: usize) -> ESet {
        self.w_sets[i - 3]
    }
}

/// Left-associated difference chain `sets[0] − sets[1] − ...`.
fn chain(sets: impl IntoIterator<Item = ESet>) -> ESet {
    let mut it = sets.into_iter();
    let first = it.next().expect("non-empty chain");
    it.fold(first, |acc, s| acc - s)
}

struct Chains {
    v: Vec<ESet>,
}

impl Chains {
    /// `V_i`, 1-based.
    fn v(&self, i: usize) -> ESet {
        self.v[i - 1]
    }

    /// `V_1 − V_2 − ... − V_i`.
    fn first(&self, i: usize) -> ESet {
        chain(self.v[..i].iter().copied())
    }

    /// `(V_2 − V_1) − V_3 − ... − V_i`, for `i >= 2`.
    fn second(&self, i: usize) -> ESet {
        chain([self.v(2), self.v(1)].into_iter().chain(self.v[2..i].iter().copied()))
    }

    fn u(&self, i: usize) -> ESet {
        self.v(i) - self.first(i - 1)
    }

    fn w(&self, i: usize) -> ESet {
        self.u(i) - self.second(i - 1)
    }
}

pub fn build_certificate(k: u32) -> Result<Certificate, CertificateError> {
    if k < 3 {
        return Err(CertificateError::KTooSmall(k));
    }
    let g = GroundSet::new(k)?;
    let c = Chains {
        v: g.coordinate_sets(),
    };
    let k = k as usize;
    let first_list: Vec<_> = (1..k).map(|i| (c.first(i), c.v(i + 1))).collect();
    let second_list: Vec<_> = (1..=k - 2).map(|i| (c.second(i + 1), c.u(i + 2))).collect();
    let u_sets = (3..=k).map(|i| c.u(i)).collect();
    let w_sets = (3..=k).map(|i| c.w(i)).collect();
    let all: Vec<_> = first_list.iter().chain(&second_list).copied().collect();
    let summed = ledger_sum(g, &all)?;
    Ok(Certificate {
        k: k as u32,
        first_list,
        second_list,
        u_sets,
        w_sets,
        summed,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CertificateCheck {
    PairsCross,
    SeedPresent,
    UnitSingletonsAbsent,
    WSetsAbsent,
    WSetsDefined,
    SecondListTelescopes,
    CanceledSum,
    ChainsBottomOut,
}

fn fail(check: CertificateCheck, sets: Vec<ESet>, detail: String) -> Violation {
    Violation::Certificate { check, sets, detail }
}

/// Check the certificate against the family built for the same `k`.
pub fn verify_certificate(f: &Family, c: &Certificate) -> Result<ViolationReport, CertificateError> {
    if f.k() != c.k {
        return Err(CertificateError::KMismatch {
            family: f.k(),
            certificate: c.k,
        });
    }
    use CertificateCheck::*;
    let g = f.ground();
    let k = c.k as usize;
    let chains = Chains {
        v: g.coordinate_sets(),
    };
    let unit = |i: usize| g.set_of([1u32 << (i - 1)]).expect("unit-vector in range");
    let mut out = Vec::new();

    for (a, b) in c.pairs() {
        if !a.crosses(&b) {
            out.push(fail(PairsCross, vec![a, b], format!("{a} and {b} do not cross")));
        }
    }
    for (i, v) in chains.v.iter().enumerate() {
        if !f.contains(v) {
            out.push(fail(SeedPresent, vec![*v], format!("V_{} is not a member", i + 1)));
        }
    }
    for i in [1, 2] {
        if f.contains(&unit(i)) {
            out.push(fail(UnitSingletonsAbsent, vec![unit(i)], format!("{{v_{i}}} is a member")));
        }
    }
    for (n, w) in c.w_sets.iter().enumerate() {
        if f.contains(w) {
            out.push(fail(WSetsAbsent, vec![*w], format!("W_{} = {w} is a member", n + 3)));
        }
        if *w != chains.w(n + 3) {
            out.push(fail(WSetsDefined, vec![*w], format!("W_{} is not U − chain", n + 3)));
        }
    }
    for (n, (a, b)) in c.second_list.iter().enumerate() {
        let i = n + 1;
        let lhs = *a - *b;
        let rhs = chains.second(i + 2);
        if lhs != rhs {
            out.push(fail(
                SecondListTelescopes,
                vec![lhs, rhs],
                format!("pair {i} of the second list leaves {lhs}, expected {rhs}"),
            ));
        }
    }

    let mut expected = Ledger::new(g);
    for v in &chains.v {
        expected.add(*v, 1);
    }
    expected.add(unit(1), -1);
    expected.add(unit(2), -1);
    for i in 3..=k {
        expected.add(chains.w(i), -1);
    }
    let recomputed = ledger_sum(g, &c.pairs())?;
    for ledger in [&c.summed, &recomputed] {
        if *ledger != expected {
            let diff: Vec<ESet> = expected
                .terms()
                .into_iter()
                .chain(ledger.terms())
                .filter(|(_, s)| ledger.coefficient(s) != expected.coefficient(s))
                .map(|(_, s)| s)
                .collect();
            out.push(fail(CanceledSum, diff, "canceled sum differs from the expected terms".into()));
        }
        if let Some((coef, s)) = ledger.terms().into_iter().find(|(c, _)| c.abs() != 1) {
            out.push(fail(CanceledSum, vec![s], format!("{s} survives with multiplicity {coef}")));
        }
    }

    let ends = [(chains.first(k), unit(1)), (chains.second(k), unit(2))];
    for (lhs, rhs) in ends {
        if lhs != rhs {
            out.push(fail(ChainsBottomOut, vec![lhs, rhs], format!("chain ends at {lhs}, expected {rhs}")));
        }
    }
    Ok(ViolationReport::new(Property::Certificate, out))
}
