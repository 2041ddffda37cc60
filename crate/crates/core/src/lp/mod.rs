//! Exact-rational realizability oracle.
//!
//! Decides whether a family `F̂` equals `{S : g(S) < λ}` for some symmetric
//! submodular `g`. Symmetry is structural: `S` and `V − S` share one
//! variable, indexed by the mask of the class member that omits the top
//! element. Strict comparisons are normalized to a unit gap, which is
//! harmless because every constraint is invariant under `g ↦ αg + β`.
//!
//! All rows read `Σ coef · x ≥ rhs`.

mod simplex;

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Serialize, Serializer};

use crate::certificate::Certificate;
use crate::config::Config;
use crate::error::LpError;
use crate::family::Family;
use crate::ground::{ESet, GroundSet, Mask};

pub use simplex::solve_feasibility;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RealizeMode {
    /// `F̂ = F`; a family that is not complement-closed is rejected up front.
    Literal,
    /// `F̂ = F ∪ {V − S : S ∈ F}`.
    #[default]
    Complemented,
}

impl RealizeMode {
    pub fn label(&self) -> &'static str {
        match self {
            RealizeMode::Literal => "literal",
            RealizeMode::Complemented => "complemented",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum RowOrigin {
    /// `g(A) + g(B) − g(A∩B) − g(A∪B) ≥ 0`.
    Submodular { a: ESet, b: ESet },
    /// `λ − g(S) ≥ 1`.
    Member { set: ESet },
    /// `g(S) − λ ≥ 0`.
    NonMember { set: ESet },
}

impl fmt::Display for RowOrigin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RowOrigin::Submodular { a, b } => write!(f, "submodularity row for ({a}, {b})"),
            RowOrigin::Member { set } => write!(f, "membership row for {set}"),
            RowOrigin::NonMember { set } => write!(f, "non-membership row for {set}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Row {
    /// `(variable, coefficient)`, sorted by variable, no zeros.
    pub coefs: Vec<(usize, i64)>,
    pub rhs: i64,
    pub origin: RowOrigin,
}

impl Row {
    fn new(terms: impl IntoIterator<Item = (usize, i64)>, rhs: i64, origin: RowOrigin) -> Self {
        let mut acc: BTreeMap<usize, i64> = BTreeMap::new();
        for (v, c) in terms {
            *acc.entry(v).or_default() += c;
        }
        Row {
            coefs: acc.into_iter().filter(|&(_, c)| c != 0).collect(),
            rhs,
            origin,
        }
    }

    /// Exact left-hand side at `x`.
    pub fn lhs(&self, x: &[BigRational]) -> BigRational {
        self.coefs
            .iter()
            .fold(BigRational::zero(), |acc, &(v, c)| acc + &x[v] * rat(c))
    }

    pub fn holds(&self, x: &[BigRational]) -> bool {
        self.lhs(x) >= rat(self.rhs)
    }
}

pub(crate) fn rat(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LpProblem {
    ground: GroundSet,
    mode: RealizeMode,
    rows: Vec<Row>,
}

impl LpProblem {
    /// A problem over `ground` holding exactly `rows`.
    pub fn from_rows(ground: GroundSet, mode: RealizeMode, rows: Vec<Row>) -> Self {
        LpProblem { ground, mode, rows }
    }

    pub fn ground(&self) -> GroundSet {
        self.ground
    }

    pub fn mode(&self) -> RealizeMode {
        self.mode
    }

    pub fn rows(&self) -> &[Row] {
        &self.rows
    }

    /// Number of complement classes, i.e. g-variables.
    pub fn classes(&self) -> usize {
        class_count(self.ground)
    }

    /// g-variables plus λ.
    pub fn variables(&self) -> usize {
        self.classes() + 1
    }

    pub fn lambda(&self) -> usize {
        self.classes()
    }

    /// Variable holding `g(s)`.
    pub fn class_of(&self, s: &ESet) -> usize {
        class_of(self.ground, s.mask())
    }

    /// The class member omitting the top element.
    pub fn representative(&self, class: usize) -> ESet {
        self.ground.set_from_mask(class as Mask).expect("class index is a subset mask")
    }

    pub fn position(&self, origin: &RowOrigin) -> Option<usize> {
        let want = normalize(origin);
        self.rows.iter().position(|r| normalize(&r.origin) == want)
    }

    /// Indices of rows `x` violates.
    pub fn violated_rows(&self, x: &[BigRational]) -> Vec<usize> {
        (0..self.rows.len()).filter(|&i| !self.rows[i].holds(x)).collect()
    }
}

fn normalize(o: &RowOrigin) -> RowOrigin {
    match *o {
        RowOrigin::Submodular { a, b } if b.mask() < a.mask() => RowOrigin::Submodular { a: b, b: a },
        other => other,
    }
}

fn class_count(g: GroundSet) -> usize {
    1usize << (g.n() - 1)
}

fn class_of(g: GroundSet, mask: Mask) -> usize {
    let top = 1u128 << (g.n() - 1);
    (if mask & top != 0 { g.full_mask() & !mask } else { mask }) as usize
}

fn submodular_row(g: GroundSet, a: Mask, b: Mask) -> Row {
    let c = |m| class_of(g, m);
    let set = |m| g.set_from_mask(m).expect("subset of V");
    Row::new(
        [(c(a), 1), (c(b), 1), (c(a & b), -1), (c(a | b), -1)],
        0,
        RowOrigin::Submodular { a: set(a), b: set(b) },
    )
}

fn threshold_row(g: GroundSet, class: usize, member: bool) -> Row {
    let set = g.set_from_mask(class as Mask).expect("class index is a subset mask");
    let lambda = class_count(g);
    if member {
        Row::new([(lambda, 1), (class, -1)], 1, RowOrigin::Member { set })
    } else {
        Row::new([(class, 1), (lambda, -1)], 0, RowOrigin::NonMember { set })
    }
}

/// Membership of each class in `F̂`, after the mode's pre-checks.
fn target_classes(f: &Family, mode: RealizeMode) -> Result<Vec<bool>, LpError> {
    let g = f.ground();
    if let Some(m) = f.members().iter().find(|m| !m.set.is_proper()) {
        return Err(LpError::TrivialMember(m.set.to_string()));
    }
    if mode == RealizeMode::Literal {
        if let Some(m) = f.members().iter().find(|m| !f.contains(&m.set.complement())) {
            return Err(LpError::ComplementClosure {
                witness: m.set,
                complement: m.set.complement(),
            });
        }
    }
    let mut inside = vec![false; class_count(g)];
    for s in f.sets() {
        inside[class_of(g, s.mask())] = true;
    }
    Ok(inside)
}

/// The full realizability problem: a submodularity row for every unordered
/// pair of `⊆`-incomparable subsets of `V`, and one threshold row per class
/// other than `{∅, V}`.
pub fn build_realizability_lp(f: &Family, mode: RealizeMode, cfg: &Config) -> Result<LpProblem, LpError> {
    let g = f.ground();
    if g.k() > cfg.lp_max_k {
        return Err(LpError::TooLarge { k: g.k(), max: cfg.lp_max_k });
    }
    let inside = target_classes(f, mode)?;
    let subsets = 1u128 << g.n();
    let mut rows = Vec::new();
    for a in 0..subsets {
        for b in a + 1..subsets {
            if a & b != a && a & b != b {
                rows.push(submodular_row(g, a, b));
            }
        }
    }
    for (class, &member) in inside.iter().enumerate().skip(1) {
        rows.push(threshold_row(g, class, member));
    }
    Ok(LpProblem { ground: g, mode, rows })
}

/// Only the rows a certificate over `pairs` (difference form, mapped to the
/// intersection form `{A, V − B}`) and over the `sets` threshold rows needs.
/// No size cap applies: the row count is linear in the input.
pub fn build_partial_lp(
    f: &Family,
    mode: RealizeMode,
    pairs: &[(ESet, ESet)],
    sets: &[ESet],
) -> Result<LpProblem, LpError> {
    let g = f.ground();
    let inside = target_classes(f, mode)?;
    let mut rows: Vec<Row> = pairs
        .iter()
        .map(|(a, b)| {
            let (x, y) = (a.mask(), g.full_mask() & !b.mask());
            submodular_row(g, x.min(y), x.max(y))
        })
        .collect();
    let mut seen = std::collections::BTreeSet::new();
    for s in sets {
        let class = class_of(g, s.mask());
        if class != 0 && seen.insert(class) {
            rows.push(threshold_row(g, class, inside[class]));
        }
    }
    Ok(LpProblem { ground: g, mode, rows })
}

/// Nonnegative multipliers, one per row.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FarkasCertificate {
    pub multipliers: Vec<BigRational>,
}

impl FarkasCertificate {
    /// `(row, multiplier)` for every nonzero multiplier.
    pub fn support(&self) -> Vec<(usize, &BigRational)> {
        self.multipliers
            .iter()
            .enumerate()
            .filter(|(_, y)| !y.is_zero())
            .collect()
    }
}

/// True iff every multiplier is nonnegative, the weighted coefficient sum is
/// the zero vector and the weighted right-hand side is strictly positive.
pub fn verify_farkas(p: &LpProblem, c: &FarkasCertificate) -> Result<bool, LpError> {
    if c.multipliers.len() != p.rows.len() {
        return Err(LpError::MultiplierCount {
            got: c.multipliers.len(),
            expected: p.rows.len(),
        });
    }
    if c.multipliers.iter().any(|y| y.is_negative()) {
        return Ok(false);
    }
    let mut lhs: HashMap<usize, BigRational> = HashMap::new();
    let mut rhs = BigRational::zero();
    for (row, y) in p.rows.iter().zip(&c.multipliers) {
        if y.is_zero() {
            continue;
        }
        for &(v, coef) in &row.coefs {
            *lhs.entry(v).or_insert_with(BigRational::zero) += y * rat(coef);
        }
        rhs += y * rat(row.rhs);
    }
    Ok(lhs.values().all(Zero::is_zero) && rhs.is_positive())
}

/// The telescoping certificate as LP multipliers: one per difference-form
/// pair, one per `V_i` membership row and one per non-member row for
/// `{v_1}`, `{v_2}` and each `W_i`.
pub fn hand_certificate(p: &LpProblem, c: &Certificate) -> Result<FarkasCertificate, LpError> {
    let g = p.ground;
    if c.k != g.k() {
        return Err(crate::error::CertificateError::KMismatch {
            family: g.k(),
            certificate: c.k,
        }
        .into());
    }
    let mut y = vec![BigRational::zero(); p.rows.len()];
    let mut bump = |origin: RowOrigin| -> Result<(), LpError> {
        let i = p.position(&origin).ok_or_else(|| LpError::MissingRow(origin.to_string()))?;
        y[i] += rat(1);
        Ok(())
    };
    for (a, b) in c.pairs() {
        bump(RowOrigin::Submodular { a, b: b.complement() })?;
    }
    for v in g.coordinate_sets() {
        bump(RowOrigin::Member { set: p.representative(p.class_of(&v)) })?;
    }
    for s in certificate_non_members(c)? {
        bump(RowOrigin::NonMember { set: p.representative(p.class_of(&s)) })?;
    }
    Ok(FarkasCertificate { multipliers: y })
}

/// `{v_1}`, `{v_2}`, `W_3`, ..., `W_k`.
pub fn certificate_non_members(c: &Certificate) -> Result<Vec<ESet>, LpError> {
    let g = c.ground();
    let unit = |i| -> Result<ESet, LpError> {
        let e = g.unit_vector(i).map_err(crate::error::CertificateError::from)?;
        Ok(g.set_of([e]).map_err(crate::error::CertificateError::from)?)
    };
    let mut out = vec![unit(1)?, unit(2)?];
    out.extend(c.w_sets.iter().copied());
    Ok(out)
}

/// The rows [`hand_certificate`] touches, for [`build_partial_lp`].
pub fn certificate_rows(c: &Certificate) -> Result<(Vec<(ESet, ESet)>, Vec<ESet>), LpError> {
    let mut sets = c.ground().coordinate_sets();
    sets.extend(certificate_non_members(c)?);
    Ok((c.pairs(), sets))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpOutcome {
    /// `g` per class (indexed like the variables) and `λ`.
    Feasible { g: Vec<BigRational>, lambda: BigRational },
    Infeasible(FarkasCertificate),
    /// Pivot budget spent before a verdict.
    BudgetExhausted { pivots: u64 },
}

impl LpOutcome {
    pub fn label(&self) -> &'static str {
        match self {
            LpOutcome::Feasible { .. } => "feasible",
            LpOutcome::Infeasible(_) => "infeasible",
            LpOutcome::BudgetExhausted { .. } => "budget-exhausted",
        }
    }

    /// Full assignment in variable order, λ last.
    pub fn assignment(&self) -> Option<Vec<BigRational>> {
        match self {
            LpOutcome::Feasible { g, lambda } => {
                let mut x = g.clone();
                x.push(lambda.clone());
                Some(x)
            }
            _ => None,
        }
    }
}

fn ser_rat<S: Serializer>(v: &BigRational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

#[derive(Debug, Clone, Serialize)]
pub struct WitnessEntry {
    pub class: ESet,
    #[serde(serialize_with = "ser_rat")]
    pub value: BigRational,
}

#[derive(Debug, Clone, Serialize)]
pub struct MultiplierEntry {
    pub row: usize,
    pub origin: RowOrigin,
    #[serde(serialize_with = "ser_rat")]
    pub value: BigRational,
}

/// Report document: mode, dimensions, verdict and either the witness table
/// or the tagged Farkas multipliers.
#[derive(Debug, Clone, Serialize)]
pub struct LpReport {
    pub mode: RealizeMode,
    pub k: u32,
    pub variables: usize,
    pub rows: usize,
    pub outcome: &'static str,
    /// Re-check of the answer: rows violated by the witness, or the Farkas
    /// verification verdict.
    pub verified: bool,
    #[serde(skip_serializing_if = "Option::is_none", serialize_with = "ser_opt_rat")]
    pub lambda: Option<BigRational>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub witness: Vec<WitnessEntry>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub multipliers: Vec<MultiplierEntry>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pivots: Option<u64>,
}

fn ser_opt_rat<S: Serializer>(v: &Option<BigRational>, s: S) -> Result<S::Ok, S::Error> {
    match v {
        Some(r) => ser_rat(r, s),
        None => s.serialize_none(),
    }
}

impl LpReport {
    pub fn new(p: &LpProblem, outcome: &LpOutcome) -> Self {
        let mut report = LpReport {
            mode: p.mode,
            k: p.ground.k(),
            variables: p.variables(),
            rows: p.rows.len(),
            outcome: outcome.label(),
            verified: false,
            lambda: None,
            witness: Vec::new(),
            multipliers: Vec::new(),
            pivots: None,
        };
        match outcome {
            LpOutcome::Feasible { g, lambda } => {
                let x = outcome.assignment().expect("feasible");
                report.verified = p.violated_rows(&x).is_empty();
                report.lambda = Some(lambda.clone());
                report.witness = g
                    .iter()
                    .enumerate()
                    .map(|(c, v)| WitnessEntry {
                        class: p.representative(c),
                        value: v.clone(),
                    })
                    .collect();
            }
            LpOutcome::Infeasible(cert) => {
                report.verified = verify_farkas(p, cert).unwrap_or(false);
                report.multipliers = cert
                    .support()
                    .into_iter()
                    .map(|(row, v)| MultiplierEntry {
                        row,
                        origin: p.rows[row].origin,
                        value: v.clone(),
                    })
                    .collect();
            }
            LpOutcome::BudgetExhausted { pivots } => report.pivots = Some(*pivots),
        }
        report
    }
}

#[cfg(test)]
mod tests;
