//! Phase-I revised simplex on the Farkas alternative.
//!
//! The rows `a_i · x ≥ b_i` (x free) are infeasible iff some `y ≥ 0` has
//! `Σ y_i a_i = 0` and `Σ y_i b_i = 1`. We minimize the artificial sum of
//! that system. Optimum 0 hands back `y` directly; a positive optimum `π_t`
//! makes the final duals a primal point, `x = −π_x / π_t`, because dual
//! feasibility reads `π_x · a_i + π_t b_i ≤ 0` for every row.
//!
//! Arithmetic is fraction-free: `B^{-1} = N / d` with `N` an integer matrix
//! and `d = det B > 0`, updated by exact integer division, so no gcd is
//! taken inside the loop.
//!
//! Pricing is Dantzig's rule. Every submodularity row is homogeneous, so
//! the start is massively degenerate and unperturbed pivoting stalls. The
//! right-hand side gets a small perturbation `δ`; the final basis is then
//! re-checked against the true right-hand side. If that check fails the
//! solve restarts with `δ_r = ε^(r+1)`, squaring `ε` until it passes (for
//! small enough `ε` this is the lexicographic rule, so it terminates).

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{FarkasCertificate, LpOutcome, LpProblem};

struct Phase1 {
    m: usize,
    cols: Vec<Vec<(usize, i64)>>,
    /// `B^{-1} = n / d`.
    n: Vec<Vec<BigInt>>,
    d: BigInt,
    /// Column ids; `cols.len() + r` is the artificial of row `r`.
    basis: Vec<usize>,
    basic: Vec<bool>,
    /// `d · B^{-1} rhs` for the scaled, perturbed right-hand side.
    xs: Vec<BigInt>,
}

impl Phase1 {
    fn new(p: &LpProblem, rhs: &[BigInt]) -> Self {
        let m = p.variables() + 1;
        let cols: Vec<Vec<(usize, i64)>> = p
            .rows()
            .iter()
            .map(|r| {
                let mut c = r.coefs.clone();
                if r.rhs != 0 {
                    c.push((m - 1, r.rhs));
                }
                c
            })
            .collect();
        let ncols = cols.len();
        let n = (0..m)
            .map(|i| (0..m).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
            .collect();
        Phase1 {
            m,
            basis: (0..m).map(|r| ncols + r).collect(),
            basic: vec![false; ncols],
            cols,
            n,
            d: BigInt::one(),
            xs: rhs.to_vec(),
        }
    }

    fn is_artificial(&self, id: usize) -> bool {
        id >= self.cols.len()
    }

    /// `d · c_B B^{-1}`: the sum of the `N` rows held by artificials.
    fn duals(&self) -> Vec<BigInt> {
        let mut pi = vec![BigInt::zero(); self.m];
        for (i, &id) in self.basis.iter().enumerate() {
            if self.is_artificial(id) {
                for (r, v) in self.n[i].iter().enumerate() {
                    if !v.is_zero() {
                        pi[r] += v;
                    }
                }
            }
        }
        pi
    }

    /// Scaled artificial sum.
    fn objective(&self) -> BigInt {
        self.basis
            .iter()
            .zip(&self.xs)
            .filter(|(&id, _)| self.is_artificial(id))
            .map(|(_, v)| v)
            .sum()
    }

    /// Entering column, or `None` at optimality. Reduced costs are
    /// `−π · a_j`, so a column improves iff `π · a_j > 0`.
    fn price(&self, pi: &[BigInt]) -> Option<usize> {
        let mut best: Option<(usize, BigInt)> = None;
        for (j, col) in self.cols.iter().enumerate() {
            if self.basic[j] {
                continue;
            }
            let mut s = BigInt::zero();
            for &(r, c) in col {
                if !pi[r].is_zero() {
                    s += &pi[r] * c;
                }
            }
            if s.is_positive() && best.as_ref().is_none_or(|(_, b)| s > *b) {
                best = Some((j, s));
            }
        }
        best.map(|(j, _)| j)
    }

    /// `d · B^{-1} a_q`.
    fn column(&self, q: usize) -> Vec<BigInt> {
        self.n
            .iter()
            .map(|row| {
                let mut acc = BigInt::zero();
                for &(r, c) in &self.cols[q] {
                    if !row[r].is_zero() {
                        acc += &row[r] * c;
                    }
                }
                acc
            })
            .collect()
    }

    /// Leaving row by minimum ratio `xs_i / α_i`, ties to the smallest
    /// column id.
    fn ratio(&self, alpha: &[BigInt]) -> Option<usize> {
        let mut best: Option<usize> = None;
        for (i, a) in alpha.iter().enumerate() {
            if !a.is_positive() {
                continue;
            }
            best = Some(match best {
                None => i,
                Some(b) => {
                    let ord = (&self.xs[i] * &alpha[b]).cmp(&(&self.xs[b] * a));
                    if ord == Ordering::Less || (ord == Ordering::Equal && self.basis[i] < self.basis[b]) {
                        i
                    } else {
                        b
                    }
                }
            });
        }
        best
    }

    /// Fraction-free update: the pivot `α_p` becomes the new denominator,
    /// row `p` keeps its numerators and every other row becomes
    /// `(N_i α_p − α_i N_p) / d`, an exact division.
    fn pivot(&mut self, q: usize, p: usize, alpha: &[BigInt]) {
        let ap = alpha[p].clone();
        let np = self.n[p].clone();
        let xp = self.xs[p].clone();
        for (i, a) in alpha.iter().enumerate() {
            if i == p {
                continue;
            }
            for (v, pv) in self.n[i].iter_mut().zip(&np) {
                if a.is_zero() || pv.is_zero() {
                    if !v.is_zero() {
                        *v = &*v * &ap / &self.d;
                    }
                } else {
                    *v = (&*v * &ap - a * pv) / &self.d;
                }
            }
            self.xs[i] = (&self.xs[i] * &ap - a * &xp) / &self.d;
        }
        self.d = ap;
        let out = self.basis[p];
        if !self.is_artificial(out) {
            self.basic[out] = false;
        }
        self.basis[p] = q;
        self.basic[q] = true;
    }

    /// `B^{-1} e_t`, the basic solution for the unperturbed right-hand side.
    fn exact_xb(&self) -> Vec<BigRational> {
        self.n
            .iter()
            .map(|row| BigRational::new(row[self.m - 1].clone(), self.d.clone()))
            .collect()
    }
}

/// `2^40 e_t + h(r)` with `h` a fixed integer hash below `2^20`.
fn scattered(m: usize) -> Vec<BigInt> {
    let mut out: Vec<BigInt> = (0..m)
        .map(|r| BigInt::from(((r as u64 + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15) >> 44) | 1))
        .collect();
    out[m - 1] += BigInt::one() << 40u32;
    out
}

/// `e_t + Σ ε^(r+1) e_r` with `ε = 2^-bits`, scaled to integers.
fn powers(m: usize, bits: usize) -> Vec<BigInt> {
    let top = bits * m;
    let mut out: Vec<BigInt> = (0..m).map(|r| BigInt::one() << (top - bits * (r + 1))).collect();
    out[m - 1] += BigInt::one() << top;
    out
}

/// Decide feasibility of `p` exactly, within `pivot_budget` pivots.
pub fn solve_feasibility(p: &LpProblem, pivot_budget: u64) -> LpOutcome {
    let m = p.variables() + 1;
    let mut pivots = 0u64;
    if let Some(out) = run(p, &scattered(m), pivot_budget, &mut pivots) {
        return out;
    }
    let mut bits = 16;
    loop {
        log::debug!("perturbation too coarse after {pivots} pivots; retrying with 2^-{bits}");
        if let Some(out) = run(p, &powers(m, bits), pivot_budget, &mut pivots) {
            return out;
        }
        bits *= 2;
    }
}

/// One perturbed solve; `None` when the final basis is infeasible for the
/// true right-hand side.
fn run(p: &LpProblem, rhs: &[BigInt], pivot_budget: u64, pivots: &mut u64) -> Option<LpOutcome> {
    let mut t = Phase1::new(p, rhs);
    loop {
        let pi = t.duals();
        let Some(q) = t.price(&pi) else {
            let xb = t.exact_xb();
            if xb.iter().any(Signed::is_negative) {
                return None;
            }
            return Some(finish(p, &t, &xb, &pi));
        };
        if *pivots >= pivot_budget {
            return Some(LpOutcome::BudgetExhausted { pivots: *pivots });
        }
        let alpha = t.column(q);
        // The artificial objective is bounded below by zero, so an improving
        // column always has a positive entry.
        let r = t.ratio(&alpha).expect("phase one is bounded");
        t.pivot(q, r, &alpha);
        *pivots += 1;
        if *pivots % 500 == 0 {
            log::debug!("pivot {pivots}: scaled objective has {} bits", t.objective().bits());
        }
    }
}

fn finish(p: &LpProblem, t: &Phase1, xb: &[BigRational], pi: &[BigInt]) -> LpOutcome {
    let objective: BigRational = t
        .basis
        .iter()
        .zip(xb)
        .filter(|(&id, _)| t.is_artificial(id))
        .map(|(_, v)| v.clone())
        .sum();
    if objective.is_zero() {
        let mut y = vec![BigRational::zero(); t.cols.len()];
        for (i, &id) in t.basis.iter().enumerate() {
            if !t.is_artificial(id) {
                y[id] = xb[i].clone();
            }
        }
        return LpOutcome::Infeasible(FarkasCertificate { multipliers: y });
    }
    // π_t is the optimum, positive; the common factor d cancels
    let pt = pi[t.m - 1].clone();
    let mut x: Vec<BigRational> = pi[..t.m - 1]
        .iter()
        .map(|v| BigRational::new(-v.clone(), pt.clone()))
        .collect();
    let lambda = x.pop().expect("λ is the last variable");
    debug_assert_eq!(x.len(), p.classes());
    LpOutcome::Feasible { g: x, lambda }
}
