//! Cyclic quotient singularities and their extremal P-resolutions.
//!
//! A c.q.s. `1/Δ(1, Ω)` is stored as a [`Frac`] (alias [`Cqs`]).
//! Provides:
//!
//! - [`PRes`]: an extremal P-resolution `[W₀]–c–[W₁]` (two Wahl
//!   singularities flanking a curve of self-intersection `−c`) with its
//!   invariant `δ = (c−1)n₀n₁ + n₁a₀ − n₀a₁`;
//! - [`find_extremal_presolutions`]: exact scan over all splittings of
//!   `expand(Δ, Ω)` into Wahl prefix + one middle entry + Wahl suffix
//!   (at most two hits, always sharing `δ`), and [`is_wormhole`];
//! - [`markov_cqs`] / [`markov_cqs_reduced`]: the degeneration
//!   singularities `Δ = c²(8c⁴−2c²−1)` and
//!   `Δ₀ = (4c+w)(5c−w)−9, Ω₀ = c(4c+w)−1` attached to a Markov number
//!   with weight `w`;
//! - [`MarkedCF`] and [`reduce_marked_cf`]: zero continued fractions with
//!   two marked entries viewed as triangulations with a distinguished
//!   vertex, and the triangle-erasing reduction that carries the big
//!   Markov c.q.s. down to its reduced form while preserving `δ`;
//! - [`dedekind_check`]: the classical Dedekind sum `12·s(Ω₀, Δ₀)` by the
//!   reciprocity recursion, against two closed forms.

use crate::hjcf::{evaluate, expand, is_zero_cf, mod_inverse, value_pair, Frac, HjSeq};
use crate::wahl::{recognize_wahl, WahlSing};
use crate::{int, Error, Int, Rat, Result};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// A cyclic quotient singularity `1/Δ(1, Ω)`.
pub type Cqs = Frac;

/// An extremal P-resolution: Wahl singularities `w0`, `w1` (possibly
/// smooth, encoded `(1,0)`) flanking a curve with self-intersection `−c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PRes {
    w0: WahlSing,
    c: Int,
    w1: WahlSing,
    delta: Int,
    cqs: Cqs,
}

fn effective_a0(w: &WahlSing) -> Int {
    if w.is_smooth() { Int::zero() } else { w.a().clone() }
}

fn effective_a1(w: &WahlSing) -> Int {
    if w.is_smooth() { Int::one() } else { w.a().clone() }
}

impl PRes {
    /// Builds the resolution `[chain(w0), c, chain(w1)]`, deriving `δ` and
    /// the contracted c.q.s. from the exact value of that chain.
    pub fn new(w0: WahlSing, c: Int, w1: WahlSing) -> Result<PRes> {
        if c < Int::one() {
            return Err(Error::invalid("middle curve index must be >= 1"));
        }
        let (n0, n1) = (w0.n().clone(), w1.n().clone());
        let a0 = effective_a0(&w0);
        let a1 = effective_a1(&w1);
        let delta = (&c - Int::one()) * &n0 * &n1 + &n1 * &a0 - &n0 * &a1;
        if !delta.is_positive() {
            return Err(Error::invalid(format!(
                "not extremal: delta = {delta} for {w0}-{c}-{w1}"
            )));
        }
        let mut seq = w0.chain();
        seq.push(c.clone());
        seq.extend(w1.chain());
        let value = evaluate(&seq)
            .ok_or_else(|| Error::invalid("resolution chain has no continued-fraction value"))?;
        if value <= Rat::one() {
            return Err(Error::invalid("resolution chain value must exceed 1"));
        }
        let cqs = Frac::from_value(value.numer(), value.denom())?;
        let expect = &n0 * &n0 + &n1 * &n1 + &delta * &n0 * &n1;
        if cqs.delta() != &expect {
            return Err(Error::invariant(format!(
                "delta identity broken: {} vs n0² + n1² + δn0n1 = {expect}",
                cqs.delta()
            )));
        }
        debug_assert_eq!(
            {
                let raw = -&n1 * &n1 * (&c - Int::one())
                    + (&n0 + &delta * &n1) * &a0
                    + &n1 * &a1
                    - Int::one();
                raw.mod_floor(cqs.delta())
            },
            cqs.omega().clone(),
            "closed-form omega must agree with the chain value"
        );
        Ok(PRes { w0, c, w1, delta, cqs })
    }

    pub fn w0(&self) -> &WahlSing {
        &self.w0
    }

    pub fn c(&self) -> &Int {
        &self.c
    }

    pub fn w1(&self) -> &WahlSing {
        &self.w1
    }

    pub fn delta(&self) -> &Int {
        &self.delta
    }

    /// The c.q.s. `Δ/Ω` this resolution contracts to.
    pub fn cqs(&self) -> &Cqs {
        &self.cqs
    }

    /// The P-resolution read backwards: swaps the flanks and reverses each
    /// singularity; `δ` is unchanged and `Ω` becomes its inverse.
    pub fn reversed(&self) -> PRes {
        PRes::new(self.w1.reversed(), self.c.clone(), self.w0.reversed())
            .expect("reversal preserves extremality")
    }
}

impl std::fmt::Display for PRes {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}-{}-{}", self.w0, self.c, self.w1)
    }
}

/// All extremal P-resolutions of `s`.
///
/// Middle-curve index `c ≥ 2`: the chain `[chain(w0), c, chain(w1)]` has
/// every entry `≥ 2`, so it *is* `expand(Δ, Ω)`; scanning all splittings
/// into a Wahl-recognizable prefix, one middle entry, and a
/// Wahl-recognizable suffix is exhaustive.
///
/// Middle-curve index `c = 1`: the chain blows down before reaching the
/// canonical expansion, so splittings miss it.  But blow-down preserves
/// the continuant matrix, so `M(w0) · [[1,−1],[1,0]] · M(w1)` must equal
/// the continuant matrix of `expand(Δ, Ω)` exactly; matching first
/// columns pins `(n₁², n₁a₁ − 1)` as a unimodular image of `(Δ, Ω)`, and
/// for each `n₀` only one `a₀` can put `n₁²` inside `(0, Δ)`.  That gives
/// an `O(√Δ)` scan with no false negatives; every candidate is
/// re-validated by evaluating its chain.
///
/// Returns at most two resolutions; when two are found they share `δ`
/// (asserted).
pub fn find_extremal_presolutions(s: &Cqs) -> Vec<PRes> {
    let e = s.expansion();
    let mut out = Vec::new();
    for mid in 0..e.len() {
        let prefix = &e[..mid];
        let suffix = &e[mid + 1..];
        let w0 = if prefix.is_empty() {
            Some(WahlSing::smooth())
        } else {
            recognize_wahl(prefix)
        };
        let w1 = if suffix.is_empty() {
            Some(WahlSing::smooth())
        } else {
            recognize_wahl(suffix)
        };
        if let (Some(w0), Some(w1)) = (w0, w1) {
            if let Ok(p) = PRes::new(w0, e[mid].clone(), w1) {
                debug_assert_eq!(p.cqs(), s);
                out.push(p);
            }
        }
    }
    out.extend(find_unit_middle_presolutions(s));
    assert!(out.len() <= 2, "more than two extremal P-resolutions of {s}");
    if out.len() == 2 {
        assert_eq!(out[0].delta, out[1].delta, "wormhole flanks must share delta");
    }
    out
}

/// Resolutions `[chain(n₀,a₀), 1, chain(n₁,a₁)]` of `s`.  A smooth flank
/// next to a `(−1)`-curve forces `δ ≤ 0`, so both flanks are genuine Wahl
/// singularities and `n₀² < Δ`, `n₁² < Δ`.
fn find_unit_middle_presolutions(s: &Cqs) -> Vec<PRes> {
    let (delta_s, omega) = (s.delta(), s.omega());
    let mut out = Vec::new();
    let mut n0 = int(2);
    while &n0 * &n0 < *delta_s {
        let base = (&n0 * omega).div_floor(delta_s);
        for shift in 0..2 {
            let a0 = &base + int(shift);
            if !a0.is_positive() || a0 >= n0 || !n0.gcd(&a0).is_one() {
                continue;
            }
            // first column of M(w0)·F·M(w1) must be (Δ, Ω); the top entry
            // needs only the cheap part of the continuant matrix of
            // chain(n0, a0), so test it before touching any inverses
            let a_entry = &n0 * &n0;
            let c_entry = &n0 * &a0 - Int::one();
            let n1_sq = &a_entry * omega - &c_entry * delta_s;
            if n1_sq < int(4) {
                continue;
            }
            let n1 = n1_sq.sqrt();
            if &n1 * &n1 != n1_sq {
                continue;
            }
            let b_entry = mod_inverse(&c_entry, &a_entry).expect("coprime to n²");
            let d_entry = (&b_entry * &c_entry - Int::one()) / &a_entry;
            let c1 = (&a_entry - &b_entry) * omega - (&c_entry - &d_entry) * delta_s;
            if !c1.is_positive() || !(&c1 + Int::one()).mod_floor(&n1).is_zero() {
                continue;
            }
            let a1 = (&c1 + Int::one()) / &n1;
            if !a1.is_positive() || a1 >= n1 || !n1.gcd(&a1).is_one() {
                continue;
            }
            let (w0, w1) = match (
                WahlSing::new(n0.clone(), a0.clone()),
                WahlSing::new(n1.clone(), a1),
            ) {
                (Ok(w0), Ok(w1)) => (w0, w1),
                _ => continue,
            };
            if let Ok(p) = PRes::new(w0, Int::one(), w1) {
                if p.cqs() == s {
                    out.push(p);
                }
            }
        }
        n0 += Int::one();
    }
    out
}

/// True when `s` has two distinct extremal P-resolutions.
pub fn is_wormhole(s: &Cqs) -> bool {
    let found = find_extremal_presolutions(s);
    found.len() == 2 && found[0] != found[1]
}

fn check_t_weight(c: &Int, w: &Int) -> Result<()> {
    if !w.is_positive() || w >= c {
        return Err(Error::invalid(format!("weight {w} out of range for {c}")));
    }
    if !(w * w + int(9)).mod_floor(c).is_zero() {
        return Err(Error::invalid(format!("w² + 9 not divisible by {c}: w = {w}")));
    }
    Ok(())
}

/// The c.q.s. `1/Δ(1, Ω)` with `Δ = c²(8c⁴ − 2c² − 1)` and
/// `Ω = c² + (cζ + 1)(8c⁴ − 2c² − 1) mod Δ`, for a Markov number `c`
/// with weight residue `ζ` (either `w_c` or `c − w_c`).
pub fn markov_cqs(c: &Int, zeta: &Int) -> Result<Cqs> {
    if c.is_one() {
        return Err(Error::invalid("need c > 1"));
    }
    check_t_weight(c, zeta)?;
    let c2 = c * c;
    let tail = int(8) * &c2 * &c2 - int(2) * &c2 - Int::one();
    let delta = &c2 * &tail;
    let omega = (&c2 + (c * zeta + Int::one()) * &tail).mod_floor(&delta);
    Frac::new(delta, omega)
}

/// The variant with the smaller correction term,
/// `Δ = c²(c²(9c²−4) − (c−1)²)`; kept for comparison only — it disagrees
/// with the flip-3 contraction (508 instead of 476 at `c = 2`).
pub fn markov_cqs_delta_alt(c: &Int) -> Int {
    let c2 = c * c;
    let d = int(9) * &c2 - int(4);
    let cm1 = c - Int::one();
    &c2 * (&c2 * d - &cm1 * &cm1)
}

/// The reduced Markov c.q.s. `Δ₀ = (4c+w)(5c−w) − 9`,
/// `Ω₀ = c(4c+w) − 1`.  Postconditions checked exactly:
/// `expand(Δ₀, Ω₀) = [5, expand(c, w), 2, expand(c, c − w⁻¹), 5]` and
/// `Ω₀ + Ω₀⁻¹ = 9c² − 2`.
pub fn markov_cqs_reduced(c: &Int, w: &Int) -> Result<Cqs> {
    if c.is_one() {
        return Err(Error::invalid("need c > 1"));
    }
    check_t_weight(c, w)?;
    let delta = (int(4) * c + w) * (int(5) * c - w) - int(9);
    let omega = c * (int(4) * c + w) - Int::one();
    let s = Frac::new(delta, omega)?;

    let mut shape = vec![int(5)];
    shape.extend(expand(c, w)?);
    shape.push(int(2));
    let winv = mod_inverse(w, c)?;
    shape.extend(expand(c, &(c - winv))?);
    shape.push(int(5));
    assert_eq!(s.expansion(), shape, "reduced c.q.s. expansion shape");

    assert_eq!(
        s.omega() + s.omega_inv(),
        int(9) * c * c - int(2),
        "omega plus its inverse"
    );
    Ok(s)
}

/// A continued fraction with two marked entries: decrementing both marks
/// yields a zero continued fraction, i.e. the sequence encodes a polygon
/// triangulation with a distinguished vertex `P₀` and two marked
/// vertices.  Positions are 1-based with `i < j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MarkedCF {
    seq: HjSeq,
    marks: (usize, usize),
}

impl MarkedCF {
    pub fn new(seq: HjSeq, marks: (usize, usize)) -> Result<MarkedCF> {
        let (i, j) = marks;
        if !(1 <= i && i < j && j <= seq.len()) {
            return Err(Error::invalid(format!("mark positions ({i}, {j}) out of range")));
        }
        let m = MarkedCF { seq, marks };
        if m.decremented().iter().any(|z| !z.is_positive()) {
            return Err(Error::invalid("marked entries must stay positive after decrement"));
        }
        if !is_zero_cf(&m.decremented()) {
            return Err(Error::invalid(
                "decrementing the marks must give a zero continued fraction",
            ));
        }
        Ok(m)
    }

    pub fn seq(&self) -> &HjSeq {
        &self.seq
    }

    pub fn marks(&self) -> (usize, usize) {
        self.marks
    }

    /// The sequence with both marked entries lowered by one.
    pub fn decremented(&self) -> HjSeq {
        let mut z = self.seq.clone();
        z[self.marks.0 - 1] -= 1;
        z[self.marks.1 - 1] -= 1;
        z
    }

    /// Triangle count of the distinguished vertex:
    /// `v₀ = 3(s−1) − Σ decremented`.
    pub fn v0(&self) -> Int {
        let total: Int = self.decremented().iter().sum();
        int(3) * int(self.seq.len() as i64 - 1) - total
    }

    /// The c.q.s. whose *dual* expansion is this sequence: the value of
    /// `seq` is `Δ/q` and the singularity is `1/Δ(1, Δ−q)`.
    pub fn underlying(&self) -> Result<Cqs> {
        let (num, den) = value_pair(&self.seq);
        Frac::new(num.clone(), &num - &den)
    }
}

impl std::fmt::Display for MarkedCF {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self
            .seq
            .iter()
            .enumerate()
            .map(|(k, e)| {
                if k + 1 == self.marks.0 || k + 1 == self.marks.1 {
                    format!("{e}*")
                } else {
                    e.to_string()
                }
            })
            .collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

/// All pairs `i < j` such that decrementing positions `i` and `j` of the
/// dual expansion `expand(Δ, Δ−Ω)` gives a zero continued fraction.
/// Nonempty exactly when `s` admits an extremal P-resolution.
pub fn mark_pairs(s: &Cqs) -> Vec<(usize, usize)> {
    let dual = s.dual_expansion();
    let mut out = Vec::new();
    for i in 1..=dual.len() {
        for j in (i + 1)..=dual.len() {
            let mut z = dual.clone();
            z[i - 1] -= 1;
            z[j - 1] -= 1;
            if z.iter().all(|e| e.is_positive()) && is_zero_cf(&z) {
                out.push((i, j));
            }
        }
    }
    out
}

/// The dual expansion of `s` with its first valid mark pair.
pub fn marked_dual(s: &Cqs) -> Result<MarkedCF> {
    let marks = mark_pairs(s)
        .into_iter()
        .next()
        .ok_or_else(|| Error::not_found(format!("{s} has no extremal P-resolution marks")))?;
    MarkedCF::new(s.dual_expansion(), marks)
}

/// One triangle-erasing step at the distinguished vertex.
///
/// Requires `v₀ = 1` (`P₀` lies in exactly one triangle); erasing that
/// ear decrements both neighbors `P₁`, `P_s`.  The new distinguished
/// vertex is the just-decremented end that is unmarked with exactly one
/// remaining triangle; when neither end qualifies, the reduction is at
/// its last step and the distinguished vertex is re-chosen among all
/// unmarked vertices of the cycle so as to maximize the value numerator
/// `Δ` of the remaining sequence (ties broken by smallest `Ω`).
/// `δ` of the encoded extremal P-resolution is preserved throughout.
pub fn reduce_marked_cf(m: &MarkedCF) -> Result<MarkedCF> {
    if !m.v0().is_one() {
        return Err(Error::invalid(format!(
            "already reduced: distinguished vertex has v0 = {} ≠ 1",
            m.v0()
        )));
    }
    let s = m.seq.len();
    let (mi, mj) = m.marks;
    // Erase the ear: both ends of the remaining path lose one triangle.
    let mut b = m.seq.clone();
    b[0] -= 1;
    b[s - 1] -= 1;
    let z_end_first = &b[0] - int(if mi == 1 { 1 } else { 0 });
    let z_end_last = &b[s - 1] - int(if mj == s { 1 } else { 0 });

    let last_ok = mj != s && z_end_last.is_one();
    let first_ok = mi != 1 && z_end_first.is_one();
    if last_ok {
        let seq = b[..s - 1].to_vec();
        return MarkedCF::new(seq, (mi, mj));
    }
    if first_ok {
        let seq = b[1..].to_vec();
        return MarkedCF::new(seq, (mi - 1, mj - 1));
    }

    // Final step: re-root the cycle at the best unmarked vertex.
    let mut best: Option<(Int, Int, MarkedCF)> = None;
    for p in 1..=s {
        if p == mi || p == mj {
            continue;
        }
        let mut seq = Vec::with_capacity(s - 1);
        let mut marks = Vec::new();
        for off in 1..s {
            let pos = (p - 1 + off) % s;
            seq.push(b[pos].clone());
            if pos + 1 == mi || pos + 1 == mj {
                marks.push(off);
            }
        }
        let (lo, hi) = (marks[0].min(marks[1]), marks[0].max(marks[1]));
        let Ok(cand) = MarkedCF::new(seq, (lo, hi)) else {
            continue;
        };
        let cqs = cand.underlying()?;
        let key = (cqs.delta().clone(), cqs.omega().clone());
        let better = match &best {
            None => true,
            Some((bd, bo, _)) => key.0 > *bd || (key.0 == *bd && key.1 < *bo),
        };
        if better {
            best = Some((key.0, key.1, cand));
        }
    }
    best.map(|(_, _, cand)| cand)
        .ok_or_else(|| Error::invariant("no admissible re-rooting at the final reduction step"))
}

/// Iterates [`reduce_marked_cf`] until the distinguished vertex has
/// `v₀ ≠ 1`.
pub fn reduce_fully(m: &MarkedCF) -> Result<MarkedCF> {
    let mut cur = m.clone();
    while cur.v0().is_one() {
        cur = reduce_marked_cf(&cur)?;
    }
    Ok(cur)
}

fn dedekind_sum(h: &Int, k: &Int) -> Rat {
    let h = h.mod_floor(k);
    if h.is_zero() {
        return Rat::zero();
    }
    let r = |n: Int| Rat::from_integer(n);
    let main = (r(h.clone()) / r(k.clone())
        + r(k.clone()) / r(h.clone())
        + Rat::new(Int::one(), &h * k))
        / r(int(12));
    -Rat::new(Int::one(), int(4)) + main - dedekind_sum(k, &h)
}

/// `12·s(Ω₀, Δ₀)` for the reduced Markov c.q.s. of `(c, w)`, computed by
/// the Euclidean reciprocity recursion and checked against the two closed
/// forms `1 + (9c²−2)/Δ₀` and `(29c² + cw − w² − 11)/(20c² + cw − w² − 9)`.
pub fn dedekind_check(c: &Int, w: &Int) -> Result<Rat> {
    let s = markov_cqs_reduced(c, w)?;
    let twelve_s = Rat::from_integer(int(12)) * dedekind_sum(s.omega(), s.delta());
    let first = Rat::one()
        + Rat::new(int(9) * c * c - int(2), s.delta().clone());
    let second = Rat::new(
        int(29) * c * c + c * w - w * w - int(11),
        int(20) * c * c + c * w - w * w - int(9),
    );
    if twelve_s != first || twelve_s != second {
        return Err(Error::invariant(format!(
            "Dedekind sum mismatch for (c, w) = ({c}, {w}): {twelve_s} vs {first} vs {second}"
        )));
    }
    Ok(twelve_s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hjcf::seq;

    fn cqs(d: i64, o: i64) -> Cqs {
        Frac::of(d, o).unwrap()
    }

    fn pres(s: &str) -> String {
        s.to_string()
    }

    #[test]
    fn presolution_finder_pins() {
        let found = find_extremal_presolutions(&cqs(11, 3));
        assert_eq!(found.len(), 1);
        assert_eq!(found[0].to_string(), pres("[2,1]-3-[]"));
        assert_eq!(found[0].delta(), &int(3));

        let found = find_extremal_presolutions(&cqs(21, 16));
        assert_eq!(found.len(), 1);
        assert_eq!(found[0].to_string(), pres("[]-2-[4,3]"));
        assert_eq!(found[0].delta(), &int(1));

        let found = find_extremal_presolutions(&cqs(72, 17));
        assert_eq!(found.len(), 1);
        assert_eq!(found[0].to_string(), pres("[3,1]-2-[3,2]"));
        assert_eq!(found[0].delta(), &int(6));

        let found = find_extremal_presolutions(&cqs(16965, 4001));
        assert_eq!(found.len(), 1);
        assert_eq!(found[0].to_string(), pres("[21,5]-2-[9,7]"));
        assert_eq!(found[0].delta(), &int(87));

        // a middle (−1)-curve: [6,2,2,1,7,2,2,2] blows down to [2,2,2,3,2,5]
        let found = find_extremal_presolutions(&cqs(61, 13));
        assert_eq!(found.len(), 1);
        assert_eq!(found[0].to_string(), pres("[4,1]-1-[5,1]"));
        assert_eq!(found[0].delta(), &int(1));

        assert!(find_extremal_presolutions(&cqs(5, 2)).is_empty());
        assert!(find_extremal_presolutions(&cqs(4, 3)).is_empty());
    }

    #[test]
    fn presolution_values() {
        // smooth-smooth middles
        for (d, o, c) in [(5i64, 1i64, 5i64), (3, 1, 3), (7, 1, 7)] {
            let p = PRes::new(WahlSing::smooth(), int(c), WahlSing::smooth()).unwrap();
            assert_eq!(p.cqs(), &cqs(d, o));
            assert_eq!(p.delta(), &int(c - 2));
        }
        let p = PRes::new(WahlSing::of(6, 1).unwrap(), int(4), WahlSing::smooth()).unwrap();
        assert_eq!(p.cqs(), &cqs(115, 16));
        assert_eq!(p.delta(), &int(13));
        // delta <= 0 is rejected
        assert!(PRes::new(WahlSing::smooth(), int(1), WahlSing::smooth()).is_err());
        // reversal preserves delta and inverts omega
        let p = find_extremal_presolutions(&cqs(11, 3)).remove(0);
        let r = p.reversed();
        assert_eq!(r.delta(), &int(3));
        assert!(r.cqs().same_class(&cqs(11, 3)));
    }

    #[test]
    fn wormholes() {
        assert!(!is_wormhole(&cqs(11, 3)));
        assert!(!is_wormhole(&cqs(72, 17)));
        assert!(!is_wormhole(&cqs(4, 1)));
    }

    #[test]
    fn markov_cqs_values() {
        assert_eq!(markov_cqs(&int(2), &int(1)).unwrap(), cqs(476, 361));
        let s = markov_cqs(&int(5), &int(1)).unwrap();
        assert_eq!(s.delta(), &int(123725));
        assert_eq!(s.delta(), &(int(25) * int(4949)));
        // the two weight orientations share Δ but are distinct singularities
        let s2 = markov_cqs(&int(5), &int(4)).unwrap();
        assert_eq!(s2.delta(), s.delta());
        assert_ne!(s2, s);
        // the variant delta formula disagrees: recorded, not asserted
        assert_eq!(markov_cqs_delta_alt(&int(2)), int(508));
        assert_ne!(markov_cqs_delta_alt(&int(2)), int(476));
        assert!(markov_cqs(&int(2), &int(0)).is_err());
        assert!(markov_cqs(&int(7), &int(2)).is_err());
    }

    #[test]
    fn markov_cqs_reduced_values() {
        let s = markov_cqs_reduced(&int(29), &int(22)).unwrap();
        assert_eq!(s, cqs(16965, 4001));
        assert_eq!(
            s.expansion(),
            seq(&[5, 2, 2, 2, 8, 2, 2, 2, 2, 2, 2, 2, 5, 5])
        );
        let s = markov_cqs_reduced(&int(2), &int(1)).unwrap();
        assert_eq!(s, cqs(72, 17));
        assert_eq!(s.expansion(), seq(&[5, 2, 2, 2, 5]));
        let s = markov_cqs_reduced(&int(5), &int(1)).unwrap();
        assert_eq!(s, cqs(495, 104));
        assert_eq!(s.expansion(), seq(&[5, 5, 2, 2, 2, 2, 2, 5]));
    }

    #[test]
    fn reduced_delta_splitting() {
        // Δ₀ = n₀² + n₁² + 3c·n₀n₁ with n₀ = 5b − w_b, n₁ = 4a + w_a for
        // the triple (a, b, c), and the P-resolution flanks carry
        // a₀ = b, a₁ = 2a + 3r_a.
        use crate::markov::MarkovTriple;
        for (a, b, c) in [(2i64, 5i64, 29i64), (1, 2, 5), (2, 29, 169)] {
            let t = MarkovTriple::of(a, b, c).unwrap();
            let w = t.weights();
            let wc = w.w_c.clone().unwrap();
            let s = markov_cqs_reduced(t.c(), &wc).unwrap();
            let n0 = int(5) * t.b() - w.w_b.clone().unwrap_or_else(|| Int::zero());
            let n1 = int(4) * t.a() + w.w_a.clone().unwrap_or_else(|| Int::zero());
            if a > 1 {
                assert_eq!(
                    s.delta(),
                    &(&n0 * &n0 + &n1 * &n1 + int(3) * t.c() * &n0 * &n1)
                );
                let found = find_extremal_presolutions(&s);
                assert_eq!(found.len(), 1);
                let p = &found[0];
                assert_eq!(p.delta(), &(int(3) * t.c()));
                assert_eq!(p.w0().n(), &n0);
                assert_eq!(p.w1().n(), &n1);
                assert_eq!(p.w0().a(), t.b());
                assert_eq!(
                    p.w1().a(),
                    &(int(2) * t.a() + int(3) * w.r_a.clone().unwrap())
                );
            }
        }
        // non-Markov c with a root of −9: no Wahl splitting
        let delta = (int(4) * int(10) + int(1)) * (int(5) * int(10) - int(1)) - int(9);
        let omega = int(10) * (int(4) * int(10) + int(1)) - Int::one();
        let s = Frac::new(delta, omega).unwrap();
        assert!(find_extremal_presolutions(&s).is_empty());
    }

    #[test]
    fn mark_pair_scan() {
        assert_eq!(mark_pairs(&cqs(476, 361)), vec![(1, 7)]);
        // [2,2,2] decremented at (1,3) is [1,2,1], the square triangulated
        // through one diagonal — so 1/4(1,1) does carry one resolution,
        // the bare (−4)-curve between two smooth points
        assert_eq!(mark_pairs(&cqs(4, 1)), vec![(1, 3)]);
        let found = find_extremal_presolutions(&cqs(4, 1));
        assert_eq!(found.len(), 1);
        assert_eq!(found[0].to_string(), pres("[]-4-[]"));
        assert_eq!(found[0].delta(), &int(2));
        let m = marked_dual(&cqs(476, 361)).unwrap();
        assert_eq!(m.seq(), &seq(&[5, 2, 2, 2, 2, 2, 2, 7, 2, 2]));
        assert_eq!(m.marks(), (1, 7));
        assert_eq!(m.v0(), int(1));
        assert_eq!(m.underlying().unwrap(), cqs(476, 361));
    }

    #[test]
    fn mark_existence_matches_presolutions() {
        // P-resolution exists iff a mark pair exists, over a dense sweep
        for d in 2i64..=120 {
            for o in 1..d {
                if int(d).gcd(&int(o)).is_one() {
                    let s = cqs(d, o);
                    let has_pres = !find_extremal_presolutions(&s).is_empty();
                    let has_marks = !mark_pairs(&s).is_empty();
                    assert_eq!(has_pres, has_marks, "Δ/Ω = {d}/{o}");
                }
            }
        }
    }

    #[test]
    fn reduction_walk() {
        let m = marked_dual(&cqs(476, 361)).unwrap();
        let step1 = reduce_marked_cf(&m).unwrap();
        assert_eq!(step1.seq(), &seq(&[4, 2, 2, 2, 2, 2, 2, 7, 2]));
        assert_eq!(step1.marks(), (1, 7));
        assert_eq!(step1.underlying().unwrap(), cqs(248, 169));

        let step2 = reduce_marked_cf(&step1).unwrap();
        assert_eq!(step2.seq(), &seq(&[3, 2, 2, 2, 2, 2, 2, 7]));
        assert_eq!(step2.underlying().unwrap(), cqs(92, 49));

        let step3 = reduce_marked_cf(&step2).unwrap();
        assert_eq!(step3.seq(), &seq(&[2, 2, 2, 6, 2, 2, 2]));
        assert_eq!(step3.marks(), (3, 5));
        assert_eq!(step3.underlying().unwrap(), cqs(72, 17));
        assert_eq!(step3.v0(), int(2));
        assert!(reduce_marked_cf(&step3).is_err());

        let end = reduce_fully(&m).unwrap();
        assert_eq!(end, step3);
        assert_eq!(end.underlying().unwrap(), markov_cqs_reduced(&int(2), &int(1)).unwrap());
    }

    #[test]
    fn reduction_of_bigger_markov_cqs() {
        let big = markov_cqs(&int(29), &int(22)).unwrap();
        let end = reduce_fully(&marked_dual(&big).unwrap()).unwrap();
        assert_eq!(
            end.underlying().unwrap(),
            markov_cqs_reduced(&int(29), &int(22)).unwrap()
        );
        // δ = 3c preserved from the big form to the reduced form
        let d_big = find_extremal_presolutions(&big);
        assert_eq!(d_big.len(), 1);
        assert_eq!(d_big[0].delta(), &int(87));
    }

    #[test]
    fn dedekind_values() {
        let v = dedekind_check(&int(2), &int(1)).unwrap();
        assert_eq!(v, Rat::new(int(53), int(36)));
        let v = dedekind_check(&int(29), &int(22)).unwrap();
        assert_eq!(v, Rat::one() + Rat::new(int(7567), int(16965)));
        // closed-form value at w = c/2 (as a real function of w)
        for c in [2i64, 5, 29, 433] {
            let cr = Rat::from_integer(int(c));
            let w = &cr / Rat::from_integer(int(2));
            let num = Rat::from_integer(int(29)) * &cr * &cr + &cr * &w
                - &w * &w
                - Rat::from_integer(int(11));
            let den = Rat::from_integer(int(20)) * &cr * &cr + &cr * &w
                - &w * &w
                - Rat::from_integer(int(9));
            let lhs = num / den;
            let rhs = Rat::new(int(117) * int(c) * int(c) - int(44), int(81) * int(c) * int(c) - int(36));
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn reduced_markov_gallery() {
        // (c, weight, expansion, P-resolution, dual expansion, mark pair);
        // δ = 3c throughout
        let cases: [(i64, i64, &[i64], &str, &[i64], (usize, usize)); 5] = [
            (
                29,
                22,
                &[5, 2, 2, 2, 8, 2, 2, 2, 2, 2, 2, 2, 5, 5],
                "[21,5]-2-[9,7]",
                &[2, 2, 2, 6, 2, 2, 2, 2, 2, 10, 2, 2, 3, 2, 2, 2],
                (5, 12),
            ),
            (
                169,
                128,
                &[5, 2, 2, 2, 10, 2, 2, 2, 2, 2, 6, 2, 2, 2, 2, 2, 2, 2, 5, 5],
                "[123,29]-2-[9,7]",
                &[2, 2, 2, 6, 2, 2, 2, 2, 2, 2, 2, 8, 2, 2, 2, 10, 2, 2, 3, 2, 2, 2],
                (11, 18),
            ),
            (
                194,
                163,
                &[5, 2, 2, 2, 2, 2, 5, 8, 2, 2, 2, 2, 2, 2, 2, 3, 2, 2, 7, 5],
                "[54,13]-2-[24,19]",
                &[2, 2, 2, 8, 2, 2, 3, 2, 2, 2, 2, 2, 10, 5, 2, 2, 2, 2, 3, 2, 2, 2],
                (6, 15),
            ),
            (
                433,
                104,
                &[5, 5, 2, 2, 2, 2, 2, 10, 2, 2, 3, 2, 2, 2, 2, 2, 2, 2, 8, 2, 2, 2, 5],
                "[138,29]-2-[21,16]",
                &[2, 2, 2, 3, 2, 2, 8, 2, 2, 2, 2, 2, 2, 2, 5, 10, 2, 2, 2, 2, 2, 6, 2, 2, 2],
                (8, 21),
            ),
            (
                985,
                746,
                &[5, 2, 2, 2, 10, 2, 2, 2, 8, 2, 2, 2, 2, 2, 2, 2, 6, 2, 2, 2, 2, 2, 2, 2, 5, 5],
                "[717,169]-2-[9,7]",
                &[2, 2, 2, 6, 2, 2, 2, 2, 2, 2, 2, 6, 2, 2, 2, 2, 2, 10, 2, 2, 2, 10, 2, 2, 3, 2, 2, 2],
                (13, 24),
            ),
        ];
        for (c, w, expansion, pres, dual, marks) in cases {
            let s = markov_cqs_reduced(&int(c), &int(w)).unwrap();
            assert_eq!(s.expansion(), seq(expansion), "c = {c}");
            let found = find_extremal_presolutions(&s);
            assert_eq!(found.len(), 1, "c = {c}");
            assert_eq!(found[0].to_string(), pres, "c = {c}");
            assert_eq!(found[0].delta(), &int(3 * c), "c = {c}");
            let md = marked_dual(&s).unwrap();
            assert_eq!(md.seq(), &seq(dual), "c = {c}");
            assert_eq!(md.marks(), marks, "c = {c}");
            assert_eq!(mark_pairs(&s), vec![marks], "c = {c}");
        }
    }
}
