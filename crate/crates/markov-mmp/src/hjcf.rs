//! Hirzebruch-Jung continued fractions over exact big integers.
//!
//! A sequence `[e1, e2, ..., er]` denotes the nested expression
//! `e1 - 1/(e2 - 1/(... - 1/er))`.  Provides:
//!
//! - [`expand`] and [`evaluate`], the two directions of the correspondence
//!   between reduced fractions `m/q` and their expansions;
//! - [`dual`] (the expansion of `m/(m-q)`) and [`inverse_den`]
//!   (`q^{-1} mod m`), together with the [`Frac`] type that carries a
//!   validated `Delta/Omega`;
//! - the elementary modifications [`blow_up`] / [`blow_down`] and the zero
//!   continued fractions they generate: [`is_zero_cf`],
//!   [`enumerate_zero_cf`] (with polygon-triangulation degree vectors),
//!   and the reachability test [`blows_down_to`];
//! - the continuant matrix [`matrix_of`].
//!
//! Entries of a sequence are big integers and may legitimately be `0` or
//! `1` in the zero-continued-fraction calculus; expansions of fractions
//! always have all entries `>= 2`.

use crate::{int, Error, Int, Rat, Result};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::collections::{BTreeSet, HashSet, VecDeque};

/// A Hirzebruch-Jung continued-fraction sequence.  Positions are 1-based
/// in every public operation, matching the usual notation `[e1,...,er]`.
pub type HjSeq = Vec<Int>;

/// Builds an [`HjSeq`] from machine integers; handy in tests and examples.
pub fn seq(entries: &[i64]) -> HjSeq {
    entries.iter().map(|&e| Int::from(e)).collect()
}

/// Renders a sequence as `[e1, e2, ..., er]` with `", "` separators.
pub fn seq_string(s: &[Int]) -> String {
    let inner: Vec<String> = s.iter().map(|e| e.to_string()).collect();
    format!("[{}]", inner.join(", "))
}

/// A validated fraction `Delta/Omega` with `0 < Omega < Delta` and
/// `gcd(Delta, Omega) = 1`.  This is the normal form in which cyclic
/// quotient singularity data travels through the crate.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Frac {
    delta: Int,
    omega: Int,
}

impl Frac {
    pub fn new(delta: Int, omega: Int) -> Result<Self> {
        if delta < int(2) {
            return Err(Error::invalid(format!(
                "fraction {delta}/{omega}: numerator must be >= 2"
            )));
        }
        if omega <= Int::zero() || omega >= delta {
            return Err(Error::invalid(format!(
                "fraction {delta}/{omega}: denominator must satisfy 0 < Omega < Delta"
            )));
        }
        if !delta.gcd(&omega).is_one() {
            return Err(Error::invalid(format!(
                "fraction {delta}/{omega}: not coprime"
            )));
        }
        Ok(Frac { delta, omega })
    }

    /// Convenience constructor from machine integers.
    pub fn of(delta: i64, omega: i64) -> Result<Self> {
        Frac::new(int(delta), int(omega))
    }

    /// Builds the fraction whose value is `num/den`, reducing `den`
    /// modulo `num` first.  `num >= 2` and `den` coprime to `num` are
    /// required; this is how evaluated chains (whose denominator may
    /// exceed the numerator) are normalized.
    pub fn from_value(num: &Int, den: &Int) -> Result<Self> {
        if *num < int(2) {
            return Err(Error::invalid(format!(
                "fraction value {num}/{den}: numerator must be >= 2"
            )));
        }
        let omega = den.mod_floor(num);
        Frac::new(num.clone(), omega)
    }

    pub fn delta(&self) -> &Int {
        &self.delta
    }

    pub fn omega(&self) -> &Int {
        &self.omega
    }

    /// `Omega^{-1} mod Delta`.
    pub fn omega_inv(&self) -> Int {
        mod_inverse(&self.omega, &self.delta).expect("coprime by construction")
    }

    /// The same singularity with the inverse denominator `Omega^{-1}`;
    /// geometrically this is the other orientation of the same chain.
    pub fn inverse(&self) -> Frac {
        let omega_inv = self.omega_inv();
        Frac::new(self.delta.clone(), omega_inv).expect("inverse denominator is valid")
    }

    /// True when `other` is the same fraction or its [`Frac::inverse`].
    pub fn same_class(&self, other: &Frac) -> bool {
        self == other || *self == other.inverse()
    }

    pub fn expansion(&self) -> HjSeq {
        expand(&self.delta, &self.omega).expect("valid fraction always expands")
    }

    /// Expansion of the dual fraction `Delta/(Delta-Omega)`.
    pub fn dual_expansion(&self) -> HjSeq {
        dual(&self.delta, &self.omega).expect("valid fraction always has a dual")
    }

    pub fn value(&self) -> Rat {
        Rat::new(self.delta.clone(), self.omega.clone())
    }
}

impl std::fmt::Display for Frac {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "1/{}(1,{})", self.delta, self.omega)
    }
}

/// `q^{-1} mod m` for coprime `0 < q < m`.
pub fn mod_inverse(q: &Int, m: &Int) -> Result<Int> {
    let e = q.extended_gcd(m);
    if !e.gcd.is_one() {
        return Err(Error::invalid(format!("{q} is not invertible mod {m}")));
    }
    Ok(e.x.mod_floor(m))
}

/// Expansion of `m/q` (`0 < q < m`, coprime) by ceiling division:
/// `e = ceil(m/q)` and the tail expands `q/(e*q - m)`.
///
/// All entries of the result are `>= 2` and evaluate back to `m/q`.
pub fn expand(m: &Int, q: &Int) -> Result<HjSeq> {
    if *m < int(2) || q <= &Int::zero() || q >= m {
        return Err(Error::invalid(format!(
            "expand({m}, {q}): need 0 < q < m with m >= 2"
        )));
    }
    if !m.gcd(q).is_one() {
        return Err(Error::invalid(format!("expand({m}, {q}): not coprime")));
    }
    let mut out = Vec::new();
    let mut m = m.clone();
    let mut q = q.clone();
    while !q.is_zero() {
        let e = m.div_ceil(&q);
        let next = &e * &q - &m;
        out.push(e);
        m = q;
        q = next;
    }
    Ok(out)
}

/// Expansion of the dual fraction `m/(m-q)`.
pub fn dual(m: &Int, q: &Int) -> Result<HjSeq> {
    let comp = m - q;
    expand(m, &comp)
}

/// `q^{-1} mod m`; reversing an expansion inverts the denominator, so this
/// is also the denominator of the reversed chain.
pub fn inverse_den(m: &Int, q: &Int) -> Result<Int> {
    mod_inverse(q, m)
}

/// Evaluates `[e1,...,er]` from the right.  Returns `None` when the
/// sequence is inadmissible: some proper tail `[ei,...,er]` (`i >= 2`)
/// evaluates to zero while entries remain on its left (division by zero)
/// or to a negative value.  The full value itself may be any rational,
/// including `0` (zero continued fractions) or negative.
pub fn evaluate(s: &[Int]) -> Option<Rat> {
    let (last, rest) = s.split_last()?;
    let mut v = Rat::from(last.clone());
    for e in rest.iter().rev() {
        if v <= Rat::zero() {
            return None;
        }
        v = Rat::from(e.clone()) - v.recip();
    }
    Some(v)
}

/// True exactly when the sequence is admissible and evaluates to zero.
pub fn is_zero_cf(s: &[Int]) -> bool {
    evaluate(s).is_some_and(|v| v.is_zero())
}

/// A 2x2 integer matrix `[[a, b], [c, d]]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mat2 {
    pub a: Int,
    pub b: Int,
    pub c: Int,
    pub d: Int,
}

impl Mat2 {
    pub fn identity() -> Self {
        Mat2 { a: Int::one(), b: Int::zero(), c: Int::zero(), d: Int::one() }
    }

    pub fn mul(&self, o: &Mat2) -> Mat2 {
        Mat2 {
            a: &self.a * &o.a + &self.b * &o.c,
            b: &self.a * &o.b + &self.b * &o.d,
            c: &self.c * &o.a + &self.d * &o.c,
            d: &self.c * &o.b + &self.d * &o.d,
        }
    }

    pub fn det(&self) -> Int {
        &self.a * &self.d - &self.b * &self.c
    }
}

/// Product of the continuant matrices `[[e, -1], [1, 0]]` over the
/// sequence.  For the expansion of `m/q` this equals
/// `[[m, -q'], [q, -(q q' - 1)/m]]` with `q' = q^{-1} mod m`.
pub fn matrix_of(s: &[Int]) -> Mat2 {
    let mut acc = Mat2::identity();
    for e in s {
        let step = Mat2 {
            a: e.clone(),
            b: -Int::one(),
            c: Int::one(),
            d: Int::zero(),
        };
        acc = acc.mul(&step);
    }
    acc
}

/// Numerator/denominator of the value via continuants, with no
/// admissibility checking; total on all sequences.  The pair is coprime
/// up to sign because the continuant matrix has determinant `1`.
pub fn value_pair(s: &[Int]) -> (Int, Int) {
    let m = matrix_of(s);
    (m.a, m.c)
}

/// Inserts a `1` at 1-based position `pos` (between entries `pos-1` and
/// `pos`; `pos` may be `1` or `len+1` for the two ends) and increments the
/// neighbors that exist.  Preserves the value of zero continued fractions.
pub fn blow_up(s: &[Int], pos: usize) -> Result<HjSeq> {
    if pos == 0 || pos > s.len() + 1 {
        return Err(Error::invalid(format!(
            "blow_up position {pos} out of range 1..={}",
            s.len() + 1
        )));
    }
    let mut out: HjSeq = Vec::with_capacity(s.len() + 1);
    out.extend_from_slice(&s[..pos - 1]);
    out.push(Int::one());
    out.extend_from_slice(&s[pos - 1..]);
    if pos >= 2 {
        out[pos - 2] += 1;
    }
    if pos < out.len() {
        out[pos] += 1;
    }
    Ok(out)
}

/// Removes the entry `1` at 1-based position `pos` and decrements the
/// neighbors that exist.  Errors when the entry is not `1` or a decrement
/// would drop below zero.
pub fn blow_down(s: &[Int], pos: usize) -> Result<HjSeq> {
    if pos == 0 || pos > s.len() {
        return Err(Error::invalid(format!(
            "blow_down position {pos} out of range 1..={}",
            s.len()
        )));
    }
    if !s[pos - 1].is_one() {
        return Err(Error::invalid(format!(
            "blow_down at {pos}: entry is {} rather than 1",
            s[pos - 1]
        )));
    }
    let mut out: HjSeq = Vec::with_capacity(s.len() - 1);
    out.extend_from_slice(&s[..pos - 1]);
    out.extend_from_slice(&s[pos..]);
    // After removal the former neighbors sit at out[pos-2] and out[pos-1].
    if pos >= 2 {
        out[pos - 2] -= 1;
        if out[pos - 2].is_negative() {
            return Err(Error::invalid("blow_down would make an entry negative"));
        }
    }
    if pos - 1 < out.len() {
        out[pos - 1] -= 1;
        if out[pos - 1].is_negative() {
            return Err(Error::invalid("blow_down would make an entry negative"));
        }
    }
    Ok(out)
}

/// True when iterated blow-downs can transform `s` into exactly `target`.
/// Searches all orders of contraction with memoization; sequences stay
/// short, so the state space is small in practice.
pub fn blows_down_to(s: &[Int], target: &[Int]) -> bool {
    let target: HjSeq = target.to_vec();
    let mut seen: HashSet<HjSeq> = HashSet::new();
    let mut queue: VecDeque<HjSeq> = VecDeque::new();
    queue.push_back(s.to_vec());
    while let Some(cur) = queue.pop_front() {
        if cur == target {
            return true;
        }
        if cur.len() <= target.len() || !seen.insert(cur.clone()) {
            continue;
        }
        for pos in 1..=cur.len() {
            if cur[pos - 1].is_one() {
                if let Ok(next) = blow_down(&cur, pos) {
                    queue.push_back(next);
                }
            }
        }
    }
    false
}

/// All zero continued fractions of length `s >= 2`, each with the degree
/// vector `[v0, v1, ..., vs]` of the associated triangulation of a convex
/// polygon `P0 P1 ... Ps`: entry `vi` counts the triangles at `Pi`, the
/// sequence entries are `v1..vs`, and `v0` makes the total `3(s-1)`.
/// There are Catalan-many, `C(s-1) = binom(2s-2, s-1)/s`.
pub fn enumerate_zero_cf(s: usize) -> Result<Vec<(HjSeq, Vec<Int>)>> {
    if s < 2 {
        return Err(Error::invalid("zero continued fractions need length >= 2"));
    }
    let mut level: BTreeSet<HjSeq> = BTreeSet::new();
    level.insert(seq(&[1, 1]));
    for _ in 2..s {
        let mut next = BTreeSet::new();
        for z in &level {
            for pos in 1..=z.len() + 1 {
                next.insert(blow_up(z, pos)?);
            }
        }
        level = next;
    }
    let triangles = int((3 * (s - 1)) as i64);
    Ok(level
        .into_iter()
        .map(|z| {
            let total: Int = z.iter().sum();
            let v0 = &triangles - &total;
            let mut degrees = Vec::with_capacity(s + 1);
            degrees.push(v0);
            degrees.extend(z.iter().cloned());
            (z, degrees)
        })
        .collect())
}

/// `binom(2n, n)/(n+1)`, the number of triangulations of an `(n+2)`-gon.
pub fn catalan(n: usize) -> Int {
    let mut num = Int::one();
    let mut den = Int::one();
    for k in 0..n {
        num *= int((2 * n - k) as i64);
        den *= int((k + 1) as i64);
    }
    num / den / int((n + 1) as i64)
}
