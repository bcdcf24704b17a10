//! Wahl chains, their duals, Wahl-2 chains, and the Wahl tree.
//!
//! A Wahl singularity is the cyclic quotient singularity `1/n²(1, na-1)`;
//! its resolution chain (`wahl_chain`) is the expansion of `n²/(na-1)`.
//! Provides:
//!
//! - [`WahlSing`] with [`wahl_chain`] / [`recognize_wahl`] and
//!   [`dual_wahl_chain`] / [`recognize_dual_wahl`] (the dual expands
//!   `n²/(n(n-a)+1)` and is detected through its unique
//!   decrement-to-zero position);
//! - the two growth rules [`wahl_children`] generating every Wahl chain
//!   from `[4]` and every dual chain from `[2,2,2]`;
//! - [`Wahl2Triple`] (`r² + 1 = f·m`) with [`wahl2_chain`] and
//!   [`wahl2_children`], the chains attached to `m/r` with `r² ≡ -1`;
//! - [`wahl_tree`], the binary tree of Wahl chains with Farey labels
//!   `(a/n, (n-a)/n)`.
//!
//! Smooth points are uniformly encoded as `(n, a) = (1, 0)` with an empty
//! chain so downstream chain-splicing code has no special cases.

use crate::hjcf::{blow_down, expand, is_zero_cf, matrix_of, value_pair, HjSeq};
use crate::{int, Error, Int, Rat, Result};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// The cyclic quotient singularity `1/n²(1, na-1)`, or the smooth point
/// `(1, 0)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WahlSing {
    n: Int,
    a: Int,
}

impl WahlSing {
    pub fn new(n: Int, a: Int) -> Result<Self> {
        if n < Int::one() || a.is_negative() || a >= n && !(n.is_one() && a.is_zero()) {
            return Err(Error::invalid(format!(
                "Wahl data ({n},{a}): need 1 <= n and 0 <= a < n"
            )));
        }
        if n.is_one() {
            if !a.is_zero() {
                return Err(Error::invalid("smooth point must be (1,0)"));
            }
        } else {
            if a.is_zero() {
                return Err(Error::invalid(format!(
                    "Wahl data ({n},{a}): a = 0 only allowed for the smooth point"
                )));
            }
            if !n.gcd(&a).is_one() {
                return Err(Error::invalid(format!("Wahl data ({n},{a}): not coprime")));
            }
        }
        Ok(WahlSing { n, a })
    }

    pub fn of(n: i64, a: i64) -> Result<Self> {
        WahlSing::new(int(n), int(a))
    }

    /// The smooth point, encoded `(1, 0)`.
    pub fn smooth() -> Self {
        WahlSing { n: Int::one(), a: Int::zero() }
    }

    pub fn is_smooth(&self) -> bool {
        self.n.is_one()
    }

    pub fn n(&self) -> &Int {
        &self.n
    }

    pub fn a(&self) -> &Int {
        &self.a
    }

    /// The resolution chain; empty for the smooth point.
    pub fn chain(&self) -> HjSeq {
        if self.is_smooth() {
            return Vec::new();
        }
        let n2 = &self.n * &self.n;
        let q = &self.n * &self.a - Int::one();
        expand(&n2, &q).expect("Wahl data always expands")
    }

    /// Chain of the dual singularity `1/n²(1, n(n-a)+1)`.
    pub fn dual_chain(&self) -> HjSeq {
        if self.is_smooth() {
            return Vec::new();
        }
        let n2 = &self.n * &self.n;
        let q = &self.n * (&self.n - &self.a) + Int::one();
        expand(&n2, &q).expect("dual Wahl data always expands")
    }

    /// The same singularity with the chain read backwards: `(n, n-a)`.
    pub fn reversed(&self) -> WahlSing {
        if self.is_smooth() {
            return self.clone();
        }
        WahlSing { n: self.n.clone(), a: &self.n - &self.a }
    }
}

impl std::fmt::Display for WahlSing {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_smooth() {
            write!(f, "[]")
        } else {
            write!(f, "[{},{}]", self.n, self.a)
        }
    }
}

/// `expand(n², na-1)`; rejects the smooth point.
pub fn wahl_chain(w: &WahlSing) -> Result<HjSeq> {
    if w.is_smooth() {
        return Err(Error::invalid("smooth point has no Wahl chain"));
    }
    Ok(w.chain())
}

/// `expand(n², n(n-a)+1)`; rejects the smooth point.
pub fn dual_wahl_chain(w: &WahlSing) -> Result<HjSeq> {
    if w.is_smooth() {
        return Err(Error::invalid("smooth point has no dual Wahl chain"));
    }
    Ok(w.dual_chain())
}

fn all_at_least_two(s: &[Int]) -> bool {
    !s.is_empty() && s.iter().all(|e| *e >= int(2))
}

/// Recognizes `s` as the Wahl chain of some `(n, a)`: its value must be
/// `n²/(na-1)`.  Uses exact integer square roots; no factorization.
pub fn recognize_wahl(s: &[Int]) -> Option<WahlSing> {
    if !all_at_least_two(s) {
        return None;
    }
    let (num, den) = value_pair(s);
    let n = num.sqrt();
    if &n * &n != num {
        return None;
    }
    let (a, rem) = (&den + Int::one()).div_rem(&n);
    if !rem.is_zero() || a <= Int::zero() || a >= n || !n.gcd(&a).is_one() {
        return None;
    }
    let w = WahlSing { n, a };
    (w.chain() == s).then_some(w)
}

/// Recognizes `s` as the dual Wahl chain of some `(n, a)`, returning the
/// singularity and the unique 1-based position whose decrement produces a
/// zero continued fraction.  (The uniqueness of that position
/// characterizes dual Wahl chains.)
pub fn recognize_dual_wahl(s: &[Int]) -> Option<(WahlSing, usize)> {
    if !all_at_least_two(s) {
        return None;
    }
    let mut hit = None;
    for pos in 1..=s.len() {
        let mut t = s.to_vec();
        t[pos - 1] -= 1;
        if is_zero_cf(&t) {
            if hit.is_some() {
                return None;
            }
            hit = Some(pos);
        }
    }
    let pos = hit?;
    let (num, den) = value_pair(s);
    let n = num.sqrt();
    if &n * &n != num {
        return None;
    }
    let (comp, rem) = (&den - Int::one()).div_rem(&n);
    if !rem.is_zero() || comp <= Int::zero() || comp >= n {
        return None;
    }
    let a = &n - &comp;
    let w = WahlSing::new(n, a).ok()?;
    debug_assert_eq!(w.dual_chain(), s);
    Some((w, pos))
}

/// The two growth rules `[e1+1, e2, ..., er, 2]` and `[2, e1, ..., er+1]`.
/// Accepts Wahl chains, dual Wahl chains, and Wahl-2 chains (the same
/// rules generate all three families); anything else is rejected.
pub fn wahl_children(s: &[Int]) -> Result<(HjSeq, HjSeq)> {
    let recognized = recognize_wahl(s).is_some()
        || recognize_dual_wahl(s).is_some()
        || recognize_wahl2(s).is_some();
    if !recognized {
        return Err(Error::invalid(format!(
            "not a Wahl, dual Wahl, or Wahl-2 chain: {s:?}"
        )));
    }
    let mut first = s.to_vec();
    first[0] += 1;
    first.push(int(2));
    let mut second = vec![int(2)];
    second.extend_from_slice(s);
    let last = second.len() - 1;
    second[last] += 1;
    Ok((first, second))
}

/// A fraction `m/r` with `r² + 1 = f·m`; the numerators of these are
/// exactly the Markov numbers when the expansion splits into Wahl-2 parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Wahl2Triple {
    m: Int,
    r: Int,
    f: Int,
}

impl Wahl2Triple {
    pub fn new(m: Int, r: Int, f: Int) -> Result<Self> {
        if r <= Int::zero() || r >= m {
            return Err(Error::invalid(format!("Wahl-2 data ({m},{r},{f}): need 0 < r < m")));
        }
        if &r * &r + Int::one() != &f * &m {
            return Err(Error::invalid(format!(
                "Wahl-2 data ({m},{r},{f}): r² + 1 ≠ f·m"
            )));
        }
        Ok(Wahl2Triple { m, r, f })
    }

    pub fn of(m: i64, r: i64, f: i64) -> Result<Self> {
        Wahl2Triple::new(int(m), int(r), int(f))
    }

    pub fn m(&self) -> &Int {
        &self.m
    }

    pub fn r(&self) -> &Int {
        &self.r
    }

    pub fn f(&self) -> &Int {
        &self.f
    }
}

/// True when `r² ≡ -1 (mod m)` with `0 < r < m`, i.e. `(m, r)` carries a
/// Wahl-2 chain.
pub fn is_wahl2_pair(m: &Int, r: &Int) -> bool {
    if r <= &Int::zero() || r >= m {
        return false;
    }
    (r * r + Int::one()).mod_floor(m).is_zero()
}

/// The chain of a Wahl-2 triple is the plain expansion of `m/r`.
pub fn wahl2_chain(t: &Wahl2Triple) -> HjSeq {
    expand(&t.m, &t.r).expect("valid Wahl-2 data expands")
}

/// Recognizes a Wahl-2 chain through its value `m/r` with `r² ≡ -1 (mod m)`.
pub fn recognize_wahl2(s: &[Int]) -> Option<Wahl2Triple> {
    if !all_at_least_two(s) {
        return None;
    }
    let (m, r) = value_pair(s);
    if !is_wahl2_pair(&m, &r) {
        return None;
    }
    let f = (&r * &r + Int::one()) / &m;
    let t = Wahl2Triple { m, r, f };
    (wahl2_chain(&t) == s).then_some(t)
}

/// The two successors `(m+2r+f, r+f, f)` and `(4m-4r+f, 2m-r, m)`.
pub fn wahl2_children(t: &Wahl2Triple) -> (Wahl2Triple, Wahl2Triple) {
    let first = Wahl2Triple::new(
        &t.m + int(2) * &t.r + &t.f,
        &t.r + &t.f,
        t.f.clone(),
    )
    .expect("first Wahl-2 rule preserves the relation");
    let second = Wahl2Triple::new(
        int(4) * &t.m - int(4) * &t.r + &t.f,
        int(2) * &t.m - &t.r,
        t.m.clone(),
    )
    .expect("second Wahl-2 rule preserves the relation");
    (first, second)
}

/// One node of the Wahl tree: a chain, its singularity, and the subtree.
#[derive(Clone, Debug)]
pub struct WahlTreeNode {
    pub sing: WahlSing,
    pub chain: HjSeq,
    pub children: Vec<WahlTreeNode>,
}

impl WahlTreeNode {
    /// Farey label `(a/n, (n-a)/n)`.
    pub fn farey_pair(&self) -> (Rat, Rat) {
        let n = self.sing.n().clone();
        let a = self.sing.a().clone();
        (
            Rat::new(a.clone(), n.clone()),
            Rat::new(&n - &a, n),
        )
    }

    /// All nodes at the given depth below this node, left to right.
    pub fn level(&self, depth: usize) -> Vec<&WahlTreeNode> {
        if depth == 0 {
            return vec![self];
        }
        self.children.iter().flat_map(|c| c.level(depth - 1)).collect()
    }
}

/// The binary tree of Wahl chains rooted at `[4]` (the singularity
/// `(2,1)`), expanded to the requested depth with the rule
/// `[e1+1,...,2]` producing the first child.
pub fn wahl_tree(depth: usize) -> WahlTreeNode {
    fn build(chain: HjSeq, depth: usize) -> WahlTreeNode {
        let sing = recognize_wahl(&chain).expect("tree nodes are Wahl chains");
        let children = if depth == 0 {
            Vec::new()
        } else {
            let (l, r) = wahl_children(&chain).expect("Wahl chains always grow");
            vec![build(l, depth - 1), build(r, depth - 1)]
        };
        WahlTreeNode { sing, chain, children }
    }
    build(vec![int(4)], depth)
}

/// Decrementing the unique marked entry of a Wahl chain makes it blow down
/// to a single `[0]`; exposed for reuse in zero-continued-fraction tests.
pub fn decrement_at(s: &[Int], pos: usize) -> Result<HjSeq> {
    if pos == 0 || pos > s.len() {
        return Err(Error::invalid(format!("position {pos} out of range")));
    }
    let mut t = s.to_vec();
    t[pos - 1] -= 1;
    if t[pos - 1].is_negative() {
        return Err(Error::invalid("entry would become negative"));
    }
    Ok(t)
}

/// Fully blow down a sequence: apply `blow_down` at `1`-entries until none
/// remain, returning the final sequence.  Used in tests and examples to
/// watch chains collapse; errors if a step is impossible.
pub fn collapse(s: &[Int]) -> Result<HjSeq> {
    let mut cur = s.to_vec();
    'outer: loop {
        for pos in 1..=cur.len() {
            if cur[pos - 1].is_one() && cur.len() > 1 {
                if let Ok(next) = blow_down(&cur, pos) {
                    cur = next;
                    continue 'outer;
                }
            }
        }
        return Ok(cur);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hjcf::seq;

    #[test]
    fn chains_of_small_singularities() {
        assert_eq!(WahlSing::of(2, 1).unwrap().chain(), seq(&[4]));
        assert_eq!(WahlSing::of(7, 5).unwrap().chain(), seq(&[2, 2, 5, 4]));
        assert_eq!(
            WahlSing::of(19, 13).unwrap().chain(),
            seq(&[2, 2, 9, 2, 2, 2, 2, 4])
        );
        assert!(wahl_chain(&WahlSing::smooth()).is_err());
        assert_eq!(WahlSing::smooth().chain(), Vec::<Int>::new());
    }

    #[test]
    fn recognition() {
        assert_eq!(recognize_wahl(&seq(&[2, 2, 6])), Some(WahlSing::of(4, 3).unwrap()));
        assert_eq!(recognize_wahl(&seq(&[3, 5, 2])), Some(WahlSing::of(5, 2).unwrap()));
        assert_eq!(recognize_wahl(&seq(&[2, 3])), None);
        assert_eq!(recognize_wahl(&seq(&[4])), Some(WahlSing::of(2, 1).unwrap()));
        assert_eq!(recognize_wahl(&[]), None);
    }

    #[test]
    fn children_rules() {
        assert_eq!(
            wahl_children(&seq(&[4])).unwrap(),
            (seq(&[5, 2]), seq(&[2, 5]))
        );
        assert_eq!(
            wahl_children(&seq(&[2, 5])).unwrap(),
            (seq(&[3, 5, 2]), seq(&[2, 2, 6]))
        );
        assert_eq!(
            wahl_children(&seq(&[2, 2, 2])).unwrap(),
            (seq(&[3, 2, 2, 2]), seq(&[2, 2, 2, 3]))
        );
        assert!(wahl_children(&seq(&[2, 2])).is_err());
    }

    #[test]
    fn duals() {
        assert_eq!(WahlSing::of(2, 1).unwrap().dual_chain(), seq(&[2, 2, 2]));
        assert_eq!(WahlSing::of(5, 2).unwrap().dual_chain(), seq(&[2, 3, 2, 2, 3]));
        assert_eq!(
            WahlSing::of(5, 4).unwrap().dual_chain(),
            seq(&[5, 2, 2, 2, 2, 2])
        );
        assert_eq!(
            WahlSing::of(5, 1).unwrap().dual_chain(),
            seq(&[2, 2, 2, 2, 2, 5])
        );
        let (w, pos) = recognize_dual_wahl(&seq(&[2, 2, 2])).unwrap();
        assert_eq!(w, WahlSing::of(2, 1).unwrap());
        assert_eq!(pos, 2);
        let (w, _) = recognize_dual_wahl(&seq(&[2, 3, 2, 2, 3])).unwrap();
        assert_eq!(w, WahlSing::of(5, 2).unwrap());
        assert_eq!(recognize_dual_wahl(&seq(&[2, 2])), None);
    }

    #[test]
    fn wahl2_chains() {
        assert_eq!(wahl2_chain(&Wahl2Triple::of(2, 1, 1).unwrap()), seq(&[2]));
        assert_eq!(wahl2_chain(&Wahl2Triple::of(5, 2, 1).unwrap()), seq(&[3, 2]));
        assert_eq!(wahl2_chain(&Wahl2Triple::of(13, 8, 5).unwrap()), seq(&[2, 3, 3]));
        let (c1, c2) = wahl2_children(&Wahl2Triple::of(2, 1, 1).unwrap());
        assert_eq!(c1, Wahl2Triple::of(5, 2, 1).unwrap());
        assert_eq!(c2, Wahl2Triple::of(5, 3, 2).unwrap());
        assert!(Wahl2Triple::of(5, 4, 1).is_err());
        assert!(is_wahl2_pair(&int(29), &int(17)));
        assert!(!is_wahl2_pair(&int(29), &int(16)));
    }

    #[test]
    fn wahl2_matrix_shape() {
        // matrix of the chain of (m, r, f) is [[m, r-m], [r, f-r]]
        for (m, r, f) in [(2i64, 1i64, 1i64), (5, 2, 1), (5, 3, 2), (13, 8, 5), (29, 17, 10)] {
            let t = Wahl2Triple::of(m, r, f).unwrap();
            let mat = matrix_of(&wahl2_chain(&t));
            assert_eq!(mat.a, int(m));
            assert_eq!(mat.b, int(r - m));
            assert_eq!(mat.c, int(r));
            assert_eq!(mat.d, int(f - r));
        }
    }

    #[test]
    fn wahl2_zero_identity() {
        // [chain, 1, chain] is a zero continued fraction
        for (m, r, f) in [(2i64, 1i64, 1i64), (5, 2, 1), (13, 8, 5)] {
            let chain = wahl2_chain(&Wahl2Triple::of(m, r, f).unwrap());
            let mut z = chain.clone();
            z.push(int(1));
            z.extend(chain);
            assert!(is_zero_cf(&z));
        }
    }

    #[test]
    fn tree_levels_and_farey() {
        let tree = wahl_tree(2);
        assert_eq!(tree.chain, seq(&[4]));
        let rat = |p: i64, q: i64| Rat::new(int(p), int(q));
        assert_eq!(tree.farey_pair(), (rat(1, 2), rat(1, 2)));

        let level1 = tree.level(1);
        let pairs: Vec<_> = level1.iter().map(|n| n.farey_pair()).collect();
        assert_eq!(pairs, vec![(rat(1, 3), rat(2, 3)), (rat(2, 3), rat(1, 3))]);

        let level2 = tree.level(2);
        let chains: Vec<_> = level2.iter().map(|n| n.chain.clone()).collect();
        assert_eq!(
            chains,
            vec![seq(&[6, 2, 2]), seq(&[2, 5, 3]), seq(&[3, 5, 2]), seq(&[2, 2, 6])]
        );
        let ns: Vec<_> = level2.iter().map(|n| n.sing.n().clone()).collect();
        assert_eq!(ns, seq(&[4, 5, 5, 4]));
        assert_eq!(wahl_tree(4).level(4).len(), 16);
    }

    #[test]
    fn sum_rules_small() {
        for n in 2i64..=60 {
            for a in 1..n {
                if int(n).gcd(&int(a)).is_one() {
                    let w = WahlSing::of(n, a).unwrap();
                    let chain = w.chain();
                    let total: Int = chain.iter().sum();
                    assert_eq!(total, int(3 * chain.len() as i64 + 1));
                    let dual = w.dual_chain();
                    let total: Int = dual.iter().sum();
                    assert_eq!(total, int(3 * dual.len() as i64 - 3));
                    // reversal swaps a and n - a
                    let mut rev = chain.clone();
                    rev.reverse();
                    assert_eq!(rev, w.reversed().chain());
                    // round trip through recognition
                    assert_eq!(recognize_wahl(&chain), Some(w.clone()));
                    let (back, _) = recognize_dual_wahl(&dual).unwrap();
                    assert_eq!(back, w);
                }
            }
        }
    }
}
