//! Extremal neighborhoods and their division into Mori trains.
//!
//! - [`K2A`]: the germ `[chain(W₀), 1, chain(W₁)]` of two Wahl chains
//!   joined by a `(−1)`-curve, with invariants `δ = n₀a₁ − n₁a₀`,
//!   `Δ = n₀² + n₁² − δn₀n₁` and the contraction `1/Δ(1, Ω)`;
//! - [`K1A`]: a single Wahl chain with one marked curve, its contraction
//!   (decrement the marked entry) and `δ` from the discrepancy there;
//! - [`MoriType`]: classification by the recursion
//!   `t(i+1) = δ·t(i) − t(i−1)` — an exact zero means a divisorial
//!   contraction, going negative without one means a flip;
//! - [`K2A::flip`] / [`K1A::flip`]: the flipped side as an extremal
//!   P-resolution; [`K2A::divisorial_target`] for the other type;
//! - [`K2A::mori_sequence`]: the ladder of neighborhoods over one c.q.s.
//!   grown from an initial one by the same recursion;
//! - [`mori_trains`] / [`divisorial_train`]: the wagons of the Mori trains
//!   attached to a P-resolution or a Wahl singularity, each wagon with its
//!   marked entry.

use crate::cqs::{find_extremal_presolutions, Cqs, PRes};
use crate::hjcf::{evaluate, value_pair, Frac, HjSeq};
use crate::wahl::{decrement_at, WahlSing};
use crate::{Error, Int, Result};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// The two ways an extremal neighborhood can contract.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MoriType {
    Flip,
    DivisorialContraction,
}

/// Effective `a` of a flank on the left of a `(−1)`-curve (`0` if smooth).
fn eff_left(w: &WahlSing) -> Int {
    if w.is_smooth() { Int::zero() } else { w.a().clone() }
}

/// Effective `a` of a flank on the right of a `(−1)`-curve (`1` if smooth).
fn eff_right(w: &WahlSing) -> Int {
    if w.is_smooth() { Int::one() } else { w.a().clone() }
}

/// An extremal neighborhood of type k2A: Wahl singularities `s0`, `s1`
/// whose chains are joined by a `(−1)`-curve, `[chain(s0), 1, chain(s1)]`.
///
/// At most one flank may be smooth.  When the germ as given has
/// `δ = n₀a₁ − n₁a₀ < 0` the curve contracts the other way, so the
/// constructor swaps the flanks (recorded in `swapped`); afterwards
/// `δ > 0` always holds.  The germ evaluates exactly to `Δ/x` with
/// `x ≡ Ω (mod Δ)`, where `Δ = n₀² + n₁² − δn₀n₁` and
/// `Ω = (n₀ − δn₁)a₀ + n₁a₁ − 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct K2A {
    s0: WahlSing,
    s1: WahlSing,
    swapped: bool,
    delta: Int,
    cqs: Cqs,
}

impl K2A {
    pub fn new(s0: WahlSing, s1: WahlSing) -> Result<K2A> {
        if s0.is_smooth() && s1.is_smooth() {
            return Err(Error::invalid("a k2A needs at least one singular flank"));
        }
        let raw = s0.n() * eff_right(&s1) - s1.n() * eff_left(&s0);
        if raw.is_zero() {
            return Err(Error::invalid("no extremal orientation: δ = 0"));
        }
        // A smooth flank always yields δ > 0, so a swap never moves one.
        let (s0, s1, swapped) = if raw.is_negative() { (s1, s0, true) } else { (s0, s1, false) };
        let (n0, n1) = (s0.n(), s1.n());
        let (a0, a1) = (eff_left(&s0), eff_right(&s1));
        let delta = n0 * &a1 - n1 * &a0;
        debug_assert!(delta.is_positive());
        let big = n0 * n0 + n1 * n1 - &delta * n0 * n1;
        if big < crate::int(2) {
            return Err(Error::invalid(format!(
                "not an extremal neighborhood: Δ = {big} for {s0}, {s1}"
            )));
        }
        let omega = ((n0 - &delta * n1) * &a0 + n1 * &a1 - Int::one()).mod_floor(&big);
        let cqs = Frac::new(big, omega)?;
        let k = K2A { s0, s1, swapped, delta, cqs };
        debug_assert_eq!(
            {
                let v = evaluate(&k.germ()).expect("k2A germ always evaluates");
                Frac::from_value(v.numer(), v.denom()).expect("germ value is a valid fraction")
            },
            k.cqs,
            "germ value must match the closed-form contraction"
        );
        Ok(k)
    }

    pub fn of(n0: i64, a0: i64, n1: i64, a1: i64) -> Result<K2A> {
        let side = |n: i64, a: i64| {
            if n == 1 { Ok(WahlSing::smooth()) } else { WahlSing::of(n, a) }
        };
        K2A::new(side(n0, a0)?, side(n1, a1)?)
    }

    pub fn s0(&self) -> &WahlSing {
        &self.s0
    }

    pub fn s1(&self) -> &WahlSing {
        &self.s1
    }

    /// Whether the constructor had to swap the flanks to make `δ > 0`.
    pub fn swapped(&self) -> bool {
        self.swapped
    }

    pub fn delta(&self) -> &Int {
        &self.delta
    }

    /// The c.q.s. `1/Δ(1, Ω)` the germ contracts to.
    pub fn cqs(&self) -> &Cqs {
        &self.cqs
    }

    /// The full chain `[chain(s0), 1, chain(s1)]`.
    pub fn germ(&self) -> HjSeq {
        let mut seq = self.s0.chain();
        seq.push(Int::one());
        seq.extend(self.s1.chain());
        seq
    }

    /// The germ read backwards: flanks swapped and each reversed.  `δ` is
    /// unchanged; `Ω` becomes its inverse.
    pub fn reversed(&self) -> K2A {
        let k = K2A::new(self.s1.reversed(), self.s0.reversed())
            .expect("reversal preserves the neighborhood");
        debug_assert_eq!(k.delta, self.delta);
        debug_assert!(k.cqs.same_class(&self.cqs));
        k
    }

    pub fn classify(&self) -> MoriType {
        descend_to_type(&self.delta, self.s0.n(), self.s1.n())
    }

    /// The flipped side of the neighborhood: the extremal P-resolution its
    /// deformation family degenerates to, oriented so that it contracts to
    /// exactly `self.cqs()`.
    ///
    /// Walks the `δ`-recursion (with `a`-values in tow) down to the initial
    /// neighborhood of the Mori sequence and exits it through
    /// `(n₀, a₀, n₁, a₁) ↦ (n₁, a₁, n₀ − δn₁, a₀ − δa₁ mod)` — the term the
    /// recursion would drive nonpositive becomes the second flank — then
    /// recovers the middle curve from the δ identity.  Errors on divisorial
    /// neighborhoods.
    pub fn flip(&self) -> Result<PRes> {
        if self.classify() != MoriType::Flip {
            return Err(Error::invalid("divisorial neighborhood has no flip"));
        }
        let d = self.delta.clone();
        let (mut ln, mut la) = (self.s0.n().clone(), eff_left(&self.s0));
        let (mut rn, mut ra) = (self.s1.n().clone(), eff_right(&self.s1));
        loop {
            if rn < ln {
                let beyond = &d * &rn - &ln;
                if !beyond.is_positive() {
                    let n1p = -&beyond;
                    let a1p = &la - &d * &ra;
                    return self.exit_pres(&rn, &ra, &n1p, &a1p);
                }
                let next_a = &d * &ra - &la;
                (ln, la, rn, ra) = (rn, ra, beyond, next_a);
            } else if ln < rn {
                let beyond = &d * &ln - &rn;
                if !beyond.is_positive() {
                    // exit through the reversed germ; the final orientation
                    // fix in exit_pres undoes the reversal
                    let n0p = ln.clone();
                    let a0p = &ln - &la;
                    let n1p = -&beyond;
                    let a1p = (&rn - &ra) - &d * &a0p;
                    return self.exit_pres(&n0p, &a0p, &n1p, &a1p);
                }
                let next_a = &d * &la - &ra;
                (rn, ra, ln, la) = (ln, la, beyond, next_a);
            } else {
                return Err(Error::invariant(
                    "equal flank indices cannot occur in a flipping walk",
                ));
            }
        }
    }

    /// Builds the P-resolution `(n′₀, a′₀)–c–(n′₁, a′₁)` exiting the
    /// recursion and orients it to contract to exactly `self.cqs()`.
    fn exit_pres(&self, n0p: &Int, a0p: &Int, n1p: &Int, a1p: &Int) -> Result<PRes> {
        debug_assert!(n1p.is_positive(), "flip exit index must be positive");
        let w0 = if n0p.is_one() {
            WahlSing::smooth()
        } else {
            WahlSing::new(n0p.clone(), a0p.clone())?
        };
        let w1 = if n1p.is_one() {
            WahlSing::smooth()
        } else {
            WahlSing::new(n1p.clone(), a1p.mod_floor(n1p))?
        };
        let num = &self.delta - n1p * eff_left(&w0) + n0p * eff_right(&w1);
        let (cm1, rem) = num.div_rem(&(n0p * n1p));
        if !rem.is_zero() {
            return Err(Error::invariant(format!(
                "flip exit does not define a middle curve: {num} vs {n0p}·{n1p}"
            )));
        }
        let p = PRes::new(w0, cm1 + Int::one(), w1)?;
        if p.cqs() == &self.cqs {
            return Ok(p);
        }
        let q = p.reversed();
        if q.cqs() == &self.cqs {
            return Ok(q);
        }
        Err(Error::invariant(format!(
            "flip landed on {} instead of {}",
            p.cqs(),
            self.cqs
        )))
    }

    /// The Wahl singularity a divisorial neighborhood contracts to:
    /// `Δ = δ²` and the target is `(δ, (Ω + 1)/δ)`.
    pub fn divisorial_target(&self) -> Result<WahlSing> {
        if self.classify() != MoriType::DivisorialContraction {
            return Err(Error::invalid("flip-type neighborhood has no divisorial contraction"));
        }
        divisorial_target_of(&self.delta, &self.cqs)
    }

    /// The Mori sequence grown from this neighborhood: `self`, then the
    /// neighborhoods `((n(i), a(i)), (n(i+1), a(i+1)))` under
    /// `t(i+1) = δ·t(i) − t(i−1)`, all with the same `δ` and the same
    /// contraction.  Requires an *initial* neighborhood,
    /// `δ·n₀ − n₁ ≤ 0` (the recursion exits immediately on the left).
    /// Infinite for `δ ≥ 2`; for `δ = 1` it stops after one extra element.
    pub fn mori_sequence(&self) -> Result<MoriSequence> {
        let left = &self.delta * self.s0.n() - self.s1.n();
        if left.is_positive() {
            return Err(Error::invalid(format!(
                "not an initial neighborhood: δn₀ − n₁ = {left} > 0"
            )));
        }
        Ok(MoriSequence {
            delta: self.delta.clone(),
            lo: (self.s0.n().clone(), eff_left(&self.s0)),
            hi: (self.s1.n().clone(), eff_right(&self.s1)),
            first: Some(self.clone()),
            done: false,
        })
    }
}

impl std::fmt::Display for K2A {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{})", self.s0, self.s1)
    }
}

/// `(δ, Δ, Ω)` of a type-k2A neighborhood.
pub fn k2a_invariants(k: &K2A) -> (Int, Int, Int) {
    (k.delta.clone(), k.cqs.delta().clone(), k.cqs.omega().clone())
}

/// Runs `t(i+1) = δ·t(i) − t(i−1)` downhill from the adjacent pair and
/// reports whether it reaches an exact zero (divisorial contraction) or
/// turns negative without one (flip).
fn descend_to_type(delta: &Int, x: &Int, y: &Int) -> MoriType {
    let (mut hi, mut lo) =
        if x >= y { (x.clone(), y.clone()) } else { (y.clone(), x.clone()) };
    loop {
        let next = delta * &lo - &hi;
        if next.is_zero() {
            return MoriType::DivisorialContraction;
        }
        if next.is_negative() {
            return MoriType::Flip;
        }
        debug_assert!(next < lo, "the walk descends while positive");
        hi = lo;
        lo = next;
    }
}

/// Shared closed form for the divisorial contraction target.
fn divisorial_target_of(delta: &Int, cqs: &Cqs) -> Result<WahlSing> {
    if &(delta * delta) != cqs.delta() {
        return Err(Error::invariant(format!(
            "divisorial contraction needs Δ = δ²: Δ = {}, δ = {delta}",
            cqs.delta()
        )));
    }
    let (a, rem) = (cqs.omega() + Int::one()).div_rem(delta);
    if !rem.is_zero() {
        return Err(Error::invariant(format!(
            "Ω + 1 = {} is not divisible by δ = {delta}",
            cqs.omega() + Int::one()
        )));
    }
    WahlSing::new(delta.clone(), a)
}

/// An extremal neighborhood of type k1A: a single Wahl singularity whose
/// chain carries the flipping curve at entry `mark` (1-based).
///
/// Its contraction is the c.q.s. whose expansion is the chain with that
/// entry decremented, and `δ` comes from the discrepancy of the marked
/// curve: `δ = (K(e₁..e_{mark−1}) + K(e_{mark+1}..e_r)) / n` with `K` the
/// continuant numerator (integral because the singularity has index `n`).
/// The neighbors of `n` in the `δ`-recursion are the roots of
/// `t² − δn·t + (n² − Δ)`; the constructor checks that its discriminant is
/// a perfect square, which every marked wagon of a Mori train satisfies.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct K1A {
    sing: WahlSing,
    mark: usize,
    delta: Int,
    cqs: Cqs,
}

impl K1A {
    pub fn new(sing: WahlSing, mark: usize) -> Result<K1A> {
        if sing.is_smooth() {
            return Err(Error::invalid("a k1A needs a singular chain"));
        }
        let chain = sing.chain();
        if mark == 0 || mark > chain.len() {
            return Err(Error::invalid(format!(
                "mark {mark} out of range for a chain of length {}",
                chain.len()
            )));
        }
        let dec = decrement_at(&chain, mark)?;
        let value = evaluate(&dec)
            .ok_or_else(|| Error::invalid("marked contraction is not admissible"))?;
        if !value.is_positive() {
            return Err(Error::invalid("marked contraction has non-positive value"));
        }
        let cqs = Frac::from_value(value.numer(), value.denom())?;
        let kl = value_pair(&chain[..mark - 1]).0;
        let kr = value_pair(&chain[mark..]).0;
        let (delta, rem) = (kl + kr).div_rem(sing.n());
        if !rem.is_zero() {
            return Err(Error::invariant(format!(
                "discrepancy at the mark is not an n-th of an integer for {sing}"
            )));
        }
        let k = K1A { sing, mark, delta, cqs };
        if k.neighbor_roots().is_none() {
            return Err(Error::invalid(format!(
                "mark {mark} of {} does not give an extremal neighborhood",
                k.sing
            )));
        }
        Ok(k)
    }

    pub fn of(n: i64, a: i64, mark: usize) -> Result<K1A> {
        K1A::new(WahlSing::of(n, a)?, mark)
    }

    pub fn sing(&self) -> &WahlSing {
        &self.sing
    }

    pub fn mark(&self) -> usize {
        self.mark
    }

    pub fn delta(&self) -> &Int {
        &self.delta
    }

    /// The c.q.s. obtained by contracting the chain and the marked curve.
    pub fn cqs(&self) -> &Cqs {
        &self.cqs
    }

    /// The two neighbors of `n` in the `δ`-recursion, smaller first;
    /// `None` when the discriminant is not a perfect square.
    fn neighbor_roots(&self) -> Option<(Int, Int)> {
        let n = self.sing.n();
        let d = &self.delta;
        let disc = (d * d - crate::int(4)) * n * n + crate::int(4) * self.cqs.delta();
        if disc.is_negative() {
            return None;
        }
        let s = disc.sqrt();
        if &s * &s != disc {
            return None;
        }
        let dn = d * n;
        debug_assert!(((&dn - &s).mod_floor(&crate::int(2))).is_zero());
        Some(((&dn - &s) / crate::int(2), (&dn + &s) / crate::int(2)))
    }

    pub fn classify(&self) -> MoriType {
        let (r1, _) = self.neighbor_roots().expect("validated at construction");
        if r1.is_zero() {
            return MoriType::DivisorialContraction;
        }
        if r1.is_negative() {
            // n is the bottom of the walk and the far side only ascends
            return MoriType::Flip;
        }
        descend_to_type(&self.delta, &r1, self.sing.n())
    }

    /// A type-k2A neighborhood adjacent to this one in its deformation
    /// family: same `δ`, same contraction, flanks `self.sing` (possibly
    /// reversed) and one of its recursion neighbors.
    pub fn adjacent_k2a(&self) -> Result<K2A> {
        let (r1, r2) = self.neighbor_roots().expect("validated at construction");
        let mut roots = vec![r2.clone()];
        if r1.is_positive() && r1 != r2 {
            roots.insert(0, r1);
        }
        let n = self.sing.n();
        let orientations = [self.sing.clone(), self.sing.reversed()];
        for r in &roots {
            for q in &orientations {
                let candidates: Vec<K2A> = if r.is_one() {
                    [K2A::new(WahlSing::smooth(), q.clone()), K2A::new(q.clone(), WahlSing::smooth())]
                        .into_iter()
                        .flatten()
                        .collect()
                } else {
                    let mut found = Vec::new();
                    // (q, t): δ = n·a_t − r·a_q; (t, q): δ = r·a_q − n·a_t
                    for (num, swap) in [
                        (&self.delta + r * q.a(), false),
                        (r * q.a() - &self.delta, true),
                    ] {
                        let (at, rem) = num.div_rem(n);
                        if !rem.is_zero() || !at.is_positive() || &at >= r {
                            continue;
                        }
                        let Ok(t) = WahlSing::new(r.clone(), at) else { continue };
                        let pair = if swap { (t, q.clone()) } else { (q.clone(), t) };
                        if let Ok(k) = K2A::new(pair.0, pair.1) {
                            found.push(k);
                        }
                    }
                    found
                };
                for k in candidates {
                    if k.delta() == &self.delta && k.cqs() == &self.cqs {
                        return Ok(k);
                    }
                }
            }
        }
        Err(Error::invariant(format!(
            "no adjacent k2A for {} marked at {}",
            self.sing, self.mark
        )))
    }

    /// The flipped side, routed through an adjacent k2A; agrees with the
    /// P-resolution scan of the contraction.
    pub fn flip(&self) -> Result<PRes> {
        if self.classify() != MoriType::Flip {
            return Err(Error::invalid("divisorial neighborhood has no flip"));
        }
        let p = self.adjacent_k2a()?.flip()?;
        debug_assert!(
            find_extremal_presolutions(&self.cqs).contains(&p),
            "flip must appear in the P-resolution scan of the contraction"
        );
        Ok(p)
    }

    /// The Wahl singularity a divisorial neighborhood contracts to.
    pub fn divisorial_target(&self) -> Result<WahlSing> {
        if self.classify() != MoriType::DivisorialContraction {
            return Err(Error::invalid("flip-type neighborhood has no divisorial contraction"));
        }
        divisorial_target_of(&self.delta, &self.cqs)
    }
}

impl std::fmt::Display for K1A {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({} @ {})", self.sing, self.mark)
    }
}

/// Iterator over a Mori sequence; see [`K2A::mori_sequence`].
pub struct MoriSequence {
    delta: Int,
    lo: (Int, Int),
    hi: (Int, Int),
    first: Option<K2A>,
    done: bool,
}

impl Iterator for MoriSequence {
    type Item = K2A;

    fn next(&mut self) -> Option<K2A> {
        if let Some(k) = self.first.take() {
            return Some(k);
        }
        if self.done {
            return None;
        }
        let nn = &self.delta * &self.hi.0 - &self.lo.0;
        if !nn.is_positive() {
            self.done = true;
            return None;
        }
        let na = &self.delta * &self.hi.1 - &self.lo.1;
        let cur = if self.hi.0.is_one() {
            WahlSing::smooth()
        } else {
            WahlSing::new(self.hi.0.clone(), self.hi.1.clone()).ok()?
        };
        let next = if nn.is_one() {
            debug_assert!(na.is_one(), "a smooth continuation must carry a = 1");
            WahlSing::smooth()
        } else {
            WahlSing::new(nn.clone(), na.clone()).ok()?
        };
        let k = K2A::new(cur, next).ok()?;
        self.lo = std::mem::replace(&mut self.hi, (nn, na));
        Some(k)
    }
}

/// One wagon of a Mori train: a Wahl singularity read along the train and
/// the marked entry of its chain carrying the flipping curve (`None` on
/// the seed wagon).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Wagon {
    pub sing: WahlSing,
    pub mark: Option<usize>,
}

impl std::fmt::Display for Wagon {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let chain = self.sing.chain();
        let body = chain
            .iter()
            .enumerate()
            .map(|(i, e)| match self.mark {
                Some(m) if m == i + 1 => format!("({e})"),
                _ => e.to_string(),
            })
            .collect::<Vec<_>>()
            .join(",");
        write!(f, "[{body}]")
    }
}

/// A Mori train: the ladder of Wahl singularities
/// `n(i+1) = δ·n(i) − n(i−1)` whose marked neighborhoods all contract to
/// the same c.q.s. with the same `δ`.
#[derive(Clone, Debug)]
pub struct MoriTrain {
    cqs: Cqs,
    delta: Int,
    wagons: Vec<Wagon>,
}

impl MoriTrain {
    pub fn cqs(&self) -> &Cqs {
        &self.cqs
    }

    pub fn delta(&self) -> &Int {
        &self.delta
    }

    pub fn wagons(&self) -> &[Wagon] {
        &self.wagons
    }
}

impl std::fmt::Display for MoriTrain {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let body = self.wagons.iter().map(|w| w.to_string()).collect::<Vec<_>>().join("-");
        write!(f, "{body}")
    }
}

/// The Mori trains of a flipping extremal P-resolution, one per flank
/// (a single train when the resolution reads the same backwards).  Each
/// train starts at a flank (`[]` when smooth) and grows by
/// `n(1) = δ·n₀ + n_other`, `a(1) = (δ + n(1)·a₀)/n₀`, then the linear
/// recursion in both `n` and `a`; every wagon past the first carries
/// exactly one mark.
pub fn mori_trains(p: &PRes, wagons: usize) -> Result<Vec<MoriTrain>> {
    let mut out = vec![flank_train(p, wagons)?];
    let rev = p.reversed();
    if rev != *p {
        out.push(flank_train(&rev, wagons)?);
    }
    Ok(out)
}

/// The train growing out of the `w1` flank of `p`.
fn flank_train(p: &PRes, count: usize) -> Result<MoriTrain> {
    let d = p.delta().clone();
    let seed = p.w1();
    let n0 = seed.n().clone();
    let a0 = eff_left(seed);
    let n1 = &d * &n0 + p.w0().n();
    let (a1, rem) = (&d + &n1 * &a0).div_rem(&n0);
    if !rem.is_zero() {
        return Err(Error::invariant(format!(
            "train step out of {seed} is not integral"
        )));
    }
    build_train(p.cqs().clone(), d, (n0, a0), (n1, a1), seed.clone(), count)
}

/// The Mori train of a divisorial contraction to the Wahl singularity
/// `(δ, a)`: wagons over `1/δ²(1, δa−1)` starting with the chain of the
/// target itself, then `(δ², δ² − δa + 1)` and the linear recursion.
pub fn divisorial_train(w: &WahlSing, count: usize) -> Result<MoriTrain> {
    if w.is_smooth() {
        return Err(Error::invalid("a divisorial train needs a singular target"));
    }
    let d = w.n().clone();
    let cqs = Frac::new(&d * &d, &d * w.a() - Int::one())?;
    let n1 = &d * &d;
    let a1 = &n1 - &d * w.a() + Int::one();
    build_train(cqs, d.clone(), (d, w.a().clone()), (n1, a1), w.clone(), count)
}

/// Grows wagons from the first two `(n, a)` pairs by the linear recursion,
/// marking each wagon past the first by the unique entry whose decrement
/// recovers the train's c.q.s.
fn build_train(
    cqs: Cqs,
    delta: Int,
    first: (Int, Int),
    second: (Int, Int),
    seed: WahlSing,
    count: usize,
) -> Result<MoriTrain> {
    let mut wagons = Vec::with_capacity(count);
    if count > 0 {
        wagons.push(Wagon { sing: seed, mark: None });
    }
    let (mut lo, mut hi) = (first, second);
    while wagons.len() < count {
        let sing = WahlSing::new(hi.0.clone(), hi.1.clone())?;
        let mark = scan_mark(&sing, &cqs)?;
        if let (Some(prev), true) = (wagons.last(), cfg!(debug_assertions)) {
            let k = K2A::new(prev.sing.clone(), sing.clone())?;
            debug_assert_eq!(k.delta(), &delta);
            debug_assert_eq!(k.cqs(), &cqs);
        }
        wagons.push(Wagon { sing, mark: Some(mark) });
        let nn = &delta * &hi.0 - &lo.0;
        let na = &delta * &hi.1 - &lo.1;
        lo = std::mem::replace(&mut hi, (nn, na));
    }
    Ok(MoriTrain { cqs, delta, wagons })
}

/// The unique 1-based entry of `sing`'s chain whose decrement evaluates to
/// the class of `cqs`.
fn scan_mark(sing: &WahlSing, cqs: &Cqs) -> Result<usize> {
    let chain = sing.chain();
    let mut hits = Vec::new();
    for pos in 1..=chain.len() {
        let Ok(dec) = decrement_at(&chain, pos) else { continue };
        let Some(v) = evaluate(&dec) else { continue };
        if !v.is_positive() {
            continue;
        }
        let Ok(f) = Frac::from_value(v.numer(), v.denom()) else { continue };
        if f.same_class(cqs) {
            hits.push(pos);
        }
    }
    match hits.as_slice() {
        [pos] => Ok(*pos),
        other => Err(Error::invariant(format!(
            "expected a unique marked entry on {sing}, found {}",
            other.len()
        ))),
    }
}
