//! Sign sequences and the sequence-level maps.
//!
//! A coefficient sequence `c ∈ {±σ}^ℤ` is stored either as a periodic
//! [`SignWord`] (one period, with explicit phase: position 0 holds `c_0`) or
//! as a finite [`SeqWindow`] `c_lo..=c_hi`. Signs are kept as exact `±1`
//! integers and the amplitude `σ` is carried alongside, so every map below is
//! exact.
//!
//! The square-root maps `Γ_±` send `b` (amplitude `σ²`) to the unique `c`
//! (amplitude `σ`) with
//!
//! ```text
//! c_0 = ±σ,   c_{2n} + c_{2n+1} = 0,   c_{2n} c_{2n-1} = b_n.
//! ```
//!
//! Writing `t_n = sign(c_{2n})` these reduce to `t_0 = ±1`,
//! `t_n = -sign(b_n) t_{n-1}` and `c_{2n+1} = -c_{2n}`, which is how they are
//! evaluated here.

use std::cell::RefCell;
use std::fmt;

use crate::error::{Error, Result};

const AMPLITUDE_TOL: f64 = 1e-12;

/// Which of the two constant seeds / sign conventions is meant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum Branch {
    Plus,
    Minus,
}

impl Branch {
    pub fn sign(self) -> i8 {
        match self {
            Branch::Plus => 1,
            Branch::Minus => -1,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Branch::Plus => '+',
            Branch::Minus => '-',
        }
    }
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

impl std::str::FromStr for Branch {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "+" | "plus" | "p" => Ok(Branch::Plus),
            "-" | "minus" | "m" => Ok(Branch::Minus),
            _ => Err(Error::Precondition(format!("unknown branch '{s}', expected + or -"))),
        }
    }
}

pub(crate) fn check_sigma(sigma: f64) -> Result<()> {
    if sigma.is_finite() && sigma > 0.0 && sigma <= 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidSigma(sigma))
    }
}

fn check_sign(s: i64) -> Result<i8> {
    match s {
        1 => Ok(1),
        -1 => Ok(-1),
        other => Err(Error::InvalidSign(other)),
    }
}

fn check_amplitude(word_sigma: f64, sigma: f64) -> Result<()> {
    check_sigma(sigma)?;
    if (word_sigma - sigma * sigma).abs() <= AMPLITUDE_TOL {
        Ok(())
    } else {
        Err(Error::InvalidAmplitude { sigma, got: word_sigma })
    }
}

/// One period of an `N`-periodic sequence `c_n = σ · signs[n mod N]`.
///
/// Position 0 is the index `n = 0`. Rotating a word changes the sequence it
/// represents but not the spectrum of the associated operator; use
/// [`SignWord::canonical`] when deduplicating.
#[derive(Debug, Clone, PartialEq)]
pub struct SignWord {
    signs: Vec<i8>,
    sigma: f64,
}

impl SignWord {
    pub fn new(signs: Vec<i8>, sigma: f64) -> Result<Self> {
        check_sigma(sigma)?;
        if signs.is_empty() {
            return Err(Error::EmptyWord);
        }
        for &s in &signs {
            check_sign(s as i64)?;
        }
        Ok(Self { signs, sigma })
    }

    /// Builds a word from signed values `±σ` (`c_0, …, c_{N-1}`).
    pub fn from_values(values: &[f64]) -> Result<Self> {
        let first = values.first().ok_or(Error::EmptyWord)?;
        let sigma = first.abs();
        check_sigma(sigma)?;
        let signs = values
            .iter()
            .map(|&v| {
                if (v.abs() - sigma).abs() > AMPLITUDE_TOL {
                    Err(Error::InvalidAmplitude { sigma, got: v.abs() })
                } else {
                    Ok(if v > 0.0 { 1 } else { -1 })
                }
            })
            .collect::<Result<Vec<i8>>>()?;
        Ok(Self { signs, sigma })
    }

    /// Builds the word whose one-based coefficients are `c_1, …, c_p`, so
    /// that `c_p` lands on position 0.
    pub fn from_one_based(signs: &[i8], sigma: f64) -> Result<Self> {
        let p = signs.len();
        if p == 0 {
            return Err(Error::EmptyWord);
        }
        let mut v = Vec::with_capacity(p);
        v.push(signs[p - 1]);
        v.extend_from_slice(&signs[..p - 1]);
        Self::new(v, sigma)
    }

    pub fn constant(branch: Branch, sigma: f64) -> Result<Self> {
        Self::new(vec![branch.sign()], sigma)
    }

    /// Parses a pattern such as `"+--+"`.
    pub fn parse(pattern: &str, sigma: f64) -> Result<Self> {
        let signs = pattern
            .chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| match c {
                '+' => Ok(1),
                '-' => Ok(-1),
                _ => Err(Error::Precondition(format!("invalid sign character '{c}'"))),
            })
            .collect::<Result<Vec<i8>>>()?;
        Self::new(signs, sigma)
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    pub fn period(&self) -> usize {
        self.signs.len()
    }

    pub fn sign_at(&self, n: i64) -> i8 {
        let p = self.signs.len() as i64;
        self.signs[n.rem_euclid(p) as usize]
    }

    /// `c_n` for any integer `n`.
    pub fn value(&self, n: i64) -> f64 {
        self.sigma * self.sign_at(n) as f64
    }

    /// `c_0, …, c_{N-1}`.
    pub fn values(&self) -> Vec<f64> {
        self.signs.iter().map(|&s| self.sigma * s as f64).collect()
    }

    /// `∏ sign(c_n)` over one period.
    pub fn sign_product(&self) -> i8 {
        self.signs.iter().product()
    }

    /// The same signs at another amplitude.
    pub fn with_sigma(&self, sigma: f64) -> Result<Self> {
        Self::new(self.signs.clone(), sigma)
    }

    /// The word `n ↦ c_{n+k}`.
    pub fn rotate(&self, k: i64) -> Self {
        let p = self.period() as i64;
        let signs = (0..p).map(|n| self.sign_at(n + k)).collect();
        Self { signs, sigma: self.sigma }
    }

    /// The word `-c`.
    pub fn negate(&self) -> Self {
        Self { signs: self.signs.iter().map(|s| -s).collect(), sigma: self.sigma }
    }

    /// The word repeated `k` times (same sequence, longer period).
    pub fn repeat(&self, k: usize) -> Self {
        let k = k.max(1);
        let mut signs = Vec::with_capacity(self.period() * k);
        for _ in 0..k {
            signs.extend_from_slice(&self.signs);
        }
        Self { signs, sigma: self.sigma }
    }

    /// Lexicographically least rotation, ordering `-1 < +1`.
    pub fn canonical(&self) -> Self {
        let p = self.period();
        let best = (0..p)
            .min_by(|&a, &b| {
                (0..p)
                    .map(|i| self.signs[(a + i) % p])
                    .cmp((0..p).map(|i| self.signs[(b + i) % p]))
            })
            .unwrap_or(0);
        self.rotate(best as i64)
    }

    pub fn minimal_period(&self) -> usize {
        let p = self.period();
        (1..=p)
            .filter(|d| p.is_multiple_of(*d))
            .find(|&d| (d..p).all(|i| self.signs[i] == self.signs[i - d]))
            .unwrap_or(p)
    }

    /// Reduces to the minimal period; returns the word and the reduction
    /// factor `period / minimal_period`.
    pub fn reduce_period(&self) -> (Self, usize) {
        let d = self.minimal_period();
        let factor = self.period() / d;
        (Self { signs: self.signs[..d].to_vec(), sigma: self.sigma }, factor)
    }

    /// Values of the sequence on `[lo, hi]`.
    pub fn window(&self, lo: i64, hi: i64) -> Result<SeqWindow> {
        if lo > hi {
            return Err(Error::InvalidWindow { lo, hi, reason: "lo > hi" });
        }
        let signs = (lo..=hi).map(|n| self.sign_at(n)).collect();
        SeqWindow::from_signs(lo, signs, self.sigma)
    }

    /// Compact identifier, e.g. `"+--+"`.
    pub fn id(&self) -> String {
        self.signs.iter().map(|&s| if s > 0 { '+' } else { '-' }).collect()
    }
}

impl fmt::Display for SignWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}·[{}]", self.sigma, self.id())
    }
}

/// A finite window `c_lo, …, c_hi` of a bi-infinite `±σ` sequence.
#[derive(Debug, Clone, PartialEq)]
pub struct SeqWindow {
    lo: i64,
    signs: Vec<i8>,
    sigma: f64,
}

impl SeqWindow {
    pub fn from_signs(lo: i64, signs: Vec<i8>, sigma: f64) -> Result<Self> {
        check_sigma(sigma)?;
        if signs.is_empty() {
            return Err(Error::InvalidWindow { lo, hi: lo - 1, reason: "empty window" });
        }
        for &s in &signs {
            check_sign(s as i64)?;
        }
        Ok(Self { lo, signs, sigma })
    }

    /// Builds a window from values `±σ`; the amplitude is read off the entries.
    pub fn from_values(lo: i64, values: &[f64]) -> Result<Self> {
        let w = SignWord::from_values(values)?;
        Self::from_signs(lo, w.signs, w.sigma)
    }

    pub fn constant(lo: i64, hi: i64, sign: i8, sigma: f64) -> Result<Self> {
        if lo > hi {
            return Err(Error::InvalidWindow { lo, hi, reason: "lo > hi" });
        }
        Self::from_signs(lo, vec![sign; (hi - lo + 1) as usize], sigma)
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.signs.len() as i64 - 1
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    pub fn len(&self) -> usize {
        self.signs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.signs.is_empty()
    }

    pub fn contains(&self, n: i64) -> bool {
        n >= self.lo && n <= self.hi()
    }

    pub fn sign(&self, n: i64) -> Option<i8> {
        self.contains(n).then(|| self.signs[(n - self.lo) as usize])
    }

    pub fn get(&self, n: i64) -> Option<f64> {
        self.sign(n).map(|s| self.sigma * s as f64)
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    pub fn values(&self) -> Vec<f64> {
        self.signs.iter().map(|&s| self.sigma * s as f64).collect()
    }

    /// Sub-window `[lo, hi]`, if it is covered.
    pub fn restrict(&self, lo: i64, hi: i64) -> Option<Self> {
        if lo > hi || !self.contains(lo) || !self.contains(hi) {
            return None;
        }
        let a = (lo - self.lo) as usize;
        let b = (hi - self.lo) as usize;
        Some(Self { lo, signs: self.signs[a..=b].to_vec(), sigma: self.sigma })
    }

    pub fn with_sigma(&self, sigma: f64) -> Result<Self> {
        Self::from_signs(self.lo, self.signs.clone(), sigma)
    }

    /// Whether two windows carry the same values on their common indices.
    pub fn agrees_with(&self, other: &Self) -> bool {
        let lo = self.lo.max(other.lo);
        let hi = self.hi().min(other.hi());
        self.sigma == other.sigma && (lo..=hi).all(|n| self.sign(n) == other.sign(n))
    }
}

/// Result of applying `Γ_±` to a periodic word.
#[derive(Debug, Clone, PartialEq)]
pub struct GammaImage {
    /// The image reduced to its minimal period.
    pub word: SignWord,
    /// The image with the generic period `4N`.
    pub unreduced: SignWord,
    /// `4N / minimal period`.
    pub reduction: usize,
}

/// `Γ_{σ,±}` on an `N`-periodic word of amplitude `σ²`. The caller supplies
/// `σ`, so no square root is taken.
pub fn gamma_word(b: &SignWord, sigma: f64, branch: Branch) -> Result<GammaImage> {
    check_amplitude(b.sigma(), sigma)?;
    let n = b.period() as i64;
    let mut signs = Vec::with_capacity(4 * n as usize);
    let mut t = branch.sign();
    for k in 0..2 * n {
        if k > 0 {
            t *= -b.sign_at(k);
        }
        signs.push(t);
        signs.push(-t);
    }
    let unreduced = SignWord { signs, sigma };
    let (word, reduction) = unreduced.reduce_period();
    Ok(GammaImage { word, unreduced, reduction })
}

/// `Γ_{σ,+}`: the periodic image with `c_0 = σ`.
pub fn gamma_plus_word(b: &SignWord, sigma: f64) -> Result<GammaImage> {
    gamma_word(b, sigma, Branch::Plus)
}

/// `Γ_{σ,±}` applied on a finite window.
///
/// For `b` on `[lo, hi]` with `lo ≤ 0 ≤ hi`, the relations determine `c` on
/// `[2lo − 2, 2hi + 1]` and nowhere else; that maximal window is returned.
pub fn gamma_window(b: &SeqWindow, sigma: f64, branch: Branch) -> Result<SeqWindow> {
    check_amplitude(b.sigma(), sigma)?;
    let (lo, hi) = (b.lo(), b.hi());
    if !b.contains(0) {
        return Err(Error::InvalidWindow { lo, hi, reason: "window must contain index 0" });
    }
    // t[k] holds t_{lo-1+k}
    let count = (hi - lo + 2) as usize;
    let mut t = vec![0i8; count];
    let origin = (1 - lo) as usize;
    t[origin] = branch.sign();
    for n in 1..=hi {
        let i = (n - lo + 1) as usize;
        t[i] = -b.sign(n).expect("covered") * t[i - 1];
    }
    for n in (lo..=0).rev() {
        let i = (n - lo + 1) as usize;
        t[i - 1] = -b.sign(n).expect("covered") * t[i];
    }
    let signs = t.iter().flat_map(|&s| [s, -s]).collect();
    SeqWindow::from_signs(2 * (lo - 1), signs, sigma)
}

/// `Γ_{σ,+}` on a finite window.
pub fn gamma_plus_window(b: &SeqWindow, sigma: f64) -> Result<SeqWindow> {
    gamma_window(b, sigma, Branch::Plus)
}

/// Space inversion `b̂_n = b_{1-n}`; `[lo, hi]` maps to `[1-hi, 1-lo]`.
pub fn hat_inversion(b: &SeqWindow) -> SeqWindow {
    let mut signs = b.signs().to_vec();
    signs.reverse();
    SeqWindow { lo: 1 - b.hi(), signs, sigma: b.sigma() }
}

/// `σ·c₊` on `[2 − 2ⁿ, 2ⁿ − 1]`, where `c₊` is the fixed point of `Γ₊`.
///
/// Computed by iterating `Γ₊` `n` times from two different seeds; on that
/// window the iterates no longer depend on the seed.
pub fn fixed_point_window(n: u32, sigma: f64) -> Result<SeqWindow> {
    check_sigma(sigma)?;
    if n == 0 || n > 26 {
        return Err(Error::Precondition(format!("fixed_point_window needs 1 <= n <= 26, got {n}")));
    }
    let iterate = |seed: i8| -> Result<SeqWindow> {
        let mut w = SeqWindow::from_signs(0, vec![seed], 1.0)?;
        for _ in 0..n {
            w = gamma_plus_window(&w, 1.0)?;
        }
        Ok(w)
    };
    let (lo, hi) = (2 - (1i64 << n), (1i64 << n) - 1);
    let a = iterate(1)?.restrict(lo, hi).expect("iterates cover the agreement window");
    let b = iterate(-1)?.restrict(lo, hi).expect("iterates cover the agreement window");
    assert_eq!(a, b, "Γ₊ iterates from different seeds disagree on the agreement window");
    a.with_sigma(sigma)
}

/// Memo table for `c̃`: `c̃_1 = 1`, `c̃_{2n} = c̃_{2n-1} c̃_n`,
/// `c̃_{2n+1} = -c̃_{2n}`.
///
/// Entries depend only on smaller indices, so the table is filled in
/// increasing order; each entry costs O(1) amortized.
#[derive(Debug, Clone, Default)]
pub struct CTilde {
    // cache[k] = c̃_k; cache[0] is a placeholder.
    cache: Vec<i8>,
}

impl CTilde {
    pub fn new() -> Self {
        Self { cache: vec![0, 1] }
    }

    fn ensure(&mut self, n: usize) {
        if self.cache.is_empty() {
            self.cache = vec![0, 1];
        }
        while self.cache.len() <= n {
            let k = self.cache.len();
            let v = if k.is_multiple_of(2) {
                self.cache[k - 1] * self.cache[k / 2]
            } else {
                -self.cache[k - 1]
            };
            self.cache.push(v);
        }
    }

    pub fn get(&mut self, n: usize) -> Result<i8> {
        if n == 0 {
            return Err(Error::InvalidIndex(0));
        }
        self.ensure(n);
        Ok(self.cache[n])
    }

    /// `c̃_1, …, c̃_n`.
    pub fn prefix(&mut self, n: usize) -> &[i8] {
        self.ensure(n);
        &self.cache[1..=n]
    }
}

thread_local! {
    static C_TILDE: RefCell<CTilde> = RefCell::new(CTilde::new());
}

/// `c̃_n` for `n ≥ 1`, memoized per thread.
pub fn c_tilde(n: i64) -> Result<i8> {
    if n <= 0 {
        return Err(Error::InvalidIndex(n));
    }
    C_TILDE.with(|t| t.borrow_mut().get(n as usize))
}

/// `c̃_1, …, c̃_n` as a vector.
pub fn c_tilde_prefix(n: usize) -> Vec<i8> {
    C_TILDE.with(|t| t.borrow_mut().prefix(n).to_vec())
}

/// `σ·c^{(m,±)}`: `m` applications of `Γ₊` to the constant word `±1`, reduced
/// to its minimal period (which divides `4^m`).
pub fn c_iterate_word(m: u32, branch: Branch, sigma: f64) -> Result<SignWord> {
    check_sigma(sigma)?;
    if m > 10 {
        return Err(Error::Precondition(format!("c_iterate_word supports m <= 10, got {m}")));
    }
    let mut w = SignWord::constant(branch, 1.0)?;
    for _ in 0..m {
        w = gamma_plus_word(&w, 1.0)?.word;
    }
    w.with_sigma(sigma)
}

/// One period of the three-term operator
/// `(M f)_n = sub·f_{n-1} + diag_n f_n + sup·f_{n+1}`.
#[derive(Debug, Clone, PartialEq)]
pub struct DiagWord {
    pub diag: Vec<f64>,
    pub sub: f64,
    pub sup: f64,
    pub sigma: f64,
}

impl DiagWord {
    pub fn period(&self) -> usize {
        self.diag.len()
    }
}

/// The companion operator `M_b`: the restriction of `A_c²` (with
/// `c = Γ_{σ,+}(b)`) to the odd-indexed sites. Its diagonal is
/// `c_{2n+1} + c_{2n+2}` and its subdiagonal `c_{2n+1} c_{2n} = −σ²`.
pub fn m_word(b: &SignWord, sigma: f64) -> Result<DiagWord> {
    let c = gamma_plus_word(b, sigma)?.unreduced;
    let half = c.period() as i64 / 2;
    let diag = (0..half).map(|n| c.value(2 * n + 1) + c.value(2 * n + 2)).collect();
    Ok(DiagWord { diag, sub: -sigma * sigma, sup: 1.0, sigma })
}

/// Canonical representatives of the rotation classes of sign words of
/// length `n` (necklaces), in increasing lexicographic order.
pub fn rotation_classes(n: usize, sigma: f64) -> Result<Vec<SignWord>> {
    check_sigma(sigma)?;
    if n == 0 || n > 24 {
        return Err(Error::Precondition(format!("rotation_classes supports 1 <= n <= 24, got {n}")));
    }
    let mut out = Vec::new();
    for mask in 0u32..(1u32 << n) {
        // bit i set means sign -1 at position i; most significant position first
        let signs: Vec<i8> = (0..n).map(|i| if mask >> (n - 1 - i) & 1 == 1 { 1 } else { -1 }).collect();
        let w = SignWord { signs, sigma };
        if w.canonical() == w {
            out.push(w);
        }
    }
    Ok(out)
}
