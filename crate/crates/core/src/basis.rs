//! Computational basis of an N-site ring, translation orbits and
//! momentum-sector bases.
//!
//! Bit `i` of a [`SpinState`] holds site `i`; a set bit is a reversed spin
//! (σz = −1), a clear bit is up (σz = +1). The cyclic shift moves the
//! content of site `i` to site `i + 1`, i.e. `|m₁ … m_N⟩ → |m_N m₁ … m_{N−1}⟩`
//! with `m₁` stored at site 0.

use std::f64::consts::TAU;
use std::fmt;

use num_complex::Complex64;

use crate::error::{domain, Result};

pub const MIN_SITES: usize = 2;
pub const MAX_SITES: usize = 24;

/// A basis configuration of `n_sites` spins.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SpinState {
    bits: u32,
    n_sites: u8,
}

impl SpinState {
    pub fn new(bits: u32, n_sites: usize) -> Result<Self> {
        check_sites(n_sites)?;
        if u64::from(bits) >= 1u64 << n_sites {
            return domain(format!(
                "bit pattern {bits:#b} does not fit in {n_sites} sites"
            ));
        }
        Ok(Self::from_raw(bits, n_sites))
    }

    pub(crate) fn from_raw(bits: u32, n_sites: usize) -> Self {
        debug_assert!(n_sites <= MAX_SITES && u64::from(bits) < 1u64 << n_sites);
        Self {
            bits,
            n_sites: n_sites as u8,
        }
    }

    pub fn bits(self) -> u32 {
        self.bits
    }

    pub fn n_sites(self) -> usize {
        usize::from(self.n_sites)
    }

    /// Number of reversed spins `r`.
    pub fn reversed_count(self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn is_reversed(self, site: usize) -> bool {
        (self.bits >> site) & 1 == 1
    }

    /// σz eigenvalue at `site`: `+1` up, `−1` reversed.
    pub fn z(self, site: usize) -> i32 {
        if self.is_reversed(site) {
            -1
        } else {
            1
        }
    }

    /// State with the spins at `a` and `b` exchanged.
    pub fn swapped(self, a: usize, b: usize) -> Self {
        if self.is_reversed(a) == self.is_reversed(b) {
            self
        } else {
            Self::from_raw(self.bits ^ (1 << a) ^ (1 << b), self.n_sites())
        }
    }

    fn mask(self) -> u32 {
        ((1u64 << self.n_sites) - 1) as u32
    }

    pub fn cyclic_shift(self) -> Self {
        let n = self.n_sites();
        let bits = ((self.bits << 1) | (self.bits >> (n - 1))) & self.mask();
        Self::from_raw(bits, n)
    }

    /// `shifts` applications of [`cyclic_shift`](Self::cyclic_shift).
    pub fn shifted_by(self, shifts: usize) -> Self {
        let n = self.n_sites();
        let m = shifts % n;
        if m == 0 {
            return self;
        }
        let bits = ((self.bits << m) | (self.bits >> (n - m))) & self.mask();
        Self::from_raw(bits, n)
    }

    /// Global spin flip (Σ_x).
    pub fn flipped(self) -> Self {
        Self::from_raw(!self.bits & self.mask(), self.n_sites())
    }
}

impl fmt::Display for SpinState {
    /// Ket notation, site 0 first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "|")?;
        for site in 0..self.n_sites() {
            write!(f, "{}", u8::from(self.is_reversed(site)))?;
        }
        write!(f, "⟩")
    }
}

fn check_sites(n_sites: usize) -> Result<()> {
    if !(MIN_SITES..=MAX_SITES).contains(&n_sites) {
        return domain(format!(
            "ring length must be in {MIN_SITES}..={MAX_SITES}, got {n_sites}"
        ));
    }
    Ok(())
}

/// All states with `r` reversed spins, ascending by bit pattern.
pub fn enumerate_sector(n_sites: usize, r: usize) -> Result<Vec<SpinState>> {
    check_sites(n_sites)?;
    if r > n_sites {
        return domain(format!(
            "reversed-spin count {r} exceeds ring length {n_sites}"
        ));
    }
    let limit = 1u64 << n_sites;
    let mut out = Vec::with_capacity(binomial(n_sites, r));
    if r == 0 {
        out.push(SpinState::from_raw(0, n_sites));
        return Ok(out);
    }
    // Gosper's hack: next larger integer with the same popcount
    let mut x: u64 = (1u64 << r) - 1;
    while x < limit {
        out.push(SpinState::from_raw(x as u32, n_sites));
        let c = x & x.wrapping_neg();
        let y = x + c;
        x = (((y ^ x) >> 2) / c) | y;
    }
    Ok(out)
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

pub fn cyclic_shift(s: SpinState) -> SpinState {
    s.cyclic_shift()
}

/// A translation orbit, identified by its smallest member.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Orbit {
    pub representative: SpinState,
    pub period: usize,
}

impl Orbit {
    /// Members in shift order: `T⁰ rep, T¹ rep, …, T^{d−1} rep`.
    pub fn members(&self) -> impl Iterator<Item = SpinState> + '_ {
        let rep = self.representative;
        (0..self.period).map(move |n| rep.shifted_by(n))
    }

    /// Whether the orbit carries a nonzero vector at momentum index `k`.
    pub fn admits(&self, k: usize) -> bool {
        (k * self.period).is_multiple_of(self.representative.n_sites())
    }
}

pub fn orbit_of(s: SpinState) -> Orbit {
    locate_in_orbit(s).0
}

/// Orbit of `s` and the shift count `m` with `T^m · rep = s`, `m < period`.
pub fn locate_in_orbit(s: SpinState) -> (Orbit, usize) {
    let n = s.n_sites();
    let mut best = s;
    let mut best_at = 0;
    let mut period = n;
    let mut x = s;
    for j in 1..=n {
        x = x.cyclic_shift();
        if x == s {
            period = j;
            break;
        }
        if x.bits < best.bits {
            best = x;
            best_at = j;
        }
    }
    // T^{best_at} s = rep, so s = T^{period − best_at} rep
    let shift = (period - best_at) % period;
    (
        Orbit {
            representative: best,
            period,
        },
        shift,
    )
}

/// All orbits in the `r`-reversed-spin sector, ordered by representative.
pub fn sector_orbits(n_sites: usize, r: usize) -> Result<Vec<Orbit>> {
    let states = enumerate_sector(n_sites, r)?;
    Ok(states
        .into_iter()
        .filter_map(|s| {
            let orbit = orbit_of(s);
            (orbit.representative == s).then_some(orbit)
        })
        .collect())
}

/// `ω_k^m = exp(2πi·k·m/N)` with the exponent reduced modulo `N`.
pub fn momentum_phase(n_sites: usize, k: usize, m: i64) -> Complex64 {
    let n = n_sites as i64;
    let e = ((k as i64 % n) * (m % n)).rem_euclid(n);
    Complex64::from_polar(1.0, TAU * e as f64 / n as f64)
}

/// Orthonormal momentum basis of the `(r, k)` sector.
///
/// Vector `j` is `d_j^{−1/2} Σ_{n<d_j} ω_k^n T^n |rep_j⟩` for each orbit
/// with `k·d_j ≡ 0 (mod N)`. It satisfies `T|v⟩ = ω_k^{−1}|v⟩`.
#[derive(Clone, Debug, PartialEq)]
pub struct MomentumBasis {
    pub n_sites: usize,
    pub r: usize,
    pub k: usize,
    pub orbits: Vec<Orbit>,
}

impl MomentumBasis {
    pub fn len(&self) -> usize {
        self.orbits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.orbits.is_empty()
    }

    /// `ω_k = e^{2πik/N}`.
    pub fn phase(&self) -> Complex64 {
        momentum_phase(self.n_sites, self.k, 1)
    }

    pub fn weight(&self, idx: usize) -> f64 {
        1.0 / (self.orbits[idx].period as f64).sqrt()
    }

    /// Nonzero amplitudes of basis vector `idx` in the computational basis.
    pub fn expand(&self, idx: usize) -> Vec<(SpinState, Complex64)> {
        let orbit = &self.orbits[idx];
        let w = self.weight(idx);
        orbit
            .members()
            .enumerate()
            .map(|(n, s)| (s, momentum_phase(self.n_sites, self.k, n as i64) * w))
            .collect()
    }
}

pub fn momentum_basis(n_sites: usize, r: usize, k: usize) -> Result<MomentumBasis> {
    check_sites(n_sites)?;
    if !(1..=n_sites).contains(&k) {
        return domain(format!("momentum index must be in 1..={n_sites}, got {k}"));
    }
    let orbits = sector_orbits(n_sites, r)?
        .into_iter()
        .filter(|o| o.admits(k))
        .collect();
    Ok(MomentumBasis {
        n_sites,
        r,
        k,
        orbits,
    })
}
