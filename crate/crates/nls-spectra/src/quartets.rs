//! Enumeration, classification and counting of interacting quartets
//! `lm → nk` on integer frequency grids.
//!
//! A quartet is *frequency matched* when `l+m = n+k` and *resonant* when the
//! dispersion phase also matches, `ζ(l)+ζ(m) = ζ(n)+ζ(k)`. Resonance tests
//! use exact integer arithmetic: floating-point equality would fabricate or
//! drop resonances.

use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An ordered interaction `lm → nk` between four modes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Quartet {
    pub l: i64,
    pub m: i64,
    pub n: i64,
    pub k: i64,
}

impl Quartet {
    pub fn new(l: i64, m: i64, n: i64, k: i64) -> Self {
        Self { l, m, n, k }
    }

    pub fn is_frequency_matched(&self) -> bool {
        self.l + self.m == self.n + self.k
    }

    fn require_matched(&self) -> Result<()> {
        if self.is_frequency_matched() {
            Ok(())
        } else {
            Err(Error::FrequencyMismatch { l: self.l, m: self.m, n: self.n, k: self.k })
        }
    }
}

/// Interaction kind of a frequency-matched quartet.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum QuartetKind {
    /// `l = m = n = k`: self-phase modulation.
    Spm,
    /// `l = k` or `m = k` (equivalently `m = n` or `l = n`): the trivial
    /// pair interactions the literature calls cross-phase modulation.
    Xpm,
    /// `l = m` with the conjugate pair distinct.
    DegenerateFwmLm,
    /// `n = k` with the non-conjugate pair distinct.
    DegenerateFwmNk,
    /// All interacting roles distinct.
    NonDegenerateFwm,
}

/// Classification result: the kind plus the multiplicity with which the
/// unordered interaction appears in the ordered double sum over `(l, m)`
/// (1 when `l = m`, else 2).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QuartetClass {
    pub kind: QuartetKind,
    pub multiplicity: u8,
}

/// Classifies a frequency-matched quartet.
pub fn classify(q: &Quartet) -> Result<QuartetClass> {
    q.require_matched()?;
    let multiplicity = if q.l == q.m { 1 } else { 2 };
    let kind = if q.l == q.m && q.m == q.n && q.n == q.k {
        QuartetKind::Spm
    } else if q.l == q.k || q.m == q.k {
        // with l+m = n+k these are exactly the trivial interactions
        QuartetKind::Xpm
    } else if q.l == q.m {
        QuartetKind::DegenerateFwmLm
    } else if q.n == q.k {
        QuartetKind::DegenerateFwmNk
    } else {
        QuartetKind::NonDegenerateFwm
    };
    Ok(QuartetClass { kind, multiplicity })
}

/// True iff the quartet lies in the trivial set
/// `{l=n, m=k}` or `{l=k, m=n}`.
pub fn is_trivial(q: &Quartet) -> Result<bool> {
    q.require_matched()?;
    Ok((q.l == q.n && q.m == q.k) || (q.l == q.k && q.m == q.n))
}

/// An integer-coefficient dispersion relation `ζ(k) = Σ_i c_i k^i`.
///
/// Evaluation is exact (checked `i128`), so resonance tests are decided
/// without rounding.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DispersionRelation {
    /// `coeffs[i]` multiplies `k^i`.
    pub coeffs: Vec<i64>,
}

impl DispersionRelation {
    pub fn new(coeffs: Vec<i64>) -> Self {
        Self { coeffs }
    }

    /// The integrable relation `ζ(k) = k²`.
    pub fn quadratic() -> Self {
        Self::new(vec![0, 0, 1])
    }

    /// Checked Horner evaluation.
    pub fn eval(&self, k: i64) -> Result<i128> {
        let k = k as i128;
        let mut acc: i128 = 0;
        for &c in self.coeffs.iter().rev() {
            acc = acc.checked_mul(k).ok_or(Error::Overflow)?;
            acc = acc.checked_add(c as i128).ok_or(Error::Overflow)?;
        }
        Ok(acc)
    }

    /// Phase mismatch `ζ(l)+ζ(m)−ζ(n)−ζ(k)`.
    pub fn mismatch(&self, q: &Quartet) -> Result<i128> {
        let a = self.eval(q.l)?.checked_add(self.eval(q.m)?).ok_or(Error::Overflow)?;
        let b = self.eval(q.n)?.checked_add(self.eval(q.k)?).ok_or(Error::Overflow)?;
        a.checked_sub(b).ok_or(Error::Overflow)
    }
}

/// All quartets with `|l|,|m|,|n|,|k| ≤ K` satisfying both the frequency
/// and the phase matching condition, in lexicographic `(l, m, n)` order.
pub fn enumerate_resonant(zeta: &DispersionRelation, big_k: i64) -> Result<Vec<Quartet>> {
    if big_k < 1 {
        return Err(Error::OutOfBand { k: big_k, bound: 1 });
    }
    let mut out = Vec::new();
    for l in -big_k..=big_k {
        for m in -big_k..=big_k {
            for n in -big_k..=big_k {
                let k = l + m - n;
                if k < -big_k || k > big_k {
                    continue;
                }
                let q = Quartet::new(l, m, n, k);
                if zeta.mismatch(&q)? == 0 {
                    out.push(q);
                }
            }
        }
    }
    Ok(out)
}

/// The non-resonant index set `nr_k` clipped to the box `|l|,|m|,|n| ≤ N`:
/// ordered triples `(l, m, n)` with `l+m = n+k`, `l ≠ k`, `m ≠ k`.
pub fn nr_set(k: i64, n_box: i64) -> Result<Vec<(i64, i64, i64)>> {
    if k.abs() > n_box {
        return Err(Error::OutOfBand { k, bound: n_box });
    }
    let mut out = Vec::new();
    for l in -n_box..=n_box {
        if l == k {
            continue;
        }
        for m in -n_box..=n_box {
            if m == k {
                continue;
            }
            let n = l + m - k;
            if n >= -n_box && n <= n_box {
                out.push((l, m, n));
            }
        }
    }
    Ok(out)
}

/// Closed-form size of [`nr_set`]`(k, N)`.
pub fn nr_set_len(k: i64, n_box: i64) -> Result<i64> {
    if k.abs() > n_box {
        return Err(Error::OutOfBand { k, bound: n_box });
    }
    // pairs (l, m) in the box with n = l+m−k in the box, minus l=k and m=k
    // lines, plus the doubly removed l=m=k point
    let width = 2 * n_box + 1;
    let mut pairs = 0i64;
    for s in (k - n_box)..=(k + n_box) {
        pairs += width - s.abs();
    }
    Ok(pairs - 2 * width + 1)
}

/// Number of XPM and FWM interference terms felt by mode `k` on the band
/// `−N…N`, counting XPM terms with their coefficient-2 multiplicity
/// (`2·(2N+1)` of them) and FWM terms as ordered `nr_k` triples.
///
/// At `k = 0` this reduces to the closed form `3N²+3N+2`. Away from the
/// center the count follows the same convention and shrinks toward the band
/// edges.
pub fn count_interference_terms(n_box: i64, k: i64) -> Result<i64> {
    let xpm = 2 * (2 * n_box + 1);
    Ok(xpm + nr_set_len(k, n_box)?)
}

/// Writes `l,m,n,k,class,resonant` rows for the given quartets.
pub fn write_csv<W: Write>(
    quartets: &[Quartet],
    zeta: &DispersionRelation,
    mut w: W,
) -> Result<()> {
    writeln!(w, "l,m,n,k,class,resonant")?;
    for q in quartets {
        let class = classify(q)?;
        let resonant = zeta.mismatch(q)? == 0;
        writeln!(
            w,
            "{},{},{},{},{:?},{}",
            q.l, q.m, q.n, q.k, class.kind, resonant
        )?;
    }
    Ok(())
}
