use std::fmt;
use std::ops::RangeInclusive;

use super::{phi_from, psi_from};
use crate::error::{Error, Result};
use crate::scalar::{max_abs, Scalar};
use crate::sequence::{Differences, Sequence};

/// Determinant solution `(F, G)` of the bilinear form of the lattice
/// equation, with `U_k^n = G_k^n / F_k^n`:
///
/// ```text
/// F_{3k}   = Ψ_{k-1}(Δ³S_n)    G_{3k}   = Ψ_k(S_n)
/// F_{3k+1} = Ψ_k(ΔS_n)         G_{3k+1} = -Ψ_{k-1}(Δ⁴S_n)
/// F_{3k+2} = Ψ_k(Δ²S_n)        G_{3k+2} = Φ_{k+1}(ΔS_n)
/// ```
#[derive(Debug, Clone)]
pub struct MoleculeSolution<T: Scalar> {
    f: Vec<Vec<T>>,
    g: Vec<Vec<T>>,
    source: Sequence<T>,
}

impl<T: Scalar> MoleculeSolution<T> {
    pub fn source(&self) -> &Sequence<T> {
        &self.source
    }

    pub fn max_level(&self) -> usize {
        self.f.len()
    }

    fn index(&self, level: usize, n: i64) -> Option<(usize, usize)> {
        let l = level.checked_sub(1)?;
        let i = usize::try_from(n.checked_sub(self.source.start_label())?).ok()?;
        (l < self.f.len() && i < self.f[l].len()).then_some((l, i))
    }

    pub fn f(&self, level: usize, n: i64) -> Option<&T> {
        self.index(level, n).map(|(l, i)| &self.f[l][i])
    }

    pub fn g(&self, level: usize, n: i64) -> Option<&T> {
        self.index(level, n).map(|(l, i)| &self.g[l][i])
    }

    /// `G/F` at a lattice site; `None` where `F` vanishes.
    pub fn u(&self, level: usize, n: i64) -> Option<T> {
        let f = self.f(level, n)?;
        if f.is_zero() {
            return None;
        }
        Some(self.g(level, n)?.clone() / f.clone())
    }

    /// `T_k^(n) = G_{3k+3}^n / F_{3k+3}^n`.
    pub fn transform(&self, k: usize, n: i64) -> Option<T> {
        self.u(3 * k + 3, n)
    }

    /// Sites `(level, n)` whose `F` is exactly zero.
    pub fn zero_f(&self) -> Vec<(usize, i64)> {
        let n0 = self.source.start_label();
        self.f
            .iter()
            .enumerate()
            .flat_map(|(l, row)| {
                row.iter()
                    .enumerate()
                    .filter(|(_, v)| v.is_zero())
                    .map(move |(i, _)| (l + 1, n0 + i as i64))
            })
            .collect()
    }
}

fn level_len(input_len: usize, level: usize) -> usize {
    input_len.saturating_sub(level.saturating_sub(3))
}

/// Evaluates `F` and `G` on levels `1 ..= max_level` at every label whose
/// window `S_n ..= S_{n+level-3}` is stored.
pub fn molecule_solution<T: Scalar>(
    seq: &Sequence<T>,
    max_level: usize,
) -> Result<MoleculeSolution<T>> {
    if max_level == 0 || level_len(seq.len(), max_level) == 0 {
        return Err(Error::window(format!(
            "level {max_level} needs more than {} sequence elements",
            seq.len()
        )));
    }
    let ctx = seq.context();
    let diffs = Differences::new(seq);
    let mut f = Vec::with_capacity(max_level);
    let mut g = Vec::with_capacity(max_level);
    for level in 1..=max_level {
        let (k, r) = ((level / 3) as i64, level % 3);
        let mut f_row = Vec::new();
        let mut g_row = Vec::new();
        for i in 0..level_len(seq.len(), level) {
            let n = seq.start_label() + i as i64;
            let (fv, gv) = match r {
                0 => (
                    psi_from(&diffs, 3, k - 1, n, ctx),
                    psi_from(&diffs, 0, k, n, ctx),
                ),
                1 => (
                    psi_from(&diffs, 1, k, n, ctx),
                    psi_from(&diffs, 4, k - 1, n, ctx).map(|x| -x),
                ),
                _ => (
                    psi_from(&diffs, 2, k, n, ctx),
                    phi_from(&diffs, 1, k + 1, n, ctx),
                ),
            };
            let (Some(fv), Some(gv)) = (fv, gv) else {
                unreachable!("window of level {level} at label {n} is stored");
            };
            f_row.push(fv);
            g_row.push(gv);
        }
        f.push(f_row);
        g.push(g_row);
    }
    Ok(MoleculeSolution {
        f,
        g,
        source: seq.clone(),
    })
}

/// The three bilinear equations satisfied by the molecule solution.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BilinearEquation {
    /// `F_k^n G_k^{n+1} - F_k^{n+1} G_k^n = F_{k+1}^n F_{k-1}^{n+1}`
    First,
    /// `F_{k+2}^n G_{k-1}^{n+1} - F_{k-1}^{n+1} G_{k+2}^n = F_{k+1}^{n+1} F_k^n`
    Second,
    /// `F_k^n F_{k+2}^{n+1} - F_k^{n+1} F_{k+2}^n = F_{k+3}^n F_{k-1}^{n+1}`
    Third,
}

impl BilinearEquation {
    pub const ALL: [BilinearEquation; 3] = [
        BilinearEquation::First,
        BilinearEquation::Second,
        BilinearEquation::Third,
    ];

    /// `(lhs, rhs)` at `(k, n)`, or `None` if a term is outside the solution.
    fn evaluate<T: Scalar>(self, sol: &MoleculeSolution<T>, k: usize, n: i64) -> Option<(T, T)> {
        let f = |l: usize, m: i64| sol.f(l, m).cloned();
        let g = |l: usize, m: i64| sol.g(l, m).cloned();
        let km1 = k.checked_sub(1).filter(|&l| l >= 1)?;
        match self {
            BilinearEquation::First => Some((
                f(k, n)? * g(k, n + 1)? - f(k, n + 1)? * g(k, n)?,
                f(k + 1, n)? * f(km1, n + 1)?,
            )),
            BilinearEquation::Second => Some((
                f(k + 2, n)? * g(km1, n + 1)? - f(km1, n + 1)? * g(k + 2, n)?,
                f(k + 1, n + 1)? * f(k, n)?,
            )),
            BilinearEquation::Third => Some((
                f(k, n)? * f(k + 2, n + 1)? - f(k, n + 1)? * f(k + 2, n)?,
                f(k + 3, n)? * f(km1, n + 1)?,
            )),
        }
    }
}

impl fmt::Display for BilinearEquation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BilinearEquation::First => "first",
            BilinearEquation::Second => "second",
            BilinearEquation::Third => "third",
        })
    }
}

/// One instance of a bilinear equation.
#[derive(Debug, Clone, PartialEq)]
pub struct Residual<T> {
    pub equation: BilinearEquation,
    pub k: usize,
    pub n: i64,
    pub lhs: T,
    pub rhs: T,
}

impl<T: Scalar> Residual<T> {
    pub fn residual(&self) -> T {
        self.lhs.clone() - self.rhs.clone()
    }

    /// `|lhs - rhs| / max(|lhs|, |rhs|, 1)`.
    pub fn scaled(&self) -> f64 {
        let scale = max_abs(&self.lhs, &self.rhs).to_f64().max(1.0);
        self.residual().abs().to_f64() / scale
    }
}

#[derive(Debug, Clone)]
pub struct BilinearReport<T: Scalar> {
    pub residuals: Vec<Residual<T>>,
    /// Sites where `F` vanishes; `U = G/F` is undefined there.
    pub zero_f: Vec<(usize, i64)>,
}

impl<T: Scalar> BilinearReport<T> {
    /// Every residual is exactly zero.
    pub fn all_exact(&self) -> bool {
        self.residuals.iter().all(|r| r.lhs == r.rhs)
    }

    pub fn max_scaled(&self) -> f64 {
        self.residuals
            .iter()
            .map(Residual::scaled)
            .fold(0.0, f64::max)
    }

    pub fn count(&self, eq: BilinearEquation) -> usize {
        self.residuals.iter().filter(|r| r.equation == eq).count()
    }
}

/// Residuals of all three bilinear equations for `2 ≤ k ≤ k_max` and every
/// label in `n_range` (default: all) where each term is computable.
pub fn check_bilinear<T: Scalar>(
    seq: &Sequence<T>,
    k_max: usize,
    n_range: Option<RangeInclusive<i64>>,
) -> Result<BilinearReport<T>> {
    let top = (k_max + 3).min(seq.len() + 2);
    let sol = molecule_solution(seq, top)?;
    let labels = n_range.unwrap_or(seq.start_label()..=seq.end_label());
    let mut residuals = Vec::new();
    for k in 2..=k_max {
        for n in labels.clone() {
            for eq in BilinearEquation::ALL {
                if let Some((lhs, rhs)) = eq.evaluate(&sol, k, n) {
                    residuals.push(Residual {
                        equation: eq,
                        k,
                        n,
                        lhs,
                        rhs,
                    });
                }
            }
        }
    }
    if residuals.is_empty() {
        return Err(Error::window(format!(
            "no bilinear equation with k ≤ {k_max} fits {} elements",
            seq.len()
        )));
    }
    Ok(BilinearReport {
        residuals,
        zero_f: sol.zero_f(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    fn sample() -> Sequence<Rational> {
        let v = [
            (3, 1),
            (-7, 2),
            (5, 3),
            (1, 4),
            (-2, 5),
            (9, 7),
            (4, 9),
            (-1, 3),
            (6, 5),
            (2, 7),
        ];
        Sequence::new(0, v.iter().map(|&(p, q)| Rational::new(p, q)).collect()).unwrap()
    }

    #[test]
    fn initial_levels() {
        let s = sample();
        let sol = molecule_solution(&s, 4).unwrap();
        for n in s.labels() {
            let one = Rational::integer(1);
            assert_eq!(sol.f(1, n), Some(&one));
            assert_eq!(sol.f(2, n), Some(&one));
            assert_eq!(sol.f(3, n), Some(&one));
            assert_eq!(sol.g(1, n), Some(&Rational::integer(0)));
            assert_eq!(sol.g(2, n), Some(&Rational::integer(n)));
            assert_eq!(sol.g(3, n), s.get(n).ok());
        }
        for n in 0..s.end_label() {
            let ds = s.get(n + 1).unwrap().clone() - s.get(n).unwrap().clone();
            assert_eq!(sol.f(4, n), Some(&ds));
            assert_eq!(sol.g(4, n), Some(&Rational::integer(-1)));
        }
        assert_eq!(sol.f(4, s.end_label()), None);
    }

    #[test]
    fn window_too_large() {
        let s = sample();
        assert!(molecule_solution(&s, s.len() + 2).is_ok());
        assert!(matches!(
            molecule_solution(&s, s.len() + 3),
            Err(Error::Window(_))
        ));
        assert!(matches!(molecule_solution(&s, 0), Err(Error::Window(_))));
    }

    #[test]
    fn named_instances_vanish() {
        let s = sample();
        let rep = check_bilinear(&s, 4, None).unwrap();
        let find = |eq, k, n| {
            rep.residuals
                .iter()
                .find(|r| r.equation == eq && r.k == k && r.n == n)
                .unwrap()
                .residual()
        };
        assert!(find(BilinearEquation::First, 3, 0).is_zero());
        assert!(find(BilinearEquation::Third, 4, 1).is_zero());
        assert!(rep.all_exact());
        assert_eq!(rep.max_scaled(), 0.0);
    }

    #[test]
    fn constant_sequence_reports_zero_f() {
        let s = Sequence::new(0, vec![Rational::integer(2); 8]).unwrap();
        let rep = check_bilinear(&s, 3, None).unwrap();
        assert!(rep.zero_f.contains(&(4, 0)));
        assert!(rep.zero_f.iter().any(|&(l, _)| l == 6));
        let sol = molecule_solution(&s, 6).unwrap();
        assert_eq!(sol.u(4, 0), None);
    }

    #[test]
    fn restricted_label_range() {
        let s = sample();
        let rep = check_bilinear(&s, 3, Some(2..=2)).unwrap();
        assert!(rep.residuals.iter().all(|r| r.n == 2));
        assert!(rep.count(BilinearEquation::Second) > 0);
    }
}
