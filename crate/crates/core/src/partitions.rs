//! Integer partitions and the cell statistics of their Young diagrams.
//!
//! Partitions of a fixed weight are enumerated in reverse-lexicographic
//! order, e.g. `(4), (3,1), (2,2), (2,1,1), (1,1,1,1)`. Cells are visited
//! row by row.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::exactalg::{QSeries, Scalar};
use crate::error::Result;

#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    /// Sorts the parts and drops zeros.
    pub fn new(mut parts: Vec<usize>) -> Partition {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    pub fn empty() -> Partition {
        Partition::default()
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn weight(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// `λ_i` with 1-based `i`; zero past the end.
    pub fn part(&self, i: usize) -> usize {
        if i == 0 {
            return 0;
        }
        self.parts.get(i - 1).copied().unwrap_or(0)
    }

    pub fn conjugate(&self) -> Partition {
        let first = self.parts.first().copied().unwrap_or(0);
        Partition { parts: (1..=first).map(|j| self.parts.iter().filter(|&&p| p >= j).count()).collect() }
    }

    /// Multiplicities `m_i` indexed by part size `i` (index 0 unused).
    pub fn multiplicities(&self) -> Vec<usize> {
        let mut m = vec![0; self.parts.first().copied().unwrap_or(0) + 1];
        for &p in &self.parts {
            m[p] += 1;
        }
        m
    }

    /// `z_λ = Π i^{m_i} m_i!`.
    pub fn z(&self) -> u128 {
        let mut z: u128 = 1;
        for (i, &m) in self.multiplicities().iter().enumerate().skip(1) {
            for k in 1..=m {
                z *= (i as u128) * (k as u128);
            }
        }
        z
    }

    /// Cells `(i, j)`, 1-based, row by row.
    pub fn cells(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.parts.iter().enumerate().flat_map(|(i, &p)| (1..=p).map(move |j| (i + 1, j)))
    }

    pub fn cell_statistics(&self) -> Vec<CellStat> {
        let conj = self.conjugate();
        self.cells()
            .map(|(i, j)| CellStat {
                row: i,
                col: j,
                arm: self.part(i) - j,
                leg: conj.part(j) - i,
                coarm: j - 1,
                coleg: i - 1,
            })
            .collect()
    }

    /// Dominance order on partitions of equal weight.
    pub fn dominates(&self, other: &Partition) -> bool {
        if self.weight() != other.weight() {
            return false;
        }
        let (mut a, mut b) = (0, 0);
        for i in 0..self.len().max(other.len()) {
            a += self.parts.get(i).copied().unwrap_or(0);
            b += other.parts.get(i).copied().unwrap_or(0);
            if a < b {
                return false;
            }
        }
        true
    }

    /// Union of parts.
    pub fn union(&self, other: &Partition) -> Partition {
        let mut p = self.parts.clone();
        p.extend_from_slice(&other.parts);
        Partition::new(p)
    }

    pub fn from_str_list(s: &str) -> std::result::Result<Partition, String> {
        let s = s.trim().trim_start_matches('(').trim_end_matches(')');
        if s.is_empty() {
            return Ok(Partition::empty());
        }
        let parts = s
            .split(',')
            .map(|x| x.trim().parse::<usize>().map_err(|_| format!("bad part {x:?}")))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        if parts.windows(2).any(|w| w[0] < w[1]) || parts.contains(&0) {
            return Err(format!("not a partition: {s}"));
        }
        Ok(Partition { parts })
    }
}

impl Ord for Partition {
    /// Weight first, then reverse-lexicographic: `(2)` before `(1,1)`.
    fn cmp(&self, other: &Self) -> Ordering {
        self.weight().cmp(&other.weight()).then_with(|| other.parts.cmp(&self.parts))
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

impl From<&[usize]> for Partition {
    fn from(p: &[usize]) -> Partition {
        Partition::new(p.to_vec())
    }
}

impl<const N: usize> From<[usize; N]> for Partition {
    fn from(p: [usize; N]) -> Partition {
        Partition::new(p.to_vec())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CellStat {
    pub row: usize,
    pub col: usize,
    pub arm: usize,
    pub leg: usize,
    pub coarm: usize,
    pub coleg: usize,
}

impl CellStat {
    pub fn hook(&self) -> usize {
        self.arm + self.leg + 1
    }
}

/// All partitions of `n` in reverse-lexicographic order.
pub fn enumerate_partitions(n: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fill(n, n, &mut cur, &mut out);
    out
}

fn fill(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
    if rest == 0 {
        out.push(Partition { parts: cur.clone() });
        return;
    }
    for p in (1..=rest.min(max)).rev() {
        cur.push(p);
        fill(rest - p, p, cur, out);
        cur.pop();
    }
}

/// Worker `k` of `workers`: every `workers`-th partition of `n` starting at `k`.
pub fn enumerate_sharded(n: usize, k: usize, workers: usize) -> Vec<Partition> {
    assert!(workers > 0 && k < workers);
    enumerate_partitions(n).into_iter().skip(k).step_by(workers).collect()
}

/// All partitions of weight at most `n`, grouped by weight.
pub fn partitions_up_to(n: usize) -> Vec<Vec<Partition>> {
    (0..=n).map(enumerate_partitions).collect()
}

/// Both sides of the hook-length identity
/// `Σ_λ Q^{|λ|} Π_s (h² − m²)/h² = Π_n (1 − Q^n)^{m² − 1}`.
pub fn nekrasov_okounkov_sides<F: Scalar>(m: &F, order: usize) -> Result<(QSeries<F>, QSeries<F>)> {
    let m2 = m.mul(m);
    let mut lhs = Vec::with_capacity(order + 1);
    for n in 0..=order {
        let mut c = F::zero();
        for lam in enumerate_partitions(n) {
            let mut term = F::one();
            for s in lam.cell_statistics() {
                let h2 = F::from_i64((s.hook() * s.hook()) as i64);
                term = term.mul(&h2.sub(&m2).div(&h2)?);
            }
            c = c.add(&term);
        }
        lhs.push(c);
    }
    let lhs = QSeries::new(lhs, order);
    // (1 - Q^n)^e = Σ_k binom(e, k) (-Q^n)^k with generalized binomials.
    let e = m2.sub(&F::one());
    let mut rhs = QSeries::one(order);
    for n in 1..=order {
        let mut coeffs = vec![F::zero(); order + 1];
        let mut binom = F::one();
        let mut k = 0;
        while k * n <= order {
            let sign = if k % 2 == 0 { F::one() } else { F::one().neg() };
            coeffs[k * n] = binom.mul(&sign);
            binom = binom.mul(&e.sub(&F::from_i64(k as i64))).div(&F::from_i64(k as i64 + 1))?;
            k += 1;
        }
        rhs = rhs.mul(&QSeries::new(coeffs, order));
    }
    Ok((lhs, rhs))
}

pub fn nekrasov_okounkov_check<F: Scalar>(m: &F, order: usize) -> Result<bool> {
    let (l, r) = nekrasov_okounkov_sides(m, order)?;
    Ok(l == r)
}

/// Partition counts against the coefficients of `Π_k (1 − Q^k)^{-1}`.
pub fn euler_count_check(order: usize) -> bool {
    let mut gen = vec![0u128; order + 1];
    gen[0] = 1;
    for k in 1..=order {
        for n in k..=order {
            gen[n] += gen[n - k];
        }
    }
    (0..=order).all(|n| enumerate_partitions(n).len() as u128 == gen[n])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::Rational;

    #[test]
    fn enumeration_order() {
        assert_eq!(enumerate_partitions(0), vec![Partition::empty()]);
        let four: Vec<String> = enumerate_partitions(4).iter().map(|p| p.to_string()).collect();
        assert_eq!(four, ["(4)", "(3,1)", "(2,2)", "(2,1,1)", "(1,1,1,1)"]);
        let mut sorted = enumerate_partitions(4);
        sorted.sort();
        assert_eq!(sorted, enumerate_partitions(4));
    }

    #[test]
    fn conjugates() {
        assert_eq!(Partition::empty().conjugate(), Partition::empty());
        assert_eq!(Partition::from([2, 1]).conjugate(), Partition::from([2, 1]));
        assert_eq!(Partition::from([3, 1]).conjugate(), Partition::from([2, 1, 1]));
    }

    #[test]
    fn statistics_of_21() {
        let s = Partition::from([2, 1]).cell_statistics();
        let flat: Vec<_> = s.iter().map(|c| (c.row, c.col, c.arm, c.leg, c.coarm, c.coleg)).collect();
        assert_eq!(flat, vec![(1, 1, 1, 1, 0, 0), (1, 2, 0, 0, 1, 0), (2, 1, 0, 0, 0, 1)]);
        assert!(Partition::empty().cell_statistics().is_empty());
    }

    #[test]
    fn z_values() {
        assert_eq!(Partition::from([1, 1]).z(), 2);
        assert_eq!(Partition::from([2, 1]).z(), 2);
        assert_eq!(Partition::from([2, 2, 1]).z(), 8);
    }

    #[test]
    fn dominance() {
        assert!(Partition::from([3, 1]).dominates(&Partition::from([2, 2])));
        assert!(!Partition::from([3, 1, 1, 1]).dominates(&Partition::from([2, 2, 2])));
        assert!(!Partition::from([2, 2, 2]).dominates(&Partition::from([3, 1, 1, 1])));
    }

    #[test]
    fn sharding_is_a_partition_of_the_work() {
        let mut all: Vec<Partition> = (0..3).flat_map(|k| enumerate_sharded(7, k, 3)).collect();
        all.sort();
        assert_eq!(all, enumerate_partitions(7));
    }

    #[test]
    fn hook_length_identity_small() {
        for m in [0, 1, 2] {
            assert!(nekrasov_okounkov_check(&Rational::from_i64(m), 5).unwrap());
        }
        assert!(nekrasov_okounkov_check(&Rational::new(1, 2), 6).unwrap());
        assert!(euler_count_check(20));
    }
}
