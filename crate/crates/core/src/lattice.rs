//! Ice-rule configurations on the n×n lattice with domain wall boundary
//! conditions.
//!
//! Arrow conventions per vertex, as (west, east, north, south) edges, where a
//! horizontal edge points right or left and a vertical edge up or down:
//!
//! | type | W | E | N | S |
//! |------|---|---|---|---|
//! | 1    | → | → | ↑ | ↑ |
//! | 2    | ← | ← | ↓ | ↓ |
//! | 3    | → | → | ↓ | ↓ |
//! | 4    | ← | ← | ↑ | ↑ |
//! | 5    | ← | → | ↓ | ↑ |
//! | 6    | → | ← | ↑ | ↓ |
//!
//! Under DWBC every top and bottom boundary arrow points into the square and
//! every left and right boundary arrow points out of it. A lone vertex is then
//! type 5, and the maximal-weight state for `b ≥ a + c` has type 5 on the
//! diagonal, type 3 above it and type 4 below it.
//!
//! Configurations are built row by row. The frontier between rows is the set
//! of vertical edges pointing up; after row `i` (counting from 0 at the top)
//! exactly `i + 1` of them do, which prunes the search.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::model::VertexWeights;
use crate::numerics::Real;

pub const MAX_N: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum VertexType {
    T1 = 1,
    T2,
    T3,
    T4,
    T5,
    T6,
}

/// Edge orientation: `true` for right-pointing (horizontal) or up-pointing (vertical).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Arrows {
    pub west: bool,
    pub east: bool,
    pub north: bool,
    pub south: bool,
}

impl VertexType {
    pub const ALL: [VertexType; 6] =
        [VertexType::T1, VertexType::T2, VertexType::T3, VertexType::T4, VertexType::T5, VertexType::T6];

    pub fn index(self) -> usize {
        self as usize - 1
    }

    pub fn arrows(self) -> Arrows {
        let (west, east, north, south) = match self {
            VertexType::T1 => (true, true, true, true),
            VertexType::T2 => (false, false, false, false),
            VertexType::T3 => (true, true, false, false),
            VertexType::T4 => (false, false, true, true),
            VertexType::T5 => (false, true, false, true),
            VertexType::T6 => (true, false, true, false),
        };
        Arrows { west, east, north, south }
    }

    pub fn from_arrows(a: Arrows) -> Option<Self> {
        Self::ALL.into_iter().find(|t| t.arrows() == a)
    }

    /// 0 for `a`, 1 for `b`, 2 for `c`.
    pub fn weight_class(self) -> usize {
        self.index() / 2
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Configuration {
    pub n: usize,
    /// Row-major, row 0 at the top.
    pub states: Vec<VertexType>,
    pub counts: [usize; 6],
}

impl Configuration {
    pub fn from_states(n: usize, states: Vec<VertexType>) -> Result<Self> {
        if states.len() != n * n {
            return Err(Error::Consistency(alloc::format!("expected {} vertices, got {}", n * n, states.len())));
        }
        let mut counts = [0; 6];
        for s in &states {
            counts[s.index()] += 1;
        }
        let c = Self { n, states, counts };
        c.validate()?;
        Ok(c)
    }

    pub fn at(&self, row: usize, col: usize) -> VertexType {
        self.states[row * self.n + col]
    }

    /// Checks edge consistency, boundary arrows and the stored counts.
    pub fn validate(&self) -> Result<()> {
        let n = self.n;
        if self.states.len() != n * n {
            return Err(Error::Consistency("state array has the wrong length".into()));
        }
        let mut counts = [0; 6];
        for i in 0..n {
            for j in 0..n {
                let v = self.at(i, j).arrows();
                counts[self.at(i, j).index()] += 1;
                if j + 1 < n && v.east != self.at(i, j + 1).arrows().west {
                    return Err(Error::Consistency(alloc::format!("horizontal edge ({i},{j})-({i},{})", j + 1)));
                }
                if i + 1 < n && v.south != self.at(i + 1, j).arrows().north {
                    return Err(Error::Consistency(alloc::format!("vertical edge ({i},{j})-({},{j})", i + 1)));
                }
                if j == 0 && v.west {
                    return Err(Error::Consistency(alloc::format!("left boundary at row {i}")));
                }
                if j + 1 == n && !v.east {
                    return Err(Error::Consistency(alloc::format!("right boundary at row {i}")));
                }
                if i == 0 && v.north {
                    return Err(Error::Consistency(alloc::format!("top boundary at column {j}")));
                }
                if i + 1 == n && !v.south {
                    return Err(Error::Consistency(alloc::format!("bottom boundary at column {j}")));
                }
            }
        }
        if counts != self.counts {
            return Err(Error::Consistency("vertex counts do not match the states".into()));
        }
        Ok(())
    }

    /// Exponents of `a`, `b`, `c` in the weight.
    pub fn weight_exponents(&self) -> [usize; 3] {
        [self.counts[0] + self.counts[1], self.counts[2] + self.counts[3], self.counts[4] + self.counts[5]]
    }

    pub fn weight<R: Real>(&self, w: &VertexWeights<R>) -> R {
        let [na, nb, nc] = self.weight_exponents();
        w.a.powi(na as i64) * w.b.powi(nb as i64) * w.c.powi(nc as i64)
    }

    pub fn weight_exact(&self, w: &VertexWeights<BigRational>) -> BigRational {
        let [na, nb, nc] = self.weight_exponents();
        rpow(&w.a, na) * rpow(&w.b, nb) * rpow(&w.c, nc)
    }

    /// Alternating sign matrix: +1 at type 5, -1 at type 6, 0 elsewhere.
    pub fn to_asm(&self) -> Vec<Vec<i8>> {
        (0..self.n)
            .map(|i| {
                (0..self.n)
                    .map(|j| match self.at(i, j) {
                        VertexType::T5 => 1,
                        VertexType::T6 => -1,
                        _ => 0,
                    })
                    .collect()
            })
            .collect()
    }
}

fn rpow(x: &BigRational, e: usize) -> BigRational {
    num_traits::pow(x.clone(), e)
}

/// One admissible row: its vertex types and the up-pointing mask below it.
#[derive(Clone, Debug)]
struct RowChoice {
    types: Vec<VertexType>,
    below: u32,
}

/// All rows compatible with `above` (bit `j` set when column `j` points up).
fn rows_for(n: usize, above: u32) -> Vec<RowChoice> {
    let mut out = Vec::new();
    let mut stack: Vec<(usize, bool, Vec<VertexType>, u32)> = alloc::vec![(0, false, Vec::new(), 0)];
    while let Some((j, west, types, below)) = stack.pop() {
        if j == n {
            if west {
                out.push(RowChoice { types, below });
            }
            continue;
        }
        let north = above >> j & 1 == 1;
        for t in VertexType::ALL {
            let a = t.arrows();
            if a.west == west && a.north == north {
                let mut ty = types.clone();
                ty.push(t);
                stack.push((j + 1, a.east, ty, below | (a.south as u32) << j));
            }
        }
    }
    out
}

struct Transitions {
    n: usize,
    table: BTreeMap<u32, Vec<RowChoice>>,
}

impl Transitions {
    fn new(n: usize) -> Self {
        Self { n, table: BTreeMap::new() }
    }

    fn get(&mut self, above: u32) -> &[RowChoice] {
        let n = self.n;
        self.table.entry(above).or_insert_with(|| rows_for(n, above))
    }
}

fn check_n(n: usize) -> Result<()> {
    if n == 0 || n > MAX_N {
        return Err(Error::Size { n, max: MAX_N });
    }
    Ok(())
}

/// Depth-first iterator over all DWBC configurations of size `n`.
pub struct ConfigIter {
    n: usize,
    trans: Transitions,
    /// For each completed row: (mask above it, index of the chosen row).
    stack: Vec<(u32, usize)>,
    started: bool,
}

impl ConfigIter {
    /// Advances the stack to the next full configuration, starting the search
    /// at choice `from` for the current depth.
    fn descend(&mut self, mut from: usize) -> bool {
        loop {
            let row = self.stack.len();
            let above = self.stack.last().map_or(0, |&(m, i)| self.trans.table[&m][i].below);
            if row == self.n {
                return true;
            }
            // Row `row` must leave exactly `row + 1` columns pointing up.
            let want = row as u32 + 1;
            let found = self
                .trans
                .get(above)
                .iter()
                .enumerate()
                .skip(from)
                .find(|(_, r)| r.below.count_ones() == want)
                .map(|(i, _)| i);
            match found {
                Some(idx) => {
                    self.stack.push((above, idx));
                    from = 0;
                }
                None => match self.stack.pop() {
                    Some((_, idx)) => from = idx + 1,
                    None => return false,
                },
            }
        }
    }
}

impl Iterator for ConfigIter {
    type Item = Configuration;

    fn next(&mut self) -> Option<Configuration> {
        let ok = if !self.started {
            self.started = true;
            self.descend(0)
        } else {
            match self.stack.pop() {
                Some((_, idx)) => self.descend(idx + 1),
                None => false,
            }
        };
        if !ok {
            return None;
        }
        let mut states = Vec::with_capacity(self.n * self.n);
        for &(m, i) in &self.stack {
            states.extend_from_slice(&self.trans.table[&m][i].types);
        }
        let mut counts = [0; 6];
        for s in &states {
            counts[s.index()] += 1;
        }
        Some(Configuration { n: self.n, states, counts })
    }
}

pub fn enumerate_configs(n: usize) -> Result<ConfigIter> {
    check_n(n)?;
    Ok(ConfigIter { n, trans: Transitions::new(n), stack: Vec::new(), started: false })
}

/// Number of configurations with each weight monomial `a^i b^j c^k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightPolynomial {
    pub n: usize,
    pub terms: BTreeMap<[usize; 3], BigInt>,
}

impl WeightPolynomial {
    /// Built by dynamic programming over the row frontier rather than by
    /// listing configurations.
    pub fn of_size(n: usize) -> Result<Self> {
        check_n(n)?;
        let mut trans = Transitions::new(n);
        let mut layer: BTreeMap<u32, BTreeMap<[usize; 3], BigInt>> = BTreeMap::new();
        layer.insert(0, BTreeMap::from([([0, 0, 0], BigInt::one())]));
        for row in 0..n {
            let want = row as u32 + 1;
            let mut next: BTreeMap<u32, BTreeMap<[usize; 3], BigInt>> = BTreeMap::new();
            for (above, poly) in layer {
                for choice in trans.get(above) {
                    if choice.below.count_ones() != want {
                        continue;
                    }
                    let mut e = [0usize; 3];
                    for t in &choice.types {
                        e[t.weight_class()] += 1;
                    }
                    let dst = next.entry(choice.below).or_default();
                    for (k, v) in &poly {
                        let key = [k[0] + e[0], k[1] + e[1], k[2] + e[2]];
                        *dst.entry(key).or_insert_with(BigInt::zero) += v;
                    }
                }
            }
            layer = next;
        }
        let full = (1u32 << n) - 1;
        let terms = layer.remove(&full).unwrap_or_default();
        Ok(Self { n, terms })
    }

    pub fn config_count(&self) -> BigInt {
        self.terms.values().sum()
    }

    pub fn eval<R: Real>(&self, w: &VertexWeights<R>) -> R {
        let mut acc = w.a.zero_like();
        for (e, count) in &self.terms {
            let m = w.a.powi(e[0] as i64) * w.b.powi(e[1] as i64) * w.c.powi(e[2] as i64);
            acc = acc + m * R::from_bigint(count, w.a.bits());
        }
        acc
    }

    pub fn eval_exact(&self, w: &VertexWeights<BigRational>) -> BigRational {
        let mut acc = BigRational::zero();
        for (e, count) in &self.terms {
            acc += rpow(&w.a, e[0]) * rpow(&w.b, e[1]) * rpow(&w.c, e[2]) * BigRational::from_integer(count.clone());
        }
        acc
    }
}

#[derive(Clone, Debug)]
pub struct EnumerationResult<R> {
    pub n: usize,
    pub config_count: BigInt,
    pub partition_value: R,
    pub per_config_weights: Option<Vec<R>>,
}

/// Enumerates every configuration, optionally keeping the individual weights.
pub fn enumerate<R: Real>(n: usize, w: &VertexWeights<R>, keep_weights: bool) -> Result<EnumerationResult<R>> {
    let mut count = BigInt::zero();
    let mut total = w.a.zero_like();
    let mut weights = keep_weights.then(Vec::new);
    for cfg in enumerate_configs(n)? {
        let x = cfg.weight(w);
        count += 1;
        total = total + x.clone();
        if let Some(v) = weights.as_mut() {
            v.push(x);
        }
    }
    Ok(EnumerationResult { n, config_count: count, partition_value: total, per_config_weights: weights })
}

pub fn partition_brute<R: Real>(n: usize, w: &VertexWeights<R>) -> Result<R> {
    Ok(WeightPolynomial::of_size(n)?.eval(w))
}

pub fn partition_brute_exact(n: usize, w: &VertexWeights<BigRational>) -> Result<BigRational> {
    Ok(WeightPolynomial::of_size(n)?.eval_exact(w))
}

pub fn gibbs_probability<R: Real>(sigma: &Configuration, w: &VertexWeights<R>) -> Result<R> {
    sigma.validate()?;
    Ok(sigma.weight(w) / partition_brute(sigma.n, w)?)
}

pub fn gibbs_probability_exact(sigma: &Configuration, w: &VertexWeights<BigRational>) -> Result<BigRational> {
    sigma.validate()?;
    Ok(sigma.weight_exact(w) / partition_brute_exact(sigma.n, w)?)
}

/// Type 5 on the diagonal, type 3 above, type 4 below.
pub fn ground_state(n: usize) -> Configuration {
    let mut states = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            states.push(match j.cmp(&i) {
                core::cmp::Ordering::Equal => VertexType::T5,
                core::cmp::Ordering::Greater => VertexType::T3,
                core::cmp::Ordering::Less => VertexType::T4,
            });
        }
    }
    let mut counts = [0; 6];
    counts[2] = n * (n - 1) / 2;
    counts[3] = n * (n - 1) / 2;
    counts[4] = n;
    Configuration { n, states, counts }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_vertex() {
        let all: Vec<_> = enumerate_configs(1).unwrap().collect();
        assert_eq!(all.len(), 1);
        assert_eq!(all[0].states, [VertexType::T5]);
    }

    #[test]
    fn asm_counts_by_both_methods() {
        for (n, a) in [(1, 1u64), (2, 2), (3, 7), (4, 42), (5, 429), (6, 7436)] {
            assert_eq!(enumerate_configs(n).unwrap().count() as u64, a);
            assert_eq!(WeightPolynomial::of_size(n).unwrap().config_count(), BigInt::from(a));
        }
    }

    #[test]
    fn size_limits() {
        assert!(matches!(enumerate_configs(0), Err(Error::Size { .. })));
        assert!(matches!(enumerate_configs(9), Err(Error::Size { .. })));
    }

    #[test]
    fn two_by_two() {
        let w = VertexWeights::new(1.5, 0.7, 2.0).unwrap();
        let z = partition_brute(2, &w).unwrap();
        assert!((z - 4.0 * (1.5f64 * 1.5 + 0.49)).abs() < 1e-13);
    }

    #[test]
    fn ground_state_is_valid_and_heaviest() {
        for n in 1..=5 {
            let gs = ground_state(n);
            gs.validate().unwrap();
            let w = VertexWeights::new(1.0, 2.0, 1.0).unwrap();
            let best = enumerate_configs(n).unwrap().map(|c| c.weight(&w)).fold(0.0, f64::max);
            assert_eq!(best, gs.weight(&w));
        }
    }
}
