//! The pairing groupoid on positive integers and its unarisations.
//!
//! `x ◇ y = ½(x² + y² + 2xy − x − 3y + 2)` is a bijection `ℕ⁺ × ℕ⁺ → ℕ⁺`.
//! With `s = x + y` it equals `s(s−1)/2 − y + 1`, which enumerates the
//! anti-diagonal `s` in decreasing `y`.
//!
//! Freezing one argument turns `◇` into an infinite family of injective
//! unary operations with pairwise disjoint images. Orbits are computed
//! over the truncated family `a ≤ op_bound`, which is enough inside
//! `[1, N]` because every operation is inflationary.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::error::PairingError;

/// `x ◇ y`, with overflow reported.
pub fn pair(x: u64, y: u64) -> Result<u64, PairingError> {
    if x == 0 || y == 0 {
        return Err(PairingError::NonPositive(x, y));
    }
    let overflow = || PairingError::Overflow(x, y);
    let s = x.checked_add(y).ok_or_else(overflow)?;
    // s(s-1) is even, so the halving is exact.
    let tri = (s as u128 * (s as u128 - 1)) / 2;
    let value = tri - y as u128 + 1;
    u64::try_from(value).map_err(|_| overflow())
}

/// Inverse of [`pair`].
pub fn unpair(n: u64) -> Result<(u64, u64), PairingError> {
    if n == 0 {
        return Err(PairingError::Zero);
    }
    // Smallest k with k(k+1)/2 >= n; then s = k + 1.
    let n128 = n as u128;
    let tri = |k: u128| k * (k + 1) / 2;
    let mut k = ((2.0 * n as f64).sqrt() as u128).max(1);
    while tri(k) < n128 {
        k += 1;
    }
    while k > 1 && tri(k - 1) >= n128 {
        k -= 1;
    }
    let y = tri(k) - n128 + 1;
    let x = k + 1 - y;
    Ok((x as u64, y as u64))
}

/// Which argument of `◇` stays free.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Variant {
    /// `x ↦ x ◇ a`, unarisation on the first component.
    U1,
    /// `x ↦ a ◇ x`, unarisation on the second component.
    U2,
}

impl std::str::FromStr for Variant {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "u1" => Ok(Variant::U1),
            "u2" => Ok(Variant::U2),
            other => Err(format!("unknown variant {other} (expected u1 or u2)")),
        }
    }
}

/// The unarised pairing algebra with operations indexed by `1..=op_bound`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct UnarisedAlgebra {
    pub variant: Variant,
    pub op_bound: u64,
}

impl UnarisedAlgebra {
    pub fn new(variant: Variant, op_bound: u64) -> Self {
        UnarisedAlgebra { variant, op_bound }
    }

    /// The operation with index `a` applied to `x`.
    pub fn op(&self, a: u64, x: u64) -> Result<u64, PairingError> {
        match self.variant {
            Variant::U1 => pair(x, a),
            Variant::U2 => pair(a, x),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitReport {
    pub seed: u64,
    pub bound: u64,
    pub members: BTreeSet<u64>,
}

/// Closure of `{seed}` under all operations, restricted to `[1, bound]`.
pub fn orbit(alg: &UnarisedAlgebra, seed: u64, bound: u64) -> Result<OrbitReport, PairingError> {
    let mut members = BTreeSet::new();
    let mut frontier = BTreeSet::new();
    if (1..=bound).contains(&seed) {
        members.insert(seed);
        frontier.insert(seed);
    }
    while let Some(x) = frontier.pop_first() {
        for a in 1..=alg.op_bound {
            let v = alg.op(a, x)?;
            // op(a, x) increases with a for both variants
            if v > bound {
                break;
            }
            if members.insert(v) {
                frontier.insert(v);
            }
        }
    }
    Ok(OrbitReport {
        seed,
        bound,
        members,
    })
}

/// One orbit together with the length-one cycle relation on its seed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitFactor {
    pub orbit: OrbitReport,
    /// Index `a` of the operation fixing the seed, if any (`op_a(seed) = seed`).
    pub fixing_op: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionReport {
    pub variant: Variant,
    pub bound: u64,
    pub factors: Vec<OrbitFactor>,
    pub disjoint: bool,
    pub covers: bool,
}

impl PartitionReport {
    /// Disjoint, covering, and every seed fixed by the first operation.
    pub fn verified(&self) -> bool {
        self.disjoint && self.covers && self.factors.iter().all(|f| f.fixing_op == Some(1))
    }

    /// One orbit per line, members ascending and comma-separated.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for f in &self.factors {
            let members: Vec<String> = f.orbit.members.iter().map(u64::to_string).collect();
            let _ = writeln!(out, "{}", members.join(","));
        }
        out
    }

    /// `render` plus the verification summary.
    pub fn render_verbose(&self) -> String {
        let mut out = self.render();
        let name = match self.variant {
            Variant::U1 => "u1",
            Variant::U2 => "u2",
        };
        for f in &self.factors {
            let relation = match f.fixing_op {
                Some(a) => format!("op_{a}({0}) = {0}", f.orbit.seed),
                None => "no fixing operation".to_string(),
            };
            let _ = writeln!(out, "# seed {}: {}", f.orbit.seed, relation);
        }
        let _ = writeln!(
            out,
            "# variant {name}, bound {}: disjoint {}, covers {}, {}",
            self.bound,
            self.disjoint,
            self.covers,
            if self.verified() { "verified" } else { "NOT verified" }
        );
        out
    }
}

/// Bounded check of the decomposition of the unarised pairing algebra:
/// `U2` splits `[1, N]` into the orbits of 1 and 2, `U1` is generated by 1.
pub fn decompose_pairing(variant: Variant, bound: u64) -> Result<PartitionReport, PairingError> {
    let alg = UnarisedAlgebra::new(variant, bound);
    let seeds: &[u64] = match variant {
        Variant::U1 => &[1],
        Variant::U2 => &[1, 2],
    };
    let mut factors = Vec::new();
    for &seed in seeds {
        let orbit = orbit(&alg, seed, bound)?;
        let fixing_op = (alg.op(1, seed)? == seed).then_some(1);
        factors.push(OrbitFactor { orbit, fixing_op });
    }
    let total: usize = factors.iter().map(|f| f.orbit.members.len()).sum();
    let union: BTreeSet<u64> = factors.iter().flat_map(|f| f.orbit.members.iter().copied()).collect();
    Ok(PartitionReport {
        variant,
        bound,
        disjoint: union.len() == total,
        covers: union.len() as u64 == bound && union.iter().copied().eq(1..=bound),
        factors,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn formula(x: u64, y: u64) -> u64 {
        (x * x + y * y + 2 * x * y + 2 - x - 3 * y) / 2
    }

    #[test]
    fn pair_examples() {
        assert_eq!(pair(1, 1), Ok(1));
        assert_eq!(pair(1, 2), Ok(2));
        assert_eq!(pair(2, 1), Ok(3));
        assert_eq!(pair(2, 2), Ok(5));
        for x in 1..60 {
            for y in 1..60 {
                assert_eq!(pair(x, y).unwrap(), formula(x, y));
            }
        }
    }

    #[test]
    fn pair_errors() {
        assert_eq!(pair(0, 1), Err(PairingError::NonPositive(0, 1)));
        assert_eq!(pair(u64::MAX, 1), Err(PairingError::Overflow(u64::MAX, 1)));
        assert!(matches!(pair(1 << 33, 1 << 33), Err(PairingError::Overflow(..))));
        assert_eq!(unpair(0), Err(PairingError::Zero));
    }

    #[test]
    fn unpair_examples() {
        assert_eq!(unpair(1), Ok((1, 1)));
        assert_eq!(unpair(2), Ok((1, 2)));
        assert_eq!(unpair(3), Ok((2, 1)));
        assert_eq!(unpair(5), Ok((2, 2)));
        let big = u64::MAX / 4;
        let (x, y) = unpair(big).unwrap();
        assert_eq!(pair(x, y), Ok(big));
    }

    #[test]
    fn bijection_up_to_ten_thousand() {
        for n in 1..=10_000 {
            let (x, y) = unpair(n).unwrap();
            assert_eq!(pair(x, y), Ok(n));
        }
        for x in 1..150 {
            for y in 1..150 {
                let n = pair(x, y).unwrap();
                if n <= 10_000 {
                    assert_eq!(unpair(n), Ok((x, y)));
                }
            }
        }
    }

    #[test]
    fn operations_are_inflationary() {
        // Exhaustive over every pair whose value stays within 10^4.
        for a in 1..=10_000u64 {
            for x in 1..=10_000u64 {
                let v = pair(a, x).unwrap();
                let w = pair(x, a).unwrap();
                if v > 10_000 && w > 10_000 {
                    break;
                }
                if v <= 10_000 {
                    assert!(v >= x);
                }
                if w <= 10_000 {
                    assert!(w >= x);
                }
            }
        }
    }

    /// Orbit of `n` under U2 found by walking back through second
    /// projections: `n = a ◇ y` lies in the orbit of `y`.
    fn u2_root(mut n: u64) -> u64 {
        loop {
            let (_, y) = unpair(n).unwrap();
            if y == n {
                return n;
            }
            n = y;
        }
    }

    #[test]
    fn orbits_match_projection_walk() {
        let alg = UnarisedAlgebra::new(Variant::U2, 400);
        let one = orbit(&alg, 1, 400).unwrap().members;
        let two = orbit(&alg, 2, 400).unwrap().members;
        for n in 1..=400 {
            let root = u2_root(n);
            assert!(root == 1 || root == 2);
            assert_eq!(one.contains(&n), root == 1, "{n}");
            assert_eq!(two.contains(&n), root == 2, "{n}");
        }
    }

    #[test]
    fn orbit_examples() {
        let u2 = UnarisedAlgebra::new(Variant::U2, 17);
        let v: Vec<u64> = orbit(&u2, 2, 17).unwrap().members.into_iter().collect();
        assert_eq!(v, [2, 5, 9, 11, 14, 17]);
        // 7 = 1◇4, 12 = 2◇4 and 15 = 5◇1 all lie in the orbit of 1.
        let v: Vec<u64> = orbit(&u2, 1, 16).unwrap().members.into_iter().collect();
        assert_eq!(v, [1, 3, 4, 6, 7, 8, 10, 12, 13, 15, 16]);
        let u1 = UnarisedAlgebra::new(Variant::U1, 20);
        let v: Vec<u64> = orbit(&u1, 1, 20).unwrap().members.into_iter().collect();
        assert_eq!(v, (1..=20).collect::<Vec<_>>());
    }

    #[test]
    fn decomposition_examples() {
        let r = decompose_pairing(Variant::U2, 17).unwrap();
        assert_eq!(r.factors.len(), 2);
        assert!(r.verified());
        assert_eq!(r.factors[1].fixing_op, Some(1));

        let r = decompose_pairing(Variant::U1, 17).unwrap();
        assert_eq!(r.factors.len(), 1);
        assert!(r.verified());
        assert_eq!(pair(1, 1), Ok(1));

        let r = decompose_pairing(Variant::U2, 2).unwrap();
        assert_eq!(r.render(), "1\n2\n");
        assert!(r.verified());
    }

    #[test]
    fn u2_partition_up_to_a_thousand() {
        for n in 2..=1000 {
            assert!(decompose_pairing(Variant::U2, n).unwrap().verified(), "{n}");
        }
    }

    #[test]
    fn operations_injective_with_disjoint_images() {
        let n = 300;
        for variant in [Variant::U1, Variant::U2] {
            let alg = UnarisedAlgebra::new(variant, n);
            let mut seen = std::collections::HashMap::new();
            for a in 1..=n {
                for x in 1..=n {
                    let v = alg.op(a, x).unwrap();
                    if v <= n {
                        assert_eq!(seen.insert(v, (a, x)), None, "{variant:?} {v}");
                    }
                }
            }
        }
    }
}
