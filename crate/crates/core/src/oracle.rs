//! Brute-force ground truth.
//!
//! Set partitions are counted by walking restricted growth strings, and
//! independently by enumerating ordered set compositions and dividing by k!.
//! Neither path touches [`Poly`](crate::poly::Poly) arithmetic.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::factorial;

/// Largest ground set accepted by [`count_partitions`] and [`count_bell`].
pub const PARTITION_BUDGET: usize = 14;
/// Largest ground set accepted by [`count_partitions_ordered`].
pub const ORDERED_BUDGET: usize = 10;
/// Limits for [`compositions_at_least`].
pub const COMPOSITION_N_BUDGET: usize = 40;
pub const COMPOSITION_K_BUDGET: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PartitionSpec {
    n: usize,
    k: usize,
    r: usize,
}

impl PartitionSpec {
    pub fn new(n: usize, k: usize, r: usize) -> Result<Self> {
        if r == 0 {
            return Err(Error::ZeroR);
        }
        if n > PARTITION_BUDGET {
            return Err(Error::BudgetExceeded {
                what: "partition ground set",
                value: n,
                limit: PARTITION_BUDGET,
            });
        }
        Ok(PartitionSpec { n, k, r })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn r(&self) -> usize {
        self.r
    }
}

struct RgsWalk {
    n: usize,
    k: usize,
    r: usize,
    sizes: Vec<usize>,
    count: u64,
}

impl RgsWalk {
    // Element `i` joins an existing block or opens the next one. Branches that
    // can no longer reach k blocks of size >= r are cut.
    fn visit(&mut self, i: usize) {
        let remaining = self.n - i;
        let open = self.sizes.len();
        let deficit: usize = self
            .sizes
            .iter()
            .map(|&s| self.r.saturating_sub(s))
            .sum::<usize>()
            + self.r * (self.k - open);
        if deficit > remaining {
            return;
        }
        if i == self.n {
            if open == self.k && self.sizes.iter().all(|&s| s >= self.r) {
                self.count += 1;
            }
            return;
        }
        for b in 0..open {
            self.sizes[b] += 1;
            self.visit(i + 1);
            self.sizes[b] -= 1;
        }
        if open < self.k {
            self.sizes.push(1);
            self.visit(i + 1);
            self.sizes.pop();
        }
    }
}

/// Number of partitions of `{1,…,n}` into exactly `k` blocks, each of size at least `r`.
pub fn count_partitions(spec: PartitionSpec) -> BigInt {
    let mut walk = RgsWalk {
        n: spec.n,
        k: spec.k,
        r: spec.r,
        sizes: Vec::with_capacity(spec.k),
        count: 0,
    };
    walk.visit(0);
    BigInt::from(walk.count)
}

/// Same count as [`count_partitions`], obtained by enumerating ordered
/// sequences of `k` disjoint blocks (as bitmasks) covering the set, then
/// dividing by `k!`.
pub fn count_partitions_ordered(spec: PartitionSpec) -> Result<BigInt> {
    if spec.n > ORDERED_BUDGET {
        return Err(Error::BudgetExceeded {
            what: "ordered set-composition ground set",
            value: spec.n,
            limit: ORDERED_BUDGET,
        });
    }
    fn go(remaining: u32, blocks_left: usize, r: usize) -> u64 {
        if blocks_left == 0 {
            return u64::from(remaining == 0);
        }
        // every nonempty submask of `remaining`
        let mut total = 0;
        let mut sub = remaining;
        while sub != 0 {
            if sub.count_ones() as usize >= r {
                total += go(remaining & !sub, blocks_left - 1, r);
            }
            sub = (sub - 1) & remaining;
        }
        total
    }
    let full = if spec.n == 0 { 0 } else { (1u32 << spec.n) - 1 };
    let ordered = BigInt::from(go(full, spec.k, spec.r));
    let kf = factorial(spec.k);
    debug_assert!((&ordered % &kf).is_zero());
    Ok(ordered / kf)
}

/// Number of partitions of `{1,…,n}` with every block of size at least `r`.
pub fn count_bell(n: usize, r: usize) -> Result<BigInt> {
    let mut total = BigInt::zero();
    for k in 0..=n {
        total += count_partitions(PartitionSpec::new(n, k, r)?);
    }
    Ok(total)
}

/// Ordered k-tuples of integers `>= r` summing to `n`, in lexicographic order.
///
/// Unbounded; [`compositions_at_least`] is the budget-checked entry point.
#[derive(Debug, Clone)]
pub struct Compositions {
    r: usize,
    current: Option<Vec<usize>>,
}

impl Compositions {
    pub fn new(n: usize, k: usize, r: usize) -> Self {
        let current = if k == 0 {
            (n == 0).then(Vec::new)
        } else if n >= k * r {
            let mut v = vec![r; k];
            v[k - 1] = n - (k - 1) * r;
            Some(v)
        } else {
            None
        };
        Compositions { r, current }
    }

    fn advance(&self, v: &[usize]) -> Option<Vec<usize>> {
        let k = v.len();
        let mut tail = 0;
        // rightmost position (excluding the last) that can grow by one
        for i in (0..k.saturating_sub(1)).rev() {
            tail += v[i + 1];
            let slots = k - 1 - i;
            if tail > slots * self.r {
                let mut next = v.to_vec();
                next[i] += 1;
                for s in next.iter_mut().take(k - 1).skip(i + 1) {
                    *s = self.r;
                }
                next[k - 1] = tail - 1 - (slots - 1) * self.r;
                return Some(next);
            }
        }
        None
    }
}

impl Iterator for Compositions {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let cur = self.current.take()?;
        self.current = self.advance(&cur);
        Some(cur)
    }
}

pub fn compositions_at_least(n: usize, k: usize, r: usize) -> Result<Compositions> {
    if r == 0 {
        return Err(Error::ZeroR);
    }
    if n > COMPOSITION_N_BUDGET {
        return Err(Error::BudgetExceeded {
            what: "composition total",
            value: n,
            limit: COMPOSITION_N_BUDGET,
        });
    }
    if k > COMPOSITION_K_BUDGET {
        return Err(Error::BudgetExceeded {
            what: "composition length",
            value: k,
            limit: COMPOSITION_K_BUDGET,
        });
    }
    Ok(Compositions::new(n, k, r))
}

/// `Σ n!/(k!·∏ lᵢ!)` over compositions of `n` into `k` parts `>= r`: the λ = 0
/// value of the composition sum, computed with plain integers.
pub fn multinomial_count(n: usize, k: usize, r: usize) -> Result<BigInt> {
    let nf = factorial(n);
    let mut total = BigInt::zero();
    for c in compositions_at_least(n, k, r)? {
        let denom = c.iter().fold(BigInt::one(), |acc, &l| acc * factorial(l));
        total += &nf / denom;
    }
    let kf = factorial(k);
    debug_assert!((&total % &kf).is_zero());
    Ok(total / kf)
}
