//! Deterministic enumerators for the search spaces of the theorem harness.

use crate::basic::{BasicRelation, Node};
use crate::construct::StateWeakOrder;
use crate::error::Result;
use crate::event::StateSpace;
use crate::limits;
use crate::relation::EventRelation;

/// Every ordered set partition of `k` elements, as rank vectors: `r[i]` is
/// the 0-based position of element i's block, 0 being the top block, and
/// the used ranks are exactly 0..m. Yielded in lexicographic order of `r`.
#[derive(Debug, Clone)]
pub struct WeakOrders {
    k: usize,
    current: Option<Vec<u8>>,
    started: bool,
}

impl WeakOrders {
    pub fn new(k: usize) -> Self {
        WeakOrders {
            k,
            current: None,
            started: false,
        }
    }
}

fn missing_ranks(prefix: &[u8]) -> usize {
    let Some(&max) = prefix.iter().max() else {
        return 0;
    };
    let mut seen = [false; 256];
    for &r in prefix {
        seen[r as usize] = true;
    }
    (0..=max as usize).filter(|&r| !seen[r]).count()
}

fn feasible(prefix: &[u8], remaining: usize) -> bool {
    missing_ranks(prefix) <= remaining
}

/// Completes `v[..from]` with the lexicographically smallest feasible tail.
fn fill_minimal(v: &mut [u8], from: usize) {
    let k = v.len();
    for j in from..k {
        let remaining = k - j - 1;
        let mut r = 0u8;
        loop {
            v[j] = r;
            if feasible(&v[..=j], remaining) {
                break;
            }
            r += 1;
        }
    }
}

impl Iterator for WeakOrders {
    type Item = Vec<u8>;

    fn next(&mut self) -> Option<Vec<u8>> {
        if !self.started {
            self.started = true;
            let mut v = vec![0u8; self.k];
            fill_minimal(&mut v, 0);
            self.current = Some(v);
            return self.current.clone();
        }
        let v = self.current.as_mut()?;
        let k = self.k;
        for i in (0..k).rev() {
            let remaining = k - i - 1;
            for r in v[i] + 1..k as u8 {
                v[i] = r;
                if feasible(&v[..=i], remaining) {
                    fill_minimal(v, i + 1);
                    return Some(v.clone());
                }
            }
        }
        self.current = None;
        None
    }
}

/// Ordered set partitions of k elements: a(k) = Σ_j C(k,j)·a(k−j), a(0) = 1.
pub fn fubini(k: usize) -> u64 {
    let mut a = vec![0u64; k + 1];
    a[0] = 1;
    for i in 1..=k {
        let mut binom = 1u64;
        let mut total = 0u64;
        for j in 1..=i {
            binom = binom * (i - j + 1) as u64 / j as u64;
            total += binom * a[i - j];
        }
        a[i] = total;
    }
    a[k]
}

fn rank_to_levels(ranks: &[u8]) -> Vec<u32> {
    let top = ranks.iter().copied().max().unwrap_or(0) as u32;
    ranks.iter().map(|&r| top - r as u32 + 1).collect()
}

/// Every weak order on n states (levels 1..=k), a(n) of them.
pub fn state_orders(n: usize) -> Result<impl Iterator<Item = StateWeakOrder>> {
    limits::ensure("state order enumeration", n, limits::MAX_ORDER_STATES)?;
    Ok(WeakOrders::new(n)
        .map(|r| StateWeakOrder::new(rank_to_levels(&r)).expect("contiguous by construction")))
}

/// Every possibility level assignment up to order, impossible states
/// included: weak orders on S ∪ {⊥} with ⊥ in the bottom class and at least
/// one state above it. States tied with ⊥ get level 0.
pub fn level_assignments(n: usize) -> Result<impl Iterator<Item = Vec<u32>>> {
    limits::ensure("state order enumeration", n, limits::MAX_ORDER_STATES - 1)?;
    Ok(WeakOrders::new(n + 1).filter_map(move |r| {
        let bottom = r[n];
        let top = *r.iter().max().expect("non-empty");
        if bottom != top || top == 0 {
            return None;
        }
        Some(r[..n].iter().map(|&x| (bottom - x) as u32).collect())
    }))
}

/// Every complete transitive relation on the events of `space` (n ≤ 3).
pub fn event_weak_orders(space: &StateSpace) -> Result<impl Iterator<Item = EventRelation>> {
    limits::ensure(
        "event weak order enumeration",
        space.len(),
        limits::MAX_EVENT_ORDER_STATES,
    )?;
    let space = space.clone();
    Ok(WeakOrders::new(space.event_count())
        .map(move |r| EventRelation::from_index_fn(&space, |a, b| r[a] <= r[b]).expect("n <= 3")))
}

/// Every complete basic relation on `space` with at least one state strictly
/// above ⊥: each pair of states is >, < or ~, each state is > ⊥ or ~ ⊥, and
/// quasi-transitivity filters the rest.
pub fn complete_basic_relations(space: &StateSpace) -> Result<Vec<BasicRelation>> {
    let n = space.len();
    limits::ensure(
        "basic relation enumeration",
        n,
        limits::MAX_ORDER_STATES - 2,
    )?;
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    let mut out = Vec::new();
    let combos = 3usize.pow(pairs.len() as u32);
    for code in 0..combos {
        for above in 1u32..(1 << n) {
            let mut choice = vec![vec![1u8; n]; n];
            let mut c = code;
            for &(i, j) in &pairs {
                // 0: i > j, 1: i ~ j, 2: j > i
                let t = (c % 3) as u8;
                c /= 3;
                choice[i][j] = t;
                choice[j][i] = 2 - t;
            }
            let geq = |x: Node, y: Node| match (x, y) {
                (Node::State(i), Node::State(j)) => i == j || choice[i][j] <= 1,
                (_, Node::Bottom) => true,
                (Node::Bottom, Node::State(s)) => above >> s & 1 == 0,
            };
            if let Ok(basic) = BasicRelation::new(space.clone(), geq) {
                out.push(basic);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_match_the_recurrence() {
        for k in 0..=8 {
            assert_eq!(WeakOrders::new(k).count() as u64, fubini(k), "k = {k}");
        }
        assert_eq!(fubini(3), 13);
        assert_eq!(fubini(4), 75);
        assert_eq!(fubini(8), 545_835);
    }

    #[test]
    fn orders_are_distinct_and_surjective() {
        let all: Vec<Vec<u8>> = WeakOrders::new(5).collect();
        let mut sorted = all.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), all.len());
        assert_eq!(sorted, all, "lexicographic order");
        for r in &all {
            let m = *r.iter().max().unwrap();
            assert!((0..=m).all(|x| r.contains(&x)));
        }
    }

    #[test]
    fn state_orders_small() {
        assert_eq!(state_orders(1).unwrap().count(), 1);
        assert_eq!(state_orders(3).unwrap().count(), 13);
        assert_eq!(state_orders(4).unwrap().count(), 75);
        assert!(state_orders(9).is_err());
    }

    #[test]
    fn event_orders_small() {
        let s1 = StateSpace::alphabetic(1).unwrap();
        assert_eq!(event_weak_orders(&s1).unwrap().count(), 3);
        let s2 = StateSpace::alphabetic(2).unwrap();
        assert_eq!(event_weak_orders(&s2).unwrap().count(), 75);
        assert!(event_weak_orders(&StateSpace::alphabetic(4).unwrap()).is_err());
    }

    #[test]
    fn level_assignments_cover_nulls() {
        let all: Vec<Vec<u32>> = level_assignments(2).unwrap().collect();
        // Orders of {a, b, ⊥} with ⊥ at the bottom, not everything tied:
        // a>b>⊥, b>a>⊥, a=b>⊥, a>b=⊥, b>a=⊥.
        assert_eq!(all.len(), 5);
        assert!(all.contains(&vec![1, 0]));
        assert!(all.iter().all(|l| l.iter().any(|&x| x > 0)));
    }

    #[test]
    fn complete_basics() {
        let s = StateSpace::alphabetic(2).unwrap();
        let all = complete_basic_relations(&s).unwrap();
        assert!(all.iter().all(|b| b.is_complete()));
        // 3 state orderings × 3 non-empty "above ⊥" sets, minus the
        // quasi-transitivity failures (a > b with b > ⊥ but a ~ ⊥).
        assert_eq!(all.len(), 7);
        let s3 = StateSpace::alphabetic(3).unwrap();
        let all3 = complete_basic_relations(&s3).unwrap();
        assert!(
            all3.iter().any(|b| !b.is_transitive()),
            "semiorders included"
        );
    }
}
