//! Searches over whole relations: backtracking for the uniqueness of
//! consistent OM-relations, and entry propagation for discrimax.

use crate::axioms::{self, CpomReading};
use crate::basic::{BasicRelation, Node};
use crate::distribution::PossibilityDistribution;
use crate::error::Result;
use crate::induce;
use crate::limits;
use crate::relation::EventRelation;

/// Partial "at least as" matrix; `None` is undecided.
struct Partial {
    m: usize,
    geq: Vec<Option<bool>>,
}

impl Partial {
    fn get(&self, a: usize, b: usize) -> Option<bool> {
        self.geq[a * self.m + b]
    }

    fn set(&mut self, a: usize, b: usize, v: Option<bool>) {
        self.geq[a * self.m + b] = v;
    }

    fn strict(&self, a: usize, b: usize) -> Option<bool> {
        Some(self.get(a, b)? && !self.get(b, a)?)
    }

    fn equiv(&self, a: usize, b: usize) -> Option<bool> {
        Some(self.get(a, b)? && self.get(b, a)?)
    }

    /// Some confidence-relation clause, NEG or CLO is already definitely violated by
    /// a triple drawn from events 0..=hi.
    fn definitely_violated(&self, hi: usize) -> bool {
        let t = |x: Option<bool>| x == Some(true);
        let f = |x: Option<bool>| x == Some(false);
        for a in 0..=hi {
            for b in 0..=hi {
                for c in 0..=hi {
                    let (ac, bc) = (a | c, b | c);
                    if t(self.strict(a, b)) && t(self.strict(b, c)) && f(self.strict(a, c)) {
                        return true;
                    }
                    if t(self.get(a, b)) && f(self.get(ac, b)) {
                        return true;
                    }
                    if t(self.get(a, bc)) && f(self.get(a, b)) {
                        return true;
                    }
                    let disjoint = a & b == 0 && a & c == 0 && b & c == 0;
                    if disjoint
                        && t(self.strict(a, b))
                        && t(self.strict(a, c))
                        && f(self.strict(a, bc))
                    {
                        return true;
                    }
                    if t(self.equiv(a, b)) && t(self.get(a, c)) && f(self.equiv(a, bc)) {
                        return true;
                    }
                }
            }
        }
        false
    }
}

/// Every complete relation on 2^S that is an OM-relation and agrees with
/// `basic` on singletons and ∅, found by backtracking over the unordered
/// pairs with pruning on definite violations. Each leaf is confirmed with
/// the real OM checker.
pub fn consistent_om_relations(basic: &BasicRelation) -> Result<Vec<EventRelation>> {
    let space = basic.space().clone();
    let n = space.len();
    limits::ensure("relation backtracking", n, limits::MAX_SEARCH_STATES)?;
    let m = space.event_count();
    let mut partial = Partial {
        m,
        geq: vec![None; m * m],
    };
    let node = |e: usize| -> Option<Node> {
        if e == 0 {
            Some(Node::Bottom)
        } else if e.is_power_of_two() {
            Some(Node::State(e.trailing_zeros() as usize))
        } else {
            None
        }
    };
    for a in 0..m {
        partial.set(a, a, Some(true));
    }
    for a in 0..m {
        for b in 0..m {
            if let (Some(x), Some(y)) = (node(a), node(b)) {
                partial.set(a, b, Some(basic.geq(x, y)));
            }
        }
    }
    // Forced for any monotonic confidence relation: S ⪰ A, A ⪰ ∅, B ⪰ A for A ⊆ B.
    for a in 0..m {
        for b in 0..m {
            if a & b == a {
                if partial.get(b, a) == Some(false) {
                    return Ok(Vec::new());
                }
                partial.set(b, a, Some(true));
            }
        }
    }
    let pairs: Vec<(usize, usize)> = (1..m)
        .flat_map(|hi| (0..hi).map(move |lo| (hi, lo)))
        .collect();
    let mut found = Vec::new();
    backtrack(&space, &mut partial, &pairs, 0, &mut found)?;
    Ok(found)
}

fn backtrack(
    space: &crate::event::StateSpace,
    partial: &mut Partial,
    pairs: &[(usize, usize)],
    next: usize,
    found: &mut Vec<EventRelation>,
) -> Result<()> {
    let Some(&(hi, lo)) = pairs.get(next) else {
        let rel =
            EventRelation::from_index_fn(space, |a, b| partial.get(a, b).expect("all decided"))?;
        if axioms::check_om(&rel)?.pass {
            found.push(rel);
        }
        return Ok(());
    };
    let saved = (partial.get(hi, lo), partial.get(lo, hi));
    // Complete relations only: >, < or ∼ on each pair.
    for (x, y) in [(true, false), (false, true), (true, true)] {
        if saved.0.is_some_and(|v| v != x) || saved.1.is_some_and(|v| v != y) {
            continue;
        }
        partial.set(hi, lo, Some(x));
        partial.set(lo, hi, Some(y));
        if !partial.definitely_violated(hi) {
            backtrack(space, partial, pairs, next + 1, found)?;
        }
    }
    partial.set(hi, lo, saved.0);
    partial.set(lo, hi, saved.1);
    Ok(())
}

/// Result of [`pin_by_cpom_and_add`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pinning {
    /// Present when every entry is pinned without conflict.
    pub relation: Option<EventRelation>,
    pub pinned: usize,
    pub free: usize,
    pub conflicts: usize,
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Pins the entries of a relation from the singleton weak order of `pi`:
/// CPOM fixes every disjoint pair from the lifted order, and ADD equates
/// entry (B, C) with (A∪B, A∪C) whenever A misses B∪C. Reports how many
/// entries stay free and how many equivalence classes receive both values.
pub fn pin_by_cpom_and_add(pi: &PossibilityDistribution, reading: CpomReading) -> Result<Pinning> {
    let space = pi.space().clone();
    limits::ensure(
        "entry propagation",
        space.len(),
        limits::MAX_PROPAGATION_STATES,
    )?;
    let m = space.event_count();
    let basic = BasicRelation::from_levels(space.clone(), pi.levels())?;
    let lifted = induce::lifted_strict(&basic);
    let entry = |a: usize, b: usize| a * m + b;

    let mut parent: Vec<usize> = (0..m * m).collect();
    for b in 0..m {
        for c in 0..m {
            for a in 1..m {
                if a & (b | c) == 0 {
                    let (x, y) = (
                        find(&mut parent, entry(b, c)),
                        find(&mut parent, entry(a | b, a | c)),
                    );
                    if x != y {
                        parent[x] = y;
                    }
                }
            }
        }
    }

    // Pins per equivalence class: bit 0 = seen true, bit 1 = seen false.
    let mut seen = vec![0u8; m * m];
    let mut pin = |parent: &mut Vec<usize>, a: usize, b: usize, v: bool| {
        let root = find(parent, entry(a, b));
        seen[root] |= if v { 1 } else { 2 };
    };
    for (a, row) in lifted.iter().enumerate() {
        for (b, &ab) in row.iter().enumerate() {
            if a & b != 0 {
                continue;
            }
            let ba = lifted[b][a];
            match reading {
                CpomReading::Verdict => {
                    // A ▷ B ⇒ A ≻ B; neither ▷ ⇒ A ∼ B.
                    pin(&mut parent, a, b, ab || !ba);
                }
                CpomReading::Strict => {
                    // A ≻ B ⇔ A ▷ B. A strict pair pins both entries; a
                    // pair strict in neither direction is ∼ once
                    // completeness rules out incomparability.
                    if ab {
                        pin(&mut parent, a, b, true);
                        pin(&mut parent, b, a, false);
                    } else if !ba {
                        pin(&mut parent, a, b, true);
                    }
                }
            }
        }
    }

    let mut value = vec![None; m * m];
    let (mut pinned, mut free, mut conflicts) = (0, 0, 0);
    let mut counted = vec![false; m * m];
    for (k, slot) in value.iter_mut().enumerate() {
        let root = find(&mut parent, k);
        match seen[root] {
            1 => {
                *slot = Some(true);
                pinned += 1;
            }
            2 => {
                *slot = Some(false);
                pinned += 1;
            }
            3 => {
                if !counted[root] {
                    counted[root] = true;
                    conflicts += 1;
                }
            }
            _ => free += 1,
        }
    }
    let relation = if free == 0 && conflicts == 0 {
        Some(EventRelation::from_index_fn(&space, |a, b| {
            value[entry(a, b)].expect("pinned")
        })?)
    } else {
        None
    };
    Ok(Pinning {
        relation,
        pinned,
        free,
        conflicts,
    })
}
