//! Tuple families: the argument domains quasitriviality is demanded on.
//!
//! Families are always visited in lexicographic tuple order, so the first
//! counterexample a scan reports is the lexicographically smallest one.
//! The small structured families (diagonal, one-off, two-valued) are
//! generated directly instead of filtering the full tuple space.

use crate::error::Error;
use crate::table::{Elem, Odometer};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FamilyKind {
    /// Every tuple.
    All,
    /// Tuples whose components at the given 1-based positions all agree.
    EqualOn(Vec<usize>),
    /// Tuples in which at least `k` components are equal to each other.
    MinEqual(usize),
    /// Tuples taking at most `k` distinct values.
    MaxDistinct(usize),
}

/// A set of argument tuples for a fixed carrier size and arity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TupleFamily {
    kind: FamilyKind,
    size: usize,
    arity: usize,
}

impl TupleFamily {
    pub fn all(size: usize, arity: usize) -> Self {
        TupleFamily {
            kind: FamilyKind::All,
            size,
            arity,
        }
    }

    /// The family of tuples with at least `k` equal components.
    pub fn d_k(size: usize, arity: usize, k: usize) -> Result<Self, Error> {
        if k == 0 || k > arity {
            return Err(Error::input(format!("k must be in 1..={arity}, got {k}")));
        }
        Ok(TupleFamily {
            kind: FamilyKind::MinEqual(k),
            size,
            arity,
        })
    }

    /// The family of tuples with at most `k` distinct values.
    pub fn s_k(size: usize, arity: usize, k: usize) -> Result<Self, Error> {
        if k == 0 {
            return Err(Error::input("k must be at least 1"));
        }
        Ok(TupleFamily {
            kind: FamilyKind::MaxDistinct(k),
            size,
            arity,
        })
    }

    /// The family of tuples agreeing on the 1-based positions in `positions`.
    pub fn equal_on(size: usize, arity: usize, positions: &[usize]) -> Result<Self, Error> {
        let mut ps: Vec<usize> = positions.to_vec();
        ps.sort_unstable();
        ps.dedup();
        if ps.len() != positions.len() {
            return Err(Error::input("duplicate positions"));
        }
        if ps.iter().any(|&p| p == 0 || p > arity) {
            return Err(Error::input(format!(
                "positions must be in 1..={arity}"
            )));
        }
        Ok(TupleFamily {
            kind: FamilyKind::EqualOn(ps),
            size,
            arity,
        })
    }

    pub fn kind(&self) -> &FamilyKind {
        &self.kind
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    /// Short name used in CLI output (`all`, `d:k`, `s:k`, `ds:positions`).
    pub fn describe(&self) -> String {
        match &self.kind {
            FamilyKind::All => "all".into(),
            FamilyKind::MinEqual(k) => format!("d:{k}"),
            FamilyKind::MaxDistinct(k) => format!("s:{k}"),
            FamilyKind::EqualOn(ps) => {
                let ps: Vec<String> = ps.iter().map(|p| p.to_string()).collect();
                format!("ds:{}", ps.join(","))
            }
        }
    }

    /// Membership test for a single tuple.
    pub fn contains(&self, tuple: &[Elem]) -> bool {
        debug_assert_eq!(tuple.len(), self.arity);
        match &self.kind {
            FamilyKind::All => true,
            FamilyKind::EqualOn(ps) => {
                let first = tuple[ps[0] - 1];
                ps.iter().all(|&p| tuple[p - 1] == first)
            }
            FamilyKind::MinEqual(k) => {
                *k <= 1 || max_multiplicity(tuple, self.size) >= *k
            }
            FamilyKind::MaxDistinct(k) => distinct_count(tuple, self.size) <= *k,
        }
    }

    /// Visits the family in lexicographic order, returning the first value
    /// the callback produces.
    pub fn find_map<T>(&self, mut f: impl FnMut(&[Elem]) -> Option<T>) -> Option<T> {
        let (m, n) = (self.size, self.arity);
        if m == 0 {
            return None;
        }
        match &self.kind {
            FamilyKind::MinEqual(k) if *k == n => {
                // diagonal
                let mut t = vec![0 as Elem; n];
                for x in 0..m as Elem {
                    t.fill(x);
                    if let Some(v) = f(&t) {
                        return Some(v);
                    }
                }
                None
            }
            FamilyKind::MinEqual(k) if *k + 1 == n && n >= 2 => {
                for t in self.generate_one_off() {
                    if let Some(v) = f(&t) {
                        return Some(v);
                    }
                }
                None
            }
            FamilyKind::MaxDistinct(k) if *k == 1 => {
                let mut t = vec![0 as Elem; n];
                for x in 0..m as Elem {
                    t.fill(x);
                    if let Some(v) = f(&t) {
                        return Some(v);
                    }
                }
                None
            }
            FamilyKind::MaxDistinct(k) if *k == 2 => {
                for t in self.generate_two_valued() {
                    if let Some(v) = f(&t) {
                        return Some(v);
                    }
                }
                None
            }
            FamilyKind::EqualOn(ps) if ps.len() >= 2 => {
                for t in self.generate_equal_on(ps) {
                    if let Some(v) = f(&t) {
                        return Some(v);
                    }
                }
                None
            }
            _ => {
                // dense or unstructured: stream the full space and filter
                let mut odo = Odometer::new(m, n);
                while let Some(t) = odo.next() {
                    if self.contains(t) {
                        if let Some(v) = f(t) {
                            return Some(v);
                        }
                    }
                }
                None
            }
        }
    }

    /// All members, in lexicographic order.
    pub fn collect(&self) -> Vec<Vec<Elem>> {
        let mut out = Vec::new();
        self.find_map::<()>(|t| {
            out.push(t.to_vec());
            None
        });
        out
    }

    pub fn count(&self) -> usize {
        let mut c = 0usize;
        self.find_map::<()>(|_| {
            c += 1;
            None
        });
        c
    }

    /// Tuples with at least `n-1` equal components: the diagonal plus every
    /// tuple that is constant except in one position.
    fn generate_one_off(&self) -> Vec<Vec<Elem>> {
        let (m, n) = (self.size, self.arity);
        let mut out: Vec<Vec<Elem>> = Vec::new();
        for x in 0..m as Elem {
            out.push(vec![x; n]);
            for pos in 0..n {
                for y in 0..m as Elem {
                    if y == x {
                        continue;
                    }
                    let mut t = vec![x; n];
                    t[pos] = y;
                    out.push(t);
                }
            }
        }
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Tuples over at most two values: the diagonal plus all mixed tuples
    /// over each unordered pair.
    fn generate_two_valued(&self) -> Vec<Vec<Elem>> {
        let (m, n) = (self.size, self.arity);
        let mut out: Vec<Vec<Elem>> = Vec::new();
        for x in 0..m as Elem {
            out.push(vec![x; n]);
        }
        for a in 0..m as Elem {
            for b in (a + 1)..m as Elem {
                // patterns with both values present
                for mask in 1..(1usize << n) - 1 {
                    let t: Vec<Elem> = (0..n)
                        .map(|i| if mask >> (n - 1 - i) & 1 == 1 { b } else { a })
                        .collect();
                    out.push(t);
                }
            }
        }
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Tuples whose components agree on the given positions: one shared
    /// value plus free choices elsewhere.
    fn generate_equal_on(&self, positions: &[usize]) -> Vec<Vec<Elem>> {
        let (m, n) = (self.size, self.arity);
        let free: Vec<usize> = (1..=n).filter(|p| !positions.contains(p)).collect();
        let mut out = Vec::new();
        for v in 0..m as Elem {
            let mut odo = Odometer::new(m, free.len());
            while let Some(choice) = odo.next() {
                let mut t = vec![v; n];
                for (&p, &c) in free.iter().zip(choice) {
                    t[p - 1] = c;
                }
                out.push(t);
            }
        }
        out.sort_unstable();
        out.dedup();
        out
    }
}

fn max_multiplicity(tuple: &[Elem], size: usize) -> usize {
    let mut counts = vec![0usize; size];
    let mut best = 0;
    for &x in tuple {
        counts[x as usize] += 1;
        best = best.max(counts[x as usize]);
    }
    best
}

fn distinct_count(tuple: &[Elem], size: usize) -> usize {
    let mut seen = vec![false; size];
    let mut c = 0;
    for &x in tuple {
        if !seen[x as usize] {
            seen[x as usize] = true;
            c += 1;
        }
    }
    c
}
