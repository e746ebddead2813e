//! Exhaustive generation of operation universes: backtracking enumeration
//! of associative tables, brute-force baselines, and class censuses.

use crate::error::Error;
use crate::predicates::{
    is_associative, is_idempotent, quasitrivial_for_dk, quasitrivial_for_sk, MembershipRoute,
};
use crate::reduction::{canonical_form, extend_binary};
use crate::table::{table_len, Carrier, Elem, NaryOp, Odometer};

const UNSET: u8 = u8::MAX;
/// Brute-force filters refuse universes with more candidate tables than this.
const NAIVE_CAP: u128 = 1 << 20;

/// Every associative binary table on `m` elements, each exactly once, in
/// lexicographic table order. Depth-first cell assignment in row-major
/// order with incremental associativity propagation. Capped at `m = 4`.
pub fn enumerate_semigroups(m: usize) -> Result<Vec<NaryOp>, Error> {
    if m == 0 {
        return Err(Error::input("carrier must have at least one element"));
    }
    if m > 4 {
        return Err(Error::capacity("semigroup enumeration is capped at size 4"));
    }
    backtrack_enumerate(m, 2, false)
}

/// Every associative n-ary table in the supported exhaustive envelope,
/// optionally restricted to idempotent tables, in lexicographic order.
pub fn enumerate_nary_exhaustive(
    m: usize,
    n: usize,
    idempotent_only: bool,
) -> Result<Vec<NaryOp>, Error> {
    if m == 0 {
        return Err(Error::input("carrier must have at least one element"));
    }
    if n < 2 {
        return Err(Error::input("arity must be at least 2"));
    }
    let feasible = m == 1
        || (m == 2 && n <= 4)
        || (m <= 4 && n == 2)
        || (m == 3 && n == 3 && idempotent_only);
    if !feasible {
        return Err(Error::capacity(format!(
            "exhaustive n-ary enumeration at size {m}, arity {n}{} is outside the supported envelope",
            if idempotent_only { " (idempotent)" } else { "" }
        )));
    }
    backtrack_enumerate(m, n, idempotent_only)
}

/// Descriptor of one associativity instance over a partially filled table:
/// both sides evaluate as `table[base + table[inner] * mul]`.
struct Instance {
    inner_l: usize,
    base_l: usize,
    mul_l: usize,
    inner_r: usize,
    base_r: usize,
    mul_r: usize,
}

fn build_instances(m: usize, n: usize) -> Vec<Instance> {
    let mut instances = Vec::new();
    let mut odo = Odometer::new(m, 2 * n - 1);
    let mut hole = vec![0 as Elem; n];
    while let Some(t) = odo.next() {
        for i in 1..n {
            let inner_l = index_of(&t[i - 1..i - 1 + n], m);
            hole[..i - 1].copy_from_slice(&t[..i - 1]);
            hole[i - 1] = 0;
            hole[i..].copy_from_slice(&t[i - 1 + n..]);
            let base_l = index_of(&hole, m);
            let mul_l = m.pow((n - i) as u32);
            let inner_r = index_of(&t[i..i + n], m);
            hole[..i].copy_from_slice(&t[..i]);
            hole[i] = 0;
            hole[i + 1..].copy_from_slice(&t[i + n..]);
            let base_r = index_of(&hole, m);
            let mul_r = m.pow((n - i - 1) as u32);
            instances.push(Instance {
                inner_l,
                base_l,
                mul_l,
                inner_r,
                base_r,
                mul_r,
            });
        }
    }
    instances
}

fn index_of(tuple: &[Elem], m: usize) -> usize {
    tuple.iter().fold(0usize, |acc, &x| acc * m + x as usize)
}

/// No fully determined instance may disagree.
fn instances_consistent(table: &[u8], instances: &[Instance]) -> bool {
    for ins in instances {
        let v_l = table[ins.inner_l];
        let v_r = table[ins.inner_r];
        if v_l == UNSET || v_r == UNSET {
            continue;
        }
        let left = table[ins.base_l + v_l as usize * ins.mul_l];
        let right = table[ins.base_r + v_r as usize * ins.mul_r];
        if left == UNSET || right == UNSET || left == right {
            continue;
        }
        return false;
    }
    true
}

fn backtrack_enumerate(m: usize, n: usize, idempotent_only: bool) -> Result<Vec<NaryOp>, Error> {
    let len = table_len(m, n)?;
    let mut table = vec![UNSET; len];
    if idempotent_only {
        for x in 0..m {
            // index of the constant tuple (x, …, x)
            let idx = index_of(&vec![x as Elem; n], m);
            table[idx] = x as u8;
        }
    }
    let free: Vec<usize> = (0..len).filter(|&i| table[i] == UNSET).collect();
    let instances = build_instances(m, n);
    if idempotent_only && !instances_consistent(&table, &instances) {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    let carrier = Carrier::new(m)?;
    dfs(&mut table, &free, 0, m, &instances, &mut |t| {
        let entries: Vec<Elem> = t.iter().map(|&v| v as Elem).collect();
        out.push(NaryOp::new(carrier.clone(), n, entries).expect("enumerated table is valid"));
    });
    Ok(out)
}

fn dfs(
    table: &mut Vec<u8>,
    free: &[usize],
    depth: usize,
    m: usize,
    instances: &[Instance],
    emit: &mut impl FnMut(&[u8]),
) {
    if depth == free.len() {
        emit(table);
        return;
    }
    let cell = free[depth];
    for v in 0..m as u8 {
        table[cell] = v;
        if instances_consistent(table, instances) {
            dfs(table, free, depth + 1, m, instances, emit);
        }
    }
    table[cell] = UNSET;
}

/// Independent cross-check enumerator for binary tables: column-major cell
/// order, its own tolerant evaluation, final re-verification per leaf.
/// Output is sorted into lexicographic order before returning.
pub fn enumerate_semigroups_alt(m: usize) -> Result<Vec<NaryOp>, Error> {
    if m == 0 {
        return Err(Error::input("carrier must have at least one element"));
    }
    if m > 4 {
        return Err(Error::capacity("semigroup enumeration is capped at size 4"));
    }
    // cells visited by column, then row
    let order: Vec<(usize, usize)> = (0..m)
        .flat_map(|b| (0..m).map(move |a| (a, b)))
        .collect();
    let mut grid = vec![vec![UNSET; m]; m];
    let mut out: Vec<Vec<Elem>> = Vec::new();

    fn ok_so_far(grid: &[Vec<u8>], m: usize) -> bool {
        for x in 0..m {
            for y in 0..m {
                let xy = grid[x][y];
                if xy == UNSET {
                    continue;
                }
                for z in 0..m {
                    let yz = grid[y][z];
                    if yz == UNSET {
                        continue;
                    }
                    let left = grid[xy as usize][z];
                    let right = grid[x][yz as usize];
                    if left != UNSET && right != UNSET && left != right {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn rec(
        grid: &mut Vec<Vec<u8>>,
        order: &[(usize, usize)],
        depth: usize,
        m: usize,
        out: &mut Vec<Vec<Elem>>,
    ) {
        if depth == order.len() {
            let flat: Vec<Elem> = (0..m)
                .flat_map(|a| (0..m).map(move |b| (a, b)))
                .map(|(a, b)| grid[a][b] as Elem)
                .collect();
            out.push(flat);
            return;
        }
        let (a, b) = order[depth];
        // values descending, so the two enumerators cannot share an order bug
        for v in (0..m as u8).rev() {
            grid[a][b] = v;
            if ok_so_far(grid, m) {
                rec(grid, order, depth + 1, m, out);
            }
        }
        grid[a][b] = UNSET;
    }

    rec(&mut grid, &order, 0, m, &mut out);
    out.sort_unstable();
    let carrier = Carrier::new(m)?;
    let ops: Vec<NaryOp> = out
        .into_iter()
        .map(|t| NaryOp::new(carrier.clone(), 2, t).expect("enumerated table is valid"))
        .collect();
    for op in &ops {
        if is_associative(op).is_err() {
            return Err(Error::violation(
                "alternate enumerator emitted a non-associative table",
            ));
        }
    }
    Ok(ops)
}

/// Brute-force baseline: filters every table of the universe through the
/// associativity check. Only for tiny universes.
pub fn enumerate_nary_naive(m: usize, n: usize) -> Result<Vec<NaryOp>, Error> {
    let len = table_len(m, n)?;
    let mut count: u128 = 1;
    for _ in 0..len {
        count = count.saturating_mul(m as u128);
        if count > NAIVE_CAP {
            return Err(Error::capacity(format!(
                "brute-force filter over {m}^{len} tables exceeds the cap"
            )));
        }
    }
    let carrier = Carrier::new(m)?;
    let mut out = Vec::new();
    let mut odo = Odometer::new(m, len);
    while let Some(entries) = odo.next() {
        let op = NaryOp::new(carrier.clone(), n, entries.to_vec())?;
        if is_associative(&op).is_ok() {
            out.push(op);
        }
    }
    Ok(out)
}

/// Brute-force baseline for binary tables (sizes 1 to 3).
pub fn enumerate_semigroups_naive(m: usize) -> Result<Vec<NaryOp>, Error> {
    enumerate_nary_naive(m, 2)
}

/// The deduplicated universe of n-ary extensions of all associative binary
/// tables on `m` elements, sorted by table.
pub fn extension_universe(m: usize, n: usize) -> Result<Vec<NaryOp>, Error> {
    let base = enumerate_semigroups(m)?;
    let mut ops: Vec<NaryOp> = Vec::with_capacity(base.len());
    for g in &base {
        ops.push(extend_binary(g, n)?);
    }
    ops.sort_unstable_by(|a, b| a.table().cmp(b.table()));
    ops.dedup_by(|a, b| a.table() == b.table());
    Ok(ops)
}

/// Which universe a census runs over.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UniverseKind {
    /// Extensions of every associative binary table, deduplicated.
    BinaryExtended,
    /// Every associative n-ary table (exhaustive envelope only).
    NaryExhaustive,
}

impl std::fmt::Display for UniverseKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            UniverseKind::BinaryExtended => write!(f, "binary-extended"),
            UniverseKind::NaryExhaustive => write!(f, "nary-exhaustive"),
        }
    }
}

/// Class totals over one universe.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Census {
    pub size: usize,
    pub arity: usize,
    pub universe: UniverseKind,
    pub associative: usize,
    pub f1: usize,
    pub fn1_not_f1: usize,
    pub fn_not_fn1: usize,
    pub g2: usize,
}

impl std::fmt::Display for Census {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "census size={} arity={} universe={}", self.size, self.arity, self.universe)?;
        let rows = [
            ("associative", self.associative),
            ("f1", self.f1),
            ("fn-1 minus f1", self.fn1_not_f1),
            ("fn minus fn-1", self.fn_not_fn1),
            ("g2", self.g2),
        ];
        let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
        for (k, v) in rows {
            writeln!(f, "{k:<width$}  {v:>8}")?;
        }
        Ok(())
    }
}

/// Classifies every operation in the chosen universe. While running, the
/// hierarchy collapse is asserted for every member (membership for
/// `2 ≤ k ≤ n-2` must match `k = 1` by direct iteration); a mismatch is a
/// theorem violation. Count monotonicity along the filtration is checked
/// before returning.
pub fn census(m: usize, n: usize, universe: UniverseKind) -> Result<Census, Error> {
    let ops = match universe {
        UniverseKind::BinaryExtended => extension_universe(m, n)?,
        UniverseKind::NaryExhaustive => enumerate_nary_exhaustive(m, n, false)?,
    };
    let mut c = Census {
        size: m,
        arity: n,
        universe,
        associative: ops.len(),
        f1: 0,
        fn1_not_f1: 0,
        fn_not_fn1: 0,
        g2: 0,
    };
    for op in &ops {
        debug_assert!(is_associative(op).is_ok());
        let f1 = quasitrivial_for_dk(op, 1, MembershipRoute::Direct)?.is_ok();
        for k in 2..n.max(2) - 1 {
            let fk = quasitrivial_for_dk(op, k, MembershipRoute::Direct)?.is_ok();
            if fk != f1 {
                return Err(Error::violation(format!(
                    "class membership for k={k} disagrees with k=1 on an associative table"
                )));
            }
        }
        let fn1 = quasitrivial_for_dk(op, n - 1, MembershipRoute::Direct)?.is_ok();
        let fnn = is_idempotent(op).is_ok();
        let g2 = quasitrivial_for_sk(op, 2, MembershipRoute::Direct)?.is_ok();
        c.f1 += f1 as usize;
        c.fn1_not_f1 += (fn1 && !f1) as usize;
        c.fn_not_fn1 += (fnn && !fn1) as usize;
        c.g2 += g2 as usize;
    }
    let fn1_total = c.f1 + c.fn1_not_f1;
    let fn_total = fn1_total + c.fn_not_fn1;
    if !(c.f1 <= fn1_total && fn1_total <= fn_total && fn_total <= c.associative) {
        return Err(Error::violation("census counts violate the filtration"));
    }
    Ok(c)
}

/// Number of isomorphism classes among the given operations, via minimal
/// relabeled tables. Only for small carriers.
pub fn iso_class_count(ops: &[NaryOp]) -> Result<usize, Error> {
    let mut canon: Vec<Vec<Elem>> = Vec::with_capacity(ops.len());
    for op in ops {
        canon.push(canonical_form(op)?.table().to_vec());
    }
    canon.sort_unstable();
    canon.dedup();
    Ok(canon.len())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn semigroup_counts_match_brute_force() {
        // frozen counts: 1, 8, 113 labeled semigroups on 1, 2, 3 elements
        let expected = [1usize, 8, 113];
        for (m, want) in (1..=3).zip(expected) {
            let fast = enumerate_semigroups(m).unwrap();
            let naive = enumerate_semigroups_naive(m).unwrap();
            assert_eq!(fast.len(), want, "m = {m}");
            assert_eq!(naive.len(), want, "m = {m}");
            let ft: Vec<_> = fast.iter().map(|o| o.table().to_vec()).collect();
            let nt: Vec<_> = naive.iter().map(|o| o.table().to_vec()).collect();
            assert_eq!(ft, nt, "m = {m}");
        }
    }

    #[test]
    fn alt_enumerator_agrees() {
        for m in 1..=3 {
            let a = enumerate_semigroups(m).unwrap();
            let b = enumerate_semigroups_alt(m).unwrap();
            assert_eq!(a.len(), b.len());
            assert!(a.iter().zip(&b).all(|(x, y)| x.table() == y.table()));
        }
    }

    #[test]
    fn streams_are_sorted_deduped_and_associative() {
        let ops = enumerate_semigroups(3).unwrap();
        assert!(ops.windows(2).all(|w| w[0].table() < w[1].table()));
        for op in &ops {
            assert!(is_associative(op).is_ok());
        }
        let ops = enumerate_nary_exhaustive(2, 3, false).unwrap();
        assert!(ops.windows(2).all(|w| w[0].table() < w[1].table()));
    }

    #[test]
    fn nary_exhaustive_matches_naive_filter() {
        // frozen counts: 8 associative ternary and 8 associative 4-ary
        // tables on two elements
        for (n, want) in [(3usize, 8usize), (4, 8)] {
            let fast = enumerate_nary_exhaustive(2, n, false).unwrap();
            let naive = enumerate_nary_naive(2, n).unwrap();
            assert_eq!(fast.len(), want);
            assert_eq!(naive.len(), want);
            assert!(fast
                .iter()
                .zip(&naive)
                .all(|(a, b)| a.table() == b.table()));
        }
    }

    #[test]
    fn idempotent_exhaustive_contains_idempotent_extensions() {
        let out = enumerate_nary_exhaustive(3, 3, true).unwrap();
        for op in &out {
            assert!(is_associative(op).is_ok());
            assert!(is_idempotent(op).is_ok());
        }
        assert!(out.windows(2).all(|w| w[0].table() < w[1].table()));
        // containment baseline: every idempotent extension of a semigroup
        // must occur in the exhaustive output
        let mut expected: Vec<Vec<Elem>> = Vec::new();
        for g in enumerate_semigroups(3).unwrap() {
            let f = extend_binary(&g, 3).unwrap();
            if is_idempotent(&f).is_ok() {
                expected.push(f.table().to_vec());
            }
        }
        expected.sort_unstable();
        expected.dedup();
        for t in &expected {
            assert!(
                out.binary_search_by(|op| op.table().cmp(t.as_slice())).is_ok(),
                "missing extension {t:?}"
            );
        }
        // the irreducible x - y + z mod 3 must appear as well
        let affine = NaryOp::from_fn(Carrier::new(3).unwrap(), 3, |t| {
            ((t[0] + 3 - t[1] + t[2]) % 3) as Elem
        })
        .unwrap();
        assert!(out
            .binary_search_by(|op| op.table().cmp(affine.table()))
            .is_ok());
        assert!(out.len() > expected.len());
    }

    #[test]
    fn extension_universe_sizes() {
        // frozen via an independent brute-force pass
        assert_eq!(extension_universe(2, 3).unwrap().len(), 7);
        assert_eq!(extension_universe(2, 4).unwrap().len(), 8);
        assert_eq!(extension_universe(3, 3).unwrap().len(), 98);
        assert_eq!(extension_universe(3, 4).unwrap().len(), 105);
        assert_eq!(extension_universe(3, 5).unwrap().len(), 98);
    }

    #[test]
    fn census_values() {
        let c = census(2, 3, UniverseKind::NaryExhaustive).unwrap();
        assert_eq!(
            (c.associative, c.f1, c.fn1_not_f1, c.fn_not_fn1, c.g2),
            (8, 5, 0, 0, 5)
        );
        let c = census(3, 4, UniverseKind::BinaryExtended).unwrap();
        assert_eq!(
            (c.associative, c.f1, c.fn1_not_f1, c.fn_not_fn1, c.g2),
            (105, 20, 1, 15, 20)
        );
        let c = census(1, 5, UniverseKind::BinaryExtended).unwrap();
        assert_eq!(c.associative, 1);
        assert_eq!(c.f1, 1);
    }

    #[test]
    fn iso_class_counts() {
        for (m, want) in [(1usize, 1usize), (2, 5), (3, 24)] {
            let ops = enumerate_semigroups(m).unwrap();
            assert_eq!(iso_class_count(&ops).unwrap(), want, "m = {m}");
        }
    }

    #[test]
    fn capacity_errors() {
        assert!(matches!(enumerate_semigroups(5), Err(Error::Capacity(_))));
        assert!(matches!(
            enumerate_nary_exhaustive(3, 3, false),
            Err(Error::Capacity(_))
        ));
        assert!(matches!(
            enumerate_nary_naive(4, 2),
            Err(Error::Capacity(_))
        ));
    }

    #[test]
    fn singleton_universe() {
        assert_eq!(enumerate_semigroups(1).unwrap().len(), 1);
        assert_eq!(enumerate_nary_exhaustive(1, 6, false).unwrap().len(), 1);
    }
}
