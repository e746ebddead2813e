//! Passage between binary and n-ary operations: extensions, reductions,
//! conjugacy of reductions and groupoid isomorphism search.

use crate::error::Error;
use crate::family::TupleFamily;
use crate::predicates::{
    is_associative, is_idempotent, is_neutral, is_quasitrivial_on, neutral_elements,
};
use crate::table::{build_tuple, Elem, NaryOp, Odometer};

/// A carrier map, stored as the image sequence `x ↦ image[x]`.
///
/// Mappings returned by [`conjugating_map`] and [`find_isomorphism`] have
/// already been verified to be bijections intertwining the operations they
/// were produced for; [`Mapping::intertwines`] re-runs that check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mapping {
    image: Vec<Elem>,
}

impl Mapping {
    pub fn new(image: Vec<Elem>) -> Self {
        Mapping { image }
    }

    pub fn identity(size: usize) -> Self {
        Mapping {
            image: (0..size as Elem).collect(),
        }
    }

    pub fn image(&self) -> &[Elem] {
        &self.image
    }

    pub fn apply(&self, x: Elem) -> Elem {
        self.image[x as usize]
    }

    pub fn domain_size(&self) -> usize {
        self.image.len()
    }

    pub fn is_bijective(&self) -> bool {
        let mut seen = vec![false; self.image.len()];
        for &y in &self.image {
            if (y as usize) >= self.image.len() || seen[y as usize] {
                return false;
            }
            seen[y as usize] = true;
        }
        true
    }

    /// The inverse permutation; requires bijectivity.
    pub fn inverse(&self) -> Result<Mapping, Error> {
        if !self.is_bijective() {
            return Err(Error::input("mapping is not a bijection"));
        }
        let mut inv = vec![0 as Elem; self.image.len()];
        for (x, &y) in self.image.iter().enumerate() {
            inv[y as usize] = x as Elem;
        }
        Ok(Mapping { image: inv })
    }

    /// Whether `φ(F(x_1, …, x_n)) = F'(φ(x_1), …, φ(x_n))` for all tuples.
    pub fn intertwines(&self, f: &NaryOp, g: &NaryOp) -> bool {
        if f.size() != self.image.len() || g.size() != self.image.len() || f.arity() != g.arity()
        {
            return false;
        }
        let mut odo = Odometer::new(f.size(), f.arity());
        let mut mapped = vec![0 as Elem; f.arity()];
        while let Some(t) = odo.next() {
            for (slot, &x) in mapped.iter_mut().zip(t) {
                *slot = self.apply(x);
            }
            if self.apply(f.eval(t)) != g.eval(&mapped) {
                return false;
            }
        }
        true
    }
}

/// How a reduction was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReductionMethod {
    /// `G_e(x, y) = F(x, (n-2)·e, y)` for a neutral element `e`.
    NeutralElement,
    /// `G(x, y) = F(x, (n-1)·y)`, valid for quasitrivial operations with at
    /// most one neutral element.
    QuasitrivialFormula,
    /// `G(x, y) = F((n-1)·x, y)`, valid for idempotent operations whose two
    /// boundary products agree.
    IdempotentBoundary,
}

impl std::fmt::Display for ReductionMethod {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            ReductionMethod::NeutralElement => "neutral-element",
            ReductionMethod::QuasitrivialFormula => "quasitrivial-formula",
            ReductionMethod::IdempotentBoundary => "idempotent-boundary",
        };
        write!(f, "{s}")
    }
}

/// Outcome of a reduction attempt. When `reduction` is present, extending
/// it back to the original arity reproduces the input table exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionResult {
    pub reduction: Option<NaryOp>,
    pub method: ReductionMethod,
    pub neutral_used: Option<Elem>,
}

impl ReductionResult {
    pub fn reducible(&self) -> bool {
        self.reduction.is_some()
    }
}

/// The n-ary extension of an associative binary operation, by composing
/// from the right: `G^m(x_1, …, x_{m+1}) = G^{m-1}(x_1, …, x_{m-1},
/// G(x_m, x_{m+1}))`. Non-associative inputs are refused.
pub fn extend_binary(g: &NaryOp, arity: usize) -> Result<NaryOp, Error> {
    if g.arity() != 2 {
        return Err(Error::input(format!(
            "extension base must be binary, got arity {}",
            g.arity()
        )));
    }
    if arity < 2 {
        return Err(Error::input("target arity must be at least 2"));
    }
    is_associative(g).map_err(Error::NotAssociative)?;
    if arity == 2 {
        return Ok(g.clone());
    }
    NaryOp::from_fn(g.carrier().clone(), arity, |t| {
        let mut acc = t[arity - 1];
        for &x in t[..arity - 1].iter().rev() {
            acc = g.eval(&[x, acc]);
        }
        acc
    })
}

/// The `q`-th member of the iteration sequence of an associative n-ary
/// operation: arity grows to `q·n - q + 1`, composing a fresh copy of the
/// operation onto the last `n` arguments at each step.
pub fn iterate_nary(f: &NaryOp, q: usize) -> Result<NaryOp, Error> {
    if q == 0 {
        return Err(Error::input("iteration count must be at least 1"));
    }
    is_associative(f).map_err(Error::NotAssociative)?;
    if q == 1 {
        return Ok(f.clone());
    }
    let n = f.arity();
    let arity = q * n - q + 1;
    NaryOp::from_fn(f.carrier().clone(), arity, |t| {
        let mut acc = f.eval(&t[arity - n..]);
        let mut end = arity - n;
        let mut window = vec![0 as Elem; n];
        while end > 0 {
            window[..n - 1].copy_from_slice(&t[end - (n - 1)..end]);
            window[n - 1] = acc;
            acc = f.eval(&window);
            end -= n - 1;
        }
        acc
    })
}

/// The binary reduction `G_e(x, y) = F(x, (n-2)·e, y)` through a neutral
/// element `e`. For associative `F` the extension of `G_e` recovers `F`
/// and `e` is the unique neutral element of `G_e`.
pub fn reduce_via_neutral(f: &NaryOp, e: Elem) -> Result<NaryOp, Error> {
    if f.arity() < 3 {
        return Err(Error::precondition(
            "reduction through a neutral element needs arity at least 3",
        ));
    }
    if e as usize >= f.size() {
        return Err(Error::input(format!("element {e} not in carrier")));
    }
    is_associative(f).map_err(Error::NotAssociative)?;
    if !is_neutral(f, e) {
        return Err(Error::precondition(format!("element {e} is not neutral")));
    }
    let n = f.arity();
    NaryOp::from_fn(f.carrier().clone(), 2, |t| {
        let args = build_tuple(&[(1, t[0]), (n - 2, e), (1, t[1])]);
        f.eval(&args)
    })
}

/// Attempts the quasitrivial reduction formula `G(x, y) = F(x, (n-1)·y)`.
/// Succeeds exactly when `F` is quasitrivial with at most one neutral
/// element; the negative outcome is a value, not an error.
pub fn reduce_quasitrivial(f: &NaryOp) -> Result<ReductionResult, Error> {
    is_associative(f).map_err(Error::NotAssociative)?;
    let n = f.arity();
    let candidate = NaryOp::from_fn(f.carrier().clone(), 2, |t| {
        let args = build_tuple(&[(1, t[0]), (n - 1, t[1])]);
        f.eval(&args)
    })?;
    let all = TupleFamily::all(candidate.size(), 2);
    let good = is_associative(&candidate).is_ok()
        && is_quasitrivial_on(&candidate, &all).is_ok()
        && extend_binary(&candidate, n)?.table() == f.table();
    Ok(ReductionResult {
        reduction: good.then_some(candidate),
        method: ReductionMethod::QuasitrivialFormula,
        neutral_used: None,
    })
}

/// Attempts the idempotent reduction: tests the boundary identity
/// `F((n-1)·x, y) = F(x, (n-1)·y)` and, when it holds, returns
/// `G(x, y) = F((n-1)·x, y)` verified to extend back to `F`.
pub fn reduce_idempotent(f: &NaryOp) -> Result<ReductionResult, Error> {
    is_associative(f).map_err(Error::NotAssociative)?;
    is_idempotent(f).map_err(|w| {
        Error::precondition(format!(
            "operation is not idempotent at {}",
            w.render(f.carrier())
        ))
    })?;
    let n = f.arity();
    let boundary_holds = f.carrier().elements().all(|x| {
        f.carrier().elements().all(|y| {
            f.eval(&build_tuple(&[(n - 1, x), (1, y)]))
                == f.eval(&build_tuple(&[(1, x), (n - 1, y)]))
        })
    });
    if !boundary_holds {
        return Ok(ReductionResult {
            reduction: None,
            method: ReductionMethod::IdempotentBoundary,
            neutral_used: None,
        });
    }
    let g = NaryOp::from_fn(f.carrier().clone(), 2, |t| {
        f.eval(&build_tuple(&[(n - 1, t[0]), (1, t[1])]))
    })?;
    let recovered = extend_binary(&g, n)?;
    if recovered.table() != f.table() {
        // cannot happen for associative idempotent tables; guard anyway
        return Err(Error::violation(
            "idempotent boundary reduction failed to extend back",
        ));
    }
    Ok(ReductionResult {
        reduction: Some(g),
        method: ReductionMethod::IdempotentBoundary,
        neutral_used: None,
    })
}

/// Reduction for operations quasitrivial on the one-off family: through
/// the least neutral element when one exists, otherwise via the
/// quasitrivial formula (which is guaranteed to apply in that case).
pub fn reduce_any(f: &NaryOp) -> Result<ReductionResult, Error> {
    if f.arity() < 3 {
        return Err(Error::precondition("reduction needs arity at least 3"));
    }
    is_associative(f).map_err(Error::NotAssociative)?;
    let one_off = TupleFamily::d_k(f.size(), f.arity(), f.arity() - 1)?;
    if let Err(w) = is_quasitrivial_on(f, &one_off) {
        return Err(Error::precondition(format!(
            "operation is not quasitrivial on the one-off family: {}",
            w.render(f.carrier())
        )));
    }
    let neutrals = neutral_elements(f);
    match neutrals.min() {
        Some(e) => {
            let g = reduce_via_neutral(f, e)?;
            Ok(ReductionResult {
                reduction: Some(g),
                method: ReductionMethod::NeutralElement,
                neutral_used: Some(e),
            })
        }
        None => {
            let r = reduce_quasitrivial(f)?;
            if !r.reducible() {
                // ruled out for this class: without neutral elements the
                // quasitrivial route must apply
                return Err(Error::violation(
                    "operation without neutral elements resisted the quasitrivial reduction",
                ));
            }
            Ok(r)
        }
    }
}

/// The conjugating bijection `ψ(x) = F(e_1, e_2, x, (n-3)·e_1)` between the
/// reductions through two neutral elements. Verified bijective, with
/// inverse `x ↦ F((n-2)·e_2, x, e_1)`, and intertwining the two reductions.
pub fn conjugating_map(f: &NaryOp, e1: Elem, e2: Elem) -> Result<Mapping, Error> {
    if f.arity() < 3 {
        return Err(Error::precondition(
            "conjugating reductions needs arity at least 3",
        ));
    }
    is_associative(f).map_err(Error::NotAssociative)?;
    for e in [e1, e2] {
        if e as usize >= f.size() || !is_neutral(f, e) {
            return Err(Error::precondition(format!("element {e} is not neutral")));
        }
    }
    let n = f.arity();
    let image: Vec<Elem> = f
        .carrier()
        .elements()
        .map(|x| f.eval(&build_tuple(&[(1, e1), (1, e2), (1, x), (n - 3, e1)])))
        .collect();
    let psi = Mapping::new(image);
    if !psi.is_bijective() {
        return Err(Error::violation("conjugating map is not a bijection"));
    }
    let stated_inverse: Vec<Elem> = f
        .carrier()
        .elements()
        .map(|x| f.eval(&build_tuple(&[(n - 2, e2), (1, x), (1, e1)])))
        .collect();
    if Mapping::new(stated_inverse) != psi.inverse()? {
        return Err(Error::violation(
            "stated inverse of the conjugating map disagrees",
        ));
    }
    let g1 = reduce_via_neutral(f, e1)?;
    let g2 = reduce_via_neutral(f, e2)?;
    if !psi.intertwines(&g1, &g2) {
        return Err(Error::violation(
            "conjugating map does not intertwine the reductions",
        ));
    }
    Ok(psi)
}

/// Carrier-size cap for plain permutation search.
const ISO_FULL_SEARCH_MAX: usize = 8;
/// Candidate cap when invariant classes prune the search on larger carriers.
const ISO_CANDIDATE_CAP: u128 = 1_000_000;

/// Searches for a bijection `φ` with `φ(A(…)) = B(φ(…), …)`. Candidates are
/// pruned by per-element invariants (value multiplicity, diagonal behavior,
/// neutrality); within the pruned space the search is exhaustive and
/// returns the bijection with the lexicographically smallest image.
pub fn find_isomorphism(a: &NaryOp, b: &NaryOp) -> Result<Option<Mapping>, Error> {
    if a.size() != b.size() {
        return Err(Error::input("carrier sizes differ"));
    }
    if a.arity() != b.arity() {
        return Err(Error::input("arities differ"));
    }
    let m = a.size();
    let prof_a = invariant_profiles(a);
    let prof_b = invariant_profiles(b);
    {
        let mut sa = prof_a.clone();
        let mut sb = prof_b.clone();
        sa.sort_unstable();
        sb.sort_unstable();
        if sa != sb {
            return Ok(None);
        }
    }
    // candidate images for each source element: targets with equal profile
    let candidates: Vec<Vec<Elem>> = (0..m)
        .map(|x| {
            (0..m as Elem)
                .filter(|&y| prof_b[y as usize] == prof_a[x])
                .collect()
        })
        .collect();
    if m > ISO_FULL_SEARCH_MAX {
        let mut space: u128 = 1;
        for c in &candidates {
            space = space.saturating_mul(c.len() as u128);
        }
        if space > ISO_CANDIDATE_CAP {
            return Err(Error::capacity(format!(
                "isomorphism search space {space} exceeds {ISO_CANDIDATE_CAP} candidates"
            )));
        }
    }
    let mut image: Vec<Option<Elem>> = vec![None; m];
    let mut used = vec![false; m];
    if search_iso(a, b, &candidates, &mut image, &mut used, 0) {
        let image: Vec<Elem> = image.into_iter().map(|x| x.unwrap()).collect();
        let phi = Mapping::new(image);
        debug_assert!(phi.intertwines(a, b));
        Ok(Some(phi))
    } else {
        Ok(None)
    }
}

/// Isomorphism-invariant profile of one element: how often it occurs as a
/// value, whether its diagonal power returns to it, whether it is neutral.
fn invariant_profiles(op: &NaryOp) -> Vec<(usize, bool, bool)> {
    let m = op.size();
    let mut occurrences = vec![0usize; m];
    for &v in op.table() {
        occurrences[v as usize] += 1;
    }
    let n = op.arity();
    (0..m as Elem)
        .map(|x| {
            let diag = op.eval(&vec![x; n]);
            (occurrences[x as usize], diag == x, is_neutral(op, x))
        })
        .collect()
}

fn search_iso(
    a: &NaryOp,
    b: &NaryOp,
    candidates: &[Vec<Elem>],
    image: &mut Vec<Option<Elem>>,
    used: &mut Vec<bool>,
    depth: usize,
) -> bool {
    let m = a.size();
    if depth == m {
        return true;
    }
    for &y in &candidates[depth] {
        if used[y as usize] {
            continue;
        }
        image[depth] = Some(y);
        used[y as usize] = true;
        if consistent_so_far(a, b, image, depth)
            && search_iso(a, b, candidates, image, used, depth + 1)
        {
            return true;
        }
        image[depth] = None;
        used[y as usize] = false;
    }
    false
}

/// Checks every tuple over the decided prefix that involves the newest
/// element: decided values must map correctly, undecided values must not
/// collide with already-used images.
fn consistent_so_far(a: &NaryOp, b: &NaryOp, image: &[Option<Elem>], newest: usize) -> bool {
    let n = a.arity();
    let decided = newest + 1;
    let mut odo = Odometer::new(decided, n);
    let mut mapped = vec![0 as Elem; n];
    while let Some(t) = odo.next() {
        if !t.contains(&(newest as Elem)) {
            continue;
        }
        for (slot, &x) in mapped.iter_mut().zip(t) {
            *slot = image[x as usize].expect("prefix is decided");
        }
        let va = a.eval(t);
        let vb = b.eval(&mapped);
        match image.get(va as usize).copied().flatten() {
            Some(expect) => {
                if vb != expect {
                    return false;
                }
            }
            None => {
                // an undecided source value cannot already own an image
                if image[..decided].iter().flatten().any(|&y| y == vb) {
                    return false;
                }
            }
        }
    }
    true
}

/// The lexicographically smallest table among all relabelings of the
/// operation; two operations are isomorphic iff their canonical forms have
/// equal tables. Exhaustive over permutations, hence capped.
pub fn canonical_form(op: &NaryOp) -> Result<NaryOp, Error> {
    if op.size() > ISO_FULL_SEARCH_MAX {
        return Err(Error::capacity(format!(
            "canonical form uses full relabeling search, capped at size {ISO_FULL_SEARCH_MAX}"
        )));
    }
    let m = op.size();
    let mut best: Option<NaryOp> = None;
    let mut perm: Vec<Elem> = (0..m as Elem).collect();
    loop {
        let relabeled = op.relabel(&perm)?;
        match &best {
            Some(cur) if cur.table() <= relabeled.table() => {}
            _ => best = Some(relabeled),
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    Ok(best.expect("at least the identity permutation applies"))
}

fn next_permutation(perm: &mut [Elem]) -> bool {
    if perm.len() < 2 {
        return false;
    }
    let mut i = perm.len() - 1;
    while i > 0 && perm[i - 1] >= perm[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = perm.len() - 1;
    while perm[j] <= perm[i - 1] {
        j -= 1;
    }
    perm.swap(i - 1, j);
    perm[i..].reverse();
    true
}
