//! Group-theoretic checks and the structural classifier.
//!
//! The classifier decides which quasitriviality classes an associative
//! operation belongs to and, when the operation sits strictly between the
//! one-off class and full quasitriviality, extracts the abelian-group
//! block carried by its neutral elements, the quasitrivial tail on the
//! complement, and the annihilator glue between them. Those three clauses
//! are forced for such operations; a clause failing where membership says
//! it must hold aborts with a theorem-violation error.

use crate::error::Error;
use crate::family::TupleFamily;
use crate::predicates::{
    is_associative, is_quasitrivial_on, neutral_elements, quasitrivial_for_dk,
    quasitrivial_for_sk, MembershipRoute, NeutralSet,
};
use crate::reduction::{extend_binary, reduce_any, reduce_via_neutral, ReductionResult};
use crate::table::{AssocWitness, Carrier, Elem, NaryOp, Witness};

/// What a binary table looks like on a closed subset: group structure,
/// commutativity, neutral element and exponent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupInfo {
    pub is_group: bool,
    pub is_abelian: bool,
    pub neutral: Option<Elem>,
    /// Least `t ≥ 1` with every `t`-fold product trivial; `None` for
    /// non-groups. The trivial group has exponent 1.
    pub exponent: Option<usize>,
}

impl GroupInfo {
    pub fn exponent_divides(&self, k: usize) -> bool {
        match self.exponent {
            Some(e) => k.is_multiple_of(e),
            None => false,
        }
    }
}

/// Analyzes `(S, G|_{S^2})` for a binary operation. `S` must be closed
/// under `G`; the first escaping pair is reported as an input error.
pub fn group_info(g: &NaryOp, subset: &[Elem]) -> Result<GroupInfo, Error> {
    if g.arity() != 2 {
        return Err(Error::input("group analysis needs a binary operation"));
    }
    let mut s: Vec<Elem> = subset.to_vec();
    s.sort_unstable();
    s.dedup();
    if s.is_empty() {
        return Err(Error::input("subset must be nonempty"));
    }
    if let Some(&bad) = s.iter().find(|&&x| x as usize >= g.size()) {
        return Err(Error::input(format!("element {bad} not in carrier")));
    }
    for &a in &s {
        for &b in &s {
            let v = g.eval(&[a, b]);
            if !s.contains(&v) {
                return Err(Error::input(format!(
                    "subset not closed: {a} {b} -> {v} escapes"
                )));
            }
        }
    }
    let not_group = GroupInfo {
        is_group: false,
        is_abelian: false,
        neutral: None,
        exponent: None,
    };
    // associativity of the restriction
    for &a in &s {
        for &b in &s {
            for &c in &s {
                if g.eval(&[g.eval(&[a, b]), c]) != g.eval(&[a, g.eval(&[b, c])]) {
                    return Ok(not_group);
                }
            }
        }
    }
    let neutral = s
        .iter()
        .copied()
        .find(|&e| s.iter().all(|&x| g.eval(&[e, x]) == x && g.eval(&[x, e]) == x));
    let Some(e) = neutral else {
        return Ok(not_group);
    };
    for &x in &s {
        let has_inverse = s
            .iter()
            .any(|&y| g.eval(&[x, y]) == e && g.eval(&[y, x]) == e);
        if !has_inverse {
            return Ok(GroupInfo {
                neutral: Some(e),
                ..not_group
            });
        }
    }
    let is_abelian = s
        .iter()
        .all(|&a| s.iter().all(|&b| g.eval(&[a, b]) == g.eval(&[b, a])));
    // exponent = lcm of element orders
    let mut exponent: usize = 1;
    for &x in &s {
        let mut acc = x;
        let mut order = 1usize;
        while acc != e {
            acc = g.eval(&[acc, x]);
            order += 1;
        }
        exponent = lcm(exponent, order);
    }
    Ok(GroupInfo {
        is_group: true,
        is_abelian,
        neutral: Some(e),
        exponent: Some(exponent),
    })
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

/// Divisibility of the group exponent by `k`, decided through the iterated
/// identity `x^{k+1} = x` instead of the computed exponent. Cross-validates
/// [`group_info`]; `(S, G)` must be a group for the equivalence to hold.
pub fn exponent_divides_via_identity(g: &NaryOp, subset: &[Elem], k: usize) -> Result<bool, Error> {
    if g.arity() != 2 {
        return Err(Error::input("exponent test needs a binary operation"));
    }
    if k == 0 {
        return Err(Error::input("divisor must be positive"));
    }
    Ok(subset.iter().all(|&x| {
        let mut acc = x;
        for _ in 0..k {
            acc = g.eval(&[acc, x]);
        }
        acc == x
    }))
}

/// Both sides of the all-neutral characterization, computed independently:
/// `all_neutral` says every element is neutral; `abelian_extension` says
/// the table is the extension of an abelian group whose exponent divides
/// `arity - 1`. For associative operations of arity at least 3 the two
/// verdicts must agree.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AllNeutralReport {
    pub all_neutral: bool,
    pub abelian_extension: bool,
}

impl AllNeutralReport {
    pub fn consistent(&self) -> bool {
        self.all_neutral == self.abelian_extension
    }
}

/// Computes the [`AllNeutralReport`] for an associative operation.
/// Returns `None` for arity 2, where the characterization does not apply.
pub fn check_all_neutral(f: &NaryOp) -> Result<Option<AllNeutralReport>, Error> {
    is_associative(f).map_err(Error::NotAssociative)?;
    let n = f.arity();
    if n < 3 {
        return Ok(None);
    }
    let neutrals = neutral_elements(f);
    let all_neutral = neutrals.len() == f.size();
    // Search for a witnessing group through the least neutral element: any
    // abelian-group extension makes its own neutral element neutral for the
    // extension, and all reductions through neutral elements are conjugate,
    // so this single candidate decides existence.
    let abelian_extension = match neutrals.min() {
        None => false,
        Some(e) => {
            let g = reduce_via_neutral(f, e)?;
            let full: Vec<Elem> = f.carrier().elements().collect();
            let info = group_info(&g, &full)?;
            let divides_direct = info.is_group && info.exponent_divides(n - 1);
            let divides_identity =
                info.is_group && exponent_divides_via_identity(&g, &full, n - 1)?;
            if divides_direct != divides_identity {
                return Err(Error::violation(
                    "exponent divisibility routes disagree on a group",
                ));
            }
            info.is_group
                && info.is_abelian
                && divides_direct
                && extend_binary(&g, n)?.table() == f.table()
        }
    };
    Ok(Some(AllNeutralReport {
        all_neutral,
        abelian_extension,
    }))
}

/// The quasitrivial tail on the complement of the group block.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TailInfo {
    pub quasitrivial: bool,
    pub neutral_count: usize,
}

/// Full classification outcome for one operation table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureReport {
    pub carrier: Carrier,
    pub arity: usize,
    pub associative: bool,
    pub assoc_witness: Option<AssocWitness>,
    /// Memberships in the nested classes: quasitrivial everywhere, on the
    /// one-off family, on the diagonal (idempotent), and on two-valued
    /// tuples. `None` when the table is not associative.
    pub member_f1: Option<bool>,
    pub member_fn1: Option<bool>,
    pub member_fn: Option<bool>,
    pub member_g2: Option<bool>,
    pub neutral: Option<NeutralSet>,
    /// The group block: present exactly when the operation is quasitrivial
    /// on the one-off family but not everywhere (arity at least 3). Always
    /// equals the neutral set then.
    pub group_block: Option<Vec<Elem>>,
    pub group: Option<GroupInfo>,
    pub tail: Option<TailInfo>,
    pub annihilator_ok: Option<bool>,
    pub reduction: Option<ReductionResult>,
    pub witnesses: Vec<Witness>,
}

impl StructureReport {
    /// Strictly between the one-off class and full quasitriviality.
    pub fn strictly_between(&self) -> bool {
        self.member_fn1 == Some(true) && self.member_f1 == Some(false)
    }
}

/// Classifies one operation. Non-associative tables produce a report with
/// `associative = false` and nothing else. Inconsistencies between the
/// memberships and the structure they force abort with
/// [`Error::TheoremViolation`].
pub fn classify(f: &NaryOp) -> Result<StructureReport, Error> {
    let mut report = StructureReport {
        carrier: f.carrier().clone(),
        arity: f.arity(),
        associative: true,
        assoc_witness: None,
        member_f1: None,
        member_fn1: None,
        member_fn: None,
        member_g2: None,
        neutral: None,
        group_block: None,
        group: None,
        tail: None,
        annihilator_ok: None,
        reduction: None,
        witnesses: Vec::new(),
    };
    if let Err(w) = is_associative(f) {
        report.associative = false;
        report.assoc_witness = Some(w);
        return Ok(report);
    }
    let n = f.arity();
    let route = MembershipRoute::Collapsed;
    let f1 = quasitrivial_for_dk(f, 1, route)?;
    let fn1 = quasitrivial_for_dk(f, n - 1, route)?;
    let fnn = quasitrivial_for_dk(f, n, route)?;
    let g2 = quasitrivial_for_sk(f, 2, route)?;
    report.member_f1 = Some(f1.is_ok());
    report.member_fn1 = Some(fn1.is_ok());
    report.member_fn = Some(fnn.is_ok());
    report.member_g2 = Some(g2.is_ok());
    for w in [f1.err(), fn1.err(), fnn.err(), g2.err()].into_iter().flatten() {
        if !report.witnesses.contains(&w) {
            report.witnesses.push(w);
        }
    }
    let neutrals = neutral_elements(f);
    report.neutral = Some(neutrals.clone());

    if n >= 3 && report.strictly_between() {
        let y: Vec<Elem> = neutrals.iter().collect();
        if y.len() < 3 {
            return Err(Error::violation(format!(
                "group block must have at least 3 elements, neutral set has {}",
                y.len()
            )));
        }
        let e = neutrals.min().expect("block is nonempty");
        let g = reduce_via_neutral(f, e)?;
        // clause (a): the block carries an abelian group whose exponent
        // divides n-1, and its extension matches the restriction exactly
        let info = group_info(&g, &y).map_err(|err| {
            Error::violation(format!("group block is not closed under the reduction: {err}"))
        })?;
        if !info.is_group || !info.is_abelian {
            return Err(Error::violation(
                "neutral elements do not form an abelian group under the reduction",
            ));
        }
        if !info.exponent_divides(n - 1) {
            return Err(Error::violation(format!(
                "group exponent {:?} does not divide arity - 1 = {}",
                info.exponent,
                n - 1
            )));
        }
        if exponent_divides_via_identity(&g, &y, n - 1)? != info.exponent_divides(n - 1) {
            return Err(Error::violation(
                "exponent divisibility routes disagree on the group block",
            ));
        }
        let g_on_y = g.restrict(&y)?;
        let f_on_y = f.restrict(&y)?;
        if extend_binary(&g_on_y, n)?.table() != f_on_y.table() {
            return Err(Error::violation(
                "extension of the group block does not match the restriction",
            ));
        }
        report.group_block = Some(y.clone());
        report.group = Some(info);
        // clause (b): quasitrivial tail with at most one neutral element
        let rest: Vec<Elem> = f.carrier().elements().filter(|x| !y.contains(x)).collect();
        if !rest.is_empty() {
            let tail = f.restrict(&rest)?;
            let tail_qt =
                is_quasitrivial_on(&tail, &TupleFamily::all(tail.size(), n)).is_ok();
            let tail_neutrals = neutral_elements(&tail).len();
            if !tail_qt || tail_neutrals > 1 {
                return Err(Error::violation(format!(
                    "tail must be quasitrivial with at most one neutral element \
                     (quasitrivial: {tail_qt}, neutral count: {tail_neutrals})"
                )));
            }
            report.tail = Some(TailInfo {
                quasitrivial: tail_qt,
                neutral_count: tail_neutrals,
            });
            // clause (c): every tail element annihilates the block around it
            for &x in &rest {
                let mut around: Vec<Elem> = y.clone();
                around.push(x);
                if !crate::predicates::is_annihilator(f, x, &around)? {
                    return Err(Error::violation(format!(
                        "element {x} is not an annihilator over the group block"
                    )));
                }
            }
            report.annihilator_ok = Some(true);
        }
        // two-valued class strictly between forces odd arity and exponent 2
        if report.member_g2 == Some(true) && report.member_f1 == Some(false) {
            if n.is_multiple_of(2) {
                return Err(Error::violation(
                    "two-valued quasitriviality without full quasitriviality at even arity",
                ));
            }
            if report.group.as_ref().and_then(|gi| gi.exponent) != Some(2) {
                return Err(Error::violation(
                    "two-valued quasitriviality without full quasitriviality needs exponent 2",
                ));
            }
        }
        report.reduction = Some(reduce_any(f)?);
    } else if n >= 3 {
        // outside the characterized class, try the remaining sound routes;
        // a negative outcome means undecided, not irreducible
        report.reduction = Some(if report.member_fn1 == Some(true) {
            reduce_any(f)?
        } else if report.member_fn == Some(true) {
            crate::reduction::reduce_idempotent(f)?
        } else if let Some(e) = neutrals.min() {
            crate::reduction::ReductionResult {
                reduction: Some(reduce_via_neutral(f, e)?),
                method: crate::reduction::ReductionMethod::NeutralElement,
                neutral_used: Some(e),
            }
        } else {
            crate::reduction::reduce_quasitrivial(f)?
        });
    }
    Ok(report)
}

/// Exhaustive cross-check of block uniqueness: scans every carrier subset
/// of size at least 3 and verifies that exactly the neutral set satisfies
/// the three clauses. Exponential in the carrier, hence capped at size 5.
pub fn verify_unique_block(f: &NaryOp, report: &StructureReport) -> Result<(), Error> {
    let m = f.size();
    if m > 5 {
        return Err(Error::capacity("subset search is capped at carrier size 5"));
    }
    if !report.strictly_between() {
        return Err(Error::precondition(
            "uniqueness only concerns operations strictly between the classes",
        ));
    }
    let expected = report.group_block.clone().unwrap_or_default();
    let n = f.arity();
    for mask in 1u32..(1 << m) {
        let y: Vec<Elem> = (0..m as Elem).filter(|&x| mask >> x & 1 == 1).collect();
        if y.len() < 3 {
            continue;
        }
        let holds = block_clauses_hold(f, &y, n)?;
        if holds != (y == expected) {
            return Err(Error::violation(format!(
                "subset {y:?} satisfies the block clauses: {holds}, expected block {expected:?}"
            )));
        }
    }
    Ok(())
}

/// Whether the three structural clauses hold for a candidate block `y`.
fn block_clauses_hold(f: &NaryOp, y: &[Elem], n: usize) -> Result<bool, Error> {
    // (a) restriction to y is the extension of an abelian group with
    // exponent dividing n-1
    let f_on_y = match f.restrict(y) {
        Ok(op) => op,
        Err(_) => return Ok(false), // not closed
    };
    let report = match check_all_neutral(&f_on_y)? {
        Some(r) => r,
        None => return Ok(false),
    };
    if !report.abelian_extension {
        return Ok(false);
    }
    // (b) tail quasitrivial with at most one neutral element
    let rest: Vec<Elem> = f.carrier().elements().filter(|x| !y.contains(x)).collect();
    if !rest.is_empty() {
        let tail = match f.restrict(&rest) {
            Ok(op) => op,
            Err(_) => return Ok(false),
        };
        if is_quasitrivial_on(&tail, &TupleFamily::all(tail.size(), n)).is_err() {
            return Ok(false);
        }
        if neutral_elements(&tail).len() > 1 {
            return Ok(false);
        }
        // (c) annihilator glue
        for &x in &rest {
            let mut around = y.to_vec();
            around.push(x);
            if !crate::predicates::is_annihilator(f, x, &around)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Serializes a report as a stable line-oriented `key: value` block, using
/// carrier labels when present.
impl std::fmt::Display for StructureReport {
    fn fmt(&self, out: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let name = |x: &Elem| self.carrier.name(*x);
        let list = |xs: &[Elem]| -> String {
            if xs.is_empty() {
                "none".into()
            } else {
                xs.iter().map(&name).collect::<Vec<_>>().join(" ")
            }
        };
        writeln!(out, "arity: {}", self.arity)?;
        writeln!(out, "size: {}", self.carrier.size())?;
        if let Some(labels) = self.carrier.labels() {
            writeln!(out, "labels: {}", labels.join(" "))?;
        }
        writeln!(out, "associative: {}", self.associative)?;
        if let Some(w) = &self.assoc_witness {
            writeln!(out, "witness-assoc: {}", w.render(&self.carrier))?;
        }
        if !self.associative {
            return Ok(());
        }
        let flag = |b: &Option<bool>| match b {
            Some(true) => "true",
            Some(false) => "false",
            None => "n/a",
        };
        writeln!(out, "member-f1: {}", flag(&self.member_f1))?;
        writeln!(out, "member-fn-1: {}", flag(&self.member_fn1))?;
        writeln!(out, "member-fn: {}", flag(&self.member_fn))?;
        writeln!(out, "member-g2: {}", flag(&self.member_g2))?;
        if let Some(neutral) = &self.neutral {
            writeln!(out, "neutral-elements: {}", list(neutral.elements()))?;
        }
        if self.arity < 3 {
            writeln!(out, "structure: not-applicable")?;
        }
        if let Some(y) = &self.group_block {
            writeln!(out, "group-block: {}", list(y))?;
        }
        if let Some(g) = &self.group {
            writeln!(out, "group-abelian: {}", g.is_abelian)?;
            if let Some(e) = g.exponent {
                writeln!(out, "group-exponent: {e}")?;
            }
        }
        if let Some(t) = &self.tail {
            writeln!(out, "tail-quasitrivial: {}", t.quasitrivial)?;
            writeln!(out, "tail-neutral-count: {}", t.neutral_count)?;
        }
        if let Some(a) = &self.annihilator_ok {
            writeln!(out, "annihilator-ok: {a}")?;
        }
        if let Some(r) = &self.reduction {
            if r.reducible() {
                writeln!(out, "reduction-method: {}", r.method)?;
                if let Some(e) = r.neutral_used {
                    writeln!(out, "reduction-neutral: {}", name(&e))?;
                }
            } else {
                // reducibility in general is characterized by adjoining a
                // neutral element, which this tool does not search for
                writeln!(out, "reduction: undecided-by-this-tool")?;
            }
        }
        for w in &self.witnesses {
            writeln!(out, "witness-{}: {}", w.note, w.render(&self.carrier))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn binary(m: usize, f: impl Fn(Elem, Elem) -> Elem) -> NaryOp {
        NaryOp::from_fn(Carrier::new(m).unwrap(), 2, |t| f(t[0], t[1])).unwrap()
    }

    fn z_k(k: usize) -> NaryOp {
        binary(k, move |a, b| (a + b) % k as Elem)
    }

    #[test]
    fn group_info_examples() {
        let full: Vec<Elem> = (0..3).collect();
        let info = group_info(&z_k(3), &full).unwrap();
        assert!(info.is_group && info.is_abelian);
        assert_eq!(info.neutral, Some(0));
        assert_eq!(info.exponent, Some(3));
        // Klein group as componentwise xor
        let klein = binary(4, |a, b| a ^ b);
        let info = group_info(&klein, &[0, 1, 2, 3]).unwrap();
        assert!(info.is_group && info.is_abelian);
        assert_eq!(info.exponent, Some(2));
        // max on a chain: no inverses for the top
        let info = group_info(&binary(3, |a, b| a.max(b)), &[0, 1, 2]).unwrap();
        assert!(!info.is_group);
        assert_eq!(info.exponent, None);
        // closure failure is an input error
        assert!(group_info(&z_k(3), &[1, 2]).is_err());
        // trivial group has exponent 1
        let info = group_info(&z_k(1), &[0]).unwrap();
        assert_eq!(info.exponent, Some(1));
    }

    #[test]
    fn exponent_routes_agree() {
        let full: Vec<Elem> = (0..4).collect();
        let z4 = z_k(4);
        let info = group_info(&z4, &full).unwrap();
        for k in 1..=8 {
            assert_eq!(
                info.exponent_divides(k),
                exponent_divides_via_identity(&z4, &full, k).unwrap(),
                "k = {k}"
            );
        }
    }

    #[test]
    fn all_neutral_equivalence_cases() {
        // four-ary extension of Z_3: everything neutral, exponent 3 | 3
        let f = extend_binary(&z_k(3), 4).unwrap();
        let r = check_all_neutral(&f).unwrap().unwrap();
        assert!(r.all_neutral && r.abelian_extension && r.consistent());
        // ternary sum mod 2: both sides true
        let f = extend_binary(&z_k(2), 3).unwrap();
        let r = check_all_neutral(&f).unwrap().unwrap();
        assert!(r.all_neutral && r.abelian_extension);
        // ternary max: only the bottom is neutral
        let f = extend_binary(&binary(3, |a, b| a.max(b)), 3).unwrap();
        let r = check_all_neutral(&f).unwrap().unwrap();
        assert!(!r.all_neutral && !r.abelian_extension && r.consistent());
        // arity 2: not applicable
        assert!(check_all_neutral(&z_k(2)).unwrap().is_none());
    }

    #[test]
    fn classify_componentwise_sum_on_four_elements() {
        let f = NaryOp::from_fn(Carrier::new(4).unwrap(), 3, |t| t[0] ^ t[1] ^ t[2]).unwrap();
        let r = classify(&f).unwrap();
        assert_eq!(r.member_f1, Some(false));
        assert_eq!(r.member_fn1, Some(true));
        assert!(r.strictly_between());
        assert_eq!(r.neutral.as_ref().unwrap().elements(), &[0, 1, 2, 3]);
        assert_eq!(r.group_block.as_deref(), Some(&[0, 1, 2, 3][..]));
        assert_eq!(r.group.as_ref().unwrap().exponent, Some(2));
        assert!(r.tail.is_none());
        // the one witness is the least non-quasitrivial tuple
        assert_eq!(r.witnesses.len(), 1);
        assert_eq!(r.witnesses[0].args, vec![0, 1, 2]);
        assert_eq!(r.witnesses[0].value, 3);
    }

    #[test]
    fn classify_small_arity_and_singleton() {
        let r = classify(&z_k(3)).unwrap();
        assert_eq!(r.member_f1, Some(false));
        assert!(r.group_block.is_none(), "structure analysis needs arity 3");
        let one = NaryOp::from_fn(Carrier::new(1).unwrap(), 5, |_| 0).unwrap();
        let r = classify(&one).unwrap();
        assert_eq!(r.member_f1, Some(true));
        assert_eq!(r.member_fn, Some(true));
    }

    #[test]
    fn classify_non_associative() {
        let maj = NaryOp::from_fn(Carrier::new(3).unwrap(), 3, |t| {
            if t[1] == t[2] {
                t[1]
            } else {
                t[0]
            }
        })
        .unwrap();
        let r = classify(&maj).unwrap();
        assert!(!r.associative);
        assert!(r.member_f1.is_none());
        assert!(r.assoc_witness.is_some());
    }

    #[test]
    fn unique_block_cross_check() {
        let f = NaryOp::from_fn(Carrier::new(4).unwrap(), 3, |t| t[0] ^ t[1] ^ t[2]).unwrap();
        let r = classify(&f).unwrap();
        verify_unique_block(&f, &r).unwrap();
    }

    #[test]
    fn report_rendering_is_stable() {
        let f = extend_binary(&z_k(2), 3).unwrap();
        let text = classify(&f).unwrap().to_string();
        assert_eq!(
            text,
            "arity: 3\nsize: 2\nassociative: true\nmember-f1: true\nmember-fn-1: true\n\
             member-fn: true\nmember-g2: true\nneutral-elements: 0 1\n\
             reduction-method: neutral-element\nreduction-neutral: 0\n"
        );
    }

    #[test]
    fn undecided_reducibility_is_flagged() {
        // x - y + z mod 3: associative and idempotent, but the boundary
        // identity fails and there is no neutral element
        let f = NaryOp::from_fn(Carrier::new(3).unwrap(), 3, |t| (t[0] + 3 - t[1] + t[2]) % 3)
            .unwrap();
        let r = classify(&f).unwrap();
        assert_eq!(r.member_fn, Some(true));
        assert_eq!(r.member_fn1, Some(false));
        let red = r.reduction.as_ref().expect("route attempted");
        assert!(!red.reducible());
        assert!(r.to_string().contains("reduction: undecided-by-this-tool\n"));
        // the reducible idempotent case still gets its method line
        let join4 = extend_binary(&binary(3, |a, b| a.max(b)), 4).unwrap();
        let r = classify(&join4).unwrap();
        assert!(r
            .to_string()
            .contains("reduction-method: neutral-element\n"));
    }

    #[test]
    fn exponent_is_the_least_annihilating_power() {
        for op in [z_k(1), z_k(2), z_k(3), z_k(4), z_k(6), binary(4, |a, b| a ^ b)] {
            let s: Vec<Elem> = op.carrier().elements().collect();
            let info = group_info(&op, &s).unwrap();
            let exponent = info.exponent.unwrap();
            // least t >= 1 with every t-fold power neutral, by direct scan
            let e = info.neutral.unwrap();
            let least = (1..=s.len())
                .find(|&t| {
                    s.iter().all(|&x| {
                        let mut acc = e;
                        for _ in 0..t {
                            acc = op.eval(&[acc, x]);
                        }
                        acc == e
                    })
                })
                .unwrap();
            assert_eq!(exponent, least, "group {:?}", op.table());
            assert!(exponent_divides_via_identity(&op, &s, exponent).unwrap());
        }
    }
}
