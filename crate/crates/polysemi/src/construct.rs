//! Constructors: group block + quasitrivial tail assemblies, generator
//! tables for small groups and quasitrivial operations, the built-in
//! example zoo, and strict-inclusion witnesses.

use crate::error::{Clause, Error};
use crate::family::TupleFamily;
use crate::predicates::{is_associative, is_quasitrivial_on};
use crate::reduction::extend_binary;
use crate::structure::{classify, group_info};
use crate::table::{Carrier, Elem, NaryOp};

/// The data of a block construction: a subset `Y` of the carrier carrying
/// a group, a quasitrivial table on the complement, and a target arity.
/// The glue between the blocks is not part of the spec: every element
/// outside `Y` absorbs all of `Y`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstructionSpec {
    pub size: usize,
    pub arity: usize,
    /// The group block, in the order its table refers to. Need not be a
    /// prefix of the carrier.
    pub members: Vec<Elem>,
    /// `|Y|^2` entries, indices into the order of `members`.
    pub group_table: Vec<Elem>,
    /// `(size - |Y|)^2` entries, indices into the ascending complement.
    /// Empty when the block covers the carrier.
    pub tail_table: Vec<Elem>,
}

impl ConstructionSpec {
    /// The complement of the block, ascending.
    pub fn complement(&self) -> Vec<Elem> {
        (0..self.size as Elem)
            .filter(|x| !self.members.contains(x))
            .collect()
    }
}

fn clause_err(clause: Clause, msg: impl Into<String>) -> Error {
    Error::Construction {
        clause,
        msg: msg.into(),
    }
}

/// Validates the spec shape: sizes, ranges, disjointness. Clause content
/// (group structure, tail structure) is checked in [`assemble`].
fn validate_shape(spec: &ConstructionSpec) -> Result<(), Error> {
    if spec.size == 0 {
        return Err(Error::input("carrier must have at least one element"));
    }
    if spec.arity < 2 {
        return Err(Error::input("arity must be at least 2"));
    }
    if spec.members.is_empty() {
        return Err(Error::input("the group block must be nonempty"));
    }
    let k = spec.members.len();
    if k > spec.size {
        return Err(Error::input("group block larger than the carrier"));
    }
    for (i, &x) in spec.members.iter().enumerate() {
        if x as usize >= spec.size {
            return Err(Error::input(format!("block element {x} out of range")));
        }
        if spec.members[..i].contains(&x) {
            return Err(Error::input(format!("block element {x} listed twice")));
        }
    }
    if spec.group_table.len() != k * k {
        return Err(Error::input(format!(
            "group table has {} entries, expected {}",
            spec.group_table.len(),
            k * k
        )));
    }
    if let Some(&bad) = spec.group_table.iter().find(|&&v| v as usize >= k) {
        return Err(Error::input(format!(
            "group table entry {bad} out of range 0..{k}"
        )));
    }
    let rest = spec.size - k;
    if spec.tail_table.len() != rest * rest {
        return Err(Error::input(format!(
            "tail table has {} entries, expected {}",
            spec.tail_table.len(),
            rest * rest
        )));
    }
    if let Some(&bad) = spec.tail_table.iter().find(|&&v| v as usize >= rest) {
        return Err(Error::input(format!(
            "tail table entry {bad} out of range 0..{rest}"
        )));
    }
    Ok(())
}

/// Builds the glued binary table on the full carrier: the group block on
/// `Y`, the tail on the complement, and every tail element absorbing the
/// whole block.
fn glue_binary(spec: &ConstructionSpec) -> Result<NaryOp, Error> {
    let members = &spec.members;
    let complement = spec.complement();
    let block_pos = |x: Elem| members.iter().position(|&y| y == x);
    let tail_pos = |x: Elem| complement.iter().position(|&y| y == x);
    NaryOp::from_fn(Carrier::new(spec.size)?, 2, |t| {
        let (a, b) = (t[0], t[1]);
        match (block_pos(a), block_pos(b)) {
            (Some(i), Some(j)) => members[spec.group_table[i * members.len() + j] as usize],
            (Some(_), None) => b,
            (None, Some(_)) => a,
            (None, None) => {
                let (i, j) = (tail_pos(a).unwrap(), tail_pos(b).unwrap());
                complement[spec.tail_table[i * complement.len() + j] as usize]
            }
        }
    })
}

/// Assembles the binary operation of a construction spec and its n-ary
/// extension. The block must carry an abelian group whose exponent divides
/// `arity - 1` (clause (a)); the complement must carry an associative
/// quasitrivial table (clause (b)); violations are reported under those
/// tags. The result is quasitrivial on the one-off family, and strictly
/// so exactly when the block has at least 3 elements.
pub fn assemble(spec: &ConstructionSpec) -> Result<(NaryOp, NaryOp), Error> {
    validate_shape(spec)?;
    // clause (a): abelian group of exponent dividing arity - 1 on the block
    let k = spec.members.len();
    let block_op = NaryOp::new(Carrier::new(k)?, 2, spec.group_table.clone())?;
    let info = group_info(&block_op, &(0..k as Elem).collect::<Vec<_>>())?;
    if !info.is_group {
        return Err(clause_err(
            Clause::GroupBlock,
            "block table is not a group",
        ));
    }
    if !info.is_abelian {
        return Err(clause_err(Clause::GroupBlock, "block group is not abelian"));
    }
    if !info.exponent_divides(spec.arity - 1) {
        return Err(clause_err(
            Clause::GroupBlock,
            format!(
                "block group exponent {} does not divide arity - 1 = {}",
                info.exponent.unwrap_or(0),
                spec.arity - 1
            ),
        ));
    }
    // clause (b): associative quasitrivial tail
    let rest = spec.size - k;
    if rest > 0 {
        let tail_op = NaryOp::new(Carrier::new(rest)?, 2, spec.tail_table.clone())?;
        if let Err(w) = is_associative(&tail_op) {
            return Err(clause_err(
                Clause::TailBlock,
                format!("tail table is not associative ({w})"),
            ));
        }
        if let Err(w) = is_quasitrivial_on(&tail_op, &TupleFamily::all(rest, 2)) {
            return Err(clause_err(
                Clause::TailBlock,
                format!(
                    "tail table is not quasitrivial ({})",
                    w.render(tail_op.carrier())
                ),
            ));
        }
    }
    assemble_unchecked(spec)
}

/// Builds the glued tables without clause validation. Exists so tests can
/// observe what breaks without the guarantees; not part of the public
/// contract.
#[doc(hidden)]
pub fn assemble_unchecked(spec: &ConstructionSpec) -> Result<(NaryOp, NaryOp), Error> {
    validate_shape(spec)?;
    let g = glue_binary(spec)?;
    let f = extend_binary(&g, spec.arity)?;
    Ok((g, f))
}

/// Addition modulo `k`.
pub fn make_cyclic(k: usize) -> Result<NaryOp, Error> {
    NaryOp::from_fn(Carrier::new(k)?, 2, |t| {
        ((t[0] as usize + t[1] as usize) % k) as Elem
    })
}

/// Componentwise product of binary group tables on the product carrier,
/// elements encoded row-major (first factor most significant).
pub fn make_direct_sum(parts: &[NaryOp]) -> Result<NaryOp, Error> {
    if parts.is_empty() {
        return Err(Error::input("direct sum needs at least one factor"));
    }
    let mut size = 1usize;
    for (i, p) in parts.iter().enumerate() {
        if p.arity() != 2 {
            return Err(Error::input("direct sum factors must be binary"));
        }
        let full: Vec<Elem> = p.carrier().elements().collect();
        let info = group_info(p, &full)?;
        if !info.is_group {
            return Err(Error::input(format!("factor {i} is not a group")));
        }
        size = size
            .checked_mul(p.size())
            .ok_or_else(|| Error::capacity("product carrier overflows"))?;
    }
    NaryOp::from_fn(Carrier::new(size)?, 2, |t| {
        let (mut a, mut b) = (t[0] as usize, t[1] as usize);
        let mut components = Vec::with_capacity(parts.len());
        for p in parts.iter().rev() {
            let m = p.size();
            components.push(p.eval(&[(a % m) as Elem, (b % m) as Elem]));
            a /= m;
            b /= m;
        }
        let mut v = 0usize;
        for (p, &c) in parts.iter().zip(components.iter().rev()) {
            v = v * p.size() + c as usize;
        }
        v as Elem
    })
}

/// Families of associative quasitrivial binary tables.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuasitrivialKind {
    /// `G(x, y) = x`; no neutral element.
    LeftProjection,
    /// `G(x, y) = y`; no neutral element.
    RightProjection,
    /// Maximum along the natural chain; the bottom is neutral.
    MaxChain,
    /// Minimum along the natural chain; the top is neutral.
    MinChain,
}

/// One generator from each quasitrivial family.
pub fn make_quasitrivial(kind: QuasitrivialKind, m: usize) -> Result<NaryOp, Error> {
    NaryOp::from_fn(Carrier::new(m)?, 2, |t| match kind {
        QuasitrivialKind::LeftProjection => t[0],
        QuasitrivialKind::RightProjection => t[1],
        QuasitrivialKind::MaxChain => t[0].max(t[1]),
        QuasitrivialKind::MinChain => t[0].min(t[1]),
    })
}

/// Names of the built-in example operations.
pub const FIXTURE_NAMES: [&str; 6] = [
    "z2-ternary-sum",
    "z2sq-ternary-sum",
    "z3-7ary",
    "chain5-4ary",
    "six-elt-ternary",
    "diamond-join-ternary",
];

/// A named example operation. These are the recurring specimens of the
/// documentation and test-suite, shipped 0-based with display labels.
pub fn fixture(name: &str) -> Result<NaryOp, Error> {
    match name {
        // ternary x + y + z on Z_2
        "z2-ternary-sum" => extend_binary(&make_cyclic(2)?, 3),
        // componentwise ternary sum on Z_2 x Z_2; labels encode the vectors
        "z2sq-ternary-sum" => {
            let carrier = Carrier::with_labels(
                4,
                ["00", "01", "10", "11"].map(String::from).to_vec(),
            )?;
            NaryOp::from_fn(carrier, 3, |t| t[0] ^ t[1] ^ t[2])
        }
        // 7-ary extension of addition mod 3
        "z3-7ary" => extend_binary(&make_cyclic(3)?, 7),
        // chain of five: Z_3 block glued under a two-element max tail,
        // extended to arity 4; labels keep the conventional 1-based names
        "chain5-4ary" => {
            let spec = ConstructionSpec {
                size: 5,
                arity: 4,
                members: vec![0, 1, 2],
                group_table: make_cyclic(3)?.table().to_vec(),
                tail_table: vec![0, 1, 1, 1],
            };
            let (_, f) = assemble(&spec)?;
            relabeled(f, &["1", "2", "3", "4", "5"])
        }
        // six elements: Klein block glued under a left-projection tail
        "six-elt-ternary" => {
            let klein = make_direct_sum(&[make_cyclic(2)?, make_cyclic(2)?])?;
            let spec = ConstructionSpec {
                size: 6,
                arity: 3,
                members: vec![0, 1, 2, 3],
                group_table: klein.table().to_vec(),
                tail_table: make_quasitrivial(QuasitrivialKind::LeftProjection, 2)?
                    .table()
                    .to_vec(),
            };
            let (_, f) = assemble(&spec)?;
            relabeled(f, &["1", "2", "3", "4", "5", "6"])
        }
        // ternary join on the diamond lattice 0 < a, b < 1
        "diamond-join-ternary" => {
            let join = NaryOp::from_fn(Carrier::new(4)?, 2, |t| {
                let (x, y) = (t[0], t[1]);
                if x == y || x == 0 {
                    y
                } else if y == 0 {
                    x
                } else {
                    3
                }
            })?;
            let f = extend_binary(&join, 3)?;
            relabeled(f, &["0", "a", "b", "1"])
        }
        other => Err(Error::input(format!("unknown example `{other}`"))),
    }
}

fn relabeled(op: NaryOp, labels: &[&str]) -> Result<NaryOp, Error> {
    let carrier = Carrier::with_labels(
        op.size(),
        labels.iter().map(|s| s.to_string()).collect(),
    )?;
    NaryOp::new(carrier, op.arity(), op.table().to_vec())
}

/// Outcome of a strict-inclusion witness request.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InclusionWitness {
    /// A verified operation quasitrivial on the one-off family but not
    /// everywhere.
    Found(NaryOp),
    /// The requested shape is not covered by the library's constructions;
    /// this does not assert that no witness exists.
    NotCovered { note: String },
}

/// Produces an operation in the gap between the one-off class and full
/// quasitriviality for the requested arity and carrier size, when the
/// library's constructions cover that shape:
///
/// - arity 3 with at least 4 elements: a Klein block plus a chain tail;
/// - arity at least 4 with at least `arity - 1` elements: a cyclic block
///   of order `arity - 1` plus a chain tail;
/// - arity 7 on exactly 3 elements: the 7-ary extension of addition mod 3.
///
/// Every returned witness is re-verified by classification.
pub fn witness_strict_inclusion(arity: usize, size: usize) -> Result<InclusionWitness, Error> {
    if arity < 3 {
        return Err(Error::input("witnesses need arity at least 3"));
    }
    if size == 0 {
        return Err(Error::input("carrier must have at least one element"));
    }
    let block: Option<NaryOp> = if arity == 3 && size >= 4 {
        Some(make_direct_sum(&[make_cyclic(2)?, make_cyclic(2)?])?)
    } else if arity >= 4 && size >= arity - 1 {
        Some(make_cyclic(arity - 1)?)
    } else if arity == 7 && size == 3 {
        Some(make_cyclic(3)?)
    } else {
        None
    };
    let Some(block) = block else {
        return Ok(InclusionWitness::NotCovered {
            note: format!(
                "no covered construction for arity {arity} on {size} elements; \
                 the covered shapes are sufficient, not necessary"
            ),
        });
    };
    let k = block.size();
    let rest = size - k;
    let tail = make_quasitrivial(QuasitrivialKind::MaxChain, rest.max(1))?;
    let spec = ConstructionSpec {
        size,
        arity,
        members: (0..k as Elem).collect(),
        group_table: block.table().to_vec(),
        tail_table: if rest == 0 {
            Vec::new()
        } else {
            tail.table()[..rest * rest].to_vec()
        },
    };
    let (_, f) = assemble(&spec)?;
    let report = classify(&f)?;
    if !report.strictly_between() {
        return Err(Error::violation(
            "constructed witness failed to land strictly between the classes",
        ));
    }
    Ok(InclusionWitness::Found(f))
}
