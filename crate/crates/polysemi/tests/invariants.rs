//! Property tests over random tables (not just associative ones): witness
//! minimality, family monotonicity, and format round trips.

use polysemi::io::{parse_optab, serialize_optab};
use polysemi::predicates::{is_associative_direct, is_quasitrivial_on};
use polysemi::table::{index_tuple, table_len, Carrier, Elem, NaryOp};
use polysemi::TupleFamily;
use proptest::prelude::*;

fn arb_op(max_size: usize, max_arity: usize) -> impl Strategy<Value = NaryOp> {
    (1..=max_size, 2..=max_arity)
        .prop_flat_map(|(m, n)| {
            let len = table_len(m, n).unwrap();
            (
                Just(m),
                Just(n),
                proptest::collection::vec(0..m as Elem, len),
            )
        })
        .prop_map(|(m, n, table)| NaryOp::new(Carrier::new(m).unwrap(), n, table).unwrap())
}

/// Slow, independently coded associativity witness search.
fn brute_force_witness(op: &NaryOp) -> Option<(usize, Vec<Elem>, Elem, Elem)> {
    let (m, n) = (op.size(), op.arity());
    let total = m.pow((2 * n - 1) as u32);
    for i in 1..n {
        for idx in 0..total {
            let t = index_tuple(idx, m, 2 * n - 1);
            let mut left_args = t.clone();
            let inner: Vec<Elem> = t[i - 1..i - 1 + n].to_vec();
            left_args.splice(i - 1..i - 1 + n, [op.eval(&inner)]);
            let mut right_args = t.clone();
            let inner: Vec<Elem> = t[i..i + n].to_vec();
            right_args.splice(i..i + n, [op.eval(&inner)]);
            let (l, r) = (op.eval(&left_args), op.eval(&right_args));
            if l != r {
                return Some((i, t, l, r));
            }
        }
    }
    None
}

proptest! {
    /// The associativity verdict and its witness agree with a brute-force
    /// scan on arbitrary tables.
    #[test]
    fn associativity_witness_is_minimal(op in arb_op(3, 3)) {
        let brute = brute_force_witness(&op);
        match is_associative_direct(&op) {
            Ok(()) => prop_assert!(brute.is_none()),
            Err(w) => {
                let (i, t, l, r) = brute.expect("scan found a violation");
                prop_assert_eq!((w.identity, w.args, w.left, w.right), (i, t, l, r));
            }
        }
    }

    /// Quasitriviality is monotone along the nested families for any
    /// table, associative or not.
    #[test]
    fn quasitriviality_is_monotone_along_families(op in arb_op(4, 4)) {
        let (m, n) = (op.size(), op.arity());
        for k in 1..n {
            let wide = TupleFamily::d_k(m, n, k).unwrap();
            let narrow = TupleFamily::d_k(m, n, k + 1).unwrap();
            if is_quasitrivial_on(&op, &wide).is_ok() {
                prop_assert!(is_quasitrivial_on(&op, &narrow).is_ok());
            }
            let narrow_s = TupleFamily::s_k(m, n, k).unwrap();
            let wide_s = TupleFamily::s_k(m, n, k + 1).unwrap();
            if is_quasitrivial_on(&op, &wide_s).is_ok() {
                prop_assert!(is_quasitrivial_on(&op, &narrow_s).is_ok());
            }
        }
    }

    /// Text serialization round-trips every table exactly.
    #[test]
    fn optab_round_trip(op in arb_op(5, 4)) {
        let text = serialize_optab(&op);
        let parsed = parse_optab(&text).unwrap();
        prop_assert_eq!(&parsed, &op);
        prop_assert_eq!(serialize_optab(&parsed), text);
    }
}
