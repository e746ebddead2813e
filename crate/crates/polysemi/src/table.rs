//! Carriers, operation tables and tuple indexing.
//!
//! An [`NaryOp`] stores a total n-ary operation on `{0, …, m-1}` as a flat
//! value table in mixed-radix order with the first argument most
//! significant: the entry for `(x_1, …, x_n)` lives at index
//! `Σ x_i · m^(n-i)`.

use crate::error::Error;

/// A carrier element. Elements are always the integers `0..m`.
pub type Elem = u32;

/// Hard cap on table sizes; beyond this everything is rejected with a
/// capacity error instead of degrading.
pub const MAX_TABLE_ENTRIES: usize = 100_000_000;

/// A finite carrier: `m` elements, canonically `0..m`, with optional
/// display labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Carrier {
    size: usize,
    labels: Option<Vec<String>>,
}

impl Carrier {
    pub fn new(size: usize) -> Result<Self, Error> {
        if size == 0 {
            return Err(Error::input("carrier must have at least one element"));
        }
        Ok(Carrier { size, labels: None })
    }

    pub fn with_labels(size: usize, labels: Vec<String>) -> Result<Self, Error> {
        let mut c = Carrier::new(size)?;
        if labels.len() != size {
            return Err(Error::input(format!(
                "expected {} labels, got {}",
                size,
                labels.len()
            )));
        }
        for (i, a) in labels.iter().enumerate() {
            if labels[..i].contains(a) {
                return Err(Error::input(format!("duplicate label `{a}`")));
            }
        }
        c.labels = Some(labels);
        Ok(c)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Display name of an element: its label when present, its index otherwise.
    pub fn name(&self, x: Elem) -> String {
        match &self.labels {
            Some(ls) => ls[x as usize].clone(),
            None => x.to_string(),
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> + Clone {
        0..self.size as Elem
    }
}

/// Number of table entries for the given size and arity, guarded by
/// [`MAX_TABLE_ENTRIES`].
pub fn table_len(size: usize, arity: usize) -> Result<usize, Error> {
    if size == 0 {
        return Err(Error::input("carrier must have at least one element"));
    }
    if arity < 2 {
        return Err(Error::input("arity must be at least 2"));
    }
    let mut len: usize = 1;
    for _ in 0..arity {
        len = len
            .checked_mul(size)
            .filter(|&l| l <= MAX_TABLE_ENTRIES)
            .ok_or_else(|| {
                Error::capacity(format!(
                    "table of size {size}^{arity} exceeds {MAX_TABLE_ENTRIES} entries"
                ))
            })?;
    }
    Ok(len)
}

/// Index of a tuple in a flat table, first argument most significant.
pub fn tuple_index(tuple: &[Elem], size: usize, arity: usize) -> Result<usize, Error> {
    if tuple.len() != arity {
        return Err(Error::input(format!(
            "tuple has length {}, expected {arity}",
            tuple.len()
        )));
    }
    let mut idx = 0usize;
    for &x in tuple {
        if (x as usize) >= size {
            return Err(Error::input(format!("element {x} out of range 0..{size}")));
        }
        idx = idx * size + x as usize;
    }
    Ok(idx)
}

/// Inverse of [`tuple_index`]: reconstructs the tuple from its table index.
pub fn index_tuple(index: usize, size: usize, arity: usize) -> Vec<Elem> {
    let mut tuple = vec![0 as Elem; arity];
    let mut rest = index;
    for slot in tuple.iter_mut().rev() {
        *slot = (rest % size) as Elem;
        rest /= size;
    }
    debug_assert_eq!(rest, 0, "index out of range for size^arity");
    tuple
}

/// Concatenates `count` copies of each element, in order.
///
/// `build_tuple(&[(3, x), (0, y), (2, z)])` is `(x, x, x, z, z)`.
pub fn build_tuple(parts: &[(usize, Elem)]) -> Vec<Elem> {
    let total: usize = parts.iter().map(|&(k, _)| k).sum();
    let mut out = Vec::with_capacity(total);
    for &(count, x) in parts {
        out.extend(std::iter::repeat_n(x, count));
    }
    out
}

/// A total n-ary operation on a finite carrier, stored as a flat table.
/// Tables are immutable after construction; every predicate over them is
/// pure and safe to evaluate concurrently.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NaryOp {
    carrier: Carrier,
    arity: usize,
    table: Vec<Elem>,
}

impl NaryOp {
    pub fn new(carrier: Carrier, arity: usize, table: Vec<Elem>) -> Result<Self, Error> {
        let len = table_len(carrier.size(), arity)?;
        if table.len() != len {
            return Err(Error::input(format!(
                "table has {} entries, expected {}^{} = {}",
                table.len(),
                carrier.size(),
                arity,
                len
            )));
        }
        if let Some(&bad) = table.iter().find(|&&v| v as usize >= carrier.size()) {
            return Err(Error::input(format!(
                "table entry {bad} out of range 0..{}",
                carrier.size()
            )));
        }
        Ok(NaryOp {
            carrier,
            arity,
            table,
        })
    }

    /// Builds the table by evaluating `f` on every tuple in index order.
    pub fn from_fn(
        carrier: Carrier,
        arity: usize,
        mut f: impl FnMut(&[Elem]) -> Elem,
    ) -> Result<Self, Error> {
        let m = carrier.size();
        let len = table_len(m, arity)?;
        let mut table = Vec::with_capacity(len);
        let mut odo = Odometer::new(m, arity);
        while let Some(tuple) = odo.next() {
            table.push(f(tuple));
        }
        NaryOp::new(carrier, arity, table)
    }

    pub fn carrier(&self) -> &Carrier {
        &self.carrier
    }

    pub fn size(&self) -> usize {
        self.carrier.size()
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn table(&self) -> &[Elem] {
        &self.table
    }

    /// Value of the operation on `args`. Panics on malformed tuples; use
    /// [`NaryOp::checked_eval`] at trust boundaries.
    pub fn eval(&self, args: &[Elem]) -> Elem {
        assert_eq!(args.len(), self.arity, "tuple length mismatch");
        let m = self.size();
        let mut idx = 0usize;
        for &x in args {
            debug_assert!((x as usize) < m, "element out of range");
            idx = idx * m + x as usize;
        }
        self.table[idx]
    }

    /// Like [`NaryOp::eval`] but reports malformed tuples as input errors.
    pub fn checked_eval(&self, args: &[Elem]) -> Result<Elem, Error> {
        let idx = tuple_index(args, self.size(), self.arity)?;
        Ok(self.table[idx])
    }

    /// Restriction of the operation to a closed subset, relabeled along the
    /// ascending order of `subset`. Fails when `subset` is not closed,
    /// reporting the first escaping tuple.
    pub fn restrict(&self, subset: &[Elem]) -> Result<NaryOp, Error> {
        let mut s: Vec<Elem> = subset.to_vec();
        s.sort_unstable();
        s.dedup();
        if s.len() != subset.len() {
            return Err(Error::input("subset contains duplicates"));
        }
        if s.is_empty() {
            return Err(Error::input("subset must be nonempty"));
        }
        if let Some(&bad) = s.iter().find(|&&x| x as usize >= self.size()) {
            return Err(Error::input(format!("element {bad} not in carrier")));
        }
        let back: Vec<Elem> = {
            let mut b = vec![0 as Elem; self.size()];
            for (i, &x) in s.iter().enumerate() {
                b[x as usize] = i as Elem;
            }
            b
        };
        let labels = self
            .carrier
            .labels()
            .map(|ls| s.iter().map(|&x| ls[x as usize].clone()).collect());
        let carrier = match labels {
            Some(ls) => Carrier::with_labels(s.len(), ls)?,
            None => Carrier::new(s.len())?,
        };
        let mut buf = vec![0 as Elem; self.arity];
        NaryOp::from_fn(carrier, self.arity, |args| {
            for (slot, &a) in buf.iter_mut().zip(args) {
                *slot = s[a as usize];
            }
            let v = self.eval(&buf);
            back[v as usize]
        })
        .and_then(|op| {
            // closure check: every value must have come from the subset
            let mut odo = Odometer::new(s.len(), self.arity);
            while let Some(args) = odo.next() {
                for (slot, &a) in buf.iter_mut().zip(args) {
                    *slot = s[a as usize];
                }
                let v = self.eval(&buf);
                if !s.contains(&v) {
                    return Err(Error::input(format!(
                        "subset not closed: value {v} escapes at {buf:?}"
                    )));
                }
            }
            Ok(op)
        })
    }

    /// The operation conjugated by a carrier permutation:
    /// `F'(x_1, …, x_n) = φ(F(φ^{-1}(x_1), …, φ^{-1}(x_n)))`.
    pub fn relabel(&self, image: &[Elem]) -> Result<NaryOp, Error> {
        let m = self.size();
        if image.len() != m {
            return Err(Error::input("relabeling has wrong length"));
        }
        let mut seen = vec![false; m];
        for &y in image {
            if (y as usize) >= m || seen[y as usize] {
                return Err(Error::input("relabeling is not a permutation"));
            }
            seen[y as usize] = true;
        }
        let mut table = vec![0 as Elem; self.table.len()];
        let mut odo = Odometer::new(m, self.arity);
        let mut mapped = vec![0 as Elem; self.arity];
        let mut i = 0usize;
        while let Some(args) = odo.next() {
            for (slot, &a) in mapped.iter_mut().zip(args) {
                *slot = image[a as usize];
            }
            let idx = tuple_index(&mapped, m, self.arity).expect("permuted tuple is valid");
            table[idx] = image[self.table[i] as usize];
            i += 1;
        }
        NaryOp::new(Carrier::new(m)?, self.arity, table)
    }
}

/// Counterexample to a pointwise predicate: the tuple, the value the table
/// takes there, and a short machine-readable reason code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub args: Vec<Elem>,
    pub value: Elem,
    pub note: &'static str,
}

impl Witness {
    pub fn render(&self, carrier: &Carrier) -> String {
        let args: Vec<String> = self.args.iter().map(|&x| carrier.name(x)).collect();
        format!("{} -> {}", args.join(" "), carrier.name(self.value))
    }
}

/// Counterexample to associativity: the smallest failing identity index
/// (1-based bracket position) and the lexicographically smallest argument
/// tuple of length `2n-1`, with both nested values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AssocWitness {
    pub identity: usize,
    pub args: Vec<Elem>,
    pub left: Elem,
    pub right: Elem,
}

impl AssocWitness {
    pub fn render(&self, carrier: &Carrier) -> String {
        let args: Vec<String> = self.args.iter().map(|&x| carrier.name(x)).collect();
        format!(
            "identity {} at {}: {} != {}",
            self.identity,
            args.join(" "),
            carrier.name(self.left),
            carrier.name(self.right)
        )
    }
}

impl std::fmt::Display for AssocWitness {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let args: Vec<String> = self.args.iter().map(|x| x.to_string()).collect();
        write!(
            f,
            "identity {} at ({}): {} != {}",
            self.identity,
            args.join(","),
            self.left,
            self.right
        )
    }
}

/// Mixed-radix odometer over `size^length` tuples in lexicographic order,
/// exposing each tuple as a borrowed slice.
pub(crate) struct Odometer {
    digits: Vec<Elem>,
    size: usize,
    started: bool,
    done: bool,
}

impl Odometer {
    pub fn new(size: usize, length: usize) -> Self {
        Odometer {
            digits: vec![0; length],
            size,
            started: false,
            done: size == 0,
        }
    }

    #[allow(clippy::should_implement_trait)]
    pub fn next(&mut self) -> Option<&[Elem]> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            return Some(&self.digits);
        }
        let mut pos = self.digits.len();
        loop {
            if pos == 0 {
                self.done = true;
                return None;
            }
            pos -= 1;
            self.digits[pos] += 1;
            if (self.digits[pos] as usize) < self.size {
                break;
            }
            self.digits[pos] = 0;
        }
        Some(&self.digits)
    }
}
