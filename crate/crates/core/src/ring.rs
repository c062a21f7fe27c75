//! Finite unital rings built from a small constructor algebra.
//!
//! Every ring enumerates its carrier as `0..size`. The index of an element is
//! its position in the canonical ordering of its constructor:
//!
//! * `Z/n`: the residue itself;
//! * products, matrix and triangular rings: mixed-radix tuples, the first
//!   component (or the first row-major entry) being the most significant digit;
//! * corners and generated subrings: ascending order of the base-ring index;
//! * central quotients: ascending order of the smallest base index in each coset.

use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, OnceLock};

use thiserror::Error;

/// Default upper bound on the number of carrier elements of a constructed ring.
pub const DEFAULT_CARRIER_CAP: usize = 65_536;

/// Rings up to this size (other than `Z/n`) get memoized operation tables.
const TABLE_LIMIT: usize = 1024;

const ABSENT: u32 = u32::MAX;

static NEXT_RING_ID: AtomicU64 = AtomicU64::new(1);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingError {
    #[error("ring of size {requested} exceeds the carrier cap of {cap}")]
    CapExceeded { requested: u128, cap: usize },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("element does not belong to this ring")]
    ForeignElement,
    #[error("operation `{op}` expects {expected} argument(s), got {got}")]
    Arity {
        op: &'static str,
        expected: usize,
        got: usize,
    },
}

/// Handle to an element of a specific [`FiniteRing`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Elem {
    ring: u64,
    index: u32,
}

impl Elem {
    /// Position in the owning ring's canonical carrier ordering.
    pub fn index(self) -> usize {
        self.index as usize
    }

    pub fn ring_id(self) -> u64 {
        self.ring
    }
}

/// The constructor that produced a ring.
#[derive(Debug, Clone)]
pub enum Construction {
    Zmod { modulus: usize },
    Product { factors: Vec<FiniteRing> },
    Matrix { dim: usize, base: FiniteRing },
    Triangular { dim: usize, base: FiniteRing },
    Corner { base: FiniteRing, idempotent: Elem },
    Quotient { base: FiniteRing, generators: Vec<Elem> },
    Subring { base: FiniteRing, generator: Elem },
}

#[derive(Debug)]
enum Repr {
    Zmod {
        n: u32,
    },
    /// Product, matrix and triangular rings: mixed-radix digit tuples.
    Tuple {
        digits: Vec<FiniteRing>,
        shape: Shape,
    },
    /// Corners and generated subrings: a subset of the base carrier.
    Embedded {
        base: FiniteRing,
        carrier: Vec<u32>,
        position: Vec<u32>,
    },
    Quotient {
        base: FiniteRing,
        reps: Vec<u32>,
        class_of: Vec<u32>,
    },
}

#[derive(Debug, Clone, Copy)]
enum Shape {
    Product,
    Matrix(usize),
    Triangular(usize),
}

#[derive(Debug)]
struct Tables {
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
}

/// Per-ring memoized data filled by the classification routines.
#[derive(Debug, Default)]
pub(crate) struct Cache {
    pub(crate) nil_index: OnceLock<Vec<u32>>,
    pub(crate) inverse: OnceLock<Vec<u32>>,
    pub(crate) left_invertible: OnceLock<Vec<bool>>,
    pub(crate) jacobson: OnceLock<Vec<bool>>,
    pub(crate) central: OnceLock<Vec<bool>>,
    pub(crate) characteristic: OnceLock<usize>,
    pub(crate) idempotents: OnceLock<Vec<Elem>>,
    pub(crate) tripotents: OnceLock<Vec<Elem>>,
    pub(crate) two_idempotents: OnceLock<Vec<Elem>>,
    pub(crate) quintic_roots: OnceLock<Vec<Elem>>,
    pub(crate) zhou_criterion: OnceLock<bool>,
    pub(crate) crt_split: OnceLock<Option<crate::decompose::CrtSplit>>,
}

struct Inner {
    id: u64,
    size: usize,
    zero: u32,
    one: u32,
    construction: Construction,
    repr: Repr,
    tables: OnceLock<Option<Tables>>,
    cache: Cache,
}

/// A finite associative ring with identity. Cheap to clone; immutable.
#[derive(Clone)]
pub struct FiniteRing(Arc<Inner>);

impl fmt::Debug for FiniteRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteRing")
            .field("id", &self.0.id)
            .field("size", &self.0.size)
            .field("construction", &self.0.construction)
            .finish()
    }
}

/// Element-level operation selector for [`FiniteRing::apply`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Mul,
    Neg,
    Eq,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithValue {
    Elem(Elem),
    Bool(bool),
}

impl FiniteRing {
    fn from_parts(size: usize, zero: u32, one: u32, construction: Construction, repr: Repr) -> Self {
        FiniteRing(Arc::new(Inner {
            id: NEXT_RING_ID.fetch_add(1, Ordering::Relaxed),
            size,
            zero,
            one,
            construction,
            repr,
            tables: OnceLock::new(),
            cache: Cache::default(),
        }))
    }

    pub fn zmod(n: usize) -> Result<Self, RingError> {
        RingFactory::default().zmod(n)
    }

    pub fn product(factors: &[FiniteRing]) -> Result<Self, RingError> {
        RingFactory::default().product(factors)
    }

    pub fn matrix(dim: usize, base: &FiniteRing) -> Result<Self, RingError> {
        RingFactory::default().matrix(dim, base)
    }

    pub fn triangular(dim: usize, base: &FiniteRing) -> Result<Self, RingError> {
        RingFactory::default().triangular(dim, base)
    }

    pub fn id(&self) -> u64 {
        self.0.id
    }

    pub fn size(&self) -> usize {
        self.0.size
    }

    pub fn construction(&self) -> &Construction {
        &self.0.construction
    }

    pub(crate) fn cache(&self) -> &Cache {
        &self.0.cache
    }

    pub fn same_ring(&self, other: &FiniteRing) -> bool {
        self.0.id == other.0.id
    }

    pub fn contains(&self, e: Elem) -> bool {
        e.ring == self.0.id
    }

    pub fn zero(&self) -> Elem {
        self.wrap(self.0.zero)
    }

    pub fn one(&self) -> Elem {
        self.wrap(self.0.one)
    }

    pub fn is_zero_ring(&self) -> bool {
        self.0.size == 1
    }

    /// Element at `index` in the canonical ordering.
    pub fn elem(&self, index: usize) -> Option<Elem> {
        (index < self.0.size).then(|| self.wrap(index as u32))
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> + '_ {
        (0..self.0.size as u32).map(move |i| self.wrap(i))
    }

    #[inline]
    fn wrap(&self, index: u32) -> Elem {
        Elem { ring: self.0.id, index }
    }

    #[inline]
    fn raw(&self, e: Elem) -> u32 {
        assert_eq!(e.ring, self.0.id, "element belongs to a different ring");
        e.index
    }

    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        let (a, b) = (self.raw(a), self.raw(b));
        self.wrap(self.add_raw(a, b))
    }

    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        let (a, b) = (self.raw(a), self.raw(b));
        self.wrap(self.mul_raw(a, b))
    }

    pub fn neg(&self, a: Elem) -> Elem {
        let a = self.raw(a);
        self.wrap(self.neg_raw(a))
    }

    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        let nb = self.neg(b);
        self.add(a, nb)
    }

    pub fn pow(&self, a: Elem, mut k: u64) -> Elem {
        let mut base = a;
        let mut acc = self.one();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    /// `m·a` by double-and-add; negative `m` goes through negation.
    pub fn scale(&self, m: i64, a: Elem) -> Elem {
        let mut base = if m < 0 { self.neg(a) } else { a };
        let mut k = m.unsigned_abs();
        let mut acc = self.zero();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add(acc, base);
            }
            base = self.add(base, base);
            k >>= 1;
        }
        acc
    }

    /// The image of the integer `m` under `Z -> R`.
    pub fn int_image(&self, m: i64) -> Elem {
        self.scale(m, self.one())
    }

    pub fn commute(&self, a: Elem, b: Elem) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }

    /// Checked element arithmetic: every argument must belong to this ring.
    pub fn apply(&self, op: ArithOp, args: &[Elem]) -> Result<ArithValue, RingError> {
        if args.iter().any(|e| !self.contains(*e)) {
            return Err(RingError::ForeignElement);
        }
        let arity = |expected: usize, name: &'static str| {
            if args.len() == expected {
                Ok(())
            } else {
                Err(RingError::Arity {
                    op: name,
                    expected,
                    got: args.len(),
                })
            }
        };
        Ok(match op {
            ArithOp::Add => {
                arity(2, "add")?;
                ArithValue::Elem(self.add(args[0], args[1]))
            }
            ArithOp::Mul => {
                arity(2, "mul")?;
                ArithValue::Elem(self.mul(args[0], args[1]))
            }
            ArithOp::Neg => {
                arity(1, "neg")?;
                ArithValue::Elem(self.neg(args[0]))
            }
            ArithOp::Eq => {
                arity(2, "eq")?;
                ArithValue::Bool(args[0] == args[1])
            }
        })
    }

    /// The ring this one was carved out of (corner, quotient, subring).
    pub fn base(&self) -> Option<&FiniteRing> {
        match &self.0.construction {
            Construction::Corner { base, .. }
            | Construction::Quotient { base, .. }
            | Construction::Subring { base, .. } => Some(base),
            _ => None,
        }
    }

    /// For corners and subrings: the base element an element stands for.
    /// For quotients: the canonical coset representative.
    pub fn to_base(&self, e: Elem) -> Option<Elem> {
        let i = self.raw(e) as usize;
        match &self.0.repr {
            Repr::Embedded { base, carrier, .. } => Some(base.wrap(carrier[i])),
            Repr::Quotient { base, reps, .. } => Some(base.wrap(reps[i])),
            _ => None,
        }
    }

    /// Corners and subrings: the element representing a base element, if it
    /// lies in the carrier. Quotients: the natural projection.
    pub fn from_base(&self, b: Elem) -> Option<Elem> {
        match &self.0.repr {
            Repr::Embedded { base, position, .. } => {
                let p = position[base.raw(b) as usize];
                (p != ABSENT).then(|| self.wrap(p))
            }
            Repr::Quotient { base, class_of, .. } => Some(self.wrap(class_of[base.raw(b) as usize])),
            _ => None,
        }
    }

    /// The rings of the mixed-radix digits (product factors or matrix entries).
    pub fn digit_rings(&self) -> Option<&[FiniteRing]> {
        match &self.0.repr {
            Repr::Tuple { digits, .. } => Some(digits),
            _ => None,
        }
    }

    /// Components of a product element or row-major entries of a matrix
    /// (upper-triangular entries only for triangular rings).
    pub fn digits(&self, e: Elem) -> Option<Vec<Elem>> {
        let i = self.raw(e);
        match &self.0.repr {
            Repr::Tuple { digits, .. } => {
                let ds = decode(i, digits);
                Some(ds.into_iter().zip(digits).map(|(d, r)| r.wrap(d)).collect())
            }
            _ => None,
        }
    }

    pub fn from_digits(&self, parts: &[Elem]) -> Option<Elem> {
        match &self.0.repr {
            Repr::Tuple { digits, .. } => {
                if parts.len() != digits.len() || parts.iter().zip(digits).any(|(p, r)| !r.contains(*p)) {
                    return None;
                }
                let raw: Vec<u32> = parts.iter().map(|p| p.index).collect();
                Some(self.wrap(encode(&raw, digits)))
            }
            _ => None,
        }
    }

    fn tables(&self) -> Option<&Tables> {
        self.0
            .tables
            .get_or_init(|| {
                let n = self.0.size;
                if matches!(self.0.repr, Repr::Zmod { .. }) || n > TABLE_LIMIT {
                    return None;
                }
                let mut add = Vec::with_capacity(n * n);
                let mut mul = Vec::with_capacity(n * n);
                for a in 0..n as u32 {
                    for b in 0..n as u32 {
                        add.push(self.add_direct(a, b));
                        mul.push(self.mul_direct(a, b));
                    }
                }
                let neg = (0..n as u32).map(|a| self.neg_direct(a)).collect();
                Some(Tables { add, mul, neg })
            })
            .as_ref()
    }

    #[inline]
    pub(crate) fn add_raw(&self, a: u32, b: u32) -> u32 {
        if let Repr::Zmod { n } = self.0.repr {
            return ((a as u64 + b as u64) % n as u64) as u32;
        }
        match self.tables() {
            Some(t) => t.add[a as usize * self.0.size + b as usize],
            None => self.add_direct(a, b),
        }
    }

    #[inline]
    pub(crate) fn mul_raw(&self, a: u32, b: u32) -> u32 {
        if let Repr::Zmod { n } = self.0.repr {
            return ((a as u64 * b as u64) % n as u64) as u32;
        }
        match self.tables() {
            Some(t) => t.mul[a as usize * self.0.size + b as usize],
            None => self.mul_direct(a, b),
        }
    }

    #[inline]
    pub(crate) fn neg_raw(&self, a: u32) -> u32 {
        if let Repr::Zmod { n } = self.0.repr {
            return if a == 0 { 0 } else { n - a };
        }
        match self.tables() {
            Some(t) => t.neg[a as usize],
            None => self.neg_direct(a),
        }
    }

    fn add_direct(&self, a: u32, b: u32) -> u32 {
        match &self.0.repr {
            Repr::Zmod { n } => ((a as u64 + b as u64) % *n as u64) as u32,
            Repr::Tuple { digits, .. } => {
                let (x, y) = (decode(a, digits), decode(b, digits));
                let sum: Vec<u32> = digits
                    .iter()
                    .zip(x.iter().zip(&y))
                    .map(|(r, (p, q))| r.add_raw(*p, *q))
                    .collect();
                encode(&sum, digits)
            }
            Repr::Embedded {
                base,
                carrier,
                position,
            } => position[base.add_raw(carrier[a as usize], carrier[b as usize]) as usize],
            Repr::Quotient { base, reps, class_of } => {
                class_of[base.add_raw(reps[a as usize], reps[b as usize]) as usize]
            }
        }
    }

    fn neg_direct(&self, a: u32) -> u32 {
        match &self.0.repr {
            Repr::Zmod { n } => (*n - a) % *n,
            Repr::Tuple { digits, .. } => {
                let x = decode(a, digits);
                let neg: Vec<u32> = digits.iter().zip(&x).map(|(r, p)| r.neg_raw(*p)).collect();
                encode(&neg, digits)
            }
            Repr::Embedded {
                base,
                carrier,
                position,
            } => position[base.neg_raw(carrier[a as usize]) as usize],
            Repr::Quotient { base, reps, class_of } => class_of[base.neg_raw(reps[a as usize]) as usize],
        }
    }

    fn mul_direct(&self, a: u32, b: u32) -> u32 {
        match &self.0.repr {
            Repr::Zmod { n } => ((a as u64 * b as u64) % *n as u64) as u32,
            Repr::Tuple { digits, shape } => {
                let (x, y) = (decode(a, digits), decode(b, digits));
                let out = match *shape {
                    Shape::Product => digits
                        .iter()
                        .zip(x.iter().zip(&y))
                        .map(|(r, (p, q))| r.mul_raw(*p, *q))
                        .collect(),
                    Shape::Matrix(k) => {
                        let r = &digits[0];
                        let mut out = vec![r.0.zero; k * k];
                        for i in 0..k {
                            for j in 0..k {
                                let mut acc = r.0.zero;
                                for l in 0..k {
                                    acc = r.add_raw(acc, r.mul_raw(x[i * k + l], y[l * k + j]));
                                }
                                out[i * k + j] = acc;
                            }
                        }
                        out
                    }
                    Shape::Triangular(k) => {
                        let r = &digits[0];
                        let mut out = vec![r.0.zero; x.len()];
                        for i in 0..k {
                            for j in i..k {
                                let mut acc = r.0.zero;
                                for l in i..=j {
                                    acc = r.add_raw(acc, r.mul_raw(x[tri_pos(k, i, l)], y[tri_pos(k, l, j)]));
                                }
                                out[tri_pos(k, i, j)] = acc;
                            }
                        }
                        out
                    }
                };
                encode(&out, digits)
            }
            Repr::Embedded {
                base,
                carrier,
                position,
            } => position[base.mul_raw(carrier[a as usize], carrier[b as usize]) as usize],
            Repr::Quotient { base, reps, class_of } => {
                class_of[base.mul_raw(reps[a as usize], reps[b as usize]) as usize]
            }
        }
    }
}

/// Position of entry `(i, j)`, `i <= j`, in the row-major list of upper entries.
pub(crate) fn tri_pos(k: usize, i: usize, j: usize) -> usize {
    // rows 0..i contribute k + (k-1) + ... + (k-i+1) entries
    i * k - i * i.saturating_sub(1) / 2 + (j - i)
}

fn decode(mut index: u32, digits: &[FiniteRing]) -> Vec<u32> {
    let mut out = vec![0; digits.len()];
    for (slot, r) in out.iter_mut().zip(digits).rev() {
        let radix = r.0.size as u32;
        *slot = index % radix;
        index /= radix;
    }
    out
}

fn encode(values: &[u32], digits: &[FiniteRing]) -> u32 {
    values
        .iter()
        .zip(digits)
        .fold(0u64, |acc, (v, r)| acc * r.0.size as u64 + *v as u64) as u32
}

/// Builds rings subject to a carrier-size cap.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RingFactory {
    cap: usize,
}

impl Default for RingFactory {
    fn default() -> Self {
        RingFactory {
            cap: DEFAULT_CARRIER_CAP,
        }
    }
}

impl RingFactory {
    pub fn new(cap: usize) -> Self {
        RingFactory {
            cap: cap.min(u32::MAX as usize - 1),
        }
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    fn check_cap(&self, requested: u128) -> Result<usize, RingError> {
        if requested > self.cap as u128 {
            Err(RingError::CapExceeded {
                requested,
                cap: self.cap,
            })
        } else {
            Ok(requested as usize)
        }
    }

    /// `Z/nZ`.
    pub fn zmod(&self, n: usize) -> Result<FiniteRing, RingError> {
        if n == 0 {
            return Err(RingError::InvalidArgument("modulus must be positive".into()));
        }
        let size = self.check_cap(n as u128)?;
        Ok(FiniteRing::from_parts(
            size,
            0,
            (1 % n) as u32,
            Construction::Zmod { modulus: n },
            Repr::Zmod { n: n as u32 },
        ))
    }

    pub fn product(&self, factors: &[FiniteRing]) -> Result<FiniteRing, RingError> {
        if factors.is_empty() {
            return Err(RingError::InvalidArgument("a product needs at least one factor".into()));
        }
        let requested = checked_size(factors.iter().map(|f| f.size()), factors.len());
        let size = self.check_cap(requested)?;
        let digits = factors.to_vec();
        let zero = encode(&digits.iter().map(|f| f.0.zero).collect::<Vec<_>>(), &digits);
        let one = encode(&digits.iter().map(|f| f.0.one).collect::<Vec<_>>(), &digits);
        Ok(FiniteRing::from_parts(
            size,
            zero,
            one,
            Construction::Product {
                factors: factors.to_vec(),
            },
            Repr::Tuple {
                digits,
                shape: Shape::Product,
            },
        ))
    }

    /// Full `k x k` matrices over `base`.
    pub fn matrix(&self, dim: usize, base: &FiniteRing) -> Result<FiniteRing, RingError> {
        if dim == 0 {
            return Err(RingError::InvalidArgument("matrix dimension must be positive".into()));
        }
        let requested = checked_size(std::iter::repeat(base.size()), dim.saturating_mul(dim));
        let size = self.check_cap(requested)?;
        let digits = vec![base.clone(); dim * dim];
        let mut one = vec![base.0.zero; dim * dim];
        for i in 0..dim {
            one[i * dim + i] = base.0.one;
        }
        let zero = encode(&vec![base.0.zero; dim * dim], &digits);
        let one = encode(&one, &digits);
        Ok(FiniteRing::from_parts(
            size,
            zero,
            one,
            Construction::Matrix {
                dim,
                base: base.clone(),
            },
            Repr::Tuple {
                digits,
                shape: Shape::Matrix(dim),
            },
        ))
    }

    /// Upper-triangular `k x k` matrices over `base`.
    pub fn triangular(&self, dim: usize, base: &FiniteRing) -> Result<FiniteRing, RingError> {
        if dim == 0 {
            return Err(RingError::InvalidArgument("matrix dimension must be positive".into()));
        }
        let entries = dim.saturating_mul(dim + 1) / 2;
        let requested = checked_size(std::iter::repeat(base.size()), entries);
        let size = self.check_cap(requested)?;
        let digits = vec![base.clone(); entries];
        let mut one = vec![base.0.zero; entries];
        for i in 0..dim {
            one[tri_pos(dim, i, i)] = base.0.one;
        }
        let zero = encode(&vec![base.0.zero; entries], &digits);
        let one = encode(&one, &digits);
        Ok(FiniteRing::from_parts(
            size,
            zero,
            one,
            Construction::Triangular {
                dim,
                base: base.clone(),
            },
            Repr::Tuple {
                digits,
                shape: Shape::Triangular(dim),
            },
        ))
    }

    /// The corner ring `eRe` with identity `e`.
    pub fn corner(&self, base: &FiniteRing, e: Elem) -> Result<FiniteRing, RingError> {
        if !base.contains(e) {
            return Err(RingError::ForeignElement);
        }
        if base.mul(e, e) != e {
            return Err(RingError::Precondition("corner element is not idempotent".into()));
        }
        let mut members = vec![false; base.size()];
        for r in base.elements() {
            let ere = base.mul(base.mul(e, r), e);
            members[ere.index()] = true;
        }
        let (carrier, position) = embedding(&members);
        self.check_cap(carrier.len() as u128)?;
        let zero = position[base.0.zero as usize];
        let one = position[e.index()];
        Ok(FiniteRing::from_parts(
            carrier.len(),
            zero,
            one,
            Construction::Corner {
                base: base.clone(),
                idempotent: e,
            },
            Repr::Embedded {
                base: base.clone(),
                carrier,
                position,
            },
        ))
    }

    /// `R/I` where `I` is the two-sided ideal generated by central elements.
    pub fn quotient_central(&self, base: &FiniteRing, gens: &[Elem]) -> Result<FiniteRing, RingError> {
        if gens.iter().any(|g| !base.contains(*g)) {
            return Err(RingError::ForeignElement);
        }
        for &g in gens {
            if base.elements().any(|r| !base.commute(r, g)) {
                return Err(RingError::Precondition("quotient generators must be central".into()));
            }
        }
        // For central g, Rg is already a two-sided ideal; I is the sum of these.
        let n = base.size();
        let mut ideal = vec![false; n];
        ideal[base.0.zero as usize] = true;
        for &g in gens {
            let mut rg = vec![false; n];
            for r in base.elements() {
                rg[base.mul(r, g).index()] = true;
            }
            let current: Vec<u32> = (0..n as u32).filter(|&i| ideal[i as usize]).collect();
            let multiples: Vec<u32> = (0..n as u32).filter(|&i| rg[i as usize]).collect();
            for &x in &current {
                for &y in &multiples {
                    ideal[base.add_raw(x, y) as usize] = true;
                }
            }
        }
        let ideal: Vec<u32> = (0..n as u32).filter(|&i| ideal[i as usize]).collect();
        let mut class_of = vec![ABSENT; n];
        let mut reps = Vec::with_capacity(n / ideal.len());
        for x in 0..n as u32 {
            if class_of[x as usize] != ABSENT {
                continue;
            }
            let class = reps.len() as u32;
            reps.push(x);
            for &i in &ideal {
                class_of[base.add_raw(x, i) as usize] = class;
            }
        }
        let zero = class_of[base.0.zero as usize];
        let one = class_of[base.0.one as usize];
        Ok(FiniteRing::from_parts(
            reps.len(),
            zero,
            one,
            Construction::Quotient {
                base: base.clone(),
                generators: gens.to_vec(),
            },
            Repr::Quotient {
                base: base.clone(),
                reps,
                class_of,
            },
        ))
    }

    /// The subring `Z[a]` of integer-polynomial values at `a`.
    pub fn subring_generated(&self, base: &FiniteRing, a: Elem) -> Result<FiniteRing, RingError> {
        if !base.contains(a) {
            return Err(RingError::ForeignElement);
        }
        let members = zint_members(base, a);
        let (carrier, position) = embedding(&members);
        let zero = position[base.0.zero as usize];
        let one = position[base.0.one as usize];
        Ok(FiniteRing::from_parts(
            carrier.len(),
            zero,
            one,
            Construction::Subring {
                base: base.clone(),
                generator: a,
            },
            Repr::Embedded {
                base: base.clone(),
                carrier,
                position,
            },
        ))
    }
}

/// Membership flags of `Z[a]`: the additive span of the powers of `a`.
pub fn zint_members(ring: &FiniteRing, a: Elem) -> Vec<bool> {
    let n = ring.size();
    let mut seen_power = vec![false; n];
    let mut powers = Vec::new();
    let mut p = ring.one();
    while !seen_power[p.index()] {
        seen_power[p.index()] = true;
        powers.push(p.index);
        p = ring.mul(p, a);
    }
    let mut members = vec![false; n];
    members[ring.0.zero as usize] = true;
    let mut queue = vec![ring.0.zero];
    while let Some(x) = queue.pop() {
        for &g in &powers {
            let y = ring.add_raw(x, g);
            if !members[y as usize] {
                members[y as usize] = true;
                queue.push(y);
            }
        }
    }
    members
}

fn embedding(members: &[bool]) -> (Vec<u32>, Vec<u32>) {
    let mut position = vec![ABSENT; members.len()];
    let mut carrier = Vec::new();
    for (i, &m) in members.iter().enumerate() {
        if m {
            position[i] = carrier.len() as u32;
            carrier.push(i as u32);
        }
    }
    (carrier, position)
}

fn checked_size(sizes: impl Iterator<Item = usize>, count: usize) -> u128 {
    let mut total: u128 = 1;
    for s in sizes.take(count) {
        total = total.saturating_mul(s as u128);
        if total > u64::MAX as u128 {
            return u128::MAX;
        }
    }
    total
}
