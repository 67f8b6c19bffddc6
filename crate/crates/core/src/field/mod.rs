//! Exact coefficient fields carrying a distinguished primitive root of unity.
//!
//! Three concrete fields implement [`Field`]: prime fields `GF(p)`, extension
//! fields `GF(p^m)` and the cyclotomic rationals `Q(ζ_r)`. Algorithms in the
//! rest of the crate are generic over [`Field`]; [`FieldCtx`] is the runtime
//! wrapper used at API boundaries (CLI, reports) where the field is chosen by
//! a spec string.

mod ctx;
mod cyclotomic;
mod extension;
mod polystr;
mod prime;
mod spec;

pub use ctx::{FieldCtx, Scalar, ScalarOp, ScalarValue};
pub use cyclotomic::{cyclotomic_polynomial, CycloElem, CyclotomicField};
pub use extension::ExtensionField;
pub use prime::PrimeField;
pub use spec::{FieldKind, FieldSpec};

use std::fmt;

use thiserror::Error;

use crate::linalg::{online_echelon, Echelon, SparseRow};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("malformed field spec {input:?}: expected one of `cyclo:R`, `gf:P`, `gf:P^M`")]
    Parse { input: String },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("characteristic {p} divides r = {r}")]
    CharDividesR { p: u64, r: usize },
    #[error("GF({q}) has no primitive {r}-th root of unity{}", suggestion_text(*.p, *.suggestion))]
    NoRootOfUnity {
        p: u64,
        q: u64,
        r: usize,
        suggestion: Option<u32>,
    },
    #[error("field of order {0} is too large for table arithmetic (limit 2^22)")]
    FieldTooLarge(u64),
    #[error("division by zero")]
    DivideByZero,
    #[error("scalars belong to different fields")]
    CtxMismatch,
    #[error("cannot parse scalar {0:?}")]
    ParseScalar(String),
    #[error("exponent {j} is not coprime to r = {r}")]
    InvalidZetaPower { j: u64, r: usize },
}

fn suggestion_text(p: u64, m: Option<u32>) -> String {
    match m {
        Some(m) => format!("; the smallest extension that works is gf:{p}^{m}"),
        None => String::new(),
    }
}

/// An exact field together with a fixed primitive `r`-th root of unity.
///
/// Elements are plain values; the field object carries the modulus and
/// lookup tables. All operations return canonical representatives, so `==`
/// on elements is field equality.
pub trait Field: Clone + Send + Sync + fmt::Debug {
    type Elem: Clone + PartialEq + Eq + fmt::Debug + Send + Sync;

    fn spec(&self) -> &FieldSpec;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    /// Image of an integer under the unique ring map `Z -> k`.
    fn from_int(&self, z: i64) -> Self::Elem;
    /// 0 for characteristic zero.
    fn characteristic(&self) -> u64;
    /// Number of elements, `None` when infinite.
    fn cardinality(&self) -> Option<u64>;
    fn zeta(&self) -> &Self::Elem;
    /// Multiplicative order of [`Field::zeta`].
    fn root_order(&self) -> usize;
    fn render(&self, a: &Self::Elem) -> String;
    fn parse_elem(&self, s: &str) -> Result<Self::Elem, FieldError>;
    /// Re-derive the canonical representative (identity on canonical input).
    fn canonicalize(&self, a: &Self::Elem) -> Self::Elem;

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// `acc += a * b`.
    fn add_mul_assign(&self, acc: &mut Self::Elem, a: &Self::Elem, b: &Self::Elem) {
        let prod = self.mul(a, b);
        *acc = self.add(acc, &prod);
    }

    /// `acc -= a * b`.
    fn sub_mul_assign(&self, acc: &mut Self::Elem, a: &Self::Elem, b: &Self::Elem) {
        let prod = self.mul(a, b);
        *acc = self.sub(acc, &prod);
    }

    /// Reduced row echelon form of the span of `rows` in `k^cols`.
    ///
    /// Fields override this when a faster exact strategy exists; the result
    /// must be the unique RREF either way.
    fn echelon(&self, cols: usize, rows: &[SparseRow<Self::Elem>]) -> Echelon<Self::Elem> {
        online_echelon(self, cols, rows)
    }
}

/// Multiplicative order of `p` modulo `r`, `None` when `gcd(p, r) != 1`.
pub(crate) fn multiplicative_order(p: u64, r: u64) -> Option<u32> {
    if r == 1 {
        return Some(1);
    }
    if num_integer::gcd(p, r) != 1 {
        return None;
    }
    let mut x = p % r;
    let mut m = 1;
    while x != 1 {
        x = x * (p % r) % r;
        m += 1;
    }
    Some(m)
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Exact order test: `x^r = 1` and `x^(r/q) != 1` for every prime `q | r`.
pub fn has_exact_order<F: Field>(field: &F, x: &F::Elem, r: usize) -> bool {
    let one = field.one();
    if field.pow(x, r as u64) != one {
        return false;
    }
    prime_divisors(r as u64)
        .into_iter()
        .all(|q| field.pow(x, r as u64 / q) != one)
}
