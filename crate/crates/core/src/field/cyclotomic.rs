use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{polystr, Field, FieldError, FieldSpec};
use crate::linalg::{multimodular_echelon, online_echelon, Echelon, SparseRow};

/// Systems with at least this many columns go through the multimodular path.
const MODULAR_MIN_COLS: usize = 48;

/// An element of `Q(ζ_r)`: rational coefficients of a polynomial in `ζ` of
/// degree below `φ(r)`, constant term first.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CycloElem(pub(crate) Vec<BigRational>);

impl CycloElem {
    pub fn coeffs(&self) -> &[BigRational] {
        &self.0
    }
}

/// `Φ_r` with integer coefficients, constant term first, from
/// `x^r - 1 = ∏_{d | r} Φ_d`.
pub fn cyclotomic_polynomial(r: usize) -> Vec<i64> {
    assert!(r >= 1);
    let mut num = vec![0i64; r + 1];
    num[0] = -1;
    num[r] = 1;
    for d in 1..r {
        if r % d == 0 {
            num = exact_div(&num, &cyclotomic_polynomial(d));
        }
    }
    num
}

// Division of integer polynomials by a monic divisor, remainder must vanish.
fn exact_div(num: &[i64], den: &[i64]) -> Vec<i64> {
    let dd = den.len() - 1;
    let mut rem = num.to_vec();
    let mut quot = vec![0i64; num.len() - dd];
    for k in (0..quot.len()).rev() {
        let c = rem[k + dd];
        quot[k] = c;
        for (i, &g) in den.iter().enumerate() {
            rem[k + i] -= c * g;
        }
    }
    debug_assert!(rem.iter().all(|&c| c == 0));
    quot
}

fn euler_phi(r: usize) -> usize {
    (1..=r).filter(|k| k.gcd(&r) == 1).count()
}

/// `Q(ζ_r) = Q[x] / Φ_r` with `ζ = x`.
#[derive(Debug, Clone)]
pub struct CyclotomicField {
    spec: FieldSpec,
    r: usize,
    degree: usize,
    modulus: Vec<i64>,
    // x^(degree + k) mod Φ_r for k in 0..degree - 1
    reduction: Vec<Vec<i64>>,
    zeta: CycloElem,
}

impl CyclotomicField {
    pub fn new(spec: FieldSpec) -> Result<Self, FieldError> {
        let r = spec.r;
        if r == 0 {
            return Err(FieldError::Parse {
                input: spec.label(),
            });
        }
        let modulus = cyclotomic_polynomial(r);
        let degree = modulus.len() - 1;
        debug_assert_eq!(degree, euler_phi(r));
        let mut reduction = Vec::new();
        // x^degree = -(g_0 + ... + g_{degree-1} x^{degree-1})
        let mut cur: Vec<i64> = modulus[..degree].iter().map(|&g| -g).collect();
        for _ in 0..degree.saturating_sub(1) {
            reduction.push(cur.clone());
            let top = cur[degree - 1];
            let mut next = vec![0i64; degree];
            next[1..degree].copy_from_slice(&cur[..degree - 1]);
            for i in 0..degree {
                next[i] -= top * modulus[i];
            }
            cur = next;
        }
        let mut field = Self {
            spec,
            r,
            degree,
            modulus,
            reduction,
            zeta: CycloElem(Vec::new()),
        };
        field.zeta = field.monomial(1);
        Ok(field)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// `Φ_r`, constant term first.
    pub fn modulus(&self) -> &[i64] {
        &self.modulus
    }

    pub(crate) fn with_zeta(mut self, zeta: CycloElem) -> Self {
        self.zeta = zeta;
        self
    }

    /// `x^k` reduced modulo `Φ_r`.
    pub fn monomial(&self, k: usize) -> CycloElem {
        let mut dense = vec![BigRational::zero(); k.max(self.degree) + 1];
        dense[k] = BigRational::one();
        self.reduce_dense(dense)
    }

    pub fn from_coeffs(&self, coeffs: Vec<BigRational>) -> CycloElem {
        self.reduce_dense(coeffs)
    }

    fn reduce_dense(&self, mut dense: Vec<BigRational>) -> CycloElem {
        let d = self.degree;
        // fold high powers down one at a time: x^k = x^(k-d) * x^d
        while dense.len() > d {
            let k = dense.len() - 1;
            let c = dense.pop().unwrap();
            if c.is_zero() {
                continue;
            }
            for (i, &g) in self.modulus[..d].iter().enumerate() {
                if g != 0 {
                    dense[k - d + i] -= &c * BigRational::from_integer(g.into());
                }
            }
        }
        dense.resize(d, BigRational::zero());
        CycloElem(dense)
    }

    /// Direct elimination regardless of size; oracle for the modular path.
    pub fn echelon_direct(
        &self,
        cols: usize,
        rows: &[SparseRow<CycloElem>],
    ) -> Echelon<CycloElem> {
        online_echelon(self, cols, rows)
    }

    /// Largest absolute row sum of the reduction table, plus one; bounds the
    /// growth from reducing a product modulo `Φ_r`.
    pub(crate) fn reduction_growth(&self) -> u64 {
        1 + self
            .reduction
            .iter()
            .map(|row| row.iter().map(|c| c.unsigned_abs()).sum::<u64>())
            .sum::<u64>()
    }
}

fn mul_small(c: &BigRational, g: i64) -> BigRational {
    c * BigRational::from_integer(BigInt::from(g))
}

impl Field for CyclotomicField {
    type Elem = CycloElem;

    fn spec(&self) -> &FieldSpec {
        &self.spec
    }
    fn zero(&self) -> CycloElem {
        CycloElem(vec![BigRational::zero(); self.degree])
    }
    fn one(&self) -> CycloElem {
        let mut v = vec![BigRational::zero(); self.degree];
        v[0] = BigRational::one();
        CycloElem(v)
    }
    fn is_zero(&self, a: &CycloElem) -> bool {
        a.0.iter().all(Zero::is_zero)
    }
    fn add(&self, a: &CycloElem, b: &CycloElem) -> CycloElem {
        CycloElem(a.0.iter().zip(&b.0).map(|(x, y)| x + y).collect())
    }
    fn sub(&self, a: &CycloElem, b: &CycloElem) -> CycloElem {
        CycloElem(a.0.iter().zip(&b.0).map(|(x, y)| x - y).collect())
    }
    fn neg(&self, a: &CycloElem) -> CycloElem {
        CycloElem(a.0.iter().map(|x| -x).collect())
    }
    fn mul(&self, a: &CycloElem, b: &CycloElem) -> CycloElem {
        let d = self.degree;
        let mut prod = vec![BigRational::zero(); 2 * d - 1];
        for (i, x) in a.0.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.0.iter().enumerate() {
                if !y.is_zero() {
                    prod[i + j] += x * y;
                }
            }
        }
        let (low, high) = prod.split_at(d);
        let mut out = low.to_vec();
        for (k, c) in high.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (i, &g) in self.reduction[k].iter().enumerate() {
                if g != 0 {
                    out[i] += mul_small(c, g);
                }
            }
        }
        CycloElem(out)
    }
    fn inv(&self, a: &CycloElem) -> Option<CycloElem> {
        if self.is_zero(a) {
            return None;
        }
        // extended Euclid in Q[x] against Φ_r
        let trim = |mut v: Vec<BigRational>| {
            while v.len() > 1 && v.last().is_some_and(Zero::is_zero) {
                v.pop();
            }
            v
        };
        let mut r0: Vec<BigRational> = self
            .modulus
            .iter()
            .map(|&g| BigRational::from_integer(g.into()))
            .collect();
        let mut r1 = trim(a.0.clone());
        let mut s0: Vec<BigRational> = vec![BigRational::zero()];
        let mut s1: Vec<BigRational> = vec![BigRational::one()];
        while !(r1.len() == 1 && r1[0].is_zero()) {
            let (q, rem) = poly_divmod(&r0, &r1);
            let s2 = trim(poly_sub(&s0, &poly_mul(&q, &s1)));
            r0 = std::mem::replace(&mut r1, trim(rem));
            s0 = std::mem::replace(&mut s1, s2);
        }
        // r0 is a nonzero constant gcd
        let c = r0[0].clone();
        let scaled: Vec<BigRational> = s0.iter().map(|x| x / &c).collect();
        Some(self.reduce_dense(scaled))
    }
    fn from_int(&self, z: i64) -> CycloElem {
        let mut v = vec![BigRational::zero(); self.degree];
        v[0] = BigRational::from_integer(z.into());
        CycloElem(v)
    }
    fn characteristic(&self) -> u64 {
        0
    }
    fn cardinality(&self) -> Option<u64> {
        None
    }
    fn zeta(&self) -> &CycloElem {
        &self.zeta
    }
    fn root_order(&self) -> usize {
        self.r
    }
    fn render(&self, a: &CycloElem) -> String {
        polystr::render(&a.0)
    }
    fn parse_elem(&self, s: &str) -> Result<CycloElem, FieldError> {
        Ok(self.reduce_dense(polystr::parse(s)?))
    }
    fn canonicalize(&self, a: &CycloElem) -> CycloElem {
        // BigRational keeps lowest terms with positive denominator already
        self.reduce_dense(a.0.iter().map(|c| BigRational::new(c.numer().clone(), c.denom().clone())).collect())
    }
    fn add_mul_assign(&self, acc: &mut CycloElem, a: &CycloElem, b: &CycloElem) {
        let prod = self.mul(a, b);
        for (x, y) in acc.0.iter_mut().zip(prod.0) {
            *x += y;
        }
    }
    fn sub_mul_assign(&self, acc: &mut CycloElem, a: &CycloElem, b: &CycloElem) {
        let prod = self.mul(a, b);
        for (x, y) in acc.0.iter_mut().zip(prod.0) {
            *x -= y;
        }
    }
    fn echelon(&self, cols: usize, rows: &[SparseRow<CycloElem>]) -> Echelon<CycloElem> {
        if cols >= MODULAR_MIN_COLS && rows.len() >= 2 {
            multimodular_echelon(self, cols, rows)
        } else {
            online_echelon(self, cols, rows)
        }
    }
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_else(BigRational::zero);
            let y = b.get(i).cloned().unwrap_or_else(BigRational::zero);
            x - y
        })
        .collect()
}

fn poly_divmod(num: &[BigRational], den: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let dd = den.len() - 1;
    if num.len() <= dd {
        return (vec![BigRational::zero()], num.to_vec());
    }
    let mut rem = num.to_vec();
    let mut quot = vec![BigRational::zero(); num.len() - dd];
    let lead = &den[dd];
    for k in (0..quot.len()).rev() {
        let c = &rem[k + dd] / lead;
        if !c.is_zero() {
            for (i, g) in den.iter().enumerate() {
                rem[k + i] -= &c * g;
            }
        }
        quot[k] = c;
    }
    rem.truncate(dd.max(1));
    if dd == 0 {
        rem = vec![BigRational::zero()];
    }
    (quot, rem)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::has_exact_order;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(2), vec![1, 1]);
        assert_eq!(cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_polynomial(5), vec![1; 5]);
        assert_eq!(cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
        for r in 1..=12 {
            assert_eq!(cyclotomic_polynomial(r).len() - 1, euler_phi(r));
        }
    }

    #[test]
    fn zeta_squared_is_minus_one_in_q_i() {
        let f = CyclotomicField::new(FieldSpec::cyclotomic(4)).unwrap();
        assert_eq!(f.mul(f.zeta(), f.zeta()), f.from_int(-1));
        assert!(has_exact_order(&f, f.zeta(), 4));
    }

    #[test]
    fn inverse_and_parse() {
        for r in [3, 5, 6, 7] {
            let f = CyclotomicField::new(FieldSpec::cyclotomic(r)).unwrap();
            assert!(has_exact_order(&f, f.zeta(), r));
            let a = f.parse_elem("1/2-3*z+z^2").unwrap();
            let ai = f.inv(&a).unwrap();
            assert_eq!(f.mul(&a, &ai), f.one());
            assert_eq!(f.parse_elem(&f.render(&ai)).unwrap(), ai);
        }
        let f = CyclotomicField::new(FieldSpec::cyclotomic(3)).unwrap();
        assert_eq!(f.from_int(-2).0, vec![q(-2), q(0)]);
        // z^2 = -1 - z for Φ_3
        assert_eq!(f.parse_elem("z^2").unwrap().0, vec![q(-1), q(-1)]);
        assert_eq!(f.render(&f.monomial(2)), "-1-z");
    }

    #[test]
    fn rational_field_for_r_one_and_two() {
        let f = CyclotomicField::new(FieldSpec::cyclotomic(2)).unwrap();
        assert_eq!(f.degree(), 1);
        assert_eq!(f.zeta(), &f.from_int(-1));
        let g = CyclotomicField::new(FieldSpec::cyclotomic(1)).unwrap();
        assert_eq!(g.zeta(), &g.one());
    }
}
