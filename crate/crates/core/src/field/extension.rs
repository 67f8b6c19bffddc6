use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use super::{
    is_prime, multiplicative_order, polystr, prime_divisors, Field, FieldError, FieldSpec,
};

const MAX_ORDER: u64 = 1 << 22;
const ADD_TABLE_LIMIT: u64 = 1024;

/// `GF(p^m)` as `GF(p)[x] / (g)` with `g` the lexicographically first monic
/// irreducible of degree `m` (coefficients compared constant term first).
///
/// Elements are packed as `c_0 + c_1 p + ... + c_{m-1} p^{m-1}`; products go
/// through discrete log tables built from a primitive element.
#[derive(Debug, Clone)]
pub struct ExtensionField {
    spec: FieldSpec,
    p: u32,
    m: u32,
    q: u32,
    modulus: Vec<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
    neg: Vec<u32>,
    add_table: Option<Vec<u32>>,
    zeta: u32,
}

impl ExtensionField {
    pub fn new(spec: FieldSpec) -> Result<Self, FieldError> {
        let p = spec.p.ok_or(FieldError::Parse {
            input: spec.label(),
        })?;
        let m = spec.m.unwrap_or(1);
        let r = spec.r;
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        let q = p
            .checked_pow(m)
            .filter(|&q| q <= MAX_ORDER)
            .ok_or(FieldError::FieldTooLarge(p.saturating_pow(m)))?;
        if r as u64 % p == 0 {
            return Err(FieldError::CharDividesR { p, r });
        }
        if (q - 1) % r as u64 != 0 {
            return Err(FieldError::NoRootOfUnity {
                p,
                q,
                r,
                suggestion: multiplicative_order(p, r as u64),
            });
        }
        let (p32, q32) = (p as u32, q as u32);
        let modulus = first_irreducible(p32, m);
        let mut field = Self {
            spec,
            p: p32,
            m,
            q: q32,
            modulus,
            exp: Vec::new(),
            log: Vec::new(),
            neg: Vec::new(),
            add_table: None,
            zeta: 1,
        };
        field.build_tables();
        let order = q32 - 1;
        field.zeta = lex_order(p32, m)
            .find(|&x| x != 0 && order / gcd(field.log[x as usize], order) == r as u32)
            .expect("r | q - 1 guarantees an element of order r");
        Ok(field)
    }

    /// The monic modulus, constant term first (length `m + 1`).
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn degree(&self) -> u32 {
        self.m
    }

    pub fn prime(&self) -> u32 {
        self.p
    }

    pub(crate) fn with_zeta(mut self, zeta: u32) -> Self {
        self.zeta = zeta;
        self
    }

    /// Coefficient vector (constant term first) of a packed element.
    pub fn digits(&self, mut a: u32) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.m as usize);
        for _ in 0..self.m {
            out.push(a % self.p);
            a /= self.p;
        }
        out
    }

    pub fn pack(&self, digits: &[u32]) -> u32 {
        digits.iter().rev().fold(0, |acc, &d| acc * self.p + d % self.p)
    }

    fn poly_mulmod(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        let p = self.p as u64;
        let m = self.m as usize;
        let mut prod = vec![0u64; 2 * m];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p;
            }
        }
        for k in (m..2 * m).rev() {
            let c = prod[k];
            if c == 0 {
                continue;
            }
            prod[k] = 0;
            for i in 0..m {
                let g = self.modulus[i] as u64;
                prod[k - m + i] = (prod[k - m + i] + (p - c) * g) % p;
            }
        }
        prod[..m].iter().map(|&x| x as u32).collect()
    }

    fn build_tables(&mut self) {
        let q = self.q as usize;
        let order = self.q - 1;
        let factors = prime_divisors(order as u64);
        let one = {
            let mut d = vec![0; self.m as usize];
            d[0] = 1;
            d
        };
        let pow = |field: &Self, base: &[u32], mut e: u64| {
            let mut acc = one.clone();
            let mut b = base.to_vec();
            while e > 0 {
                if e & 1 == 1 {
                    acc = field.poly_mulmod(&acc, &b);
                }
                b = field.poly_mulmod(&b, &b);
                e >>= 1;
            }
            acc
        };
        let generator = lex_order(self.p, self.m)
            .filter(|&x| x != 0)
            .map(|x| self.digits(x))
            .find(|g| {
                factors
                    .iter()
                    .all(|&f| pow(self, g, order as u64 / f) != one)
            })
            .expect("multiplicative group is cyclic");
        let mut exp = Vec::with_capacity(order as usize);
        let mut log = vec![0u32; q];
        let mut cur = one.clone();
        for k in 0..order {
            let packed = self.pack(&cur);
            exp.push(packed);
            log[packed as usize] = k;
            cur = self.poly_mulmod(&cur, &generator);
        }
        self.exp = exp;
        self.log = log;
        self.neg = (0..self.q)
            .map(|a| {
                let d: Vec<u32> = self.digits(a).iter().map(|&c| (self.p - c) % self.p).collect();
                self.pack(&d)
            })
            .collect();
        if (self.q as u64) <= ADD_TABLE_LIMIT {
            let mut table = vec![0u32; q * q];
            for a in 0..self.q {
                for b in 0..self.q {
                    table[(a * self.q + b) as usize] = self.add_digits(a, b);
                }
            }
            self.add_table = Some(table);
        }
    }

    fn add_digits(&self, mut a: u32, mut b: u32) -> u32 {
        let mut out = 0;
        let mut place = 1;
        for _ in 0..self.m {
            let d = (a % self.p + b % self.p) % self.p;
            out += d * place;
            place *= self.p;
            a /= self.p;
            b /= self.p;
        }
        out
    }
}

fn gcd(a: u32, b: u32) -> u32 {
    a.gcd(&b)
}

/// Packed elements of `GF(p^m)` in lexicographic order of their coefficient
/// vectors, constant term most significant.
fn lex_order(p: u32, m: u32) -> impl Iterator<Item = u32> {
    let q = p.pow(m);
    (0..q).map(move |t| {
        // digit j of t (most significant first) is coefficient c_j
        let mut packed = 0;
        let mut rest = t;
        for j in (0..m).rev() {
            let c = rest % p;
            rest /= p;
            packed += c * p.pow(j);
        }
        packed
    })
}

fn poly_rem(num: &[u32], den: &[u32], p: u32) -> Vec<u32> {
    let p64 = p as u64;
    let mut rem: Vec<u64> = num.iter().map(|&x| x as u64).collect();
    let dd = den.len() - 1;
    let lead_inv = mod_inv(den[dd] as u64, p64);
    while rem.len() > dd {
        let top = rem.len() - 1;
        let c = rem[top] * lead_inv % p64;
        if c != 0 {
            for i in 0..=dd {
                let idx = top - dd + i;
                rem[idx] = (rem[idx] + (p64 - c) * den[i] as u64) % p64;
            }
        }
        rem.pop();
    }
    rem.into_iter().map(|x| x as u32).collect()
}

fn mod_inv(a: u64, p: u64) -> u64 {
    let mut acc = 1;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    acc
}

/// Irreducibility by trial division against every monic polynomial of
/// degree `1..=m/2`.
fn is_irreducible(poly: &[u32], p: u32) -> bool {
    let m = poly.len() - 1;
    for d in 1..=m / 2 {
        let count = p.pow(d as u32);
        for t in 0..count {
            let mut div: Vec<u32> = (0..d).map(|j| t / p.pow(j as u32) % p).collect();
            div.push(1);
            if poly_rem(poly, &div, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

fn first_irreducible(p: u32, m: u32) -> Vec<u32> {
    lex_order(p, m)
        .map(|packed| {
            let mut poly: Vec<u32> = (0..m).map(|j| packed / p.pow(j) % p).collect();
            poly.push(1);
            poly
        })
        .find(|poly| is_irreducible(poly, p))
        .expect("irreducible polynomials exist in every degree")
}

impl Field for ExtensionField {
    type Elem = u32;

    fn spec(&self) -> &FieldSpec {
        &self.spec
    }
    #[inline]
    fn zero(&self) -> u32 {
        0
    }
    #[inline]
    fn one(&self) -> u32 {
        1
    }
    #[inline]
    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }
    #[inline]
    fn add(&self, a: &u32, b: &u32) -> u32 {
        match &self.add_table {
            Some(t) => t[(*a * self.q + *b) as usize],
            None => self.add_digits(*a, *b),
        }
    }
    #[inline]
    fn sub(&self, a: &u32, b: &u32) -> u32 {
        self.add(a, &self.neg[*b as usize])
    }
    #[inline]
    fn neg(&self, a: &u32) -> u32 {
        self.neg[*a as usize]
    }
    #[inline]
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        if *a == 0 || *b == 0 {
            return 0;
        }
        let order = self.q - 1;
        let k = self.log[*a as usize] + self.log[*b as usize];
        self.exp[(if k >= order { k - order } else { k }) as usize]
    }
    fn inv(&self, a: &u32) -> Option<u32> {
        if *a == 0 {
            return None;
        }
        let order = self.q - 1;
        let l = self.log[*a as usize];
        Some(self.exp[((order - l) % order) as usize])
    }
    fn from_int(&self, z: i64) -> u32 {
        z.rem_euclid(self.p as i64) as u32
    }
    fn characteristic(&self) -> u64 {
        self.p as u64
    }
    fn cardinality(&self) -> Option<u64> {
        Some(self.q as u64)
    }
    fn zeta(&self) -> &u32 {
        &self.zeta
    }
    fn root_order(&self) -> usize {
        self.spec.r
    }
    fn render(&self, a: &u32) -> String {
        let coeffs: Vec<BigRational> = self
            .digits(*a)
            .into_iter()
            .map(|c| BigRational::from_integer(c.into()))
            .collect();
        polystr::render(&coeffs)
    }
    fn parse_elem(&self, s: &str) -> Result<u32, FieldError> {
        let coeffs = polystr::parse(s)?;
        let p = self.p as i64;
        let mut acc = 0u32;
        let mut power = 1u32;
        // z is the class of x; for m = 1 that is the root -g_0 of the modulus
        let z = if self.m > 1 {
            self.p
        } else {
            (self.p - self.modulus[0]) % self.p
        };
        for c in coeffs {
            let n = (c.numer() % p).to_i64().ok_or_else(|| FieldError::ParseScalar(s.into()))?;
            let d = (c.denom() % p).to_i64().ok_or_else(|| FieldError::ParseScalar(s.into()))?;
            if d.rem_euclid(p) == 0 {
                return Err(FieldError::ParseScalar(s.into()));
            }
            let coef = self.mul(&self.from_int(n), &self.inv(&self.from_int(d)).unwrap());
            if !c.is_zero() {
                acc = self.add(&acc, &self.mul(&coef, &power));
            }
            power = self.mul(&power, &z);
        }
        Ok(acc)
    }
    fn canonicalize(&self, a: &u32) -> u32 {
        self.pack(&self.digits(*a))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::has_exact_order;

    #[test]
    fn gf16_modulus_and_zeta() {
        let f = ExtensionField::new(FieldSpec::extension(2, 4, 5)).unwrap();
        // x^4 + 1 = (x+1)^4 is skipped; x^4 + x^3 + 1 is next in constant-first order
        assert_eq!(f.modulus(), &[1, 0, 0, 1, 1]);
        // enumerate GF(16): exactly four elements of order 5
        let count = (1..16u32).filter(|x| has_exact_order(&f, x, 5)).count();
        assert_eq!(count, 4);
        assert!(has_exact_order(&f, f.zeta(), 5));
        let first = lex_order(2, 4).find(|x| *x != 0 && has_exact_order(&f, x, 5)).unwrap();
        assert_eq!(*f.zeta(), first);
    }

    #[test]
    fn gf16_characteristic_two() {
        let f = ExtensionField::new(FieldSpec::extension(2, 4, 5)).unwrap();
        assert_eq!(f.from_int(2), 0);
        assert_eq!(f.from_int(3), 1);
        for a in 0..16 {
            assert_eq!(f.add(&a, &a), 0);
            if a != 0 {
                assert_eq!(f.mul(&a, &f.inv(&a).unwrap()), 1);
            }
        }
    }

    #[test]
    fn gf9_render_parse() {
        let f = ExtensionField::new(FieldSpec::extension(3, 2, 4)).unwrap();
        for a in 0..9 {
            let s = f.render(&a);
            assert_eq!(f.parse_elem(&s).unwrap(), a, "{s}");
        }
    }

    #[test]
    fn degree_one_extension_is_prime_field() {
        let f = ExtensionField::new(FieldSpec::extension(7, 1, 3)).unwrap();
        assert_eq!(f.modulus(), &[0, 1]);
        assert_eq!(f.mul(&3, &5), 1);
        assert_eq!(f.parse_elem("4").unwrap(), 4);
    }

    #[test]
    fn no_root_suggests_degree() {
        match ExtensionField::new(FieldSpec::extension(2, 2, 5)).unwrap_err() {
            FieldError::NoRootOfUnity { suggestion, q, .. } => {
                assert_eq!(q, 4);
                assert_eq!(suggestion, Some(4));
            }
            e => panic!("{e:?}"),
        }
    }
}
