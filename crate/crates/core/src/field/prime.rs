use super::{has_exact_order, is_prime, multiplicative_order, Field, FieldError, FieldSpec};

/// `GF(p)` for an odd or even prime `p < 2^31`, elements stored as residues.
#[derive(Debug, Clone)]
pub struct PrimeField {
    spec: FieldSpec,
    p: u64,
    zeta: u32,
}

impl PrimeField {
    pub fn new(spec: FieldSpec) -> Result<Self, FieldError> {
        let p = spec.p.ok_or(FieldError::Parse {
            input: spec.label(),
        })?;
        let r = spec.r;
        Self::check(p, r)?;
        let mut field = Self { spec, p, zeta: 1 };
        // smallest residue of exact order r
        field.zeta = (1..p as u32)
            .find(|&z| has_exact_order(&field, &z, r))
            .expect("r | p - 1 guarantees a primitive root");
        Ok(field)
    }

    /// Bare prime field with `zeta = 1`, for internal modular arithmetic.
    pub(crate) fn raw(p: u64) -> Self {
        Self {
            spec: FieldSpec::prime(p, 1),
            p,
            zeta: 1,
        }
    }

    fn check(p: u64, r: usize) -> Result<(), FieldError> {
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        if p >= 1 << 31 {
            return Err(FieldError::FieldTooLarge(p));
        }
        if r as u64 % p == 0 {
            return Err(FieldError::CharDividesR { p, r });
        }
        if (p - 1) % r as u64 != 0 {
            return Err(FieldError::NoRootOfUnity {
                p,
                q: p,
                r,
                suggestion: multiplicative_order(p, r as u64),
            });
        }
        Ok(())
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub(crate) fn with_zeta(mut self, zeta: u32) -> Self {
        self.zeta = zeta;
        self
    }

}

impl Field for PrimeField {
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
        let s = *a as u64 + *b as u64;
        (if s >= self.p { s - self.p } else { s }) as u32
    }
    #[inline]
    fn sub(&self, a: &u32, b: &u32) -> u32 {
        if a >= b {
            a - b
        } else {
            (*a as u64 + self.p - *b as u64) as u32
        }
    }
    #[inline]
    fn neg(&self, a: &u32) -> u32 {
        if *a == 0 {
            0
        } else {
            (self.p - *a as u64) as u32
        }
    }
    #[inline]
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        (*a as u64 * *b as u64 % self.p) as u32
    }
    fn inv(&self, a: &u32) -> Option<u32> {
        if *a == 0 {
            return None;
        }
        // extended Euclid
        let (mut t, mut new_t) = (0i64, 1i64);
        let (mut r, mut new_r) = (self.p as i64, *a as i64);
        while new_r != 0 {
            let q = r / new_r;
            (t, new_t) = (new_t, t - q * new_t);
            (r, new_r) = (new_r, r - q * new_r);
        }
        Some(t.rem_euclid(self.p as i64) as u32)
    }
    fn from_int(&self, z: i64) -> u32 {
        z.rem_euclid(self.p as i64) as u32
    }
    fn characteristic(&self) -> u64 {
        self.p
    }
    fn cardinality(&self) -> Option<u64> {
        Some(self.p)
    }
    fn zeta(&self) -> &u32 {
        &self.zeta
    }
    fn root_order(&self) -> usize {
        self.spec.r
    }
    fn render(&self, a: &u32) -> String {
        a.to_string()
    }
    fn parse_elem(&self, s: &str) -> Result<u32, FieldError> {
        s.trim()
            .parse::<i64>()
            .map(|z| self.from_int(z))
            .map_err(|_| FieldError::ParseScalar(s.to_string()))
    }
    fn canonicalize(&self, a: &u32) -> u32 {
        (*a as u64 % self.p) as u32
    }
    #[inline]
    fn add_mul_assign(&self, acc: &mut u32, a: &u32, b: &u32) {
        *acc = ((*acc as u64 + *a as u64 * *b as u64) % self.p) as u32;
    }
    #[inline]
    fn sub_mul_assign(&self, acc: &mut u32, a: &u32, b: &u32) {
        let prod = *a as u64 * *b as u64 % self.p;
        *acc = ((*acc as u64 + self.p - prod) % self.p) as u32;
    }
}
