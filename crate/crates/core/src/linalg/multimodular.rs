//! RREF over `Q(ζ_r)` via reductions modulo primes `p ≡ 1 (mod r)`.
//!
//! For each prime every embedding `ζ ↦ z^e` (`gcd(e, r) = 1`) gives an RREF
//! over `GF(p)`; the φ(r) images of each entry are interpolated back to a
//! polynomial mod `p`, combined across primes by CRT and lifted by rational
//! reconstruction. The lift is accepted only when the product of the primes
//! exceeds twice a bound on the coefficients of `M·N` for the integer-cleared
//! matrix `M` and candidate nullspace `N`. Since `M·N ≡ 0` modulo every prime
//! used, that forces `M·N = 0` over `Q(ζ)`; together with
//! `rank_p(M) ≤ rank_Q(M)` the candidate nullspace is exact, and the RREF is
//! read off from it.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use super::{online_echelon, Echelon, SparseRow};
use crate::field::{CycloElem, CyclotomicField, Field, PrimeField};

type IntPoly = Vec<BigInt>;

struct PrimeData {
    roots: Vec<u64>,
    // inverse Vandermonde: coeffs = inv * values
    inv_vandermonde: Vec<Vec<u64>>,
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powmod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, a, p);
        }
        a = mulmod(a, a, p);
        e >>= 1;
    }
    acc
}

fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for sp in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % sp == 0 {
            return n == sp;
        }
    }
    let (mut d, mut s) = (n - 1, 0);
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
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

/// Primes `p ≡ 1 (mod r)` below `2^31`, descending.
fn primes_for(r: usize) -> impl Iterator<Item = u64> {
    let r = r as u64;
    let top = (1u64 << 31) - 1;
    let start = top - (top - 1) % r;
    (0..)
        .map(move |k| start - k * r)
        .take_while(|&p| p > (1 << 30))
        .filter(|&p| is_prime_u64(p))
}

fn inv_mod(a: u64, p: u64) -> u64 {
    powmod(a, p - 2, p)
}

impl PrimeData {
    fn new(p: u64, r: usize, degree: usize) -> Self {
        let factors = prime_factors(p - 1);
        let g = (2..p)
            .find(|&g| factors.iter().all(|&q| powmod(g, (p - 1) / q, p) != 1))
            .expect("primitive root");
        let z = powmod(g, (p - 1) / r as u64, p);
        let roots: Vec<u64> = (1..=r as u64)
            .filter(|e| e.gcd(&(r as u64)) == 1)
            .map(|e| powmod(z, e, p))
            .collect();
        debug_assert_eq!(roots.len(), degree);
        // invert the Vandermonde matrix V[k][c] = roots[k]^c by Gauss-Jordan
        let d = degree;
        let mut aug: Vec<Vec<u64>> = (0..d)
            .map(|k| {
                let mut row: Vec<u64> = (0..d).map(|c| powmod(roots[k], c as u64, p)).collect();
                row.extend((0..d).map(|j| u64::from(j == k)));
                row
            })
            .collect();
        for col in 0..d {
            let piv = (col..d).find(|&i| aug[i][col] != 0).expect("distinct roots");
            aug.swap(col, piv);
            let inv = inv_mod(aug[col][col], p);
            for x in aug[col].iter_mut() {
                *x = mulmod(*x, inv, p);
            }
            for i in 0..d {
                if i != col && aug[i][col] != 0 {
                    let s = aug[i][col];
                    for j in 0..2 * d {
                        let sub = mulmod(s, aug[col][j], p);
                        aug[i][j] = (aug[i][j] + p - sub) % p;
                    }
                }
            }
        }
        let inv_vandermonde = aug.into_iter().map(|row| row[d..].to_vec()).collect();
        Self {
            roots,
            inv_vandermonde,
        }
    }
}

fn lcm_of_denominators(entries: impl Iterator<Item = BigInt>) -> BigInt {
    entries.fold(BigInt::one(), |acc, d| acc.lcm(&d))
}

/// Scales a row of `Q(ζ)` entries to integer polynomials.
fn clear_row(row: &SparseRow<CycloElem>) -> Vec<(usize, IntPoly)> {
    let l = lcm_of_denominators(row.iter().flat_map(|(_, x)| x.0.iter().map(|c| c.denom().clone())));
    row.iter()
        .map(|(col, x)| {
            let poly = x.0.iter().map(|c| c.numer() * (&l / c.denom())).collect();
            (*col, poly)
        })
        .collect()
}

fn reduce_int(x: &BigInt, p: u64) -> u64 {
    let m = BigInt::from(p);
    let r = x.mod_floor(&m);
    r.to_u64().expect("residue fits")
}

fn bits(x: &BigInt) -> u64 {
    x.bits()
}

/// Result of eliminating one embedding: rank/pivot key plus the free-column
/// entries of each pivot row.
struct Image {
    pivots: Vec<usize>,
    rows: Vec<SparseRow<u32>>,
}

fn eliminate_embedding(p: u64, root: u64, cols: usize, rows: &[Vec<(usize, IntPoly)>]) -> Image {
    let field = PrimeField::raw(p);
    let reduced: Vec<SparseRow<u32>> = rows
        .iter()
        .map(|row| {
            row.iter()
                .filter_map(|(c, poly)| {
                    let mut acc = 0u64;
                    let mut pw = 1u64;
                    for coef in poly {
                        if !coef.is_zero() {
                            acc = (acc + mulmod(reduce_int(coef, p), pw, p)) % p;
                        }
                        pw = mulmod(pw, root, p);
                    }
                    (acc != 0).then_some((*c, acc as u32))
                })
                .collect()
        })
        .collect();
    let ech = online_echelon(&field, cols, &reduced);
    Image {
        pivots: ech.pivots,
        rows: ech.rows,
    }
}

/// Symmetric-range rational reconstruction of `a mod m`.
fn rational_reconstruct(a: &BigInt, m: &BigInt) -> Option<BigRational> {
    let bound = (m / BigInt::from(2)).sqrt();
    let (mut r0, mut r1) = (m.clone(), a.mod_floor(m));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        r0 = std::mem::replace(&mut r1, r2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() || t1.abs() > bound || !t1.gcd(m).is_one() {
        return None;
    }
    Some(BigRational::new(r1, t1))
}

/// Key ordering: higher rank first, then lexicographically smaller pivots.
fn better(a: &[usize], b: &[usize]) -> bool {
    a.len() > b.len() || (a.len() == b.len() && a < b)
}

/// RREF of the row span of `rows` over `Q(ζ_r)`; see the module docs.
pub fn multimodular_echelon(
    field: &CyclotomicField,
    cols: usize,
    rows: &[SparseRow<CycloElem>],
) -> Echelon<CycloElem> {
    let r = field.root_order();
    let degree = field.degree();
    let cleared: Vec<Vec<(usize, IntPoly)>> = rows
        .iter()
        .filter(|row| !row.is_empty())
        .map(clear_row)
        .collect();
    if cleared.is_empty() {
        return Echelon::empty(cols);
    }
    // Σ_k |M̃_ik|_∞ maximised over rows, in bits
    let row_l1_bits = cleared
        .iter()
        .map(|row| {
            let s: BigInt = row
                .iter()
                .map(|(_, poly)| poly.iter().map(|c| c.abs()).max().unwrap_or_default())
                .sum();
            bits(&s)
        })
        .max()
        .unwrap_or(0);
    let growth_bits = 64 - (degree as u64 * field.reduction_growth()).leading_zeros() as u64;

    let mut best: Option<Vec<usize>> = None;
    let mut residues: Vec<Vec<BigInt>> = Vec::new(); // per (row, free col, coeff), flattened per row
    let mut modulus = BigInt::one();
    let mut free_cols: Vec<usize> = Vec::new();
    let mut used = 0usize;

    for p in primes_for(r) {
        let data = PrimeData::new(p, r, degree);
        let images: Vec<Image> = data
            .roots
            .par_iter()
            .map(|&z| eliminate_embedding(p, z, cols, &cleared))
            .collect();
        let key = images
            .iter()
            .map(|im| im.pivots.clone())
            .reduce(|a, b| if better(&b, &a) { b } else { a })
            .unwrap();
        let consistent = images.iter().all(|im| im.pivots == key);
        let reset = best.as_ref().is_none_or(|b| better(&key, b));
        if reset {
            best = Some(key.clone());
            let is_pivot = {
                let mut v = vec![false; cols];
                for &c in &key {
                    v[c] = true;
                }
                v
            };
            free_cols = (0..cols).filter(|&c| !is_pivot[c]).collect();
            residues = vec![vec![BigInt::zero(); free_cols.len() * degree]; key.len()];
            modulus = BigInt::one();
            used = 0;
        }
        if !consistent || best.as_ref() != Some(&key) {
            continue;
        }
        let pivots = key;
        let rank = pivots.len();
        if rank == 0 || free_cols.is_empty() {
            // zero space or full rank: RREF is forced
            return forced_echelon(field, cols, &pivots);
        }
        // values at free columns per embedding, then interpolate
        let free_index: std::collections::HashMap<usize, usize> =
            free_cols.iter().enumerate().map(|(k, &c)| (c, k)).collect();
        let nfree = free_cols.len();
        let mut values = vec![vec![0u64; nfree * degree]; rank];
        for (e, im) in images.iter().enumerate() {
            for (i, row) in im.rows.iter().enumerate() {
                for (c, x) in row.iter().skip(1) {
                    if let Some(&k) = free_index.get(c) {
                        values[i][k * degree + e] = *x as u64;
                    }
                }
            }
        }
        let pbig = BigInt::from(p);
        let inv_m = {
            let m_mod = reduce_int(&modulus, p);
            inv_mod(m_mod, p)
        };
        for i in 0..rank {
            for k in 0..nfree {
                let vals = &values[i][k * degree..(k + 1) * degree];
                for c in 0..degree {
                    let mut coef = 0u64;
                    for (e, &v) in vals.iter().enumerate() {
                        coef = (coef + mulmod(data.inv_vandermonde[c][e], v, p)) % p;
                    }
                    // CRT: x ≡ old (mod modulus), x ≡ coef (mod p)
                    let slot = &mut residues[i][k * degree + c];
                    let old_mod_p = reduce_int(slot, p);
                    let delta = mulmod((coef + p - old_mod_p) % p, inv_m, p);
                    if delta != 0 {
                        *slot += &modulus * BigInt::from(delta);
                    }
                }
            }
        }
        modulus *= &pbig;
        used += 1;
        log::trace!("multimodular: {used} primes, rank {rank}, {} bits", bits(&modulus));

        if let Some(ech) = try_lift(
            field,
            cols,
            &pivots,
            &free_cols,
            &residues,
            &modulus,
            row_l1_bits,
            growth_bits,
        ) {
            return ech;
        }
    }
    unreachable!("ran out of primes below 2^31")
}

fn forced_echelon(field: &CyclotomicField, cols: usize, pivots: &[usize]) -> Echelon<CycloElem> {
    Echelon {
        cols,
        rows: pivots.iter().map(|&p| vec![(p, field.one())]).collect(),
        pivots: pivots.to_vec(),
    }
}

#[allow(clippy::too_many_arguments)]
fn try_lift(
    field: &CyclotomicField,
    cols: usize,
    pivots: &[usize],
    free_cols: &[usize],
    residues: &[Vec<BigInt>],
    modulus: &BigInt,
    row_l1_bits: u64,
    growth_bits: u64,
) -> Option<Echelon<CycloElem>> {
    let degree = field.degree();
    let nfree = free_cols.len();
    let lifted: Vec<Vec<BigRational>> = residues
        .par_iter()
        .map(|row| {
            row.iter()
                .map(|a| rational_reconstruct(a, modulus))
                .collect::<Option<Vec<_>>>()
        })
        .collect::<Option<Vec<_>>>()?;
    // bound on |Ñ_j|_∞ over all free columns j (each N_j cleared separately)
    let mut n_bits = 0u64;
    for k in 0..nfree {
        let den = lcm_of_denominators(
            lifted
                .iter()
                .flat_map(|row| row[k * degree..(k + 1) * degree].iter().map(|c| c.denom().clone())),
        );
        let max_num = lifted
            .iter()
            .flat_map(|row| row[k * degree..(k + 1) * degree].iter())
            .map(|c| (c.numer() * (&den / c.denom())).abs())
            .max()
            .unwrap_or_default()
            .max(den.clone());
        n_bits = n_bits.max(bits(&max_num));
    }
    let bound_bits = row_l1_bits + n_bits + growth_bits + 1;
    if bits(modulus) < bound_bits + 2 {
        return None;
    }
    let rows = lifted
        .into_iter()
        .zip(pivots)
        .map(|(coeffs, &p)| {
            let mut row: SparseRow<CycloElem> = vec![(p, field.one())];
            for (k, &c) in free_cols.iter().enumerate() {
                if c < p {
                    continue;
                }
                let x = CycloElem(coeffs[k * degree..(k + 1) * degree].to_vec());
                if !field.is_zero(&x) {
                    row.push((c, x));
                }
            }
            row.sort_by_key(|(c, _)| *c);
            row
        })
        .collect();
    Some(Echelon {
        cols,
        rows,
        pivots: pivots.to_vec(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;

    #[test]
    fn reconstruction() {
        let m = BigInt::from(1_000_003u64) * BigInt::from(1_000_033u64);
        let x = BigRational::new(BigInt::from(-17), BigInt::from(23));
        // a ≡ -17 * 23^{-1} (mod m)
        let a = {
            let ext = BigInt::from(23).extended_gcd(&m);
            (BigInt::from(-17) * ext.x).mod_floor(&m)
        };
        assert_eq!(rational_reconstruct(&a, &m), Some(x));
    }

    #[test]
    fn primes_are_one_mod_r() {
        for r in [1, 2, 3, 5, 6, 7] {
            let ps: Vec<u64> = primes_for(r).take(3).collect();
            assert_eq!(ps.len(), 3);
            assert!(ps.iter().all(|p| (p - 1) % r as u64 == 0 && *p < 1 << 31));
        }
    }

    #[test]
    fn matches_direct_elimination() {
        for r in [3usize, 4, 5] {
            let f = CyclotomicField::new(FieldSpec::cyclotomic(r)).unwrap();
            // structured rows with rational and root-of-unity entries
            let cols = 12;
            let rows: Vec<SparseRow<CycloElem>> = (0..9)
                .map(|i| {
                    let mut row = Vec::new();
                    for j in 0..cols {
                        if (i * 7 + j * 3) % 5 < 2 || j == i {
                            let s = format!("{}/{}+{}*z^{}", (i as i64 - j as i64), 1 + (i + j) % 4, (i * j) % 3, (i + j) % r);
                            let x = f.parse_elem(&s).unwrap();
                            if !f.is_zero(&x) {
                                row.push((j, x));
                            }
                        }
                    }
                    row
                })
                .collect();
            // add a dependent row
            let mut rows = rows;
            let dep = crate::linalg::normalize_row(
                &f,
                rows[0].iter().cloned().chain(rows[1].iter().map(|(c, x)| (*c, f.mul(x, f.zeta())))).collect(),
            );
            rows.push(dep);
            let direct = f.echelon_direct(cols, &rows);
            let modular = multimodular_echelon(&f, cols, &rows);
            assert_eq!(direct, modular, "r = {r}");
        }
    }
}
