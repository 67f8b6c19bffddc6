use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{AlgebraElt, AlgebraError, GroupAlgebra};
use crate::combinatorics::Permutation;
use crate::field::Field;

/// An `r`-cycle `γ` fixing the cyclic subgroup `Γ = ⟨γ⟩`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleChoice {
    gamma: Permutation,
}

impl CycleChoice {
    pub fn new(gamma: Permutation) -> Result<Self, AlgebraError> {
        if !gamma.is_r_cycle() {
            return Err(AlgebraError::NotAnRCycle);
        }
        Ok(Self { gamma })
    }

    /// `(2, 3, …, r, 1)`.
    pub fn canonical(r: usize) -> Self {
        Self {
            gamma: Permutation::long_cycle(r),
        }
    }

    /// `σ γ σ⁻¹`.
    pub fn conjugate(&self, sigma: &Permutation) -> Self {
        Self {
            gamma: sigma
                .compose_unchecked(&self.gamma)
                .compose_unchecked(&sigma.inverse()),
        }
    }

    pub fn gamma(&self) -> &Permutation {
        &self.gamma
    }

    /// The `σ` with `σ γ₀ σ⁻¹ = γ` for the canonical `γ₀`, read off along
    /// the cycle: `σ(i) = γ^{i−1}(1)`. The identity for the canonical choice.
    pub fn relabeling(&self) -> Permutation {
        let r = self.gamma.r();
        let mut line = Vec::with_capacity(r);
        let mut x = 1;
        for _ in 0..r {
            line.push(x as u8);
            x = self.gamma.apply(x);
        }
        Permutation::new(line).expect("an r-cycle visits every point")
    }

    /// `γ, γ², …, γ^r = id`.
    pub fn powers(&self) -> Vec<Permutation> {
        let mut out = Vec::with_capacity(self.gamma.r());
        let mut acc = self.gamma.clone();
        for _ in 0..self.gamma.r() {
            out.push(acc.clone());
            acc = self.gamma.compose_unchecked(&acc);
        }
        out
    }
}

/// The two Lie idempotents a report can be run with.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum IdempotentKind {
    Dsw,
    Klyachko,
}

impl IdempotentKind {
    pub fn name(self) -> &'static str {
        match self {
            Self::Dsw => "dsw",
            Self::Klyachko => "klyachko",
        }
    }
}

impl fmt::Display for IdempotentKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for IdempotentKind {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "dsw" => Ok(Self::Dsw),
            "klyachko" => Ok(Self::Klyachko),
            _ => Err(format!("unknown idempotent {s:?}: expected dsw or klyachko")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdempotentRelations {
    pub e_squared: bool,
    pub kappa_squared: bool,
    pub f_squared: bool,
    pub e_kappa: bool,
    pub kappa_f: bool,
    pub f_kappa: bool,
}

impl IdempotentRelations {
    pub fn all(&self) -> bool {
        self.named().iter().all(|(_, ok)| *ok)
    }

    pub fn named(&self) -> [(&'static str, bool); 6] {
        [
            ("e*e = e", self.e_squared),
            ("k*k = k", self.kappa_squared),
            ("f*f = f", self.f_squared),
            ("e*k = e", self.e_kappa),
            ("k*f = f", self.kappa_f),
            ("f*k = k", self.f_kappa),
        ]
    }
}

impl<F: Field> GroupAlgebra<F> {
    /// `(1/r)(1 − γ_2)(1 − γ_3)⋯(1 − γ_r)` with `γ_i = (i ⋯ 2 1)`.
    pub fn dsw(&self) -> Result<AlgebraElt<F::Elem>, AlgebraError> {
        let inv_r = self.r_inverse()?;
        let r = self.r();
        let mut acc = self.unit();
        for i in 2..=r {
            let g = Permutation::descending_cycle(r, i).lex_rank();
            let shifted = self.mul_right_index(&acc, g);
            acc = self.sub(&acc, &shifted)?;
        }
        Ok(self.scale(&acc, &inv_r))
    }

    /// `(1/r) Σ_σ ζ^{maj σ} σ`.
    pub fn klyachko(&self) -> Result<AlgebraElt<F::Elem>, AlgebraError> {
        let inv_r = self.r_inverse()?;
        self.check_root()?;
        let r = self.r();
        let field = self.field();
        let zeta_pows: Vec<F::Elem> = (0..r).map(|k| field.pow(field.zeta(), k as u64)).collect();
        let coeffs = self
            .group()
            .elements()
            .iter()
            .map(|s| field.mul(&zeta_pows[s.major_index() % r], &inv_r))
            .collect();
        self.from_coeffs(coeffs)
    }

    /// `(1/r) Σ_{i=1}^r ζ^{−i} γ^i`.
    pub fn cycle_idempotent(&self, choice: &CycleChoice) -> Result<AlgebraElt<F::Elem>, AlgebraError> {
        if choice.gamma().r() != self.r() {
            return Err(AlgebraError::CtxMismatch(choice.gamma().r(), self.r()));
        }
        let inv_r = self.r_inverse()?;
        self.check_root()?;
        let r = self.r();
        let field = self.field();
        let zeta_inv = field.inv(field.zeta()).expect("roots of unity are units");
        let mut x = self.zero();
        for (k, g) in choice.powers().iter().enumerate() {
            let c = field.mul(&field.pow(&zeta_inv, k as u64 + 1), &inv_r);
            x.coeffs[g.lex_rank()] = c;
        }
        debug_assert_eq!(choice.powers().len(), r);
        Ok(x)
    }

    pub fn idempotent(&self, kind: IdempotentKind) -> Result<AlgebraElt<F::Elem>, AlgebraError> {
        match kind {
            IdempotentKind::Dsw => self.dsw(),
            IdempotentKind::Klyachko => self.klyachko(),
        }
    }

    pub fn relations(
        &self,
        e: &AlgebraElt<F::Elem>,
        kappa: &AlgebraElt<F::Elem>,
        f: &AlgebraElt<F::Elem>,
    ) -> Result<IdempotentRelations, AlgebraError> {
        let is = |x: &AlgebraElt<F::Elem>, y: &AlgebraElt<F::Elem>, z: &AlgebraElt<F::Elem>| {
            self.mul(x, y).map(|xy| &xy == z)
        };
        Ok(IdempotentRelations {
            e_squared: is(e, e, e)?,
            kappa_squared: is(kappa, kappa, kappa)?,
            f_squared: is(f, f, f)?,
            e_kappa: is(e, kappa, e)?,
            kappa_f: is(kappa, f, f)?,
            f_kappa: is(f, kappa, kappa)?,
        })
    }
}
