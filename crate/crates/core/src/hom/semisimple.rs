use serde::Serialize;

use super::{h_algebra, HomError};
use crate::algebra::{AlgebraElt, CycleChoice, GroupAlgebra, Side};
use crate::combinatorics::{
    factorial, klyachko_count, mn_character, permutation_census, ssyt_count, Partition,
};
use crate::field::Field;
use crate::tensor::{Convention, TensorSpace};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MultiplicityRow {
    pub lambda: String,
    /// Standard tableaux of shape `λ` with `maj ≡ 1 (mod r)`.
    pub tableau_count: usize,
    /// Character inner product `⟨χ_{f kΣ_r}, χ^λ⟩`.
    pub computed: String,
    pub agree: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TensorCharacterRow {
    pub class: String,
    pub fixed_words: u128,
    pub n_pow_cycles: u128,
    pub ssyt_sum: i128,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SemisimpleReport {
    pub dim_h_rank: usize,
    pub dim_h_tableaux: usize,
    pub dim_h_permutations: usize,
    pub multiplicities: Vec<MultiplicityRow>,
    pub tensor_character: Vec<TensorCharacterRow>,
}

impl SemisimpleReport {
    pub fn dims_agree(&self) -> bool {
        self.dim_h_rank == self.dim_h_tableaux && self.dim_h_tableaux == self.dim_h_permutations
    }

    pub fn multiplicities_agree(&self) -> bool {
        self.multiplicities.iter().all(|m| m.agree)
    }

    pub fn tensor_character_agrees(&self) -> bool {
        self.tensor_character
            .iter()
            .all(|c| c.fixed_words == c.n_pow_cycles && c.n_pow_cycles as i128 == c.ssyt_sum)
    }

    pub fn passes(&self) -> bool {
        self.dims_agree() && self.multiplicities_agree() && self.tensor_character_agrees()
    }
}

/// Structure of `H = f kΣ_r f` when `kΣ_r` is semisimple, and the
/// decomposition of the tensor-space character for `n` letters.
pub fn semisimple_report<F: Field>(
    alg: &GroupAlgebra<F>,
    f: &AlgebraElt<F::Elem>,
    choice: &CycleChoice,
    n: usize,
) -> Result<SemisimpleReport, HomError> {
    let r = alg.r();
    let field = alg.field();
    let p = field.characteristic();
    if p != 0 && p as usize <= r {
        return Err(HomError::InfeasibleField(format!("characteristic {p} is not larger than r = {r}")));
    }
    let dim_h_rank = h_algebra(alg, f, choice).len();
    let shapes = Partition::all(r);
    let counts: Vec<usize> = shapes.iter().map(|l| klyachko_count(l, r)).collect();
    let dim_h_tableaux = counts.iter().map(|c| c * c).sum();
    let dim_h_permutations = permutation_census(r);

    let chi = alg.ideal_character(f, Side::Right)?;
    let inv_order = field.inv(&field.from_int(factorial(r) as i64)).expect("r! is a unit");
    let multiplicities = shapes
        .iter()
        .zip(&counts)
        .map(|(lambda, &count)| {
            let mut acc = field.zero();
            for (mu, value) in &chi {
                let weight = field.from_int(mu.class_size() as i64 * mn_character(lambda, mu));
                field.add_mul_assign(&mut acc, &weight, value);
            }
            let m = field.mul(&acc, &inv_order);
            MultiplicityRow {
                lambda: lambda.csv_label(),
                tableau_count: count,
                agree: m == field.from_int(count as i64),
                computed: field.render(&m),
            }
        })
        .collect();

    let space = TensorSpace::new(n, r);
    let group = alg.group();
    let tensor_character = group
        .class_representatives()
        .into_iter()
        .map(|t| {
            let tau = group.elem(t);
            let mu = tau.cycle_type();
            let fixed_words = space
                .words()
                .filter(|a| &a.place_permute(tau, Convention::Raw) == a)
                .count() as u128;
            let ssyt_sum = shapes
                .iter()
                .map(|l| ssyt_count(l, n) as i128 * mn_character(l, &mu) as i128)
                .sum();
            TensorCharacterRow {
                class: mu.csv_label(),
                fixed_words,
                n_pow_cycles: (n as u128).pow(tau.num_cycles() as u32),
                ssyt_sum,
            }
        })
        .collect();

    Ok(SemisimpleReport {
        dim_h_rank,
        dim_h_tableaux,
        dim_h_permutations,
        multiplicities,
        tensor_character,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{CyclotomicField, ExtensionField, FieldSpec, PrimeField};

    #[test]
    fn r4_over_q_i() {
        let alg = GroupAlgebra::new(CyclotomicField::new(FieldSpec::cyclotomic(4)).unwrap(), 4);
        let choice = CycleChoice::canonical(4);
        let f = alg.cycle_idempotent(&choice).unwrap();
        let rep = semisimple_report(&alg, &f, &choice, 2).unwrap();
        assert_eq!(rep.dim_h_rank, 2);
        assert!(rep.passes(), "{rep:?}");
        let row22 = rep.multiplicities.iter().find(|m| m.lambda == "2,2").unwrap();
        assert_eq!(row22.computed, "0");
    }

    #[test]
    fn small_characteristic_rejected() {
        let alg = GroupAlgebra::new(PrimeField::new(FieldSpec::prime(3, 2)).unwrap(), 2);
        let choice = CycleChoice::canonical(2);
        let f = alg.cycle_idempotent(&choice).unwrap();
        assert!(semisimple_report(&alg, &f, &choice, 2).is_ok());
        let alg = GroupAlgebra::new(ExtensionField::new(FieldSpec::extension(3, 2, 4)).unwrap(), 4);
        let choice = CycleChoice::canonical(4);
        let f = alg.cycle_idempotent(&choice).unwrap();
        assert!(matches!(
            semisimple_report(&alg, &f, &choice, 2),
            Err(HomError::InfeasibleField(_))
        ));
    }
}
