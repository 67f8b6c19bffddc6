use serde::Serialize;

use super::{theta_cell, HomError, IdealBlock, ThetaCell};
use crate::algebra::{AlgebraElt, GroupAlgebra};
use crate::field::Field;
use crate::linalg::{intertwiners, sparse_from_dense, HomSpace, Matrix, Subspace};
use crate::tensor::WeightSpace;

/// Pairs `(i, j)` of basis maps whose composites are compared.
const MAX_PAIR_BASIS: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct XiReport {
    pub dim_source: usize,
    pub dim_target: usize,
    pub images_contained: bool,
    pub bijective: bool,
    /// `None` unless source and target weights coincide.
    pub multiplicative: Option<bool>,
    pub pairs_checked: usize,
    pub theta_source: ThetaCell,
    pub theta_target: ThetaCell,
}

impl XiReport {
    pub fn consistent(&self) -> bool {
        self.images_contained
            && self.bijective
            && self.multiplicative != Some(false)
            && self.theta_source.dim_image == self.theta_target.dim_image
            && self.theta_source.surjective == self.theta_target.surjective
    }
}

pub fn corner_hom<F: Field>(
    alg: &GroupAlgebra<F>,
    src: &IdealBlock<F::Elem>,
    dst: &IdealBlock<F::Elem>,
    corner: &[AlgebraElt<F::Elem>],
) -> HomSpace<F::Elem> {
    let sa: Vec<Matrix<F::Elem>> = corner.iter().map(|h| src.action(alg, h)).collect();
    let da: Vec<Matrix<F::Elem>> = corner.iter().map(|h| dst.action(alg, h)).collect();
    intertwiners(alg.field(), &sa, &da, src.dim(), dst.dim())
}

/// The transport `Φ ↦ (v ↦ Φ(v·e)·f)` from `Hom_{eBe}(T_α e, T_β e)` to
/// `Hom_{fBf}(T_α f, T_β f)`, for idempotents with `ef = f` and `fe = e`.
#[allow(clippy::too_many_arguments)]
pub fn xi_transport<F: Field>(
    alg: &GroupAlgebra<F>,
    e: &AlgebraElt<F::Elem>,
    f: &AlgebraElt<F::Elem>,
    e_corner: &[AlgebraElt<F::Elem>],
    f_corner: &[AlgebraElt<F::Elem>],
    src: &WeightSpace,
    dst: &WeightSpace,
) -> Result<XiReport, HomError> {
    if &alg.mul(e, f)? != f || &alg.mul(f, e)? != e {
        return Err(HomError::HypothesisFailure("need e·f = f and f·e = e".into()));
    }
    let ea = IdealBlock::new(alg, src.clone(), e);
    let eb = IdealBlock::new(alg, dst.clone(), e);
    let fa = IdealBlock::new(alg, src.clone(), f);
    let fb = IdealBlock::new(alg, dst.clone(), f);
    let hom_e = corner_hom(alg, &ea, &eb, e_corner);
    let hom_f = corner_hom(alg, &fa, &fb, f_corner);
    let theta_e = theta_cell(alg.field(), &ea, &eb, &hom_e);
    let theta_f = theta_cell(alg.field(), &fa, &fb, &hom_f);
    xi_on_blocks(alg, e, f, [&ea, &eb, &fa, &fb], &hom_e, &hom_f, theta_e, theta_f)
}

/// [`xi_transport`] on prebuilt blocks `[T_α e, T_β e, T_α f, T_β f]`, their
/// corner Hom spaces and restriction cells. The hypotheses are not rechecked.
#[allow(clippy::too_many_arguments)]
pub(crate) fn xi_on_blocks<F: Field>(
    alg: &GroupAlgebra<F>,
    e: &AlgebraElt<F::Elem>,
    f: &AlgebraElt<F::Elem>,
    [ea, eb, fa, fb]: [&IdealBlock<F::Elem>; 4],
    hom_e: &HomSpace<F::Elem>,
    hom_f: &HomSpace<F::Elem>,
    theta_source: ThetaCell,
    theta_target: ThetaCell,
) -> Result<XiReport, HomError> {
    let field = alg.field();
    let into_e = fa.map_to(alg, ea, e).ok_or_else(|| HomError::Internal("T_α f · e ⊄ T_α e".into()))?;
    let into_f = eb.map_to(alg, fb, f).ok_or_else(|| HomError::Internal("T_β e · f ⊄ T_β f".into()))?;
    let xi = |phi: &Matrix<F::Elem>| into_f.mul(field, &phi.mul(field, &into_e));

    let sources = hom_e.matrices(field);
    let images: Vec<Matrix<F::Elem>> = sources.iter().map(xi).collect();
    let span = Subspace::span(
        field,
        fa.dim() * fb.dim(),
        &images.iter().map(|m| sparse_from_dense(field, &m.data)).collect::<Vec<_>>(),
    );
    let images_contained = hom_f.basis.contains(field, &span).unwrap_or(false);
    let bijective = span.dim() == hom_e.dim() && hom_e.dim() == hom_f.dim();

    let (multiplicative, pairs_checked) = if ea.ws.alpha() == eb.ws.alpha() {
        let k = sources.len().min(MAX_PAIR_BASIS);
        let mut ok = true;
        for i in 0..k {
            for j in 0..k {
                let lhs = xi(&sources[i].mul(field, &sources[j]));
                let rhs = images[i].mul(field, &images[j]);
                ok &= lhs == rhs;
            }
        }
        (Some(ok), k * k)
    } else {
        (None, 0)
    };

    Ok(XiReport {
        dim_source: hom_e.dim(),
        dim_target: hom_f.dim(),
        images_contained,
        bijective,
        multiplicative,
        pairs_checked,
        theta_source,
        theta_target,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::CycleChoice;
    use crate::combinatorics::Composition;
    use crate::field::{CyclotomicField, FieldSpec};
    use crate::hom::h_algebra;
    use crate::tensor::TensorSpace;

    #[test]
    fn klyachko_to_cycle() {
        let alg = GroupAlgebra::new(CyclotomicField::new(FieldSpec::cyclotomic(3)).unwrap(), 3);
        let choice = CycleChoice::canonical(3);
        let k = alg.klyachko().unwrap();
        let f = alg.cycle_idempotent(&choice).unwrap();
        let h = h_algebra(&alg, &f, &choice);
        let kbk: Vec<_> = h.iter().map(|x| alg.mul(x, &k).unwrap()).collect();
        let ws = TensorSpace::new(3, 3).weight_space(&Composition::new(vec![1, 1, 1])).unwrap();
        let rep = xi_transport(&alg, &k, &f, &kbk, &h, &ws, &ws).unwrap();
        assert_eq!((rep.dim_source, rep.dim_target), (4, 4));
        assert!(rep.consistent());
        // the same idempotent on both sides gives the identity
        let id = xi_transport(&alg, &f, &f, &h, &h, &ws, &ws).unwrap();
        assert!(id.consistent());
        let e = alg.dsw().unwrap();
        assert!(matches!(
            xi_transport(&alg, &e, &f, &h, &h, &ws, &ws),
            Err(HomError::HypothesisFailure(_))
        ));
    }
}
