use num_integer::Integer;

use super::{
    CycloElem, CyclotomicField, ExtensionField, Field, FieldError, FieldKind, FieldSpec,
    PrimeField,
};

/// A field chosen at runtime from a [`FieldSpec`].
#[derive(Debug, Clone)]
pub enum FieldCtx {
    Prime(PrimeField),
    Extension(ExtensionField),
    Cyclotomic(CyclotomicField),
}

/// Runs a generic body against the concrete field inside a [`FieldCtx`].
#[macro_export]
macro_rules! with_field {
    ($ctx:expr, |$f:ident| $body:expr) => {
        match $ctx {
            $crate::field::FieldCtx::Prime($f) => $body,
            $crate::field::FieldCtx::Extension($f) => $body,
            $crate::field::FieldCtx::Cyclotomic($f) => $body,
        }
    };
}

/// A field element tagged with the kind of field it lives in.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Scalar {
    Prime(u32),
    Extension(u32),
    Cyclotomic(CycloElem),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScalarOp {
    Add,
    Sub,
    Mul,
    Div,
    Neg,
    Inv,
    Eq,
    IsZero,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ScalarValue {
    Scalar(Scalar),
    Bool(bool),
}

impl FieldCtx {
    /// Builds the field named by `spec` with its canonical root of unity.
    pub fn build(spec: &FieldSpec) -> Result<Self, FieldError> {
        Ok(match spec.kind {
            FieldKind::Prime => FieldCtx::Prime(PrimeField::new(spec.clone())?),
            FieldKind::Extension => FieldCtx::Extension(ExtensionField::new(spec.clone())?),
            FieldKind::Cyclotomic => FieldCtx::Cyclotomic(CyclotomicField::new(spec.clone())?),
        })
    }

    pub fn parse(input: &str, r: usize) -> Result<Self, FieldError> {
        Self::build(&FieldSpec::parse(input, r)?)
    }

    /// Same field with `ζ` replaced by `ζ^j`; `j` must be prime to `r`.
    pub fn with_zeta_power(self, j: u64) -> Result<Self, FieldError> {
        let r = self.spec().r;
        if j.gcd(&(r as u64)) != 1 {
            return Err(FieldError::InvalidZetaPower { j, r });
        }
        Ok(match self {
            FieldCtx::Prime(f) => {
                let z = f.pow(f.zeta(), j);
                FieldCtx::Prime(f.with_zeta(z))
            }
            FieldCtx::Extension(f) => {
                let z = f.pow(f.zeta(), j);
                FieldCtx::Extension(f.with_zeta(z))
            }
            FieldCtx::Cyclotomic(f) => {
                let z = f.pow(f.zeta(), j);
                FieldCtx::Cyclotomic(f.with_zeta(z))
            }
        })
    }

    pub fn spec(&self) -> &FieldSpec {
        with_field!(self, |f| f.spec())
    }

    pub fn label(&self) -> String {
        self.spec().label()
    }

    /// The defining polynomial, constant term first, rendered as integers.
    pub fn modulus(&self) -> Vec<i64> {
        match self {
            FieldCtx::Prime(f) => vec![f.modulus() as i64],
            FieldCtx::Extension(f) => f.modulus().iter().map(|&c| c as i64).collect(),
            FieldCtx::Cyclotomic(f) => f.modulus().to_vec(),
        }
    }

    pub fn characteristic(&self) -> u64 {
        with_field!(self, |f| f.characteristic())
    }

    pub fn cardinality(&self) -> Option<u64> {
        with_field!(self, |f| f.cardinality())
    }

    pub fn zeta(&self) -> Scalar {
        match self {
            FieldCtx::Prime(f) => Scalar::Prime(*f.zeta()),
            FieldCtx::Extension(f) => Scalar::Extension(*f.zeta()),
            FieldCtx::Cyclotomic(f) => Scalar::Cyclotomic(f.zeta().clone()),
        }
    }

    pub fn r_inverse(&self) -> Scalar {
        let r = self.spec().r as i64;
        self.integer_embed(r)
            .and_then(|x| self.arith(ScalarOp::Inv, &x, None).ok())
            .and_then(|v| match v {
                ScalarValue::Scalar(s) => Some(s),
                ScalarValue::Bool(_) => None,
            })
            .expect("characteristic does not divide r")
    }

    pub fn integer_embed(&self, z: i64) -> Option<Scalar> {
        Some(match self {
            FieldCtx::Prime(f) => Scalar::Prime(f.from_int(z)),
            FieldCtx::Extension(f) => Scalar::Extension(f.from_int(z)),
            FieldCtx::Cyclotomic(f) => Scalar::Cyclotomic(f.from_int(z)),
        })
    }

    pub fn render(&self, a: &Scalar) -> Result<String, FieldError> {
        Ok(match (self, a) {
            (FieldCtx::Prime(f), Scalar::Prime(x)) => f.render(x),
            (FieldCtx::Extension(f), Scalar::Extension(x)) => f.render(x),
            (FieldCtx::Cyclotomic(f), Scalar::Cyclotomic(x)) => f.render(x),
            _ => return Err(FieldError::CtxMismatch),
        })
    }

    pub fn parse_scalar(&self, s: &str) -> Result<Scalar, FieldError> {
        Ok(match self {
            FieldCtx::Prime(f) => Scalar::Prime(f.parse_elem(s)?),
            FieldCtx::Extension(f) => Scalar::Extension(f.parse_elem(s)?),
            FieldCtx::Cyclotomic(f) => Scalar::Cyclotomic(f.parse_elem(s)?),
        })
    }

    pub fn canonicalize(&self, a: &Scalar) -> Result<Scalar, FieldError> {
        Ok(match (self, a) {
            (FieldCtx::Prime(f), Scalar::Prime(x)) => Scalar::Prime(f.canonicalize(x)),
            (FieldCtx::Extension(f), Scalar::Extension(x)) => {
                Scalar::Extension(f.canonicalize(x))
            }
            (FieldCtx::Cyclotomic(f), Scalar::Cyclotomic(x)) => {
                Scalar::Cyclotomic(f.canonicalize(x))
            }
            _ => return Err(FieldError::CtxMismatch),
        })
    }

    /// One arithmetic step; binary operations need `b`.
    pub fn arith(
        &self,
        op: ScalarOp,
        a: &Scalar,
        b: Option<&Scalar>,
    ) -> Result<ScalarValue, FieldError> {
        match self {
            FieldCtx::Prime(f) => {
                let a = unwrap_residue(a, false)?;
                let b = b.map(|b| unwrap_residue(b, false)).transpose()?;
                apply(f, op, &a, b.as_ref()).map(|v| v.map_scalar(Scalar::Prime))
            }
            FieldCtx::Extension(f) => {
                let a = unwrap_residue(a, true)?;
                let b = b.map(|b| unwrap_residue(b, true)).transpose()?;
                apply(f, op, &a, b.as_ref()).map(|v| v.map_scalar(Scalar::Extension))
            }
            FieldCtx::Cyclotomic(f) => {
                let unwrap = |s: &Scalar| match s {
                    Scalar::Cyclotomic(x) => Ok(x.clone()),
                    _ => Err(FieldError::CtxMismatch),
                };
                let a = unwrap(a)?;
                let b = b.map(unwrap).transpose()?;
                apply(f, op, &a, b.as_ref()).map(|v| v.map_scalar(Scalar::Cyclotomic))
            }
        }
    }
}

fn unwrap_residue(s: &Scalar, extension: bool) -> Result<u32, FieldError> {
    match (s, extension) {
        (Scalar::Prime(x), false) | (Scalar::Extension(x), true) => Ok(*x),
        _ => Err(FieldError::CtxMismatch),
    }
}

enum Outcome<E> {
    Elem(E),
    Bool(bool),
}

impl<E> Outcome<E> {
    fn map_scalar(self, wrap: impl FnOnce(E) -> Scalar) -> ScalarValue {
        match self {
            Outcome::Elem(e) => ScalarValue::Scalar(wrap(e)),
            Outcome::Bool(b) => ScalarValue::Bool(b),
        }
    }
}

fn apply<F: Field>(
    f: &F,
    op: ScalarOp,
    a: &F::Elem,
    b: Option<&F::Elem>,
) -> Result<Outcome<F::Elem>, FieldError> {
    let need = || b.ok_or(FieldError::ParseScalar("missing second operand".into()));
    Ok(match op {
        ScalarOp::Add => Outcome::Elem(f.add(a, need()?)),
        ScalarOp::Sub => Outcome::Elem(f.sub(a, need()?)),
        ScalarOp::Mul => Outcome::Elem(f.mul(a, need()?)),
        ScalarOp::Div => Outcome::Elem(f.div(a, need()?).ok_or(FieldError::DivideByZero)?),
        ScalarOp::Neg => Outcome::Elem(f.neg(a)),
        ScalarOp::Inv => Outcome::Elem(f.inv(a).ok_or(FieldError::DivideByZero)?),
        ScalarOp::Eq => Outcome::Bool(a == need()?),
        ScalarOp::IsZero => Outcome::Bool(f.is_zero(a)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn scalar(v: ScalarValue) -> Scalar {
        match v {
            ScalarValue::Scalar(s) => s,
            ScalarValue::Bool(_) => panic!("expected scalar"),
        }
    }

    #[test]
    fn arithmetic_through_ctx() {
        let ctx = FieldCtx::parse("gf:7", 3).unwrap();
        let three = ctx.integer_embed(3).unwrap();
        assert_eq!(
            scalar(ctx.arith(ScalarOp::Inv, &three, None).unwrap()),
            Scalar::Prime(5)
        );
        assert_eq!(ctx.integer_embed(10), Some(Scalar::Prime(3)));
        let zero = ctx.integer_embed(0).unwrap();
        assert_eq!(
            ctx.arith(ScalarOp::Div, &three, Some(&zero)),
            Err(FieldError::DivideByZero)
        );

        let q = FieldCtx::parse("cyclo:4", 4).unwrap();
        let z = q.zeta();
        let zz = scalar(q.arith(ScalarOp::Mul, &z, Some(&z)).unwrap());
        assert_eq!(Some(zz), q.integer_embed(-1));
        assert_eq!(q.modulus(), vec![1, 0, 1]);

        let g16 = FieldCtx::parse("gf:2^4", 5).unwrap();
        assert_eq!(g16.integer_embed(2), Some(Scalar::Extension(0)));
        assert_eq!(
            ctx.arith(ScalarOp::Add, &three, Some(&Scalar::Extension(1))),
            Err(FieldError::CtxMismatch)
        );
    }

    #[test]
    fn r_inverse_times_r_is_one() {
        for (s, r) in [("gf:7", 6), ("gf:3^2", 4), ("cyclo:5", 5)] {
            let ctx = FieldCtx::parse(s, r).unwrap();
            let rr = ctx.integer_embed(r as i64).unwrap();
            let prod = scalar(ctx.arith(ScalarOp::Mul, &ctx.r_inverse(), Some(&rr)).unwrap());
            assert_eq!(Some(prod), ctx.integer_embed(1));
        }
    }

    #[test]
    fn zeta_power_override() {
        let ctx = FieldCtx::parse("gf:13", 4).unwrap();
        let alt = ctx.clone().with_zeta_power(3).unwrap();
        assert_ne!(ctx.zeta(), alt.zeta());
        assert!(matches!(
            ctx.with_zeta_power(2),
            Err(FieldError::InvalidZetaPower { j: 2, r: 4 })
        ));
    }
}
