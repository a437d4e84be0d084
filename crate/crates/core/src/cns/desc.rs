//! Serializable descriptors for cubic norm structures and their elements.
//!
//! A descriptor names a variant and, optionally, a base change to a
//! quotient algebra `Q[x]/(f)`. JSON form:
//! `{"variant":"h3","comp":{"gammas":["-1","-1"]}}`, with an optional
//! `"base":{"modulus":["-5","0","1"]}` (coefficients low degree first).
//!
//! Element coordinates follow the canonical basis of each instance. Over `Q`
//! a coordinate is a rational string; after base change it is an array of
//! rational strings giving the coordinates in `Q[x]/(f)` on `1, x, x^2, ...`.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::composition::CompDesc;
use crate::error::{Error, Result};
use crate::scalars::{q_to_rats, rats_to_q, QAlg, QElem, Rat, Scalar, Q};

use super::basic::{EtaleCubic, FxC, Matrix3, TrivialF};
use super::cayley::CayleyU;
use super::h3::H3;
use super::tits::{JbkPair, TitsU};
use super::{AssocCns, Cns, RankValue};

/// The cubic algebra of an `etale_cubic` descriptor. With neither field the
/// split algebra `F × F × F` in idempotent coordinates is meant.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CubicSpec {
    /// Binary cubic form `[a, b, c, d]`; the algebra has basis `1, ω, θ`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub form: Option<Vec<Rat>>,
    /// Structure table `table[i][j] = e_i e_j`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table: Option<Vec<Vec<Vec<Rat>>>>,
}

/// Shape of the pair `(J, B)` in a Tits descriptor.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum JbkShapeDesc {
    /// `J = H_3(K) ⊂ M_3(K)`.
    Hermitian,
    /// `J = A ⊂ A ⊗ K`.
    Tensor,
}

/// The variants of cubic norm structure.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "variant", rename_all = "snake_case")]
pub enum CnsVariant {
    /// `F` with `N(x) = x^3`.
    TrivialF,
    /// `F × F`.
    Fxf,
    /// A commutative cubic algebra.
    EtaleCubic(CubicSpec),
    /// `F × C` for a composition algebra `C`.
    FxQuaternion {
        /// The composition algebra.
        comp: CompDesc,
    },
    /// `M_3(F)`.
    Matrix3,
    /// `H_3(C)`.
    H3 {
        /// The composition algebra.
        comp: CompDesc,
    },
    /// The second Tits construction `U(S, λ)`.
    TitsU {
        /// Shape of `(J, B)`.
        shape: JbkShapeDesc,
        /// `K = Q[s]/(s^2 - d)`.
        d: Rat,
        /// The commutative algebra `A` for the tensor shape.
        #[serde(default, skip_serializing_if = "Option::is_none")]
        a: Option<Box<CnsVariant>>,
        /// `S ∈ J`.
        s: Vec<Rat>,
        /// `λ ∈ K` as `[x, y]` for `x + y s`.
        lambda: Vec<Rat>,
    },
    /// `U(γ) = H_3(C) ⊕ V_3(C)`.
    CayleyU {
        /// The associative composition algebra.
        comp: CompDesc,
        /// The nonzero parameter.
        gamma: Rat,
    },
}

/// Optional base change.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BaseDesc {
    /// Monic modulus, coefficients low degree first.
    pub modulus: Vec<Rat>,
}

/// A cubic norm structure descriptor.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CnsDesc {
    /// The variant and its parameters.
    #[serde(flatten)]
    pub variant: CnsVariant,
    /// Base change to `Q[x]/(f)`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub base: Option<BaseDesc>,
}

impl CnsDesc {
    /// A descriptor over `Q`.
    pub fn rational(variant: CnsVariant) -> Self {
        CnsDesc { variant, base: None }
    }

    /// The same variant base changed to `Q[x]/(f)`.
    pub fn over(variant: CnsVariant, modulus: &[Q]) -> Self {
        CnsDesc { variant, base: Some(BaseDesc { modulus: q_to_rats(modulus) }) }
    }

    /// Builds the structure.
    pub fn build(&self) -> Result<BuiltCns> {
        match &self.base {
            None => Ok(BuiltCns::Rational(self.variant.build_q()?)),
            Some(b) => {
                let alg = QAlg::from_modulus(&rats_to_q(&b.modulus))?;
                Ok(BuiltCns::Extended { cns: self.variant.build_generic::<QElem>()?, alg })
            }
        }
    }
}

impl CnsVariant {
    /// Builds the structure over `Q`.
    pub fn build_q(&self) -> Result<Box<dyn Cns<Q>>> {
        match self {
            CnsVariant::TitsU { .. } => Ok(Box::new(self.build_tits()?)),
            _ => self.build_generic::<Q>(),
        }
    }

    /// Builds the structure over any scalar ring. The Tits construction is
    /// only available over `Q`.
    pub fn build_generic<S: Scalar>(&self) -> Result<Box<dyn Cns<S>>> {
        Ok(match self {
            CnsVariant::H3 { comp } => Box::new(H3::new(comp.clone())),
            CnsVariant::CayleyU { comp, gamma } => Box::new(CayleyU::new(comp.clone(), gamma.0.clone())?),
            CnsVariant::TitsU { .. } => {
                return Err(Error::Unsupported("the Tits construction is only built over Q".into()))
            }
            CnsVariant::FxQuaternion { comp } => Box::new(FxC::new(comp.clone())),
            _ => {
                let a: Box<dyn AssocCns<S>> = self.build_assoc()?;
                a
            }
        })
    }

    /// Builds an associative structure, or fails for the nonassociative variants.
    pub fn build_assoc<S: Scalar>(&self) -> Result<Box<dyn AssocCns<S>>> {
        Ok(match self {
            CnsVariant::TrivialF => Box::new(TrivialF),
            CnsVariant::Fxf => Box::new(FxC::new(CompDesc::rationals())),
            CnsVariant::EtaleCubic(spec) => Box::new(spec.build()?),
            CnsVariant::FxQuaternion { comp } if comp.is_associative() => Box::new(FxC::new(comp.clone())),
            CnsVariant::Matrix3 => Box::new(Matrix3),
            other => {
                return Err(Error::Unsupported(format!("{} is not an associative cubic norm structure", other.name())))
            }
        })
    }

    /// The pair `(J, B)` of a `tits_u` descriptor.
    pub fn jbk_pair(&self) -> Result<JbkPair> {
        let CnsVariant::TitsU { shape, d, a, .. } = self else {
            return Err(Error::Descriptor("not a tits_u descriptor".into()));
        };
        match shape {
            JbkShapeDesc::Hermitian => JbkPair::hermitian(d.0.clone()),
            JbkShapeDesc::Tensor => {
                let a = a.as_ref().ok_or_else(|| Error::Descriptor("the tensor shape needs \"a\"".into()))?;
                JbkPair::tensor(a.build_assoc::<Q>()?.into_cns(), a.build_assoc::<QElem>()?, d.0.clone())
            }
        }
    }

    /// The Tits construction of a `tits_u` descriptor.
    pub fn build_tits(&self) -> Result<TitsU> {
        let CnsVariant::TitsU { s, lambda, .. } = self else {
            return Err(Error::Descriptor("not a tits_u descriptor".into()));
        };
        let pair = self.jbk_pair()?;
        if lambda.len() != 2 {
            return Err(Error::Descriptor("λ must have two coordinates".into()));
        }
        let pair = Arc::new(pair);
        let lam = QElem::new(pair.k(), rats_to_q(lambda));
        TitsU::new(pair, rats_to_q(s), lam)
    }

    /// Variant name as used in JSON.
    pub fn name(&self) -> &'static str {
        match self {
            CnsVariant::TrivialF => "trivial_f",
            CnsVariant::Fxf => "fxf",
            CnsVariant::EtaleCubic(_) => "etale_cubic",
            CnsVariant::FxQuaternion { .. } => "fx_quaternion",
            CnsVariant::Matrix3 => "matrix3",
            CnsVariant::H3 { .. } => "h3",
            CnsVariant::TitsU { .. } => "tits_u",
            CnsVariant::CayleyU { .. } => "cayley_u",
        }
    }
}

impl CubicSpec {
    /// The split algebra.
    pub fn split() -> Self {
        CubicSpec::default()
    }

    /// The algebra of a binary cubic form.
    pub fn form(f: &[Q; 4]) -> Self {
        CubicSpec { form: Some(q_to_rats(f)), table: None }
    }

    /// Builds the algebra.
    pub fn build(&self) -> Result<EtaleCubic> {
        match (&self.form, &self.table) {
            (Some(_), Some(_)) => Err(Error::Descriptor("give either a form or a table, not both".into())),
            (Some(f), None) => {
                let f = rats_to_q(f);
                let f: [Q; 4] = f.try_into().map_err(|_| Error::Descriptor("a binary cubic form has four coefficients".into()))?;
                Ok(EtaleCubic::from_form(&f))
            }
            (None, Some(t)) => EtaleCubic::from_table(
                t.iter().map(|r| r.iter().map(|c| rats_to_q(c)).collect()).collect(),
            ),
            (None, None) => Ok(EtaleCubic::split()),
        }
    }
}

/// Upcast helper for boxed associative structures.
pub trait IntoCns<S: Scalar> {
    /// The same structure as a plain cubic norm structure.
    fn into_cns(self) -> Box<dyn Cns<S>>;
}

impl<S: Scalar> IntoCns<S> for Box<dyn AssocCns<S>> {
    fn into_cns(self) -> Box<dyn Cns<S>> {
        self
    }
}

/// A built structure, over `Q` or after base change.
#[derive(Debug)]
pub enum BuiltCns {
    /// Over `Q`.
    Rational(Box<dyn Cns<Q>>),
    /// Over `Q[x]/(f)`.
    Extended {
        /// The base ring.
        alg: Arc<QAlg>,
        /// The structure over the base ring.
        cns: Box<dyn Cns<QElem>>,
    },
}

/// A base scalar in JSON form: a rational string over `Q`, or an array of
/// rational coordinates after base change.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ScalarRepr {
    /// A rational.
    Rational(Rat),
    /// Coordinates in the base ring.
    Extended(Vec<Rat>),
}

impl ScalarRepr {
    fn to_q(&self) -> Result<Q> {
        match self {
            ScalarRepr::Rational(r) => Ok(r.0.clone()),
            ScalarRepr::Extended(_) => Err(Error::TypeMismatch("expected a rational coordinate".into())),
        }
    }

    fn to_elem(&self, alg: &Arc<QAlg>) -> Result<QElem> {
        match self {
            ScalarRepr::Rational(r) => Ok(QElem::new(alg, QElem::Const(r.0.clone()).coords_in(alg))),
            ScalarRepr::Extended(c) if c.len() == alg.dim() => Ok(QElem::new(alg, rats_to_q(c))),
            ScalarRepr::Extended(c) => Err(Error::TypeMismatch(format!(
                "base ring coordinates need {} entries, got {}",
                alg.dim(),
                c.len()
            ))),
        }
    }

    fn from_q(x: &Q) -> Self {
        ScalarRepr::Rational(Rat(x.clone()))
    }

    fn from_elem(x: &QElem, alg: &Arc<QAlg>) -> Self {
        ScalarRepr::Extended(q_to_rats(&x.coords_in(alg)))
    }
}

/// An element together with its descriptor.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CnsElement {
    /// The structure.
    pub desc: CnsDesc,
    /// Coordinates on the canonical basis.
    pub coords: Vec<ScalarRepr>,
}

enum Coords {
    Q(Vec<Q>),
    E(Vec<QElem>),
}

impl CnsElement {
    /// Element over `Q`.
    pub fn rational(desc: CnsDesc, coords: &[Q]) -> Self {
        CnsElement { desc, coords: coords.iter().map(ScalarRepr::from_q).collect() }
    }

    fn parse(&self, built: &BuiltCns) -> Result<Coords> {
        let dim = match built {
            BuiltCns::Rational(c) => c.dim(),
            BuiltCns::Extended { cns, .. } => cns.dim(),
        };
        if self.coords.len() != dim {
            return Err(Error::TypeMismatch(format!("expected {dim} coordinates, got {}", self.coords.len())));
        }
        Ok(match built {
            BuiltCns::Rational(_) => Coords::Q(self.coords.iter().map(|c| c.to_q()).collect::<Result<_>>()?),
            BuiltCns::Extended { alg, .. } => {
                Coords::E(self.coords.iter().map(|c| c.to_elem(alg)).collect::<Result<_>>()?)
            }
        })
    }

    fn same_desc(&self, o: &Self) -> Result<()> {
        if self.desc != o.desc {
            return Err(Error::TypeMismatch("elements belong to different structures".into()));
        }
        Ok(())
    }

    fn with_vec(&self, built: &BuiltCns, out: Coords) -> Self {
        let coords = match (built, out) {
            (BuiltCns::Extended { alg, .. }, Coords::E(v)) => v.iter().map(|e| ScalarRepr::from_elem(e, alg)).collect(),
            (_, Coords::Q(v)) => v.iter().map(ScalarRepr::from_q).collect(),
            (_, Coords::E(_)) => unreachable!("extended coordinates come from an extended structure"),
        };
        CnsElement { desc: self.desc.clone(), coords }
    }

    fn unary_scalar(&self, fq: impl Fn(&dyn Cns<Q>, &[Q]) -> Q, fe: impl Fn(&dyn Cns<QElem>, &[QElem]) -> QElem) -> Result<ScalarRepr> {
        let built = self.desc.build()?;
        Ok(match (&built, self.parse(&built)?) {
            (BuiltCns::Rational(c), Coords::Q(x)) => ScalarRepr::from_q(&fq(c.as_ref(), &x)),
            (BuiltCns::Extended { alg, cns }, Coords::E(x)) => ScalarRepr::from_elem(&fe(cns.as_ref(), &x), alg),
            _ => unreachable!("coordinates are parsed for the built structure"),
        })
    }

    fn binary_vec(
        &self,
        o: &Self,
        fq: impl Fn(&dyn Cns<Q>, &[Q], &[Q]) -> Vec<Q>,
        fe: impl Fn(&dyn Cns<QElem>, &[QElem], &[QElem]) -> Vec<QElem>,
    ) -> Result<Self> {
        self.same_desc(o)?;
        let built = self.desc.build()?;
        let out = match (&built, self.parse(&built)?, o.parse(&built)?) {
            (BuiltCns::Rational(c), Coords::Q(x), Coords::Q(y)) => Coords::Q(fq(c.as_ref(), &x, &y)),
            (BuiltCns::Extended { cns, .. }, Coords::E(x), Coords::E(y)) => Coords::E(fe(cns.as_ref(), &x, &y)),
            _ => unreachable!("coordinates are parsed for the built structure"),
        };
        Ok(self.with_vec(&built, out))
    }

    /// The norm.
    pub fn norm(&self) -> Result<ScalarRepr> {
        self.unary_scalar(|c, x| c.norm(x), |c, x| c.norm(x))
    }

    /// The trace.
    pub fn trace(&self) -> Result<ScalarRepr> {
        self.unary_scalar(|c, x| c.trace(x), |c, x| c.trace(x))
    }

    /// The adjoint.
    pub fn adjoint(&self) -> Result<Self> {
        self.binary_vec(self, |c, x, _| c.adjoint(x), |c, x, _| c.adjoint(x))
    }

    /// The cross product with another element of the same structure.
    pub fn cross(&self, o: &Self) -> Result<Self> {
        self.binary_vec(o, |c, x, y| c.cross(x, y), |c, x, y| c.cross(x, y))
    }

    /// `U_x y`.
    pub fn u_op(&self, o: &Self) -> Result<Self> {
        self.binary_vec(o, |c, x, y| c.u_op(x, y), |c, x, y| c.u_op(x, y))
    }

    /// The pairing with another element of the same structure.
    pub fn pair(&self, o: &Self) -> Result<ScalarRepr> {
        self.same_desc(o)?;
        let built = self.desc.build()?;
        Ok(match (&built, self.parse(&built)?, o.parse(&built)?) {
            (BuiltCns::Rational(c), Coords::Q(x), Coords::Q(y)) => ScalarRepr::from_q(&c.pair(&x, &y)),
            (BuiltCns::Extended { alg, cns }, Coords::E(x), Coords::E(y)) => {
                ScalarRepr::from_elem(&cns.pair(&x, &y), alg)
            }
            _ => unreachable!("coordinates are parsed for the built structure"),
        })
    }

    /// The rank.
    pub fn rank(&self) -> Result<RankValue> {
        let built = self.desc.build()?;
        Ok(match (&built, self.parse(&built)?) {
            (BuiltCns::Rational(c), Coords::Q(x)) => c.rank(&x),
            (BuiltCns::Extended { cns, .. }, Coords::E(x)) => cns.rank(&x),
            _ => unreachable!("coordinates are parsed for the built structure"),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::qi;

    #[test]
    fn h3_descriptor_json_round_trip() {
        let d = CnsDesc::rational(CnsVariant::H3 { comp: CompDesc::quaternion(-1, -1) });
        let s = serde_json::to_string(&d).unwrap();
        assert_eq!(s, r#"{"variant":"h3","comp":{"gammas":["-1","-1"]}}"#);
        let back: CnsDesc = serde_json::from_str(&s).unwrap();
        assert_eq!(back, d);
    }

    #[test]
    fn base_change_json_round_trip() {
        let d = CnsDesc::over(CnsVariant::Matrix3, &[qi(-5), qi(0), qi(1)]);
        let s = serde_json::to_string(&d).unwrap();
        let back: CnsDesc = serde_json::from_str(&s).unwrap();
        assert_eq!(back, d);
        assert!(matches!(d.build().unwrap(), BuiltCns::Extended { .. }));
    }

    #[test]
    fn element_operations_over_q() {
        let d = CnsDesc::rational(CnsVariant::Matrix3);
        let x = CnsElement::rational(d.clone(), &[1, 0, 0, 0, 2, 0, 0, 0, 3].map(qi));
        assert_eq!(x.norm().unwrap(), ScalarRepr::Rational(Rat(qi(6))));
        assert_eq!(x.adjoint().unwrap(), CnsElement::rational(d.clone(), &[6, 0, 0, 0, 3, 0, 0, 0, 2].map(qi)));
        assert_eq!(x.rank().unwrap(), 3);
    }

    #[test]
    fn mismatched_descriptors_are_rejected() {
        let x = CnsElement::rational(CnsDesc::rational(CnsVariant::TrivialF), &[qi(1)]);
        let y = CnsElement::rational(CnsDesc::rational(CnsVariant::Fxf), &[qi(1), qi(1)]);
        assert!(matches!(x.cross(&y), Err(Error::TypeMismatch(_))));
    }

    #[test]
    fn octonion_is_not_associative() {
        let v = CnsVariant::FxQuaternion { comp: CompDesc::octonion(-1, -1, -1) };
        assert!(v.build_assoc::<Q>().is_err());
        assert!(v.build_q().is_ok());
    }
}
