//! Seeded randomized verification of the cubic norm structure axioms.

use rand_chacha::ChaCha8Rng;

use crate::composition::CompDesc;
use crate::error::Result;
use crate::random;
use crate::report::AxiomReport;
use crate::scalars::{vec as v, QElem, Scalar, Q};

use super::basic::EtaleCubic;
use super::desc::{BuiltCns, CnsDesc};
use super::h3::H3;
use super::tensor::cross_t;
use super::{trilinear, Cns};

/// Coefficient bound for random coordinates.
const BOUND: i64 = 4;

fn fmt<S: Scalar>(x: &[S]) -> String {
    format!("{x:?}")
}

fn random_elem<S: Scalar>(dim: usize, gen: &mut impl FnMut() -> S) -> Vec<S> {
    (0..dim).map(|_| gen()).collect()
}

/// Canonical basis vectors and sums of pairs of them. These include elements
/// of low rank in every instance, which random elements almost never are.
fn structured_seeds<S: Scalar>(dim: usize) -> Vec<Vec<S>> {
    let mut out: Vec<Vec<S>> = (0..dim).map(|i| v::unit(dim, i)).collect();
    for i in 0..dim {
        for j in i + 1..dim {
            out.push(v::add(&v::unit(dim, i), &v::unit(dim, j)));
        }
    }
    out
}

/// Runs the full axiom suite on `j`, drawing base scalars from `gen`.
pub fn check_cns<S: Scalar>(j: &dyn Cns<S>, trials: usize, mut gen: impl FnMut() -> S) -> AxiomReport {
    let mut rep = AxiomReport::new(j.label(), trials);
    let dim = j.dim();
    let one = j.identity();
    rep.record("N(1) = 1", j.norm(&one) == S::one(), || fmt(&[j.norm(&one)]));
    rep.record("1# = 1", j.adjoint(&one) == one, || fmt(&j.adjoint(&one)));

    for _ in 0..trials {
        let x = random_elem(dim, &mut gen);
        let y = random_elem(dim, &mut gen);
        let z = random_elem(dim, &mut gen);
        let nx = j.norm(&x);
        let ny = j.norm(&y);
        let xs = j.adjoint(&x);
        let ys = j.adjoint(&y);

        rep.record("(x#)# = N(x)x", j.adjoint(&xs) == v::smul(&nx, &x), || fmt(&x));
        rep.record("(x, x#) = 3N(x)", j.pair(&x, &xs) == nx.scale(&Q::from_integer(3.into())), || fmt(&x));
        let lhs = v::sub(&v::smul(&j.pair(&one, &x), &one), &x);
        rep.record("1 × x = (1,x) - x", j.cross(&one, &x) == lhs, || fmt(&x));
        rep.record("tr(x) = (1,x)", j.trace(&x) == j.pair(&one, &x), || fmt(&x));

        let sum = v::add(&x, &y);
        let pol = nx.add(&j.pair(&xs, &y)).add(&j.pair(&x, &ys)).add(&ny);
        rep.record("N(x+y) polarization", j.norm(&sum) == pol, || format!("{} {}", fmt(&x), fmt(&y)));

        rep.record("(x,y) symmetric", j.pair(&x, &y) == j.pair(&y, &x), || format!("{} {}", fmt(&x), fmt(&y)));
        let t1 = trilinear(j, &x, &y, &z);
        let t2 = trilinear(j, &y, &x, &z);
        let t3 = trilinear(j, &z, &y, &x);
        rep.record("(x, y × z) symmetric", t1 == t2 && t1 == t3, || fmt(&x));

        let uxy = j.u_op(&x, &y);
        rep.record("N(U_x y) = N(x)^2 N(y)", j.norm(&uxy) == nx.sq().mul(&ny), || format!("{} {}", fmt(&x), fmt(&y)));

        let l1 = j.cross(&x, &j.cross(&xs, &y));
        let r1 = v::add(&v::smul(&nx, &y), &v::smul(&j.pair(&x, &y), &xs));
        rep.record("x × (x# × y) = N(x)y + (x,y)x#", l1 == r1, || format!("{} {}", fmt(&x), fmt(&y)));

        let l2 = j.cross(&xs, &j.cross(&x, &y));
        let r2 = v::add(&v::smul(&nx, &y), &v::smul(&j.pair(&xs, &y), &x));
        rep.record("x# × (x × y) = N(x)y + (x#,y)x", l2 == r2, || format!("{} {}", fmt(&x), fmt(&y)));

        let l3 = v::add(&j.adjoint(&j.cross(&x, &y)), &j.cross(&xs, &ys));
        let r3 = v::add(&v::smul(&j.pair(&x, &ys), &x), &v::smul(&j.pair(&xs, &y), &y));
        rep.record("(x×y)# + x#×y# = (x,y#)x + (x#,y)y", l3 == r3, || format!("{} {}", fmt(&x), fmt(&y)));

        if let Some(t) = j.triple_sym(&x, &y, &z) {
            let lhs = j.cross(&x, &j.cross(&y, &z));
            let rhs = v::sub(&v::add(&v::smul(&j.pair(&x, &y), &z), &v::smul(&j.pair(&x, &z), &y)), &t);
            rep.record("x × (y × z) = (x,y)z + (x,z)y - (yxz + zxy)", lhs == rhs, || fmt(&x));
        }
    }

    let seeds = structured_seeds::<S>(dim);
    for k in 0..trials {
        let g = loop {
            let g = random_elem(dim, &mut gen);
            if j.norm(&g).is_unit() {
                break g;
            }
        };
        let x = if k < seeds.len() { seeds[k].clone() } else { random_elem(dim, &mut gen) };
        let r = j.rank(&x);
        let ux = j.u_op(&g, &x);
        rep.record("rank(U_g x) = rank(x) for N(g) a unit", j.rank(&ux) == r, || format!("{} {}", fmt(&g), fmt(&x)));
    }
    rep
}

/// Runs the axiom suite for a descriptor, over `Q` or over its base ring.
pub fn check_desc(desc: &CnsDesc, trials: usize, seed: u64) -> Result<AxiomReport> {
    let mut rng = random::rng(seed);
    Ok(match desc.build()? {
        BuiltCns::Rational(j) => check_cns(j.as_ref(), trials, || random::int(&mut rng, BOUND)),
        BuiltCns::Extended { alg, cns } => {
            let mut rep = check_cns(cns.as_ref(), trials, || random::alg_elem(&mut rng, &alg, BOUND));
            rep.subject = format!("{} over {:?}", rep.subject, alg);
            rep
        }
    })
}

/// Checks `(x ×_T x)# = 4 x# ×_T x#` on `H_3(C) ⊗ T`.
///
/// The identity fails for general `x` (see the tests), so it is checked on
/// pure tensors `U ⊗ λ` in a fixed `T`, and on the rank one elements
/// `X = -Aθ + Bω + A# × B#` of `J ⊗ T` where `T` is the cubic ring of the
/// binary cubic form `n(Ax + By)`.
pub fn check_tensor_cross(comp: &CompDesc, t: &EtaleCubic, trials: usize, seed: u64) -> Result<AxiomReport> {
    let h = H3::new(comp.clone());
    let mut rng: ChaCha8Rng = random::rng(seed);
    let mut rep = AxiomReport::new(format!("{} ⊗ T", Cns::<Q>::label(&h)), trials);
    let hq: &dyn Cns<Q> = &h;
    let he: &dyn Cns<QElem> = &h;
    let four = Q::from_integer(4.into());
    let holds = |t: &EtaleCubic, alg: &std::sync::Arc<crate::scalars::QAlg>, x: &[QElem]| {
        let lhs = he.adjoint(&cross_t(hq, t, alg, x, x));
        let xs = he.adjoint(x);
        lhs == v::qmul(&four, &cross_t(hq, t, alg, &xs, &xs))
    };
    let alg = t.to_alg()?;
    for _ in 0..trials {
        let u = random::int_vec(&mut rng, hq.dim(), BOUND);
        let lam = random::alg_elem(&mut rng, &alg, BOUND);
        let x: Vec<QElem> = u.iter().map(|c| lam.scale(c)).collect();
        rep.record("(x ×_T x)# = 4 x# ×_T x# for x = U ⊗ λ", holds(t, &alg, &x), || fmt(&x));

        let a = random::int_vec(&mut rng, hq.dim(), BOUND);
        let b = random::int_vec(&mut rng, hq.dim(), BOUND);
        let (a_s, b_s) = (hq.adjoint(&a), hq.adjoint(&b));
        let form = [hq.norm(&a), hq.pair(&a_s, &b), hq.pair(&a, &b_s), hq.norm(&b)];
        let tf = EtaleCubic::from_form(&form);
        let af = tf.to_alg()?;
        let (w, th) = (QElem::basis(&af, 1), QElem::basis(&af, 2));
        let c = hq.cross(&a_s, &b_s);
        let x: Vec<QElem> = (0..hq.dim())
            .map(|i| th.scale(&-a[i].clone()).add(&w.scale(&b[i])).add(&QElem::new(&af, vec![c[i].clone(), Q::from_integer(0.into()), Q::from_integer(0.into())])))
            .collect();
        rep.record("X = -Aθ + Bω + A#×B# is rank one", v::is_zero(&he.adjoint(&x)), || fmt(&x));
        rep.record("(X ×_T X)# = 4 X# ×_T X# = 0", holds(&tf, &af, &x), || fmt(&x));
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cns::desc::{CnsVariant, CubicSpec};
    use crate::scalars::qi;

    fn passes(desc: CnsDesc) {
        let rep = check_desc(&desc, 15, 7).unwrap();
        assert!(rep.all_passed(), "{rep:#?}");
    }

    #[test]
    fn trivial_f_passes() {
        passes(CnsDesc::rational(CnsVariant::TrivialF));
    }

    #[test]
    fn fxf_passes() {
        passes(CnsDesc::rational(CnsVariant::Fxf));
    }

    #[test]
    fn cubic_form_algebra_passes() {
        passes(CnsDesc::rational(CnsVariant::EtaleCubic(CubicSpec::form(&[qi(1), qi(0), qi(-2), qi(1)]))));
    }

    #[test]
    fn octonion_h3_passes_general_identities() {
        passes(CnsDesc::rational(CnsVariant::H3 { comp: CompDesc::octonion(-1, -1, -1) }));
    }

    #[test]
    fn base_changed_matrix3_passes() {
        passes(CnsDesc::over(CnsVariant::Matrix3, &[qi(-5), qi(0), qi(1)]));
    }

    #[test]
    fn tensor_cross_identity_fails_for_a_general_element() {
        // J = T = Q^3 split, x = U1 ⊗ e1 + U2 ⊗ e2 with U1 = (1,1,0), U2 = (0,1,1):
        // (x ×_T x)# = 4 (U1 × U2)# ⊗ e3 but 4 x# ×_T x# = 8 (U1# × U2#) ⊗ e3.
        let alg = crate::scalars::QAlg::split(3);
        let t = EtaleCubic::from_alg(&alg).unwrap();
        let j = EtaleCubic::split();
        let e = |i: usize| QElem::basis(&alg, i);
        let x: Vec<QElem> = vec![e(1), e(1).add(&e(2)), e(2)];
        let lhs = Cns::<QElem>::adjoint(&j, &cross_t(&j, &t, &alg, &x, &x));
        let xs = Cns::<QElem>::adjoint(&j, &x);
        let rhs = v::qmul(&qi(4), &cross_t(&j, &t, &alg, &xs, &xs));
        assert_ne!(lhs, rhs);
    }

    #[test]
    fn tensor_cross_identity_holds_where_it_should() {
        let t = EtaleCubic::from_form(&[qi(1), qi(1), qi(-2), qi(-1)]);
        let rep = check_tensor_cross(&CompDesc::quadratic(-1), &t, 5, 3).unwrap();
        assert!(rep.all_passed(), "{rep:#?}");
    }
}
