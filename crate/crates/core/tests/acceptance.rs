//! Acceptance run: one PASS or FAIL line per criterion, exact comparisons
//! throughout. Exits with status 1 when any criterion fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;
use std::time::{Duration, Instant};

use lifting_laws::cli::{preset, StructureArg};
use lifting_laws::cns::axioms::check_desc;
use lifting_laws::cns::desc::{CnsDesc, CnsVariant, CubicSpec};
use lifting_laws::cns::h3::CMat;
use lifting_laws::cns::tits::JbkPair;
use lifting_laws::cns::{AssocCns, Cns, H3};
use lifting_laws::composition::{comp_axioms_check, nonassociative_triple, CompDesc};
use lifting_laws::freudenthal::assoc::det6;
use lifting_laws::freudenthal::{check_identities, quartic, random_w, rank, HOp, WElem, M2};
use lifting_laws::lifting::law1::{lift_wa_refined, lift_wj};
use lifting_laws::lifting::law2::{bhargava_a1b1, pair_lift_h3, pair_lift_refined, q_disc};
use lifting_laws::lifting::lowrank::{rank2_h3_lift, rank2_w_lift, rank3_w_lift};
use lifting_laws::lifting::second::{find_omega, gan_savin_cns, second_lift, utilde_cns};
use lifting_laws::random;
use lifting_laws::rings_ideals::cubic::{act_pair, basis_change, pair_h3, transport};
use lifting_laws::rings_ideals::quad::{act_cube, m2_const};
use lifting_laws::rings_ideals::{
    balanced_to_cube, balanced_to_pair, cube_to_balanced, equivalence_test_sa, equivalence_test_tc,
    field_invariant_b2, n6, pair_to_balanced,
};
use lifting_laws::scalars::{q, qi, QElem, Scalar, Q};
use lifting_laws::Error;
use rand::Rng;

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn cns(name: &str) -> CnsDesc {
    match preset(name).expect("known preset") {
        StructureArg::Cns(d) => d,
        StructureArg::Comp(_) => panic!("{name} is a composition algebra"),
    }
}

/// One structure per variant kind, plus the octonion Hermitian matrices.
const EIGHT: [&str; 9] = [
    "trivial-f",
    "fxf",
    "cubic-field",
    "fx-quaternion",
    "matrix3",
    "h3-quaternion",
    "h3-octonion",
    "tits-hermitian",
    "cayley-u",
];

fn c1_cns_axioms() -> Outcome {
    let start = Instant::now();
    let mut checks = 0;
    for name in EIGHT {
        let rep = check_desc(&cns(name), 100, 7).map_err(|e| format!("{name}: {e}"))?;
        ensure(rep.all_passed(), || format!("{name}: {:?}", rep.identities.iter().find(|t| t.failed > 0)))?;
        checks += rep.identities.iter().map(|t| t.passed).sum::<usize>();
    }
    let el = start.elapsed();
    ensure(el < Duration::from_secs(60), || format!("took {el:?}"))?;
    Ok(format!("{} structures, {checks} exact checks in {:.1}s", EIGHT.len(), el.as_secs_f64()))
}

fn c2_freudenthal() -> Outcome {
    let mut checks = 0;
    let mut assoc = 0;
    for name in EIGHT {
        let variant = cns(name).variant;
        let rep = check_identities(&variant, 100, 11).map_err(|e| format!("{name}: {e}"))?;
        ensure(rep.all_passed(), || format!("{name}: {:?}", rep.identities.iter().find(|t| t.failed > 0)))?;
        if rep.tally("R(v)² = q(v) 1₂").is_some() {
            assoc += 1;
            let s = rep.tally("S(v) = 0 ⟺ rank(v) ≤ 1").ok_or("missing S(v) tally")?;
            ensure(s.passed == 100, || format!("{name}: S(v) tally {s:?}"))?;
        }
        checks += rep.identities.iter().map(|t| t.passed).sum::<usize>();
    }
    ensure(assoc == 5, || format!("{assoc} associative structures, expected 5"))?;
    Ok(format!("{checks} exact checks, R(v)² and S(v) on {assoc} associative structures"))
}

fn assoc_variants() -> Vec<(&'static str, CnsVariant)> {
    vec![
        ("F", CnsVariant::TrivialF),
        ("F x F", CnsVariant::Fxf),
        ("F^3", CnsVariant::EtaleCubic(CubicSpec::split())),
        ("cubic field", CnsVariant::EtaleCubic(CubicSpec::form(&[qi(1), qi(0), qi(0), qi(-2)]))),
        ("F x H", CnsVariant::FxQuaternion { comp: CompDesc::quaternion(-1, -1) }),
        ("M_3", CnsVariant::Matrix3),
    ]
}

fn random_rank4<R: Rng>(j: &dyn Cns<Q>, rng: &mut R, bound: i64) -> WElem<Q> {
    loop {
        let v = random_w(j.dim(), rng, |r| random::int(r, bound));
        if !quartic(j, &v).is_zero() {
            return v;
        }
    }
}

fn consts(x: &[Q]) -> Vec<QElem> {
    x.iter().map(|t| QElem::Const(t.clone())).collect()
}

fn c3_law_one() -> Outcome {
    let mut rng = random::rng(3);
    let mut n = 0;
    for (name, variant) in assoc_variants() {
        let jq = variant.build_q().map_err(|e| e.to_string())?;
        let a = variant.build_assoc::<QElem>().map_err(|e| e.to_string())?;
        let d = a.dim();
        for _ in 0..50 {
            let v = random_rank4(jq.as_ref(), &mut rng, 2);
            let lift = lift_wj(a.as_ref(), &v).map_err(|e| format!("{name}: {e}"))?;
            ensure(lift.certificate.all_passed(), || format!("{name}: {:?}", lift.certificate.failures()))?;
            let eta = (consts(&random::int_vec(&mut rng, d, 2)), consts(&random::int_vec(&mut rng, d, 2)));
            let ell = (consts(&random::int_vec(&mut rng, d, 2)), consts(&random::int_vec(&mut rng, d, 2)));
            let cert = lift_wa_refined(a.as_ref(), &v, &eta, &ell).map_err(|e| format!("{name}: {e}"))?;
            ensure(cert.all_passed(), || format!("{name}: {:?}", cert.failures()))?;
            n += 1;
        }
    }
    Ok(format!("{n} rank four elements over 6 associative structures"))
}

fn random_pair<R: Rng>(comp: &CompDesc, rng: &mut R) -> (Vec<Q>, Vec<Q>) {
    let n = 3 + 3 * comp.dim();
    loop {
        let (a, b) = (random::int_vec(rng, n, 2), random::int_vec(rng, n, 2));
        if !pair_h3(comp, &a, &b).cubic.q.is_zero() {
            return (a, b);
        }
    }
}

/// Evaluates `x ∈ L` at the three characters `(ω, θ) -> (-d, 0), (d, 0),
/// (0, -d^2)` of the ring of `x^3 - d^2 x y^2`, after checking that they
/// respect its multiplication table `ωθ = 0`, `ω^2 = d^2 + θ`, `θ^2 = -d^2 θ`.
fn characters(x: &QElem, alg: &Arc<lifting_laws::scalars::QAlg>, d: i64) -> [Q; 3] {
    let d = qi(d);
    let d2 = &d * &d;
    let chars = [(-d.clone(), qi(0)), (d.clone(), qi(0)), (qi(0), -d2.clone())];
    for (w, t) in &chars {
        assert!((w * t).is_zero() && w * w == &d2 + t && t * t == -&d2 * t);
    }
    let c = x.coords_in(alg);
    chars.map(|(w, t)| &c[0] + &c[1] * w + &c[2] * t)
}

fn c4_law_two() -> Outcome {
    let mut rng = random::rng(4);
    let mut n = 0;
    for comp in [CompDesc::rationals(), CompDesc::quadratic(-1), CompDesc::quaternion(-1, -1)] {
        for _ in 0..50 {
            let (a, b) = random_pair(&comp, &mut rng);
            let (lift, sr, eps) = pair_lift_h3(&comp, &a, &b).map_err(|e| e.to_string())?;
            ensure(lift.certificate.all_passed(), || format!("{:?}", lift.certificate.failures()))?;
            ensure(sr.certificate.all_passed(), || format!("{:?}", sr.certificate.failures()))?;
            let eps = eps.ok_or("ε missing for Q ≠ 0")?;
            ensure(eps.certificate.all_passed(), || format!("{:?}", eps.certificate.failures()))?;
            let row = random::int_vec(&mut rng, 3 * comp.dim(), 2);
            let cert = pair_lift_refined(&comp, &lift, &eps, &row).map_err(|e| e.to_string())?;
            ensure(cert.all_passed(), || format!("{:?}", cert.failures()))?;
            n += 1;
        }
    }
    let h = H3::new(CompDesc::rationals());
    for d in 1..=3i64 {
        let a = h.diag([qi(1), qi(1), qi(1)]);
        let b = h.diag([qi(d), qi(-d), qi(0)]);
        let (lift, _, _) = pair_lift_h3(&CompDesc::rationals(), &a, &b).map_err(|e| e.to_string())?;
        let d2 = qi(d * d);
        let d4 = &d2 * &d2;
        ensure(lift.cubic.q == qi(4) * &d4 * &d2, || format!("d = {d}: Q = {}", lift.cubic.q))?;
        let alg = &lift.cubic.alg;
        let pattern = |x: &[QElem], w: [i64; 3], s: &Q| {
            (0..3).all(|i| characters(&x[i], alg, d) == [0, 1, 2].map(|k| if k == i { qi(w[i]) * s } else { qi(0) }))
                && x[3..].iter().all(|e| e.is_zero())
        };
        ensure(pattern(&lift.x, [-2, -2, 1], &d2), || format!("d = {d}: X"))?;
        ensure(pattern(&lift.y, [-2, -2, 4], &d4), || format!("d = {d}: Y"))?;
    }
    Ok(format!("{n} random pairs over Q, Q(i), H; d-family exact for d = 1, 2, 3"))
}

/// `(1, 0, c, d)` with `c = diag((D k^2 - d^2)/4, 1, 1)` in `H_3(Q(√D))`,
/// moved by a random word in `n_J` and `n̄_J`; `q = D k^2`.
fn hermitian_rank4<R: Rng>(p: &JbkPair, dd: i64, rng: &mut R) -> WElem<Q> {
    let h = H3::new(CompDesc::quadratic(dd));
    let k = rng.gen_range(1..=2i64);
    let d = rng.gen_range(1..=3i64);
    let c = h.diag([q(dd * k * k - d * d, 4), qi(1), qi(1)]);
    let x = WElem::new(qi(1), vec![qi(0); 9], c, qi(d));
    let word = vec![HOp::NJ(random::int_vec(rng, 9, 1)), HOp::NbarJ(random::int_vec(rng, 9, 1))];
    HOp::apply_word(&word, p.j(), &x).unwrap()
}

fn c5_second_law() -> Outcome {
    let mut rng = random::rng(5);
    let (mut lifts, mut quotients, mut gan_savin) = (0, 0, 0);
    let p = Arc::new(JbkPair::hermitian(qi(-1)).map_err(|e| e.to_string())?);
    for i in 0..25 {
        let x = hermitian_rank4(&p, -1, &mut rng);
        let omega = find_omega(&p, &x).map_err(|e| e.to_string())?;
        let l = second_lift(&p, &x, &omega).map_err(|e| e.to_string())?;
        ensure(l.certificate.all_passed(), || format!("hermitian: {:?}", l.certificate.failures()))?;
        lifts += 1;
        if i < 5 {
            let u = utilde_cns(&p, &x, &omega, 3, i).map_err(|e| e.to_string())?;
            ensure(u.certificate.all_passed(), || format!("Ũ: {:?}", u.certificate.failures()))?;
            quotients += 1;
        }
    }
    for variant in [CnsVariant::EtaleCubic(CubicSpec::split()), CnsVariant::EtaleCubic(CubicSpec::form(&[qi(1), qi(0), qi(0), qi(-2)]))] {
        let jq = variant.build_q().map_err(|e| e.to_string())?;
        for i in 0..25 {
            let x = random_rank4(jq.as_ref(), &mut rng, 2);
            let qv = quartic(jq.as_ref(), &x);
            let p = Arc::new(
                JbkPair::tensor(variant.build_q().unwrap(), variant.build_assoc::<QElem>().unwrap(), qv)
                    .map_err(|e| e.to_string())?,
            );
            let omega = find_omega(&p, &x).map_err(|e| e.to_string())?;
            let l = second_lift(&p, &x, &omega).map_err(|e| e.to_string())?;
            ensure(l.certificate.all_passed(), || format!("tensor: {:?}", l.certificate.failures()))?;
            lifts += 1;
            let (_, cert) = gan_savin_cns(&variant, &x, 3, i).map_err(|e| e.to_string())?;
            ensure(cert.all_passed(), || format!("Gan–Savin: {:?}", cert.failures()))?;
            gan_savin += 1;
            if i < 5 {
                let u = utilde_cns(&p, &x, &omega, 3, i).map_err(|e| e.to_string())?;
                ensure(u.certificate.all_passed(), || format!("Ũ: {:?}", u.certificate.failures()))?;
                quotients += 1;
            }
        }
    }
    Ok(format!("{lifts} second lifts, {quotients} quotients Ũ/I(v, ω), {gan_savin} Gan–Savin structures"))
}

fn outer(comp: &CompDesc, mu: &Q, z: &[Vec<Q>]) -> CMat<Q> {
    let col = CMat::from_entries(3, 1, z.to_vec());
    col.mul(comp, &col.conj_t(comp)).scale(mu)
}

fn c6_low_rank() -> Outcome {
    let mut rng = random::rng(6);
    let comps = [CompDesc::quadratic(-1), CompDesc::quadratic(5), CompDesc::quaternion(-1, 3)];
    let mut done = 0;
    while done < 25 {
        let comp = &comps[done % 3];
        let h = H3::new(comp.clone());
        let z1: Vec<Vec<Q>> = (0..3).map(|_| comp.random_q(&mut rng, 2)).collect();
        let z2: Vec<Vec<Q>> = (0..3).map(|_| comp.random_q(&mut rng, 2)).collect();
        let x = h.from_mat(&outer(comp, &qi(1), &z1).add(&outer(comp, &qi(-3), &z2)));
        if Cns::<Q>::rank(&h, &x) != 2 {
            continue;
        }
        let l = rank2_h3_lift(comp, &x).map_err(|e| e.to_string())?;
        ensure(l.certificate.all_passed(), || format!("rank two in H_3: {:?}", l.certificate.failures()))?;
        done += 1;
    }
    let wcomps = [CompDesc::quadratic(-2), CompDesc::quaternion(-1, -1)];
    let mut w2 = 0;
    while w2 < 25 {
        let comp = &wcomps[w2 % 2];
        let h = H3::new(comp.clone());
        let n = Cns::<Q>::dim(&h);
        let c = random::nonzero_int(&mut rng, 3);
        let x0 = WElem::new(qi(1), vec![qi(0); n], h.diag([c, qi(0), qi(0)]), qi(0));
        let word = vec![HOp::NbarJ(random::int_vec(&mut rng, n, 1)), HOp::NJ(random::int_vec(&mut rng, n, 1))];
        let x = HOp::apply_word(&word, &h, &x0).map_err(|e| e.to_string())?;
        if rank(&h as &dyn Cns<Q>, &x) != 2 {
            continue;
        }
        let l = rank2_w_lift(comp, &x).map_err(|e| e.to_string())?;
        ensure(l.certificate.all_passed(), || format!("rank two in W: {:?}", l.certificate.failures()))?;
        w2 += 1;
    }
    let herm = Arc::new(JbkPair::hermitian(qi(-1)).map_err(|e| e.to_string())?);
    let split = CnsVariant::EtaleCubic(CubicSpec::split());
    let tensor = Arc::new(
        JbkPair::tensor(split.build_q().unwrap(), split.build_assoc::<QElem>().unwrap(), qi(-3)).map_err(|e| e.to_string())?,
    );
    let mut w3 = 0;
    while w3 < 25 {
        let p = if w3 % 2 == 0 { &herm } else { &tensor };
        let n = p.j().dim();
        let (s, t) = (random::nonzero_int(&mut rng, 3), random::nonzero_int(&mut rng, 3));
        let c = if n == 9 {
            H3::new(CompDesc::quadratic(-1)).diag([s, t, qi(0)])
        } else {
            vec![s, t, qi(0)]
        };
        let x0 = WElem::new(qi(1), vec![qi(0); n], c, qi(0));
        let word = vec![HOp::NJ(random::int_vec(&mut rng, n, 1)), HOp::NbarJ(random::int_vec(&mut rng, n, 1))];
        let x = HOp::apply_word(&word, p.j(), &x0).map_err(|e| e.to_string())?;
        if rank(p.j(), &x) != 3 {
            continue;
        }
        let l = rank3_w_lift(p, &x).map_err(|e| e.to_string())?;
        ensure(l.certificate.all_passed(), || format!("rank three: {:?}", l.certificate.failures()))?;
        w3 += 1;
    }
    let mut sharp = 0;
    for _ in 0..10 {
        let x = random_rank4(herm.j(), &mut rng, 2);
        ensure(matches!(rank3_w_lift(&herm, &x), Err(Error::Precondition(_))), || "rank four accepted by the rank three lift".into())?;
        ensure(
            matches!(rank2_w_lift(&CompDesc::quadratic(-1), &x), Err(Error::Precondition(_))),
            || "rank four accepted by the rank two lift".into(),
        )?;
        let hq = H3::new(CompDesc::quadratic(-1));
        let y = random::int_vec(&mut rng, 9, 3);
        if !Cns::<Q>::norm(&hq, &y).is_zero() {
            ensure(matches!(rank2_h3_lift(&hq.comp, &y), Err(Error::Precondition(_))), || "rank three accepted in H_3".into())?;
        }
        sharp += 1;
    }
    Ok(format!("25 + 25 + 25 lifts of ranks 2, 2, 3; preconditions sharp on {sharp} higher rank inputs"))
}

fn random_cube<R: Rng>(a: &dyn AssocCns<QElem>, rng: &mut R) -> WElem<Q> {
    loop {
        let v = random_w(a.dim(), rng, |r| random::int(r, 2));
        let e = v.map(|c| QElem::Const(c.clone()));
        if !quartic(a, &e).is_zero() {
            return v;
        }
    }
}

/// A product of three elementary unipotents with entries in `{-1, 0, 1}^n`.
fn random_sl2_a<R: Rng>(a: &dyn AssocCns<QElem>, rng: &mut R) -> M2<Q> {
    let n = a.dim();
    let mut g = M2::<QElem>::identity(a);
    for _ in 0..3 {
        let t = consts(&random::int_vec(rng, n, 1));
        let z = vec![QElem::zero(); n];
        let e = if rng.gen_bool(0.5) {
            M2::new(a.identity(), t, z, a.identity())
        } else {
            M2::new(a.identity(), z, t, a.identity())
        };
        g = g.mul(a, &e);
    }
    M2 { e: g.e.map(|x| x.iter().map(|c| c.as_q().expect("rational")).collect()) }
}

fn random_sl3<R: Rng>(comp: &CompDesc, rng: &mut R) -> CMat<Q> {
    let mut m = CMat::identity(comp, 3);
    for _ in 0..3 {
        let (i, j) = (rng.gen_range(0..3), rng.gen_range(0..3));
        if i != j {
            let mut e = CMat::identity(comp, 3);
            e.set(i, j, random::int_vec(rng, comp.dim(), 1));
            m = m.mul(comp, &e);
        }
    }
    m
}

fn random_sl2<R: Rng>(rng: &mut R) -> [[Q; 2]; 2] {
    let mut g = [[qi(1), qi(0)], [qi(0), qi(1)]];
    for _ in 0..3 {
        let t = random::int(rng, 2);
        let e = if rng.gen_bool(0.5) { [[qi(1), t], [qi(0), qi(1)]] } else { [[qi(1), qi(0)], [t, qi(1)]] };
        g = [0, 1].map(|i| [0, 1].map(|j| &g[i][0] * &e[0][j] + &g[i][1] * &e[1][j]));
    }
    g
}

fn c7_orbits() -> Outcome {
    let mut rng = random::rng(7);
    let variants: Vec<(&str, Box<dyn AssocCns<QElem>>)> = assoc_variants()
        .into_iter()
        .filter(|(n, _)| *n != "cubic field")
        .map(|(n, v)| (n, v.build_assoc::<QElem>().unwrap()))
        .collect();
    for k in 0..25 {
        let (name, a) = &variants[k % variants.len()];
        let a = a.as_ref();
        let v = random_cube(a, &mut rng);
        let ci = cube_to_balanced(a, &v, 4).map_err(|e| format!("{name}: {e}"))?;
        ensure(ci.certificate.all_passed(), || format!("{name}: {:?}", ci.certificate.failures()))?;
        let (back, cert) = balanced_to_cube(a, &ci.ideal).map_err(|e| format!("{name}: {e}"))?;
        ensure(cert.all_passed() && back == v, || format!("{name}: round trip"))?;
        for _ in 0..10 {
            let g = random_sl2_a(a, &mut rng);
            ensure(det6(a, &m2_const(&g)) == QElem::one(), || format!("{name}: det_6(g) ≠ 1"))?;
            let vg = act_cube(a, &v, &g);
            let moved = ci.ideal.act(a, &g);
            let (w, _) = balanced_to_cube(a, &moved).map_err(|e| format!("{name}: {e}"))?;
            ensure(w == vg, || format!("{name}: v·g differs from the moved data"))?;
            let other = cube_to_balanced(a, &vg, 4).map_err(|e| format!("{name}: {e}"))?;
            ensure(equivalence_test_sa(a, &other.ideal, &moved).is_witness(), || format!("{name}: not equivalent"))?;
        }
    }
    let comps = [CompDesc::rationals(), CompDesc::quadratic(-1), CompDesc::quaternion(-1, -1)];
    let id2 = [[qi(1), qi(0)], [qi(0), qi(1)]];
    for k in 0..25 {
        let comp = &comps[k % 3];
        let (a, b) = random_pair(comp, &mut rng);
        let pi = pair_to_balanced(comp, &a, &b, None, 4).map_err(|e| e.to_string())?;
        ensure(pi.certificate.all_passed(), || format!("{:?}", pi.certificate.failures()))?;
        let (a2, b2, cert) = balanced_to_pair(&pi.ideal).map_err(|e| e.to_string())?;
        ensure(cert.all_passed() && a2 == a && b2 == b, || "pair round trip".into())?;
        for j in 0..10 {
            if j % 2 == 0 {
                let m = random_sl3(comp, &mut rng);
                ensure(n6(comp, &m) == qi(1), || "N_6(m) ≠ 1".into())?;
                let (am, bm) = act_pair(comp, &a, &b, &id2, &m);
                let moved = pi.ideal.act(&m);
                let (a3, b3, _) = balanced_to_pair(&moved).map_err(|e| e.to_string())?;
                ensure(a3 == am && b3 == bm, || "(m*Am, m*Bm) differs from the moved data".into())?;
                let other = pair_to_balanced(comp, &am, &bm, None, 4).map_err(|e| e.to_string())?;
                ensure(equivalence_test_tc(&other.ideal, &moved).is_witness(), || "SL_3 move not equivalent".into())?;
            } else {
                let g = random_sl2(&mut rng);
                let (ag, bg) = act_pair(comp, &a, &b, &g, &CMat::identity(comp, 3));
                let other = pair_to_balanced(comp, &ag, &bg, None, 4).map_err(|e| e.to_string())?;
                let images = basis_change(&pi.ideal.ring, &other.ideal.ring, &g).ok_or("no ring isomorphism")?;
                let back = transport(&other.ideal, &pi.ideal.ring, &images);
                ensure(equivalence_test_tc(&back, &pi.ideal).is_witness(), || "SL_2 move not equivalent".into())?;
            }
        }
    }
    Ok("25 cubes and 25 pairs, 10 group elements each".into())
}

fn c8_invariants() -> Outcome {
    let mut rng = random::rng(8);
    let mut done = 0;
    while done < 25 {
        let f = [0, 1, 2, 3].map(|_| random::int(&mut rng, 5));
        if q_disc(&f).is_zero() {
            continue;
        }
        let (a, b) = bhargava_a1b1(&f);
        let inv = field_invariant_b2(&CompDesc::rationals(), &a, &b).map_err(|e| e.to_string())?;
        ensure(inv.cubic.f == f, || format!("{f:?}: form {:?}", inv.cubic.f))?;
        ensure(inv.mu == QElem::one(), || format!("{f:?}: μ = {:?}", inv.mu))?;
        ensure(inv.certificate.all_passed(), || format!("{f:?}: {:?}", inv.certificate.failures()))?;
        done += 1;
    }
    let oct = CompDesc::octonion(-1, -1, -1);
    let rep = comp_axioms_check(&oct, 100, 8);
    let mult = rep.tally("norm multiplicative").ok_or("missing tally")?;
    ensure(rep.all_passed() && mult.passed == 100, || format!("{rep:?}"))?;
    let triple = nonassociative_triple(&oct).ok_or("no nonassociative triple")?;
    Ok(format!("μ = 1 for 25 forms; octonion norm multiplicative 100/100, nonassociative triple {triple:?}"))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("cubic norm structure axioms", c1_cns_axioms),
        ("Freudenthal identities", c2_freudenthal),
        ("lifting law I", c3_law_one),
        ("lifting law II", c4_law_two),
        ("second lifting law", c5_second_law),
        ("lower rank lifts", c6_low_rank),
        ("orbit round trips", c7_orbits),
        ("known invariants", c8_invariants),
    ];
    let start = Instant::now();
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
        let secs = t.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {} {name}: {detail} [{secs:.1}s]", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {} {name}: {why} [{secs:.1}s]", i + 1);
            }
        }
    }
    let total = start.elapsed();
    println!("total {:.1}s", total.as_secs_f64());
    if failed > 0 || total > Duration::from_secs(600) {
        std::process::exit(1);
    }
}
