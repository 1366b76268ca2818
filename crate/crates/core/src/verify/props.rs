//! Randomized property checks. Each returns the first counterexample as an error string.

use std::sync::Arc;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::gen;
use crate::algebra::{fourier, inverse_fourier, quotient_at_orbit, CrossedElement, LocallyConstantFn};
use crate::approx::{
    enumerate_components, matrix_unit, matrix_unit_from_generators, refine_embedding, represent, BlockElement,
    ComponentSet, PartitionScheme,
};
use crate::field::{Field, FieldContext, FieldExt};
use crate::matrix::ExactMatrix;
use crate::rank::nilpotency_check;
use crate::series::{
    factor_pure, p_e, p_tinv_e, project_p, special_set_of, SpecialSeries, SpecialTerm, TruncSkewSeries,
};
use crate::space::Clopen;

type Check = Result<(), String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Check {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

pub(super) struct Fixture {
    pub schemes: Vec<Arc<PartitionScheme>>,
    pub sets: Vec<Arc<ComponentSet>>,
}

impl Fixture {
    /// Lamplighter levels 0 and 1 with the given cutoffs.
    pub fn lamplighter(cutoffs: [usize; 2]) -> Result<Self, String> {
        let schemes: Vec<_> = (0..2).map(|n| Arc::new(PartitionScheme::lamplighter(n))).collect();
        let sets = schemes
            .iter()
            .zip(cutoffs)
            .map(|(s, l)| enumerate_components(s, l).map(Arc::new).map_err(err))
            .collect::<Result<_, _>>()?;
        Ok(Fixture { schemes, sets })
    }
}

pub fn matrix_units(rng: &mut ChaCha8Rng, cases: usize) -> Check {
    let k = FieldContext::rational();
    let fx = Fixture::lamplighter([7, 7])?;
    for _ in 0..cases {
        let lvl = rng.gen_range(0..2);
        let cs = &fx.sets[lvl];
        let w = rng.gen_range(0..cs.len());
        let len = cs.components()[w].length;
        let [i, j, t, s] = [0; 4].map(|_| rng.gen_range(0..len));
        let eij = matrix_unit(cs, w, i, j, &k).map_err(err)?;
        let ets = matrix_unit(cs, w, t, s, &k).map_err(err)?;
        let expect = if j == t {
            matrix_unit(cs, w, i, s, &k).map_err(err)?
        } else {
            CrossedElement::zero(cs.scheme().space(), &k)
        };
        ensure(&eij * &ets == expect, || {
            format!("e_{i}{j} e_{t}{s} at component {w}, level {lvl}")
        })?;
        let g = matrix_unit_from_generators(&fx.schemes[lvl], &cs.components()[w].clopen, i as u32, j as u32, &k);
        ensure(g == eij, || {
            format!("generator form of e_{i}{j} at component {w}, level {lvl}")
        })?;
        // Units of distinct components are orthogonal.
        let v = rng.gen_range(0..cs.len());
        if v != w {
            let lv = cs.components()[v].length;
            let evv = matrix_unit(cs, v, rng.gen_range(0..lv), rng.gen_range(0..lv), &k).map_err(err)?;
            ensure((&eij * &evv).is_zero(), || {
                format!("components {w} and {v} are not orthogonal")
            })?;
        }
    }
    Ok(())
}

pub fn pi_homomorphism(rng: &mut ChaCha8Rng, cases: usize) -> Check {
    let k = FieldContext::cyclotomic(4).map_err(err)?;
    let fx = Fixture::lamplighter([7, 7])?;
    for case in 0..cases {
        let lvl = rng.gen_range(0..2);
        let (sc, cs) = (&fx.schemes[lvl], &fx.sets[lvl]);
        let a = gen::scheme_element(rng, sc, &k);
        let b = gen::scheme_element(rng, sc, &k);
        let (pa, pb) = (represent(&a, cs).map_err(err)?, represent(&b, cs).map_err(err)?);
        let pab = represent(&(&a * &b), cs).map_err(err)?;
        ensure(pab == pa.mul(&pb).map_err(err)?, || {
            format!("π(ab) ≠ π(a)π(b), case {case}")
        })?;
        let psum = represent(&(&a + &b), cs).map_err(err)?;
        ensure(psum == pa.add(&pb).map_err(err)?, || {
            format!("π(a+b) ≠ π(a)+π(b), case {case}")
        })?;
        ensure(represent(&a.star(), cs).map_err(err)? == pa.star(), || {
            format!("π(a*) ≠ π(a)*, case {case}")
        })?;
    }
    Ok(())
}

pub fn refinement_diagram(rng: &mut ChaCha8Rng, cases: usize) -> Check {
    let k = FieldContext::rational();
    let coarse = Arc::new(enumerate_components(&Arc::new(PartitionScheme::lamplighter(0)), 12).map_err(err)?);
    let fine = Arc::new(enumerate_components(&Arc::new(PartitionScheme::lamplighter(1)), 8).map_err(err)?);
    for case in 0..cases {
        let a = gen::scheme_element(rng, coarse.scheme(), &k);
        let up = refine_embedding(&coarse, &fine, &represent(&a, &coarse).map_err(err)?).map_err(err)?;
        ensure(up == represent(&a, &fine).map_err(err)?, || {
            format!("j(π₀(a)) ≠ π₁(a), case {case}")
        })?;
    }
    Ok(())
}

pub fn fourier_round_trip(rng: &mut ChaCha8Rng, cases: usize) -> Check {
    let k = FieldContext::cyclotomic(3).map_err(err)?;
    for case in 0..cases {
        let x = gen::group_element(rng, &k);
        let y = gen::group_element(rng, &k);
        let (fx, fy) = (fourier(&x).map_err(err)?, fourier(&y).map_err(err)?);
        ensure(inverse_fourier(&fx).map_err(err)? == x, || {
            format!("F⁻¹F(x) ≠ x, case {case}")
        })?;
        let xy = x.try_mul(&y).map_err(err)?;
        ensure(fourier(&xy).map_err(err)? == &fx * &fy, || {
            format!("F(xy) ≠ F(x)F(y), case {case}")
        })?;
        ensure(fourier(&x.star()).map_err(err)? == fx.star(), || {
            format!("F(x*) ≠ F(x)*, case {case}")
        })?;
        let a = gen::crossed(rng, &k);
        let back = fourier(&inverse_fourier(&a).map_err(err)?).map_err(err)?;
        ensure(back == a, || format!("FF⁻¹(a) ≠ a, case {case}"))?;
    }
    Ok(())
}

fn upper_block(x: &BlockElement, z: Option<&BlockElement>, y: &BlockElement, k: &Field) -> BlockElement {
    let blocks = (0..x.components().len())
        .map(|w| {
            let (a, b) = (x.block(w), y.block(w));
            let n = a.rows();
            let mut m = ExactMatrix::block_diag(&[a.clone(), b.clone()], k);
            if let Some(z) = z {
                let c = z.block(w);
                for i in 0..n {
                    for j in 0..n {
                        m.set(i, n + j, c.get(i, j).clone());
                    }
                }
            }
            m
        })
        .collect();
    BlockElement::new(x.components().clone(), 2, k, blocks).expect("shapes match")
}

pub fn rank_axioms(rng: &mut ChaCha8Rng, cases: usize) -> Check {
    let fields = [
        FieldContext::rational(),
        FieldContext::prime(5).map_err(err)?,
        FieldContext::cyclotomic(4).map_err(err)?,
    ];
    let fx = Fixture::lamplighter([5, 5])?;
    let ident = |cs: &Arc<ComponentSet>, k: &Field| BlockElement::identity(cs.clone(), 1, k).truncated_rank();
    for case in 0..cases {
        let k = &fields[case % fields.len()];
        let cs = &fx.sets[rng.gen_range(0..2)];
        let x = gen::block_element(rng, cs, 1, k);
        let y = gen::block_element(rng, cs, 1, k);
        let z = gen::block_element(rng, cs, 1, k);
        let (rx, ry) = (x.truncated_rank(), y.truncated_rank());
        let fail = |what: &str| format!("{what}, case {case}");
        ensure(ident(cs, k) == *cs.covered_mass(), || fail("rk(1) ≠ covered mass"))?;
        let rxy = x.mul(&y).map_err(err)?.truncated_rank();
        ensure(rxy <= rx && rxy <= ry, || fail("rk(xy) > min(rk x, rk y)"))?;
        ensure(x.add(&y).map_err(err)?.truncated_rank() <= &rx + &ry, || {
            fail("rk(x+y) > rk x + rk y")
        })?;
        ensure(x.star().truncated_rank() == rx, || fail("rk(x*) ≠ rk x"))?;
        ensure(upper_block(&x, None, &y, k).truncated_rank() == &rx + &ry, || {
            fail("rk diag(x, y) ≠ rk x + rk y")
        })?;
        ensure(upper_block(&x, Some(&z), &y, k).truncated_rank() >= &rx + &ry, || {
            fail("rk [[x, z], [0, y]] < rk x + rk y")
        })?;
    }
    Ok(())
}

/// b₀ with nonzero values on [0, 1] and later coefficients built from powers of s.
fn invertible_series(
    rng: &mut ChaCha8Rng,
    sc: &Arc<PartitionScheme>,
    k: &Field,
    l: usize,
) -> Result<TruncSkewSeries, String> {
    let space = sc.space();
    let vals = [[0u8, 0], [0, 1], [1, 0], [1, 1]].map(|w| {
        let mut v = k.random(rng, 3);
        while v.is_zero() {
            v = k.random(rng, 3);
        }
        (w.to_vec(), v)
    });
    let mut coeffs = vec![LocallyConstantFn::from_words(space, k, 0, 2, vals)];
    let s = TruncSkewSeries::s(sc.clone(), k, l);
    let mut pw = TruncSkewSeries::one(sc.clone(), k, l);
    for d in 1..=l {
        pw = pw.mul(&s).map_err(err)?;
        let z = Clopen::cylinder(space, rng.gen_range(-1..2), &[rng.gen_range(0..2)]).map_err(err)?;
        let f = LocallyConstantFn::scaled_indicator(&z, k.random(rng, 2));
        coeffs.push(f.try_mul(pw.coeff(d)).map_err(err)?);
    }
    TruncSkewSeries::new(sc.clone(), k, l, coeffs).map_err(err)
}

pub fn invert_round_trip(rng: &mut ChaCha8Rng, cases: usize) -> Check {
    let k = FieldContext::rational();
    let schemes = [
        Arc::new(PartitionScheme::lamplighter(0)),
        Arc::new(PartitionScheme::lamplighter(1)),
    ];
    for case in 0..cases {
        let sc = &schemes[case % 2];
        let l = rng.gen_range(1..=6);
        let x = invertible_series(rng, sc, &k, l)?;
        let y = x.invert().map_err(err)?;
        let one = TruncSkewSeries::one(sc.clone(), &k, l);
        ensure(x.mul(&y).map_err(err)? == one, || {
            format!("x x⁻¹ ≠ 1 to order {l}, case {case}")
        })?;
        ensure(y.mul(&x).map_err(err)? == one, || {
            format!("x⁻¹ x ≠ 1 to order {l}, case {case}")
        })?;
    }
    Ok(())
}

fn random_special(rng: &mut ChaCha8Rng, cs: &Arc<ComponentSet>, k: &Field) -> SpecialSeries {
    let density = rng.gen_range(0.2..1.0);
    let coeffs = (0..cs.len())
        .map(|_| {
            if rng.gen_bool(density) {
                k.random(rng, 3)
            } else {
                k.zero()
            }
        })
        .collect();
    SpecialSeries::new(cs.clone(), k, coeffs).expect("lengths match")
}

pub fn projection(rng: &mut ChaCha8Rng, cases: usize) -> Check {
    let k = FieldContext::rational();
    let fx = Fixture::lamplighter([8, 8])?;
    for (sc, cs) in fx.schemes.iter().zip(&fx.sets) {
        let u = TruncSkewSeries::u(sc.clone(), &k, cs.cutoff() - 1);
        ensure(
            project_p(&u, cs).map_err(err)? == SpecialSeries::e(cs.clone(), &k),
            || "P(u) ≠ e".into(),
        )?;
    }
    for case in 0..cases {
        let cs = &fx.sets[case % 2];
        let a = random_special(rng, cs, &k);
        let x = a.to_series().map_err(err)?;
        ensure(project_p(&x, cs).map_err(err)? == a, || {
            format!("P(A) ≠ A, case {case}")
        })?;
        // P of a general element of the subalgebra is a fixed point of P∘embed.
        let b = gen::scheme_element(rng, cs.scheme(), &k);
        if b.degrees().all(|d| d >= 0 && d < cs.cutoff() as i64) {
            let y = TruncSkewSeries::from_crossed(&b, cs.scheme().clone(), cs.cutoff() - 1).map_err(err)?;
            let p = project_p(&y, cs).map_err(err)?;
            ensure(project_p(&p.to_series().map_err(err)?, cs).map_err(err)? == p, || {
                format!("P² ≠ P, case {case}")
            })?;
        }
    }
    Ok(())
}

pub fn corner_formulas(rng: &mut ChaCha8Rng, cases: usize) -> Check {
    let k = FieldContext::cyclotomic(4).map_err(err)?;
    let fx = Fixture::lamplighter([6, 7])?;
    let corners: Vec<_> = fx.sets.iter().map(|cs| (p_e(cs, &k), p_tinv_e(cs, &k))).collect();
    for case in 0..cases {
        let lvl = case % 2;
        let cs = &fx.sets[lvl];
        let (pe, pt) = &corners[lvl];
        let a = random_special(rng, cs, &k);
        let b = random_special(rng, cs, &k);
        let pa = a.to_series().and_then(|x| x.pi_plus(cs)).map_err(err)?;
        let pb = b.to_series().and_then(|x| x.pi_plus(cs)).map_err(err)?;
        let m = |xs: &[&BlockElement]| -> Result<BlockElement, String> {
            let mut acc = xs[0].clone();
            for x in &xs[1..] {
                acc = acc.mul(x).map_err(err)?;
            }
            Ok(acc)
        };
        let lhs = m(&[pe, &pa.star(), pt, &pb, pe])?;
        let rhs = m(&[&a.conj().hadamard(&b).map_err(err)?.psi(), pe])?;
        ensure(lhs == rhs, || {
            format!("p_E π(A)* p_T⁻¹E π(B) p_E ≠ Ψ(Ā⊙B) p_E, case {case}")
        })?;
        let lhs = m(&[pt, &pa, pe, &pb.star(), pt])?;
        let rhs = m(&[&a.hadamard(&b.conj()).map_err(err)?.psi(), pt])?;
        ensure(lhs == rhs, || {
            format!("p_T⁻¹E π(A) p_E π(B)* p_T⁻¹E ≠ Ψ(A⊙B̄) p_T⁻¹E, case {case}")
        })?;
    }
    Ok(())
}

fn unit_block(len: usize, i: usize, j: usize, k: &Field) -> ExactMatrix {
    let mut m = ExactMatrix::zeros(len, len, k);
    m.set(i, j, k.one());
    m
}

pub fn detection(rng: &mut ChaCha8Rng, cases: usize) -> Check {
    let k = FieldContext::rational();
    let fx = Fixture::lamplighter([8, 8])?;
    let odo = Arc::new(PartitionScheme::odometer(2).map_err(err)?);
    let odo_cs = Arc::new(enumerate_components(&odo, 8).map_err(err)?);
    let pool = [
        (&fx.schemes[0], &fx.sets[0]),
        (&fx.schemes[1], &fx.sets[1]),
        (&odo, &odo_cs),
    ];
    for case in 0..cases {
        let (sc, cs) = pool[case % pool.len()];
        let widx = rng.gen_range(0..cs.len());
        let w = &cs.components()[widx];
        let i = w.length - 1;
        let s = special_set_of(sc, w).map_err(err)?;
        let c = k.random(rng, 3);
        let x = represent(&CrossedElement::chi_t(&s, &k, i as i64).scale(&c), cs).map_err(err)?;
        for (vidx, v) in cs.components().iter().enumerate() {
            let b = x.block(vidx);
            if vidx == widx {
                ensure(b == &unit_block(w.length, i, 0, &k).scale(&c), || {
                    format!("block of S({widx}) is not c·e_(i,0)")
                })?;
            } else {
                ensure(b.get(v.length - 1, 0).is_zero(), || {
                    format!("S({widx}) leaks into component {vidx}")
                })?;
            }
        }
    }
    Ok(())
}

/// Every way of writing the word as a product of pure terms, by splitting at each admissible seam.
fn all_factorizations(n: usize, w: &[u8]) -> Vec<Vec<Vec<u8>>> {
    let k = 2 * n;
    let pure = |v: &[u8]| {
        SpecialTerm::from_word(n, 1, v.to_vec())
            .map(|t| t.is_pure())
            .unwrap_or(false)
    };
    let mut out = Vec::new();
    if pure(w) {
        out.push(vec![w.to_vec()]);
    }
    for q in 2 * k + 1..w.len() {
        let (left, rest) = (&w[..q], &w[q - k..]);
        if !pure(left) || SpecialTerm::from_word(n, 1, rest.to_vec()).is_err() {
            continue;
        }
        for mut tail in all_factorizations(n, rest) {
            tail.push(left.to_vec());
            out.push(tail);
        }
    }
    out
}

pub fn pure_factorization(rng: &mut ChaCha8Rng, cases: usize) -> Check {
    let sets: Vec<Arc<ComponentSet>> = [(1usize, 13usize), (2, 15)]
        .iter()
        .map(|&(n, l)| {
            enumerate_components(&Arc::new(PartitionScheme::lamplighter(n)), l)
                .map(Arc::new)
                .map_err(err)
        })
        .collect::<Result<_, _>>()?;
    for case in 0..cases {
        let cs = &sets[case % 2];
        let sc = cs.scheme();
        let n = sc.level().unwrap_or(0);
        let long: Vec<_> = cs.components().iter().filter(|w| w.length >= 2).collect();
        let w = long[rng.gen_range(0..long.len())];
        let s = special_set_of(sc, w).map_err(err)?;
        let t = SpecialTerm::from_clopen(&s, sc).map_err(err)?;
        let f = factor_pure(&s, sc).map_err(err)?;
        ensure(f.iter().all(|x| x.is_pure()), || {
            format!("impure factor of {:?}", t.word())
        })?;
        let prod = f[1..].iter().fold(f[0].clone(), |acc, x| acc.mul(x));
        ensure(prod == t, || format!("factors of {:?} do not multiply back", t.word()))?;
        let words: Vec<Vec<u8>> = f.iter().map(|x| x.word().to_vec()).collect();
        ensure(all_factorizations(n, t.word()) == vec![words], || {
            format!("{:?} has another factorization", t.word())
        })?;
    }
    Ok(())
}

pub fn hadamard_relative_inverse(rng: &mut ChaCha8Rng, cases: usize) -> Check {
    let fields = [
        FieldContext::rational(),
        FieldContext::prime(7).map_err(err)?,
        FieldContext::cyclotomic(5).map_err(err)?,
    ];
    let fx = Fixture::lamplighter([8, 7])?;
    for case in 0..cases {
        let k = &fields[case % fields.len()];
        let cs = &fx.sets[rng.gen_range(0..2)];
        let q = random_special(rng, cs, k);
        let qi = q.relative_inverse();
        let qqq = q.hadamard(&qi).and_then(|x| x.hadamard(&q)).map_err(err)?;
        ensure(qqq == q, || format!("q⊙q⁺⊙q ≠ q, case {case}"))?;
        let iqi = qi.hadamard(&q).and_then(|x| x.hadamard(&qi)).map_err(err)?;
        ensure(iqi == qi, || format!("q⁺⊙q⊙q⁺ ≠ q⁺, case {case}"))?;
    }
    Ok(())
}

pub fn quotient_multiplicative(rng: &mut ChaCha8Rng, cases: usize) -> Check {
    let k = FieldContext::rational();
    for case in 0..cases {
        let (a, b) = (gen::crossed(rng, &k), gen::crossed(rng, &k));
        let y = gen::periodic_point(rng);
        let (qa, qb) = (
            quotient_at_orbit(&a, &y).map_err(err)?,
            quotient_at_orbit(&b, &y).map_err(err)?,
        );
        let qab = quotient_at_orbit(&(&a * &b), &y).map_err(err)?;
        ensure(qab == qa.mul(&qb), || {
            format!("φ(ab) ≠ φ(a)φ(b) at {:?}, case {case}", y.word())
        })?;
        let qsum = quotient_at_orbit(&(&a + &b), &y).map_err(err)?;
        ensure(qsum == qa.add(&qb), || format!("φ(a+b) ≠ φ(a)+φ(b), case {case}"))?;
        ensure(quotient_at_orbit(&a.star(), &y).map_err(err)? == qa.star(), || {
            format!("φ(a*) ≠ φ(a)*, case {case}")
        })?;
    }
    Ok(())
}

pub fn nilpotency(rng: &mut ChaCha8Rng, cases: usize) -> Check {
    let fields = [FieldContext::rational(), FieldContext::prime(3).map_err(err)?];
    for case in 0..cases {
        let k = &fields[case % 2];
        let n = rng.gen_range(1..=10);
        let r = rng.gen_range(1..=n);
        let a = gen::pattern_matrix(rng, k, n, r);
        ensure(nilpotency_check(&a, r).map_err(err)?, || {
            format!("A^(2r+1) ≠ 0 for n={n}, r={r}, case {case}")
        })?;
    }
    Ok(())
}
