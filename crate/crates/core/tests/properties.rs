mod common;

use common::{cayley, counts, default_config, entry, gating_corpus, matmul};
use fourfold::fixtures::gamma_family_frames;
use fourfold::link::{lk_s3, SphereLink};
use fourfold::poly::{rat, rat_matrix_to_f64};
use fourfold::quadframe::{cycles_of, orientation_preserving, NormalQuadForm};
use fourfold::{run, HomoPoly, NumPoly, RunOptions, Vec4};
use nalgebra::{Matrix2, Rotation2};
use num_rational::BigRational;
use num_traits::Zero;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn rational_point() -> impl Strategy<Value = [BigRational; 4]> {
    prop::array::uniform4((-50i64..=50, 1i64..=20)).prop_map(|a| a.map(|(n, d)| rat(n, d)))
}

fn skew_entries() -> impl Strategy<Value = [i64; 6]> {
    prop::array::uniform6(-6i64..=6)
}

fn great_circle(u: Vec4, w: Vec4, n: usize) -> Vec<Vec4> {
    (0..n)
        .map(|k| {
            let s = std::f64::consts::TAU * k as f64 / n as f64;
            u * s.cos() + w * s.sin()
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn euler_identity_is_exact(p in rational_point()) {
        for e in fourfold::fixtures::corpus() {
            let f = &e.poly;
            let lhs = f.gradient().iter().zip(&p).fold(BigRational::zero(), |acc, (g, x)| {
                acc + g.as_ref().map_or(BigRational::zero(), |g| g.eval_exact(&p) * x)
            });
            let rhs = f.eval_exact(&p) * rat(f.degree() as i64, 1);
            prop_assert_eq!(lhs, rhs, "{}", e.name);
        }
    }

    #[test]
    fn linear_actions_compose(a in skew_entries(), b in skew_entries()) {
        let f = entry("ex6").poly;
        let (m, n) = (cayley(a, 7), cayley(b, 5));
        let lhs = f.act_linear(&m).unwrap().act_linear(&n).unwrap();
        prop_assert_eq!(lhs, f.act_linear(&matmul(&m, &n)).unwrap());
    }

    #[test]
    fn numeric_gradient_matches_exact(p in rational_point()) {
        let f = entry("roman").poly;
        let num = NumPoly::new(&f);
        let v = Vec4::from_fn(|i, _| num_traits::ToPrimitive::to_f64(&p[i]).unwrap());
        let scale = f.bombieri_norm();
        for (i, g) in f.gradient().iter().enumerate() {
            let exact = g.as_ref().map_or(0.0, |g| g.eval(&v)) / scale;
            let got = num.gradient(&v)[i];
            prop_assert!((exact - got).abs() <= 1e-9 * (1.0 + exact.abs()) * v.norm().powi(3));
        }
    }

    #[test]
    fn rotating_the_normal_basis_keeps_the_class(a in -3.0f64..3.0, b in -3.0f64..3.0, c in -3.0f64..3.0, th in 0.0f64..6.3) {
        let q = NormalQuadForm::new(Matrix2::new(a, b, b, c));
        let r = Rotation2::new(th).into_inner();
        let qr = NormalQuadForm::new(r * q.q * r.transpose());
        prop_assert!((q.det() - qr.det()).abs() < 1e-9);
        prop_assert!((q.anisotropy() - qr.anisotropy()).abs() < 1e-9);
        prop_assert!((q.rel_det() - qr.rel_det()).abs() < 1e-9);
    }

    #[test]
    fn gamma_family_rotations_differ_by_a_half_turn(e in 0.01f64..0.5) {
        let plus = gamma_family_frames(e, 4001).unwrap().net_rotation;
        let minus = gamma_family_frames(-e, 4001).unwrap().net_rotation;
        prop_assert!(((plus - minus).abs() - std::f64::consts::PI).abs() < 1e-6, "{plus} {minus}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn linking_is_rotation_invariant_and_antisymmetric_in_orientation(a in skew_entries(), seed in 0u64..1000) {
        let r = rat_matrix_to_f64(&cayley(a, 4));
        let e = |i: usize| Vec4::from_fn(|j, _| if i == j { 1.0 } else { 0.0 });
        let c1 = SphereLink { loops: vec![great_circle(r * e(0), r * e(1), 300)] };
        let c2 = SphereLink { loops: vec![great_circle(r * e(2), r * e(3), 300)] };
        let c2r = SphereLink { loops: vec![great_circle(r * e(2), -(r * e(3)), 300)] };
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let lk = lk_s3(&c1, &c2, 5, &mut rng).unwrap();
        prop_assert_eq!(lk, 1);
        prop_assert_eq!(lk_s3(&c2, &c1, 5, &mut rng).unwrap(), lk);
        prop_assert_eq!(lk_s3(&c1, &c2r, 5, &mut rng).unwrap(), -lk);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(4))]

    #[test]
    fn counts_survive_orthogonal_changes(a in skew_entries()) {
        let f = entry("ex6").poly;
        let base = counts(&run(&f, &default_config(), &RunOptions::default()).unwrap().report);
        let g = f.act_linear(&cayley(a, 5)).unwrap();
        prop_assert_eq!(counts(&run(&g, &default_config(), &RunOptions::default()).unwrap().report), base);
    }
}

/// The signed permutations of two eigen-axes, acting on labels `+a1, -a1, +a2, -a2`.
fn signed_axis_permutations() -> Vec<[usize; 4]> {
    let gens = [[1, 0, 2, 3], [2, 3, 0, 1]];
    closure(&gens)
}

fn closure(gens: &[[usize; 4]]) -> Vec<[usize; 4]> {
    let mut group = vec![[0, 1, 2, 3]];
    let mut i = 0;
    while i < group.len() {
        for g in gens {
            let p: [usize; 4] = std::array::from_fn(|k| g[group[i][k]]);
            if !group.contains(&p) {
                group.push(p);
            }
        }
        i += 1;
    }
    group
}

#[test]
fn pushoff_component_counts_are_one_two_or_four() {
    let all = signed_axis_permutations();
    assert_eq!(all.len(), 8);
    // quarter turn of the normal plane: a1 -> a2 -> -a1
    let group = closure(&[[2, 3, 1, 0]]);
    assert_eq!(group.len(), 4);
    let rotations: Vec<_> = all.iter().filter(|p| orientation_preserving(p)).copied().collect();
    assert_eq!(rotations.len(), 4);
    assert!(rotations.iter().all(|p| group.contains(p)));
    let mut seen: Vec<usize> = group.iter().map(|p| cycles_of(p).len()).collect();
    seen.sort();
    seen.dedup();
    assert_eq!(seen, vec![1, 2, 4]);
    for e in gating_corpus() {
        let r = run(&e.poly, &default_config(), &RunOptions::default()).unwrap().report;
        for c in &r.components {
            assert!([1, 2, 4].contains(&c.pushoff_components), "{} {}", e.name, c.pushoff_components);
        }
    }
}

#[test]
fn parse_display_round_trip() {
    for e in fourfold::fixtures::corpus() {
        assert_eq!(HomoPoly::parse(&e.poly.to_string()).unwrap(), e.poly, "{}", e.name);
    }
}
