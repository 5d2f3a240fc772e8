//! Seeded generators and fixed corpora shared by the integration tests.
#![allow(dead_code)]

use newton_zeta::{parse_polynomial, IntPoint, LatticePolytope, PolynomialInput, SystemSpec};
use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn vars(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("z{i}")).collect()
}

pub fn pt(c: &[i64]) -> IntPoint {
    IntPoint::from_i64s(c)
}

pub fn poly(n: usize, pts: &[&[i64]]) -> LatticePolytope {
    let pts: Vec<IntPoint> = pts.iter().map(|p| pt(p)).collect();
    LatticePolytope::hull(n, &pts).unwrap()
}

pub fn random_points(rng: &mut ChaCha8Rng, n: usize, count: usize, lo: i64, hi: i64) -> Vec<IntPoint> {
    (0..count)
        .map(|_| IntPoint::from_i64s(&(0..n).map(|_| rng.gen_range(lo..=hi)).collect::<Vec<_>>()))
        .collect()
}

pub fn random_polytope(rng: &mut ChaCha8Rng, n: usize, max_points: usize, hi: i64) -> LatticePolytope {
    let count = rng.gen_range(1..=max_points);
    LatticePolytope::hull(n, &random_points(rng, n, count, 0, hi)).unwrap()
}

/// A polytope of exactly dimension `n` with coordinates in `[0, hi]`.
pub fn random_full_polytope(rng: &mut ChaCha8Rng, n: usize, max_points: usize, hi: i64) -> LatticePolytope {
    loop {
        let count = rng.gen_range(n + 1..=max_points.max(n + 1));
        let p = LatticePolytope::hull(n, &random_points(rng, n, count, 0, hi)).unwrap();
        if p.dim() == n as i64 {
            return p;
        }
    }
}

pub fn random_support_poly(rng: &mut ChaCha8Rng, n: usize, max_terms: usize, hi: i64) -> PolynomialInput {
    let count = rng.gen_range(1..=max_terms);
    PolynomialInput::from_support(n, &random_points(rng, n, count, 0, hi)).unwrap()
}

/// Integer matrix of determinant ±1 built from elementary operations.
pub fn random_unimodular(rng: &mut ChaCha8Rng, n: usize, steps: usize) -> Vec<Vec<BigInt>> {
    let mut m: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect();
    for _ in 0..steps {
        if n < 2 {
            break;
        }
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n);
        while j == i {
            j = rng.gen_range(0..n);
        }
        let c = *[-1i64, 1, 2, -2].choose(rng).unwrap();
        for k in 0..n {
            m[i][k] += c * m[j][k];
        }
    }
    if rng.gen_bool(0.5) {
        let i = rng.gen_range(0..n);
        for x in m[i].iter_mut() {
            *x = -*x;
        }
    }
    m.into_iter()
        .map(|r| r.into_iter().map(BigInt::from).collect())
        .collect()
}

pub fn apply(m: &[Vec<BigInt>], p: &IntPoint) -> IntPoint {
    IntPoint::new(
        m.iter()
            .map(|row| row.iter().zip(p.coords()).map(|(a, b)| a * b).sum())
            .collect(),
    )
}

fn parse_all(n: usize, fs: &[&str]) -> Vec<PolynomialInput> {
    fs.iter().map(|f| parse_polynomial(f, &vars(n)).unwrap()).collect()
}

pub fn polynomial_spec(n: usize, fs: &[&str], f0: &str) -> SystemSpec {
    SystemSpec::polynomial_on_ci(n, parse_all(n, fs), parse_polynomial(f0, &vars(n)).unwrap())
        .unwrap()
        .with_acknowledgement(true)
}

pub fn deformation_spec(n: usize, fs: &[&str]) -> SystemSpec {
    SystemSpec::deformation(n, parse_all(n, fs))
        .unwrap()
        .with_acknowledgement(true)
}

/// Named polynomial-on-complete-intersection systems: curated cases followed
/// by seeded random supports in `[0,3]^n`, `n <= 3`, `k <= 1`.
pub fn polyzeta_corpus() -> Vec<(String, SystemSpec)> {
    let mut out: Vec<(String, SystemSpec)> = vec![
        ("z1".into(), polynomial_spec(1, &[], "z1")),
        ("z1^2".into(), polynomial_spec(1, &[], "z1^2")),
        ("z1^3".into(), polynomial_spec(1, &[], "z1^3")),
        ("z1*z2".into(), polynomial_spec(2, &[], "z1*z2")),
        (
            "z2 on z1 + z2*(1+z1^2)".into(),
            polynomial_spec(2, &["z1 + z2*(1+z1^2)"], "z2"),
        ),
        ("z1 + z1^2".into(), polynomial_spec(1, &[], "z1 + z1^2")),
        (
            "z1^2 + z2^3 on z1 + z2 + z3".into(),
            polynomial_spec(3, &["z1 + z2 + z3"], "z1^2 + z2^3"),
        ),
    ];
    let mut r = rng(0x5eed_0002);
    while out.len() < 32 {
        let n = r.gen_range(1..=3usize);
        let k = if n == 1 { 0 } else { r.gen_range(0..=1usize) };
        let f0 = random_support_poly(&mut r, n, 4, 3);
        let fs: Vec<PolynomialInput> = (0..k).map(|_| random_support_poly(&mut r, n, 4, 3)).collect();
        let name = format!(
            "random n={n} F0={:?} F={:?}",
            support_i64(&f0),
            fs.iter().map(support_i64).collect::<Vec<_>>()
        );
        let spec = SystemSpec::polynomial_on_ci(n, fs, f0)
            .unwrap()
            .with_acknowledgement(true);
        out.push((name, spec));
    }
    out
}

/// Named deformation systems: curated cases followed by seeded random
/// supports in `[0,3]^n`, `2 <= n <= 3`.
pub fn deformation_corpus() -> Vec<(String, SystemSpec)> {
    let mut out: Vec<(String, SystemSpec)> = vec![
        ("z1 + z2*(1+z1^2)".into(), deformation_spec(2, &["z1 + z2*(1+z1^2)"])),
        ("z1*z2 - 1".into(), deformation_spec(2, &["z1*z2 - 1"])),
        ("empty n=2".into(), deformation_spec(2, &[])),
        (
            "z1^2 + z2^3 + z1*z2".into(),
            deformation_spec(2, &["z1^2 + z2^3 + z1*z2"]),
        ),
        (
            "two surfaces in C^3".into(),
            deformation_spec(3, &["z1 + z2^2 + z3^3", "z1*z2 + z3 + 1"]),
        ),
    ];
    let mut r = rng(0x5eed_0006);
    while out.len() < 20 {
        let n = r.gen_range(2..=3usize);
        let k = r.gen_range(0..n);
        let fs: Vec<PolynomialInput> = (0..k).map(|_| random_support_poly(&mut r, n, 4, 3)).collect();
        let name = format!(
            "random n={n} F={:?}",
            fs.iter().map(support_i64).collect::<Vec<_>>()
        );
        out.push((name, SystemSpec::deformation(n, fs).unwrap()));
    }
    out
}

pub fn support_i64(p: &PolynomialInput) -> Vec<Vec<i64>> {
    p.support().iter().map(|k| k.to_i64s().unwrap()).collect()
}
