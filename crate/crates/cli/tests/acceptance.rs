//! Acceptance suite: each test exercises one end-to-end guarantee of the
//! library on randomized corpora with fixed seeds, printing one PASS line
//! with its wall time.  All comparisons are exact; there are no tolerances
//! anywhere.

use ffpgn_cli::core::adelic::{adelic_margin, delta};
use ffpgn_cli::core::construct::{construct_point, universality_reduce, RationalVec};
use ffpgn_cli::core::field::{Field, PrimeField, Rationals};
use ffpgn_cli::core::minima::{
    compound_direct, compound_profile, dual_profile, minima_profile,
    minima_with_certificates, UnitPoint,
};
use ffpgn_cli::core::nsystem::{eval_switches, extremal, to_switches, Profile, SwitchData};
use ffpgn_cli::core::pade::{pade_solve, perfect_scan, realizer_sequence, ScanMode, SeriesSystem};
use ffpgn_cli::core::poly::Poly;
use ffpgn_cli::core::series::LaurentSeries;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::time::Instant;

fn random_point<K: Field>(rng: &mut ChaCha8Rng, field: K, n: usize, prec: i64) -> UnitPoint<K> {
    loop {
        let u: Vec<LaurentSeries<K>> = (0..n)
            .map(|_| {
                let coeffs: Vec<K::Elem> = (0..=prec)
                    .map(|_| field.from_i64(rng.gen_range(-6..=6)))
                    .collect();
                LaurentSeries::new(field.clone(), 0, coeffs, Some(-prec)).unwrap()
            })
            .collect();
        if let Ok(p) = UnitPoint::new(u) {
            return p;
        }
    }
}

/// Random valid profile via admissible rising-index walks.
fn random_profile(rng: &mut ChaCha8Rng, n: usize, horizon: i64) -> Profile {
    let mut values = vec![vec![0i64; n]];
    let mut prev_rise: Option<usize> = None;
    for q in 0..horizon {
        let row = values[q as usize].clone();
        let mut admissible: Vec<usize> = Vec::new();
        for r in 1..=n {
            let top = r == n || row[r] > row[r - 1];
            if !top {
                continue;
            }
            let ok = match prev_rise {
                None => true,
                Some(rp) => r <= rp || row[rp - 1] == row[r - 1],
            };
            if ok {
                admissible.push(r);
            }
        }
        let r = admissible[rng.gen_range(0..admissible.len())];
        let mut next = row;
        next[r - 1] += 1;
        values.push(next);
        prev_rise = Some(r);
    }
    Profile { n, values }
}

/// The two seed streams behind the 250-point corpus; the certificate
/// cross-check regenerates the identical corpus from the same seeds.
const CORPUS_SEED_F5: u64 = 101;
const CORPUS_SEED_Q: u64 = 102;
const CORPUS_PREC: i64 = 21;
const CORPUS_Q_MAX: i64 = 20;

fn corpus_f5() -> Vec<UnitPoint<PrimeField>> {
    let mut rng = ChaCha8Rng::seed_from_u64(CORPUS_SEED_F5);
    let f5 = PrimeField::new(5).unwrap();
    (0..200)
        .map(|_| {
            let n = rng.gen_range(2..=4);
            random_point(&mut rng, f5.clone(), n, CORPUS_PREC)
        })
        .collect()
}

fn corpus_q() -> Vec<UnitPoint<Rationals>> {
    let mut rng = ChaCha8Rng::seed_from_u64(CORPUS_SEED_Q);
    (0..50)
        .map(|_| {
            let n = rng.gen_range(2..=4);
            random_point(&mut rng, Rationals, n, CORPUS_PREC)
        })
        .collect()
}

#[test]
fn acceptance_1_random_minima_profiles_validate() {
    let t = Instant::now();
    for u in corpus_f5() {
        minima_profile(&u, CORPUS_Q_MAX).unwrap().validate().unwrap();
    }
    for u in corpus_q() {
        minima_profile(&u, CORPUS_Q_MAX).unwrap().validate().unwrap();
    }
    println!(
        "acceptance 1 PASS: 250 random minima profiles (200 over F_5, 50 over Q, q <= 20) all validate ({:.1}s)",
        t.elapsed().as_secs_f32()
    );
}

/// Truncate to the initial record plus at most 6 switch events; any prefix
/// of valid switch data is valid, the last segment just extends.
fn trim_switches(mut sd: SwitchData) -> SwitchData {
    sd.records.truncate(7);
    sd
}

fn row_deg<K: Field>(row: &[Poly<K>]) -> i64 {
    row.iter().filter_map(|p| p.deg()).max().expect("nonzero basis row") as i64
}

fn check_round_trip<K: Field>(field: K, sd: &SwitchData, prec: i64) {
    let n = sd.n;
    let want = eval_switches(sd, prec - 1).unwrap();
    let c = construct_point(field.clone(), sd, prec).unwrap();
    let got = minima_profile(&c.point, prec - 1).unwrap();
    assert_eq!(got, want, "minima of the constructed point must equal the switch evaluation");

    // exchange postconditions at every stage: the basis stays unimodular,
    // its sorted row norms realize the profile at the switch time, and the
    // stage points drift apart at rate exactly e^{-q}
    let mut prev = RationalVec::unit_last(field.clone(), n);
    for (step, rec) in c.steps.iter().zip(sd.records.iter().skip(1)) {
        assert_eq!(step.q, rec.q);
        assert_eq!(step.k, rec.k);
        let det = step.basis.det();
        assert_eq!(det.deg(), Some(0), "stage basis must stay unimodular");
        let prof_row = want.at(step.q);
        for j in 0..n {
            assert_eq!(row_deg(step.basis.row(j)), prof_row[j]);
        }
        assert_eq!(step.u.log_norm(), Some(0));
        assert_eq!(step.dist_log, -step.q);
        assert_eq!(step.u.dist_log(&prev), Some(-step.q), "recomputed stage distance");
        prev = step.u.clone();
    }
}

#[test]
fn acceptance_2_switch_data_round_trip() {
    let t = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(201);
    let f5 = PrimeField::new(5).unwrap();
    for i in 0..100 {
        let n = rng.gen_range(2..=4);
        let over_q = i % 5 == 4;
        let prec = if over_q { rng.gen_range(12..=16) } else { rng.gen_range(12..=24) };
        let sd = trim_switches(to_switches(&random_profile(&mut rng, n, prec)).unwrap());
        if over_q {
            check_round_trip(Rationals, &sd, prec);
        } else {
            check_round_trip(f5.clone(), &sd, prec);
        }
    }
    println!(
        "acceptance 2 PASS: 100 random switch data (n in 2..4, <= 6 switches, N <= 24) round-trip \
         with exchange postconditions and exact drift distances ({:.1}s)",
        t.elapsed().as_secs_f32()
    );
}

#[test]
fn acceptance_3_exponential_points_follow_staircase() {
    let t = Instant::now();
    let q_max = 16i64;
    let sets: [&[i64]; 4] = [&[0, 1], &[0, 1, 2], &[0, 1, -1], &[0, 1, 2, 3]];
    for omegas in sets {
        let field = Rationals;
        let om: Vec<BigRational> = omegas.iter().map(|&w| field.from_i64(w)).collect();
        let sys = SeriesSystem::exp(field, &om, (q_max + 2) as usize).unwrap();
        let u = sys.point().unwrap();
        let p = minima_profile(&u, q_max).unwrap();
        assert_eq!(p, extremal(omegas.len(), q_max), "omegas {:?}", omegas);
        for q in 0..=q_max {
            let row = p.at(q);
            assert!(row[row.len() - 1] - row[0] <= 1, "minima spread must stay within 1");
        }
    }
    println!(
        "acceptance 3 PASS: 4 exponential systems match the extremal staircase at q <= 16 \
         with minima spread <= 1 ({:.1}s)",
        t.elapsed().as_secs_f32()
    );
}

#[test]
fn acceptance_4_duality_mirrors_minima() {
    let t = Instant::now();
    let q_max = 12i64;
    let mut rng = ChaCha8Rng::seed_from_u64(401);
    let f5 = PrimeField::new(5).unwrap();
    for i in 0..50 {
        let n = rng.gen_range(2..=3);
        if i % 5 == 4 {
            let u = random_point(&mut rng, Rationals, n, q_max + 1);
            check_dual(&u, q_max);
        } else {
            let u = random_point(&mut rng, f5.clone(), n, q_max + 1);
            check_dual(&u, q_max);
        }
    }
    println!(
        "acceptance 4 PASS: 50 random points have dual minima equal to the reversed negated \
         minima at q <= 12 ({:.1}s)",
        t.elapsed().as_secs_f32()
    );
}

fn check_dual<K: Field>(u: &UnitPoint<K>, q_max: i64) {
    let n = u.n();
    let p = minima_profile(u, q_max).unwrap();
    let d = dual_profile(u, q_max).unwrap();
    for q in 0..=q_max {
        for j in 0..n {
            assert_eq!(d.at(q)[j], -p.at(q)[n - 1 - j], "q {} j {}", q, j);
        }
    }
}

fn binom(n: usize, k: usize) -> i64 {
    if k > n {
        return 0;
    }
    let mut r = 1i64;
    for i in 0..k {
        r = r * (n - i) as i64 / (i + 1) as i64;
    }
    r
}

fn check_compound<K: Field>(u: &UnitPoint<K>, m: usize, q_max: i64) {
    let n = u.n();
    let l = minima_profile(u, q_max).unwrap();
    let c = compound_direct(u, m, q_max).unwrap();
    for q in 0..=q_max {
        let row = c.at(q);
        let lr = l.at(q);
        assert_eq!(row, &compound_profile(lr, m)[..], "subset sums at q {}", q);
        assert_eq!(row.iter().sum::<i64>(), binom(n - 1, m - 1) * q, "component sum at q {}", q);
        assert_eq!(row[0], lr[..m].iter().sum::<i64>(), "first compound at q {}", q);
        assert_eq!(row[1] - row[0], lr[m] - lr[m - 1], "second gap at q {}", q);
    }
    // wherever the first compound minimum stops rising, the m-th and
    // (m+1)-th minima must agree
    for q in 1..q_max {
        let rising_before = c.at(q)[0] - c.at(q - 1)[0] == 1;
        let flat_after = c.at(q + 1)[0] - c.at(q)[0] == 0;
        if rising_before && flat_after {
            assert_eq!(l.at(q)[m - 1], l.at(q)[m], "slope change at q {}", q);
        }
    }
}

#[test]
fn acceptance_5_compound_minima_identities() {
    let t = Instant::now();
    let q_max = 10i64;
    let mut rng = ChaCha8Rng::seed_from_u64(501);
    let f5 = PrimeField::new(5).unwrap();
    let mut checked = 0usize;
    for i in 0..20 {
        let n = if i % 2 == 0 { 3 } else { 4 };
        if i % 10 == 9 {
            let u = random_point(&mut rng, Rationals, n, q_max + 1);
            for m in 2..n {
                check_compound(&u, m, q_max);
                checked += 1;
            }
        } else {
            let u = random_point(&mut rng, f5.clone(), n, q_max + 1);
            for m in 2..n {
                check_compound(&u, m, q_max);
                checked += 1;
            }
        }
    }
    println!(
        "acceptance 5 PASS: {} compound profiles on 20 random points match subset sums with all \
         sum, first-value, gap, and slope-change identities at q <= 10 ({:.1}s)",
        checked,
        t.elapsed().as_secs_f32()
    );
}

#[test]
fn acceptance_6_construction_is_field_independent() {
    let t = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(601);
    for _ in 0..30 {
        let n = rng.gen_range(2..=4);
        let prec = rng.gen_range(8..=16);
        let sd = trim_switches(to_switches(&random_profile(&mut rng, n, prec)).unwrap());
        let c = construct_point(Rationals, &sd, prec).unwrap();
        for step in &c.steps {
            for row in step.basis.row_vecs() {
                for coeff in row.iter().flat_map(|p| p.coeffs()) {
                    assert!(coeff.is_integer(), "basis coefficients must be integers");
                }
            }
            for coeff in step.u.nums.iter().chain([&step.u.den]).flat_map(|p| p.coeffs()) {
                assert!(coeff.is_integer(), "stage point coefficients must be integers");
            }
            // the stage denominator is normalized monic; the unnormalized
            // determinant lead is a sign, so the basis determinant is +-1
            let den_lead = step.u.den.lc().unwrap();
            assert!(den_lead.is_integer() && den_lead.to_integer() == 1.into());
            let det = step.basis.det();
            assert_eq!(det.deg(), Some(0));
            let det_lead = det.lc().unwrap();
            assert!(
                det_lead == &BigRational::from_integer(1.into())
                    || det_lead == &BigRational::from_integer((-1).into()),
                "basis determinant must be a sign"
            );
        }
        for p in [2u64, 5, 101] {
            universality_reduce(&sd, p, prec).unwrap();
        }
    }
    println!(
        "acceptance 6 PASS: 30 random constructions are integral with unit determinants and \
         reduce mod 2, 5, 101 to the native constructions exactly ({:.1}s)",
        t.elapsed().as_secs_f32()
    );
}

#[test]
fn acceptance_7_approximation_solver_and_scans() {
    let t = Instant::now();
    let q = Rationals;
    let w01: Vec<BigRational> = vec![q.from_i64(0), q.from_i64(1)];
    let sys = SeriesSystem::exp(q.clone(), &w01, 8).unwrap();
    let sol = pade_solve(&sys, &[2, 2]).unwrap();
    // canonical scaling of (-(2+T), 2-T): divide by -2
    let half = BigRational::new(1.into(), 2.into());
    assert_eq!(sol.a[0].coeffs(), &[q.one(), half.clone()][..]);
    assert_eq!(sol.a[1].coeffs(), &[q.neg(&q.one()), half][..]);
    assert_eq!(sol.ord, Some(3));
    assert_eq!(sol.nullity, 1);

    let w012: Vec<BigRational> = vec![q.from_i64(0), q.from_i64(1), q.from_i64(2)];
    let sys3 = SeriesSystem::exp(q.clone(), &w012, 11).unwrap();
    assert!(perfect_scan(&sys3, 9, ScanMode::All).unwrap().is_empty());

    let logs = SeriesSystem::log_powers(q.clone(), 2, 10).unwrap();
    assert!(perfect_scan(&logs, 8, ScanMode::Sorted).unwrap().is_empty());

    let sys2 = SeriesSystem::exp(q, &w01, 12).unwrap();
    let reals = realizer_sequence(&sys2, 8).unwrap();
    assert_eq!(reals.len(), 8);
    for r in &reals {
        let i = r.i as i64;
        let lvl = (i + 1) / 2 - 1;
        assert_eq!(r.level, lvl, "norm level at i {}", i);
        assert_eq!(r.pair_log, lvl + 1 - i, "pairing norm at i {}", i);
    }
    println!(
        "acceptance 7 PASS: canonical (1, e^T) solution with vanishing order 3, empty scans \
         (exp 0,1,2 to 9; log pair to 8 sorted), and 8 realizers with exact norm levels ({:.1}s)",
        t.elapsed().as_secs_f32()
    );
}

fn random_rational(rng: &mut ChaCha8Rng) -> BigRational {
    let num = rng.gen_range(-4i64..=4);
    let den = if rng.gen_bool(0.5) { 1i64 } else { 2 };
    BigRational::new(num.into(), den.into())
}

fn random_poly(rng: &mut ChaCha8Rng, max_deg: usize) -> Poly<Rationals> {
    let q = Rationals;
    loop {
        let d = rng.gen_range(0..=max_deg);
        let coeffs: Vec<BigRational> =
            (0..=d).map(|_| q.from_i64(rng.gen_range(-5..=5))).collect();
        let p = Poly::new(q.clone(), coeffs);
        if p.deg().is_some() {
            return p;
        }
    }
}

#[test]
fn acceptance_8_global_margins_nonnegative() {
    let t = Instant::now();
    let q = Rationals;

    // tight case: margin exactly zero
    let a1 = vec![
        Poly::new(q.clone(), vec![q.from_i64(-1)]),
        Poly::new(q.clone(), vec![q.from_i64(1)]),
    ];
    let om1 = vec![q.from_i64(0), q.from_i64(1)];
    let rep = adelic_margin(&q, &a1, &om1, &[q.from_i64(0)]).unwrap();
    assert_eq!(rep.margin, 0, "tight instance must have margin exactly 0");

    let mut rng = ChaCha8Rng::seed_from_u64(801);
    for _ in 0..200 {
        let n = rng.gen_range(2..=3usize);
        let omegas: Vec<BigRational> = loop {
            let om: Vec<BigRational> = (0..n).map(|_| random_rational(&mut rng)).collect();
            let mut d = om.clone();
            d.sort();
            d.dedup();
            if d.len() == n {
                break om;
            }
        };
        let a: Vec<Poly<Rationals>> = (0..n).map(|_| random_poly(&mut rng, 6)).collect();
        let points: Vec<BigRational> = loop {
            let k = rng.gen_range(1..=3usize);
            let mut s: Vec<BigRational> = (0..k).map(|_| random_rational(&mut rng)).collect();
            s.sort();
            s.dedup();
            if s.len() == k {
                break s;
            }
        };
        let rep = adelic_margin(&q, &a, &omegas, &points).unwrap();
        assert!(rep.margin >= 0, "margin must be nonnegative");

        // structural report on the determinant: exact degree and leading
        // coefficient (product of leads times the Vandermonde of omegas)
        let dr = delta(&q, &a, &omegas).unwrap();
        assert_eq!(rep.delta_deg, dr.deg);
        let dsum: usize = a.iter().map(|p| p.deg().unwrap()).sum();
        assert_eq!(dr.deg, dsum);
        let mut lead = BigRational::new(1.into(), 1.into());
        for p in &a {
            lead *= p.lc().unwrap().clone();
        }
        for i in 0..n {
            for j in (i + 1)..n {
                lead *= omegas[j].clone() - omegas[i].clone();
            }
        }
        assert_eq!(dr.delta.lc().unwrap(), &lead, "determinant lead must factor exactly");
    }
    println!(
        "acceptance 8 PASS: 200 random global margins are nonnegative with exact determinant \
         structure; the tight two-term instance has margin 0 ({:.1}s)",
        t.elapsed().as_secs_f32()
    );
}

#[test]
fn acceptance_9_certificates_match_authoritative_minima() {
    let t = Instant::now();
    for u in corpus_f5() {
        let p = minima_profile(&u, CORPUS_Q_MAX).unwrap();
        let (pc, certs) = minima_with_certificates(&u, CORPUS_Q_MAX).unwrap();
        assert_eq!(p, pc, "accelerator must agree with the authoritative method");
        assert_eq!(certs.len(), (CORPUS_Q_MAX + 1) as usize);
        for c in &certs {
            c.verify(&u).unwrap();
        }
    }
    for u in corpus_q() {
        let p = minima_profile(&u, CORPUS_Q_MAX).unwrap();
        let (pc, certs) = minima_with_certificates(&u, CORPUS_Q_MAX).unwrap();
        assert_eq!(p, pc, "accelerator must agree with the authoritative method");
        for c in &certs {
            c.verify(&u).unwrap();
        }
    }
    println!(
        "acceptance 9 PASS: incremental accelerator matches the authoritative method on the \
         250-point corpus and every per-q certificate verifies ({:.1}s)",
        t.elapsed().as_secs_f32()
    );
}
