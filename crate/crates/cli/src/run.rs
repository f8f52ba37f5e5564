//! Command drivers.  Each takes parsed flags and returns the rendered
//! output text; main maps errors to the exit-code contract.

use crate::json::{
    self, AdelicDto, ConstructDto, CorollaryDto, LocalDto, PadeDto, PointDto, ProfileDto,
    ScanDto, SwitchesDto,
};
use crate::parse::{self, FieldTag};
use crate::{graph, read_input};
use ffpgn_core::adelic::{adelic_margin, corollary_checks};
use ffpgn_core::construct::{cf_point, construct_point, universality_reduce};
use ffpgn_core::error::Error;
use ffpgn_core::field::{Field, PrimeField, Rationals};
use ffpgn_core::minima::{minima_profile, minima_row, minima_with_certificates, UnitPoint};
use ffpgn_core::nsystem::{eval_switches, extremal, Profile};
use ffpgn_core::pade::{check_normal, pade_solve, scan_tuples, sigma, ScanMode};
use std::sync::mpsc;

/// Parallel per-row evaluation; row order in the result is deterministic.
fn minima_rows<K>(u: &UnitPoint<K>, q_max: i64, jobs: usize) -> Result<Profile, Error>
where
    K: Field + Sync,
    K::Elem: Sync,
{
    if jobs <= 1 {
        return minima_profile(u, q_max);
    }
    let mut values: Vec<Option<Vec<i64>>> = vec![None; (q_max + 1) as usize];
    let (tx, rx) = mpsc::channel::<(i64, Result<Vec<i64>, Error>)>();
    std::thread::scope(|s| {
        for t in 0..jobs {
            let tx = tx.clone();
            s.spawn(move || {
                let mut q = t as i64;
                while q <= q_max {
                    let row = minima_row(u, q);
                    if tx.send((q, row)).is_err() {
                        return;
                    }
                    q += jobs as i64;
                }
            });
        }
        drop(tx);
        for (q, row) in rx {
            values[q as usize] = Some(row?);
        }
        Ok::<(), Error>(())
    })?;
    let p = Profile { n: u.n(), values: values.into_iter().map(|r| r.unwrap()).collect() };
    p.validate()?;
    Ok(p)
}

pub struct MinimaArgs<'a> {
    pub u: Option<&'a str>,
    pub gen: Option<&'a str>,
    pub cf: Option<&'a str>,
    pub q_max: i64,
    pub prec: Option<i64>,
    pub field: Option<&'a str>,
    pub certify: bool,
    pub jobs: usize,
}

fn profile_doc<K: Field>(
    u: &UnitPoint<K>,
    a: &MinimaArgs,
) -> Result<ProfileDto, Error>
where
    K: Sync,
    K::Elem: Sync,
{
    if a.certify {
        let (p, certs) = minima_with_certificates(u, a.q_max)?;
        for c in &certs {
            c.verify(u)?;
        }
        let mut dto = ProfileDto::from_profile(&p);
        dto.certificates =
            Some(certs.iter().map(|c| json::CertDto::from_cert(u.field(), c)).collect());
        Ok(dto)
    } else {
        Ok(ProfileDto::from_profile(&minima_rows(u, a.q_max, a.jobs)?))
    }
}

pub fn cmd_minima(a: &MinimaArgs) -> Result<String, Error> {
    let doc = match (a.u, a.gen, a.cf) {
        (Some(path), None, None) => {
            // point files are self-describing; the field tag inside wins
            let dto: PointDto = json::parse_doc(&read_input(path)?)?;
            match FieldTag::parse(&dto.field)? {
                FieldTag::Q => profile_doc(&dto.to_point(&Rationals)?, a),
                FieldTag::Fp(p) => profile_doc(&dto.to_point(&PrimeField::new(p)?)?, a),
            }
        }
        (None, Some(spec), None) => {
            match FieldTag::resolve(a.field)? {
                FieldTag::Q => {}
                FieldTag::Fp(_) => return Err(Error::CharacteristicNotZero),
            }
            let prec = a.prec.unwrap_or(a.q_max + 2).max(2) as usize;
            let sys = parse::build_system(&parse::parse_gen(spec)?, prec)?;
            profile_doc(&sys.point()?, a)
        }
        (None, None, Some(list)) => {
            let prec = a.prec.unwrap_or(a.q_max + 1).max(1);
            match FieldTag::resolve(a.field)? {
                FieldTag::Q => {
                    let f = Rationals;
                    let qs = list
                        .split(',')
                        .map(|t| parse::parse_poly(&f, t))
                        .collect::<Result<Vec<_>, _>>()?;
                    profile_doc(&cf_point(f, &qs, prec)?.0, a)
                }
                FieldTag::Fp(p) => {
                    let f = PrimeField::new(p)?;
                    let qs = list
                        .split(',')
                        .map(|t| parse::parse_poly(&f, t))
                        .collect::<Result<Vec<_>, _>>()?;
                    profile_doc(&cf_point(f, &qs, prec)?.0, a)
                }
            }
        }
        _ => return Err(Error::Precondition("give exactly one of --u, --gen, --cf")),
    }?;
    json::render(&doc)
}

pub struct ConstructArgs<'a> {
    pub switches: &'a str,
    pub n_prec: Option<i64>,
    pub field: Option<&'a str>,
    pub verify: bool,
    pub modp: Option<u64>,
}

fn construct_in<K: Field>(
    field: K,
    label: &str,
    dto: &SwitchesDto,
    a: &ConstructArgs,
    prec: i64,
) -> Result<ConstructDto, Error> {
    let sd = dto.to_data()?;
    let c = construct_point(field.clone(), &sd, prec)?;
    let mut out = ConstructDto::from_constructed(&field, label, &sd, &c, prec);
    if a.verify {
        let got = minima_profile(&c.point, prec - 1)?;
        let want = eval_switches(&sd, prec - 1)?;
        if got != want {
            return Err(Error::Verification("constructed point minima mismatch"));
        }
        out.verified = Some(true);
    }
    if let Some(p) = a.modp {
        universality_reduce(&sd, p, prec)?;
        out.modp = Some(p);
        out.modp_agrees = Some(true);
    }
    Ok(out)
}

pub fn cmd_construct(a: &ConstructArgs) -> Result<String, Error> {
    let dto: SwitchesDto = json::parse_doc(&read_input(a.switches)?)?;
    let prec = match a.n_prec.or(dto.horizon.map(|h| h + 1)) {
        Some(p) => p,
        None => return Err(Error::Precondition("need --N or a horizon in the switches file")),
    };
    let doc = match FieldTag::resolve(a.field)? {
        FieldTag::Q => construct_in(Rationals, "Q", &dto, a, prec)?,
        FieldTag::Fp(p) => {
            let f = PrimeField::new(p)?;
            construct_in(f, &FieldTag::Fp(p).label(), &dto, a, prec)?
        }
    };
    json::render(&doc)
}

pub struct PadeArgs<'a> {
    pub gen: &'a str,
    pub rho: &'a str,
    pub prec: Option<usize>,
}

pub fn cmd_pade(a: &PadeArgs) -> Result<String, Error> {
    let rho = parse::parse_usizes(a.rho)?;
    let prec = a.prec.unwrap_or(sigma(&rho) + 2).max(2);
    let sys = parse::build_system(&parse::parse_gen(a.gen)?, prec)?;
    let sol = pade_solve(&sys, &rho)?;
    let normal = check_normal(&sys, &rho)?.is_normal();
    let f = sys.field();
    let doc = PadeDto {
        schema: json::SCHEMA.into(),
        kind: "pade".into(),
        rho: sol.rho.clone(),
        a: sol.a.iter().map(|p| json::poly_dto(f, p)).collect(),
        ord: sol.ord,
        nullity: sol.nullity,
        normal,
    };
    json::render(&doc)
}

pub struct ScanArgs<'a> {
    pub gen: &'a str,
    pub bound: usize,
    pub mode: &'a str,
    pub prec: Option<usize>,
    pub jobs: usize,
}

pub fn cmd_scan(a: &ScanArgs) -> Result<String, Error> {
    let mode = match a.mode {
        "all" => ScanMode::All,
        "diagonal" => ScanMode::Diagonal,
        "sorted" => ScanMode::Sorted,
        _ => return Err(Error::Parse("mode is all, diagonal, or sorted")),
    };
    if a.bound == 0 {
        return Err(Error::Precondition("scan bound must be positive"));
    }
    let prec = a.prec.unwrap_or(a.bound + 2).max(a.bound + 2);
    let sys = parse::build_system(&parse::parse_gen(a.gen)?, prec)?;
    let tuples = scan_tuples(sys.n(), a.bound, mode);
    let mut bad = Vec::new();
    if a.jobs <= 1 {
        for rho in &tuples {
            if !check_normal(&sys, rho)?.is_normal() {
                bad.push(rho.clone());
            }
        }
    } else {
        let (tx, rx) = mpsc::channel::<(usize, Result<bool, Error>)>();
        std::thread::scope(|s| {
            for t in 0..a.jobs {
                let tx = tx.clone();
                let sys = &sys;
                let tuples = &tuples;
                s.spawn(move || {
                    let mut i = t;
                    while i < tuples.len() {
                        let r = check_normal(sys, &tuples[i]).map(|n| n.is_normal());
                        if tx.send((i, r)).is_err() {
                            return;
                        }
                        i += a.jobs;
                    }
                });
            }
            drop(tx);
            let mut flags = vec![true; tuples.len()];
            for (i, r) in rx {
                flags[i] = r?;
            }
            for (i, ok) in flags.iter().enumerate() {
                if !ok {
                    bad.push(tuples[i].clone());
                }
            }
            Ok::<(), Error>(())
        })?;
    }
    let doc = ScanDto {
        schema: json::SCHEMA.into(),
        kind: "scan".into(),
        mode: a.mode.into(),
        bound: a.bound,
        bad,
    };
    json::render(&doc)
}

pub struct AdelicArgs<'a> {
    pub a: &'a str,
    pub omega: &'a str,
    pub s: Option<&'a str>,
    pub corollary: bool,
}

pub fn cmd_adelic(args: &AdelicArgs) -> Result<String, Error> {
    if args.s.is_none() && !args.corollary {
        return Err(Error::Precondition("give --S points, --corollary, or both"));
    }
    let f = Rationals;
    let a = parse::parse_polys(&f, args.a)?;
    let omegas = parse::parse_scalars(&f, args.omega)?;
    let mut doc = AdelicDto {
        schema: json::SCHEMA.into(),
        kind: "adelic".into(),
        n: a.len(),
        omega: omegas.iter().map(|w| f.encode(w)).collect(),
        s: None,
        margin: None,
        delta_deg: None,
        local: None,
        corollary: None,
    };
    if let Some(slist) = args.s {
        let points = parse::parse_scalars(&f, slist)?;
        let rep = adelic_margin(&f, &a, &omegas, &points)?;
        doc.s = Some(points.iter().map(|p| f.encode(p)).collect());
        doc.margin = Some(rep.margin);
        doc.delta_deg = Some(rep.delta_deg);
        doc.local = Some(
            rep.local
                .iter()
                .map(|l| LocalDto {
                    alpha: f.encode(&l.alpha),
                    ord_a: l.ord_a.clone(),
                    ord_af: l.ord_af,
                    norm_log: l.norm_log,
                })
                .collect(),
        );
    }
    if args.corollary {
        let rep = corollary_checks(&f, &a, &omegas)?;
        doc.corollary = Some(CorollaryDto {
            substitution_margin: rep.substitution_margin,
            combination_norm: rep.combination_norm,
            product_margin: rep.product_margin,
            pair_norms: rep.pair_norms.clone(),
            pair_margin: rep.pair_margin,
        });
    }
    json::render(&doc)
}

pub struct GraphArgs<'a> {
    pub extremal: Option<usize>,
    pub switches: Option<&'a str>,
    pub u: Option<&'a str>,
    pub gen: Option<&'a str>,
    pub q_max: i64,
    pub format: &'a str,
}

pub fn cmd_graph(a: &GraphArgs) -> Result<String, Error> {
    let profile = match (a.extremal, a.switches, a.u, a.gen) {
        (Some(n), None, None, None) => {
            if n < 2 {
                return Err(Error::Precondition("need n >= 2"));
            }
            extremal(n, a.q_max)
        }
        (None, Some(path), None, None) => {
            let dto: SwitchesDto = json::parse_doc(&read_input(path)?)?;
            eval_switches(&dto.to_data()?, a.q_max)?
        }
        (None, None, Some(path), None) => {
            let dto: PointDto = json::parse_doc(&read_input(path)?)?;
            match FieldTag::parse(&dto.field)? {
                FieldTag::Q => minima_profile(&dto.to_point(&Rationals)?, a.q_max)?,
                FieldTag::Fp(p) => {
                    minima_profile(&dto.to_point(&PrimeField::new(p)?)?, a.q_max)?
                }
            }
        }
        (None, None, None, Some(spec)) => {
            let sys = parse::build_system(&parse::parse_gen(spec)?, (a.q_max + 2).max(2) as usize)?;
            minima_profile(&sys.point()?, a.q_max)?
        }
        _ => {
            return Err(Error::Precondition(
                "give exactly one of --extremal, --switches, --u, --gen",
            ))
        }
    };
    match a.format {
        "csv" => Ok(graph::profile_csv(&profile)),
        "svg" => Ok(graph::profile_svg(&profile)),
        "json" => json::render(&ProfileDto::from_profile(&profile)),
        _ => Err(Error::Parse("format is csv, svg, or json")),
    }
}

/// Exit-code contract: 0 ok, 2 precision, 3 parse, 4 verification,
/// 5 precondition.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Indeterminate | Error::PrecisionShort { .. } => 2,
        Error::Parse(_) => 3,
        Error::Verification(_) | Error::NonUnimodular => 4,
        _ => 5,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes() {
        assert_eq!(exit_code(&Error::Indeterminate), 2);
        assert_eq!(exit_code(&Error::PrecisionShort { needed: 5, have: 3 }), 2);
        assert_eq!(exit_code(&Error::Parse("x")), 3);
        assert_eq!(exit_code(&Error::Verification("x")), 4);
        assert_eq!(exit_code(&Error::NonUnimodular), 4);
        assert_eq!(exit_code(&Error::Precondition("x")), 5);
        assert_eq!(exit_code(&Error::BadSwitchData("x")), 5);
        assert_eq!(exit_code(&Error::DivisionByZero), 5);
    }

    #[test]
    fn parallel_rows_match() {
        use ffpgn_core::field::PrimeField;
        use ffpgn_core::series::LaurentSeries;
        let f = PrimeField::new(5).unwrap();
        let coeffs: Vec<u64> = vec![1, 3, 0, 2, 4, 1, 0, 3, 2, 1, 4, 0, 1];
        let s1 = LaurentSeries::new(f.clone(), 0, coeffs.clone(), Some(-12)).unwrap();
        let s2 = LaurentSeries::new(
            f.clone(),
            0,
            vec![2, 0, 4, 1, 1, 0, 2, 3, 0, 4, 1, 2, 3],
            Some(-12),
        )
        .unwrap();
        let u = UnitPoint::new(vec![s1, s2]).unwrap();
        let seq = minima_rows(&u, 10, 1).unwrap();
        let par = minima_rows(&u, 10, 4).unwrap();
        assert_eq!(seq, par);
    }
}
