//! Versioned JSON interchange.  Every document carries "schema": "ffpgn/1"
//! and a "kind" discriminator; field elements travel as strings in the
//! field's literal syntax so the format is exact for both Q and Fp.
//! Struct field order is the canonical key order (serde_json preserves it),
//! which keeps byte-identical output across runs.

use ffpgn_core::construct::{Constructed, RationalVec};
use ffpgn_core::error::Error;
use ffpgn_core::field::Field;
use ffpgn_core::minima::{MinimaCertificate, UnitPoint};
use ffpgn_core::nsystem::{Profile, SwitchData, SwitchRecord};
use ffpgn_core::poly::Poly;
use ffpgn_core::series::LaurentSeries;
use serde::{Deserialize, Serialize};

pub const SCHEMA: &str = "ffpgn/1";

fn check_schema(s: &str) -> Result<(), Error> {
    if s == SCHEMA {
        Ok(())
    } else {
        Err(Error::Parse("unsupported schema version"))
    }
}

/// Coefficients run downward from exponent `hi`; `floor` is the exactness
/// marker (null means the series is exact).
#[derive(Serialize, Deserialize)]
pub struct SeriesDto {
    pub hi: i64,
    pub coeffs: Vec<String>,
    pub floor: Option<i64>,
}

impl SeriesDto {
    pub fn from_series<K: Field>(field: &K, s: &LaurentSeries<K>) -> Self {
        SeriesDto {
            hi: s.hi(),
            coeffs: s.coeffs().iter().map(|c| field.encode(c)).collect(),
            floor: s.floor(),
        }
    }

    pub fn to_series<K: Field>(&self, field: &K) -> Result<LaurentSeries<K>, Error> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| field.decode(c))
            .collect::<Result<Vec<_>, _>>()?;
        LaurentSeries::new(field.clone(), self.hi, coeffs, self.floor)
    }
}

#[derive(Serialize, Deserialize)]
pub struct PointDto {
    pub schema: String,
    pub kind: String,
    pub field: String,
    pub n: usize,
    pub coords: Vec<SeriesDto>,
}

impl PointDto {
    pub fn from_point<K: Field>(field_label: &str, u: &UnitPoint<K>) -> Self {
        PointDto {
            schema: SCHEMA.into(),
            kind: "point".into(),
            field: field_label.into(),
            n: u.n(),
            coords: u
                .coords()
                .iter()
                .map(|s| SeriesDto::from_series(u.field(), s))
                .collect(),
        }
    }

    pub fn to_point<K: Field>(&self, field: &K) -> Result<UnitPoint<K>, Error> {
        check_schema(&self.schema)?;
        if self.kind != "point" {
            return Err(Error::Parse("expected a point document"));
        }
        let coords = self
            .coords
            .iter()
            .map(|s| s.to_series(field))
            .collect::<Result<Vec<_>, _>>()?;
        UnitPoint::new(coords)
    }
}

/// Ascending coefficient strings.
pub fn poly_dto<K: Field>(field: &K, p: &Poly<K>) -> Vec<String> {
    p.coeffs().iter().map(|c| field.encode(c)).collect()
}

pub fn poly_from_dto<K: Field>(field: &K, d: &[String]) -> Result<Poly<K>, Error> {
    let coeffs = d.iter().map(|c| field.decode(c)).collect::<Result<Vec<_>, _>>()?;
    Ok(Poly::new(field.clone(), coeffs))
}

#[derive(Serialize, Deserialize)]
pub struct CertDto {
    pub q: i64,
    pub values: Vec<i64>,
    /// row-major matrix of polynomials, each as ascending coefficients
    pub basis: Vec<Vec<Vec<String>>>,
}

impl CertDto {
    pub fn from_cert<K: Field>(field: &K, c: &MinimaCertificate<K>) -> Self {
        CertDto {
            q: c.q,
            values: c.values.clone(),
            basis: (0..c.basis.rows())
                .map(|i| c.basis.row(i).iter().map(|p| poly_dto(field, p)).collect())
                .collect(),
        }
    }
}

#[derive(Serialize, Deserialize)]
pub struct ProfileDto {
    pub schema: String,
    pub kind: String,
    pub n: usize,
    #[serde(rename = "Q")]
    pub q_max: i64,
    pub values: Vec<Vec<i64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificates: Option<Vec<CertDto>>,
}

impl ProfileDto {
    pub fn from_profile(p: &Profile) -> Self {
        ProfileDto {
            schema: SCHEMA.into(),
            kind: "profile".into(),
            n: p.n,
            q_max: p.horizon(),
            values: p.values.clone(),
            certificates: None,
        }
    }

    pub fn to_profile(&self) -> Result<Profile, Error> {
        check_schema(&self.schema)?;
        let p = Profile { n: self.n, values: self.values.clone() };
        p.validate()?;
        Ok(p)
    }
}

#[derive(Serialize, Deserialize)]
pub struct SwitchRecordDto {
    pub q: i64,
    pub k: usize,
    pub l: usize,
}

#[derive(Serialize, Deserialize)]
pub struct SwitchesDto {
    pub schema: String,
    pub kind: String,
    pub n: usize,
    /// absent: the last segment extends indefinitely
    #[serde(skip_serializing_if = "Option::is_none")]
    pub horizon: Option<i64>,
    pub switches: Vec<SwitchRecordDto>,
}

impl SwitchesDto {
    pub fn from_data(sd: &SwitchData, horizon: Option<i64>) -> Self {
        SwitchesDto {
            schema: SCHEMA.into(),
            kind: "switches".into(),
            n: sd.n,
            horizon,
            switches: sd
                .records
                .iter()
                .map(|r| SwitchRecordDto { q: r.q, k: r.k, l: r.l })
                .collect(),
        }
    }

    pub fn to_data(&self) -> Result<SwitchData, Error> {
        check_schema(&self.schema)?;
        if self.kind != "switches" {
            return Err(Error::Parse("expected a switches document"));
        }
        Ok(SwitchData {
            n: self.n,
            records: self
                .switches
                .iter()
                .map(|r| SwitchRecord { q: r.q, k: r.k, l: r.l })
                .collect(),
        })
    }
}

#[derive(Serialize, Deserialize)]
pub struct RationalVecDto {
    /// ascending coefficients per component
    pub nums: Vec<Vec<String>>,
    pub den: Vec<String>,
}

impl RationalVecDto {
    pub fn from_vec<K: Field>(field: &K, v: &RationalVec<K>) -> Self {
        RationalVecDto {
            nums: v.nums.iter().map(|p| poly_dto(field, p)).collect(),
            den: poly_dto(field, &v.den),
        }
    }
}

#[derive(Serialize, Deserialize)]
pub struct ConstructStepDto {
    pub q: i64,
    pub k: usize,
    pub l: usize,
    pub dist_log: i64,
}

#[derive(Serialize, Deserialize)]
pub struct ConstructDto {
    pub schema: String,
    pub kind: String,
    pub field: String,
    pub n: usize,
    pub prec: i64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact: Option<RationalVecDto>,
    pub steps: Vec<ConstructStepDto>,
    pub point: PointDto,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verified: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub modp: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub modp_agrees: Option<bool>,
}

impl ConstructDto {
    pub fn from_constructed<K: Field>(
        field: &K,
        field_label: &str,
        sd: &SwitchData,
        c: &Constructed<K>,
        prec: i64,
    ) -> Self {
        // ConstructionStep records the rising component k; the landing index
        // l for the same q lives in the switch record, so zip them up.
        let steps = c
            .steps
            .iter()
            .map(|s| {
                let l = sd
                    .records
                    .iter()
                    .find(|r| r.q == s.q)
                    .map(|r| r.l)
                    .unwrap_or(s.k);
                ConstructStepDto { q: s.q, k: s.k, l, dist_log: s.dist_log }
            })
            .collect();
        ConstructDto {
            schema: SCHEMA.into(),
            kind: "construct".into(),
            field: field_label.into(),
            n: sd.n,
            prec,
            exact: c.exact.as_ref().map(|v| RationalVecDto::from_vec(field, v)),
            steps,
            point: PointDto::from_point(field_label, &c.point),
            verified: None,
            modp: None,
            modp_agrees: None,
        }
    }
}

#[derive(Serialize, Deserialize)]
pub struct PadeDto {
    pub schema: String,
    pub kind: String,
    pub rho: Vec<usize>,
    /// ascending coefficients per component, first nonzero unknown scaled to 1
    pub a: Vec<Vec<String>>,
    pub ord: Option<i64>,
    pub nullity: usize,
    pub normal: bool,
}

#[derive(Serialize, Deserialize)]
pub struct ScanDto {
    pub schema: String,
    pub kind: String,
    pub mode: String,
    pub bound: usize,
    pub bad: Vec<Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
pub struct LocalDto {
    pub alpha: String,
    pub ord_a: Vec<Option<i64>>,
    pub ord_af: i64,
    pub norm_log: i64,
}

#[derive(Serialize, Deserialize)]
pub struct CorollaryDto {
    pub substitution_margin: i64,
    pub combination_norm: i64,
    pub product_margin: i64,
    pub pair_norms: Vec<i64>,
    pub pair_margin: i64,
}

#[derive(Serialize, Deserialize)]
pub struct AdelicDto {
    pub schema: String,
    pub kind: String,
    pub n: usize,
    pub omega: Vec<String>,
    #[serde(rename = "S", skip_serializing_if = "Option::is_none")]
    pub s: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub margin: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub delta_deg: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub local: Option<Vec<LocalDto>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub corollary: Option<CorollaryDto>,
}

/// Canonical rendering: pretty JSON with a trailing newline.
pub fn render<T: Serialize>(doc: &T) -> Result<String, Error> {
    let mut s = serde_json::to_string_pretty(doc)
        .map_err(|_| Error::Parse("serialization failed"))?;
    s.push('\n');
    Ok(s)
}

pub fn parse_doc<'a, T: Deserialize<'a>>(s: &'a str) -> Result<T, Error> {
    serde_json::from_str(s).map_err(|_| Error::Parse("malformed JSON document"))
}
