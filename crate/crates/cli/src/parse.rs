//! Flag and literal parsing: field tags, scalars, polynomials, generator
//! specs.  All errors surface as Error::Parse so the exit-code contract
//! (3 for unreadable input) holds uniformly.

use ffpgn_core::error::Error;
use ffpgn_core::field::{Field, Rationals};
use ffpgn_core::pade::SeriesSystem;
use ffpgn_core::poly::Poly;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldTag {
    Q,
    Fp(u64),
}

impl FieldTag {
    pub fn parse(s: &str) -> Result<FieldTag, Error> {
        if s == "Q" {
            return Ok(FieldTag::Q);
        }
        if let Some(p) = s.strip_prefix("Fp:") {
            let p: u64 = p
                .parse()
                .map_err(|_| Error::Parse("field tag looks like Q or Fp:<prime>"))?;
            return Ok(FieldTag::Fp(p));
        }
        Err(Error::Parse("field tag looks like Q or Fp:<prime>"))
    }

    /// Flag value, then the FFPGN_FIELD environment variable, then Q.
    pub fn resolve(cli: Option<&str>) -> Result<FieldTag, Error> {
        match cli {
            Some(s) => FieldTag::parse(s),
            None => match std::env::var("FFPGN_FIELD") {
                Ok(v) => FieldTag::parse(&v),
                Err(_) => Ok(FieldTag::Q),
            },
        }
    }

    pub fn label(&self) -> String {
        match self {
            FieldTag::Q => "Q".into(),
            FieldTag::Fp(p) => format!("Fp:{}", p),
        }
    }
}

/// Sum of terms like "3", "-1/2", "T", "-T^3", "2*T^2".  Whitespace is
/// ignored; exponents are small nonnegative integers.
pub fn parse_poly<K: Field>(field: &K, s: &str) -> Result<Poly<K>, Error> {
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(Error::Parse("empty polynomial"));
    }
    let bytes = compact.as_bytes();
    let mut parts: Vec<String> = Vec::new();
    let mut cur = String::new();
    for (i, c) in compact.chars().enumerate() {
        if (c == '+' || c == '-') && i > 0 && bytes[i - 1].is_ascii_alphanumeric() {
            parts.push(cur.clone());
            cur.clear();
        }
        if !(c == '+' && cur.is_empty()) {
            cur.push(c);
        }
    }
    parts.push(cur);
    let mut coeffs: Vec<K::Elem> = Vec::new();
    for part in &parts {
        let (coeff, exp) = parse_term(field, part)?;
        if coeffs.len() <= exp {
            coeffs.resize(exp + 1, field.zero());
        }
        coeffs[exp] = field.add(&coeffs[exp], &coeff);
    }
    Ok(Poly::new(field.clone(), coeffs))
}

fn parse_term<K: Field>(field: &K, t: &str) -> Result<(K::Elem, usize), Error> {
    match t.find('T') {
        None => Ok((field.decode(t)?, 0)),
        Some(pos) => {
            let (c_str, rest) = t.split_at(pos);
            let c_str = c_str.strip_suffix('*').unwrap_or(c_str);
            let coeff = match c_str {
                "" => field.one(),
                "-" => field.neg(&field.one()),
                other => field.decode(other)?,
            };
            let exp = match &rest[1..] {
                "" => 1,
                e => e
                    .strip_prefix('^')
                    .and_then(|d| d.parse::<usize>().ok())
                    .ok_or(Error::Parse("exponent looks like ^k with k a small nonnegative integer"))?,
            };
            Ok((coeff, exp))
        }
    }
}

/// Comma-separated scalars in the field's literal syntax.
pub fn parse_scalars<K: Field>(field: &K, s: &str) -> Result<Vec<K::Elem>, Error> {
    s.split(',').map(|t| field.decode(t.trim())).collect()
}

/// Semicolon-separated polynomials.
pub fn parse_polys<K: Field>(field: &K, s: &str) -> Result<Vec<Poly<K>>, Error> {
    s.split(';').map(|t| parse_poly(field, t)).collect()
}

/// Comma-separated nonnegative integers.
pub fn parse_usizes(s: &str) -> Result<Vec<usize>, Error> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| Error::Parse("expected a comma-separated list of nonnegative integers"))
        })
        .collect()
}

/// Generator spec: "exp:w1,w2,..." | "binomial:w1,w2,..." | "log:n".
/// All generators live over the rationals.
#[derive(Clone, Debug)]
pub enum GenSpec {
    Exp(Vec<String>),
    Binomial(Vec<String>),
    Log(usize),
}

pub fn parse_gen(s: &str) -> Result<GenSpec, Error> {
    let (kind, rest) = s
        .split_once(':')
        .ok_or(Error::Parse("generator looks like exp:w1,w2 | binomial:w1,w2 | log:n"))?;
    match kind {
        "exp" => Ok(GenSpec::Exp(rest.split(',').map(|t| t.trim().to_string()).collect())),
        "binomial" => Ok(GenSpec::Binomial(
            rest.split(',').map(|t| t.trim().to_string()).collect(),
        )),
        "log" => rest
            .trim()
            .parse::<usize>()
            .map(GenSpec::Log)
            .map_err(|_| Error::Parse("log generator takes a component count")),
        _ => Err(Error::Parse("generator looks like exp:w1,w2 | binomial:w1,w2 | log:n")),
    }
}

pub fn build_system(spec: &GenSpec, prec: usize) -> Result<SeriesSystem<Rationals>, Error> {
    let q = Rationals;
    match spec {
        GenSpec::Exp(ws) => {
            let om = ws.iter().map(|w| q.decode(w)).collect::<Result<Vec<_>, _>>()?;
            SeriesSystem::exp(q, &om, prec)
        }
        GenSpec::Binomial(ws) => {
            let om = ws.iter().map(|w| q.decode(w)).collect::<Result<Vec<_>, _>>()?;
            SeriesSystem::binomial(&om, prec)
        }
        GenSpec::Log(n) => SeriesSystem::log_powers(q, *n, prec),
    }
}
