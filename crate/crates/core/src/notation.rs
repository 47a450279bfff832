//! Text notation for domains and products.
//!
//! ```text
//! domain  := TYPE [ ":" params ]
//! TYPE    := "I" | "II" | "III" | "IV" | "V" | "VI" | "custom"
//! params  := uint ( "," uint )*
//! product := domain ( "x" domain )*
//! ```
//!
//! `I:n,m`, `II:n`, `III:n`, `IV:n` and `custom:r,a,b` take parameters; `V`
//! and `VI` take none. Type names are case-insensitive.

use std::str::FromStr;

use thiserror::Error;

use crate::catalog::{make_domain, CatalogError, DomainKind, DomainSpec, ProductSpec};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NotationError {
    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },
    #[error(transparent)]
    Catalog(#[from] CatalogError),
}

fn parse_err(position: usize, message: impl Into<String>) -> NotationError {
    NotationError::Parse { position, message: message.into() }
}

/// Parses a single domain; `offset` is added to reported positions.
fn parse_domain_at(text: &str, offset: usize) -> Result<DomainSpec, NotationError> {
    let lead = text.len() - text.trim_start().len();
    let body = text.trim();
    let start = offset + lead;
    if body.is_empty() {
        return Err(parse_err(start, "expected a domain type"));
    }

    let (name, params, params_at) = match body.find(':') {
        Some(i) => (&body[..i], Some(&body[i + 1..]), start + i + 1),
        None => (body, None, start + body.len()),
    };

    let values = match params {
        None => Vec::new(),
        Some(p) => {
            let mut values = Vec::new();
            let mut pos = params_at;
            for piece in p.split(',') {
                let trimmed = piece.trim();
                let at = pos + (piece.len() - piece.trim_start().len());
                let v: u32 = trimmed
                    .parse()
                    .map_err(|_| parse_err(at, format!("expected a nonnegative integer, found {trimmed:?}")))?;
                values.push(v);
                pos += piece.len() + 1;
            }
            values
        }
    };

    let arity = |want: usize| -> Result<(), NotationError> {
        if values.len() == want {
            Ok(())
        } else {
            Err(parse_err(params_at, format!("type {name} takes {want} parameter(s), found {}", values.len())))
        }
    };

    let kind = match name.to_ascii_uppercase().as_str() {
        "I" => {
            arity(2)?;
            DomainKind::TypeI { n: values[0], m: values[1] }
        }
        "II" => {
            arity(1)?;
            DomainKind::TypeII { n: values[0] }
        }
        "III" => {
            arity(1)?;
            DomainKind::TypeIII { n: values[0] }
        }
        "IV" => {
            arity(1)?;
            DomainKind::TypeIV { n: values[0] }
        }
        "V" => {
            arity(0)?;
            DomainKind::TypeV
        }
        "VI" => {
            arity(0)?;
            DomainKind::TypeVI
        }
        "CUSTOM" => {
            arity(3)?;
            DomainKind::Custom { r: values[0], a: values[1], b: values[2] }
        }
        _ => return Err(parse_err(start, format!("unknown domain type {name:?}"))),
    };
    Ok(make_domain(kind)?)
}

pub fn parse_domain(text: &str) -> Result<DomainSpec, NotationError> {
    parse_domain_at(text, 0)
}

/// Parses factors separated by `x`.
pub fn parse_product(text: &str) -> Result<ProductSpec, NotationError> {
    let mut factors = Vec::new();
    let mut offset = 0;
    for token in split_factors(text) {
        factors.push(parse_domain_at(token, offset)?);
        offset += token.len() + 1;
    }
    Ok(ProductSpec::new(factors)?)
}

/// No type name contains the letter `x`, so every `x` separates factors.
fn split_factors(text: &str) -> Vec<&str> {
    text.split(['x', 'X']).collect()
}

impl FromStr for DomainSpec {
    type Err = NotationError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_domain(s)
    }
}

impl FromStr for ProductSpec {
    type Err = NotationError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_product(s)
    }
}
