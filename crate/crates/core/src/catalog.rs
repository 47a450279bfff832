//! Classification table of irreducible Hermitian symmetric spaces of
//! noncompact type.
//!
//! Every irreducible domain is pinned down by its invariants `(r, a, b)`; the
//! complex dimension `d` and the genus `γ` follow from
//!
//! ```text
//! 2 d = r (2 b + 2 + a (r - 1))
//! γ   = (r - 1) a + b + 2
//! ```
//!
//! The parameter ranges of the classical families are the canonical
//! duplicate-free labeling: `I[n,m]` with `n <= m`, `II[n]` with `n >= 5`,
//! `III[n]` with `n >= 2`, `IV[n]` with `n >= 5`, plus the two exceptional
//! domains.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogError {
    #[error("{kind} parameter out of range: {reason}")]
    OutOfRange { kind: &'static str, reason: String },
    #[error("invariants (r={r}, a={a}, b={b}) do not reproduce {what} = {given} (expected {expected})")]
    InconsistentCustom { r: u32, a: u32, b: u32, what: &'static str, given: u64, expected: u64 },
    #[error("a product needs at least one factor")]
    EmptyProduct,
}

/// Type tag of an irreducible domain, with the parameters of its family.
///
/// The derived ordering (variant first, then parameters) is the catalog
/// ordering used by [`enumerate_domains`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(tag = "type")]
pub enum DomainKind {
    /// Rectangular `n x m` complex matrices.
    TypeI { n: u32, m: u32 },
    /// Antisymmetric `n x n` matrices.
    TypeII { n: u32 },
    /// Symmetric `n x n` matrices.
    TypeIII { n: u32 },
    /// Spin factor (Lie ball) in `C^n`.
    TypeIV { n: u32 },
    /// Exceptional, dimension 16.
    TypeV,
    /// Exceptional, dimension 27.
    TypeVI,
    /// Explicit invariants with no family label.
    Custom { r: u32, a: u32, b: u32 },
}

impl DomainKind {
    pub fn build(self) -> Result<DomainSpec, CatalogError> {
        make_domain(self)
    }

    fn family_name(&self) -> &'static str {
        match self {
            DomainKind::TypeI { .. } => "I",
            DomainKind::TypeII { .. } => "II",
            DomainKind::TypeIII { .. } => "III",
            DomainKind::TypeIV { .. } => "IV",
            DomainKind::TypeV => "V",
            DomainKind::TypeVI => "VI",
            DomainKind::Custom { .. } => "custom",
        }
    }
}

/// Spec-string form, e.g. `I:2,12`, `IV:18`, `VI`, `custom:3,1,0`.
impl fmt::Display for DomainKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            DomainKind::TypeI { n, m } => write!(f, "I:{n},{m}"),
            DomainKind::TypeII { n } => write!(f, "II:{n}"),
            DomainKind::TypeIII { n } => write!(f, "III:{n}"),
            DomainKind::TypeIV { n } => write!(f, "IV:{n}"),
            DomainKind::TypeV => write!(f, "V"),
            DomainKind::TypeVI => write!(f, "VI"),
            DomainKind::Custom { r, a, b } => write!(f, "custom:{r},{a},{b}"),
        }
    }
}

/// An irreducible domain with validated invariants.
///
/// Construct through [`make_domain`]; the fields are read-only so the two
/// derived identities always hold.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct DomainSpec {
    kind: DomainKind,
    r: u32,
    a: u32,
    b: u32,
    #[serde(rename = "d")]
    dim: u64,
    genus: u64,
}

impl DomainSpec {
    pub fn kind(&self) -> DomainKind {
        self.kind
    }

    /// Rank.
    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn a(&self) -> u32 {
        self.a
    }

    pub fn b(&self) -> u32 {
        self.b
    }

    /// Complex dimension `d`.
    pub fn dim(&self) -> u64 {
        self.dim
    }

    /// Genus `γ`, the ratio between the Bergman and hyperbolic metrics.
    pub fn genus(&self) -> u64 {
        self.genus
    }

    /// Builds a custom domain and checks it against externally supplied
    /// dimension and genus.
    pub fn from_invariants(r: u32, a: u32, b: u32, dim: u64, genus: u64) -> Result<Self, CatalogError> {
        let spec = make_domain(DomainKind::Custom { r, a, b })?;
        if spec.dim != dim {
            return Err(CatalogError::InconsistentCustom { r, a, b, what: "d", given: dim, expected: spec.dim });
        }
        if spec.genus != genus {
            return Err(CatalogError::InconsistentCustom {
                r,
                a,
                b,
                what: "genus",
                given: genus,
                expected: spec.genus,
            });
        }
        Ok(spec)
    }

    fn from_rab(kind: DomainKind, r: u32, a: u32, b: u32) -> Self {
        let (r64, a64, b64) = (u64::from(r), u64::from(a), u64::from(b));
        // r (r - 1) is even, so the division is exact.
        let dim = r64 * (b64 + 1) + a64 * r64 * (r64 - 1) / 2;
        let genus = (r64 - 1) * a64 + b64 + 2;
        DomainSpec { kind, r, a, b, dim, genus }
    }
}

impl fmt::Display for DomainSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.kind.fmt(f)
    }
}

fn out_of_range(kind: &DomainKind, reason: impl Into<String>) -> CatalogError {
    CatalogError::OutOfRange { kind: kind.family_name(), reason: reason.into() }
}

/// Reads `(r, a, b)` off the classification table and derives `d`, `γ`.
///
/// `TypeI` parameters are reordered so that `n <= m`.
pub fn make_domain(kind: DomainKind) -> Result<DomainSpec, CatalogError> {
    let spec = match kind {
        DomainKind::TypeI { n, m } => {
            let (n, m) = if n <= m { (n, m) } else { (m, n) };
            if n == 0 {
                return Err(out_of_range(&kind, "n and m must be positive"));
            }
            let a = if n >= 2 { 2 } else { 0 };
            DomainSpec::from_rab(DomainKind::TypeI { n, m }, n, a, m - n)
        }
        DomainKind::TypeII { n } => {
            if n < 5 {
                return Err(out_of_range(&kind, format!("requires n >= 5, got {n}")));
            }
            let b = if n % 2 == 0 { 0 } else { 2 };
            DomainSpec::from_rab(kind, n / 2, 4, b)
        }
        DomainKind::TypeIII { n } => {
            if n < 2 {
                return Err(out_of_range(&kind, format!("requires n >= 2, got {n}")));
            }
            DomainSpec::from_rab(kind, n, 1, 0)
        }
        DomainKind::TypeIV { n } => {
            if n < 5 {
                return Err(out_of_range(&kind, format!("requires n >= 5, got {n}")));
            }
            DomainSpec::from_rab(kind, 2, n - 2, 0)
        }
        DomainKind::TypeV => DomainSpec::from_rab(kind, 2, 6, 4),
        DomainKind::TypeVI => DomainSpec::from_rab(kind, 3, 8, 0),
        DomainKind::Custom { r, a, b } => {
            if r == 0 {
                return Err(out_of_range(&kind, "rank must be at least 1"));
            }
            DomainSpec::from_rab(kind, r, a, b)
        }
    };
    Ok(spec)
}

/// Every irreducible domain of dimension at most `max_dim`, each exactly once,
/// sorted by `(d, kind)`.
pub fn enumerate_domains(max_dim: u64) -> Vec<DomainSpec> {
    let mut out = Vec::new();
    let mut push = |kind: DomainKind| out.push(make_domain(kind).expect("enumerated parameters are in range"));

    let mut n = 1u64;
    while n * n <= max_dim {
        for m in n..=max_dim / n {
            push(DomainKind::TypeI { n: n as u32, m: m as u32 });
        }
        n += 1;
    }
    let mut n = 5u64;
    while n * (n - 1) / 2 <= max_dim {
        push(DomainKind::TypeII { n: n as u32 });
        n += 1;
    }
    let mut n = 2u64;
    while n * (n + 1) / 2 <= max_dim {
        push(DomainKind::TypeIII { n: n as u32 });
        n += 1;
    }
    for n in 5..=max_dim {
        push(DomainKind::TypeIV { n: n as u32 });
    }
    if max_dim >= 16 {
        push(DomainKind::TypeV);
    }
    if max_dim >= 27 {
        push(DomainKind::TypeVI);
    }

    out.sort_by_key(|s| (s.dim, s.kind));
    out
}

/// A reducible domain: an ordered, nonempty list of irreducible factors.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct ProductSpec {
    factors: Vec<DomainSpec>,
}

impl ProductSpec {
    pub fn new(factors: Vec<DomainSpec>) -> Result<Self, CatalogError> {
        if factors.is_empty() {
            return Err(CatalogError::EmptyProduct);
        }
        Ok(ProductSpec { factors })
    }

    pub fn factors(&self) -> &[DomainSpec] {
        &self.factors
    }

    pub fn dim(&self) -> u64 {
        self.factors.iter().map(DomainSpec::dim).sum()
    }

    /// Sum of the factor ranks.
    pub fn rank(&self) -> u32 {
        self.factors.iter().map(DomainSpec::r).sum()
    }
}

impl From<DomainSpec> for ProductSpec {
    fn from(spec: DomainSpec) -> Self {
        ProductSpec { factors: vec![spec] }
    }
}

impl From<&DomainSpec> for ProductSpec {
    fn from(spec: &DomainSpec) -> Self {
        ProductSpec { factors: vec![*spec] }
    }
}

impl From<&ProductSpec> for ProductSpec {
    fn from(spec: &ProductSpec) -> Self {
        spec.clone()
    }
}

impl fmt::Display for ProductSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, factor) in self.factors.iter().enumerate() {
            if i > 0 {
                f.write_str(" x ")?;
            }
            factor.fmt(f)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(kind: DomainKind) -> (u32, u32, u32, u64, u64) {
        let s = make_domain(kind).unwrap();
        (s.r(), s.a(), s.b(), s.dim(), s.genus())
    }

    #[test]
    fn table_columns() {
        // (r, a, b, d, γ) straight from the classification table.
        assert_eq!(row(DomainKind::TypeI { n: 2, m: 12 }), (2, 2, 10, 24, 14));
        assert_eq!(row(DomainKind::TypeI { n: 3, m: 5 }), (3, 2, 2, 15, 8));
        assert_eq!(row(DomainKind::TypeI { n: 1, m: 1 }), (1, 0, 0, 1, 2));
        assert_eq!(row(DomainKind::TypeI { n: 1, m: 4 }), (1, 0, 3, 4, 5));
        assert_eq!(row(DomainKind::TypeII { n: 5 }), (2, 4, 2, 10, 8));
        assert_eq!(row(DomainKind::TypeII { n: 6 }), (3, 4, 0, 15, 10));
        assert_eq!(row(DomainKind::TypeII { n: 7 }), (3, 4, 2, 21, 12));
        assert_eq!(row(DomainKind::TypeIII { n: 2 }), (2, 1, 0, 3, 3));
        assert_eq!(row(DomainKind::TypeIII { n: 4 }), (4, 1, 0, 10, 5));
        assert_eq!(row(DomainKind::TypeIV { n: 5 }), (2, 3, 0, 5, 5));
        assert_eq!(row(DomainKind::TypeIV { n: 18 }), (2, 16, 0, 18, 18));
        assert_eq!(row(DomainKind::TypeV), (2, 6, 4, 16, 12));
        assert_eq!(row(DomainKind::TypeVI), (3, 8, 0, 27, 18));
    }

    #[test]
    fn type_one_is_canonicalized() {
        let s = make_domain(DomainKind::TypeI { n: 12, m: 2 }).unwrap();
        assert_eq!(s.kind(), DomainKind::TypeI { n: 2, m: 12 });
        assert_eq!((s.r(), s.a(), s.b()), (2, 2, 10));
    }

    #[test]
    fn ranges_are_enforced() {
        for kind in [
            DomainKind::TypeI { n: 0, m: 3 },
            DomainKind::TypeII { n: 4 },
            DomainKind::TypeIII { n: 1 },
            DomainKind::TypeIV { n: 4 },
            DomainKind::Custom { r: 0, a: 1, b: 1 },
        ] {
            assert!(matches!(make_domain(kind), Err(CatalogError::OutOfRange { .. })), "{kind:?}");
        }
    }

    #[test]
    fn custom_consistency() {
        let s = DomainSpec::from_invariants(2, 16, 0, 18, 18).unwrap();
        assert_eq!(s.kind(), DomainKind::Custom { r: 2, a: 16, b: 0 });
        assert!(matches!(
            DomainSpec::from_invariants(2, 16, 0, 17, 18),
            Err(CatalogError::InconsistentCustom { what: "d", .. })
        ));
        assert!(matches!(
            DomainSpec::from_invariants(2, 16, 0, 18, 3),
            Err(CatalogError::InconsistentCustom { what: "genus", .. })
        ));
    }

    #[test]
    fn small_enumerations() {
        assert_eq!(
            enumerate_domains(1).iter().map(|s| s.kind()).collect::<Vec<_>>(),
            vec![DomainKind::TypeI { n: 1, m: 1 }]
        );
        let five: Vec<_> = enumerate_domains(5).iter().map(|s| s.kind()).collect();
        assert!(five.contains(&DomainKind::TypeIV { n: 5 }));
        assert!(five.contains(&DomainKind::TypeIII { n: 2 }));
        let kinds: Vec<_> = enumerate_domains(24).iter().map(|s| s.kind()).collect();
        assert!(kinds.contains(&DomainKind::TypeI { n: 2, m: 12 }));
        assert!(kinds.contains(&DomainKind::TypeIV { n: 18 }));
        assert!(!kinds.contains(&DomainKind::TypeVI));
    }

    #[test]
    fn enumeration_is_sorted_bounded_and_unique() {
        let all = enumerate_domains(200);
        assert!(all.windows(2).all(|w| (w[0].dim(), w[0].kind()) < (w[1].dim(), w[1].kind())));
        assert!(all.iter().all(|s| s.dim() <= 200));
        for s in &all {
            let (r, a, b) = (u64::from(s.r()), u64::from(s.a()), u64::from(s.b()));
            assert_eq!(2 * s.dim(), r * (2 * b + 2 + a * (r - 1)));
            assert_eq!(s.genus(), (r - 1) * a + b + 2);
        }
    }

    #[test]
    fn product_dimension_and_display() {
        let a = make_domain(DomainKind::TypeI { n: 2, m: 12 }).unwrap();
        let b = make_domain(DomainKind::TypeIV { n: 18 }).unwrap();
        let p = ProductSpec::new(vec![a, b]).unwrap();
        assert_eq!(p.dim(), 42);
        assert_eq!(p.rank(), 4);
        assert_eq!(p.to_string(), "I:2,12 x IV:18");
        assert_eq!(ProductSpec::new(vec![]), Err(CatalogError::EmptyProduct));
    }
}
