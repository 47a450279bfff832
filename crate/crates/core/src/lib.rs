//! Volume entropy of Hermitian symmetric spaces of noncompact type.
//!
//! An irreducible domain is classified by its invariants `(r, a, b)`: rank and
//! the two root multiplicities. From those alone the entropy of the hyperbolic
//! metric (holomorphic sectional curvature between `0` and `-4`) is
//!
//! ```text
//! Ent = 2 * sqrt( sum_{j=1..r} (b + 1 + a (r - j))^2 )
//! ```
//!
//! and for a product of irreducible factors the squared entropies add.
//!
//! The crate evaluates these closed forms exactly ([`entropy`]) and checks them
//! against an independent pipeline: concrete Jordan triple systems ([`jts`]),
//! geometry in polar (eigenvalue) coordinates ([`geometry`]), and direct
//! numerical estimation of the geodesic-ball volume growth ([`verify`]).
//!
//! ```
//! use volume_entropy::{catalog::DomainKind, entropy::entropy_hyperbolic};
//!
//! let a = DomainKind::TypeI { n: 2, m: 12 }.build().unwrap();
//! let b = DomainKind::TypeIV { n: 18 }.build().unwrap();
//! assert_eq!(entropy_hyperbolic(&a).squared_quarter, 290);
//! assert_eq!(entropy_hyperbolic(&b).squared_quarter, 290);
//! ```

pub mod catalog;
pub mod entropy;
pub mod geometry;
pub mod jts;
pub mod notation;
pub mod verify;

pub use catalog::{enumerate_domains, make_domain, CatalogError, DomainKind, DomainSpec, ProductSpec};
pub use entropy::{entropy_bergman, entropy_hyperbolic, entropy_product, EntropyResult};
