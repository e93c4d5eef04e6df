//! Small categories used as test and self-check inputs.
//!
//! The same data ships as JSON under `fixtures/`; tests keep the two in sync.

use super::{CategoryJson, RibbonError, SkeletalRibbon};
use crate::arith::CycNumber;
use crate::fusion::{cyclic_ring, FusionRing};

fn z2(f: CycNumber, r: CycNumber) -> SkeletalRibbon {
    SkeletalRibbon::new(
        cyclic_ring(2),
        &[([1, 1, 1, 1, 0, 0], f)],
        &[([1, 1, 0], r)],
        None,
    )
    .expect("ℤ/2 fixture data is well formed")
}

/// Representations of ℤ/2 with the trivial braiding.
pub fn z2_trivial() -> SkeletalRibbon {
    z2(CycNumber::one(), CycNumber::one())
}

/// Trivial associator, self-braiding −1 on the odd object.
pub fn z2_sign() -> SkeletalRibbon {
    z2(CycNumber::one(), CycNumber::from_int(-1))
}

/// Associator −1, self-braiding `i`.
pub fn z2_semion() -> SkeletalRibbon {
    z2(CycNumber::from_int(-1), CycNumber::zeta(4, 1))
}

/// Associator −1, self-braiding `−i`.
pub fn z2_antisemion() -> SkeletalRibbon {
    z2(CycNumber::from_int(-1), CycNumber::zeta(4, 3))
}

/// ℤ/3 with trivial associator and bicharacter braiding `R[a,b] = ζ₃^{ab}`.
pub fn z3() -> SkeletalRibbon {
    let ring = cyclic_ring(3);
    let mut r = Vec::new();
    for a in 1..3 {
        for b in 1..3 {
            r.push(([a, b, (a + b) % 3], CycNumber::zeta(3, (a * b) as i64)));
        }
    }
    let f: Vec<_> = super::admissible_f(&ring)
        .into_iter()
        .filter(|k| !k[..3].contains(&0))
        .map(|k| (k, CycNumber::one()))
        .collect();
    SkeletalRibbon::new(ring, &f, &r, None).expect("ℤ/3 fixture data is well formed")
}

/// The Fibonacci category, in a gauge where every symbol lies in ℚ(ζ₅).
pub fn fibonacci() -> SkeletalRibbon {
    let ring = FusionRing::new(
        vec!["1".into(), "t".into()],
        0,
        &[
            (0, 0, 0, 1),
            (0, 1, 1, 1),
            (1, 0, 1, 1),
            (1, 1, 0, 1),
            (1, 1, 1, 1),
        ],
        None,
    )
    .expect("Fibonacci ring");
    // φ⁻¹ = ζ₅ + ζ₅⁴
    let phi_inv = &CycNumber::zeta(5, 1) + &CycNumber::zeta(5, 4);
    let f = vec![
        ([1, 1, 1, 0, 1, 1], CycNumber::one()),
        ([1, 1, 1, 1, 0, 0], phi_inv.clone()),
        ([1, 1, 1, 1, 0, 1], CycNumber::one()),
        ([1, 1, 1, 1, 1, 0], phi_inv.clone()),
        ([1, 1, 1, 1, 1, 1], -&phi_inv),
    ];
    let r = vec![
        ([1, 1, 0], CycNumber::zeta(5, 3)),
        ([1, 1, 1], CycNumber::zeta(10, 3)),
    ];
    SkeletalRibbon::new(ring, &f, &r, None).expect("Fibonacci fixture data is well formed")
}

/// Names and builders of every in-code fixture.
pub fn all() -> Vec<(&'static str, SkeletalRibbon)> {
    vec![
        ("z2_trivial", z2_trivial()),
        ("z2_sign", z2_sign()),
        ("z2_semion", z2_semion()),
        ("z2_antisemion", z2_antisemion()),
        ("z3", z3()),
        ("fibonacci", fibonacci()),
    ]
}

/// The JSON fixtures shipped with the crate.
pub const SHIPPED: &[(&str, &str)] = &[
    ("z2_trivial", include_str!("../../fixtures/z2_trivial.json")),
    ("z2_sign", include_str!("../../fixtures/z2_sign.json")),
    ("z2_semion", include_str!("../../fixtures/z2_semion.json")),
    ("z2_antisemion", include_str!("../../fixtures/z2_antisemion.json")),
    ("z3", include_str!("../../fixtures/z3.json")),
    ("fibonacci", include_str!("../../fixtures/fibonacci.json")),
];

/// Parses a category from its JSON text.
pub fn parse_category(text: &str) -> Result<SkeletalRibbon, RibbonError> {
    let json: CategoryJson = serde_json::from_str(text)
        .map_err(|e| RibbonError::Diagram(format!("malformed category JSON: {e}")))?;
    json.to_category()
}

/// Loads a shipped fixture by name.
pub fn shipped(name: &str) -> Option<Result<SkeletalRibbon, RibbonError>> {
    SHIPPED
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, text)| parse_category(text))
}
