//! Abelian 3-cocycles on ℤ/2 and gauge comparison of pointed categories.

use super::checks::{verify_hexagon, verify_pentagon, verify_rigidity};
use super::{RibbonError, SkeletalRibbon};
use crate::arith::{CycNumber, Rational};
use crate::fusion::cyclic_ring;

/// `a ↦ R[a,a,a⊗a]`, which determines a pointed braided category up to
/// equivalence. Fails unless every product has a single summand.
pub fn quadratic_form(cat: &SkeletalRibbon) -> Result<Vec<CycNumber>, RibbonError> {
    let ring = cat.ring();
    (0..ring.len())
        .map(|a| {
            for b in 0..ring.len() {
                match ring.product(a, b).as_deref() {
                    Some([(_, 1)]) => {}
                    _ => return Err(RibbonError::NotPointed),
                }
            }
            let (aa, _) = ring.product(a, a).expect("checked above")[0];
            Ok(cat.r_symbol(a, a, aa))
        })
        .collect()
}

/// Whether two pointed categories over the same ring are related by a gauge
/// transformation, decided by comparing quadratic forms.
pub fn gauge_equivalent(x: &SkeletalRibbon, y: &SkeletalRibbon) -> Result<bool, RibbonError> {
    if x.ring() != y.ring() {
        return Ok(false);
    }
    Ok(quadratic_form(x)? == quadratic_form(y)?)
}

/// Every root of unity of order at most `max_order`, by increasing order.
fn roots_up_to(max_order: u32) -> Vec<CycNumber> {
    let mut out = Vec::new();
    for n in 1..=max_order {
        for k in 0..n {
            if num_integer::gcd(k, n) == 1 {
                out.push(CycNumber::zeta(n, i64::from(k)));
            }
        }
    }
    out
}

fn z2_category(f: CycNumber, r: CycNumber) -> Result<SkeletalRibbon, RibbonError> {
    SkeletalRibbon::new(
        cyclic_ring(2),
        &[([1, 1, 1, 1, 0, 0], f)],
        &[([1, 1, 0], r)],
        None,
    )
}

/// Searches `F[1,1,1,1,0,0]` and `R[1,1,0]` over roots of unity of order
/// `≤ max_order`, keeps the solutions of pentagon, hexagons and snakes, and
/// returns one representative per gauge class ordered by the exponent of
/// `R[1,1,0]`.
pub fn enumerate_abelian_cocycles_z2(max_order: u32) -> Result<Vec<SkeletalRibbon>, RibbonError> {
    if max_order < 8 {
        return Err(RibbonError::OrderTooSmall(max_order));
    }
    let roots = roots_up_to(max_order);
    let mut classes: Vec<SkeletalRibbon> = Vec::new();
    for f in &roots {
        let probe = z2_category(f.clone(), CycNumber::one())?;
        if !verify_pentagon(&probe).is_valid() {
            continue;
        }
        for r in &roots {
            let cat = z2_category(f.clone(), r.clone())?;
            if !verify_hexagon(&cat).is_valid() || !verify_rigidity(&cat).is_valid() {
                continue;
            }
            let mut known = false;
            for c in &classes {
                if gauge_equivalent(c, &cat)? {
                    known = true;
                    break;
                }
            }
            if !known {
                classes.push(cat);
            }
        }
    }
    let key = |c: &SkeletalRibbon| -> Rational {
        c.r_symbol(1, 1, 0)
            .root_exponent()
            .expect("searched values are roots of unity")
    };
    classes.sort_by_key(|c| key(c));
    Ok(classes)
}
