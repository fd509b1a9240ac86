//! Monomial orders on x^s y^t. All three refine total degree.

use std::cmp::Ordering;

use super::Monomial2;

/// Total orders used to index jet-space coordinates.
///
/// `GrlexXY` lists x^n first within each degree (x ≺ y), `GrlexYX` lists y^n
/// first (y ≺ x), and `DiagonalFirst` refines total degree while placing
/// x^α y^α before every other monomial of degree 2α; within a degree the
/// remaining monomials follow x ≺ y.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    GrlexXY,
    GrlexYX,
    DiagonalFirst,
}

impl MonomialOrder {
    pub fn cmp(&self, a: Monomial2, b: Monomial2) -> Ordering {
        let key = |m: Monomial2| match self {
            MonomialOrder::GrlexXY => (m.deg(), 1u8, m.t),
            MonomialOrder::GrlexYX => (m.deg(), 1u8, m.s),
            MonomialOrder::DiagonalFirst => {
                let diag = if m.s == m.t { 0u8 } else { 1u8 };
                (m.deg(), diag, m.t)
            }
        };
        key(a).cmp(&key(b))
    }

    /// All monomials of total degree ≤ cap, listed in this order.
    pub fn monomials_up_to(&self, cap: u32) -> Vec<Monomial2> {
        let mut v: Vec<Monomial2> = (0..=cap)
            .flat_map(|d| (0..=d).map(move |t| Monomial2::new(d - t, t)))
            .collect();
        v.sort_by(|a, b| self.cmp(*a, *b));
        v
    }

    pub fn parse(name: &str) -> Option<MonomialOrder> {
        match name {
            "grlex-xy" => Some(MonomialOrder::GrlexXY),
            "grlex-yx" => Some(MonomialOrder::GrlexYX),
            "diag" => Some(MonomialOrder::DiagonalFirst),
            _ => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_up_to(d: u32) -> Vec<Monomial2> {
        (0..=d)
            .flat_map(|n| (0..=n).map(move |t| Monomial2::new(n - t, t)))
            .collect()
    }

    #[test]
    fn grlex_xy_prefix() {
        let ms = MonomialOrder::GrlexXY.monomials_up_to(2);
        let shown: Vec<String> = ms.iter().map(|m| m.to_string()).collect();
        assert_eq!(shown, ["1", "x", "y", "x^2", "x*y", "y^2"]);
    }

    #[test]
    fn grlex_yx_prefix() {
        let ms = MonomialOrder::GrlexYX.monomials_up_to(2);
        let shown: Vec<String> = ms.iter().map(|m| m.to_string()).collect();
        assert_eq!(shown, ["1", "y", "x", "y^2", "x*y", "x^2"]);
    }

    #[test]
    fn orders_are_total_and_refine_degree() {
        for order in [
            MonomialOrder::GrlexXY,
            MonomialOrder::GrlexYX,
            MonomialOrder::DiagonalFirst,
        ] {
            let ms = all_up_to(12);
            for &a in &ms {
                for &b in &ms {
                    let c = order.cmp(a, b);
                    assert_eq!(c == Ordering::Equal, a == b);
                    assert_eq!(order.cmp(b, a), c.reverse());
                    if a.deg() < b.deg() {
                        assert_eq!(c, Ordering::Less);
                    }
                }
            }
        }
    }

    #[test]
    fn diagonal_first_bullets_to_degree_20() {
        let order = MonomialOrder::DiagonalFirst;
        for a in all_up_to(20) {
            for b in all_up_to(20) {
                if a.deg() < b.deg() {
                    assert_eq!(order.cmp(a, b), Ordering::Less);
                }
                if a.s == a.t && b.deg() == 2 * a.s && b.s != b.t {
                    assert_eq!(order.cmp(a, b), Ordering::Less);
                }
            }
        }
    }
}
