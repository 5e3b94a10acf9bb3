//! Shared helpers for unit tests.

use proptest::prelude::*;

use crate::exact::{parse_poly, BaseField, BivarPoly, Poly2, Value};

pub const Q: BaseField = BaseField::Rationals;

pub fn p(s: &str) -> BivarPoly {
    parse_poly(s, Q).unwrap()
}

pub fn pf(s: &str, field: BaseField) -> BivarPoly {
    parse_poly(s, field).unwrap()
}

pub fn v(s: &str) -> Value {
    s.parse().unwrap()
}

/// Nonzero polynomials with `deg_x <= dx`, `deg_y <= dy`, coefficients in `[-h, h]`.
pub fn poly_strategy(field: BaseField, dx: u32, dy: u32, h: i64) -> impl Strategy<Value = Poly2> {
    prop::collection::vec((0..=dx, 0..=dy, -h..=h), 1..8).prop_filter_map("zero polynomial", move |ts| {
        let mut g = Poly2::zero(field);
        for (i, j, c) in ts {
            g.add_term(i, j, &field.int(c));
        }
        (!g.is_zero()).then_some(g)
    })
}

pub fn bivar_strategy(field: BaseField, dx: u32, dy: u32, h: i64) -> impl Strategy<Value = BivarPoly> {
    poly_strategy(field, dx, dy, h).prop_map(|g| g.to_bivar())
}
