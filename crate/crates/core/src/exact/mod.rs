//! Exact arithmetic: base fields, values in `Q ∪ {∞}`, and polynomials over `k(x)`.

mod bivar;
mod field;
mod parse;
mod poly2;
mod ratfunc;
mod roots;
mod upoly;
mod value;

pub use bivar::{BivarPoly, Cleared};
pub use field::{BaseField, Elem};
pub use parse::parse_poly;
pub use poly2::Poly2;
pub use ratfunc::RatFunc;
pub use roots::roots_in_field;
pub use upoly::UPoly;
pub use value::{parse_rational, Value};

/// `ord_x` of an element of `k(x)`.
pub fn ord_x(r: &RatFunc) -> Value {
    r.ord()
}

/// Division with remainder in `K[y]` by a divisor monic in `y`.
pub fn euclid_divrem(f: &BivarPoly, g: &BivarPoly) -> crate::Result<(BivarPoly, BivarPoly)> {
    f.divrem(g)
}

/// The `q`-expansion coefficients of `f`, lowest power first.
pub fn expand(f: &BivarPoly, q: &BivarPoly) -> crate::Result<Vec<BivarPoly>> {
    f.expand(q)
}

/// The Hasse derivative `∂_b f` with respect to `y`.
pub fn hasse_derivative(f: &BivarPoly, b: u32) -> BivarPoly {
    f.hasse(b)
}
