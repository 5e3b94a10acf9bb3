use crate::exact::{BivarPoly, Elem};

/// `f = P(x, y) / (x^x_shift u(x))` rewritten with `x` and `y` exchanged:
/// `poly` is `P(y, x)` and `unit_at_zero` is `u(0)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SwappedPoly {
    pub poly: BivarPoly,
    pub x_shift: u32,
    pub unit_at_zero: Elem,
}

/// Moves `f` into the exchanged coordinate frame, separating the part that does
/// not survive as a polynomial.
pub fn swap_frame(f: &BivarPoly) -> SwappedPoly {
    let c = f.clear_denominators();
    SwappedPoly { poly: c.poly.swap().to_bivar(), x_shift: c.x_shift, unit_at_zero: c.unit_den_at_zero }
}
