//! Pointwise predicates on endomorphisms of `A`, checked on basis elements.

use crate::algebra::FiniteDimAlgebra;
use crate::linalg::LinearEndo;

/// `f(1) = 1`.
pub fn is_unital(a: &FiniteDimAlgebra, f: &LinearEndo) -> bool {
    f.apply(a.unit()) == a.unit()
}

/// `f(ab) = f(a) f(b)`.
pub fn is_multiplicative(a: &FiniteDimAlgebra, f: &LinearEndo) -> bool {
    let images: Vec<_> = (0..a.dim()).map(|p| f.matrix().column(p)).collect();
    (0..a.dim()).all(|p| {
        (0..a.dim()).all(|q| f.apply(a.basis_product(p, q)) == a.mul_coords(&images[p], &images[q]))
    })
}

/// `δ(ab) = a δ(b) + δ(a) f(b)`, i.e. `δ` is an `(id, f)`-derivation.
pub fn is_twisted_derivation(a: &FiniteDimAlgebra, delta: &LinearEndo, f: &LinearEndo) -> bool {
    let d = a.dim();
    (0..d).all(|p| {
        (0..d).all(|q| {
            let ap = a.basis_vector(p);
            let left = delta.apply(a.basis_product(p, q));
            let x = a.mul_coords(&ap, &delta.matrix().column(q));
            let y = a.mul_coords(&delta.matrix().column(p), &f.matrix().column(q));
            let right: Vec<_> = x.iter().zip(&y).map(|(u, v)| u + v).collect();
            left == right
        })
    })
}
