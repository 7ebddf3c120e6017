//! Benchmark fixtures.

use hessperm::{family_matrix, Family, IntMatrix, Method};

/// Orders each evaluator is timed at; the exponential ones stop early.
pub fn orders(method: Method) -> &'static [usize] {
    match method {
        Method::Naive => &[4, 6, 8, 10],
        Method::Ryser => &[8, 12, 16, 20],
        Method::Contraction | Method::Hessenberg => &[8, 16, 64, 256, 500],
    }
}

pub fn h_matrix(n: usize) -> IntMatrix {
    family_matrix(Family::H, n).expect("H_n exists for n >= 1")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_order_is_within_its_guard() {
        for method in Method::ALL {
            for &n in orders(method) {
                assert!(method.evaluate(&h_matrix(n)).is_ok(), "{method} at {n}");
            }
        }
    }
}
